//! Rewriting a strong shift equivalence so that every matrix in it —
//! intermediate and factor alike — has no zero row and no zero column.
//!
//! Three rewrites compose: runs of consecutive zero intermediates collapse
//! to a single zero matrix by padding the adjacent pairs; each remaining
//! zero intermediate between nonzero neighbors is replaced by an explicit
//! six-step bridge of elementary equivalences through nonzero matrices; and
//! each nonzero-but-degenerate intermediate is conjugated nondegenerate by a
//! product of integer shears.  Nondegeneracy of the pair factors then
//! follows from nondegeneracy of the matrices they connect.

use crate::cert::{EssePair, SseChain};
use crate::error::{Error, Result};
use crate::matrix::{rint, RatMatrix};
use num_traits::Zero;

/// Conjugator `V` (a product of integer shears) such that `V⁻¹·A·V` is
/// nondegenerate.  Requires `A` square and nonzero.
pub fn nondegenerating_conjugator(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.is_zero() {
        return Err(Error::Precondition(
            "a zero matrix is degenerate in every basis".into(),
        ));
    }
    let n = a.rows();
    let mut x = a.clone();
    let mut v = RatMatrix::identity(n);
    for _ in 0..(2 * n + 2) {
        if let Some(e) = zero_row_shear(&x) {
            let e_inv = e.inverse().expect("shears are invertible");
            x = &(&e * &x) * &e_inv;
            v = &v * &e_inv;
        } else if let Some(et) = zero_row_shear(&x.transpose()) {
            // Fix a zero column by running the row fix on the transpose:
            // Xᵀ -> Eᵀ·Xᵀ·(Eᵀ)⁻¹ corresponds to X -> G·X·G⁻¹ with G = (Eᵀᵀ)⁻¹.
            let g_inv = et.transpose();
            let g = g_inv.inverse().expect("shears are invertible");
            x = &(&g * &x) * &g_inv;
            v = &v * &g_inv;
        } else {
            debug_assert!(x.is_nondegenerate());
            return Ok(v);
        }
    }
    Err(Error::Internal(
        "zero-line elimination did not terminate".into(),
    ))
}

/// If `x` has a zero row, the shear `E = I + M·e_z·e_{r0}ᵀ` whose conjugate
/// `E·X·E⁻¹` fills that row from a nonzero row `r0` without zeroing any
/// existing nonzero entry of column `r0`.  `M` is the smallest positive
/// integer avoiding the finitely many cancellation values `X(i,r0)/X(i,z)`.
fn zero_row_shear(x: &RatMatrix) -> Option<RatMatrix> {
    let n = x.rows();
    let z = (0..n).find(|&i| x.row(i).iter().all(|v| v.is_zero()))?;
    let r0 = (0..n)
        .find(|&i| i != z && x.row(i).iter().any(|v| !v.is_zero()))
        .expect("a nonzero matrix has a nonzero row, and row z is zero");
    let mut mult: i64 = 1;
    loop {
        let m = rint(mult);
        let collides = (0..n).any(|i| {
            i != z
                && !x.get(i, r0).is_zero()
                && !x.get(i, z).is_zero()
                && *x.get(i, r0) == &m * x.get(i, z)
        });
        if !collides {
            break;
        }
        mult += 1;
    }
    let mut e = RatMatrix::identity(n);
    e.set(z, r0, rint(mult));
    Some(e)
}

/// Rewrite a verified exact chain with nondegenerate endpoints into one with
/// the same endpoints in which every matrix and every pair factor is
/// nondegenerate.  Already-nondegenerate chains are returned unchanged.
pub fn make_nondegenerate(chain: &SseChain<RatMatrix>) -> Result<SseChain<RatMatrix>> {
    let report = chain.verify();
    if !report.ok {
        return Err(Error::Precondition(format!(
            "input chain does not verify: {:?}",
            report.first_failure
        )));
    }
    if !chain.first().is_nondegenerate() || !chain.last().is_nondegenerate() {
        return Err(Error::Precondition(
            "endpoint matrices must be nondegenerate".into(),
        ));
    }
    if chain.matrices.iter().all(RatMatrix::is_nondegenerate)
        && chain
            .pairs
            .iter()
            .all(|p| p.r.is_nondegenerate() && p.s.is_nondegenerate())
    {
        return Ok(chain.clone());
    }

    let mut work = collapse_zero_runs(chain);
    work = bridge_zeros(&work);
    for i in 1..work.matrices.len().saturating_sub(1) {
        if !work.matrices[i].is_nondegenerate() {
            let v = nondegenerating_conjugator(&work.matrices[i])?;
            work.conjugate_intermediate(i, &v)?;
        }
    }

    let out_report = work.verify();
    if !out_report.ok {
        return Err(Error::Internal(format!(
            "rewritten chain fails verification: {:?}",
            out_report.first_failure
        )));
    }
    let clean = work.matrices.iter().all(RatMatrix::is_nondegenerate)
        && work
            .pairs
            .iter()
            .all(|p| p.r.is_nondegenerate() && p.s.is_nondegenerate());
    if !clean {
        return Err(Error::Internal(
            "rewrite left a degenerate matrix in the chain".into(),
        ));
    }
    Ok(work)
}

/// Merge each run of two or more consecutive zero intermediates into a
/// single zero matrix, padding the pairs on both sides with zero blocks.
fn collapse_zero_runs(chain: &SseChain<RatMatrix>) -> SseChain<RatMatrix> {
    let mut mats = vec![chain.matrices[0].clone()];
    let mut pairs: Vec<EssePair<RatMatrix>> = Vec::new();
    let mut i = 1;
    while i < chain.matrices.len() {
        if chain.matrices[i].is_zero() && i + 1 < chain.matrices.len() {
            let mut j = i;
            while chain.matrices[j + 1].is_zero() {
                j += 1;
            }
            if j > i {
                let z = (i..=j).map(|k| chain.matrices[k].rows()).max().unwrap();
                let left = &chain.pairs[i - 1];
                let ml = chain.matrices[i].rows();
                let r_in = RatMatrix::hstack(&[&left.r, &RatMatrix::zero(left.r.rows(), z - ml)]);
                let s_in = RatMatrix::vstack(&[&left.s, &RatMatrix::zero(z - ml, left.s.cols())]);
                let right = &chain.pairs[j];
                let mr = chain.matrices[j].rows();
                let r_out =
                    RatMatrix::vstack(&[&right.r, &RatMatrix::zero(z - mr, right.r.cols())]);
                let s_out =
                    RatMatrix::hstack(&[&right.s, &RatMatrix::zero(right.s.rows(), z - mr)]);
                mats.push(RatMatrix::zero(z, z));
                pairs.push(EssePair { r: r_in, s: s_in });
                mats.push(chain.matrices[j + 1].clone());
                pairs.push(EssePair { r: r_out, s: s_out });
                i = j + 2;
                continue;
            }
        }
        mats.push(chain.matrices[i].clone());
        pairs.push(chain.pairs[i - 1].clone());
        i += 1;
    }
    SseChain {
        matrices: mats,
        pairs,
        tol: chain.tol,
    }
}

/// Replace every zero intermediate `A --(R,S)--> 0_m --(R',S')--> C` (with
/// `A`, `C` nonzero) by the explicit six-step bridge through nonzero
/// matrices built from block combinations of `A, R, S, R', S'`.
fn bridge_zeros(chain: &SseChain<RatMatrix>) -> SseChain<RatMatrix> {
    let mut mats = vec![chain.matrices[0].clone()];
    let mut pairs: Vec<EssePair<RatMatrix>> = Vec::new();
    let mut i = 1;
    while i < chain.matrices.len() {
        if chain.matrices[i].is_zero() && i + 1 < chain.matrices.len() {
            let a = &chain.matrices[i - 1];
            let c = &chain.matrices[i + 1];
            let left = &chain.pairs[i - 1];
            let right = &chain.pairs[i];
            let (bridge_mats, bridge_pairs) =
                six_step_bridge(a, &left.r, &left.s, &right.r, &right.s);
            mats.extend(bridge_mats);
            mats.push(c.clone());
            pairs.extend(bridge_pairs);
            i += 2;
        } else {
            mats.push(chain.matrices[i].clone());
            pairs.push(chain.pairs[i - 1].clone());
            i += 1;
        }
    }
    SseChain {
        matrices: mats,
        pairs,
        tol: chain.tol,
    }
}

/// Given `A = R·S`, `0_m = S·R`, `0_m = R'·S'`, `C = S'·R'` with `A, C`
/// nonzero, produce intermediates `A_1..A_5` and six pairs linking
/// `A -> A_1 -> ... -> A_5 -> C`, all intermediates nonzero.
fn six_step_bridge(
    a: &RatMatrix,
    r: &RatMatrix,
    s: &RatMatrix,
    rp: &RatMatrix,
    sp: &RatMatrix,
) -> (Vec<RatMatrix>, Vec<EssePair<RatMatrix>>) {
    let n = a.rows();
    let m = s.rows();
    let k = sp.rows();
    let z = RatMatrix::zero;
    let id = RatMatrix::identity;

    // A1 = (A 0; S 0): expose the factorization inside a larger frame.
    let a1 = RatMatrix::block(&[&[a, &z(n, m)], &[s, &z(m, m)]]);
    let p1 = EssePair {
        r: RatMatrix::hstack(&[&id(n), &z(n, m)]),
        s: RatMatrix::vstack(&[a, s]),
    };

    // A2 = (0 0; S 0) via the unipotent pair (P, E); note A·R = R·(S·R) = 0.
    let a2 = RatMatrix::block(&[&[&z(n, n), &z(n, m)], &[s, &z(m, m)]]);
    let ar = a * r;
    let p2 = EssePair {
        r: RatMatrix::block(&[&[a, &ar], &[s, &z(m, m)]]),
        s: RatMatrix::block(&[&[&id(n), &r.scale(&rint(-1))], &[&z(m, n), &id(m)]]),
    };

    // A3 = (0 0 0; S 0 0; 0 S' 0): both halves present.
    let a3 = RatMatrix::block(&[
        &[&z(n, n), &z(n, m), &z(n, k)],
        &[s, &z(m, m), &z(m, k)],
        &[&z(k, n), sp, &z(k, k)],
    ]);
    let p3 = EssePair {
        r: RatMatrix::hstack(&[&id(n + m), &z(n + m, k)]),
        s: RatMatrix::block(&[&[&z(n, n), &z(n, m)], &[s, &z(m, m)], &[&z(k, n), sp]]),
    };

    // A4 = (0 0; S' 0): drop the left half.
    let a4 = RatMatrix::block(&[&[&z(m, m), &z(m, k)], &[sp, &z(k, k)]]);
    let p4 = EssePair {
        r: RatMatrix::vstack(&[&z(n, m + k), &id(m + k)]),
        s: RatMatrix::block(&[&[s, &z(m, m), &z(m, k)], &[&z(k, n), sp, &z(k, k)]]),
    };

    // A5 = (0 0; S' S'R') via the mirrored unipotent pair.
    let sprp = sp * rp;
    let a5 = RatMatrix::block(&[&[&z(m, m), &z(m, k)], &[sp, &sprp]]);
    let p5 = EssePair {
        r: a5.clone(),
        s: RatMatrix::block(&[&[&id(m), &rp.scale(&rint(-1))], &[&z(k, m), &id(k)]]),
    };

    // A6 = C = S'·R'.
    let p6 = EssePair {
        r: RatMatrix::vstack(&[&z(m, k), &id(k)]),
        s: RatMatrix::hstack(&[sp, &sprp]),
    };

    (vec![a1, a2, a3, a4, a5], vec![p1, p2, p3, p4, p5, p6])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    fn chain_of(
        mats: &[RatMatrix],
        pairs: &[(RatMatrix, RatMatrix)],
    ) -> SseChain<RatMatrix> {
        SseChain::from_links(
            mats.to_vec(),
            pairs
                .iter()
                .map(|(r, s)| EssePair::new(r.clone(), s.clone()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn nondegenerate_chain_is_returned_unchanged() {
        let chain = chain_of(
            &[m(&[&[1, 1], &[1, 1]]), m(&[&[2]])],
            &[(m(&[&[1], &[1]]), m(&[&[1, 1]]))],
        );
        let out = make_nondegenerate(&chain).unwrap();
        assert_eq!(out, chain);
    }

    #[test]
    fn degenerate_endpoint_is_rejected() {
        let chain = SseChain::identity(m(&[&[1, 0], &[1, 0]]));
        assert!(make_nondegenerate(&chain).is_err());
    }

    #[test]
    fn conjugator_fixes_rank_one_projector() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let v = nondegenerating_conjugator(&a).unwrap();
        let vi = v.inverse().unwrap();
        let fixed = &(&vi * &a) * &v;
        assert!(fixed.is_nondegenerate());
    }

    #[test]
    fn conjugator_fixes_single_zero_column() {
        let a = m(&[&[0, 1, 2], &[0, 1, 1], &[0, 3, 1]]);
        let v = nondegenerating_conjugator(&a).unwrap();
        let vi = v.inverse().unwrap();
        let fixed = &(&vi * &a) * &v;
        assert!(fixed.is_nondegenerate());
    }

    #[test]
    fn conjugator_rejects_zero_matrix() {
        assert!(nondegenerating_conjugator(&RatMatrix::zero(2, 2)).is_err());
    }

    #[test]
    fn zero_run_collapses_and_bridges() {
        // A -> 0_1 -> 0_3 -> C with nilpotent nondegenerate endpoints.
        let a = m(&[&[1, -1], &[1, -1]]);
        let c = a.clone();
        let chain = chain_of(
            &[
                a.clone(),
                RatMatrix::zero(1, 1),
                RatMatrix::zero(3, 3),
                c.clone(),
            ],
            &[
                (m(&[&[1], &[1]]), m(&[&[1, -1]])),
                (RatMatrix::zero(1, 3), RatMatrix::zero(3, 1)),
                (
                    m(&[&[1, -1], &[0, 0], &[0, 0]]),
                    m(&[&[1, 0, 0], &[1, 0, 0]]),
                ),
            ],
        );
        assert!(chain.verify().ok);
        let out = make_nondegenerate(&chain).unwrap();
        assert!(out.verify().ok);
        assert_eq!(out.first(), &a);
        assert_eq!(out.last(), &c);
        assert!(out.matrices.iter().all(RatMatrix::is_nondegenerate));
        assert!(out.matrices.iter().all(|x| !x.is_zero()));
        assert!(out
            .pairs
            .iter()
            .all(|p| p.r.is_nondegenerate() && p.s.is_nondegenerate()));
    }

    #[test]
    fn degenerate_interior_is_conjugated_clean() {
        // [1] -> (1 0; 0 0) -> [1]
        let one = m(&[&[1]]);
        let proj = m(&[&[1, 0], &[0, 0]]);
        let chain = chain_of(
            &[one.clone(), proj, one.clone()],
            &[
                (m(&[&[1, 0]]), m(&[&[1], &[0]])),
                (m(&[&[1], &[0]]), m(&[&[1, 0]])),
            ],
        );
        assert!(chain.verify().ok);
        let out = make_nondegenerate(&chain).unwrap();
        assert!(out.verify().ok);
        assert_eq!(out.first(), &one);
        assert_eq!(out.last(), &one);
        assert!(out.matrices.iter().all(RatMatrix::is_nondegenerate));
        assert_eq!(out.lag(), chain.lag());
    }

    #[test]
    fn single_zero_intermediate_is_bridged() {
        let a = m(&[&[1, -1], &[1, -1]]);
        // Right link needs 0_1 = R'·S' and A = S'·R': take R' = (1 -1), S' = (1;1).
        let chain = chain_of(
            &[a.clone(), RatMatrix::zero(1, 1), a.clone()],
            &[
                (m(&[&[1], &[1]]), m(&[&[1, -1]])),
                (m(&[&[1, -1]]), m(&[&[1], &[1]])),
            ],
        );
        assert!(chain.verify().ok, "{:?}", chain.verify().first_failure);
        let out = make_nondegenerate(&chain).unwrap();
        assert!(out.verify().ok);
        assert!(out.matrices.iter().all(|x| !x.is_zero()));
        assert!(out.matrices.iter().all(RatMatrix::is_nondegenerate));
    }
}
