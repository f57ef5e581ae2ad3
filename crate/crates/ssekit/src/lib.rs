//! Strong shift equivalence of matrices over dense subrings of the reals,
//! made computational.
//!
//! Two square matrices A and B are *elementary* strong shift equivalent
//! (ESSE) over a set P when A = R·S and B = S·R with R, S having entries
//! in P; strong shift equivalence (SSE) is the transitive closure, and a
//! chain of such pairs is a finite, machine-checkable certificate. This
//! crate builds, transforms, and exactly verifies those certificates:
//!
//! - [`matrix`]: dense matrices over arbitrary-precision rationals
//!   (exact decisions), over `f64` (path search), and over the Boolean
//!   semiring (zero patterns).
//! - [`cert`]: ESSE pairs, SSE chains, verification reports, and chain
//!   surgery (composition, reversal, transposition, lag normalisation).
//! - [`split`]: state splittings — the combinatorial moves behind SSE —
//!   plus the factorisation of a nondegenerate matrix through its nonzero
//!   entries, fiber products of a row and a column splitting, and the
//!   lifting lemmas that convert splitting data into conjugacies.
//! - [`boolpos`]: collapse of a nondegenerate primitive Boolean matrix to
//!   `[1]` through covering walks, and the rational positivization that
//!   mimics the Boolean moves with controlled perturbations.
//! - [`invariants`]: what SSE over the reals preserves — nilpotent Jordan
//!   structure, the sign signature attached to the reducing eigenvalues of
//!   the centralizer, and shift-equivalence fingerprints.
//! - [`path`]: compilation of a path of conjugate matrices into an SSE
//!   certificate through positive matrices, elementary factorizations near
//!   the identity, and explicit positive paths for rank-one perturbations.
//! - [`connect`]: canonical forms for nilpotent parts and the staged
//!   connection paths that link a matrix to its canonical model.
//! - [`doc`]: a line-oriented text format for certificates that round-trips
//!   rationals bit-exactly and doubles to the shortest decimal.
//!
//! The binary `ssekit` exposes the same operations as subcommands; the
//! `examples/` directory is the guided tour.

pub mod cert;
pub mod elementary;
pub mod error;
pub mod matrix;
pub mod nondegen;
pub mod poly;

pub use error::{Error, Result};
