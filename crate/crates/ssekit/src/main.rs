fn main() {
    eprintln!("ssekit: command-line interface not wired up yet");
    std::process::exit(2);
}
