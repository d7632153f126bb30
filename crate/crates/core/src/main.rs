use std::io::Write;

fn main() {
    let env = std::env::var(shorsim::cli::MAX_QUBITS_ENV).ok();
    let out = shorsim::cli::run(std::env::args_os(), env.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
