use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = lattice_rewrite::cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    // a closed pipe on stdout is not worth a panic
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    ExitCode::from(r.exit_code as u8)
}
