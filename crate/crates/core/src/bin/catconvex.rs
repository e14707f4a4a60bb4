use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    // Panics are reported through the exit code and one stderr line.
    std::panic::set_hook(Box::new(|_| {}));
    let out = catconvex::cli::execute(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status.code() as u8)
}
