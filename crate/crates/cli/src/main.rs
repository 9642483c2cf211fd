use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = k3lab_cli::main_with_args(std::env::args_os());
    if code == k3lab_cli::EXIT_INPUT {
        eprint!("{out}");
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
