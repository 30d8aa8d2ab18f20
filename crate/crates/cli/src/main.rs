use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out, err) = koszul_cli::run(std::env::args_os());
    print!("{out}");
    let _ = std::io::stdout().flush();
    eprint!("{err}");
    ExitCode::from(code as u8)
}
