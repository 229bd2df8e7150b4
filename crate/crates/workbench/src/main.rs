use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = semiwork::cli::run(&args, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code)
}
