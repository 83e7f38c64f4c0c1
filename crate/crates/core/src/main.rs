use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let color = std::env::var("TTFL_COLOR").is_ok_and(|v| v == "1");
    let code = ttfl::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr(), color);
    ExitCode::from(code as u8)
}
