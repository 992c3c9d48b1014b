use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (code, output) = weylkit_cli::dispatch(&args);
    print!("{output}");
    ExitCode::from(code)
}
