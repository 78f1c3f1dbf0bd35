use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qpe_certify::Cli::parse();
    let code = qpe_certify::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
