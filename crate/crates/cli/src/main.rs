use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match morphblocks_cli::run_args(std::env::args_os()) {
        Ok(out) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let _ = writeln!(std::io::stderr().lock(), "{}", failure.to_json());
            ExitCode::from(failure.code as u8)
        }
    }
}
