use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = chernwork_cli::run(std::env::args_os());
    eprint!("{}", out.stderr);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(out.code as u8)
}
