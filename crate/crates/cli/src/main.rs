use std::io::{Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = movingcurves_cli::execute(std::env::args_os().skip(1), || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    });
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
