use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use relsmooth::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let outcome = run(&cli);
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let rendered = outcome.render(cli.json);
    if outcome.code >= EXIT_INPUT && !cli.json {
        eprint!("{rendered}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(rendered.as_bytes());
    }
    ExitCode::from(outcome.code)
}
