use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use warpcoflow::cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.render(cli.format).trim_end());
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let _ = writeln!(std::io::stdout(), "{}", serde_json::json!({ "pass": false, "error": e.to_string() }));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
