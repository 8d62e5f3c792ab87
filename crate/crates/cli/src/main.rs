use std::process::ExitCode;

use clap::Parser;
use qwalk_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = qwalk_cli::run(&cli).and_then(|doc| {
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        match &cli.global.out {
            Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e:#}");
            ExitCode::FAILURE
        }
    }
}
