//! Command-line front end: argument parsing, report assembly and the
//! reproduction tables.

pub mod args;
pub mod commands;
pub mod figures;
pub mod parse;
pub mod reproduce;
pub mod report;

use std::time::Instant;

use anyhow::{Context, Result};
use qwalk::exec::Exec;
use serde_json::Value;

use args::{Cli, Command};
use commands::Ctx;

/// Runs a parsed command and returns the document to print.
pub fn run(cli: &Cli) -> Result<Value> {
    let exec = match cli.global.jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    let ctx = Ctx { exec, tol: cli.global.tol };
    let go = || dispatch(&ctx, cli);
    match cli.global.jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(j).build().context("building worker pool")?;
            pool.install(go)
        }
        _ => go(),
    }
}

fn dispatch(ctx: &Ctx, cli: &Cli) -> Result<Value> {
    let start = Instant::now();
    let report = match &cli.command {
        Command::Generate(a) => return commands::generate(a),
        Command::Spectrum(a) => commands::spectrum(ctx, a)?,
        Command::Support(a) => commands::support(ctx, a)?,
        Command::Ppst(a) => commands::ppst(ctx, a)?,
        Command::Pgst(a) => commands::pgst(ctx, a)?,
        Command::Revival(a) => commands::revival(ctx, a)?,
        Command::Sedentary(a) => commands::sedentary(ctx, a)?,
        Command::Mstate(a) => commands::mstate(ctx, a)?,
        Command::BranchVerify(a) => commands::branch_verify(ctx, a)?,
        Command::Reproduce(a) => reproduce::reproduce(ctx, a)?,
    };
    let timing = (!cli.global.no_timing).then(|| start.elapsed().as_secs_f64());
    Ok(report.finish(timing))
}
