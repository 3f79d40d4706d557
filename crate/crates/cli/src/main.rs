//! `dualkit` command-line front end.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;
use clap::error::ErrorKind;
use serde::Serialize;
use serde_json::{json, Map, Value};

use args::{Cli, Command, Format, Global};
use commands::{Ctx, Output, Units, UsageError};

fn units(g: &Global) -> Result<Units> {
    if g.atomic {
        return Ok(Units { label: "atomic", m: 1.0, hbar: 1.0, e2: 1.0 });
    }
    if g.m.is_none() && g.hbar.is_none() && g.e2.is_none() {
        return Ok(Units { label: "natural", m: 1.0, hbar: 1.0, e2: 1.0 });
    }
    let u = Units {
        label: "custom",
        m: g.m.unwrap_or(1.0),
        hbar: g.hbar.unwrap_or(1.0),
        e2: g.e2.unwrap_or(1.0),
    };
    if [u.m, u.hbar, u.e2].iter().all(|v| *v > 0.0 && v.is_finite()) {
        Ok(u)
    } else {
        Err(UsageError(format!("custom units must be positive: m={}, hbar={}, e2={}", u.m, u.hbar, u.e2)).into())
    }
}

fn context(g: &Global) -> Result<Ctx> {
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(UsageError(format!("tolerance must be positive, got {t}")).into());
        }
    }
    Ok(Ctx {
        units: units(g)?,
        tol: g.tol,
        grid_rmin: g.grid_rmin,
        grid_rmax: g.grid_rmax,
        grid_n: g.grid_n,
    })
}

fn echo<T: Serialize>(ctx: &Ctx, format: Format, args: &T) -> Map<String, Value> {
    let mut config = Map::new();
    let u = ctx.units;
    config.insert("units".into(), json!({"system": u.label, "m": u.m, "hbar": u.hbar, "e2": u.e2}));
    config.insert("format".into(), json!(format));
    config.insert("tol".into(), json!(ctx.tol));
    for (key, value) in [("grid_rmin", ctx.grid_rmin), ("grid_rmax", ctx.grid_rmax)] {
        if let Some(v) = value {
            config.insert(key.into(), json!(v));
        }
    }
    if let Some(n) = ctx.grid_n {
        config.insert("grid_n".into(), json!(n));
    }
    if let Value::Object(fields) = serde_json::to_value(args).expect("flags serialize") {
        config.extend(fields);
    }
    config
}

type Echo<'a> = Box<dyn Fn(Format) -> Map<String, Value> + 'a>;

fn run(cli: &Cli) -> Result<(String, Option<String>)> {
    let ctx = context(&cli.global)?;
    let (name, out, config): (&str, Output, Echo) = match &cli.command {
        Command::Pair(a) => ("pair", commands::pair(a)?, Box::new(|f| echo(&ctx, f, a))),
        Command::MapOrbit(a) => ("map-orbit", commands::map_orbit(a)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Wkb(a) => ("wkb", commands::wkb(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Susy(a) => ("susy", commands::susy(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Spectrum(a) => ("spectrum", commands::spectrum(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Green(a) => ("green", commands::green(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Confine(a) => ("confine", commands::confine(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Morse(a) => ("morse", commands::morse(a, &ctx)?, Box::new(|f| echo(&ctx, f, a))),
        Command::Verify(a) => ("verify", commands::verify(a)?, Box::new(|f| echo(&ctx, f, a))),
        Command::SpecfunEval(a) => ("specfun-eval", commands::specfun_eval(a)?, Box::new(|f| echo(&ctx, f, a))),
    };
    let format = cli.global.format.unwrap_or(out.default_format);
    let text = match (format, &out.table) {
        (Format::Json, _) => {
            let doc = output::document(name, config(format), out.result);
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
        (Format::Csv, Some((header, rows))) => output::csv(header, rows),
        (Format::Csv, None) => return Err(UsageError(format!("{name} has no CSV form; use --format json")).into()),
    };
    Ok((text, out.failure))
}

const SYNOPSIS: &str = "Usage: dualkit [OPTIONS] <COMMAND>";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            eprint!("{text}");
            if !text.contains("Usage:") {
                eprintln!("\n{SYNOPSIS}");
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((text, failure)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            match failure {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            eprintln!("\n{SYNOPSIS}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
