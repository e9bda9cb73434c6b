mod args;
mod output;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Common, Kind, Window};
use output::Printer;
use tscale_core::calculus::{derivative, integral};
use tscale_core::inequalities::{
    cauchy_schwarz_check, convexity_probe, holder_check, jensen_check, jensen_support_gap,
    minkowski_check, schwarz_variational_demo, weighted_amgm,
};
use tscale_core::suite::property_suite;
use tscale_core::{
    Alpha, CalcConfig, ConvexSpec, DerivativeKind, FunctionHandle, ScaleSpec, TimeScale,
};

const MAX_EVALS_VAR: &str = "TSCALE_MAX_EVALS";

/// A computation finished; `holds` is false when an inequality verdict was negative.
struct Outcome {
    holds: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { holds: true }) => ExitCode::SUCCESS,
        Ok(Outcome { holds: false }) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(common: &Common) -> Result<CalcConfig> {
    let mut cfg = CalcConfig {
        quad_abs_tol: common.quad_abs_tol,
        quad_rel_tol: common.quad_rel_tol,
        fd_richardson_levels: common.fd_levels,
        ..CalcConfig::default()
    };
    if let Ok(raw) = std::env::var(MAX_EVALS_VAR) {
        cfg.max_evals = raw
            .trim()
            .parse()
            .with_context(|| format!("{MAX_EVALS_VAR} must be a positive integer, got {raw:?}"))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_scale(path: &Path) -> Result<TimeScale> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read scale file {}", path.display()))?;
    let spec = ScaleSpec::from_json(&text)
        .with_context(|| format!("malformed scale file {}", path.display()))?;
    Ok(spec.build()?)
}

fn function(name: &str, text: &str) -> Result<FunctionHandle> {
    FunctionHandle::parse(text).with_context(|| format!("cannot parse --{name} {text:?}"))
}

fn alpha(v: f64) -> Result<Alpha> {
    Ok(Alpha::new(v)?)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Integrate { window, f, common } => {
            let cfg = config(&common)?;
            let Window {
                scale,
                a,
                b,
                alpha: al,
            } = window;
            let ts = load_scale(&scale)?;
            let f = function("f", &f)?;
            let kind = DerivativeKind::Diamond(alpha(al)?);
            let r = integral(&ts, &f, a, b, kind, &cfg)?;
            let p = Printer::new(common.out);
            p.integral(
                &json!({"command": "integrate", "alpha": al, "a": a, "b": b}),
                &r,
            );
            Ok(Outcome { holds: true })
        }
        Command::Derive {
            scale,
            f,
            t,
            kind,
            alpha: al,
            common,
        } => {
            let cfg = config(&common)?;
            let ts = load_scale(&scale)?;
            let f = function("f", &f)?;
            let kind = match kind {
                Kind::Delta => DerivativeKind::Delta,
                Kind::Nabla => DerivativeKind::Nabla,
                Kind::Diamond => DerivativeKind::Diamond(alpha(al)?),
            };
            let value = derivative(&ts, &f, t, kind, &cfg)?;
            let class = ts.classify(t)?;
            Printer::new(common.out).value(
                "derivative",
                value,
                json!({"command": "derive", "t": t, "kind": kind, "point_class": class}),
            );
            Ok(Outcome { holds: true })
        }
        Command::CheckHolder {
            window,
            f,
            g,
            p,
            common,
        } => {
            let cfg = config(&common)?;
            let ts = load_scale(&window.scale)?;
            let (f, g) = (function("f", &f)?, function("g", &g)?);
            let r = holder_check(
                &ts,
                &f,
                &g,
                window.a,
                window.b,
                alpha(window.alpha)?,
                p,
                &cfg,
            )?;
            Printer::new(common.out).report(&r, None);
            Ok(Outcome { holds: r.holds })
        }
        Command::CheckCs {
            window,
            f,
            g,
            common,
        } => {
            let cfg = config(&common)?;
            let ts = load_scale(&window.scale)?;
            let (f, g) = (function("f", &f)?, function("g", &g)?);
            let r =
                cauchy_schwarz_check(&ts, &f, &g, window.a, window.b, alpha(window.alpha)?, &cfg)?;
            Printer::new(common.out).report(&r, None);
            Ok(Outcome { holds: r.holds })
        }
        Command::CheckMinkowski {
            window,
            f,
            g,
            p,
            common,
        } => {
            let cfg = config(&common)?;
            let ts = load_scale(&window.scale)?;
            let (f, g) = (function("f", &f)?, function("g", &g)?);
            let r = minkowski_check(
                &ts,
                &f,
                &g,
                window.a,
                window.b,
                alpha(window.alpha)?,
                p,
                &cfg,
            )?;
            Printer::new(common.out).report(&r, None);
            Ok(Outcome { holds: r.holds })
        }
        Command::CheckJensen {
            window,
            g,
            convex,
            c,
            d,
            subgradient,
            probe_samples,
            seed,
            common,
        } => {
            let cfg = config(&common)?;
            let ts = load_scale(&window.scale)?;
            let g = function("g", &g)?;
            let mut spec = ConvexSpec::new(function("F", &convex)?, c, d)?;
            if let Some(s) = subgradient {
                spec = spec.with_subgradient(function("subgradient", &s)?);
            }
            let al = alpha(window.alpha)?;
            let r = jensen_check(&ts, &g, &spec, window.a, window.b, al, &cfg)?;
            let mut extra = serde_json::Map::new();
            if spec.subgradient.is_some() {
                let gap = jensen_support_gap(&ts, &g, &spec, window.a, window.b, al, &cfg)?;
                extra.insert("support_gap".into(), serde_json::to_value(gap)?);
            }
            if let Some(n) = probe_samples {
                let probe = convexity_probe(&spec, n, seed)?;
                extra.insert("convexity_probe".into(), serde_json::to_value(probe)?);
            }
            Printer::new(common.out).report(&r, Some(extra));
            Ok(Outcome { holds: r.holds })
        }
        Command::Amgm {
            alpha: al,
            values,
            n,
            common,
        } => {
            if let Some(n) = n {
                if values.len() != n + 1 {
                    bail!("--n {n} needs {} values, got {}", n + 1, values.len());
                }
            }
            let r = weighted_amgm(&values, alpha(al)?)?;
            Printer::new(common.out).report(&r, None);
            Ok(Outcome { holds: r.holds })
        }
        Command::VariationalDemo {
            x,
            grid,
            alpha: al,
            common,
        } => {
            let cfg = config(&common)?;
            let x = function("x", &x)?;
            let demo = schwarz_variational_demo(&x, grid, alpha(al)?, &cfg)?;
            Printer::new(common.out).variational(&demo);
            Ok(Outcome {
                holds: demo.lower_bound_holds,
            })
        }
        Command::PropertySuite {
            trials,
            seed,
            witness_file,
            common,
        } => {
            let cfg = config(&common)?;
            let summary = property_suite(trials, seed, &cfg)?;
            if summary.violations() > 0 {
                let lines: Vec<String> = summary.witnesses.iter().map(|w| w.to_line()).collect();
                fs::write(&witness_file, lines.join("\n") + "\n").with_context(|| {
                    format!("cannot write witnesses to {}", witness_file.display())
                })?;
            }
            Printer::new(common.out).suite(&summary, &witness_file);
            Ok(Outcome {
                holds: summary.violations() == 0,
            })
        }
    }
}
