//! Randomized verification of the Hölder, Cauchy–Schwarz, Minkowski and
//! Jensen checks over random time scales and integrands.
//!
//! Trial `i` draws from a ChaCha stream keyed by `(seed, i)`, so results do
//! not depend on scheduling and trials run in parallel.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{Alpha, CalcConfig};
use crate::error::{Error, Result};
use crate::function::FunctionHandle;
use crate::inequalities::{
    cauchy_schwarz_check, holder_check, jensen_check, minkowski_check, ConvexSpec,
    InequalityReport,
};
use crate::timescale::{RawComponent, ScaleSpec, TimeScale};

pub const CHECKS: [&str; 4] = ["holder", "cauchy-schwarz", "minkowski", "jensen"];

const ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const MAX_COMPONENTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub holds: usize,
    pub violations: usize,
    pub skipped: usize,
}

/// Everything needed to replay one failing or skipped instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub trial: usize,
    pub scale: ScaleSpec,
    pub inputs: BTreeMap<String, String>,
    pub report: Option<InequalityReport>,
    pub error: Option<String>,
}

impl Witness {
    /// One-line plain-text record.
    pub fn to_line(&self) -> String {
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v:?}")).collect();
        let outcome = match (&self.report, &self.error) {
            (Some(r), _) => format!("lhs={} rhs={} slack={} tolerance={}", r.lhs, r.rhs, r.slack, r.tolerance),
            (None, Some(e)) => format!("error={e:?}"),
            (None, None) => String::new(),
        };
        format!(
            "trial={} check={} scale={} {} {}",
            self.trial,
            self.check,
            self.scale.to_json(),
            inputs.join(" "),
            outcome
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub trials: usize,
    pub seed: u64,
    pub tallies: BTreeMap<String, Tally>,
    /// Violations only; skipped instances are counted but not recorded here.
    pub witnesses: Vec<Witness>,
    pub skipped: Vec<Witness>,
}

impl SuiteSummary {
    pub fn violations(&self) -> usize {
        self.tallies.values().map(|t| t.violations).sum()
    }
}

/// A randomly drawn scale with a window `[a, b]` of members, `a < b`.
#[derive(Debug, Clone)]
pub struct RandomWindow {
    pub spec: ScaleSpec,
    pub scale: TimeScale,
    pub a: f64,
    pub b: f64,
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Up to six components laid out left to right with positive gaps.
pub fn random_window(rng: &mut impl Rng) -> RandomWindow {
    let count = rng.gen_range(1..=MAX_COMPONENTS);
    let mut raw = Vec::with_capacity(count);
    let mut cursor = round3(rng.gen_range(-2.0..0.0));
    for i in 0..count {
        if i > 0 {
            cursor = round3(cursor + rng.gen_range(0.05..0.6));
        }
        // a lone point cannot host a window a < b
        if count == 1 || rng.gen_bool(0.5) {
            let hi = round3(cursor + rng.gen_range(0.1..1.0));
            raw.push(RawComponent::Interval([cursor, hi]));
            cursor = hi;
        } else {
            raw.push(RawComponent::Point(cursor));
        }
    }
    let spec = ScaleSpec { components: raw };
    let scale = spec.build().expect("generated components are valid");

    let (a, b) = if rng.gen_bool(0.5) {
        (scale.min(), scale.max())
    } else {
        let mut members = scale.scattered_members(scale.min(), scale.max());
        for (lo, hi) in scale.dense_segments(scale.min(), scale.max()) {
            members.push(round3(rng.gen_range(lo..hi)).clamp(lo, hi));
        }
        members.sort_by(f64::total_cmp);
        members.dedup();
        let i = rng.gen_range(0..members.len() - 1);
        let j = rng.gen_range(i + 1..members.len());
        (members[i], members[j])
    };
    RandomWindow { spec, scale, a, b }
}

fn random_poly(rng: &mut impl Rng) -> String {
    let degree = rng.gen_range(0..=3);
    let mut terms = Vec::new();
    for k in 0..=degree {
        let c = round2(rng.gen_range(-2.0..2.0));
        terms.push(match k {
            0 => format!("({c})"),
            1 => format!("({c})*t"),
            _ => format!("({c})*t^{k}"),
        });
    }
    terms.join(" + ")
}

fn random_trig(rng: &mut impl Rng) -> String {
    let amp = round2(rng.gen_range(0.2..2.0));
    let freq = round2(rng.gen_range(0.5..4.0));
    let phase = round2(rng.gen_range(-3.0..3.0));
    let shift = round2(rng.gen_range(-1.0..1.0));
    format!("{amp}*sin({freq}*t + ({phase})) + ({shift})")
}

/// Random polynomial (degree ≤ 3) or shifted sinusoid.
pub fn random_integrand(rng: &mut impl Rng) -> String {
    if rng.gen_bool(0.5) {
        random_poly(rng)
    } else {
        random_trig(rng)
    }
}

/// A convex function with its domain, and an integrand whose range fits it.
fn random_jensen_pair(rng: &mut impl Rng) -> (String, f64, f64, String) {
    let inf = f64::INFINITY;
    match rng.gen_range(0..5) {
        0 => ("t^2".into(), -inf, inf, random_integrand(rng)),
        1 => ("abs(t)".into(), -inf, inf, random_integrand(rng)),
        2 => ("t^4".into(), -inf, inf, random_integrand(rng)),
        3 => ("exp(t)".into(), -inf, inf, random_trig(rng)),
        _ => {
            let f = if rng.gen_bool(0.5) { "-log(t)" } else { "1/t" };
            (f.into(), 0.0, inf, format!("0.1 + ({})^2", random_integrand(rng)))
        }
    }
}

struct TrialOutcome {
    results: Vec<(&'static str, std::result::Result<InequalityReport, Error>, Witness)>,
}

fn parse(text: &str) -> FunctionHandle {
    FunctionHandle::parse(text).expect("generated expressions parse")
}

fn run_trial(seed: u64, trial: usize, cfg: &CalcConfig) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let w = random_window(&mut rng);
    let alpha = Alpha::new(*ALPHAS.choose(&mut rng).unwrap()).unwrap();
    // p in (1, 5]
    let p = 5.0 - 4.0 * rng.gen::<f64>();
    let f_text = random_integrand(&mut rng);
    let g_text = random_integrand(&mut rng);
    let (convex_text, c, d, jg_text) = random_jensen_pair(&mut rng);

    let (f, g) = (parse(&f_text), parse(&g_text));
    let witness = |check: &str, extra: &[(&str, String)]| {
        let mut inputs = BTreeMap::new();
        inputs.insert("a".to_string(), w.a.to_string());
        inputs.insert("b".to_string(), w.b.to_string());
        inputs.insert("alpha".to_string(), alpha.value().to_string());
        for (k, v) in extra {
            inputs.insert(k.to_string(), v.clone());
        }
        Witness {
            check: check.to_string(),
            trial,
            scale: w.spec.clone(),
            inputs,
            report: None,
            error: None,
        }
    };
    let fg = [("f", f_text.clone()), ("g", g_text.clone())];
    let with_p = [("f", f_text.clone()), ("g", g_text.clone()), ("p", p.to_string())];

    let holder = holder_check(&w.scale, &f, &g, w.a, w.b, alpha, p, cfg);
    let cs = cauchy_schwarz_check(&w.scale, &f, &g, w.a, w.b, alpha, cfg);
    let mink = minkowski_check(&w.scale, &f, &g, w.a, w.b, alpha, p, cfg);
    let spec = ConvexSpec::new(parse(&convex_text), c, d).expect("domains are nonempty");
    let jensen = jensen_check(&w.scale, &parse(&jg_text), &spec, w.a, w.b, alpha, cfg);

    TrialOutcome {
        results: vec![
            ("holder", holder, witness("holder", &with_p)),
            ("cauchy-schwarz", cs, witness("cauchy-schwarz", &fg)),
            ("minkowski", mink, witness("minkowski", &with_p)),
            (
                "jensen",
                jensen,
                witness("jensen", &[("g", jg_text.clone()), ("F", convex_text.clone())]),
            ),
        ],
    }
}

/// Runs `trials` random instances of every check. Identical `(trials, seed,
/// cfg)` give identical summaries.
pub fn property_suite(trials: usize, seed: u64, cfg: &CalcConfig) -> Result<SuiteSummary> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    cfg.validate()?;
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(seed, i, cfg))
        .collect();

    let mut tallies: BTreeMap<String, Tally> =
        CHECKS.iter().map(|c| (c.to_string(), Tally::default())).collect();
    let mut witnesses = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        for (name, result, mut witness) in outcome.results {
            let tally = tallies.get_mut(name).expect("known check");
            match result {
                Ok(report) if report.holds => tally.holds += 1,
                Ok(report) => {
                    tally.violations += 1;
                    witness.report = Some(report);
                    witnesses.push(witness);
                }
                Err(e) => {
                    tally.skipped += 1;
                    witness.error = Some(e.to_string());
                    skipped.push(witness);
                }
            }
        }
    }
    Ok(SuiteSummary {
        trials,
        seed,
        tallies,
        witnesses,
        skipped,
    })
}
