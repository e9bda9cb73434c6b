use std::cell::RefCell;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::OutputMode;
use tscale_core::inequalities::VariationalDemo;
use tscale_core::suite::SuiteSummary;
use tscale_core::{InequalityReport, IntegralResult};

// Appends one line to the printer's buffer.
macro_rules! out {
    ($p:expr, $($arg:tt)*) => {{
        let mut buf = $p.buf.borrow_mut();
        let _ = writeln!(buf, $($arg)*);
    }};
}

/// Collects output and writes it to stdout in one go when dropped; a closed pipe is not an error.
pub struct Printer {
    mode: OutputMode,
    buf: RefCell<String>,
}

impl Drop for Printer {
    fn drop(&mut self) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(self.buf.get_mut().as_bytes());
        let _ = stdout.flush();
    }
}

impl Printer {
    pub fn new(mode: OutputMode) -> Self {
        Printer {
            mode,
            buf: RefCell::new(String::new()),
        }
    }

    fn emit(&self, doc: &Value) {
        out!(self, "{}", serde_json::to_string(doc).expect("json output"));
    }

    pub fn integral(&self, header: &Value, r: &IntegralResult) {
        match self.mode {
            OutputMode::Machine => {
                let mut doc = header.clone();
                doc["result"] = json!(r);
                self.emit(&doc);
            }
            OutputMode::Human => {
                out!(self, "value          {}", r.value);
                out!(self, "dense part     {}", r.dense_part);
                out!(self, "scattered part {}", r.scattered_part);
                out!(self, "error estimate {:e}", r.error_estimate);
                out!(self, "evaluations    {}", r.evals);
            }
        }
    }

    pub fn value(&self, label: &str, value: f64, context: Value) {
        match self.mode {
            OutputMode::Machine => {
                let mut doc = context;
                doc[label] = json!(value);
                self.emit(&doc);
            }
            OutputMode::Human => out!(self, "{label} {value}"),
        }
    }

    pub fn report(&self, r: &InequalityReport, extra: Option<Map<String, Value>>) {
        match self.mode {
            OutputMode::Machine => {
                let mut doc = json!(r);
                if let (Some(extra), Value::Object(obj)) = (extra, &mut doc) {
                    obj.extend(extra);
                }
                self.emit(&doc);
            }
            OutputMode::Human => {
                out!(
                    self,
                    "{}: {}",
                    r.name,
                    if r.holds { "holds" } else { "VIOLATED" }
                );
                out!(self, "  lhs       {}", r.lhs);
                out!(self, "  rhs       {}", r.rhs);
                out!(self, "  slack     {:e}", r.slack);
                out!(self, "  tolerance {:e}", r.tolerance);
                let p = &r.params;
                let mut params = Vec::new();
                for (k, v) in [
                    ("alpha", p.alpha),
                    ("p", p.p),
                    ("q", p.q),
                    ("a", p.a),
                    ("b", p.b),
                ] {
                    if let Some(v) = v {
                        params.push(format!("{k}={v}"));
                    }
                }
                out!(self, "  {}", params.join(" "));
                for i in &r.integrals {
                    let x = &i.result;
                    out!(
                        self,
                        "  ∫ {:<8} = {} (dense {}, scattered {}, error {:e})",
                        i.label,
                        x.value,
                        x.dense_part,
                        x.scattered_part,
                        x.error_estimate
                    );
                }
                for (k, v) in extra.unwrap_or_default() {
                    out!(self, "  {k}: {v}");
                }
            }
        }
    }

    pub fn variational(&self, d: &VariationalDemo) {
        match self.mode {
            OutputMode::Machine => self.emit(&json!(d)),
            OutputMode::Human => {
                out!(self, "J              {}", d.j_value);
                out!(self, "error estimate {:e}", d.error_estimate);
                out!(self, "lower bound    {}", d.lower_bound);
                out!(
                    self,
                    "J >= bound     {}",
                    if d.lower_bound_holds { "yes" } else { "NO" }
                );
            }
        }
    }

    pub fn suite(&self, s: &SuiteSummary, witness_file: &Path) {
        match self.mode {
            OutputMode::Machine => self.emit(&json!(s)),
            OutputMode::Human => {
                out!(self, "trials {} seed {}", s.trials, s.seed);
                for (name, t) in &s.tallies {
                    out!(
                        self,
                        "  {name:<15} holds {:>5}  violations {:>3}  skipped {:>3}",
                        t.holds,
                        t.violations,
                        t.skipped
                    );
                }
                for w in &s.skipped {
                    out!(self, "  skipped: {}", w.to_line());
                }
                if s.violations() > 0 {
                    for w in &s.witnesses {
                        out!(self, "  violation: {}", w.to_line());
                    }
                    out!(self, "witnesses written to {}", witness_file.display());
                }
            }
        }
    }
}
