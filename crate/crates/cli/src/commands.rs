//! Command implementations. Each returns the text for standard output and
//! an exit code, or a [`CliError`] for the diagnostics stream.

use std::fmt::Write as _;

use serde_json::{json, Value};
use spacelike_core::propagator::{
    compton_wavelength_fm, dimensionless, gamma_bessel, gamma_quadrature, point, scan,
    PropagatorError, C_SI,
};
use spacelike_core::theorems::{self, suite};
use spacelike_core::{commutator, normal_form, parse, AlgebraError, ParseError, PropagatorPoint, TheoremRecord};

use crate::format::{complex, json_real, real, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<PropagatorError> for CliError {
    fn from(e: PropagatorError) -> Self {
        let code = match e {
            PropagatorError::NonConvergence { .. } | PropagatorError::Underflow { .. } => EXIT_NUMERIC,
            PropagatorError::NonpositiveMass(_)
            | PropagatorError::Domain(_)
            | PropagatorError::NotSpacelike { .. } => EXIT_INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Bessel,
    Quadrature,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Units {
    /// Lengths in fm, times in fm/c, c = 1.
    Natural,
    /// Lengths in m, times in s.
    Si,
}

fn expr_outcome(command: &str, inputs: Value, text: String, format: TextFormat) -> Outcome {
    let stdout = match format {
        TextFormat::Text => format!("{text}\n"),
        TextFormat::Json => {
            OutputRecord::new(command, inputs, json!({ "normal_form": text }), EXIT_OK).render() + "\n"
        }
    };
    Outcome { stdout, exit: EXIT_OK }
}

pub fn normalize(expr: &str, format: TextFormat) -> Result<Outcome, CliError> {
    let nf = normal_form(&parse(expr)?)?;
    Ok(expr_outcome("normalize", json!({ "expr": expr }), nf.to_string(), format))
}

pub fn commutator_cmd(a: &str, b: &str, format: TextFormat) -> Result<Outcome, CliError> {
    let nf = commutator(&parse(a)?, &parse(b)?)?;
    Ok(expr_outcome("commutator", json!({ "a": a, "b": b }), nf.to_string(), format))
}

/// The selected theorems, preceded (with `show_steps`) by the theorems they
/// depend on, transitively and in suite order.
fn selected_records(filter: Option<&str>, show_steps: bool) -> Result<Vec<TheoremRecord>, CliError> {
    let Some(id) = filter.filter(|f| !f.is_empty()) else {
        return Ok(theorems::run_all());
    };
    let defs = suite();
    if !defs.iter().any(|d| d.id == id) {
        return Err(CliError::input(format!(
            "unknown theorem '{id}'; known: {}",
            theorems::suite_ids().join(", ")
        )));
    }
    let mut wanted = vec![id];
    if show_steps {
        let mut i = 0;
        while i < wanted.len() {
            let deps = defs.iter().find(|d| d.id == wanted[i]).map(|d| d.depends_on).unwrap_or(&[]);
            for dep in deps {
                if !wanted.contains(dep) {
                    wanted.push(dep);
                }
            }
            i += 1;
        }
    }
    Ok(defs
        .iter()
        .filter(|d| wanted.contains(&d.id))
        .map(|d| d.verify())
        .collect())
}

fn record_json(r: &TheoremRecord, show_steps: bool) -> Value {
    let mut v = json!({
        "id": r.id,
        "citation": r.citation,
        "depends_on": r.depends_on,
        "status": r.status,
        "lhs": r.lhs().to_string(),
        "rhs": r.rhs().to_string(),
        "residual": r.residual().to_string(),
    });
    if show_steps {
        v["checks"] = r
            .checks
            .iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "lhs": c.lhs.to_string(),
                    "rhs": c.rhs.to_string(),
                    "residual": c.residual.to_string(),
                    "holds": c.holds(),
                })
            })
            .collect();
    }
    v
}

pub fn verify(filter: Option<&str>, show_steps: bool, format: TextFormat) -> Result<Outcome, CliError> {
    let records = selected_records(filter, show_steps)?;
    let passed = records.iter().filter(|r| r.verified()).count();
    let exit = if passed == records.len() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let stdout = match format {
        TextFormat::Json => {
            let inputs = json!({ "theorem": filter, "show_steps": show_steps });
            let results: Vec<Value> = records.iter().map(|r| record_json(r, show_steps)).collect();
            OutputRecord::new("verify", inputs, Value::Array(results), exit).render() + "\n"
        }
        TextFormat::Text => {
            let width = records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
            let mut out = format!("{:<width$}  {:<8}  STATEMENT\n", "ID", "STATUS");
            for r in &records {
                writeln!(out, "{:<width$}  {:<8}  {}", r.id, r.status.to_string(), r.citation).unwrap();
                if show_steps {
                    for c in &r.checks {
                        let mark = if c.holds() { "ok" } else { "FAIL" };
                        writeln!(out, "{:width$}    [{mark}] {}: residual {}", "", c.label, c.residual).unwrap();
                    }
                } else if !r.verified() {
                    writeln!(out, "{:width$}    residual {}", "", r.residual()).unwrap();
                }
            }
            writeln!(out, "{passed}/{} verified", records.len()).unwrap();
            out
        }
    };
    Ok(Outcome { stdout, exit })
}

pub struct PropagatorArgs {
    pub t: f64,
    pub x: f64,
    pub lambda_bar: Option<f64>,
    pub mass_mev: Option<f64>,
    pub method: Method,
    pub units: Units,
    pub format: TextFormat,
}

pub fn propagator_cmd(a: &PropagatorArgs) -> Result<Outcome, CliError> {
    let lambda_bar = match (a.lambda_bar, a.mass_mev) {
        (Some(l), None) => l,
        (None, Some(m)) => {
            let fm = compton_wavelength_fm(m)?;
            match a.units {
                Units::Natural => fm,
                Units::Si => fm * 1e-15,
            }
        }
        _ => return Err(CliError::input("give exactly one of --lambda-bar and --mass")),
    };
    let c = match a.units {
        Units::Natural => 1.0,
        Units::Si => C_SI,
    };
    let (tau, xi) = dimensionless(a.t, a.x, lambda_bar, c)?;
    let base = point(tau, xi)?;
    let (gamma, quadrature, discrepancy) = match a.method {
        Method::Bessel => (base.gamma, None, None),
        Method::Quadrature => {
            let q = gamma_quadrature(tau, xi)?;
            (q, Some(q), None)
        }
        Method::Both => {
            let b = gamma_bessel(tau, xi)?;
            let q = gamma_quadrature(tau, xi)?;
            (b, Some(q), Some((q - b).norm() / b.norm()))
        }
    };
    let prob = gamma.norm_sqr();
    let stdout = match a.format {
        TextFormat::Text => {
            let mut out = String::new();
            let mut line = |k: &str, v: String| writeln!(out, "{k:<24} {v}").unwrap();
            line("tau", real(tau));
            line("xi", real(xi));
            line("z", real(base.z));
            line("interval_over_lambdabar2", real(base.interval()));
            match (a.method, quadrature) {
                (Method::Both, Some(q)) => {
                    line("gamma_bessel", complex(base.gamma));
                    line("gamma_quadrature", complex(q));
                }
                _ => line("gamma", complex(gamma)),
            }
            line("prob", real(prob));
            if let Some(d) = discrepancy {
                line("relative_discrepancy", real(d));
            }
            line("class_eq2", base.class_eq2.name().into());
            line("class_eq13", base.class_eq13.name().into());
            out
        }
        TextFormat::Json => {
            let inputs = json!({
                "t": json_real(a.t),
                "x": json_real(a.x),
                "lambda_bar": json_real(lambda_bar),
                "mass_mev": a.mass_mev.map(json_real),
                "method": format!("{:?}", a.method).to_lowercase(),
                "units": format!("{:?}", a.units).to_lowercase(),
            });
            let mut results = point_json(&PropagatorPoint { gamma, prob, ..base });
            if let Some(q) = quadrature {
                results["gamma_quadrature"] = complex(q).into();
            }
            if let Some(d) = discrepancy {
                results["relative_discrepancy"] = json_real(d);
            }
            OutputRecord::new("propagator", inputs, results, EXIT_OK).render() + "\n"
        }
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}

pub const SCAN_COLUMNS: [&str; 7] = [
    "z",
    "interval_over_lambdabar2",
    "gamma_re",
    "gamma_im",
    "prob",
    "class_eq2",
    "class_eq13",
];

fn point_json(p: &PropagatorPoint) -> Value {
    json!({
        "tau": json_real(p.tau),
        "xi": json_real(p.xi),
        "z": json_real(p.z),
        "interval_over_lambdabar2": json_real(p.interval()),
        "gamma": complex(p.gamma),
        "gamma_re": json_real(p.gamma.re),
        "gamma_im": json_real(p.gamma.im),
        "prob": json_real(p.prob),
        "class_eq2": p.class_eq2.name(),
        "class_eq13": p.class_eq13.name(),
    })
}

pub fn scan_cmd(z_min: f64, z_max: f64, steps: usize, format: TableFormat) -> Result<Outcome, CliError> {
    let rows = scan(z_min, z_max, steps)?;
    let stdout = match format {
        TableFormat::Csv => {
            let mut out = SCAN_COLUMNS.join(",") + "\n";
            for p in &rows {
                let cells = [
                    real(p.z),
                    real(p.interval()),
                    real(p.gamma.re),
                    real(p.gamma.im),
                    real(p.prob),
                    p.class_eq2.name().to_string(),
                    p.class_eq13.name().to_string(),
                ];
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let inputs = json!({ "z_min": json_real(z_min), "z_max": json_real(z_max), "steps": steps });
            let results = rows.iter().map(point_json).collect();
            OutputRecord::new("scan", inputs, Value::Array(results), EXIT_OK).render() + "\n"
        }
    };
    Ok(Outcome { stdout, exit: EXIT_OK })
}
