use std::fmt;

use num_bigint::BigUint;
use oddsp_core::burau::{burau, reduced_burau, BraidWord, BurauError};
use oddsp_core::complexes::{build_complex, Budget, ComplexError, ComplexSpec, Family, FiniteComplex, OrbitKind};
use oddsp_core::homology::{complex_homology, Coefficients, HomologyError, HomologyOptions};
use oddsp_core::orbits::{necessity_experiment, reachability_search, NecessityConfig, OrbitError};
use oddsp_core::weights::{
    exterior_multiplicity_with_limit, fit_polynomial, kostant_cohomology, pieri_shift, sp_shift,
    trivial_summand_degrees, weyl_dim_sp, Partition, WeightsError,
};
use oddsp_core::{braiding, BraidingConvention};
use serde_json::{json, Value};

use crate::{parse, Command, GlobalOpts};

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 1.
    Validation(String),
    /// A resource limit was hit; exit code 2.
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Budget(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "budget exhausted: {m}"),
        }
    }
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

impl From<BurauError> for CliError {
    fn from(e: BurauError) -> Self {
        invalid(e)
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        invalid(e)
    }
}

impl From<WeightsError> for CliError {
    fn from(e: WeightsError) -> Self {
        match e {
            WeightsError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => invalid(other),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        invalid(e)
    }
}

pub struct Report {
    pub json: Value,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialise")
}

fn orbit_kind(s: &str) -> Result<OrbitKind, CliError> {
    match s {
        "X" | "x" => Ok(OrbitKind::X),
        "IX" | "ix" => Ok(OrbitKind::IX),
        other => Err(invalid(format!("unknown orbit kind {other:?} (expected X or IX)"))),
    }
}

fn partition(s: &str) -> Result<Partition, CliError> {
    s.parse::<Partition>().map_err(invalid)
}

fn big(d: BigUint) -> Value {
    Value::String(d.to_string())
}

pub fn run(command: &Command, global: &GlobalOpts) -> Result<Report, CliError> {
    let json = match command {
        Command::Burau { n, word } => {
            let w = BraidWord::parse(*n, word)?;
            let image = burau(&w);
            let perm: Vec<usize> = w.permutation().iter().map(|p| p + 1).collect();
            json!({
                "command": "burau",
                "n": n,
                "word": w.signed(),
                "matrix": to_json(image.element.matrix()),
                "level": to_json(&image.element.level()),
                "permutation": perm,
                "reduced": to_json(&reduced_burau(&w)),
            })
        }
        Command::Braiding { n, m, convention } => {
            let conv: BraidingConvention = convention.parse().map_err(invalid)?;
            if n + m == 0 {
                return Err(invalid("n + m must be positive"));
            }
            let b = braiding(*n, *m, conv);
            json!({
                "command": "braiding",
                "n": n,
                "m": m,
                "convention": to_json(&conv),
                "matrix": to_json(b.matrix()),
                "level": to_json(&b.level()),
            })
        }
        Command::Complex { family, n, box_bound, relative } => {
            let family: Family = family.parse().map_err(invalid)?;
            if *n == 0 {
                return Err(invalid("n must be positive"));
            }
            let mut spec = ComplexSpec::new(family, *n, *box_bound);
            if let Some(r) = relative {
                spec = spec.relative(parse::vectors(r)?);
            }
            let budget = Budget {
                max_candidates: global.max_candidates,
                max_vertices: global.max_vertices,
                max_simplices: global.max_simplices,
            };
            to_json(&build_complex(&spec, &budget)?.to_file())
        }
        Command::Homology { input, coefficients, reduced } => {
            let coefficients: Coefficients = coefficients.parse().map_err(invalid)?;
            let text = std::fs::read_to_string(input)
                .map_err(|e| invalid(format!("cannot read {}: {e}", input.display())))?;
            let c = FiniteComplex::from_json(&text)?;
            let report = complex_homology(&c, HomologyOptions { coefficients, reduced: *reduced })?;
            json!({
                "command": "homology",
                "f_vector": c.f_vector(),
                "betti": report.betti_q(),
                "euler_holds": report.euler_holds(),
                "report": to_json(&report),
            })
        }
        Command::Kostant { lambda, n } => {
            let p = partition(lambda)?;
            let weight = p.to_weight(*n)?;
            let rows = kostant_cohomology(&weight)?;
            json!({
                "command": "kostant",
                "lambda": p.to_string(),
                "n": n,
                "rows": rows.iter().map(|r| json!({
                    "degree": r.degree,
                    "w": r.w.to_string(),
                    "inverse_rho": r.inverse_rho.to_string(),
                    "levi_weight": r.levi_weight.to_string(),
                })).collect::<Vec<_>>(),
                "trivial_degrees": trivial_summand_degrees(&weight)?,
            })
        }
        Command::Pieri { lambda, sp, n } => {
            let p = partition(lambda)?;
            let shift = if *sp { sp_shift(&p) } else { pieri_shift(&p) };
            let entries: Vec<Value> = shift
                .iter()
                .map(|(mu, k)| {
                    let mut e = json!({ "partition": mu.to_string(), "multiplicity": k });
                    if let Some(n) = n {
                        e["dimension"] = big(weyl_dim_sp(mu, *n));
                    }
                    e
                })
                .collect();
            let mut out = json!({
                "command": if *sp { "sp-shift" } else { "pieri" },
                "lambda": p.to_string(),
                "shift": entries,
            });
            if let Some(n) = n {
                out["n"] = json!(n);
                out["dimension_above"] = big(weyl_dim_sp(&p, n + 1));
                let total: BigUint = shift.iter().map(|(mu, &k)| weyl_dim_sp(mu, *n) * k).sum();
                out["dimension_sum"] = big(total);
            }
            out
        }
        Command::Multiplicity { lambda, g, r } => {
            let p = partition(lambda)?;
            let m = exterior_multiplicity_with_limit(&p, *g, *r, global.max_support)?;
            json!({ "command": "multiplicity", "lambda": p.to_string(), "g": g, "r": r, "multiplicity": m.to_string() })
        }
        Command::Polyfit { points, max_degree } => {
            let pts = parse::points(points)?;
            let fit = fit_polynomial(&pts, *max_degree)?;
            json!({
                "command": "polyfit",
                "polynomial": fit.polynomial.to_string(),
                "coefficients": to_json(&fit.polynomial),
                "degree": fit.degree,
                "points": fit.points,
                "checks": fit.checks,
            })
        }
        Command::OrbitNecessity { kind, n, p, trials, seed, mean_length } => {
            let config = NecessityConfig {
                kind: orbit_kind(kind)?,
                n: *n,
                p: *p,
                trials: *trials,
                seed: *seed,
                mean_length: *mean_length,
            };
            to_json(&necessity_experiment(&config)?)
        }
        Command::OrbitSearch { kind, n, target, max_depth } => {
            let target = parse::vectors(target)?;
            to_json(&reachability_search(orbit_kind(kind)?, *n, &target, *max_depth)?)
        }
    };
    Ok(Report { json })
}

/// A plain-text rendering of a JSON report.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{v}\n");
    };
    for (k, val) in map {
        match val {
            Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                let Value::Object(first) = &rows[0] else { unreachable!() };
                let cols: Vec<&String> = first.keys().collect();
                out.push_str(&format!("  {}\n", cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join("\t")));
                for r in rows {
                    let cells: Vec<String> = cols.iter().map(|c| plain(&r[c.as_str()])).collect();
                    out.push_str(&format!("  {}\n", cells.join("\t")));
                }
            }
            other => out.push_str(&format!("{k}: {}\n", plain(other))),
        }
    }
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
