use std::path::Path;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use combfield_core::combinatorics::{bell_numbers, partition_counts, stirling2_table};
use combfield_core::order::{
    connected_totals_cross_check, enumerate_posets_capped, enumerate_preorders_capped,
    unlabelled_representatives, verify_stirling_identity, OrderError, DEFAULT_CAP, OVERRIDE_CAP,
};
use combfield_core::qft::random::random_finite_models;
use combfield_core::qft::{
    exponentiate, free_energy, model_from_json, partition_function,
    stirling_coefficients, BuiltinModel, ModelSpec, QftError,
};
use combfield_core::series::{factorial, Rational};
use combfield_core::wick::{self, OracleError};

use crate::output::{OutputRecord, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Finiteness(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Finiteness(_) => 3,
        }
    }
}

impl From<QftError> for CliError {
    fn from(e: QftError) -> Self {
        match e {
            QftError::Finiteness(_) => CliError::Finiteness(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Model(q) => q.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A built-in model name, or else a path to a model file.
pub fn load_model(arg: &str) -> Result<ModelSpec, CliError> {
    if let Ok(m) = arg.parse::<BuiltinModel>() {
        return Ok(m.spec());
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "`{arg}` is neither a built-in model (phi4, partitions, bell-squared) nor a file"
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
    Ok(model_from_json(&text)?)
}

fn egf(c: &Rational, n: usize) -> Rational {
    c * Rational::from_integer(factorial(n))
}

pub fn series(model_arg: &str, eps_order: usize, g_order: usize, connected: bool) -> Result<OutputRecord, CliError> {
    let model = load_model(model_arg)?;
    let z = partition_function(&model, eps_order, g_order)?;
    let table = if connected { free_energy(&z)? } else { z };
    let mut rec = OutputRecord::new("series", &["eps", "g", "coefficient", "egf"])
        .param("model", model_arg)
        .param("eps_order", eps_order)
        .param("g_order", g_order)
        .param("connected", connected);
    for (&(i, j), c) in table.iter() {
        rec.push_row(vec![i.to_string(), j.to_string(), c.to_string(), egf(c, i).to_string()]);
    }
    rec.set("function", if connected { "ln Z" } else { "Z" });
    Ok(rec)
}

pub fn seq(name: &str, n: usize) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("seq", &["n", "value"]).param("name", name).param("n", n);
    let (values, provenance): (Vec<BigUint>, String) = match name {
        "bell" => {
            let s = bell_numbers(n);
            (s.values, s.provenance.to_string())
        }
        "partitions" => {
            let s = partition_counts(n);
            (s.values, s.provenance.to_string())
        }
        "bell-squared" => {
            let z = partition_function(&BuiltinModel::BellSquared.spec(), n, 0)?;
            let values = (0..=n)
                .map(|k| {
                    let v = egf(&z.coeff(k, 0), k);
                    v.to_integer().to_biguint().ok_or_else(|| {
                        CliError::Usage(format!("non-count coefficient {v} at n = {k}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            (values, "series".into())
        }
        "stirling" => {
            let t = stirling2_table(n.max(1));
            rec = OutputRecord::new("seq", &["n", "k", "value"]).param("name", name).param("n", n);
            for row in 1..=n {
                for k in 1..=row {
                    rec.push_row(vec![row.to_string(), k.to_string(), t.get(row, k).to_string()]);
                }
            }
            rec.set("provenance", "recurrence");
            return Ok(rec);
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown sequence `{other}` (bell, stirling, partitions, bell-squared)"
            )))
        }
    };
    for (k, v) in values.iter().enumerate() {
        rec.push_row(vec![k.to_string(), v.to_string()]);
    }
    rec.set(
        "values",
        values.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
    );
    rec.set("provenance", provenance);
    Ok(rec)
}

pub struct VerifyOptions {
    pub seed: u64,
    pub models: usize,
    pub g_order: usize,
}

pub fn verify(check: &str, n: usize, opts: &VerifyOptions) -> Result<OutputRecord, CliError> {
    let mut rec = match check {
        "bell-squared" => verify_bell_squared(n)?,
        "stirling-model" => verify_stirling_model(n)?,
        "topology-identity" => verify_topology(n)?,
        "oracle-agreement" => verify_oracle(n, opts)?,
        "exp-log" => verify_exp_log(n)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown check `{other}` (bell-squared, stirling-model, topology-identity, oracle-agreement, exp-log)"
            )))
        }
    };
    rec.parameters.insert("check".into(), check.into());
    rec.parameters.insert("n".into(), n.to_string());
    Ok(rec)
}

fn verdict(rec: &mut OutputRecord, ok: bool) {
    rec.status = if ok { Status::Pass } else { Status::Fail };
}

fn verify_bell_squared(n: usize) -> Result<OutputRecord, CliError> {
    let z = partition_function(&BuiltinModel::BellSquared.spec(), n, 0)?;
    let bell = bell_numbers(n).values;
    let mut rec = OutputRecord::new("verify", &["n", "expected", "engine", "match"]);
    let mut ok = true;
    for (k, b) in bell.iter().enumerate() {
        let expected = BigInt::from(b * b);
        let got = egf(&z.coeff(k, 0), k);
        let same = got == Rational::from_integer(expected.clone());
        ok &= same;
        rec.push_row(vec![k.to_string(), expected.to_string(), got.to_string(), same.to_string()]);
    }
    verdict(&mut rec, ok);
    Ok(rec)
}

fn verify_stirling_model(n: usize) -> Result<OutputRecord, CliError> {
    let n = n.max(1);
    let from_model = stirling_coefficients(n)?;
    let table = stirling2_table(n);
    let mut rec = OutputRecord::new("verify", &["n", "k", "recurrence", "engine", "match"]);
    let mut ok = true;
    for row in 1..=n {
        for k in 1..=row {
            let (a, b) = (table.get(row, k), from_model.get(row, k));
            let same = a == b;
            ok &= same;
            rec.push_row(vec![row.to_string(), k.to_string(), a.to_string(), b.to_string(), same.to_string()]);
        }
    }
    verdict(&mut rec, ok);
    Ok(rec)
}

fn verify_topology(n: usize) -> Result<OutputRecord, CliError> {
    let report = verify_stirling_identity(n)?;
    let mut rec = OutputRecord::new("verify", &["k", "fiber_count", "stirling_times_d", "match"]);
    for f in &report.fibers {
        rec.push_row(vec![
            f.blocks.to_string(),
            f.counted.to_string(),
            f.expected.to_string(),
            (f.counted == f.expected).to_string(),
        ]);
    }
    rec.set("t_n", report.connected_preorders);
    rec.set("stirling_sum", report.stirling_sum);
    rec.set(
        "d",
        report.connected_posets.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
    );
    verdict(&mut rec, report.holds());
    Ok(rec)
}

fn verify_oracle(n: usize, opts: &VerifyOptions) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["model", "coefficients", "match", "first_difference"])
        .param("seed", opts.seed)
        .param("models", opts.models)
        .param("g_order", opts.g_order);
    let mut ok = true;
    for (idx, model) in random_finite_models(opts.seed, opts.models, 3).iter().enumerate() {
        let engine = partition_function(model, n, opts.g_order)?;
        let oracle = wick::oracle_table(model, n, opts.g_order)?;
        let mut diff = String::new();
        for i in 0..=n {
            for j in 0..=opts.g_order {
                let (a, b) = (engine.coeff(i, j), oracle.coeff(i, j));
                if diff.is_empty() && a != b {
                    diff = format!("eps^{i} g^{j}: engine {a}, oracle {b}");
                }
            }
        }
        ok &= diff.is_empty();
        rec.push_row(vec![
            idx.to_string(),
            engine.iter().count().to_string(),
            diff.is_empty().to_string(),
            diff,
        ]);
    }
    verdict(&mut rec, ok);
    Ok(rec)
}

fn verify_exp_log(n: usize) -> Result<OutputRecord, CliError> {
    let mut rec = OutputRecord::new("verify", &["subject", "match"]);
    let mut ok = true;
    for m in BuiltinModel::ALL {
        let z = partition_function(&m.spec(), n, n)?;
        let same = exponentiate(&free_energy(&z)?)? == z;
        ok &= same;
        rec.push_row(vec![format!("exp(ln Z) = Z for {m}"), same.to_string()]);
    }
    let orders = n.min(DEFAULT_CAP);
    if orders >= 1 {
        let report = connected_totals_cross_check(orders)?;
        for (label, check) in [("posets", &report.posets), ("preorders", &report.preorders)] {
            ok &= check.holds();
            rec.push_row(vec![
                format!("exp(connected {label}) = totals up to {orders} points"),
                check.holds().to_string(),
            ]);
        }
    }
    verdict(&mut rec, ok);
    Ok(rec)
}

pub struct EnumerateOptions<'a> {
    pub connected: bool,
    pub unlabelled: bool,
    pub representatives: bool,
    pub allow_large: bool,
    pub model: &'a str,
}

pub fn enumerate(structure: &str, n: usize, opts: &EnumerateOptions) -> Result<OutputRecord, CliError> {
    let cap = if opts.allow_large { OVERRIDE_CAP } else { DEFAULT_CAP };
    let mut rec = match structure {
        "preorders" | "posets" => {
            let all = if structure == "preorders" {
                enumerate_preorders_capped(n, cap)?
            } else {
                enumerate_posets_capped(n, cap)?
            };
            let selected: Vec<_> = all.into_iter().filter(|r| !opts.connected || r.is_connected()).collect();
            let shown = if opts.unlabelled {
                unlabelled_representatives(&selected)?
            } else {
                selected
            };
            let mut rec = OutputRecord::new("enumerate", &["index", "relation"]);
            if opts.representatives {
                for (i, r) in shown.iter().enumerate() {
                    rec.push_row(vec![i.to_string(), r.to_string()]);
                }
            }
            rec.set("count", shown.len());
            rec
        }
        "diagrams" => {
            let model = load_model(opts.model)?;
            let mut data = wick::enumerate_diagrams(&model, n)?;
            if opts.connected {
                data = wick::connected_filter(&data);
            }
            let mut rec = OutputRecord::new(
                "enumerate",
                &["index", "lines", "vertices", "incidence", "aut_order", "symmetry_number", "connected"],
            )
            .param("model", opts.model);
            if opts.representatives {
                for (i, d) in data.iter().enumerate() {
                    let incidence = d
                        .diagram
                        .incidence()
                        .iter()
                        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("; ");
                    rec.push_row(vec![
                        i.to_string(),
                        format!("{:?}", d.diagram.line_arities()),
                        format!("{:?}", d.diagram.vertex_arities()),
                        format!("[{incidence}]"),
                        d.aut_order.to_string(),
                        d.symmetry_number.to_string(),
                        d.connected.to_string(),
                    ]);
                }
            }
            let sum: Rational = data.iter().map(|d| d.symmetry_number.clone()).sum();
            rec.set("count", data.len());
            rec.set("symmetry_sum", sum);
            rec
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown structure `{other}` (preorders, posets, diagrams)"
            )))
        }
    };
    rec = rec
        .param("structure", structure)
        .param("n", n)
        .param("connected", opts.connected)
        .param("unlabelled", opts.unlabelled || structure == "diagrams");
    Ok(rec)
}
