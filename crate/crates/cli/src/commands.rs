use std::collections::HashMap;
use std::io::Read;

use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use packlab::decomp::two_cs_pip_3approx_with;
use packlab::iterpack::{
    bmatching_pack_with, iterative_pack, khdm_2k_with, matching_pack_lp, matching_pack_with,
    monotone_removal_order, BlockingAudit, DriverOptions, PackOutcome,
};
use packlab::json::{
    decomposition_from_json, decomposition_to_json, edge_values_to_json, instance_to_json,
    parse_edge_values, parse_fractional, parse_instance,
};
use packlab::oracle::{self, integrality_gap};
use packlab::rational::{self, Rational};
use packlab::ratlp::{build_natural_relaxation, certify, relaxation_extreme_point, solve_lp};
use packlab::{verify_decomposition, Error, FractionalSolution, Instance};

use crate::{AlgorithmArg, Batch, OrderArg, RandomArgs};

pub enum Failure {
    Domain(Error),
    Io { path: String, detail: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    pub fn to_json(&self) -> Value {
        match self {
            Failure::Domain(e) => json!({"error": e.code(), "detail": e.to_string()}),
            Failure::Io { path, detail } => {
                json!({"error": "Io", "detail": format!("{path}: {detail}")})
            }
        }
    }
}

pub struct Output {
    pub value: Value,
    /// Exact ratios surfaced in the run report.
    pub ratios: Vec<(String, String)>,
    pub status: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output {
            value,
            ratios: Vec::new(),
            status: 0,
        }
    }

    fn with_ratio(mut self, name: &str, value: &Rational) -> Self {
        self.ratios.push((name.into(), rational::format(value)));
        self
    }
}

type CliResult = Result<Output, Failure>;

/// Reads every input once and remembers the bytes for the run digest.
#[derive(Default)]
pub struct Inputs {
    cache: HashMap<String, String>,
    hasher: Sha256,
}

impl Inputs {
    pub fn read(&mut self, path: &str) -> Result<String, Failure> {
        if let Some(text) = self.cache.get(path) {
            return Ok(text.clone());
        }
        let io = |e: std::io::Error| Failure::Io {
            path: path.to_string(),
            detail: e.to_string(),
        };
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(io)?
        };
        self.hasher.update(path.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.cache.insert(path.to_string(), text.clone());
        Ok(text)
    }

    pub fn instance(&mut self, path: &str) -> Result<Instance, Failure> {
        Ok(parse_instance(&self.read(path)?)?)
    }

    pub fn digest(&self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.clone().finalize()))
    }
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    Ok(rational::parse(text)?)
}

fn column_budget() -> Result<Option<usize>, Failure> {
    match std::env::var("PACKLAB_MAX_ITERS") {
        Err(_) => Ok(None),
        Ok(raw) => raw.trim().parse::<usize>().map(Some).map_err(|_| {
            Failure::Domain(Error::InvalidArgument(format!(
                "PACKLAB_MAX_ITERS must be a nonnegative integer, got `{raw}`"
            )))
        }),
    }
}

pub fn validate(inputs: &mut Inputs, file: &str) -> CliResult {
    let inst = inputs.instance(file)?;
    Ok(Output::ok(json!({
        "valid": true,
        "vertices": inst.num_vertices(),
        "edges": inst.num_edges(),
        "k": inst.k(),
        "uniform_demand": inst.is_uniform_demand(),
    })))
}

pub fn lp(inputs: &mut Inputs, file: &str, costs: Option<&str>) -> CliResult {
    let inst = inputs.instance(file)?;
    let costs = match costs {
        Some(path) => Some(parse_edge_values(&inst, &inputs.read(path)?)?),
        None => None,
    };
    let program = build_natural_relaxation(&inst, costs.as_deref());
    let result = solve_lp(&program)?;
    let cert = certify(&program, &result);
    let vertex_duals: serde_json::Map<String, Value> = inst
        .vertices()
        .iter()
        .zip(&result.duals)
        .map(|(v, y)| (v.id.clone(), json!(rational::format(y))))
        .collect();
    Ok(Output::ok(json!({
        "objective": rational::format(&result.objective),
        "x": edge_values_to_json(&inst, &result.x),
        "vertex_duals": vertex_duals,
        "edge_duals": edge_values_to_json(&inst, &result.bound_duals),
        "optimal": cert.is_optimal(),
        "extreme_point": cert.is_basic(),
    })))
}

fn audit_json(inst: &Instance, audit: &BlockingAudit) -> Value {
    json!({
        "edge": inst.edge(audit.edge).id,
        "value": rational::format(&audit.value),
        "delta_bar": audit.delta_bar,
        "room": rational::format(&audit.room()),
        "required": rational::format(&audit.required()),
        "condition_holds": audit.condition_holds(),
        "bounds_hold": audit.bounds_hold(),
        "endpoints": audit.endpoints.iter().map(|p| json!({
            "vertex": inst.vertex(p.vertex).id,
            "beta": rational::format(&p.beta),
            "bound": rational::format(&p.bound),
        })).collect::<Vec<_>>(),
    })
}

fn ratio_of(best: &Rational, lp: &Rational) -> Rational {
    if lp == &rational::zero() {
        rational::one()
    } else {
        best / lp
    }
}

fn approx_once(
    inst: &Instance,
    algorithm: AlgorithmArg,
    audit: bool,
    x: Option<&FractionalSolution>,
) -> CliResult {
    if x.is_some() && !matches!(algorithm, AlgorithmArg::Matching) {
        return Err(Error::InvalidArgument("--x applies only to matching".into()).into());
    }
    if let AlgorithmArg::Twocs = algorithm {
        if audit {
            return Err(Error::InvalidArgument(
                "--audit applies only to the iterative packing drivers".into(),
            )
            .into());
        }
        let out = two_cs_pip_3approx_with(inst, column_budget()?)?;
        let alpha = out.certificate.alpha.clone();
        let value = json!({
            "algorithm": "twocs",
            "alpha": rational::format(&alpha),
            "lp_objective": rational::format(&out.certificate.lp_objective),
            "best": out.best.ids(inst),
            "best_cost": rational::format(&out.best_cost),
            "x": edge_values_to_json(inst, out.x_hat.values()),
            "decomposition": decomposition_to_json(inst, &out.decomposition, &alpha),
            "certificate": out.certificate.to_json(),
        });
        return Ok(Output::ok(value)
            .with_ratio("ratio", &out.certificate.ratio)
            .with_ratio("alpha", &alpha));
    }
    let options = DriverOptions { audit };
    let out: PackOutcome = match algorithm {
        AlgorithmArg::Khdm => khdm_2k_with(inst, options)?,
        AlgorithmArg::Bmatching => bmatching_pack_with(inst, options)?,
        AlgorithmArg::Matching => match x {
            Some(x) => matching_pack_with(inst, x, options)?,
            None => matching_pack_lp(inst, options)?,
        },
        AlgorithmArg::Twocs => unreachable!(),
    };
    let ratio = ratio_of(&out.best_cost, &out.fractional_value);
    let mut value = json!({
        "algorithm": out.algorithm.name(),
        "alpha": rational::format(&out.alpha),
        "lp_objective": rational::format(&out.fractional_value),
        "best": out.best.ids(inst),
        "best_cost": rational::format(&out.best_cost),
        "ratio": rational::format(&ratio),
        "removal_order": out.removal_order.iter().map(|&e| inst.edge(e).id.clone()).collect::<Vec<_>>(),
        "x": edge_values_to_json(inst, out.x.values()),
        "decomposition": decomposition_to_json(inst, &out.decomposition, &out.alpha),
    });
    if audit {
        value["audits"] = out.audits.iter().map(|a| audit_json(inst, a)).collect();
    }
    Ok(Output::ok(value)
        .with_ratio("ratio", &ratio)
        .with_ratio("alpha", &out.alpha))
}

/// Runs `run` on `batch.trials` generated instances and collects the results by seed.
fn batched(batch: &Batch, run: impl Fn(&Instance) -> CliResult + Sync) -> CliResult {
    let params = batch.params.params();
    let seeds: Vec<u64> = (0..batch.trials).map(|i| batch.seed + i).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(batch.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let trials: Vec<(Value, bool)> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                let result = oracle::gen_random(&params, seed)
                    .map_err(Failure::from)
                    .and_then(|inst| run(&inst));
                match result {
                    Ok(out) => (json!({"seed": seed, "result": out.value}), out.status == 0),
                    Err(f) => (json!({"seed": seed, "failure": f.to_json()}), false),
                }
            })
            .collect()
    });
    let failures = trials.iter().filter(|(_, ok)| !ok).count();
    Ok(Output {
        value: json!({
            "trials": trials.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
            "failures": failures,
        }),
        ratios: Vec::new(),
        status: u8::from(failures > 0),
    })
}

fn need_file(file: Option<&str>) -> Result<&str, Failure> {
    file.ok_or_else(|| {
        Failure::Domain(Error::InvalidArgument(
            "give an instance file or --random".into(),
        ))
    })
}

pub fn approx(
    inputs: &mut Inputs,
    algorithm: AlgorithmArg,
    file: Option<&str>,
    audit: bool,
    x: Option<&str>,
    batch: &Batch,
) -> CliResult {
    if batch.random {
        if x.is_some() {
            return Err(
                Error::InvalidArgument("--x cannot be combined with --random".into()).into(),
            );
        }
        return batched(batch, |inst| approx_once(inst, algorithm, audit, None));
    }
    let inst = inputs.instance(need_file(file)?)?;
    let x = match x {
        Some(path) => Some(parse_fractional(&inst, &inputs.read(path)?)?),
        None => None,
    };
    approx_once(&inst, algorithm, audit, x.as_ref())
}

fn point_or_lp(
    inputs: &mut Inputs,
    inst: &Instance,
    x: Option<&str>,
) -> Result<FractionalSolution, Failure> {
    Ok(match x {
        Some(path) => parse_fractional(inst, &inputs.read(path)?)?,
        None => relaxation_extreme_point(inst, None)?.0,
    })
}

pub fn decompose(
    inputs: &mut Inputs,
    file: &str,
    alpha: &str,
    x: Option<&str>,
    order: OrderArg,
) -> CliResult {
    let inst = inputs.instance(file)?;
    let alpha = parse_rational(alpha)?;
    let x = point_or_lp(inputs, &inst, x)?;
    let order = match order {
        OrderArg::Monotone => monotone_removal_order(&inst)?,
        OrderArg::Index => (0..inst.num_edges()).collect(),
    };
    let decomposition = iterative_pack(&inst, &x, &alpha, &order)?;
    Ok(
        Output::ok(decomposition_to_json(&inst, &decomposition, &alpha))
            .with_ratio("alpha", &alpha),
    )
}

pub fn oracle(inputs: &mut Inputs, file: &str, max_edges: usize) -> CliResult {
    let inst = inputs.instance(file)?;
    let opt = oracle::brute_force_opt(&inst, max_edges)?;
    let cost = packlab::solution_cost(&inst, &opt)?;
    Ok(Output::ok(json!({
        "optimum": opt.ids(&inst),
        "cost": rational::format(&cost),
    })))
}

fn gap_once(inst: &Instance, max_edges: usize) -> CliResult {
    let report = integrality_gap(inst, max_edges)?;
    let mut out = Output::ok(report.to_json(inst));
    if let oracle::Gap::Finite(g) = &report.gap {
        out = out.with_ratio("gap", g);
    }
    Ok(out)
}

pub fn gap(inputs: &mut Inputs, file: Option<&str>, max_edges: usize, batch: &Batch) -> CliResult {
    if batch.random {
        return batched(batch, |inst| gap_once(inst, max_edges));
    }
    let inst = inputs.instance(need_file(file)?)?;
    gap_once(&inst, max_edges)
}

pub fn gen_triangle(d: u64) -> CliResult {
    Ok(Output::ok(instance_to_json(&oracle::gen_triangle(d)?)))
}

pub fn gen_plane(q: u64, d: u64) -> CliResult {
    Ok(Output::ok(instance_to_json(&oracle::gen_projective_plane(
        q, d,
    )?)))
}

pub fn gen_random(params: &RandomArgs, seed: u64) -> CliResult {
    Ok(Output::ok(instance_to_json(&oracle::gen_random(
        &params.params(),
        seed,
    )?)))
}

pub fn gen_star(capacity: u64, demands: &[u64], weights: &[String]) -> CliResult {
    let weights = weights
        .iter()
        .map(|w| parse_rational(w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output::ok(instance_to_json(&oracle::gen_star_knapsack(
        capacity, demands, &weights,
    )?)))
}

pub fn verify(
    inputs: &mut Inputs,
    instance: &str,
    decomposition: &str,
    alpha: Option<&str>,
    x: Option<&str>,
) -> CliResult {
    let inst = inputs.instance(instance)?;
    let text = inputs.read(decomposition)?;
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let embedded_x = doc.get("x").cloned();
    if let Some(inner) = doc.get_mut("decomposition") {
        doc = inner.take();
    }
    let (decomp, recorded) = decomposition_from_json(&inst, doc)?;
    let alpha = match alpha {
        Some(a) => parse_rational(a)?,
        None => recorded.clone(),
    };
    let x = match (x, embedded_x) {
        (Some(path), _) => parse_fractional(&inst, &inputs.read(path)?)?,
        (None, Some(values)) => parse_fractional(&inst, &values.to_string())?,
        (None, None) => relaxation_extreme_point(&inst, None)?.0,
    };
    let report = verify_decomposition(&inst, &decomp, &alpha, &x)?;
    let alpha_matches = alpha == recorded;
    let ok = report.ok() && alpha_matches;
    let value = json!({
        "ok": ok,
        "alpha": rational::format(&alpha),
        "alpha_matches_recorded": alpha_matches,
        "terms": decomp.len(),
        "total_mass": rational::format(&report.total_mass),
        "nonpositive_terms": report.nonpositive_terms,
        "infeasible_terms": report.infeasible_terms,
        "mismatches": report.mismatches.iter().map(|(e, expected, actual)| json!({
            "edge": inst.edge(*e).id,
            "expected": rational::format(expected),
            "actual": rational::format(actual),
        })).collect::<Vec<_>>(),
    });
    Ok(Output {
        value,
        ratios: Vec::new(),
        status: u8::from(!ok),
    })
}
