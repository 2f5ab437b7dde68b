use num::Zero;
use serde_json::json;

use super::brute::brute_force_opt;
use crate::error::Result;
use crate::json::edge_values_to_json;
use crate::model::{solution_cost, FractionalSolution, Instance, IntegralSolution};
use crate::rational::{self, Rational};
use crate::ratlp::relaxation_extreme_point;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    Finite(Rational),
    /// LP > 0 = IP.
    Infinite,
    /// LP = IP = 0.
    Undefined,
}

impl Gap {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Gap::Finite(g) => json!(rational::format(g)),
            Gap::Infinite => json!("inf"),
            Gap::Undefined => serde_json::Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub lp: Rational,
    pub ip: Rational,
    pub gap: Gap,
    pub extreme_point: FractionalSolution,
    pub optimum: IntegralSolution,
}

impl GapReport {
    pub fn to_json(&self, instance: &Instance) -> serde_json::Value {
        json!({
            "lp": rational::format(&self.lp),
            "ip": rational::format(&self.ip),
            "gap": self.gap.to_json(),
            "extreme_point": edge_values_to_json(instance, self.extreme_point.values()),
            "optimum": self.optimum.ids(instance),
        })
    }
}

/// Exact LP optimum over exact IP optimum.
pub fn integrality_gap(instance: &Instance, edge_limit: usize) -> Result<GapReport> {
    let optimum = brute_force_opt(instance, edge_limit)?;
    let ip = solution_cost(instance, &optimum)?;
    let (extreme_point, result) = relaxation_extreme_point(instance, None)?;
    let lp = result.objective;
    let gap = match (lp.is_zero(), ip.is_zero()) {
        (true, true) => Gap::Undefined,
        (false, true) => Gap::Infinite,
        _ => Gap::Finite(&lp / &ip),
    };
    Ok(GapReport {
        lp,
        ip,
        gap,
        extreme_point,
        optimum,
    })
}
