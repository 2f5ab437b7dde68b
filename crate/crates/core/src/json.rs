//! JSON file formats: instances, decompositions, and per-edge rational maps.
//!
//! Rationals are written as `"p/q"` strings (integers as `"p"`). Emission is
//! deterministic: vertices, edges and the edges inside each term come out in
//! ascending id order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConvexDecomposition, FractionalSolution, Instance, IntegralSolution, Term};
use crate::rational::{serde_rational, Rational};

#[derive(Debug, Serialize, Deserialize)]
struct VertexJson {
    id: String,
    capacity: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct EndpointJson {
    vertex: String,
    demand: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    id: String,
    endpoints: Vec<EndpointJson>,
    #[serde(with = "serde_rational")]
    weight: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "serde_rational")]
    lambda: Rational,
    edges: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecompositionJson {
    #[serde(with = "serde_rational")]
    alpha: Rational,
    terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(transparent)]
struct RationalJson(#[serde(with = "serde_rational")] Rational);

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: InstanceJson = serde_json::from_str(text).map_err(parse_err)?;
    instance_from_value(raw)
}

fn instance_from_value(raw: InstanceJson) -> Result<Instance> {
    let mut builder = Instance::builder();
    for v in raw.vertices {
        builder.add_vertex(v.id, v.capacity);
    }
    for e in raw.edges {
        let ends = e
            .endpoints
            .into_iter()
            .map(|p| (p.vertex, p.demand))
            .collect();
        builder.add_edge(e.id, ends, e.weight);
    }
    builder.build()
}

fn instance_value(instance: &Instance) -> InstanceJson {
    InstanceJson {
        vertices: instance
            .vertices()
            .iter()
            .map(|v| VertexJson {
                id: v.id.clone(),
                capacity: v.capacity,
            })
            .collect(),
        edges: instance
            .edges()
            .iter()
            .map(|e| EdgeJson {
                id: e.id.clone(),
                endpoints: e
                    .endpoints
                    .iter()
                    .map(|p| EndpointJson {
                        vertex: instance.vertex(p.vertex).id.clone(),
                        demand: p.demand,
                    })
                    .collect(),
                weight: e.weight.clone(),
            })
            .collect(),
    }
}

pub fn instance_to_json(instance: &Instance) -> serde_json::Value {
    serde_json::to_value(instance_value(instance)).expect("instance serializes")
}

pub fn emit_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&instance_value(instance)).expect("instance serializes")
}

pub fn decomposition_to_json(
    instance: &Instance,
    decomposition: &ConvexDecomposition,
    alpha: &Rational,
) -> serde_json::Value {
    let raw = DecompositionJson {
        alpha: alpha.clone(),
        terms: decomposition
            .terms()
            .iter()
            .map(|t| TermJson {
                lambda: t.lambda.clone(),
                edges: t.solution.ids(instance),
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("decomposition serializes")
}

pub fn emit_decomposition(
    instance: &Instance,
    decomposition: &ConvexDecomposition,
    alpha: &Rational,
) -> String {
    serde_json::to_string_pretty(&decomposition_to_json(instance, decomposition, alpha))
        .expect("decomposition serializes")
}

/// Parses a decomposition and resolves its edge ids; returns it with its recorded α.
pub fn parse_decomposition(
    instance: &Instance,
    text: &str,
) -> Result<(ConvexDecomposition, Rational)> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    decomposition_from_json(instance, value)
}

pub fn decomposition_from_json(
    instance: &Instance,
    value: serde_json::Value,
) -> Result<(ConvexDecomposition, Rational)> {
    let raw: DecompositionJson = serde_json::from_value(value).map_err(parse_err)?;
    let terms = raw
        .terms
        .into_iter()
        .map(|t| {
            Ok(Term {
                lambda: t.lambda,
                solution: IntegralSolution::from_ids(instance, &t.edges)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ConvexDecomposition::from_terms(terms), raw.alpha))
}

/// Parses `{"edge-id": "p/q", ...}` into a dense vector; missing edges are zero.
pub fn parse_edge_values(instance: &Instance, text: &str) -> Result<Vec<Rational>> {
    let raw: BTreeMap<String, RationalJson> = serde_json::from_str(text).map_err(parse_err)?;
    let mut values = vec![crate::rational::zero(); instance.num_edges()];
    for (id, RationalJson(v)) in raw {
        let e = instance
            .edge_index(&id)
            .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
        values[e] = v;
    }
    Ok(values)
}

pub fn parse_fractional(instance: &Instance, text: &str) -> Result<FractionalSolution> {
    FractionalSolution::new(instance, parse_edge_values(instance, text)?)
}

/// `{"edge-id": "p/q"}` for every edge, in id order.
pub fn edge_values_to_json(instance: &Instance, values: &[Rational]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = instance
        .edges()
        .iter()
        .zip(values)
        .map(|(e, v)| (e.id.clone(), serde_json::Value::String(v.to_string())))
        .collect();
    serde_json::Value::Object(map)
}
