//! JSON interchange for graphs, weights, patterns, indicator combinations,
//! and derivative verdicts. Rationals are serialized as `"p/q"` strings so
//! values survive the round trip exactly.

use crate::calculus::{DerivativeStatus, DerivativeVerdict};
use crate::density::TargetMarks;
use crate::graph::{FiniteGraphH, Graph, GraphError};
use crate::homind::{ComboTerm, Flavor, IndicatorCombo};
use crate::labeling::{EdgeId, EdgeLabeling};
use crate::metrics::{MetricError, WeightFn, ZetaFn};
use crate::rat::{parse_rat, Rat};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("graph JSON needs either a \"repr\" tag or an \"edges\" array")]
    UnknownGraphShape,
    #[error("labels start at 1")]
    InvalidLabel,
    #[error("oracle graphs have no JSON form")]
    UnsupportedRepr,
    #[error("unsupported field value {0:?}")]
    UnsupportedTail(String),
    #[error("{0}")]
    BadRational(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "repr", rename_all = "lowercase")]
enum GraphJson {
    Finite { labels: Vec<u64> },
    Cofinite { missing: Vec<u64> },
    Periodic { base: Vec<u64>, tail: TailJson },
}

#[derive(Serialize, Deserialize)]
struct TailJson {
    start: u64,
    stride: u64,
}

#[derive(Deserialize)]
struct EdgesJson {
    edges: Vec<(u64, u64)>,
}

pub fn graph_to_value(g: &Graph) -> Result<Value, JsonError> {
    let shape = if let Some(labels) = g.finite_labels() {
        GraphJson::Finite {
            labels: labels.iter().copied().collect(),
        }
    } else if let Some(missing) = g.cofinite_missing() {
        GraphJson::Cofinite {
            missing: missing.iter().copied().collect(),
        }
    } else if let Some((base, start, stride)) = g.periodic_parts() {
        GraphJson::Periodic {
            base: base.iter().copied().collect(),
            tail: TailJson { start, stride },
        }
    } else {
        return Err(JsonError::UnsupportedRepr);
    };
    Ok(serde_json::to_value(shape)?)
}

pub fn graph_to_string(g: &Graph) -> Result<String, JsonError> {
    Ok(serde_json::to_string(&graph_to_value(g)?)?)
}

/// Parses the tagged representation forms, or the `{"edges": [[i, j], ...]}`
/// pair form converted through the active labelling.
pub fn graph_from_str(s: &str, labeling: &EdgeLabeling) -> Result<Graph, JsonError> {
    let value: Value = serde_json::from_str(s)?;
    graph_from_value(&value, labeling)
}

pub fn graph_from_value(value: &Value, labeling: &EdgeLabeling) -> Result<Graph, JsonError> {
    let obj = value.as_object().ok_or(JsonError::UnknownGraphShape)?;
    if obj.contains_key("repr") {
        let shape: GraphJson = serde_json::from_value(value.clone())?;
        return match shape {
            GraphJson::Finite { labels } => {
                if labels.contains(&0) {
                    return Err(JsonError::InvalidLabel);
                }
                Ok(Graph::finite(labels))
            }
            GraphJson::Cofinite { missing } => {
                if missing.contains(&0) {
                    return Err(JsonError::InvalidLabel);
                }
                Ok(Graph::cofinite(missing))
            }
            GraphJson::Periodic { base, tail } => {
                Ok(Graph::periodic(base, tail.start, tail.stride)?)
            }
        };
    }
    if obj.contains_key("edges") {
        let shape: EdgesJson = serde_json::from_value(value.clone())?;
        let mut edges = Vec::with_capacity(shape.edges.len());
        for (a, b) in shape.edges {
            edges.push(EdgeId::new(a, b)?);
        }
        return Ok(Graph::from_edges(edges, labeling));
    }
    Err(JsonError::UnknownGraphShape)
}

pub fn weight_to_value(w: &WeightFn) -> Value {
    match w {
        WeightFn::Geometric { a } => json!({"kind": "geometric", "a": a.to_string()}),
        WeightFn::Tabulated { values, ratio } => json!({
            "kind": "tabulated",
            "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "tail": "geometric-from",
            "ratio": ratio.to_string(),
        }),
    }
}

pub fn weight_from_str(s: &str) -> Result<WeightFn, JsonError> {
    weight_from_value(&serde_json::from_str(s)?)
}

pub fn weight_from_value(value: &Value) -> Result<WeightFn, JsonError> {
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or(JsonError::UnknownGraphShape)?;
    match kind {
        "geometric" => {
            let a = rat_field(value, "a")?;
            Ok(WeightFn::geometric(a)?)
        }
        "tabulated" => {
            if let Some(tail) = value.get("tail").and_then(Value::as_str) {
                if tail != "geometric-from" {
                    return Err(JsonError::UnsupportedTail(tail.to_string()));
                }
            }
            let values = rat_array(value, "values")?;
            let ratio = rat_field(value, "ratio")?;
            Ok(WeightFn::tabulated(values, ratio)?)
        }
        other => Err(JsonError::UnsupportedTail(other.to_string())),
    }
}

pub fn zeta_to_value(z: &ZetaFn) -> Value {
    match z {
        ZetaFn::Geometric { p } => json!({"kind": "geometric", "p": p.to_string()}),
        ZetaFn::Tabulated { values, ratio } => json!({
            "kind": "tabulated",
            "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "tail": "geometric-from",
            "ratio": ratio.to_string(),
        }),
    }
}

pub fn zeta_from_value(value: &Value) -> Result<ZetaFn, JsonError> {
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or(JsonError::UnknownGraphShape)?;
    match kind {
        "geometric" => Ok(ZetaFn::geometric(rat_field(value, "p")?)?),
        "tabulated" => {
            let values = rat_array(value, "values")?;
            let ratio = rat_field(value, "ratio")?;
            Ok(ZetaFn::tabulated(values, ratio)?)
        }
        other => Err(JsonError::UnsupportedTail(other.to_string())),
    }
}

fn rat_field(value: &Value, key: &str) -> Result<Rat, JsonError> {
    let raw = value
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::BadRational(format!("missing field {key:?}")))?;
    parse_rat(raw).map_err(|e| JsonError::BadRational(e.to_string()))
}

fn rat_array(value: &Value, key: &str) -> Result<Vec<Rat>, JsonError> {
    let raw = value
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::BadRational(format!("missing array {key:?}")))?;
    raw.iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| JsonError::BadRational("values must be strings".into()))
                .and_then(|s| parse_rat(s).map_err(|e| JsonError::BadRational(e.to_string())))
        })
        .collect()
}

pub fn pattern_to_value(h: &FiniteGraphH) -> Value {
    let edges: Vec<[u64; 2]> = h.edges().map(|e| [e.i(), e.j()]).collect();
    json!({ "edges": edges })
}

pub fn pattern_from_str(s: &str) -> Result<FiniteGraphH, JsonError> {
    let shape: EdgesJson = serde_json::from_str(s)?;
    let mut edges = Vec::with_capacity(shape.edges.len());
    for (a, b) in shape.edges {
        edges.push(EdgeId::new(a, b)?);
    }
    Ok(FiniteGraphH::new(edges))
}

pub fn combo_to_value(c: &IndicatorCombo) -> Value {
    let terms: Vec<Value> = c
        .terms
        .iter()
        .map(|t| {
            json!({
                "coef": t.coef.to_string(),
                "H": pattern_to_value(&t.pattern),
                "flavor": match t.flavor { Flavor::Inj => "inj", Flavor::Ind => "ind" },
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn combo_from_str(s: &str) -> Result<IndicatorCombo, JsonError> {
    let value: Value = serde_json::from_str(s)?;
    let arr = value.as_array().ok_or(JsonError::UnknownGraphShape)?;
    let mut terms = Vec::with_capacity(arr.len());
    for item in arr {
        let coef = rat_field(item, "coef")?;
        let pattern = pattern_from_str(&serde_json::to_string(
            item.get("H").ok_or(JsonError::UnknownGraphShape)?,
        )?)?;
        let flavor = match item.get("flavor").and_then(Value::as_str) {
            Some("inj") => Flavor::Inj,
            Some("ind") => Flavor::Ind,
            other => return Err(JsonError::UnsupportedTail(format!("{other:?}"))),
        };
        terms.push(ComboTerm {
            coef,
            pattern,
            flavor,
        });
    }
    Ok(IndicatorCombo { terms })
}

pub fn verdict_to_value(v: &DerivativeVerdict) -> Value {
    let probes: Vec<Value> = v
        .traces
        .iter()
        .map(|t| {
            json!({
                "family": t.family,
                "quotients": t.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "limit": t.limit.as_ref().map(|l| l.to_string()),
            })
        })
        .collect();
    match &v.status {
        DerivativeStatus::Converged(iv) => json!({
            "status": "converged",
            "value": iv.midpoint().to_string(),
            "exact": iv.is_exact(),
            "lo": iv.lo().to_string(),
            "hi": iv.hi().to_string(),
            "probes": probes,
        }),
        DerivativeStatus::Diverged => json!({"status": "diverged", "probes": probes}),
        DerivativeStatus::Oscillating {
            family_a,
            family_b,
            limit_a,
            limit_b,
        } => json!({
            "status": "oscillating",
            "families": [family_a, family_b],
            "limits": [limit_a.to_string(), limit_b.to_string()],
            "probes": probes,
        }),
        DerivativeStatus::Inconclusive => json!({"status": "inconclusive", "probes": probes}),
    }
}

/// Sidecar form of the oscillation marks: one object per target.
pub fn marks_to_value(marks: &[TargetMarks]) -> Value {
    Value::Array(
        marks
            .iter()
            .map(|m| json!({"target": m.target.to_string(), "indices": m.indices}))
            .collect(),
    )
}
