//! Compact command-line specs for graphs, patterns, weights, and functions.
//!
//! Graphs: `empty`, `complete`, `finite:1,2,5`, `cofinite:2`,
//! `periodic:7+2` or `periodic:1,3|7+2` (base|start+stride), named patterns
//! (`triangle`, `path4`, `k5`, `star6`, `cycle5`, `edge`), `@file.json`, or
//! inline JSON in any of the interchange forms.
//!
//! Weights: `geom2`, `geom3/2`, inline JSON, or `@file.json`. Functions:
//! `encode`, `dist:<graph>:<weight>`, `zeta<p>`, `indicator:<i0>;<i1>`.

use graphspace::calculus::GraphFn;
use graphspace::graph::{FiniteGraphH, Graph};
use graphspace::homind::IndicatorFn;
use graphspace::json;
use graphspace::labeling::{EdgeLabeling, Label, Permutation};
use graphspace::metrics::{WeightFn, ZetaFn};
use graphspace::rat::{parse_rat, Rat};
use std::collections::BTreeSet;
use std::fmt;
use std::fs;

#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn spec(message: impl Into<String>) -> Self {
        CliError {
            kind: "spec",
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

macro_rules! from_error {
    ($ty:ty, $kind:literal) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError {
                    kind: $kind,
                    message: e.to_string(),
                }
            }
        }
    };
}

from_error!(graphspace::graph::GraphError, "graph");
from_error!(graphspace::metrics::MetricError, "metric");
from_error!(graphspace::homind::HomindError, "homind");
from_error!(graphspace::calculus::CalculusError, "calculus");
from_error!(graphspace::density::DensityError, "density");
from_error!(graphspace::json::JsonError, "json");
from_error!(std::io::Error, "io");

pub fn parse_rat_arg(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| CliError::spec(e.to_string()))
}

pub fn parse_labels_csv(s: &str) -> Result<BTreeSet<Label>, CliError> {
    let mut labels = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let n: Label = part
            .parse()
            .map_err(|_| CliError::spec(format!("bad label {part:?}")))?;
        if n == 0 {
            return Err(CliError::spec("labels start at 1"));
        }
        labels.insert(n);
    }
    Ok(labels)
}

fn resolve_inline(s: &str) -> Result<Option<String>, CliError> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    if let Some(path) = t.strip_prefix('@') {
        return Ok(Some(fs::read_to_string(path)?));
    }
    if t.ends_with(".json") && std::path::Path::new(t).exists() {
        return Ok(Some(fs::read_to_string(t)?));
    }
    Ok(None)
}

pub fn parse_graph_spec(s: &str, labeling: &EdgeLabeling) -> Result<Graph, CliError> {
    if let Some(text) = resolve_inline(s)? {
        return Ok(json::graph_from_str(&text, labeling)?);
    }
    let t = s.trim();
    match t {
        "empty" => return Ok(Graph::empty()),
        "complete" => return Ok(Graph::complete()),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("finite:") {
        return Ok(Graph::finite(parse_labels_csv(rest)?));
    }
    if let Some(rest) = t.strip_prefix("cofinite:") {
        return Ok(Graph::cofinite(parse_labels_csv(rest)?));
    }
    if let Some(rest) = t.strip_prefix("periodic:") {
        let (base, tail) = match rest.split_once('|') {
            Some((b, t)) => (parse_labels_csv(b)?, t),
            None => (BTreeSet::new(), rest),
        };
        let (start, stride) = tail
            .split_once('+')
            .ok_or_else(|| CliError::spec("periodic tail must look like start+stride"))?;
        let start: Label = start
            .trim()
            .parse()
            .map_err(|_| CliError::spec(format!("bad tail start {start:?}")))?;
        let stride: Label = stride
            .trim()
            .parse()
            .map_err(|_| CliError::spec(format!("bad tail stride {stride:?}")))?;
        return Ok(Graph::periodic(base, start, stride)?);
    }
    if let Some(h) = named_pattern(t) {
        return Ok(h.to_graph(labeling));
    }
    Err(CliError::spec(format!("unrecognized graph spec {t:?}")))
}

pub fn parse_pattern_spec(s: &str) -> Result<FiniteGraphH, CliError> {
    if let Some(text) = resolve_inline(s)? {
        return Ok(json::pattern_from_str(&text)?);
    }
    named_pattern(s.trim())
        .ok_or_else(|| CliError::spec(format!("unrecognized pattern spec {s:?}")))
}

fn named_pattern(t: &str) -> Option<FiniteGraphH> {
    match t {
        "edge" => return Some(FiniteGraphH::complete_on(2)),
        "triangle" => return Some(FiniteGraphH::complete_on(3)),
        _ => {}
    }
    let numbered =
        |prefix: &str| -> Option<u64> { t.strip_prefix(prefix).and_then(|n| n.parse().ok()) };
    if let Some(n) = numbered("path") {
        return (n >= 2).then(|| FiniteGraphH::path(n));
    }
    if let Some(n) = numbered("k") {
        return (n >= 2).then(|| FiniteGraphH::complete_on(n));
    }
    if let Some(n) = numbered("star") {
        return (n >= 2).then(|| FiniteGraphH::star(n));
    }
    if let Some(n) = numbered("cycle") {
        return (n >= 3).then(|| FiniteGraphH::cycle(n));
    }
    None
}

pub fn parse_weight_spec(s: &str) -> Result<WeightFn, CliError> {
    if let Some(text) = resolve_inline(s)? {
        return Ok(json::weight_from_str(&text)?);
    }
    if let Some(rest) = s.trim().strip_prefix("geom") {
        return Ok(WeightFn::geometric(parse_rat_arg(rest)?)?);
    }
    Err(CliError::spec(format!("unrecognized weight spec {s:?}")))
}

pub fn parse_zeta_spec(s: &str) -> Result<ZetaFn, CliError> {
    if let Some(text) = resolve_inline(s)? {
        let value = serde_json::from_str(&text).map_err(|e| CliError::spec(e.to_string()))?;
        return Ok(json::zeta_from_value(&value)?);
    }
    if let Some(rest) = s.trim().strip_prefix("zeta") {
        return Ok(ZetaFn::geometric(parse_rat_arg(rest)?)?);
    }
    Err(CliError::spec(format!("unrecognized zeta spec {s:?}")))
}

pub fn parse_fn_spec(s: &str, labeling: &EdgeLabeling) -> Result<GraphFn, CliError> {
    let t = s.trim();
    if t == "encode" {
        return Ok(GraphFn::Encode);
    }
    if let Some(rest) = t.strip_prefix("dist:") {
        let (graph_part, weight_part) = rest
            .rsplit_once(':')
            .ok_or_else(|| CliError::spec("distance spec is dist:<graph>:<weight>"))?;
        let base = parse_graph_spec(graph_part, labeling)?;
        let phi = parse_weight_spec(weight_part)?;
        return Ok(GraphFn::distance(base, phi));
    }
    if let Some(rest) = t.strip_prefix("zeta") {
        return Ok(GraphFn::zeta(ZetaFn::geometric(parse_rat_arg(rest)?)?));
    }
    if let Some(rest) = t.strip_prefix("indicator:") {
        let (i0, i1) = rest
            .split_once(';')
            .ok_or_else(|| CliError::spec("indicator spec is indicator:<i0>;<i1>"))?;
        let f = IndicatorFn::finite(parse_labels_csv(i0)?, parse_labels_csv(i1)?)?;
        return Ok(GraphFn::indicator(f));
    }
    Err(CliError::spec(format!("unrecognized function spec {t:?}")))
}

/// Disjoint cycles in the form `(1 2)(5 7 9)`.
pub fn parse_twist(s: &str) -> Result<Permutation, CliError> {
    let t = s.trim();
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| CliError::spec("twist cycles look like (1 2)(5 7 9)"))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| CliError::spec("unclosed cycle"))?
            + open;
        let inner = &rest[open + 1..close];
        let mut cycle = Vec::new();
        for part in inner.split_whitespace() {
            let n: Label = part
                .parse()
                .map_err(|_| CliError::spec(format!("bad cycle entry {part:?}")))?;
            cycle.push(n);
        }
        cycles.push(cycle);
        rest = rest[close + 1..].trim_start();
    }
    Ok(Permutation::from_cycles(&cycles)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphspace::rat::rat;

    fn l() -> EdgeLabeling {
        EdgeLabeling::canonical()
    }

    #[test]
    fn graph_specs() {
        assert!(parse_graph_spec("empty", &l()).unwrap().is_empty());
        assert_eq!(
            parse_graph_spec("finite:1,3", &l()).unwrap(),
            Graph::finite([1, 3])
        );
        assert_eq!(
            parse_graph_spec("cofinite:2", &l()).unwrap(),
            Graph::cofinite([2])
        );
        assert_eq!(
            parse_graph_spec("periodic:5+2", &l()).unwrap(),
            Graph::periodic([], 5, 2).unwrap()
        );
        assert_eq!(
            parse_graph_spec("periodic:1,2|7+3", &l()).unwrap(),
            Graph::periodic([1, 2], 7, 3).unwrap()
        );
        assert_eq!(
            parse_graph_spec("triangle", &l()).unwrap(),
            Graph::finite([1, 2, 3])
        );
        assert_eq!(
            parse_graph_spec(r#"{"repr":"finite","labels":[4]}"#, &l()).unwrap(),
            Graph::finite([4])
        );
        assert!(parse_graph_spec("nonsense", &l()).is_err());
    }

    #[test]
    fn pattern_specs() {
        assert_eq!(parse_pattern_spec("path3").unwrap(), FiniteGraphH::path(3));
        assert_eq!(
            parse_pattern_spec("k4").unwrap(),
            FiniteGraphH::complete_on(4)
        );
        assert_eq!(
            parse_pattern_spec(r#"{"edges":[[1,2],[2,3]]}"#).unwrap(),
            FiniteGraphH::path(3)
        );
    }

    #[test]
    fn weight_and_fn_specs() {
        assert_eq!(
            parse_weight_spec("geom2").unwrap(),
            WeightFn::geometric_u64(2)
        );
        assert_eq!(
            parse_weight_spec("geom3/2").unwrap(),
            WeightFn::geometric(rat(3, 2)).unwrap()
        );
        assert!(parse_fn_spec("encode", &l()).is_ok());
        assert!(parse_fn_spec("dist:empty:geom2", &l()).is_ok());
        assert!(parse_fn_spec("dist:finite:1,2:geom3/2", &l()).is_ok());
        assert!(parse_fn_spec("zeta2", &l()).is_ok());
        assert!(parse_fn_spec("indicator:1,2;3", &l()).is_ok());
        assert!(parse_fn_spec("indicator:;3", &l()).is_ok());
        assert!(parse_fn_spec("mystery", &l()).is_err());
    }

    #[test]
    fn twist_spec() {
        let p = parse_twist("(1 2)(5 7 9)").unwrap();
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(7), 9);
        assert_eq!(p.apply(9), 5);
        assert!(parse_twist("(1 2)(2 3)").is_err());
    }
}
