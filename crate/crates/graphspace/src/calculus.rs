//! Difference-quotient calculus on graph space through the binary encoding.
//!
//! The weak norm at base 2 embeds graph space into `[0, 1]`; the derivative
//! of a real-valued graph function at `G` is the limit of
//! `(f(G xor D) - f(G)) / (||G xor D||_2 - ||G||_2)` over perturbations `D`
//! shrinking to nothing while keeping the perturbed graph in the proper
//! class (neither finite nor cofinite). Probe families supply concrete
//! perturbation sequences; every quotient is an exact rational, so the
//! tolerance only governs limit detection, never roundoff.
//!
//! A verdict produced from finitely many probes is evidence, not proof:
//! `Converged` means "consistent to the probed depth".
//!
//! The denominators are computed through the identity
//! `||G xor D||_2 - ||G||_2 = ||D||_2 - 2 ||D ∩ G||_2`, which needs only
//! intersections and therefore stays exact even when `G xor D` has no
//! closed representation.

use crate::graph::{class_of_xor, intersect, sym_diff, Graph, GraphClass, GraphError, OracleTag};
use crate::homind::{IndicatorCombo, IndicatorFn};
use crate::labeling::{EdgeLabeling, Label, Permutation};
use crate::metrics::{MetricError, WeightFn, ZetaFn};
use crate::rat::{pow2, rat_i64, rat_u64, DyadicInterval, Rat};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("the derivative is not defined at the empty or complete graph")]
    EndpointExcluded,
    #[error("probe {index} of family {family:?} leaves the proper class")]
    InadmissibleProbe { family: String, index: usize },
    #[error("combining rules need the part derivatives at the query graph")]
    UnknownPartDerivative,
    #[error("expected a finite or cofinite graph for {0}")]
    NotFiniteOrCofinite(&'static str),
    #[error("expected a proper periodic graph for {0}")]
    NotProper(&'static str),
    #[error("{0} is not a dyadic rational in [0, 1]")]
    NotDyadic(Rat),
    #[error("exact evaluation requires closed representations")]
    InexactEvaluation,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Exact weak norm at base 2 of a closed graph.
pub fn norm2(g: &Graph) -> Result<Rat, CalculusError> {
    WeightFn::geometric_u64(2)
        .measure(g)
        .ok_or(CalculusError::InexactEvaluation)
}

/// Exact value of `||G xor D||_2 - ||G||_2` via intersections only.
pub fn norm2_delta(g: &Graph, delta: &Graph) -> Result<Rat, CalculusError> {
    let d = norm2(delta)?;
    let shared = norm2(&intersect(delta, g)?)?;
    Ok(d - rat_u64(2) * shared)
}

/// The binary encoding itself: exact for closed graphs, an interval
/// enclosure of width at most `2^-depth` for oracles.
pub fn encode(g: &Graph, depth: Label) -> DyadicInterval {
    WeightFn::geometric_u64(2).measure_interval(g, depth.max(1))
}

/// Finite graph whose encoding is the given dyadic rational in `[0, 1]`
/// (the complete graph for 1).
pub fn dyadic_preimage(x: &Rat) -> Result<Graph, CalculusError> {
    if x.is_negative() || *x > Rat::one() {
        return Err(CalculusError::NotDyadic(x.clone()));
    }
    if x.is_one() {
        return Ok(Graph::complete());
    }
    let mut denom = x.denom().clone();
    let mut k: u64 = 0;
    let two = num_bigint::BigInt::from(2);
    while (&denom % &two).is_zero() {
        denom /= &two;
        k += 1;
    }
    if !denom.is_one() {
        return Err(CalculusError::NotDyadic(x.clone()));
    }
    let p = x.numer();
    let labels = (1..=k).filter(|&n| p.bit(k - n));
    Ok(Graph::finite(labels))
}

/// A polynomial with rational coefficients, `coeffs[i]` on `x^i`. Serves as
/// the outer function of the chain rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Polynomial { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| rat_u64(i as u64) * c)
            .collect();
        Polynomial { coeffs }
    }
}

/// A real-valued function on graph space with exact rational evaluation.
#[derive(Clone)]
pub enum GraphFn {
    /// The binary encoding `||.||_2`.
    Encode,
    /// Distance from a fixed base graph under a summable weight.
    Distance { base: Graph, phi: WeightFn },
    /// The locally constant min-weight norm.
    ZetaNorm { zeta: ZetaFn },
    /// A two-sided indicator on label sets.
    Indicator { f: IndicatorFn },
    /// A rational combination of pattern indicators.
    Combo {
        combo: IndicatorCombo,
        labeling: EdgeLabeling,
    },
    /// Pointwise product.
    Product(Box<GraphFn>, Box<GraphFn>),
    /// Polynomial post-composition `outer(inner(.))`.
    Compose {
        outer: Polynomial,
        inner: Box<GraphFn>,
    },
    /// User-registered function; exactness is the caller's responsibility.
    Custom {
        name: String,
        eval: Arc<dyn Fn(&Graph) -> Rat + Send + Sync>,
    },
}

impl std::fmt::Debug for GraphFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphFn::Encode => write!(f, "Encode"),
            GraphFn::Distance { base, .. } => write!(f, "Distance(from {:?})", base),
            GraphFn::ZetaNorm { .. } => write!(f, "ZetaNorm"),
            GraphFn::Indicator { .. } => write!(f, "Indicator"),
            GraphFn::Combo { .. } => write!(f, "Combo"),
            GraphFn::Product(a, b) => write!(f, "Product({:?}, {:?})", a, b),
            GraphFn::Compose { inner, .. } => write!(f, "Compose(poly, {:?})", inner),
            GraphFn::Custom { name, .. } => write!(f, "Custom({name:?})"),
        }
    }
}

impl GraphFn {
    pub fn distance(base: Graph, phi: WeightFn) -> Self {
        GraphFn::Distance { base, phi }
    }

    pub fn zeta(zeta: ZetaFn) -> Self {
        GraphFn::ZetaNorm { zeta }
    }

    pub fn indicator(f: IndicatorFn) -> Self {
        GraphFn::Indicator { f }
    }

    pub fn eval(&self, g: &Graph) -> Result<Rat, CalculusError> {
        match self {
            GraphFn::Encode => norm2(g),
            GraphFn::Distance { base, phi } => crate::metrics::dist(base, g, phi, 1)
                .value()
                .cloned()
                .ok_or(CalculusError::InexactEvaluation),
            GraphFn::ZetaNorm { zeta } => match g.min_label() {
                Ok(Some(n)) => Ok(zeta.eval(n)),
                Ok(None) => Ok(Rat::zero()),
                Err(_) => Err(CalculusError::InexactEvaluation),
            },
            GraphFn::Indicator { f } => Ok(rat_i64(f.eval(g) as i64)),
            GraphFn::Combo { combo, labeling } => Ok(combo.eval(g, labeling)),
            GraphFn::Product(a, b) => Ok(a.eval(g)? * b.eval(g)?),
            GraphFn::Compose { outer, inner } => Ok(outer.eval(&inner.eval(g)?)),
            GraphFn::Custom { eval, .. } => Ok(eval(g)),
        }
    }

    /// `f(G xor D)`, computed without requiring `G xor D` to have a closed
    /// representation: the distance case goes through measure algebra, the
    /// locally constant cases through pointwise membership.
    pub fn eval_perturbed(&self, g: &Graph, delta: &Graph) -> Result<Rat, CalculusError> {
        match self {
            GraphFn::Encode => Ok(norm2(g)? + norm2_delta(g, delta)?),
            GraphFn::Distance { base, phi } => {
                let at_g = self.eval(g)?;
                // the toggled labels move the distance by
                // phi(D) - 2 phi(D ∩ (base xor G))
                let d = phi.measure(delta).ok_or(CalculusError::InexactEvaluation)?;
                let with_base = phi
                    .measure(&intersect(delta, base)?)
                    .ok_or(CalculusError::InexactEvaluation)?;
                let with_g = phi
                    .measure(&intersect(delta, g)?)
                    .ok_or(CalculusError::InexactEvaluation)?;
                let with_both = phi
                    .measure(&intersect(&intersect(delta, base)?, g)?)
                    .ok_or(CalculusError::InexactEvaluation)?;
                let crossing = with_base + with_g - rat_u64(2) * with_both;
                Ok(at_g + d - rat_u64(2) * crossing)
            }
            GraphFn::ZetaNorm { zeta } => match first_member_of_xor(g, delta)? {
                Some(n) => Ok(zeta.eval(n)),
                None => Ok(Rat::zero()),
            },
            GraphFn::Indicator { f } => {
                let perturbed = perturbed_graph(g, delta)?;
                Ok(rat_i64(f.eval(&perturbed) as i64))
            }
            GraphFn::Combo { combo, labeling } => {
                let perturbed = perturbed_graph(g, delta)?;
                Ok(combo.eval(&perturbed, labeling))
            }
            GraphFn::Product(a, b) => Ok(a.eval_perturbed(g, delta)? * b.eval_perturbed(g, delta)?),
            GraphFn::Compose { outer, inner } => Ok(outer.eval(&inner.eval_perturbed(g, delta)?)),
            GraphFn::Custom { eval, .. } => Ok(eval(&perturbed_graph(g, delta)?)),
        }
    }
}

/// `G xor D` as a graph value: closed when the tails merge, otherwise an
/// oracle over the two memberships tagged with the exact class.
pub fn perturbed_graph(g: &Graph, delta: &Graph) -> Result<Graph, CalculusError> {
    match sym_diff(g, delta) {
        Ok(composed) => Ok(composed),
        Err(GraphError::IncompatiblePeriodic) | Err(GraphError::MergeOverflow(_)) => {
            let tag = match class_of_xor(&[g, delta]) {
                Some(GraphClass::Finite) => OracleTag::Finite,
                Some(GraphClass::Cofinite) => OracleTag::Cofinite,
                Some(GraphClass::Proper) => OracleTag::Proper,
                None => OracleTag::Unknown,
            };
            let ga = g.clone();
            let gb = delta.clone();
            Ok(Graph::oracle(
                move |n| ga.contains_label(n) ^ gb.contains_label(n),
                tag,
            ))
        }
        Err(e) => Err(e.into()),
    }
}

/// Smallest label of `G xor D` for closed operands, `None` when they are
/// equal. Past both heads the memberships are periodic, so one common
/// period bounds the search.
fn first_member_of_xor(g: &Graph, delta: &Graph) -> Result<Option<Label>, CalculusError> {
    let (hg, hd) = (g.head_end()?, delta.head_end()?);
    let stride = |x: &Graph| x.periodic_parts().map_or(1, |(_, _, s)| s);
    let bound = hg.max(hd) + stride(g) * stride(delta);
    Ok((1..=bound).find(|&n| g.contains_label(n) != delta.contains_label(n)))
}

/// A label relabelling applied to the encoding side of the quotient: either
/// a genuine finite-support permutation, or the symbolic tail shift
/// `n -> n + offset` (not a bijection; the comparison device showing that
/// infinite-support relabellings break the derivative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelTwist {
    Permutation(Permutation),
    TailShift { offset: u32 },
}

impl LabelTwist {
    /// The twisted base-2 measure `sum over edges of 2^(-twist(label))`.
    fn measure2(&self, s: &Graph) -> Result<Rat, CalculusError> {
        match self {
            LabelTwist::Permutation(p) => {
                let mut m = norm2(s)?;
                for n in p.support() {
                    if s.contains_label(n) {
                        m += pow2(-(p.apply(n) as i64)) - pow2(-(n as i64));
                    }
                }
                Ok(m)
            }
            LabelTwist::TailShift { offset } => Ok(pow2(-(*offset as i64)) * norm2(s)?),
        }
    }

    fn delta(&self, g: &Graph, delta: &Graph) -> Result<Rat, CalculusError> {
        let d = self.measure2(delta)?;
        let shared = self.measure2(&intersect(delta, g)?)?;
        Ok(d - rat_u64(2) * shared)
    }
}

/// A sequence of shrinking perturbations. Probes are indexed from 1 and
/// their base-2 norms decrease strictly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeFamily {
    name: String,
    kind: ProbeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ProbeKind {
    /// Single-label toggles at `start`, `start+1`, ...
    SingleEdge {
        start: Label,
    },
    /// Arithmetic tails `{first + (k-1) step, +stride, +2 stride, ...}`.
    Tail {
        first_start: Label,
        step: Label,
        stride: Label,
    },
    Explicit {
        probes: Vec<Graph>,
    },
}

impl ProbeFamily {
    pub fn single_edges(start: Label) -> Self {
        ProbeFamily {
            name: format!("single-edge toggles from {start}"),
            kind: ProbeKind::SingleEdge {
                start: start.max(1),
            },
        }
    }

    pub fn tails(first_start: Label, step: Label, stride: Label) -> Self {
        assert!(stride >= 2 && step >= 1 && first_start >= 1);
        ProbeFamily {
            name: format!("stride-{stride} tails from {first_start} step {step}"),
            kind: ProbeKind::Tail {
                first_start,
                step,
                stride,
            },
        }
    }

    pub fn explicit(name: impl Into<String>, probes: Vec<Graph>) -> Self {
        ProbeFamily {
            name: name.into(),
            kind: ProbeKind::Explicit { probes },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The `k`-th perturbation, `k >= 1`.
    pub fn probe(&self, k: usize) -> Option<Graph> {
        match &self.kind {
            ProbeKind::SingleEdge { start } => Some(Graph::finite([start + (k as Label - 1)])),
            ProbeKind::Tail {
                first_start,
                step,
                stride,
            } => Some(
                Graph::periodic([], first_start + (k as Label - 1) * step, *stride)
                    .expect("valid tail"),
            ),
            ProbeKind::Explicit { probes } => probes.get(k - 1).cloned(),
        }
    }

    pub fn len_limit(&self) -> Option<usize> {
        match &self.kind {
            ProbeKind::Explicit { probes } => Some(probes.len()),
            _ => None,
        }
    }

    /// Default probe catalogue for a target graph: periodic tails of both
    /// parities for finite and cofinite targets (single-edge toggles would
    /// leave the proper class), and single-edge toggles plus tail-aligned
    /// families for proper targets.
    pub fn defaults_for(g: &Graph) -> Result<Vec<ProbeFamily>, CalculusError> {
        if g.is_oracle() {
            return Err(CalculusError::Graph(GraphError::OracleUnsupported));
        }
        match g.classification().expect("closed graph") {
            GraphClass::Finite | GraphClass::Cofinite => {
                let h = g.head_end()? + 1;
                Ok(vec![
                    ProbeFamily::tails(h, 2, 2),
                    ProbeFamily::tails(h + 1, 2, 2),
                    ProbeFamily::tails(h, 4, 4),
                ])
            }
            GraphClass::Proper => {
                let (_, start, stride) = g.periodic_parts().expect("proper is periodic");
                let mut families = vec![
                    ProbeFamily::single_edges(start),
                    ProbeFamily::tails(start + stride, stride, 2 * stride),
                ];
                let offset = if stride % 2 == 0 { stride / 2 } else { 1 };
                families.push(ProbeFamily::tails(
                    start + stride + offset,
                    stride,
                    2 * stride,
                ));
                Ok(families)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeConfig {
    /// Agreement tolerance for limit detection.
    pub tol: Rat,
    /// Number of trailing quotients that must agree.
    pub window: usize,
    /// Probes evaluated per family.
    pub max_depth: usize,
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        DerivativeConfig {
            tol: pow2(-20),
            window: 5,
            max_depth: 40,
        }
    }
}

/// Quotient trace of one probe family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeTrace {
    pub family: String,
    /// Encodings of the perturbed graphs, relative to the target.
    pub steps: Vec<Rat>,
    pub quotients: Vec<Rat>,
    /// The stabilized value when the trailing window agreed.
    pub limit: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivativeStatus {
    /// Every family stabilized and the family limits agree within twice the
    /// tolerance; the interval hulls the limits.
    Converged(DyadicInterval),
    Diverged,
    /// Two families stabilized to values farther apart than twice the
    /// tolerance.
    Oscillating {
        family_a: usize,
        family_b: usize,
        limit_a: Rat,
        limit_b: Rat,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeVerdict {
    pub status: DerivativeStatus,
    pub traces: Vec<ProbeTrace>,
}

impl DerivativeVerdict {
    pub fn converged_value(&self) -> Option<Rat> {
        match &self.status {
            DerivativeStatus::Converged(iv) => Some(iv.midpoint()),
            _ => None,
        }
    }
}

fn stabilized(quotients: &[Rat], tol: &Rat, window: usize) -> Option<Rat> {
    if quotients.len() < window {
        return None;
    }
    let last = &quotients[quotients.len() - 1];
    quotients[quotients.len() - window..]
        .iter()
        .all(|q| (q - last).abs() <= *tol)
        .then(|| last.clone())
}

fn diverging(quotients: &[Rat], window: usize) -> bool {
    if quotients.len() < window {
        return false;
    }
    let tail = &quotients[quotients.len() - window..];
    tail.windows(2).all(|w| w[1].abs() > w[0].abs()) && tail[tail.len() - 1].abs() > pow2(20)
}

struct FamilyRun {
    trace: ProbeTrace,
}

fn run_family(
    f: &GraphFn,
    g: &Graph,
    f_at_g: &Rat,
    family: &ProbeFamily,
    denominator: &dyn Fn(&Graph) -> Result<Rat, CalculusError>,
    check_sign: bool,
    cfg: &DerivativeConfig,
) -> Result<FamilyRun, CalculusError> {
    let mut steps = Vec::new();
    let mut quotients = Vec::new();
    let depth = family
        .len_limit()
        .map_or(cfg.max_depth, |l| l.min(cfg.max_depth));
    for k in 1..=depth {
        let Some(probe) = family.probe(k) else { break };
        if class_of_xor(&[g, &probe]) != Some(GraphClass::Proper) {
            return Err(CalculusError::InadmissibleProbe {
                family: family.name().to_string(),
                index: k,
            });
        }
        let den = denominator(&probe)?;
        assert!(!den.is_zero(), "probe produced a zero encoding step");
        if check_sign {
            // the first toggled label decides the lexicographic side
            let first = probe.min_label()?.expect("nonempty probe");
            let adds = !g.contains_label(first);
            assert_eq!(
                den.is_positive(),
                adds,
                "encoding step disagrees with the lexicographic side"
            );
        }
        let num = f.eval_perturbed(g, &probe)? - f_at_g;
        steps.push(den.clone());
        quotients.push(num / den);
        if stabilized(&quotients, &cfg.tol, cfg.window).is_some() {
            break;
        }
    }
    let limit = stabilized(&quotients, &cfg.tol, cfg.window);
    Ok(FamilyRun {
        trace: ProbeTrace {
            family: family.name().to_string(),
            steps,
            quotients,
            limit,
        },
    })
}

fn verdict_from_traces(traces: Vec<ProbeTrace>, cfg: &DerivativeConfig) -> DerivativeVerdict {
    let limits: Vec<Option<&Rat>> = traces.iter().map(|t| t.limit.as_ref()).collect();
    let two_tol = rat_u64(2) * &cfg.tol;
    // two stabilized families disagreeing by more than 2 tol oscillate
    for i in 0..limits.len() {
        for j in (i + 1)..limits.len() {
            if let (Some(a), Some(b)) = (limits[i], limits[j]) {
                if (a - b).abs() > two_tol {
                    return DerivativeVerdict {
                        status: DerivativeStatus::Oscillating {
                            family_a: i,
                            family_b: j,
                            limit_a: a.clone(),
                            limit_b: b.clone(),
                        },
                        traces,
                    };
                }
            }
        }
    }
    if !traces.is_empty() && limits.iter().all(|l| l.is_some()) {
        let values: Vec<Rat> = limits.into_iter().map(|l| l.unwrap().clone()).collect();
        let lo = values.iter().min().unwrap().clone();
        let hi = values.iter().max().unwrap().clone();
        return DerivativeVerdict {
            status: DerivativeStatus::Converged(DyadicInterval::new(lo, hi)),
            traces,
        };
    }
    if traces.iter().any(|t| diverging(&t.quotients, cfg.window)) {
        return DerivativeVerdict {
            status: DerivativeStatus::Diverged,
            traces,
        };
    }
    DerivativeVerdict {
        status: DerivativeStatus::Inconclusive,
        traces,
    }
}

fn check_target(g: &Graph) -> Result<(), CalculusError> {
    if g.is_oracle() {
        return Err(CalculusError::Graph(GraphError::OracleUnsupported));
    }
    if g.is_empty() || g.is_complete() {
        return Err(CalculusError::EndpointExcluded);
    }
    Ok(())
}

/// Difference-quotient derivative of `f` at `g` along the probe families.
pub fn derivative(
    f: &GraphFn,
    g: &Graph,
    probes: &[ProbeFamily],
    cfg: &DerivativeConfig,
) -> Result<DerivativeVerdict, CalculusError> {
    check_target(g)?;
    let f_at_g = f.eval(g)?;
    let mut traces = Vec::new();
    for family in probes {
        let run = run_family(
            f,
            g,
            &f_at_g,
            family,
            &|probe| norm2_delta(g, probe),
            true,
            cfg,
        )?;
        traces.push(run.trace);
    }
    Ok(verdict_from_traces(traces, cfg))
}

/// Derivative with the encoding twisted by a label relabelling. For a
/// finite-support permutation and probes beyond its support the quotients
/// coincide with the untwisted ones; for the symbolic tail shift by `n0`
/// every quotient is scaled by `2^n0`, which is the observable trace of a
/// relabelling that moves infinitely many labels.
pub fn twisted_derivative(
    f: &GraphFn,
    g: &Graph,
    twist: &LabelTwist,
    probes: &[ProbeFamily],
    cfg: &DerivativeConfig,
) -> Result<DerivativeVerdict, CalculusError> {
    check_target(g)?;
    let f_at_g = f.eval(g)?;
    let mut traces = Vec::new();
    for family in probes {
        let run = run_family(
            f,
            g,
            &f_at_g,
            family,
            &|probe| twist.delta(g, probe),
            false,
            cfg,
        )?;
        traces.push(run.trace);
    }
    Ok(verdict_from_traces(traces, cfg))
}

/// Probe families starting beyond every label the twist moves, so that a
/// finite-support twist provably cannot affect the quotients.
pub fn probes_beyond_twist(
    g: &Graph,
    twist: &LabelTwist,
) -> Result<Vec<ProbeFamily>, CalculusError> {
    let twist_end = match twist {
        LabelTwist::Permutation(p) => p.max_support().map_or(0, |m| m + 1),
        LabelTwist::TailShift { .. } => 0,
    };
    let families = ProbeFamily::defaults_for(g)?;
    if twist_end == 0 {
        return Ok(families);
    }
    // rebase each family start past the twist support, preserving alignment
    let mut rebased = Vec::new();
    for fam in families {
        rebased.push(match fam.kind {
            ProbeKind::SingleEdge { start } => ProbeFamily::single_edges(start.max(twist_end)),
            ProbeKind::Tail {
                first_start,
                step,
                stride,
            } => {
                let mut s = first_start;
                while s < twist_end {
                    s += step;
                }
                ProbeFamily::tails(s, step, stride)
            }
            ProbeKind::Explicit { probes } => ProbeFamily::explicit(fam.name, probes),
        });
    }
    Ok(rebased)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignCase {
    BothFinite,
    BothCofinite,
    FiniteToCofinite,
    CofiniteToFinite,
}

impl SignCase {
    pub fn sign(self) -> i64 {
        match self {
            SignCase::BothFinite | SignCase::BothCofinite => 1,
            _ => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDerivative {
    pub value: Rat,
    /// The slope constant `lim 2^n w(n)` of the weight.
    pub c: Rat,
    pub case: SignCase,
}

/// Closed-form derivative of `d(base, .)` at `g`: plus or minus the slope
/// constant of the weight, the sign depending on whether `g` and
/// `g xor base` sit in the same class (finite/finite or cofinite/cofinite)
/// or in mixed classes.
pub fn distance_derivative(
    base: &Graph,
    phi: &WeightFn,
    g: &Graph,
) -> Result<DistanceDerivative, CalculusError> {
    check_target(g)?;
    let base_class = base
        .classification()
        .ok_or(CalculusError::NotFiniteOrCofinite("the base graph"))?;
    if base_class == GraphClass::Proper {
        return Err(CalculusError::NotFiniteOrCofinite("the base graph"));
    }
    let g_class = match g.classification() {
        Some(GraphClass::Finite) => GraphClass::Finite,
        Some(GraphClass::Cofinite) => GraphClass::Cofinite,
        _ => return Err(CalculusError::NotFiniteOrCofinite("the query graph")),
    };
    let diff_class = class_of_xor(&[g, base]);
    let case = match (g_class, diff_class) {
        (GraphClass::Finite, Some(GraphClass::Finite)) => SignCase::BothFinite,
        (GraphClass::Cofinite, Some(GraphClass::Cofinite)) => SignCase::BothCofinite,
        (GraphClass::Finite, Some(GraphClass::Cofinite)) => SignCase::FiniteToCofinite,
        (GraphClass::Cofinite, Some(GraphClass::Finite)) => SignCase::CofiniteToFinite,
        _ => return Err(CalculusError::NotFiniteOrCofinite("g xor base")),
    };
    let c = phi.c_limit()?;
    Ok(DistanceDerivative {
        value: rat_i64(case.sign()) * &c,
        c,
        case,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumVerdict {
    LocalMax,
    LocalMin,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalReport {
    pub derivative: DerivativeVerdict,
    /// Whether the derivative converged to a value within tolerance of 0.
    pub critical: Option<bool>,
    /// Second-derivative estimates per family, from differencing the
    /// first-derivative quotients along the probe scale.
    pub second_traces: Vec<ProbeTrace>,
    pub second: Option<DyadicInterval>,
    pub extremum: ExtremumVerdict,
}

/// First- and second-derivative test report at `g`.
pub fn critical_point_check(
    f: &GraphFn,
    g: &Graph,
    probes: &[ProbeFamily],
    cfg: &DerivativeConfig,
) -> Result<CriticalReport, CalculusError> {
    let verdict = derivative(f, g, probes, cfg)?;
    let critical = match &verdict.status {
        DerivativeStatus::Converged(iv) => {
            Some(iv.lo() >= &-cfg.tol.clone() && iv.hi() <= &cfg.tol)
        }
        _ => None,
    };
    // q(x) has slope f''/2 at the base point, so difference the quotients
    let mut second_traces = Vec::new();
    for trace in &verdict.traces {
        let mut estimates = Vec::new();
        for k in 1..trace.quotients.len() {
            let dq = &trace.quotients[k] - &trace.quotients[k - 1];
            let dx = &trace.steps[k] - &trace.steps[k - 1];
            if dx.is_zero() {
                continue;
            }
            estimates.push(rat_u64(2) * dq / dx);
        }
        let limit = stabilized(&estimates, &cfg.tol, cfg.window.min(3));
        second_traces.push(ProbeTrace {
            family: trace.family.clone(),
            steps: trace.steps.clone(),
            quotients: estimates,
            limit,
        });
    }
    let second = if !second_traces.is_empty() && second_traces.iter().all(|t| t.limit.is_some()) {
        let values: Vec<Rat> = second_traces
            .iter()
            .map(|t| t.limit.clone().unwrap())
            .collect();
        let lo = values.iter().min().unwrap().clone();
        let hi = values.iter().max().unwrap().clone();
        Some(DyadicInterval::new(lo, hi))
    } else {
        None
    };
    let extremum = match (&critical, &second) {
        (Some(true), Some(iv)) if *iv.hi() < -cfg.tol.clone() => ExtremumVerdict::LocalMax,
        (Some(true), Some(iv)) if *iv.lo() > cfg.tol => ExtremumVerdict::LocalMin,
        _ => ExtremumVerdict::Inconclusive,
    };
    Ok(CriticalReport {
        derivative: verdict,
        critical,
        second_traces,
        second,
        extremum,
    })
}

/// A function paired with its (known) derivative value at a query graph.
#[derive(Clone, Debug)]
pub struct Differentiable {
    pub f: GraphFn,
    pub derivative: Option<Rat>,
}

/// Product rule: `(f g)' = f(G) g' + f' g(G)`.
pub fn combine_product(
    lhs: &Differentiable,
    rhs: &Differentiable,
    at: &Graph,
) -> Result<Differentiable, CalculusError> {
    let (df, dg) = match (&lhs.derivative, &rhs.derivative) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(CalculusError::UnknownPartDerivative),
    };
    let f_at = lhs.f.eval(at)?;
    let g_at = rhs.f.eval(at)?;
    Ok(Differentiable {
        f: GraphFn::Product(Box::new(lhs.f.clone()), Box::new(rhs.f.clone())),
        derivative: Some(f_at * dg + df * g_at),
    })
}

/// Chain rule with a polynomial outer function: `(h ∘ f)' = h'(f(G)) f'`.
pub fn combine_chain(
    outer: &Polynomial,
    inner: &Differentiable,
    at: &Graph,
) -> Result<Differentiable, CalculusError> {
    let df = inner
        .derivative
        .clone()
        .ok_or(CalculusError::UnknownPartDerivative)?;
    let inner_at = inner.f.eval(at)?;
    let slope = outer.derivative().eval(&inner_at);
    Ok(Differentiable {
        f: GraphFn::Compose {
            outer: outer.clone(),
            inner: Box::new(inner.f.clone()),
        },
        derivative: Some(slope * df),
    })
}

/// The two probe families of the translation analysis for a proper shift
/// graph: tails thinning the shift's own tail (encoding steps of opposite
/// sign on the two sides, ratio -1) and tails inside its complement
/// (ratio +1).
pub fn translation_probe_families(g0: &Graph) -> Result<(ProbeFamily, ProbeFamily), CalculusError> {
    let Some((_, start, stride)) = g0.periodic_parts() else {
        return Err(CalculusError::NotProper("the shift graph"));
    };
    let inside = ProbeFamily::tails(start + stride, stride, 2 * stride);
    let offset = if stride % 2 == 0 { stride / 2 } else { 1 };
    let outside = ProbeFamily::tails(start + stride + offset, stride, 2 * stride);
    Ok((inside, outside))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    /// Verdict for the translated function `X -> f(X xor G0)` at
    /// `G xor G0`, probed along the two families.
    pub verdict: DerivativeVerdict,
    /// Ratios of the untranslated to the translated encoding steps, one
    /// vector per family.
    pub step_ratios: Vec<Vec<Rat>>,
}

/// Probes the derivative of the translate `X -> f(X xor G0)` at the point
/// `G xor G0` without materializing that point: numerators evaluate `f` at
/// `G xor D`, denominators are encoding steps at `G xor G0` computed
/// through intersections.
pub fn translated_derivative(
    f: &GraphFn,
    g: &Graph,
    g0: &Graph,
    cfg: &DerivativeConfig,
) -> Result<TranslationReport, CalculusError> {
    check_target(g)?;
    if g.is_oracle() || g0.is_oracle() {
        return Err(CalculusError::Graph(GraphError::OracleUnsupported));
    }
    if g0.classification() != Some(GraphClass::Proper) {
        return Err(CalculusError::NotProper("the shift graph"));
    }
    let (inside, outside) = translation_probe_families(g0)?;
    let f_at_g = f.eval(g)?;
    let mut traces = Vec::new();
    let mut step_ratios = Vec::new();
    for family in [&inside, &outside] {
        let mut steps = Vec::new();
        let mut quotients = Vec::new();
        let mut ratios = Vec::new();
        for k in 1..=cfg.max_depth {
            let probe = family.probe(k).expect("tail families are unbounded");
            // the perturbed target and the perturbed translate must both
            // stay proper
            if class_of_xor(&[g, &probe]) != Some(GraphClass::Proper)
                || class_of_xor(&[g, g0, &probe]) != Some(GraphClass::Proper)
            {
                return Err(CalculusError::InadmissibleProbe {
                    family: family.name().to_string(),
                    index: k,
                });
            }
            // ||(G xor G0) xor D|| - ||G xor G0|| = ||D|| - 2 ||D ∩ (G xor G0)||
            let d = norm2(&probe)?;
            let with_g = norm2(&intersect(&probe, g)?)?;
            let with_g0 = norm2(&intersect(&probe, g0)?)?;
            let with_both = norm2(&intersect(&intersect(&probe, g)?, g0)?)?;
            let translated_step = &d - rat_u64(2) * (&with_g + &with_g0 - rat_u64(2) * &with_both);
            assert!(
                !translated_step.is_zero(),
                "translated encoding step vanished"
            );
            let plain_step = &d - rat_u64(2) * &with_g;
            ratios.push(&plain_step / &translated_step);
            let num = f.eval_perturbed(g, &probe)? - &f_at_g;
            steps.push(translated_step.clone());
            quotients.push(num / translated_step);
            if stabilized(&quotients, &cfg.tol, cfg.window).is_some() {
                break;
            }
        }
        let limit = stabilized(&quotients, &cfg.tol, cfg.window);
        traces.push(ProbeTrace {
            family: family.name().to_string(),
            steps,
            quotients,
            limit,
        });
        step_ratios.push(ratios);
    }
    Ok(TranslationReport {
        verdict: verdict_from_traces(traces, cfg),
        step_ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn fin(labels: &[Label]) -> Graph {
        Graph::finite(labels.iter().copied())
    }

    fn cfg() -> DerivativeConfig {
        DerivativeConfig::default()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&Graph::empty(), 8).value().unwrap(), &rat(0, 1));
        assert_eq!(encode(&Graph::complete(), 8).value().unwrap(), &rat(1, 1));
        let odds = Graph::periodic([], 1, 2).unwrap();
        assert_eq!(encode(&odds, 8).value().unwrap(), &rat(2, 3));
    }

    #[test]
    fn dyadic_preimage_round_trip() {
        for x in [rat(0, 1), rat(1, 2), rat(5, 8), rat(11, 16), rat(1, 1)] {
            let g = dyadic_preimage(&x).unwrap();
            assert_eq!(encode(&g, 8).value().unwrap(), &x);
        }
        assert!(dyadic_preimage(&rat(1, 3)).is_err());
        assert!(dyadic_preimage(&rat(9, 8)).is_err());
    }

    #[test]
    fn derivative_of_encode_is_one() {
        let g = fin(&[1, 2]);
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let v = derivative(&GraphFn::Encode, &g, &probes, &cfg()).unwrap();
        match &v.status {
            DerivativeStatus::Converged(iv) => assert_eq!(iv.value().unwrap(), &rat(1, 1)),
            other => panic!("expected convergence, got {other:?}"),
        }
        // every quotient is identically 1
        for trace in &v.traces {
            assert!(trace.quotients.iter().all(|q| q == &rat(1, 1)));
        }
    }

    #[test]
    fn derivative_of_distance_at_finite_graph() {
        let f = GraphFn::distance(Graph::empty(), WeightFn::geometric_u64(2));
        let g = fin(&[1]);
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let v = derivative(&f, &g, &probes, &cfg()).unwrap();
        assert_eq!(v.converged_value().unwrap(), rat(1, 1));
    }

    #[test]
    fn derivative_of_zeta_norm_vanishes_on_proper_graphs() {
        let f = GraphFn::zeta(ZetaFn::geometric_u64(2));
        for g in [
            Graph::periodic([], 3, 2).unwrap(),
            Graph::periodic([1], 4, 3).unwrap(),
        ] {
            let probes = ProbeFamily::defaults_for(&g).unwrap();
            let v = derivative(&f, &g, &probes, &cfg()).unwrap();
            match &v.status {
                DerivativeStatus::Converged(iv) => {
                    assert_eq!(iv.value().unwrap(), &rat(0, 1))
                }
                other => panic!("expected convergence to 0, got {other:?}"),
            }
        }
    }

    #[test]
    fn slow_decay_distance_diverges() {
        // with a weight decaying slower than 2^-n the quotients grow like
        // (4/3)^depth and the verdict reports the blow-up
        let f = GraphFn::distance(Graph::empty(), WeightFn::geometric(rat(3, 2)).unwrap());
        let g = fin(&[1]);
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let mut deep = cfg();
        deep.max_depth = 90;
        let v = derivative(&f, &g, &probes, &deep).unwrap();
        assert_eq!(v.status, DerivativeStatus::Diverged);
    }

    #[test]
    fn endpoints_are_excluded() {
        let probes = [ProbeFamily::tails(1, 2, 2)];
        assert_eq!(
            derivative(&GraphFn::Encode, &Graph::empty(), &probes, &cfg()).unwrap_err(),
            CalculusError::EndpointExcluded
        );
        assert_eq!(
            derivative(&GraphFn::Encode, &Graph::complete(), &probes, &cfg()).unwrap_err(),
            CalculusError::EndpointExcluded
        );
    }

    #[test]
    fn single_edge_probes_are_inadmissible_at_finite_targets() {
        let g = fin(&[1]);
        let probes = [ProbeFamily::single_edges(5)];
        assert!(matches!(
            derivative(&GraphFn::Encode, &g, &probes, &cfg()),
            Err(CalculusError::InadmissibleProbe { .. })
        ));
    }

    #[test]
    fn distance_derivative_sign_cases() {
        let phi2 = WeightFn::geometric_u64(2);
        // base empty, finite query: both finite, slope +1
        let d = distance_derivative(&Graph::empty(), &phi2, &fin(&[1, 2])).unwrap();
        assert_eq!(d.value, rat(1, 1));
        assert_eq!(d.case, SignCase::BothFinite);
        // base complete, finite query: mixed, slope -1
        let d = distance_derivative(&Graph::complete(), &phi2, &fin(&[1])).unwrap();
        assert_eq!(d.value, rat(-1, 1));
        assert_eq!(d.case, SignCase::FiniteToCofinite);
        // a weight decaying faster than 2^-n has slope 0
        let d =
            distance_derivative(&Graph::empty(), &WeightFn::geometric_u64(3), &fin(&[1])).unwrap();
        assert_eq!(d.value, rat(0, 1));
        // slower decay has no slope constant at all
        let slow = WeightFn::geometric(rat(3, 2)).unwrap();
        assert!(matches!(
            distance_derivative(&Graph::empty(), &slow, &fin(&[1])),
            Err(CalculusError::Metric(MetricError::CLimitMissing))
        ));
    }

    #[test]
    fn distance_derivative_agrees_with_numeric_quotients() {
        let phi2 = WeightFn::geometric_u64(2);
        // finite base against a cofinite query: both sides cofinite
        let base = Graph::finite([2, 4]);
        let g = Graph::cofinite([1]);
        let closed = distance_derivative(&base, &phi2, &g).unwrap();
        assert_eq!(closed.case, SignCase::BothCofinite);
        assert_eq!(closed.value, rat(1, 1));
        let f = GraphFn::distance(base, phi2.clone());
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let v = derivative(&f, &g, &probes, &cfg()).unwrap();
        assert_eq!(v.converged_value().unwrap(), closed.value);
        // cofinite base against the same query: the difference is finite
        let base = Graph::cofinite([2, 4]);
        let closed = distance_derivative(&base, &phi2, &g).unwrap();
        assert_eq!(closed.case, SignCase::CofiniteToFinite);
        assert_eq!(closed.value, rat(-1, 1));
        let f = GraphFn::distance(base, phi2);
        let v = derivative(&f, &g, &probes, &cfg()).unwrap();
        assert_eq!(v.converged_value().unwrap(), closed.value);
    }

    #[test]
    fn squared_distance_to_encoding_is_a_local_minimum() {
        // f(X) = (||X||_2 - ||G*||_2)^2 through the chain combinator; the
        // one-variable oracle gives f' = 0 and f'' = 2 at G*
        let g_star = fin(&[2, 3]);
        let e_star = norm2(&g_star).unwrap();
        let square = Polynomial::new(vec![&e_star * &e_star, rat(-2, 1) * &e_star, rat(1, 1)]);
        let f = GraphFn::Compose {
            outer: square,
            inner: Box::new(GraphFn::Encode),
        };
        let probes = ProbeFamily::defaults_for(&g_star).unwrap();
        let report = critical_point_check(&f, &g_star, &probes, &cfg()).unwrap();
        assert_eq!(report.critical, Some(true));
        let second = report.second.expect("second derivative stabilizes");
        assert_eq!(second.value().unwrap(), &rat(2, 1));
        assert_eq!(report.extremum, ExtremumVerdict::LocalMin);
    }

    #[test]
    fn negated_squared_distance_is_a_local_maximum() {
        // -(||X||_2 - ||G*||_2)^2 has f' = 0 and f'' = -2 at G*
        let g_star = fin(&[2, 3]);
        let e_star = norm2(&g_star).unwrap();
        let flipped = Polynomial::new(vec![
            rat(-1, 1) * &e_star * &e_star,
            rat(2, 1) * &e_star,
            rat(-1, 1),
        ]);
        let f = GraphFn::Compose {
            outer: flipped,
            inner: Box::new(GraphFn::Encode),
        };
        let probes = ProbeFamily::defaults_for(&g_star).unwrap();
        let report = critical_point_check(&f, &g_star, &probes, &cfg()).unwrap();
        assert_eq!(report.critical, Some(true));
        assert_eq!(report.second.unwrap().value().unwrap(), &rat(-2, 1));
        assert_eq!(report.extremum, ExtremumVerdict::LocalMax);
    }

    #[test]
    fn probe_norms_decrease_strictly() {
        for g in [
            fin(&[1, 4]),
            Graph::cofinite([2]),
            Graph::periodic([1], 5, 3).unwrap(),
        ] {
            for family in ProbeFamily::defaults_for(&g).unwrap() {
                let norms: Vec<Rat> = (1..=8)
                    .map(|k| norm2(&family.probe(k).unwrap()).unwrap())
                    .collect();
                assert!(norms.windows(2).all(|w| w[0] > w[1]), "{}", family.name());
            }
        }
    }

    #[test]
    fn core_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<GraphFn>();
        assert_send_sync::<ProbeFamily>();
        assert_send_sync::<DerivativeVerdict>();
    }

    #[test]
    fn encode_is_not_critical() {
        let g = fin(&[1]);
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let report = critical_point_check(&GraphFn::Encode, &g, &probes, &cfg()).unwrap();
        assert_eq!(report.critical, Some(false));
    }

    #[test]
    fn constant_function_is_critical_with_flat_second_derivative() {
        let f = GraphFn::Custom {
            name: "zero".into(),
            eval: Arc::new(|_| Rat::zero()),
        };
        let g = Graph::periodic([], 2, 2).unwrap();
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let report = critical_point_check(&f, &g, &probes, &cfg()).unwrap();
        assert_eq!(report.critical, Some(true));
        assert_eq!(report.extremum, ExtremumVerdict::Inconclusive);
        if let Some(second) = report.second {
            assert!(second.contains(&Rat::zero()));
        }
    }

    #[test]
    fn combine_rules() {
        let g = fin(&[1]);
        let f = Differentiable {
            f: GraphFn::distance(Graph::empty(), WeightFn::geometric_u64(2)),
            derivative: Some(rat(1, 1)),
        };
        let one = Differentiable {
            f: GraphFn::Custom {
                name: "one".into(),
                eval: Arc::new(|_| Rat::one()),
            },
            derivative: Some(rat(0, 1)),
        };
        // product with the constant 1 keeps the derivative
        let p = combine_product(&f, &one, &g).unwrap();
        assert_eq!(p.derivative.unwrap(), rat(1, 1));
        // chain with x^2: slope 2 f(G) f'(G) = 2 * 1/2 * 1 = 1
        let square = Polynomial::new(vec![rat(0, 1), rat(0, 1), rat(1, 1)]);
        let c = combine_chain(&square, &f, &g).unwrap();
        assert_eq!(c.derivative.unwrap(), rat(1, 1));
        // product f * f agrees with the chain result
        let p2 = combine_product(&f, &f, &g).unwrap();
        assert_eq!(p2.derivative.unwrap(), rat(1, 1));
        // a missing part derivative is refused
        let unknown = Differentiable {
            f: GraphFn::Encode,
            derivative: None,
        };
        assert_eq!(
            combine_product(&f, &unknown, &g).unwrap_err(),
            CalculusError::UnknownPartDerivative
        );
    }

    #[test]
    fn finite_support_twist_leaves_quotients_unchanged() {
        let g = fin(&[1]);
        let twist = LabelTwist::Permutation(Permutation::from_cycles(&[vec![1, 2]]).unwrap());
        let probes = probes_beyond_twist(&g, &twist).unwrap();
        let plain = derivative(&GraphFn::Encode, &g, &probes, &cfg()).unwrap();
        let twisted = twisted_derivative(&GraphFn::Encode, &g, &twist, &probes, &cfg()).unwrap();
        assert_eq!(plain, twisted);
        assert_eq!(twisted.converged_value().unwrap(), rat(1, 1));
    }

    #[test]
    fn identity_twist_is_bit_identical() {
        let g = Graph::periodic([], 3, 2).unwrap();
        let twist = LabelTwist::Permutation(Permutation::identity());
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        let plain = derivative(&GraphFn::Encode, &g, &probes, &cfg()).unwrap();
        let twisted = twisted_derivative(&GraphFn::Encode, &g, &twist, &probes, &cfg()).unwrap();
        assert_eq!(plain, twisted);
    }

    #[test]
    fn tail_shift_scales_quotients() {
        let g = Graph::periodic([], 3, 2).unwrap();
        let probes = ProbeFamily::defaults_for(&g).unwrap();
        for offset in [1u32, 2] {
            let twist = LabelTwist::TailShift { offset };
            let v = twisted_derivative(&GraphFn::Encode, &g, &twist, &probes, &cfg()).unwrap();
            let expect = pow2(offset as i64);
            match &v.status {
                DerivativeStatus::Converged(iv) => assert_eq!(iv.value().unwrap(), &expect),
                other => panic!("expected convergence to {expect}, got {other:?}"),
            }
            for trace in &v.traces {
                assert!(trace.quotients.iter().all(|q| q == &expect));
            }
        }
    }

    #[test]
    fn translation_produces_opposite_step_ratios() {
        // shift by the odd labels; the translate of the encoding oscillates
        let g0 = Graph::periodic([], 1, 2).unwrap();
        let g = fin(&[1]);
        let report = translated_derivative(&GraphFn::Encode, &g, &g0, &cfg()).unwrap();
        assert!(report.step_ratios[0].iter().all(|r| r == &rat(-1, 1)));
        assert!(report.step_ratios[1].iter().all(|r| r == &rat(1, 1)));
        match &report.verdict.status {
            DerivativeStatus::Oscillating {
                limit_a, limit_b, ..
            } => {
                let mut ls = [limit_a.clone(), limit_b.clone()];
                ls.sort();
                assert_eq!(ls, [rat(-1, 1), rat(1, 1)]);
            }
            other => panic!("expected oscillation, got {other:?}"),
        }
    }

    #[test]
    fn translation_requires_a_proper_shift() {
        let g = fin(&[1]);
        assert!(matches!(
            translated_derivative(&GraphFn::Encode, &g, &fin(&[2]), &cfg()),
            Err(CalculusError::NotProper(_))
        ));
    }
}
