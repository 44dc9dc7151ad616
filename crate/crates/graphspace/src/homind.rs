//! Subgraph and induced-subgraph indicators of finite patterns.
//!
//! For a finite pattern `H`, `t_inj(H, G)` records whether every edge of
//! `H` is present in `G`, and `t_ind(H, G)` whether `G` restricted to the
//! vertex set of `H` equals `H` exactly. The two families are related by
//! inversion over the lattice of supergraphs of `H` inside the clique on
//! its vertices, realized here as signed indicator combinations.

use crate::graph::{FiniteGraphH, Graph, GraphClass};
use crate::labeling::{EdgeLabeling, Label};
use crate::metrics::{LabelSet, MetricError, WeightFn};
use crate::rat::{rat_i64, Rat};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomindError {
    #[error("pattern has {0} missing pairs; the supergraph lattice is capped at 20")]
    TooManySupergraphs(usize),
    #[error("the indicator has empty support; the constant function needs no constant")]
    EmptySupport,
    #[error("indicator supports overlap at label {0}")]
    OverlappingSupports(Label),
    #[error("two cofinite supports always intersect")]
    CofiniteOverlap,
    #[error("graphs {0} and {1} are not separated by any label up to {2}")]
    NotSeparated(usize, usize, Label),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Whether every edge of `h` lies in `g`.
pub fn t_inj(h: &FiniteGraphH, g: &Graph, labeling: &EdgeLabeling) -> bool {
    h.edges().all(|e| g.contains_label(labeling.label(e)))
}

/// Whether `g` restricted to the vertices of `h` equals `h` exactly.
pub fn t_ind(h: &FiniteGraphH, g: &Graph, labeling: &EdgeLabeling) -> bool {
    h.clique_pairs()
        .into_iter()
        .all(|e| g.contains_label(labeling.label(e)) == h.contains(e))
}

/// The event that no `forbidden` label is an edge while every `required`
/// label is. Supports must be disjoint; either side may be cofinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorFn {
    forbidden: LabelSet,
    required: LabelSet,
}

impl IndicatorFn {
    pub fn new(forbidden: LabelSet, required: LabelSet) -> Result<Self, HomindError> {
        match (&forbidden, &required) {
            (LabelSet::Finite(a), LabelSet::Finite(b)) => {
                if let Some(&x) = a.intersection(b).next() {
                    return Err(HomindError::OverlappingSupports(x));
                }
            }
            (LabelSet::Finite(a), LabelSet::Cofinite(m))
            | (LabelSet::Cofinite(m), LabelSet::Finite(a)) => {
                if let Some(&x) = a.iter().find(|x| !m.contains(x)) {
                    return Err(HomindError::OverlappingSupports(x));
                }
            }
            (LabelSet::Cofinite(_), LabelSet::Cofinite(_)) => {
                return Err(HomindError::CofiniteOverlap)
            }
        }
        Ok(IndicatorFn {
            forbidden,
            required,
        })
    }

    /// Forbidden labels `i0` and required labels `i1`, both finite.
    pub fn finite(
        i0: impl IntoIterator<Item = Label>,
        i1: impl IntoIterator<Item = Label>,
    ) -> Result<Self, HomindError> {
        IndicatorFn::new(
            LabelSet::Finite(i0.into_iter().collect()),
            LabelSet::Finite(i1.into_iter().collect()),
        )
    }

    pub fn forbidden(&self) -> &LabelSet {
        &self.forbidden
    }

    pub fn required(&self) -> &LabelSet {
        &self.required
    }

    /// The union of the two supports when both are finite; `None` otherwise.
    /// Finite support is exactly the locally-constant (hence continuous,
    /// hence Lipschitz) case.
    pub fn finite_support(&self) -> Option<BTreeSet<Label>> {
        match (&self.forbidden, &self.required) {
            (LabelSet::Finite(a), LabelSet::Finite(b)) => Some(a.union(b).copied().collect()),
            _ => None,
        }
    }

    pub fn eval(&self, g: &Graph) -> bool {
        let forbidden_ok = match &self.forbidden {
            LabelSet::Finite(s) => s.iter().all(|&n| !g.contains_label(n)),
            LabelSet::Cofinite(m) => {
                // avoiding cofinitely many labels forces a finite graph
                // inside the complement
                match g.classification() {
                    Some(GraphClass::Finite) => match g.finite_labels() {
                        Some(labels) => labels.iter().all(|n| m.contains(n)),
                        None => scan_subset(g, m),
                    },
                    Some(_) => false,
                    None => false,
                }
            }
        };
        if !forbidden_ok {
            return false;
        }
        match &self.required {
            LabelSet::Finite(s) => s.iter().all(|&n| g.contains_label(n)),
            LabelSet::Cofinite(m) => {
                // requiring cofinitely many labels forces a cofinite graph
                // whose missing set lies inside the complement
                match g.classification() {
                    Some(GraphClass::Cofinite) => match g.cofinite_missing() {
                        Some(missing) => missing.iter().all(|n| m.contains(n)),
                        None => scan_missing_subset(g, m),
                    },
                    Some(_) => false,
                    None => false,
                }
            }
        }
    }
}

fn scan_subset(g: &Graph, allowed: &BTreeSet<Label>) -> bool {
    let bound = allowed.iter().next_back().copied().unwrap_or(0) + 1;
    (1..=bound).all(|n| !g.contains_label(n) || allowed.contains(&n))
}

fn scan_missing_subset(g: &Graph, allowed: &BTreeSet<Label>) -> bool {
    let bound = allowed.iter().next_back().copied().unwrap_or(0) + 1;
    (1..=bound).all(|n| g.contains_label(n) || allowed.contains(&n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Inj,
    Ind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComboTerm {
    pub coef: Rat,
    pub pattern: FiniteGraphH,
    pub flavor: Flavor,
}

/// A finite rational combination of pattern indicators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndicatorCombo {
    pub terms: Vec<ComboTerm>,
}

impl IndicatorCombo {
    pub fn eval(&self, g: &Graph, labeling: &EdgeLabeling) -> Rat {
        let mut sum = Rat::zero();
        for term in &self.terms {
            let hit = match term.flavor {
                Flavor::Inj => t_inj(&term.pattern, g, labeling),
                Flavor::Ind => t_ind(&term.pattern, g, labeling),
            };
            if hit {
                sum += &term.coef;
            }
        }
        sum
    }

    fn push(&mut self, coef: Rat, pattern: FiniteGraphH, flavor: Flavor) {
        if !coef.is_zero() {
            self.terms.push(ComboTerm {
                coef,
                pattern,
                flavor,
            });
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandDirection {
    /// `t_inj(H, .) = sum over supergraphs H' of t_ind(H', .)`
    InjFromInd,
    /// `t_ind(H, .) = alternating sum over supergraphs of t_inj(H', .)`
    IndFromInj,
}

/// Expands one indicator of `h` into the other flavor by summing over all
/// supergraphs of `h` within the clique on its vertices.
pub fn mobius_expand(
    h: &FiniteGraphH,
    direction: ExpandDirection,
) -> Result<IndicatorCombo, HomindError> {
    let missing = h.missing_pairs();
    if missing.len() > 20 {
        return Err(HomindError::TooManySupergraphs(missing.len()));
    }
    let mut combo = IndicatorCombo::default();
    for mask in 0u32..(1u32 << missing.len()) {
        let extra = mask.count_ones() as i64;
        let mut pattern = h.clone();
        for (b, &e) in missing.iter().enumerate() {
            if mask & (1 << b) != 0 {
                pattern.insert(e);
            }
        }
        match direction {
            ExpandDirection::InjFromInd => combo.push(Rat::one(), pattern, Flavor::Ind),
            ExpandDirection::IndFromInj => combo.push(
                rat_i64(if extra % 2 == 0 { 1 } else { -1 }),
                pattern,
                Flavor::Inj,
            ),
        }
    }
    Ok(combo)
}

/// The sharp Lipschitz constant of a finite-support indicator with respect
/// to the weighted edit distance: the reciprocal of the smallest weight on
/// the support.
pub fn lipschitz_constant(f: &IndicatorFn, phi: &WeightFn) -> Result<Rat, HomindError> {
    let support = f.finite_support().ok_or(HomindError::EmptySupport)?;
    let min = phi.min_over(&support).ok_or(HomindError::EmptySupport)?;
    Ok(Rat::one() / min)
}

/// A pair of graphs attaining the sharp constant: the graph satisfying the
/// indicator exactly, and the same graph with the minimal-weight support
/// label toggled.
pub fn lipschitz_witness(f: &IndicatorFn, phi: &WeightFn) -> Result<(Graph, Graph), HomindError> {
    let support = f.finite_support().ok_or(HomindError::EmptySupport)?;
    if support.is_empty() {
        return Err(HomindError::EmptySupport);
    }
    let argmin = support
        .iter()
        .copied()
        .min_by_key(|&n| phi.eval(n))
        .expect("nonempty support");
    let required: BTreeSet<Label> = match f.required() {
        LabelSet::Finite(s) => s.clone(),
        LabelSet::Cofinite(_) => unreachable!("finite_support checked"),
    };
    let base = Graph::finite(required.iter().copied());
    let toggled = Graph::finite(
        required
            .iter()
            .copied()
            .filter(|&n| n != argmin)
            .chain((!required.contains(&argmin)).then_some(argmin)),
    );
    Ok((base, toggled))
}

/// Builds an indicator combination hitting prescribed values at finitely
/// many pairwise distinct graphs.
///
/// For each target graph a product of single-label factors is formed, one
/// factor per other graph, each factor built from the smallest label
/// separating the two graphs; expanding the products gives a combination of
/// plain subgraph indicators.
pub fn interpolate(
    points: &[(Graph, Rat)],
    scan_depth: Label,
    labeling: &EdgeLabeling,
) -> Result<IndicatorCombo, HomindError> {
    let mut combo = IndicatorCombo::default();
    if points.is_empty() {
        return Ok(combo);
    }
    if points.len() == 1 {
        combo.push(points[0].1.clone(), FiniteGraphH::empty(), Flavor::Inj);
        return Ok(combo);
    }
    // accumulated expansion: label set of an inj indicator -> coefficient
    for (j, (gj, target)) in points.iter().enumerate() {
        if target.is_zero() {
            continue;
        }
        let mut expansion: BTreeMap<BTreeSet<Label>, Rat> = BTreeMap::new();
        expansion.insert(BTreeSet::new(), target.clone());
        for (i, (gi, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let sep = first_separating_label(gj, gi, scan_depth)
                .ok_or(HomindError::NotSeparated(j, i, scan_depth))?;
            // factor is t'(sep, .) when the target graph holds the label,
            // otherwise 1 - t'(sep, .)
            let mut next: BTreeMap<BTreeSet<Label>, Rat> = BTreeMap::new();
            for (labels, coef) in expansion {
                if gj.contains_label(sep) {
                    let mut with = labels.clone();
                    with.insert(sep);
                    *next.entry(with).or_insert_with(Rat::zero) += &coef;
                } else {
                    *next.entry(labels.clone()).or_insert_with(Rat::zero) += &coef;
                    let mut with = labels;
                    with.insert(sep);
                    *next.entry(with).or_insert_with(Rat::zero) -= &coef;
                }
            }
            expansion = next;
        }
        for (labels, coef) in expansion {
            combo.push(
                coef,
                FiniteGraphH::from_label_set(labels, labeling),
                Flavor::Inj,
            );
        }
    }
    // merge like terms
    let mut merged: BTreeMap<(Vec<Label>, Flavor), Rat> = BTreeMap::new();
    for term in combo.terms {
        let key: Vec<Label> = term.pattern.label_set(labeling).into_iter().collect();
        *merged.entry((key, term.flavor)).or_insert_with(Rat::zero) += term.coef;
    }
    let mut out = IndicatorCombo::default();
    for ((labels, flavor), coef) in merged {
        out.push(coef, FiniteGraphH::from_label_set(labels, labeling), flavor);
    }
    Ok(out)
}

/// Smallest label on which the two graphs differ. Closed pairs are decided
/// exactly; oracle pairs scan to the given depth.
pub fn first_separating_label(a: &Graph, b: &Graph, scan_depth: Label) -> Option<Label> {
    let bound = match (a.head_end(), b.head_end()) {
        (Ok(ha), Ok(hb)) => {
            let stride = |g: &Graph| g.periodic_parts().map_or(1, |(_, _, s)| s);
            ha.max(hb) + stride(a) * stride(b)
        }
        _ => scan_depth,
    };
    (1..=bound).find(|&n| a.contains_label(n) != b.contains_label(n))
}
