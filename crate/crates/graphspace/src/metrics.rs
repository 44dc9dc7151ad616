//! Metrics on graph space with exact rational values.
//!
//! A summable positive weight on the labels induces the weighted edit
//! distance `d(G1, G2) = sum of weights over the symmetric difference`. The
//! geometric weight with base `a` gives the weak norm
//! `||G||_a = sum over edges of a^(-label)`, which embeds graph space into
//! the reals; at `a = 2` the image is `[0, 1]` and the map reads off the
//! binary expansion, at `a > 2` it is injective.
//!
//! Distances between closed graphs are computed through the measure
//! identity `w(A xor B) = w(A) + w(B) - 2 w(A ∩ B)`, so they are exact even
//! when the symmetric difference has no single-tail representation. Oracle
//! graphs produce interval enclosures with certified tail bounds.

use crate::graph::{intersect, Graph, GraphError};
use crate::labeling::Label;
use crate::rat::{pow_rat, rat_u64, DyadicInterval, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("weight base must exceed 1, got {0}")]
    InvalidBase(Rat),
    #[error("weight values must be strictly positive")]
    NonpositiveWeight,
    #[error("tabulated weights need at least one value")]
    EmptyTable,
    #[error("continuation ratio must lie in (0, 1), got {0}")]
    InvalidRatio(Rat),
    #[error("tabulated min-weight values must be strictly decreasing")]
    NotDecreasing,
    #[error("epsilon must satisfy 0 < epsilon < total weight")]
    InvalidEpsilon,
    #[error("no edge found up to depth {0}")]
    DepthExhausted(Label),
    #[error("the scaled weight sequence 2^n w(n) has no limit")]
    CLimitMissing,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A strictly positive summable weight on the labels.
///
/// `Geometric { a }` is `w(n) = a^(-n)` for `a > 1`. `Tabulated` lists the
/// first values explicitly and continues geometrically beyond the table:
/// `w(N + k) = w(N) * ratio^k`. The geometric continuation is what makes
/// tail sums certified: every tail has an exact closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightFn {
    Geometric { a: Rat },
    Tabulated { values: Vec<Rat>, ratio: Rat },
}

impl WeightFn {
    pub fn geometric(a: Rat) -> Result<Self, MetricError> {
        if a <= Rat::one() {
            return Err(MetricError::InvalidBase(a));
        }
        Ok(WeightFn::Geometric { a })
    }

    pub fn geometric_u64(a: u64) -> Self {
        WeightFn::Geometric { a: rat_u64(a) }
    }

    pub fn tabulated(values: Vec<Rat>, ratio: Rat) -> Result<Self, MetricError> {
        if values.is_empty() {
            return Err(MetricError::EmptyTable);
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(MetricError::NonpositiveWeight);
        }
        if !ratio.is_positive() || ratio >= Rat::one() {
            return Err(MetricError::InvalidRatio(ratio));
        }
        Ok(WeightFn::Tabulated { values, ratio })
    }

    pub fn eval(&self, n: Label) -> Rat {
        assert!(n >= 1);
        match self {
            WeightFn::Geometric { a } => pow_rat(a, -(n as i64)),
            WeightFn::Tabulated { values, ratio } => {
                let len = values.len() as u64;
                if n <= len {
                    values[(n - 1) as usize].clone()
                } else {
                    &values[values.len() - 1] * pow_rat(ratio, (n - len) as i64)
                }
            }
        }
    }

    /// Total weight of the complete graph.
    pub fn total(&self) -> Rat {
        match self {
            // sum a^(-n) for n >= 1 is 1/(a-1)
            WeightFn::Geometric { a } => Rat::one() / (a - Rat::one()),
            WeightFn::Tabulated { values, ratio } => {
                let mut sum = Rat::zero();
                for v in values {
                    sum += v;
                }
                let last = &values[values.len() - 1];
                sum + last * ratio / (Rat::one() - ratio)
            }
        }
    }

    /// Exact bound (here: exact value) of the tail `sum over n > after`.
    pub fn tail_bound(&self, after: Label) -> Rat {
        match self {
            WeightFn::Geometric { a } => pow_rat(a, -(after as i64)) / (a - Rat::one()),
            WeightFn::Tabulated { values, ratio } => {
                let len = values.len() as u64;
                let last = &values[values.len() - 1];
                if after >= len {
                    // geometric from the table end
                    last * pow_rat(ratio, (after - len) as i64) * ratio / (Rat::one() - ratio)
                } else {
                    let mut sum = Rat::zero();
                    for v in &values[after as usize..] {
                        sum += v;
                    }
                    sum + last * ratio / (Rat::one() - ratio)
                }
            }
        }
    }

    /// Weight of an arithmetic tail `{start, start+stride, ...}`.
    fn tail_measure(&self, start: Label, stride: Label) -> Rat {
        match self {
            WeightFn::Geometric { a } => {
                // a^(-start) / (1 - a^(-stride))
                let head = pow_rat(a, -(start as i64));
                let dec = pow_rat(a, -(stride as i64));
                head / (Rat::one() - dec)
            }
            WeightFn::Tabulated { values, ratio } => {
                let len = values.len() as u64;
                let mut sum = Rat::zero();
                let mut p = start;
                while p <= len {
                    sum += self.eval(p);
                    p += stride;
                }
                // p is now the first tail point beyond the table
                let last = &values[values.len() - 1];
                let first = last * pow_rat(ratio, (p - len) as i64);
                let dec = pow_rat(ratio, stride as i64);
                sum + first / (Rat::one() - dec)
            }
        }
    }

    /// Total weight of a closed graph's edge set; `None` for oracles.
    pub fn measure(&self, g: &Graph) -> Option<Rat> {
        if let Some(labels) = g.finite_labels() {
            let mut sum = Rat::zero();
            for &n in labels {
                sum += self.eval(n);
            }
            return Some(sum);
        }
        if let Some(missing) = g.cofinite_missing() {
            let mut sum = self.total();
            for &n in missing {
                sum -= self.eval(n);
            }
            return Some(sum);
        }
        if let Some((base, start, stride)) = g.periodic_parts() {
            let mut sum = self.tail_measure(start, stride);
            for &n in base {
                sum += self.eval(n);
            }
            return Some(sum);
        }
        None
    }

    /// Interval enclosure of the measure, scanning oracles to `depth`.
    pub fn measure_interval(&self, g: &Graph, depth: Label) -> DyadicInterval {
        if let Some(exact) = self.measure(g) {
            return DyadicInterval::point(exact);
        }
        let mut partial = Rat::zero();
        for n in 1..=depth {
            if g.contains_label(n) {
                partial += self.eval(n);
            }
        }
        let hi = &partial + self.tail_bound(depth);
        DyadicInterval::new(partial, hi)
    }

    pub fn min_over(&self, labels: &BTreeSet<Label>) -> Option<Rat> {
        labels.iter().map(|&n| self.eval(n)).min()
    }

    /// The limit of `2^n w(n)`, when it exists. This is the slope constant
    /// of distance functions under the binary encoding: `1` for the
    /// geometric weight with base 2, `0` for faster-decaying weights, and
    /// missing for slower ones.
    pub fn c_limit(&self) -> Result<Rat, MetricError> {
        let two = rat_u64(2);
        match self {
            WeightFn::Geometric { a } => {
                // 2^n a^(-n) = (2/a)^n
                if *a == two {
                    Ok(Rat::one())
                } else if *a > two {
                    Ok(Rat::zero())
                } else {
                    Err(MetricError::CLimitMissing)
                }
            }
            WeightFn::Tabulated { values, ratio } => {
                // beyond the table 2^n w(n) scales by 2*ratio each step
                let step = &two * ratio;
                if step == Rat::one() {
                    let len = values.len() as u64;
                    Ok(pow_rat(&two, len as i64) * &values[values.len() - 1])
                } else if step < Rat::one() {
                    Ok(Rat::zero())
                } else {
                    Err(MetricError::CLimitMissing)
                }
            }
        }
    }
}

/// A positive weight with values tending to zero and no other accumulation
/// point, strictly decreasing in the label. Induces the locally constant
/// norm `|G| = value at the smallest edge label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaFn {
    Geometric { p: Rat },
    Tabulated { values: Vec<Rat>, ratio: Rat },
}

impl ZetaFn {
    pub fn geometric(p: Rat) -> Result<Self, MetricError> {
        if p <= Rat::one() {
            return Err(MetricError::InvalidBase(p));
        }
        Ok(ZetaFn::Geometric { p })
    }

    pub fn geometric_u64(p: u64) -> Self {
        ZetaFn::Geometric { p: rat_u64(p) }
    }

    pub fn tabulated(values: Vec<Rat>, ratio: Rat) -> Result<Self, MetricError> {
        if values.is_empty() {
            return Err(MetricError::EmptyTable);
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(MetricError::NonpositiveWeight);
        }
        if !ratio.is_positive() || ratio >= Rat::one() {
            return Err(MetricError::InvalidRatio(ratio));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(MetricError::NotDecreasing);
        }
        Ok(ZetaFn::Tabulated { values, ratio })
    }

    pub fn eval(&self, n: Label) -> Rat {
        assert!(n >= 1);
        match self {
            ZetaFn::Geometric { p } => pow_rat(p, -(n as i64)),
            ZetaFn::Tabulated { values, ratio } => {
                let len = values.len() as u64;
                if n <= len {
                    values[(n - 1) as usize].clone()
                } else {
                    &values[values.len() - 1] * pow_rat(ratio, (n - len) as i64)
                }
            }
        }
    }
}

/// The weak norm `||G||_a = sum over edges of a^(-label)`.
///
/// Exact for closed representations (equal to the distance from the empty
/// graph under the geometric weight); for oracles the result is an interval
/// of width at most `a^(-depth)/(a-1)`.
pub fn weak_norm(g: &Graph, a: &Rat, depth: Label) -> Result<DyadicInterval, MetricError> {
    if *a <= Rat::one() {
        return Err(MetricError::InvalidBase(a.clone()));
    }
    let w = WeightFn::Geometric { a: a.clone() };
    Ok(w.measure_interval(g, depth.max(1)))
}

/// Exact weak norm of a closed graph.
pub fn weak_norm_exact(g: &Graph, a: &Rat) -> Result<Rat, MetricError> {
    if *a <= Rat::one() {
        return Err(MetricError::InvalidBase(a.clone()));
    }
    WeightFn::Geometric { a: a.clone() }
        .measure(g)
        .ok_or(MetricError::Graph(GraphError::OracleUnsupported))
}

/// The weighted edit distance `d(G1, G2) = w(G1 xor G2)`.
///
/// Closed pairs are exact via inclusion-exclusion on measures, with no need
/// to represent the symmetric difference itself. Oracle pairs are enclosed
/// by a partial sum plus the certified tail bound.
pub fn dist(g1: &Graph, g2: &Graph, phi: &WeightFn, depth: Label) -> DyadicInterval {
    if let (Some(m1), Some(m2)) = (phi.measure(g1), phi.measure(g2)) {
        let both = phi
            .measure(&intersect(g1, g2).expect("closed intersection"))
            .expect("closed intersection measure");
        let d = m1 + m2 - rat_u64(2) * both;
        return DyadicInterval::point(d);
    }
    let mut partial = Rat::zero();
    for n in 1..=depth {
        if g1.contains_label(n) != g2.contains_label(n) {
            partial += phi.eval(n);
        }
    }
    let hi = &partial + phi.tail_bound(depth);
    DyadicInterval::new(partial, hi)
}

/// The locally constant norm `min-weight style` value of a graph: zero for
/// the empty graph, otherwise the zeta value at the smallest edge label
/// (the largest zeta value attained on the edge set, since zeta decreases).
pub fn zeta_norm(g: &Graph, zeta: &ZetaFn, depth: Label) -> Result<Rat, MetricError> {
    if g.is_empty() {
        return Ok(Rat::zero());
    }
    match g.min_label() {
        Ok(Some(n)) => Ok(zeta.eval(n)),
        Ok(None) => Ok(Rat::zero()),
        Err(_) => match g.min_label_scan(depth) {
            Some(n) => Ok(zeta.eval(n)),
            None => Err(MetricError::DepthExhausted(depth)),
        },
    }
}

/// A decidable set of labels splitting the edge set into two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelSet {
    Finite(BTreeSet<Label>),
    Cofinite(BTreeSet<Label>),
}

impl LabelSet {
    pub fn contains(&self, n: Label) -> bool {
        match self {
            LabelSet::Finite(s) => s.contains(&n),
            LabelSet::Cofinite(m) => !m.contains(&n),
        }
    }

    pub fn complement(&self) -> LabelSet {
        match self {
            LabelSet::Finite(s) => LabelSet::Cofinite(s.clone()),
            LabelSet::Cofinite(m) => LabelSet::Finite(m.clone()),
        }
    }

    pub fn as_graph(&self) -> Graph {
        match self {
            LabelSet::Finite(s) => Graph::finite(s.iter().copied()),
            LabelSet::Cofinite(m) => Graph::cofinite(m.iter().copied()),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, LabelSet::Cofinite(m) if m.is_empty())
    }
}

/// Mixed norm: summable weight on the labels in `i0`, locally constant
/// zeta norm on the complement.
pub fn mixed_dist(
    g1: &Graph,
    g2: &Graph,
    i0: &LabelSet,
    phi: &WeightFn,
    zeta: &ZetaFn,
    depth: Label,
) -> Result<DyadicInterval, MetricError> {
    let i0_graph = i0.as_graph();
    let a1 = intersect(g1, &i0_graph)?;
    let a2 = intersect(g2, &i0_graph)?;
    let summable_part = dist(&a1, &a2, phi, depth);

    // smallest label in the complement part of the difference
    let i1 = i0.complement();
    let mut min_diff: Option<Label> = None;
    match (g1.head_end(), g2.head_end(), &i1) {
        (Ok(h1), Ok(h2), _) => {
            // beyond both heads membership is periodic; one common period
            // past the heads suffices to witness any difference
            let bound = scan_bound(g1, g2, h1.max(h2));
            for n in 1..=bound {
                if i1.contains(n) && g1.contains_label(n) != g2.contains_label(n) {
                    min_diff = Some(n);
                    break;
                }
            }
        }
        _ => {
            for n in 1..=depth {
                if i1.contains(n) && g1.contains_label(n) != g2.contains_label(n) {
                    min_diff = Some(n);
                    break;
                }
            }
            if min_diff.is_none() {
                // an empty scan certifies nothing unless the complement part
                // is finite and fully covered by the scan
                let certified = match &i1 {
                    LabelSet::Finite(s) => s.iter().next_back().is_none_or(|&m| m <= depth),
                    LabelSet::Cofinite(_) => false,
                };
                if !certified {
                    return Err(MetricError::DepthExhausted(depth));
                }
            }
        }
    }
    let zeta_part = match min_diff {
        Some(n) => zeta.eval(n),
        None => Rat::zero(),
    };
    Ok(summable_part.add(&DyadicInterval::point(zeta_part)))
}

/// Labels up to which two closed graphs can differ: past the heads both are
/// periodic, so one common period witnesses every residue.
fn scan_bound(g1: &Graph, g2: &Graph, heads: Label) -> Label {
    let stride = |g: &Graph| g.periodic_parts().map_or(1, |(_, _, s)| s);
    heads + stride(g1) * stride(g2)
}

/// Truncation to the labels `1..=N` with a certified residual below
/// `epsilon`, where `N` is the smallest depth whose geometric tail fits.
/// Returns the truncated finite graph and `N`.
pub fn truncate(g: &Graph, a: &Rat, epsilon: &Rat) -> Result<(Graph, Label), MetricError> {
    if *a <= Rat::one() {
        return Err(MetricError::InvalidBase(a.clone()));
    }
    let total = Rat::one() / (a - Rat::one());
    if !epsilon.is_positive() || *epsilon >= total {
        return Err(MetricError::InvalidEpsilon);
    }
    // N = 1 + ceil(log_a 1/x) with x = epsilon (a - 1) < 1,
    // located by exact comparison a^k x >= 1
    let x = epsilon * (a - Rat::one());
    let mut k: Label = 0;
    let mut power = Rat::one();
    while &power * &x < Rat::one() {
        power *= a;
        k += 1;
    }
    let n = k + 1;
    let kept = Graph::finite((1..=n).filter(|&m| g.contains_label(m)));
    // residual = measure of G minus its kept prefix, all labels > n
    let weight = WeightFn::Geometric { a: a.clone() };
    if let Some(exact) = weight.measure(g) {
        let kept_measure = weight.measure(&kept).expect("finite measure");
        debug_assert!(exact - kept_measure < *epsilon);
    }
    Ok((kept, n))
}

/// Report of the injectivity/collision structure of the weak norm at a
/// given base over subsets of an initial label segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseReport {
    pub a: Rat,
    pub trials: u32,
    /// Pairs of distinct label subsets of `{1..trials}` with equal norms.
    pub collisions: Vec<(Vec<Label>, Vec<Label>)>,
    /// For base 2: canonical finite/tail collision pairs verified to have
    /// exactly equal norms, as (finite labels, partner graph).
    pub canonical_pairs: Vec<(Vec<Label>, Graph)>,
}

impl PhaseReport {
    pub fn injective_on_sample(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Collision analysis of the weak norm at base `a`.
///
/// For `a != 2` this searches exhaustively over all pairs of distinct label
/// subsets of `{1..=trials}` (no collisions can exist for `a > 2`). For
/// `a = 2` it builds, for every finite nonempty subset `{n1 < ... < nk}`,
/// the partner graph `{n1..n_{k-1}} ∪ {nk+1, nk+2, ...}` as a stride-1 tail
/// and verifies that the two norms agree exactly.
pub fn phase_check(a: &Rat, trials: u32) -> Result<PhaseReport, MetricError> {
    if *a <= Rat::one() {
        return Err(MetricError::InvalidBase(a.clone()));
    }
    assert!(trials <= 20, "phase_check enumerates 2^trials subsets");
    let two = rat_u64(2);
    let mut report = PhaseReport {
        a: a.clone(),
        trials,
        collisions: Vec::new(),
        canonical_pairs: Vec::new(),
    };
    if *a == two {
        for mask in 1u32..(1 << trials) {
            let labels: Vec<Label> = (0..trials)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| (b + 1) as Label)
                .collect();
            let top = *labels.last().unwrap();
            let head: Vec<Label> = labels[..labels.len() - 1].to_vec();
            let partner =
                Graph::periodic(head.iter().copied(), top + 1, 1).expect("valid stride-1 tail");
            let g = Graph::finite(labels.iter().copied());
            let n1 = weak_norm_exact(&g, a)?;
            let n2 = weak_norm_exact(&partner, a)?;
            assert_eq!(n1, n2, "canonical collision pair must agree");
            report.canonical_pairs.push((labels, partner));
        }
        return Ok(report);
    }
    let mut seen: std::collections::BTreeMap<Rat, u32> = std::collections::BTreeMap::new();
    for mask in 0u32..(1 << trials) {
        let labels: Vec<Label> = (0..trials)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| (b + 1) as Label)
            .collect();
        let norm = weak_norm_exact(&Graph::finite(labels.iter().copied()), a)?;
        if let Some(&other) = seen.get(&norm) {
            let other_labels: Vec<Label> = (0..trials)
                .filter(|b| other & (1 << b) != 0)
                .map(|b| (b + 1) as Label)
                .collect();
            report.collisions.push((other_labels, labels));
        } else {
            seen.insert(norm, mask);
        }
    }
    Ok(report)
}

/// Lexicographic comparison of finite label sets read as indicator streams:
/// at the first differing label, the set containing it is the larger.
pub fn lex_cmp_finite(a: &BTreeSet<Label>, b: &BTreeSet<Label>) -> std::cmp::Ordering {
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(&x), Some(&y)) => {
                if x < y {
                    return std::cmp::Ordering::Greater;
                }
                if x > y {
                    return std::cmp::Ordering::Less;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OracleTag;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn fin(labels: &[Label]) -> Graph {
        Graph::finite(labels.iter().copied())
    }

    fn norm2(g: &Graph) -> Rat {
        weak_norm_exact(g, &rat_u64(2)).unwrap()
    }

    #[test]
    fn weak_norm_examples() {
        assert_eq!(norm2(&Graph::empty()), rat(0, 1));
        assert_eq!(norm2(&Graph::complete()), rat(1, 1));
        assert_eq!(norm2(&fin(&[1, 3])), rat(5, 8));
    }

    #[test]
    fn weak_norm_periodic_closed_forms() {
        // odd labels: 1/2 + 1/8 + ... = 2/3
        let odds = Graph::periodic([], 1, 2).unwrap();
        assert_eq!(norm2(&odds), rat(2, 3));
        let g = Graph::periodic([], 5, 2).unwrap();
        assert_eq!(norm2(&g), rat(1, 24));
        let base3 = weak_norm_exact(&Graph::complete(), &rat_u64(3)).unwrap();
        assert_eq!(base3, rat(1, 2));
    }

    #[test]
    fn weak_norm_oracle_interval() {
        let o = Graph::oracle(|n| n % 2 == 1, OracleTag::Proper);
        let i8 = weak_norm(&o, &rat_u64(2), 8).unwrap();
        assert!(i8.contains(&rat(2, 3)));
        assert!(i8.width() <= pow_rat(&rat_u64(2), -8));
        // refining the depth keeps the enclosure nested
        let i16 = weak_norm(&o, &rat_u64(2), 16).unwrap();
        assert!(i16.within(&i8));
    }

    #[test]
    fn dist_examples() {
        let phi2 = WeightFn::geometric_u64(2);
        let g = Graph::periodic([2], 7, 3).unwrap();
        assert_eq!(dist(&g, &g, &phi2, 1).value().unwrap(), &rat(0, 1));
        assert_eq!(
            dist(&Graph::empty(), &Graph::complete(), &phi2, 1)
                .value()
                .unwrap(),
            &rat(1, 1)
        );
        assert_eq!(
            dist(&fin(&[1]), &fin(&[2]), &phi2, 1).value().unwrap(),
            &rat(3, 4)
        );
    }

    #[test]
    fn dist_handles_unmergeable_tails_exactly() {
        // the symmetric difference of these tails has two residue classes
        // per period and no closed representation, yet the distance is exact
        let a = Graph::periodic([], 1, 2).unwrap();
        let b = Graph::periodic([], 2, 4).unwrap();
        assert!(crate::graph::sym_diff(&a, &b).is_err());
        let phi2 = WeightFn::geometric_u64(2);
        let d = dist(&a, &b, &phi2, 1);
        assert_eq!(d.value().unwrap(), &rat(14, 15));
        let brute: Rat = (1..=60)
            .filter(|&n| a.contains_label(n) != b.contains_label(n))
            .map(|n| pow_rat(&rat_u64(2), -(n as i64)))
            .fold(Rat::zero(), |acc, v| acc + v);
        assert!((d.value().unwrap() - &brute).abs() < pow_rat(&rat_u64(2), -58));
    }

    #[test]
    fn zeta_norm_examples() {
        let z2 = ZetaFn::geometric_u64(2);
        assert_eq!(zeta_norm(&Graph::empty(), &z2, 8).unwrap(), rat(0, 1));
        assert_eq!(zeta_norm(&fin(&[3, 5]), &z2, 8).unwrap(), rat(1, 8));
        assert_eq!(zeta_norm(&Graph::cofinite([1]), &z2, 8).unwrap(), rat(1, 4));
    }

    #[test]
    fn zeta_norm_oracle_paths() {
        let z2 = ZetaFn::geometric_u64(2);
        let o = Graph::oracle(|n| n >= 6, OracleTag::Cofinite);
        assert_eq!(zeta_norm(&o, &z2, 32).unwrap(), rat(1, 64));
        assert_eq!(
            zeta_norm(&o, &z2, 3).unwrap_err(),
            MetricError::DepthExhausted(3)
        );
    }

    #[test]
    fn mixed_dist_examples() {
        let phi2 = WeightFn::geometric_u64(2);
        let z2 = ZetaFn::geometric_u64(2);
        let g = Graph::periodic([1], 4, 2).unwrap();
        let all = LabelSet::Cofinite(BTreeSet::new());
        assert!(mixed_dist(&g, &g, &all, &phi2, &z2, 16)
            .unwrap()
            .value()
            .unwrap()
            .is_zero());

        // degenerate partition reduces to the summable distance
        let g1 = fin(&[1, 2, 5]);
        let g2 = Graph::cofinite([2]);
        let md = mixed_dist(&g1, &g2, &all, &phi2, &z2, 16).unwrap();
        assert_eq!(md, dist(&g1, &g2, &phi2, 16));

        let split = LabelSet::Finite([1].into_iter().collect());
        let md = mixed_dist(&fin(&[1, 2]), &Graph::empty(), &split, &phi2, &z2, 16).unwrap();
        assert_eq!(md.value().unwrap(), &rat(3, 4));
    }

    #[test]
    fn mixed_dist_oracle_paths() {
        let phi2 = WeightFn::geometric_u64(2);
        let z2 = ZetaFn::geometric_u64(2);
        let odds = || Graph::oracle(|n| n % 2 == 1, OracleTag::Proper);
        let odds_with_4 = Graph::oracle(|n| n % 2 == 1 || n == 4, OracleTag::Proper);
        // the difference {4} lies in the complement part
        let i0 = LabelSet::Finite([1, 2, 3].into_iter().collect());
        let md = mixed_dist(&odds(), &odds_with_4, &i0, &phi2, &z2, 64).unwrap();
        assert!(md.contains(&rat(1, 16)));
        assert!(md.width() <= pow_rat(&rat_u64(2), -63));

        // a finite complement part fully inside the scan is certified empty
        let odds_with_2 = Graph::oracle(|n| n % 2 == 1 || n == 2, OracleTag::Proper);
        let i0 = LabelSet::Cofinite([5, 6].into_iter().collect());
        let md = mixed_dist(&odds(), &odds_with_2, &i0, &phi2, &z2, 64).unwrap();
        assert!(md.contains(&rat(1, 4)));

        // an infinite complement part cannot be certified from a scan
        let i0 = LabelSet::Finite([1].into_iter().collect());
        assert_eq!(
            mixed_dist(&odds(), &odds(), &i0, &phi2, &z2, 64).unwrap_err(),
            MetricError::DepthExhausted(64)
        );
    }

    #[test]
    fn truncate_examples() {
        let (g0, n) = truncate(&Graph::complete(), &rat_u64(2), &rat(1, 8)).unwrap();
        assert_eq!(n, 4);
        assert_eq!(g0, fin(&[1, 2, 3, 4]));

        let (g0, _) = truncate(&Graph::empty(), &rat_u64(2), &rat(1, 2)).unwrap();
        assert!(g0.is_empty());

        let (g0, n) = truncate(&Graph::complete(), &rat_u64(3), &rat(1, 9)).unwrap();
        assert_eq!(n, 3);
        let residual = weak_norm_exact(&Graph::complete(), &rat_u64(3)).unwrap()
            - weak_norm_exact(&g0, &rat_u64(3)).unwrap();
        assert_eq!(residual, rat(1, 54));
    }

    #[test]
    fn truncate_works_through_oracles() {
        let o = Graph::oracle(|n| n % 2 == 1, OracleTag::Proper);
        let (kept, bound) = truncate(&o, &rat_u64(2), &rat(1, 8)).unwrap();
        assert_eq!(bound, 4);
        assert_eq!(kept, fin(&[1, 3]));
    }

    #[test]
    fn truncate_rejects_oversized_epsilon() {
        assert_eq!(
            truncate(&Graph::empty(), &rat_u64(2), &rat(2, 1)).unwrap_err(),
            MetricError::InvalidEpsilon
        );
    }

    #[test]
    fn phase_check_injective_base_three() {
        let report = phase_check(&rat_u64(3), 12).unwrap();
        assert!(report.injective_on_sample());
    }

    #[test]
    fn phase_check_base_two_canonical_pairs() {
        let report = phase_check(&rat_u64(2), 5).unwrap();
        assert_eq!(report.canonical_pairs.len(), 31);
        // {1} collides with the tail from 2
        let g = fin(&[1]);
        let partner = Graph::periodic([], 2, 1).unwrap();
        assert_eq!(norm2(&g), rat(1, 2));
        assert_eq!(norm2(&partner), rat(1, 2));
        // {2, 5} collides with {2} plus the tail from 6
        let g = fin(&[2, 5]);
        let partner = Graph::periodic([2], 6, 1).unwrap();
        assert_eq!(norm2(&g), rat(9, 32));
        assert_eq!(norm2(&g), norm2(&partner));
    }

    #[test]
    fn lex_monotone_base_two_exhaustive() {
        // over all subsets of {1..12}: lex order implies norm order. Both
        // orders are strict and total here, so agreement on every pair is
        // equivalent to the norms increasing along the lex-sorted chain.
        let mut sets: Vec<BTreeSet<Label>> = (0u32..(1 << 12))
            .map(|mask| {
                (0..12)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| b as Label + 1)
                    .collect()
            })
            .collect();
        sets.sort_by(lex_cmp_finite);
        let norms: Vec<Rat> = sets
            .iter()
            .map(|s| norm2(&Graph::finite(s.iter().copied())))
            .collect();
        assert!(norms.windows(2).all(|w| w[0] < w[1]));
        // spot-check the pairwise form on a small slice
        for i in 0..64 {
            for j in (i + 1)..64 {
                assert_eq!(lex_cmp_finite(&sets[i], &sets[j]), norms[i].cmp(&norms[j]));
            }
        }
    }

    #[test]
    fn weight_c_limits() {
        assert_eq!(WeightFn::geometric_u64(2).c_limit().unwrap(), rat(1, 1));
        assert_eq!(WeightFn::geometric_u64(3).c_limit().unwrap(), rat(0, 1));
        assert_eq!(
            WeightFn::geometric(rat(3, 2))
                .unwrap()
                .c_limit()
                .unwrap_err(),
            MetricError::CLimitMissing
        );
        let t = WeightFn::tabulated(vec![rat(1, 3)], rat(1, 2)).unwrap();
        assert_eq!(t.c_limit().unwrap(), rat(2, 3));
        let slow = WeightFn::tabulated(vec![rat(1, 3)], rat(3, 4)).unwrap();
        assert_eq!(slow.c_limit().unwrap_err(), MetricError::CLimitMissing);
    }

    #[test]
    fn tabulated_measures_are_exact() {
        let w = WeightFn::tabulated(vec![rat(1, 2), rat(1, 3), rat(1, 5)], rat(1, 4)).unwrap();
        // total = 1/2 + 1/3 + 1/5 + (1/5)(1/4)/(3/4)
        assert_eq!(w.total(), rat(1, 2) + rat(1, 3) + rat(1, 5) + rat(1, 15));
        assert_eq!(w.eval(5), rat(1, 5) * rat(1, 16));
        let g = Graph::periodic([], 2, 3).unwrap();
        // labels 2, 5, 8, ...: 1/3 + (1/5)(1/4) + (1/5)(1/4)^4 / (1 - (1/4)^3) ...
        let direct: Rat = (0..200)
            .map(|k| w.eval(2 + 3 * k))
            .fold(Rat::zero(), |acc, v| acc + v);
        let exact = w.measure(&g).unwrap();
        assert!((&exact - &direct).abs() < pow_rat(&rat_u64(4), -150));
        assert!(exact > direct);
    }

    prop_compose! {
        fn arb_closed()(choice in 0..3, labels in proptest::collection::btree_set(1u64..40, 0..7),
                        start in 1u64..16, stride in 2u64..6) -> Graph {
            match choice {
                0 => Graph::finite(labels),
                1 => Graph::cofinite(labels),
                _ => Graph::periodic(labels.into_iter().filter(|&n| n < 16), start, stride).unwrap(),
            }
        }
    }

    fn weights() -> Vec<WeightFn> {
        vec![
            WeightFn::geometric(rat(3, 2)).unwrap(),
            WeightFn::geometric_u64(2),
            WeightFn::geometric_u64(3),
        ]
    }

    proptest! {
        #[test]
        fn metric_axioms(a in arb_closed(), b in arb_closed(), c in arb_closed()) {
            for phi in weights() {
                let dab = dist(&a, &b, &phi, 1).value().unwrap().clone();
                let dba = dist(&b, &a, &phi, 1).value().unwrap().clone();
                prop_assert!(!dab.is_negative());
                prop_assert_eq!(&dab, &dba);
                prop_assert_eq!(dab.is_zero(), a == b);
                let dac = dist(&a, &c, &phi, 1).value().unwrap().clone();
                let dbc = dist(&b, &c, &phi, 1).value().unwrap().clone();
                prop_assert!(dac <= &dab + &dbc);
            }
        }

        #[test]
        fn translation_invariance(a in arb_closed(), b in arb_closed(),
                                  shift in proptest::collection::btree_set(1u64..40, 0..6)) {
            let h = Graph::finite(shift);
            for phi in weights() {
                let before = dist(&a, &b, &phi, 1).value().unwrap().clone();
                let ta = crate::graph::sym_diff(&a, &h).unwrap();
                let tb = crate::graph::sym_diff(&b, &h).unwrap();
                let after = dist(&ta, &tb, &phi, 1).value().unwrap().clone();
                prop_assert_eq!(before, after);
            }
        }

        #[test]
        fn weak_norm_is_distance_from_empty(g in arb_closed()) {
            let a = rat_u64(2);
            let lhs = weak_norm_exact(&g, &a).unwrap();
            let rhs = dist(&Graph::empty(), &g, &WeightFn::geometric_u64(2), 1);
            prop_assert_eq!(&lhs, rhs.value().unwrap());
        }
    }
}
