//! Edge-density trajectories of induced vertex prefixes and constructions
//! realizing prescribed limiting densities.
//!
//! For a graph `G` and `n >= 2`, the prefix density `e(G[n])` is the number
//! of edges among the first `n` vertices divided by `n(n-1)/2`. Consecutive
//! values obey the exact growth bounds
//! `(n-1)/(n+1) e_n <= e_{n+1} <= (n-1)/(n+1) e_n + 2/(n+1)`.
//!
//! Constructions are built from "attachment" prefixes: each new vertex
//! connects to an initial segment of the earlier vertices, so a graph on
//! thousands of vertices is stored as one count per vertex.

use crate::graph::{FiniteGraphH, Graph, GraphError};
use crate::labeling::{EdgeId, EdgeLabeling};
use crate::rat::{ceil_sqrt, rat_u64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("target density {0} lies outside [0, 1]")]
    TargetOutOfRange(Rat),
    #[error("need at least two strictly increasing targets in [0, 1]")]
    BadTargets,
    #[error("epsilon must satisfy 0 < epsilon <= (p1 - p0)/2")]
    BadEpsilon,
    #[error("the current density must be a proper window endpoint below the other one")]
    DirectionMismatch,
    #[error("pattern has {0} vertices; induced-embedding counting is capped at 8")]
    TooLargePattern(usize),
    #[error("edge-density growth bounds violated at n = {0}")]
    GrowthBoundViolated(u64),
    #[error("no edge count fits the density window when adding vertex {vertex}")]
    WindowInfeasible { vertex: u64 },
    #[error("prefix needs at least {need} vertices, got {got}")]
    TooFewVertices { need: u64, got: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn choose2(n: u64) -> u64 {
    n * (n - 1) / 2
}

/// A finite graph on the vertices `1..=n` built from a base graph plus a
/// run of attachment vertices, each connected to an initial segment of the
/// earlier vertices. Memory is one integer per attached vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixGraph {
    base_edges: BTreeSet<EdgeId>,
    base_n: u64,
    attach: Vec<u64>,
}

impl PrefixGraph {
    /// The base graph `h` viewed on the vertices `1..=n` (isolated trailing
    /// vertices allowed).
    pub fn from_finite(h: &FiniteGraphH, n: u64) -> Result<Self, DensityError> {
        let max_vertex = h.vertices().iter().next_back().copied().unwrap_or(0);
        if n < max_vertex.max(2) {
            return Err(DensityError::TooFewVertices {
                need: max_vertex.max(2),
                got: n,
            });
        }
        Ok(PrefixGraph {
            base_edges: h.edges().collect(),
            base_n: n,
            attach: Vec::new(),
        })
    }

    /// The complete graph on two vertices, the seed of the constructions.
    pub fn seed_edge() -> Self {
        PrefixGraph {
            base_edges: [EdgeId::new(1, 2).unwrap()].into_iter().collect(),
            base_n: 2,
            attach: Vec::new(),
        }
    }

    /// The edgeless graph on `n >= 2` vertices.
    pub fn edgeless(n: u64) -> Self {
        PrefixGraph {
            base_edges: BTreeSet::new(),
            base_n: n.max(2),
            attach: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.base_n + self.attach.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.base_edges.len() as u64 + self.attach.iter().sum::<u64>()
    }

    /// Attach a new vertex connected to the vertices `1..=k`.
    pub fn attach_vertex(&mut self, k: u64) {
        assert!(k <= self.vertex_count(), "cannot attach beyond the prefix");
        self.attach.push(k);
    }

    pub fn density(&self) -> Rat {
        let n = self.vertex_count();
        assert!(n >= 2);
        Rat::new(BigInt::from(self.edge_count()), BigInt::from(choose2(n)))
    }

    pub fn contains_pair(&self, e: EdgeId) -> bool {
        if e.j() > self.vertex_count() {
            return false;
        }
        if e.j() <= self.base_n {
            self.base_edges.contains(&e)
        } else {
            e.i() <= self.attach[(e.j() - self.base_n - 1) as usize]
        }
    }

    /// Edges among the first `n` vertices.
    pub fn edge_count_at(&self, n: u64) -> u64 {
        if n <= self.base_n {
            // EdgeId sorts by (j, i), so the vertex prefix is a range
            if n < 2 {
                return 0;
            }
            let top = EdgeId::new(n - 1, n).unwrap();
            self.base_edges.range(..=top).count() as u64
        } else {
            let extra: u64 = self.attach[..(n - self.base_n) as usize].iter().sum();
            self.base_edges.len() as u64 + extra
        }
    }

    pub fn density_at(&self, n: u64) -> Rat {
        assert!((2..=self.vertex_count()).contains(&n));
        Rat::new(
            BigInt::from(self.edge_count_at(n)),
            BigInt::from(choose2(n)),
        )
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        let attached = self.attach.iter().enumerate().flat_map(move |(t, &k)| {
            let j = self.base_n + 1 + t as u64;
            (1..=k).map(move |i| EdgeId::new(i, j).unwrap())
        });
        self.base_edges.iter().copied().chain(attached)
    }

    pub fn to_finite_graph_h(&self) -> FiniteGraphH {
        FiniteGraphH::new(self.edges())
    }

    pub fn to_graph(&self, labeling: &EdgeLabeling) -> Graph {
        Graph::from_edges(self.edges(), labeling)
    }
}

/// The finite subgraph of `g` induced on the vertices `1..=n`.
pub fn induced_prefix(g: &Graph, n: u64, labeling: &EdgeLabeling) -> FiniteGraphH {
    let mut edges = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            let e = EdgeId::new(i, j).unwrap();
            if g.contains_label(labeling.label(e)) {
                edges.push(e);
            }
        }
    }
    FiniteGraphH::new(edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryRow {
    pub n: u64,
    pub edges: u64,
    pub density: Rat,
}

/// The sequence `n -> e(G[n])` for `n = 2..=N`, growth bounds verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityTrajectory {
    pub rows: Vec<TrajectoryRow>,
}

impl DensityTrajectory {
    fn from_edge_counts(
        counts: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, DensityError> {
        let rows: Vec<TrajectoryRow> = counts
            .into_iter()
            .map(|(n, edges)| TrajectoryRow {
                n,
                edges,
                density: Rat::new(BigInt::from(edges), BigInt::from(choose2(n))),
            })
            .collect();
        let t = DensityTrajectory { rows };
        t.check_growth_bounds()?;
        Ok(t)
    }

    pub fn check_growth_bounds(&self) -> Result<(), DensityError> {
        for w in self.rows.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            if next.n != prev.n + 1 {
                continue;
            }
            let n = prev.n;
            let carry = Rat::new(BigInt::from(n - 1), BigInt::from(n + 1)) * &prev.density;
            let ceiling = &carry + Rat::new(BigInt::from(2u64), BigInt::from(n + 1));
            if next.density < carry || next.density > ceiling {
                return Err(DensityError::GrowthBoundViolated(next.n));
            }
        }
        Ok(())
    }

    pub fn last_density(&self) -> Option<&Rat> {
        self.rows.last().map(|r| &r.density)
    }

    /// CSV with header `n,edges,density_num,density_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,edges,density_num,density_den\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                r.edges,
                r.density.numer(),
                r.density.denom()
            ));
        }
        out
    }
}

/// Density trajectory of an arbitrary graph up to `n_max` vertices.
pub fn trajectory(g: &Graph, n_max: u64) -> Result<DensityTrajectory, DensityError> {
    assert!(n_max >= 2, "trajectories start at two vertices");
    let counts = (2..=n_max).map(|n| (n, g.count_up_to_scan(choose2(n))));
    DensityTrajectory::from_edge_counts(counts)
}

/// Density trajectory of an attachment prefix.
pub fn trajectory_of_prefix(p: &PrefixGraph) -> Result<DensityTrajectory, DensityError> {
    let counts = (2..=p.vertex_count()).map(|n| (n, p.edge_count_at(n)));
    DensityTrajectory::from_edge_counts(counts)
}

#[derive(Clone, Debug)]
pub struct TargetConstruction {
    pub graph: Graph,
    pub prefix: PrefixGraph,
    pub trajectory: DensityTrajectory,
}

/// Builds a graph whose prefix densities converge to `e`, meeting
/// `|e(G[n]) - e| < 1/C(n,2)` at every step up to `n_max`. Each new vertex
/// attaches to the earlier vertices in increasing label order, the edge
/// count chosen to minimize the deviation (ties toward fewer edges).
pub fn construct_target(e: &Rat, n_max: u64) -> Result<TargetConstruction, DensityError> {
    if e.is_negative() || *e > Rat::one() {
        return Err(DensityError::TargetOutOfRange(e.clone()));
    }
    assert!(n_max >= 2);
    let labeling = EdgeLabeling::canonical();
    if e.is_zero() || e.is_one() {
        let graph = if e.is_zero() {
            Graph::empty()
        } else {
            Graph::complete()
        };
        return Ok(TargetConstruction {
            trajectory: trajectory(&graph, n_max)?,
            prefix: if e.is_zero() {
                PrefixGraph::edgeless(n_max)
            } else {
                full_prefix(n_max)
            },
            graph,
        });
    }
    let mut prefix = PrefixGraph::seed_edge();
    for n in 2..n_max {
        let capacity = choose2(n + 1);
        let have = prefix.edge_count();
        // pick k in [0, n] minimizing |(have + k)/C(n+1,2) - e|
        let ideal = e * rat_u64(capacity) - rat_u64(have);
        let k = round_to_range(&ideal, 0, n);
        prefix.attach_vertex(k);
        let deviation = (prefix.density() - e).abs();
        if deviation >= Rat::one() / rat_u64(capacity) {
            return Err(DensityError::WindowInfeasible { vertex: n + 1 });
        }
    }
    Ok(TargetConstruction {
        graph: prefix.to_graph(&labeling),
        trajectory: trajectory_of_prefix(&prefix)?,
        prefix,
    })
}

fn full_prefix(n: u64) -> PrefixGraph {
    let mut p = PrefixGraph::seed_edge();
    for v in 3..=n {
        p.attach_vertex(v - 1);
    }
    p
}

/// Nearest integer to `x` within `[lo, hi]`, ties toward the smaller value.
fn round_to_range(x: &Rat, lo: u64, hi: u64) -> u64 {
    let floor = x.floor().to_integer();
    let lo_big = BigInt::from(lo);
    let hi_big = BigInt::from(hi);
    let below = floor.clone().max(lo_big.clone()).min(hi_big.clone());
    let above = (floor + 1i32).max(lo_big).min(hi_big);
    let below_u = below.to_u64().unwrap();
    let above_u = above.to_u64().unwrap();
    let d_below = (x - rat_u64(below_u)).abs();
    let d_above = (x - rat_u64(above_u)).abs();
    if d_below <= d_above {
        below_u
    } else {
        above_u
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowDirection {
    Up,
    Down,
}

/// Extends the prefix to a supergraph whose density lands within `epsilon`
/// of the other window endpoint, with every intermediate prefix density
/// staying inside `[p0, p1]`.
///
/// The number of vertices of the result is
/// `1 + ceil(sqrt(max(2/eps, n1^2 p1/(p0+eps), n1^2 (1-p0)/(1-p1+eps))))`,
/// which makes a single added edge move the density by less than `epsilon`.
/// Growing up attaches to each new vertex as many edges as fit under `p1`;
/// growing down as few as keep the density at or above `p0`.
pub fn grow_to_density(
    start: &PrefixGraph,
    p_other: &Rat,
    epsilon: &Rat,
    direction: GrowDirection,
) -> Result<PrefixGraph, DensityError> {
    let current = start.density();
    let (p0, p1) = match direction {
        GrowDirection::Up => (current.clone(), p_other.clone()),
        GrowDirection::Down => (p_other.clone(), current.clone()),
    };
    if p0.is_negative() || p1 > Rat::one() || p0 >= p1 {
        return Err(DensityError::DirectionMismatch);
    }
    // half the window width is still workable, so equality is allowed
    if !epsilon.is_positive() || epsilon * rat_u64(2) > &p1 - &p0 {
        return Err(DensityError::BadEpsilon);
    }
    let n1 = start.vertex_count();
    let n1_sq = rat_u64(n1) * rat_u64(n1);
    let candidates = [
        rat_u64(2) / epsilon,
        &n1_sq * &p1 / (&p0 + epsilon),
        &n1_sq * (Rat::one() - &p0) / (Rat::one() - &p1 + epsilon),
    ];
    let n2 = 1 + ceil_sqrt(candidates.iter().max().unwrap());
    let n2 = n2.max(n1 + 1);

    let mut prefix = start.clone();
    let step = |prefix: &mut PrefixGraph| -> Result<(), DensityError> {
        let vertex = prefix.vertex_count() + 1;
        let capacity = choose2(vertex);
        let have = prefix.edge_count();
        let k = match direction {
            GrowDirection::Up => {
                // largest k with (have + k)/C(vertex,2) <= p1
                let room = &p1 * rat_u64(capacity) - rat_u64(have);
                floor_clamped(&room, vertex - 1)
            }
            GrowDirection::Down => {
                // smallest k with (have + k)/C(vertex,2) >= p0
                let need = &p0 * rat_u64(capacity) - rat_u64(have);
                ceil_clamped(&need, vertex - 1)
            }
        };
        prefix.attach_vertex(k);
        let d = prefix.density();
        if d < p0 || d > p1 {
            return Err(DensityError::WindowInfeasible { vertex });
        }
        Ok(())
    };
    while prefix.vertex_count() < n2 {
        step(&mut prefix)?;
    }
    // the vertex bound gives single-edge granularity below epsilon, but an
    // exactly-integral corner can land on the boundary; a few more greedy
    // steps settle it
    let target = match direction {
        GrowDirection::Up => &p1,
        GrowDirection::Down => &p0,
    };
    let hard_cap = n2 * 4;
    while (prefix.density() - target).abs() >= *epsilon {
        if prefix.vertex_count() >= hard_cap {
            return Err(DensityError::WindowInfeasible {
                vertex: prefix.vertex_count(),
            });
        }
        step(&mut prefix)?;
    }
    Ok(prefix)
}

fn floor_clamped(x: &Rat, hi: u64) -> u64 {
    let f = x.floor().to_integer();
    f.max(BigInt::zero())
        .min(BigInt::from(hi))
        .to_u64()
        .unwrap()
}

fn ceil_clamped(x: &Rat, hi: u64) -> u64 {
    let c = x.ceil().to_integer();
    c.max(BigInt::zero())
        .min(BigInt::from(hi))
        .to_u64()
        .unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetMarks {
    pub target: Rat,
    /// Vertex counts where the prefix density is within `min(1/k, eps0)`
    /// of the target, one per sweep.
    pub indices: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct OscillatingConstruction {
    pub prefix: PrefixGraph,
    pub marks: Vec<TargetMarks>,
    pub trajectory: DensityTrajectory,
    /// Vertex count of the first mark; beyond it the trajectory never
    /// leaves `[first target, last target]`.
    pub settled_from: u64,
}

/// Builds a graph whose prefix densities sweep the target list again and
/// again with tolerance shrinking as `1/k`, so that each target is an
/// accumulation point of the trajectory and every density after the first
/// mark stays inside `[e_1, e_m]`.
pub fn construct_oscillating(
    targets: &[Rat],
    rounds: u32,
) -> Result<OscillatingConstruction, DensityError> {
    if targets.len() < 2 {
        return Err(DensityError::BadTargets);
    }
    if targets.windows(2).any(|w| w[0] >= w[1])
        || targets[0].is_negative()
        || targets[targets.len() - 1] > Rat::one()
    {
        return Err(DensityError::BadTargets);
    }
    assert!(rounds >= 1);
    let m = targets.len();
    let gaps_min = targets
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least one gap");
    let eps0 = gaps_min / rat_u64(2);

    // seed with density in [e1, e1 + eps0): approach e1 from above
    let e1 = &targets[0];
    let mut n_start = 3;
    while rat_u64(choose2(n_start)) < rat_u64(2) / &eps0 {
        n_start += 1;
    }
    let built = construct_target(e1, n_start)?;
    let mut prefix = built.prefix;
    if &prefix.density() < e1 {
        // one attachment step lands in [e1, e1 + 1/C)
        let capacity = choose2(prefix.vertex_count() + 1);
        let need = e1 * rat_u64(capacity) - rat_u64(prefix.edge_count());
        let k = ceil_clamped(&need, prefix.vertex_count());
        prefix.attach_vertex(k);
    }
    debug_assert!(&prefix.density() >= e1 && prefix.density() < e1 + &eps0);

    let mut marks: Vec<TargetMarks> = targets
        .iter()
        .map(|t| TargetMarks {
            target: t.clone(),
            indices: Vec::new(),
        })
        .collect();
    let settled_from = prefix.vertex_count();
    marks[0].indices.push(settled_from);

    let (mut i, mut k) = (0usize, 1u32);
    while !(i == m - 1 && k == rounds) {
        let (next_i, next_k, direction) = if i < m - 1 {
            (i + 1, k, GrowDirection::Up)
        } else {
            (0, k + 1, GrowDirection::Down)
        };
        let target = &targets[next_i];
        let current = prefix.density();
        let window_width = match direction {
            GrowDirection::Up => target - &current,
            GrowDirection::Down => &current - target,
        };
        let eps_leg = [
            Rat::one() / rat_u64(next_k as u64),
            eps0.clone(),
            window_width / rat_u64(4),
        ]
        .into_iter()
        .min()
        .unwrap();
        prefix = grow_to_density(&prefix, target, &eps_leg, direction)?;
        marks[next_i].indices.push(prefix.vertex_count());
        i = next_i;
        k = next_k;
    }

    Ok(OscillatingConstruction {
        trajectory: trajectory_of_prefix(&prefix)?,
        marks,
        settled_from,
        prefix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccumulationReport {
    /// Smallest and largest density over the trailing window: the interval
    /// estimate for the set of accumulation points.
    pub lo: Rat,
    pub hi: Rat,
    /// Midpoints of value clusters detected in the window.
    pub clusters: Vec<Rat>,
    pub window_start_n: u64,
}

/// Estimates the set of accumulation points of the density trajectory from
/// its trailing window. An estimator, not a decision procedure.
pub fn accumulation_set(
    g: &Graph,
    n_max: u64,
    window: u64,
) -> Result<AccumulationReport, DensityError> {
    assert!(window >= 2 && n_max >= window, "need n_max >= window >= 2");
    let traj = trajectory(g, n_max)?;
    Ok(accumulation_from_trajectory(&traj, window))
}

pub fn accumulation_from_trajectory(traj: &DensityTrajectory, window: u64) -> AccumulationReport {
    let rows = &traj.rows;
    let take = (window as usize).min(rows.len());
    let tail = &rows[rows.len() - take..];
    let window_start_n = tail[0].n;
    let mut values: Vec<Rat> = tail.iter().map(|r| r.density.clone()).collect();
    values.sort();
    let lo = values[0].clone();
    let hi = values[values.len() - 1].clone();
    // one prefix step moves the density by at most 2/(n+1); gaps wider than
    // a few steps separate clusters
    let gap_threshold = rat_u64(6) / rat_u64(window_start_n + 1);
    let mut clusters = Vec::new();
    let mut cluster_lo = values[0].clone();
    let mut cluster_hi = values[0].clone();
    for v in &values[1..] {
        if v - &cluster_hi > gap_threshold {
            clusters.push((&cluster_lo + &cluster_hi) / rat_u64(2));
            cluster_lo = v.clone();
        }
        cluster_hi = v.clone();
    }
    clusters.push((&cluster_lo + &cluster_hi) / rat_u64(2));
    AccumulationReport {
        lo,
        hi,
        clusters,
        window_start_n,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitingHomDensity {
    pub pattern: FiniteGraphH,
    /// `(n, t(H, G[n]))` for `n` from the pattern size to the horizon.
    pub values: Vec<(u64, Rat)>,
}

/// The induced homomorphism density sequence of a finite pattern: labelled
/// induced embeddings into each vertex prefix, normalized by the falling
/// factorial. Patterns are capped at 8 vertices.
pub fn limiting_hom_density(
    h: &FiniteGraphH,
    g: &Graph,
    n_max: u64,
    labeling: &EdgeLabeling,
) -> Result<LimitingHomDensity, DensityError> {
    let pattern_vertices: Vec<u64> = h.vertices().into_iter().collect();
    let size = pattern_vertices.len();
    if size > 8 {
        return Err(DensityError::TooLargePattern(size));
    }
    let start = (size as u64).max(2);
    let mut values = Vec::new();
    for n in start..=n_max {
        let count = count_induced_embeddings(h, &pattern_vertices, g, n, labeling);
        let mut falling = Rat::one();
        for t in 0..size as u64 {
            falling *= rat_u64(n - t);
        }
        values.push((n, rat_u64(count) / falling));
    }
    Ok(LimitingHomDensity {
        pattern: h.clone(),
        values,
    })
}

/// Counts injections of the pattern vertices into `1..=n` preserving both
/// edges and non-edges, by depth-first extension with pairwise pruning.
fn count_induced_embeddings(
    h: &FiniteGraphH,
    pattern_vertices: &[u64],
    g: &Graph,
    n: u64,
    labeling: &EdgeLabeling,
) -> u64 {
    fn extend(
        h: &FiniteGraphH,
        pattern: &[u64],
        g: &Graph,
        n: u64,
        labeling: &EdgeLabeling,
        image: &mut Vec<u64>,
    ) -> u64 {
        let t = image.len();
        if t == pattern.len() {
            return 1;
        }
        let mut total = 0;
        'candidates: for w in 1..=n {
            if image.contains(&w) {
                continue;
            }
            for s in 0..t {
                let in_pattern = h.contains(EdgeId::new(pattern[s], pattern[t]).unwrap());
                let in_graph = g.contains_label(labeling.label(EdgeId::new(image[s], w).unwrap()));
                if in_pattern != in_graph {
                    continue 'candidates;
                }
            }
            image.push(w);
            total += extend(h, pattern, g, n, labeling, image);
            image.pop();
        }
        total
    }
    if pattern_vertices.is_empty() {
        return 1;
    }
    let mut image = Vec::with_capacity(pattern_vertices.len());
    extend(h, pattern_vertices, g, n, labeling, &mut image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    NonDecreasing,
    NonIncreasing,
}

/// Indices (into the trajectory rows) of a monotone subsequence: the peaks
/// of the sequence when they are plentiful, otherwise a greedy
/// non-decreasing chain.
pub fn monotone_subsequence(traj: &DensityTrajectory) -> (Vec<usize>, Monotonicity) {
    let values: Vec<&Rat> = traj.rows.iter().map(|r| &r.density).collect();
    if values.is_empty() {
        return (Vec::new(), Monotonicity::NonDecreasing);
    }
    // peaks: positions at least as large as everything after them
    let mut peaks = Vec::new();
    let mut best: Option<&Rat> = None;
    for idx in (0..values.len()).rev() {
        if best.is_none_or(|b| values[idx] >= b) {
            peaks.push(idx);
            best = Some(values[idx]);
        }
    }
    peaks.reverse();
    if peaks.len() >= 2 {
        return (peaks, Monotonicity::NonIncreasing);
    }
    let mut chain = vec![0usize];
    let mut cursor = 0usize;
    for idx in 1..values.len() {
        if values[idx] >= values[cursor] {
            chain.push(idx);
            cursor = idx;
        }
    }
    (chain, Monotonicity::NonDecreasing)
}
