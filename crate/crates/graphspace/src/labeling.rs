//! Edge identities and the canonical edge labelling.
//!
//! Vertices are the positive integers. An edge is an unordered pair `{i, j}`
//! with `1 <= i < j`; the canonical labelling sends `{i, j}` to
//! `(j-1)(j-2)/2 + i`, the colexicographic position of the pair. Under this
//! labelling the edges among the first `n` vertices receive exactly the
//! labels `1 ..= n(n-1)/2`, so truncating by label agrees with truncating by
//! vertex prefix. A labelling may additionally carry a finite-support
//! permutation of the labels (a "twist").

use crate::graph::GraphError;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Label = u64;

/// An unordered vertex pair `{i, j}` with `1 <= i < j`.
///
/// Ordered colexicographically (by `j`, then `i`), which matches the order
/// of canonical labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeId {
    i: u64,
    j: u64,
}

impl EdgeId {
    pub fn new(a: u64, b: u64) -> Result<Self, GraphError> {
        if a == 0 || b == 0 || a == b {
            return Err(GraphError::InvalidEdge(a, b));
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Ok(EdgeId { i, j })
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn touches(&self, v: u64) -> bool {
        self.i == v || self.j == v
    }
}

impl Ord for EdgeId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for EdgeId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.i, self.j)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.i, self.j)
    }
}

/// Colexicographic label of an edge: `{i, j} -> (j-1)(j-2)/2 + i`.
pub fn colex_label(e: EdgeId) -> Label {
    let j = e.j as u128;
    let base = (j - 1) * (j - 2) / 2;
    let label = base + e.i as u128;
    u64::try_from(label).expect("edge label exceeds u64")
}

/// Inverse of [`colex_label`]. Requires `n >= 1`.
pub fn colex_unlabel(n: Label) -> EdgeId {
    assert!(n >= 1, "labels start at 1");
    // j is the unique integer with C(j-1, 2) < n <= C(j, 2)
    let tri = |j: u128| j * (j.saturating_sub(1)) / 2;
    let mut j = (((8.0 * n as f64 + 1.0).sqrt() + 1.0) / 2.0).floor() as u128;
    j = j.max(2);
    while tri(j - 1) >= n as u128 {
        j -= 1;
    }
    while tri(j) < n as u128 {
        j += 1;
    }
    let i = n as u128 - tri(j - 1);
    debug_assert!(i >= 1 && i < j);
    EdgeId {
        i: i as u64,
        j: j as u64,
    }
}

/// A permutation of the labels moving only finitely many of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Permutation {
    fwd: BTreeMap<Label, Label>,
    inv: BTreeMap<Label, Label>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[1, 2], [4, 5, 6]]`.
    pub fn from_cycles(cycles: &[Vec<Label>]) -> Result<Self, GraphError> {
        let mut fwd = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for cycle in cycles {
            for &x in cycle {
                if x == 0 {
                    return Err(GraphError::InvalidLabel(0));
                }
                if !seen.insert(x) {
                    return Err(GraphError::OverlappingCycles(x));
                }
            }
            if cycle.len() < 2 {
                continue;
            }
            for k in 0..cycle.len() {
                fwd.insert(cycle[k], cycle[(k + 1) % cycle.len()]);
            }
        }
        let inv = fwd.iter().map(|(&a, &b)| (b, a)).collect();
        Ok(Permutation { fwd, inv })
    }

    pub fn apply(&self, n: Label) -> Label {
        *self.fwd.get(&n).unwrap_or(&n)
    }

    pub fn invert(&self, n: Label) -> Label {
        *self.inv.get(&n).unwrap_or(&n)
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_empty()
    }

    /// Labels moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = Label> + '_ {
        self.fwd.keys().copied()
    }

    pub fn max_support(&self) -> Option<Label> {
        self.fwd.keys().next_back().copied()
    }
}

/// The labelling in force: the canonical colex bijection, optionally
/// composed with a finite-support twist of the labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabeling {
    twist: Permutation,
}

impl EdgeLabeling {
    pub fn canonical() -> Self {
        EdgeLabeling::default()
    }

    pub fn with_twist(twist: Permutation) -> Self {
        EdgeLabeling { twist }
    }

    pub fn twist(&self) -> &Permutation {
        &self.twist
    }

    pub fn label(&self, e: EdgeId) -> Label {
        self.twist.apply(colex_label(e))
    }

    pub fn unlabel(&self, n: Label) -> EdgeId {
        colex_unlabel(self.twist.invert(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: u64, b: u64) -> EdgeId {
        EdgeId::new(a, b).unwrap()
    }

    #[test]
    fn colex_small_cases() {
        assert_eq!(colex_label(e(1, 2)), 1);
        assert_eq!(colex_label(e(2, 3)), 3);
        assert_eq!(colex_label(e(3, 4)), 6);
        assert_eq!(colex_unlabel(1), e(1, 2));
        assert_eq!(colex_unlabel(4), e(1, 4));
        assert_eq!(colex_unlabel(2), e(1, 3));
    }

    #[test]
    fn edge_validation() {
        assert!(EdgeId::new(3, 3).is_err());
        assert!(EdgeId::new(0, 2).is_err());
        assert_eq!(e(5, 2), e(2, 5));
    }

    #[test]
    fn colex_round_trip_to_ten_thousand() {
        for n in 1..=10_000u64 {
            assert_eq!(colex_label(colex_unlabel(n)), n);
        }
    }

    #[test]
    fn colex_injective_on_pairs_up_to_150() {
        let mut seen = BTreeSet::new();
        for j in 2..=150u64 {
            for i in 1..j {
                assert!(seen.insert(colex_label(e(i, j))));
            }
        }
        // labels of pairs within the first 150 vertices are exactly 1..=C(150,2)
        assert_eq!(seen.len() as u64, 150 * 149 / 2);
        assert_eq!(seen.iter().next_back(), Some(&(150 * 149 / 2)));
    }

    #[test]
    fn edge_order_matches_label_order() {
        let mut edges: Vec<EdgeId> = (1..=50).map(colex_unlabel).collect();
        let sorted = {
            let mut v = edges.clone();
            v.sort();
            v
        };
        edges.sort_by_key(|&e| colex_label(e));
        assert_eq!(edges, sorted);
    }

    #[test]
    fn twist_round_trip() {
        let p = Permutation::from_cycles(&[vec![1, 2], vec![5, 7, 9]]).unwrap();
        let l = EdgeLabeling::with_twist(p);
        for n in 1..=100 {
            assert_eq!(l.label(l.unlabel(n)), n);
        }
        assert_eq!(l.label(e(1, 2)), 2);
        assert_eq!(l.label(e(2, 3)), 3);
    }

    #[test]
    fn cycles_must_be_disjoint() {
        assert!(Permutation::from_cycles(&[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Permutation::from_cycles(&[vec![0, 1]]).is_err());
    }
}
