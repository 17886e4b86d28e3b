//! Interval realizations and their normal form.
//!
//! A realization is any list of closed intervals with rational endpoints. The
//! normal form renumbers the nodes by left endpoint and moves every endpoint
//! onto the integers `0..=n` so that node `i` occupies `[i-1, i + reach(i))`
//! and exactly one interval starts at each of `0..n`. Adjacency is unchanged.
//!
//! All node indices in this module are 1-based, both for normal-form nodes
//! and for input labels.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::Ratio;
use thiserror::Error;

/// An exact rational coordinate.
pub type Coord = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a realization needs at least one interval")]
    Empty,
    #[error("interval {node} has left > right")]
    Inverted { node: usize },
    #[error("node {node} is out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("reach {reach} of node {node} runs past n = {n}")]
    ReachOutOfRange { node: usize, reach: usize, n: usize },
    #[error("right endpoints decrease between nodes {node} and {next}", next = node + 1)]
    NotMonotone { node: usize },
    #[error("not a proper realization: interval {outer} strictly contains interval {inner}")]
    NotProper { outer: usize, inner: usize },
}

/// A closed interval `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub left: Coord,
    pub right: Coord,
}

impl Interval {
    pub fn new(left: Coord, right: Coord) -> Self {
        Self { left, right }
    }

    pub fn from_ints(left: i64, right: i64) -> Self {
        Self::new(Coord::from_integer(left), Coord::from_integer(right))
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    /// True if `self` contains `other` and the two differ.
    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right && self != other
    }
}

/// `n >= 1` closed intervals, labelled `1..=n` in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRealization {
    intervals: Vec<Interval>,
}

impl IntervalRealization {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, ModelError> {
        if intervals.is_empty() {
            return Err(ModelError::Empty);
        }
        if let Some(pos) = intervals.iter().position(|iv| iv.left > iv.right) {
            return Err(ModelError::Inverted { node: pos + 1 });
        }
        Ok(Self { intervals })
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> Result<Self, ModelError> {
        Self::new(pairs.iter().map(|&(l, r)| Interval::from_ints(l, r)).collect())
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Interval of input label `node` (1-based).
    pub fn interval(&self, node: usize) -> &Interval {
        &self.intervals[node - 1]
    }

    /// Finds a strictly nested pair `(outer, inner)` if one exists.
    ///
    /// The reported inner interval is the one with the smallest right
    /// endpoint among all strictly contained intervals (ties by label), and
    /// the outer one is its container with the smallest left endpoint (ties
    /// by label).
    pub fn containment_witness(&self) -> Option<(usize, usize)> {
        let ivs = &self.intervals;
        let mut order: Vec<usize> = (0..ivs.len()).collect();
        // Everything before a position has a smaller left, or an equal left
        // and a right at least as large.
        order.sort_by(|&a, &b| {
            ivs[a]
                .left
                .cmp(&ivs[b].left)
                .then(ivs[b].right.cmp(&ivs[a].right))
                .then(a.cmp(&b))
        });

        let mut inner: Option<usize> = None;
        // (max right seen, smallest left among intervals attaining it)
        let mut best: Option<(Coord, Coord)> = None;
        for &p in &order {
            let cur = ivs[p];
            if let Some((max_r, min_l)) = best {
                let contained = max_r > cur.right || (max_r == cur.right && min_l < cur.left);
                if contained {
                    let better = match inner {
                        None => true,
                        Some(q) => {
                            (cur.right, p) < (ivs[q].right, q)
                        }
                    };
                    if better {
                        inner = Some(p);
                    }
                }
            }
            best = match best {
                Some((max_r, min_l)) if max_r > cur.right => Some((max_r, min_l)),
                Some((max_r, min_l)) if max_r == cur.right => Some((max_r, min_l.min(cur.left))),
                _ => Some((cur.right, cur.left)),
            };
        }

        let inner = inner?;
        let outer = (0..ivs.len())
            .filter(|&q| ivs[q].strictly_contains(&ivs[inner]))
            .min_by(|&a, &b| ivs[a].left.cmp(&ivs[b].left).then(a.cmp(&b)))?;
        Some((outer + 1, inner + 1))
    }

    pub fn is_proper(&self) -> bool {
        self.containment_witness().is_none()
    }
}

/// Normal interval representation: one reach value per node.
///
/// Node `i` is the interval `[i-1, i + reach(i))`; it meets exactly the
/// nodes `i+1 ..= i + reach(i)` among later ones. Entry `(i, j)` of the
/// implied matrix is `1` iff `i > j` and `j + reach(j) >= i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NirForm {
    reach: Vec<usize>,
}

impl NirForm {
    pub fn new(reach: Vec<usize>) -> Result<Self, ModelError> {
        let n = reach.len();
        if n == 0 {
            return Err(ModelError::Empty);
        }
        for (idx, &x) in reach.iter().enumerate() {
            let node = idx + 1;
            if node + x > n {
                return Err(ModelError::ReachOutOfRange { node, reach: x, n });
            }
        }
        Ok(Self { reach })
    }

    pub fn n(&self) -> usize {
        self.reach.len()
    }

    pub fn reach_vec(&self) -> &[usize] {
        &self.reach
    }

    /// `x_i`: how many later nodes interval `i` meets.
    #[inline]
    pub fn reach(&self, i: usize) -> usize {
        self.reach[i - 1]
    }

    /// Last row reached by the chain of ones under diagonal element `i`,
    /// that is `i + x_i`.
    #[inline]
    pub fn right_end(&self, i: usize) -> usize {
        i + self.reach[i - 1]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        lo != hi && self.right_end(lo) >= hi
    }

    fn check(&self, node: usize) -> Result<(), ModelError> {
        if node == 0 || node > self.n() {
            Err(ModelError::NodeOutOfRange { node, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Entry `(i, j)` of the implied lower-triangular 0/1 matrix.
    pub fn entry(&self, i: usize, j: usize) -> Result<bool, ModelError> {
        self.check(i)?;
        self.check(j)?;
        Ok(i > j && self.right_end(j) >= i)
    }

    /// Number of edges induced by `nodes` (duplicates are ignored).
    pub fn edge_count(&self, nodes: &[usize]) -> Result<u64, ModelError> {
        let mut sorted: Vec<usize> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            self.check(v)?;
        }
        // Each node contributes the chosen nodes in (j, j + x_j].
        let mut total = 0u64;
        for (pos, &j) in sorted.iter().enumerate() {
            let end = self.right_end(j);
            let upto = sorted.partition_point(|&v| v <= end);
            total += (upto - pos - 1) as u64;
        }
        Ok(total)
    }

    /// Total number of edges.
    pub fn edges(&self) -> u64 {
        self.reach.iter().map(|&x| x as u64).sum()
    }

    /// Right endpoints never decrease.
    pub fn is_stair_monotone(&self) -> bool {
        (1..self.n()).all(|i| self.right_end(i) <= self.right_end(i + 1))
    }

    /// The normal form as concrete integer intervals (`right` is exclusive in
    /// the normal form; the realization uses closed intervals, so it is
    /// pulled in by one half).
    pub fn to_realization(&self) -> IntervalRealization {
        let intervals = (1..=self.n())
            .map(|i| {
                let left = Coord::from_integer(i as i64 - 1);
                let right = Coord::new(2 * self.right_end(i) as i64 - 1, 2);
                Interval::new(left, right)
            })
            .collect();
        IntervalRealization { intervals }
    }

    /// Deletes node `v` and renumbers; adjacency among the others is kept.
    pub fn remove_node(&self, v: usize) -> Result<NirForm, ModelError> {
        self.check(v)?;
        if self.n() == 1 {
            return Err(ModelError::Empty);
        }
        let reach = (1..=self.n())
            .filter(|&j| j != v)
            .map(|j| {
                let x = self.reach(j);
                if j < v && self.right_end(j) >= v {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Ok(NirForm { reach })
    }
}

/// A normal form whose right endpoints are non-decreasing; exists exactly
/// for proper interval graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SnirForm {
    nir: NirForm,
}

impl SnirForm {
    pub fn new(reach: Vec<usize>) -> Result<Self, ModelError> {
        Self::from_nir(NirForm::new(reach)?)
    }

    pub fn from_nir(nir: NirForm) -> Result<Self, ModelError> {
        if let Some(node) = (1..nir.n()).find(|&i| nir.right_end(i) > nir.right_end(i + 1)) {
            return Err(ModelError::NotMonotone { node });
        }
        Ok(Self { nir })
    }

    pub fn as_nir(&self) -> &NirForm {
        &self.nir
    }

    pub fn into_nir(self) -> NirForm {
        self.nir
    }
}

impl core::ops::Deref for SnirForm {
    type Target = NirForm;

    fn deref(&self) -> &NirForm {
        &self.nir
    }
}

/// Maps normal-form nodes back to input labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    to_input: Vec<usize>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Self { to_input: (1..=n).collect() }
    }

    /// Input label of normal-form node `nir`.
    pub fn input_label(&self, nir: usize) -> usize {
        self.to_input[nir - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.to_input
    }

    /// Input labels of `nodes`, sorted.
    pub fn to_input_labels(&self, nodes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = nodes.iter().map(|&v| self.input_label(v)).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Left,
    Right,
}

/// Converts any realization to normal form.
///
/// Endpoints are put in one total order by coordinate; at equal coordinates
/// left endpoints come first (closed intervals that touch still meet), and
/// equal endpoints of the same side are ordered by input label. The k-th left
/// endpoint becomes `k`, and every right endpoint moves up to the next left
/// endpoint after it, or to `n` if there is none.
pub fn to_nir(r: &IntervalRealization) -> (NirForm, Relabeling) {
    let n = r.n();
    let ivs = r.intervals();
    let mut events: Vec<(Coord, Side, usize)> = Vec::with_capacity(2 * n);
    for (idx, iv) in ivs.iter().enumerate() {
        events.push((iv.left, Side::Left, idx));
        events.push((iv.right, Side::Right, idx));
    }
    events.sort_unstable_by(|a, b| match a.0.cmp(&b.0) {
        Ordering::Equal => (a.1, a.2).cmp(&(b.1, b.2)),
        other => other,
    });

    let mut rank = alloc::vec![0usize; n];
    let mut right = alloc::vec![0usize; n];
    let mut to_input = Vec::with_capacity(n);
    let mut lefts_seen = 0usize;
    for &(_, side, idx) in &events {
        match side {
            Side::Left => {
                lefts_seen += 1;
                rank[idx] = lefts_seen;
                to_input.push(idx + 1);
            }
            Side::Right => right[idx] = lefts_seen,
        }
    }

    let mut reach = alloc::vec![0usize; n];
    for idx in 0..n {
        reach[rank[idx] - 1] = right[idx] - rank[idx];
    }
    (NirForm { reach }, Relabeling { to_input })
}

/// Converts a proper realization to the stair-shaped normal form.
pub fn to_snir(r: &IntervalRealization) -> Result<(SnirForm, Relabeling), ModelError> {
    if let Some((outer, inner)) = r.containment_witness() {
        return Err(ModelError::NotProper { outer, inner });
    }
    let (nir, order) = to_nir(r);
    Ok((SnirForm::from_nir(nir)?, order))
}

/// Free-function form of [`NirForm::entry`].
pub fn nir_entry(f: &NirForm, i: usize, j: usize) -> Result<bool, ModelError> {
    f.entry(i, j)
}

/// Free-function form of [`NirForm::edge_count`].
pub fn edge_count(f: &NirForm, nodes: &[usize]) -> Result<u64, ModelError> {
    f.edge_count(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn intersection_oracle(r: &IntervalRealization, f: &NirForm, order: &Relabeling) -> bool {
        let n = r.n();
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                i == j
                    || r.interval(order.input_label(i)).intersects(r.interval(order.input_label(j)))
                        == f.adjacent(i, j)
            })
        })
    }

    #[test]
    fn path_on_three_nodes() {
        let r = IntervalRealization::from_ints(&[(0, 10), (5, 20), (15, 25)]).unwrap();
        let (f, order) = to_nir(&r);
        assert_eq!(f.reach_vec(), &[1, 1, 0]);
        assert!(intersection_oracle(&r, &f, &order));
    }

    #[test]
    fn nested_triangle_and_single_node() {
        let r = IntervalRealization::from_ints(&[(0, 9), (1, 8), (2, 7)]).unwrap();
        assert_eq!(to_nir(&r).0.reach_vec(), &[2, 1, 0]);
        let r = IntervalRealization::from_ints(&[(0, 1)]).unwrap();
        assert_eq!(to_nir(&r).0.reach_vec(), &[0]);
    }

    #[test]
    fn touching_unit_intervals_form_k4() {
        // Closed intervals sharing only an endpoint still meet.
        let r = IntervalRealization::from_ints(&[(0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let (f, order) = to_snir(&r).unwrap();
        assert_eq!(f.reach_vec(), &[3, 2, 1, 0]);
        assert!(intersection_oracle(&r, &f, &order));
    }

    #[test]
    fn strict_containment_is_rejected() {
        let r = IntervalRealization::from_ints(&[(0, 9), (1, 8), (2, 7)]).unwrap();
        assert_eq!(to_snir(&r).unwrap_err(), ModelError::NotProper { outer: 1, inner: 3 });
    }

    #[test]
    fn identical_intervals_share_right_endpoint() {
        let r = IntervalRealization::from_ints(&[(0, 1), (0, 1)]).unwrap();
        let (f, order) = to_snir(&r).unwrap();
        assert_eq!(f.reach_vec(), &[1, 0]);
        assert_eq!(order.as_slice(), &[1, 2]);
    }

    #[test]
    fn realization_invariants() {
        assert_eq!(IntervalRealization::new(vec![]).unwrap_err(), ModelError::Empty);
        assert_eq!(
            IntervalRealization::from_ints(&[(0, 1), (2, 1)]).unwrap_err(),
            ModelError::Inverted { node: 2 }
        );
        assert!(IntervalRealization::from_ints(&[(5, 5)]).is_ok());
    }

    #[test]
    fn matrix_entries() {
        let f = NirForm::new(vec![1, 1, 0]).unwrap();
        assert!(f.entry(2, 1).unwrap());
        assert!(!f.entry(3, 1).unwrap());
        assert!(!f.entry(1, 1).unwrap());
        assert!(!f.entry(1, 2).unwrap());
        assert_eq!(f.entry(4, 1), Err(ModelError::NodeOutOfRange { node: 4, n: 3 }));
        assert_eq!(f.entry(0, 1), Err(ModelError::NodeOutOfRange { node: 0, n: 3 }));
    }

    #[test]
    fn edge_counts() {
        let k3 = NirForm::new(vec![2, 1, 0]).unwrap();
        assert_eq!(k3.edge_count(&[1, 2, 3]).unwrap(), 3);
        let p3 = NirForm::new(vec![1, 1, 0]).unwrap();
        assert_eq!(p3.edge_count(&[1, 2, 3]).unwrap(), 2);
        assert_eq!(p3.edge_count(&[]).unwrap(), 0);
        assert_eq!(p3.edge_count(&[3, 1, 3]).unwrap(), 0);
        assert!(p3.edge_count(&[7]).is_err());
    }

    #[test]
    fn reach_must_stay_in_range() {
        assert_eq!(
            NirForm::new(vec![2, 0]).unwrap_err(),
            ModelError::ReachOutOfRange { node: 1, reach: 2, n: 2 }
        );
        assert_eq!(SnirForm::new(vec![3, 0, 0, 0]).unwrap_err(), ModelError::NotMonotone { node: 1 });
    }

    #[test]
    fn removing_a_node_keeps_adjacency() {
        let f = NirForm::new(vec![3, 0, 1, 0]).unwrap();
        let g = f.remove_node(2).unwrap();
        assert_eq!(g.reach_vec(), &[2, 1, 0]);
    }

    #[test]
    fn normal_form_round_trips_through_a_realization() {
        let f = NirForm::new(vec![3, 0, 2, 1, 0]).unwrap();
        let (g, order) = to_nir(&f.to_realization());
        assert_eq!(g, f);
        assert_eq!(order, Relabeling::identity(5));
    }
}
