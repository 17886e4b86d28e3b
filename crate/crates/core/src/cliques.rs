//! Maximal cliques read straight off the normal form.
//!
//! A row of the implied matrix anchors a maximal clique when at least one of
//! its unit entries, or its diagonal entry, has no chain of ones below it.
//! The clique anchored at row `a` is node `a` together with every earlier
//! node whose chain reaches row `a`. Rows are scanned top to bottom, giving
//! the clique order `Q_1, ..., Q_m` used by both dynamic programs.

use alloc::vec::Vec;

use crate::interval_model::{NirForm, SnirForm};

/// Maximal cliques `Q_1..Q_m` in row order.
///
/// Every node `v` belongs to a contiguous run of cliques
/// `first_clique(v) ..= last_clique(v)`; `first_clique(v)` is the unique `i`
/// with `a_{i-1} < v <= a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSequence {
    /// `anchors[0] = 0` is the sentinel `a_0`; `anchors[i]` is `a_i`.
    anchors: Vec<usize>,
    sizes: Vec<usize>,
    first: Vec<usize>,
    last: Vec<usize>,
    /// Nodes whose last clique is `i`.
    ending: Vec<usize>,
    /// Nodes of `Q_i \ Q_{i-1}` whose last clique is `i`.
    born_and_ending: Vec<usize>,
}

impl CliqueSequence {
    /// Number of maximal cliques `m`.
    pub fn len(&self) -> usize {
        self.anchors.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Anchor row `a_i`, with `a_0 = 0`.
    #[inline]
    pub fn anchor(&self, i: usize) -> usize {
        self.anchors[i]
    }

    /// `a_1, ..., a_m`.
    pub fn anchors(&self) -> &[usize] {
        &self.anchors[1..]
    }

    /// `|Q_i|`.
    #[inline]
    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    /// `|Q_i \ Q_{i-1}| = a_i - a_{i-1}`.
    #[inline]
    pub fn new_count(&self, i: usize) -> usize {
        self.anchors[i] - self.anchors[i - 1]
    }

    /// `|Q_i ∩ Q_{i-1}|`.
    #[inline]
    pub fn overlap(&self, i: usize) -> usize {
        self.sizes[i] - self.new_count(i)
    }

    #[inline]
    pub fn first_clique(&self, v: usize) -> usize {
        self.first[v - 1]
    }

    #[inline]
    pub fn last_clique(&self, v: usize) -> usize {
        self.last[v - 1]
    }

    /// Number of nodes whose last clique is `i`.
    #[inline]
    pub fn ending_at(&self, i: usize) -> usize {
        self.ending[i]
    }

    /// Number of nodes of `Q_i \ Q_{i-1}` that belong to no later clique.
    #[inline]
    pub fn born_and_ending_at(&self, i: usize) -> usize {
        self.born_and_ending[i]
    }

    pub fn contains(&self, i: usize, v: usize) -> bool {
        self.first_clique(v) <= i && i <= self.last_clique(v)
    }

    /// Sorted members of `Q_i`.
    pub fn members(&self, i: usize) -> Vec<usize> {
        (1..=self.anchors[i]).filter(|&v| self.last_clique(v) >= i).collect()
    }

    pub fn iter_members(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (1..=self.len()).map(move |i| self.members(i))
    }
}

/// Ordered maximal cliques of an interval graph in normal form.
///
/// Row `i` anchors a clique iff `i = n`, or `x_i = 0`, or some earlier
/// column's chain stops exactly at row `i` (`j + x_j = i`).
pub fn maximal_cliques(f: &NirForm) -> CliqueSequence {
    let n = f.n();
    let mut chain_ends = alloc::vec![false; n + 1];
    for j in 1..=n {
        if f.reach(j) > 0 {
            chain_ends[f.right_end(j)] = true;
        }
    }
    let mut anchors = alloc::vec![0usize];
    anchors.extend((1..=n).filter(|&i| i == n || f.reach(i) == 0 || chain_ends[i]));
    let m = anchors.len() - 1;

    // Clique index of every anchor row.
    let mut clique_at_row = alloc::vec![0usize; n + 1];
    for (i, &a) in anchors.iter().enumerate().skip(1) {
        clique_at_row[a] = i;
    }

    let mut first = Vec::with_capacity(n);
    let mut last = Vec::with_capacity(n);
    let mut ending = alloc::vec![0usize; m + 1];
    let mut born_and_ending = alloc::vec![0usize; m + 1];
    // Difference array over clique indices for the sizes.
    let mut diff = alloc::vec![0isize; m + 2];
    let mut i = 1;
    for v in 1..=n {
        while anchors[i] < v {
            i += 1;
        }
        // The chain under v always stops at an anchor row.
        let t = clique_at_row[f.right_end(v)];
        debug_assert!(t >= i);
        first.push(i);
        last.push(t);
        ending[t] += 1;
        if t == i {
            born_and_ending[i] += 1;
        }
        diff[i] += 1;
        diff[t + 1] -= 1;
    }
    let mut sizes = alloc::vec![0usize; m + 1];
    let mut acc = 0isize;
    for c in 1..=m {
        acc += diff[c];
        sizes[c] = acc as usize;
    }

    CliqueSequence { anchors, sizes, first, last, ending, born_and_ending }
}

/// Picks `(a_i, b_i)` of a stair-shaped matrix, top to bottom.
///
/// The stair of pick `(a, b)` is the square block of rows and columns
/// `b..=a`, which is exactly the maximal clique `{b, ..., a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StairSet {
    picks: Vec<(usize, usize)>,
}

impl StairSet {
    pub fn len(&self) -> usize {
        self.picks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.picks.is_empty()
    }

    pub fn picks(&self) -> &[(usize, usize)] {
        &self.picks
    }

    /// Row `a_i`, with `a_0 = 0`.
    #[inline]
    pub fn row(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.picks[i - 1].0
        }
    }

    /// Column `b_i`, for `i >= 1`.
    #[inline]
    pub fn column(&self, i: usize) -> usize {
        self.picks[i - 1].1
    }

    /// `|Q_i| = a_i - b_i + 1`.
    #[inline]
    pub fn size(&self, i: usize) -> usize {
        self.row(i) - self.column(i) + 1
    }

    pub fn members(&self, i: usize) -> Vec<usize> {
        (self.column(i)..=self.row(i)).collect()
    }
}

/// Picks of an SNIR matrix.
///
/// Entry `(i, j)` is a pick iff `j` is the first column holding a one in
/// row `i` (or `j = i` when the row has none) and nothing sits below it in
/// column `j`.
pub fn stairs(f: &SnirForm) -> StairSet {
    let n = f.n();
    let mut picks = Vec::new();
    // Right endpoints are monotone, so the first unit column only moves right.
    let mut col = 1;
    for row in 1..=n {
        while col < row && f.right_end(col) < row {
            col += 1;
        }
        let nothing_below = if col < row { f.right_end(col) == row } else { f.reach(row) == 0 };
        if nothing_below || row == n {
            picks.push((row, col));
        }
    }
    StairSet { picks }
}
