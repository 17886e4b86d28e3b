//! Turning a chain of DP states into concrete nodes.
//!
//! Every node `v` is born in clique `first_clique(v)` (the region
//! `Q_i \ Q_{i-1}`) and dies after `last_clique(v)`. A chain of states
//! `(i, j_i, x_i, x'_i)` from the top stage down to a single-clique state
//! `i0` fixes the value exactly when the chosen set `S` satisfies:
//!
//! - `|S ∩ (Q_i \ Q_{i-1})| = x_i` for every stage `i` in the chain;
//! - `|S ∩ Q_i ∩ G_{i-1}| = x'_i` whenever `x_i > 0` (for `x_i = 0` the
//!   stage adds no edges, so its split is irrelevant);
//! - every chosen node of `G_{i0}` lies in `Q_{i0}`.
//!
//! The second condition says how many chosen nodes born before `i` die
//! before `i`, so all conditions are counts of chosen nodes per birth group
//! and per death block. That is a transportation problem, solved here as a
//! small max flow. Inside one (birth, death-block) cell the nodes are
//! interchangeable; the ones reaching furthest, then the highest-indexed,
//! are taken.

use alloc::vec::Vec;

use crate::cliques::CliqueSequence;
use crate::dp::State;
use crate::interval_model::NirForm;

struct Group {
    nodes: Vec<usize>,
    supply: usize,
}

/// Nodes realizing `chain` (top stage first), or `None` if its counts are
/// contradictory.
pub(crate) fn realize(c: &CliqueSequence, f: &NirForm, chain: &[State]) -> Option<Vec<usize>> {
    let (&base, upper) = chain.split_last()?;
    let k = chain[0].j;
    let born_in = |i: usize| (c.anchor(i - 1) + 1..=c.anchor(i)).collect::<Vec<usize>>();

    let mut groups: Vec<Group> = Vec::new();
    // (stage, number of chosen nodes that die before it)
    let mut thresholds: Vec<(usize, usize)> = Vec::new();
    for s in upper {
        if s.new > 0 {
            groups.push(Group { nodes: born_in(s.stage), supply: s.new });
            let dead = (s.j - s.new).checked_sub(s.shared)?;
            thresholds.push((s.stage, dead));
        }
    }
    if base.new > 0 {
        groups.push(Group { nodes: born_in(base.stage), supply: base.new });
    }
    if base.shared > 0 {
        let pool = (1..=c.anchor(base.stage - 1))
            .filter(|&v| c.last_clique(v) >= base.stage)
            .collect();
        groups.push(Group { nodes: pool, supply: base.shared });
    }
    thresholds.reverse();

    let mut demand = Vec::with_capacity(thresholds.len() + 1);
    let mut prev = 0usize;
    for &(_, dead) in &thresholds {
        demand.push(dead.checked_sub(prev)?);
        prev = dead;
    }
    demand.push(k.checked_sub(prev)?);
    if groups.iter().map(|g| g.supply).sum::<usize>() != k {
        return None;
    }

    let block_of = |v: usize| thresholds.partition_point(|&(stage, _)| stage <= c.last_clique(v));
    let blocks = demand.len();
    let mut cells: Vec<Vec<Vec<usize>>> = alloc::vec![alloc::vec![Vec::new(); blocks]; groups.len()];
    for (g, group) in groups.iter().enumerate() {
        for &v in &group.nodes {
            cells[g][block_of(v)].push(v);
        }
    }

    let source = 0;
    let sink = groups.len() + blocks + 1;
    let mut net = FlowNetwork::new(sink + 1);
    for (g, group) in groups.iter().enumerate() {
        net.add_edge(source, 1 + g, group.supply);
    }
    let mut cell_edges = Vec::new();
    for (g, row) in cells.iter().enumerate() {
        for (b, nodes) in row.iter().enumerate() {
            if !nodes.is_empty() {
                let e = net.add_edge(1 + g, 1 + groups.len() + b, nodes.len());
                cell_edges.push((g, b, e));
            }
        }
    }
    for (b, &d) in demand.iter().enumerate() {
        net.add_edge(1 + groups.len() + b, sink, d);
    }
    if net.max_flow(source, sink) != k {
        return None;
    }

    let mut chosen = Vec::with_capacity(k);
    for (g, b, e) in cell_edges {
        let take = net.flow(e);
        if take == 0 {
            continue;
        }
        let mut nodes = cells[g][b].clone();
        nodes.sort_unstable_by_key(|&v| core::cmp::Reverse((f.right_end(v), v)));
        chosen.extend_from_slice(&nodes[..take]);
    }
    chosen.sort_unstable();
    Some(chosen)
}

struct Edge {
    to: usize,
    cap: usize,
}

/// Residual graph with paired forward/backward edges.
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    original: Vec<usize>,
}

impl FlowNetwork {
    fn new(vertices: usize) -> Self {
        Self { adj: alloc::vec![Vec::new(); vertices], edges: Vec::new(), original: Vec::new() }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) -> usize {
        let id = self.edges.len();
        self.adj[from].push(id);
        self.edges.push(Edge { to, cap });
        self.adj[to].push(id + 1);
        self.edges.push(Edge { to: from, cap: 0 });
        self.original.push(cap);
        id
    }

    fn flow(&self, id: usize) -> usize {
        self.original[id / 2] - self.edges[id].cap
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut total = 0;
        loop {
            let mut seen = alloc::vec![false; self.adj.len()];
            let pushed = self.augment(source, sink, usize::MAX, &mut seen);
            if pushed == 0 {
                return total;
            }
            total += pushed;
        }
    }

    fn augment(&mut self, v: usize, sink: usize, limit: usize, seen: &mut [bool]) -> usize {
        if v == sink {
            return limit;
        }
        seen[v] = true;
        for ix in 0..self.adj[v].len() {
            let id = self.adj[v][ix];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap == 0 || seen[to] {
                continue;
            }
            let pushed = self.augment(to, sink, limit.min(cap), seen);
            if pushed > 0 {
                self.edges[id].cap -= pushed;
                self.edges[id ^ 1].cap += pushed;
                return pushed;
            }
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::maximal_cliques;

    #[test]
    fn flow_matches_supplies_and_demands() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 2);
        net.add_edge(0, 2, 1);
        let e = net.add_edge(1, 3, 1);
        net.add_edge(2, 3, 5);
        assert_eq!(net.max_flow(0, 3), 2);
        assert_eq!(net.flow(e), 1);
    }

    #[test]
    fn single_clique_takes_highest_indexed() {
        let f = NirForm::new(alloc::vec![2, 1, 0]).unwrap();
        let c = maximal_cliques(&f);
        let chain = [State { stage: 1, j: 2, new: 2, shared: 0 }];
        assert_eq!(realize(&c, &f, &chain), Some(alloc::vec![2, 3]));
    }

    #[test]
    fn contradictory_counts_are_rejected() {
        // P3: Q1={1,2}, Q2={2,3}. Claim one new node with one shared
        // neighbour while taking only node 1 below.
        let f = NirForm::new(alloc::vec![1, 1, 0]).unwrap();
        let c = maximal_cliques(&f);
        let chain = [
            State { stage: 2, j: 2, new: 1, shared: 1 },
            State { stage: 1, j: 1, new: 1, shared: 0 },
        ];
        // The only node of G_1 that reaches Q_2 is node 2.
        assert_eq!(realize(&c, &f, &chain), Some(alloc::vec![2, 3]));
        let bad = [
            State { stage: 2, j: 3, new: 1, shared: 2 },
            State { stage: 1, j: 2, new: 2, shared: 0 },
        ];
        assert_eq!(realize(&c, &f, &bad), None);
    }
}
