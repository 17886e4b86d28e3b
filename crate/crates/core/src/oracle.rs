//! Exhaustive reference solvers. Slow on purpose; they only enumerate.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dp::{ClusterSolution, SolveStats, Value};
use crate::interval_model::NirForm;

/// Hard ceiling on `n` for subset enumeration (bit masks are `u64`).
pub const MAX_ORACLE_N: usize = 64;

/// Size guard for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_n: 24 }
    }
}

impl Budget {
    fn check(&self, n: usize) -> Result<(), OracleError> {
        let limit = self.max_n.min(MAX_ORACLE_N);
        if n > limit {
            return Err(OracleError::BudgetExceeded { n, limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: n = {n} > {limit}")]
    BudgetExceeded { n: usize, limit: usize },
    #[error("k exceeds n ({k} > {n})")]
    KExceedsN { k: usize, n: usize },
}

/// Neighbour masks, bit `v-1` for node `v`.
fn adjacency(f: &NirForm) -> Vec<u64> {
    let n = f.n();
    let mut adj = alloc::vec![0u64; n];
    for j in 1..=n {
        for i in j + 1..=f.right_end(j).min(n) {
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
    }
    adj
}

fn mask_edges(adj: &[u64], mask: u64) -> u64 {
    let mut rest = mask;
    let mut twice = 0u64;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice += (adj[v] & mask).count_ones() as u64;
    }
    twice / 2
}

fn mask_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let mut seen = mask & mask.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & mask & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == mask
}

fn mask_nodes(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Sorted node lists compare lexicographically; for equal-size sets that is
/// decided by the lowest node in exactly one of them.
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

/// Next `k`-subset in colex order (Gosper's hack). `None` past the last one.
fn next_subset(s: u64, n: usize) -> Option<u64> {
    let c = s & s.wrapping_neg();
    let r = s.checked_add(c)?;
    let next = (((r ^ s) >> 2) / c) | r;
    if n < 64 && next >> n != 0 {
        None
    } else {
        Some(next)
    }
}

/// Best `k`-subset by edge count; ties go to the lexicographically smallest
/// sorted node list.
pub fn brute_force_kcluster(
    f: &NirForm,
    k: usize,
    connected: bool,
    budget: Budget,
) -> Result<ClusterSolution, OracleError> {
    let n = f.n();
    budget.check(n)?;
    if k > n {
        return Err(OracleError::KExceedsN { k, n });
    }
    let adj = adjacency(f);
    let mut best: Option<(u64, u64)> = None;
    let mut examined = 0u64;
    let mut s = if k == 0 { 0 } else { u64::MAX >> (64 - k) };
    loop {
        examined += 1;
        let e = mask_edges(&adj, s);
        let better = match best {
            None => true,
            Some((be, bm)) => e > be || (e == be && lex_smaller(s, bm)),
        };
        if better && (!connected || mask_connected(&adj, s)) {
            best = Some((e, s));
        }
        if k == 0 {
            break;
        }
        match next_subset(s, n) {
            Some(next) => s = next,
            None => break,
        }
    }
    let (value, nodes) = match best {
        Some((e, mask)) => (Value::Edges(e), mask_nodes(mask)),
        None => (Value::Infeasible, Vec::new()),
    };
    Ok(ClusterSolution {
        k,
        connected,
        value,
        nodes,
        stats: SolveStats { stages: 0, states: examined, transitions: 0 },
    })
}

/// Oracle values for every `k` in `0..=n`, one pass over all subsets.
pub fn brute_force_all_k(f: &NirForm, connected: bool, budget: Budget) -> Result<Vec<Value>, OracleError> {
    let n = f.n();
    budget.check(n)?;
    if n > 30 {
        // A full pass over 2^n masks; beyond this use brute_force_kcluster.
        return Err(OracleError::BudgetExceeded { n, limit: 30 });
    }
    let adj = adjacency(f);
    let mut best = alloc::vec![Value::Infeasible; n + 1];
    for mask in 0u64..(1u64 << n) {
        let k = mask.count_ones() as usize;
        let e = Value::Edges(mask_edges(&adj, mask));
        if e > best[k] && (!connected || mask_connected(&adj, mask)) {
            best[k] = e;
        }
    }
    Ok(best)
}

/// All maximal cliques, each as a sorted node list.
pub fn brute_force_cliques(f: &NirForm, budget: Budget) -> Result<BTreeSet<Vec<usize>>, OracleError> {
    let n = f.n();
    budget.check(n)?;
    let adj = adjacency(f);
    let mut out = BTreeSet::new();
    // Bron-Kerbosch without pivoting.
    fn expand(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut BTreeSet<Vec<usize>>) {
        if p == 0 && x == 0 {
            out.insert(mask_nodes(r));
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let bit = 1u64 << v;
            expand(adj, r | bit, p & adj[v], x & adj[v], out);
            p &= !bit;
            x |= bit;
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(&adj, 0, all, 0, &mut out);
    Ok(out)
}

/// Whether `nodes` induce a connected subgraph. Empty and singleton sets do.
pub fn connectivity_check(f: &NirForm, nodes: &[usize]) -> bool {
    let n = f.n();
    let mut set: Vec<usize> = nodes.iter().copied().filter(|&v| (1..=n).contains(&v)).collect();
    set.sort_unstable();
    set.dedup();
    let Some(&start) = set.first() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut stack = alloc::vec![start];
    while let Some(u) = stack.pop() {
        for &v in &set {
            if !seen.contains(&v) && f.adjacent(u, v) {
                seen.insert(v);
                stack.push(v);
            }
        }
    }
    seen.len() == set.len()
}
