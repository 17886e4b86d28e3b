//! Table engine shared by the proper and general interval dynamic programs.
//!
//! Both programs walk the maximal cliques `Q_1..Q_m` in order. The state
//! `(i, j, x, x')` is the best `j`-node subgraph of `G_i = Q_1 ∪ .. ∪ Q_i`
//! that uses exactly `x` nodes of `Q_i \ Q_{i-1}` and exactly `x'` nodes of
//! `Q_i ∩ Q_{i-1}`. The two programs differ only in how the earlier part of
//! the graph is split into regions; that is the [`Recurrence`] trait. The
//! engine fills every state bottom-up, stage by stage, which gives the same
//! values as evaluating the recursion top-down with memoization.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cliques::CliqueSequence;
use crate::interval_model::NirForm;
use crate::pairs;
use crate::witness;

/// An objective value, or the marker for an empty feasible set.
///
/// `Infeasible` orders below every edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Infeasible,
    Edges(u64),
}

impl Value {
    pub fn edges(self) -> Option<u64> {
        match self {
            Value::Infeasible => None,
            Value::Edges(e) => Some(e),
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, Value::Edges(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infeasible => f.write_str("infeasible"),
            Value::Edges(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("no feasible solution to reconstruct")]
    Infeasible,
    #[error("table value {value} is not attained by any node set consistent with the table")]
    Unrealizable { value: u64 },
    #[error("backlink at stage {stage} does not reproduce its stored value")]
    DanglingLink { stage: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k exceeds n ({k} > {n})")]
    KExceedsN { k: usize, n: usize },
    #[error("k = {k} exceeds the table size {k_max}")]
    KExceedsTable { k: usize, k_max: usize },
    #[error("clique index {stage} is out of range 2..={m}")]
    StageOutOfRange { stage: usize, m: usize },
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
}

/// Counters collected while filling a table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub stages: usize,
    pub states: u64,
    pub transitions: u64,
}

/// A k-cluster answer with a witness.
///
/// `nodes` are 1-based normal-form nodes, sorted. For an infeasible answer
/// `nodes` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSolution {
    pub k: usize,
    pub connected: bool,
    pub value: Value,
    pub nodes: Vec<usize>,
    pub stats: SolveStats,
}

impl ClusterSolution {
    pub fn is_feasible(&self) -> bool {
        self.value.is_feasible()
    }
}

/// A DP state. `stage` is the clique index `i`, `new` is `x`, `shared` is `x'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub stage: usize,
    pub j: usize,
    pub new: usize,
    pub shared: usize,
}

/// One candidate of the maximization: the split tuple `(y, z, w, u)`, the
/// state it reads from stage `i-1`, and the edges it adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub split: [usize; 4],
    pub prev: State,
    pub gain: u64,
}

/// The per-program part of the dynamic program.
pub trait Recurrence {
    fn nir(&self) -> &NirForm;

    fn cliques(&self) -> &CliqueSequence;

    /// Number of stages `m`.
    fn stages(&self) -> usize {
        self.cliques().len()
    }

    /// `|Q_i|`, deciding the single-clique branch.
    fn clique_size(&self, stage: usize) -> usize;

    /// Upper bounds on `(x, x')` at `stage >= 2`.
    fn state_bounds(&self, stage: usize) -> (usize, usize);

    /// Visits the candidates of the maximization for `state` (stage >= 2),
    /// in lexicographic order of the split tuple.
    fn transitions(&self, state: State, connected: bool, visit: &mut dyn FnMut(Transition));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Link {
    None,
    /// All `j` nodes lie in `Q_i`.
    Clique,
    Step([u32; 4]),
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    value: Value,
    link: Link,
}

const EMPTY: Cell = Cell { value: Value::Infeasible, link: Link::None };

#[derive(Debug, Clone, Copy)]
struct Layout {
    offset: usize,
    max_new: usize,
    max_shared: usize,
}

/// A filled table for all `j <= k_max`.
pub struct DpTable<'r, R: Recurrence> {
    rec: &'r R,
    k_max: usize,
    connected: bool,
    layout: Vec<Layout>,
    cells: Vec<Cell>,
    stats: SolveStats,
}

/// Chains tried before a witness search gives up.
const CHAIN_BUDGET: usize = 4096;

impl<'r, R: Recurrence> DpTable<'r, R> {
    pub fn build(rec: &'r R, k_max: usize, connected: bool) -> Self {
        let m = rec.stages();
        let mut layout = Vec::with_capacity(m + 1);
        layout.push(Layout { offset: 0, max_new: 0, max_shared: 0 });
        let mut offset = 0;
        for i in 1..=m {
            let (max_new, max_shared) = if i == 1 {
                (rec.clique_size(1).min(k_max), 0)
            } else {
                let (a, b) = rec.state_bounds(i);
                (a.min(k_max), b.min(k_max))
            };
            layout.push(Layout { offset, max_new, max_shared });
            offset += (k_max + 1) * (max_new + 1) * (max_shared + 1);
        }
        let mut table = Self {
            rec,
            k_max,
            connected,
            layout,
            cells: alloc::vec![EMPTY; offset],
            stats: SolveStats { stages: m, ..SolveStats::default() },
        };
        table.fill();
        table
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn connected(&self) -> bool {
        self.connected
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    fn index(&self, s: State) -> Option<usize> {
        let l = self.layout.get(s.stage)?;
        if s.stage == 0 || s.j > self.k_max || s.new > l.max_new || s.shared > l.max_shared {
            return None;
        }
        Some(l.offset + (s.j * (l.max_new + 1) + s.new) * (l.max_shared + 1) + s.shared)
    }

    fn cell(&self, s: State) -> Cell {
        self.index(s).map_or(EMPTY, |ix| self.cells[ix])
    }

    /// `f_i(j, x, x')`; out-of-range states are infeasible.
    pub fn get(&self, stage: usize, j: usize, new: usize, shared: usize) -> Value {
        self.cell(State { stage, j, new, shared }).value
    }

    fn fill(&mut self) {
        let rec = self.rec;
        let m = rec.stages();
        for stage in 1..=m {
            let l = self.layout[stage];
            let covered = rec.cliques().anchor(stage);
            let q = rec.clique_size(stage);
            for j in 0..=self.k_max.min(covered) {
                for new in 0..=l.max_new.min(j) {
                    for shared in 0..=l.max_shared.min(j - new) {
                        let state = State { stage, j, new, shared };
                        self.stats.states += 1;
                        let cell = if new + shared == j && j <= q {
                            Cell { value: Value::Edges(pairs(j)), link: Link::Clique }
                        } else if stage == 1 {
                            EMPTY
                        } else {
                            self.best_transition(state)
                        };
                        let ix = self.index(state).expect("state within layout");
                        self.cells[ix] = cell;
                    }
                }
            }
        }
    }

    fn best_transition(&mut self, state: State) -> Cell {
        let mut best = EMPTY;
        let mut examined = 0u64;
        let cells = &self.cells;
        let layout = &self.layout;
        let k_max = self.k_max;
        let lookup = |s: State| -> Value {
            let l = layout[s.stage];
            if s.j > k_max || s.new > l.max_new || s.shared > l.max_shared {
                return Value::Infeasible;
            }
            cells[l.offset + (s.j * (l.max_new + 1) + s.new) * (l.max_shared + 1) + s.shared].value
        };
        self.rec.transitions(state, self.connected, &mut |t| {
            examined += 1;
            if let Value::Edges(prev) = lookup(t.prev) {
                let v = Value::Edges(prev + t.gain);
                // Strict comparison keeps the lexicographically first argmax.
                if v > best.value {
                    best = Cell { value: v, link: Link::Step(t.split.map(|c| c as u32)) };
                }
            }
        });
        self.stats.transitions += examined;
        best
    }

    /// Terminal states `(m, k, x, x')` attaining the optimum, largest
    /// `(x, x')` first so that witnesses lean towards later nodes.
    fn terminals(&self, k: usize) -> (Value, Vec<State>) {
        let m = self.rec.stages();
        let l = self.layout[m];
        let mut best = Value::Infeasible;
        let mut states = Vec::new();
        for new in 0..=l.max_new.min(k) {
            for shared in 0..=l.max_shared.min(k - new) {
                let s = State { stage: m, j: k, new, shared };
                let v = self.cell(s).value;
                if v > best {
                    best = v;
                    states.clear();
                }
                if v == best && v.is_feasible() {
                    states.push(s);
                }
            }
        }
        states.reverse();
        (best, states)
    }

    /// Optimal value for `k`, i.e. the maximum of `f_m(k, x, x')`.
    pub fn value(&self, k: usize) -> Result<Value, SolveError> {
        self.check_k(k)?;
        Ok(self.terminals(k).0)
    }

    fn check_k(&self, k: usize) -> Result<(), SolveError> {
        let n = self.rec.nir().n();
        if k > n {
            return Err(SolveError::KExceedsN { k, n });
        }
        if k > self.k_max {
            return Err(SolveError::KExceedsTable { k, k_max: self.k_max });
        }
        Ok(())
    }

    /// The chain of states recorded by the backlinks, from the terminal
    /// state down to a single-clique state.
    pub fn backlink_chain(&self, k: usize) -> Result<Vec<State>, SolveError> {
        self.check_k(k)?;
        let (_, terms) = self.terminals(k);
        let mut s = *terms.first().ok_or(ReconstructError::Infeasible)?;
        let mut chain = alloc::vec![s];
        loop {
            let cell = self.cell(s);
            match cell.link {
                Link::Clique => return Ok(chain),
                Link::None => {
                    return Err(ReconstructError::DanglingLink { stage: s.stage }.into())
                }
                Link::Step(split) => {
                    let split = split.map(|c| c as usize);
                    let mut next = None;
                    self.rec.transitions(s, self.connected, &mut |t| {
                        if t.split == split {
                            next = Some(t);
                        }
                    });
                    let t = next.ok_or(ReconstructError::DanglingLink { stage: s.stage })?;
                    if self.cell(t.prev).value.edges().map(|p| p + t.gain) != cell.value.edges() {
                        return Err(ReconstructError::DanglingLink { stage: s.stage }.into());
                    }
                    s = t.prev;
                    chain.push(s);
                }
            }
        }
    }

    /// Distinct predecessor states that reproduce the stored value of `s`,
    /// ordered by their first split tuple.
    fn optimal_predecessors(&self, s: State) -> Vec<State> {
        let target = self.cell(s).value;
        let mut out: Vec<State> = Vec::new();
        self.rec.transitions(s, self.connected, &mut |t| {
            if let Value::Edges(p) = self.cell(t.prev).value {
                if Value::Edges(p + t.gain) == target && !out.contains(&t.prev) {
                    out.push(t.prev);
                }
            }
        });
        out
    }

    /// A node set with exactly `k` nodes whose edge count equals
    /// [`value`](Self::value).
    ///
    /// The backlink chain is tried first; if its counts cannot be met by any
    /// node set, other chains of optimal predecessors are searched.
    pub fn witness(&self, k: usize) -> Result<Vec<usize>, SolveError> {
        self.check_k(k)?;
        let (best, terms) = self.terminals(k);
        let value = best.edges().ok_or(ReconstructError::Infeasible)?;
        // Surfaces dangling links even when another chain would do.
        let first = self.backlink_chain(k)?;
        if let Some(nodes) = witness::realize(self.rec.cliques(), self.rec.nir(), &first) {
            return Ok(nodes);
        }

        let mut budget = CHAIN_BUDGET;
        let mut chain = Vec::new();
        for t in terms {
            if let Some(nodes) = self.search(t, &mut chain, &mut budget) {
                return Ok(nodes);
            }
            if budget == 0 {
                break;
            }
        }
        Err(ReconstructError::Unrealizable { value }.into())
    }

    fn search(&self, s: State, chain: &mut Vec<State>, budget: &mut usize) -> Option<Vec<usize>> {
        if *budget == 0 {
            return None;
        }
        chain.push(s);
        let found = if self.cell(s).link == Link::Clique {
            *budget -= 1;
            witness::realize(self.rec.cliques(), self.rec.nir(), chain)
        } else {
            self.optimal_predecessors(s)
                .into_iter()
                .find_map(|p| self.search(p, chain, budget))
        };
        chain.pop();
        found
    }

    /// Value and witness for `k`.
    pub fn solution(&self, k: usize) -> Result<ClusterSolution, SolveError> {
        let value = self.value(k)?;
        let nodes = match value {
            Value::Infeasible => Vec::new(),
            Value::Edges(_) => self.witness(k)?,
        };
        Ok(ClusterSolution { k, connected: self.connected, value, nodes, stats: self.stats })
    }
}
