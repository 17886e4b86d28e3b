//! k-cluster on general interval graphs.
//!
//! Stage `i` splits `G_i` into six regions by where a node is born and
//! where it dies:
//!
//! | region | born in           | alive in `Q_i` | alive in `Q_{i-1}` |
//! |--------|-------------------|----------------|--------------------|
//! | x      | `Q_i`             | yes            | no                 |
//! | y      | `Q_{i-1}`         | yes            | yes                |
//! | z      | `Q_{i-1}`         | no             | yes                |
//! | w      | `G_{i-2}`         | yes            | yes                |
//! | u      | `G_{i-2}`         | no             | yes                |
//! | v      | `G_{i-2}`         | no             | no                 |
//!
//! The value is
//! `f_i(j, x, y+w) = max f_{i-1}(j-x, y+z, w+u) + C(x,2) + x(y+w)`,
//! or `C(j,2)` when all `j` nodes sit in `Q_i`.

use alloc::vec::Vec;

use crate::cliques::{maximal_cliques, CliqueSequence};
use crate::dp::{ClusterSolution, DpTable, Recurrence, SolveError, State, Transition};
use crate::interval_model::NirForm;
use crate::pairs;
use crate::proper::{BoundField, BoundMutation};

/// Region sizes of stage `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SplitBoundsInterval {
    pub x_max: usize,
    pub y_max: usize,
    pub z_max: usize,
    pub w_max: usize,
    pub u_max: usize,
    pub v_max: usize,
}

impl SplitBoundsInterval {
    pub fn total(&self) -> usize {
        self.x_max + self.y_max + self.z_max + self.w_max + self.u_max + self.v_max
    }
}

fn check_stage(c: &CliqueSequence, i: usize) -> Result<(), SolveError> {
    let m = c.len();
    if i < 2 || i > m {
        return Err(SolveError::StageOutOfRange { stage: i, m });
    }
    Ok(())
}

/// Region sizes for stage `2 <= i <= m` in constant time, from the per-clique
/// counters of `c`.
pub fn split_bounds_interval(c: &CliqueSequence, i: usize) -> Result<SplitBoundsInterval, SolveError> {
    check_stage(c, i)?;
    let x_max = c.new_count(i);
    let z_max = c.born_and_ending_at(i - 1);
    let y_max = c.new_count(i - 1) - z_max;
    let w_max = c.size(i) - x_max - y_max;
    let u_max = c.ending_at(i - 1) - z_max;
    let v_max = c.anchor(i - 2) - w_max - u_max;
    Ok(SplitBoundsInterval { x_max, y_max, z_max, w_max, u_max, v_max })
}

/// The same bounds by direct summation over the nodes, `O(n)` per call.
pub fn split_bounds_interval_naive(
    c: &CliqueSequence,
    f: &NirForm,
    i: usize,
) -> Result<SplitBoundsInterval, SolveError> {
    check_stage(c, i)?;
    let (ai, ai1, ai2) = (c.anchor(i), c.anchor(i - 1), c.anchor(i - 2));
    let reaches = |l: usize, row: usize| f.right_end(l) >= row;
    let y_max = (ai2 + 1..=ai1).filter(|&l| reaches(l, ai)).count();
    let w_max = (1..=ai2).filter(|&l| reaches(l, ai)).count();
    let u_max = (1..=ai2).filter(|&l| reaches(l, ai1) && !reaches(l, ai)).count();
    Ok(SplitBoundsInterval {
        x_max: ai - ai1,
        y_max,
        z_max: ai1 - ai2 - y_max,
        w_max,
        u_max,
        v_max: ai2 - w_max - u_max,
    })
}

/// Algorithm for general interval graphs over an NIR form.
pub struct IntervalSolver<'f> {
    form: &'f NirForm,
    cliques: CliqueSequence,
    bounds: Vec<SplitBoundsInterval>,
}

impl<'f> IntervalSolver<'f> {
    pub fn new(form: &'f NirForm) -> Self {
        Self::build(form, None)
    }

    #[doc(hidden)]
    pub fn with_mutation(form: &'f NirForm, mutation: BoundMutation) -> Self {
        Self::build(form, Some(mutation))
    }

    fn build(form: &'f NirForm, mutation: Option<BoundMutation>) -> Self {
        let cliques = maximal_cliques(form);
        let m = cliques.len();
        let mut bounds = alloc::vec![SplitBoundsInterval::default(); 2.min(m + 1)];
        for i in 2..=m {
            let mut b = split_bounds_interval(&cliques, i).expect("stage in range");
            if let Some(mu) = mutation {
                b.x_max = mu.apply(BoundField::X, b.x_max);
                b.y_max = mu.apply(BoundField::Y, b.y_max);
                b.z_max = mu.apply(BoundField::Z, b.z_max);
                b.w_max = mu.apply(BoundField::W, b.w_max);
                b.u_max = mu.apply(BoundField::U, b.u_max);
                b.v_max = mu.apply(BoundField::V, b.v_max);
            }
            bounds.push(b);
        }
        Self { form, cliques, bounds }
    }

    pub fn bounds(&self, i: usize) -> Option<&SplitBoundsInterval> {
        if i >= 2 {
            self.bounds.get(i)
        } else {
            None
        }
    }

    /// Fills the table for every `j <= k_max`.
    pub fn table(&self, k_max: usize, connected: bool) -> Result<DpTable<'_, Self>, SolveError> {
        let n = self.form.n();
        if k_max > n {
            return Err(SolveError::KExceedsN { k: k_max, n });
        }
        Ok(DpTable::build(self, k_max, connected))
    }

    pub fn solve(&self, k: usize, connected: bool) -> Result<ClusterSolution, SolveError> {
        self.table(k, connected)?.solution(k)
    }
}

impl Recurrence for IntervalSolver<'_> {
    fn nir(&self) -> &NirForm {
        self.form
    }

    fn cliques(&self) -> &CliqueSequence {
        &self.cliques
    }

    fn clique_size(&self, stage: usize) -> usize {
        self.cliques.size(stage)
    }

    fn state_bounds(&self, stage: usize) -> (usize, usize) {
        let b = &self.bounds[stage];
        (b.x_max, b.y_max + b.w_max)
    }

    fn transitions(&self, s: State, connected: bool, visit: &mut dyn FnMut(Transition)) {
        let b = &self.bounds[s.stage];
        let (j, x, shared) = (s.j, s.new, s.shared);
        if x > b.x_max || (connected && x > 0 && shared == 0) {
            return;
        }
        let gain = pairs(x) + (x * shared) as u64;
        let rest = j - x;
        for y in 0..=b.y_max.min(shared) {
            let w = shared - y;
            if w > b.w_max {
                continue;
            }
            for z in 0..=b.z_max {
                for u in 0..=b.u_max {
                    let Some(v) = rest.checked_sub(y + z + w + u) else { break };
                    if v > b.v_max {
                        continue;
                    }
                    let prev = State { stage: s.stage - 1, j: rest, new: y + z, shared: w + u };
                    visit(Transition { split: [y, z, w, u], prev, gain });
                }
            }
        }
    }
}

/// Optimal k-cluster (optionally connected) of an interval graph.
pub fn solve_interval(f: &NirForm, k: usize, connected: bool) -> Result<ClusterSolution, SolveError> {
    IntervalSolver::new(f).solve(k, connected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::Value;

    fn nir(reach: &[usize]) -> NirForm {
        NirForm::new(reach.to_vec()).unwrap()
    }

    #[test]
    fn star_bounds() {
        let f = nir(&[3, 0, 0, 0]);
        let c = maximal_cliques(&f);
        let b = split_bounds_interval(&c, 3).unwrap();
        assert_eq!(
            b,
            SplitBoundsInterval { x_max: 1, y_max: 0, z_max: 1, w_max: 1, u_max: 0, v_max: 1 }
        );
        assert_eq!(split_bounds_interval_naive(&c, &f, 3).unwrap(), b);
    }

    #[test]
    fn path_bounds_at_stage_two() {
        let f = nir(&[1, 1, 0]);
        let c = maximal_cliques(&f);
        let b = split_bounds_interval(&c, 2).unwrap();
        assert_eq!(
            b,
            SplitBoundsInterval { x_max: 1, y_max: 1, z_max: 1, w_max: 0, u_max: 0, v_max: 0 }
        );
        assert_eq!(b.total(), 3);
        assert!(split_bounds_interval(&c, 1).is_err());
        assert!(split_bounds_interval(&c, 3).is_err());
    }

    #[test]
    fn star_values() {
        let f = nir(&[3, 0, 0, 0]);
        let s = solve_interval(&f, 3, false).unwrap();
        assert_eq!(s.value, Value::Edges(2));
        assert_eq!(s.nodes.len(), 3);
        assert_eq!(f.edge_count(&s.nodes).unwrap(), 2);
        assert!(s.nodes.contains(&1));
        let c = solve_interval(&f, 2, true).unwrap();
        assert_eq!(c.value, Value::Edges(1));
        assert!(c.nodes.contains(&1));
    }

    #[test]
    fn complete_graph() {
        let f = nir(&[4, 3, 2, 1, 0]);
        assert_eq!(solve_interval(&f, 4, false).unwrap().value, Value::Edges(6));
        let t = IntervalSolver::new(&f);
        let t = t.table(5, true).unwrap();
        for k in 0..=5 {
            assert_eq!(t.value(k).unwrap(), Value::Edges(pairs(k)));
        }
    }

    #[test]
    fn more_nodes_than_covered_is_infeasible() {
        let f = nir(&[1, 1, 0]);
        let s = IntervalSolver::new(&f);
        let t = s.table(3, false).unwrap();
        assert_eq!(t.get(1, 3, 2, 0), Value::Infeasible);
        assert_eq!(t.get(1, 2, 2, 0), Value::Edges(1));
        assert_eq!(
            solve_interval(&f, 4, false),
            Err(SolveError::KExceedsN { k: 4, n: 3 })
        );
    }
}
