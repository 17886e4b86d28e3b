//! k-cluster on proper interval graphs.
//!
//! In the stair-shaped matrix every clique `Q_i` is the contiguous block
//! `b_i..=a_i`, so the regions used by the recurrence are index ranges.
//! Stage `i` splits `G_i` into five of them. Which five depends on whether
//! `Q_i` still meets `Q_{i-2}` (`b_i <= a_{i-2}`):
//!
//! | region | `Q_i ∩ Q_{i-2} ≠ ∅`  | `Q_i ∩ Q_{i-2} = ∅`           |
//! |--------|----------------------|-------------------------------|
//! | x      | `Q_i \ Q_{i-1}`      | `Q_i \ Q_{i-1}`               |
//! | y      | `Q_{i-1} \ Q_{i-2}`  | `Q_i ∩ Q_{i-1}`               |
//! | z      | `Q_i ∩ Q_{i-2}`      | `Q_{i-1} \ (Q_i ∪ Q_{i-2})`   |
//! | w      | `Q_{i-1} \ Q_i`      | `Q_{i-1} ∩ Q_{i-2}`           |
//! | u      | the rest             | the rest                      |
//!
//! With `z1 = z` in the first case and `z2 = z` in the second (the other one
//! zero), the value is
//! `f_i(j, x, y+z1) = max f_{i-1}(j-x, y+z2, z1+w) + C(x,2) + x(y+z1)`,
//! or `C(j,2)` when all `j` nodes sit in `Q_i`.

use crate::cliques::{maximal_cliques, CliqueSequence, StairSet};
use crate::dp::{ClusterSolution, DpTable, Recurrence, SolveError, State, Transition};
use crate::interval_model::{NirForm, SnirForm};
use crate::{pairs, stairs};

/// Region sizes of stage `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitBoundsProper {
    /// `Q_i ∩ Q_{i-2} ≠ ∅`, i.e. `a_{i-2} >= b_i`.
    pub meets_two_back: bool,
    pub x_max: usize,
    pub y_max: usize,
    pub z_max: usize,
    pub w_max: usize,
    pub u_max: usize,
}

impl SplitBoundsProper {
    /// Largest possible `x' = y + z1`.
    pub fn shared_max(&self) -> usize {
        if self.meets_two_back {
            self.y_max + self.z_max
        } else {
            self.y_max
        }
    }

    pub fn total(&self) -> usize {
        self.x_max + self.y_max + self.z_max + self.w_max + self.u_max
    }
}

/// Region sizes for stage `2 <= i <= m`, with `a_0 = 0`.
pub fn split_bounds_proper(s: &StairSet, i: usize) -> Result<SplitBoundsProper, SolveError> {
    let m = s.len();
    if i < 2 || i > m {
        return Err(SolveError::StageOutOfRange { stage: i, m });
    }
    let a = |t: usize| s.row(t) as isize;
    let (ai, ai1, ai2) = (a(i), a(i - 1), a(i - 2));
    let (bi, bi1) = (s.column(i) as isize, s.column(i - 1) as isize);
    let meets = ai2 >= bi;
    let sizes = if meets {
        [ai - ai1, ai1 - ai2, ai2 - bi + 1, bi - bi1, bi1 - 1]
    } else {
        [ai - ai1, ai1 - bi + 1, bi - ai2 - 1, ai2 - bi1 + 1, bi1 - 1]
    };
    debug_assert!(sizes.iter().all(|&v| v >= 0), "negative region at stage {i}: {sizes:?}");
    let [x_max, y_max, z_max, w_max, u_max] = sizes.map(|v| v.max(0) as usize);
    Ok(SplitBoundsProper { meets_two_back: meets, x_max, y_max, z_max, w_max, u_max })
}

/// Off-by-one injection for checking that the differential harness notices
/// a broken bound. Not for normal use.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundMutation {
    pub field: BoundField,
    pub delta: i32,
}

#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundField {
    X,
    Y,
    Z,
    W,
    U,
    V,
}

impl BoundMutation {
    pub(crate) fn apply(&self, field: BoundField, value: usize) -> usize {
        if field == self.field {
            (value as i64 + self.delta as i64).max(0) as usize
        } else {
            value
        }
    }
}

/// Algorithm for proper interval graphs over an SNIR form.
pub struct ProperSolver<'f> {
    form: &'f SnirForm,
    stairs: StairSet,
    cliques: CliqueSequence,
    bounds: alloc::vec::Vec<SplitBoundsProper>,
}

impl<'f> ProperSolver<'f> {
    pub fn new(form: &'f SnirForm) -> Self {
        Self::build(form, None)
    }

    #[doc(hidden)]
    pub fn with_mutation(form: &'f SnirForm, mutation: BoundMutation) -> Self {
        Self::build(form, Some(mutation))
    }

    fn build(form: &'f SnirForm, mutation: Option<BoundMutation>) -> Self {
        let stairs = stairs(form);
        let cliques = maximal_cliques(form.as_nir());
        debug_assert_eq!(stairs.len(), cliques.len());
        let mut bounds = alloc::vec![SplitBoundsProper {
            meets_two_back: false,
            x_max: 0,
            y_max: 0,
            z_max: 0,
            w_max: 0,
            u_max: 0,
        }; 2.min(stairs.len() + 1)];
        for i in 2..=stairs.len() {
            let mut b = split_bounds_proper(&stairs, i).expect("stage in range");
            if let Some(mu) = mutation {
                b.x_max = mu.apply(BoundField::X, b.x_max);
                b.y_max = mu.apply(BoundField::Y, b.y_max);
                b.z_max = mu.apply(BoundField::Z, b.z_max);
                b.w_max = mu.apply(BoundField::W, b.w_max);
                b.u_max = mu.apply(BoundField::U, b.u_max);
            }
            bounds.push(b);
        }
        Self { form, stairs, cliques, bounds }
    }

    pub fn stairs(&self) -> &StairSet {
        &self.stairs
    }

    pub fn bounds(&self, i: usize) -> Option<&SplitBoundsProper> {
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

impl Recurrence for ProperSolver<'_> {
    fn nir(&self) -> &NirForm {
        self.form.as_nir()
    }

    fn cliques(&self) -> &CliqueSequence {
        &self.cliques
    }

    fn clique_size(&self, stage: usize) -> usize {
        self.stairs.size(stage)
    }

    fn state_bounds(&self, stage: usize) -> (usize, usize) {
        let b = &self.bounds[stage];
        (b.x_max, b.shared_max())
    }

    fn transitions(&self, s: State, connected: bool, visit: &mut dyn FnMut(Transition)) {
        let b = &self.bounds[s.stage];
        let (j, x, shared) = (s.j, s.new, s.shared);
        if x > b.x_max {
            return;
        }
        // Connectivity: new nodes need a chosen neighbour in
        // Q_i ∩ Q_{i-1}, and that count is exactly x'.
        if connected && x > 0 && shared == 0 {
            return;
        }
        let gain = pairs(x) + (x * shared) as u64;
        let rest = j - x;
        if b.meets_two_back {
            // z1 = z, so y + z = x'.
            for y in 0..=b.y_max.min(shared) {
                let z = shared - y;
                if z > b.z_max {
                    continue;
                }
                for w in 0..=b.w_max {
                    let Some(u) = rest.checked_sub(y + z + w) else { break };
                    if u > b.u_max {
                        continue;
                    }
                    let prev = State { stage: s.stage - 1, j: rest, new: y, shared: z + w };
                    visit(Transition { split: [y, z, w, u], prev, gain });
                }
            }
        } else {
            // z2 = z, so y = x'.
            let y = shared;
            if y > b.y_max {
                return;
            }
            for z in 0..=b.z_max {
                for w in 0..=b.w_max {
                    let Some(u) = rest.checked_sub(y + z + w) else { break };
                    if u > b.u_max {
                        continue;
                    }
                    let prev = State { stage: s.stage - 1, j: rest, new: y + z, shared: w };
                    visit(Transition { split: [y, z, w, u], prev, gain });
                }
            }
        }
    }
}

/// Optimal k-cluster (optionally connected) of a proper interval graph.
pub fn solve_proper(f: &SnirForm, k: usize, connected: bool) -> Result<ClusterSolution, SolveError> {
    ProperSolver::new(f).solve(k, connected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::Value;
    use alloc::vec;

    fn snir(reach: &[usize]) -> SnirForm {
        SnirForm::new(reach.to_vec()).unwrap()
    }

    #[test]
    fn bounds_on_a_path() {
        let f = snir(&[1, 1, 1, 0]);
        let s = stairs(&f);
        let b = split_bounds_proper(&s, 3).unwrap();
        assert_eq!(
            b,
            SplitBoundsProper { meets_two_back: false, x_max: 1, y_max: 1, z_max: 0, w_max: 1, u_max: 1 }
        );
        assert_eq!(b.total(), 4);
    }

    #[test]
    fn bounds_on_two_triangles_sharing_an_edge() {
        let f = snir(&[2, 2, 1, 0]);
        let b = split_bounds_proper(&stairs(&f), 2).unwrap();
        assert!(!b.meets_two_back);
        assert_eq!((b.x_max, b.y_max, b.z_max, b.w_max, b.u_max), (1, 2, 1, 0, 0));
    }

    #[test]
    fn stage_range_is_checked() {
        let s = stairs(&snir(&[1, 1, 1, 0]));
        assert_eq!(split_bounds_proper(&s, 1), Err(SolveError::StageOutOfRange { stage: 1, m: 3 }));
        assert!(split_bounds_proper(&s, 4).is_err());
    }

    #[test]
    fn single_clique_base_values() {
        let f = snir(&[2, 1, 0]);
        let solver = ProperSolver::new(&f);
        let t = solver.table(3, false).unwrap();
        assert_eq!(t.get(1, 3, 3, 0), Value::Edges(3));
        assert_eq!(t.get(1, 3, 2, 0), Value::Infeasible);
        assert_eq!(t.witness(2).unwrap(), vec![2, 3]);
    }

    #[test]
    fn path_values() {
        let f = snir(&[1, 1, 1, 0]);
        let s = solve_proper(&f, 3, false).unwrap();
        assert_eq!(s.value, Value::Edges(2));
        assert!(s.nodes == vec![1, 2, 3] || s.nodes == vec![2, 3, 4]);
        assert_eq!(solve_proper(&f, 4, false).unwrap().nodes, vec![1, 2, 3, 4]);
        assert!(solve_proper(&f, 5, false).is_err());
    }

    #[test]
    fn disjoint_triangles() {
        let f = snir(&[2, 1, 0, 2, 1, 0]);
        assert_eq!(solve_proper(&f, 4, false).unwrap().value, Value::Edges(3));
        let c = solve_proper(&f, 4, true).unwrap();
        assert_eq!(c.value, Value::Infeasible);
        assert!(c.nodes.is_empty());
    }

    #[test]
    fn empty_cluster() {
        let f = snir(&[1, 0]);
        let s = solve_proper(&f, 0, true).unwrap();
        assert_eq!(s.value, Value::Edges(0));
        assert!(s.nodes.is_empty());
    }
}
