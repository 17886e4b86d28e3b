//! Seeded random and exhaustive instance generators.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::interval_model::{Interval, IntervalRealization, NirForm};

/// Largest `n` accepted by [`enumerate_canonical`].
pub const MAX_ENUMERATE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("instance size must be at least 1")]
    EmptyInstance,
    #[error("exhaustive enumeration is limited to n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Interval,
    Proper,
}

/// What to generate. The seed alone determines the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    n: usize,
    class: GraphClass,
    seed: u64,
    coord_range: i64,
}

impl GenSpec {
    /// Coordinates default to `0..=2n`, dense enough to produce ties.
    pub fn new(n: usize, class: GraphClass, seed: u64) -> Result<Self, GenError> {
        if n == 0 {
            return Err(GenError::EmptyInstance);
        }
        Ok(GenSpec { n, class, seed, coord_range: 2 * n as i64 })
    }

    pub fn with_coord_range(mut self, range: i64) -> Self {
        self.coord_range = range.max(1);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coord_range(&self) -> i64 {
        self.coord_range
    }
}

/// A random realization.
///
/// Interval class: `2n` endpoints drawn uniformly from `0..=range`, paired
/// up and ordered. Proper class: unit intervals `[l, l+1]` with random
/// integer `l`, which are never strictly nested.
pub fn gen_random(spec: &GenSpec) -> IntervalRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = spec.coord_range;
    let intervals: Vec<Interval> = (0..spec.n)
        .map(|_| match spec.class {
            GraphClass::Interval => {
                let (a, b) = (rng.random_range(0..=r), rng.random_range(0..=r));
                Interval::from_ints(a.min(b), a.max(b))
            }
            GraphClass::Proper => {
                let l = rng.random_range(0..=r);
                Interval::from_ints(l, l + 1)
            }
        })
        .collect();
    IntervalRealization::new(intervals).expect("generated intervals are well-formed")
}

/// A random reach vector drawn directly, skipping coordinates.
///
/// Interval class: each `x_i` uniform in `0..=n-i`, so every NIR form has
/// positive probability. Proper class: right ends `i + x_i` form a random
/// non-decreasing sequence with `i <= i + x_i <= n`.
pub fn gen_random_reach(n: usize, class: GraphClass, seed: u64) -> Result<NirForm, GenError> {
    if n == 0 {
        return Err(GenError::EmptyInstance);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reach = match class {
        GraphClass::Interval => (1..=n).map(|i| rng.random_range(0..=n - i)).collect(),
        GraphClass::Proper => {
            let mut end = 0;
            (1..=n)
                .map(|i| {
                    let lo = end.max(i);
                    // Bias towards short steps, otherwise most forms are
                    // nearly complete graphs.
                    let step = rng.random_range(0..=(n - lo).min(3));
                    end = lo + step;
                    end - i
                })
                .collect()
        }
    };
    Ok(NirForm::new(reach).expect("generated reach is in range"))
}

/// Every NIR form on `n` nodes, in lexicographic order of the reach vector.
pub fn enumerate_canonical(n: usize) -> Result<CanonicalForms, GenError> {
    if n == 0 {
        return Err(GenError::EmptyInstance);
    }
    if n > MAX_ENUMERATE_N {
        return Err(GenError::TooLarge { n, limit: MAX_ENUMERATE_N });
    }
    Ok(CanonicalForms { next: Some(alloc::vec![0; n]) })
}

/// Iterator returned by [`enumerate_canonical`].
#[derive(Debug, Clone)]
pub struct CanonicalForms {
    next: Option<Vec<usize>>,
}

impl Iterator for CanonicalForms {
    type Item = NirForm;

    fn next(&mut self) -> Option<NirForm> {
        let current = self.next.take()?;
        let n = current.len();
        let mut succ = current.clone();
        // Odometer with digit i ranging over 0..=n-i (1-based), last digit fastest.
        let mut pos = n;
        while pos > 0 {
            let i = pos - 1;
            if succ[i] < n - pos {
                succ[i] += 1;
                succ[pos..].iter_mut().for_each(|d| *d = 0);
                self.next = Some(succ);
                break;
            }
            pos -= 1;
        }
        Some(NirForm::new(current).expect("enumerated reach is in range"))
    }
}
