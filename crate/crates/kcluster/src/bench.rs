//! Timing grid over seeded instances, reported as CSV.

use std::fmt::Write as _;
use std::time::Instant;

use kcluster_core::{gen_random, to_nir, to_snir, GenSpec, GraphClass, IntervalSolver, ProperSolver};

pub const CSV_HEADER: &str = "n,k,class,connected,median_ns";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub classes: Vec<GraphClass>,
    pub connected: Vec<bool>,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub class: GraphClass,
    pub connected: bool,
    pub median_ns: u64,
}

pub fn class_name(c: GraphClass) -> &'static str {
    match c {
        GraphClass::Interval => "interval",
        GraphClass::Proper => "proper",
    }
}

/// Coordinate range per class. Proper instances use unit intervals on
/// `0..=n/4`, so cliques hold about eight nodes whatever `n` is; general
/// instances draw both endpoints from `0..=n`.
fn spec(n: usize, class: GraphClass, seed: u64) -> GenSpec {
    let range = match class {
        GraphClass::Interval => n,
        GraphClass::Proper => (n / 4).max(1),
    };
    GenSpec::new(n, class, seed).expect("n >= 1").with_coord_range(range as i64)
}

fn median(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Time of one full solve (table, value and witness). A failed witness
/// search still counts, it is part of the work.
fn time_once(n: usize, k: usize, class: GraphClass, connected: bool, seed: u64) -> u64 {
    let r = gen_random(&spec(n, class, seed));
    let start = Instant::now();
    match class {
        GraphClass::Interval => {
            let (f, _) = to_nir(&r);
            let _ = std::hint::black_box(IntervalSolver::new(&f).solve(k, connected));
        }
        GraphClass::Proper => {
            let (f, _) = to_snir(&r).expect("unit intervals are proper");
            let _ = std::hint::black_box(ProperSolver::new(&f).solve(k, connected));
        }
    }
    start.elapsed().as_nanos() as u64
}

/// Median over `reps` runs on the same seeded instance, grid in
/// (n, k, class, connected) order.
pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in &cfg.ns {
        for &k in &cfg.ks {
            if k > n {
                continue;
            }
            for &class in &cfg.classes {
                for &connected in &cfg.connected {
                    let samples =
                        (0..cfg.reps.max(1)).map(|_| time_once(n, k, class, connected, cfg.seed)).collect();
                    rows.push(BenchRow { n, k, class, connected, median_ns: median(samples) });
                }
            }
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.n, r.k, class_name(r.class), r.connected, r.median_ns).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape() {
        let cfg = BenchConfig {
            ns: vec![10, 20],
            ks: vec![1, 3, 30],
            classes: vec![GraphClass::Proper, GraphClass::Interval],
            connected: vec![false],
            reps: 3,
            seed: 1,
        };
        let rows = run_bench(&cfg);
        assert_eq!(rows.len(), 2 * 2 * 2);
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().next(), Some("n,k,class,connected,median_ns"));
        assert!(csv.lines().nth(1).unwrap().starts_with("10,1,proper,false,"));
    }

    #[test]
    fn bench_instances_are_proper_when_asked() {
        for seed in 0..20 {
            assert!(gen_random(&spec(50, GraphClass::Proper, seed)).is_proper());
        }
    }
}
