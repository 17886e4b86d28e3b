//! Differential fuzzing of both dynamic programs against the oracle.

use std::fmt;
use std::str::FromStr;

use kcluster_core::oracle::{brute_force_all_k, Budget};
use kcluster_core::proper::{BoundField, BoundMutation};
use kcluster_core::{
    brute_force_kcluster, connectivity_check, enumerate_canonical, gen_random_reach, GraphClass,
    IntervalSolver, NirForm, ProperSolver, SnirForm, Value,
};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Interval,
    Proper,
}

/// A bound perturbation for one of the two programs, written
/// `interval:w:-1` or `proper:z:+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MutationSpec {
    pub algorithm: Algorithm,
    pub mutation: BoundMutation,
}

impl FromStr for MutationSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [algo, field, delta] = parts[..] else {
            return Err(format!("expected <interval|proper>:<x|y|z|w|u|v>:<delta>, got {s:?}"));
        };
        let algorithm = match algo {
            "interval" => Algorithm::Interval,
            "proper" => Algorithm::Proper,
            _ => return Err(format!("unknown algorithm {algo:?}")),
        };
        let field = match field {
            "x" => BoundField::X,
            "y" => BoundField::Y,
            "z" => BoundField::Z,
            "w" => BoundField::W,
            "u" => BoundField::U,
            "v" if algorithm == Algorithm::Interval => BoundField::V,
            _ => return Err(format!("unknown bound {field:?} for {algo}")),
        };
        let delta: i32 = delta.parse().map_err(|_| format!("bad delta {delta:?}"))?;
        Ok(MutationSpec { algorithm, mutation: BoundMutation { field, delta } })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Every normal form with `n <= exhaustive_n` nodes.
    pub exhaustive_n: usize,
    /// Random instances after the exhaustive ones.
    pub trials: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
    pub budget: Budget,
    pub mutation: Option<MutationSpec>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            exhaustive_n: 0,
            trials: 0,
            min_n: 8,
            max_n: 14,
            seed: 0,
            budget: Budget::default(),
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FindingKind {
    /// The program's value differs from the oracle.
    Value,
    /// The program returned no witness, or one that does not match its value.
    Witness,
}

/// A minimized failing case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub kind: FindingKind,
    pub instance: String,
    pub algorithm: Algorithm,
    pub original_reach: Vec<usize>,
    pub reach: Vec<usize>,
    pub k: usize,
    pub connected: bool,
    pub dp_value: Option<u64>,
    pub oracle_value: Option<u64>,
    pub dp_witness: Option<Vec<usize>>,
    pub oracle_witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub instances: usize,
    pub comparisons: usize,
    pub disagreements: usize,
    pub witness_failures: usize,
    pub skipped: usize,
}

impl FuzzSummary {
    pub fn clean(&self) -> bool {
        self.disagreements == 0 && self.witness_failures == 0
    }

    fn absorb(&mut self, o: &FuzzSummary) {
        self.instances += o.instances;
        self.comparisons += o.comparisons;
        self.disagreements += o.disagreements;
        self.witness_failures += o.witness_failures;
        self.skipped += o.skipped;
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instances={}, comparisons={}, disagreements={}, witness_failures={}, skipped={}",
            self.instances, self.comparisons, self.disagreements, self.witness_failures, self.skipped
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub summary: FuzzSummary,
    pub records: Vec<Counterexample>,
}

/// First 16 hex digits of the SHA-256 of the reach vector.
pub fn digest(f: &NirForm) -> String {
    let text: Vec<String> = f.reach_vec().iter().map(|x| x.to_string()).collect();
    let hash = Sha256::digest(text.join(",").as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// The instance list: exhaustive forms first, then seeded random ones.
/// Random trials alternate between general and stair-shaped forms and
/// cycle `n` through `min_n..=max_n`.
pub fn instances(cfg: &FuzzConfig) -> Vec<NirForm> {
    let mut out = Vec::new();
    for n in 1..=cfg.exhaustive_n {
        out.extend(enumerate_canonical(n).expect("exhaustive size within limits"));
    }
    let span = cfg.max_n.saturating_sub(cfg.min_n) + 1;
    for t in 0..cfg.trials {
        let n = (cfg.min_n + t % span).max(1);
        let class = if t % 2 == 0 { GraphClass::Interval } else { GraphClass::Proper };
        let seed = cfg.seed.wrapping_add((t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        out.push(gen_random_reach(n, class, seed).expect("n >= 1"));
    }
    out
}

/// Values and witnesses of one program for every `k`, or `None` when the
/// program does not apply (the proper one on a non-stair form).
pub struct Run {
    pub values: Vec<Value>,
    pub witnesses: Vec<Result<Vec<usize>, String>>,
}

pub fn run_algorithm(
    f: &NirForm,
    algorithm: Algorithm,
    connected: bool,
    mutation: Option<MutationSpec>,
) -> Option<Run> {
    let mutation = mutation.filter(|m| m.algorithm == algorithm).map(|m| m.mutation);
    let n = f.n();
    macro_rules! collect {
        ($table:expr) => {{
            let t = $table;
            let values: Vec<Value> = (0..=n).map(|k| t.value(k).expect("k <= n")).collect();
            let witnesses = (0..=n)
                .map(|k| {
                    if values[k].is_feasible() {
                        t.witness(k).map_err(|e| e.to_string())
                    } else {
                        Ok(Vec::new())
                    }
                })
                .collect();
            Some(Run { values, witnesses })
        }};
    }
    match algorithm {
        Algorithm::Interval => {
            let s = match mutation {
                Some(m) => IntervalSolver::with_mutation(f, m),
                None => IntervalSolver::new(f),
            };
            collect!(s.table(n, connected).expect("k_max = n"))
        }
        Algorithm::Proper => {
            let snir = SnirForm::from_nir(f.clone()).ok()?;
            let s = match mutation {
                Some(m) => ProperSolver::with_mutation(&snir, m),
                None => ProperSolver::new(&snir),
            };
            collect!(s.table(n, connected).expect("k_max = n"))
        }
    }
}

/// Why a witness does not back its value, if it does not.
pub fn witness_problem(
    f: &NirForm,
    k: usize,
    connected: bool,
    value: Value,
    witness: &Result<Vec<usize>, String>,
) -> Option<String> {
    let Value::Edges(e) = value else { return None };
    let nodes = match witness {
        Err(msg) => return Some(msg.clone()),
        Ok(nodes) => nodes,
    };
    if nodes.len() != k {
        return Some(format!("witness has {} nodes, expected {k}", nodes.len()));
    }
    let got = f.edge_count(nodes).map_err(|e| e.to_string());
    if got != Ok(e) {
        return Some(format!("witness spans {got:?} edges, value is {e}"));
    }
    if connected && !connectivity_check(f, nodes) {
        return Some("witness is not connected".to_string());
    }
    None
}

fn single(f: &NirForm, algorithm: Algorithm, connected: bool, mutation: Option<MutationSpec>, k: usize)
    -> Option<(Value, Result<Vec<usize>, String>)> {
    let run = run_algorithm(f, algorithm, connected, mutation)?;
    Some((run.values[k], run.witnesses[k].clone()))
}

/// Removes nodes (keeping `k`, or lowering it by one) while `fails` holds.
pub fn shrink(
    f: &NirForm,
    k: usize,
    fails: impl Fn(&NirForm, usize) -> bool,
) -> (NirForm, usize) {
    let (mut f, mut k) = (f.clone(), k);
    'outer: loop {
        if k > 0 && fails(&f, k - 1) {
            k -= 1;
            continue;
        }
        if f.n() == 1 {
            break;
        }
        for v in 1..=f.n() {
            let g = f.remove_node(v).expect("node in range");
            for kk in [k, k.wrapping_sub(1)] {
                if kk <= g.n() && fails(&g, kk) {
                    (f, k) = (g, kk);
                    continue 'outer;
                }
            }
        }
        break;
    }
    (f, k)
}

fn record(
    kind: FindingKind,
    original: &NirForm,
    f: &NirForm,
    k: usize,
    algorithm: Algorithm,
    connected: bool,
    cfg: &FuzzConfig,
) -> Counterexample {
    let (dp_value, dp_witness) = single(f, algorithm, connected, cfg.mutation, k)
        .map(|(v, w)| (v.edges(), w.ok()))
        .unwrap_or((None, None));
    let oracle = brute_force_kcluster(f, k, connected, cfg.budget).expect("shrunk case fits the budget");
    let detail = single(f, algorithm, connected, cfg.mutation, k)
        .and_then(|(v, w)| witness_problem(f, k, connected, v, &w));
    Counterexample {
        kind,
        instance: digest(original),
        algorithm,
        original_reach: original.reach_vec().to_vec(),
        reach: f.reach_vec().to_vec(),
        k,
        connected,
        dp_value,
        oracle_value: oracle.value.edges(),
        dp_witness,
        oracle_witness: oracle.nodes,
        detail,
    }
}

/// Compares both programs with the oracle on one instance, for every `k`
/// and both connectivity modes. At most one record per (program, mode,
/// kind) is shrunk and kept; every mismatch is counted.
pub fn check_instance(f: &NirForm, cfg: &FuzzConfig) -> (FuzzSummary, Vec<Counterexample>) {
    let mut s = FuzzSummary { instances: 1, ..FuzzSummary::default() };
    let mut records = Vec::new();
    if f.n() > cfg.budget.max_n {
        s.skipped = 1;
        return (s, records);
    }
    for connected in [false, true] {
        let want = match brute_force_all_k(f, connected, cfg.budget) {
            Ok(w) => w,
            Err(_) => {
                s.skipped = 1;
                return (s, records);
            }
        };
        for algorithm in [Algorithm::Interval, Algorithm::Proper] {
            let Some(run) = run_algorithm(f, algorithm, connected, cfg.mutation) else { continue };
            let mut first_value = None;
            let mut first_witness = None;
            for k in 0..=f.n() {
                s.comparisons += 1;
                if run.values[k] != want[k] {
                    s.disagreements += 1;
                    first_value.get_or_insert(k);
                }
                if witness_problem(f, k, connected, run.values[k], &run.witnesses[k]).is_some() {
                    s.witness_failures += 1;
                    first_witness.get_or_insert(k);
                }
            }
            if let Some(k) = first_value {
                let (g, kk) = shrink(f, k, |g, kk| {
                    let Some((v, _)) = single(g, algorithm, connected, cfg.mutation, kk) else { return false };
                    brute_force_kcluster(g, kk, connected, cfg.budget).is_ok_and(|o| o.value != v)
                });
                records.push(record(FindingKind::Value, f, &g, kk, algorithm, connected, cfg));
            }
            if let Some(k) = first_witness {
                let (g, kk) = shrink(f, k, |g, kk| {
                    single(g, algorithm, connected, cfg.mutation, kk)
                        .is_some_and(|(v, w)| witness_problem(g, kk, connected, v, &w).is_some())
                });
                records.push(record(FindingKind::Witness, f, &g, kk, algorithm, connected, cfg));
            }
        }
    }
    (s, records)
}

/// Runs the whole campaign. Instances are checked in parallel and merged in
/// instance order, so the report does not depend on the thread count.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzReport {
    let forms = instances(cfg);
    let results: Vec<_> = forms.par_iter().map(|f| check_instance(f, cfg)).collect();
    let mut report = FuzzReport::default();
    for (s, records) in results {
        report.summary.absorb(&s);
        report.records.extend(records);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_specs() {
        let m: MutationSpec = "interval:w:-1".parse().unwrap();
        assert_eq!(m.algorithm, Algorithm::Interval);
        assert_eq!(m.mutation, BoundMutation { field: BoundField::W, delta: -1 });
        assert_eq!("proper:z:+1".parse::<MutationSpec>().unwrap().mutation.delta, 1);
        assert!("proper:v:1".parse::<MutationSpec>().is_err());
        assert!("interval:w".parse::<MutationSpec>().is_err());
    }

    #[test]
    fn zero_trials_is_empty_and_clean() {
        let r = run_fuzz(&FuzzConfig::default());
        assert_eq!(r.summary, FuzzSummary::default());
        assert!(r.summary.clean());
    }

    #[test]
    fn small_exhaustive_run_is_clean() {
        let r = run_fuzz(&FuzzConfig { exhaustive_n: 5, ..FuzzConfig::default() });
        assert_eq!(r.summary.instances, 1 + 2 + 6 + 24 + 120);
        assert!(r.summary.clean(), "{:?}", r.records);
    }

    #[test]
    fn mutation_is_caught_and_shrunk() {
        let cfg = FuzzConfig {
            exhaustive_n: 5,
            mutation: Some("interval:x:-1".parse().unwrap()),
            ..FuzzConfig::default()
        };
        let r = run_fuzz(&cfg);
        assert!(r.summary.disagreements > 0);
        let rec = r.records.iter().find(|c| c.kind == FindingKind::Value).unwrap();
        assert!(rec.reach.len() <= rec.original_reach.len());
        assert_ne!(rec.dp_value, rec.oracle_value);
    }

    #[test]
    fn shrink_reaches_a_local_minimum() {
        // "Has at least 3 nodes and k >= 2" shrinks to n = 3, k = 2.
        let f = NirForm::new(vec![0; 7]).unwrap();
        let (g, k) = shrink(&f, 5, |g, k| g.n() >= 3 && k >= 2);
        assert_eq!((g.n(), k), (3, 2));
    }

    #[test]
    fn digests_are_stable() {
        let f = NirForm::new(vec![1, 1, 0]).unwrap();
        assert_eq!(digest(&f), digest(&f.clone()));
        assert_eq!(digest(&f).len(), 16);
        assert_ne!(digest(&f), digest(&NirForm::new(vec![1, 0, 0]).unwrap()));
    }
}
