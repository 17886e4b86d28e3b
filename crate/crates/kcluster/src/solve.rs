//! Class dispatch and result documents for `kcluster solve`.

use std::time::Instant;

use kcluster_core::{
    solve_interval, solve_proper, to_nir, to_snir, IntervalRealization, ModelError, SolveError,
    Value,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ClassChoice {
    /// Proper if no interval strictly contains another, else general.
    Auto,
    Interval,
    Proper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassUsed {
    Proper,
    Interval,
}

impl ClassUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassUsed::Proper => "proper",
            ClassUsed::Interval => "interval",
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveCommandError {
    #[error("input is not a proper interval realization: interval {outer} strictly contains interval {inner}")]
    NotProper { outer: usize, inner: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Model(ModelError),
}

/// The JSON result document. Node labels are input labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub value: Option<u64>,
    pub nodes: Vec<usize>,
    pub k: usize,
    pub class: ClassUsed,
    pub connected: bool,
    pub feasible: bool,
    pub n: usize,
    pub elapsed_ns: u64,
}

pub fn solve_realization(
    r: &IntervalRealization,
    k: usize,
    connected: bool,
    class: ClassChoice,
) -> Result<SolveReport, SolveCommandError> {
    let use_proper = match class {
        ClassChoice::Auto => r.is_proper(),
        ClassChoice::Interval => false,
        ClassChoice::Proper => true,
    };
    let n = r.n();
    if k > n {
        return Err(SolveError::KExceedsN { k, n }.into());
    }
    let start = Instant::now();
    let (solution, labels, used) = if use_proper {
        let (f, labels) = to_snir(r).map_err(|e| match e {
            ModelError::NotProper { outer, inner } => SolveCommandError::NotProper { outer, inner },
            other => SolveCommandError::Model(other),
        })?;
        (solve_proper(&f, k, connected)?, labels, ClassUsed::Proper)
    } else {
        let (f, labels) = to_nir(r);
        (solve_interval(&f, k, connected)?, labels, ClassUsed::Interval)
    };
    let elapsed_ns = start.elapsed().as_nanos() as u64;
    Ok(SolveReport {
        value: solution.value.edges(),
        nodes: labels.to_input_labels(&solution.nodes),
        k,
        class: used,
        connected,
        feasible: solution.value != Value::Infeasible,
        n,
        elapsed_ns,
    })
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let value = self.value.map_or_else(|| "infeasible".to_string(), |v| v.to_string());
        let nodes: Vec<String> = self.nodes.iter().map(|v| v.to_string()).collect();
        format!(
            "value: {value}\nnodes: {{{}}}\nclass: {}\nconnected: {}\nn: {}, k: {}\nelapsed: {} ns\n",
            nodes.join(","),
            self.class.as_str(),
            self.connected,
            self.n,
            self.k,
            self.elapsed_ns
        )
    }
}
