//! Files, command-line plumbing, differential fuzzing and benchmarks around
//! [`kcluster_core`].

pub mod bench;
pub mod fuzz;
pub mod inspect;
pub mod instance;
pub mod solve;
