use std::collections::BTreeSet;

use kcluster_core::interval::split_bounds_interval_naive;
use kcluster_core::oracle::Budget;
use kcluster_core::{
    brute_force_cliques, enumerate_canonical, maximal_cliques, split_bounds_interval,
    split_bounds_proper, stairs, NirForm, SnirForm,
};
use proptest::prelude::*;

fn clique_sets(f: &NirForm) -> BTreeSet<Vec<usize>> {
    maximal_cliques(f).iter_members().collect()
}

#[test]
fn cliques_match_enumeration_up_to_seven_nodes() {
    for n in 1..=7 {
        for f in enumerate_canonical(n).unwrap() {
            assert_eq!(clique_sets(&f), brute_force_cliques(&f, Budget::default()).unwrap(), "{f:?}");
        }
    }
}

#[test]
fn stairs_and_cliques_coincide_on_stair_forms() {
    for n in 1..=7 {
        for f in enumerate_canonical(n).unwrap().filter(NirForm::is_stair_monotone) {
            let s = SnirForm::from_nir(f).unwrap();
            let c = maximal_cliques(&s);
            let st = stairs(&s);
            assert_eq!(st.len(), c.len());
            for i in 1..=c.len() {
                assert_eq!(st.members(i), c.members(i), "{s:?} clique {i}");
                assert_eq!(st.row(i), c.anchor(i));
            }
        }
    }
}

#[test]
fn region_bounds_partition_every_stage() {
    for n in 1..=7 {
        for f in enumerate_canonical(n).unwrap() {
            let c = maximal_cliques(&f);
            for i in 2..=c.len() {
                let b = split_bounds_interval(&c, i).unwrap();
                assert_eq!(b, split_bounds_interval_naive(&c, &f, i).unwrap(), "{f:?} stage {i}");
                assert_eq!(b.total(), c.anchor(i));
            }
            if f.is_stair_monotone() {
                let s = SnirForm::from_nir(f).unwrap();
                let st = stairs(&s);
                for i in 2..=st.len() {
                    assert_eq!(split_bounds_proper(&st, i).unwrap().total(), st.row(i));
                }
            }
        }
    }
}

fn reach() -> impl Strategy<Value = NirForm> {
    (1usize..40).prop_flat_map(|n| {
        (1..=n).map(|i| 0..=n - i).collect::<Vec<_>>().prop_map(|r| NirForm::new(r).unwrap())
    })
}

proptest! {
    #[test]
    fn every_node_lives_in_a_run_of_cliques(f in reach()) {
        let c = maximal_cliques(&f);
        for v in 1..=f.n() {
            let runs: Vec<usize> = (1..=c.len()).filter(|&i| c.members(i).contains(&v)).collect();
            prop_assert!(!runs.is_empty());
            prop_assert_eq!(runs.len(), runs[runs.len() - 1] - runs[0] + 1);
            prop_assert_eq!(runs[0], c.first_clique(v));
        }
        for i in 1..=c.len() {
            prop_assert!(c.new_count(i) > 0);
            prop_assert_eq!(c.members(i).len(), c.size(i));
        }
    }

    #[test]
    fn fast_bounds_equal_direct_sums(f in reach()) {
        let c = maximal_cliques(&f);
        for i in 2..=c.len() {
            let b = split_bounds_interval(&c, i).unwrap();
            prop_assert_eq!(b, split_bounds_interval_naive(&c, &f, i).unwrap());
            prop_assert_eq!(b.total(), c.anchor(i));
        }
    }
}
