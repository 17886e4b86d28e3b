use kcluster_core::{
    edge_count, gen_random, nir_entry, to_nir, to_snir, GenSpec, GraphClass, Interval,
    IntervalRealization, ModelError, NirForm,
};
use proptest::prelude::*;

fn realization() -> impl Strategy<Value = IntervalRealization> {
    // Small coordinate range so shared endpoints and identical intervals are common.
    prop::collection::vec((0i64..8, 0i64..4), 1..12).prop_map(|v| {
        IntervalRealization::new(v.into_iter().map(|(l, len)| Interval::from_ints(l, l + len)).collect())
            .unwrap()
    })
}

fn unit_realization() -> impl Strategy<Value = IntervalRealization> {
    prop::collection::vec((0i64..12, 1i64..4), 1..12).prop_map(|v| {
        IntervalRealization::new(
            v.into_iter()
                .map(|(num, den)| {
                    let l = kcluster_core::Coord::new(num, den);
                    Interval::new(l, l + 1)
                })
                .collect(),
        )
        .unwrap()
    })
}

fn reach() -> impl Strategy<Value = NirForm> {
    (1usize..14).prop_flat_map(|n| {
        (1..=n).map(|i| 0..=n - i).collect::<Vec<_>>().prop_map(|r| NirForm::new(r).unwrap())
    })
}

fn assert_adjacency(r: &IntervalRealization, f: &NirForm, labels: &[usize]) {
    let n = r.n();
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            let input = r.interval(labels[a - 1]).intersects(r.interval(labels[b - 1]));
            assert_eq!(f.adjacent(a, b), input, "nir nodes {a},{b}");
        }
    }
}

proptest! {
    #[test]
    fn to_nir_preserves_adjacency(r in realization()) {
        let (f, perm) = to_nir(&r);
        prop_assert_eq!(f.n(), r.n());
        for i in 1..=f.n() {
            prop_assert!(i + f.reach(i) <= f.n());
        }
        assert_adjacency(&r, &f, perm.as_slice());
    }

    #[test]
    fn to_snir_succeeds_exactly_on_proper_inputs(r in realization()) {
        match to_snir(&r) {
            Ok((f, perm)) => {
                prop_assert!(r.is_proper());
                prop_assert!(f.is_stair_monotone());
                assert_adjacency(&r, &f, perm.as_slice());
            }
            Err(ModelError::NotProper { outer, inner }) => {
                prop_assert!(!r.is_proper());
                prop_assert!(r.interval(outer).strictly_contains(r.interval(inner)));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn unit_intervals_convert_to_snir(r in unit_realization()) {
        let (f, perm) = to_snir(&r).unwrap();
        assert_adjacency(&r, &f, perm.as_slice());
    }

    #[test]
    fn edge_count_is_monotone_and_total(f in reach(), bits in any::<u16>(), extra in any::<u16>()) {
        let n = f.n();
        let s: Vec<usize> = (1..=n).filter(|v| bits >> (v - 1) & 1 == 1).collect();
        let t: Vec<usize> = (1..=n).filter(|v| (bits | extra) >> (v - 1) & 1 == 1).collect();
        prop_assert!(edge_count(&f, &s).unwrap() <= edge_count(&f, &t).unwrap());
        let all: Vec<usize> = (1..=n).collect();
        let ones = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| nir_entry(&f, i, j).unwrap())
            .count() as u64;
        prop_assert_eq!(edge_count(&f, &all).unwrap(), ones);
        prop_assert_eq!(f.edges(), ones);
    }

    #[test]
    fn nir_realization_round_trips(f in reach()) {
        let (g, _) = to_nir(&f.to_realization());
        prop_assert_eq!(g, f);
    }
}

#[test]
fn generated_realizations_convert() {
    for seed in 0..200 {
        for class in [GraphClass::Interval, GraphClass::Proper] {
            let r = gen_random(&GenSpec::new(1 + (seed as usize % 15), class, seed).unwrap());
            let (f, perm) = to_nir(&r);
            assert_adjacency(&r, &f, perm.as_slice());
            if class == GraphClass::Proper {
                let (s, perm) = to_snir(&r).unwrap();
                assert_adjacency(&r, &s, perm.as_slice());
            }
        }
    }
}

#[test]
fn conversion_examples() {
    let r = IntervalRealization::from_ints(&[(0, 10), (5, 20), (15, 25)]).unwrap();
    assert_eq!(to_nir(&r).0.reach_vec(), &[1, 1, 0]);
    let r = IntervalRealization::from_ints(&[(0, 9), (1, 8), (2, 7)]).unwrap();
    assert_eq!(to_nir(&r).0.reach_vec(), &[2, 1, 0]);
    assert_eq!(to_snir(&r).unwrap_err(), ModelError::NotProper { outer: 1, inner: 3 });
    let r = IntervalRealization::from_ints(&[(0, 1)]).unwrap();
    assert_eq!(to_nir(&r).0.reach_vec(), &[0]);
    let r = IntervalRealization::from_ints(&[(0, 1), (0, 1)]).unwrap();
    assert_eq!(to_snir(&r).unwrap().0.reach_vec(), &[1, 0]);
    // Closed unit intervals touching at their ends all meet their neighbours.
    let r = IntervalRealization::from_ints(&[(0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
    assert_eq!(to_snir(&r).unwrap().0.reach_vec(), &[3, 2, 1, 0]);
}
