mod common;

use common::arb_system;
use fds::system::{UpdateMode, UpdateWord, DEFAULT_BUDGET};
use proptest::prelude::*;

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = UpdateWord> {
    prop::collection::vec(0..n, 1..=max_len).prop_map(move |w| UpdateWord::new(n, w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn materialized_tables_are_total(s in arb_system(vec![2, 3], 4)) {
        let map = s.materialize(&UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(map.table().len(), map.space().size());
        prop_assert!(map.table().iter().all(|&t| t < map.space().size()));
        for (idx, c) in map.space().configs().enumerate() {
            prop_assert_eq!(map.space().index(s.step_parallel(&c).unwrap().values()), map.image(idx));
        }
    }

    #[test]
    fn word_concatenation_composes(
        (s, w1, w2) in arb_system(vec![2, 3], 4).prop_flat_map(|s| {
            let n = s.n();
            (Just(s), arb_word(n, 6), arb_word(n, 6))
        })
    ) {
        let m1 = s.materialize(&UpdateMode::Word(w1.clone()), DEFAULT_BUDGET).unwrap();
        let m2 = s.materialize(&UpdateMode::Word(w2.clone()), DEFAULT_BUDGET).unwrap();
        let both = s.materialize(&UpdateMode::Word(w1.concat(&w2)), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(both, m1.then(&m2));
    }

    #[test]
    fn non_adjacent_updates_commute(
        (s, w, k) in arb_system(vec![2, 3], 4).prop_flat_map(|s| {
            let n = s.n();
            (Just(s), arb_word(n, 6).prop_filter("needs two letters", |w| w.entries().len() >= 2), any::<prop::sample::Index>())
        })
    ) {
        let e = w.entries();
        let pos = k.index(e.len() - 1);
        let (i, j) = (e[pos], e[pos + 1]);
        let dep = s.dependency_graph();
        prop_assume!(i != j && !dep.has_edge(i, j) && !dep.has_edge(j, i));
        let mut swapped = e.to_vec();
        swapped.swap(pos, pos + 1);
        let swapped = UpdateWord::new(s.n(), swapped).unwrap();
        prop_assert_eq!(
            s.materialize(&UpdateMode::Word(w.clone()), DEFAULT_BUDGET).unwrap(),
            s.materialize(&UpdateMode::Word(swapped), DEFAULT_BUDGET).unwrap()
        );
    }
}

#[test]
fn edgeless_systems_agree_in_every_order() {
    use fds::gf::Field;
    use fds::multipoly::MPoly;
    use fds::system::System;
    use fds::updorder::all_permutations;

    // each local reads only its own variable
    let f = Field::new(3).unwrap();
    let tables = [[1, 2, 0], [0, 0, 1], [2, 1, 1]];
    let locals = tables
        .iter()
        .enumerate()
        .map(|(i, t)| MPoly::interpolate_on(f, 3, &[i], t).unwrap())
        .collect();
    let s = System::new(f, locals).unwrap();
    let parallel = s
        .materialize(&UpdateMode::Parallel, DEFAULT_BUDGET)
        .unwrap();
    for pi in all_permutations(3) {
        assert_eq!(
            s.materialize(&UpdateMode::Word(pi), DEFAULT_BUDGET)
                .unwrap(),
            parallel
        );
    }
}
