mod common;

use fds::gf::Field;
use fds::multipoly::MPoly;
use fds::phase::PhaseSpace;
use fds::system::{System, UpdateMode, UpdateWord, DEFAULT_BUDGET};
use fds::updorder::{
    all_permutations, connected_graph_catalog, count_inequivalent, distinct_sequential_maps,
    nor_system, same_sds, update_graph_components, SimpleGraph,
};
use proptest::prelude::*;

#[test]
fn components_biject_with_acyclic_orientations() {
    let catalog = connected_graph_catalog(5);
    assert_eq!(catalog.len(), 1 + 1 + 4 + 38 + 728);
    for g in &catalog {
        let summary = update_graph_components(g).unwrap();
        assert!(summary.bijection_holds, "{:?}", g.edges());
        assert_eq!(summary.component_count(), count_inequivalent(g).unwrap());
        let sizes: usize = summary.components.iter().map(|c| c.size).sum();
        assert_eq!(sizes, summary.permutation_count);
    }
}

#[test]
fn nor_periodic_states_count_independent_sets() {
    for g in connected_graph_catalog(5) {
        let s = nor_system(&g);
        let n = g.vertex_count();
        let orders: Vec<UpdateWord> = if n <= 4 {
            all_permutations(n).collect()
        } else {
            vec![UpdateWord::identity(n)]
        };
        for pi in orders {
            let ps = PhaseSpace::enumerate(&s, &UpdateMode::Word(pi), DEFAULT_BUDGET).unwrap();
            assert_eq!(ps.periodic_states().len() as u64, g.independent_set_count());
        }
    }
}

#[test]
fn nor_distinct_maps_on_star() {
    // reported rather than assumed: the sharpness claim is checked per graph
    let star = SimpleGraph::star(4);
    let distinct = distinct_sequential_maps(&nor_system(&star), DEFAULT_BUDGET).unwrap();
    assert_eq!(distinct, count_inequivalent(&star).unwrap());
}

#[test]
fn nor_distinct_maps_on_small_graphs() {
    for g in connected_graph_catalog(4) {
        let distinct = distinct_sequential_maps(&nor_system(&g), DEFAULT_BUDGET).unwrap();
        assert_eq!(distinct, count_inequivalent(&g).unwrap(), "{:?}", g.edges());
    }
}

fn arb_local_on_graph(g: SimpleGraph) -> impl Strategy<Value = System> {
    let n = g.vertex_count();
    let hoods: Vec<Vec<usize>> = (0..n).map(|i| g.closed_neighborhood(i)).collect();
    let tables: Vec<_> = hoods
        .iter()
        .map(|h| prop::collection::vec(0u32..2, 1 << h.len()))
        .collect();
    tables.prop_map(move |tables| {
        let f = Field::boolean();
        let locals = hoods
            .iter()
            .zip(&tables)
            .map(|(h, t)| MPoly::interpolate_on(f, n, h, t).unwrap())
            .collect();
        System::new(f, locals).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn equivalent_orders_give_equal_maps(
        (g, s) in prop::sample::select(connected_graph_catalog(4))
            .prop_flat_map(|g| (Just(g.clone()), arb_local_on_graph(g)))
    ) {
        let n = g.vertex_count();
        let perms: Vec<UpdateWord> = all_permutations(n).collect();
        let maps: Vec<_> = perms
            .iter()
            .map(|pi| s.materialize(&UpdateMode::Word(pi.clone()), DEFAULT_BUDGET).unwrap())
            .collect();
        for a in 0..perms.len() {
            for b in a + 1..perms.len() {
                if same_sds(&g, &perms[a], &perms[b]).unwrap() {
                    prop_assert_eq!(&maps[a], &maps[b]);
                }
            }
        }
    }
}
