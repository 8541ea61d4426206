use fds::gf::Field;
use fds::monomial::{fixed_point_criterion, loop_number, strongly_connected_components};
use fds::multipoly::MPoly;
use fds::phase::PhaseSpace;
use fds::system::{System, UpdateMode, DEFAULT_BUDGET};
use num_integer::Integer;
use proptest::prelude::*;

/// Random digraph as successor lists; `bits[u * n + v]` marks `u -> v`.
fn arb_digraph(max_n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.25), n * n).prop_map(move |bits| {
            (0..n)
                .map(|u| (0..n).filter(|&v| bits[u * n + v]).collect())
                .collect()
        })
    })
}

/// Nonconstant Boolean monomial system: each local is a nonempty product.
fn arb_monomial_system(max_n: usize) -> impl Strategy<Value = System> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), n).prop_map(move |masks| {
            let f = Field::boolean();
            let locals = masks
                .iter()
                .map(|&m| {
                    (0..n)
                        .filter(|&j| m >> j & 1 == 1)
                        .fold(MPoly::constant(f, n, 1), |acc, j| {
                            acc.mul(&MPoly::var(f, n, j))
                        })
                })
                .collect();
            System::new(f, locals).unwrap()
        })
    })
}

/// gcd of all closed-walk lengths through `v` up to `3n`, via boolean
/// adjacency powers. Any simple cycle of length l in the component gives
/// closed walks through `v` of lengths a and a + l with a <= 2n - 2.
fn closed_walk_gcd(succ: &[Vec<usize>], v: usize) -> usize {
    let n = succ.len();
    let mut reach = vec![false; n];
    reach[v] = true;
    let mut g = 0usize;
    for len in 1..=3 * n {
        let mut next = vec![false; n];
        for u in (0..n).filter(|&u| reach[u]) {
            for &w in &succ[u] {
                next[w] = true;
            }
        }
        reach = next;
        if reach[v] {
            g = g.gcd(&len);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn loop_number_independent_of_root(succ in arb_digraph(8)) {
        for comp in strongly_connected_components(&succ) {
            let first = loop_number(&succ, &comp, comp[0]);
            for &v in &comp {
                prop_assert_eq!(loop_number(&succ, &comp, v), first);
            }
        }
    }

    #[test]
    fn loop_number_is_closed_walk_gcd(succ in arb_digraph(7)) {
        for comp in strongly_connected_components(&succ) {
            let ln = loop_number(&succ, &comp, comp[0]);
            prop_assert_eq!(ln, closed_walk_gcd(&succ, comp[0]));
        }
    }

    #[test]
    fn criterion_matches_enumeration(s in arb_monomial_system(8)) {
        let ps = PhaseSpace::enumerate(&s, &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        let only_fixed = ps.cycles().iter().all(|c| c.len() == 1);
        prop_assert_eq!(fixed_point_criterion(&s).unwrap(), only_fixed);
    }

    #[test]
    fn components_partition_vertices(succ in arb_digraph(8)) {
        let mut all: Vec<usize> = strongly_connected_components(&succ).concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..succ.len()).collect::<Vec<_>>());
    }
}
