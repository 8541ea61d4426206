mod common;

use common::arb_table;
use fds::multipoly::MPoly;
use fds::system::StateSpace;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn interpolation_reproduces_table((field, n, table) in arb_table(vec![2, 3], 3)) {
        let f = MPoly::interpolate(field, n, &table).unwrap();
        let space = StateSpace::new(field, n, usize::MAX).unwrap();
        for (idx, c) in space.configs().enumerate() {
            prop_assert_eq!(f.eval(c.values()).unwrap(), table[idx]);
        }
    }

    #[test]
    fn reinterpolation_is_identity((field, n, table) in arb_table(vec![2, 3, 5], 3)) {
        let f = MPoly::interpolate(field, n, &table).unwrap();
        let vars: Vec<usize> = (0..n).collect();
        let again = MPoly::interpolate(field, n, &f.grid_values(&vars).unwrap()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn separable_and_verbatim_routes_agree((field, n, table) in arb_table(vec![2, 3, 5], 3)) {
        let vars: Vec<usize> = (0..n).collect();
        prop_assert_eq!(
            MPoly::interpolate_separable(field, n, &vars, &table).unwrap(),
            MPoly::interpolate(field, n, &table).unwrap()
        );
    }

    #[test]
    fn support_is_sound((field, n, table) in arb_table(vec![2, 3], 3)) {
        let f = MPoly::interpolate(field, n, &table).unwrap();
        let support = f.support();
        let space = StateSpace::new(field, n, usize::MAX).unwrap();
        for c in space.configs() {
            let base = f.eval(c.values()).unwrap();
            for i in (0..n).filter(|i| !support.contains(i)) {
                for v in field.elements() {
                    let mut moved = c.values().to_vec();
                    moved[i] = v;
                    prop_assert_eq!(f.eval(&moved).unwrap(), base);
                }
            }
        }
        // and every listed variable really matters somewhere
        for &i in &support {
            let matters = space.configs().any(|c| {
                let mut moved = c.values().to_vec();
                moved[i] = field.add(moved[i], 1);
                f.eval(&moved).unwrap() != f.eval(c.values()).unwrap()
            });
            prop_assert!(matters);
        }
    }
}
