#![allow(dead_code)]

use fds::gf::Field;
use fds::multipoly::MPoly;
use fds::system::System;
use proptest::prelude::*;

/// Random system over GF(p): each local reads a random subset of the
/// variables and has a random value table on it.
pub fn arb_system(primes: Vec<u64>, max_n: usize) -> impl Strategy<Value = System> {
    (prop::sample::select(primes), 1..=max_n).prop_flat_map(|(p, n)| {
        let local = (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(0..p as u32, (p as usize).pow(n as u32)),
        );
        prop::collection::vec(local, n).prop_map(move |locals| {
            let field = Field::new(p).unwrap();
            let locals = locals
                .into_iter()
                .map(|(mask, table)| {
                    let vars: Vec<usize> = (0..n).filter(|&j| mask[j]).collect();
                    let size = (p as usize).pow(vars.len() as u32);
                    MPoly::interpolate_on(field, n, &vars, &table[..size]).unwrap()
                })
                .collect();
            System::new(field, locals).unwrap()
        })
    })
}

/// Random table over GF(p)^n.
pub fn arb_table(
    primes: Vec<u64>,
    max_n: usize,
) -> impl Strategy<Value = (Field, usize, Vec<u32>)> {
    (prop::sample::select(primes), 1..=max_n).prop_flat_map(|(p, n)| {
        prop::collection::vec(0..p as u32, (p as usize).pow(n as u32))
            .prop_map(move |t| (Field::new(p).unwrap(), n, t))
    })
}
