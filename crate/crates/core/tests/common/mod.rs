#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::SeedableRng;
use sugra_core::exterior::{Chart, ChartRef};
use sugra_core::gen::PolyShape;
use sugra_core::polyring::{Polynomial, Var};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

pub fn chart(name: &str, coords: &[&str]) -> ChartRef {
    Chart::new(name, coords).unwrap()
}

pub fn small() -> PolyShape {
    PolyShape {
        max_degree: 2,
        max_terms: 3,
        coeff: 3,
    }
}

pub fn p(s: &str) -> Polynomial {
    sugra_core::polyring::parse_polynomial(s).unwrap()
}
