//! Benchmark fixtures.

use bochner::{DiffOperator, Family, KRALL_LEGENDRE_JSON};

pub fn legendre() -> DiffOperator {
    Family::Legendre.bochner_operator().unwrap()
}

pub fn hermite() -> DiffOperator {
    Family::Hermite.bochner_operator().unwrap()
}

pub fn krall() -> DiffOperator {
    DiffOperator::from_json(KRALL_LEGENDRE_JSON).unwrap()
}
