//! Fixtures shared by the benchmarks.

use mukai_core::clifford::Parity;
use mukai_core::groebner::{polynomials_of, Polynomial};
use mukai_core::quadrics::{clifford_quadrics, QuadricSystem};
use mukai_core::variety::restrict_to_span;
use mukai_core::{LinearSubspace, PrimeField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn even_system(p: u64) -> QuadricSystem<PrimeField> {
    clifford_quadrics(Parity::Even).over(&PrimeField::new(p).expect("prime"))
}

/// Generators of the even tenfold cut by a random `P^5`, as used for degree checks.
pub fn random_slice_generators(p: u64, seed: u64) -> (PrimeField, Vec<Polynomial<PrimeField>>) {
    let sys = even_system(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub = LinearSubspace::random(&sys.field, 16, 6, &mut rng);
    let restricted = restrict_to_span(&sys, &sub).expect("matching dimensions");
    (sys.field, polynomials_of(&restricted))
}
