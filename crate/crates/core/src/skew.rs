//! 5x5 skew-symmetric matrices and their 4x4 Pfaffians.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Index pairs `(i, j)`, `1 <= i < j <= 5`, in lexicographic order.
pub const PAIRS: [(usize, usize); 10] =
    [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

/// A skew-symmetric 5x5 matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix5<E> {
    upper: [E; 10],
}

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("valid pair")
}

impl<E: Clone> SkewMatrix5<E> {
    /// Entries in the order of [`PAIRS`].
    pub fn new(upper: [E; 10]) -> Self {
        SkewMatrix5 { upper }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        SkewMatrix5 { upper: std::array::from_fn(|_| field.zero()) }
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(field: &F, rng: &mut R) -> Self {
        SkewMatrix5 { upper: std::array::from_fn(|_| field.random(rng)) }
    }

    pub fn upper(&self) -> &[E; 10] {
        &self.upper
    }

    /// Entry `a_ij` with 1-based indices and skew symmetry.
    pub fn entry<F: Field<Elem = E>>(&self, field: &F, i: usize, j: usize) -> E {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => field.zero(),
            std::cmp::Ordering::Less => self.upper[pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => field.neg(&self.upper[pair_index(j, i)]),
        }
    }

    pub fn set_upper(&mut self, i: usize, j: usize, v: E) {
        self.upper[pair_index(i, j)] = v;
    }
}

/// Pfaffian of the 4x4 principal skew submatrix on rows `i<j<k<l`:
/// `a_ij a_kl - a_ik a_jl + a_il a_jk`.
pub fn pfaffian4<F: Field>(field: &F, a: &SkewMatrix5<F::Elem>, rows: [usize; 4]) -> Result<F::Elem> {
    let [i, j, k, l] = rows;
    if !(1 <= i && i < j && j < k && k < l && l <= 5) {
        return Err(Error::Degenerate(format!("{rows:?} is not an increasing 4-subset of 1..5")));
    }
    let e = |x, y| a.entry(field, x, y);
    let t1 = field.mul(&e(i, j), &e(k, l));
    let t2 = field.mul(&e(i, k), &e(j, l));
    let t3 = field.mul(&e(i, l), &e(j, k));
    Ok(field.add(&field.sub(&t1, &t2), &t3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matrix::Matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SUBSETS: [[usize; 4]; 5] = [[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]];

    #[test]
    fn zero_and_rank_two() {
        let f = PrimeField::new(7).unwrap();
        let z = SkewMatrix5::zero(&f);
        assert_eq!(pfaffian4(&f, &z, [1, 2, 3, 4]).unwrap(), 0);
        let mut a = SkewMatrix5::zero(&f);
        a.set_upper(1, 2, 1);
        for s in SUBSETS {
            assert_eq!(pfaffian4(&f, &a, s).unwrap(), 0);
        }
        assert!(pfaffian4(&f, &a, [1, 1, 3, 4]).is_err());
    }

    /// Pf^2 equals the determinant of the 4x4 skew submatrix.
    #[test]
    fn pfaffian_squared_is_determinant() {
        for p in [3u64, 5, 7, 101] {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..1000 {
                let a = SkewMatrix5::random(&f, &mut rng);
                for s in SUBSETS {
                    let sub: Vec<Vec<u64>> =
                        s.iter().map(|&r| s.iter().map(|&c| a.entry(&f, r, c)).collect()).collect();
                    let det = Matrix::from_rows(&f, sub).unwrap().determinant().unwrap();
                    let pf = pfaffian4(&f, &a, s).unwrap();
                    assert_eq!(f.mul(&pf, &pf), det);
                }
            }
        }
    }
}
