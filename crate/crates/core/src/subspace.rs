//! Linear subspaces of a coordinate space, stored by a reduced row-echelon basis.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> LinearSubspace<F> {
    /// The span of the given vectors (dependent vectors allowed).
    pub fn from_spanning(field: &F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        if vectors.is_empty() {
            return LinearSubspace { ambient_dim, basis: Matrix::zeros(field, 0, ambient_dim) };
        }
        let m = Matrix::from_row_slices(field, ambient_dim, vectors);
        let ech = m.rref();
        let rows: Vec<Vec<F::Elem>> = (0..ech.rank).map(|r| ech.reduced.row(r).to_vec()).collect();
        LinearSubspace { ambient_dim, basis: Matrix::from_row_slices(field, ambient_dim, &rows) }
    }

    /// Subspace with the given rows as its basis, which must be independent.
    /// Keeps the caller's basis (and therefore its internal coordinates).
    pub fn with_basis(field: &F, ambient_dim: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let m = Matrix::from_row_slices(field, ambient_dim, rows);
        let rank = m.rank();
        if rank != rows.len() {
            return Err(Error::Degenerate(format!("{} basis vectors have rank {rank}", rows.len())));
        }
        Ok(LinearSubspace { ambient_dim, basis: m })
    }

    pub fn full(field: &F, n: usize) -> Self {
        LinearSubspace { ambient_dim: n, basis: Matrix::identity(field, n) }
    }

    /// `{x : rows . x = 0 for every row}`.
    pub fn annihilated_by(field: &F, ambient_dim: usize, rows: &[Vec<F::Elem>]) -> Self {
        if rows.is_empty() {
            return Self::full(field, ambient_dim);
        }
        let m = Matrix::from_row_slices(field, ambient_dim, rows);
        Self::from_spanning(field, ambient_dim, &m.kernel())
    }

    /// A uniformly random subspace of the given dimension (finite fields).
    pub fn random<R: Rng + ?Sized>(field: &F, ambient_dim: usize, dim: usize, rng: &mut R) -> Self {
        loop {
            let rows: Vec<Vec<F::Elem>> =
                (0..dim).map(|_| (0..ambient_dim).map(|_| field.random(rng)).collect()).collect();
            if let Ok(s) = Self::with_basis(field, ambient_dim, &rows) {
                return s;
            }
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// `sum_a y_a b_a` for internal coordinates `y`.
    pub fn to_ambient(&self, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient_dim];
        for (a, ya) in y.iter().enumerate() {
            if f.is_zero(ya) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(a)) {
                *o = f.add(o, &f.mul(ya, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        Matrix::from_row_slices(self.field(), self.ambient_dim, &rows).rank() == self.dim()
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && other.basis.row_vecs().iter().all(|v| self.contains(v))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal_complement(&self) -> Self {
        Self::annihilated_by(self.field(), self.ambient_dim, &self.basis.row_vecs())
    }

    /// Span of this subspace and extra vectors.
    pub fn extended(&self, extra: &[Vec<F::Elem>]) -> Self {
        let mut rows = self.basis.row_vecs();
        rows.extend(extra.iter().cloned());
        Self::from_spanning(self.field(), self.ambient_dim, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complement_dimensions() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 0..=6 {
            let s = LinearSubspace::random(&f, 6, d, &mut rng);
            assert_eq!(s.dim(), d);
            let c = s.orthogonal_complement();
            assert_eq!(c.dim(), 6 - d);
            for u in s.basis().row_vecs() {
                for v in c.basis().row_vecs() {
                    let dot = u.iter().zip(&v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn spans_and_membership() {
        let f = PrimeField::new(5).unwrap();
        let s = LinearSubspace::from_spanning(&f, 3, &[vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[3, 1, 4]));
        assert!(!s.contains(&[0, 1, 0]));
        assert!(LinearSubspace::with_basis(&f, 3, &[vec![1, 2, 0], vec![2, 4, 0]]).is_err());
        let t = LinearSubspace::with_basis(&f, 3, &[vec![0, 0, 1], vec![1, 2, 1]]).unwrap();
        assert!(s.same_span(&t));
        assert_eq!(t.to_ambient(&[1, 1]), vec![1, 2, 2]);
    }
}
