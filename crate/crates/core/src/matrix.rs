//! Dense exact matrices over a [`Field`], plus a bit-packed `F_2` variant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_prime_u64, rational_reconstruction};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct RowEchelon<F: Field> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let nrows = rows.len();
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from row slices, for callers that know the shape is consistent.
    pub fn from_row_slices(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(k, j));
                    let cur = f.add(out.get(i, j), &prod);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| if f.is_zero(a) { acc } else { f.add(&acc, &f.mul(a, b)) })
            })
            .collect())
    }

    /// Reduced row-echelon form with pivot columns.
    pub fn rref(&self) -> RowEchelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if f.is_zero(m.get(r, j)) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowEchelon { reduced: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        F::fast_kernel(self).unwrap_or_else(|| self.exact_kernel())
    }

    /// [`Matrix::kernel`] computed by elimination in the field itself.
    pub fn exact_kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = f.neg(ech.reduced.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let ech = aug.rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, ech.reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else { return Ok(f.zero()) };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Maps every entry into another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

/// Rank of a list of vectors.
pub fn rank_of<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_row_slices(field, vectors[0].len(), vectors).rank()
}

fn integer_rows(m: &Matrix<Rationals>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Kernel of a rational matrix by elimination modulo large primes, CRT and
/// rational reconstruction. The candidate basis is accepted only after it is
/// checked to be annihilated exactly; primes of deficient rank are skipped.
/// Returns `None` if no verified basis is found within the prime budget.
pub fn multimodular_kernel(m: &Matrix<Rationals>) -> Option<Vec<Vec<BigRational>>> {
    const MAX_PRIMES: usize = 64;
    if m.rows == 0 || m.cols == 0 {
        return None;
    }
    let ints = integer_rows(m);
    let mut best_rank = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut p = (1u64 << 62) - 1;
    let mut used = 0;
    while used < MAX_PRIMES {
        p -= 2;
        if !is_prime_u64(p) {
            continue;
        }
        used += 1;
        let f = PrimeField::new(p).ok()?;
        let pb = BigInt::from(p);
        let rows: Vec<Vec<u64>> =
            ints.iter().map(|r| r.iter().map(|x| f.from_bigint(x)).collect()).collect();
        let ech = Matrix::from_row_slices(&f, m.cols, &rows).rref();
        if ech.rank < best_rank || (ech.rank == best_rank && ech.pivots != pivots && used > 1) {
            continue;
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let kernel: Vec<Vec<BigInt>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u64; m.cols];
                v[fc] = 1;
                for (i, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = f.neg(ech.reduced.get(i, fc));
                }
                v.into_iter().map(BigInt::from).collect()
            })
            .collect();
        if ech.rank > best_rank || used == 1 {
            best_rank = ech.rank;
            pivots = ech.pivots.clone();
            residues = kernel;
            modulus = pb;
        } else {
            // CRT: x = r + M * ((k - r) * M^{-1} mod p)
            let minv = BigInt::from(f.inv(&f.from_bigint(&modulus)).expect("distinct primes"));
            for (rv, kv) in residues.iter_mut().zip(&kernel) {
                for (r, k) in rv.iter_mut().zip(kv) {
                    let t = ((k - &*r) * &minv).mod_floor(&pb);
                    *r = &*r + &modulus * t;
                }
            }
            modulus *= pb;
        }
        if residues.is_empty() {
            return Some(Vec::new());
        }
        let candidate: Option<Vec<Vec<BigRational>>> = residues
            .iter()
            .map(|v| v.iter().map(|x| rational_reconstruction(x, &modulus)).collect())
            .collect();
        if let Some(c) = candidate {
            if annihilates(&ints, &c) {
                return Some(c);
            }
        }
    }
    None
}

fn annihilates(rows: &[Vec<BigInt>], vectors: &[Vec<BigRational>]) -> bool {
    vectors.iter().all(|v| {
        let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let iv: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        rows.iter().all(|r| r.iter().zip(&iv).fold(BigInt::zero(), |acc, (a, b)| acc + a * b).is_zero())
    })
}

/// Bit-packed matrix over `F_2`; row `r` stores column `c` in bit `c % 64` of word `c / 64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    data: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { cols, words, data: vec![vec![0; words]; rows] }
    }

    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                if b {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// From rows given as bit masks (columns < 64).
    pub fn from_masks(cols: usize, masks: &[u64]) -> Self {
        assert!(cols <= 64);
        BitMatrix { cols, words: 1, data: masks.iter().map(|&m| vec![m]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r][c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Reduced row-echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.data.len() {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pr) = (r..self.data.len()).find(|&i| self.data[i][w] & bit != 0) else { continue };
            self.data.swap(r, pr);
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i != r && row[w] & bit != 0 {
                    for k in 0..self.words {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn to_bool_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows()).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// Rank of vectors in `F_2^n` given as bit masks (n <= 64).
pub fn f2_rank(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::identity(&f, 2);
        let e = m.rref();
        assert_eq!(e.rank, 2);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn zero_matrix_over_q() {
        let m = Matrix::zeros(&Rationals, 3, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 5);
    }

    #[test]
    fn inverse_and_determinant() {
        let q = Rationals;
        let rows: Vec<Vec<BigRational>> =
            [[2, 1, 0], [1, 3, 1], [0, 1, 4]].iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let m = Matrix::from_rows(&q, rows).unwrap();
        assert_eq!(m.determinant().unwrap(), q.from_i64(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 3));
    }

    proptest! {
        #[test]
        fn rank_nullity(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..9, p in prop::sample::select(vec![2u64, 3, 5, 7, 101])) {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<Vec<u64>> = (0..rows).map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { 0 } else { f.random(&mut rng) }).collect()).collect();
            let m = Matrix::from_rows(&f, data).unwrap();
            let e = m.rref();
            let ker = m.kernel();
            prop_assert_eq!(e.rank + ker.len(), cols);
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn bit_packed_matches_generic(seed in any::<u64>(), rows in 1usize..12, cols in 1usize..140) {
            let f = PrimeField::new(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bools: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_bool(0.3)).collect()).collect();
            let generic = Matrix::from_rows(&f, bools.iter().map(|r| r.iter().map(|&b| b as u64).collect()).collect()).unwrap();
            let ech = generic.rref();
            let mut packed = BitMatrix::from_bool_rows(&bools);
            let pivots = packed.rref_in_place();
            prop_assert_eq!(&pivots, &ech.pivots);
            let generic_rows: Vec<Vec<bool>> = (0..rows).map(|r| ech.reduced.row(r).iter().map(|&x| x == 1).collect()).collect();
            prop_assert_eq!(packed.to_bool_rows(), generic_rows);
        }
    }

    #[test]
    fn multimodular_kernel_matches_elimination() {
        use rand::{Rng, SeedableRng};
        let q = Rationals;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (rows, cols, rank) in [(6, 9, 4), (12, 10, 7), (5, 5, 5), (8, 12, 1)] {
            let left: Vec<Vec<BigRational>> =
                (0..rows).map(|_| (0..rank).map(|_| q.from_i64(rng.gen_range(-9..=9))).collect()).collect();
            let right: Vec<Vec<BigRational>> = (0..rank)
                .map(|_| {
                    (0..cols)
                        .map(|_| BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into()))
                        .collect()
                })
                .collect();
            let m = Matrix::from_row_slices(&q, rank, &left).mul(&Matrix::from_row_slices(&q, cols, &right)).unwrap();
            let fast = multimodular_kernel(&m).expect("verified kernel");
            assert_eq!(fast, m.exact_kernel());
            assert_eq!(fast.len(), cols - m.rank());
        }
    }
}
