//! The ten quadrics cutting out the spinor tenfold.
//!
//! They are obtained by interpolation on pure spinors and compared with the
//! Clifford-pairing construction. Sections carry a quadratic relation among
//! their quadrics, which is searched for here as well.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{content_normalize, hermite_normal_form};
use crate::clifford::{gamma_apply, HalfSpinor, PairingMatrix, Parity, DIM_S, DIM_V};
use crate::clifford::{default_translator, pure_spinor};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::{rank_of, Matrix};
use crate::skew::SkewMatrix5;

/// Number of monomials `x_i x_j`, `i <= j`, in `n` variables.
pub fn num_quadratic_monomials(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of `x_i x_j` (`i <= j`) in row-major upper-triangle order.
#[inline]
pub fn monomial_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// `(i, j)` pairs in row-major upper-triangle order.
pub fn monomial_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// A quadratic form `sum_{i<=j} c_ij x_i x_j` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric<F: Field> {
    nvars: usize,
    coeffs: Vec<F::Elem>,
    /// Nonzero terms `(i, j, c_ij)`.
    terms: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> Quadric<F> {
    pub fn from_upper(field: &F, nvars: usize, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != num_quadratic_monomials(nvars) {
            return Err(Error::DimensionMismatch { expected: num_quadratic_monomials(nvars), found: coeffs.len() });
        }
        let terms = monomial_pairs(nvars)
            .into_iter()
            .zip(&coeffs)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|((i, j), c)| (i, j, c.clone()))
            .collect();
        Ok(Quadric { nvars, coeffs, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn terms(&self) -> &[(usize, usize, F::Elem)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &F::Elem {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        &self.coeffs[monomial_index(self.nvars, i, j)]
    }

    pub fn eval(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        self.terms.iter().fold(field.zero(), |acc, (i, j, c)| {
            field.add(&acc, &field.mul(c, &field.mul(&x[*i], &x[*j])))
        })
    }

    /// Polar form `B(u, v) = Q(u + v) - Q(u) - Q(v)`.
    pub fn polar(&self, field: &F, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        self.terms.iter().fold(field.zero(), |acc, (i, j, c)| {
            let t = if i == j {
                let uv = field.mul(&u[*i], &v[*i]);
                field.add(&uv, &uv)
            } else {
                field.add(&field.mul(&u[*i], &v[*j]), &field.mul(&u[*j], &v[*i]))
            };
            field.add(&acc, &field.mul(c, &t))
        })
    }

    /// Gradient at `x`; equals `B(x, e_k)`, so it is the polarization in characteristic 2.
    pub fn gradient(&self, field: &F, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut g = vec![field.zero(); self.nvars];
        for (i, j, c) in &self.terms {
            if i == j {
                let t = field.mul(c, &x[*i]);
                g[*i] = field.add(&g[*i], &field.add(&t, &t));
            } else {
                g[*i] = field.add(&g[*i], &field.mul(c, &x[*j]));
                g[*j] = field.add(&g[*j], &field.mul(c, &x[*i]));
            }
        }
        g
    }
}

/// A list of quadrics in a common set of variables.
#[derive(Clone, Debug)]
pub struct QuadricSystem<F: Field> {
    pub field: F,
    pub ambient_dim: usize,
    pub quadrics: Vec<Quadric<F>>,
    pub parity: Option<Parity>,
    pub origin: String,
}

impl<F: Field> QuadricSystem<F> {
    pub fn eval_all(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.quadrics.iter().map(|q| q.eval(&self.field, x)).collect()
    }

    pub fn vanishes_at(&self, x: &[F::Elem]) -> bool {
        self.quadrics.iter().all(|q| self.field.is_zero(&q.eval(&self.field, x)))
    }

    /// Jacobian matrix (one row per quadric) at `x`.
    pub fn jacobian(&self, x: &[F::Elem]) -> Matrix<F> {
        let rows: Vec<Vec<F::Elem>> = self.quadrics.iter().map(|q| q.gradient(&self.field, x)).collect();
        Matrix::from_row_slices(&self.field, self.ambient_dim, &rows)
    }

    /// Coefficient vectors, one row per quadric.
    pub fn coefficient_matrix(&self) -> Matrix<F> {
        let rows: Vec<Vec<F::Elem>> = self.quadrics.iter().map(|q| q.coeffs.clone()).collect();
        Matrix::from_row_slices(&self.field, num_quadratic_monomials(self.ambient_dim), &rows)
    }

    /// Dimension of the span of the quadrics.
    pub fn span_rank(&self) -> usize {
        self.coefficient_matrix().rank()
    }

    /// Indices of quadrics that are identically zero.
    pub fn zero_quadrics(&self) -> Vec<usize> {
        self.quadrics.iter().enumerate().filter(|(_, q)| q.is_zero()).map(|(i, _)| i).collect()
    }
}

/// Whether two systems over the same field span the same space of quadrics.
pub fn spans_equal<F: Field>(a: &QuadricSystem<F>, b: &QuadricSystem<F>) -> bool {
    if a.ambient_dim != b.ambient_dim {
        return false;
    }
    let ra = a.span_rank();
    let rb = b.span_rank();
    let mut rows = a.coefficient_matrix().row_vecs();
    rows.extend(b.coefficient_matrix().row_vecs());
    ra == rb && rank_of(&a.field, &rows) == ra
}

/// An integral quadric system with content-normalized coefficients,
/// serialized as `{parity, ambient_dim, quadrics: [[upper-triangle ints]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSystem {
    pub parity: Parity,
    pub ambient_dim: usize,
    pub quadrics: Vec<Vec<i64>>,
}

impl CanonicalSystem {
    /// The reduction of this system to a field.
    pub fn over<F: Field>(&self, field: &F) -> QuadricSystem<F> {
        let quadrics = self
            .quadrics
            .iter()
            .map(|c| {
                Quadric::from_upper(field, self.ambient_dim, c.iter().map(|&x| field.from_i64(x)).collect())
                    .expect("canonical system shape")
            })
            .collect();
        QuadricSystem {
            field: field.clone(),
            ambient_dim: self.ambient_dim,
            quadrics,
            parity: Some(self.parity),
            origin: format!("canonical {} system over {}", self.parity.name(), field.spec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let sys: CanonicalSystem = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let n = num_quadratic_monomials(sys.ambient_dim);
        if let Some(bad) = sys.quadrics.iter().find(|q| q.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(sys)
    }

    /// Gcd of the coefficients of each quadric.
    pub fn contents(&self) -> Vec<i64> {
        self.quadrics.iter().map(|q| q.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))).collect()
    }
}

fn canonicalize(parity: Parity, ambient_dim: usize, basis: &[Vec<BigRational>]) -> Result<CanonicalSystem> {
    // the rational row space is unique; its RREF fixes the lattice generators
    let ech = Matrix::from_row_slices(&Rationals, num_quadratic_monomials(ambient_dim), basis).rref();
    let rows: Vec<Vec<BigInt>> = (0..ech.rank)
        .map(|r| content_normalize(ech.reduced.row(r)))
        .collect::<Result<_>>()?;
    let hnf = hermite_normal_form(&rows);
    let quadrics = hnf
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Degenerate("quadric coefficient overflows i64".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(CanonicalSystem { parity, ambient_dim, quadrics })
}

/// A random pure spinor over `Q` from a skew matrix with entries in `{-3..3}`.
pub fn random_rational_pure_spinor<R: Rng + ?Sized>(parity: Parity, rng: &mut R) -> HalfSpinor<Rationals> {
    let q = Rationals;
    let a = SkewMatrix5::new(std::array::from_fn(|_| q.from_i64(rng.gen_range(-3..=3))));
    let translator = default_translator(&q);
    pure_spinor(&q, &a, parity, Some(&translator)).expect("e1 + e2 is invertible")
}

fn quadratic_monomials_at(x: &[BigRational]) -> Vec<BigRational> {
    monomial_pairs(x.len()).into_iter().map(|(i, j)| &x[i] * &x[j]).collect()
}

/// Derives the quadrics vanishing on the pure spinors of one parity by
/// evaluating all 136 quadratic monomials at `sample_budget` random pure
/// spinors over `Q` and taking the kernel.
pub fn interpolate_quadrics(parity: Parity, sample_budget: usize, seed: u64) -> Result<CanonicalSystem> {
    if sample_budget < 150 {
        return Err(Error::Degenerate(format!("sample budget {sample_budget} is below 150")));
    }
    let samples: Vec<Vec<BigRational>> = (0..sample_budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64));
            quadratic_monomials_at(&random_rational_pure_spinor(parity, &mut rng).coords)
        })
        .collect();
    let m = Matrix::from_row_slices(&Rationals, num_quadratic_monomials(DIM_S), &samples);
    let kernel = m.kernel();
    if kernel.len() != 10 {
        return Err(Error::SamplingDegenerate(kernel.len()));
    }
    canonicalize(parity, DIM_S, &kernel)
}

/// Integer bilinear matrix `M[a][b] = beta(gamma(e_j) e_a, e_b)` (even) or
/// `beta(e_a, gamma(e_j) e_b)` (odd), over the 16 coordinates of one parity.
fn clifford_bilinear(j: usize, parity: Parity) -> [[i64; 16]; 16] {
    let q = Rationals;
    let p = PairingMatrix::get();
    let mut m = [[0i64; 16]; 16];
    for a in 0..DIM_S {
        let mut ea = HalfSpinor::zero(&q, parity);
        ea.coords[a] = q.one();
        let ga = gamma_apply(&q, j, &ea);
        for b in 0..DIM_S {
            m[a][b] = match parity {
                // ga is odd: beta(ga, e_b)
                Parity::Even => (0..DIM_S).map(|i| p.entries[i][b] as i64 * ga.coords[i].to_integer().to_i64().unwrap()).sum(),
                // ga is even: beta(e_b, ga) read as the (b, a) entry
                Parity::Odd => (0..DIM_S).map(|c| p.entries[b][c] as i64 * ga.coords[c].to_integer().to_i64().unwrap()).sum(),
            };
        }
    }
    m
}

/// The quadrics `Q_j(s) = beta(gamma(e_j) s, s)` (even) or
/// `beta(t, gamma(e_j) t)` (odd), content-normalized over `Z`, in generator order.
pub fn clifford_quadrics(parity: Parity) -> CanonicalSystem {
    let n = DIM_S;
    let quadrics = (1..=DIM_V)
        .map(|j| {
            let m = clifford_bilinear(j, parity);
            let mut c = vec![0i64; num_quadratic_monomials(n)];
            for (i, k) in monomial_pairs(n) {
                c[monomial_index(n, i, k)] = if i == k { m[i][i] } else { m[i][k] + m[k][i] };
            }
            let g = c.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            assert!(g != 0, "Clifford quadric {j} vanishes identically");
            let first = *c.iter().find(|&&x| x != 0).unwrap();
            let g = if first < 0 { -g } else { g };
            c.iter().map(|x| x / g).collect()
        })
        .collect();
    CanonicalSystem { parity, ambient_dim: n, quadrics }
}

/// Checks that the Clifford quadrics span the same space as `reference` over `Q`.
pub fn check_clifford_against(reference: &CanonicalSystem) -> Result<()> {
    let cl = clifford_quadrics(reference.parity);
    if spans_equal(&cl.over(&Rationals), &reference.over(&Rationals)) {
        Ok(())
    } else {
        Err(Error::SpanMismatch)
    }
}

/// The quadratic form recovered from the unique relation
/// `sum_{j<=k} c_jk Q_j Q_k = 0`, given by its polarization Gram matrix
/// (`G_jk = c_jk` off the diagonal, `G_jj = 2 c_jj`). Only defined up to scale.
#[derive(Clone, Debug)]
pub struct RecoveredForm<F: Field> {
    pub relation: Vec<F::Elem>,
    pub gram: Matrix<F>,
    pub scale_ambiguous: bool,
}

impl<F: Field> RecoveredForm<F> {
    pub fn rank(&self) -> usize {
        self.gram.rank()
    }
}

type Quartic = [u8; 4];

fn product_terms<F: Field>(field: &F, a: &Quadric<F>, b: &Quadric<F>, out: &mut HashMap<Quartic, F::Elem>) {
    for (i, j, c) in a.terms() {
        for (k, l, d) in b.terms() {
            let mut key = [*i as u8, *j as u8, *k as u8, *l as u8];
            key.sort_unstable();
            let v = field.mul(c, d);
            let e = out.entry(key).or_insert_with(|| field.zero());
            *e = field.add(e, &v);
        }
    }
}

/// Finds the quadratic relation among exactly 10 quadrics and returns the
/// associated form. Errors with [`Error::NotAMukaiSection`] unless the
/// relation space is one-dimensional.
pub fn recover_quadratic_form<F: Field>(sys: &QuadricSystem<F>) -> Result<RecoveredForm<F>> {
    let f = &sys.field;
    let k = sys.quadrics.len();
    if k != 10 {
        return Err(Error::DimensionMismatch { expected: 10, found: k });
    }
    let pairs: Vec<(usize, usize)> = monomial_pairs(k);
    let products: Vec<HashMap<Quartic, F::Elem>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut m = HashMap::new();
            product_terms(f, &sys.quadrics[a], &sys.quadrics[b], &mut m);
            m.retain(|_, v| !f.is_zero(v));
            m
        })
        .collect();
    let mut monomials: Vec<Quartic> = products.iter().flat_map(|m| m.keys().copied()).collect();
    monomials.sort_unstable();
    monomials.dedup();
    let index: HashMap<Quartic, usize> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // columns are the products, rows the quartic monomials
    let mut mat = Matrix::zeros(f, monomials.len(), pairs.len());
    for (col, m) in products.iter().enumerate() {
        for (key, v) in m {
            mat.set(index[key], col, v.clone());
        }
    }
    let kernel = mat.kernel();
    if kernel.len() != 1 {
        return Err(Error::NotAMukaiSection(kernel.len()));
    }
    let mut relation = kernel.into_iter().next().unwrap();
    let lead = relation.iter().find(|x| !f.is_zero(x)).unwrap().clone();
    let inv = f.inv(&lead).unwrap();
    relation = relation.iter().map(|x| f.mul(x, &inv)).collect();
    let mut gram = Matrix::zeros(f, k, k);
    for (&(a, b), c) in pairs.iter().zip(&relation) {
        if a == b {
            gram.set(a, a, f.add(c, c));
        } else {
            gram.set(a, b, c.clone());
            gram.set(b, a, c.clone());
        }
    }
    Ok(RecoveredForm { relation, gram, scale_ambiguous: true })
}

/// Content-normalized integer Gram matrix of a form recovered over `Q`.
pub fn integral_gram(form: &RecoveredForm<Rationals>) -> Result<Vec<Vec<BigInt>>> {
    let n = form.gram.rows();
    let flat: Vec<BigRational> = (0..n).flat_map(|i| form.gram.row(i).to_vec()).collect();
    let ints = content_normalize(&flat)?;
    Ok(ints.chunks(n).map(|c| c.to_vec()).collect())
}

/// Whether a canonical system is nonzero and has content 1 in every quadric.
pub fn is_primitive(sys: &CanonicalSystem) -> bool {
    sys.contents().iter().all(|&g| g == 1)
        && sys.quadrics.iter().all(|q| q.iter().any(|x| !x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn monomial_indexing() {
        for n in [1usize, 2, 5, 16] {
            for (pos, (i, j)) in monomial_pairs(n).into_iter().enumerate() {
                assert_eq!(monomial_index(n, i, j), pos);
            }
        }
        assert_eq!(num_quadratic_monomials(16), 136);
    }

    #[test]
    fn clifford_quadrics_have_four_unit_terms() {
        for parity in [Parity::Even, Parity::Odd] {
            let sys = clifford_quadrics(parity);
            assert_eq!(sys.quadrics.len(), 10);
            for q in &sys.quadrics {
                let nz: Vec<i64> = q.iter().copied().filter(|&x| x != 0).collect();
                assert_eq!(nz.len(), 4);
                assert!(nz.iter().all(|x| x.abs() == 1));
            }
            assert!(is_primitive(&sys));
        }
    }

    #[test]
    fn vacuum_lies_on_clifford_quadrics() {
        let f = Rationals;
        let sys = clifford_quadrics(Parity::Even).over(&f);
        let s = pure_spinor(&f, &SkewMatrix5::zero(&f), Parity::Even, None).unwrap();
        assert!(sys.vanishes_at(&s.coords));
    }

    #[test]
    fn gradient_is_polarization() {
        let f = PrimeField::new(2).unwrap();
        let sys = clifford_quadrics(Parity::Even).over(&f);
        let x: Vec<u64> = (0..16).map(|i| (i % 3 == 0) as u64).collect();
        for q in &sys.quadrics {
            let g = q.gradient(&f, &x);
            for (k, gk) in g.iter().enumerate() {
                let mut e = vec![0u64; 16];
                e[k] = 1;
                assert_eq!(*gk, q.polar(&f, &x, &e));
            }
        }
    }

    #[test]
    fn random_quadrics_have_no_relation() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let quadrics = (0..10)
            .map(|_| {
                Quadric::from_upper(&f, 16, (0..136).map(|_| f.random(&mut rng)).collect()).unwrap()
            })
            .collect();
        let sys = QuadricSystem { field: f, ambient_dim: 16, quadrics, parity: None, origin: "random".into() };
        assert_eq!(recover_quadratic_form(&sys).unwrap_err(), Error::NotAMukaiSection(0));
    }

    #[test]
    fn canonical_json_round_trip() {
        let sys = clifford_quadrics(Parity::Odd);
        let back = CanonicalSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(sys, back);
        assert!(CanonicalSystem::from_json(r#"{"parity":"even","ambient_dim":3,"quadrics":[[1,2]]}"#).is_err());
    }

    #[test]
    fn interpolation_agrees_with_clifford() {
        for parity in [Parity::Even, Parity::Odd] {
            let sys = interpolate_quadrics(parity, 150, 7).unwrap();
            assert_eq!(sys.quadrics.len(), 10);
            assert!(is_primitive(&sys));
            check_clifford_against(&sys).unwrap();
        }
        assert!(interpolate_quadrics(Parity::Even, 149, 7).is_err());
    }
}
