//! The split quadratic space `V = k^10`, its half-spinor modules and the
//! spinor pairing.
//!
//! Conventions, fixed once here:
//!
//! * `q(x) = x1 x2 + x3 x4 + ... + x9 x10`, with polar form
//!   `b(u, v) = q(u + v) - q(u) - q(v)`, so `b(e_{2k-1}, e_{2k}) = 1`.
//! * Spinors live in the exterior algebra on `f_1..f_5`; the coordinate
//!   `xi_T` is the coefficient of `f_T = f_{t1} ^ ... ^ f_{tm}` (ascending).
//! * `gamma(e_{2k})` is left exterior multiplication by `f_k` and
//!   `gamma(e_{2k-1})` is contraction against `f_k`; both carry the sign
//!   `(-1)^{#{t in T : t < k}}`. With these,
//!   `gamma(u) gamma(v) + gamma(v) gamma(u) = b(u, v) Id`.
//! * The pairing of an odd `t` with an even `s` is the top-degree coefficient
//!   of `rev(t) ^ s`, where `rev` reverses the order of wedge factors.
//!   It satisfies `beta(gamma(v) x, y) = beta(x, gamma(v) y)`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::skew::{pfaffian4, SkewMatrix5, PAIRS};
use crate::subspace::LinearSubspace;

pub const DIM_V: usize = 10;
pub const DIM_S: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn of_subset(mask: u8) -> Parity {
        if mask.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

const fn mask(elems: &[u8]) -> u8 {
    let mut m = 0;
    let mut i = 0;
    while i < elems.len() {
        m |= 1 << (elems[i] - 1);
        i += 1;
    }
    m
}

/// Even subsets of {1..5}: the empty set, the ten pairs, the five 4-sets.
pub const EVEN_SUBSETS: [u8; 16] = [
    0,
    mask(&[1, 2]), mask(&[1, 3]), mask(&[1, 4]), mask(&[1, 5]), mask(&[2, 3]),
    mask(&[2, 4]), mask(&[2, 5]), mask(&[3, 4]), mask(&[3, 5]), mask(&[4, 5]),
    mask(&[1, 2, 3, 4]), mask(&[1, 2, 3, 5]), mask(&[1, 2, 4, 5]), mask(&[1, 3, 4, 5]), mask(&[2, 3, 4, 5]),
];

/// Odd subsets of {1..5}: the five singletons, the ten triples, {1,2,3,4,5}.
pub const ODD_SUBSETS: [u8; 16] = [
    mask(&[1]), mask(&[2]), mask(&[3]), mask(&[4]), mask(&[5]),
    mask(&[1, 2, 3]), mask(&[1, 2, 4]), mask(&[1, 2, 5]), mask(&[1, 3, 4]), mask(&[1, 3, 5]),
    mask(&[1, 4, 5]), mask(&[2, 3, 4]), mask(&[2, 3, 5]), mask(&[2, 4, 5]), mask(&[3, 4, 5]),
    mask(&[1, 2, 3, 4, 5]),
];

/// The canonical coordinate order of one half-spinor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinorBasis {
    pub parity: Parity,
}

impl SpinorBasis {
    pub fn new(parity: Parity) -> Self {
        SpinorBasis { parity }
    }

    pub fn subsets(&self) -> &'static [u8; 16] {
        match self.parity {
            Parity::Even => &EVEN_SUBSETS,
            Parity::Odd => &ODD_SUBSETS,
        }
    }

    /// Position of a subset mask in this basis.
    pub fn index_of(&self, mask: u8) -> Option<usize> {
        self.subsets().iter().position(|&m| m == mask)
    }

    /// Coordinate name, e.g. `xi_{1345}`, `xi_{}` for the empty set.
    pub fn label(&self, index: usize) -> String {
        format!("xi_{{{}}}", subset_digits(self.subsets()[index]))
    }
}

/// Digits of a subset mask, e.g. `0b10011 -> "125"`.
pub fn subset_digits(mask: u8) -> String {
    (1..=5).filter(|k| mask >> (k - 1) & 1 == 1).map(|k| char::from(b'0' + k as u8)).collect()
}

/// Parses digits like `"2345"` (or `""`) into a subset mask.
pub fn parse_subset(digits: &str) -> Result<u8> {
    let mut m = 0u8;
    for ch in digits.chars() {
        let d = ch.to_digit(10).filter(|d| (1..=5).contains(d)).ok_or_else(|| {
            Error::Parse(format!("bad subset digit {ch:?} in {digits:?}"))
        })?;
        m |= 1 << (d - 1);
    }
    Ok(m)
}

fn index_of(parity: Parity, mask: u8) -> usize {
    SpinorBasis::new(parity).index_of(mask).expect("subset of matching parity")
}

/// A vector in `S_+` (even) or `S_-` (odd), in [`SpinorBasis`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpinor<F: Field> {
    pub parity: Parity,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> HalfSpinor<F> {
    pub fn zero(field: &F, parity: Parity) -> Self {
        HalfSpinor { parity, coords: vec![field.zero(); DIM_S] }
    }

    pub fn new(parity: Parity, coords: Vec<F::Elem>) -> Result<Self> {
        if coords.len() != DIM_S {
            return Err(Error::DimensionMismatch { expected: DIM_S, found: coords.len() });
        }
        Ok(HalfSpinor { parity, coords })
    }

    /// Builds a spinor from `(subset mask, value)` pairs.
    pub fn from_subsets(field: &F, parity: Parity, entries: &[(u8, F::Elem)]) -> Result<Self> {
        let mut s = Self::zero(field, parity);
        for (m, v) in entries {
            if Parity::of_subset(*m) != parity {
                return Err(Error::ParityMismatch { expected: parity.name(), found: Parity::of_subset(*m).name() });
            }
            let i = index_of(parity, *m);
            s.coords[i] = field.add(&s.coords[i], v);
        }
        Ok(s)
    }

    pub fn coord(&self, mask: u8) -> &F::Elem {
        &self.coords[index_of(self.parity, mask)]
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }
}

/// Sign `(-1)^{#{t in T : t < k}}`.
fn below_sign(set: u8, k: usize) -> i8 {
    if (set & ((1u8 << (k - 1)) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Action of one generator on basis vectors: `image[i] = Some((j, sign))`
/// means `gamma(e) xi_i = sign * xi_j` in the opposite parity.
type SignedMap = [Option<(u8, i8)>; 16];

#[derive(Debug)]
pub struct GammaTable {
    /// `maps[j - 1][parity]` for generator `e_j`; parity 0 = from even.
    maps: [[SignedMap; 2]; DIM_V],
}

impl GammaTable {
    fn build() -> Self {
        let maps = std::array::from_fn(|g| {
            let j = g + 1;
            let k = j.div_ceil(2);
            let bit = 1u8 << (k - 1);
            let wedge = j % 2 == 0;
            let build = |parity: Parity| -> SignedMap {
                let basis = SpinorBasis::new(parity);
                std::array::from_fn(|i| {
                    let t = basis.subsets()[i];
                    let has = t & bit != 0;
                    if wedge == has {
                        None
                    } else {
                        let image = t ^ bit;
                        Some((index_of(parity.flip(), image) as u8, below_sign(t, k)))
                    }
                })
            };
            [build(Parity::Even), build(Parity::Odd)]
        });
        GammaTable { maps }
    }

    pub fn get() -> &'static GammaTable {
        static TABLE: OnceLock<GammaTable> = OnceLock::new();
        TABLE.get_or_init(GammaTable::build)
    }

    fn map(&self, j: usize, parity: Parity) -> &SignedMap {
        &self.maps[j - 1][match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }]
    }

    /// Integer matrix of `gamma(e_j)` from the given parity to the other one.
    pub fn matrix(&self, j: usize, from: Parity) -> [[i8; 16]; 16] {
        let mut m = [[0i8; 16]; 16];
        for (col, img) in self.map(j, from).iter().enumerate() {
            if let Some((row, sign)) = img {
                m[*row as usize][col] = *sign;
            }
        }
        m
    }
}

fn signed<F: Field>(field: &F, v: &F::Elem, sign: i8) -> F::Elem {
    if sign > 0 {
        v.clone()
    } else {
        field.neg(v)
    }
}

/// `gamma(e_j) s` for `j` in 1..=10.
pub fn gamma_apply<F: Field>(field: &F, j: usize, s: &HalfSpinor<F>) -> HalfSpinor<F> {
    assert!((1..=DIM_V).contains(&j), "generator index {j} out of range");
    let mut out = HalfSpinor::zero(field, s.parity.flip());
    for (i, img) in GammaTable::get().map(j, s.parity).iter().enumerate() {
        if let Some((row, sign)) = img {
            out.coords[*row as usize] = signed(field, &s.coords[i], *sign);
        }
    }
    out
}

/// `gamma(v) s` for an arbitrary vector `v` of `V`.
pub fn gamma_vector_apply<F: Field>(field: &F, v: &[F::Elem], s: &HalfSpinor<F>) -> HalfSpinor<F> {
    assert_eq!(v.len(), DIM_V);
    let mut out = HalfSpinor::zero(field, s.parity.flip());
    for (j, c) in v.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let g = gamma_apply(field, j + 1, s);
        for (o, x) in out.coords.iter_mut().zip(&g.coords) {
            *o = field.add(o, &field.mul(c, x));
        }
    }
    out
}

/// `q(x) = sum_k x_{2k-1} x_{2k}`.
pub fn q_value<F: Field>(field: &F, v: &[F::Elem]) -> F::Elem {
    (0..5).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&v[2 * k], &v[2 * k + 1])))
}

/// Polar form `b(u, v) = q(u + v) - q(u) - q(v)`.
pub fn polar<F: Field>(field: &F, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
    (0..5).fold(field.zero(), |acc, k| {
        let t = field.add(&field.mul(&u[2 * k], &v[2 * k + 1]), &field.mul(&u[2 * k + 1], &v[2 * k]));
        field.add(&acc, &t)
    })
}

/// The big-cell pure spinor `exp(sum a_ij f_i ^ f_j) = 1 + a_ij xi_ij + Pf_ijkl xi_ijkl`.
pub fn even_pure_spinor<F: Field>(field: &F, a: &SkewMatrix5<F::Elem>) -> HalfSpinor<F> {
    let mut coords = Vec::with_capacity(DIM_S);
    coords.push(field.one());
    coords.extend(a.upper().iter().cloned());
    for rows in [[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]] {
        coords.push(pfaffian4(field, a, rows).expect("valid subset"));
    }
    HalfSpinor { parity: Parity::Even, coords }
}

/// Pure spinor from a skew matrix: the big-cell spinor for even parity, and
/// its image under `gamma(translator)` for odd parity.
pub fn pure_spinor<F: Field>(
    field: &F,
    a: &SkewMatrix5<F::Elem>,
    parity: Parity,
    translator: Option<&[F::Elem]>,
) -> Result<HalfSpinor<F>> {
    let even = even_pure_spinor(field, a);
    match parity {
        Parity::Even => Ok(even),
        Parity::Odd => {
            let v = translator.ok_or(Error::NonInvertibleTranslator)?;
            if v.len() != DIM_V {
                return Err(Error::DimensionMismatch { expected: DIM_V, found: v.len() });
            }
            if field.is_zero(&q_value(field, v)) {
                return Err(Error::NonInvertibleTranslator);
            }
            Ok(gamma_vector_apply(field, v, &even))
        }
    }
}

/// The default odd translator `e1 + e2`, with `q = 1`.
pub fn default_translator<F: Field>(field: &F) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); DIM_V];
    v[0] = field.one();
    v[1] = field.one();
    v
}

/// Pure spinor in the chart `{xi_T != 0}`: the big-cell spinor of `a`
/// translated by `prod_{k in T} gamma(e_{2k-1} + e_{2k})`, applied for descending `k`.
/// The parity is that of `T`; the 16 charts of each parity cover the variety.
pub fn chart_pure_spinor<F: Field>(field: &F, a: &SkewMatrix5<F::Elem>, chart: u8) -> HalfSpinor<F> {
    let mut s = even_pure_spinor(field, a);
    for k in (1..=5).rev() {
        if chart >> (k - 1) & 1 == 1 {
            let mut v = vec![field.zero(); DIM_V];
            v[2 * k - 2] = field.one();
            v[2 * k - 1] = field.one();
            s = gamma_vector_apply(field, &v, &s);
        }
    }
    s
}

/// `{v in V : gamma(v) s = 0}`, tagged with whether `s` is pure.
#[derive(Clone, Debug)]
pub enum Annihilator<F: Field> {
    Pure(LinearSubspace<F>),
    Impure { dimension: usize, subspace: LinearSubspace<F> },
}

impl<F: Field> Annihilator<F> {
    pub fn subspace(&self) -> &LinearSubspace<F> {
        match self {
            Annihilator::Pure(s) | Annihilator::Impure { subspace: s, .. } => s,
        }
    }
    pub fn dimension(&self) -> usize {
        self.subspace().dim()
    }
    pub fn is_pure(&self) -> bool {
        matches!(self, Annihilator::Pure(_))
    }
}

pub fn annihilator_of<F: Field>(field: &F, s: &HalfSpinor<F>) -> Result<Annihilator<F>> {
    if s.is_zero(field) {
        return Err(Error::Degenerate("zero spinor has no annihilator".into()));
    }
    // columns: gamma(e_j) s
    let images: Vec<HalfSpinor<F>> = (1..=DIM_V).map(|j| gamma_apply(field, j, s)).collect();
    let mut m = Matrix::zeros(field, DIM_S, DIM_V);
    for (j, img) in images.iter().enumerate() {
        for (r, x) in img.coords.iter().enumerate() {
            m.set(r, j, x.clone());
        }
    }
    let sub = LinearSubspace::from_spanning(field, DIM_V, &m.kernel());
    Ok(if sub.dim() == 5 {
        Annihilator::Pure(sub)
    } else {
        Annihilator::Impure { dimension: sub.dim(), subspace: sub }
    })
}

fn permutation_sign(seq: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// The 16x16 integer matrix `P` of the spinor pairing: `beta(t, s) = t^T P s`
/// with rows indexed by the odd basis and columns by the even basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub entries: [[i8; 16]; 16],
}

impl PairingMatrix {
    pub fn get() -> &'static PairingMatrix {
        static P: OnceLock<PairingMatrix> = OnceLock::new();
        P.get_or_init(|| {
            let mut entries = [[0i8; 16]; 16];
            for (i, &t) in ODD_SUBSETS.iter().enumerate() {
                let comp = 0b11111 ^ t;
                let j = index_of(Parity::Even, comp);
                let elems = |m: u8| (1..=5).filter(move |k| m >> (k - 1) & 1 == 1);
                let seq: Vec<usize> = elems(t).chain(elems(comp)).collect();
                let n = t.count_ones();
                let rev = if (n * (n.saturating_sub(1)) / 2) % 2 == 0 { 1 } else { -1 };
                entries[i][j] = rev * permutation_sign(&seq);
            }
            PairingMatrix { entries }
        })
    }

    pub fn to_matrix<F: Field>(&self, field: &F) -> Matrix<F> {
        let rows = self.entries.iter().map(|r| r.iter().map(|&x| field.from_i64(x as i64)).collect()).collect();
        Matrix::from_rows(field, rows).expect("square")
    }

    /// The linear functional `t -> beta(t, s)` on `S_-`, as a coefficient row.
    pub fn functional_on_odd<F: Field>(&self, field: &F, s: &[F::Elem]) -> Vec<F::Elem> {
        (0..DIM_S)
            .map(|i| {
                let j = self.entries[i].iter().position(|&x| x != 0).unwrap();
                signed(field, &s[j], self.entries[i][j])
            })
            .collect()
    }

    /// The odd spinor `t` with `beta(t, .) = h` for a functional `h` on `S_+`,
    /// i.e. `t = P^{-T} h`.
    pub fn transport_functional<F: Field>(&self, field: &F, h: &[F::Elem]) -> Vec<F::Elem> {
        // P is a signed permutation, so P^{-T} = P.
        let mut t = vec![field.zero(); DIM_S];
        for i in 0..DIM_S {
            let j = self.entries[i].iter().position(|&x| x != 0).unwrap();
            t[i] = signed(field, &h[j], self.entries[i][j]);
        }
        t
    }
}

/// `beta(t, s)` for odd `t` and even `s`.
pub fn spinor_pairing<F: Field>(field: &F, t: &HalfSpinor<F>, s: &HalfSpinor<F>) -> Result<F::Elem> {
    if t.parity != Parity::Odd {
        return Err(Error::ParityMismatch { expected: "odd", found: t.parity.name() });
    }
    if s.parity != Parity::Even {
        return Err(Error::ParityMismatch { expected: "even", found: s.parity.name() });
    }
    let p = PairingMatrix::get();
    let mut acc = field.zero();
    for (i, row) in p.entries.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 {
                acc = field.add(&acc, &signed(field, &field.mul(&t.coords[i], &s.coords[j]), x));
            }
        }
    }
    Ok(acc)
}

/// Standard basis vector `e_j` of `V` (1-based).
pub fn basis_vector<F: Field>(field: &F, j: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); DIM_V];
    v[j - 1] = field.one();
    v
}

/// The index pairs of the stored skew entries.
pub fn skew_pairs() -> &'static [(usize, usize); 10] {
    &PAIRS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vacuum<F: Field>(f: &F) -> HalfSpinor<F> {
        HalfSpinor::from_subsets(f, Parity::Even, &[(0, f.one())]).unwrap()
    }

    #[test]
    fn basis_orders() {
        assert_eq!(SpinorBasis::new(Parity::Even).label(15), "xi_{2345}");
        assert_eq!(SpinorBasis::new(Parity::Odd).label(15), "xi_{12345}");
        for (i, &m) in EVEN_SUBSETS.iter().enumerate() {
            assert_eq!(m.count_ones() % 2, 0);
            assert_eq!(SpinorBasis::new(Parity::Even).index_of(m), Some(i));
        }
        for &m in &ODD_SUBSETS {
            assert_eq!(m.count_ones() % 2, 1);
        }
        assert_eq!(parse_subset("2345").unwrap(), EVEN_SUBSETS[15]);
    }

    #[test]
    fn wedge_and_contract_on_vacuum() {
        let f = Rationals;
        let g2 = gamma_apply(&f, 2, &vacuum(&f));
        assert_eq!(g2.parity, Parity::Odd);
        assert_eq!(*g2.coord(mask(&[1])), f.one());
        assert_eq!(g2.coords.iter().filter(|c| !f.is_zero(c)).count(), 1);
        assert!(gamma_apply(&f, 1, &vacuum(&f)).is_zero(&f));
    }

    fn clifford_relations_hold<F: Field>(f: &F) {
        let t = GammaTable::get();
        for i in 1..=10 {
            for j in i..=10 {
                let b = polar(f, &basis_vector(f, i), &basis_vector(f, j));
                for from in [Parity::Even, Parity::Odd] {
                    let (gi_f, gj_f) = (t.matrix(i, from), t.matrix(j, from));
                    let (gi_b, gj_b) = (t.matrix(i, from.flip()), t.matrix(j, from.flip()));
                    for r in 0..16 {
                        for c in 0..16 {
                            let mut acc = 0i64;
                            for k in 0..16 {
                                acc += gi_b[r][k] as i64 * gj_f[k][c] as i64 + gj_b[r][k] as i64 * gi_f[k][c] as i64;
                            }
                            let expect = if r == c { b.clone() } else { f.zero() };
                            assert_eq!(f.from_i64(acc), expect, "generators {i},{j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn clifford_relations_all_test_fields() {
        clifford_relations_hold(&Rationals);
        for p in [2, 3, 5, 7, 101] {
            clifford_relations_hold(&PrimeField::new(p).unwrap());
        }
    }

    #[test]
    fn anticommutator_e1_e2_is_identity_on_random_spinors() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s = HalfSpinor::new(Parity::Even, (0..16).map(|_| f.random(&mut rng)).collect()).unwrap();
            let a = gamma_apply(&f, 1, &gamma_apply(&f, 2, &s));
            let b = gamma_apply(&f, 2, &gamma_apply(&f, 1, &s));
            let sum: Vec<u64> = a.coords.iter().zip(&b.coords).map(|(x, y)| f.add(x, y)).collect();
            assert_eq!(sum, s.coords);
        }
    }

    #[test]
    fn pure_spinor_examples() {
        let f = Rationals;
        let s = pure_spinor(&f, &SkewMatrix5::zero(&f), Parity::Even, None).unwrap();
        assert_eq!(s, vacuum(&f));
        let mut a = SkewMatrix5::zero(&f);
        a.set_upper(1, 2, f.one());
        let s = even_pure_spinor(&f, &a);
        assert_eq!(*s.coord(0), f.one());
        assert_eq!(*s.coord(mask(&[1, 2])), f.one());
        assert!(s.coords[11..].iter().all(|c| f.is_zero(c)));
        let zero_v = vec![f.zero(); 10];
        assert_eq!(pure_spinor(&f, &a, Parity::Odd, Some(&zero_v)), Err(Error::NonInvertibleTranslator));
        assert!(pure_spinor(&f, &a, Parity::Odd, None).is_err());
    }

    #[test]
    fn vacuum_annihilator_is_span_of_contractions() {
        let f = Rationals;
        let ann = annihilator_of(&f, &vacuum(&f)).unwrap();
        assert!(ann.is_pure());
        let expected = LinearSubspace::from_spanning(
            &f,
            10,
            &[1, 3, 5, 7, 9].iter().map(|&j| basis_vector(&f, j)).collect::<Vec<_>>(),
        );
        assert!(ann.subspace().same_span(&expected));
    }

    #[test]
    fn non_pure_spinor_has_small_annihilator() {
        let f = Rationals;
        let s = HalfSpinor::from_subsets(&f, Parity::Even, &[(0, f.one()), (mask(&[1, 2, 3, 4]), f.one())]).unwrap();
        let ann = annihilator_of(&f, &s).unwrap();
        assert!(!ann.is_pure());
        // only e9 (contraction against f5) and e10 (wedge with f5) remain candidates;
        // exterior multiplication by f5 does not kill 1 + f1234, contraction does.
        assert_eq!(ann.dimension(), 1);
        assert!(annihilator_of(&f, &HalfSpinor::zero(&f, Parity::Even)).is_err());
    }

    fn is_isotropic<F: Field>(f: &F, sub: &LinearSubspace<F>) -> bool {
        let rows = sub.basis().row_vecs();
        rows.iter().all(|u| rows.iter().all(|v| f.is_zero(&polar(f, u, v)))) && rows.iter().all(|u| f.is_zero(&q_value(f, u)))
    }

    #[test]
    fn random_pure_spinors_have_isotropic_annihilators() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..100 {
                let a = SkewMatrix5::random(&f, &mut rng);
                let s = even_pure_spinor(&f, &a);
                let ann = annihilator_of(&f, &s).unwrap();
                assert!(ann.is_pure());
                assert!(is_isotropic(&f, ann.subspace()));
            }
        }
    }

    #[test]
    fn gamma_images_of_pure_spinors_stay_pure() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut checked = 0;
        while checked < 100 {
            let a = SkewMatrix5::random(&f, &mut rng);
            let s = even_pure_spinor(&f, &a);
            let v: Vec<u64> = (0..10).map(|_| f.random(&mut rng)).collect();
            if q_value(&f, &v) == 0 {
                continue;
            }
            let t = gamma_vector_apply(&f, &v, &s);
            assert!(annihilator_of(&f, &t).unwrap().is_pure());
            checked += 1;
        }
    }

    #[test]
    fn chart_spinors_are_pure_with_nonzero_chart_coordinate() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for chart in 0u8..32 {
            let a = SkewMatrix5::random(&f, &mut rng);
            let s = chart_pure_spinor(&f, &a, chart);
            assert_eq!(s.parity, Parity::of_subset(chart));
            assert!(!f.is_zero(s.coord(chart)));
            assert!(annihilator_of(&f, &s).unwrap().is_pure());
        }
    }

    #[test]
    fn pairing_examples() {
        let f = Rationals;
        let top = HalfSpinor::from_subsets(&f, Parity::Odd, &[(0b11111, f.one())]).unwrap();
        let v = spinor_pairing(&f, &top, &vacuum(&f)).unwrap();
        assert!(v == f.one() || v == f.neg(&f.one()));
        let single = HalfSpinor::from_subsets(&f, Parity::Odd, &[(1, f.one())]).unwrap();
        assert!(f.is_zero(&spinor_pairing(&f, &single, &vacuum(&f)).unwrap()));
        assert!(spinor_pairing(&f, &vacuum(&f), &vacuum(&f)).is_err());
        let p = PairingMatrix::get();
        assert_eq!(p.to_matrix(&f).rank(), 16);
        for r in 0..16 {
            assert_eq!(p.entries[r].iter().filter(|&&x| x != 0).count(), 1);
            assert_eq!((0..16).filter(|&c| p.entries[c][r] != 0).count(), 1);
        }
    }

    /// beta(gamma(v) x, y) = beta(x, gamma(v) y) for x odd, y odd (both sides
    /// pair an odd with an even spinor after one gamma).
    #[test]
    fn pairing_is_gamma_symmetric() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = HalfSpinor::new(Parity::Even, (0..16).map(|_| f.random(&mut rng)).collect()).unwrap();
            let y = HalfSpinor::new(Parity::Even, (0..16).map(|_| f.random(&mut rng)).collect()).unwrap();
            for j in 1..=10 {
                let lhs = spinor_pairing(&f, &gamma_apply(&f, j, &x), &y).unwrap();
                let rhs = spinor_pairing(&f, &gamma_apply(&f, j, &y), &x).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transport_inverts_functional() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = PairingMatrix::get();
        let h: Vec<u64> = (0..16).map(|_| f.random(&mut rng)).collect();
        let t = HalfSpinor::new(Parity::Odd, p.transport_functional(&f, &h)).unwrap();
        for j in 0..16 {
            let mut e = HalfSpinor::zero(&f, Parity::Even);
            e.coords[j] = 1;
            assert_eq!(spinor_pairing(&f, &t, &e).unwrap(), h[j]);
        }
    }
}
