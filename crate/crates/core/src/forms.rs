//! Nondegenerate quadratic forms over `Q` and their local invariants.
//!
//! Forms are diagonalized and classified through Hilbert symbols. The module
//! can also build a form from prescribed invariants and count signature-vector
//! orbits.
//!
//! The Hasse invariant is `eps_v = prod_{i<j} (a_i, a_j)_v` and the
//! discriminant is `(-1)^{n(n-1)/2} det`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime_u64, legendre, prime_divisors, squarefree_class};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::Matrix;

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Place {
    pub fn parse(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "oo" | "infinity" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Parse(format!("bad place {t:?}")))?;
                if is_prime_u64(p) {
                    Ok(Place::Prime(p))
                } else {
                    Err(Error::Parse(format!("{p} is not prime")))
                }
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Place::parse(&s).map_err(serde::de::Error::custom)
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A diagonal form `<a_1, ..., a_n>` with squarefree integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalForm {
    #[serde(with = "bigint_strings")]
    diag: Vec<BigInt>,
}

impl DiagonalForm {
    pub fn new(entries: &[BigRational]) -> Result<Self> {
        if entries.iter().any(|a| a.is_zero()) {
            return Err(Error::Degenerate("zero diagonal entry".into()));
        }
        Ok(DiagonalForm { diag: entries.iter().map(squarefree_class).collect() })
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        Self::new(&entries.iter().map(|&a| BigRational::from_integer(a.into())).collect::<Vec<_>>())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// `c * f`.
    pub fn scaled(&self, c: &BigRational) -> Result<Self> {
        Self::new(&self.diag.iter().map(|a| c * BigRational::from_integer(a.clone())).collect::<Vec<_>>())
    }

    /// Orthogonal sum.
    pub fn sum(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut diag = self.diag.clone();
        diag.extend(other.diag.iter().cloned());
        DiagonalForm { diag }
    }

    pub fn det_class(&self) -> BigInt {
        square_class_product(&self.diag)
    }

    pub fn disc_class(&self) -> BigInt {
        let n = self.rank();
        let d = self.det_class();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn signature(&self) -> (usize, usize) {
        let neg = self.diag.iter().filter(|a| a.is_negative()).count();
        (self.rank() - neg, neg)
    }

    pub fn matrix(&self) -> Matrix<Rationals> {
        let q = Rationals;
        let mut m = Matrix::zeros(&q, self.rank(), self.rank());
        for (i, a) in self.diag.iter().enumerate() {
            m.set(i, i, BigRational::from_integer(a.clone()));
        }
        m
    }
}

/// Squarefree part of a product of squarefree integers.
fn square_class_product(xs: &[BigInt]) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        let g = acc.gcd(x);
        acc = (&acc / &g) * (x / &g);
    }
    acc
}

fn square_class_mul(a: &BigInt, b: &BigInt) -> BigInt {
    square_class_product(&[a.clone(), b.clone()])
}

/// Congruence diagonalization of a symmetric nondegenerate rational matrix.
pub fn diagonalize(sym: &Matrix<Rationals>) -> Result<DiagonalForm> {
    let n = sym.rows();
    if sym.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: sym.cols() });
    }
    let mut a: Vec<Vec<BigRational>> = sym.row_vecs();
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::Degenerate("matrix is not symmetric".into()));
            }
        }
    }
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = &a[k][c] + &a[j][c];
                    a[k][c] = v;
                }
                for row in a.iter_mut() {
                    let v = &row[k] + &row[j];
                    row[k] = v;
                }
            } else {
                return Err(Error::Degenerate("singular symmetric matrix".into()));
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for c in k..n {
                let v = &a[i][c] - &factor * &a[k][c];
                a[i][c] = v;
            }
            for r in k..n {
                let v = &a[r][i] - &factor * &a[r][k];
                a[r][i] = v;
            }
        }
        diag.push(pivot);
    }
    DiagonalForm::new(&diag)
}

/// Diagonalizes `P^T A P` for a random unimodular-ish integer `P`, giving an
/// independent diagonalization path of the same form.
pub fn diagonalize_randomized<R: Rng + ?Sized>(sym: &Matrix<Rationals>, rng: &mut R) -> Result<DiagonalForm> {
    let q = Rationals;
    let n = sym.rows();
    let p = loop {
        let rows: Vec<Vec<BigRational>> =
            (0..n).map(|_| (0..n).map(|_| q.from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let m = Matrix::from_row_slices(&q, n, &rows);
        if m.rank() == n {
            break m;
        }
    };
    diagonalize(&p.transpose().mul(sym)?.mul(&p)?)
}

fn split_valuation(a: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = a.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

fn parity_bit(x: bool) -> u32 {
    x as u32
}

/// `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, v: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, w) = split_valuation(b, 2);
            let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            let eps = |x: &BigInt| parity_bit(m8(x) % 4 == 3);
            let omega = |x: &BigInt| parity_bit(m8(x) == 3 || m8(x) == 5);
            let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, w) = split_valuation(b, p);
            let pu = BigUint::from(p);
            let mut s = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, &pu);
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, &pu);
            }
            s
        }
    }
}

/// `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> i32 {
    hilbert_symbol_int(&squarefree_class(a), &squarefree_class(b), v)
}

fn legendre_u64(a: i128, p: u64) -> i32 {
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (r as u128, (p - 1) / 2, 1u128);
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Machine-integer version of [`hilbert_symbol_int`].
pub fn hilbert_symbol_small(a: i64, b: i64, v: Place) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    let split = |x: i64, p: u64| {
        let mut x = x as i128;
        let mut k = 0u32;
        while x % p as i128 == 0 {
            x /= p as i128;
            k += 1;
        }
        (k, x)
    };
    match v {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split(a, 2);
            let (beta, w) = split(b, 2);
            let eps = |x: i128| parity_bit(x.rem_euclid(4) == 3);
            let omega = |x: i128| parity_bit(matches!(x.rem_euclid(8), 3 | 5));
            let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split(a, p);
            let (beta, w) = split(b, p);
            let mut s = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre_u64(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre_u64(w, p);
            }
            s
        }
    }
}

fn symbol(a: &BigInt, b: &BigInt, v: Place) -> i32 {
    match (a.to_i64(), b.to_i64()) {
        (Some(x), Some(y)) if x.unsigned_abs() < 1 << 62 && y.unsigned_abs() < 1 << 62 => hilbert_symbol_small(x, y, v),
        _ => hilbert_symbol_int(a, b, v),
    }
}

/// Places where the invariants of forms built from `entries` can be nontrivial.
pub fn relevant_places(entries: &[BigInt]) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = [Place::Prime(2), Place::Infinity].into_iter().collect();
    for a in entries {
        for p in prime_divisors(a) {
            out.insert(Place::Prime(p.to_u64().expect("prime factor fits in u64")));
        }
    }
    out
}

pub fn hasse_invariant(f: &DiagonalForm, v: Place) -> i32 {
    let d = &f.diag;
    let mut e = 1;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            e *= symbol(&d[i], &d[j], v);
        }
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariantProfile {
    pub rank: usize,
    #[serde(with = "bigint_string")]
    pub det: BigInt,
    #[serde(with = "bigint_string")]
    pub disc: BigInt,
    /// Places with `eps_v = -1`, including `inf` when applicable.
    pub hasse_minus: BTreeSet<Place>,
    pub signature: (usize, usize),
}

impl LocalInvariantProfile {
    pub fn finite_hasse_minus(&self) -> BTreeSet<u64> {
        self.hasse_minus
            .iter()
            .filter_map(|v| match v {
                Place::Prime(p) => Some(*p),
                Place::Infinity => None,
            })
            .collect()
    }

    pub fn epsilon(&self, v: Place) -> i32 {
        if self.hasse_minus.contains(&v) {
            -1
        } else {
            1
        }
    }
}

pub fn local_profile(f: &DiagonalForm) -> LocalInvariantProfile {
    let hasse_minus = relevant_places(&f.diag).into_iter().filter(|&v| hasse_invariant(f, v) == -1).collect();
    LocalInvariantProfile {
        rank: f.rank(),
        det: f.det_class(),
        disc: f.disc_class(),
        hasse_minus,
        signature: f.signature(),
    }
}

/// Which determinant convention the predicates and the `q_S` family key on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialityReading {
    /// `disc = (-1)^{n(n-1)/2} det` is a square.
    #[default]
    Disc,
    /// `det` itself is a square.
    Det,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub assumption_a: Option<bool>,
    pub assumption_b: Option<bool>,
    pub clifford_m8: Option<bool>,
}

pub fn predicate_assumptions(f: &DiagonalForm, reading: TrivialityReading) -> Result<Predicates> {
    let profile = local_profile(f);
    match f.rank() {
        10 => {
            let trivial = match reading {
                TrivialityReading::Disc => profile.disc.is_one(),
                TrivialityReading::Det => profile.det.is_one(),
            };
            Ok(Predicates {
                assumption_a: Some(trivial),
                assumption_b: Some(trivial && profile.hasse_minus.is_empty()),
                clifford_m8: None,
            })
        }
        7 => {
            let rep = f.scaled(&BigRational::from_integer(profile.det.clone()))?;
            Ok(Predicates {
                assumption_a: None,
                assumption_b: None,
                clifford_m8: Some(local_profile(&rep).hasse_minus.is_empty()),
            })
        }
        r => Err(Error::WrongRank { expected: "10 or 7".into(), found: r }),
    }
}

/// Whether the squarefree integer `d` is a square in `Q_v`.
pub fn is_local_square(d: &BigInt, v: Place) -> bool {
    match v {
        Place::Infinity => d.is_positive(),
        Place::Prime(2) => d.mod_floor(&BigInt::from(8)).is_one(),
        Place::Prime(p) => {
            let pb = BigInt::from(p);
            !(d % &pb).is_zero() && legendre(d, &BigUint::from(p)) == 1
        }
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentInvariants(msg.into())
}

fn squarefree_candidates(bound: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for m in 1..=bound {
        if (2..=m).take_while(|k| k * k <= m).any(|k| m % (k * k) == 0) {
            continue;
        }
        out.push(m);
        out.push(-m);
    }
    out
}

const SEARCH_BOUND: i64 = 400;

/// Builds a form with the given rank, determinant square class, set of places
/// with Hasse invariant `-1`, and signature.
pub fn construct_with_invariants(
    rank: usize,
    det: &BigInt,
    hasse_minus: &BTreeSet<Place>,
    signature: (usize, usize),
) -> Result<DiagonalForm> {
    let det = squarefree_class(&BigRational::from_integer(det.clone()));
    let (rp, rm) = signature;
    if rank == 0 {
        return Err(inconsistent("rank must be positive"));
    }
    if rp + rm != rank {
        return Err(inconsistent(format!("signature ({rp},{rm}) does not have rank {rank}")));
    }
    if hasse_minus.len() % 2 == 1 {
        return Err(inconsistent("reciprocity: an odd number of places with Hasse invariant -1"));
    }
    if det.is_negative() != (rm % 2 == 1) {
        return Err(inconsistent(format!("det sign vs signature: det {det} with {rm} negative entries")));
    }
    let eps_inf = if (rm * rm.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
    if (eps_inf == -1) != hasse_minus.contains(&Place::Infinity) {
        return Err(inconsistent(format!("eps_inf vs signature: signature ({rp},{rm}) forces eps_inf = {eps_inf}")));
    }
    let target = |v: Place| if hasse_minus.contains(&v) { -1 } else { 1 };
    match rank {
        1 => {
            if !hasse_minus.is_empty() {
                return Err(inconsistent("rank-1 obstruction: a rank-1 form has trivial Hasse invariants"));
            }
            Ok(DiagonalForm { diag: vec![det] })
        }
        2 => {
            // <a, a d>, with eps = (a, -d)
            let minus_d = -det.clone();
            if let Some(v) = hasse_minus.iter().find(|&&v| is_local_square(&minus_d, v)) {
                return Err(inconsistent(format!("rank-2 obstruction: -det is a square at {v}")));
            }
            for a in squarefree_candidates(SEARCH_BOUND) {
                let a = BigInt::from(a);
                let b = square_class_mul(&a, &det);
                let f = DiagonalForm { diag: vec![a, b] };
                if f.signature() == signature && matches_profile(&f, &det, hasse_minus) {
                    return Ok(f);
                }
            }
            Err(Error::SearchExhausted)
        }
        _ => {
            // +-1 block followed by a rank-3 block <a, b, c>
            let m1 = rm.min(rank - 3);
            let p1 = rank - 3 - m1;
            let sg = rm - m1;
            let block = DiagonalForm {
                diag: std::iter::repeat_n(BigInt::one(), p1)
                    .chain(std::iter::repeat_n(-BigInt::one(), m1))
                    .collect(),
            };
            let block_det = block.det_class();
            let dg = square_class_mul(&det, &block_det);
            let mut places: BTreeSet<Place> = hasse_minus.clone();
            places.extend(relevant_places(std::slice::from_ref(&det)));
            let need = |v: Place, g_eps: i32| {
                let d_eps = hasse_invariant(&block, v) * symbol(&block_det, &dg, v);
                g_eps * d_eps == target(v)
            };
            let cands = squarefree_candidates(SEARCH_BOUND);
            for &a in &cands {
                for &b in &cands {
                    let (a, b) = (BigInt::from(a), BigInt::from(b));
                    let c = square_class_product(&[a.clone(), b.clone(), dg.clone()]);
                    let negs = [&a, &b, &c].iter().filter(|x| x.is_negative()).count();
                    if negs != sg {
                        continue;
                    }
                    let g = DiagonalForm { diag: vec![a.clone(), b.clone(), c.clone()] };
                    let mut check = places.clone();
                    check.extend(relevant_places(&g.diag));
                    if check.iter().all(|&v| need(v, hasse_invariant(&g, v))) {
                        let f = block.sum(&g);
                        debug_assert!(matches_profile(&f, &det, hasse_minus));
                        return Ok(f);
                    }
                }
            }
            Err(Error::SearchExhausted)
        }
    }
}

fn matches_profile(f: &DiagonalForm, det: &BigInt, hasse_minus: &BTreeSet<Place>) -> bool {
    let p = local_profile(f);
    &p.det == det && &p.hasse_minus == hasse_minus
}

/// Whether `f` and `g` are isometric over `Q` (Hasse-Minkowski).
pub fn are_isometric(f: &DiagonalForm, g: &DiagonalForm) -> bool {
    let (pf, pg) = (local_profile(f), local_profile(g));
    pf.rank == pg.rank && pf.det == pg.det && pf.signature == pg.signature && pf.hasse_minus == pg.hasse_minus
}

/// Whether `g` is isometric to `c f` for some nonzero rational `c`.
pub fn are_similar(f: &DiagonalForm, g: &DiagonalForm) -> bool {
    let n = f.rank();
    if n != g.rank() {
        return false;
    }
    let (pf, pg) = (local_profile(f), local_profile(g));
    if n % 2 == 1 {
        let c = square_class_mul(&pf.det, &pg.det);
        return f.scaled(&BigRational::from_integer(c)).map(|h| are_isometric(&h, g)).unwrap_or(false);
    }
    if pf.det != pg.det {
        return false;
    }
    // eps(c f) = eps(f) (c, disc f); look for a sign and a square class c
    let disc = pf.disc.clone();
    let mut places: BTreeSet<Place> = pf.hasse_minus.union(&pg.hasse_minus).copied().collect();
    places.insert(Place::Infinity);
    let t = |v: Place| pf.epsilon(v) * pg.epsilon(v);
    let finite_ok = places
        .iter()
        .filter(|v| matches!(v, Place::Prime(_)))
        .all(|&v| t(v) == 1 || !is_local_square(&disc, v));
    let product: i32 = places.iter().map(|&v| t(v)).product();
    if !finite_ok || product != 1 {
        return false;
    }
    let (sp, sm) = pf.signature;
    [1i64, -1].iter().any(|&sign| {
        let sig_ok = if sign > 0 { pg.signature == (sp, sm) } else { pg.signature == (sm, sp) };
        let inf_symbol = if sign < 0 && disc.is_negative() { -1 } else { 1 };
        sig_ok && inf_symbol == t(Place::Infinity)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Rank-10 forms with trivial discriminant and split even Clifford algebra.
    TenfoldO1,
    /// Rank-7 forms whose det-square representative has split even Clifford algebra.
    Ninefold,
}

impl Family {
    pub fn rank(self) -> usize {
        match self {
            Family::TenfoldO1 => 10,
            Family::Ninefold => 7,
        }
    }

    /// Negative indices allowed at one real place.
    pub fn admissible_indices(self) -> Vec<usize> {
        let n = self.rank();
        (0..=n)
            .filter(|&s| {
                let eps_inf_trivial = (s * s.saturating_sub(1) / 2) % 2 == 0;
                let det_sign = if s % 2 == 0 { 1 } else { -1 };
                match self {
                    // disc = (-1)^45 det must be positive: det sign -1
                    Family::TenfoldO1 => det_sign == -1 && eps_inf_trivial,
                    Family::Ninefold => det_sign == 1 && eps_inf_trivial,
                }
            })
            .collect()
    }

    /// Whether scaling by a negative number preserves the family at a real place.
    pub fn sign_flips_allowed(self) -> bool {
        matches!(self, Family::TenfoldO1)
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "tenfold" | "tenfold-o1" | "tenfold-O1" => Ok(Family::TenfoldO1),
            "ninefold" => Ok(Family::Ninefold),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRepresentative {
    pub negative_index: usize,
    pub form: DiagonalForm,
    pub profile: LocalInvariantProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityCount {
    pub family: Family,
    pub r: usize,
    pub admissible_indices: Vec<usize>,
    pub admissible_vectors: u64,
    pub orbits: u64,
    /// Explicit forms over `Q` (only for `r = 1`).
    pub representatives: Vec<ClassRepresentative>,
    pub representatives_pairwise_non_similar: Option<bool>,
}

/// Counts orbits of admissible signature vectors under the similarity action.
pub fn count_similarity_classes(family: Family, r: usize) -> Result<SimilarityCount> {
    if r == 0 || r > 12 {
        return Err(Error::Degenerate(format!("r = {r} outside 1..=12")));
    }
    let n = family.rank();
    let allowed = family.admissible_indices();
    let k = allowed.len();
    let canon = |s: usize| if family.sign_flips_allowed() { s.min(n - s) } else { s };
    let mut orbits: BTreeSet<Vec<usize>> = BTreeSet::new();
    let total = (k as u64).pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let mut rep = Vec::with_capacity(r);
        for _ in 0..r {
            let s = allowed[(c % k as u64) as usize];
            c /= k as u64;
            let flipped = n - s;
            if family.sign_flips_allowed() && !allowed.contains(&flipped) {
                return Err(Error::Corrupted("admissible set not closed under the action".into()));
            }
            rep.push(canon(s));
        }
        orbits.insert(rep);
    }
    let mut representatives = Vec::new();
    let mut pairwise = None;
    if r == 1 {
        for orbit in &orbits {
            let s = orbit[0];
            let det = match family {
                Family::TenfoldO1 => -BigInt::one(),
                Family::Ninefold => BigInt::one(),
            };
            let form = construct_with_invariants(n, &det, &BTreeSet::new(), (n - s, s))?;
            representatives.push(ClassRepresentative { negative_index: s, profile: local_profile(&form), form });
        }
        pairwise = Some(
            (0..representatives.len())
                .all(|i| (i + 1..representatives.len()).all(|j| !are_similar(&representatives[i].form, &representatives[j].form))),
        );
    }
    Ok(SimilarityCount {
        family,
        r,
        admissible_indices: allowed,
        admissible_vectors: total,
        orbits: orbits.len() as u64,
        representatives,
        representatives_pairwise_non_similar: pairwise,
    })
}

/// The rank-10 form `q_S` with finite Hasse set `S`. Under the disc reading it
/// has det class `-1` and signature `(9,1)`; under the det reading det class
/// `1` and signature `(10,0)`.
pub fn q_s(set: &BTreeSet<u64>, reading: TrivialityReading) -> Result<DiagonalForm> {
    if let Some(p) = set.iter().find(|&&p| !is_prime_u64(p)) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    if set.len() % 2 == 1 {
        return Err(inconsistent("reciprocity: S must have even cardinality"));
    }
    let places: BTreeSet<Place> = set.iter().map(|&p| Place::Prime(p)).collect();
    match reading {
        TrivialityReading::Disc => construct_with_invariants(10, &-BigInt::one(), &places, (9, 1)),
        TrivialityReading::Det => construct_with_invariants(10, &BigInt::one(), &places, (10, 0)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsFamilyReport {
    pub reading: TrivialityReading,
    pub sets: Vec<BTreeSet<u64>>,
    pub forms: Vec<DiagonalForm>,
    pub profiles: Vec<LocalInvariantProfile>,
    /// Pairs of indices that turned out similar.
    pub similar_pairs: Vec<(usize, usize)>,
    pub pairwise_non_similar: bool,
}

pub fn qs_family(sets: &[BTreeSet<u64>], reading: TrivialityReading) -> Result<QsFamilyReport> {
    let forms: Vec<DiagonalForm> = sets.iter().map(|s| q_s(s, reading)).collect::<Result<_>>()?;
    let profiles = forms.iter().map(local_profile).collect();
    let mut similar_pairs = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if are_similar(&forms[i], &forms[j]) {
                similar_pairs.push((i, j));
            }
        }
    }
    Ok(QsFamilyReport {
        reading,
        sets: sets.to_vec(),
        forms,
        profiles,
        pairwise_non_similar: similar_pairs.is_empty(),
        similar_pairs,
    })
}

/// A random nondegenerate diagonal form with entries of absolute value at most `bound`.
pub fn random_form<R: Rng + ?Sized>(rank: usize, bound: i64, rng: &mut R) -> DiagonalForm {
    let entries: Vec<i64> = (0..rank)
        .map(|_| loop {
            let a = rng.gen_range(-bound..=bound);
            if a != 0 {
                break a;
            }
        })
        .collect();
    DiagonalForm::from_integers(&entries).expect("nonzero entries")
}
