//! Buchberger's algorithm for homogeneous ideals under grevlex, together with
//! Hilbert series of monomial ideals used for emptiness certificates.
//!
//! Monomials pack one exponent byte per variable into a `u128` (variable `i`
//! in byte `i`), so at most 16 variables and exponents below 128 are allowed.
//! Over `Q`, every basis element is made monic, and the primes dividing the
//! leading coefficients used for normalization (and the input denominators)
//! are recorded: away from those primes the whole run reduces verbatim mod p.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quadrics::QuadricSystem;

pub const MAX_VARS: usize = 16;
const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: u128,
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Self {
        assert!(i < MAX_VARS && e < 128);
        Monomial { exps: (e as u128) << (8 * i), deg: e as u32 }
    }

    pub fn from_exponents(e: &[u32]) -> Result<Self> {
        if e.len() > MAX_VARS {
            return Err(Error::DimensionMismatch { expected: MAX_VARS, found: e.len() });
        }
        let mut exps = 0u128;
        for (i, &x) in e.iter().enumerate() {
            if x >= 128 {
                return Err(Error::Degenerate(format!("exponent {x} exceeds 127")));
            }
            exps |= (x as u128) << (8 * i);
        }
        Ok(Monomial { exps, deg: e.iter().sum() })
    }

    pub fn exponent(&self, i: usize) -> u32 {
        ((self.exps >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps = self.exps + o.exps;
        assert!(exps & HIGH_BITS == 0, "exponent overflow");
        Monomial { exps, deg: self.deg + o.deg }
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && ((o.exps | HIGH_BITS) - self.exps) & HIGH_BITS == HIGH_BITS
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        debug_assert!(self.divides(o));
        Monomial { exps: o.exps - self.exps, deg: o.deg - self.deg }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut exps = 0u128;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).max(o.exponent(i));
            exps |= (e as u128) << (8 * i);
            deg += e;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) == 0 || o.exponent(i) == 0)
    }

    /// Index of the unique variable if this is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        if self.deg == 0 {
            return None;
        }
        let support: Vec<usize> = (0..MAX_VARS).filter(|&i| self.exponent(i) > 0).collect();
        (support.len() == 1).then(|| support[0])
    }

    pub fn render(&self, n: usize) -> String {
        if self.deg == 0 {
            return "1".into();
        }
        (0..n)
            .filter(|&i| self.exponent(i) > 0)
            .map(|i| match self.exponent(i) {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x0 > x1 > ... `.
    fn cmp(&self, o: &Self) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.exps ^ o.exps;
        if diff == 0 {
            return Ordering::Equal;
        }
        let byte = (127 - diff.leading_zeros()) / 8;
        let a = (self.exps >> (8 * byte)) & 0xff;
        let b = (o.exps >> (8 * byte)) & 0xff;
        b.cmp(&a)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A homogeneous polynomial, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms(field: &F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::DimensionMismatch { expected: MAX_VARS, found: nvars });
        }
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if (nvars..MAX_VARS).any(|i| m.exponent(i) > 0) {
                return Err(Error::DimensionMismatch { expected: nvars, found: MAX_VARS });
            }
            let e = map.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        let terms: Vec<_> = map.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        if let Some((m0, _)) = terms.first() {
            if terms.iter().any(|(m, _)| m.degree() != m0.degree()) {
                return Err(Error::Degenerate("polynomial is not homogeneous".into()));
            }
        }
        Ok(Polynomial { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(m, _)| *m)
    }
    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn eval(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let v = (0..self.nvars).fold(c.clone(), |v, i| field.mul(&v, &field.pow(&x[i], m.exponent(i) as u64)));
            field.add(&acc, &v)
        })
    }

    fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, d)| (*m, field.mul(c, d))).collect() }
    }

    pub fn render(&self, field: &F) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({})*{}", field.render(c), m.render(self.nvars)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The quadrics of a system as polynomials.
pub fn polynomials_of<F: Field>(sys: &QuadricSystem<F>) -> Vec<Polynomial<F>> {
    let n = sys.ambient_dim;
    sys.quadrics
        .iter()
        .map(|q| {
            let terms = q
                .terms()
                .iter()
                .map(|(i, j, c)| (Monomial::var(*i).mul(&Monomial::var(*j)), c.clone()))
                .collect();
            Polynomial::from_terms(&sys.field, n, terms).expect("quadrics are homogeneous")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PairStrategy {
    /// Smallest lcm degree first, ties broken by grevlex on the lcm.
    #[default]
    Normal,
    Fifo,
    /// Pseudo-random selection with the given seed.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerOptions {
    pub strategy: PairStrategy,
    pub coprime_criterion: bool,
    pub chain_criterion: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { strategy: PairStrategy::Normal, coprime_criterion: true, chain_criterion: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerStats {
    pub pairs_created: u64,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub coprime_skips: u64,
    pub chain_skips: u64,
}

/// A reduced, monic Groebner basis under grevlex.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub field: F,
    pub nvars: usize,
    pub generators: Vec<Polynomial<F>>,
    pub stats: BuchbergerStats,
    /// Over `Q`: primes of input denominators and of normalizing leading coefficients.
    pub denominator_primes: BTreeSet<BigUint>,
}

struct Reducer<'a, F: Field> {
    field: &'a F,
    basis: &'a [Polynomial<F>],
}

impl<F: Field> Reducer<'_, F> {
    /// Full normal form with respect to monic `basis`.
    fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let f = self.field;
        let mut work: BTreeMap<Monomial, F::Elem> = p.terms.iter().cloned().collect();
        let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            if f.is_zero(&c) {
                continue;
            }
            match self.basis.iter().find(|g| g.terms[0].0.divides(&m)) {
                Some(g) => {
                    let q = g.terms[0].0.quotient_of(&m);
                    for (gm, gc) in &g.terms[1..] {
                        let key = gm.mul(&q);
                        let e = work.entry(key).or_insert_with(|| f.zero());
                        *e = f.sub(e, &f.mul(&c, gc));
                    }
                }
                None => rem.push((m, c)),
            }
        }
        Polynomial { nvars: p.nvars, terms: rem }
    }
}

fn s_polynomial<F: Field>(field: &F, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let (la, lb) = (a.terms[0].0, b.terms[0].0);
    let l = la.lcm(&lb);
    let (qa, qb) = (la.quotient_of(&l), lb.quotient_of(&l));
    let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
    for (m, c) in &a.terms[1..] {
        let e = map.entry(m.mul(&qa)).or_insert_with(|| field.zero());
        *e = field.add(e, c);
    }
    for (m, c) in &b.terms[1..] {
        let e = map.entry(m.mul(&qb)).or_insert_with(|| field.zero());
        *e = field.sub(e, c);
    }
    Polynomial { nvars: a.nvars, terms: map.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect() }
}

fn record_primes<F: Field>(field: &F, c: &F::Elem, out: &mut BTreeSet<BigUint>) {
    if let Some(r) = field.as_rational(c) {
        for n in [r.numer(), r.denom()] {
            if !n.abs().is_one() {
                out.extend(prime_divisors(n));
            }
        }
    }
}

fn make_monic<F: Field>(field: &F, p: &Polynomial<F>, primes: &mut BTreeSet<BigUint>) -> Polynomial<F> {
    let lc = p.terms[0].1.clone();
    if field.is_one(&lc) {
        return p.clone();
    }
    record_primes(field, &lc, primes);
    p.scale(field, &field.inv(&lc).expect("nonzero leading coefficient"))
}

/// Computes the reduced grevlex Groebner basis of homogeneous generators.
pub fn buchberger<F: Field>(field: &F, gens: &[Polynomial<F>], opts: BuchbergerOptions) -> Result<GroebnerBasis<F>> {
    let nvars = gens.first().map(|g| g.nvars).unwrap_or(0);
    if gens.iter().any(|g| g.nvars != nvars) {
        return Err(Error::Degenerate("generators have different variable counts".into()));
    }
    let mut primes = BTreeSet::new();
    for g in gens {
        for (_, c) in &g.terms {
            if let Some(r) = field.as_rational(c) {
                if !r.denom().is_one() {
                    primes.extend(prime_divisors(r.denom()));
                }
            }
        }
    }
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut rng = match opts.strategy {
        PairStrategy::Random(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };

    let add = |p: Polynomial<F>,
               basis: &mut Vec<Polynomial<F>>,
               active: &mut Vec<bool>,
               pairs: &mut Vec<(usize, usize)>,
               pending: &mut HashSet<(usize, usize)>,
               stats: &mut BuchbergerStats| {
        let k = basis.len();
        for i in 0..k {
            if active[i] {
                pairs.push((i, k));
                pending.insert((i, k));
                stats.pairs_created += 1;
            }
        }
        basis.push(p);
        active.push(true);
    };

    let mut inputs: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| a.terms[0].0.cmp(&b.terms[0].0));
    for g in inputs {
        let nf = Reducer { field, basis: &basis }.normal_form(&g);
        if !nf.is_zero() {
            let nf = make_monic(field, &nf, &mut primes);
            add(nf, &mut basis, &mut active, &mut pairs, &mut pending, &mut stats);
        }
    }

    while !pairs.is_empty() {
        let idx = match opts.strategy {
            PairStrategy::Fifo => 0,
            PairStrategy::Random(_) => {
                let r = rng.as_mut().unwrap();
                let idxs: Vec<usize> = (0..pairs.len()).collect();
                *idxs.choose(r).unwrap()
            }
            PairStrategy::Normal => {
                let key = |&(i, j): &(usize, usize)| basis[i].terms[0].0.lcm(&basis[j].terms[0].0);
                (0..pairs.len()).min_by(|&a, &b| key(&pairs[a]).cmp(&key(&pairs[b])).then(a.cmp(&b))).unwrap()
            }
        };
        let (i, j) = pairs.remove(idx);
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].terms[0].0, basis[j].terms[0].0);
        if opts.coprime_criterion && li.is_coprime(&lj) {
            stats.coprime_skips += 1;
            continue;
        }
        let l = li.lcm(&lj);
        if opts.chain_criterion {
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].terms[0].0.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                stats.chain_skips += 1;
                continue;
            }
        }
        stats.pairs_reduced += 1;
        let s = s_polynomial(field, &basis[i], &basis[j]);
        let nf = Reducer { field, basis: &basis }.normal_form(&s);
        if nf.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let nf = make_monic(field, &nf, &mut primes);
        add(nf, &mut basis, &mut active, &mut pairs, &mut pending, &mut stats);
    }

    // minimalize then interreduce
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.terms[0].0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let lh = h.terms[0].0;
            o != k && lh.divides(&lm) && (lh != lm || o < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial<F>> =
            minimal.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let tail = Polynomial { nvars, terms: g.terms[1..].to_vec() };
        let tail_nf = Reducer { field, basis: &others }.normal_form(&tail);
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail_nf.terms);
        reduced.push(Polynomial { nvars, terms });
    }
    reduced.sort_by(|a, b| b.terms[0].0.cmp(&a.terms[0].0));
    Ok(GroebnerBasis { field: field.clone(), nvars, generators: reduced, stats, denominator_primes: primes })
}

impl<F: Field> GroebnerBasis<F> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.terms[0].0).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        Reducer { field: &self.field, basis: &self.generators }.normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether all S-polynomials reduce to zero.
    pub fn is_groebner(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.normal_form(&s_polynomial(&self.field, &g[i], &g[j])).is_zero()))
    }

    pub fn to_json(&self) -> GroebnerJson {
        GroebnerJson {
            field: self.field.spec().to_string(),
            nvars: self.nvars,
            order: "grevlex".into(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    g.terms
                        .iter()
                        .map(|(m, c)| TermJson { exponents: m.exponents(self.nvars), coefficient: self.field.render(c) })
                        .collect()
                })
                .collect(),
            denominator_primes: self.denominator_primes.iter().map(|p| p.to_string()).collect(),
            stats: self.stats.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerJson {
    pub field: String,
    pub nvars: usize,
    pub order: String,
    pub generators: Vec<Vec<TermJson>>,
    pub denominator_primes: Vec<String>,
    pub stats: BuchbergerStats,
}

/// For each variable, the exponent of a pure power among the leading terms
/// and the index of the basis element carrying it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessCertificate {
    pub pure_powers: Vec<PurePower>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurePower {
    pub variable: usize,
    pub exponent: u32,
    pub generator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Emptiness {
    Empty(EmptinessCertificate),
    /// Carries a variable with no pure power among the leading terms.
    NonEmpty { witness_variable: usize },
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty(_))
    }
}

pub fn projective_emptiness_certificate<F: Field>(gb: &GroebnerBasis<F>) -> Emptiness {
    let mut pure_powers = Vec::new();
    for v in 0..gb.nvars {
        let best = gb
            .generators
            .iter()
            .enumerate()
            .filter_map(|(k, g)| {
                let lm = g.terms[0].0;
                (lm.pure_power_var() == Some(v)).then(|| (lm.degree(), k))
            })
            .min();
        match best {
            Some((exponent, generator)) => pure_powers.push(PurePower { variable: v, exponent, generator }),
            None => return Emptiness::NonEmpty { witness_variable: v },
        }
    }
    Emptiness::Empty(EmptinessCertificate { pure_powers })
}

/// Checks a certificate against a basis.
pub fn check_certificate<F: Field>(gb: &GroebnerBasis<F>, cert: &EmptinessCertificate) -> bool {
    cert.pure_powers.len() == gb.nvars
        && cert.pure_powers.iter().enumerate().all(|(v, pp)| {
            pp.variable == v
                && gb.generators.get(pp.generator).is_some_and(|g| {
                    g.terms[0].0 == Monomial::var_pow(v, pp.exponent as u8)
                })
        })
}

/// Primes outside which the `Q` computation transfers to `F_p`.
pub fn rational_certificate_primes<F: Field>(gb: &GroebnerBasis<F>) -> Vec<BigUint> {
    gb.denominator_primes.iter().cloned().collect()
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `k[x]/I` for a
/// monomial ideal `I`, by pivot recursion.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.degree() == 0) {
        return vec![0];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            poly_mul(&acc, &f)
        });
    }
    // pivot on the variable occurring in the most non-linear generators
    let (var, _) = (0..MAX_VARS)
        .map(|v| (v, gens.iter().filter(|g| g.exponent(v) > 0 && g.degree() > 1).count()))
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
        .unwrap();
    let e = gens.iter().filter(|&g| g.exponent(var) > 0).map(|g| g.exponent(var)).min().unwrap();
    let pivot = Monomial::var_pow(var, e as u8);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let k = g.exponent(var).min(e);
            Monomial::var_pow(var, k as u8).quotient_of(g)
        })
        .collect();
    let a = hilbert_numerator(&with_pivot);
    let mut shift = vec![0i64; e as usize];
    shift.extend(hilbert_numerator(&colon));
    let mut out = poly_add(&a, &shift);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Projective dimension (−1 when empty) and degree of `V(I)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionDegree {
    pub dimension: i64,
    pub degree: u64,
}

/// Krull dimension and degree from the numerator of a Hilbert series in `n` variables.
pub fn dimension_degree_from_numerator(numerator: &[i64], n: usize) -> DimensionDegree {
    let mut q = numerator.to_vec();
    let mut k = 0usize;
    if q.iter().all(|&c| c == 0) {
        return DimensionDegree { dimension: -1, degree: 0 };
    }
    while q.iter().sum::<i64>() == 0 {
        // divide by (1 - t)
        let mut out = vec![0i64; q.len() - 1];
        let mut acc = 0;
        for i in 0..q.len() - 1 {
            acc += q[i];
            out[i] = acc;
        }
        q = out;
        k += 1;
    }
    let krull = n as i64 - k as i64;
    if krull <= 0 {
        DimensionDegree { dimension: -1, degree: 0 }
    } else {
        DimensionDegree { dimension: krull - 1, degree: q.iter().sum::<i64>() as u64 }
    }
}

pub fn hilbert_dimension_degree<F: Field>(gb: &GroebnerBasis<F>) -> DimensionDegree {
    dimension_degree_from_numerator(&hilbert_numerator(&gb.leading_monomials()), gb.nvars)
}

/// Values of the Hilbert function `dim (k[x]/I)_d` for `d = 0..=max_d`.
pub fn hilbert_function<F: Field>(gb: &GroebnerBasis<F>, max_d: usize) -> Vec<i64> {
    let mut series = hilbert_numerator(&gb.leading_monomials());
    series.resize(series.len().max(max_d + 1), 0);
    series.truncate(max_d + 1);
    for _ in 0..gb.nvars {
        for i in 1..series.len() {
            series[i] += series[i - 1];
        }
    }
    series
}

/// Standard monomials of degree `d` (not divisible by any leading term).
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>, d: u32) -> Vec<Monomial> {
    let lms = gb.leading_monomials();
    let mut out = Vec::new();
    let mut exps = vec![0u32; gb.nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, lms: &[Monomial], out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            let m = Monomial::from_exponents(exps).expect("bounded exponents");
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, lms, out);
        }
    }
    if gb.nvars > 0 {
        rec(0, d, &mut exps, &lms, &mut out);
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn poly<F: Field>(f: &F, n: usize, terms: &[(&[u32], i64)]) -> Polynomial<F> {
        Polynomial::from_terms(
            f,
            n,
            terms.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), f.from_i64(*c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e).unwrap();
        // x0^2 > x0 x1 > x1^2 > x0 x2 > x1 x2 > x2^2
        let seq = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{:?} vs {:?}", w[0], w[1]);
        }
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        assert!(m(&[1, 0]).divides(&m(&[2, 3])));
        assert!(!m(&[0, 4]).divides(&m(&[2, 3])));
        assert_eq!(m(&[1, 5]).lcm(&m(&[3, 2])), m(&[3, 5]));
    }

    #[test]
    fn already_a_basis() {
        let f = PrimeField::new(5).unwrap();
        let gens = [poly(&f, 2, &[(&[2, 0], 1)]), poly(&f, 2, &[(&[1, 1], 1)])];
        let gb = buchberger(&f, &gens, BuchbergerOptions::default()).unwrap();
        assert_eq!(gb.generators, vec![gens[0].clone(), gens[1].clone()]);
    }

    #[test]
    fn irrelevant_and_principal() {
        let f = PrimeField::new(7).unwrap();
        let gb = buchberger(&f, &[poly(&f, 2, &[(&[1, 0], 1)]), poly(&f, 2, &[(&[0, 1], 1)])], Default::default())
            .unwrap();
        match projective_emptiness_certificate(&gb) {
            Emptiness::Empty(c) => {
                assert_eq!(c.pure_powers.iter().map(|p| p.exponent).collect::<Vec<_>>(), vec![1, 1]);
                assert!(check_certificate(&gb, &c));
            }
            other => panic!("{other:?}"),
        }
        let gb = buchberger(&f, &[poly(&f, 2, &[(&[1, 1], 1)])], Default::default()).unwrap();
        assert!(!projective_emptiness_certificate(&gb).is_empty());
    }

    #[test]
    fn hilbert_trivial_cases() {
        let vars: Vec<Monomial> = (0..6).map(Monomial::var).collect();
        assert_eq!(dimension_degree_from_numerator(&hilbert_numerator(&vars), 6).dimension, -1);
        assert_eq!(
            dimension_degree_from_numerator(&hilbert_numerator(&[]), 6),
            DimensionDegree { dimension: 5, degree: 1 }
        );
        // a plane conic and a twisted-cubic-like monomial ideal
        let m = |e: &[u32]| Monomial::from_exponents(e).unwrap();
        assert_eq!(
            dimension_degree_from_numerator(&hilbert_numerator(&[m(&[2, 0, 0])]), 3),
            DimensionDegree { dimension: 1, degree: 2 }
        );
        assert_eq!(
            dimension_degree_from_numerator(&hilbert_numerator(&[m(&[2, 0, 0, 0]), m(&[1, 1, 0, 0]), m(&[0, 2, 0, 0])]), 4),
            DimensionDegree { dimension: 1, degree: 3 }
        );
    }

    fn pair_system(f: &Rationals) -> Vec<Polynomial<Rationals>> {
        // x^2 - yz, y^2 - xz, z^2 - xy
        vec![
            poly(f, 3, &[(&[2, 0, 0], 1), (&[0, 1, 1], -1)]),
            poly(f, 3, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]),
            poly(f, 3, &[(&[0, 0, 2], 1), (&[1, 1, 0], -1)]),
        ]
    }

    #[test]
    fn strategies_agree() {
        let q = Rationals;
        let gens = pair_system(&q);
        let base = buchberger(&q, &gens, BuchbergerOptions::default()).unwrap();
        assert!(base.is_groebner());
        for strategy in [PairStrategy::Fifo, PairStrategy::Random(1), PairStrategy::Random(99)] {
            for (c1, c2) in [(false, false), (true, false), (false, true), (true, true)] {
                let opts = BuchbergerOptions { strategy, coprime_criterion: c1, chain_criterion: c2 };
                let gb = buchberger(&q, &gens, opts).unwrap();
                assert_eq!(gb.generators, base.generators);
            }
        }
        for g in &gens {
            assert!(base.contains(g));
        }
    }

    #[test]
    fn hilbert_function_matches_standard_monomials() {
        let q = Rationals;
        let gb = buchberger(&q, &pair_system(&q), Default::default()).unwrap();
        let hf = hilbert_function(&gb, 6);
        for d in 0..=6u32 {
            assert_eq!(hf[d as usize], standard_monomials(&gb, d).len() as i64);
        }
    }
}
