//! Integral models of linear sections of the spinor tenfold.
//!
//! Also hosts the exhaustive four-independence search over `F_2` with its
//! secant-bound check, plus a verifier for planes meeting the tenfold in
//! twelve rational points.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, primes_up_to, rational_reconstruction};
use crate::clifford::{parse_subset, PairingMatrix, Parity, SpinorBasis, DIM_S};
use crate::error::{Error, Result};
use crate::field::{render_rational, Field, PrimeField, QuadraticExtension, Rationals};
use crate::groebner::{
    buchberger, check_certificate, hilbert_dimension_degree, hilbert_function, polynomials_of,
    projective_emptiness_certificate, standard_monomials, BuchbergerOptions, Emptiness, GroebnerBasis, Monomial,
    Polynomial,
};
use crate::matrix::Matrix;
use crate::quadrics::{clifford_quadrics, recover_quadratic_form, CanonicalSystem, QuadricSystem};
use crate::subspace::LinearSubspace;
use crate::variety::{
    enumerate_points, enumerate_points_f2, restrict_to_span, sample_section_points, section_tangent_rank,
    F2Quadrics,
};

/// The five integral even spinors `v_1..v_5`, each the sum of two basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZModelSpec {
    pub supports: Vec<[String; 2]>,
    pub vectors: Vec<Vec<i64>>,
}

const V_SUPPORTS: [[&str; 2]; 5] = [["", "2345"], ["13", "45"], ["14", "25"], ["15", "23"], ["12", "1345"]];

impl ZModelSpec {
    pub fn standard() -> Self {
        let basis = SpinorBasis::new(Parity::Even);
        let vectors = V_SUPPORTS
            .iter()
            .map(|pair| {
                let mut v = vec![0i64; DIM_S];
                for s in pair {
                    let mask = parse_subset(s).expect("static subset");
                    v[basis.index_of(mask).expect("even subset")] = 1;
                }
                v
            })
            .collect();
        ZModelSpec { supports: V_SUPPORTS.iter().map(|p| [p[0].to_string(), p[1].to_string()]).collect(), vectors }
    }

    /// `v_1..v_i` over `field`.
    pub fn first<F: Field>(&self, field: &F, i: usize) -> Result<Vec<Vec<F::Elem>>> {
        if !(1..=self.vectors.len()).contains(&i) {
            return Err(Error::Degenerate(format!("index {i} outside 1..={}", self.vectors.len())));
        }
        Ok(self.vectors[..i].iter().map(|v| v.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }
}

// ---------------------------------------------------------------------------
// Emptiness certificates

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCertificate {
    pub field: String,
    pub emptiness: Emptiness,
    /// The certificate re-checked against a basis that passed the S-pair test.
    pub verified: bool,
    pub basis_size: usize,
}

impl FieldCertificate {
    pub fn holds(&self) -> bool {
        self.emptiness.is_empty() && self.verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessReport {
    pub index: usize,
    pub rational: FieldCertificate,
    pub denominator_primes: Vec<String>,
    pub primes: Vec<FieldCertificate>,
    /// For a single spanning vector: the nonzero values `c` with `Q(x v) = c x^2`.
    pub single_variable_coefficients: Vec<String>,
    pub pass: bool,
}

fn certify_over<F: Field>(field: &F, sys: &CanonicalSystem, vectors: &[Vec<i64>]) -> Result<(FieldCertificate, GroebnerBasis<F>)> {
    let rows: Vec<Vec<F::Elem>> = vectors.iter().map(|v| v.iter().map(|&x| field.from_i64(x)).collect()).collect();
    let sub = LinearSubspace::with_basis(field, DIM_S, &rows)?;
    let restricted = restrict_to_span(&sys.over(field), &sub)?;
    let gb = buchberger(field, &polynomials_of(&restricted), BuchbergerOptions::default())?;
    let emptiness = projective_emptiness_certificate(&gb);
    let verified = match &emptiness {
        Emptiness::Empty(c) => check_certificate(&gb, c) && gb.is_groebner(),
        Emptiness::NonEmpty { .. } => false,
    };
    Ok((
        FieldCertificate { field: field.spec().to_string(), emptiness, verified, basis_size: gb.generators.len() },
        gb,
    ))
}

/// Emptiness of `P(span(vectors)) ∩ Σ_+` over `Q` and over `F_p` for every
/// prime `p <= 50` and every prime met in a denominator over `Q`.
pub fn certify_span_emptiness(vectors: &[Vec<i64>]) -> Result<EmptinessReport> {
    if vectors.iter().any(|v| v.len() != DIM_S) {
        return Err(Error::DimensionMismatch { expected: DIM_S, found: vectors.iter().map(Vec::len).find(|&l| l != DIM_S).unwrap_or(0) });
    }
    let sys = clifford_quadrics(Parity::Even);
    let (rational, gb) = certify_over(&Rationals, &sys, vectors)?;
    let mut primes: BTreeSet<u64> = primes_up_to(50).into_iter().collect();
    for d in &gb.denominator_primes {
        let p = d.to_u64().ok_or_else(|| Error::Degenerate(format!("denominator prime {d} exceeds the word size")))?;
        primes.insert(p);
    }
    let per_prime: Vec<FieldCertificate> = primes
        .par_iter()
        .map(|&p| certify_over(&PrimeField::new(p)?, &sys, vectors).map(|(c, _)| c))
        .collect::<Result<_>>()?;
    let single_variable_coefficients = if vectors.len() == 1 {
        let v: Vec<BigRational> = vectors[0].iter().map(|&x| Rationals.from_i64(x)).collect();
        sys.over(&Rationals)
            .quadrics
            .iter()
            .map(|q| q.eval(&Rationals, &v))
            .filter(|c| !c.is_zero())
            .map(|c| render_rational(&c))
            .collect()
    } else {
        Vec::new()
    };
    let pass = rational.holds() && per_prime.iter().all(FieldCertificate::holds);
    Ok(EmptinessReport {
        index: vectors.len(),
        rational,
        denominator_primes: gb.denominator_primes.iter().map(BigUint::to_string).collect(),
        primes: per_prime,
        single_variable_coefficients,
        pass,
    })
}

/// Emptiness of `P(span(v_1..v_i)) ∩ Σ_+` over `Z`, checked fiberwise.
pub fn certify_emptiness(i: usize) -> Result<EmptinessReport> {
    let spec = ZModelSpec::standard();
    spec.first(&Rationals, i)?;
    certify_span_emptiness(&spec.vectors[..i])
}

// ---------------------------------------------------------------------------
// Dual sections

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAudit {
    pub field: String,
    pub method: String,
    pub points: u64,
    pub smooth: u64,
    pub singular: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    pub index: usize,
    pub field: String,
    pub linear_span_dim: usize,
    pub dimension: i64,
    pub expected_dimension: i64,
    pub degree: u64,
    pub audits: Vec<PointAudit>,
    pub recovered_form_rank: Option<usize>,
    pub smoothness_scope: String,
    pub pass: bool,
}

const SMOOTHNESS_SCOPE: &str = "partial: Jacobian rank checked only at rational points over F_p and F_p^2 found by \
                                chart sampling (and by full scan for p in {2, 3})";

fn section_conditions<F: Field>(field: &F, i: usize) -> Result<Vec<Vec<F::Elem>>> {
    let pairing = PairingMatrix::get();
    Ok(ZModelSpec::standard().first(field, i)?.iter().map(|v| pairing.functional_on_odd(field, v)).collect())
}

fn audit_by_sampling<F: Field>(field: &F, i: usize, attempts: usize, seed: u64) -> Result<PointAudit> {
    let conditions = section_conditions(field, i)?;
    let sys = clifford_quadrics(Parity::Odd).over(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = sample_section_points(field, Parity::Odd, &conditions, attempts, &mut rng);
    let smooth = pts
        .iter()
        .filter(|p| sys.vanishes_at(p.coords()) && section_tangent_rank(&sys, &conditions, p.coords()) == 5 + i)
        .count() as u64;
    Ok(PointAudit {
        field: field.spec().to_string(),
        method: format!("chart-sampling ({attempts} attempts)"),
        points: pts.len() as u64,
        smooth,
        singular: pts.len() as u64 - smooth,
    })
}

/// Builds `X_i = Σ_- ∩ P({t : beta(t, v_j) = 0, j <= i})` over `F_p` and checks
/// its dimension, smoothness at sampled rational points and, for odd `p`,
/// that its quadrics carry a nondegenerate rank-10 relation.
pub fn build_and_verify_section(i: usize, p: u64, seed: u64, attempts: usize) -> Result<SectionReport> {
    if !is_prime_u64(p) || p > 13 {
        return Err(Error::InvalidField(format!("{p} is not a prime up to 13")));
    }
    let f = PrimeField::new(p)?;
    let conditions = section_conditions(&f, i)?;
    let sub = LinearSubspace::annihilated_by(&f, DIM_S, &conditions);
    let restricted = restrict_to_span(&clifford_quadrics(Parity::Odd).over(&f), &sub)?;
    let gb = buchberger(&f, &polynomials_of(&restricted), BuchbergerOptions::default())?;
    let dd = hilbert_dimension_degree(&gb);

    let mut audits = Vec::new();
    if p <= 3 {
        let (report, _) = if p == 2 { enumerate_points_f2(&restricted, 5)? } else { enumerate_points(&restricted, 5)? };
        audits.push(PointAudit {
            field: report.field,
            method: "full-scan".into(),
            points: report.total,
            smooth: report.smooth,
            singular: report.singular,
        });
    }
    audits.push(audit_by_sampling(&f, i, attempts, seed)?);
    audits.push(audit_by_sampling(&QuadraticExtension::new(p)?, i, attempts, seed ^ 0x5eed)?);

    let recovered_form_rank = if p == 2 { None } else { Some(recover_quadratic_form(&restricted)?.rank()) };
    let expected = 10 - i as i64;
    let pass = dd.dimension == expected
        && audits.iter().all(|a| a.singular == 0)
        && recovered_form_rank.is_none_or(|r| r == 10);
    Ok(SectionReport {
        index: i,
        field: f.spec().to_string(),
        linear_span_dim: sub.dim(),
        dimension: dd.dimension,
        expected_dimension: expected,
        degree: dd.degree,
        audits,
        recovered_form_rank,
        smoothness_scope: SMOOTHNESS_SCOPE.into(),
        pass,
    })
}

// ---------------------------------------------------------------------------
// Dimension audit

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEntry {
    pub name: String,
    pub formula: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionAudit {
    pub entries: Vec<DimensionEntry>,
    /// `dim Spin_10 < dim Gr(S_-, 4)`: the group cannot act with finitely many orbits.
    pub spin_below_grassmannian: bool,
    pub consistent: bool,
}

pub fn dimension_audit() -> DimensionAudit {
    let (n, half, rank_q) = (10u64, 16u64, 4u64);
    let sigma = (n / 2) * (n / 2 - 1) / 2;
    let grass = rank_q * (half - rank_q);
    // incidence: a point of Σ_- and a 3-plane through it
    let w_incidence = sigma + (rank_q - 1) * (half - 1 - (rank_q - 1));
    let w_codim = grass - ((half - 1) - sigma - (rank_q - 1));
    let spin = n * (n - 1) / 2;
    let entry = |name: &str, formula: &str, value| DimensionEntry { name: name.into(), formula: formula.into(), value };
    DimensionAudit {
        entries: vec![
            entry("spinor variety", "m(m-1)/2 with m = 5", sigma),
            entry("Gr(S_-, 4)", "4 * (16 - 4)", grass),
            entry("W", "dim Σ + dim Gr(3, 15)", w_incidence),
            entry("Spin_10", "n(n-1)/2 with n = 10", spin),
        ],
        spin_below_grassmannian: spin < grass,
        consistent: w_incidence == w_codim && sigma == 10 && grass == 48 && w_incidence == 46 && spin == 45,
    }
}

// ---------------------------------------------------------------------------
// Four-independence search over F_2^n

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// Dead ends (no admissible extension) counted by depth.
    pub dead_ends_by_depth: Vec<u64>,
    pub deepest_dead_end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourIndependenceResult {
    pub dimension: usize,
    pub maximum: usize,
    pub witness: Vec<u64>,
    /// Vectors fixed by the `GL_n(F_2)` symmetry reduction.
    pub frame: Vec<u64>,
    pub stats: SearchStats,
    pub witness_verified: bool,
}

/// Whether every subset of at most four of `vs` is linearly independent over `F_2`.
pub fn four_independent(vs: &[u64]) -> bool {
    let mut subsets: Vec<Vec<u64>> = vec![vec![]];
    for &v in vs {
        let mut more = Vec::new();
        for s in &subsets {
            if s.len() < 4 {
                let mut t = s.clone();
                t.push(v);
                more.push(t);
            }
        }
        subsets.extend(more);
    }
    subsets.iter().filter(|s| !s.is_empty()).all(|s| f2_rank_words(s) == s.len())
}

fn f2_rank_words(vs: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
        }
    }
    basis.len()
}

fn translate(set: u64, v: u64) -> u64 {
    let mut out = 0u64;
    let mut s = set;
    while s != 0 {
        let x = s.trailing_zeros() as u64;
        s &= s - 1;
        out |= 1 << (x ^ v);
    }
    out
}

struct Search {
    dim: usize,
    best: Vec<u64>,
    stats: SearchStats,
}

impl Search {
    /// `sums[k]` holds, as a bitset over `F_2^dim`, the sums of `k + 1` distinct chosen vectors.
    fn dfs(&mut self, chosen: &mut Vec<u64>, sums: [u64; 3], next: u64) {
        self.stats.nodes += 1;
        let forbidden = sums[0] | sums[1] | sums[2] | 1;
        let limit = 1u64 << self.dim;
        let mut extended = false;
        for v in next..limit {
            if forbidden >> v & 1 == 1 {
                continue;
            }
            extended = true;
            let grown = [sums[0] | 1 << v, sums[1] | translate(sums[0], v), sums[2] | translate(sums[1], v)];
            chosen.push(v);
            self.dfs(chosen, grown, v + 1);
            chosen.pop();
        }
        if !extended {
            let d = chosen.len();
            if self.stats.dead_ends_by_depth.len() <= d {
                self.stats.dead_ends_by_depth.resize(d + 1, 0);
            }
            self.stats.dead_ends_by_depth[d] += 1;
            self.stats.deepest_dead_end = self.stats.deepest_dead_end.max(d);
            if d > self.best.len() {
                self.best = chosen.clone();
            }
        }
    }
}

/// Exhaustive depth-first search for the largest subset of `F_2^dim \ {0}`
/// in which every subset of at most four vectors is independent. Vectors are
/// chosen in increasing order; the first `min(dim, 4)` are fixed to the unit
/// vectors, which loses nothing because any four members of such a set are
/// independent and `GL_dim(F_2)` moves them to the unit vectors.
pub fn f2_max_independent_set_in(dim: usize) -> Result<FourIndependenceResult> {
    if !(1..=6).contains(&dim) {
        return Err(Error::Degenerate(format!("search dimension {dim} outside 1..=6")));
    }
    let frame: Vec<u64> = (0..dim.min(4)).map(|k| 1u64 << k).collect();
    let mut sums = [0u64; 3];
    for &v in &frame {
        sums = [sums[0] | 1 << v, sums[1] | translate(sums[0], v), sums[2] | translate(sums[1], v)];
    }
    let mut search = Search { dim, best: frame.clone(), stats: SearchStats::default() };
    let mut chosen = frame.clone();
    let start = frame.last().map_or(1, |&v| v + 1);
    search.dfs(&mut chosen, sums, start);
    let witness_verified = four_independent(&search.best);
    Ok(FourIndependenceResult {
        dimension: dim,
        maximum: search.best.len(),
        witness: search.best,
        frame,
        stats: search.stats,
        witness_verified,
    })
}

pub fn f2_max_independent_set() -> FourIndependenceResult {
    f2_max_independent_set_in(6).expect("dimension 6 is supported")
}

// ---------------------------------------------------------------------------
// F_2 secant bound

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantBoundReport {
    pub trials: u64,
    pub seed: u64,
    pub zero_dimensional: u64,
    pub empty: u64,
    pub positive_dimensional: u64,
    /// Number of `F_2`-points of zero-dimensional sections, with frequencies.
    pub count_distribution: BTreeMap<u64, u64>,
    pub max_count: u64,
    pub stress_trials: u64,
    pub stress_zero_dimensional: u64,
    pub stress_positive_dimensional: u64,
    pub stress_count_distribution: BTreeMap<u64, u64>,
    pub pass: bool,
}

enum SectionKind {
    Empty,
    ZeroDim(u64),
    Positive,
}

fn classify_f2_section(sys: &QuadricSystem<PrimeField>, sub: &LinearSubspace<PrimeField>) -> Result<SectionKind> {
    let restricted = restrict_to_span(sys, sub)?;
    let gb = buchberger(&sys.field, &polynomials_of(&restricted), BuchbergerOptions::default())?;
    let dd = hilbert_dimension_degree(&gb);
    Ok(match dd.dimension {
        -1 => SectionKind::Empty,
        0 => {
            let packed = F2Quadrics::new(&restricted)?;
            SectionKind::ZeroDim((1u64..1 << sub.dim()).filter(|&x| packed.vanishes_at(x)).count() as u64)
        }
        _ => SectionKind::Positive,
    })
}

/// Samples random 6-dimensional subspaces of `F_2^16` and counts the
/// `F_2`-points of the zero-dimensional sections of `Σ_+`; also spans
/// subspaces by six independent points of `Σ_+(F_2)`, no two of them on a
/// line of `Σ_+`.
pub fn f2_secant_bound_check(trials: u64, stress_trials: u64, seed: u64) -> Result<SecantBoundReport> {
    let f = PrimeField::new(2)?;
    let sys = clifford_quadrics(Parity::Even).over(&f);
    let kinds: Vec<SectionKind> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            classify_f2_section(&sys, &LinearSubspace::random(&f, DIM_S, 6, &mut rng))
        })
        .collect::<Result<_>>()?;
    let (_, points) = enumerate_points_f2(&sys, 5)?;
    let points: Vec<Vec<u64>> = points.into_iter().map(|(x, _)| x).collect();
    let stress: Vec<SectionKind> = (0..stress_trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_ffee);
            rng.set_stream(t);
            loop {
                let rows: Vec<Vec<u64>> = (0..6).map(|_| points[rng.gen_range(0..points.len())].clone()).collect();
                let joined_by_line = (0..6).any(|a| {
                    (a + 1..6).any(|b| sys.quadrics.iter().all(|q| q.polar(&f, &rows[a], &rows[b]) == 0))
                });
                if joined_by_line {
                    continue;
                }
                if let Ok(sub) = LinearSubspace::with_basis(&f, DIM_S, &rows) {
                    return classify_f2_section(&sys, &sub);
                }
            }
        })
        .collect::<Result<_>>()?;

    let mut report = SecantBoundReport { trials, seed, stress_trials, ..Default::default() };
    for k in &kinds {
        match k {
            SectionKind::Empty => report.empty += 1,
            SectionKind::Positive => report.positive_dimensional += 1,
            SectionKind::ZeroDim(c) => {
                report.zero_dimensional += 1;
                *report.count_distribution.entry(*c).or_default() += 1;
                report.max_count = report.max_count.max(*c);
            }
        }
    }
    for k in &stress {
        match k {
            SectionKind::ZeroDim(c) => {
                report.stress_zero_dimensional += 1;
                *report.stress_count_distribution.entry(*c).or_default() += 1;
            }
            _ => report.stress_positive_dimensional += 1,
        }
    }
    report.pass = report.max_count <= 8 && report.stress_count_distribution.keys().all(|c| (6..=8).contains(c));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Rational points of zero-dimensional sections

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PlaneStatus {
    Pass,
    NotZeroDimensional { dimension: i64 },
    DegreeMismatch { degree: u64 },
    TooFewRationalPoints { found: usize },
    SingularPoint { point: usize, jacobian_rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneReport {
    pub status: PlaneStatus,
    pub dimension: i64,
    pub degree: u64,
    /// Rational points in ambient coordinates, scaled to be primitive integral.
    pub points: Vec<Vec<String>>,
    pub jacobian_ranks: Vec<usize>,
}

fn times_linear(p: &Polynomial<Rationals>, coeffs: &[BigRational], nvars: usize) -> Result<Polynomial<Rationals>> {
    let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        for (k, l) in coeffs.iter().enumerate() {
            if !l.is_zero() {
                *acc.entry(m.mul(&Monomial::var(k))).or_insert_with(BigRational::zero) += c * l;
            }
        }
    }
    Polynomial::from_terms(&Rationals, nvars, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Matrix of multiplication by a linear form from degree `d` to degree `d + 1`
/// of the quotient ring, in the standard-monomial bases.
fn multiplication_matrix(
    gb: &GroebnerBasis<Rationals>,
    from: &[Monomial],
    to: &BTreeMap<Monomial, usize>,
    form: &[BigRational],
) -> Result<Matrix<Rationals>> {
    let mut m = Matrix::zeros(&Rationals, to.len(), from.len());
    for (col, mono) in from.iter().enumerate() {
        let p = Polynomial::from_terms(&Rationals, gb.nvars, vec![(*mono, BigRational::one())])?;
        let nf = gb.normal_form(&times_linear(&p, form, gb.nvars)?);
        for (mono2, c) in nf.terms() {
            let row = *to.get(mono2).ok_or_else(|| Error::Degenerate("normal form left the standard basis".into()))?;
            m.set(row, col, c.clone());
        }
    }
    Ok(m)
}

type RatPoly = Vec<BigRational>;

fn poly_trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone() / &lb;
        let shift = r.len() - b.len();
        for (k, x) in b.iter().enumerate() {
            r[shift + k] -= &c * x;
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap().clone() / &lb;
        let shift = r.len() - b.len();
        for (k, x) in b.iter().enumerate() {
            r[shift + k] -= &c * x;
        }
        q[shift] = c;
        r.pop();
    }
    q
}

fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (poly_trim(a.clone()), poly_trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn derivative(p: &RatPoly) -> RatPoly {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect()
}

/// Characteristic polynomial `det(t I - A)`, coefficients in increasing degree.
fn characteristic_polynomial(a: &Matrix<Rationals>) -> RatPoly {
    // Faddeev-LeVerrier
    let n = a.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::zeros(&Rationals, n, n);
    for k in 1..=n {
        let mut next = a.mul(&m).expect("square");
        for i in 0..n {
            let v = next.get(i, i).clone() + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let am = a.mul(&m).expect("square");
        let trace: BigRational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Distinct rational roots of a squarefree integer polynomial by `p`-adic
/// lifting of simple roots modulo a small prime and rational reconstruction.
fn rational_roots(poly: &RatPoly) -> Vec<BigRational> {
    let mut poly = poly_trim(poly.clone());
    let mut roots = Vec::new();
    if poly.len() <= 1 {
        return roots;
    }
    if poly[0].is_zero() {
        roots.push(BigRational::zero());
        while poly[0].is_zero() {
            poly.remove(0);
        }
    }
    let lcm = poly.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    let bound = ints[0].abs().max(ints.last().unwrap().abs());
    let target = BigInt::from(2) * &bound * &bound + BigInt::one();
    let lead = ints.last().unwrap().clone();
    let p = (1009u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| {
            let pb = BigInt::from(p);
            if lead.mod_floor(&pb).is_zero() {
                return false;
            }
            let reduce = |c: &BigInt| c.mod_floor(&pb).to_u64().unwrap();
            // simple roots only: no common root of the polynomial and its derivative
            (0..p).all(|x| {
                let xv = BigInt::from(x);
                eval_mod(&ints, &xv, &pb) != BigInt::zero() || eval_mod(&deriv, &xv, &pb) != BigInt::zero()
            }) && reduce(&lead) != 0
        })
        .expect("a good prime exists");
    let pb = BigInt::from(p);
    for r0 in 0..p {
        let mut r = BigInt::from(r0);
        if !eval_mod(&ints, &r, &pb).is_zero() {
            continue;
        }
        let mut modulus = pb.clone();
        while modulus < target {
            modulus = &modulus * &modulus;
            let fr = eval_mod(&ints, &r, &modulus);
            let dr = eval_mod(&deriv, &r, &modulus);
            let inv = mod_inverse(&dr, &modulus).expect("simple root stays invertible");
            r = (r - fr * inv).mod_floor(&modulus);
        }
        if let Some(q) = rational_reconstruction(&r, &modulus) {
            let value = poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &q + c);
            if value.is_zero() && !roots.contains(&q) {
                roots.push(q);
            }
        }
    }
    roots.sort();
    roots
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn small_random_form<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<BigRational> {
    (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-7i64..=7)))).collect()
}

/// All rational points of the zero-dimensional projective scheme with reduced
/// Groebner basis `gb`, as primitive integral vectors. Eigenvalues of
/// `M_h^{-1} M_L` on a stable graded piece of the quotient are the values
/// `L/h` at the points, and the left eigenvector of a rational eigenvalue is
/// the evaluation functional at the corresponding rational point.
pub fn rational_points_zero_dimensional(gb: &GroebnerBasis<Rationals>, seed: u64) -> Result<Vec<Vec<BigInt>>> {
    let dd = hilbert_dimension_degree(gb);
    if dd.dimension != 0 {
        return Err(Error::Degenerate(format!("scheme of dimension {} is not zero-dimensional", dd.dimension)));
    }
    let n = gb.nvars;
    let deg = dd.degree as i64;
    let hf = hilbert_function(gb, 64);
    let d = (1..63).find(|&d| hf[d] == deg && hf[d + 1] == deg).ok_or_else(|| Error::Degenerate("Hilbert function did not stabilize".into()))?;
    let from = standard_monomials(gb, d as u32);
    let to: BTreeMap<Monomial, usize> =
        standard_monomials(gb, d as u32 + 1).into_iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let h = small_random_form(n, &mut rng);
        let l = small_random_form(n, &mut rng);
        let mh = multiplication_matrix(gb, &from, &to, &h)?;
        let Some(mh_inv) = mh.inverse() else { continue };
        let a = mh_inv.mul(&multiplication_matrix(gb, &from, &to, &l)?).expect("square");
        let coordinate_ops: Vec<Matrix<Rationals>> = (0..n)
            .map(|j| {
                let mut e = vec![BigRational::zero(); n];
                e[j] = BigRational::one();
                Ok(mh_inv.mul(&multiplication_matrix(gb, &from, &to, &e)?).expect("square"))
            })
            .collect::<Result<_>>()?;
        let chi = characteristic_polynomial(&a);
        let g = poly_gcd(&chi, &derivative(&chi));
        let squarefree = if g.len() > 1 { poly_div_exact(&chi, &g) } else { chi };
        let mut points = Vec::new();
        let mut separated = true;
        for lambda in rational_roots(&squarefree) {
            // left eigenvectors: the evaluation functional at the point, up to scale
            let mut shifted = a.transpose();
            for k in 0..shifted.rows() {
                let v = shifted.get(k, k).clone() - &lambda;
                shifted.set(k, k, v);
            }
            let eigen = shifted.kernel();
            if eigen.len() != 1 {
                separated = false;
                break;
            }
            let w = &eigen[0];
            let k = w.iter().position(|c| !c.is_zero()).expect("nonzero eigenvector");
            let point: Vec<BigRational> = coordinate_ops
                .iter()
                .map(|op| (0..w.len()).map(|r| &w[r] * op.get(r, k)).sum::<BigRational>() / &w[k])
                .collect();
            if point.iter().all(Zero::is_zero) || gb.generators.iter().any(|g| !g.eval(&Rationals, &point).is_zero()) {
                separated = false;
                break;
            }
            points.push(primitive_integral(&point));
        }
        if separated {
            points.sort();
            points.dedup();
            return Ok(points);
        }
    }
    Err(Error::Degenerate("no separating linear form found".into()))
}

fn primitive_integral(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = ints.iter().find(|c| !c.is_zero()).map_or(BigInt::one(), |c| if c.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.iter().map(|c| c / &g * &sign).collect()
}

/// Checks that `P(span(basis)) ∩ V(sys)` is a reduced scheme of
/// `expected_degree` rational points at each of which the ambient Jacobian
/// has rank `expected_rank`.
pub fn verify_rational_section(
    sys: &QuadricSystem<Rationals>,
    basis: &[Vec<BigRational>],
    expected_degree: u64,
    expected_rank: usize,
    seed: u64,
) -> Result<PlaneReport> {
    if let Some(bad) = basis.iter().find(|v| v.len() != sys.ambient_dim) {
        return Err(Error::DimensionMismatch { expected: sys.ambient_dim, found: bad.len() });
    }
    let sub = LinearSubspace::with_basis(&Rationals, sys.ambient_dim, basis)?;
    let restricted = restrict_to_span(sys, &sub)?;
    let gb = buchberger(&Rationals, &polynomials_of(&restricted), BuchbergerOptions::default())?;
    let dd = hilbert_dimension_degree(&gb);
    let report = |status, points, jacobian_ranks| PlaneReport {
        status,
        dimension: dd.dimension,
        degree: dd.degree,
        points,
        jacobian_ranks,
    };
    if dd.dimension < 0 {
        return Ok(report(PlaneStatus::DegreeMismatch { degree: 0 }, vec![], vec![]));
    }
    if dd.dimension > 0 {
        return Ok(report(PlaneStatus::NotZeroDimensional { dimension: dd.dimension }, vec![], vec![]));
    }
    if dd.degree != expected_degree {
        return Ok(report(PlaneStatus::DegreeMismatch { degree: dd.degree }, vec![], vec![]));
    }
    let internal = rational_points_zero_dimensional(&gb, seed)?;
    let mut points = Vec::new();
    let mut ranks = Vec::new();
    for y in &internal {
        let yq: Vec<BigRational> = y.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let x = primitive_integral(&sub.to_ambient(&yq));
        let xq: Vec<BigRational> = x.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        ranks.push(sys.jacobian(&xq).rank());
        points.push(x.iter().map(BigInt::to_string).collect());
    }
    let status = if let Some((k, &r)) = ranks.iter().enumerate().find(|(_, &r)| r != expected_rank) {
        PlaneStatus::SingularPoint { point: k, jacobian_rank: r }
    } else if (points.len() as u64) < expected_degree {
        PlaneStatus::TooFewRationalPoints { found: points.len() }
    } else {
        PlaneStatus::Pass
    };
    Ok(report(status, points, ranks))
}

/// Verifies a candidate 5-plane meeting `Σ_+` in twelve smooth rational points.
pub fn verify_twelve_point_plane(basis: &[Vec<BigRational>], seed: u64) -> Result<PlaneReport> {
    if basis.len() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: basis.len() });
    }
    verify_rational_section(&clifford_quadrics(Parity::Even).over(&Rationals), basis, 12, 5, seed)
}

/// Parses a candidate plane: a JSON array of 6 rows of 16 entries, each an
/// integer or a rational string such as `"-3/4"`.
pub fn parse_plane_json(text: &str) -> Result<Vec<Vec<BigRational>>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = value.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("expected each row to be an array".into()))?
                .iter()
                .map(|x| match x {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(|v| BigRational::from_integer(BigInt::from(v)))
                        .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
                    serde_json::Value::String(s) => crate::field::parse_rational(s),
                    other => Err(Error::Parse(format!("unexpected entry {other}"))),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_vectors_are_independent_over_q_and_f2() {
        let spec = ZModelSpec::standard();
        let q = spec.first(&Rationals, 5).unwrap();
        assert_eq!(Matrix::from_row_slices(&Rationals, 16, &q).rank(), 5);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(Matrix::from_row_slices(&f2, 16, &spec.first(&f2, 5).unwrap()).rank(), 5);
        assert!(spec.vectors.iter().flatten().all(|&x| x == 0 || x == 1));
    }

    #[test]
    fn translation_of_bitsets() {
        assert_eq!(translate(0b1011, 1), 0b0111);
    }

    #[test]
    fn four_independence_in_small_dimensions() {
        let r = f2_max_independent_set_in(4).unwrap();
        assert!(r.witness_verified);
        let brute = (1u32..1 << 15)
            .filter(|m| {
                let vs: Vec<u64> = (0..15).filter(|k| m >> k & 1 == 1).map(|k| k as u64 + 1).collect();
                four_independent(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(r.maximum, brute);
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        // companion of t^2 - 3t + 2
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a = Matrix::from_rows(&Rationals, vec![vec![q(0), q(-2)], vec![q(1), q(3)]]).unwrap();
        assert_eq!(characteristic_polynomial(&a), vec![q(2), q(-3), q(1)]);
    }

    #[test]
    fn rational_roots_of_mixed_polynomial() {
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        // (3t - 2)(t + 5)(t^2 - 2) t
        let p = vec![q(0, 1), q(20, 1), q(-26, 1), q(-16, 1), q(13, 1), q(3, 1)];
        assert_eq!(rational_roots(&p), vec![q(-5, 1), q(0, 1), q(2, 3)]);
    }
}
