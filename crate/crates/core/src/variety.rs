//! Points, tangent ranks, exhaustive counts, linear sections, slice degrees
//! and the tangent-hyperplane duality test for the spinor tenfold.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{chart_pure_spinor, even_pure_spinor, PairingMatrix, Parity, DIM_S};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::groebner::{buchberger, hilbert_dimension_degree, polynomials_of, BuchbergerOptions, DimensionDegree};
use crate::matrix::{f2_rank, Matrix};
use crate::quadrics::{clifford_quadrics, monomial_pairs, Quadric, QuadricSystem};
use crate::skew::SkewMatrix5;
use crate::subspace::LinearSubspace;

/// Homogeneous coordinates scaled so the first nonzero one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or_else(|| Error::Degenerate("zero vector is not a projective point".into()))?;
        let inv = field.inv(lead).expect("nonzero");
        Ok(ProjectivePoint { coords: coords.iter().map(|c| field.mul(c, &inv)).collect() })
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn render(&self, field: &F) -> Vec<String> {
        self.coords.iter().map(|c| field.render(c)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub on_variety: bool,
    /// Rank of the Jacobian, computed only for points on the variety.
    pub jacobian_rank: Option<usize>,
}

pub fn contains_and_tangent_rank<F: Field>(sys: &QuadricSystem<F>, pt: &ProjectivePoint<F>) -> Result<Membership> {
    if pt.coords.len() != sys.ambient_dim {
        return Err(Error::DimensionMismatch { expected: sys.ambient_dim, found: pt.coords.len() });
    }
    if !sys.vanishes_at(&pt.coords) {
        return Ok(Membership { on_variety: false, jacobian_rank: None });
    }
    Ok(Membership { on_variety: true, jacobian_rank: Some(sys.jacobian(&pt.coords).rank()) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountReport {
    pub field: String,
    pub total: u64,
    pub smooth: u64,
    pub singular: u64,
    pub wall_clock_ms: u64,
}

/// An enumerated point with its Jacobian rank.
pub type RankedPoint = (Vec<u64>, usize);

const CHUNK: u64 = 1 << 14;

fn pow_u64(p: u64, e: usize) -> u64 {
    (0..e).fold(1, |a, _| a * p)
}

/// Exhaustive scan of `P^{n-1}(F_p)` for `p` in `{2, 3}` through generic field
/// arithmetic. Points come out in lexicographic order of normalized coordinates,
/// with Jacobian rank; "smooth" means rank equal to `expected_rank`.
pub fn enumerate_points(sys: &QuadricSystem<PrimeField>, expected_rank: usize) -> Result<(PointCountReport, Vec<RankedPoint>)> {
    let f = &sys.field;
    let p = f.modulus();
    if p > 3 {
        return Err(Error::FieldTooLarge(format!(
            "F_{p}: exhaustive scans are limited to F_2 and F_3; sample pure-spinor charts instead"
        )));
    }
    let n = sys.ambient_dim;
    let start = Instant::now();
    let mut points: Vec<RankedPoint> = Vec::new();
    for lead in 0..n {
        let tail_len = n - 1 - lead;
        let count = pow_u64(p, tail_len);
        let chunks: Vec<(u64, u64)> = (0..count).step_by(CHUNK as usize).map(|s| (s, (s + CHUNK).min(count))).collect();
        let found: Vec<Vec<RankedPoint>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut out = Vec::new();
                let mut x = vec![0u64; n];
                x[lead] = 1;
                for idx in lo..hi {
                    let mut r = idx;
                    for k in (lead + 1..n).rev() {
                        x[k] = r % p;
                        r /= p;
                    }
                    if sys.quadrics.iter().all(|q| q.eval(f, &x) == 0) {
                        out.push((x.clone(), sys.jacobian(&x).rank()));
                    }
                }
                out
            })
            .collect();
        points.extend(found.into_iter().flatten());
    }
    Ok((count_report(f.spec().to_string(), &points, expected_rank, start), points))
}

fn count_report(field: String, points: &[RankedPoint], expected_rank: usize, start: Instant) -> PointCountReport {
    let smooth = points.iter().filter(|(_, r)| *r == expected_rank).count() as u64;
    PointCountReport {
        field,
        total: points.len() as u64,
        smooth,
        singular: points.len() as u64 - smooth,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    }
}

/// Bit-packed form of a quadric system over `F_2` in at most 64 variables.
#[derive(Clone, Debug)]
pub struct F2Quadrics {
    n: usize,
    /// Per quadric, per variable `i`: mask of `j >= i` with odd `c_ij`.
    upper: Vec<Vec<u64>>,
    /// Per quadric, per variable `k`: mask of `j != k` with odd `c_kj`.
    polar: Vec<Vec<u64>>,
}

impl F2Quadrics {
    pub fn new(sys: &QuadricSystem<PrimeField>) -> Result<Self> {
        if sys.field.modulus() != 2 || sys.ambient_dim > 64 {
            return Err(Error::InvalidField("bit-packed quadrics need F_2 and at most 64 variables".into()));
        }
        let n = sys.ambient_dim;
        let mut upper = Vec::new();
        let mut polar = Vec::new();
        for q in &sys.quadrics {
            let mut u = vec![0u64; n];
            let mut b = vec![0u64; n];
            for (i, j, c) in q.terms() {
                if c & 1 == 1 {
                    u[*i] |= 1 << j;
                    if i != j {
                        b[*i] |= 1 << j;
                        b[*j] |= 1 << i;
                    }
                }
            }
            upper.push(u);
            polar.push(b);
        }
        Ok(F2Quadrics { n, upper, polar })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, q: usize, x: u64) -> bool {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc += (x & self.upper[q][i]).count_ones();
            bits &= bits - 1;
        }
        acc & 1 == 1
    }

    pub fn vanishes_at(&self, x: u64) -> bool {
        (0..self.upper.len()).all(|q| !self.eval(q, x))
    }

    /// Gradient rows (polarizations at `x`) as bit masks.
    pub fn jacobian_rows(&self, x: u64) -> Vec<u64> {
        self.polar
            .iter()
            .map(|b| (0..self.n).fold(0u64, |g, k| g | ((((x & b[k]).count_ones() & 1) as u64) << k)))
            .collect()
    }

    pub fn jacobian_rank(&self, x: u64) -> usize {
        f2_rank(&self.jacobian_rows(x))
    }
}

/// Exhaustive scan over `F_2` with bit-packed arithmetic; coordinate `i` is bit `i`.
pub fn enumerate_points_f2(sys: &QuadricSystem<PrimeField>, expected_rank: usize) -> Result<(PointCountReport, Vec<RankedPoint>)> {
    let packed = F2Quadrics::new(sys)?;
    let n = packed.n;
    if n > 32 {
        return Err(Error::FieldTooLarge(format!("2^{n} points")));
    }
    let start = Instant::now();
    let hits: Vec<(u64, usize)> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter(|&x| packed.vanishes_at(x))
        .map(|x| (x, packed.jacobian_rank(x)))
        .collect();
    // lexicographic order on coordinate vectors, matching the generic scan
    let mut points: Vec<RankedPoint> =
        hits.into_iter().map(|(x, r)| ((0..n).map(|i| (x >> i) & 1).collect(), r)).collect();
    points.sort_by_key(|a| lex_key(&a.0));
    Ok((count_report(sys.field.spec().to_string(), &points, expected_rank, start), points))
}

fn lex_key(x: &[u64]) -> (usize, Vec<u64>) {
    let lead = x.iter().position(|&c| c != 0).unwrap_or(x.len());
    (lead, x.to_vec())
}

/// Writes points as newline-delimited JSON arrays of coordinate strings.
pub fn write_points_ndjson<W: Write>(mut w: W, points: &[RankedPoint]) -> std::io::Result<()> {
    for (x, _) in points {
        let row: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        writeln!(w, "{}", serde_json::to_string(&row).expect("strings serialize"))?;
    }
    Ok(())
}

/// Rewrites the quadrics in the internal coordinates `y` of `sub`, so that
/// `Q'(y) = Q(sum_a y_a b_a)`. Quadrics restricting to zero are kept in place.
pub fn restrict_to_span<F: Field>(sys: &QuadricSystem<F>, sub: &LinearSubspace<F>) -> Result<QuadricSystem<F>> {
    let f = &sys.field;
    if sub.ambient_dim() != sys.ambient_dim {
        return Err(Error::DimensionMismatch { expected: sys.ambient_dim, found: sub.ambient_dim() });
    }
    if sub.dim() == 0 {
        return Err(Error::Degenerate("cannot restrict to the zero subspace".into()));
    }
    let m = sub.dim();
    let basis = sub.basis().row_vecs();
    let quadrics = sys
        .quadrics
        .iter()
        .map(|q| {
            let coeffs = monomial_pairs(m)
                .into_iter()
                .map(|(a, b)| if a == b { q.eval(f, &basis[a]) } else { q.polar(f, &basis[a], &basis[b]) })
                .collect();
            Quadric::from_upper(f, m, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadricSystem {
        field: f.clone(),
        ambient_dim: m,
        quadrics,
        parity: sys.parity,
        origin: format!("{} restricted to a {m}-dimensional subspace", sys.origin),
    })
}

/// Projective dimension and degree of `V(sys)` from its Groebner basis.
pub fn dimension_and_degree<F: Field>(sys: &QuadricSystem<F>) -> Result<DimensionDegree> {
    let gb = buchberger(&sys.field, &polynomials_of(sys), BuchbergerOptions::default())?;
    Ok(hilbert_dimension_degree(&gb))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDegreeReport {
    pub field: String,
    pub trials: usize,
    /// Hilbert multiplicities of the zero-dimensional slices, in trial order.
    pub multiplicities: Vec<u64>,
    /// Trials whose slice was empty or positive-dimensional, with the dimension found.
    pub non_transverse: Vec<i64>,
    pub conclusive: bool,
}

/// Intersects `V(sys)` with `trials` random 6-dimensional subspaces over `F_p`.
pub fn slice_degree(sys: &QuadricSystem<PrimeField>, seed: u64, trials: usize) -> Result<SliceDegreeReport> {
    let p = sys.field.modulus();
    if ![2, 3, 5].contains(&p) {
        return Err(Error::InvalidField(format!("slice degree runs over F_2, F_3, F_5, not F_{p}")));
    }
    if trials == 0 {
        return Err(Error::Degenerate("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs: Vec<LinearSubspace<PrimeField>> =
        (0..trials).map(|_| LinearSubspace::random(&sys.field, sys.ambient_dim, 6, &mut rng)).collect();
    let results: Vec<DimensionDegree> = subs
        .par_iter()
        .map(|s| restrict_to_span(sys, s).and_then(|r| dimension_and_degree(&r)))
        .collect::<Result<_>>()?;
    let multiplicities: Vec<u64> = results.iter().filter(|d| d.dimension == 0).map(|d| d.degree).collect();
    let non_transverse: Vec<i64> = results.iter().filter(|d| d.dimension != 0).map(|d| d.dimension).collect();
    Ok(SliceDegreeReport {
        field: sys.field.spec().to_string(),
        trials,
        conclusive: !multiplicities.is_empty(),
        multiplicities,
        non_transverse,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub p: u64,
    pub trials: usize,
    pub passes: usize,
    pub tangent_projective_dims: Vec<usize>,
    pub control_trials: usize,
    pub control_passes: usize,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.passes == self.trials && self.tangent_projective_dims.iter().all(|&d| d == 10)
    }
}

/// A random big-cell point of the even tenfold over `F_p`.
pub fn random_even_point<R: Rng + ?Sized>(field: &PrimeField, rng: &mut R) -> Vec<u64> {
    even_pure_spinor(field, &SkewMatrix5::random(field, rng)).coords
}

/// Tangent hyperplanes at random points of the even tenfold, carried to
/// `P(S_-)` through the inverse transpose of the pairing, must lie on the odd
/// tenfold. The control transports hyperplanes not containing the tangent space.
pub fn dual_transport_test(seed: u64, trials: usize, p: u64) -> Result<DualityReport> {
    if p == 2 {
        return Err(Error::InvalidField("the duality test needs odd p".into()));
    }
    let f = PrimeField::new(p)?;
    let even = clifford_quadrics(Parity::Even).over(&f);
    let odd = clifford_quadrics(Parity::Odd).over(&f);
    let pairing = PairingMatrix::get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut passes, mut control_passes) = (0, 0);
    let mut dims = Vec::with_capacity(trials);
    for _ in 0..trials {
        let s = random_even_point(&f, &mut rng);
        if !even.vanishes_at(&s) {
            return Err(Error::Corrupted("chart point off the even tenfold".into()));
        }
        let jac = even.jacobian(&s);
        let rank = jac.rank();
        if rank != 5 {
            return Err(Error::Corrupted(format!("Jacobian rank {rank} at a chart point")));
        }
        dims.push(DIM_S - rank - 1);
        let h = loop {
            let w: Vec<u64> = (0..jac.rows()).map(|_| f.random(&mut rng)).collect();
            let h = jac.transpose().mul_vec(&w)?;
            if h.iter().any(|&c| c != 0) {
                break h;
            }
        };
        let t = pairing.transport_functional(&f, &h);
        if odd.vanishes_at(&t) {
            passes += 1;
        }
        let rows = jac.row_vecs();
        let control = loop {
            let h: Vec<u64> = (0..DIM_S).map(|_| f.random(&mut rng)).collect();
            let mut with = rows.clone();
            with.push(h.clone());
            if Matrix::from_row_slices(&f, DIM_S, &with).rank() > rank {
                break h;
            }
        };
        if odd.vanishes_at(&pairing.transport_functional(&f, &control)) {
            control_passes += 1;
        }
    }
    Ok(DualityReport { p, trials, passes, tangent_projective_dims: dims, control_trials: trials, control_passes })
}

/// Samples points of `V(sys) ∩ {x : r . x = 0 for r in conditions}` through
/// the pure-spinor charts of the given parity: in each attempt the entries of
/// the skew matrix off a random star `{(c, k)}` are fixed at random, which
/// makes the chart spinor affine-linear in the four star entries, and the
/// linear conditions are solved for them.
pub fn sample_section_points<F: Field, R: Rng + ?Sized>(
    field: &F,
    parity: Parity,
    conditions: &[Vec<F::Elem>],
    attempts: usize,
    rng: &mut R,
) -> Vec<ProjectivePoint<F>> {
    let charts: Vec<u8> = (0u8..32).filter(|m| Parity::of_subset(*m) == parity).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let dot = |r: &[F::Elem], x: &[F::Elem]| {
        r.iter().zip(x).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
    };
    for _ in 0..attempts {
        let chart = charts[rng.gen_range(0..charts.len())];
        let centre = rng.gen_range(1..=5usize);
        let star: Vec<(usize, usize)> =
            (1..=5).filter(|&k| k != centre).map(|k| (centre.min(k), centre.max(k))).collect();
        let mut base = SkewMatrix5::random(field, rng);
        for &(i, j) in &star {
            base.set_upper(i, j, field.zero());
        }
        let s0 = chart_pure_spinor(field, &base, chart).coords;
        let dirs: Vec<Vec<F::Elem>> = star
            .iter()
            .map(|&(i, j)| {
                let mut a = base.clone();
                a.set_upper(i, j, field.one());
                let s = chart_pure_spinor(field, &a, chart).coords;
                s.iter().zip(&s0).map(|(x, y)| field.sub(x, y)).collect()
            })
            .collect();
        // augmented system [A | -b] in the star unknowns
        let rows: Vec<Vec<F::Elem>> = conditions
            .iter()
            .map(|r| {
                let mut row: Vec<F::Elem> = dirs.iter().map(|d| dot(r, d)).collect();
                row.push(field.neg(&dot(r, &s0)));
                row
            })
            .collect();
        let u: Vec<F::Elem> = if rows.is_empty() {
            (0..star.len()).map(|_| field.random(rng)).collect()
        } else {
            let ech = Matrix::from_row_slices(field, star.len() + 1, &rows).rref();
            if ech.pivots.contains(&star.len()) {
                continue;
            }
            let mut u: Vec<F::Elem> = (0..star.len()).map(|_| field.random(rng)).collect();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                let mut v = ech.reduced.get(r, star.len()).clone();
                for c in 0..star.len() {
                    if c != pc && !ech.pivots.contains(&c) {
                        v = field.sub(&v, &field.mul(ech.reduced.get(r, c), &u[c]));
                    }
                }
                u[pc] = v;
            }
            u
        };
        let mut a = base.clone();
        for (&(i, j), val) in star.iter().zip(&u) {
            a.set_upper(i, j, val.clone());
        }
        let t = chart_pure_spinor(field, &a, chart).coords;
        if conditions.iter().any(|r| !field.is_zero(&dot(r, &t))) {
            continue;
        }
        if let Ok(pt) = ProjectivePoint::new(field, t) {
            if seen.insert(pt.coords.clone()) {
                out.push(pt);
            }
        }
    }
    out
}

/// Rank of the Jacobian of the quadrics stacked with linear `conditions` at `x`;
/// the section is smooth of the expected dimension at `x` when this is
/// `5 + conditions.len()`.
pub fn section_tangent_rank<F: Field>(sys: &QuadricSystem<F>, conditions: &[Vec<F::Elem>], x: &[F::Elem]) -> usize {
    let mut rows = sys.jacobian(x).row_vecs();
    rows.extend(conditions.iter().cloned());
    Matrix::from_row_slices(&sys.field, sys.ambient_dim, &rows).rank()
}
