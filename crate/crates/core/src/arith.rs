//! Integer utilities: primality, factorization, squarefree parts, content
//! normalization and Hermite normal form.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime_u64(k)).collect()
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut g) = (BigUint::from(2u32), BigUint::from(2u32), one.clone());
        while g == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization of a positive integer as `(prime, exponent)` pairs, ascending.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor(0)");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut n = n.clone();
    for p in 2u32..1000 {
        if !is_prime_u64(p as u64) {
            continue;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = vec![n];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            large.push(m);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    large.sort();
    for p in large {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Distinct prime divisors of a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    factor(n.magnitude()).into_iter().map(|(p, _)| p).collect()
}

/// The squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(v: &BigRational) -> BigInt {
    assert!(!v.is_zero(), "square class of zero");
    let m = v.numer() * v.denom();
    let mut out = BigInt::one();
    for (p, e) in factor(m.magnitude()) {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    if m.sign() == Sign::Minus {
        -out
    } else {
        out
    }
}

/// Scales a nonzero rational vector to the unique proportional integer
/// vector with content 1 and positive first nonzero entry.
pub fn content_normalize(v: &[BigRational]) -> Result<Vec<BigInt>> {
    let first = v
        .iter()
        .find(|x| !x.is_zero())
        .ok_or_else(|| Error::Degenerate("cannot normalize the zero vector".into()))?;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    Ok(ints.into_iter().map(|x| x / &g * &sign).collect())
}

/// Row-style Hermite normal form of an integer matrix (rows are lattice
/// generators). Zero rows are dropped; pivots are positive and entries above a
/// pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= m.len() {
            break;
        }
        // Euclidean reduction on this column among rows >= pivot_row
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if !m[r][col].is_zero()
                    && best.is_none_or(|b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                let (head, tail) = m.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *x -= &q * y;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        for r in 0..pivot_row {
            let q = m[r][col].div_floor(&m[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(pivot_row);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigUint) -> i32 {
    let pi = BigInt::from(p.clone());
    let a = a.mod_floor(&pi);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let r = a.magnitude().modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Extended gcd on `i128`: returns `(g, x, y)` with `a x + b y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Rational reconstruction of `a mod m`: finds `n/d` with `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(&r1).is_one() && !r1.is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
