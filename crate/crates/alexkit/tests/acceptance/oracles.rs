//! Slow reference computations, written without the library's algorithms.

use std::collections::BTreeMap;

use alexkit_core::{CycloNumber, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
pub type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Drop a power of `t` dividing `p`; such factors are units.
pub fn strip_low(p: QPoly) -> QPoly {
    let p = trim(p);
    let k = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    p[k..].to_vec()
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = trim(a.clone());
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let q = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r = trim(r);
    }
    r
}

/// Euclid's algorithm; the degree is all the callers need.
pub fn qgcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Substitute integers for every variable except `var`.
pub fn specialize(f: &LaurentPoly, var: usize, vals: &[BigInt]) -> QPoly {
    let mut acc: BTreeMap<i32, BigRational> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut v = BigRational::from(c.clone());
        for (j, &k) in e.iter().enumerate() {
            if j == var || k == 0 {
                continue;
            }
            let base = BigRational::from(vals[j].clone());
            let p = num_traits::pow(base, k.unsigned_abs() as usize);
            v = if k > 0 { v * p } else { v / p };
        }
        *acc.entry(e[var]).or_insert_with(BigRational::zero) += v;
    }
    let lo = acc.keys().next().copied().unwrap_or(0);
    let hi = acc.keys().last().copied().unwrap_or(0);
    let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (k, v) in acc {
        out[(k - lo) as usize] = v;
    }
    strip_low(out)
}

/// Order of vanishing at a rational point from the expansion of
/// `f(ρ + s)` in the shifted variables.
pub fn shift_order(f: &LaurentPoly, rho: &[i64]) -> u32 {
    let lo = f.min_exponents();
    let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (e, c) in f.terms() {
        let e: Vec<u32> = e.iter().zip(&lo).map(|(a, b)| (a - b) as u32).collect();
        // expand Π (ρ_i + s_i)^{e_i}
        let mut parts: Vec<(Vec<u32>, BigRational)> = vec![(vec![], BigRational::from(c.clone()))];
        for (i, &ei) in e.iter().enumerate() {
            let mut next = Vec::new();
            for (mono, coef) in &parts {
                for j in 0..=ei {
                    let binom = binomial(ei, j);
                    let r = BigRational::from(num_traits::pow(BigInt::from(rho[i]), (ei - j) as usize));
                    let mut m = mono.clone();
                    m.push(j);
                    next.push((m, coef * BigRational::from(binom) * r));
                }
            }
            parts = next;
        }
        for (m, v) in parts {
            *acc.entry(m).or_insert_with(BigRational::zero) += v;
        }
    }
    acc.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(m, _)| m.iter().sum::<u32>())
        .min()
        .expect("nonzero polynomial")
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Cofactor expansion along the first row.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * int_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn submatrix<T: Clone>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

/// Gcd of all `k × k` minors (the `k`-th determinantal divisor).
pub fn determinantal_divisor(m: &[Vec<BigInt>], ncols: usize, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(ncols, k) {
            g = num_integer::Integer::gcd(&g, &int_det(&submatrix(m, &rs, &cs)));
        }
    }
    g.abs()
}

pub fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, ncols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn cyclo_det(m: &[Vec<CycloNumber>]) -> CycloNumber {
    let n = m.len();
    if n == 0 {
        return CycloNumber::one();
    }
    let mut total = CycloNumber::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CycloNumber>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][j].try_mul(&cyclo_det(&minor)).unwrap();
        total = if j % 2 == 0 { total.try_add(&term) } else { total.try_sub(&term) }.unwrap();
    }
    total
}

/// Size of the largest nonvanishing minor.
pub fn minor_rank(m: &[Vec<CycloNumber>], ncols: usize) -> usize {
    let h = m.len();
    (1..=h.min(ncols))
        .rev()
        .find(|&k| {
            subsets(h, k)
                .iter()
                .any(|rs| subsets(ncols, k).iter().any(|cs| !cyclo_det(&submatrix(m, rs, cs)).is_zero()))
        })
        .unwrap_or(0)
}

/// `Φ_n` by repeated exact division of `t^n - 1`, integer coefficients.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = int_div_monic(&p, &cyclotomic(d));
        }
    }
    p
}

fn int_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "inexact division");
    q
}
