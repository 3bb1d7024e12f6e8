//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! `ζ_N` is the class of `t` in `Q[t]/Φ_N`; no complex embedding is fixed.
//! Values of different conductors are lifted to the lcm conductor through
//! `ζ_N = ζ_L^{L/N}`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::caps::MAX_CONDUCTOR;
use crate::laurent::LaurentPoly;
use crate::upoly::QPoly;
use crate::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `t^k - 1` as a dense integer polynomial.
fn binom_dense(k: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); k as usize + 1];
    v[0] = -BigInt::one();
    v[k as usize] = BigInt::one();
    v
}

fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic divisor.
fn dense_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &c * bj;
        }
        q[k - db] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

/// Dense coefficients of `Φ_n` via the Möbius product `Π (t^d - 1)^{μ(n/d)}`.
pub(crate) fn cyclotomic_dense(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = dense_mul(&num, &binom_dense(d)),
            -1 => den = dense_mul(&den, &binom_dense(d)),
            _ => {}
        }
    }
    dense_div_monic(&num, &den)
}

/// The cyclotomic polynomial `Φ_n` as a univariate Laurent polynomial, computed
/// by dividing `t^n - 1` by `Φ_d` for the proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for d in divisors(n) {
        let mut p = LaurentPoly::monomial(1, vec![d as i32], BigInt::one()) - LaurentPoly::one(1);
        for e in divisors(d) {
            if e < d {
                p = p.div_exact(&memo[&e]).expect("Φ_e divides t^d - 1");
            }
        }
        memo.insert(d, p);
    }
    memo.remove(&n).unwrap()
}

/// An element of `Q(ζ_N)` stored as a polynomial in `ζ_N` of degree `< φ(N)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u32,
    modulus: Arc<Vec<BigInt>>,
    coeffs: Vec<BigRational>,
}

fn check_conductor(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidCharacter("conductor must be positive".into()));
    }
    if n > MAX_CONDUCTOR {
        return Err(Error::CapExceeded {
            cap: "conductor",
            detail: format!("conductor {} > {}", n, MAX_CONDUCTOR),
        });
    }
    Ok(())
}

impl CycloNumber {
    fn from_raw(conductor: u32, modulus: Arc<Vec<BigInt>>, coeffs: Vec<BigRational>) -> Self {
        let mut x = CycloNumber {
            conductor,
            modulus,
            coeffs,
        };
        x.reduce();
        x
    }

    fn reduce(&mut self) {
        let d = self.modulus.len() - 1;
        let c = &mut self.coeffs;
        while c.len() > d {
            let lead = c.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (j, m) in self.modulus[..d].iter().enumerate() {
                c[base + j] -= &lead * BigRational::from_integer(m.clone());
            }
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
    }

    /// A rational number (conductor 1).
    pub fn rational(q: BigRational) -> Self {
        Self::from_raw(1, Arc::new(cyclotomic_dense(1)), vec![q])
    }

    pub fn from_int(k: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self> {
        check_conductor(n)?;
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Ok(Self::from_raw(n, Arc::new(cyclotomic_dense(n)), coeffs))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis `1, ζ_N, ..., ζ_N^{φ(N)-1}` (trailing zeros dropped).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value, when the number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Re-express in `Q(ζ_l)`; `l` must be a multiple of the conductor.
    pub fn lift(&self, l: u32) -> Result<Self> {
        check_conductor(l)?;
        assert!(l.is_multiple_of(self.conductor), "lift target must be a multiple");
        if l == self.conductor {
            return Ok(self.clone());
        }
        let s = (l / self.conductor) as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * s + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * s] = c.clone();
        }
        Ok(Self::from_raw(l, Arc::new(cyclotomic_dense(l)), coeffs))
    }

    fn common(&self, o: &Self) -> Result<(Self, Self)> {
        if self.conductor == o.conductor {
            return Ok((self.clone(), o.clone()));
        }
        let l = self.conductor.lcm(&o.conductor);
        Ok((self.lift(l)?, o.lift(l)?))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|k| a.coeff(k) + b.coeff(k))
            .collect();
        Ok(Self::from_raw(a.conductor, a.modulus.clone(), coeffs))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        if a.is_zero() || b.is_zero() {
            return Ok(Self::from_raw(a.conductor, a.modulus, Vec::new()));
        }
        let mut coeffs = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Ok(Self::from_raw(a.conductor, a.modulus, coeffs))
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_raw(
            self.conductor,
            self.modulus.clone(),
            self.coeffs.iter().map(|c| c * q).collect(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let m = QPoly::from_ints(self.modulus.iter().cloned());
        let (g, s, _) = a.ext_gcd(&m);
        debug_assert!(g == QPoly::one(), "Φ_N is irreducible");
        Ok(Self::from_raw(
            self.conductor,
            self.modulus.clone(),
            s.into_coeffs(),
        ))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inverse()?)
    }

    /// `self^k` for any integer `k` (negative powers need a nonzero base).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::from_raw(self.conductor, self.modulus.clone(), vec![BigRational::one()]);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiplicative order when `self` is a root of unity, else `None`.
    ///
    /// Roots of unity in `Q(ζ_N)` have order dividing `lcm(2, N)`.
    pub fn root_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let l = self.conductor.lcm(&2);
        let mut acc = self.clone();
        for k in 1..=l {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, o: &Self) -> bool {
        match self.common(o) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycloNumber {}

// Operator forms panic only when the lifted conductor exceeds the cap; the
// `try_*` methods surface that as an error instead.
impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        self.try_add(o).expect("conductor cap")
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        self.try_sub(o).expect("conductor cap")
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        self.try_mul(o).expect("conductor cap")
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("zeta{}", self.conductor),
                _ => format!("zeta{}^{}", self.conductor, k),
            };
            match (z.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", a)?,
                (false, true) => write!(f, "{}", z)?,
                (false, false) => write!(f, "{}*{}", a, z)?,
            }
        }
        Ok(())
    }
}

/// Lift a list of values to their common conductor.
pub fn common_lift(vals: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
    let l = vals.iter().fold(1u32, |l, v| l.lcm(&v.conductor));
    check_conductor(l)?;
    vals.iter().map(|v| v.lift(l)).collect()
}

/// Evaluate `f` at the point `rho`, using field inverses for negative exponents.
pub fn evaluate(f: &LaurentPoly, rho: &[CycloNumber]) -> Result<CycloNumber> {
    if rho.len() != f.nvars() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, polynomial has {} variables",
            rho.len(),
            f.nvars()
        )));
    }
    if rho.iter().any(|r| r.is_zero()) {
        return Err(Error::ZeroCoordinate);
    }
    let rho = common_lift(rho)?;
    let mut acc = match rho.first() {
        Some(r) => r.scale(&BigRational::zero()),
        None => CycloNumber::zero(),
    };
    let mut powers: BTreeMap<(usize, i32), CycloNumber> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut term = CycloNumber::rational(BigRational::from_integer(c.clone()));
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if let Entry::Vacant(slot) = powers.entry((i, k)) {
                slot.insert(rho[i].pow(k as i64)?);
            }
            term = term.try_mul(&powers[&(i, k)])?;
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// Exact rank by Gaussian elimination over the common cyclotomic field.
pub fn rank_over_field(m: &[Vec<CycloNumber>]) -> Result<usize> {
    let flat: Vec<CycloNumber> = m.iter().flatten().cloned().collect();
    if flat.is_empty() {
        return Ok(0);
    }
    let ncols = m[0].len();
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let lifted = common_lift(&flat)?;
    let mut rows: Vec<Vec<CycloNumber>> = lifted.chunks(ncols).map(|c| c.to_vec()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inverse()?;
        let prow: Vec<CycloNumber> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..ncols {
                rows[r][c] = &rows[r][c] - &(&f * &prow[c]);
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    Ok(rank)
}

/// A character given by one nonzero value per generator (or per torus coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<CycloNumber>,
}

impl Character {
    pub fn new(values: Vec<CycloNumber>) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(Character { values })
    }

    pub fn trivial(n: usize) -> Self {
        Character {
            values: vec![CycloNumber::one(); n],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `name=value` pairs in the literal grammar.
    pub fn render(&self, names: &[String]) -> String {
        names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{}={}", n, v))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let valid = |x: &str, allow_sign: bool| {
        let body = if allow_sign {
            x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x)
        } else {
            x
        };
        !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let n: BigInt = num.trim_start_matches('+').parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parse one value: a rational, `zetaN`, `zetaN^k`, optionally with a rational
/// multiplier (`2*zeta3`, `-zeta6^5`, `1/2*zeta4`).
pub fn parse_value(s: &str) -> Result<CycloNumber> {
    let bad = || Error::InvalidCharacter(format!("cannot parse value `{}`", s.trim()));
    let t = s.trim();
    let Some(zpos) = t.find("zeta") else {
        return parse_rational(t).map(CycloNumber::rational).ok_or_else(bad);
    };
    let (mult_str, root) = t.split_at(zpos);
    let mult_str = mult_str.trim().trim_end_matches('*').trim();
    let mult = match mult_str {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        m => parse_rational(m).ok_or_else(bad)?,
    };
    let root = &root[4..];
    let (n_str, k_str) = match root.split_once('^') {
        Some((a, b)) => (a, b.trim().trim_start_matches('(').trim_end_matches(')')),
        None => (root, "1"),
    };
    let n: u32 = n_str.trim().parse().map_err(|_| bad())?;
    let k: i64 = k_str.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(CycloNumber::root_of_unity(n, k)?.scale(&mult))
}

/// Parse a literal such as `x1=-1, x2=1, x3=zeta3^2` against the given names.
/// Every name must be assigned exactly once.
pub fn parse_character_literal(s: &str, names: &[String]) -> Result<Character> {
    let mut vals: Vec<Option<CycloNumber>> = vec![None; names.len()];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidCharacter(format!("expected name=value, got `{}`", part)))?;
        let name = name.trim();
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UndeclaredName(name.to_string()))?;
        if vals[idx].is_some() {
            return Err(Error::InvalidCharacter(format!("`{}` assigned twice", name)));
        }
        let v = parse_value(value)?;
        if v.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        vals[idx] = Some(v);
    }
    let mut out = Vec::with_capacity(names.len());
    for (n, v) in names.iter().zip(vals) {
        out.push(v.ok_or_else(|| Error::InvalidCharacter(format!("no value for `{}`", n)))?);
    }
    Character::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn z(n: u32, k: i64) -> CycloNumber {
        CycloNumber::root_of_unity(n, k).unwrap()
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), LaurentPoly::univariate(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), LaurentPoly::univariate(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), LaurentPoly::univariate(&[1, 0, 0, 0, 1]));
        for n in 1..=40 {
            let dense = cyclotomic_dense(n);
            assert_eq!(
                LaurentPoly::from_terms(
                    1,
                    dense.into_iter().enumerate().map(|(k, c)| (vec![k as i32], c))
                ),
                cyclotomic_poly(n),
                "n = {}",
                n
            );
            assert_eq!(cyclotomic_poly(n).to_dense_univariate().1.len() as u32, euler_phi(n) + 1);
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for n in 1..=24u32 {
            let x = z(n, 1);
            assert!(x.pow(n as i64).unwrap().is_one());
            for k in 1..n {
                assert!(!x.pow(k as i64).unwrap().is_one(), "zeta{}^{}", n, k);
            }
        }
        assert_eq!(z(3, 1).root_order(), Some(3));
        assert_eq!((-&z(3, 1)).root_order(), Some(6));
        assert_eq!(CycloNumber::from_int(2).root_order(), None);
    }

    #[test]
    fn mixed_conductors() {
        // ζ_6^2 = ζ_3 and ζ_4 · ζ_4 = -1
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycloNumber::from_int(-1));
        let s = &z(3, 1) + &z(4, 1);
        assert_eq!(s.conductor(), 12);
        // 1 + ζ_3 + ζ_3^2 = 0
        assert!((&(&CycloNumber::one() + &z(3, 1)) + &z(3, 2)).is_zero());
    }

    #[test]
    fn inverses() {
        let a = &z(5, 1) + &CycloNumber::from_int(2);
        let b = a.inverse().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(CycloNumber::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let n2 = names(&["t1", "t2"]);
        let f = parse_poly("t1*t2 + 1", &n2).unwrap();
        let v = evaluate(&f, &[CycloNumber::from_int(-1), CycloNumber::one()]).unwrap();
        assert!(v.is_zero());
        let n1 = names(&["t"]);
        let g = parse_poly("t - 1", &n1).unwrap();
        assert!(!evaluate(&g, &[z(3, 1)]).unwrap().is_zero());
        let h = parse_poly("t^-1", &n1).unwrap();
        assert_eq!(evaluate(&h, &[CycloNumber::from_int(-1)]).unwrap(), CycloNumber::from_int(-1));
        assert_eq!(evaluate(&h, &[CycloNumber::zero()]), Err(Error::ZeroCoordinate));
    }

    #[test]
    fn ranks() {
        let zero = CycloNumber::zero();
        let one = CycloNumber::one();
        assert_eq!(rank_over_field(&vec![vec![zero.clone(); 3]; 3]).unwrap(), 0);
        let id: Vec<Vec<CycloNumber>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
            .collect();
        assert_eq!(rank_over_field(&id).unwrap(), 3);
        // Fox rows of the torus bundle at t = -1: only (-1, 0, 0) survives
        let m1 = CycloNumber::from_int(-1);
        let m = vec![
            vec![zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero.clone()],
            vec![m1, zero.clone(), zero.clone()],
        ];
        assert_eq!(rank_over_field(&m).unwrap(), 1);
    }

    #[test]
    fn character_literals() {
        let ns = names(&["x1", "x2", "x3"]);
        let c = parse_character_literal("x1=-1, x2=1, x3=zeta3^2", &ns).unwrap();
        assert_eq!(c.values[2], z(3, 2));
        let d = parse_character_literal("x3 = 2*zeta3, x1=1/2, x2=-zeta4", &ns).unwrap();
        assert_eq!(d.values[0], CycloNumber::rational(BigRational::new(1.into(), 2.into())));
        assert_eq!(d.values[1], -&z(4, 1));
        assert!(matches!(parse_character_literal("x1=0, x2=1, x3=1", &ns), Err(Error::ZeroCoordinate)));
        assert!(matches!(parse_character_literal("x1=1, x2=1", &ns), Err(Error::InvalidCharacter(_))));
        assert!(matches!(parse_character_literal("y=1", &ns), Err(Error::UndeclaredName(_))));
        assert!(matches!(parse_character_literal("x1=zeta", &ns), Err(Error::InvalidCharacter(_))));
        assert!(matches!(
            parse_character_literal("x1=zeta241, x2=1, x3=1", &ns),
            Err(Error::CapExceeded { .. })
        ));
    }
}
