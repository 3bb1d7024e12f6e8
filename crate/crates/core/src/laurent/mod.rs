//! Multivariate Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] is an element of `Z[t_1^{±1}, ..., t_n^{±1}]`. Units of
//! this ring are `±t^ν`; [`LaurentPoly::normalize`] picks a canonical
//! representative of each class modulo units while keeping the integer
//! content.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::upoly::QPoly;
use crate::{Error, Result};

mod factor;
mod gcd;
mod newton;
mod parse;
mod vanishing;

pub use factor::{cyclotomic_factor, factor, CyclotomicSplit, Factor, FactoredPoly};
pub use gcd::{divides, gcd, gcd_many, multiplicity, squarefree_split};
pub use newton::{is_collinear, newton_vertices, sev_decompose, support_dimension};
pub use parse::parse_poly;
pub use vanishing::vanishing_order;

/// Exponent vector of a monomial.
pub type Exponent = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigInt::from(c))
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: BigInt) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    /// Build from `(exponent, coefficient)` pairs, combining like terms.
    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Univariate polynomial `Σ cs[k] t^k`.
    pub fn univariate(cs: &[i64]) -> Self {
        Self::from_terms(
            1,
            cs.iter()
                .enumerate()
                .map(|(k, &c)| (vec![k as i32], BigInt::from(c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// True when the support is `{0}` or empty.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// True when `self` is a single monomial (possibly with coefficient ≠ ±1).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of the Laurent ring are `±t^ν`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    /// Lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Componentwise minimum of the support; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn max_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Degree span `max - min` of variable `i` over the support.
    pub fn degree_in(&self, i: usize) -> u32 {
        if self.is_zero() {
            return 0;
        }
        (self.max_exponents()[i] - self.min_exponents()[i]) as u32
    }

    /// True when variable `i` occurs with a nonzero exponent somewhere.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// Total degree after clearing negative exponents.
    pub fn total_degree_span(&self) -> u32 {
        let m = self.min_exponents();
        self.terms
            .keys()
            .map(|e| e.iter().zip(&m).map(|(a, b)| (a - b) as u32).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Multiply by the unique monomial making every variable's minimum exponent 0.
    pub fn clear_monomial(&self) -> Self {
        let m: Exponent = self.min_exponents().iter().map(|x| -x).collect();
        self.shift(&m)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, keeping signs.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.div_scalar(&c).unwrap()
    }

    /// Canonical representative modulo units `±t^ν`: every variable's minimum
    /// exponent is 0 and the lexicographically greatest term has a positive
    /// coefficient. Integer content is kept.
    pub fn normalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.normalized_or_zero())
    }

    /// Like [`normalize`](Self::normalize) but maps zero to zero.
    pub fn normalized_or_zero(&self) -> Self {
        let p = self.clear_monomial();
        match p.leading_term() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    /// Canonical primitive representative, i.e. the class modulo units of
    /// `Q[t^{±1}]` (the `≐_C` relation when comparing integer polynomials).
    pub fn normalize_primitive(&self) -> Self {
        self.normalized_or_zero().primitive_part()
    }

    /// Equality up to units `±t^ν`.
    pub fn associated(&self, other: &Self) -> bool {
        self.normalized_or_zero() == other.normalized_or_zero()
    }

    /// Equality up to units and nonzero constants.
    pub fn associated_over_c(&self, other: &Self) -> bool {
        self.normalize_primitive() == other.normalize_primitive()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit `±t^ν`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(
            self.nvars,
            e.iter().map(|x| -x).collect(),
            c.clone(),
        ))
    }

    /// Partial derivative with respect to `t_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigInt::from(e[i]));
        }
        out
    }

    /// Substitute `t_i ↦ s^{images[i]}` where `s` has `target_nvars` variables.
    pub fn substitute_monomials(&self, images: &[Exponent], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i32; target_nvars];
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                for (slot, img) in ne.iter_mut().zip(&images[k]) {
                    *slot += ek * img;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// For a univariate `self = P(u)`, return `P(t^e)` in `e.len()` variables.
    pub fn compose_monomial(&self, e: &[i32]) -> Self {
        assert_eq!(self.nvars, 1);
        self.substitute_monomials(&[e.to_vec()], e.len())
    }

    /// Univariate coefficients after clearing the monomial: returns `(shift, coeffs)`
    /// with `self = t^shift * Σ coeffs[k] t^k`.
    pub fn to_dense_univariate(&self) -> (i32, Vec<BigInt>) {
        assert_eq!(self.nvars, 1, "univariate polynomial expected");
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.min_exponents()[0];
        let hi = self.max_exponents()[0];
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    /// The univariate polynomial as an element of `Q[t]` after clearing `t`-powers.
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_ints(self.to_dense_univariate().1)
    }

    pub fn from_qpoly_primitive(p: &QPoly) -> Self {
        Self::from_terms(
            1,
            p.primitive_integer_coeffs()
                .into_iter()
                .enumerate()
                .map(|(k, c)| (vec![k as i32], c)),
        )
    }

    /// Evaluate at the all-ones point.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }

    /// Canonical text: terms by descending lexicographic exponent, explicit `*`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                factors.push(a.to_string());
            }
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[k].clone()),
                    _ => {
                        let mut f = names[k].clone();
                        let _ = write!(f, "^{}", x);
                        factors.push(f);
                    }
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Rendering with default names `t` (one variable) or `t1, ..., tn`.
    pub fn render_default(&self) -> String {
        self.render(&default_var_names(self.nvars))
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials over different numbers of variables"
        );
    }
}

/// `t` for a single variable, `t1, ..., tn` otherwise.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["t".to_string()]
    } else {
        (1..=n).map(|i| alloc::format!("t{}", i)).collect()
    }
}

/// Primitive version of an integer vector with its first nonzero entry positive.
/// Returns `None` for the zero vector.
pub fn primitive_direction(v: &[i32]) -> Option<Exponent> {
    let g = v.iter().fold(0i32, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    let first = *v.iter().find(|&&x| x != 0).unwrap();
    let s = if first < 0 { -g } else { g };
    Some(v.iter().map(|x| x / s).collect())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

fn add_exponents(a: &[i32], b: &[i32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.check_vars(o);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(add_exponents(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}


#[cfg(test)]
mod tests {
    use super::test_util::p;
    use super::*;

    const T3: [&str; 3] = ["t1", "t2", "t3"];

    #[test]
    fn normalize_strips_units_only() {
        let f = p(&T3, "-t1^-1*t2*(t1*t2 - 1)");
        assert_eq!(f.normalize().unwrap(), p(&T3, "t1*t2 - 1"));
        let g = p(&["t"], "6*t - 4");
        assert_eq!(g.normalize().unwrap(), g);
        let h = p(&T3, "(t1*t2*t3 - 1)^2");
        assert_eq!(h.normalize().unwrap(), h);
        assert_eq!(LaurentPoly::zero(2).normalize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn render_is_canonical() {
        let f = p(&T3, "t3*t2*t1 - 1");
        assert_eq!(f.render_default(), "t1*t2*t3 - 1");
        let g = p(&["t"], "1 + 2*t + t^2");
        assert_eq!(g.render_default(), "t^2 + 2*t + 1");
        let h = p(&["x", "y"], "-x^-1 + 3*y");
        assert_eq!(h.render(&["x".into(), "y".into()]), "3*y - x^-1");
    }

    #[test]
    fn substitution_and_derivative() {
        let f = p(&["u"], "u^2 - 1");
        let g = f.compose_monomial(&[1, 1, 1]);
        assert_eq!(g, p(&T3, "t1^2*t2^2*t3^2 - 1"));
        assert_eq!(g.derivative(0), p(&T3, "2*t1*t2^2*t3^2"));
    }

    #[test]
    fn primitive_direction_sign() {
        assert_eq!(primitive_direction(&[-2, 4, 0]), Some(vec![1, -2, 0]));
        assert_eq!(primitive_direction(&[0, 0]), None);
    }
}
