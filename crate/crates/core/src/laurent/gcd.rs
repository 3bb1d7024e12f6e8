//! Exact division, greatest common divisors and squarefree decomposition.
//!
//! The gcd is computed by primitive-part recursion: pick a main variable,
//! split off the content (a gcd in fewer variables) and run the subresultant
//! pseudo-remainder sequence on the primitive parts.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::{Error, Result};

/// Exact quotient of polynomials with non-negative exponents over `Z`.
fn poly_div_exact(g: &LaurentPoly, f: &LaurentPoly) -> Option<LaurentPoly> {
    let n = g.nvars();
    if g.is_zero() {
        return Some(LaurentPoly::zero(n));
    }
    let bound = g.max_exponents();
    let (fe, fc) = {
        let (e, c) = f.leading_term()?;
        (e.clone(), c.clone())
    };
    let mut r = g.clone();
    let mut q = LaurentPoly::zero(n);
    while let Some((re, rc)) = r.leading_term() {
        let diff: Vec<i32> = re.iter().zip(&fe).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x < 0) || re.iter().zip(&bound).any(|(a, b)| a > b) {
            return None;
        }
        let (qc, rem) = rc.div_rem(&fc);
        if !rem.is_zero() {
            return None;
        }
        let step = LaurentPoly::monomial(n, diff, qc);
        r = &r - &(&step * f);
        q = &q + &step;
    }
    Some(q)
}

impl LaurentPoly {
    /// Exact quotient `self / d` in the Laurent ring, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.nvars()));
        }
        let mg = self.min_exponents();
        let md = d.min_exponents();
        let q = poly_div_exact(&self.clear_monomial(), &d.clear_monomial())?;
        let s: Vec<i32> = mg.iter().zip(&md).map(|(a, b)| a - b).collect();
        Some(q.shift(&s))
    }
}

/// True iff `g = f * q` for some Laurent polynomial `q`.
pub fn divides(f: &LaurentPoly, g: &LaurentPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(g.div_exact(f).is_some())
}

/// Largest `k` with `f^k | delta`.
pub fn multiplicity(f: &LaurentPoly, delta: &LaurentPoly) -> Result<u32> {
    if f.is_zero() || delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let mut k = 0;
    let mut cur = delta.clone();
    while let Some(q) = cur.div_exact(f) {
        cur = q;
        k += 1;
    }
    Ok(k)
}

/// Coefficients of `f` (non-negative exponents) as a polynomial in variable `v`.
fn split_var(f: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    let n = f.nvars();
    let deg = f.max_exponents()[v].max(0) as usize;
    let mut out = vec![LaurentPoly::zero(n); deg + 1];
    for (e, c) in f.terms() {
        let mut e2 = e.clone();
        let k = e2[v] as usize;
        e2[v] = 0;
        out[k].add_term(e2, c.clone());
    }
    trim(&mut out);
    out
}

fn join_var(cs: &[LaurentPoly], v: usize, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for (k, c) in cs.iter().enumerate() {
        for (e, a) in c.terms() {
            let mut e2 = e.clone();
            e2[v] += k as i32;
            out.add_term(e2, a.clone());
        }
    }
    out
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in the main variable; `deg a >= deg b`.
fn prem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut e = (a.len() as i64) - (b.len() as i64) + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lcr * bj);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let m = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &m;
        }
    }
    r
}

fn div_coeffs(cs: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
    cs.iter()
        .map(|c| poly_div_exact(c, d).expect("subresultant division is exact"))
        .collect()
}

/// Content of `f` with respect to variable `v`: gcd of its coefficients.
fn content_in(f: &LaurentPoly, v: usize) -> LaurentPoly {
    let cs = split_var(f, v);
    let mut acc: Option<LaurentPoly> = None;
    for c in cs.iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.clone(),
            Some(a) => poly_gcd(&a, c),
        });
        // monomials are units in the Laurent ring but not here
        if acc.as_ref().and_then(|a| a.as_constant()).is_some_and(|c| c.magnitude().is_one()) {
            break;
        }
    }
    acc.unwrap_or_else(|| LaurentPoly::zero(f.nvars()))
}

/// Gcd of two nonzero polynomials (non-negative exponents); sign unspecified.
fn poly_gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return LaurentPoly::constant(n, f.content().gcd(&g.content()));
    }
    if poly_div_exact(g, f).is_some() {
        return f.clone();
    }
    if poly_div_exact(f, g).is_some() {
        return g.clone();
    }
    // main variable: smallest degree among the variables that occur
    let v = (0..n)
        .filter(|&i| f.involves(i) || g.involves(i))
        .min_by_key(|&i| {
            let df = f.max_exponents()[i];
            let dg = g.max_exponents()[i];
            (df.max(dg), i)
        })
        .unwrap();
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = poly_gcd(&cf, &cg);
    let pf = poly_div_exact(f, &cf).unwrap();
    let pg = poly_div_exact(g, &cg).unwrap();
    let a = split_var(&pf, v);
    let b = split_var(&pg, v);
    if a.len() <= 1 || b.len() <= 1 {
        return c;
    }
    let h = subresultant_gcd(a, b, v, n);
    &c * &h
}

/// Primitive gcd of two polynomials that are primitive in `v` and of positive degree in it.
fn subresultant_gcd(
    mut a: Vec<LaurentPoly>,
    mut b: Vec<LaurentPoly>,
    v: usize,
    n: usize,
) -> LaurentPoly {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    let mut g = LaurentPoly::one(n);
    let mut h = LaurentPoly::one(n);
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return LaurentPoly::one(n);
        }
        let denom = &g * &h.pow(delta);
        let nb = div_coeffs(&r, &denom);
        a = core::mem::replace(&mut b, nb);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            poly_div_exact(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant h is exact")
        };
    }
    let bp = join_var(&b, v, n);
    let cb = content_in(&bp, v);
    poly_div_exact(&bp, &cb).unwrap()
}

/// Canonical gcd in the Laurent ring. `gcd(0, f) = normalize(f)`, `gcd(0, 0) = 0`.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => LaurentPoly::zero(f.nvars()),
        (true, false) => g.normalized_or_zero(),
        (false, true) => f.normalized_or_zero(),
        (false, false) => {
            poly_gcd(&f.clear_monomial(), &g.clear_monomial()).normalized_or_zero()
        }
    }
}

/// Canonical gcd of a list; zero when every entry is zero.
pub fn gcd_many(fs: &[LaurentPoly]) -> LaurentPoly {
    let n = fs.first().map_or(0, |f| f.nvars());
    let mut nz: Vec<&LaurentPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    nz.sort_by_key(|f| f.num_terms());
    let mut acc: Option<LaurentPoly> = None;
    for f in nz {
        acc = Some(match acc {
            None => f.normalized_or_zero(),
            Some(a) => {
                if f.div_exact(&a).is_some() {
                    a
                } else {
                    gcd(&a, f)
                }
            }
        });
        // monomials are units in the Laurent ring but not here
        if acc.as_ref().and_then(|a| a.as_constant()).is_some_and(|c| c.magnitude().is_one()) {
            break;
        }
    }
    acc.unwrap_or_else(|| LaurentPoly::zero(n))
}

/// Yun decomposition of a polynomial that is primitive with respect to `v`.
fn yun(f: &LaurentPoly, v: usize, out: &mut BTreeMap<u32, LaurentPoly>) {
    let df = f.derivative(v);
    let g = poly_gcd(f, &df);
    let mut c = poly_div_exact(f, &g).unwrap();
    let mut d = &poly_div_exact(&df, &g).unwrap() - &c.derivative(v);
    let mut i = 1u32;
    while !c.is_constant() {
        let a = if d.is_zero() { c.clone() } else { poly_gcd(&c, &d) };
        if !a.is_constant() {
            let slot = out.entry(i).or_insert_with(|| LaurentPoly::one(f.nvars()));
            *slot = &*slot * &a;
        }
        c = poly_div_exact(&c, &a).unwrap();
        d = &poly_div_exact(&d, &a).unwrap() - &c.derivative(v);
        i += 1;
    }
}

/// Squarefree decomposition `f ≐ content(f) · Π g_i^i` with the `g_i`
/// squarefree, pairwise coprime and non-constant.
///
/// Returned pairs are `(g_i, i)` by increasing `i`; the integer content of `f`
/// is not part of the output.
pub fn squarefree_split(f: &LaurentPoly) -> Result<Vec<(LaurentPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let n = f.nvars();
    let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    let mut cur = f.normalize()?.primitive_part();
    while !cur.is_constant() {
        let v = (0..n).find(|&i| cur.involves(i)).unwrap();
        let cont = content_in(&cur, v);
        let pp = poly_div_exact(&cur, &cont).unwrap();
        yun(&pp, v, &mut out);
        cur = cont.clear_monomial();
    }
    Ok(out
        .into_iter()
        .map(|(i, g)| (g.normalized_or_zero(), i))
        .filter(|(g, _)| !g.is_constant())
        .collect())
}
