//! Partial factorization into binomial-direction factors.
//!
//! Every polynomial `p(t^e)` with `e` primitive is recovered: the support is
//! split into cosets of `Z·e`, and the gcd of the coset polynomials is the
//! largest factor living in direction `e`. Its univariate image is then split
//! into cyclotomic and rational-linear pieces. Factors that do not live in a
//! single direction are left as the unresolved remainder.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{gcd_many, primitive_direction, sev_decompose, squarefree_split, Exponent, LaurentPoly};
use crate::cyclofield::{cyclotomic_dense, euler_phi};
use crate::{Error, Result};

/// Result of stripping cyclotomic factors from a univariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// Nonnegative integer content.
    pub c: BigInt,
    /// `(m, multiplicity)` for each `Φ_m` dividing the input, by increasing `m`.
    pub cyclo: Vec<(u32, u32)>,
    /// Normalized primitive cofactor without cyclotomic factors.
    pub residual: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Normalized, primitive.
    pub poly: LaurentPoly,
    pub multiplicity: u32,
    /// True only when irreducibility is certain.
    pub irreducible: bool,
    /// `e` with `poly ≐ P(t^e)`, when known.
    pub direction: Option<Exponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub constant: BigInt,
    pub factors: Vec<Factor>,
    /// Product of whatever could not be split, already raised to its multiplicities.
    pub remainder: Option<LaurentPoly>,
}

impl FactoredPoly {
    /// `constant · Π f_j^{μ_j} · remainder`.
    pub fn product(&self, nvars: usize) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(nvars, self.constant.clone());
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        if let Some(r) = &self.remainder {
            acc = &acc * r;
        }
        acc
    }

    /// Display form such as `2*(t1 - 1)^2*(t1*t2 + 1)`.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_one() || (self.factors.is_empty() && self.remainder.is_none()) {
            parts.push(self.constant.to_string());
        }
        let alone = parts.is_empty() && self.factors.len() + usize::from(self.remainder.is_some()) == 1;
        let mut push = |p: &LaurentPoly, k: u32| {
            let s = p.render(names);
            let s = if p.num_terms() > 1 && (k > 1 || !alone) { alloc::format!("({})", s) } else { s };
            parts.push(if k > 1 { alloc::format!("{}^{}", s, k) } else { s });
        };
        for f in &self.factors {
            push(&f.poly, f.multiplicity);
        }
        if let Some(r) = &self.remainder {
            push(r, 1);
        }
        parts.join("*")
    }
}

fn phi_poly(m: u32) -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        cyclotomic_dense(m)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (vec![k as i32], c)),
    )
}

fn degree(p: &LaurentPoly) -> u32 {
    p.degree_in(0)
}

/// Split a univariate `P ≐ c · Π Φ_m^{mult} · residual`.
///
/// Candidate orders run over `m ≤ 2·deg² + 1` with `φ(m) ≤ deg`, which
/// contains every `m` with `φ(m) ≤ deg`.
pub fn cyclotomic_factor(p: &LaurentPoly) -> Result<CyclotomicSplit> {
    if p.nvars() != 1 {
        return Err(Error::Dimension("univariate polynomial expected".into()));
    }
    let p = p.normalize()?;
    let c = p.content();
    let mut rest = p.primitive_part();
    let d = degree(&rest);
    let mut cyclo = Vec::new();
    let bound = 2 * d * d + 1;
    for m in 1..=bound {
        let cur = degree(&rest);
        if cur == 0 {
            break;
        }
        if euler_phi(m) > cur {
            continue;
        }
        let phi = phi_poly(m);
        let mut k = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            cyclo.push((m, k));
        }
    }
    Ok(CyclotomicSplit {
        c,
        cyclo,
        residual: rest.normalized_or_zero(),
    })
}

/// Positive divisors of `n`, or `None` when `n` is too large to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Linear factors `b·u - a` of a univariate primitive polynomial with nonzero
/// constant term. Returns them with the cofactor, or `None` when the
/// coefficients are too large for divisor enumeration.
fn rational_linear_factors(p: &LaurentPoly) -> Option<(Vec<LaurentPoly>, LaurentPoly)> {
    let mut rest = p.clone();
    let mut found = Vec::new();
    loop {
        if degree(&rest) == 0 {
            return Some((found, rest));
        }
        let (_, cs) = rest.to_dense_univariate();
        let a0 = cs.first().unwrap().clone();
        let an = cs.last().unwrap().clone();
        let num = small_divisors(&a0)?;
        let den = small_divisors(&an)?;
        let mut hit = None;
        'search: for &b in &den {
            for &a in &num {
                if (a as u128).gcd(&(b as u128)) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let lin = LaurentPoly::from_terms(
                        1,
                        [
                            (vec![1], BigInt::from(b)),
                            (vec![0], -BigInt::from(a) * sign),
                        ],
                    );
                    if let Some(q) = rest.div_exact(&lin) {
                        hit = Some((lin, q));
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some((lin, q)) => {
                found.push(lin.normalized_or_zero());
                rest = q;
            }
            None => return Some((found, rest)),
        }
    }
}

/// Pieces of a squarefree univariate `g` with their irreducibility flags.
fn split_univariate(g: &LaurentPoly) -> Result<Vec<(LaurentPoly, bool)>> {
    let split = cyclotomic_factor(g)?;
    let mut out: Vec<(LaurentPoly, bool)> = split
        .cyclo
        .iter()
        .flat_map(|&(m, k)| core::iter::repeat_n(phi_poly(m), k as usize))
        .map(|p| (p, true))
        .collect();
    let r = split.residual;
    if degree(&r) == 0 {
        return Ok(out);
    }
    match rational_linear_factors(&r) {
        Some((lins, rest)) => {
            out.extend(lins.into_iter().map(|l| (l, true)));
            let d = degree(&rest);
            if d > 0 {
                // no rational root: irreducible over Q up to degree 3
                out.push((rest, d <= 3));
            }
        }
        None => out.push((r.clone(), degree(&r) == 1)),
    }
    Ok(out)
}

/// Largest univariate `G` with `G(t^e) | f`, normalized.
fn direction_gcd(f: &LaurentPoly, e: &[i32]) -> LaurentPoly {
    let i = e.iter().position(|&x| x != 0).unwrap();
    let mut cosets: BTreeMap<Exponent, LaurentPoly> = BTreeMap::new();
    for (v, c) in f.terms() {
        let k = Integer::div_floor(&v[i], &e[i]);
        let b: Exponent = v.iter().zip(e).map(|(x, y)| x - k * y).collect();
        cosets
            .entry(b)
            .or_insert_with(|| LaurentPoly::zero(1))
            .add_term(vec![k], c.clone());
    }
    if cosets.values().any(|q| q.num_terms() < 2) {
        return LaurentPoly::one(1);
    }
    let qs: Vec<LaurentPoly> = cosets.into_values().collect();
    gcd_many(&qs).primitive_part()
}

/// Primitive directions between support points, deduplicated.
fn candidate_directions(f: &LaurentPoly) -> BTreeSet<Exponent> {
    let pts: Vec<&Exponent> = f.terms().map(|(e, _)| e).collect();
    let mut out = BTreeSet::new();
    for (a, p) in pts.iter().enumerate() {
        for q in &pts[a + 1..] {
            let d: Vec<i32> = q.iter().zip(p.iter()).map(|(x, y)| x - y).collect();
            if let Some(e) = primitive_direction(&d) {
                out.insert(e);
            }
        }
    }
    out
}

/// `(factor, irreducible, direction)`.
type Piece = (LaurentPoly, bool, Option<Exponent>);

/// Split a squarefree primitive `g` into direction factors and a leftover.
fn split_squarefree(g: &LaurentPoly, candidates: &[LaurentPoly]) -> Result<(Vec<Piece>, LaurentPoly)> {
    let mut rest = g.clone();
    let mut out = Vec::new();
    for c in candidates {
        while !rest.is_constant() {
            match rest.div_exact(c) {
                Some(q) => {
                    let dir = sev_decompose(c)?.map(|(_, e)| e);
                    out.push((c.clone(), false, dir));
                    rest = q;
                }
                None => break,
            }
        }
    }
    'outer: while !rest.clear_monomial().is_constant() {
        for e in candidate_directions(&rest) {
            let ge = direction_gcd(&rest, &e);
            if degree(&ge) == 0 {
                continue;
            }
            for (piece, irreducible) in split_univariate(&ge)? {
                let poly = piece.compose_monomial(&e).normalize()?;
                rest = rest.div_exact(&poly).expect("direction factor divides");
                out.push((poly, irreducible, Some(e.clone())));
            }
            continue 'outer;
        }
        break;
    }
    Ok((out, rest))
}

/// Factor `f` as far as direction extraction and trial division allow.
///
/// User `candidates` are tried first on every squarefree part; they are
/// normalized, and units are ignored.
pub fn factor(f: &LaurentPoly, candidates: &[LaurentPoly]) -> Result<FactoredPoly> {
    let f = f.normalize()?;
    let n = f.nvars();
    let constant = f.content();
    let prim = f.primitive_part();
    let mut out = FactoredPoly {
        constant,
        factors: Vec::new(),
        remainder: None,
    };
    if prim.is_constant() {
        return Ok(out);
    }
    let cands: Vec<LaurentPoly> = candidates
        .iter()
        .filter(|c| !c.is_zero() && !c.is_unit())
        .map(|c| c.normalize_primitive())
        .filter(|c| !c.is_constant())
        .collect();
    if cands.iter().any(|c| c.nvars() != n) {
        return Err(Error::Dimension("candidate variable count differs".into()));
    }
    let mut remainder = LaurentPoly::one(n);
    for (g, i) in squarefree_split(&prim)? {
        let (pieces, rest) = split_squarefree(&g, &cands)?;
        for (poly, irreducible, direction) in pieces {
            match out.factors.iter_mut().find(|x| x.poly == poly) {
                Some(x) => x.multiplicity += i,
                None => out.factors.push(Factor {
                    poly,
                    multiplicity: i,
                    irreducible,
                    direction,
                }),
            }
        }
        if !rest.clear_monomial().is_constant() {
            remainder = &remainder * &rest.pow(i);
        }
    }
    if !remainder.is_constant() {
        out.remainder = Some(remainder.normalized_or_zero());
    }
    debug_assert!(out.product(n).associated(&f));
    Ok(out)
}
