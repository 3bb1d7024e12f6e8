//! Necessary conditions for quasi-projectivity read off the Alexander polynomial.
//!
//! The isotropy condition on positive-dimensional components needs cup
//! product data and is not checked here.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::laurent::{
    cyclotomic_factor, primitive_direction, sev_decompose, Exponent, FactoredPoly, LaurentPoly,
};
use crate::{Error, Result};

/// A resolved factor of `Δ` with the direction of its zero set when that set
/// is a (possibly translated) codimension-one subtorus `t^a = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDirection {
    pub component: LaurentPoly,
    pub direction: Option<Exponent>,
    pub translated: bool,
}

/// `(a, c)` with `f ≐ t^a - c`, `a` primitive with first nonzero entry positive.
pub fn binomial_shape(f: &LaurentPoly) -> Option<(Exponent, BigRational)> {
    if f.num_terms() != 2 {
        return None;
    }
    let mut it = f.terms();
    let (lo, cl) = it.next()?;
    let (hi, ch) = it.next()?;
    // terms come in lex order, so hi - lo has positive first nonzero entry
    let d: Vec<i32> = hi.iter().zip(lo).map(|(a, b)| a - b).collect();
    let a = primitive_direction(&d)?;
    Some((a, BigRational::new(-cl.clone(), ch.clone())))
}

/// Directions of the binomial factors; other factors and the remainder get none.
pub fn component_directions(factored: &FactoredPoly) -> Vec<ComponentDirection> {
    let mut out: Vec<ComponentDirection> = factored
        .factors
        .iter()
        .map(|f| match binomial_shape(&f.poly) {
            Some((a, c)) => ComponentDirection {
                component: f.poly.clone(),
                direction: Some(a),
                translated: c != BigRational::from_integer(1.into()),
            },
            None => ComponentDirection {
                component: f.poly.clone(),
                direction: None,
                translated: false,
            },
        })
        .collect();
    if let Some(r) = &factored.remainder {
        out.push(ComponentDirection {
            component: r.clone(),
            direction: None,
            translated: false,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairClass {
    Parallel,
    /// Distinct directions meeting in a finite set (two variables).
    TransverseFinite,
    /// Distinct directions meeting in a positive-dimensional set.
    TransverseInfinite,
}

impl PairClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::Parallel => "parallel",
            PairClass::TransverseFinite => "transverse-finite",
            PairClass::TransverseInfinite => "transverse-infinite",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Consistent,
    Obstructed,
    NoObstructionApplicable,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NoObstructionApplicable => "NO-OBSTRUCTION-APPLICABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    /// `(i, j, class)` over pairs of entries that both carry a direction.
    pub pairs: Vec<(usize, usize, PairClass)>,
    pub verdict: Verdict,
    /// Entries without a direction.
    pub unresolved: usize,
}

/// Pairwise relative position of the codimension-one components.
pub fn position_report(dirs: &[ComponentDirection], b1: usize) -> Result<PositionReport> {
    let with: Vec<usize> = (0..dirs.len()).filter(|&i| dirs[i].direction.is_some()).collect();
    let unresolved = dirs.len() - with.len();
    if with.is_empty() {
        return Ok(PositionReport {
            pairs: Vec::new(),
            verdict: Verdict::Inconclusive,
            unresolved,
        });
    }
    let mut pairs = Vec::new();
    for (x, &i) in with.iter().enumerate() {
        for &j in &with[x + 1..] {
            let class = if dirs[i].direction == dirs[j].direction {
                PairClass::Parallel
            } else if b1 >= 3 {
                PairClass::TransverseInfinite
            } else {
                PairClass::TransverseFinite
            };
            pairs.push((i, j, class));
        }
    }
    let verdict = if b1 == 2 {
        Verdict::NoObstructionApplicable
    } else if pairs.iter().any(|p| p.2 == PairClass::TransverseInfinite) {
        Verdict::Obstructed
    } else {
        Verdict::Consistent
    };
    Ok(PositionReport {
        pairs,
        verdict,
        unresolved,
    })
}

/// `Δ ≐ c · P(t^e)` with `P` a product of cyclotomic polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub c: BigInt,
    pub p: LaurentPoly,
    pub e: Exponent,
    /// `(m, multiplicity)` of each `Φ_m` in `P`.
    pub orders: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpReport {
    pub verdict: Verdict,
    pub reason: String,
    pub certificate: Option<Certificate>,
}

fn report(verdict: Verdict, reason: impl Into<String>, certificate: Option<Certificate>) -> QpReport {
    QpReport {
        verdict,
        reason: reason.into(),
        certificate,
    }
}

/// Check `Δ` against the single-essential-variable and cyclotomic
/// conditions (or `Δ ≐ const` for projective varieties).
pub fn qp_verdict(delta: &LaurentPoly, b1: usize, projective: bool) -> Result<QpReport> {
    if delta.nvars() != b1 {
        return Err(Error::Dimension(format!(
            "Alexander polynomial has {} variables but b1 = {}",
            delta.nvars(),
            b1
        )));
    }
    if projective {
        return Ok(if delta.num_terms() <= 1 {
            report(Verdict::Consistent, "constant", None)
        } else {
            report(Verdict::Obstructed, "projective but not constant", None)
        });
    }
    if delta.is_zero() {
        return Ok(report(Verdict::Consistent, "zero", None));
    }
    if b1 <= 1 {
        return Ok(report(Verdict::Consistent, "b1 <= 1", None));
    }
    if delta.is_unit() {
        let e = sev_unit_direction(b1);
        let cert = Certificate {
            c: BigInt::from(1),
            p: LaurentPoly::one(1),
            e,
            orders: Vec::new(),
        };
        return Ok(report(Verdict::Consistent, "unit", Some(cert)));
    }
    let Some((p, e)) = sev_decompose(delta)? else {
        return Ok(if b1 == 2 {
            report(
                Verdict::NoObstructionApplicable,
                "b1 = 2 allows several essential variables",
                None,
            )
        } else {
            report(Verdict::Obstructed, "not a single essential variable", None)
        });
    };
    let split = cyclotomic_factor(&p)?;
    if !split.residual.is_unit() {
        return Ok(report(
            Verdict::Obstructed,
            format!("univariate image has a non-cyclotomic factor {}", split.residual.render(&["u".into()])),
            None,
        ));
    }
    let cert = Certificate {
        c: split.c.abs(),
        p: p.primitive_part().normalized_or_zero(),
        e,
        orders: split.cyclo,
    };
    Ok(report(Verdict::Consistent, "cyclotomic in a single essential variable", Some(cert)))
}

fn sev_unit_direction(n: usize) -> Exponent {
    let mut e = alloc::vec![0; n];
    e[0] = 1;
    e
}
