//! Twisted Betti numbers, jump loci membership and multiplicity bounds.
//!
//! Characters passed to [`twisted_betti`] and [`bounds_report`] are points of
//! the identity component, one coordinate per torus variable of the matrix.
//! Characters given on generators go through [`twisted_betti_on_generators`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::alexander::{
    elementary_divisor_counts, generator_fox_matrix, generic_rank_mod, univariate_invariant_factors,
    AlexanderMatrix,
};
use crate::cyclofield::{evaluate, rank_over_field, Character, CycloNumber};
use crate::intlinalg::{abelianization, validate_character};
use crate::laurent::{cyclotomic_factor, factor, vanishing_order, FactoredPoly, LaurentPoly};
use crate::presentation::{deficiency_lower_bound, GroupPresentation};
use crate::{Error, Result};

/// Whether the first elementary ideal is known to be almost principal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlmostPrincipal {
    Yes(String),
    Unknown,
}

impl AlmostPrincipal {
    pub fn is_yes(&self) -> bool {
        matches!(self, AlmostPrincipal::Yes(_))
    }
}

/// Sufficient conditions only: `b_1 = 1`, positive deficiency, or a caller
/// assertion (link exterior, closed orientable 3-manifold, explicit check).
pub fn almost_principal_status(
    p: &GroupPresentation,
    asserted: Option<&str>,
) -> Result<AlmostPrincipal> {
    let ab = abelianization(p)?;
    Ok(classify(ab.rank, deficiency_lower_bound(p), asserted))
}

/// Same test for a matrix given directly; `m - h` is read off its shape.
pub fn almost_principal_status_matrix(m: &AlexanderMatrix, asserted: Option<&str>) -> AlmostPrincipal {
    let def = m.num_cols() as i64 - m.num_rows() as i64;
    classify(m.nvars(), def, asserted)
}

fn classify(b1: usize, deficiency: i64, asserted: Option<&str>) -> AlmostPrincipal {
    if b1 == 1 {
        AlmostPrincipal::Yes("b1=1".into())
    } else if deficiency >= 1 {
        AlmostPrincipal::Yes("deficiency>0".into())
    } else if let Some(tag) = asserted {
        AlmostPrincipal::Yes(format!("user-asserted: {}", tag))
    } else {
        AlmostPrincipal::Unknown
    }
}

fn check_point(m: &AlexanderMatrix, rho: &Character) -> Result<()> {
    if rho.len() != m.nvars() {
        return Err(Error::InvalidCharacter(format!(
            "character has {} coordinates, torus has dimension {}",
            rho.len(),
            m.nvars()
        )));
    }
    if rho.values.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroCoordinate);
    }
    Ok(())
}

/// `b_1(G, ρ)`: `n` at the trivial character, otherwise
/// `m - 1 - rank A(ρ)`.
pub fn twisted_betti(m: &AlexanderMatrix, rho: &Character) -> Result<usize> {
    check_point(m, rho)?;
    if rho.is_trivial() {
        return Ok(m.nvars());
    }
    let r = rank_over_field(&m.evaluate_at(&rho.values)?)?;
    Ok(m.num_cols() - 1 - r)
}

/// `b_1(G, χ)` for a character given by its values on the generators. Works
/// for characters outside the identity component as well.
pub fn twisted_betti_on_generators(p: &GroupPresentation, chi: &Character) -> Result<usize> {
    if !validate_character(p, chi)? {
        return Err(Error::InvalidCharacter(
            "values do not satisfy the relators".into(),
        ));
    }
    if chi.is_trivial() {
        return Ok(abelianization(p)?.rank);
    }
    let fm = generator_fox_matrix(p);
    let r = rank_over_field(&fm.evaluate_at(&chi.values)?)?;
    Ok(p.num_generators() - 1 - r)
}

/// `ρ ∈ V_k(G)`, i.e. `b_1(G, ρ) ≥ k`.
pub fn cv_membership(m: &AlexanderMatrix, rho: &Character, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("depth must be positive".into()));
    }
    Ok(twisted_betti(m, rho)? >= k)
}

/// `b_1` at a generic point of `V(f)` for irreducible `f`.
pub fn generic_betti(m: &AlexanderMatrix, f: &LaurentPoly) -> Result<usize> {
    Ok(m.num_cols() - 1 - generic_rank_mod(m, f)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub rho: Character,
    pub b1: usize,
    /// `μ_j` when `ρ` lies on exactly one resolved factor and off the remainder.
    pub bound_generic: Option<u32>,
    /// `Σ μ_j ν_ρ(f_j)`, plus `ν_ρ` of the remainder.
    pub bound_pointwise: Option<u32>,
    /// Set when an unresolved remainder contributed to the pointwise bound.
    pub lower_confidence: bool,
    pub almost_principal: AlmostPrincipal,
    /// `ν_ρ(f_j)` for each resolved factor, in order.
    pub orders: Vec<u32>,
    pub remainder_order: Option<u32>,
    pub generic_attained: Option<bool>,
    pub pointwise_attained: Option<bool>,
}

/// Betti number at a nontrivial `ρ` with the multiplicity bounds from a
/// factorization of `Δ`. When the ideal is certified almost principal, a
/// Betti number above the pointwise bound is an error.
pub fn bounds_report(
    m: &AlexanderMatrix,
    factored: &FactoredPoly,
    rho: &Character,
    almost_principal: AlmostPrincipal,
) -> Result<BettiReport> {
    check_point(m, rho)?;
    if rho.is_trivial() {
        return Err(Error::Precondition(
            "bounds are stated for nontrivial characters only".into(),
        ));
    }
    if factored.constant.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b1 = twisted_betti(m, rho)?;
    let mut orders = Vec::with_capacity(factored.factors.len());
    let mut total = 0u32;
    for f in &factored.factors {
        let nu = vanishing_order(&f.poly, &rho.values)?;
        total += f.multiplicity * nu;
        orders.push(nu);
    }
    let remainder_order = match &factored.remainder {
        Some(r) => Some(vanishing_order(r, &rho.values)?),
        None => None,
    };
    total += remainder_order.unwrap_or(0);
    let on: Vec<usize> = (0..orders.len()).filter(|&j| orders[j] > 0).collect();
    let bound_generic = match (on.as_slice(), remainder_order.unwrap_or(0)) {
        ([j], 0) => Some(factored.factors[*j].multiplicity),
        _ => None,
    };
    if almost_principal.is_yes() && b1 as u32 > total {
        return Err(Error::Inconsistency(format!(
            "b1 = {} exceeds the pointwise bound {} for an almost principal ideal",
            b1, total
        )));
    }
    Ok(BettiReport {
        rho: rho.clone(),
        b1,
        bound_generic,
        bound_pointwise: Some(total),
        lower_confidence: factored.remainder.is_some(),
        almost_principal,
        orders,
        remainder_order,
        generic_attained: bound_generic.map(|g| g as usize == b1),
        pointwise_attained: Some(total as usize == b1),
    })
}

/// One root `z ≠ 1` of a univariate `Δ`, given exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub root: CycloNumber,
    /// Minimal polynomial of the root over `Q`.
    pub min_poly: LaurentPoly,
    pub mu: u32,
    pub b1: usize,
    /// `k ↦ e_k(z)`, the number of Jordan blocks of size `k`.
    pub e_counts: BTreeMap<u32, u32>,
    pub equality: bool,
    pub all_higher_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleReport {
    pub roots: Vec<RootReport>,
    /// Irreducible factors whose roots are neither rational nor roots of unity.
    pub skipped: Vec<LaurentPoly>,
}

/// Exact roots of an irreducible univariate factor: all primitive `m`-th roots
/// of unity for `Φ_m`, the rational root of a linear factor, nothing otherwise.
fn exact_roots(f: &LaurentPoly) -> Result<Option<Vec<CycloNumber>>> {
    let (_, cs) = f.to_dense_univariate();
    if cs.len() == 2 {
        let r = BigRational::new(-cs[0].clone(), cs[1].clone());
        return Ok(Some(vec![CycloNumber::rational(r)]));
    }
    let split = cyclotomic_factor(f)?;
    if split.residual.is_unit() && split.cyclo.len() == 1 && split.cyclo[0].1 == 1 {
        let m = split.cyclo[0].0;
        let mut out = Vec::new();
        for k in 1..=m {
            if k.gcd(&m) == 1 {
                out.push(CycloNumber::root_of_unity(m, k as i64)?);
            }
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// Compare `b_1(G, z)` with the multiplicity of each root of `Δ` (one
/// variable), alongside the Jordan block counts of the Alexander invariant.
/// Equality must hold exactly when no block of size `> 1` occurs.
pub fn semisimple_equality_report(
    m: &AlexanderMatrix,
    factored: &FactoredPoly,
) -> Result<SemisimpleReport> {
    if m.nvars() != 1 {
        return Err(Error::Dimension(format!(
            "one torus variable expected, got {}",
            m.nvars()
        )));
    }
    let delta = factored.product(1);
    if delta.is_zero() || delta.is_unit() || delta.num_terms() == 1 {
        return Err(Error::Precondition("Alexander polynomial is constant".into()));
    }
    let invariant = univariate_invariant_factors(m)?;
    let dq = delta.to_qpoly();
    let mut pieces: Vec<LaurentPoly> = factored.factors.iter().map(|f| f.poly.clone()).collect();
    if let Some(r) = &factored.remainder {
        pieces.extend(factor(r, &[])?.factors.into_iter().map(|f| f.poly));
    }
    let mut roots = Vec::new();
    let mut skipped = Vec::new();
    for f in pieces {
        let Some(zs) = exact_roots(&f)? else {
            skipped.push(f);
            continue;
        };
        let mu = dq.multiplicity_of(&f.to_qpoly()) as u32;
        let e_counts = elementary_divisor_counts(&invariant, &f);
        let all_higher_zero = e_counts.keys().all(|&k| k <= 1);
        for z in zs {
            if z.is_one() {
                continue;
            }
            let b1 = twisted_betti(m, &Character::new(vec![z.clone()])?)?;
            let equality = b1 as u32 == mu;
            if equality != all_higher_zero {
                return Err(Error::Inconsistency(format!(
                    "at root {}: b1 = {}, multiplicity {}, block counts {:?}",
                    z, b1, mu, e_counts
                )));
            }
            roots.push(RootReport {
                root: z,
                min_poly: f.clone(),
                mu,
                b1,
                e_counts: e_counts.clone(),
                equality,
                all_higher_zero,
            });
        }
    }
    Ok(SemisimpleReport { roots, skipped })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    /// Characteristic polynomial of `H`, normalized.
    pub delta: LaurentPoly,
    pub minimal_poly: LaurentPoly,
    pub semisimple: bool,
    pub roots: SemisimpleReport,
    /// `(root, predicted equality)`: the minimal polynomial has a simple root there.
    pub predicted: Vec<(CycloNumber, bool)>,
}

/// Alexander matrix `[tI - H | 0]` of the mapping torus with monodromy `H`.
pub fn monodromy_matrix(h: &[Vec<i64>]) -> Result<AlexanderMatrix> {
    let k = h.len();
    if k == 0 || h.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension("square nonempty matrix expected".into()));
    }
    let rows = h
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<LaurentPoly> = r
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let c = LaurentPoly::from_i64(1, -x);
                    if i == j {
                        &c + &LaurentPoly::var(1, 0)
                    } else {
                        c
                    }
                })
                .collect();
            row.push(LaurentPoly::zero(1));
            row
        })
        .collect();
    AlexanderMatrix::from_entries(vec!["t".into()], rows, k + 1)
}

/// Characteristic polynomial, semisimplicity and the predicted Betti
/// equalities for an integer monodromy without eigenvalue 1.
pub fn monodromy_analysis(h: &[Vec<i64>]) -> Result<MonodromyReport> {
    let m = monodromy_matrix(h)?;
    let inv = univariate_invariant_factors(&m)?;
    let mut delta = LaurentPoly::one(1);
    for f in &inv {
        delta = &delta * f;
    }
    let delta = delta.normalize()?;
    if evaluate(&delta, &[CycloNumber::one()])?.is_zero() {
        return Err(Error::Precondition("1 is an eigenvalue of the monodromy".into()));
    }
    let minimal_poly = inv.last().cloned().unwrap_or_else(|| LaurentPoly::one(1));
    let semisimple = minimal_poly.to_qpoly().is_squarefree();
    let factored = factor(&delta, &[])?;
    let roots = semisimple_equality_report(&m, &factored)?;
    let minq = minimal_poly.to_qpoly();
    let predicted = roots
        .roots
        .iter()
        .map(|r| (r.root.clone(), minq.multiplicity_of(&r.min_poly.to_qpoly()) <= 1))
        .collect();
    Ok(MonodromyReport {
        delta,
        minimal_poly,
        semisimple,
        roots,
        predicted,
    })
}

/// Every point of the torus with coordinates of order dividing `order`,
/// lexicographic in the exponent indices.
pub fn torus_points(n: usize, order: u32) -> Result<Vec<Vec<CycloNumber>>> {
    let base: Vec<CycloNumber> = (0..order)
        .map(|k| CycloNumber::root_of_unity(order, k as i64))
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<CycloNumber>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                base.iter().map(move |z| {
                    let mut q = p.clone();
                    q.push(z.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

/// Nontrivial points of order dividing `order` on `V(f)` and off every `V(g)`
/// for `g` in `avoid`.
pub fn sample_component_points(
    f: &LaurentPoly,
    avoid: &[LaurentPoly],
    order: u32,
) -> Result<Vec<Character>> {
    let mut out = Vec::new();
    for pt in torus_points(f.nvars(), order)? {
        if pt.iter().all(|z| z.is_one()) || !evaluate(f, &pt)?.is_zero() {
            continue;
        }
        let mut off = true;
        for g in avoid {
            if evaluate(g, &pt)?.is_zero() {
                off = false;
                break;
            }
        }
        if off {
            out.push(Character::new(pt)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{alexander_poly, fox_matrix, load_matrix};
    use crate::cyclofield::parse_character_literal;
    use crate::laurent::test_util::p;
    use crate::presentation::parse_presentation;
    use alloc::string::ToString;

    const TORUS_BUNDLE: &str =
        "gens: x1 x2 x3\nrel: x1 x2 x1^-1 x2^-1\nrel: x3^-1 x1 x3 x1\nrel: x3^-1 x2 x3 x2 x1^-1";

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn mat(vars: &[&str], rows: &[&[&str]]) -> AlexanderMatrix {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| names(r)).collect();
        load_matrix(&names(vars), &rows).unwrap()
    }

    fn ch(s: &str, vars: &[&str]) -> Character {
        parse_character_literal(s, &names(vars)).unwrap()
    }

    const X: [&str; 3] = ["x1", "x2", "x3"];

    fn commutator_pair(phi: &str, psi: &str) -> AlexanderMatrix {
        let a = format!("(x2-1)*{}", phi);
        let b = format!("(1-x1)*{}", phi);
        let c = format!("(x3-1)*{}", psi);
        let d = format!("(1-x2)*{}", psi);
        mat(&X, &[&[&a, &b, "0"], &["0", &c, &d]])
    }

    #[test]
    fn nongeneric_point_exceeds_multiplicity() {
        let m = commutator_pair("(x1*x2+1)*(x2*x3+1)", "(x1*x2+1)*(x2*x3+1)");
        let rho = ch("x1=-1, x2=1, x3=-1", &X);
        assert_eq!(twisted_betti(&m, &rho).unwrap(), 2);
        let delta = alexander_poly(&m, 1).unwrap();
        assert_eq!(crate::laurent::multiplicity(&p(&X, "x2 - 1"), &delta).unwrap(), 1);
    }

    #[test]
    fn not_almost_principal() {
        let m = mat(
            &X,
            &[
                &["(x2-1)*(x1*x3-1)", "(1-x1)*(x1*x3-1)", "0"],
                &["0", "(x3-1)*(x1*x3-1)", "(1-x2)*(x1*x3-1)"],
                &["(x3-1)*(x1*x2-1)", "0", "(1-x1)*(x1*x2-1)"],
            ],
        );
        let delta = alexander_poly(&m, 1).unwrap();
        assert!(delta.associated(&p(&X, "x1*x3 - 1")));
        let ap = almost_principal_status_matrix(&m, None);
        assert_eq!(ap, AlmostPrincipal::Unknown);
        let f = factor(&delta, &[]).unwrap();
        let r = bounds_report(&m, &f, &ch("x1=1, x2=-1, x3=1", &X), ap).unwrap();
        assert_eq!((r.b1, r.bound_pointwise), (2, Some(1)));
        assert_eq!(r.pointwise_attained, Some(false));
        // the same data with a certified ideal must be rejected
        let err = bounds_report(
            &m,
            &f,
            &ch("x1=1, x2=-1, x3=1", &X),
            AlmostPrincipal::Yes("test".into()),
        );
        assert!(matches!(err, Err(Error::Inconsistency(_))));
    }

    #[test]
    fn pencil_membership_and_bound() {
        let g = parse_presentation(
            "gens: x1 x2 x3 x4\n\
             rel: x1 x2 x3 x4 x1 x4^-1 x3^-1 x2^-1 x1^-1 x1^-1\n\
             rel: x1 x2 x3 x4 x2 x4^-1 x3^-1 x2^-1 x1^-1 x2^-1\n\
             rel: x1 x2 x3 x4 x3 x4^-1 x3^-1 x2^-1 x1^-1 x3^-1",
        )
        .unwrap();
        let m = fox_matrix(&g).unwrap();
        let delta = alexander_poly(&m, 1).unwrap();
        let f = p(&["t1", "t2", "t3", "t4"], "t1*t2*t3*t4 - 1");
        assert_eq!(delta, f.pow(2));
        let ap = almost_principal_status(&g, None).unwrap();
        assert_eq!(ap, AlmostPrincipal::Yes("deficiency>0".into()));
        let fd = factor(&delta, &[]).unwrap();
        let pts = sample_component_points(&f, &[], 2).unwrap();
        assert!(!pts.is_empty());
        for rho in &pts {
            let r = bounds_report(&m, &fd, rho, ap.clone()).unwrap();
            assert_eq!((r.b1, r.bound_pointwise, r.bound_generic), (2, Some(2), Some(2)));
            assert!(cv_membership(&m, rho, 2).unwrap());
            assert!(!cv_membership(&m, rho, 3).unwrap());
        }
        assert!(cv_membership(&m, &Character::trivial(4), 3).unwrap());
        assert!(!cv_membership(&m, &Character::trivial(4), 5).unwrap());
    }

    #[test]
    fn trivial_character_and_errors() {
        let m = commutator_pair("1", "1");
        assert_eq!(twisted_betti(&m, &Character::trivial(3)).unwrap(), 3);
        assert!(matches!(
            twisted_betti(&m, &Character::trivial(2)),
            Err(Error::InvalidCharacter(_))
        ));
        let f = factor(&p(&X, "x2 - 1"), &[]).unwrap();
        assert!(matches!(
            bounds_report(&m, &f, &Character::trivial(3), AlmostPrincipal::Unknown),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn torus_bundle_roots() {
        let g = parse_presentation(TORUS_BUNDLE).unwrap();
        assert_eq!(
            almost_principal_status(&g, None).unwrap(),
            AlmostPrincipal::Yes("b1=1".into())
        );
        let m = fox_matrix(&g).unwrap();
        let delta = alexander_poly(&m, 1).unwrap();
        let rep = semisimple_equality_report(&m, &factor(&delta, &[]).unwrap()).unwrap();
        assert_eq!(rep.roots.len(), 1);
        let r = &rep.roots[0];
        assert_eq!(r.root, CycloNumber::from_int(-1));
        assert_eq!((r.mu, r.b1, r.equality), (2, 1, false));
        assert_eq!(r.e_counts.get(&2), Some(&1));
        let chi = ch("x1=1, x2=1, x3=-1", &X);
        assert_eq!(twisted_betti_on_generators(&g, &chi).unwrap(), 1);
    }

    #[test]
    fn semisimple_blocks() {
        let t = ["t"];
        let split = mat(&t, &[&["t+1", "0", "0"], &["0", "t+1", "0"]]);
        let d = alexander_poly(&split, 1).unwrap();
        let rep = semisimple_equality_report(&split, &factor(&d, &[]).unwrap()).unwrap();
        let r = &rep.roots[0];
        assert_eq!((r.mu, r.b1, r.equality, r.all_higher_zero), (2, 2, true, true));

        let jordan = mat(&t, &[&["(t-2)^2", "0"]]);
        let d = alexander_poly(&jordan, 1).unwrap();
        let rep = semisimple_equality_report(&jordan, &factor(&d, &[]).unwrap()).unwrap();
        let r = &rep.roots[0];
        assert_eq!(r.root, CycloNumber::from_int(2));
        assert_eq!((r.mu, r.b1, r.equality), (2, 1, false));
    }

    #[test]
    fn monodromy_examples() {
        let r = monodromy_analysis(&[vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(r.delta, p(&["t"], "(t+1)^2"));
        assert!(!r.semisimple);
        assert_eq!(r.predicted, vec![(CycloNumber::from_int(-1), false)]);
        assert!(!r.roots.roots[0].equality);

        let r = monodromy_analysis(&[vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(r.delta, p(&["t"], "(t+1)^2"));
        assert!(r.semisimple && r.roots.roots[0].equality);

        let r = monodromy_analysis(&[vec![0, -1], vec![1, -1]]).unwrap();
        assert_eq!(r.delta, p(&["t"], "t^2 + t + 1"));
        assert!(r.semisimple);
        assert_eq!(r.roots.roots.len(), 2);
        assert!(r.roots.roots.iter().all(|x| x.mu == 1 && x.b1 == 1 && x.equality));

        assert!(matches!(
            monodromy_analysis(&[vec![1, 1], vec![0, 1]]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn generic_vs_alexander() {
        let alpha = p(&X, "x1*x2 + 1");
        let g1 = commutator_pair("(x1*x2+1)*(x2*x3+1)", "(x1*x2+1)*(x2*x3+1)");
        let g2 = commutator_pair("(x1*x2+1)^2", "(x2*x3+1)^2");
        assert_eq!(alexander_poly(&g1, 1).unwrap(), alexander_poly(&g2, 1).unwrap());
        assert_eq!(generic_betti(&g1, &alpha).unwrap(), 2);
        assert_eq!(generic_betti(&g2, &alpha).unwrap(), 1);
    }
}
