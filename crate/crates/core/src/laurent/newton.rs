//! Support geometry: affine dimension, hull vertices, and the
//! single-essential-variable decomposition `f ≐ P(t^e)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{primitive_direction, Exponent, LaurentPoly};
use crate::{Error, Result};

/// Support points above which the exact hull-vertex search refuses to run.
const MAX_HULL_POINTS: usize = 64;

fn rat(x: i32) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Row-reduce in place; returns the rank. Columns past `ncols_pivot` are carried along.
fn row_reduce(m: &mut [Vec<BigRational>], ncols_pivot: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols_pivot {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn diffs(points: &[&Exponent]) -> Vec<Vec<BigRational>> {
    let base = points[0];
    points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| rat(a - b)).collect())
        .collect()
}

/// Affine dimension of the support (`0` for a monomial).
pub fn support_dimension(f: &LaurentPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<&Exponent> = f.terms().map(|(e, _)| e).collect();
    if pts.len() == 1 {
        return Ok(0);
    }
    let mut m = diffs(&pts);
    Ok(row_reduce(&mut m, f.nvars()))
}

/// True when every support point lies on one line.
pub fn is_collinear(f: &LaurentPoly) -> Result<bool> {
    Ok(support_dimension(f)? <= 1)
}

/// True when `v` is a convex combination of the affinely independent `pts`.
fn in_simplex(v: &Exponent, pts: &[&Exponent]) -> bool {
    let d = v.len();
    let k = pts.len();
    // rows: d coordinate equations plus the affine constraint; columns: λ's then rhs
    let mut m: Vec<Vec<BigRational>> = (0..=d)
        .map(|r| {
            let mut row: Vec<BigRational> = pts
                .iter()
                .map(|p| if r < d { rat(p[r]) } else { rat(1) })
                .collect();
            row.push(if r < d { rat(v[r]) } else { rat(1) });
            row
        })
        .collect();
    let rank = row_reduce(&mut m, k);
    if rank < k {
        return false;
    }
    // inconsistent rows have a nonzero rhs with an all-zero left part
    if m[rank..].iter().any(|row| !row[k].is_zero()) {
        return false;
    }
    m[..k].iter().all(|row| !row[k].is_negative())
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of the Newton polytope, in increasing lexicographic order.
///
/// A support point is dropped when it lies in the convex hull of at most
/// `dim + 1` other support points (Carathéodory), tested exactly.
pub fn newton_vertices(f: &LaurentPoly) -> Result<Vec<Exponent>> {
    let dim = support_dimension(f)?;
    let pts: Vec<&Exponent> = f.terms().map(|(e, _)| e).collect();
    if dim == 0 {
        return Ok(vec![pts[0].clone()]);
    }
    if dim == 1 {
        // BTreeMap order is lexicographic, so the extremes of a segment are first and last
        return Ok(vec![pts[0].clone(), pts[pts.len() - 1].clone()]);
    }
    if pts.len() > MAX_HULL_POINTS {
        return Err(Error::CapExceeded {
            cap: "newton hull points",
            detail: alloc::format!("{} support points > {}", pts.len(), MAX_HULL_POINTS),
        });
    }
    let mut out = Vec::new();
    for (i, v) in pts.iter().enumerate() {
        let others: Vec<&Exponent> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| *p)
            .collect();
        let mut inside = false;
        for k in 1..=(dim + 1).min(others.len()) {
            combinations(others.len(), k, |sel| {
                let sub: Vec<&Exponent> = sel.iter().map(|&j| others[j]).collect();
                inside = in_simplex(v, &sub);
                inside
            });
            if inside {
                break;
            }
        }
        if !inside {
            out.push((*v).clone());
        }
    }
    Ok(out)
}

/// Single-essential-variable decomposition.
///
/// Returns `(P, e)` with `e` primitive (first nonzero entry positive) and `P`
/// a normalized univariate polynomial such that `f ≐ P(t^e)`, or `None` when
/// the support is not collinear. A non-unit monomial `c·t^ν` gives `P = c`
/// and `e` the first basis vector.
pub fn sev_decompose(f: &LaurentPoly) -> Result<Option<(LaurentPoly, Exponent)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let n = f.nvars();
    let pts: Vec<(&Exponent, &BigInt)> = f.terms().collect();
    if pts.len() == 1 {
        let mut e = vec![0; n];
        if n > 0 {
            e[0] = 1;
        }
        return Ok(Some((LaurentPoly::constant(1, pts[0].1.abs()), e)));
    }
    if !is_collinear(f)? {
        return Ok(None);
    }
    let base = pts[0].0;
    let d: Vec<i32> = pts[1].0.iter().zip(base).map(|(a, b)| a - b).collect();
    let e = primitive_direction(&d).expect("distinct support points");
    let i = e.iter().position(|&x| x != 0).unwrap();
    let p = LaurentPoly::from_terms(
        1,
        pts.iter()
            .map(|(v, c)| (vec![(v[i] - base[i]) / e[i]], (*c).clone())),
    );
    Ok(Some((p.normalized_or_zero(), e)))
}

#[cfg(test)]
mod tests {
    use super::super::test_util::p;
    use super::*;

    const X: [&str; 3] = ["x1", "x2", "x3"];

    #[test]
    fn vertices() {
        let f = p(&["t1", "t2"], "t1*t2 + 1");
        assert_eq!(newton_vertices(&f).unwrap(), vec![vec![0, 0], vec![1, 1]]);
        let m = p(&X, "3*x1*x2^-1");
        assert_eq!(newton_vertices(&m).unwrap().len(), 1);
        let g = p(&X, "(x2 - 1)*(x1*x3 - 1)");
        assert_eq!(newton_vertices(&g).unwrap().len(), 4);
        assert!(!is_collinear(&g).unwrap());
        // the center of a square is not a vertex
        let sq = p(&["a", "b"], "1 + a^2 + b^2 + a^2*b^2 + a*b");
        assert_eq!(newton_vertices(&sq).unwrap().len(), 4);
    }

    #[test]
    fn sev_examples() {
        let t3 = ["t1", "t2", "t3"];
        let (pp, e) = sev_decompose(&p(&t3, "(t1*t2*t3 - 1)^2")).unwrap().unwrap();
        assert_eq!(pp, p(&["u"], "(u - 1)^2"));
        assert_eq!(e, vec![1, 1, 1]);
        let (pp, e) = sev_decompose(&p(&["x1", "x2"], "x1 + x2")).unwrap().unwrap();
        assert_eq!(pp, p(&["u"], "u + 1"));
        assert_eq!(e, vec![1, -1]);
        assert!(sev_decompose(&p(&X, "(x2 - 1)*(x1*x3 - 1)")).unwrap().is_none());
        assert_eq!(sev_decompose(&p(&X, "-x1")), Err(Error::UnitPolynomial));
    }

    #[test]
    fn combinations_cover_all() {
        let mut seen = Vec::new();
        combinations(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
