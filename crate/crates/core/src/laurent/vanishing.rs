//! Order of vanishing at a point of the torus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::LaurentPoly;
use crate::caps::MAX_TOTAL_DEGREE;
use crate::cyclofield::{evaluate, CycloNumber};
use crate::{Error, Result};

/// `ν_ρ(f)`: the least `k` such that some partial derivative of order `k` of
/// `f` is nonzero at `rho`.
///
/// Multiplying by a monomial does not change the order at a point of the
/// torus, so `f` is first cleared of negative exponents. Derivative
/// multi-indices are visited as nondecreasing variable sequences, one order
/// at a time.
pub fn vanishing_order(f: &LaurentPoly, rho: &[CycloNumber]) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
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
    let g = f.clear_monomial();
    let deg = g.total_degree_span();
    if deg > MAX_TOTAL_DEGREE {
        return Err(Error::CapExceeded {
            cap: "total degree",
            detail: format!("total degree {} > {}", deg, MAX_TOTAL_DEGREE),
        });
    }
    // level k: derivatives keyed by the last variable differentiated
    let mut level: Vec<(usize, LaurentPoly)> = alloc::vec![(0, g)];
    for k in 0..=deg {
        for (_, d) in &level {
            if !evaluate(d, rho)?.is_zero() {
                return Ok(k);
            }
        }
        let mut next: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
        for (idx, (last, d)) in level.iter().enumerate() {
            for v in *last..f.nvars() {
                let dv = d.derivative(v);
                if !dv.is_zero() {
                    next.insert((idx, v), dv);
                }
            }
        }
        level = next.into_iter().map(|((_, v), d)| (v, d)).collect();
    }
    unreachable!("a derivative of order at most the total degree is a nonzero constant")
}
