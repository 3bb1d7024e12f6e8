//! Seifert links `(Σ(k_1, ..., k_n), S_1 ∪ ... ∪ S_q)` with `q ≥ 2` and
//! all weights positive.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::cyclofield::{cyclotomic_poly, CycloNumber};
use crate::laurent::{multiplicity, LaurentPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceData {
    weights: Vec<u64>,
    q: usize,
}

/// A component `u = ζ` of the divisor, `u = t_1^{N_1} ⋯ t_q^{N_q}` and
/// `ζ = e^{2πi·index/root_order}` primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DivisorComponent {
    pub root_order: u64,
    pub index: u64,
    pub multiplicity: u32,
}

fn cap(detail: impl Into<alloc::string::String>) -> Error {
    Error::CapExceeded {
        cap: "exponent size",
        detail: detail.into(),
    }
}

impl SpliceData {
    pub fn new(weights: Vec<u64>, q: usize) -> Result<Self> {
        let n = weights.len();
        if n < 3 {
            return Err(Error::Precondition(format!("need at least 3 weights, got {}", n)));
        }
        if q < 2 || q > n {
            return Err(Error::Precondition(format!("q must satisfy 2 <= q <= {}, got {}", n, q)));
        }
        if weights.contains(&0) {
            return Err(Error::Precondition("weights must be positive".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if weights[i].gcd(&weights[j]) != 1 {
                    return Err(Error::Precondition("weights not pairwise coprime".into()));
                }
            }
        }
        let d = SpliceData { weights, q };
        // largest exponent of Δ is N_j · N' · (q + s - 2) ≤ N · N' · n
        let fits = d.weights.iter().try_fold(1u64, |a, &k| a.checked_mul(k))
            .and_then(|x| x.checked_mul(n as u64))
            .is_some_and(|x| x <= i32::MAX as u64);
        if !fits {
            return Err(cap("weights too large"));
        }
        Ok(d)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `N = k_1 ⋯ k_q`.
    pub fn big_n(&self) -> u64 {
        self.weights[..self.q].iter().product()
    }

    /// `(N_1, ..., N_q)` with `N_j = N / k_j`.
    pub fn direction(&self) -> Vec<i32> {
        let n = self.big_n();
        self.weights[..self.q].iter().map(|&k| (n / k) as i32).collect()
    }

    /// `N' = k_{q+1} ⋯ k_n`.
    pub fn n_prime(&self) -> u64 {
        self.weights[self.q..].iter().product()
    }

    /// `N'_j = N' / k_j` for the boundary weights `k_j > 1`.
    pub fn boundary_quotients(&self) -> Vec<u64> {
        let np = self.n_prime();
        self.weights[self.q..].iter().filter(|&&k| k > 1).map(|&k| np / k).collect()
    }

    /// Number of boundary weights greater than 1.
    pub fn s(&self) -> usize {
        self.weights[self.q..].iter().filter(|&&k| k > 1).count()
    }

    /// `q + s - 2`, the multiplicity before corrections.
    fn top(&self) -> u32 {
        (self.q + self.s() - 2) as u32
    }

    /// Multiplicity of the component `u = ζ` for `ζ` of exact order `m | N'`.
    fn multiplicity_at_order(&self, m: u64) -> i64 {
        let hits = self.boundary_quotients().iter().filter(|&&nj| nj % m == 0).count();
        self.top() as i64 - hits as i64
    }
}

fn binomial_u(k: u64) -> LaurentPoly {
    // u^k - 1
    let mut cs = alloc::vec![0i64; k as usize + 1];
    cs[0] = -1;
    cs[k as usize] = 1;
    LaurentPoly::univariate(&cs)
}

/// `Δ(u)` as a univariate polynomial in `u`.
pub fn seifert_delta_u(d: &SpliceData) -> Result<LaurentPoly> {
    let mut num = binomial_u(d.n_prime()).pow(d.top());
    for nj in d.boundary_quotients() {
        num = num.div_exact(&binomial_u(nj)).ok_or_else(|| {
            Error::Inconsistency(format!("u^{} - 1 does not divide the numerator", nj))
        })?;
    }
    Ok(num)
}

/// `Δ(t_1, ..., t_q)`, the univariate form composed with `u = t^{(N_1, ..., N_q)}`.
pub fn seifert_delta(d: &SpliceData) -> Result<LaurentPoly> {
    Ok(seifert_delta_u(d)?.compose_monomial(&d.direction()).normalized_or_zero())
}

/// Divisors of `n` in increasing order.
fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Components `u = ζ` with `ζ^{N'} = 1` and positive multiplicity, by
/// increasing order and index.
pub fn seifert_divisor(d: &SpliceData) -> Vec<DivisorComponent> {
    let mut out = Vec::new();
    for m in divisors(d.n_prime()) {
        let mult = d.multiplicity_at_order(m);
        if mult <= 0 {
            continue;
        }
        for index in 0..m {
            if index.gcd(&m) == 1 {
                out.push(DivisorComponent {
                    root_order: m,
                    index,
                    multiplicity: mult as u32,
                });
            }
        }
    }
    out
}

/// `Φ_m(u)` composed with `u = t^N`: the irreducible factor of `Δ` over `Q`
/// collecting the components of root order `m`.
pub fn component_factor(d: &SpliceData, root_order: u64) -> Result<LaurentPoly> {
    let m = u32::try_from(root_order).map_err(|_| cap("root order"))?;
    Ok(cyclotomic_poly(m).compose_monomial(&d.direction()))
}

/// `b_1(G, ρ)` at a nontrivial `ρ = (ρ_1, ..., ρ_q)`.
///
/// The divisor multiplicity is compared against the orbifold count
/// `(q - 2) + s - |I(α)|` and, through polynomial division, against the
/// multiplicity of the matching factor in `Δ`.
pub fn seifert_twisted_betti(d: &SpliceData, rho: &[CycloNumber]) -> Result<u32> {
    if rho.len() != d.q {
        return Err(Error::InvalidCharacter(format!(
            "expected {} coordinates, got {}",
            d.q,
            rho.len()
        )));
    }
    if rho.iter().any(|r| r.is_zero()) {
        return Err(Error::ZeroCoordinate);
    }
    if rho.iter().all(|r| r.is_one()) {
        return Err(Error::Precondition("trivial character".into()));
    }
    let mut alpha = CycloNumber::one();
    for (r, &e) in rho.iter().zip(&d.direction()) {
        alpha = alpha.try_mul(&r.pow(e as i64)?)?;
    }
    let np = d.n_prime();
    let Some(order) = alpha.root_order() else {
        return Ok(0);
    };
    if !np.is_multiple_of(order as u64) {
        return Ok(0);
    }
    let order = order as u64;
    let from_divisor = seifert_divisor(d)
        .iter()
        .find(|c| c.root_order == order)
        .map_or(0, |c| c.multiplicity);
    let excluded = d
        .boundary_quotients()
        .iter()
        .filter(|&&nj| alpha.pow(nj as i64).map(|x| x.is_one()).unwrap_or(false))
        .count();
    let orbifold = (d.q as i64 - 2) + d.s() as i64 - excluded as i64;
    let from_delta = multiplicity(&component_factor(d, order)?, &seifert_delta(d)?)?;
    if from_divisor as i64 != orbifold.max(0) || from_delta != from_divisor {
        return Err(Error::Inconsistency(format!(
            "divisor {} / orbifold {} / polynomial {} disagree at root order {}",
            from_divisor, orbifold, from_delta, order
        )));
    }
    Ok(from_divisor)
}
