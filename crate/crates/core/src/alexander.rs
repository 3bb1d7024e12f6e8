//! Fox calculus, Alexander matrices, elementary ideals and Alexander polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::caps::MAX_MINOR_DIM;
use crate::cyclofield::{evaluate, CycloNumber};
use crate::intlinalg::abelianization;
use crate::laurent::{default_var_names, factor, gcd_many, parse_poly, Exponent, FactoredPoly, LaurentPoly};
use crate::presentation::{GroupPresentation, Word};
use crate::upoly::QPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    FromPresentation,
    MatrixMode,
}

/// An `h × m` matrix over `Z[t_1^{±1}, ..., t_n^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    var_names: Vec<String>,
    rows: Vec<Vec<LaurentPoly>>,
    ncols: usize,
    origin: Origin,
    /// Monomial images of the generators (presentation mode only).
    generator_images: Option<Vec<Exponent>>,
}

/// Fox derivative `∂w/∂x_j`, pushed through `x_g ↦ t^{images[g]}`.
pub fn fox_derivative(w: &Word, j: usize, images: &[Exponent], nvars: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars);
    let mut prefix: Exponent = vec![0; nvars];
    let step = |p: &mut Exponent, img: &Exponent, k: i32| {
        for (a, b) in p.iter_mut().zip(img) {
            *a += k * b;
        }
    };
    for &(g, e) in w.letters() {
        let img = &images[g];
        if g == j {
            let mut cur = prefix.clone();
            if e > 0 {
                for _ in 0..e {
                    out = &out + &LaurentPoly::monomial(nvars, cur.clone(), BigInt::one());
                    step(&mut cur, img, 1);
                }
            } else {
                for _ in 0..(-e) {
                    step(&mut cur, img, -1);
                    out = &out - &LaurentPoly::monomial(nvars, cur.clone(), BigInt::one());
                }
            }
        }
        step(&mut prefix, img, e);
    }
    out
}

fn fox_rows(p: &GroupPresentation, images: &[Exponent], nvars: usize) -> Vec<Vec<LaurentPoly>> {
    let m = p.num_generators();
    p.relators()
        .iter()
        .map(|r| (0..m).map(|j| fox_derivative(r, j, images, nvars)).collect())
        .collect()
}

/// The abelianized Fox matrix over the torsion-free abelianization.
pub fn fox_matrix(p: &GroupPresentation) -> Result<AlexanderMatrix> {
    let ab = abelianization(p)?;
    let images = ab.generator_images();
    let n = ab.rank;
    Ok(AlexanderMatrix {
        var_names: default_var_names(n),
        rows: fox_rows(p, &images, n),
        ncols: p.num_generators(),
        origin: Origin::FromPresentation,
        generator_images: Some(images),
    })
}

/// The Fox matrix over the group ring of the free abelian group on the
/// generators (one variable per generator, named after them). Evaluating it
/// at any character of the group gives the twisted Fox matrix.
pub fn generator_fox_matrix(p: &GroupPresentation) -> AlexanderMatrix {
    let m = p.num_generators();
    let images: Vec<Exponent> = (0..m)
        .map(|j| (0..m).map(|k| i32::from(j == k)).collect())
        .collect();
    AlexanderMatrix {
        var_names: p.generator_names().to_vec(),
        rows: fox_rows(p, &images, m),
        ncols: m,
        origin: Origin::FromPresentation,
        generator_images: Some(images),
    }
}

/// Build a matrix-mode Alexander matrix from expression strings.
pub fn load_matrix(vars: &[String], rows: &[Vec<String>]) -> Result<AlexanderMatrix> {
    let Some(first) = rows.first() else {
        return Err(Error::Dimension("matrix has no rows".into()));
    };
    let m = first.len();
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        if r.len() != m {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                m
            )));
        }
        out.push(r.iter().map(|s| parse_poly(s, vars)).collect::<Result<Vec<_>>>()?);
    }
    AlexanderMatrix::from_entries(vars.to_vec(), out, m)
}

impl AlexanderMatrix {
    /// Matrix-mode constructor from parsed entries.
    pub fn from_entries(
        var_names: Vec<String>,
        rows: Vec<Vec<LaurentPoly>>,
        ncols: usize,
    ) -> Result<Self> {
        let n = var_names.len();
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Dimension("ragged matrix".into()));
            }
            if r.iter().any(|e| e.nvars() != n) {
                return Err(Error::Dimension("entry variable count differs".into()));
            }
        }
        Ok(AlexanderMatrix {
            var_names,
            rows,
            ncols,
            origin: Origin::MatrixMode,
            generator_images: None,
        })
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    /// `b_1` of the group: the number of torus variables.
    pub fn b1(&self) -> usize {
        self.nvars()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.ncols
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn generator_images(&self) -> Option<&[Exponent]> {
        self.generator_images.as_deref()
    }

    /// `Σ_j a_ij (t^{φ(x_j)} - 1) = 0` for every row; vacuous in matrix mode.
    /// Holds for [`fox_matrix`], where every relator maps to 1.
    pub fn fox_identity_holds(&self) -> bool {
        let Some(images) = &self.generator_images else {
            return true;
        };
        let n = self.nvars();
        let aug: Vec<LaurentPoly> = images
            .iter()
            .map(|e| &LaurentPoly::monomial(n, e.clone(), BigInt::one()) - &LaurentPoly::one(n))
            .collect();
        self.rows.iter().all(|row| {
            row.iter()
                .zip(&aug)
                .fold(LaurentPoly::zero(n), |s, (a, g)| &s + &(a * g))
                .is_zero()
        })
    }

    /// Entries evaluated at a point of the torus.
    pub fn evaluate_at(&self, rho: &[CycloNumber]) -> Result<Vec<Vec<CycloNumber>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| evaluate(e, rho)).collect())
            .collect()
    }

    /// Errors unless both dimensions are within the minor-enumeration cap.
    pub fn check_caps(&self) -> Result<()> {
        if self.num_rows() > MAX_MINOR_DIM || self.ncols > MAX_MINOR_DIM {
            return Err(Error::CapExceeded {
                cap: "matrix size",
                detail: format!(
                    "{}x{} matrix exceeds {}x{} for minor enumeration",
                    self.num_rows(),
                    self.ncols,
                    MAX_MINOR_DIM,
                    MAX_MINOR_DIM
                ),
            });
        }
        Ok(())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Row subsets of size `k` whose minors make up one slice of an elementary ideal.
pub fn row_subsets(m: &AlexanderMatrix, k: usize) -> Vec<Vec<usize>> {
    subsets(m.num_rows(), k)
}

/// All `k × k` minors using the given rows, one per column subset (lexicographic).
///
/// Laplace expansion along the last row with memoization over column subsets.
pub fn minors_for_row_subset(m: &AlexanderMatrix, rows: &[usize]) -> Vec<LaurentPoly> {
    let k = rows.len();
    let n = m.nvars();
    let mut level: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
    level.insert(Vec::new(), LaurentPoly::one(n));
    for (r, &row) in rows.iter().enumerate() {
        let mut next = BTreeMap::new();
        for cols in subsets(m.num_cols(), r + 1) {
            let mut acc = LaurentPoly::zero(n);
            for (pos, &c) in cols.iter().enumerate() {
                let a = m.entry(row, c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sub = &level[&rest];
                if sub.is_zero() {
                    continue;
                }
                let term = a * sub;
                acc = if (r + pos) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            next.insert(cols, acc);
        }
        level = next;
    }
    debug_assert!(level.keys().all(|c| c.len() == k));
    level.into_values().collect()
}

/// Generators of the elementary ideal `E_i`: all minors of size `m - i`,
/// `[1]` when `i ≥ m` and `[0]` when `m - i > h`.
pub fn elementary_ideal_minors(m: &AlexanderMatrix, i: usize) -> Result<Vec<LaurentPoly>> {
    let n = m.nvars();
    if i >= m.num_cols() {
        return Ok(vec![LaurentPoly::one(n)]);
    }
    let k = m.num_cols() - i;
    if k > m.num_rows() {
        return Ok(vec![LaurentPoly::zero(n)]);
    }
    m.check_caps()?;
    Ok(row_subsets(m, k)
        .iter()
        .flat_map(|rs| minors_for_row_subset(m, rs))
        .collect())
}

/// `Δ_i = gcd(E_i)`, canonical; zero when the ideal is zero.
pub fn alexander_poly(m: &AlexanderMatrix, i: usize) -> Result<LaurentPoly> {
    Ok(gcd_many(&elementary_ideal_minors(m, i)?))
}

/// Rank over the fraction field of the Laurent ring.
pub fn generic_rank(m: &AlexanderMatrix) -> Result<usize> {
    m.check_caps()?;
    for k in (1..=m.num_rows().min(m.num_cols())).rev() {
        for rs in row_subsets(m, k) {
            if minors_for_row_subset(m, &rs).iter().any(|x| !x.is_zero()) {
                return Ok(k);
            }
        }
    }
    Ok(0)
}

/// Largest `k` such that some `k × k` minor is not divisible by `f`.
///
/// For irreducible `f` this is the rank at the generic point of `V(f)`.
pub fn generic_rank_mod(m: &AlexanderMatrix, f: &LaurentPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    if f.nvars() != m.nvars() {
        return Err(Error::Dimension("polynomial and matrix variable counts differ".into()));
    }
    m.check_caps()?;
    for k in (1..=m.num_rows().min(m.num_cols())).rev() {
        for rs in row_subsets(m, k) {
            let hit = minors_for_row_subset(m, &rs)
                .iter()
                .any(|x| !x.is_zero() && x.div_exact(f).is_none());
            if hit {
                return Ok(k);
            }
        }
    }
    Ok(0)
}

fn q_smith_diagonal(mut a: Vec<Vec<QPoly>>, ncols: usize) -> Vec<QPoly> {
    let h = a.len();
    let mut out = Vec::new();
    for t in 0..h.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..h {
                for j in t..ncols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].degree() < a[bi][bj].degree())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..h {
                if !a[i][t].is_zero() {
                    let (q, _) = a[i][t].div_rem(&piv);
                    for j in t..ncols {
                        let v = &a[i][j] - &(&q * &a[t][j]);
                        a[i][j] = v;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let (q, _) = a[t][j].div_rem(&piv);
                    for i in t..h {
                        let v = &a[i][j] - &(&q * &a[i][t]);
                        a[i][j] = v;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let offending =
                (t + 1..h).find(|&i| (t + 1..ncols).any(|j| !a[i][j].rem(&piv).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..ncols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].monic());
    }
    out
}

/// Nonzero Smith invariant factors over `Q[t^{±1}]`, by divisibility, each
/// as a primitive integer polynomial with positive leading coefficient.
pub fn univariate_invariant_factors(m: &AlexanderMatrix) -> Result<Vec<LaurentPoly>> {
    if m.nvars() != 1 {
        return Err(Error::Dimension(format!(
            "univariate matrix expected, got {} variables",
            m.nvars()
        )));
    }
    // row scaling by t^k is unimodular, so clear negative powers row by row
    let q: Vec<Vec<QPoly>> = m
        .rows()
        .iter()
        .map(|row| {
            let lo = row
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| e.min_exponents()[0])
                .min()
                .unwrap_or(0);
            row.iter()
                .map(|e| {
                    if e.is_zero() {
                        QPoly::zero()
                    } else {
                        let s = e.shift(&[-lo]);
                        let (sh, cs) = s.to_dense_univariate();
                        QPoly::from_ints(cs).shift(sh as usize)
                    }
                })
                .collect()
        })
        .collect();
    Ok(q_smith_diagonal(q, m.num_cols())
        .iter()
        .map(|d| LaurentPoly::from_qpoly_primitive(d).normalized_or_zero())
        .collect())
}

/// `e_k(p)`: the number of invariant factors in which `p` has multiplicity
/// exactly `k`, for `k ≥ 1`.
pub fn elementary_divisor_counts(factors: &[LaurentPoly], p: &LaurentPoly) -> BTreeMap<u32, u32> {
    let mut out = BTreeMap::new();
    let pq = p.to_qpoly();
    for f in factors {
        let k = f.to_qpoly().multiplicity_of(&pq) as u32;
        if k > 0 {
            *out.entry(k).or_insert(0) += 1;
        }
    }
    out
}

/// `Δ_i` for a range of `i`, the minors they come from, and a factorization of `Δ_1`.
#[derive(Clone, Debug)]
pub struct AlexReport {
    pub deltas: Vec<(usize, LaurentPoly)>,
    pub minors: Vec<(usize, Vec<LaurentPoly>)>,
    pub factored: Option<FactoredPoly>,
}

impl AlexReport {
    /// `Δ_{i+1} | Δ_i` for consecutive computed indices.
    pub fn chain_holds(&self) -> bool {
        self.deltas.windows(2).all(|w| {
            let (a, b) = (&w[0].1, &w[1].1);
            a.is_zero() || (!b.is_zero() && a.div_exact(b).is_some())
        })
    }
}

/// Compute `Δ_1, ..., Δ_upto` and factor `Δ_1` (if nonzero).
pub fn alex_report(
    m: &AlexanderMatrix,
    upto: usize,
    candidates: &[LaurentPoly],
) -> Result<AlexReport> {
    let mut deltas = Vec::new();
    let mut minors = Vec::new();
    for i in 1..=upto.max(1) {
        let ms = elementary_ideal_minors(m, i)?;
        deltas.push((i, gcd_many(&ms)));
        minors.push((i, ms));
    }
    let d1 = &deltas[0].1;
    let factored = if d1.is_zero() { None } else { Some(factor(d1, candidates)?) };
    Ok(AlexReport {
        deltas,
        minors,
        factored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::test_util::p;
    use crate::presentation::parse_presentation;
    use alloc::string::ToString;

    pub(crate) const TORUS_BUNDLE: &str =
        "gens: x1 x2 x3\nrel: x1 x2 x1^-1 x2^-1\nrel: x3^-1 x1 x3 x1\nrel: x3^-1 x2 x3 x2 x1^-1";

    fn pencil(n: usize) -> GroupPresentation {
        let gens: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
        let word = gens.join(" ");
        let inv: Vec<String> = gens.iter().rev().map(|g| format!("{}^-1", g)).collect();
        let mut text = format!("gens: {}\n", word);
        for g in &gens[..n - 1] {
            text += &format!("rel: {} {} {} {}^-1\n", word, g, inv.join(" "), g);
        }
        parse_presentation(&text).unwrap()
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fox_commutator() {
        let g = parse_presentation("gens: x y\nrel: x y x^-1 y^-1").unwrap();
        let m = fox_matrix(&g).unwrap();
        let t = ["t1", "t2"];
        assert_eq!(m.entry(0, 0), &p(&t, "1 - t2"));
        assert_eq!(m.entry(0, 1), &p(&t, "t1 - 1"));
        assert!(m.fox_identity_holds());
    }

    #[test]
    fn fox_pencil_and_delta() {
        let m = fox_matrix(&pencil(3)).unwrap();
        let t = ["t1", "t2", "t3"];
        assert_eq!(m.entry(0, 0), &p(&t, "t1*t2*t3 - t1"));
        assert_eq!(m.entry(0, 1), &p(&t, "t1*(1 - t1)"));
        assert_eq!(m.entry(0, 2), &p(&t, "t1*t2*(1 - t1)"));
        assert!(m.fox_identity_holds());
        assert_eq!(alexander_poly(&m, 1).unwrap(), p(&t, "t1*t2*t3 - 1"));
    }

    #[test]
    fn fox_torus_bundle() {
        let g = parse_presentation(TORUS_BUNDLE).unwrap();
        let m = fox_matrix(&g).unwrap();
        let t = ["t"];
        assert_eq!(m.nvars(), 1);
        let expect = [
            ["0", "0", "0"],
            ["1 + t^-1", "0", "0"],
            ["-1", "1 + t^-1", "0"],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(m.entry(i, j), &p(&t, e), "entry ({}, {})", i, j);
            }
        }
        assert_eq!(alexander_poly(&m, 1).unwrap(), p(&t, "(t + 1)^2"));
        let inv = univariate_invariant_factors(&m).unwrap();
        assert_eq!(inv, vec![LaurentPoly::one(1), p(&t, "(t + 1)^2")]);
        let e = elementary_divisor_counts(&inv, &p(&t, "t + 1"));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
    }

    #[test]
    fn ideal_conventions() {
        let free = parse_presentation("gens: x y").unwrap();
        let m = fox_matrix(&free).unwrap();
        assert_eq!(elementary_ideal_minors(&m, 1).unwrap(), vec![LaurentPoly::zero(2)]);
        assert_eq!(elementary_ideal_minors(&m, 2).unwrap(), vec![LaurentPoly::one(2)]);
    }

    #[test]
    fn matrix_mode_examples() {
        let v = strs(&["x1", "x2", "x3"]);
        let phi = "(x1*x2 + 1)*(x2*x3 + 1)";
        let rows = vec![
            vec![format!("(x2 - 1)*{}", phi), format!("(1 - x1)*{}", phi), "0".to_string()],
            vec!["0".to_string(), format!("(x3 - 1)*{}", phi), format!("(1 - x2)*{}", phi)],
        ];
        let m = load_matrix(&v, &rows).unwrap();
        assert_eq!((m.num_rows(), m.num_cols()), (2, 3));
        assert_eq!(m.origin(), Origin::MatrixMode);
        let minors = elementary_ideal_minors(&m, 1).unwrap();
        assert_eq!(minors.len(), 3);
        let d = alexander_poly(&m, 1).unwrap();
        assert_eq!(d, p(&["x1", "x2", "x3"], "(x2 - 1)*(x1*x2 + 1)^2*(x2*x3 + 1)^2"));
        let alpha = p(&["x1", "x2", "x3"], "x1*x2 + 1");
        assert_eq!(generic_rank_mod(&m, &alpha).unwrap(), 0);
        assert_eq!(generic_rank(&m).unwrap(), 2);
        let ragged = vec![vec!["1".to_string()], vec!["1".to_string(), "2".to_string()]];
        assert!(matches!(load_matrix(&v, &ragged), Err(Error::Dimension(_))));
    }

    #[test]
    fn invariant_factor_blocks() {
        let t = strs(&["t"]);
        let m = load_matrix(&t, &[vec!["t - 2".into(), "0".into()], vec!["0".into(), "t - 2".into()]]).unwrap();
        let inv = univariate_invariant_factors(&m).unwrap();
        let e = elementary_divisor_counts(&inv, &p(&["t"], "t - 2"));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
        let m = load_matrix(&t, &[vec!["(t - 2)^2".into()]]).unwrap();
        let inv = univariate_invariant_factors(&m).unwrap();
        let e = elementary_divisor_counts(&inv, &p(&["t"], "t - 2"));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
    }

    #[test]
    fn report_chain() {
        let m = fox_matrix(&pencil(4)).unwrap();
        let r = alex_report(&m, 3, &[]).unwrap();
        assert!(r.chain_holds());
        let f = r.factored.unwrap();
        assert_eq!(f.factors[0].multiplicity, 2);
    }
}
