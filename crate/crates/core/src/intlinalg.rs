//! Integer matrix normal forms and the abelianization of a presentation.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclofield::{CycloNumber, Character};
use crate::laurent::Exponent;
use crate::presentation::GroupPresentation;
use crate::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Convert a small-integer matrix.
pub fn from_i64(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, ncols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(BigInt::zero(), |s, k| s + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`, `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, ..., d_min(h, m)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.v.len());
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_a -= q·row_b
fn row_axpy(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    let rb = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(&rb) {
        *x -= q * y;
    }
}

/// col_a -= q·col_b
fn col_axpy(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[b].clone();
        row[a] -= q * y;
    }
}

/// Smith normal form of an `h × ncols` matrix, tracking both transforms.
pub fn smith_normal_form(m: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let h = m.len();
    let mut d: IntMatrix = m.to_vec();
    let mut u = identity(h);
    let mut v = identity(ncols);
    for t in 0..h.min(ncols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..h {
                for j in t..ncols {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut dirty = false;
            for i in t + 1..h {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    dirty |= !d[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    dirty |= !d[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..h).find(|&i| {
                (t + 1..ncols).any(|j| !d[i][j].mod_floor(&d[t][t]).is_zero())
            });
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm { u, d, v }
}

/// Row-style Hermite form `H = W·M`: echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`. Returns `(W, H)`.
pub fn hermite_normal_form(m: &[Vec<BigInt>], ncols: usize) -> (IntMatrix, IntMatrix) {
    let n = m.len();
    let mut h: IntMatrix = m.to_vec();
    let mut w = identity(n);
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..n).filter(|&i| !h[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(r, p);
            w.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_axpy(&mut h, i, r, &q);
                    row_axpy(&mut w, i, r, &q);
                    done &= h[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in w[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut w, i, r, &q);
            }
        }
        r += 1;
    }
    (w, h)
}

/// `G_ab ≅ Z^n ⊕ ⊕ Z/d_i` together with the map onto the free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    /// `n = b_1`.
    pub rank: usize,
    /// Invariants `d_i ≥ 2`, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// `n × m`: column `j` is the image of generator `j` in `Z^n`.
    pub projection: Vec<Vec<i32>>,
    /// `m × n` integer right inverse of `projection`.
    pub section: IntMatrix,
}

impl AbelianStructure {
    pub fn num_generators(&self) -> usize {
        self.section.len()
    }

    /// Exponent vector of the monomial image of generator `j`.
    pub fn generator_image(&self, j: usize) -> Exponent {
        self.projection.iter().map(|row| row[j]).collect()
    }

    pub fn generator_images(&self) -> Vec<Exponent> {
        (0..self.num_generators()).map(|j| self.generator_image(j)).collect()
    }

    /// Torus coordinates `t_k = Π_j χ_j^{S[j][k]}` of a character on
    /// generators, or `None` when `χ` is not in the identity component.
    pub fn torus_coordinates(&self, chi: &Character) -> Result<Option<Vec<CycloNumber>>> {
        let m = self.num_generators();
        if chi.len() != m {
            return Err(Error::Dimension(format!(
                "character has {} values, presentation has {} generators",
                chi.len(),
                m
            )));
        }
        let mut t = Vec::with_capacity(self.rank);
        for k in 0..self.rank {
            let mut acc = CycloNumber::one();
            for j in 0..m {
                let e = self.section[j][k]
                    .to_i64()
                    .ok_or_else(|| Error::CapExceeded { cap: "exponent size", detail: "section entry".into() })?;
                if e != 0 {
                    acc = acc.try_mul(&chi.values[j].pow(e)?)?;
                }
            }
            t.push(acc);
        }
        for j in 0..m {
            let mut acc = CycloNumber::one();
            for (k, tk) in t.iter().enumerate() {
                let e = self.projection[k][j];
                if e != 0 {
                    acc = acc.try_mul(&tk.pow(e as i64)?)?;
                }
            }
            if acc != chi.values[j] {
                return Ok(None);
            }
        }
        Ok(Some(t))
    }
}

fn to_i32(x: &BigInt) -> Result<i32> {
    x.to_i32().ok_or_else(|| Error::CapExceeded {
        cap: "exponent size",
        detail: format!("{} does not fit in 32 bits", x),
    })
}

/// Abelianization from the Smith form of the relator exponent matrix.
/// The projection is canonicalized by a Hermite form.
pub fn abelianization(p: &GroupPresentation) -> Result<AbelianStructure> {
    let m = p.num_generators();
    let e = from_i64(&p.exponent_matrix());
    let snf = smith_normal_form(&e, m);
    let diag = snf.diagonal();
    let r = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion: Vec<BigInt> = diag.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    let n = m - r;
    let p0: IntMatrix = (r..m).map(|c| (0..m).map(|i| snf.v[i][c].clone()).collect()).collect();
    let (_, proj) = hermite_normal_form(&p0, m);
    // section: P·S = I from the Smith form of P (all invariant factors are 1)
    let sp = smith_normal_form(&proj, m);
    let vn: IntMatrix = sp.v.iter().map(|row| row[..n].to_vec()).collect();
    let section = mat_mul(&vn, &sp.u, n, n);
    let projection = proj
        .iter()
        .map(|row| row.iter().map(to_i32).collect::<Result<Vec<i32>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianStructure {
        rank: n,
        torsion,
        projection,
        section,
    })
}

/// True iff every relator evaluates to 1 under the generator values `chi`.
pub fn validate_character(p: &GroupPresentation, chi: &Character) -> Result<bool> {
    if chi.len() != p.num_generators() {
        return Err(Error::Dimension(format!(
            "character has {} values, presentation has {} generators",
            chi.len(),
            p.num_generators()
        )));
    }
    if chi.values.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroCoordinate);
    }
    for r in p.relators() {
        let mut acc = CycloNumber::one();
        for (g, e) in r.exponent_vector(p.num_generators()).into_iter().enumerate() {
            if e != 0 {
                acc = acc.try_mul(&chi.values[g].pow(e)?)?;
            }
        }
        if !acc.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Determinant by fraction-free elimination (square input).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::presentation::parse_presentation;

    fn check(m: &[Vec<i64>], ncols: usize) -> SmithForm {
        let mm = from_i64(m);
        let s = smith_normal_form(&mm, ncols);
        let umv = mat_mul(&mat_mul(&s.u, &mm, m.len(), ncols), &s.v, ncols, ncols);
        assert_eq!(umv, s.d);
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&[vec![0, 0], vec![0, 0]], 2);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.u, identity(2));
        let s = check(&[vec![0, 0, 0], vec![2, 0, 0], vec![-1, 2, 0]], 3);
        assert_eq!(
            s.diagonal(),
            vec![BigInt::from(1), BigInt::from(4), BigInt::from(0)]
        );
    }

    #[test]
    fn hnf_canonical() {
        let m = from_i64(&[vec![0, 0, -2], vec![0, 3, 1]]);
        let (w, h) = hermite_normal_form(&m, 3);
        assert_eq!(h, from_i64(&[vec![0, 3, 1], vec![0, 0, 2]]));
        assert_eq!(mat_mul(&w, &m, 2, 3), h);
    }

    #[test]
    fn abelianizations() {
        let free = parse_presentation("gens: x y").unwrap();
        let a = abelianization(&free).unwrap();
        assert_eq!((a.rank, a.torsion.len()), (2, 0));
        assert_eq!(a.projection, vec![vec![1, 0], vec![0, 1]]);

        let tb = parse_presentation(
            "gens: x1 x2 x3\nrel: x1 x2 x1^-1 x2^-1\nrel: x3^-1 x1 x3 x1\nrel: x3^-1 x2 x3 x2 x1^-1",
        )
        .unwrap();
        let a = abelianization(&tb).unwrap();
        assert_eq!(a.rank, 1);
        assert_eq!(a.torsion, vec![BigInt::from(4)]);
        assert_eq!(a.projection, vec![vec![0, 0, 1]]);

        let pencil = parse_presentation(
            "gens: x1 x2 x3\nrel: x1 x2 x3 x1 x3^-1 x2^-1 x1^-1 x1^-1\nrel: x1 x2 x3 x2 x3^-1 x2^-1 x1^-1 x2^-1",
        )
        .unwrap();
        let a = abelianization(&pencil).unwrap();
        assert_eq!(a.rank, 3);
        assert_eq!(a.projection, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn characters() {
        let comm = parse_presentation("gens: x y\nrel: x y x^-1 y^-1").unwrap();
        let chi = Character::new(vec![CycloNumber::from_int(-1), CycloNumber::root_of_unity(3, 1).unwrap()]).unwrap();
        assert!(validate_character(&comm, &chi).unwrap());

        let tb = parse_presentation(
            "gens: x1 x2 x3\nrel: x1 x2 x1^-1 x2^-1\nrel: x3^-1 x1 x3 x1\nrel: x3^-1 x2 x3 x2 x1^-1",
        )
        .unwrap();
        let v = |a: i64, b: i64, c: i64| {
            Character::new(vec![CycloNumber::from_int(a), CycloNumber::from_int(b), CycloNumber::from_int(c)]).unwrap()
        };
        assert!(validate_character(&tb, &v(1, 1, -1)).unwrap());
        assert!(!validate_character(&tb, &v(-1, 1, 1)).unwrap());
        assert!(validate_character(&tb, &Character::trivial(3)).unwrap());

        let a = abelianization(&tb).unwrap();
        let t = a.torus_coordinates(&v(1, 1, -1)).unwrap().unwrap();
        assert_eq!(t, vec![CycloNumber::from_int(-1)]);
        // x2 = -1 satisfies the relators (x1 = 1) but lies off the identity component
        assert!(validate_character(&tb, &v(1, -1, 1)).unwrap());
        assert_eq!(a.torus_coordinates(&v(1, -1, 1)).unwrap(), None);
    }
}
