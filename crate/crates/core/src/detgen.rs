//! The determinant generating functions `Z_n(x, y, μ)`, `T_n(x, μ)` and
//! `R_n(x, μ)`: matrix builders and exact determinants over `Z[x, y]`.

use num_traits::Zero;

use crate::exact::{binom, BiPoly, BigInt, Monomial};

/// Square matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<BiPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![BiPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BiPoly::one());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BiPoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BiPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: BiPoly) {
        self.entries[i * self.n + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    /// Exact determinant by fraction-free elimination.
    ///
    /// Every division in the elimination is exact in `Z[x, y]`. A column
    /// with no usable pivot means the determinant is zero.
    pub fn det(&self) -> BiPoly {
        let n = self.n;
        if n == 0 {
            return BiPoly::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = BiPoly::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return BiPoly::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let num = &(&pivot * m.get(i, j)) - &(&lead * m.get(k, j));
                    let q = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination step must divide exactly");
                    m.set(i, j, q);
                }
                m.set(i, k, BiPoly::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant by Laplace expansion along the first row.
    ///
    /// Exponential; kept as an independent check of [`PolyMatrix::det`].
    pub fn det_cofactor(&self) -> BiPoly {
        let cols: Vec<usize> = (0..self.n).collect();
        self.minor_det(0, &cols)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> BiPoly {
        if cols.is_empty() {
            return BiPoly::one();
        }
        let mut acc = BiPoly::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &self.minor_det(row + 1, &rest);
            if idx % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
}

/// Entry of the matrix for `Z_n(x, y, μ)`: `δ_ij + z_ij`.
fn z_entry(n: usize, mu: i64, i: usize, j: usize) -> BiPoly {
    let n_ = n as i64;
    let (i_, j_) = (i as i64, j as i64);
    let mut p = BiPoly::zero();
    if i + 1 < n {
        for t in 0..n_ {
            let a = binom(i_ + mu, t);
            if a.is_zero() {
                continue;
            }
            for k in t..n_ {
                let c = &a * binom(k, t) * binom(j_ - k + mu - 1, j_ - k);
                p.add_term(Monomial::new((k - t) as u32, 0), c);
            }
        }
    } else {
        for t in 0..n_ {
            for k in t..n_ {
                let b = binom(k, t) * binom(j_ - k + mu - 1, j_ - k);
                if b.is_zero() {
                    continue;
                }
                for l in 0..n_ {
                    let c = binom(n_ - 2 + mu - l, t - l) * &b;
                    p.add_term(Monomial::new((k - t) as u32, (l + 1) as u32), c);
                }
            }
        }
    }
    if i == j {
        p += &BiPoly::one();
    }
    p
}

/// Matrix `(δ_ij + z_ij)` whose determinant is `Z_n(x, y, μ)`.
pub fn build_z_matrix(n: usize, mu: u32) -> PolyMatrix {
    PolyMatrix::from_fn(n, |i, j| z_entry(n, mu as i64, i, j))
}

/// Matrix whose determinant is `T_n(x, μ)`.
pub fn build_t_matrix(n: usize, mu: u32) -> PolyMatrix {
    let mu = mu as i64;
    let t_max = 2 * n as i64 - 2;
    PolyMatrix::from_fn(n, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let mut p = BiPoly::zero();
        for t in 0..=t_max {
            let e = 2 * j - t;
            if e < 0 {
                continue;
            }
            p.add_term(Monomial::new(e as u32, 0), binom(i + mu, t - i) * binom(j, e));
        }
        p
    })
}

/// `Y(i, t, μ) = C(i+μ, 2i+1+μ-t) + C(i+1+μ, 2i+1+μ-t)`.
pub fn y_coef(i: i64, t: i64, mu: i64) -> BigInt {
    let b = 2 * i + 1 + mu - t;
    binom(i + mu, b) + binom(i + 1 + mu, b)
}

/// Matrix whose determinant is `R_n(x, μ)` (`n >= 1`).
pub fn build_r_matrix(n: usize, mu: u32) -> PolyMatrix {
    let mu = mu as i64;
    let t_max = 2 * n as i64 - 1;
    PolyMatrix::from_fn(n, |i, j| {
        let (i, j) = (i as i64, j as i64);
        let mut p = BiPoly::zero();
        for t in 0..=t_max {
            let e = 2 * j + 1 - t;
            if e < 0 {
                continue;
            }
            p.add_term(Monomial::new(e as u32, 0), y_coef(i, t, mu) * y_coef(j, t, 0));
        }
        p
    })
}

/// `Z_n(x, y, μ)`; `Z_0 = 1`.
pub fn z_poly(n: usize, mu: u32) -> BiPoly {
    build_z_matrix(n, mu).det()
}

/// `T_n(x, μ)`; the empty determinant gives `T_0 = 1`.
pub fn t_poly(n: usize, mu: u32) -> BiPoly {
    build_t_matrix(n, mu).det()
}

/// `R_n(x, μ)`; `R_0 = 1`.
pub fn r_poly(n: usize, mu: u32) -> BiPoly {
    if n == 0 {
        return BiPoly::one();
    }
    build_r_matrix(n, mu).det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(c: &[i64]) -> BiPoly {
        BiPoly::from_x_coeffs(c)
    }

    #[test]
    fn small_z() {
        assert_eq!(z_poly(0, 0), BiPoly::one());
        assert_eq!(z_poly(0, 3), BiPoly::one());
        assert_eq!(z_poly(1, 0), BiPoly::from_y_coeffs(&[1, 1]));
        assert_eq!(z_poly(2, 1), BiPoly::from_y_rows(&[&[2i64][..], &[2, 1], &[2]]));
        assert_eq!(z_poly(2, 0), BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]));
    }

    #[test]
    fn small_t_and_r() {
        assert_eq!(t_poly(1, 0), BiPoly::one());
        assert_eq!(t_poly(1, 1), BiPoly::one());
        assert_eq!(t_poly(2, 0), xp(&[1, 1]));
        assert_eq!(t_poly(3, 1), xp(&[6, 13, 6, 1]));
        assert_eq!(r_poly(0, 1), BiPoly::one());
        assert_eq!(r_poly(1, 0), xp(&[4, 1]));
        assert_eq!(r_poly(2, 1), xp(&[60, 70, 12, 1]));
    }

    #[test]
    fn det_basics() {
        let p = BiPoly::from_y_rows(&[&[3i64, 1][..], &[0, 2]]);
        assert_eq!(PolyMatrix::from_rows(vec![vec![p.clone()]]).det(), p);
        assert_eq!(PolyMatrix::identity(2).det(), BiPoly::one());
        assert_eq!(PolyMatrix::identity(0).det(), BiPoly::one());
        // zero leading entry forces a row swap
        let m = PolyMatrix::from_rows(vec![
            vec![BiPoly::zero(), BiPoly::x()],
            vec![BiPoly::y(), BiPoly::one()],
        ]);
        assert_eq!(m.det(), -(BiPoly::monomial(1, 1, 1)));
        // zero column
        let z = PolyMatrix::from_rows(vec![
            vec![BiPoly::zero(), BiPoly::x()],
            vec![BiPoly::zero(), BiPoly::one()],
        ]);
        assert!(z.det().is_zero());
    }

    #[test]
    fn repeated_row_and_block_diagonal() {
        let a = xp(&[1, 2]);
        let b = BiPoly::from_y_coeffs(&[0, 3]);
        let rep = PolyMatrix::from_rows(vec![
            vec![a.clone(), b.clone(), BiPoly::one()],
            vec![BiPoly::x(), BiPoly::y(), a.clone()],
            vec![a.clone(), b.clone(), BiPoly::one()],
        ]);
        assert!(rep.det().is_zero());

        let blk1 = PolyMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![BiPoly::y(), BiPoly::x()]]);
        let blk2 = PolyMatrix::from_rows(vec![vec![b.clone(), BiPoly::one()], vec![a.clone(), BiPoly::x()]]);
        let mut big = PolyMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                big.set(i, j, blk1.get(i, j).clone());
                big.set(i + 2, j + 2, blk2.get(i, j).clone());
            }
        }
        assert_eq!(big.det(), &blk1.det() * &blk2.det());
    }

    #[test]
    fn elimination_matches_cofactor() {
        for mu in 0..=2 {
            for n in 1..=5 {
                for m in [build_z_matrix(n, mu), build_t_matrix(n, mu), build_r_matrix(n, mu)] {
                    assert_eq!(m.det(), m.det_cofactor(), "n={n} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn z_is_palindromic_in_y() {
        for mu in 0..=1 {
            for n in 0..=6 {
                assert!(z_poly(n, mu).is_palindromic_in_y(), "n={n} mu={mu}");
            }
        }
    }
}
