//! Plane-partition families with special-part statistics: shifted plane
//! partitions (`Z_n`), triangular arrays (`T_n`), and self-complementary
//! cyclically symmetric plane partitions (`x^m w_{2m}`).

use std::collections::BTreeMap;

use crate::exact::{BiPoly, BigInt, Monomial};

#[derive(Default)]
struct Tally(BTreeMap<(u32, u32), u64>);

impl Tally {
    fn add(&mut self, r: u32, s: u32) {
        *self.0.entry((r, s)).or_default() += 1;
    }

    fn into_poly(self) -> BiPoly {
        BiPoly::from_terms(self.0.into_iter().map(|((r, s), c)| (r, s, BigInt::from(c))))
    }
}

/// Shifted plane partitions: row `i` starts on the diagonal, row lengths
/// strictly decrease with the first at most `n`, rows weakly and columns
/// strictly decrease, and each diagonal part equals its row length plus `2μ`.
struct Shifted {
    n: usize,
    mu: u32,
    grid: Vec<Vec<u32>>,
    tally: Tally,
}

impl Shifted {
    fn special(&self, i: usize, j: usize, a: u32) -> bool {
        // positions are relative, so the 0- or 1-based choice cancels
        self.mu < a && a as usize <= j - i + self.mu as usize
    }

    fn rows(&mut self, i: usize, max_len: usize, r: u32, s: u32) {
        self.tally.add(r, s);
        for len in 1..=max_len {
            let diag = len as u32 + 2 * self.mu;
            if i > 0 && diag >= self.grid[i - 1][i] {
                continue;
            }
            let mut row = vec![0; i + len];
            row[i] = diag;
            self.grid.push(row);
            let r0 = r + u32::from(self.special(i, i, diag));
            let s0 = s + u32::from(i == 0 && diag as usize == self.n + 2 * self.mu as usize);
            self.cells(i, i + 1, len, r0, s0);
            self.grid.pop();
        }
    }

    fn cells(&mut self, i: usize, j: usize, len: usize, r: u32, s: u32) {
        if j == i + len {
            self.rows(i + 1, len - 1, r, s);
            return;
        }
        let mut hi = self.grid[i][j - 1];
        if i > 0 {
            hi = hi.min(self.grid[i - 1][j] - 1);
        }
        let top = (self.n + 2 * self.mu as usize) as u32;
        for a in 1..=hi {
            self.grid[i][j] = a;
            let r1 = r + u32::from(self.special(i, j, a));
            let s1 = s + u32::from(i == 0 && a == top);
            self.cells(i, j + 1, len, r1, s1);
        }
    }
}

/// `Σ x^r y^s` over shifted plane partitions of order `n` and shift `μ`:
/// `r` counts special parts `μ < a_ij <= j - i + μ`, `s` counts first-row
/// parts equal to `n + 2μ`. The empty partition contributes 1.
pub fn enum_shifted_pp(n: usize, mu: u32) -> BiPoly {
    let mut e = Shifted {
        n,
        mu,
        grid: Vec::new(),
        tally: Tally::default(),
    };
    e.rows(0, n, 0, 0);
    e.tally.into_poly()
}

/// `Σ x^r` over triangular arrays with rows `1..n-1` of lengths `n-i`,
/// weakly decreasing rows and columns, `a_{i1} <= n-i+1+μ`; `r` counts
/// parts `a_ij <= j`.
pub fn enum_tri_array(n: usize, mu: u32) -> BiPoly {
    if n <= 1 {
        return BiPoly::one();
    }
    let rows = n - 1;
    // cells in row-major order, 1-based (i, j)
    let cells: Vec<(usize, usize)> = (1..=rows)
        .flat_map(|i| (1..=n - i).map(move |j| (i, j)))
        .collect();
    let mut grid = vec![vec![0u32; n + 1]; n + 1];
    let mut counts = vec![0u64; cells.len() + 1];

    fn go(
        k: usize,
        r: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut [u64],
        n: usize,
        mu: u32,
    ) {
        let Some(&(i, j)) = cells.get(k) else {
            counts[r] += 1;
            return;
        };
        let mut hi = if j == 1 {
            (n - i + 1) as u32 + mu
        } else {
            grid[i][j - 1]
        };
        if i > 1 {
            hi = hi.min(grid[i - 1][j]);
        }
        for a in 1..=hi {
            grid[i][j] = a;
            let special = a as usize <= j;
            go(k + 1, r + usize::from(special), cells, grid, counts, n, mu);
        }
    }

    go(0, 0, &cells, &mut grid, &mut counts, n, mu);
    BiPoly::from_terms(
        counts
            .iter()
            .enumerate()
            .map(|(r, &c)| (r as u32, 0, BigInt::from(c))),
    )
}

/// A plane partition in the cube of side `2m`, stored as column heights
/// `h[i][j]` (1-based, `0..=2m`).
struct Scc {
    side: usize,
    h: Vec<Vec<usize>>,
    /// `(half-array count, whole-array count)` of special parts -> multiplicity.
    counts: BTreeMap<(u32, u32), u64>,
}

impl Scc {
    /// `(i,j,k) ∈ F ⟺ (j,k,i) ∈ F` for all triples whose rows are known.
    fn cyclic_ok(&self, known_rows: usize) -> bool {
        let s = self.side;
        for i in 1..=known_rows {
            for j in 1..=known_rows {
                let hij = self.h[i][j];
                for k in 1..=s {
                    if (k <= hij) != (i <= self.h[j][k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, i: usize, j: usize) {
        let s = self.side;
        let m = s / 2;
        if j > s {
            if !self.cyclic_ok(i) {
                return;
            }
            if i == m {
                self.close();
            } else {
                self.fill(i + 1, 1);
            }
            return;
        }
        let mut hi = s;
        if j > 1 {
            hi = hi.min(self.h[i][j - 1]);
        }
        if i > 1 {
            hi = hi.min(self.h[i - 1][j]);
        }
        for a in 0..=hi {
            self.h[i][j] = a;
            self.fill(i, j + 1);
        }
    }

    /// Parts with `i <= a_ij < j` among the cells selected by `within`.
    fn special_parts(&self, within: impl Fn(usize, usize) -> bool) -> u32 {
        let s = self.side;
        (1..=s)
            .flat_map(|i| (1..=s).map(move |j| (i, j)))
            .filter(|&(i, j)| within(i, j) && i <= self.h[i][j] && self.h[i][j] < j)
            .count() as u32
    }

    /// Completes the bottom half by complementation and checks the rest.
    fn close(&mut self) {
        let s = self.side;
        let m = s / 2;
        for i in m + 1..=s {
            for j in 1..=s {
                self.h[i][j] = s - self.h[s + 1 - i][s + 1 - j];
            }
        }
        if (1..=s).any(|j| self.h[m + 1][j] > self.h[m][j]) {
            return;
        }
        if !self.cyclic_ok(s) {
            return;
        }
        let half = self.special_parts(|i, j| i + j <= s + 1);
        let whole = self.special_parts(|_, _| true);
        *self.counts.entry((half, whole)).or_default() += 1;
    }
}

/// `Σ x^k` over self-complementary cyclically symmetric plane partitions
/// in the cube of side `2m`; `k` counts parts with `i <= a_ij < j` on or
/// above the anti-diagonal (`i + j <= 2m + 1`).
///
/// The complement map pairs up special parts, so counting over the whole
/// array gives `2k - m` instead.
pub fn enum_sccpp(m: usize) -> BiPoly {
    if m == 0 {
        return BiPoly::one();
    }
    let mut p = BiPoly::zero();
    for ((k, _), c) in scc_tally(m) {
        p.add_term(Monomial::new(k, 0), BigInt::from(c));
    }
    p
}

fn scc_tally(m: usize) -> BTreeMap<(u32, u32), u64> {
    let side = 2 * m;
    let mut e = Scc {
        side,
        h: vec![vec![0; side + 1]; side + 1],
        counts: BTreeMap::new(),
    };
    e.fill(1, 1);
    e.counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detgen::{t_poly, z_poly};

    #[test]
    fn shifted_small() {
        assert_eq!(enum_shifted_pp(0, 0), BiPoly::one());
        assert_eq!(enum_shifted_pp(0, 2), BiPoly::one());
        assert_eq!(enum_shifted_pp(1, 0), BiPoly::from_y_coeffs(&[1, 1]));
        assert_eq!(
            enum_shifted_pp(2, 0),
            BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]])
        );
    }

    #[test]
    fn tri_small() {
        assert_eq!(enum_tri_array(1, 0), BiPoly::one());
        assert_eq!(enum_tri_array(2, 0), BiPoly::from_x_coeffs(&[1, 1]));
        assert_eq!(enum_tri_array(2, 1), BiPoly::from_x_coeffs(&[2, 1]));
    }

    #[test]
    fn scc_small() {
        assert_eq!(enum_sccpp(1), BiPoly::x());
        assert_eq!(enum_sccpp(2), BiPoly::from_x_coeffs(&[0, 0, 3, 1]));
        assert_eq!(enum_sccpp(2).eval_int(1, 1), 4.into());
        assert_eq!(enum_sccpp(3), BiPoly::from_x_coeffs(&[0, 0, 0, 15, 25, 8, 1]));
    }

    #[test]
    fn whole_array_count_is_doubled_minus_m() {
        for m in 1..=3 {
            for (half, whole) in scc_tally(m).into_keys() {
                assert_eq!(whole, 2 * half - m as u32, "m={m}");
            }
        }
    }

    #[test]
    fn families_match_determinants() {
        for mu in 0..=2 {
            for n in 0..=4 {
                assert_eq!(enum_shifted_pp(n, mu), z_poly(n, mu), "Z n={n} mu={mu}");
                assert!(enum_shifted_pp(n, mu).is_palindromic_in_y());
            }
            for n in 1..=4 {
                assert_eq!(enum_tri_array(n, mu), t_poly(n, mu), "T n={n} mu={mu}");
            }
        }
    }
}
