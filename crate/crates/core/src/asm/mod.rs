//! Alternating sign matrices, their symmetry classes, weight statistics and
//! enumeration.

mod class;
mod search;

use std::fmt;

use thiserror::Error;

pub use class::{Sym, SymmetryClass, UnknownClass};
pub use search::{
    count, enumerate, enumerate_par, genfun, CountVisitor, GenfunVisitor, Merge, Visitor,
    WeightedGF,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    #[error("entries must lie in {{-1, 0, 1}}")]
    BadEntry,
    #[error("matrix is not square")]
    NotSquare,
    #[error("{0} {1}: partial sums leave {{0, 1}} or total is not 1")]
    Axiom(&'static str, usize),
    #[error("{minus_ones} entries equal to -1 cannot split into quarter-turn orbits")]
    InvalidOrbitCount { minus_ones: usize },
    #[error("statistic needs odd size, got {0}")]
    EvenSize(usize),
    #[error("forced {0} is violated")]
    ForcedStructure(&'static str),
    #[error("matrix is not invariant under the {0} class")]
    NotInClass(SymmetryClass),
}

/// A square matrix over `{-1, 0, 1}`, row-major, indexed from 0.
///
/// Values built through [`Asm::from_rows`] satisfy the ASM axioms; the
/// enumerator fills entries in place and only exposes complete matrices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    pub fn identity(n: usize) -> Asm {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Asm, AsmError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AsmError::NotSquare);
        }
        let m = Asm {
            n,
            entries: rows.concat(),
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn blank(n: usize) -> Asm {
        Asm {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    /// Checks the axioms: entries in `{-1,0,1}`, every row and column prefix
    /// sum in `{0,1}`, every full line sum equal to 1.
    pub fn validate(&self) -> Result<(), AsmError> {
        let n = self.n;
        if self.entries.iter().any(|&v| !(-1..=1).contains(&v)) {
            return Err(AsmError::BadEntry);
        }
        for (what, line) in [("row", true), ("column", false)] {
            for a in 0..n {
                let mut s = 0i32;
                for b in 0..n {
                    s += if line { self.get(a, b) } else { self.get(b, a) } as i32;
                    if !(0..=1).contains(&s) {
                        return Err(AsmError::Axiom(what, a));
                    }
                }
                if s != 1 {
                    return Err(AsmError::Axiom(what, a));
                }
            }
        }
        Ok(())
    }

    pub fn transform(&self, g: Sym) -> Asm {
        let n = self.n;
        let mut out = Asm::blank(n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = g.apply(n, i, j);
                out.entries[a * n + b] = self.get(i, j);
            }
        }
        out
    }

    /// Whether the matrix is invariant under every element of the class's group.
    pub fn is_in_class(&self, class: SymmetryClass) -> bool {
        let n = self.n;
        class.group().iter().all(|&g| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let (a, b) = g.apply(n, i, j);
                    self.get(a, b) == self.get(i, j)
                })
            })
        })
    }

    /// Number of entries equal to -1.
    pub fn minus_ones(&self) -> usize {
        self.entries.iter().filter(|&&v| v == -1).count()
    }

    /// Column of the unique 1 in the top row.
    pub fn top_row_pos(&self) -> usize {
        (0..self.n)
            .find(|&j| self.get(0, j) == 1)
            .expect("top row of an ASM holds a 1")
    }

    /// Orbits of -1 entries under the half turn. A -1 at the centre of an
    /// odd matrix is its own orbit.
    pub fn halfturn_orbits(&self) -> usize {
        let c = self.minus_ones();
        let n = self.n;
        if n % 2 == 1 && self.get(n / 2, n / 2) == -1 {
            (c - 1) / 2 + 1
        } else {
            c / 2
        }
    }

    /// Orbits of -1 entries under the quarter turn.
    pub fn quarterturn_orbits(&self) -> Result<usize, AsmError> {
        let c = self.minus_ones();
        match c % 4 {
            0 => Ok(c / 4),
            1 => Ok(c / 4 + 1),
            _ => Err(AsmError::InvalidOrbitCount { minus_ones: c }),
        }
    }

    /// For a vertically symmetric matrix of size `2m+1`: the -1 entries in the
    /// first `m` columns. Checks the forced middle column `a_{jm} = (-1)^j`.
    pub fn flip_left_minus(&self) -> Result<usize, AsmError> {
        let n = self.n;
        if n % 2 == 0 {
            return Err(AsmError::EvenSize(n));
        }
        let m = n / 2;
        if (0..n).any(|i| self.get(i, m) != alternating(i)) {
            return Err(AsmError::ForcedStructure("middle column"));
        }
        Ok((0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) == -1)
            .count())
    }

    /// For a matrix symmetric in both axes of size `2m+1`: the -1 entries
    /// with `i, j < m`. Checks the forced middle cross.
    pub fn quadrant_minus(&self) -> Result<usize, AsmError> {
        let n = self.n;
        if n % 2 == 0 {
            return Err(AsmError::EvenSize(n));
        }
        let m = n / 2;
        if (0..n).any(|k| self.get(k, m) != alternating(k) || self.get(m, k) != alternating(k)) {
            return Err(AsmError::ForcedStructure("middle cross"));
        }
        Ok((0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) == -1)
            .count())
    }

    /// The `(x, y)` exponents of the class weight of this matrix.
    ///
    /// Classes without a weight statistic give `(0, 0)`.
    pub fn weight(&self, class: SymmetryClass) -> Result<(usize, usize), AsmError> {
        Ok(match class {
            SymmetryClass::All => (self.minus_ones(), self.top_row_pos()),
            SymmetryClass::VerticalFlip => (self.flip_left_minus()?, 0),
            SymmetryClass::HalfTurn => (self.halfturn_orbits(), self.top_row_pos()),
            SymmetryClass::QuarterTurn => (self.quarterturn_orbits()?, self.top_row_pos()),
            SymmetryClass::Plus => (self.quadrant_minus()?, 0),
            SymmetryClass::Transpose | SymmetryClass::Diagonals | SymmetryClass::Full => (0, 0),
        })
    }
}

fn alternating(k: usize) -> i8 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|j| match self.get(i, j) {
                    1 => "+",
                    -1 => "-",
                    _ => ".",
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
