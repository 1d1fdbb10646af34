use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An element of the symmetry group of the square, acting on cell indices
/// of an `n x n` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    Identity,
    /// Quarter turn: `(i, j) -> (j, n-1-i)`.
    Quarter,
    HalfTurn,
    ThreeQuarter,
    /// Mirror in the vertical axis: `(i, j) -> (i, n-1-j)`.
    Vertical,
    Horizontal,
    /// Mirror in the main diagonal: `(i, j) -> (j, i)`.
    Transpose,
    /// Mirror in the anti-diagonal: `(i, j) -> (n-1-j, n-1-i)`.
    AntiTranspose,
}

impl Sym {
    pub const ALL: [Sym; 8] = [
        Sym::Identity,
        Sym::Quarter,
        Sym::HalfTurn,
        Sym::ThreeQuarter,
        Sym::Vertical,
        Sym::Horizontal,
        Sym::Transpose,
        Sym::AntiTranspose,
    ];

    #[inline]
    pub fn apply(self, n: usize, i: usize, j: usize) -> (usize, usize) {
        let (ri, rj) = (n - 1 - i, n - 1 - j);
        match self {
            Sym::Identity => (i, j),
            Sym::Quarter => (j, ri),
            Sym::HalfTurn => (ri, rj),
            Sym::ThreeQuarter => (rj, i),
            Sym::Vertical => (i, rj),
            Sym::Horizontal => (ri, j),
            Sym::Transpose => (j, i),
            Sym::AntiTranspose => (rj, ri),
        }
    }
}

/// The eight symmetry classes, one per conjugacy class of subgroups of the
/// symmetry group of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryClass {
    /// No condition.
    All = 1,
    /// `a_ij = a_{i,n-1-j}`.
    VerticalFlip = 2,
    /// `a_ij = a_{n-1-i,n-1-j}`.
    HalfTurn = 3,
    /// `a_ij = a_ji`.
    Transpose = 4,
    /// `a_ij = a_{j,n-1-i}`.
    QuarterTurn = 5,
    /// Vertical and horizontal mirrors.
    Plus = 6,
    /// Both diagonal mirrors.
    Diagonals = 7,
    /// The whole group.
    Full = 8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown symmetry class `{0}` (use 1-8 or all, flip, half-turn, transpose, quarter-turn, plus, diagonals, full)")]
pub struct UnknownClass(pub String);

impl SymmetryClass {
    pub const EVERY: [SymmetryClass; 8] = [
        SymmetryClass::All,
        SymmetryClass::VerticalFlip,
        SymmetryClass::HalfTurn,
        SymmetryClass::Transpose,
        SymmetryClass::QuarterTurn,
        SymmetryClass::Plus,
        SymmetryClass::Diagonals,
        SymmetryClass::Full,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<Self> {
        SymmetryClass::EVERY.get((id as usize).wrapping_sub(1)).copied()
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            SymmetryClass::All => "all",
            SymmetryClass::VerticalFlip => "flip",
            SymmetryClass::HalfTurn => "half-turn",
            SymmetryClass::Transpose => "transpose",
            SymmetryClass::QuarterTurn => "quarter-turn",
            SymmetryClass::Plus => "plus",
            SymmetryClass::Diagonals => "diagonals",
            SymmetryClass::Full => "full",
        }
    }

    /// The subgroup whose invariant matrices form the class.
    pub fn group(self) -> &'static [Sym] {
        use Sym::*;
        match self {
            SymmetryClass::All => &[Identity],
            SymmetryClass::VerticalFlip => &[Identity, Vertical],
            SymmetryClass::HalfTurn => &[Identity, HalfTurn],
            SymmetryClass::Transpose => &[Identity, Transpose],
            SymmetryClass::QuarterTurn => &[Identity, Quarter, HalfTurn, ThreeQuarter],
            SymmetryClass::Plus => &[Identity, Vertical, Horizontal, HalfTurn],
            SymmetryClass::Diagonals => &[Identity, Transpose, AntiTranspose, HalfTurn],
            SymmetryClass::Full => &Sym::ALL,
        }
    }

    /// Whether the class can be nonempty at size `n`.
    ///
    /// A vertical mirror forces the middle column to carry the whole row sum
    /// parity, so those classes need odd `n`; a quarter-turn invariant matrix
    /// of even size has quadrant sums `n/4`.
    pub fn exists(self, n: usize) -> bool {
        match self {
            SymmetryClass::VerticalFlip | SymmetryClass::Plus | SymmetryClass::Full => n % 2 == 1,
            SymmetryClass::QuarterTurn => n % 4 != 2,
            _ => true,
        }
    }

    /// Whether the generating function carries a `y` (top-row position) statistic.
    pub fn has_y_weight(self) -> bool {
        matches!(
            self,
            SymmetryClass::All | SymmetryClass::HalfTurn | SymmetryClass::QuarterTurn
        )
    }

    /// Whether any weight statistic is attached (classes 4, 7, 8 are counted only).
    pub fn is_weighted(self) -> bool {
        !matches!(
            self,
            SymmetryClass::Transpose | SymmetryClass::Diagonals | SymmetryClass::Full
        )
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for SymmetryClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if let Ok(id) = t.parse::<u8>() {
            return SymmetryClass::from_id(id).ok_or_else(|| UnknownClass(s.to_string()));
        }
        let alias = match t.as_str() {
            "halfturn" | "half" => "half-turn",
            "quarterturn" | "quarter" => "quarter-turn",
            "vertical" => "flip",
            other => other,
        };
        SymmetryClass::EVERY
            .into_iter()
            .find(|c| c.mnemonic() == alias)
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_are_closed() {
        for n in [4usize, 5] {
            for class in SymmetryClass::EVERY {
                let g = class.group();
                for &a in g {
                    for &b in g {
                        // composition a∘b must act like some element of g on every cell
                        let ok = g.iter().any(|&c| {
                            (0..n).all(|i| {
                                (0..n).all(|j| {
                                    let (bi, bj) = b.apply(n, i, j);
                                    a.apply(n, bi, bj) == c.apply(n, i, j)
                                })
                            })
                        });
                        assert!(ok, "{class:?} not closed under {a:?}∘{b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_ids_and_names() {
        assert_eq!("5".parse::<SymmetryClass>().unwrap(), SymmetryClass::QuarterTurn);
        assert_eq!("half-turn".parse::<SymmetryClass>().unwrap(), SymmetryClass::HalfTurn);
        assert_eq!("Diagonals".parse::<SymmetryClass>().unwrap(), SymmetryClass::Diagonals);
        assert!("9".parse::<SymmetryClass>().is_err());
        assert!("0".parse::<SymmetryClass>().is_err());
        assert!("spiral".parse::<SymmetryClass>().is_err());
        for c in SymmetryClass::EVERY {
            assert_eq!(SymmetryClass::from_id(c.id()), Some(c));
            assert_eq!(c.mnemonic().parse::<SymmetryClass>().unwrap(), c);
        }
    }
}
