//! Exact arithmetic: big integers, rationals, the bivariate polynomial ring
//! `Z[x, y]`, generalized binomials, rising factorials and the `Δ_k` factors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    Inexact,
    #[error("division by the zero polynomial")]
    DivByZero,
    #[error("malformed polynomial encoding: {0}")]
    Parse(String),
}

/// Exponent pair `x^ex * y^ey`.
///
/// Ordered by total degree, then by *decreasing* x-exponent. This is a
/// monomial order (graded lex with `y > x`), so the last key of a sorted map
/// is the leading term used by exact division, and the ascending order is
/// the canonical rendering order: `2 + x*y + 2*y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ex: 0, ey: 0 };

    pub fn new(ex: u32, ey: u32) -> Self {
        Monomial { ex, ey }
    }

    pub fn degree(self) -> u32 {
        self.ex + self.ey
    }

    fn divides(self, other: Monomial) -> bool {
        self.ex <= other.ex && self.ey <= other.ey
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.ex.cmp(&self.ex))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.ex + rhs.ex, self.ey + rhs.ey)
    }
}

/// Sparse polynomial in `x` and `y` with [`BigInt`] coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, ex: u32, ey: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Monomial::new(ex, ey), c.into());
        p
    }

    /// `c[0] + c[1] x + c[2] x^2 + ...`
    pub fn from_x_coeffs<C: Into<BigInt> + Copy>(coeffs: &[C]) -> Self {
        BiPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as u32, 0, c.into())),
        )
    }

    /// `c[0] + c[1] y + c[2] y^2 + ...`
    pub fn from_y_coeffs<C: Into<BigInt> + Copy>(coeffs: &[C]) -> Self {
        BiPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (0, e as u32, c.into())),
        )
    }

    /// Polynomial `Σ_s rows[s](x) · y^s`, each row given by x-coefficients.
    pub fn from_y_rows<C: Into<BigInt> + Copy>(rows: &[&[C]]) -> Self {
        let mut p = BiPoly::zero();
        for (ey, row) in rows.iter().enumerate() {
            for (ex, &c) in row.iter().enumerate() {
                p.add_term(Monomial::new(ex as u32, ey as u32), c.into());
            }
        }
        p
    }

    /// Builds a polynomial from `(ex, ey, coeff)` triples; repeats are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, BigInt)>) -> Self {
        let mut p = BiPoly::zero();
        for (ex, ey, c) in terms {
            p.add_term(Monomial::new(ex, ey), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> BigInt {
        self.terms
            .get(&Monomial::new(ex, ey))
            .cloned()
            .unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Maximum x-exponent; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ex).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ey).max()
    }

    pub fn min_deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ey).min()
    }

    pub fn is_univariate_x(&self) -> bool {
        self.terms.keys().all(|m| m.ey == 0)
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `x^ex y^ey`.
    pub fn shift(&self, ex: u32, ey: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.ex + ex, m.ey + ey), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The coefficient of `y^ey` as a polynomial in `x`.
    pub fn y_coeff(&self, ey: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.ey == ey)
                .map(|(m, c)| (Monomial::new(m.ex, 0), c.clone()))
                .collect(),
        }
    }

    /// `p(x, y0)` for an integer `y0`.
    pub fn subs_y(&self, y0: i64) -> BiPoly {
        let y0 = BigInt::from(y0);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.ex, 0), c * num_traits::pow(y0.clone(), m.ey as usize));
        }
        out
    }

    /// `p(x0, y)` for an integer `x0`.
    pub fn subs_x(&self, x0: i64) -> BiPoly {
        let x0 = BigInt::from(x0);
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(0, m.ey), c * num_traits::pow(x0.clone(), m.ex as usize));
        }
        out
    }

    /// Exact value at `(x0, y0)`.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let term = Rational::from_integer(c.clone())
                * num_traits::pow(x0.clone(), m.ex as usize)
                * num_traits::pow(y0.clone(), m.ey as usize);
            acc += term;
        }
        acc
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, x0: i64, y0: i64) -> BigInt {
        let (x0, y0) = (BigInt::from(x0), BigInt::from(y0));
        self.terms
            .iter()
            .map(|(m, c)| {
                c * num_traits::pow(x0.clone(), m.ex as usize)
                    * num_traits::pow(y0.clone(), m.ey as usize)
            })
            .sum()
    }

    /// Whether the coefficients of `y^s` and `y^(deg_y - s)` agree for all `s`.
    pub fn is_palindromic_in_y(&self) -> bool {
        let Some(d) = self.deg_y() else { return true };
        (0..=d).all(|s| self.y_coeff(s) == self.y_coeff(d - s))
    }

    pub fn divisible_by_y(&self) -> bool {
        self.terms.keys().all(|m| m.ey >= 1)
    }

    /// Quotient `q` with `q * den == self`, by leading-term elimination.
    pub fn div_exact(&self, den: &BiPoly) -> Result<BiPoly, PolyError> {
        let (lm, lc) = den.leading().ok_or(PolyError::DivByZero)?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return Err(PolyError::Inexact);
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return Err(PolyError::Inexact);
            }
            let qm = Monomial::new(rm.ex - lm.ex, rm.ey - lm.ey);
            for (m, c) in &den.terms {
                rem.add_term(*m * qm, -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Canonical JSON form: `[[ex, ey, "coeff"], ...]` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| serde_json::json!([m.ex, m.ey, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<BiPoly, PolyError> {
        let bad = |what: &str| PolyError::Parse(what.to_string());
        let arr = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
        let mut p = BiPoly::zero();
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("expected [ex, ey, coeff]"))?;
            let ex = t[0].as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("bad x exponent"))?;
            let ey = t[1].as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("bad y exponent"))?;
            let c: BigInt = t[2]
                .as_str()
                .ok_or_else(|| bad("coefficient must be a decimal string"))?
                .parse()
                .map_err(|_| bad("coefficient is not an integer"))?;
            p.add_term(Monomial::new(ex, ey), c);
        }
        Ok(p)
    }

    /// Rendering grouped by powers of `y`, e.g. `(4 + x) + (4*x + x^2)*y`.
    pub fn render_grouped_y(&self) -> String {
        let Some(dy) = self.deg_y() else { return "0".into() };
        if dy == 0 {
            return self.to_string();
        }
        let mut parts = Vec::new();
        for s in 0..=dy {
            let c = self.y_coeff(s);
            if c.is_zero() {
                continue;
            }
            let ypow = match s {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{s}"),
            };
            let body = if c.num_terms() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(match (s, c.is_one()) {
                (0, _) => body,
                (_, true) => ypow,
                _ => format!("{body}*{ypow}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for BiPoly {
    /// Canonical text form, e.g. `2 + x*y + 2*y^2` or `4 - x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::with_capacity(3);
            if !mag.is_one() || *m == Monomial::ONE {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", m.ex), ("y", m.ey)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

impl From<BigInt> for BiPoly {
    fn from(c: BigInt) -> Self {
        BiPoly::constant(c)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Generalized binomial coefficient: `0` for `b < 0`, otherwise
/// `a (a-1) ... (a-b+1) / b!`, defined for every integer `a`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    // Non-negative a below b gives a zero factor.
    if a >= 0 && b > a {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        // acc = a (a-1) ... (a-i) / (i+1)!, an integer at every step
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `binom` for small arguments, as `i64`.
pub fn binom_i64(a: i64, b: i64) -> i64 {
    binom(a, b).to_i64().expect("binomial exceeds i64")
}

/// Rising factorial `(X)_j = X (X+1) ... (X+j-1)`.
pub fn pochhammer(x: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..j {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// The factor `Δ_k(μ)` of the `Z_n(1, 1, μ)` product formula.
pub fn delta(k: u32, mu: &Rational) -> Rational {
    if k == 0 {
        return Rational::from_integer(2.into());
    }
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let half_mu = mu / r(2, 1);
    if k % 2 == 0 {
        let j = k / 2;
        let jr = r(j as i64, 1);
        let num = pochhammer(&(mu + r(2, 1) * &jr + r(2, 1)), j)
            * pochhammer(&(&half_mu + r(2, 1) * &jr + r(3, 2)), j - 1);
        let den = pochhammer(&jr, j) * pochhammer(&(&half_mu + &jr + r(3, 2)), j - 1);
        num / den
    } else {
        let j = (k + 1) / 2;
        let jr = r(j as i64, 1);
        let num = pochhammer(&(mu + r(2, 1) * &jr), j - 1)
            * pochhammer(&(&half_mu + r(2, 1) * &jr + r(1, 2)), j);
        let den = pochhammer(&jr, j) * pochhammer(&(&half_mu + &jr + r(1, 2)), j - 1);
        num / den
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn yp(c: &[i64]) -> BiPoly {
        BiPoly::from_y_coeffs(c)
    }

    #[test]
    fn add_examples() {
        let a = BiPoly::from_y_rows(&[&[1i64][..], &[1]]);
        let b = BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]);
        let s = &a + &b;
        assert_eq!(s, BiPoly::from_y_rows(&[&[3i64][..], &[1, 1], &[2]]));
        assert_eq!(&a + &BiPoly::zero(), a);
        let cancel = &BiPoly::x() + &BiPoly::monomial(-1, 1, 0);
        assert!(cancel.is_zero());
        assert_eq!(cancel.num_terms(), 0);
    }

    #[test]
    fn mul_examples() {
        let r1 = BiPoly::from_x_coeffs(&[4, 1]);
        assert_eq!(&BiPoly::one() * &r1, r1);
        let t2 = BiPoly::from_x_coeffs(&[1, 1]);
        assert_eq!(&t2 * &r1, BiPoly::from_x_coeffs(&[4, 5, 1]));
        let two_x = BiPoly::from_x_coeffs(&[2, 1]);
        assert_eq!(&two_x * &BiPoly::one(), two_x);
    }

    #[test]
    fn divexact_examples() {
        let num = BiPoly::from_x_coeffs(&[4, 5, 1]);
        let den = BiPoly::from_x_coeffs(&[1, 1]);
        assert_eq!(num.div_exact(&den).unwrap(), BiPoly::from_x_coeffs(&[4, 1]));
        assert_eq!(num.div_exact(&num).unwrap(), BiPoly::one());
        let bad = BiPoly::from_x_coeffs(&[2, 1]);
        assert_eq!(bad.div_exact(&den), Err(PolyError::Inexact));
        assert_eq!(bad.div_exact(&BiPoly::zero()), Err(PolyError::DivByZero));
        // coefficient not divisible
        assert_eq!(BiPoly::constant(3).div_exact(&BiPoly::constant(2)), Err(PolyError::Inexact));
    }

    #[test]
    fn eval_examples() {
        let z2 = BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]);
        assert_eq!(z2.eval(&int(1), &int(1)), int(5));
        assert_eq!(z2.eval(&int(0), &int(0)), int(2));
        let a3 = BiPoly::from_x_coeffs(&[6, 1]);
        assert_eq!(a3.eval(&int(3), &int(1)), int(9));
        assert_eq!(z2.eval(&rat(1, 2), &rat(-1, 3)), rat(2, 1) + rat(-1, 6) + rat(2, 9));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(-1, 0), 1.into());
        assert_eq!(binom(5, 2), 10.into());
        assert_eq!(binom(-2, 3), BigInt::from(-4));
        assert_eq!(binom(3, -1), 0.into());
        assert_eq!(binom(2, 5), 0.into());
        assert_eq!(binom(0, 0), 1.into());
        assert_eq!(binom(-1, 4), 1.into());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&rat(3, 2), 2), rat(15, 4));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(0, &int(0)), int(2));
        assert_eq!(delta(0, &int(5)), int(2));
        assert_eq!(delta(1, &int(0)), rat(5, 2));
        // hand evaluation: (4)_1 (7/2)_0 / ((1)_1 (5/2)_0)
        assert_eq!(delta(2, &int(0)), int(4));
        let prod = delta(0, &int(0)) * delta(1, &int(0)) * delta(2, &int(0));
        assert_eq!(prod, int(20));
    }

    #[test]
    fn rendering() {
        let z2 = BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]);
        assert_eq!(z2.to_string(), "2 + x*y + 2*y^2");
        assert_eq!(BiPoly::from_x_coeffs(&[4, -1]).to_string(), "4 - x");
        assert_eq!(BiPoly::from_x_coeffs(&[0, -3, 1]).to_string(), "-3*x + x^2");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(BiPoly::constant(-1).to_string(), "-1");
        let z3 = BiPoly::from_y_rows(&[&[4i64, 1][..], &[0, 4, 1], &[0, 4, 1], &[4, 1]]);
        assert_eq!(
            z3.render_grouped_y(),
            "(4 + x) + (4*x + x^2)*y + (4*x + x^2)*y^2 + (4 + x)*y^3"
        );
        assert_eq!(yp(&[0, 1]).render_grouped_y(), "y");
    }

    #[test]
    fn json_form() {
        let z2 = BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]);
        assert_eq!(
            z2.to_json().to_string(),
            r#"[[0,0,"2"],[1,1,"1"],[0,2,"2"]]"#
        );
        assert_eq!(BiPoly::from_json(&z2.to_json()).unwrap(), z2);
        assert!(BiPoly::from_json(&serde_json::json!([[0, 0, 3]])).is_err());
    }

    #[test]
    fn palindromes() {
        assert!(yp(&[1, 1]).is_palindromic_in_y());
        assert!(!yp(&[1, 2]).is_palindromic_in_y());
        assert!(BiPoly::zero().is_palindromic_in_y());
        assert!(yp(&[0, 3, 1]).divisible_by_y());
        assert!(!yp(&[1, 3]).divisible_by_y());
    }

    fn small_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..6).prop_map(|ts| {
            BiPoly::from_terms(ts.into_iter().map(|(a, b, c)| (a, b, BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn divexact_round_trip(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
            if !a.is_zero() {
                prop_assert_eq!((&a * &b).deg_x(), Some(a.deg_x().unwrap() + b.deg_x().unwrap()));
            }
        }

        #[test]
        fn json_round_trip(a in small_poly()) {
            prop_assert_eq!(BiPoly::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_poly(), b in small_poly(), xn in -4i64..5, yn in -4i64..5) {
            let (x0, y0) = (rat(xn, 3), rat(yn, 2));
            prop_assert_eq!((&a * &b).eval(&x0, &y0), a.eval(&x0, &y0) * b.eval(&x0, &y0));
        }

        #[test]
        fn pascal(a in 1i64..30, b in 1i64..30, neg in any::<bool>()) {
            let a = if neg { -a } else { a };
            prop_assert_eq!(binom(a, b), binom(a - 1, b) + binom(a - 1, b - 1));
        }

        #[test]
        fn pochhammer_step(n in -20i64..20, d in 1i64..7, j in 0u32..8) {
            let x = rat(n, d);
            prop_assert_eq!(pochhammer(&x, j + 1), pochhammer(&x, j) * (x.clone() + int(j as i64)));
        }
    }
}
