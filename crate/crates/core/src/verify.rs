//! Identity checks: proved determinant identities, enumeration-based
//! conjectures, count ratios, and extraction of the residual polynomial
//! sequences `S_k`, `w_k`, `v_k` by exact division.
//!
//! Every check produces a [`VerdictReport`]. A failed conjecture is an
//! ordinary result; a failed theorem is an implementation bug and callers
//! should treat it as fatal.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::asm::{genfun, SymmetryClass};
use crate::detgen::{r_poly, t_poly, z_poly};
use crate::exact::{binom, delta, int, BiPoly, BigInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("class {class} at size {n} is beyond the enumeration cutoff {cutoff}")]
    MissingData {
        class: SymmetryClass,
        n: usize,
        cutoff: usize,
    },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{id}` is not defined at n = {n}")]
    OutOfRange { id: &'static str, n: usize },
}

/// Largest enumerated size per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cutoffs(pub [usize; 8]);

impl Default for Cutoffs {
    fn default() -> Self {
        // classes:  1  2   3   4  5   6   7   8
        Cutoffs([8, 13, 10, 8, 15, 15, 13, 17])
    }
}

impl Cutoffs {
    pub fn get(&self, class: SymmetryClass) -> usize {
        self.0[class.id() as usize - 1]
    }

    pub fn set(&mut self, class: SymmetryClass, n: usize) {
        self.0[class.id() as usize - 1] = n;
    }
}

/// Memoized source of generating functions, bounded by [`Cutoffs`].
///
/// Safe to share between threads; each value is computed at most once.
pub struct Data {
    cutoffs: Cutoffs,
    asm: Mutex<HashMap<(SymmetryClass, usize), Arc<BiPoly>>>,
    det: Mutex<HashMap<(char, usize, u32), Arc<BiPoly>>>,
}

impl Data {
    pub fn new(cutoffs: Cutoffs) -> Self {
        Data {
            cutoffs,
            asm: Mutex::default(),
            det: Mutex::default(),
        }
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.cutoffs
    }

    pub fn available(&self, class: SymmetryClass, n: usize) -> bool {
        n >= 1 && n <= self.cutoffs.get(class)
    }

    /// Weighted generating function of the class at size `n`.
    pub fn gf(&self, class: SymmetryClass, n: usize) -> Result<Arc<BiPoly>, VerifyError> {
        if !self.available(class, n) {
            return Err(VerifyError::MissingData {
                class,
                n,
                cutoff: self.cutoffs.get(class),
            });
        }
        if let Some(p) = self.asm.lock().unwrap().get(&(class, n)) {
            return Ok(p.clone());
        }
        let p = Arc::new(genfun(n, class).poly);
        self.asm.lock().unwrap().insert((class, n), p.clone());
        Ok(p)
    }

    pub fn count(&self, class: SymmetryClass, n: usize) -> Result<BigInt, VerifyError> {
        Ok(self.gf(class, n)?.eval_int(1, 1))
    }

    fn det(&self, which: char, n: usize, mu: u32) -> Arc<BiPoly> {
        if let Some(p) = self.det.lock().unwrap().get(&(which, n, mu)) {
            return p.clone();
        }
        let p = Arc::new(match which {
            'Z' => z_poly(n, mu),
            'T' => t_poly(n, mu),
            _ => r_poly(n, mu),
        });
        self.det.lock().unwrap().insert((which, n, mu), p.clone());
        p
    }

    pub fn z(&self, n: usize, mu: u32) -> Arc<BiPoly> {
        self.det('Z', n, mu)
    }

    pub fn t(&self, n: usize, mu: u32) -> Arc<BiPoly> {
        self.det('T', n, mu)
    }

    pub fn r(&self, n: usize, mu: u32) -> Arc<BiPoly> {
        self.det('R', n, mu)
    }
}

impl Default for Data {
    fn default() -> Self {
        Data::new(Cutoffs::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
    /// The exact quotient exists; it is stored in the report.
    Extracted,
    /// The division left a remainder.
    Inexact,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Equal | Verdict::Extracted)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Equal => "Equal",
            Verdict::Unequal => "Unequal",
            Verdict::Extracted => "Extracted",
            Verdict::Inexact => "Inexact",
        }
    }
}

/// One side of a compared identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Poly(BiPoly),
    Rat(Rational),
}

impl Quantity {
    fn to_json(&self) -> Value {
        match self {
            Quantity::Poly(p) => p.to_json(),
            Quantity::Rat(r) => Value::String(r.to_string()),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Poly(p) => write!(f, "{p}"),
            Quantity::Rat(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub id: &'static str,
    pub kind: Kind,
    pub params: Vec<(&'static str, i64)>,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub verdict: Verdict,
    pub quotient: Option<BiPoly>,
    pub note: Option<String>,
}

impl VerdictReport {
    fn compare(
        id: &'static str,
        kind: Kind,
        params: Vec<(&'static str, i64)>,
        lhs: Quantity,
        rhs: Quantity,
    ) -> Self {
        let verdict = if lhs == rhs {
            Verdict::Equal
        } else {
            Verdict::Unequal
        };
        VerdictReport {
            id,
            kind,
            params,
            lhs,
            rhs,
            verdict,
            quotient: None,
            note: None,
        }
    }

    fn polys(id: &'static str, kind: Kind, params: Vec<(&'static str, i64)>, lhs: BiPoly, rhs: BiPoly) -> Self {
        Self::compare(id, kind, params, Quantity::Poly(lhs), Quantity::Poly(rhs))
    }

    fn rats(id: &'static str, kind: Kind, params: Vec<(&'static str, i64)>, lhs: Rational, rhs: Rational) -> Self {
        Self::compare(id, kind, params, Quantity::Rat(lhs), Quantity::Rat(rhs))
    }

    /// `num = quotient * den`: the lhs is `num`, the rhs is `den`.
    fn division(id: &'static str, params: Vec<(&'static str, i64)>, num: BiPoly, den: BiPoly) -> Self {
        let (verdict, quotient, note) = match num.div_exact(&den) {
            Ok(q) => {
                let note = q
                    .terms()
                    .any(|(_, c)| c.is_negative())
                    .then(|| "quotient has a negative coefficient".to_string());
                (Verdict::Extracted, Some(q), note)
            }
            Err(_) => (Verdict::Inexact, None, None),
        };
        VerdictReport {
            id,
            kind: Kind::Conjecture,
            params,
            lhs: Quantity::Poly(num),
            rhs: Quantity::Poly(den),
            verdict,
            quotient,
            note,
        }
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }

    /// Failed theorem instances; conjecture failures are ordinary results.
    pub fn is_theorem_failure(&self) -> bool {
        self.kind == Kind::Theorem && !self.verdict.holds()
    }

    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let mut obj = json!({
            "id": self.id,
            "kind": match self.kind { Kind::Theorem => "theorem", Kind::Conjecture => "conjecture" },
            "params": params,
            "verdict": self.verdict.as_str(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        });
        if let Some(q) = &self.quotient {
            obj["quotient"] = q.to_json();
        }
        if let Some(n) = &self.note {
            obj["note"] = Value::String(n.clone());
        }
        obj
    }

    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {:<12} {:<9}", self.id, self.params_text(), self.verdict.as_str())?;
        match (&self.verdict, &self.quotient) {
            (Verdict::Extracted, Some(q)) => write!(f, " quotient = {q}")?,
            (Verdict::Equal, _) => write!(f, " {}", self.lhs)?,
            _ => write!(f, " lhs = {} ; rhs = {}", self.lhs, self.rhs)?,
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

use SymmetryClass::{All, Diagonals, HalfTurn, Plus, QuarterTurn, VerticalFlip};

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn ratio(a: &BigInt, b: &BigInt) -> Rational {
    Rational::new(a.clone(), b.clone())
}

/// `Z_{2n}(x,1,μ) = T_n R_n`.
pub fn check_det_factor_even(data: &Data, n: usize, mu: u32) -> VerdictReport {
    let lhs = data.z(2 * n, mu).subs_y(1);
    let rhs = &*data.t(n, mu) * &*data.r(n, mu);
    VerdictReport::polys("det-factor-even", Kind::Theorem, vec![("n", n as i64), ("mu", mu as i64)], lhs, rhs)
}

/// `Z_{2n+1}(x,1,μ) = 2 T_{n+1} R_n`.
pub fn check_det_factor_odd(data: &Data, n: usize, mu: u32) -> VerdictReport {
    let lhs = data.z(2 * n + 1, mu).subs_y(1);
    let rhs = (&*data.t(n + 1, mu) * &*data.r(n, mu)).scale(&2.into());
    VerdictReport::polys("det-factor-odd", Kind::Theorem, vec![("n", n as i64), ("mu", mu as i64)], lhs, rhs)
}

/// `Z_n(1,1,μ) = ∏_{k<n} Δ_k(2μ)`.
pub fn check_z_product(data: &Data, n: usize, mu: u32) -> VerdictReport {
    let lhs = Rational::from_integer(data.z(n, mu).eval_int(1, 1));
    let arg = int(2 * mu as i64);
    let rhs = (0..n as u32).fold(Rational::one(), |acc, k| acc * delta(k, &arg));
    VerdictReport::rats("z-product", Kind::Theorem, vec![("n", n as i64), ("mu", mu as i64)], lhs, rhs)
}

/// `T_n(1,μ) = 2^{-n} ∏_{k<n} Δ_{2k}(2μ)`.
pub fn check_t_product(data: &Data, n: usize, mu: u32) -> VerdictReport {
    let lhs = Rational::from_integer(data.t(n, mu).eval_int(1, 1));
    let arg = int(2 * mu as i64);
    let prod = (0..n as u32).fold(Rational::one(), |acc, k| acc * delta(2 * k, &arg));
    let rhs = prod / Rational::from_integer(pow2(n as u32));
    VerdictReport::rats("t-product", Kind::Theorem, vec![("n", n as i64), ("mu", mu as i64)], lhs, rhs)
}

fn h_at_2(data: &Data, n: usize) -> Result<BigInt, VerifyError> {
    Ok(data.gf(HalfTurn, n)?.eval_int(2, 1))
}

/// `H_{4n}(2,1) / H_{4n-2}(2,1) = 2^{2n-1} C(4n,2n) / C(2n,n)`.
pub fn check_halfturn_x2_4n(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    if n == 0 {
        return Err(VerifyError::OutOfRange { id: "halfturn-x2-4n", n });
    }
    let lhs = ratio(&h_at_2(data, 4 * n)?, &h_at_2(data, 4 * n - 2)?);
    let c = ratio(&binom(4 * n as i64, 2 * n as i64), &binom(2 * n as i64, n as i64));
    let rhs = c * Rational::from_integer(pow2(2 * n as u32 - 1));
    Ok(VerdictReport::rats("halfturn-x2-4n", Kind::Theorem, vec![("n", n as i64)], lhs, rhs))
}

/// `H_{4n+2}(2,1) / H_{4n}(2,1) = 2^{2n+1} C(4n,2n) / C(2n,n)`.
pub fn check_halfturn_x2_4n2(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    if n == 0 {
        return Err(VerifyError::OutOfRange { id: "halfturn-x2-4n+2", n });
    }
    let lhs = ratio(&h_at_2(data, 4 * n + 2)?, &h_at_2(data, 4 * n)?);
    let c = ratio(&binom(4 * n as i64, 2 * n as i64), &binom(2 * n as i64, n as i64));
    let rhs = c * Rational::from_integer(pow2(2 * n as u32 + 1));
    Ok(VerdictReport::rats("halfturn-x2-4n+2", Kind::Theorem, vec![("n", n as i64)], lhs, rhs))
}

/// `H_{2n+1}(2,1) = 2^n H_{2n}(2,1)`.
pub fn check_halfturn_x2_odd(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    if n == 0 {
        return Err(VerifyError::OutOfRange { id: "halfturn-x2-odd", n });
    }
    let lhs = Rational::from_integer(h_at_2(data, 2 * n + 1)?);
    let rhs = Rational::from_integer(pow2(n as u32) * h_at_2(data, 2 * n)?);
    Ok(VerdictReport::rats("halfturn-x2-odd", Kind::Theorem, vec![("n", n as i64)], lhs, rhs))
}

/// `A_n(x,y) = Z_{n-1}(x,y,1)`.
pub fn check_asm_z(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    let lhs = (*data.gf(All, n)?).clone();
    let rhs = (*data.z(n - 1, 1)).clone();
    Ok(VerdictReport::polys("asm-z", Kind::Conjecture, vec![("n", n as i64)], lhs, rhs))
}

/// `F_{2n+1}(x) = T_n(x,1)`.
pub fn check_flip_t(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    let lhs = (*data.gf(VerticalFlip, 2 * n + 1)?).clone();
    let rhs = (*data.t(n, 1)).clone();
    Ok(VerdictReport::polys("flip-t", Kind::Conjecture, vec![("n", n as i64)], lhs, rhs))
}

/// `H_{2n}(x,y) = Z_n(x,y,0) Z_{n-1}(x,y,1)`.
pub fn check_halfturn_even_z(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    if n == 0 {
        return Err(VerifyError::OutOfRange { id: "halfturn-even-z", n });
    }
    let lhs = (*data.gf(HalfTurn, 2 * n)?).clone();
    let rhs = &*data.z(n, 0) * &*data.z(n - 1, 1);
    Ok(VerdictReport::polys("halfturn-even-z", Kind::Conjecture, vec![("n", n as i64)], lhs, rhs))
}

/// The factor `S_k(x)` of `H_k(x,1)` for odd `k`:
/// `H_{4n+1}(x,1) = R_n(x,0) T_n(x,1) S_{4n+1}` and
/// `H_{4n-1}(x,1) = R_{n-1}(x,1) T_n(x,0) S_{4n-1}`.
pub fn extract_s(data: &Data, k: usize) -> Result<VerdictReport, VerifyError> {
    if k % 2 == 0 {
        return Err(VerifyError::OutOfRange { id: "halfturn-odd-s", n: k });
    }
    let h = data.gf(HalfTurn, k)?.subs_y(1);
    let (id, den) = if k % 4 == 1 {
        let n = (k - 1) / 4;
        ("halfturn-odd-s", &*data.r(n, 0) * &*data.t(n, 1))
    } else {
        let n = (k + 1) / 4;
        ("halfturn-odd-s", &*data.r(n - 1, 1) * &*data.t(n, 0))
    };
    Ok(VerdictReport::division(id, vec![("k", k as i64)], h, den))
}

/// `A_n(3,1) = 3^{deg A_n(x,1)} H_n(1,1)`.
pub fn check_asm_x3(data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
    let a = data.gf(All, n)?.subs_y(1);
    let h = data.count(HalfTurn, n)?;
    let deg = a.deg_x().unwrap_or(0);
    let lhs = Rational::from_integer(a.eval_int(3, 1));
    let rhs = Rational::from_integer(num_traits::pow(BigInt::from(3), deg as usize) * h);
    Ok(VerdictReport::rats("asm-x3", Kind::Conjecture, vec![("n", n as i64)], lhs, rhs))
}

/// `Q_{4n+d}(1,y) = y H_{2n+d}(1,y) A_n(1,y)^2` for `d ∈ {0, 1, -1}`.
pub fn check_quarter_y(data: &Data, n: usize, d: i64) -> Result<VerdictReport, VerifyError> {
    let id = match d {
        0 => "quarter-y-4n",
        1 => "quarter-y-4n+1",
        _ => "quarter-y-4n-1",
    };
    if n == 0 {
        return Err(VerifyError::OutOfRange { id, n });
    }
    let q_size = (4 * n as i64 + d) as usize;
    let h_size = (2 * n as i64 + d) as usize;
    let lhs = data.gf(QuarterTurn, q_size)?.subs_x(1);
    let h = data.gf(HalfTurn, h_size)?.subs_x(1);
    let a = data.gf(All, n)?.subs_x(1);
    let rhs = (&h * &a.pow(2)).shift(0, 1);
    let mut rep = VerdictReport::polys(id, Kind::Conjecture, vec![("n", n as i64)], lhs, rhs);
    if d == 0 {
        rep.note = Some("H_{2n}(1,y,0) read as H_{2n}(1,y)".into());
    }
    Ok(rep)
}

/// Extraction of the `w` and `v` sequences from `Q_k(x,1)`.
#[derive(Debug, Clone, Default)]
pub struct WvExtraction {
    /// `w_0, w_1, ...` up to the first failure or missing size.
    pub w: Vec<BiPoly>,
    /// `(n, v_n)` pairs.
    pub v: Vec<(usize, BiPoly)>,
    pub reports: Vec<VerdictReport>,
}

/// Builds `w` bottom-up from `w_0 = 1`: `Q_{2n+1}(x,1) = x^{[n odd]} w_n w_{n+1}`,
/// then `v_n = Q_{4n}(x,1) / w_{2n}`.
pub fn extract_w_v(data: &Data) -> WvExtraction {
    let mut out = WvExtraction {
        w: vec![BiPoly::one()],
        ..Default::default()
    };
    for n in 0.. {
        let Ok(q) = data.gf(QuarterTurn, 2 * n + 1) else { break };
        let q = q.subs_y(1);
        let mut den = out.w[n].clone();
        if n % 2 == 1 {
            den = den.shift(1, 0);
        }
        let rep = VerdictReport::division("quarter-w", vec![("n", n as i64 + 1)], q, den);
        let next = rep.quotient.clone();
        out.reports.push(rep);
        match next {
            Some(w) => out.w.push(w),
            None => break,
        }
    }
    for n in 1.. {
        if 2 * n >= out.w.len() {
            break;
        }
        let Ok(q) = data.gf(QuarterTurn, 4 * n) else { break };
        let rep = VerdictReport::division("quarter-v", vec![("n", n as i64)], q.subs_y(1), out.w[2 * n].clone());
        if let Some(v) = &rep.quotient {
            out.v.push((n, v.clone()));
        }
        out.reports.push(rep);
    }
    out
}

/// `P_{4n+1} = T_n(x,1) T_n(x,0)` and `P_{4n-1} = T_{n-1}(x,1) T_n(x,0)`,
/// dispatched on the matrix size `k`.
pub fn check_plus_t(data: &Data, k: usize) -> Result<VerdictReport, VerifyError> {
    let (id, rhs) = match k % 4 {
        1 => {
            let n = (k - 1) / 4;
            ("plus-t-4n+1", &*data.t(n, 1) * &*data.t(n, 0))
        }
        3 => {
            let n = (k + 1) / 4;
            ("plus-t-4n-1", &*data.t(n - 1, 1) * &*data.t(n, 0))
        }
        _ => return Err(VerifyError::OutOfRange { id: "plus-t", n: k }),
    };
    let lhs = (*data.gf(Plus, k)?).clone();
    Ok(VerdictReport::polys(id, Kind::Conjecture, vec![("k", k as i64)], lhs, rhs))
}

/// Ratio identities between consecutive class counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioFamily {
    A,
    F,
    HOdd,
    HEven,
    Q4n,
    Q4nPlus1,
    Q4nMinus1,
    P4nPlus1,
    P4nPlus3,
    X,
}

impl RatioFamily {
    pub const EVERY: [RatioFamily; 10] = [
        RatioFamily::A,
        RatioFamily::F,
        RatioFamily::HOdd,
        RatioFamily::HEven,
        RatioFamily::Q4n,
        RatioFamily::Q4nPlus1,
        RatioFamily::Q4nMinus1,
        RatioFamily::P4nPlus1,
        RatioFamily::P4nPlus3,
        RatioFamily::X,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RatioFamily::A => "ratio-A",
            RatioFamily::F => "ratio-F",
            RatioFamily::HOdd => "ratio-H-odd",
            RatioFamily::HEven => "ratio-H-even",
            RatioFamily::Q4n => "ratio-Q-4n",
            RatioFamily::Q4nPlus1 => "ratio-Q-4n+1",
            RatioFamily::Q4nMinus1 => "ratio-Q-4n-1",
            RatioFamily::P4nPlus1 => "ratio-P-4n+1",
            RatioFamily::P4nPlus3 => "ratio-P-4n+3",
            RatioFamily::X => "ratio-X",
        }
    }

    /// The family letter used on the command line (`A`, `F`, `H`, `Q`, `P`, `X`).
    pub fn letter(self) -> char {
        self.id().as_bytes()[6] as char
    }

    /// Smallest meaningful `n`.
    pub fn first_n(self) -> usize {
        match self {
            RatioFamily::P4nPlus3 => 0,
            _ => 1,
        }
    }

    /// Compares the count ratio (or product) with its closed form at `n`.
    pub fn check(self, data: &Data, n: usize) -> Result<VerdictReport, VerifyError> {
        if n < self.first_n() {
            return Err(VerifyError::OutOfRange { id: self.id(), n });
        }
        let ni = n as i64;
        let b = |a: i64, k: i64| binom(a, k);
        let r = |a: BigInt, d: BigInt| Rational::new(a, d);
        let (lhs, rhs) = match self {
            RatioFamily::A => (
                ratio(&data.count(All, n + 1)?, &data.count(All, n)?),
                r(b(3 * ni + 1, ni), b(2 * ni, ni)),
            ),
            RatioFamily::F => (
                ratio(&data.count(VerticalFlip, 2 * n + 1)?, &data.count(VerticalFlip, 2 * n - 1)?),
                r(b(6 * ni - 2, 2 * ni), b(4 * ni - 1, 2 * ni) * 2),
            ),
            RatioFamily::HOdd => (
                ratio(&data.count(HalfTurn, 2 * n + 1)?, &data.count(HalfTurn, 2 * n)?),
                r(b(3 * ni, ni), b(2 * ni, ni)),
            ),
            RatioFamily::HEven => (
                ratio(&data.count(HalfTurn, 2 * n)?, &data.count(HalfTurn, 2 * n - 1)?),
                r(b(3 * ni, ni) * 4, b(2 * ni, ni) * 3),
            ),
            RatioFamily::Q4n | RatioFamily::Q4nPlus1 | RatioFamily::Q4nMinus1 => {
                let d: i64 = match self {
                    RatioFamily::Q4n => 0,
                    RatioFamily::Q4nPlus1 => 1,
                    _ => -1,
                };
                let q = data.count(QuarterTurn, (4 * ni + d) as usize)?;
                let h = data.count(HalfTurn, (2 * ni + d) as usize)?;
                let a = data.count(All, n)?;
                (Rational::from_integer(q), Rational::from_integer(h * &a * &a))
            }
            RatioFamily::P4nPlus1 => (
                ratio(&data.count(Plus, 4 * n + 1)?, &data.count(Plus, 4 * n - 1)?),
                r(b(6 * ni - 3, 2 * ni - 1) * (3 * ni - 1), b(4 * ni - 2, 2 * ni - 1) * (4 * ni - 1)),
            ),
            RatioFamily::P4nPlus3 => (
                ratio(&data.count(Plus, 4 * n + 3)?, &data.count(Plus, 4 * n + 1)?),
                r(b(6 * ni, 2 * ni) * (3 * ni + 1), b(4 * ni, 2 * ni) * (4 * ni + 1)),
            ),
            RatioFamily::X => (
                ratio(&data.count(Diagonals, 2 * n + 1)?, &data.count(Diagonals, 2 * n - 1)?),
                r(b(3 * ni, ni), b(2 * ni - 1, ni)),
            ),
        };
        Ok(VerdictReport::rats(self.id(), Kind::Conjecture, vec![("n", ni)], lhs, rhs))
    }
}

/// Ranges for the proved determinant identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranges {
    pub det_factor_max_n: usize,
    pub z_product_max_n: usize,
    pub t_product_max_n: usize,
    pub max_mu: u32,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges {
            det_factor_max_n: 3,
            z_product_max_n: 7,
            t_product_max_n: 5,
            max_mu: 2,
        }
    }
}

/// Every identity id, in report order.
pub const IDENTITY_IDS: &[&str] = &[
    "det-factor-even",
    "det-factor-odd",
    "z-product",
    "t-product",
    "halfturn-x2-4n",
    "halfturn-x2-4n+2",
    "halfturn-x2-odd",
    "asm-z",
    "flip-t",
    "halfturn-even-z",
    "halfturn-odd-s",
    "asm-x3",
    "quarter-y-4n",
    "quarter-y-4n+1",
    "quarter-y-4n-1",
    "quarter-w",
    "quarter-v",
    "plus-t-4n+1",
    "plus-t-4n-1",
    "ratio-A",
    "ratio-F",
    "ratio-H-odd",
    "ratio-H-even",
    "ratio-Q-4n",
    "ratio-Q-4n+1",
    "ratio-Q-4n-1",
    "ratio-P-4n+1",
    "ratio-P-4n+3",
    "ratio-X",
];

/// Selects identities by exact id or by a dash-separated prefix
/// (`ratio` selects every `ratio-*`, `quarter-y` the three `quarter-y-*`).
pub fn select_ids(pattern: &str) -> Result<Vec<&'static str>, VerifyError> {
    let hits: Vec<&'static str> = IDENTITY_IDS
        .iter()
        .copied()
        .filter(|id| *id == pattern || id.starts_with(&format!("{pattern}-")))
        .collect();
    if hits.is_empty() {
        Err(VerifyError::UnknownIdentity(pattern.to_string()))
    } else {
        Ok(hits)
    }
}

/// Runs one identity over every instance the data allows (or only the
/// instance with parameter `n`/`k` equal to `only`, when given).
///
/// Instances whose data lies beyond the cutoffs are skipped in the sweep;
/// asking for such an instance explicitly is a [`VerifyError::MissingData`].
pub fn run_identity(
    data: &Data,
    ranges: &Ranges,
    id: &str,
    only: Option<usize>,
) -> Result<Vec<VerdictReport>, VerifyError> {
    let mus = 0..=ranges.max_mu;
    let pick = |lo: usize, hi: usize| -> Vec<usize> {
        match only {
            Some(n) => vec![n],
            None => (lo..=hi).collect(),
        }
    };
    let sweep = |lo: usize, f: &dyn Fn(usize) -> Result<VerdictReport, VerifyError>| {
        let mut out = Vec::new();
        match only {
            Some(n) => out.push(f(n)?),
            None => {
                for n in lo.. {
                    match f(n) {
                        Ok(r) => out.push(r),
                        Err(VerifyError::MissingData { .. }) => break,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        Ok(out)
    };
    let cut = data.cutoffs();
    Ok(match id {
        "det-factor-even" | "det-factor-odd" => {
            let mut out = Vec::new();
            for n in pick(0, ranges.det_factor_max_n) {
                for mu in mus.clone() {
                    out.push(if id == "det-factor-even" {
                        check_det_factor_even(data, n, mu)
                    } else {
                        check_det_factor_odd(data, n, mu)
                    });
                }
            }
            out
        }
        "z-product" | "t-product" => {
            let hi = if id == "z-product" { ranges.z_product_max_n } else { ranges.t_product_max_n };
            let mut out = Vec::new();
            for n in pick(1, hi) {
                for mu in mus.clone() {
                    out.push(if id == "z-product" {
                        check_z_product(data, n, mu)
                    } else {
                        check_t_product(data, n, mu)
                    });
                }
            }
            out
        }
        "halfturn-x2-4n" => sweep(1, &|n| check_halfturn_x2_4n(data, n))?,
        "halfturn-x2-4n+2" => sweep(1, &|n| check_halfturn_x2_4n2(data, n))?,
        "halfturn-x2-odd" => sweep(1, &|n| check_halfturn_x2_odd(data, n))?,
        "asm-z" => sweep(1, &|n| check_asm_z(data, n))?,
        "flip-t" => sweep(0, &|n| check_flip_t(data, n))?,
        "halfturn-even-z" => sweep(1, &|n| check_halfturn_even_z(data, n))?,
        "halfturn-odd-s" => match only {
            Some(k) => vec![extract_s(data, k)?],
            None => (1..=cut.get(HalfTurn))
                .step_by(2)
                .map(|k| extract_s(data, k))
                .collect::<Result<_, _>>()?,
        },
        "asm-x3" => sweep(1, &|n| check_asm_x3(data, n))?,
        "quarter-y-4n" => sweep(1, &|n| check_quarter_y(data, n, 0))?,
        "quarter-y-4n+1" => sweep(1, &|n| check_quarter_y(data, n, 1))?,
        "quarter-y-4n-1" => sweep(1, &|n| check_quarter_y(data, n, -1))?,
        "quarter-w" | "quarter-v" => {
            let ex = extract_w_v(data);
            ex.reports
                .into_iter()
                .filter(|r| r.id == id)
                .filter(|r| only.is_none_or(|n| r.param("n") == Some(n as i64)))
                .collect()
        }
        "plus-t-4n+1" | "plus-t-4n-1" => {
            let first = if id == "plus-t-4n+1" { 1 } else { 3 };
            match only {
                Some(k) => vec![check_plus_t(data, k)?],
                None => (first..=cut.get(Plus))
                    .step_by(4)
                    .map(|k| check_plus_t(data, k))
                    .collect::<Result<_, _>>()?,
            }
        }
        other => {
            let fam = RatioFamily::EVERY
                .into_iter()
                .find(|f| f.id() == other)
                .ok_or_else(|| VerifyError::UnknownIdentity(other.to_string()))?;
            sweep(fam.first_n(), &|n| fam.check(data, n))?
        }
    })
}

/// Runs every identity in report order.
pub fn run_all(data: &Data, ranges: &Ranges) -> Vec<VerdictReport> {
    IDENTITY_IDS
        .iter()
        .flat_map(|id| run_identity(data, ranges, id, None).expect("sweeps skip missing data"))
        .collect()
}

/// Trial-division factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub value: BigInt,
    /// `(prime, exponent)` for primes up to the bound, ascending.
    pub factors: Vec<(BigInt, u32)>,
    /// What remains after dividing out primes up to the bound (1 if nothing).
    pub cofactor: BigInt,
    /// The cofactor is 1, or below `bound^2` and hence prime.
    pub complete: bool,
    /// Every prime factor is at most the bound.
    pub smooth: bool,
}

impl FactorReport {
    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

impl fmt::Display for FactorReport {
    /// `2^3·11·277`, with an unfactored cofactor in brackets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(if self.complete {
                self.cofactor.to_string()
            } else {
                format!("[{}]", self.cofactor)
            });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("·"))
    }
}

/// Factors `v >= 1` by trial division with primes up to `bound`.
pub fn factor_smooth(v: &BigInt, bound: u64) -> FactorReport {
    assert!(v.is_positive(), "factor_smooth needs a positive value");
    let mut rest = v.clone();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p <= bound && !rest.is_one() {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // trial division stopped at p with p^2 > rest: rest is 1 or prime
    let exhausted = !rest.is_one() && BigInt::from(p) * BigInt::from(p) > rest;
    let complete = rest.is_one() || exhausted;
    let smooth = rest.is_one() || (exhausted && rest <= BigInt::from(bound));
    if smooth && !rest.is_one() {
        factors.push((rest.clone(), 1));
        rest = BigInt::one();
    }
    FactorReport {
        value: v.clone(),
        factors,
        cofactor: rest,
        complete,
        smooth,
    }
}

/// `to_u64` for counts known to be small.
pub fn small(v: &BigInt) -> u64 {
    v.to_u64().expect("count exceeds u64")
}
