//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Set ASMSYM_EXTENDED=1 to add the slow
//! best-effort cells (half-turn size 11, shifted plane partitions of order 5).

use std::sync::OnceLock;

use asmsym::asm::{enumerate, Asm, SymmetryClass};
use asmsym::detgen::{t_poly, z_poly};
use asmsym::exact::{BiPoly, BigInt};
use asmsym::pp::{enum_sccpp, enum_shifted_pp, enum_tri_array};
use asmsym::tables::{Format, PolySpec, PolyTable, RatioTable, Tables};
use asmsym::verify::{
    factor_smooth, run_all, run_identity, Cutoffs, Data, Kind, RatioFamily, Ranges, Verdict,
};

use SymmetryClass::*;

fn extended() -> bool {
    std::env::var("ASMSYM_EXTENDED").is_ok_and(|v| v == "1")
}

fn cutoffs() -> Cutoffs {
    //          1   2   3   4   5   6   7   8
    let mut c = Cutoffs([8, 13, 10, 8, 16, 15, 13, 17]);
    if extended() {
        c.set(HalfTurn, 11);
    }
    c
}

fn data() -> &'static Data {
    static DATA: OnceLock<Data> = OnceLock::new();
    DATA.get_or_init(|| Data::new(cutoffs()))
}

fn px(c: &[i64]) -> BiPoly {
    BiPoly::from_x_coeffs(c)
}

/// Published size x class grid; `None` where no value is printed.
/// Class 5 at size 12 is printed as 6460, which contradicts the printed
/// v_3(1) w_6(1) = 140 * 49 and the printed identity Q_12 = H_6 A_3^2;
/// the grid here carries 6860 (checked against both below).
fn published_counts() -> Vec<(usize, [Option<u64>; 8])> {
    const S: Option<u64> = None;
    let rows: Vec<(usize, [Option<u64>; 8])> = vec![
        (1, [Some(1), Some(1), Some(1), Some(1), Some(1), Some(1), Some(1), Some(1)]),
        (2, [Some(2), Some(0), Some(2), Some(2), Some(0), Some(0), Some(2), Some(0)]),
        (3, [Some(7), Some(1), Some(3), Some(5), Some(1), Some(1), Some(3), Some(1)]),
        (4, [Some(42), Some(0), Some(10), Some(16), Some(2), Some(0), Some(8), Some(0)]),
        (5, [Some(429), Some(3), Some(25), Some(67), Some(3), Some(1), Some(15), Some(1)]),
        (6, [Some(7436), Some(0), Some(140), Some(368), Some(0), Some(0), Some(52), Some(0)]),
        (7, [Some(218348), Some(26), Some(588), Some(2630), Some(12), Some(2), Some(126), Some(2)]),
        (8, [S, Some(0), Some(5544), Some(24376), Some(40), Some(0), Some(568), Some(0)]),
        (9, [S, Some(646), Some(39204), S, Some(100), Some(6), Some(1782), Some(4)]),
        (10, [S, Some(0), Some(622908), S, Some(0), Some(0), Some(10436), Some(0)]),
        (11, [S, Some(45885), Some(7422987), S, Some(1225), Some(33), Some(42471), Some(13)]),
        (12, [S, Some(0), S, S, Some(6860), Some(0), Some(323144), Some(0)]),
        (13, [S, Some(9304650), S, S, Some(28812), Some(286), Some(1706562), Some(46)]),
        (14, [S, Some(0), S, S, Some(0), Some(0), S, Some(0)]),
        (15, [S, S, S, S, Some(1037232), Some(4420), S, Some(248)]),
        (16, [S, Some(0), S, S, Some(9779616), Some(0), S, Some(0)]),
        (17, [S, S, S, S, S, Some(109820), S, Some(1516)]),
    ];
    rows
}

/// Required cells: (class, largest size that must match).
const REQUIRED: [(SymmetryClass, usize); 8] = [
    (All, 7),
    (VerticalFlip, 13),
    (HalfTurn, 10),
    (Transpose, 8),
    (QuarterTurn, 13),
    (Plus, 13),
    (Diagonals, 12),
    (Full, 13),
];

fn criterion_1() -> Result<String, String> {
    let d = data();
    let mut checked = 0;
    for (n, row) in published_counts() {
        for (col, want) in row.iter().enumerate() {
            let class = SymmetryClass::EVERY[col];
            let Some(want) = *want else { continue };
            let required = REQUIRED.iter().any(|&(c, max)| c == class && n <= max);
            if !d.available(class, n) {
                if required {
                    return Err(format!("class {class} size {n} is required but beyond the cutoff"));
                }
                continue;
            }
            let got = d.count(class, n).map_err(|e| e.to_string())?;
            if got != BigInt::from(want) {
                return Err(format!("class {class} size {n}: got {got}, want {want}"));
            }
            checked += 1;
        }
    }
    // the corrected quarter-turn cell agrees with the published polynomials
    let v3w6 = px(&[8, 52, 60, 20]).eval_int(1, 1) * px(&[15, 25, 8, 1]).eval_int(1, 1);
    let h6a3 = d.count(HalfTurn, 6).unwrap() * d.count(All, 3).unwrap().pow(2);
    if v3w6 != BigInt::from(6860) || h6a3 != v3w6 {
        return Err("quarter-turn size 12 cross-check failed".into());
    }
    let f = factor_smooth(&d.count(Transpose, 8).unwrap(), 1000);
    if f.to_string() != "2^3·11·277" {
        return Err(format!("transpose size 8 factors as {f}"));
    }
    Ok(format!("{checked} cells"))
}

fn expect_poly(t: &PolyTable, name: &str, want: &BiPoly) -> Result<(), String> {
    let got = &t.find(name).ok_or_else(|| format!("{name} missing"))?.poly;
    if got.to_string() != want.to_string() {
        return Err(format!("{name}: got {got}, want {want}"));
    }
    Ok(())
}

fn criterion_2() -> Result<String, String> {
    let spec = PolySpec {
        v_max: 4,
        ..PolySpec::default()
    };
    let t = PolyTable::build(data(), &spec);
    let n = std::cell::Cell::new(0);
    let check = |name: &str, want: BiPoly| -> Result<(), String> {
        n.set(n.get() + 1);
        expect_poly(&t, name, &want)
    };
    let yr = |rows: &[&[i64]]| BiPoly::from_y_rows(rows);
    check("Z_1(x,y,0)", yr(&[&[1], &[1]]))?;
    check("Z_2(x,y,0)", yr(&[&[2], &[0, 1], &[2]]))?;
    check("Z_3(x,y,0)", yr(&[&[4, 1], &[0, 4, 1], &[0, 4, 1], &[4, 1]]))?;
    check("Z_1(x,y,1)", yr(&[&[1], &[1]]))?;
    check("Z_2(x,y,1)", yr(&[&[2], &[2, 1], &[2]]))?;
    check("Z_3(x,y,1)", yr(&[&[6, 1], &[6, 7, 1], &[6, 7, 1], &[6, 1]]))?;
    // Z_4 is printed only up to its y^2 coefficient
    let shown: [(u32, &[&[i64]]); 2] = [
        (0, &[&[8, 10, 2], &[0, 12, 15, 3], &[0, 12, 15, 4, 1]]),
        (1, &[&[24, 16, 2], &[24, 52, 26, 3], &[24, 64, 38, 8, 1]]),
    ];
    for (mu, rows) in shown {
        let name = format!("Z_4(x,y,{mu})");
        let z4 = &t.find(&name).ok_or("Z_4 missing")?.poly;
        for (s, c) in rows.iter().enumerate() {
            n.set(n.get() + 1);
            if z4.y_coeff(s as u32) != px(c) {
                return Err(format!("{name}: y^{s} coefficient is {}", z4.y_coeff(s as u32)));
            }
        }
    }
    let tables: &[(&str, &[i64])] = &[
        ("T_1(x,0)", &[1]),
        ("T_2(x,0)", &[1, 1]),
        ("T_3(x,0)", &[1, 5, 4, 1]),
        ("T_4(x,0)", &[1, 14, 49, 62, 34, 9, 1]),
        ("T_1(x,1)", &[1]),
        ("T_2(x,1)", &[2, 1]),
        ("T_3(x,1)", &[6, 13, 6, 1]),
        ("T_4(x,1)", &[24, 136, 234, 176, 63, 12, 1]),
        ("R_1(x,0)", &[4, 1]),
        ("R_2(x,0)", &[16, 40, 9, 1]),
        ("R_3(x,0)", &[64, 560, 1036, 629, 125, 16, 1]),
        ("R_1(x,1)", &[6, 1]),
        ("R_2(x,1)", &[60, 70, 12, 1]),
        ("R_3(x,1)", &[840, 3080, 3038, 1224, 195, 20, 1]),
        ("S_1(x)", &[1]),
        ("S_3(x)", &[2, 1]),
        ("S_5(x)", &[2, 3]),
        ("S_7(x)", &[8, 26, 7, 1]),
        ("S_9(x)", &[12, 74, 78, 31, 3]),
        ("w_0(x)", &[1]),
        ("w_1(x)", &[1]),
        ("w_2(x)", &[1]),
        ("w_3(x)", &[2, 1]),
        ("w_4(x)", &[3, 1]),
        ("w_5(x)", &[4, 14, 6, 1]),
        ("w_6(x)", &[15, 25, 8, 1]),
        ("w_7(x)", &[8, 88, 222, 192, 65, 12, 1]),
        ("w_8(x)", &[105, 490, 665, 386, 102, 15, 1]),
        ("v_1(x)", &[2]),
        ("v_2(x)", &[4, 6]),
        ("v_3(x)", &[8, 52, 60, 20]),
        ("v_4(x)", &[16, 272, 1212, 2000, 1470, 504, 70]),
    ];
    for (name, c) in tables {
        check(name, px(c))?;
    }
    let hs: &[(&str, &[i64])] = &[
        ("H_1(1,y)", &[1]),
        ("H_3(1,y)", &[1, 1, 1]),
        ("H_5(1,y)", &[3, 6, 7, 6, 3]),
        ("H_7(1,y)", &[25, 75, 123, 142, 123, 75, 25]),
    ];
    for (name, c) in hs {
        check(name, BiPoly::from_y_coeffs(c))?;
    }
    Ok(format!("{} polynomials or coefficient rows", n.get()))
}

fn all_equal(id: &str, only: Option<usize>) -> Result<usize, String> {
    let reps = run_identity(data(), &Ranges::default(), id, only).map_err(|e| e.to_string())?;
    for r in &reps {
        if !r.verdict.holds() {
            return Err(format!("{r}"));
        }
    }
    Ok(reps.len())
}

fn params_cover(id: &str, key: &str, want: impl IntoIterator<Item = i64>) -> Result<(), String> {
    let reps = run_identity(data(), &Ranges::default(), id, None).map_err(|e| e.to_string())?;
    for w in want {
        if !reps.iter().any(|r| r.param(key) == Some(w) && r.verdict.holds()) {
            return Err(format!("{id}: no passing instance with {key}={w}"));
        }
    }
    Ok(())
}

fn criterion_3() -> Result<String, String> {
    let a = all_equal("det-factor-even", None)?;
    let b = all_equal("det-factor-odd", None)?;
    for id in ["det-factor-even", "det-factor-odd"] {
        params_cover(id, "n", 0..=3)?;
        params_cover(id, "mu", 0..=2)?;
    }
    Ok(format!("{} instances", a + b))
}

fn criterion_4() -> Result<String, String> {
    let a = all_equal("z-product", None)?;
    let b = all_equal("t-product", None)?;
    params_cover("z-product", "n", 1..=7)?;
    params_cover("t-product", "n", 1..=5)?;
    for id in ["z-product", "t-product"] {
        params_cover(id, "mu", 0..=2)?;
    }
    Ok(format!("{} instances", a + b))
}

fn criterion_5() -> Result<String, String> {
    let mut n = 0;
    for id in ["halfturn-x2-4n", "halfturn-x2-4n+2", "halfturn-x2-odd"] {
        n += all_equal(id, None)?;
    }
    params_cover("halfturn-x2-4n", "n", 1..=2)?;
    params_cover("halfturn-x2-4n+2", "n", 1..=2)?;
    params_cover("halfturn-x2-odd", "n", 1..=4)?;
    Ok(format!("{n} instances, through H_9(2,1)"))
}

fn criterion_6() -> Result<String, String> {
    let mut n = 0;
    n += all_equal("asm-z", None)?;
    params_cover("asm-z", "n", 1..=7)?;
    n += all_equal("flip-t", None)?;
    params_cover("flip-t", "n", 0..=3)?;
    n += all_equal("halfturn-even-z", None)?;
    params_cover("halfturn-even-z", "n", 1..=4)?;
    n += all_equal("halfturn-odd-s", None)?;
    params_cover("halfturn-odd-s", "k", [1, 3, 5, 7, 9])?;
    n += all_equal("asm-x3", None)?;
    params_cover("asm-x3", "n", 1..=6)?;
    for id in ["quarter-y-4n", "quarter-y-4n+1", "quarter-y-4n-1"] {
        n += all_equal(id, None)?;
        params_cover(id, "n", 1..=3)?;
    }
    n += all_equal("quarter-w", None)?;
    params_cover("quarter-w", "n", 1..=8)?;
    n += all_equal("quarter-v", None)?;
    params_cover("quarter-v", "n", 1..=3)?;
    n += all_equal("plus-t-4n+1", None)?;
    n += all_equal("plus-t-4n-1", None)?;
    params_cover("plus-t-4n+1", "k", [5, 9, 13])?;
    params_cover("plus-t-4n-1", "k", [3, 7, 11])?;
    let ratios = RatioTable::build(data(), &RatioFamily::EVERY);
    if let Some(bad) = ratios.reports.iter().find(|r| !r.verdict.holds()) {
        return Err(format!("{bad}"));
    }
    for f in RatioFamily::EVERY {
        if !ratios.reports.iter().any(|r| r.id == f.id()) {
            return Err(format!("{} has no instance", f.id()));
        }
    }
    n += ratios.reports.len();
    // the whole suite, as the command-line run reports it
    let all = run_all(data(), &Ranges::default());
    if let Some(bad) = all.iter().find(|r| !r.verdict.holds()) {
        return Err(format!("{bad}"));
    }
    let theorems = all.iter().filter(|r| r.kind == Kind::Theorem).count();
    Ok(format!("{n} conjecture instances; full suite {} checks ({theorems} theorem)", all.len()))
}

fn criterion_7() -> Result<String, String> {
    let pp_max = if extended() { 5 } else { 4 };
    for mu in 0..=2 {
        for n in 0..=pp_max {
            if enum_shifted_pp(n, mu) != z_poly(n, mu) {
                return Err(format!("shifted plane partitions differ from Z_{n}(mu={mu})"));
            }
        }
        for n in 1..=5 {
            if enum_tri_array(n, mu) != t_poly(n, mu) {
                return Err(format!("triangular arrays differ from T_{n}(mu={mu})"));
            }
        }
    }
    let w = run_identity(data(), &Ranges::default(), "quarter-w", None).map_err(|e| e.to_string())?;
    let w_at = |k: i64| -> BiPoly {
        w.iter()
            .find(|r| r.param("n") == Some(k))
            .and_then(|r| r.quotient.clone())
            .expect("w extracted")
    };
    for m in 1..=3usize {
        let want = w_at(2 * m as i64).shift(m as u32, 0);
        if enum_sccpp(m) != want {
            return Err(format!("self-complementary family at m={m}: {}", enum_sccpp(m)));
        }
    }
    for n in 1..=5 {
        let mut all = Vec::new();
        enumerate(n, All, &mut |m: &Asm| all.push(m.clone()));
        for class in SymmetryClass::EVERY {
            let mut want: Vec<Asm> = all.iter().filter(|m| m.is_in_class(class)).cloned().collect();
            let mut got = Vec::new();
            enumerate(n, class, &mut |m: &Asm| got.push(m.clone()));
            want.sort();
            got.sort();
            if got != want {
                return Err(format!("restricted enumeration differs at n={n}, class {class}"));
            }
        }
    }
    let d = data();
    for mu in 0..=2 {
        for n in 0..=7 {
            if !d.z(n, mu).is_palindromic_in_y() {
                return Err(format!("Z_{n}(mu={mu}) is not palindromic in y"));
            }
        }
    }
    let mut qs = 0;
    // Q_1 = 1: the single cell is its own corner, so no y factor appears
    for n in 2..=d.cutoffs().get(QuarterTurn) {
        let q = d.gf(QuarterTurn, n).map_err(|e| e.to_string())?;
        if !q.divisible_by_y() {
            return Err(format!("Q_{n} is not divisible by y"));
        }
        qs += 1;
    }
    Ok(format!("plane partitions n<={pp_max}, SCC m<=3, {qs} quarter-turn polynomials"))
}

fn criterion_8() -> Result<String, String> {
    let a = Tables::build_with_threads(&Data::default(), 1..=17, Some(1));
    let b = Tables::build_with_threads(&Data::default(), 1..=17, Some(4));
    for f in [Format::Text, Format::Csv, Format::Json] {
        if a.files(f) != b.files(f) {
            return Err(format!("{f:?} output differs between thread counts"));
        }
    }
    Ok("text, csv and json identical for 1 and 4 threads".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("class counts", criterion_1),
        ("polynomial tables", criterion_2),
        ("determinant factorization", criterion_3),
        ("product formulas", criterion_4),
        ("half-turn counts at x=2", criterion_5),
        ("conjectures and ratios", criterion_6),
        ("cross-oracle properties", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if extended() {
        let h11 = data().count(HalfTurn, 11).unwrap();
        println!("best-effort: half-turn size 11 = {h11}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn verdicts_are_never_missing() {
    // every report in the default suite carries a usable verdict
    let reps = run_all(&Data::new(Cutoffs([5, 7, 6, 5, 9, 7, 7, 9])), &Ranges::default());
    assert!(reps.iter().all(|r| r.verdict != Verdict::Inexact));
}
