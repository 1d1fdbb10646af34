//! Typeset-style polynomial rendering: juxtaposed coefficients, unicode
//! exponents and y-grouped bivariate polynomials, e.g.
//! `(4+x) + (4x+x²)y + (4x+x²)y² + (4+x)y³`.

use asmsym::exact::{BiPoly, BigInt, Monomial};

fn superscript(e: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if e == 1 {
        return String::new();
    }
    e.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn power(var: char, e: u32) -> String {
    match e {
        0 => String::new(),
        _ => format!("{var}{}", superscript(e)),
    }
}

/// Terms in ascending order joined without spaces: `840+3080x+x⁶`.
fn compact(terms: &[(Monomial, BigInt)]) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let vars = format!("{}{}", power('x', m.ex), power('y', m.ey));
        let neg = *c < BigInt::from(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        let body = if vars.is_empty() {
            mag.to_string()
        } else if mag == BigInt::from(1) {
            vars
        } else {
            format!("{mag}{vars}")
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push('-'),
            (_, false) => out.push('+'),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn sorted_terms(p: &BiPoly) -> Vec<(Monomial, BigInt)> {
    let mut t: Vec<(Monomial, BigInt)> = p.terms().map(|(m, c)| (m, c.clone())).collect();
    t.sort_by_key(|(m, _)| (m.ey, m.ex));
    t
}

/// Univariate polynomials are written compactly; polynomials in both
/// variables are grouped by powers of y.
pub fn paper(p: &BiPoly) -> String {
    let dy = p.deg_y().unwrap_or(0);
    let dx = p.deg_x().unwrap_or(0);
    if dy == 0 || dx == 0 {
        return compact(&sorted_terms(p));
    }
    let mut groups = Vec::new();
    for s in 0..=dy {
        let c = p.y_coeff(s);
        if c.is_zero() {
            continue;
        }
        let inner = compact(&sorted_terms(&c));
        let yp = power('y', s);
        groups.push(match (c.num_terms(), c.is_one()) {
            (_, true) if s > 0 => yp,
            (1, _) => format!("{inner}{yp}"),
            _ => format!("({inner}){yp}"),
        });
    }
    groups.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z3 = BiPoly::from_y_rows(&[&[4i64, 1][..], &[0, 4, 1], &[0, 4, 1], &[4, 1]]);
        assert_eq!(paper(&z3), "(4+x) + (4x+x²)y + (4x+x²)y² + (4+x)y³");
        let z2 = BiPoly::from_y_rows(&[&[2i64][..], &[0, 1], &[2]]);
        assert_eq!(paper(&z2), "2 + xy + 2y²");
        let r = BiPoly::from_x_coeffs(&[840, 3080, 3038, 1224, 195, 20, 1]);
        assert_eq!(paper(&r), "840+3080x+3038x²+1224x³+195x⁴+20x⁵+x⁶");
        assert_eq!(paper(&BiPoly::from_y_coeffs(&[1, 1, 1])), "1+y+y²");
        assert_eq!(paper(&BiPoly::from_x_coeffs(&[4, -1])), "4-x");
        assert_eq!(paper(&BiPoly::zero()), "0");
        assert_eq!(paper(&BiPoly::from_x_coeffs(&[0; 0])), "0");
        assert_eq!(paper(&BiPoly::from_x_coeffs(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3])), "3x¹¹");
    }
}
