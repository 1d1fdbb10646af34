//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The exported functions are thin wrappers over plain Rust functions that
//! return `Result<String, String>`, so the logic is tested natively.

use asmsym::asm::{enumerate, genfun, Asm, SymmetryClass};
use asmsym::detgen::{r_poly, t_poly, z_poly};
use asmsym::exact::BiPoly;
use asmsym::verify::{run_identity, select_ids, Cutoffs, Data, Ranges};
use wasm_bindgen::prelude::*;

/// Largest size the page will enumerate; the browser runs on one thread.
pub const MAX_ENUM: usize = 9;
/// Largest determinant order offered.
pub const MAX_DET: usize = 8;

fn class(name: &str) -> Result<SymmetryClass, String> {
    name.parse().map_err(|e: asmsym::asm::UnknownClass| e.to_string())
}

fn render(p: &BiPoly) -> String {
    if p.deg_y().unwrap_or(0) > 0 && p.deg_x().unwrap_or(0) > 0 {
        p.render_grouped_y()
    } else {
        p.to_string()
    }
}

/// Generating function of a determinant family (`Z`, `T`, `R`) or of a
/// symmetry class given by id or name.
pub fn generating_function(family: &str, n: usize, mu: u32) -> Result<String, String> {
    let p = match family {
        "Z" | "T" | "R" => {
            if n > MAX_DET {
                return Err(format!("determinants are limited to order {MAX_DET} here"));
            }
            if mu > 3 {
                return Err("mu is limited to 0..3 here".into());
            }
            match family {
                "Z" => z_poly(n, mu),
                "T" => t_poly(n, mu),
                _ => r_poly(n, mu),
            }
        }
        other => {
            let c = class(other)?;
            if n > MAX_ENUM {
                return Err(format!("enumeration is limited to size {MAX_ENUM} here"));
            }
            genfun(n, c).poly
        }
    };
    Ok(render(&p))
}

/// Count of the class at size `n`, then up to `limit` of its matrices.
pub fn list_matrices(class_name: &str, n: usize, limit: usize) -> Result<String, String> {
    let c = class(class_name)?;
    if n > MAX_ENUM {
        return Err(format!("enumeration is limited to size {MAX_ENUM} here"));
    }
    let mut total = 0u64;
    let mut shown: Vec<Asm> = Vec::new();
    enumerate(n, c, &mut |m: &Asm| {
        total += 1;
        if shown.len() < limit {
            shown.push(m.clone());
        }
    });
    let mut out = format!("{total} matrices of size {n} in class {c}\n");
    for m in &shown {
        let w = m.weight(c).map_err(|e| e.to_string())?;
        out.push('\n');
        out.push_str(&m.to_string());
        if c.is_weighted() {
            out.push_str(&format!("weight x^{} y^{}\n", w.0, w.1));
        }
    }
    if total as usize > shown.len() {
        out.push_str(&format!("\n... {} more\n", total as usize - shown.len()));
    }
    Ok(out)
}

/// Checks the instance `n` of an identity, using only sizes the page can
/// enumerate.
pub fn check_identity(id: &str, n: usize) -> Result<String, String> {
    let ids = select_ids(id).map_err(|e| e.to_string())?;
    let data = Data::new(Cutoffs([MAX_ENUM; 8]));
    let mut out = String::new();
    for id in ids {
        let reps = run_identity(&data, &Ranges::default(), id, Some(n)).map_err(|e| e.to_string())?;
        for r in reps {
            out.push_str(&format!("{}  {}  {}\n  lhs: {}\n  rhs: {}\n", r.id, r.params_text(), r.verdict.as_str(), r.lhs, r.rhs));
            if let Some(q) = &r.quotient {
                out.push_str(&format!("  quotient: {q}\n"));
            }
        }
    }
    Ok(out)
}

#[wasm_bindgen(js_name = generatingFunction)]
pub fn generating_function_js(family: &str, n: usize, mu: u32) -> Result<String, JsError> {
    generating_function(family, n, mu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = listMatrices)]
pub fn list_matrices_js(class_name: &str, n: usize, limit: usize) -> Result<String, JsError> {
    list_matrices(class_name, n, limit).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkIdentity)]
pub fn check_identity_js(id: &str, n: usize) -> Result<String, JsError> {
    check_identity(id, n).map_err(|e| JsError::new(&e))
}

/// Identity ids for the page's drop-down, one per line.
#[wasm_bindgen(js_name = identityIds)]
pub fn identity_ids() -> String {
    asmsym::verify::IDENTITY_IDS.join("\n")
}
