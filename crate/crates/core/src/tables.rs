//! The three result tables (class counts, ratio identities, polynomials)
//! rendered as text, CSV or JSON.
//!
//! Output depends only on the inputs: the thread count changes how the
//! work is scheduled, never what is printed.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::asm::SymmetryClass;
use crate::exact::{BiPoly, BigInt};
use crate::verify::{extract_s, extract_w_v, Data, RatioFamily, VerdictReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (use text, json or csv)")),
        }
    }
}

/// Size x class grid. `None` marks a cell beyond the cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsTable {
    pub classes: Vec<SymmetryClass>,
    pub rows: Vec<(usize, Vec<Option<BigInt>>)>,
}

impl CountsTable {
    /// Sizes where a class is empty are filled in as 0 without enumerating.
    pub fn build(data: &Data, sizes: RangeInclusive<usize>, classes: &[SymmetryClass]) -> Self {
        let rows = sizes
            .filter(|&n| n >= 1)
            .map(|n| {
                let cells = classes
                    .iter()
                    .map(|&c| {
                        if !c.exists(n) {
                            Some(BigInt::from(0))
                        } else {
                            data.count(c, n).ok()
                        }
                    })
                    .collect();
                (n, cells)
            })
            .collect();
        CountsTable {
            classes: classes.to_vec(),
            rows,
        }
    }

    pub fn get(&self, n: usize, class: SymmetryClass) -> Option<&BigInt> {
        let col = self.classes.iter().position(|&c| c == class)?;
        let (_, cells) = self.rows.iter().find(|(m, _)| *m == n)?;
        cells[col].as_ref()
    }

    pub fn missing_cells(&self) -> usize {
        self.rows.iter().flat_map(|(_, c)| c).filter(|c| c.is_none()).count()
    }

    pub fn render(&self, format: Format) -> String {
        let cell = |c: &Option<BigInt>| c.as_ref().map_or("*".to_string(), |v| v.to_string());
        match format {
            Format::Text => {
                let mut grid: Vec<Vec<String>> = vec![std::iter::once("n".to_string())
                    .chain(self.classes.iter().map(|c| c.mnemonic().to_string()))
                    .collect()];
                for (n, cells) in &self.rows {
                    grid.push(std::iter::once(n.to_string()).chain(cells.iter().map(cell)).collect());
                }
                render_grid(&grid)
            }
            Format::Csv => {
                let mut out = String::from("n");
                for c in &self.classes {
                    write!(out, ",{}", c.mnemonic()).unwrap();
                }
                out.push('\n');
                for (n, cells) in &self.rows {
                    out.push_str(&n.to_string());
                    for c in cells {
                        write!(out, ",{}", cell(c)).unwrap();
                    }
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let classes: Vec<Value> = self
                    .classes
                    .iter()
                    .map(|c| json!({"id": c.id(), "name": c.mnemonic()}))
                    .collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|(n, cells)| {
                        let cells: Vec<Value> = cells
                            .iter()
                            .map(|c| c.as_ref().map_or(Value::Null, |v| Value::String(v.to_string())))
                            .collect();
                        json!({"n": n, "counts": cells})
                    })
                    .collect();
                pretty(&json!({"classes": classes, "rows": rows}))
            }
        }
    }
}

/// Right-aligned columns separated by two spaces.
fn render_grid(grid: &[Vec<String>]) -> String {
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| grid.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in grid {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Every ratio identity over every consecutive pair of available counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioTable {
    pub reports: Vec<VerdictReport>,
}

impl RatioTable {
    pub fn build(data: &Data, families: &[RatioFamily]) -> Self {
        let mut reports = Vec::new();
        for &f in families {
            for n in f.first_n().. {
                match f.check(data, n) {
                    Ok(r) => reports.push(r),
                    Err(_) => break,
                }
            }
        }
        RatioTable { reports }
    }

    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| r.verdict.holds())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut grid = vec![vec![
                    "identity".to_string(),
                    "n".into(),
                    "counts".into(),
                    "formula".into(),
                    "verdict".into(),
                ]];
                for r in &self.reports {
                    grid.push(vec![
                        r.id.to_string(),
                        r.param("n").unwrap_or(0).to_string(),
                        r.lhs.to_string(),
                        r.rhs.to_string(),
                        r.verdict.as_str().to_string(),
                    ]);
                }
                render_grid(&grid)
            }
            Format::Csv => {
                let mut out = String::from("identity,n,counts,formula,verdict\n");
                for r in &self.reports {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        r.id,
                        r.param("n").unwrap_or(0),
                        r.lhs,
                        r.rhs,
                        r.verdict.as_str()
                    )
                    .unwrap();
                }
                out
            }
            Format::Json => pretty(&Value::Array(self.reports.iter().map(VerdictReport::to_json).collect())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEntry {
    /// Family letter: `Z`, `T`, `R`, `H`, `S`, `w`, `v`.
    pub family: &'static str,
    /// Display name such as `Z_3(x,y,0)` or `H_7(1,y)`.
    pub name: String,
    pub n: usize,
    pub mu: Option<u32>,
    pub poly: BiPoly,
}

impl PolyEntry {
    pub fn text(&self) -> String {
        if self.poly.deg_y().unwrap_or(0) > 0 && self.poly.deg_x().unwrap_or(0) > 0 {
            self.poly.render_grouped_y()
        } else {
            self.poly.to_string()
        }
    }
}

/// Determinant polynomials, enumerated half-turn polynomials and the
/// extracted `S`, `w`, `v` sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTable {
    pub entries: Vec<PolyEntry>,
    /// Entries that could not be produced within the cutoffs.
    pub warnings: Vec<String>,
}

/// Which polynomials to include.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpec {
    pub z_max: usize,
    pub t_max: usize,
    pub r_max: usize,
    pub h_sizes: Vec<usize>,
    pub s_max: usize,
    pub w_max: usize,
    pub v_max: usize,
}

impl Default for PolySpec {
    fn default() -> Self {
        PolySpec {
            z_max: 4,
            t_max: 4,
            r_max: 3,
            h_sizes: vec![1, 3, 5, 7],
            s_max: 9,
            w_max: 8,
            v_max: 4,
        }
    }
}

impl PolyTable {
    pub fn build(data: &Data, spec: &PolySpec) -> Self {
        let mut entries = Vec::new();
        let mut warnings = Vec::new();
        let mut push = |family, name: String, n, mu, poly| {
            entries.push(PolyEntry {
                family,
                name,
                n,
                mu,
                poly,
            })
        };
        for mu in 0..=1 {
            for n in 1..=spec.z_max {
                push("Z", format!("Z_{n}(x,y,{mu})"), n, Some(mu), (*data.z(n, mu)).clone());
            }
        }
        for mu in 0..=1 {
            for n in 1..=spec.t_max {
                push("T", format!("T_{n}(x,{mu})"), n, Some(mu), (*data.t(n, mu)).clone());
            }
        }
        for mu in 0..=1 {
            for n in 1..=spec.r_max {
                push("R", format!("R_{n}(x,{mu})"), n, Some(mu), (*data.r(n, mu)).clone());
            }
        }
        for &n in &spec.h_sizes {
            match data.gf(SymmetryClass::HalfTurn, n) {
                Ok(h) => push("H", format!("H_{n}(1,y)"), n, None, h.subs_x(1)),
                Err(e) => warnings.push(format!("H_{n}(1,y): {e}")),
            }
        }
        for k in (1..=spec.s_max).step_by(2) {
            match extract_s(data, k) {
                Ok(r) => match r.quotient {
                    Some(q) => push("S", format!("S_{k}(x)"), k, None, q),
                    None => warnings.push(format!("S_{k}(x): division is inexact")),
                },
                Err(e) => warnings.push(format!("S_{k}(x): {e}")),
            }
        }
        let wv = extract_w_v(data);
        for n in 0..=spec.w_max {
            match wv.w.get(n) {
                Some(w) => push("w", format!("w_{n}(x)"), n, None, w.clone()),
                None => warnings.push(format!("w_{n}(x): needs quarter-turn size {}", 2 * n - 1)),
            }
        }
        for n in 1..=spec.v_max {
            match wv.v.iter().find(|(m, _)| *m == n) {
                Some((_, v)) => push("v", format!("v_{n}(x)"), n, None, v.clone()),
                None => warnings.push(format!("v_{n}(x): needs quarter-turn size {}", 4 * n)),
            }
        }
        PolyTable { entries, warnings }
    }

    pub fn find(&self, name: &str) -> Option<&PolyEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let w = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                let mut out = String::new();
                for e in &self.entries {
                    writeln!(out, "{:<w$} = {}", e.name, e.text()).unwrap();
                }
                out
            }
            Format::Csv => {
                let mut out = String::from("name,family,n,mu,polynomial\n");
                for e in &self.entries {
                    let mu = e.mu.map_or(String::new(), |m| m.to_string());
                    writeln!(out, "{},{},{},{},\"{}\"", e.name, e.family, e.n, mu, e.poly).unwrap();
                }
                out
            }
            Format::Json => {
                let items: Vec<Value> = self
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "family": e.family,
                            "n": e.n,
                            "mu": e.mu,
                            "poly": e.poly.to_json(),
                            "text": e.poly.to_string(),
                        })
                    })
                    .collect();
                pretty(&Value::Array(items))
            }
        }
    }
}

/// All three tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub counts: CountsTable,
    pub ratios: RatioTable,
    pub polys: PolyTable,
}

impl Tables {
    pub fn build(data: &Data, sizes: RangeInclusive<usize>) -> Self {
        Tables {
            counts: CountsTable::build(data, sizes, &SymmetryClass::EVERY),
            ratios: RatioTable::build(data, &RatioFamily::EVERY),
            polys: PolyTable::build(data, &PolySpec::default()),
        }
    }

    /// Builds the tables on a dedicated pool of `threads` workers
    /// (`None` uses the global pool).
    pub fn build_with_threads(data: &Data, sizes: RangeInclusive<usize>, threads: Option<usize>) -> Self {
        #[cfg(feature = "parallel")]
        if let Some(t) = threads {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool");
            return pool.install(|| Tables::build(data, sizes));
        }
        let _ = threads;
        Tables::build(data, sizes)
    }

    /// `(file name, contents)` for each table.
    pub fn files(&self, format: Format) -> Vec<(String, String)> {
        let ext = format.extension();
        vec![
            (format!("counts.{ext}"), self.counts.render(format)),
            (format!("ratios.{ext}"), self.ratios.render(format)),
            (format!("polynomials.{ext}"), self.polys.render(format)),
        ]
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        let missing = self.counts.missing_cells();
        if missing > 0 {
            w.push(format!("{missing} count cells lie beyond the cutoffs and are shown as *"));
        }
        w.extend(self.polys.warnings.iter().cloned());
        w
    }
}
