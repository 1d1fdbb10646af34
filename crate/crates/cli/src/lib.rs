//! Command-line front end. `main` only forwards to [`run`], so the whole
//! behaviour, exit codes included, is testable in-process.

pub mod config;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use asmsym::asm::SymmetryClass;
use asmsym::exact::{BiPoly, BigInt, Rational};
use asmsym::tables::{CountsTable, Format, Tables};
use asmsym::verify::{
    extract_s, extract_w_v, factor_smooth, run_identity, select_ids, Cutoffs, Data, Ranges,
    RatioFamily, Verdict, VerdictReport, VerifyError, IDENTITY_IDS,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_THEOREM: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "asmsym", version, about = "Enumerate symmetry classes of alternating sign matrices and check the identities relating them to determinants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the matrices of each class at each size.
    Count,
    /// Print one generating function.
    ///
    /// FAMILY is Z, T, R (determinants), A, F, H, Q, P, X or a class id or
    /// name (enumeration), or S, w, v (extracted factors).
    Genfun { family: String },
    /// Check theorem and conjecture instances.
    Verify,
    /// Build the count, ratio and polynomial tables.
    Tables,
    /// Factor integers by trial division.
    Factor {
        #[arg(required = true)]
        values: Vec<String>,
    },
}

/// Flags shared by every subcommand. Each one can also be given as
/// `key = value` in a `--config` file; command-line flags win.
#[derive(Debug, Default, Clone, Args)]
pub struct Opts {
    /// Classes by id (1-8) or name, comma separated.
    #[arg(long, visible_alias = "classes", global = true, value_delimiter = ',')]
    pub class: Vec<String>,
    /// A size `N` or an inclusive range `A..B`.
    #[arg(long, visible_alias = "sizes", global = true)]
    pub size: Option<String>,
    /// Order or index of the polynomial or identity instance.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub mu: Option<u32>,
    /// Substitute a value (integer or fraction) for x.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub at_x: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub at_y: Option<String>,
    /// text, json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Largest enumerated size per class, e.g. `1=7,half-turn=11`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub cutoff: Vec<String>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory to write table files into.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Identity id or id prefix (see `verify --all --format csv` for the list).
    #[arg(long, global = true)]
    pub id: Option<String>,
    /// Run every identity.
    #[arg(long, global = true)]
    pub all: bool,
    /// Ratio family letter: A, F, H, Q, P or X.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// `default`, or one cutoff applied to every class.
    #[arg(long, global = true)]
    pub max_size: Option<String>,
    /// Largest trial divisor for `factor`.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Polynomial layout: grouped, canonical or paper.
    #[arg(long, global = true)]
    pub style: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0} (raise it with --cutoff)")]
    Missing(#[from] VerifyError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
    #[error("{0} theorem instance(s) failed")]
    Theorem(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Missing(VerifyError::MissingData { .. }) => EXIT_USAGE,
            CliError::Missing(VerifyError::UnknownIdentity(_) | VerifyError::OutOfRange { .. }) => EXIT_USAGE,
            CliError::Theorem(_) => EXIT_THEOREM,
            CliError::Io(_) | CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses arguments and runs one command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut opts = cli.opts;
    if let Some(path) = opts.config.clone() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        config::merge(&mut opts, &config::parse(&text)?)?;
    }
    let ctx = Ctx::new(&opts)?;
    match cli.command {
        Command::Count => cmd_count(&ctx, &opts, out),
        Command::Genfun { family } => cmd_genfun(&ctx, &opts, &family, out),
        Command::Verify => cmd_verify(&ctx, &opts, out),
        Command::Tables => cmd_tables(&ctx, &opts, out, err),
        Command::Factor { values } => cmd_factor(&ctx, &opts, &values, out),
    }
}

/// Resolved settings shared by the commands.
struct Ctx {
    data: Data,
    format: Format,
    threads: Option<usize>,
}

impl Ctx {
    fn new(opts: &Opts) -> Result<Ctx, CliError> {
        let format = match &opts.format {
            Some(f) => f.parse().map_err(usage)?,
            None => Format::Text,
        };
        let mut cutoffs = Cutoffs::default();
        match opts.max_size.as_deref() {
            None | Some("default") => {}
            Some(v) => {
                let n: usize = v.parse().map_err(|_| usage(format!("bad --max-size `{v}`")))?;
                cutoffs = Cutoffs([n; 8]);
            }
        }
        for item in &opts.cutoff {
            let (c, n) = item
                .split_once('=')
                .ok_or_else(|| usage(format!("bad --cutoff entry `{item}` (want CLASS=N)")))?;
            let class: SymmetryClass = c.parse().map_err(|e: asmsym::asm::UnknownClass| usage(e.to_string()))?;
            let n: usize = n.trim().parse().map_err(|_| usage(format!("bad cutoff size in `{item}`")))?;
            if n == 0 {
                return Err(usage("cutoffs must be at least 1"));
            }
            cutoffs.set(class, n);
        }
        if opts.threads == Some(0) {
            return Err(usage("--threads must be at least 1"));
        }
        Ok(Ctx {
            data: Data::new(cutoffs),
            format,
            threads: opts.threads,
        })
    }

    fn pooled<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
        match self.threads {
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                Ok(pool.install(f))
            }
            None => Ok(f()),
        }
    }
}

/// `N`, `A..B` or `A..=B` (both inclusive). `B < A` is an empty range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || usage(format!("bad size range `{s}` (want N or A..B)"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

fn parse_classes(list: &[String]) -> Result<Vec<SymmetryClass>, CliError> {
    if list.is_empty() {
        return Ok(SymmetryClass::EVERY.to_vec());
    }
    list.iter()
        .map(|c| c.parse().map_err(|e: asmsym::asm::UnknownClass| usage(e.to_string())))
        .collect()
}

fn cmd_count(ctx: &Ctx, opts: &Opts, out: &mut dyn Write) -> Result<(), CliError> {
    let sizes = parse_range(opts.size.as_deref().ok_or_else(|| usage("count needs --size or --sizes"))?)?;
    let classes = parse_classes(&opts.class)?;
    let table = ctx.pooled(|| CountsTable::build(&ctx.data, sizes, &classes))?;
    let single = table.rows.len() == 1 && classes.len() == 1;
    if single && ctx.format == Format::Text {
        let cell = &table.rows[0].1[0];
        writeln!(out, "{}", cell.as_ref().map_or("*".to_string(), |v| v.to_string()))?;
    } else {
        out.write_all(table.render(ctx.format).as_bytes())?;
    }
    Ok(())
}

fn family_class(family: &str) -> Option<SymmetryClass> {
    let by_letter = match family {
        "A" => Some(SymmetryClass::All),
        "F" => Some(SymmetryClass::VerticalFlip),
        "H" => Some(SymmetryClass::HalfTurn),
        "Q" => Some(SymmetryClass::QuarterTurn),
        "P" => Some(SymmetryClass::Plus),
        "X" => Some(SymmetryClass::Diagonals),
        _ => None,
    };
    by_letter.or_else(|| family.parse().ok())
}

fn parse_rat(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| usage(format!("bad value `{s}` (want an integer or a fraction a/b)")))
}

fn integer(r: &Rational, flag: &str) -> Result<i64, CliError> {
    if !r.is_integer() {
        return Err(usage(format!("{flag} alone must be an integer; give both --at-x and --at-y for fractions")));
    }
    r.to_integer()
        .to_string()
        .parse()
        .map_err(|_| usage(format!("{flag} is too large")))
}

fn render_poly(p: &BiPoly, style: &str) -> Result<String, CliError> {
    Ok(match style {
        "paper" => render::paper(p),
        "canonical" => p.to_string(),
        "grouped" => {
            if p.deg_y().unwrap_or(0) > 0 && p.deg_x().unwrap_or(0) > 0 {
                p.render_grouped_y()
            } else {
                p.to_string()
            }
        }
        other => return Err(usage(format!("unknown style `{other}` (use grouped, canonical or paper)"))),
    })
}

fn cmd_genfun(ctx: &Ctx, opts: &Opts, family: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let n = opts.n.ok_or_else(|| usage("genfun needs --n"))?;
    let mu = opts.mu.unwrap_or(0);
    let d = &ctx.data;
    let (poly, mu_used): (BiPoly, Option<u32>) = match family {
        "Z" => ((*d.z(n, mu)).clone(), Some(mu)),
        "T" => ((*d.t(n, mu)).clone(), Some(mu)),
        "R" => ((*d.r(n, mu)).clone(), Some(mu)),
        "S" => {
            let rep = extract_s(d, n)?;
            let q = rep
                .quotient
                .ok_or_else(|| CliError::Internal(format!("H_{n}(x,1) is not divisible by its predicted factors")))?;
            (q, None)
        }
        "w" | "v" => {
            let ex = extract_w_v(d);
            let hit = if family == "w" {
                ex.w.get(n).cloned()
            } else {
                ex.v.iter().find(|(m, _)| *m == n).map(|(_, p)| p.clone())
            };
            let size = if family == "w" { (2 * n).saturating_sub(1) } else { 4 * n };
            let p = hit.ok_or(VerifyError::MissingData {
                class: SymmetryClass::QuarterTurn,
                n: size,
                cutoff: d.cutoffs().get(SymmetryClass::QuarterTurn),
            })?;
            (p, None)
        }
        other => {
            let class = family_class(other).ok_or_else(|| usage(format!("unknown family `{other}`")))?;
            let p = ctx.pooled(|| d.gf(class, n))??;
            ((*p).clone(), None)
        }
    };
    let ax = opts.at_x.as_deref().map(parse_rat).transpose()?;
    let ay = opts.at_y.as_deref().map(parse_rat).transpose()?;
    let style = opts.style.as_deref().unwrap_or("grouped");
    let mut head = json!({"family": family, "n": n});
    if let Some(m) = mu_used {
        head["mu"] = json!(m);
    }
    if let (Some(x), Some(y)) = (&ax, &ay) {
        let v = poly.eval(x, y);
        match ctx.format {
            Format::Text => writeln!(out, "{v}")?,
            Format::Csv => writeln!(out, "value\n{v}")?,
            Format::Json => {
                head["value"] = Value::String(v.to_string());
                writeln!(out, "{}", serde_json::to_string_pretty(&head).unwrap())?;
            }
        }
        return Ok(());
    }
    let mut p = poly;
    if let Some(x) = &ax {
        p = p.subs_x(integer(x, "--at-x")?);
    }
    if let Some(y) = &ay {
        p = p.subs_y(integer(y, "--at-y")?);
    }
    match ctx.format {
        Format::Text => writeln!(out, "{}", render_poly(&p, style)?)?,
        Format::Csv => {
            writeln!(out, "ex,ey,coeff")?;
            for (m, c) in p.terms() {
                writeln!(out, "{},{},{c}", m.ex, m.ey)?;
            }
        }
        Format::Json => {
            head["poly"] = p.to_json();
            head["text"] = Value::String(p.to_string());
            writeln!(out, "{}", serde_json::to_string_pretty(&head).unwrap())?;
        }
    }
    Ok(())
}

/// Identity ids selected by `--id`, `--family` and `--all`.
fn selected_ids(opts: &Opts) -> Result<Vec<&'static str>, CliError> {
    let mut ids = match (&opts.id, opts.all) {
        (Some(id), _) => select_ids(id)?,
        (None, true) => IDENTITY_IDS.to_vec(),
        (None, false) if opts.family.is_some() => select_ids("ratio")?,
        (None, false) => return Err(usage("verify needs --all, --id or --family")),
    };
    if let Some(f) = &opts.family {
        let letter = f.trim().chars().next().filter(|_| f.trim().len() == 1);
        let letter = letter.ok_or_else(|| usage(format!("bad family `{f}`")))?;
        let fams: Vec<&str> = RatioFamily::EVERY
            .into_iter()
            .filter(|r| r.letter() == letter)
            .map(RatioFamily::id)
            .collect();
        if fams.is_empty() {
            return Err(usage(format!("no ratio family `{f}` (use A, F, H, Q, P or X)")));
        }
        ids.retain(|id| fams.contains(id));
        if ids.is_empty() {
            return Err(usage("--family only applies to ratio identities"));
        }
    }
    Ok(ids)
}

/// Theorem failures among the reports.
pub fn theorem_failures(reports: &[VerdictReport]) -> usize {
    reports.iter().filter(|r| r.is_theorem_failure()).count()
}

fn cmd_verify(ctx: &Ctx, opts: &Opts, out: &mut dyn Write) -> Result<(), CliError> {
    let ids = selected_ids(opts)?;
    let ranges = Ranges::default();
    let mut reports = Vec::new();
    ctx.pooled(|| -> Result<(), CliError> {
        for id in ids {
            reports.extend(run_identity(&ctx.data, &ranges, id, opts.n)?);
        }
        Ok(())
    })??;
    if let Some(mu) = opts.mu {
        reports.retain(|r| r.param("mu").is_none_or(|m| m == mu as i64));
    }
    match ctx.format {
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            if opts.n.is_some() {
                for r in &reports {
                    if let (asmsym::verify::Quantity::Poly(l), asmsym::verify::Quantity::Poly(rr)) = (&r.lhs, &r.rhs) {
                        writeln!(out, "  lhs = {l}\n  rhs = {rr}")?;
                        writeln!(out, "  at x = y = 1: {} and {}", l.eval_int(1, 1), rr.eval_int(1, 1))?;
                    }
                }
            }
            let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
            writeln!(
                out,
                "{} checks: {} equal, {} extracted, {} unequal, {} inexact; {} theorem failure(s)",
                reports.len(),
                count(Verdict::Equal),
                count(Verdict::Extracted),
                count(Verdict::Unequal),
                count(Verdict::Inexact),
                theorem_failures(&reports)
            )?;
        }
        Format::Json => {
            let arr: Vec<Value> = reports.iter().map(VerdictReport::to_json).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&arr).unwrap())?;
        }
        Format::Csv => {
            writeln!(out, "id,params,verdict,lhs,rhs,quotient")?;
            for r in &reports {
                let q = r.quotient.as_ref().map_or(String::new(), |q| q.to_string());
                writeln!(out, "{},{},{},\"{}\",\"{}\",\"{q}\"", r.id, r.params_text(), r.verdict.as_str(), r.lhs, r.rhs)?;
            }
        }
    }
    match theorem_failures(&reports) {
        0 => Ok(()),
        k => Err(CliError::Theorem(k)),
    }
}

fn cmd_tables(ctx: &Ctx, opts: &Opts, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let sizes = match &opts.size {
        Some(s) => parse_range(s)?,
        None => 1..=17,
    };
    let tables = Tables::build_with_threads(&ctx.data, sizes, ctx.threads);
    let formats: Vec<Format> = match (&opts.format, &opts.out) {
        (None, Some(_)) => vec![Format::Text, Format::Csv, Format::Json],
        _ => vec![ctx.format],
    };
    for w in tables.warnings() {
        writeln!(err, "warning: {w}")?;
    }
    match &opts.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for f in formats {
                for (name, body) in tables.files(f) {
                    std::fs::write(dir.join(&name), body)?;
                    writeln!(out, "wrote {}", dir.join(&name).display())?;
                }
            }
        }
        None => {
            for (k, (name, body)) in tables.files(ctx.format).into_iter().enumerate() {
                if k > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "==> {name} <==")?;
                out.write_all(body.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn cmd_factor(ctx: &Ctx, opts: &Opts, values: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    let bound = opts.bound.unwrap_or(1000);
    let mut reports = Vec::new();
    for v in values {
        let n: BigInt = v.trim().parse().map_err(|_| usage(format!("`{v}` is not an integer")))?;
        if n < BigInt::from(1) {
            return Err(usage(format!("can only factor positive integers, got {n}")));
        }
        reports.push(factor_smooth(&n, bound));
    }
    match ctx.format {
        Format::Text => {
            for r in &reports {
                let tail = if r.complete { "" } else { "  (bracketed cofactor not factored)" };
                writeln!(out, "{} = {r}{tail}", r.value)?;
            }
        }
        Format::Csv => {
            writeln!(out, "value,factorization,complete,smooth")?;
            for r in &reports {
                writeln!(out, "{},{r},{},{}", r.value, r.complete, r.smooth)?;
            }
        }
        Format::Json => {
            let arr: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "value": r.value.to_string(),
                        "factors": r.factors.iter().map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
                        "cofactor": r.cofactor.to_string(),
                        "complete": r.complete,
                        "smooth": r.smooth,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&arr).unwrap())?;
        }
    }
    Ok(())
}
