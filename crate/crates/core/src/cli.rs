//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::fock_infty::infty_matrices;
use crate::fock_r::FockR;
use crate::golden;
use crate::hecke_kl::{parabolic_kl, Sign};
use crate::laurent::Poly;
use crate::matrix::PolyMatrix;
use crate::partitions::{Partition, Weight};
use crate::ribbon::qlr;
use crate::verify::{self, VerificationReport};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "klfock", version, about = "Parabolic KL polynomials, q-Fock space canonical bases and ribbon tableaux")]
struct Cli {
    /// Worker threads for block computations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    B,
    D,
    E,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    GoldenN2,
    ThreeRoute,
    QOne,
    Inversion,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Schur expansion of the spin generating function of an n-quotient.
    Qlr {
        #[arg(long)]
        n: usize,
        /// Partitions separated by ';', e.g. "(1);(1,1);(1)".
        #[arg(long)]
        quotient: String,
    },
    /// Parabolic KL polynomial P±_{μ,λ} at level m.
    Klpoly {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// Bar matrix A_k of the rank-r Fock space, labelled by λ−ρ.
    FockBar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Canonical basis G± of the rank-r Fock space, one column per basis vector.
    /// Minus entries are printed as l(q); the coefficient itself is l(−q⁻¹).
    FockCanonical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// The B, D, E or G matrices of the stable Fock space for every size up to max-size.
    Tables {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
    },
    /// Run a verification suite; exits 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
    },
}

struct Labelled {
    size: Option<usize>,
    labels: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl Labelled {
    fn new(size: Option<usize>, labels: &[Partition], m: &PolyMatrix) -> Self {
        Labelled {
            size,
            labels: labels.iter().map(|p| p.to_string()).collect(),
            matrix: m.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }

    fn json(&self) -> Value {
        let mut v = json!({ "labels": self.labels, "matrix": self.matrix });
        if let Some(k) = self.size {
            v["size"] = json!(k);
        }
        v
    }

    fn render(&self, format: Format) -> String {
        let mut rows = vec![std::iter::once(String::new()).chain(self.labels.iter().cloned()).collect::<Vec<_>>()];
        for (l, r) in self.labels.iter().zip(&self.matrix) {
            rows.push(std::iter::once(l.clone()).chain(r.iter().map(|c| if format == Format::Text && c == "0" { ".".into() } else { c.clone() })).collect());
        }
        let mut out = String::new();
        if format == Format::Text {
            if let Some(k) = self.size {
                out.push_str(&format!("# size {}\n", k));
            }
            let widths: Vec<usize> = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
            for r in &rows {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{:>w$}", c, w = w)).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
        } else {
            for r in &rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
        }
        out
    }
}

fn emit_blocks(out: &mut dyn Write, blocks: &[Labelled], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json if blocks.len() == 1 => writeln!(out, "{}", blocks[0].json()),
        Format::Json => writeln!(out, "{}", Value::Array(blocks.iter().map(Labelled::json).collect())),
        _ => {
            for (i, b) in blocks.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", b.render(format))?;
            }
            Ok(())
        }
    }
}

fn parse_quotient(s: &str, n: usize) -> Result<Vec<Partition>> {
    let q: Vec<Partition> = s.split(';').map(str::parse).collect::<Result<_>>()?;
    if q.len() != n {
        return Err(Error::Invalid(format!("quotient has {} components, expected {}", q.len(), n)));
    }
    Ok(q)
}

/// Row order for a block: the printed n = 2 order where one exists, then decreasing lex.
fn display_order(n: usize, k: usize, labels: &[Partition]) -> Vec<Partition> {
    let mut order: Vec<Partition> = Vec::new();
    if n == 2 {
        let g = golden::load();
        for t in g.plus.iter().filter(|t| t.size == k) {
            order.extend(t.labels.iter().filter(|p| !order.contains(p)).cloned().collect::<Vec<_>>());
        }
    }
    let mut rest: Vec<Partition> = labels.iter().filter(|p| !order.contains(p)).cloned().collect();
    rest.sort_by(|a, b| b.parts().cmp(a.parts()));
    order.extend(rest);
    order
}

fn reorder(m: &PolyMatrix, from: &[Partition], to: &[Partition]) -> PolyMatrix {
    let idx: Vec<usize> = to.iter().map(|p| from.iter().position(|q| q == p).expect("same label set")).collect();
    let mut out = PolyMatrix::zero(to.len());
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate() {
            out.set(i, j, m.get(a, b).clone());
        }
    }
    out
}

fn rank_labels(labels: &[Weight]) -> Result<Vec<Partition>> {
    labels
        .iter()
        .map(|w| w.minus_rho_partition().ok_or_else(|| Error::Invalid(format!("label {} is not dominant", w))))
        .collect()
}

fn report(out: &mut dyn Write, reports: &[VerificationReport], format: Format) -> Result<i32> {
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    match format {
        Format::Json => writeln!(out, "{}", Value::Array(reports.iter().map(|r| r.to_json()).collect())).map_err(io)?,
        _ => {
            for r in reports {
                write!(out, "{}", r).map_err(io)?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Invalid(e.to_string());
    let format = cli.format;
    match cli.cmd {
        Cmd::Qlr { n, quotient } => {
            let q = parse_quotient(&quotient, n)?;
            let c = qlr(&q, n)?;
            match format {
                Format::Json => {
                    let map: serde_json::Map<String, Value> = c.iter().map(|(p, v)| (p.to_string(), json!(v.to_string()))).collect();
                    writeln!(out, "{}", Value::Object(map)).map_err(io)?;
                }
                _ => {
                    for (p, v) in &c {
                        writeln!(out, "{}\t{}", p, v).map_err(io)?;
                    }
                }
            }
        }
        Cmd::Klpoly { r, m, mu, lambda, sign } => {
            let mu: Weight = mu.parse()?;
            let lambda: Weight = lambda.parse()?;
            if mu.rank() != lambda.rank() {
                return Err(Error::RankMismatch { expected: lambda.rank(), got: mu.rank() });
            }
            if let Some(r) = r {
                if r != lambda.rank() {
                    return Err(Error::RankMismatch { expected: r, got: lambda.rank() });
                }
            }
            let v = parabolic_kl(&mu, &lambda, m, sign.into())?;
            match format {
                Format::Json => writeln!(out, "{}", json!({ "poly": v.poly.to_string(), "same_orbit": v.same_orbit })).map_err(io)?,
                _ => writeln!(out, "{}", v.poly).map_err(io)?,
            }
        }
        Cmd::FockBar { n, k, r } => {
            let mut f = FockR::new(n, r)?;
            let (labels, m) = f.bar_matrix(k);
            emit_blocks(out, &[Labelled::new(None, &rank_labels(&labels)?, &m)], format).map_err(io)?;
        }
        Cmd::FockCanonical { n, k, r, sign } => {
            let mut f = FockR::new(n, r)?;
            let (labels, m) = f.canonical_matrix(k, sign.into())?;
            // canonical_matrix stores the G⁻ coefficients row-wise; print every basis vector as a column.
            let m = if sign == SignArg::Minus { m.transpose() } else { m };
            emit_blocks(out, &[Labelled::new(None, &rank_labels(&labels)?, &m)], format).map_err(io)?;
        }
        Cmd::Tables { n, max_size, which } => {
            let blocks = rayon_map((0..=max_size).collect(), |k| {
                let mats = infty_matrices(k, n)?;
                let m = match which {
                    Which::B => &mats.b,
                    Which::D => &mats.d,
                    Which::E => &mats.e,
                    Which::G => &mats.g,
                };
                let order = display_order(n, k, &mats.labels);
                Ok(Labelled::new(Some(k), &order, &reorder(m, &mats.labels, &order)))
            })?;
            emit_blocks(out, &blocks, format).map_err(io)?;
        }
        Cmd::Verify { suite, n, max_size } => {
            let reports = match suite {
                Suite::GoldenN2 => vec![verify::golden_n2()?],
                Suite::ThreeRoute => match n {
                    Some(n) => vec![verify::three_route(n, max_size.unwrap_or(default_total(n)))?],
                    None => vec![verify::three_route(2, max_size.unwrap_or(5))?, verify::three_route(3, max_size.unwrap_or(4))?],
                },
                Suite::QOne => match n {
                    Some(n) => vec![verify::q_one(n, max_size.unwrap_or(default_total(n)))?],
                    None => vec![verify::q_one(2, max_size.unwrap_or(5))?, verify::q_one(3, max_size.unwrap_or(4))?],
                },
                Suite::Inversion => match n {
                    Some(n) => vec![verify::inversion(n, max_size.unwrap_or(if n == 2 { 8 } else { 6 }))?],
                    None => vec![verify::inversion(2, max_size.unwrap_or(8))?, verify::inversion(3, max_size.unwrap_or(6))?],
                },
            };
            return report(out, &reports, format);
        }
    }
    Ok(0)
}

fn default_total(n: usize) -> usize {
    if n <= 2 {
        5
    } else {
        4
    }
}

fn rayon_map<T: Send>(ks: Vec<usize>, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    use rayon::prelude::*;
    ks.into_par_iter().map(f).collect()
}

/// Runs the command line `args` (program name first), writing results to `out`
/// and diagnostics to `err`. Returns the exit code: 0 success, 1 mismatch, 2 usage.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // Fails only if the pool was already built, in which case its width stands.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

/// Parses `(λ ↦ poly)` JSON as written by `qlr --format json`.
pub fn parse_qlr_json(text: &str) -> Result<BTreeMap<Partition, Poly>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| Error::Invalid("expected an object".into()))?;
    obj.iter()
        .map(|(k, p)| Ok((k.parse()?, p.as_str().ok_or_else(|| Error::Invalid("expected a string".into()))?.parse()?)))
        .collect()
}
