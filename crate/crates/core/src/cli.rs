//! Command-line front end: matrix files, JSON reports and the subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analytics::{count_nondegenerate, gaussian_binomial, theorem1_predicate, to_u128};
use crate::code::{is_nondegenerate, require_code, CodeParams};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::{oracle_distance, restricted_distance, Evidence, DEFAULT_ORACLE_CAP};
use crate::linalg::{Grassmannian, Matrix, Subspace};
use crate::scan::{scan_theorem1, DEFAULT_SCAN_CAP};
use crate::witness::{
    blocking_certificate, construct_witness, verify_certificate, BlockingCertificate, CertificateEntry,
    WitnessPair,
};

/// Default bound on `[n k]_q` for `count --enumerate`.
pub const DEFAULT_COUNT_CAP: u128 = 1_000_000;

/// A generator matrix on disk: a header `p e k n`, then `k` rows of `n`
/// element codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub p: u32,
    pub e: u32,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl MatrixFile {
    /// Parses the text form. Blank lines are skipped; line numbers in errors
    /// are 1-based positions in `text`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let head: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| parse_err(hl, format!("bad integer {t:?}"))))
            .collect::<Result<_>>()?;
        let [p, e, k, n] = head[..] else {
            return Err(parse_err(hl, format!("header needs 4 integers, found {}", head.len())));
        };
        let p = u32::try_from(p).map_err(|_| parse_err(hl, "p too large"))?;
        let e = u32::try_from(e).map_err(|_| parse_err(hl, "e too large"))?;
        let field = FieldSpec::new(p, e).map_err(|err| parse_err(hl, err.to_string()))?;
        let (k, n) = (k as usize, n as usize);

        let mut rows = Vec::with_capacity(k);
        for (ln, line) in lines {
            if rows.len() == k {
                return Err(parse_err(ln, format!("more than {k} rows")));
            }
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| parse_err(ln, format!("bad integer {t:?}"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(parse_err(ln, format!("expected {n} entries, found {}", row.len())));
            }
            if let Some(c) = row.iter().find(|&&c| c >= field.q()) {
                return Err(parse_err(ln, format!("code {c} outside [0, {})", field.q())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(parse_err(
                text.lines().count() + 1,
                format!("expected {k} rows, found {}", rows.len()),
            ));
        }
        Ok(MatrixFile { p, e, k, n, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_subspace(x: &Subspace) -> Self {
        let f = x.field();
        MatrixFile { p: f.p(), e: f.e(), k: x.dim(), n: x.ambient_dim(), rows: x.basis().to_codes() }
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.p, self.e, self.k, self.n);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.e)
    }

    /// The row space over `field`, which must match the header. A matrix of
    /// rank below `k` is a parse error.
    pub fn to_subspace(&self, field: &Arc<FieldSpec>) -> Result<Subspace> {
        if (field.p(), field.e()) != (self.p, self.e) {
            return Err(Error::FieldMismatch);
        }
        let g = Matrix::from_codes(field, self.n, &self.rows)?;
        let s = Subspace::from_generator(field, &g)?;
        if s.dim() != self.k {
            return Err(parse_err(1, format!("matrix has rank {} but header says k={}", s.dim(), self.k)));
        }
        Ok(s)
    }
}

/// Parameters as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub n: usize,
    pub k: usize,
}

impl ReportParams {
    fn of(x: &Subspace) -> Self {
        let f = x.field();
        ReportParams { p: f.p(), e: f.e(), q: f.q(), n: x.ambient_dim(), k: x.dim() }
    }
}

/// Machine-readable result of one subcommand. Counts are decimal strings so
/// that arbitrarily large values survive any JSON reader.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ReportParams>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_d_c: Option<usize>,
    /// Canonical generator matrices of the codes along a shortest path.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<Vec<Vec<Vec<u32>>>>,
    /// Certificate entries `(h, l, i)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Vec<[usize; 3]>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub counts: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exceptional_pairs: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub files: Vec<PathBuf>,
}

impl ReportDocument {
    fn new(command: &str) -> Self {
        ReportDocument { command: command.to_string(), ..Default::default() }
    }

    fn count(&mut self, key: &str, value: impl ToString) {
        self.counts.insert(key.to_string(), value.to_string());
    }
}

/// JSON form of a certificate together with the claims it supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub d: usize,
    pub d_c: usize,
    /// Basis of each hyperplane of `X` containing `X ∩ Y`, as element codes.
    pub hyperplanes: Vec<Vec<Vec<u32>>>,
    /// Representatives of the lines of `Y` outside `X`.
    pub lines: Vec<Vec<u32>>,
    /// `(h, l, i)`: coordinate `i` (1-based) vanishes on hyperplane `h` and line `l`.
    pub entries: Vec<[usize; 3]>,
}

impl CertificateDocument {
    pub fn from_witness(w: &WitnessPair) -> Self {
        let f = w.x.field();
        CertificateDocument {
            p: f.p(),
            e: f.e(),
            n: w.params.n,
            k: w.params.k,
            m: w.m,
            d: w.d,
            d_c: w.d_c,
            hyperplanes: w.certificate.hyperplanes.iter().map(Matrix::to_codes).collect(),
            lines: w.certificate.lines.iter().map(|v| v.iter().map(|c| c.code()).collect()).collect(),
            entries: entry_triples(&w.certificate),
        }
    }

    pub fn to_certificate(&self, field: &FieldSpec) -> Result<BlockingCertificate> {
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|rows| Matrix::from_codes(field, self.n, rows))
            .collect::<Result<_>>()?;
        let lines = self
            .lines
            .iter()
            .map(|v| v.iter().map(|&c| field.element(c)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let entries =
            self.entries.iter().map(|&[h, l, coordinate]| CertificateEntry { h, l, coordinate }).collect();
        Ok(BlockingCertificate { hyperplanes, lines, entries })
    }
}

fn entry_triples(cert: &BlockingCertificate) -> Vec<[usize; 3]> {
    cert.entries.iter().map(|e| [e.h, e.l, e.coordinate]).collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "grassmann-codes",
    version,
    about = "Grassmann and restricted distances between linear codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grassmann distance d and restricted distance d_c of two codes.
    Distance(DistanceArgs),
    /// Write a pair with d_c = d + 1 and its certificate.
    Witness(WitnessArgs),
    /// Count all and non-degenerate k-subspaces of F_q^n.
    Count(CountArgs),
    /// Compare d and d_c on every pair of non-degenerate codes.
    #[command(name = "scan-theorem1")]
    ScanTheorem1(ScanArgs),
    /// Check a certificate file against two matrix files.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    pub x: PathBuf,
    pub y: PathBuf,
    /// Cross-check d_c by breadth-first search over all non-degenerate codes.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub json: bool,
    /// Largest number of codes the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub cap: u128,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    pub q: u32,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    /// Output files are <PREFIX>_X.mat, <PREFIX>_Y.mat and <PREFIX>_cert.json.
    pub prefix: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub n: u64,
    pub k: u64,
    pub q: u32,
    /// Also count by enumerating every k-subspace.
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long)]
    pub json: bool,
    /// Largest [n k]_q that --enumerate may visit.
    #[arg(long, default_value_t = DEFAULT_COUNT_CAP)]
    pub cap: u128,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long)]
    pub json: bool,
    /// Largest number of non-degenerate codes to scan.
    #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
    pub cap: u128,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub x: PathBuf,
    pub y: PathBuf,
    pub certificate: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Process exit status for an error: parse 2, degenerate code 3, parameter
/// violation 4, cap exceeded 5, anything else 1.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Json(_) => 2,
        Error::Degenerate(_) => 3,
        Error::InvalidParams(_)
        | Error::DimensionMismatch { .. }
        | Error::FieldMismatch
        | Error::NotPrime(_)
        | Error::NotPrimePower(_)
        | Error::ZeroExponent
        | Error::FieldTooLarge { .. } => 4,
        Error::CapExceeded { .. } => 5,
        _ => 1,
    }
}

/// Runs one subcommand, writing human or JSON output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<ReportDocument> {
    let (report, text, json) = match &cli.command {
        Command::Distance(a) => with_flag(cmd_distance(a)?, a.json),
        Command::Witness(a) => with_flag(cmd_witness(a)?, a.json),
        Command::Count(a) => with_flag(cmd_count(a)?, a.json),
        Command::ScanTheorem1(a) => with_flag(cmd_scan_theorem1(a)?, a.json),
        Command::Certify(a) => with_flag(cmd_certify(a)?, a.json),
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(report)
}

fn with_flag((report, text): (ReportDocument, String), json: bool) -> (ReportDocument, String, bool) {
    (report, text, json)
}

/// Reads two matrix files over a common field and validates them as a pair
/// of codes with equal parameters.
pub fn read_pair(x: &Path, y: &Path) -> Result<(Subspace, Subspace)> {
    let fx = MatrixFile::read(x)?;
    let fy = MatrixFile::read(y)?;
    if (fx.p, fx.e, fx.k, fx.n) != (fy.p, fy.e, fy.k, fy.n) {
        return Err(Error::params(format!(
            "headers differ: {} {} {} {} vs {} {} {} {}",
            fx.p, fx.e, fx.k, fx.n, fy.p, fy.e, fy.k, fy.n
        )));
    }
    let field = Arc::new(fx.field()?);
    let sx = fx.to_subspace(&field)?;
    let sy = fy.to_subspace(&field)?;
    CodeParams::of(&sx)?;
    require_code(&sx, &x.display().to_string())?;
    require_code(&sy, &y.display().to_string())?;
    Ok((sx, sy))
}

fn cmd_distance(a: &DistanceArgs) -> Result<(ReportDocument, String)> {
    let (x, y) = read_pair(&a.x, &a.y)?;
    let r = restricted_distance(&x, &y)?;
    let mut doc = ReportDocument::new("distance");
    doc.params = Some(ReportParams::of(&x));
    doc.d = Some(r.d);
    doc.d_c = Some(r.d_c);
    doc.evidence = Some(r.evidence);
    doc.path = r.path.as_ref().map(|p| p.iter().map(|s| s.basis().to_codes()).collect());
    if r.d_c > r.d {
        let cert = blocking_certificate(&x, &y)?
            .ok_or_else(|| Error::Internal("d_c = d + 1 without a blocking certificate".into()))?;
        doc.certificate = Some(entry_triples(&cert));
    }
    let mut text = format!("d={} d_c={} evidence={}\n", r.d, r.d_c, r.evidence.tag());
    if a.oracle {
        let o = oracle_distance(&x, &y, a.cap)?;
        if o.d_c != r.d_c {
            return Err(Error::Internal(format!("oracle d_c={} disagrees with d_c={}", o.d_c, r.d_c)));
        }
        doc.oracle_d_c = Some(o.d_c);
        doc.checks.insert("oracle_agrees".into(), true);
        writeln!(text, "oracle d_c={} (agrees)", o.d_c).expect("string write");
    }
    Ok((doc, text))
}

fn cmd_witness(a: &WitnessArgs) -> Result<(ReportDocument, String)> {
    let w = construct_witness(a.q, a.k, a.m, a.n)?;
    let path_with = |suffix: &str| {
        let mut name = a.prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    let (px, py, pc) = (path_with("_X.mat"), path_with("_Y.mat"), path_with("_cert.json"));
    MatrixFile::from_subspace(&w.x).write(&px)?;
    MatrixFile::from_subspace(&w.y).write(&py)?;
    let cert = CertificateDocument::from_witness(&w);
    std::fs::write(&pc, serde_json::to_string_pretty(&cert)? + "\n")?;

    let mut doc = ReportDocument::new("witness");
    doc.params = Some(ReportParams::of(&w.x));
    doc.d = Some(w.d);
    doc.d_c = Some(w.d_c);
    doc.evidence = Some(Evidence::FirstStepsExhausted);
    doc.certificate = Some(cert.entries);
    doc.count("m", w.m);
    doc.checks.insert("certificate_valid".into(), true);
    doc.files = vec![px.clone(), py.clone(), pc.clone()];
    let text = format!(
        "d={} d_c={} m={}\nwrote {}\nwrote {}\nwrote {}\n",
        w.d,
        w.d_c,
        w.m,
        px.display(),
        py.display(),
        pc.display()
    );
    Ok((doc, text))
}

fn cmd_count(a: &CountArgs) -> Result<(ReportDocument, String)> {
    if a.k > a.n {
        return Err(Error::params(format!("k={} exceeds n={}", a.k, a.n)));
    }
    let field = FieldSpec::with_order(a.q)?;
    let (n, k, q) = (a.n, a.k, a.q as u64);
    let total = gaussian_binomial(n, k, q)?;
    let nondeg = count_nondegenerate(n, k, q)?;
    let mut doc = ReportDocument::new("count");
    doc.params = Some(ReportParams { p: field.p(), e: field.e(), q: a.q, n: n as usize, k: k as usize });
    doc.count("subspaces", &total);
    doc.count("nondegenerate", &nondeg);
    let mut text = format!("[{n} {k}]_{q} = {total}\nnon-degenerate = {nondeg}\n");
    if a.enumerate {
        let size = to_u128(&total).unwrap_or(u128::MAX);
        if size > a.cap {
            return Err(Error::CapExceeded { what: "subspace enumeration", size, cap: a.cap });
        }
        let field = Arc::new(field);
        let (mut all, mut good) = (0u64, 0u64);
        for s in Grassmannian::new(&field, n as usize, k as usize) {
            all += 1;
            good += is_nondegenerate(&s) as u64;
        }
        let matched = total == all.into() && nondeg == good.into();
        doc.count("enumerated_subspaces", all);
        doc.count("enumerated_nondegenerate", good);
        doc.checks.insert("match".into(), matched);
        writeln!(
            text,
            "enumerated = {all} subspaces, {good} non-degenerate ({})",
            if matched { "match" } else { "mismatch" }
        )
        .expect("string write");
    }
    Ok((doc, text))
}

fn cmd_scan_theorem1(a: &ScanArgs) -> Result<(ReportDocument, String)> {
    let field = Arc::new(FieldSpec::with_order(a.q)?);
    let out = scan_theorem1(&field, a.n, a.k, a.cap, a.parallel)?;
    let mut doc = ReportDocument::new("scan-theorem1");
    doc.params = Some(ReportParams { p: field.p(), e: field.e(), q: a.q, n: a.n, k: a.k });
    doc.count("codes", out.codes);
    doc.count("pairs", out.pairs);
    doc.count("exceptional", out.exceptional.len());
    for (d, c) in &out.by_distance {
        doc.count(&format!("pairs_at_d{d}"), c);
    }
    doc.checks.insert("bound_holds".into(), out.theorem1_holds);
    doc.checks.insert("duality".into(), out.duality_violations.is_empty());
    doc.checks.insert("consistent".into(), out.consistent());
    doc.exceptional_pairs = Some(out.exceptional.clone());
    if !out.consistent() {
        return Err(Error::Internal(format!(
            "scan of [{},{}]_{}: {} exceptional pairs, bound holds: {}, {} duality violations",
            a.n,
            a.k,
            a.q,
            out.exceptional.len(),
            out.theorem1_holds,
            out.duality_violations.len()
        )));
    }
    let text = format!(
        "codes={} pairs={} exceptional={} n<(q+1)^2+k-2: {} consistent: true\n",
        out.codes,
        out.pairs,
        out.exceptional.len(),
        theorem1_predicate(a.n as u64, a.k as u64, a.q as u64)
    );
    Ok((doc, text))
}

fn cmd_certify(a: &CertifyArgs) -> Result<(ReportDocument, String)> {
    let (x, y) = read_pair(&a.x, &a.y)?;
    let doc_in: CertificateDocument = serde_json::from_str(&std::fs::read_to_string(&a.certificate)?)?;
    let f = x.field();
    if (doc_in.p, doc_in.e, doc_in.n, doc_in.k) != (f.p(), f.e(), x.ambient_dim(), x.dim()) {
        return Err(Error::params("certificate parameters differ from the matrix files"));
    }
    let cert = doc_in.to_certificate(f)?;
    let check = verify_certificate(&x, &y, &cert);
    if !check.is_valid() {
        return Err(Error::CertificateRejected(check.defects.join("; ")));
    }
    let m = x.intersection_dim(&y)?;
    let d = x.dim() - m;
    if (doc_in.m, doc_in.d, doc_in.d_c) != (m, d, d + 1) {
        return Err(Error::CertificateRejected(format!(
            "claimed m={} d={} d_c={}, but the certificate proves m={m} d={d} d_c={}",
            doc_in.m,
            doc_in.d,
            doc_in.d_c,
            d + 1
        )));
    }
    let mut doc = ReportDocument::new("certify");
    doc.params = Some(ReportParams::of(&x));
    doc.d = Some(d);
    doc.d_c = Some(d + 1);
    doc.certificate = Some(doc_in.entries);
    doc.checks.insert("certificate_valid".into(), true);
    Ok((doc, format!("certificate valid: d={d} d_c={}\n", d + 1)))
}
