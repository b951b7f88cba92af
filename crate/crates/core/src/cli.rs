//! The `agcodes` command line.
//!
//! Exit codes: 0 success, 1 parse or I/O failure, 2 a family precondition
//! (window, divisibility, membership) is violated, 3 the residues are not
//! co-aligned, 4 the requested property does not hold.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{budget_from_env, certify, quantum_params, Orthogonality};
use crate::claims::{claims_for, Achieved, Claim};
use crate::descriptor::{CodeDescriptor, FieldInfo};
use crate::error::Error;
use crate::families::{Family, LinearCode, FAMILY_IDS};
use crate::galois::{prime_power, Elem};
use crate::matfq::{GramKind, MatrixFq};
use crate::rrbasis::riemann_roch_dim;
use crate::twist::TwistMode;

#[derive(Debug, Parser)]
#[command(name = "agcodes", version, about = "Self-orthogonal AG codes on y^q + y = x^m")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family instance, write its matrix and print its descriptor.
    Construct(ConstructArgs),
    /// Re-certify a matrix file or a descriptor.
    Verify(VerifyArgs),
    /// Parameter table over a range of q.
    Table(TableArgs),
    /// Quantum parameters from the Hermitian construction.
    Quantum(QuantumArgs),
    /// Maintain a JSONL catalog of descriptors.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

/// Family selection shared by construct, quantum and catalog.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FAMILY_IDS))]
    pub family: Option<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Subgroup order (herm-mult, eucl-unity).
    #[arg(long)]
    pub s: Option<u32>,
    /// Number of cosets (herm-mult).
    #[arg(long)]
    pub lambda: Option<u32>,
    /// Order of the removed roots of unity (eucl-unity-comp).
    #[arg(long)]
    pub k: Option<u32>,
    /// Dimension over GF(p) of the x-subspace (eucl-subspace).
    #[arg(long)]
    pub dim: Option<u32>,
    /// Subfield degree s of GF(p^s) (coset families).
    #[arg(long)]
    pub sdeg: Option<u32>,
    /// Span length of H (coset families).
    #[arg(long)]
    pub l: Option<u32>,
    /// Coset shifts A, as element encodings (coset families).
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u32>,
    /// Coset multiplier α, as an element encoding (coset families).
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Characteristic (grs, egrs).
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree (grs, egrs).
    #[arg(long)]
    pub e: Option<u32>,
    /// Evaluation points (grs, egrs); all of the field when omitted.
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<u32>,
}

impl FamilyArgs {
    pub fn is_set(&self) -> bool {
        self.family.is_some()
    }

    pub fn to_family(&self) -> Result<Family, CliError> {
        let id = self.family.as_deref().ok_or_else(|| CliError::usage("--family is required"))?;
        let need = |v: Option<u32>, name: &str| v.ok_or_else(|| CliError::usage(format!("{id} needs --{name}")));
        let r = || self.r.ok_or_else(|| CliError::usage(format!("{id} needs --r")));
        let elems = |v: &[u32]| v.iter().map(|&a| Elem(a)).collect::<Vec<_>>();
        let family = match id {
            "herm-as" => Family::HermAs { q: need(self.q, "q")?, m: need(self.m, "m")?, r: r()? },
            "eucl-as" => Family::EuclAs { q: need(self.q, "q")?, m: need(self.m, "m")?, r: r()? },
            "herm-mult" => Family::HermMult {
                q: need(self.q, "q")?,
                s: need(self.s, "s")?,
                lambda: need(self.lambda, "lambda")?,
                r: r()?,
            },
            "herm-add" => Family::HermAdd { q: need(self.q, "q")?, r: r()? },
            "eucl-unity" => Family::EuclUnity { q: need(self.q, "q")?, s: need(self.s, "s")?, r: r()? },
            "eucl-unity-comp" => Family::EuclUnityComp { q: need(self.q, "q")?, k: need(self.k, "k")?, r: r()? },
            "eucl-subspace" => Family::EuclSubspace { q: need(self.q, "q")?, dim: need(self.dim, "dim")?, r: r()? },
            "coset-egrs" | "coset-grs" => {
                if self.a.is_empty() {
                    return Err(CliError::usage(format!("{id} needs --a")));
                }
                let (q, sdeg, l, alpha) = (
                    need(self.q, "q")?,
                    need(self.sdeg, "sdeg")?,
                    need(self.l, "l")?,
                    Elem(need(self.alpha, "alpha")?),
                );
                let a = elems(&self.a);
                if id == "coset-egrs" {
                    Family::CosetEgrs { q, sdeg, l, a, alpha, r: r()? }
                } else {
                    Family::CosetGrs { q, sdeg, l, a, alpha, r: r()? }
                }
            }
            "grs" | "egrs" => {
                let (p, e) = (need(self.p, "p")?, self.e.unwrap_or(1));
                let points = (!self.points.is_empty()).then(|| elems(&self.points));
                if id == "grs" {
                    Family::Grs { p, e, points }
                } else {
                    Family::Egrs { p, e, points }
                }
            }
            other => return Err(CliError::usage(format!("unknown family {other}"))),
        };
        Ok(family)
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Where to write the generator matrix.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Distance work budget (defaults to AGCODES_BUDGET, then 2^24).
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    None,
    EuclideanSo,
    HermitianSo,
    EuclideanSelfDual,
    HermitianSelfDual,
    #[value(alias = "almost-self-dual")]
    EuclideanAlmostSelfDual,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix file in the text format.
    pub matrix: Option<PathBuf>,
    /// Descriptor to re-certify against its matrix file.
    #[arg(long, conflicts_with = "matrix")]
    pub descriptor: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "none")]
    pub mode: VerifyMode,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Designed distance to report when the search budget is exceeded.
    #[arg(long)]
    pub designed: Option<u64>,
    /// Designed distance of the dual, used for quantum parameters.
    #[arg(long)]
    pub dual_designed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FAMILY_IDS))]
    pub family: String,
    /// `8`, `2,3,4`, `2..9` or `2..=8`; for grs/egrs the field order.
    #[arg(long)]
    pub q_range: String,
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<u64>,
    #[arg(long)]
    pub sdeg: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    /// Parameter arithmetic only; nothing is constructed.
    #[arg(long)]
    pub arith_only: bool,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct QuantumArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Matrix file of a Hermitian self-orthogonal code.
    #[arg(long, conflicts_with = "family")]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub dual_designed: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Print the full record as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Add descriptor files, or a freshly built family instance.
    Add {
        #[arg(long)]
        store: PathBuf,
        descriptors: Vec<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the catalog as a table.
    List {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    fn property(message: impl Into<String>) -> Self {
        CliError { code: 4, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_precondition() => 2,
            Error::MixedClass { .. } => 3,
            Error::NotHermitianSelfOrthogonal => 4,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let mut out = std::io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Construct(a) => construct(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Table(a) => table(a, out),
        Command::Quantum(a) => quantum(a, out),
        Command::Catalog(c) => catalog(c, out),
    }
}

fn budget(flag: Option<u64>) -> CliResult<u64> {
    match flag {
        Some(0) => Err(CliError::usage("--budget must be positive")),
        Some(b) => Ok(b),
        None => Ok(budget_from_env()?),
    }
}

fn read_matrix(path: &Path) -> CliResult<MatrixFq> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    MatrixFq::from_text(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> CliResult {
    let family = args.family.to_family()?;
    let budget = budget(args.budget)?;
    let code = family.build()?;
    let matrix = match &args.out {
        Some(path) => {
            fs::write(path, code.generator.to_text())?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let d = CodeDescriptor::describe(&code, budget, matrix)?;
    writeln!(out, "{}", d.to_json())?;
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult {
    let flag_budget = budget(args.budget)?;
    let (code, stored, matrix_ref) = match (&args.matrix, &args.descriptor) {
        (Some(path), None) => {
            let mut code = LinearCode::from_matrix(read_matrix(path)?);
            code.designed_distance = args.designed;
            code.dual_designed_distance = args.dual_designed;
            (code, None, path.display().to_string())
        }
        (None, Some(dpath)) => {
            let text = fs::read_to_string(dpath)?;
            let stored = CodeDescriptor::from_json(&text).map_err(|e| CliError::usage(e.to_string()))?;
            let mref = stored
                .matrix
                .clone()
                .ok_or_else(|| CliError::usage("descriptor has no matrix file"))?;
            let mpath = resolve_beside(dpath, &mref);
            let generator = read_matrix(&mpath)?;
            let code = LinearCode {
                k: generator.rank(),
                designed_distance: stored.designed_distance,
                dual_designed_distance: stored.dual_designed_distance,
                provenance: stored.provenance.clone(),
                generator,
            };
            (code, Some(stored), mref)
        }
        _ => return Err(CliError::usage("give a matrix file or --descriptor")),
    };
    let budget = stored.as_ref().map_or(flag_budget, |s| args.budget.unwrap_or(s.budget));
    let fresh = CodeDescriptor::describe(&code, budget, Some(matrix_ref))?;
    writeln!(out, "{}", fresh.to_json())?;
    if let Some(stored) = stored {
        if stored.field != fresh.field {
            return Err(CliError::property("matrix field differs from the descriptor's field"));
        }
        if stored.certificate != fresh.certificate {
            return Err(CliError::property(format!(
                "certificate differs from the descriptor: stored {}, recomputed {}",
                serde_json::to_string(&stored.certificate).unwrap_or_default(),
                serde_json::to_string(&fresh.certificate).unwrap_or_default()
            )));
        }
    }
    check_mode(&code.generator, args.mode)
}

fn resolve_beside(descriptor: &Path, matrix: &str) -> PathBuf {
    let p = PathBuf::from(matrix);
    if p.is_absolute() || p.exists() {
        return p;
    }
    descriptor.parent().map_or(p.clone(), |dir| dir.join(&p))
}

/// First pair of rows with a nonzero inner product.
fn first_violation(g: &MatrixFq, kind: GramKind) -> CliResult<Option<(usize, usize)>> {
    let gram = g.gram(kind)?;
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            if !gram.get(i, j).is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

fn check_mode(g: &MatrixFq, mode: VerifyMode) -> CliResult {
    let kind = match mode {
        VerifyMode::None => return Ok(()),
        VerifyMode::HermitianSo | VerifyMode::HermitianSelfDual => {
            if g.ctx().degree() % 2 != 0 {
                return Err(CliError::property("hermitian form needs a field GF(q^2)"));
            }
            GramKind::Hermitian
        }
        _ => GramKind::Euclidean,
    };
    let label = mode.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    if let Some((i, j)) = first_violation(g, kind)? {
        let v = g.gram(kind)?.get(i, j);
        return Err(CliError::property(format!(
            "{label} fails: rows {i} and {j} have inner product {v}"
        )));
    }
    let (n, k) = (g.cols(), g.rank());
    let dim_ok = match mode {
        VerifyMode::EuclideanSelfDual | VerifyMode::HermitianSelfDual => 2 * k == n,
        VerifyMode::EuclideanAlmostSelfDual => n % 2 == 1 && 2 * k + 1 == n,
        _ => true,
    };
    if !dim_ok {
        return Err(CliError::property(format!("{label} fails: k = {k} for n = {n}")));
    }
    Ok(())
}

fn quantum(args: QuantumArgs, out: &mut dyn Write) -> CliResult {
    let budget = budget(args.budget)?;
    let code = match &args.matrix {
        Some(path) => {
            let mut code = LinearCode::from_matrix(read_matrix(path)?);
            code.dual_designed_distance = args.dual_designed;
            code
        }
        None => {
            let mut code = args.family.to_family()?.build()?;
            if args.dual_designed.is_some() {
                code.dual_designed_distance = args.dual_designed;
            }
            code
        }
    };
    let rec = quantum_params(&code, budget)?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("record serializes"))?;
    } else {
        writeln!(out, "{rec}")?;
    }
    Ok(())
}

fn parse_q_range(s: &str) -> CliResult<Vec<u32>> {
    let bad = || CliError::usage(format!("bad --q-range {s:?}"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..=") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if let Some((a, b)) = s.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Family instances for one q, before the r sweep.
fn table_candidates(a: &TableArgs, q: u32) -> Vec<Family> {
    let or = |given: &[u32], default: Vec<u32>| if given.is_empty() { default } else { given.to_vec() };
    let q64 = q as u64;
    let d32 = |n: u64| divisors(n).into_iter().map(|d| d as u32).collect::<Vec<_>>();
    match a.family.as_str() {
        "herm-as" | "eucl-as" => or(&a.m, d32(q64 + 1).into_iter().filter(|&m| m > 1).collect())
            .into_iter()
            .map(|m| {
                if a.family == "herm-as" {
                    Family::HermAs { q, m, r: 0 }
                } else {
                    Family::EuclAs { q, m, r: 0 }
                }
            })
            .collect(),
        "herm-mult" => {
            let mut out = Vec::new();
            for s in or(&a.s, (1..q).collect()) {
                let max = (q - 1) / num_integer::gcd(q - 1, s).max(1);
                for lambda in or(&a.lambda, vec![max]) {
                    out.push(Family::HermMult { q, s, lambda, r: 0 });
                }
            }
            out
        }
        "herm-add" => vec![Family::HermAdd { q, r: 0 }],
        "eucl-unity" => or(&a.s, d32(q64 * q64 - 1).into_iter().filter(|&s| s > 1).collect())
            .into_iter()
            .map(|s| Family::EuclUnity { q, s, r: 0 })
            .collect(),
        "eucl-unity-comp" => or(&a.k, d32(q64 - 1).into_iter().map(|d| d * (q + 1)).collect())
            .into_iter()
            .map(|k| Family::EuclUnityComp { q, k, r: 0 })
            .collect(),
        "eucl-subspace" => {
            let e = prime_power(q64).map(|(_, e)| e).unwrap_or(1);
            or(&a.dim, (1..=2 * e).collect())
                .into_iter()
                .map(|dim| Family::EuclSubspace { q, dim, r: 0 })
                .collect()
        }
        "coset-egrs" | "coset-grs" => {
            let (Some(alpha), false) = (a.alpha, a.a.is_empty()) else {
                return Vec::new();
            };
            let (sdeg, l) = (a.sdeg.unwrap_or(1), a.l.unwrap_or(1));
            let set: Vec<Elem> = a.a.iter().map(|&x| Elem(x)).collect();
            let alpha = Elem(alpha);
            if a.family == "coset-egrs" {
                vec![Family::CosetEgrs { q, sdeg, l, a: set, alpha, r: 0 }]
            } else {
                vec![Family::CosetGrs { q, sdeg, l, a: set, alpha, r: 0 }]
            }
        }
        "grs" | "egrs" => {
            let Ok((p, e)) = prime_power(q64) else { return Vec::new() };
            if a.family == "grs" {
                vec![Family::Grs { p, e, points: None }]
            } else {
                vec![Family::Egrs { p, e, points: None }]
            }
        }
        _ => Vec::new(),
    }
}

const TABLE_HEADER: [&str; 12] = [
    "family",
    "q",
    "params",
    "n",
    "k",
    "designed_d",
    "d",
    "dual_designed_d",
    "orthogonality",
    "quantum",
    "claims",
    "status",
];

fn params_text(family: &Family) -> String {
    let v = family.params_json();
    let Some(obj) = v.as_object() else { return String::new() };
    obj.iter()
        .filter(|(k, _)| k.as_str() != "q")
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn claims_text(claims: &[Claim]) -> (String, String) {
    if claims.is_empty() {
        return ("-".into(), "-".into());
    }
    let text = claims
        .iter()
        .map(|c| {
            let mark = if c.holds { "" } else { " MISMATCH" };
            let ex = if c.example { " example" } else { "" };
            format!("{} {}{ex}{mark}", c.label, c.text)
        })
        .collect::<Vec<_>>()
        .join("; ");
    let status = if claims.iter().all(|c| c.holds) { "ok" } else { "mismatch" };
    (text, status.into())
}

fn orthogonality_text(o: Orthogonality, almost: bool) -> String {
    let s = match o {
        Orthogonality::None => "none",
        Orthogonality::EuclideanSo if almost => "euclidean_almost_self_dual",
        Orthogonality::EuclideanSo => "euclidean_so",
        Orthogonality::HermitianSo => "hermitian_so",
        Orthogonality::EuclideanSelfDual => "euclidean_self_dual",
    };
    s.to_string()
}

fn table_row(family: &Family, arith_only: bool, budget: u64) -> CliResult<Option<Vec<String>>> {
    let q = family.q();
    let layout = match family.layout() {
        Ok(l) => l,
        Err(e) if e.is_precondition() => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let qtext = match (q, family) {
        (Some(q), _) => q.to_string(),
        (None, Family::Grs { p, e, .. } | Family::Egrs { p, e, .. }) => (*p as u64).pow(*e).to_string(),
        _ => "-".into(),
    };
    let dash = || "-".to_string();
    let mut row = vec![family.id().to_string(), qtext, params_text(family)];
    if arith_only {
        let Some(layout) = layout else {
            // GRS/EGRS: arithmetic of the full field
            let (Family::Grs { p, e, .. } | Family::Egrs { p, e, .. }) = family else { unreachable!() };
            let mut n = (*p as u64).pow(*e);
            let extended = matches!(family, Family::Egrs { .. });
            if extended {
                n += 1;
            }
            if n % 2 == 1 {
                return Ok(None);
            }
            let k = n / 2;
            let got = Achieved { n, k, designed: n - k + 1, dual_designed: Some(k + 1) };
            let dummy = dummy_layout(n as usize);
            let (ct, st) = claims_text(&claims_for(family, &dummy, got));
            row.extend([n.to_string(), k.to_string(), (n - k + 1).to_string(), dash(), (k + 1).to_string(), dash(), dash(), ct, st]);
            return Ok(Some(row));
        };
        let r = family.r().expect("AG family");
        let qq = q.expect("AG family") as u64;
        let k = riemann_roch_dim(qq, layout.m as u64, r);
        let n = layout.n as u64;
        let g = layout.genus as u64;
        let dual = (r + 2 > 2 * g).then(|| r + 2 - 2 * g);
        let got = Achieved { n, k, designed: n - r, dual_designed: dual };
        let quantum = match family.mode() {
            TwistMode::Hermitian => match dual {
                Some(d) => format!("[[{n},{},>={d}]]_{qq}", n as i64 - 2 * k as i64),
                None => format!("[[{n},{}]]_{qq}", n as i64 - 2 * k as i64),
            },
            TwistMode::Euclidean => dash(),
        };
        let (ct, st) = claims_text(&claims_for(family, &layout, got));
        row.extend([
            n.to_string(),
            k.to_string(),
            (n - r).to_string(),
            dash(),
            dual.map_or_else(dash, |d| d.to_string()),
            dash(),
            quantum,
            ct,
            st,
        ]);
        return Ok(Some(row));
    }
    let code = match family.build() {
        Ok(c) => c,
        Err(Error::MixedClass { .. }) => {
            let n = layout.map_or_else(dash, |l| l.n.to_string());
            row.extend([n, dash(), dash(), dash(), dash(), "mixed-class".into(), dash(), dash(), "mixed-class".into()]);
            return Ok(Some(row));
        }
        Err(e) if e.is_precondition() => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let cert = certify(&code, budget)?;
    let got = Achieved {
        n: cert.n,
        k: cert.k,
        designed: code.designed_distance.unwrap_or(0),
        dual_designed: code.dual_designed_distance,
    };
    let layout = layout.unwrap_or_else(|| dummy_layout(code.n()));
    let (ct, st) = claims_text(&claims_for(family, &layout, got));
    let d = match &cert.distance {
        crate::analysis::DistanceRecord::Exact { d } => d.to_string(),
        crate::analysis::DistanceRecord::Bound { lower: Some(d), .. } => format!(">={d}"),
        _ => dash(),
    };
    row.extend([
        cert.n.to_string(),
        cert.k.to_string(),
        code.designed_distance.map_or_else(dash, |d| d.to_string()),
        d,
        code.dual_designed_distance.map_or_else(dash, |d| d.to_string()),
        orthogonality_text(cert.orthogonality, cert.almost_self_dual),
        cert.quantum.as_ref().map_or_else(dash, |qr| qr.to_string()),
        ct,
        st,
    ]);
    Ok(Some(row))
}

fn dummy_layout(n: usize) -> crate::families::Layout {
    let window = crate::twist::DegreeWindow { r_min: 0, r_max: 0, r_selfdual: None };
    crate::families::Layout { n, m: 0, genus: 0, lo: 0, hi: 0, window }
}

fn write_table(out: &mut dyn Write, format: TableFormat, header: &[&str], rows: &[Vec<String>]) -> CliResult {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let wrap = |e: csv::Error| CliError::usage(e.to_string());
            w.write_record(header).map_err(wrap)?;
            for row in rows {
                w.write_record(row).map_err(wrap)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
            out.write_all(&bytes)?;
        }
        TableFormat::Md => {
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}|", vec!["---"; header.len()].join("|"))?;
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| c.replace('|', "\\|")).collect();
                writeln!(out, "| {} |", cells.join(" | "))?;
            }
        }
    }
    Ok(())
}

fn table(a: TableArgs, out: &mut dyn Write) -> CliResult {
    let budget = budget(a.budget)?;
    let qs = parse_q_range(&a.q_range)?;
    let mut rows = Vec::new();
    for q in qs {
        let valid = match a.family.as_str() {
            "grs" | "egrs" => prime_power(q as u64).is_ok(),
            _ => q >= 2 && prime_power(q as u64).is_ok(),
        };
        if !valid {
            continue;
        }
        for base in table_candidates(&a, q) {
            let layout = match base.layout() {
                Ok(l) => l,
                Err(e) if e.is_precondition() => continue,
                Err(e) => return Err(e.into()),
            };
            let Some(layout) = layout else {
                if let Some(row) = table_row(&base, a.arith_only, budget)? {
                    rows.push(row);
                }
                continue;
            };
            let rs: Vec<u64> = if a.r.is_empty() {
                (layout.lo.max(0)..=layout.hi).map(|r| r as u64).collect()
            } else {
                a.r.iter().copied().filter(|&r| r as i64 >= layout.lo && r as i64 <= layout.hi).collect()
            };
            for r in rs {
                if let Some(row) = table_row(&base.with_r(r), a.arith_only, budget)? {
                    rows.push(row);
                }
            }
        }
    }
    write_table(out, a.format, &TABLE_HEADER, &rows)
}

fn read_store(path: &Path) -> CliResult<Vec<CodeDescriptor>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            CodeDescriptor::from_json(l).map_err(|e| CliError::usage(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

fn catalog(c: CatalogCommand, out: &mut dyn Write) -> CliResult {
    match c {
        CatalogCommand::Add { store, descriptors, family, budget: b } => {
            let mut incoming = Vec::new();
            for p in &descriptors {
                let text = fs::read_to_string(p)?;
                incoming.push(CodeDescriptor::from_json(&text).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?);
            }
            if family.is_set() {
                let code = family.to_family()?.build()?;
                incoming.push(CodeDescriptor::describe(&code, budget(b)?, None)?);
            }
            if incoming.is_empty() {
                return Err(CliError::usage("nothing to add: give descriptor files or --family"));
            }
            let existing = read_store(&store)?;
            let mut keys: HashSet<String> = existing.iter().map(CodeDescriptor::catalog_key).collect();
            let mut lines = String::new();
            let (mut added, mut skipped) = (0, 0);
            for d in incoming {
                if keys.insert(d.catalog_key()) {
                    lines.push_str(&serde_json::to_string(&d).expect("descriptor serializes"));
                    lines.push('\n');
                    added += 1;
                } else {
                    skipped += 1;
                }
            }
            if !lines.is_empty() {
                let mut f = fs::OpenOptions::new().create(true).append(true).open(&store)?;
                f.write_all(lines.as_bytes())?;
            }
            writeln!(out, "added {added}, already present {skipped}")?;
            Ok(())
        }
        CatalogCommand::List { store, format } => {
            let header = ["family", "field", "params", "n", "k", "orthogonality", "distance", "quantum"];
            let rows: Vec<Vec<String>> = read_store(&store)?
                .iter()
                .map(|d| {
                    let FieldInfo { p, e, .. } = &d.field;
                    vec![
                        d.family.clone().unwrap_or_else(|| "-".into()),
                        format!("GF({p}^{e})"),
                        d.params.as_ref().map_or_else(|| "-".into(), |v| v.to_string()),
                        d.certificate.n.to_string(),
                        d.certificate.k.to_string(),
                        orthogonality_text(d.certificate.orthogonality, d.certificate.almost_self_dual),
                        match &d.certificate.distance {
                            crate::analysis::DistanceRecord::Exact { d } => d.to_string(),
                            crate::analysis::DistanceRecord::Bound { lower: Some(d), .. } => format!(">={d}"),
                            _ => "-".into(),
                        },
                        d.certificate.quantum.as_ref().map_or_else(|| "-".into(), |q| q.to_string()),
                    ]
                })
                .collect();
            write_table(out, format, &header, &rows)
        }
    }
}
