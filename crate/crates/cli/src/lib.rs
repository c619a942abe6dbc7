//! The `lie3` command line: argument parsing, dispatch and report output.
//!
//! [`run`] never exits the process, so tests drive it directly.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lie3_core::bialgebra::{semidirect, verify_cybe, verify_local_cocycle_bialgebra, Bialgebra};
use lie3_core::catalog::{
    case_info, cases, catalog_algebra, check_params, compare_with_printed, DiscrepancyLedger, Params,
};
use lie3_core::derivation::{
    derivation_space, search_involutive_diagonal, sign_pattern, verify_involutive, verify_involutive_identity,
};
use lie3_core::io::{emit_algebra, ledger_records, parse_algebra, parse_derivation, record, report_records};
use lie3_core::pipeline::verify_pair;
use lie3_core::prelie::{prelie_compatible, prelie_from_d, subadjacent, verify_d_isomorphism, verify_prelie};
use lie3_core::{verify_o_operator, AlgebraSpec, Error, LinearMap, Report, Representation};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lie3",
    version,
    about = "Exact checks for 3-Lie algebras, involutive derivations and 3-Lie bialgebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Records,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    #[value(name = "D")]
    D,
    #[value(name = "A")]
    A,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Search {
    Diag,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check antisymmetry and the Filippov identity.
    Verify { algebra: PathBuf },
    /// Dimensions of the derived algebra, the center and the derivation algebra.
    Invariants { algebra: PathBuf },
    /// Verify a given involutive derivation, or search for diagonal ones.
    Involutive {
        algebra: PathBuf,
        #[arg(long, required_unless_present = "search", conflicts_with = "search")]
        derivation: Option<PathBuf>,
        #[arg(long, value_enum)]
        search: Option<Search>,
    },
    /// Check the 3-pre-Lie products built from an involutive derivation.
    Prelie {
        algebra: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Emit the semidirect product with the coadjoint representation.
    Semidirect { algebra: PathBuf },
    /// Check that r built from D solves the classical Yang-Baxter equation.
    Cybe {
        algebra: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
    },
    /// Build r and the coproduct, and check the bialgebra axioms.
    Bialgebra {
        algebra: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
    },
    /// Built-in classification cases.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["list", "case", "all"])))]
struct CatalogArgs {
    /// List the cases.
    #[arg(long)]
    list: bool,
    /// Run one case.
    #[arg(long, value_name = "ID")]
    case: Option<String>,
    /// Run every case.
    #[arg(long)]
    all: bool,
    /// Parameter assignments such as alpha=2 or s=-1/3.
    #[arg(long, num_args = 1.., value_name = "K=V")]
    params: Vec<String>,
    /// Compare against the bundled printed tables and emit the discrepancy ledger.
    #[arg(long, visible_alias = "verify-paper")]
    verify_printed: bool,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "cannot read {}: {e}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_algebra(path: &Path) -> Result<AlgebraSpec, CliError> {
    parse_algebra(&read(path)?).map_err(|e| CliError::Core(with_file(path, e)))
}

fn load_derivation(path: &Path, alg: &AlgebraSpec) -> Result<LinearMap, CliError> {
    let file = parse_derivation(&read(path)?).map_err(|e| CliError::Core(with_file(path, e)))?;
    if file.map.domain_dim() != alg.dim() {
        return Err(CliError::Core(Error::Shape(format!(
            "{}: derivation has dimension {}, algebra has dimension {}",
            path.display(),
            file.map.domain_dim(),
            alg.dim()
        ))));
    }
    Ok(file.map)
}

fn with_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let records = cli.format == Format::Records;
    match &cli.command {
        Command::Verify { algebra } => {
            let alg = load_algebra(algebra)?;
            let mut report = Report::new("verify");
            report.push_child(antisymmetry(&alg));
            report.push_child(alg.verify_filippov());
            Ok(report_outcome(&report, records))
        }
        Command::Invariants { algebra } => {
            let alg = load_algebra(algebra)?;
            Ok(Outcome { text: invariants(&alg, records), passed: true })
        }
        Command::Involutive { algebra, derivation, search } => {
            let alg = load_algebra(algebra)?;
            match (derivation, search) {
                (Some(path), _) => {
                    let d = load_derivation(path, &alg)?;
                    let mut report = Report::new("involutive-derivation");
                    report.push_child(verify_involutive(&alg, &d)?);
                    report.push_child(verify_involutive_identity(&alg, &d)?);
                    report.push_child(verify_o_operator(&alg, &Representation::adjoint(&alg), &d)?);
                    Ok(report_outcome(&report, records))
                }
                (None, _) => Ok(Outcome { text: diagonal_search(&alg, records)?, passed: true }),
            }
        }
        Command::Prelie { algebra, derivation, mode } => {
            let alg = load_algebra(algebra)?;
            let d = load_derivation(derivation, &alg)?;
            let involutive = verify_involutive(&alg, &d)?;
            if !involutive.passed {
                return Ok(report_outcome(&involutive, records));
            }
            let mut report = Report::new("prelie");
            if matches!(mode, Mode::D | Mode::Both) {
                let mut r = verify_prelie(&prelie_from_d(&alg, &d)?);
                r.check = "prelie-D".into();
                report.push_child(r);
                report.push_child(verify_d_isomorphism(&alg, &d)?);
            }
            if matches!(mode, Mode::A | Mode::Both) {
                let p = prelie_compatible(&alg, &d)?;
                let mut r = verify_prelie(&p);
                r.check = "prelie-A".into();
                report.push_child(r);
                let mut sub = Report::new("subadjacent");
                sub.evaluated = 1;
                if subadjacent(&p)?.constants() != alg.constants() {
                    sub.fail("sub-adjacent bracket differs from the original");
                }
                report.push_child(sub);
            }
            Ok(report_outcome(&report, records))
        }
        Command::Semidirect { algebra } => {
            let alg = load_algebra(algebra)?;
            let b = semidirect(&alg).with_name(format!("{}-semidirect", alg.name()));
            Ok(Outcome { text: emit_algebra(&b), passed: true })
        }
        Command::Cybe { algebra, derivation } => {
            let alg = load_algebra(algebra)?;
            let d = load_derivation(derivation, &alg)?;
            let r = lie3_core::bialgebra::r_from_d(&alg, &d)?;
            let report = verify_cybe(&semidirect(&alg), &r)?;
            Ok(report_outcome(&report, records))
        }
        Command::Bialgebra { algebra, derivation } => {
            let alg = load_algebra(algebra)?;
            let d = load_derivation(derivation, &alg)?;
            let involutive = verify_involutive(&alg, &d)?;
            if !involutive.passed {
                return Ok(report_outcome(&involutive, records));
            }
            let bi = Bialgebra::build(&alg, &d)?;
            let mut report = Report::new("bialgebra");
            report.push_child(verify_cybe(&bi.double, &bi.r)?);
            report.push_child(verify_local_cocycle_bialgebra(&bi.double, &bi.delta)?);
            let mut text = String::new();
            if records {
                text.push_str(&coproduct_records(&bi));
                text.push_str(&report_records(&report));
            } else {
                writeln!(text, "r = {}", bi.r.fmt_with(bi.labels())).unwrap();
                text.push_str(&bi.total().fmt_wedge_table(bi.labels()));
                text.push_str(&report.to_string());
            }
            Ok(Outcome { text, passed: report.passed })
        }
        Command::Catalog(args) => catalog(args, records),
    }
}

fn report_outcome(report: &Report, records: bool) -> Outcome {
    let text = if records { report_records(report) } else { report.to_string() };
    Outcome { text, passed: report.passed }
}

/// `[x_σ(i),x_σ(j),x_σ(k)] = sgn(σ)[x_i,x_j,x_k]` for all triples, and zero
/// on repeated arguments.
fn antisymmetry(alg: &AlgebraSpec) -> Report {
    let n = alg.dim();
    let mut report = Report::new("antisymmetry");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.evaluated += 1;
                let v = alg.bracket_basis(i, j, k);
                let repeated = i == j || j == k || i == k;
                let ok = if repeated {
                    v.iter().all(|c| *c == lie3_core::scalar::zero())
                } else {
                    v == lie3_core::scalar::neg_vector(&alg.bracket_basis(j, i, k))
                        && v == lie3_core::scalar::neg_vector(&alg.bracket_basis(i, k, j))
                };
                if !ok {
                    report.violate("antisymmetry", vec![i, j, k], alg.fmt_vector(&v), "alternating");
                }
            }
        }
    }
    report
}

fn fmt_subspace(alg: &AlgebraSpec, basis: &[lie3_core::Vector]) -> String {
    if basis.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = basis.iter().map(|v| alg.fmt_vector(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn invariants(alg: &AlgebraSpec, records: bool) -> String {
    let derived = alg.derived_algebra();
    let center = alg.center();
    let der = derivation_space(alg);
    if records {
        let mut out = String::new();
        for (name, dim, basis) in [
            ("derived", derived.dim(), fmt_subspace(alg, derived.basis())),
            ("center", center.dim(), fmt_subspace(alg, center.basis())),
            ("derivations", der.len(), String::new()),
        ] {
            let mut pairs = vec![("kind", "invariant".to_string()), ("name", name.into()), ("dim", dim.to_string())];
            if !basis.is_empty() {
                pairs.push(("basis", basis));
            }
            writeln!(out, "{}", record(&pairs)).unwrap();
        }
        return out;
    }
    let mut out = format!("algebra {} (dim {})\n", alg.name(), alg.dim());
    writeln!(out, "dim A^1 = {}  {}", derived.dim(), fmt_subspace(alg, derived.basis())).unwrap();
    writeln!(out, "dim Z(A) = {}  {}", center.dim(), fmt_subspace(alg, center.basis())).unwrap();
    writeln!(out, "dim Der(A) = {}", der.len()).unwrap();
    out
}

fn fmt_signs(signs: &[i8]) -> String {
    let s: Vec<String> = signs.iter().map(|e| e.to_string()).collect();
    format!("diag({})", s.join(","))
}

fn diagonal_search(alg: &AlgebraSpec, records: bool) -> Result<String, CliError> {
    let found = search_involutive_diagonal(alg)?;
    let mut out = String::new();
    if !records {
        writeln!(out, "{} diagonal involutive derivation(s)", found.len()).unwrap();
    }
    for d in &found {
        let signs = sign_pattern(d).expect("search returns sign patterns");
        if records {
            writeln!(out, "{}", record(&[("kind", "witness".into()), ("diag", signs_csv(&signs))])).unwrap();
        } else {
            writeln!(out, "{}", fmt_signs(&signs)).unwrap();
        }
    }
    Ok(out)
}

fn signs_csv(signs: &[i8]) -> String {
    signs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

fn coproduct_records(bi: &Bialgebra) -> String {
    let labels = bi.labels();
    let mut out = String::new();
    for (x, img) in bi.total().images().iter().enumerate() {
        writeln!(
            out,
            "{}",
            record(&[
                ("kind", "coproduct".into()),
                ("x", labels[x].clone()),
                ("image", lie3_core::tensor::fmt_wedge(img, labels)),
            ])
        )
        .unwrap();
    }
    out
}

fn fmt_brackets(alg: &AlgebraSpec) -> String {
    let labels = alg.labels();
    let mut out = String::new();
    for ([i, j, k], v) in alg.constants() {
        if v.iter().any(|c| *c != lie3_core::scalar::zero()) {
            writeln!(out, "  [{},{},{}] = {}", labels[*i], labels[*j], labels[*k], alg.fmt_vector(v)).unwrap();
        }
    }
    out
}

fn catalog(args: &CatalogArgs, records: bool) -> Result<Outcome, CliError> {
    let mut params = Params::default();
    for kv in &args.params {
        params.assign(kv)?;
    }
    if args.list {
        let mut out = String::new();
        for c in cases() {
            let table = c.table.unwrap_or("-");
            let ps = if c.params.is_empty() { "-".to_string() } else { c.params.join(",") };
            if records {
                writeln!(
                    out,
                    "{}",
                    record(&[
                        ("kind", "case".into()),
                        ("id", c.id.into()),
                        ("dim", c.dim.to_string()),
                        ("params", ps),
                        ("table", table.into()),
                    ])
                )
                .unwrap();
            } else {
                writeln!(out, "{:<8} dim {}  params {:<10} table {}", c.id, c.dim, ps, table).unwrap();
            }
        }
        return Ok(Outcome { text: out, passed: true });
    }
    let ids: Vec<&str> = match &args.case {
        Some(id) => vec![case_info(id)?.id],
        None => cases().iter().map(|c| c.id).collect(),
    };
    let detailed = args.case.is_some();
    let mut out = String::new();
    let mut passed = true;
    for id in ids {
        check_params(id, &params)?;
        let (text, ok) = run_case(id, &params, detailed, args.verify_printed, records)?;
        out.push_str(&text);
        passed &= ok;
    }
    Ok(Outcome { text: out, passed })
}

fn run_case(
    id: &str,
    params: &Params,
    detailed: bool,
    ledger: bool,
    records: bool,
) -> Result<(String, bool), CliError> {
    let info = case_info(id)?;
    let alg = catalog_algebra(id, params)?;
    let filippov = alg.verify_filippov();
    let witness = match info.witness {
        Some(signs) => Some(LinearMap::signs(signs)),
        None => search_involutive_diagonal(&alg)?.into_iter().next(),
    };
    let mut report = Report::new(format!("case {id}"));
    report.push_child(filippov);
    if let Some(d) = &witness {
        report.push_child(verify_pair(&alg, d)?);
    } else {
        report.note("no diagonal involutive derivation");
    }
    let signs = witness.as_ref().and_then(sign_pattern);
    let ledger: Option<DiscrepancyLedger> = if ledger { Some(compare_with_printed(id, params)?) } else { None };

    let mut out = String::new();
    if records {
        let mut pairs = vec![("kind", "case".to_string()), ("id", id.to_string()), ("dim", info.dim.to_string())];
        pairs.push(("witness", signs.as_deref().map(signs_csv).unwrap_or_else(|| "-".into())));
        pairs.push(("passed", report.passed.to_string()));
        writeln!(out, "{}", record(&pairs)).unwrap();
        if detailed {
            out.push_str(&report_records(&report));
        }
        if let Some(l) = &ledger {
            out.push_str(&ledger_records(l));
        }
        return Ok((out, report.passed));
    }
    let witness_text = signs.as_deref().map(fmt_signs).unwrap_or_else(|| "none".into());
    writeln!(out, "{id}: {}  witness {witness_text}", if report.passed { "pass" } else { "FAIL" }).unwrap();
    if detailed {
        if let Some(note) = info.correction {
            writeln!(out, "note: {note}").unwrap();
        }
        writeln!(out, "brackets:").unwrap();
        out.push_str(&fmt_brackets(&alg));
        if let Some(d) = &witness {
            let bi = Bialgebra::build(&alg, d)?;
            writeln!(out, "semidirect brackets:").unwrap();
            out.push_str(&fmt_brackets(&bi.double));
            writeln!(out, "coproduct:").unwrap();
            out.push_str(&bi.total().fmt_wedge_table(bi.labels()));
        }
        out.push_str(&report.to_string());
    }
    if let Some(l) = &ledger {
        out.push_str(&l.to_string());
    }
    Ok((out, report.passed))
}
