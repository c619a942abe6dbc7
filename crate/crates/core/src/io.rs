//! Text formats for algebras and derivations, and the `key=value` record
//! rendering of reports.
//!
//! Algebra file:
//!
//! ```text
//! # comment
//! algebra b1
//! dim 4
//! basis x1 x2 x3 x4          # optional
//! bracket 2 3 4 -> 1:1       # [x2,x3,x4] = x1; i<j<k, 1-based
//! ```
//!
//! Derivation file: `derivation <name>`, `dim <n>`, then either one
//! `diag e1 … en` line or exactly `n` lines `row a1 … an`.

use std::collections::BTreeMap;

use crate::algebra::AlgebraSpec;
use crate::catalog::DiscrepancyLedger;
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::report::Report;
use crate::scalar::{default_labels, fmt_scalar, parse_scalar, zero_vector, Scalar, Vector};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize> {
    let i: usize = tok.parse().map_err(|_| perr(line, format!("expected a basis index, got `{tok}`")))?;
    if i == 0 || i > n {
        return Err(perr(line, format!("index {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

fn parse_dim(rest: &str, line: usize) -> Result<usize> {
    let n: usize = rest.trim().parse().map_err(|_| perr(line, format!("invalid dimension `{}`", rest.trim())))?;
    if n == 0 {
        return Err(perr(line, "dimension must be positive"));
    }
    Ok(n)
}

fn parse_rational(tok: &str, line: usize) -> Result<Scalar> {
    parse_scalar(tok).map_err(|m| perr(line, m))
}

/// Parses an algebra file.
pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    let mut name = String::from("algebra");
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut constants: BTreeMap<[usize; 3], Vector> = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = strip_comment(raw);
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match head {
            "algebra" => {
                let rest = rest.trim();
                if rest.is_empty() {
                    return Err(perr(line, "`algebra` needs a name"));
                }
                name = rest.to_string();
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(line, "duplicate `dim`"));
                }
                dim = Some(parse_dim(rest, line)?);
            }
            "basis" => {
                let n = dim.ok_or_else(|| perr(line, "`basis` before `dim`"))?;
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ls.len() != n {
                    return Err(perr(line, format!("expected {n} labels, got {}", ls.len())));
                }
                labels = Some(ls);
            }
            "bracket" => {
                let n = dim.ok_or_else(|| perr(line, "`bracket` before `dim`"))?;
                let (lhs, rhs) =
                    rest.split_once("->").ok_or_else(|| perr(line, "expected `bracket i j k -> l:c ...`"))?;
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                if idx.len() != 3 {
                    return Err(perr(line, "a bracket needs exactly three indices"));
                }
                let t = [parse_index(idx[0], n, line)?, parse_index(idx[1], n, line)?, parse_index(idx[2], n, line)?];
                if !(t[0] < t[1] && t[1] < t[2]) {
                    return Err(perr(
                        line,
                        format!(
                            "unordered triple ({} {} {}): list indices increasing and flip the sign for an odd reordering",
                            idx[0], idx[1], idx[2]
                        ),
                    ));
                }
                if constants.contains_key(&t) {
                    return Err(perr(line, format!("duplicate triple ({} {} {})", idx[0], idx[1], idx[2])));
                }
                let mut v = zero_vector(n);
                let terms: Vec<&str> = rhs.split_whitespace().collect();
                if terms.is_empty() {
                    return Err(perr(line, "a bracket needs at least one `l:c` term"));
                }
                for term in terms {
                    let (l, c) =
                        term.split_once(':').ok_or_else(|| perr(line, format!("expected `l:c`, got `{term}`")))?;
                    let l = parse_index(l, n, line)?;
                    v[l] += parse_rational(c, line)?;
                }
                constants.insert(t, v);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = dim.ok_or_else(|| perr(text.lines().count().max(1), "missing `dim`"))?;
    AlgebraSpec::new(name, labels.unwrap_or_else(|| default_labels(n)), constants)
}

/// Renders `alg` so that [`parse_algebra`] returns it unchanged.
pub fn emit_algebra(alg: &AlgebraSpec) -> String {
    let n = alg.dim();
    let mut out = format!("algebra {}\ndim {n}\n", alg.name());
    if alg.labels() != default_labels(n).as_slice() {
        out.push_str(&format!("basis {}\n", alg.labels().join(" ")));
    }
    for (&[i, j, k], v) in alg.constants() {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(l, c)| format!("{}:{}", l + 1, fmt_scalar(c)))
            .collect();
        out.push_str(&format!("bracket {} {} {} -> {}\n", i + 1, j + 1, k + 1, terms.join(" ")));
    }
    out
}

/// A parsed derivation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationFile {
    pub name: String,
    pub map: LinearMap,
}

pub fn parse_derivation(text: &str) -> Result<DerivationFile> {
    let mut name = String::from("D");
    let mut dim: Option<usize> = None;
    let mut diag: Option<Vec<Scalar>> = None;
    let mut rows: Vec<Vector> = Vec::new();
    let mut last = 1;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        last = line;
        let body = strip_comment(raw);
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let values = |n: usize| -> Result<Vector> {
            let v = rest.split_whitespace().map(|t| parse_rational(t, line)).collect::<Result<Vector>>()?;
            if v.len() != n {
                return Err(perr(line, format!("expected {n} entries, got {}", v.len())));
            }
            Ok(v)
        };
        match head {
            "derivation" => {
                let rest = rest.trim();
                if rest.is_empty() {
                    return Err(perr(line, "`derivation` needs a name"));
                }
                name = rest.to_string();
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(line, "duplicate `dim`"));
                }
                dim = Some(parse_dim(rest, line)?);
            }
            "diag" => {
                let n = dim.ok_or_else(|| perr(line, "`diag` before `dim`"))?;
                if diag.is_some() || !rows.is_empty() {
                    return Err(perr(line, "give either one `diag` line or `row` lines"));
                }
                diag = Some(values(n)?);
            }
            "row" => {
                let n = dim.ok_or_else(|| perr(line, "`row` before `dim`"))?;
                if diag.is_some() {
                    return Err(perr(line, "give either one `diag` line or `row` lines"));
                }
                if rows.len() == n {
                    return Err(perr(line, format!("more than {n} rows")));
                }
                rows.push(values(n)?);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = dim.ok_or_else(|| perr(last, "missing `dim`"))?;
    let map = match diag {
        Some(d) => LinearMap::diagonal(&d),
        None if rows.len() == n => LinearMap::from_rows(rows)?,
        None if rows.is_empty() => return Err(perr(last, "missing `diag` or `row` lines")),
        None => return Err(perr(last, format!("expected {n} rows, got {}", rows.len()))),
    };
    Ok(DerivationFile { name, map })
}

pub fn emit_derivation(name: &str, d: &LinearMap) -> String {
    let mut out = format!("derivation {name}\ndim {}\n", d.domain_dim());
    if let Some(diag) = d.as_diagonal() {
        let e: Vec<String> = diag.iter().map(fmt_scalar).collect();
        out.push_str(&format!("diag {}\n", e.join(" ")));
    } else {
        for row in d.rows() {
            let e: Vec<String> = row.iter().map(fmt_scalar).collect();
            out.push_str(&format!("row {}\n", e.join(" ")));
        }
    }
    out
}

fn quote(value: &str) -> String {
    if !value.is_empty() && !value.contains(|c: char| c.is_whitespace() || c == '"' || c == '=') {
        value.to_string()
    } else {
        format!("\"{}\"", value.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// One record: `key=value` pairs in the given order, quoting values that
/// contain spaces, quotes or `=`.
pub fn record(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect::<Vec<_>>().join(" ")
}

/// Splits a record line back into its `key=value` pairs, undoing the quoting
/// applied by [`record`].
pub fn parse_record(line: &str) -> Result<Vec<(String, String)>> {
    let bad = |m: &str| Error::Parse { line: 1, message: m.to_string() };
    let mut pairs = Vec::new();
    let mut chars = line.trim().chars().peekable();
    while chars.peek().is_some() {
        let key: String = chars.by_ref().take_while(|&c| c != '=').collect();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(bad("expected `key=value`"));
        }
        let mut value = String::new();
        if chars.peek() == Some(&'"') {
            chars.next();
            loop {
                match chars.next() {
                    Some('\\') => value.push(chars.next().ok_or_else(|| bad("dangling escape"))?),
                    Some('"') => break,
                    Some(c) => value.push(c),
                    None => return Err(bad("unterminated quote")),
                }
            }
            if chars.next().is_some_and(|c| c != ' ') {
                return Err(bad("expected a space after a quoted value"));
            }
        } else {
            value = chars.by_ref().take_while(|&c| c != ' ').collect();
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

/// Flattens a report tree into records: one `kind=check` line per node,
/// followed by its `kind=violation` and `kind=note` lines.
pub fn report_records(report: &Report) -> String {
    let mut out = String::new();
    walk(report, "", &mut out);
    out
}

fn walk(r: &Report, prefix: &str, out: &mut String) {
    let path = if prefix.is_empty() { r.check.clone() } else { format!("{prefix}/{}", r.check) };
    out.push_str(&record(&[
        ("kind", "check".into()),
        ("path", path.clone()),
        ("passed", r.passed.to_string()),
        ("evaluated", r.evaluated.to_string()),
        ("violations", r.violations.len().to_string()),
    ]));
    out.push('\n');
    for note in &r.notes {
        out.push_str(&record(&[("kind", "note".into()), ("path", path.clone()), ("text", note.clone())]));
        out.push('\n');
    }
    for v in &r.violations {
        let w: Vec<String> = v.witness.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&record(&[
            ("kind", "violation".into()),
            ("path", path.clone()),
            ("identity", v.identity.clone()),
            ("witness", w.join(",")),
            ("lhs", v.lhs.clone()),
            ("rhs", v.rhs.clone()),
        ]));
        out.push('\n');
    }
    for c in &r.children {
        walk(c, &path, out);
    }
}

/// Records for a discrepancy ledger.
pub fn ledger_records(ledger: &DiscrepancyLedger) -> String {
    let mut out = record(&[
        ("kind", "ledger".into()),
        ("case", ledger.case_id.clone()),
        ("table", ledger.table.clone().unwrap_or_else(|| "-".into())),
        ("records", ledger.records.len().to_string()),
        ("skipped", ledger.skipped.clone().unwrap_or_default()),
    ]);
    out.push('\n');
    for r in &ledger.records {
        out.push_str(&record(&[
            ("kind", "discrepancy".into()),
            ("case", r.case_id.clone()),
            ("object", r.object.to_string()),
            ("coordinate", r.coordinate.clone()),
            ("classification", r.classification.to_string()),
            ("printed", r.printed.clone()),
            ("computed", r.computed.clone()),
        ]));
        out.push('\n');
    }
    out
}
