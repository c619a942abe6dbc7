//! Built-in 4- and 5-dimensional 3-Lie algebras, the full bialgebra pipeline
//! for each, and a comparator against the bundled expected tables.

pub mod printed;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{sort_triple, AlgebraSpec};
use crate::bialgebra::Bialgebra;
use crate::derivation::{require_involutive, search_involutive_diagonal, sign_pattern};
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::scalar::{add_scaled, fmt_vector, int, parse_scalar, zero_vector, Scalar, Vector};
use crate::tensor::{fmt_wedge, wedge3_basis, wedge_coordinates, Tensor};

use printed::{bundled_tables, PrintedLine, PrintedTable};

pub const PARAM_NAMES: [&str; 5] = ["alpha", "beta", "s", "t", "u"];

/// Values for the symbols appearing in parameterized cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub s: Scalar,
    pub t: Scalar,
    pub u: Scalar,
}

impl Default for Params {
    fn default() -> Self {
        Params { alpha: int(1), beta: int(1), s: int(1), t: int(0), u: int(0) }
    }
}

impl Params {
    pub fn get(&self, name: &str) -> Option<&Scalar> {
        match name {
            "alpha" => Some(&self.alpha),
            "beta" => Some(&self.beta),
            "s" => Some(&self.s),
            "t" => Some(&self.t),
            "u" => Some(&self.u),
            _ => None,
        }
    }

    pub fn set(&mut self, name: &str, value: Scalar) -> Result<()> {
        let slot = match name {
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "s" => &mut self.s,
            "t" => &mut self.t,
            "u" => &mut self.u,
            _ => {
                return Err(Error::Parameter(format!(
                    "unknown parameter `{name}` (expected one of {})",
                    PARAM_NAMES.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    /// Applies a `key=value` assignment.
    pub fn assign(&mut self, text: &str) -> Result<()> {
        let (k, v) =
            text.split_once('=').ok_or_else(|| Error::Parameter(format!("expected key=value, got `{text}`")))?;
        let value = parse_scalar(v).map_err(Error::Parameter)?;
        self.set(k.trim(), value)
    }

    fn lookup(&self) -> impl Fn(&str) -> Option<Scalar> + '_ {
        move |name| self.get(name).cloned()
    }
}

/// Static description of a catalog case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseInfo {
    pub id: &'static str,
    pub dim: usize,
    /// Parameters the brackets depend on.
    pub params: &'static [&'static str],
    /// Parameters that must be nonzero.
    pub nonzero: &'static [&'static str],
    /// Id of the bundled expected table, if any.
    pub table: Option<&'static str>,
    /// Sign pattern of the witness used instead of the first one found.
    pub witness: Option<&'static [i8]>,
    /// How the stored brackets differ from the list they were taken from.
    pub correction: Option<&'static str>,
}

const fn case(id: &'static str, dim: usize, table: Option<&'static str>) -> CaseInfo {
    CaseInfo { id, dim, params: &[], nonzero: &[], table, witness: None, correction: None }
}

const ALPHA: &[&str] = &["alpha"];

static CASES: &[CaseInfo] = &[
    CaseInfo { witness: Some(&[1, 1, 1, -1]), ..case("4-b1", 4, Some("mu1")) },
    case("4-b2", 4, Some("mu2")),
    case("4-c1", 4, Some("mu3")),
    CaseInfo { params: ALPHA, nonzero: ALPHA, ..case("4-c2", 4, Some("mu4")) },
    case("4-c3", 4, Some("mu5")),
    CaseInfo {
        correction: Some("[x1,x2,x4]=x3 in place of [x1,x2,x3]=x3, which violates the Filippov identity"),
        ..case("4-d1", 4, Some("mu6"))
    },
    case("4-e1", 4, Some("mu7")),
    case("5-b1", 5, Some("psi1")),
    case("5-b2", 5, Some("psi17")),
    case("5-c1", 5, Some("psi2")),
    case("5-c2", 5, Some("psi3")),
    case("5-c3", 5, Some("psi15")),
    case("5-c4", 5, Some("psi6")),
    CaseInfo {
        params: ALPHA,
        nonzero: ALPHA,
        correction: Some("adds [x1,x4,x5]=x1; without it the Filippov identity fails for every alpha"),
        ..case("5-c5", 5, None)
    },
    CaseInfo { params: ALPHA, nonzero: ALPHA, ..case("5-c6", 5, Some("psi4")) },
    case("5-c7", 5, Some("psi8")),
    case("5-d1", 5, Some("psi7")),
    CaseInfo {
        params: ALPHA,
        correction: Some(
            "adds [x2,x4,x5]=x3 and [x1,x4,x5]=x1 as in its bracket table; the two listed brackets alone violate the Filippov identity",
        ),
        ..case("5-d2", 5, Some("psi9"))
    },
    case("5-d3", 5, Some("psi10")),
    case("5-d4", 5, Some("psi11")),
    CaseInfo { params: &["beta"], nonzero: &["beta"], ..case("5-d5", 5, Some("psi12")) },
    case("5-d6", 5, Some("psi13")),
    CaseInfo { params: &["s", "t", "u"], nonzero: &["s"], ..case("5-d7", 5, Some("psi14")) },
    case("5-e1", 5, None),
    case("5-e2", 5, None),
    CaseInfo { params: ALPHA, nonzero: ALPHA, ..case("5-psi5", 5, Some("psi5")) },
    case("5-psi16", 5, Some("psi16")),
];

/// All cases in catalog order.
pub fn cases() -> &'static [CaseInfo] {
    CASES
}

pub fn case_info(id: &str) -> Result<&'static CaseInfo> {
    CASES.iter().find(|c| c.id == id).ok_or_else(|| Error::Lookup(id.to_string()))
}

/// Enforces the nonzero conditions of `id`.
pub fn check_params(id: &str, params: &Params) -> Result<()> {
    let info = case_info(id)?;
    for name in info.nonzero {
        if params.get(name).is_some_and(Zero::is_zero) {
            return Err(Error::Parameter(format!("{id} requires {name} != 0")));
        }
    }
    Ok(())
}

type Bracket = ([usize; 3], Vec<(usize, Scalar)>);

fn b(triple: [usize; 3], terms: &[(usize, &Scalar)]) -> Bracket {
    (triple, terms.iter().map(|(l, c)| (*l, (*c).clone())).collect())
}

fn brackets(id: &str, p: &Params) -> Vec<Bracket> {
    let one = &int(1);
    let neg = &int(-1);
    let two = &int(2);
    let beta1 = &(one + &p.beta);
    match id {
        "4-b1" | "5-b1" => vec![b([2, 3, 4], &[(1, one)])],
        "4-b2" | "5-b2" => vec![b([1, 2, 3], &[(1, one)])],
        "4-c1" | "5-c3" => vec![b([2, 3, 4], &[(1, one)]), b([1, 3, 4], &[(2, one)])],
        "4-c2" | "5-psi5" => {
            vec![b([2, 3, 4], &[(1, &p.alpha), (2, one)]), b([1, 3, 4], &[(2, one)])]
        }
        "4-c3" | "5-c7" => vec![b([1, 3, 4], &[(1, one)]), b([2, 3, 4], &[(2, one)])],
        "4-d1" => vec![b([2, 3, 4], &[(1, one)]), b([1, 3, 4], &[(2, one)]), b([1, 2, 4], &[(3, one)])],
        "4-e1" | "5-psi16" => vec![
            b([2, 3, 4], &[(2, neg)]),
            b([1, 3, 4], &[(1, one)]),
            b([1, 2, 3], &[(3, one)]),
            b([1, 2, 4], &[(4, neg)]),
        ],
        "5-c1" => vec![b([2, 3, 4], &[(1, one)]), b([3, 4, 5], &[(2, one)])],
        "5-c2" => vec![b([2, 3, 4], &[(1, one)]), b([2, 4, 5], &[(2, one)]), b([1, 4, 5], &[(1, one)])],
        "5-c4" => vec![
            b([2, 3, 4], &[(1, one)]),
            b([1, 3, 4], &[(2, one)]),
            b([2, 4, 5], &[(2, one)]),
            b([1, 4, 5], &[(1, one)]),
        ],
        "5-c5" => vec![b([2, 3, 4], &[(1, one)]), b([2, 4, 5], &[(1, &p.alpha), (2, one)]), b([1, 4, 5], &[(1, one)])],
        "5-c6" => vec![
            b([2, 3, 4], &[(1, &p.alpha), (2, one)]),
            b([1, 3, 4], &[(2, one)]),
            b([2, 4, 5], &[(2, one)]),
            b([1, 4, 5], &[(1, one)]),
        ],
        "5-d1" => vec![b([2, 3, 4], &[(1, one)]), b([2, 4, 5], &[(2, neg)]), b([3, 4, 5], &[(3, one)])],
        "5-d2" => vec![
            b([2, 3, 4], &[(1, one)]),
            b([3, 4, 5], &[(2, &p.alpha), (3, one)]),
            b([2, 4, 5], &[(3, one)]),
            b([1, 4, 5], &[(1, one)]),
        ],
        "5-d3" => vec![
            b([2, 3, 4], &[(1, one)]),
            b([3, 4, 5], &[(3, one)]),
            b([2, 4, 5], &[(2, one)]),
            b([1, 4, 5], &[(1, two)]),
        ],
        "5-d4" => vec![b([2, 3, 4], &[(1, one)]), b([1, 3, 4], &[(2, one)]), b([1, 2, 4], &[(3, one)])],
        "5-d5" => vec![b([1, 4, 5], &[(1, one)]), b([2, 4, 5], &[(3, one)]), b([3, 4, 5], &[(2, &p.beta), (3, beta1)])],
        "5-d6" => vec![b([1, 4, 5], &[(1, one)]), b([2, 4, 5], &[(2, one)]), b([3, 4, 5], &[(3, one)])],
        "5-d7" => {
            vec![b([1, 4, 5], &[(2, one)]), b([2, 4, 5], &[(3, one)]), b([3, 4, 5], &[(1, &p.s), (2, &p.t), (3, &p.u)])]
        }
        "5-e1" => vec![
            b([2, 3, 4], &[(1, one)]),
            b([3, 4, 5], &[(2, one)]),
            b([2, 4, 5], &[(3, one)]),
            b([2, 3, 5], &[(4, one)]),
        ],
        "5-e2" => vec![
            b([2, 3, 4], &[(1, one)]),
            b([1, 3, 4], &[(2, one)]),
            b([1, 2, 4], &[(3, one)]),
            b([1, 2, 3], &[(4, one)]),
        ],
        _ => unreachable!("case ids are validated first"),
    }
}

/// The structure constants of case `id` at `params`.
pub fn catalog_algebra(id: &str, params: &Params) -> Result<AlgebraSpec> {
    let info = case_info(id)?;
    check_params(id, params)?;
    AlgebraSpec::from_brackets(info.id, info.dim, &brackets(id, params))
}

/// Whether a 5-dimensional algebra has `dim A¹ ≤ 3`, or `dim A¹ = 4` and a
/// nonzero center.
pub fn fits_five_dim_filter(alg: &AlgebraSpec) -> bool {
    let d = alg.derived_algebra().dim();
    d <= 3 || (d == 4 && alg.center().dim() > 0)
}

/// Everything computed for one case and witness.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub case_id: String,
    pub params: Params,
    pub algebra: AlgebraSpec,
    pub witness: LinearMap,
    pub bialgebra: Bialgebra,
}

impl Reproduction {
    pub fn witness_signs(&self) -> Option<Vec<i8>> {
        sign_pattern(&self.witness)
    }
}

/// Runs the pipeline with the case's preferred witness, or the first diagonal
/// witness in search order.
pub fn reproduce_case(id: &str, params: &Params) -> Result<Reproduction> {
    let info = case_info(id)?;
    let alg = catalog_algebra(id, params)?;
    let d = match info.witness {
        Some(signs) => LinearMap::signs(signs),
        None => search_involutive_diagonal(&alg)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Domain(format!("no diagonal witness for {id}")))?,
    };
    reproduce_with(id, params, d)
}

/// Runs the pipeline with an explicit involutive derivation.
pub fn reproduce_with(id: &str, params: &Params, d: LinearMap) -> Result<Reproduction> {
    let alg = catalog_algebra(id, params)?;
    Reproduction::build(id, params.clone(), alg, d)
}

impl Reproduction {
    /// Runs the pipeline on any algebra; `case_id` only labels the result.
    pub fn build(case_id: &str, params: Params, algebra: AlgebraSpec, d: LinearMap) -> Result<Self> {
        require_involutive(&algebra, &d)?;
        let bialgebra = Bialgebra::build(&algebra, &d)?;
        Ok(Reproduction { case_id: case_id.to_string(), params, algebra, witness: d, bialgebra })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Object {
    Mu,
    Delta,
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Object::Mu => "mu",
            Object::Delta => "delta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    Match,
    /// Printed value is the negative of the computed one.
    Sign,
    /// Same support shape but wrong coefficients, or an ill-formed wedge.
    Typo,
    /// Missing, extra or repeated entries.
    Structural,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Match => "match",
            Classification::Sign => "sign",
            Classification::Typo => "typo",
            Classification::Structural => "structural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyRecord {
    pub case_id: String,
    pub object: Object,
    /// `μ(a,b,c)` with increasing arguments, or `Δ(e)`.
    pub coordinate: String,
    /// Normal form of the computed value: the replacement for the printed one.
    pub computed: String,
    /// The printed right-hand side(s), verbatim; `(absent)` if not listed.
    pub printed: String,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyLedger {
    pub case_id: String,
    pub table: Option<String>,
    /// Why no comparison was made.
    pub skipped: Option<String>,
    pub records: Vec<DiscrepancyRecord>,
}

impl DiscrepancyLedger {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn of(&self, object: Object) -> impl Iterator<Item = &DiscrepancyRecord> {
        self.records.iter().filter(move |r| r.object == object)
    }
}

impl fmt::Display for DiscrepancyLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table.as_deref().unwrap_or("-");
        if let Some(why) = &self.skipped {
            return writeln!(f, "ledger {} ({table}): skipped, {why}", self.case_id);
        }
        writeln!(f, "ledger {} ({table}): {} record(s)", self.case_id, self.records.len())?;
        for r in &self.records {
            writeln!(
                f,
                "  [{}] {} {}: printed {} | computed {}",
                r.classification, r.object, r.coordinate, r.printed, r.computed
            )?;
        }
        Ok(())
    }
}

fn classify(computed_zero: bool, printed_zero: bool, negated: bool) -> Classification {
    if computed_zero || printed_zero {
        Classification::Structural
    } else if negated {
        Classification::Sign
    } else {
        Classification::Typo
    }
}

fn joined(lines: &[&PrintedLine]) -> String {
    if lines.is_empty() {
        "(absent)".to_string()
    } else {
        lines.iter().map(|l| l.source.as_str()).collect::<Vec<_>>().join(" ; ")
    }
}

fn eval_terms_vector(line: &PrintedLine, dim: usize, params: &Params) -> Result<Vector> {
    let mut v = zero_vector(dim);
    for t in &line.terms {
        v[t.factors[0]] += t.coeff.eval(&params.lookup())?;
    }
    Ok(v)
}

fn eval_terms_wedge(line: &PrintedLine, dim: usize, params: &Params) -> Result<Tensor> {
    let mut out = Tensor::zero(3, dim);
    for t in &line.terms {
        let c = t.coeff.eval(&params.lookup())?;
        let w = wedge3_basis(dim, t.factors[0], t.factors[1], t.factors[2]);
        out.add_assign(&w.scale(&c))?;
    }
    Ok(out)
}

/// Diffs a reproduction against a printed table.
pub fn compare_tables(rep: &Reproduction, table: &PrintedTable) -> Result<Vec<DiscrepancyRecord>> {
    let b = &rep.bialgebra.double;
    let labels = b.labels();
    let dim = b.dim();
    if table.dim * 2 != dim {
        return Err(Error::Shape(format!(
            "table {} is for dimension {}, case has dimension {}",
            table.id,
            table.dim,
            dim / 2
        )));
    }
    let record = |object, coordinate: String, computed, printed, classification| DiscrepancyRecord {
        case_id: rep.case_id.clone(),
        object,
        coordinate,
        computed,
        printed,
        classification,
    };
    let mut records = Vec::new();

    // Brackets, keyed by the increasing argument triple.
    let mut printed: BTreeMap<[usize; 3], (Vector, Vec<&PrintedLine>)> = BTreeMap::new();
    for line in &table.mu {
        let [i, j, k] = [line.args[0], line.args[1], line.args[2]];
        let Some((sign, key)) = sort_triple(i, j, k) else {
            let coord = format!("μ({},{},{})", labels[i], labels[j], labels[k]);
            records.push(record(Object::Mu, coord, "0".into(), line.source.clone(), Classification::Structural));
            continue;
        };
        let v = eval_terms_vector(line, dim, &rep.params)?;
        let slot = printed.entry(key).or_insert_with(|| (zero_vector(dim), Vec::new()));
        add_scaled(&mut slot.0, &int(sign.into()), &v);
        slot.1.push(line);
    }
    let mut keys: Vec<[usize; 3]> = b.constants().keys().copied().collect();
    keys.extend(printed.keys().copied());
    keys.sort_unstable();
    keys.dedup();
    for key in keys {
        let computed = b.bracket_basis(key[0], key[1], key[2]);
        let (value, lines) =
            printed.get(&key).map(|(v, l)| (v.clone(), l.clone())).unwrap_or_else(|| (zero_vector(dim), Vec::new()));
        let repeated = lines.len() > 1;
        if !repeated && value == computed {
            continue;
        }
        let negated = value.iter().zip(&computed).all(|(p, c)| *p == -c.clone());
        let class = if repeated {
            Classification::Structural
        } else {
            classify(computed.iter().all(Zero::is_zero), value.iter().all(Zero::is_zero), negated)
        };
        let coord = format!("μ({},{},{})", labels[key[0]], labels[key[1]], labels[key[2]]);
        records.push(record(Object::Mu, coord, fmt_vector(&computed, labels), joined(&lines), class));
    }

    // Coproduct images, in wedge normal form.
    let total = rep.bialgebra.total();
    for e in 0..dim {
        let computed = total.image(e);
        let lines: Vec<&PrintedLine> = table.delta.iter().filter(|l| l.args[0] == e).collect();
        let mut value = Tensor::zero(3, dim);
        for line in &lines {
            value.add_assign(&eval_terms_wedge(line, dim, &rep.params)?)?;
        }
        let ill_formed = lines.iter().any(|l| l.terms.iter().any(|t| t.is_ill_formed()));
        let repeated = lines.len() > 1;
        let (cw, pw) = (wedge_coordinates(computed), wedge_coordinates(&value));
        if !repeated && !ill_formed && cw == pw {
            continue;
        }
        let class = if repeated {
            Classification::Structural
        } else if ill_formed {
            Classification::Typo
        } else {
            classify(cw.is_empty(), pw.is_empty(), value.neg() == *computed)
        };
        records.push(record(
            Object::Delta,
            format!("Δ({})", labels[e]),
            fmt_wedge(computed, labels),
            joined(&lines),
            class,
        ));
    }
    Ok(records)
}

/// Diffs a reproduction against `table`, or records why nothing was compared.
pub fn ledger_for(rep: &Reproduction, table: Option<&PrintedTable>) -> Result<DiscrepancyLedger> {
    let mut ledger = DiscrepancyLedger {
        case_id: rep.case_id.clone(),
        table: table.map(|t| t.id.clone()),
        skipped: None,
        records: Vec::new(),
    };
    match table {
        Some(t) => ledger.records = compare_tables(rep, t)?,
        None => ledger.skipped = Some("no printed table".into()),
    }
    Ok(ledger)
}

/// Reproduces `id` and diffs it against its bundled table.
pub fn compare_with_printed(id: &str, params: &Params) -> Result<DiscrepancyLedger> {
    let info = case_info(id)?;
    let table = info.table.map(|t| &bundled_tables()[t]);
    let rep = match reproduce_case(id, params) {
        Ok(rep) => rep,
        Err(Error::Domain(msg)) if msg.starts_with("no diagonal witness") => {
            return Ok(DiscrepancyLedger {
                case_id: id.to_string(),
                table: info.table.map(str::to_string),
                skipped: Some(if table.is_some() { "no diagonal witness" } else { "no printed table" }.into()),
                records: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    ledger_for(&rep, table)
}
