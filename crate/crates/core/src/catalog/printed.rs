//! Reader for the bundled expected tables (`tables.txt`).
//!
//! Basis tokens are `xi` (index `i-1`) and `xi*` (index `n+i-1`) in the double
//! space of an `n`-dimensional algebra. Coefficients are small expressions in
//! the case parameters, evaluated only when a table is compared.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

const BUNDLED: &str = include_str!("tables.txt");

/// Coefficient expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, var: &dyn Fn(&str) -> Option<Scalar>) -> Result<Scalar> {
        Ok(match self {
            Expr::Num(c) => c.clone(),
            Expr::Var(name) => var(name).ok_or_else(|| Error::Parameter(format!("unbound symbol `{name}`")))?,
            Expr::Neg(e) => -e.eval(var)?,
            Expr::Add(a, b) => a.eval(var)? + b.eval(var)?,
            Expr::Mul(a, b) => a.eval(var)? * b.eval(var)?,
        })
    }
}

/// `coeff · f₁∧…∧f_k` (k = 1 for brackets, 3 for coproduct images).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedTerm {
    pub coeff: Expr,
    pub factors: Vec<usize>,
}

impl PrintedTerm {
    /// A wedge with a repeated factor.
    pub fn is_ill_formed(&self) -> bool {
        let f = &self.factors;
        (0..f.len()).any(|i| f[i + 1..].contains(&f[i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedLine {
    /// 1-based line number in the source text.
    pub line: usize,
    /// Right-hand side as written.
    pub source: String,
    /// The bracket arguments, or the single element whose image is given.
    pub args: Vec<usize>,
    pub terms: Vec<PrintedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedTable {
    pub id: String,
    /// Dimension of the algebra; the double space has `2·dim`.
    pub dim: usize,
    pub mu: Vec<PrintedLine>,
    pub delta: Vec<PrintedLine>,
}

/// The bundled tables, keyed by id (`mu1`…`mu7`, `psi1`…`psi17`).
pub fn bundled_tables() -> &'static BTreeMap<String, PrintedTable> {
    static TABLES: OnceLock<BTreeMap<String, PrintedTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        parse_tables(BUNDLED).expect("bundled tables parse").into_iter().map(|t| (t.id.clone(), t)).collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Basis(usize, bool),
    Plus,
    Minus,
    LParen,
    RParen,
    Wedge,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '^' => {
                out.push(Tok::Wedge);
                i += 1;
            }
            '*' => {
                // Explicit product sign between coefficient atoms.
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(parse_scalar(&s).map_err(|m| err(line, m))?));
            }
            'x' if i + 1 < chars.len() && chars[i + 1].is_ascii_digit() => {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = chars[start..i].iter().collect::<String>().parse().unwrap();
                let star = i < chars.len() && chars[i] == '*';
                if star {
                    i += 1;
                }
                out.push(Tok::Basis(idx, star));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(err(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
    dim: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn basis(&mut self) -> Result<usize> {
        match self.next() {
            Some(Tok::Basis(i, star)) if i >= 1 && i <= self.dim => Ok(if star { self.dim + i - 1 } else { i - 1 }),
            Some(Tok::Basis(i, _)) => Err(err(self.line, format!("basis index {i} out of range"))),
            _ => Err(err(self.line, "expected a basis element")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(c)) => Ok(Expr::Num(c)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(self.line, "missing `)`")),
                }
            }
            _ => Err(err(self.line, "expected a coefficient")),
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)) {
            e = Expr::Mul(Box::new(e), Box::new(self.atom()?));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr> {
        let neg = self.eat_sign();
        let mut e = self.product()?;
        if neg {
            e = Expr::Neg(Box::new(e));
        }
        while let Some(Tok::Plus | Tok::Minus) = self.peek() {
            let neg = self.eat_sign();
            let rhs = self.product()?;
            e = Expr::Add(Box::new(e), Box::new(if neg { Expr::Neg(Box::new(rhs)) } else { rhs }));
        }
        Ok(e)
    }

    fn eat_sign(&mut self) -> bool {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn term(&mut self, arity: usize) -> Result<PrintedTerm> {
        let neg = self.eat_sign();
        let mut coeff = Expr::Num(Scalar::from_integer(1.into()));
        if !matches!(self.peek(), Some(Tok::Basis(..))) {
            coeff = self.product()?;
        }
        if neg {
            coeff = Expr::Neg(Box::new(coeff));
        }
        let mut factors = vec![self.basis()?];
        while let Some(Tok::Wedge) = self.peek() {
            self.pos += 1;
            factors.push(self.basis()?);
        }
        if factors.len() != arity {
            return Err(err(self.line, format!("expected {arity} factor(s) per term, found {}", factors.len())));
        }
        Ok(PrintedTerm { coeff, factors })
    }

    fn terms(&mut self, arity: usize) -> Result<Vec<PrintedTerm>> {
        if let [Tok::Num(c)] = self.toks {
            if c.is_zero() {
                return Ok(Vec::new());
            }
        }
        let mut terms = vec![self.term(arity)?];
        while self.peek().is_some() {
            if !matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
                return Err(err(self.line, "expected `+` or `-` between terms"));
            }
            terms.push(self.term(arity)?);
        }
        Ok(terms)
    }
}

fn parse_entry(dim: usize, args: &str, rhs: &str, line: usize, arity: usize) -> Result<PrintedLine> {
    let arg_toks = tokenize(args, line)?;
    let mut p = Parser { toks: &arg_toks, pos: 0, line, dim };
    let mut parsed_args = Vec::new();
    while p.peek().is_some() {
        parsed_args.push(p.basis()?);
    }
    let want = if arity == 1 { 3 } else { 1 };
    if parsed_args.len() != want {
        return Err(err(line, format!("expected {want} argument(s)")));
    }
    let rhs_toks = tokenize(rhs, line)?;
    let mut p = Parser { toks: &rhs_toks, pos: 0, line, dim };
    let terms = p.terms(arity)?;
    Ok(PrintedLine { line, source: rhs.trim().to_string(), args: parsed_args, terms })
}

/// Parses `table <id> dim <n>` blocks of `mu`/`delta` lines closed by `end`.
pub fn parse_tables(text: &str) -> Result<Vec<PrintedTable>> {
    let mut tables = Vec::new();
    let mut current: Option<PrintedTable> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(' ').unwrap_or((body, ""));
        match (head, current.as_mut()) {
            ("table", None) => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [id, "dim", n] = words.as_slice() else {
                    return Err(err(line, "expected `table <id> dim <n>`"));
                };
                let dim = n.parse().map_err(|_| err(line, "invalid dimension"))?;
                current = Some(PrintedTable { id: id.to_string(), dim, mu: Vec::new(), delta: Vec::new() });
            }
            ("end", Some(_)) => tables.push(current.take().unwrap()),
            ("mu" | "delta", Some(t)) => {
                let (args, rhs) = rest.split_once('=').ok_or_else(|| err(line, "expected `=`"))?;
                if head == "mu" {
                    t.mu.push(parse_entry(t.dim, args, rhs, line, 1)?);
                } else {
                    t.delta.push(parse_entry(t.dim, args, rhs, line, 3)?);
                }
            }
            ("table", Some(_)) => return Err(err(line, "missing `end` before `table`")),
            _ => return Err(err(line, format!("unexpected `{head}`"))),
        }
    }
    if current.is_some() {
        return Err(err(text.lines().count(), "missing `end`"));
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn vars(name: &str) -> Option<Scalar> {
        match name {
            "alpha" => Some(int(2)),
            "beta" => Some(int(3)),
            _ => None,
        }
    }

    #[test]
    fn bundled_tables_load() {
        let t = bundled_tables();
        assert_eq!(t.len(), 24);
        assert_eq!(t["mu1"].mu.len(), 4);
        assert_eq!(t["psi17"].dim, 5);
    }

    #[test]
    fn coefficients() {
        let t = parse_tables(
            "table a dim 5\nmu x3 x4 x5 = beta x2 + (1+beta) x3\ndelta x1* = -alpha x2*^x4*^x3* - 2 x1^x2^x3\nend\n",
        )
        .unwrap();
        let mu = &t[0].mu[0];
        assert_eq!(mu.args, vec![2, 3, 4]);
        assert_eq!(mu.terms[1].coeff.eval(&vars).unwrap(), int(4));
        let d = &t[0].delta[0];
        assert_eq!(d.args, vec![5]);
        assert_eq!(d.terms[0].factors, vec![6, 8, 7]);
        assert_eq!(d.terms[0].coeff.eval(&vars).unwrap(), int(-2));
        assert_eq!(d.terms[1].coeff.eval(&vars).unwrap(), int(-2));
    }

    #[test]
    fn ill_formed_wedge_is_kept() {
        let t = &bundled_tables()["mu2"];
        let line = t.delta.iter().find(|l| l.args == vec![1]).unwrap();
        assert_eq!(line.source, "x1^x3*^x1");
        assert!(line.terms[0].is_ill_formed());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_tables("table a dim 4\nmu x2 x3 = x1\nend").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, message: "expected 3 argument(s)".into() });
        let e = parse_tables("table a dim 4\ndelta x9 = 0\nend").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse_tables("table a dim 4\n").is_err());
    }
}
