//! Browser bindings. Each export takes and returns plain strings so the page
//! needs no glue beyond the generated module; errors come back as text
//! starting with `error:`.

use std::fmt::Write;

use lie3_core::bialgebra::{verify_local_cocycle_bialgebra, Bialgebra};
use lie3_core::catalog::{case_info, cases, catalog_algebra, compare_with_printed, Params};
use lie3_core::derivation::{search_involutive_diagonal, sign_pattern, verify_involutive};
use lie3_core::io::parse_algebra;
use lie3_core::pipeline::verify_pair;
use lie3_core::{AlgebraSpec, LinearMap};
use wasm_bindgen::prelude::*;

/// Case ids, one per line, as `id<TAB>dim<TAB>parameters`.
#[wasm_bindgen]
pub fn list_cases() -> String {
    let mut out = String::new();
    for c in cases() {
        writeln!(out, "{}\t{}\t{}", c.id, c.dim, c.params.join(",")).unwrap();
    }
    out
}

/// Diagonal involutive derivations of a catalog case as comma-separated
/// sign patterns, one per line.
#[wasm_bindgen]
pub fn case_witnesses(id: &str, params: &str) -> String {
    let result = (|| -> lie3_core::Result<String> {
        let alg = catalog_algebra(id, &parse_params(params)?)?;
        let mut out = String::new();
        for d in search_involutive_diagonal(&alg)? {
            writeln!(out, "{}", signs_csv(&sign_pattern(&d).unwrap())).unwrap();
        }
        Ok(out)
    })();
    result.unwrap_or_else(|e| format!("error: {e}"))
}

/// Full report for one catalog case: brackets, the coproduct for the chosen
/// witness (empty string: the first one found), every check, and the
/// discrepancy ledger against the bundled table.
#[wasm_bindgen]
pub fn run_case(id: &str, params: &str, witness: &str) -> String {
    let result = (|| -> lie3_core::Result<String> {
        let info = case_info(id)?;
        let params = parse_params(params)?;
        let alg = catalog_algebra(id, &params)?;
        let mut out = String::new();
        let d = if witness.trim().is_empty() {
            search_involutive_diagonal(&alg)?.into_iter().next()
        } else {
            Some(parse_signs(witness, alg.dim())?)
        };
        writeln!(out, "{} (dim {})", info.id, info.dim).unwrap();
        out.push_str(&pipeline_text(&alg, d.as_ref())?);
        out.push_str(&compare_with_printed(id, &params)?.to_string());
        Ok(out)
    })();
    result.unwrap_or_else(|e| format!("error: {e}"))
}

/// Parses an algebra file and runs every check for the given diagonal signs
/// (empty string: the first diagonal involutive derivation found).
#[wasm_bindgen]
pub fn check_algebra(text: &str, witness: &str) -> String {
    let result = (|| -> lie3_core::Result<String> {
        let alg = parse_algebra(text)?;
        let d = if witness.trim().is_empty() {
            search_involutive_diagonal(&alg)?.into_iter().next()
        } else {
            Some(parse_signs(witness, alg.dim())?)
        };
        pipeline_text(&alg, d.as_ref())
    })();
    result.unwrap_or_else(|e| format!("error: {e}"))
}

fn pipeline_text(alg: &AlgebraSpec, d: Option<&LinearMap>) -> lie3_core::Result<String> {
    let mut out = String::new();
    let filippov = alg.verify_filippov();
    out.push_str(&filippov.to_string());
    let Some(d) = d else {
        out.push_str("no diagonal involutive derivation\n");
        return Ok(out);
    };
    let involutive = verify_involutive(alg, d)?;
    if !involutive.passed || !filippov.passed {
        out.push_str(&involutive.to_string());
        return Ok(out);
    }
    writeln!(out, "witness diag({})", signs_csv(&sign_pattern(d).unwrap_or_default())).unwrap();
    let bi = Bialgebra::build(alg, d)?;
    writeln!(out, "r = {}", bi.r.fmt_with(bi.labels())).unwrap();
    out.push_str(&bi.total().fmt_wedge_table(bi.labels()));
    let report = match sign_pattern(d) {
        Some(_) => verify_pair(alg, d)?,
        None => verify_local_cocycle_bialgebra(&bi.double, &bi.delta)?,
    };
    out.push_str(&report.to_string());
    Ok(out)
}

fn parse_params(text: &str) -> lie3_core::Result<Params> {
    let mut p = Params::default();
    for kv in text.split([',', ' ', '\n']).filter(|s| !s.is_empty()) {
        p.assign(kv)?;
    }
    Ok(p)
}

fn parse_signs(text: &str, dim: usize) -> lie3_core::Result<LinearMap> {
    let signs: Vec<i8> = text
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(lie3_core::Error::Domain(format!("`{other}` is not a sign"))),
        })
        .collect::<Result<_, _>>()?;
    if signs.len() != dim {
        return Err(lie3_core::Error::Shape(format!("expected {dim} signs, got {}", signs.len())));
    }
    Ok(LinearMap::signs(&signs))
}

fn signs_csv(signs: &[i8]) -> String {
    signs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_every_case() {
        assert_eq!(list_cases().lines().count(), cases().len());
        assert!(list_cases().starts_with("4-b1\t4\t\n"));
    }

    #[test]
    fn witnesses_follow_parameters() {
        assert_eq!(case_witnesses("4-b1", "").lines().next(), Some("1,1,1,-1"));
        assert!(case_witnesses("5-d7", "s=0").starts_with("error: parameter error"));
        assert_eq!(case_witnesses("5-e1", ""), "");
    }

    #[test]
    fn case_report() {
        let out = run_case("4-b2", "", "");
        assert!(out.contains("ledger 4-b2 (mu2): 1 record(s)"));
        assert!(out.contains("dual-filippov: pass"));
        assert!(!out.contains("FAIL"));
        let out = run_case("5-psi5", "alpha=2", "1,1,1,-1,1");
        assert!(out.contains("ledger 5-psi5 (psi5): 2 record(s)"));
        assert!(run_case("4-b1", "", "1,1").starts_with("error: shape error"));
    }

    #[test]
    fn algebra_text() {
        let out = check_algebra("dim 4\nbracket 2 3 4 -> 1:1\n", "1,1,1,-1");
        assert!(out.contains("Δ(x2) = x1∧x3*∧x4*"));
        assert!(!out.contains("FAIL"));
        let out = check_algebra("dim 4\nbracket 2 3 4 -> 1:1\n", "1,1,1,1");
        assert!(out.contains("FAIL"));
        assert!(check_algebra("dim 4\nbracket 3 2 4 -> 1:1\n", "").contains("unordered triple"));
    }
}
