mod common;

use common::*;
use lie3_core::bialgebra::{semidirect, Bialgebra};
use lie3_core::catalog::printed::bundled_tables;
use lie3_core::catalog::*;
use lie3_core::derivation::{derivation_space, search_involutive_diagonal, sign_pattern};
use lie3_core::scalar::{int, one, ratio};
use lie3_core::{AlgebraSpec, Error, LinearMap};

/// (case, dim A¹, dim Z(A), dim Der(A), diagonal involutive derivations),
/// computed with an independent exact linear solver at default parameters.
const INVARIANTS: &[(&str, usize, usize, usize, usize)] = &[
    ("4-b1", 1, 1, 12, 6),
    ("4-b2", 1, 1, 9, 8),
    ("4-c1", 2, 0, 9, 4),
    ("4-c2", 2, 0, 9, 4),
    ("4-c3", 2, 0, 11, 8),
    ("4-d1", 3, 0, 7, 2),
    ("4-e1", 4, 0, 6, 4),
    ("5-b1", 1, 2, 17, 12),
    ("5-b2", 1, 2, 14, 16),
    ("5-c1", 2, 1, 13, 4),
    ("5-c2", 2, 0, 10, 6),
    ("5-c3", 2, 1, 12, 8),
    ("5-c4", 2, 0, 9, 4),
    ("5-c5", 2, 0, 10, 4),
    ("5-c6", 2, 0, 9, 4),
    ("5-c7", 2, 1, 14, 16),
    ("5-d1", 3, 1, 10, 6),
    ("5-d2", 3, 0, 10, 2),
    ("5-d3", 3, 0, 12, 6),
    ("5-d4", 3, 1, 9, 4),
    ("5-d5", 3, 0, 12, 8),
    ("5-d6", 3, 0, 18, 16),
    ("5-d7", 3, 0, 12, 4),
    ("5-e1", 4, 1, 8, 0),
    ("5-e2", 4, 1, 7, 0),
    ("5-psi5", 2, 1, 12, 8),
    ("5-psi16", 4, 1, 7, 8),
];

#[test]
fn frozen_invariants() {
    assert_eq!(INVARIANTS.len(), cases().len());
    for &(id, derived, center, der, witnesses) in INVARIANTS {
        let a = default_algebra(id);
        assert_eq!(a.derived_algebra().dim(), derived, "{id} A¹");
        assert_eq!(a.center().dim(), center, "{id} Z");
        assert_eq!(derivation_space(&a).len(), der, "{id} Der");
        assert_eq!(search_involutive_diagonal(&a).unwrap().len(), witnesses, "{id} witnesses");
    }
}

#[test]
fn b1_structure() {
    let a = default_algebra("4-b1");
    let expected = AlgebraSpec::from_brackets("b1", 4, &[([2, 3, 4], vec![(1, one())])]).unwrap();
    assert_eq!(a, expected);
}

#[test]
fn d7_structure() {
    let a = default_algebra("5-d7");
    let expected = AlgebraSpec::from_brackets(
        "d7",
        5,
        &[([1, 4, 5], vec![(2, one())]), ([2, 4, 5], vec![(3, one())]), ([3, 4, 5], vec![(1, one())])],
    )
    .unwrap();
    assert_eq!(a, expected);
}

#[test]
fn parameter_legality() {
    let zero_alpha = Params { alpha: int(0), ..Params::default() };
    for id in ["4-c2", "5-c5", "5-c6", "5-psi5"] {
        assert!(matches!(catalog_algebra(id, &zero_alpha), Err(Error::Parameter(_))), "{id}");
    }
    let zero_beta = Params { beta: int(0), ..Params::default() };
    assert!(matches!(catalog_algebra("5-d5", &zero_beta), Err(Error::Parameter(_))));
    let zero_s = Params { s: int(0), ..Params::default() };
    assert!(matches!(catalog_algebra("5-d7", &zero_s), Err(Error::Parameter(_))));
    assert!(matches!(catalog_algebra("6-a1", &Params::default()), Err(Error::Lookup(_))));
}

#[test]
fn parameters_enter_the_brackets() {
    let p = Params { alpha: ratio(-2, 3), ..Params::default() };
    let a = catalog_algebra("4-c2", &p).unwrap();
    assert_eq!(a.bracket_basis(1, 2, 3), vec![ratio(-2, 3), int(1), int(0), int(0)]);
    let p = Params { s: int(2), t: int(3), u: int(-1), ..Params::default() };
    let a = catalog_algebra("5-d7", &p).unwrap();
    assert_eq!(a.bracket_basis(2, 3, 4), vec![int(2), int(3), int(-1), int(0), int(0)]);
}

/// The bracket lists as written before correction are not 3-Lie algebras.
#[test]
fn corrected_cases_differ_from_failing_lists() {
    let listed = [
        ("4-d1", 4, vec![([2, 3, 4], 1), ([1, 3, 4], 2), ([1, 2, 3], 3)]),
        ("5-d2", 5, vec![([2, 3, 4], 1), ([3, 4, 5], 3)]),
    ];
    for (id, n, brackets) in listed {
        let bs: Vec<_> = brackets.iter().map(|(t, l)| (*t, vec![(*l, one())])).collect();
        let a = AlgebraSpec::from_brackets(id, n, &bs).unwrap();
        assert!(!a.verify_filippov().passed, "{id}");
        assert!(filippov_violation(&Dense::from_spec(&a)).is_some(), "{id}");
        assert!(case_info(id).unwrap().correction.is_some());
    }
    let c5 = AlgebraSpec::from_brackets(
        "c5",
        5,
        &[([2, 3, 4], vec![(1, one())]), ([2, 4, 5], vec![(1, one()), (2, one())])],
    )
    .unwrap();
    assert!(!c5.verify_filippov().passed);
}

#[test]
fn five_dim_hypothesis_filter() {
    for c in cases().iter().filter(|c| c.dim == 5) {
        assert!(fits_five_dim_filter(&default_algebra(c.id)), "{}", c.id);
    }
}

#[test]
fn every_four_dim_case_has_a_witness() {
    for c in cases().iter().filter(|c| c.dim == 4) {
        let rep = reproduce_case(c.id, &Params::default()).unwrap();
        assert!(rep.witness_signs().is_some());
    }
}

#[test]
fn b1_witness_is_the_pinned_split() {
    let rep = reproduce_case("4-b1", &Params::default()).unwrap();
    assert_eq!(rep.witness_signs(), Some(vec![1, 1, 1, -1]));
    let all = search_involutive_diagonal(&rep.algebra).unwrap();
    assert!(all.contains(&LinearMap::signs(&[1, 1, 1, -1])));
}

#[test]
fn e1_sixteen_brackets() {
    let b = semidirect(&default_algebra("4-e1"));
    assert_eq!(b.constants().len(), 16);
    let ledger = compare_with_printed("4-e1", &Params::default()).unwrap();
    assert_eq!(ledger.of(Object::Mu).count(), 0);
}

#[test]
fn b2_five_dim_table() {
    let rep = reproduce_case("5-b2", &Params::default()).unwrap();
    let b = &rep.bialgebra.double;
    let labels = b.labels();
    assert_eq!(b.fmt_vector(&b.bracket_basis(0, 1, 2)), "x1");
    assert_eq!(b.fmt_vector(&b.bracket_basis(0, 1, 5)), "-x3*");
    assert_eq!(b.fmt_vector(&b.bracket_basis(1, 2, 5)), "-x1*");
    assert_eq!(b.fmt_vector(&b.bracket_basis(0, 2, 5)), "x2*");
    assert_eq!(labels.len(), 10);
    assert!(compare_with_printed("5-b2", &Params::default()).unwrap().is_empty());
}

#[test]
fn mu_ledgers_empty_for_b1_and_c3() {
    for id in ["4-b1", "4-c3"] {
        let ledger = compare_with_printed(id, &Params::default()).unwrap();
        assert_eq!(ledger.of(Object::Mu).count(), 0, "{ledger}");
    }
}

/// Ledger sizes at default parameters; any change in the computation or the
/// bundled tables shows up here.
#[test]
fn frozen_ledger_sizes() {
    let expected: &[(&str, usize, usize)] = &[
        ("4-b2", 0, 1),
        ("4-e1", 0, 1),
        ("5-c4", 2, 0),
        ("5-c6", 2, 0),
        ("5-d1", 4, 4),
        ("5-d2", 1, 0),
        ("5-d3", 7, 5),
        ("5-d5", 3, 0),
        ("5-d7", 2, 0),
    ];
    for c in cases() {
        let ledger = compare_with_printed(c.id, &Params::default()).unwrap();
        let (mu, delta) = (ledger.of(Object::Mu).count(), ledger.of(Object::Delta).count());
        let want = expected.iter().find(|e| e.0 == c.id).map(|e| (e.1, e.2)).unwrap_or((0, 0));
        assert_eq!((mu, delta), want, "{}", c.id);
        for r in &ledger.records {
            assert!(!r.computed.is_empty());
            assert_ne!(r.classification, Classification::Match);
        }
    }
}

#[test]
fn d1_sign_records() {
    let ledger = compare_with_printed("5-d1", &Params::default()).unwrap();
    let r = &ledger.records[0];
    assert_eq!(r.coordinate, "μ(x2,x4,x5)");
    assert_eq!((r.printed.as_str(), r.computed.as_str()), ("x2", "-x2"));
    assert_eq!(r.classification, Classification::Sign);
}

#[test]
fn repeated_lines_are_structural() {
    let ledger = compare_with_printed("5-c6", &Params::default()).unwrap();
    assert!(ledger.records.iter().all(|r| r.classification == Classification::Structural && r.printed.contains(" ; ")));
    let ledger = compare_with_printed("4-e1", &Params::default()).unwrap();
    assert_eq!(ledger.records[0].coordinate, "Δ(x4*)");
}

#[test]
fn parameterized_tables_follow_parameters() {
    for (id, key) in [("4-c2", "alpha"), ("5-d5", "beta")] {
        for v in ["2", "-1/3", "7"] {
            let mut p = Params::default();
            p.assign(&format!("{key}={v}")).unwrap();
            let l = compare_with_printed(id, &p).unwrap();
            let l0 = compare_with_printed(id, &Params::default()).unwrap();
            assert_eq!(l.records.len(), l0.records.len(), "{id} {key}={v}");
        }
    }
    let p = Params { s: int(3), t: int(-2), u: ratio(1, 2), ..Params::default() };
    assert_eq!(compare_with_printed("5-d7", &p).unwrap().records.len(), 2);
}

/// Two images of the psi5 table carry alpha on the wrong term, which only
/// shows once alpha differs from 1.
#[test]
fn misplaced_alpha_needs_nondefault_parameter() {
    assert!(compare_with_printed("5-psi5", &Params::default()).unwrap().is_empty());
    let p = Params { alpha: int(2), ..Params::default() };
    let ledger = compare_with_printed("5-psi5", &p).unwrap();
    let coords: Vec<_> = ledger.records.iter().map(|r| (r.coordinate.as_str(), r.classification)).collect();
    assert_eq!(coords, vec![("Δ(x1)", Classification::Typo), ("Δ(x2)", Classification::Typo)]);
    assert_eq!(ledger.records[0].computed, "x2∧x3*∧x4*");
    assert_eq!(ledger.records[0].printed, "alpha x2^x3*^x4*");
}

#[test]
fn synthetic_algebra_has_no_table() {
    let alg = AlgebraSpec::abelian(3);
    let rep = Reproduction::build("abelian3", Params::default(), alg, LinearMap::identity(3)).unwrap();
    let ledger = ledger_for(&rep, None).unwrap();
    assert_eq!(ledger.skipped.as_deref(), Some("no printed table"));
    assert!(ledger.is_empty());
}

#[test]
fn no_witness_is_reported_not_raised() {
    match reproduce_case("5-e2", &Params::default()) {
        Err(Error::Domain(msg)) => assert!(msg.contains("no diagonal witness")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn witness_choice_does_not_change_coproduct_up_to_sign_of_d() {
    let alg = default_algebra("4-b1");
    let plus = Bialgebra::build(&alg, &LinearMap::signs(&[1, 1, 1, -1])).unwrap();
    let minus = Bialgebra::build(&alg, &LinearMap::signs(&[-1, -1, -1, 1])).unwrap();
    assert_eq!(plus.r, minus.r.neg());
    assert_eq!(plus.total(), minus.total());
}

#[test]
fn bundled_tables_cover_the_catalog() {
    let used: Vec<&str> = cases().iter().filter_map(|c| c.table).collect();
    let mut ids: Vec<&str> = bundled_tables().keys().map(String::as_str).collect();
    ids.sort_unstable();
    let mut used_sorted = used.clone();
    used_sorted.sort_unstable();
    assert_eq!(ids, used_sorted);
    for c in cases() {
        if let Some(w) = c.witness {
            let alg = default_algebra(c.id);
            assert_eq!(sign_pattern(&LinearMap::signs(w)).as_deref(), Some(w));
            assert!(search_involutive_diagonal(&alg).unwrap().contains(&LinearMap::signs(w)));
        }
    }
}

#[test]
fn ledger_sizes_do_not_depend_on_the_witness() {
    let p = Params::default();
    for c in cases() {
        let Some(table) = c.table.map(|t| &bundled_tables()[t]) else { continue };
        let base = compare_with_printed(c.id, &p).unwrap().records.len();
        for d in search_involutive_diagonal(&default_algebra(c.id)).unwrap() {
            let rep = reproduce_with(c.id, &p, d).unwrap();
            assert_eq!(ledger_for(&rep, Some(table)).unwrap().records.len(), base, "{}", c.id);
        }
    }
}
