//! Every check that applies to one (algebra, involutive derivation) pair.

use crate::algebra::{verify_o_operator, AlgebraSpec, Representation};
use crate::bialgebra::{coproduct_via_split, verify_cybe, verify_local_cocycle_bialgebra, Bialgebra};
use crate::derivation::{verify_involutive, verify_involutive_identity};
use crate::error::Result;
use crate::linalg::LinearMap;
use crate::prelie::{prelie_compatible, prelie_from_d, subadjacent, verify_d_isomorphism, verify_prelie};
use crate::report::Report;

/// Check names grouped in the order they run.
pub const STAGES: &[(&str, &[&str])] = &[
    ("involutive", &["involutive", "involutive-identity", "o-operator"]),
    ("prelie", &["prelie-D", "prelie-A", "subadjacent"]),
    ("isomorphism", &["d-isomorphism"]),
    ("cybe", &["cybe"]),
    ("bialgebra", &["routes", "local-cocycle-bialgebra"]),
];

/// Runs the whole chain for `d`: the involutive identity and the
/// O-operator property for the adjoint representation, both 3-pre-Lie
/// constructions, the isomorphism `D`, `[[r,r,r]] = 0`, agreement of the two
/// coproduct routes and the bialgebra axioms.
pub fn verify_pair(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    let mut report = Report::new(format!("pair {}", alg.name()));
    report.push_child(verify_involutive(alg, d)?);
    report.push_child(verify_involutive_identity(alg, d)?);
    report.push_child(verify_o_operator(alg, &Representation::adjoint(alg), d)?);

    let mut pd = verify_prelie(&prelie_from_d(alg, d)?);
    pd.check = "prelie-D".into();
    report.push_child(pd);
    let compatible = prelie_compatible(alg, d)?;
    let mut pa = verify_prelie(&compatible);
    pa.check = "prelie-A".into();
    report.push_child(pa);
    let mut sub = Report::new("subadjacent");
    sub.evaluated = 1;
    if subadjacent(&compatible)?.constants() != alg.constants() {
        sub.fail("sub-adjacent bracket differs from the original");
    }
    report.push_child(sub);

    report.push_child(verify_d_isomorphism(alg, d)?);

    let bi = Bialgebra::build(alg, d)?;
    report.push_child(verify_cybe(&bi.double, &bi.r)?);
    let split = coproduct_via_split(alg, d)?;
    let mut routes = Report::new("routes");
    for (k, (a, b)) in bi.delta.parts.iter().zip(&split.parts).enumerate() {
        for x in 0..a.dim() {
            routes.evaluated += 1;
            if a.image(x) != b.image(x) {
                routes.violate(
                    &format!("part{}", k + 1),
                    vec![x],
                    a.image(x).fmt_with(bi.labels()),
                    b.image(x).fmt_with(bi.labels()),
                );
            }
        }
    }
    report.push_child(routes);
    report.push_child(verify_local_cocycle_bialgebra(&bi.double, &bi.delta)?);
    Ok(report)
}

/// Whether every check of `stage` passed in a report from [`verify_pair`].
pub fn stage_passed(report: &Report, stage: &str) -> bool {
    STAGES
        .iter()
        .find(|(s, _)| *s == stage)
        .is_some_and(|(_, checks)| checks.iter().all(|c| report.child(c).is_some_and(|r| r.passed)))
}
