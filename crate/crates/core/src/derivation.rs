//! Derivations, involutive derivations and their eigenspace splits.

use num_traits::{One, Zero};

use crate::algebra::AlgebraSpec;
use crate::error::{domain, shape, Error, Result};
use crate::linalg::{nullspace, LinearMap, Subspace};
use crate::report::Report;
use crate::scalar::{add_scaled, basis_vector, int, zero_vector, Scalar, Vector};

/// Largest dimension accepted by [`search_involutive_diagonal`].
pub const DIAGONAL_SEARCH_LIMIT: usize = 24;

/// The ±1 eigenspaces of an involutive derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSplit {
    pub plus: Subspace,
    pub minus: Subspace,
}

impl EigenSplit {
    /// Eigenvalue (±1) of each basis vector of `plus` followed by `minus`,
    /// paired with the vector.
    pub fn eigenbasis(&self) -> Vec<(i8, Vector)> {
        self.plus
            .basis()
            .iter()
            .map(|v| (1, v.clone()))
            .chain(self.minus.basis().iter().map(|v| (-1, v.clone())))
            .collect()
    }
}

fn check_square(alg: &AlgebraSpec, d: &LinearMap) -> Result<()> {
    let n = alg.dim();
    if d.codomain_dim() != n || d.domain_dim() != n {
        return Err(shape(format!("map is {}x{}, algebra has dimension {n}", d.codomain_dim(), d.domain_dim())));
    }
    Ok(())
}

/// Checks `D[x_i,x_j,x_k] = [Dx_i,x_j,x_k] + [x_i,Dx_j,x_k] + [x_i,x_j,Dx_k]`
/// for all `i<j<k`.
pub fn verify_derivation(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    check_square(alg, d)?;
    let n = alg.dim();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    let mut report = Report::new("derivation");
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                report.evaluated += 1;
                let (xi, xj, xk) = (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                let lhs = d.apply_unchecked(&alg.bracket_basis(i, j, k));
                let mut rhs = alg.br(&images[i], &xj, &xk);
                add_scaled(&mut rhs, &Scalar::one(), &alg.br(&xi, &images[j], &xk));
                add_scaled(&mut rhs, &Scalar::one(), &alg.br(&xi, &xj, &images[k]));
                if lhs != rhs {
                    report.violate("derivation", vec![i, j, k], alg.fmt_vector(&lhs), alg.fmt_vector(&rhs));
                }
            }
        }
    }
    Ok(report)
}

/// A basis of `Der(A)`: the RREF basis, over row-major matrix coordinates, of
/// the solution space of the derivation law.
pub fn derivation_space(alg: &AlgebraSpec) -> Vec<LinearMap> {
    let n = alg.dim();
    let var = |row: usize, col: usize| row * n + col;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // One equation per output coordinate m.
                let mut eqs = vec![zero_vector(n * n); n];
                for (l, c) in alg.basis_bracket(i, j, k) {
                    for (m, eq) in eqs.iter_mut().enumerate() {
                        eq[var(m, *l)] += c;
                    }
                }
                for l in 0..n {
                    for (m, c) in alg.basis_bracket(l, j, k) {
                        eqs[*m][var(l, i)] -= c;
                    }
                    for (m, c) in alg.basis_bracket(i, l, k) {
                        eqs[*m][var(l, j)] -= c;
                    }
                    for (m, c) in alg.basis_bracket(i, j, l) {
                        eqs[*m][var(l, k)] -= c;
                    }
                }
                rows.extend(eqs.into_iter().filter(|e| e.iter().any(|x| !x.is_zero())));
            }
        }
    }
    let space = Subspace::span(n * n, nullspace(&rows, n * n));
    space.basis().iter().map(|v| LinearMap::from_flat(n, v).expect("flat length is n*n")).collect()
}

/// Passes iff `D` is a derivation and `D·D = I` exactly.
pub fn verify_involutive(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    let mut report = Report::new("involutive");
    report.push_child(verify_derivation(alg, d)?);
    let sq = d.compose(d)?;
    let mut square = Report::new("square-is-identity");
    square.evaluated = 1;
    if !sq.is_identity() {
        square.fail(format!("D^2 = [{}]", sq.fmt_rows()));
    }
    report.push_child(square);
    Ok(report)
}

pub(crate) fn require_involutive(alg: &AlgebraSpec, d: &LinearMap) -> Result<()> {
    let report = verify_involutive(alg, d)?;
    if report.passed {
        Ok(())
    } else {
        let which = report.failing_children().join(", ");
        Err(domain(format!("D is not an involutive derivation ({which} failed)")))
    }
}

/// `A₁ = ker(D − I)` and `A₋₁ = ker(D + I)`.
pub fn eigensplit(alg: &AlgebraSpec, d: &LinearMap) -> Result<EigenSplit> {
    require_involutive(alg, d)?;
    let n = alg.dim();
    let id = LinearMap::identity(n);
    let plus = Subspace::span(n, nullspace(d.sub(&id)?.rows(), n));
    let minus = Subspace::span(n, nullspace(d.add(&id)?.rows(), n));
    if plus.dim() + minus.dim() != n {
        return Err(domain("eigenspaces of D do not span the algebra"));
    }
    for (name, part) in [("A_1", &plus), ("A_-1", &minus)] {
        if !alg.is_abelian_on(part) {
            return Err(domain(format!("{name} is not an abelian subalgebra")));
        }
    }
    Ok(EigenSplit { plus, minus })
}

/// Sign patterns ε for which `diag(ε)` is a derivation: for every nonzero
/// structure constant `c_{ijk}^m`, `ε_m = ε_i + ε_j + ε_k`.
fn diagonal_admissible(alg: &AlgebraSpec, eps: &[i8]) -> bool {
    alg.constants().iter().all(|(&[i, j, k], v)| {
        let s = eps[i] + eps[j] + eps[k];
        v.iter().enumerate().all(|(m, c)| c.is_zero() || eps[m] == s)
    })
}

/// All diagonal ±1 involutive derivations, in lexicographic sign order with
/// +1 before −1 and the first coordinate most significant.
pub fn search_involutive_diagonal(alg: &AlgebraSpec) -> Result<Vec<LinearMap>> {
    let n = alg.dim();
    if n > DIAGONAL_SEARCH_LIMIT {
        return Err(Error::Capacity(format!(
            "diagonal search is limited to dimension {DIAGONAL_SEARCH_LIMIT}, got {n}"
        )));
    }
    let mut found = Vec::new();
    let mut eps = vec![1i8; n];
    for mask in 0u32..(1u32 << n) {
        for (i, e) in eps.iter_mut().enumerate() {
            *e = if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 };
        }
        if diagonal_admissible(alg, &eps) {
            let d = LinearMap::signs(&eps);
            debug_assert!(verify_involutive(alg, &d).map(|r| r.passed).unwrap_or(false));
            found.push(d);
        }
    }
    Ok(found)
}

/// Checks `[Dx,Dy,Dz] = D([Dx,Dy,z] + [Dy,Dz,x] + [Dz,Dx,y])` on all basis triples.
pub fn verify_involutive_identity(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    check_square(alg, d)?;
    let n = alg.dim();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    let mut report = Report::new("involutive-identity");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                report.evaluated += 1;
                let (dx, dy, dz) = (&images[x], &images[y], &images[z]);
                let lhs = alg.br(dx, dy, dz);
                let mut inner = alg.br(dx, dy, &basis_vector(n, z));
                add_scaled(&mut inner, &int(1), &alg.br(dy, dz, &basis_vector(n, x)));
                add_scaled(&mut inner, &int(1), &alg.br(dz, dx, &basis_vector(n, y)));
                let rhs = d.apply_unchecked(&inner);
                if lhs != rhs {
                    report.violate("involutive-identity", vec![x, y, z], alg.fmt_vector(&lhs), alg.fmt_vector(&rhs));
                }
            }
        }
    }
    Ok(report)
}

/// Sign pattern of a diagonal ±1 map, if it is one.
pub fn sign_pattern(d: &LinearMap) -> Option<Vec<i8>> {
    let diag = d.as_diagonal()?;
    diag.iter()
        .map(|x| {
            if x.is_one() {
                Some(1)
            } else if (-x).is_one() {
                Some(-1)
            } else {
                None
            }
        })
        .collect()
}
