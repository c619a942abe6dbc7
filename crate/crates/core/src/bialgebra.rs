//! The semidirect product `A ⋉ A*`, the tensor `r` built from an involutive
//! derivation, the ternary Yang-Baxter bracket `[[r,r,r]]`, and the coproduct
//! `Δ = Δ₁ + Δ₂ + Δ₃` with its cocycle and dual-algebra checks.
//!
//! Indices `0..n` of the double space are `x_1..x_n`, indices `n..2n` are
//! `x_1*..x_n*`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, Representation};
use crate::derivation::{require_involutive, sign_pattern};
use crate::error::{domain, shape, Result};
use crate::linalg::LinearMap;
use crate::report::Report;
use crate::scalar::{int, support, zero_vector, Scalar, Vector};
use crate::tensor::{fmt_wedge, wedge_coordinates, Tensor};

/// Labels `x1..xn, x1*..xn*` for the double space of `alg`.
pub fn double_labels(alg: &AlgebraSpec) -> Vec<String> {
    let mut labels = alg.labels().to_vec();
    labels.extend(alg.labels().iter().map(|l| format!("{l}*")));
    labels
}

/// `ad*(x_i,x_j) = −ad(x_i,x_j)ᵀ` acting on `A*`.
pub fn coadjoint(alg: &AlgebraSpec) -> Representation {
    let n = alg.dim();
    let mut rho = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            rho.insert((i, j), alg.ad_basis(i, j).transpose().neg());
        }
    }
    Representation::new(n, n, rho).expect("coadjoint maps are well formed")
}

/// `A ⋉_{ad*} A*`: the bracket of `A`, `μ(x_i,x_j,ξ) = ad*(x_i,x_j)ξ`, and zero
/// whenever two or more arguments lie in `A*`.
pub fn semidirect(alg: &AlgebraSpec) -> AlgebraSpec {
    let n = alg.dim();
    let mut constants: BTreeMap<[usize; 3], Vector> = BTreeMap::new();
    for (&[i, j, k], v) in alg.constants() {
        let mut w = zero_vector(2 * n);
        w[..n].clone_from_slice(v);
        constants.insert([i, j, k], w);
    }
    let dual = coadjoint(alg);
    for i in 0..n {
        for j in i + 1..n {
            let m = dual.rho_basis(i, j);
            for xi in 0..n {
                let col = m.column(xi);
                if col.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut w = zero_vector(2 * n);
                w[n..].clone_from_slice(&col);
                constants.insert([i, j, n + xi], w);
            }
        }
    }
    AlgebraSpec::new(format!("{}-semidirect", alg.name()), double_labels(alg), constants)
        .expect("semidirect constants are well formed")
}

/// `r = Σ x_i*⊗Dx_i − Σ Dx_i⊗x_i*` in `B⊗B`.
pub fn r_from_d(alg: &AlgebraSpec, d: &LinearMap) -> Result<Tensor> {
    require_involutive(alg, d)?;
    let n = alg.dim();
    let mut r = Tensor::zero(2, 2 * n);
    for i in 0..n {
        for (l, c) in support(&d.column(i)) {
            r.add_term(vec![n + i, l], c.clone());
            r.add_term(vec![l, n + i], -c);
        }
    }
    Ok(r)
}

/// `[[r,r,r]]`, expanded from the monomials `r = Σ c_a e_{p_a}⊗e_{q_a}`:
/// `Σ [x_i,x_j,x_k]⊗y_i⊗y_j⊗y_k + x_i⊗[y_i,x_j,x_k]⊗y_j⊗y_k
///  + x_i⊗x_j⊗[y_i,y_j,x_k]⊗y_k + x_i⊗x_j⊗x_k⊗[y_i,y_j,y_k]`.
pub fn cybe_bracket(b: &AlgebraSpec, r: &Tensor) -> Result<Tensor> {
    if r.rank() != 2 || r.dim() != b.dim() {
        return Err(shape(format!("r must be a rank-2 tensor over dimension {}", b.dim())));
    }
    let mono: Vec<(usize, usize, Scalar)> = r.entries().map(|(k, c)| (k[0], k[1], c.clone())).collect();
    let mut out = Tensor::zero(4, b.dim());
    for (xi, yi, ci) in &mono {
        for (xj, yj, cj) in &mono {
            let cij = ci * cj;
            for (xk, yk, ck) in &mono {
                let c = &cij * ck;
                for (l, v) in b.basis_bracket(*xi, *xj, *xk) {
                    out.add_term(vec![*l, *yi, *yj, *yk], &c * v);
                }
                for (l, v) in b.basis_bracket(*yi, *xj, *xk) {
                    out.add_term(vec![*xi, *l, *yj, *yk], &c * v);
                }
                for (l, v) in b.basis_bracket(*yi, *yj, *xk) {
                    out.add_term(vec![*xi, *xj, *l, *yk], &c * v);
                }
                for (l, v) in b.basis_bracket(*yi, *yj, *yk) {
                    out.add_term(vec![*xi, *xj, *xk, *l], &c * v);
                }
            }
        }
    }
    Ok(out)
}

/// Passes iff `[[r,r,r]]` is exactly zero; lists up to ten nonzero coordinates.
pub fn verify_cybe(b: &AlgebraSpec, r: &Tensor) -> Result<Report> {
    let t = cybe_bracket(b, r)?;
    let mut report = Report::new("cybe");
    report.evaluated = b.dim().pow(4);
    if t.is_zero() {
        report.note("[[r,r,r]] = 0");
    } else {
        report.fail(format!("[[r,r,r]] has {} nonzero coordinates", t.nnz()));
        for (idx, c) in t.entries().take(10) {
            report.violate("cybe", idx.clone(), crate::scalar::fmt_scalar(c), "0");
        }
    }
    Ok(report)
}

/// A linear map `B → B⊗B⊗B`, stored as the image of each basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    dim: usize,
    images: Vec<Tensor>,
}

impl Coproduct {
    pub fn zero(dim: usize) -> Self {
        Coproduct { dim, images: vec![Tensor::zero(3, dim); dim] }
    }

    pub fn from_images(images: Vec<Tensor>) -> Result<Self> {
        let dim = images.len();
        if images.iter().any(|t| t.rank() != 3 || t.dim() != dim) {
            return Err(shape("coproduct images must be rank-3 tensors over the same space"));
        }
        Ok(Coproduct { dim, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, i: usize) -> &Tensor {
        &self.images[i]
    }

    pub fn images(&self) -> &[Tensor] {
        &self.images
    }

    pub fn set_image(&mut self, i: usize, t: Tensor) -> Result<()> {
        if t.rank() != 3 || t.dim() != self.dim || i >= self.dim {
            return Err(shape("coproduct image does not fit"));
        }
        self.images[i] = t;
        Ok(())
    }

    pub fn add(&self, other: &Coproduct) -> Result<Coproduct> {
        if self.dim != other.dim {
            return Err(shape("coproducts over different spaces"));
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Coproduct { dim: self.dim, images })
    }

    /// Applies a slot permutation to every image.
    pub fn permute(&self, p: usize, q: usize) -> Result<Coproduct> {
        let images = self.images.iter().map(|t| t.permute_factors(p, q)).collect::<Result<Vec<_>>>()?;
        Ok(Coproduct { dim: self.dim, images })
    }

    /// `Δ(v)` for a general vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Tensor> {
        if v.len() != self.dim {
            return Err(shape("argument has the wrong dimension"));
        }
        let mut out = Tensor::zero(3, self.dim);
        for (i, c) in support(v) {
            out.add_assign(&self.images[i].scale(c))?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Tensor::is_zero)
    }

    /// Indices whose image is not alternating.
    pub fn non_alternating(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.alternating_part().map(|(_, ok)| ok).unwrap_or(false))
            .map(|(i, _)| i)
            .collect()
    }

    /// One line per basis vector, `Δ(x) = ...` in wedge normal form.
    pub fn fmt_wedge_table(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, t) in self.images.iter().enumerate() {
            out.push_str(&format!("Δ({}) = {}\n", labels[i], fmt_wedge(t, labels)));
        }
        out
    }
}

/// `Δ₁`, `Δ₂ = φ₁₃φ₁₂Δ₁` and `Δ₃ = φ₁₂φ₁₃Δ₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductParts {
    pub parts: [Coproduct; 3],
}

impl CoproductParts {
    /// Completes `Δ₁` with the two permuted parts.
    pub fn from_first(delta1: Coproduct) -> Result<Self> {
        let delta2 = delta1.permute(1, 2)?.permute(1, 3)?;
        let delta3 = delta1.permute(1, 3)?.permute(1, 2)?;
        Ok(CoproductParts { parts: [delta1, delta2, delta3] })
    }

    pub fn zero(dim: usize) -> Self {
        CoproductParts { parts: [Coproduct::zero(dim), Coproduct::zero(dim), Coproduct::zero(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim()
    }

    pub fn total(&self) -> Coproduct {
        self.parts[0].add(&self.parts[1]).and_then(|s| s.add(&self.parts[2])).expect("parts share one space")
    }
}

/// `Δ₁(x) = Σ_{a,b} μ(x, u_a, u_b)⊗v_b⊗v_a` for `r = Σ_a u_a⊗v_a`.
pub fn coproduct_from_r(b: &AlgebraSpec, r: &Tensor) -> Result<CoproductParts> {
    if r.rank() != 2 || r.dim() != b.dim() {
        return Err(shape("r must be a rank-2 tensor over the algebra"));
    }
    if r.permute_factors(1, 2)? != r.neg() {
        return Err(domain("r is not skew-symmetric"));
    }
    if !verify_cybe(b, r)?.passed {
        return Err(domain("r does not solve [[r,r,r]] = 0"));
    }
    Ok(coproduct_from_r_unchecked(b, r))
}

pub(crate) fn coproduct_from_r_unchecked(b: &AlgebraSpec, r: &Tensor) -> CoproductParts {
    let dim = b.dim();
    let mono: Vec<(usize, usize, Scalar)> = r.entries().map(|(k, c)| (k[0], k[1], c.clone())).collect();
    let mut images = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut t = Tensor::zero(3, dim);
        for (ua, va, ca) in &mono {
            for (ub, vb, cb) in &mono {
                let entry = b.basis_bracket(x, *ua, *ub);
                if entry.is_empty() {
                    continue;
                }
                let c = ca * cb;
                for (l, m) in entry {
                    t.add_term(vec![*l, *vb, *va], &c * m);
                }
            }
        }
        images.push(t);
    }
    let delta1 = Coproduct { dim, images };
    CoproductParts::from_first(delta1).expect("rank-3 images")
}

/// A factor of one term in the twelve-sum expansion of `Δ₁` over an eigenbasis.
#[derive(Clone, Copy)]
enum F {
    /// `x_i` or `x_j`.
    X(Idx),
    /// `x_i*` or `x_j*`.
    Star(Idx),
}

#[derive(Clone, Copy)]
enum Idx {
    I,
    J,
}

#[derive(Clone, Copy, PartialEq)]
enum Part {
    P,
    M,
}

/// `(range of i, range of j, sign, μ args, second factor, third factor)` for
/// `μ(x, a, b)⊗c⊗d`; the sign collects every minus sign of the term.
const SPLIT_TERMS: [(Part, Part, i64, F, F, F, F); 12] = {
    use Idx::{I, J};
    use Part::{M, P};
    use F::{Star, X};
    [
        // μ(x,x_i*,−x_j)⊗x_j*⊗x_i
        (P, P, -1, Star(I), X(J), Star(J), X(I)),
        // μ(x,x_i*,x_j)⊗x_j*⊗x_i
        (P, M, 1, Star(I), X(J), Star(J), X(I)),
        // μ(x,x_i*,−x_j)⊗x_j*⊗(−x_i)
        (M, P, 1, Star(I), X(J), Star(J), X(I)),
        // μ(x,x_i*,x_j)⊗x_j*⊗(−x_i)
        (M, M, -1, Star(I), X(J), Star(J), X(I)),
        // μ(x,−x_i,x_j*)⊗x_j⊗x_i*
        (P, P, -1, X(I), Star(J), X(J), Star(I)),
        // μ(x,−x_i,x_j*)⊗(−x_j)⊗x_i*
        (P, M, 1, X(I), Star(J), X(J), Star(I)),
        // μ(x,x_i,x_j*)⊗x_j⊗x_i*
        (M, P, 1, X(I), Star(J), X(J), Star(I)),
        // μ(x,x_i,x_j*)⊗(−x_j)⊗x_i*
        (M, M, -1, X(I), Star(J), X(J), Star(I)),
        // μ(x,x_i,x_j)⊗x_j*⊗x_i*
        (P, P, 1, X(I), X(J), Star(J), Star(I)),
        // μ(x,x_i,−x_j)⊗x_j*⊗x_i*
        (P, M, -1, X(I), X(J), Star(J), Star(I)),
        // μ(x,−x_i,x_j)⊗x_j*⊗x_i*
        (M, P, -1, X(I), X(J), Star(J), Star(I)),
        // μ(x,x_i,x_j)⊗x_j*⊗x_i*
        (M, M, 1, X(I), X(J), Star(J), Star(I)),
    ]
};

/// `Δ₁` by the twelve-sum expansion over the ±1 eigenbasis of a diagonal
/// involutive derivation, without forming `r`.
pub fn coproduct_via_split(alg: &AlgebraSpec, d: &LinearMap) -> Result<CoproductParts> {
    require_involutive(alg, d)?;
    let Some(eps) = sign_pattern(d) else {
        return Err(domain("the split expansion needs D diagonal in the given basis"));
    };
    let n = alg.dim();
    let b = semidirect(alg);
    let part_of = |i: usize| if eps[i] > 0 { Part::P } else { Part::M };
    let index = |f: F, i: usize, j: usize| match f {
        F::X(Idx::I) => i,
        F::X(Idx::J) => j,
        F::Star(Idx::I) => n + i,
        F::Star(Idx::J) => n + j,
    };
    let mut images = Vec::with_capacity(2 * n);
    for x in 0..2 * n {
        let mut t = Tensor::zero(3, 2 * n);
        for &(pi, pj, sign, fa, fb, fc, fd) in &SPLIT_TERMS {
            for i in (0..n).filter(|&i| part_of(i) == pi) {
                for j in (0..n).filter(|&j| part_of(j) == pj) {
                    let (a, bb) = (index(fa, i, j), index(fb, i, j));
                    let (c, dd) = (index(fc, i, j), index(fd, i, j));
                    for (l, m) in b.basis_bracket(x, a, bb) {
                        t.add_term(vec![*l, c, dd], m * int(sign));
                    }
                }
            }
        }
        images.push(t);
    }
    CoproductParts::from_first(Coproduct { dim: 2 * n, images })
}

/// Checks `f(μ(a,b,c)) = ρ(a,b)f(c) + ρ(b,c)f(a) + ρ(c,a)f(b)` where `ρ`
/// acts by `ad` on the given tensor slot, on basis triples `a<b<c`. Both sides
/// are alternating in `(a,b,c)`, so the remaining triples add nothing.
pub fn verify_cocycle(b: &AlgebraSpec, part: &Coproduct, slot: usize) -> Result<Report> {
    if !(1..=3).contains(&slot) {
        return Err(shape(format!("slot must be 1, 2 or 3, got {slot}")));
    }
    if part.dim() != b.dim() {
        return Err(shape("coproduct and algebra have different dimensions"));
    }
    let dim = b.dim();
    let act = |x: usize, y: usize, t: &Tensor| t.map_slot(slot, |l| b.bracket_basis(x, y, l));
    let mut report = Report::new(format!("cocycle{slot}"));
    for x in 0..dim {
        for y in x + 1..dim {
            for z in y + 1..dim {
                report.evaluated += 1;
                let lhs = part.apply(&b.bracket_basis(x, y, z))?;
                let mut rhs = act(x, y, part.image(z))?;
                rhs.add_assign(&act(y, z, part.image(x))?)?;
                rhs.add_assign(&act(z, x, part.image(y))?)?;
                if lhs != rhs {
                    let labels = b.labels();
                    report.violate(
                        &format!("cocycle{slot}"),
                        vec![x, y, z],
                        lhs.fmt_with(labels),
                        rhs.fmt_with(labels),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Labels of the dual space of `B`: `x_i ↦ x_i*`, `x_i* ↦ x_i`.
fn dual_labels(labels: &[String]) -> Vec<String> {
    labels
        .iter()
        .map(|l| match l.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{l}*"),
        })
        .collect()
}

/// The bracket on `B*` with `⟨[e^a,e^b,e^c], x⟩ = ⟨e^a⊗e^b⊗e^c, Δx⟩`.
pub fn dual_bracket(delta: &Coproduct, labels: &[String]) -> Result<AlgebraSpec> {
    let bad = delta.non_alternating();
    if !bad.is_empty() {
        let names: Vec<&str> = bad.iter().map(|&i| labels[i].as_str()).collect();
        return Err(domain(format!("coproduct images are not alternating at {}", names.join(", "))));
    }
    let dim = delta.dim();
    let mut constants: BTreeMap<[usize; 3], Vector> = BTreeMap::new();
    for (x, t) in delta.images().iter().enumerate() {
        for (key, c) in wedge_coordinates(t) {
            constants.entry(key).or_insert_with(|| zero_vector(dim))[x] = c;
        }
    }
    AlgebraSpec::new("dual", dual_labels(labels), constants)
}

/// Δ of `A*` lands in `(A*)⊗³`; every monomial of Δ of `A` has exactly one factor in `A`.
pub fn verify_coproduct_pattern(delta: &Coproduct) -> Report {
    let n = delta.dim() / 2;
    let mut report = Report::new("pattern");
    for (x, t) in delta.images().iter().enumerate() {
        let want = usize::from(x < n);
        for (idx, _) in t.entries() {
            report.evaluated += 1;
            let unstarred = idx.iter().filter(|&&i| i < n).count();
            if unstarred != want {
                report.violate(
                    "pattern",
                    vec![x, idx[0], idx[1], idx[2]],
                    format!("{unstarred} factors in A"),
                    format!("{want} factors in A"),
                );
            }
        }
    }
    report
}

/// Filippov identity on `B`, the three cocycle conditions, alternation of
/// every image, and the Filippov identity of the dual bracket.
pub fn verify_local_cocycle_bialgebra(b: &AlgebraSpec, delta: &CoproductParts) -> Result<Report> {
    if delta.dim() != b.dim() {
        return Err(shape("coproduct and algebra have different dimensions"));
    }
    let mut report = Report::new("local-cocycle-bialgebra");
    report.push_child(b.verify_filippov());
    for (k, part) in delta.parts.iter().enumerate() {
        report.push_child(verify_cocycle(b, part, k + 1)?);
    }
    let total = delta.total();
    let mut alt = Report::new("alternating");
    alt.evaluated = total.dim();
    for x in total.non_alternating() {
        alt.violate("alternating", vec![x], total.image(x).fmt_with(b.labels()), "its alternating part");
    }
    report.push_child(alt);
    match dual_bracket(&total, b.labels()) {
        Ok(dual) => {
            let mut r = dual.verify_filippov();
            r.check = "dual-filippov".into();
            report.push_child(r);
        }
        Err(e) => {
            let mut r = Report::new("dual-filippov");
            r.fail(format!("dual bracket undefined: {e}"));
            report.push_child(r);
        }
    }
    Ok(report)
}

/// The whole pipeline for one involutive derivation.
#[derive(Debug, Clone)]
pub struct Bialgebra {
    pub double: AlgebraSpec,
    pub r: Tensor,
    pub delta: CoproductParts,
}

impl Bialgebra {
    pub fn build(alg: &AlgebraSpec, d: &LinearMap) -> Result<Self> {
        let double = semidirect(alg);
        let r = r_from_d(alg, d)?;
        let delta = coproduct_from_r(&double, &r)?;
        Ok(Bialgebra { double, r, delta })
    }

    pub fn labels(&self) -> &[String] {
        self.double.labels()
    }

    pub fn total(&self) -> Coproduct {
        self.delta.total()
    }
}

/// Whether every `ρ(x_i, x_j)` is zero.
pub fn is_trivial(rep: &Representation) -> bool {
    let n = rep.algebra_dim();
    (0..n).all(|i| (i + 1..n).all(|j| rep.rho_basis(i, j).is_zero()))
}
