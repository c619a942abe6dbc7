//! 3-Lie algebras given by structure constants.
//!
//! Structure constants are stored only for strictly increasing index triples
//! `i<j<k`; every other ordering is derived from the permutation sign, so the
//! bracket is totally antisymmetric by construction and two algebras are equal
//! exactly when their stored constants are.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{shape, Error, Result};
use crate::linalg::{nullspace, LinearMap, Subspace};
use crate::report::Report;
use crate::scalar::{
    add_scaled, basis_vector, default_labels, fmt_vector, is_zero_vector, support, zero_vector, Scalar, Vector,
};

type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    name: String,
    labels: Vec<String>,
    constants: BTreeMap<[usize; 3], Vector>,
    // Signed expansion over all ordered triples, indexed by (i*n + j)*n + k.
    table: Vec<SparseVec>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.constants == other.constants
    }
}

impl Eq for AlgebraSpec {}

/// Sign of the permutation sorting three distinct indices, and the sorted triple.
pub(crate) fn sort_triple(i: usize, j: usize, k: usize) -> Option<(i32, [usize; 3])> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut sign = 1;
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        sign = -sign;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    Some((sign, t))
}

impl AlgebraSpec {
    /// Builds an algebra from constants keyed by increasing 0-based triples.
    pub fn new(name: impl Into<String>, labels: Vec<String>, constants: BTreeMap<[usize; 3], Vector>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(shape("algebra dimension must be positive"));
        }
        let mut clean = BTreeMap::new();
        for (key, v) in constants {
            let [i, j, k] = key;
            if !(i < j && j < k) {
                return Err(Error::Domain(format!(
                    "structure constant triple ({},{},{}) is not strictly increasing",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if k >= n || v.len() != n {
                return Err(shape(format!(
                    "structure constant ({},{},{}) does not fit dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if !is_zero_vector(&v) {
                clean.insert(key, v);
            }
        }
        let mut table = vec![SparseVec::new(); n * n * n];
        for (&[i, j, k], v) in &clean {
            let sparse: SparseVec = support(v).map(|(l, c)| (l, c.clone())).collect();
            let neg: SparseVec = sparse.iter().map(|(l, c)| (*l, -c)).collect();
            for (perm, sign) in crate::tensor::S3 {
                let idx = [i, j, k];
                let (a, b, c) = (idx[perm[0]], idx[perm[1]], idx[perm[2]]);
                table[(a * n + b) * n + c] = if sign > 0 { sparse.clone() } else { neg.clone() };
            }
        }
        Ok(AlgebraSpec { name: name.into(), labels, constants: clean, table })
    }

    pub fn abelian(dim: usize) -> Self {
        AlgebraSpec::new(format!("abelian{dim}"), default_labels(dim), BTreeMap::new())
            .expect("abelian algebra is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero structure constants keyed by increasing 0-based triples.
    pub fn constants(&self) -> &BTreeMap<[usize; 3], Vector> {
        &self.constants
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// `[x_i, x_j, x_k]` as sparse `(index, coefficient)` pairs.
    pub(crate) fn basis_bracket(&self, i: usize, j: usize, k: usize) -> &[(usize, Scalar)] {
        let n = self.dim();
        &self.table[(i * n + j) * n + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (l, c) in self.basis_bracket(i, j, k) {
            out[*l] = c.clone();
        }
        out
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Vector> {
        let n = self.dim();
        if u.len() != n || v.len() != n || w.len() != n {
            return Err(shape(format!("bracket arguments must have dimension {n}")));
        }
        Ok(self.br(u, v, w))
    }

    pub(crate) fn br(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        let su: SparseVec = support(u).map(|(i, c)| (i, c.clone())).collect();
        let sv: SparseVec = support(v).map(|(i, c)| (i, c.clone())).collect();
        let sw: SparseVec = support(w).map(|(i, c)| (i, c.clone())).collect();
        for (i, a) in &su {
            for (j, b) in &sv {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &sw {
                    let entry = self.basis_bracket(*i, *j, *k);
                    if entry.is_empty() {
                        continue;
                    }
                    let abc = &ab * c;
                    for (l, x) in entry {
                        out[*l] += &abc * x;
                    }
                }
            }
        }
        out
    }

    /// `[x_i, x_j, v]` for a general `v`.
    pub(crate) fn br_basis2(&self, i: usize, j: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (k, c) in support(v) {
            for (l, x) in self.basis_bracket(i, j, k) {
                out[*l] += c * x;
            }
        }
        out
    }

    /// `[u, v, x_k]` for general `u`, `v`.
    pub(crate) fn br_basis_last(&self, u: &[Scalar], v: &[Scalar], k: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, a) in support(u) {
            for (j, b) in support(v) {
                let entry = self.basis_bracket(i, j, k);
                if entry.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (l, x) in entry {
                    out[*l] += &ab * x;
                }
            }
        }
        out
    }

    /// `ad(u, v): w ↦ [u, v, w]`.
    pub fn ad(&self, u: &[Scalar], v: &[Scalar]) -> Result<LinearMap> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(shape("ad arguments have the wrong dimension"));
        }
        let cols: Vec<Vector> = (0..n).map(|l| self.br(u, v, &basis_vector(n, l))).collect();
        LinearMap::from_columns(&cols)
    }

    pub fn ad_basis(&self, i: usize, j: usize) -> LinearMap {
        let n = self.dim();
        let mut m = LinearMap::zero(n, n);
        for l in 0..n {
            for (r, c) in self.basis_bracket(i, j, l) {
                m.set(*r, l, c.clone());
            }
        }
        m
    }

    pub fn fmt_vector(&self, v: &[Scalar]) -> String {
        fmt_vector(v, &self.labels)
    }

    fn fmt_sparse(&self, v: &[Scalar]) -> String {
        self.fmt_vector(v)
    }

    /// Checks the Filippov identity
    /// `[x1,x2,[x3,x4,x5]] = [[x1,x2,x3],x4,x5] + [x3,[x1,x2,x4],x5] + [x3,x4,[x1,x2,x5]]`
    /// on basis tuples with `i1<i2` and `i3<i4<i5`; by multilinearity and
    /// antisymmetry those cover every tuple.
    pub fn verify_filippov(&self) -> Report {
        let n = self.dim();
        let mut report = Report::new("filippov");
        for i1 in 0..n {
            for i2 in i1 + 1..n {
                for i3 in 0..n {
                    for i4 in i3 + 1..n {
                        for i5 in i4 + 1..n {
                            report.evaluated += 1;
                            let (lhs, rhs) = self.filippov_sides(i1, i2, i3, i4, i5);
                            if lhs != rhs {
                                report.violate(
                                    "filippov",
                                    vec![i1, i2, i3, i4, i5],
                                    self.fmt_sparse(&lhs),
                                    self.fmt_sparse(&rhs),
                                );
                            }
                        }
                    }
                }
            }
        }
        report
    }

    fn filippov_sides(&self, i1: usize, i2: usize, i3: usize, i4: usize, i5: usize) -> (Vector, Vector) {
        let n = self.dim();
        let mut lhs = zero_vector(n);
        for (l, c) in self.basis_bracket(i3, i4, i5) {
            for (m, x) in self.basis_bracket(i1, i2, *l) {
                lhs[*m] += c * x;
            }
        }
        let mut rhs = zero_vector(n);
        for (l, c) in self.basis_bracket(i1, i2, i3) {
            for (m, x) in self.basis_bracket(*l, i4, i5) {
                rhs[*m] += c * x;
            }
        }
        for (l, c) in self.basis_bracket(i1, i2, i4) {
            for (m, x) in self.basis_bracket(i3, *l, i5) {
                rhs[*m] += c * x;
            }
        }
        for (l, c) in self.basis_bracket(i1, i2, i5) {
            for (m, x) in self.basis_bracket(i3, i4, *l) {
                rhs[*m] += c * x;
            }
        }
        (lhs, rhs)
    }

    /// The subalgebra generated by all brackets, closed to a fixpoint.
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim();
        let mut current = Subspace::span(n, self.constants.values().cloned());
        loop {
            let basis = current.basis().to_vec();
            let mut extra = Vec::new();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    for c in b + 1..basis.len() {
                        extra.push(self.br(&basis[a], &basis[b], &basis[c]));
                    }
                }
            }
            let next = current.join(&Subspace::span(n, extra));
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// `Z(A) = { z : [z, x_i, x_j] = 0 for all i<j }`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // Row r of the map v ↦ [v, x_i, x_j].
                let mut block = vec![zero_vector(n); n];
                for l in 0..n {
                    for (r, c) in self.basis_bracket(l, i, j) {
                        block[*r][l] = c.clone();
                    }
                }
                rows.extend(block.into_iter().filter(|r| !is_zero_vector(r)));
            }
        }
        Subspace::span(n, nullspace(&rows, n))
    }

    /// Checks that every bracket of three vectors from `sub` vanishes.
    pub(crate) fn is_abelian_on(&self, sub: &Subspace) -> bool {
        let b = sub.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                for k in j + 1..b.len() {
                    if !is_zero_vector(&self.br(&b[i], &b[j], &b[k])) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A representation `ρ: A∧A → End(V)`, stored on basis pairs `i<j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra_dim: usize,
    module_dim: usize,
    rho: BTreeMap<(usize, usize), LinearMap>,
}

impl Representation {
    pub fn new(algebra_dim: usize, module_dim: usize, rho: BTreeMap<(usize, usize), LinearMap>) -> Result<Self> {
        for (&(i, j), m) in &rho {
            if i >= j || j >= algebra_dim {
                return Err(shape(format!("invalid representation pair ({},{})", i + 1, j + 1)));
            }
            if m.codomain_dim() != module_dim || m.domain_dim() != module_dim {
                return Err(shape("representation map has the wrong module dimension"));
            }
        }
        let rho = rho.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(Representation { algebra_dim, module_dim, rho })
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        Representation { algebra_dim, module_dim, rho: BTreeMap::new() }
    }

    /// The adjoint representation `(A, ad)`.
    pub fn adjoint(alg: &AlgebraSpec) -> Self {
        let n = alg.dim();
        let mut rho = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                rho.insert((i, j), alg.ad_basis(i, j));
            }
        }
        Representation::new(n, n, rho).expect("adjoint maps are well formed")
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// `ρ(x_i, x_j)`, antisymmetric in the pair.
    pub fn rho_basis(&self, i: usize, j: usize) -> LinearMap {
        let m = self.module_dim;
        if i == j {
            return LinearMap::zero(m, m);
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.rho.get(&(a, b)) {
            Some(map) if flip => map.neg(),
            Some(map) => map.clone(),
            None => LinearMap::zero(m, m),
        }
    }

    /// `ρ(u, v)`, extended bilinearly.
    pub fn rho(&self, u: &[Scalar], v: &[Scalar]) -> Result<LinearMap> {
        if u.len() != self.algebra_dim || v.len() != self.algebra_dim {
            return Err(shape("representation arguments have the wrong dimension"));
        }
        let m = self.module_dim;
        let mut out = LinearMap::zero(m, m);
        for (&(i, j), map) in &self.rho {
            let c = &u[i] * &v[j] - &u[j] * &v[i];
            if !c.is_zero() {
                out = out.add(&map.scale(&c))?;
            }
        }
        Ok(out)
    }
}

/// Checks both representation axioms on all basis 4-tuples:
/// `[ρ(x1,x2), ρ(x3,x4)] = ρ([x1,x2,x3],x4) − ρ([x1,x2,x4],x3)` and
/// `ρ([x1,x2,x3],x4) = ρ(x1,x2)ρ(x3,x4) + ρ(x2,x3)ρ(x1,x4) + ρ(x3,x1)ρ(x2,x4)`.
pub fn verify_representation(alg: &AlgebraSpec, rep: &Representation) -> Result<Report> {
    let n = alg.dim();
    if rep.algebra_dim() != n {
        return Err(shape(format!("representation is over a {}-dim algebra, expected {n}", rep.algebra_dim())));
    }
    let mut rhos = vec![vec![LinearMap::zero(0, 0); n]; n];
    for (i, row) in rhos.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = rep.rho_basis(i, j);
        }
    }
    let mut report = Report::new("representation");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = alg.bracket_basis(a, b, c);
                for d in 0..n {
                    report.evaluated += 1;
                    let abd = alg.bracket_basis(a, b, d);
                    let rho_abc_d = rep.rho(&abc, &basis_vector(n, d))?;
                    let rho_abd_c = rep.rho(&abd, &basis_vector(n, c))?;

                    let lhs1 = rhos[a][b].commutator(&rhos[c][d])?;
                    let rhs1 = rho_abc_d.sub(&rho_abd_c)?;
                    if lhs1 != rhs1 {
                        report.violate("commutator-axiom", vec![a, b, c, d], lhs1.fmt_rows(), rhs1.fmt_rows());
                    }

                    let rhs2 = rhos[a][b]
                        .compose(&rhos[c][d])?
                        .add(&rhos[b][c].compose(&rhos[a][d])?)?
                        .add(&rhos[c][a].compose(&rhos[b][d])?)?;
                    if rho_abc_d != rhs2 {
                        report.violate("product-axiom", vec![a, b, c, d], rho_abc_d.fmt_rows(), rhs2.fmt_rows());
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Checks `[Tu,Tv,Tw] = T(ρ(Tu,Tv)w + ρ(Tv,Tw)u + ρ(Tw,Tu)v)` on all basis
/// triples of the module.
pub fn verify_o_operator(alg: &AlgebraSpec, rep: &Representation, t: &LinearMap) -> Result<Report> {
    let n = alg.dim();
    let m = rep.module_dim();
    if rep.algebra_dim() != n || t.codomain_dim() != n || t.domain_dim() != m {
        return Err(shape(format!("operator must map the {m}-dim module into the {n}-dim algebra")));
    }
    let images: Vec<Vector> = (0..m).map(|i| t.column(i)).collect();
    let mut report = Report::new("o-operator");
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                report.evaluated += 1;
                let (tu, tv, tw) = (&images[u], &images[v], &images[w]);
                let lhs = alg.br(tu, tv, tw);
                let mut inner = rep.rho(tu, tv)?.apply_unchecked(&basis_vector(m, w));
                let uv = rep.rho(tv, tw)?.apply_unchecked(&basis_vector(m, u));
                let wu = rep.rho(tw, tu)?.apply_unchecked(&basis_vector(m, v));
                add_scaled(&mut inner, &Scalar::from_integer(1.into()), &uv);
                add_scaled(&mut inner, &Scalar::from_integer(1.into()), &wu);
                let rhs = t.apply_unchecked(&inner);
                if lhs != rhs {
                    report.violate("o-operator", vec![u, v, w], alg.fmt_vector(&lhs), alg.fmt_vector(&rhs));
                }
            }
        }
    }
    Ok(report)
}

/// Convenience for building constants from 1-based triples and `(index, coeff)` terms.
pub(crate) fn bracket_entry(dim: usize, triple: [usize; 3], terms: &[(usize, Scalar)]) -> ([usize; 3], Vector) {
    let mut v = zero_vector(dim);
    for (l, c) in terms {
        v[l - 1] += c;
    }
    ([triple[0] - 1, triple[1] - 1, triple[2] - 1], v)
}

impl AlgebraSpec {
    /// Structure constants from 1-based, possibly unordered triples; the sign
    /// of the sorting permutation is applied. Repeated triples accumulate.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        brackets: &[([usize; 3], Vec<(usize, Scalar)>)],
    ) -> Result<Self> {
        let mut constants: BTreeMap<[usize; 3], Vector> = BTreeMap::new();
        for (triple, terms) in brackets {
            if triple.iter().any(|&t| t == 0 || t > dim) || terms.iter().any(|(l, _)| *l == 0 || *l > dim) {
                return Err(shape(format!("bracket index out of range for dimension {dim}")));
            }
            let (key, v) = bracket_entry(dim, *triple, terms);
            let Some((sign, sorted)) = sort_triple(key[0], key[1], key[2]) else {
                return Err(Error::Domain("bracket triple has a repeated index".into()));
            };
            let slot = constants.entry(sorted).or_insert_with(|| zero_vector(dim));
            add_scaled(slot, &Scalar::from_integer(sign.into()), &v);
        }
        AlgebraSpec::new(name, default_labels(dim), constants)
    }
}
