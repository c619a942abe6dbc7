//! 3-pre-Lie products induced by an involutive derivation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::AlgebraSpec;
use crate::derivation::{eigensplit, require_involutive};
use crate::error::{domain, shape, Result};
use crate::linalg::LinearMap;
use crate::report::Report;
use crate::scalar::{
    add_scaled, default_labels, fmt_vector, int, is_zero_vector, support, zero_vector, Scalar, Vector,
};

/// A trilinear product stored densely on all `n³` basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriProduct {
    dim: usize,
    table: Vec<Vector>,
}

impl TriProduct {
    pub fn zero(dim: usize) -> Self {
        TriProduct { dim, table: vec![zero_vector(dim); dim * dim * dim] }
    }

    pub fn from_fn<F>(dim: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize, usize) -> Vector,
    {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    table.push(f(i, j, k));
                }
            }
        }
        TriProduct { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// `{x_i, x_j, x_k}`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.table[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Vector) -> Result<()> {
        if value.len() != self.dim || i.max(j).max(k) >= self.dim {
            return Err(shape("product entry does not fit the dimension"));
        }
        let idx = self.idx(i, j, k);
        self.table[idx] = value;
        Ok(())
    }

    /// The product on arbitrary vectors.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Vector> {
        let n = self.dim;
        if u.len() != n || v.len() != n || w.len() != n {
            return Err(shape(format!("product arguments must have dimension {n}")));
        }
        let mut out = zero_vector(n);
        for (i, a) in support(u) {
            for (j, b) in support(v) {
                let ab = a * b;
                for (k, c) in support(w) {
                    add_scaled(&mut out, &(&ab * c), self.get(i, j, k));
                }
            }
        }
        Ok(out)
    }

    /// `{x_i, x_j, x_k}_c = {x_i,x_j,x_k} + {x_j,x_k,x_i} + {x_k,x_i,x_j}`.
    pub fn cyclic(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = self.get(i, j, k).clone();
        add_scaled(&mut out, &Scalar::one(), self.get(j, k, i));
        add_scaled(&mut out, &Scalar::one(), self.get(k, i, j));
        out
    }

    fn slot1(&self, v: &[Scalar], j: usize, k: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (l, c) in support(v) {
            add_scaled(&mut out, c, self.get(l, j, k));
        }
        out
    }

    fn slot2(&self, i: usize, v: &[Scalar], k: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (l, c) in support(v) {
            add_scaled(&mut out, c, self.get(i, l, k));
        }
        out
    }

    fn slot3(&self, i: usize, j: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (l, c) in support(v) {
            add_scaled(&mut out, c, self.get(i, j, l));
        }
        out
    }
}

/// `{x,y,z}_D = [Dx, Dy, z]`.
pub fn prelie_from_d(alg: &AlgebraSpec, d: &LinearMap) -> Result<TriProduct> {
    require_involutive(alg, d)?;
    let n = alg.dim();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    Ok(TriProduct::from_fn(n, |i, j, k| alg.br_basis_last(&images[i], &images[j], k)))
}

/// `{x,y,z}_A = D[x, y, Dz]`.
pub fn prelie_compatible(alg: &AlgebraSpec, d: &LinearMap) -> Result<TriProduct> {
    require_involutive(alg, d)?;
    let n = alg.dim();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    Ok(TriProduct::from_fn(n, |i, j, k| d.apply_unchecked(&alg.br_basis2(i, j, &images[k]))))
}

/// Checks antisymmetry in the first two slots on all triples and both
/// five-variable identities on all basis 5-tuples:
///
/// `{x1,x2,{x3,x4,x5}} = {{x1,x2,x3}_c,x4,x5} + {x3,{x1,x2,x4}_c,x5} + {x3,x4,{x1,x2,x5}}`
///
/// `{{x1,x2,x3}_c,x4,x5} = {x1,x2,{x3,x4,x5}} + {x2,x3,{x1,x4,x5}} + {x3,x1,{x2,x4,x5}}`
pub fn verify_prelie(p: &TriProduct) -> Report {
    let n = p.dim();
    let labels = default_labels(n);
    let fmt = |v: &Vector| fmt_vector(v, &labels);
    let mut pre1 = Report::new("pre1");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                pre1.evaluated += 1;
                let a = p.get(i, j, k);
                let b = p.get(j, i, k);
                let mut sum = a.clone();
                add_scaled(&mut sum, &Scalar::one(), b);
                if !is_zero_vector(&sum) {
                    let neg: Vector = b.iter().map(|x| -x).collect();
                    pre1.violate("pre1", vec![i, j, k], fmt(a), fmt(&neg));
                }
            }
        }
    }

    let mut cyc = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cyc.push(p.cyclic(i, j, k));
            }
        }
    }
    let c = |i: usize, j: usize, k: usize| &cyc[(i * n + j) * n + k];

    let mut pre2 = Report::new("pre2");
    let mut pre3 = Report::new("pre3");
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let c123 = c(x1, x2, x3);
                for x4 in 0..n {
                    let c124 = c(x1, x2, x4);
                    for x5 in 0..n {
                        let witness = || vec![x1, x2, x3, x4, x5];
                        let inner = p.slot3(x1, x2, p.get(x3, x4, x5));
                        let first = p.slot1(c123, x4, x5);

                        pre2.evaluated += 1;
                        let mut rhs2 = first.clone();
                        add_scaled(&mut rhs2, &Scalar::one(), &p.slot2(x3, c124, x5));
                        add_scaled(&mut rhs2, &Scalar::one(), &p.slot3(x3, x4, p.get(x1, x2, x5)));
                        if inner != rhs2 {
                            pre2.violate("pre2", witness(), fmt(&inner), fmt(&rhs2));
                        }

                        pre3.evaluated += 1;
                        let mut rhs3 = inner;
                        add_scaled(&mut rhs3, &Scalar::one(), &p.slot3(x2, x3, p.get(x1, x4, x5)));
                        add_scaled(&mut rhs3, &Scalar::one(), &p.slot3(x3, x1, p.get(x2, x4, x5)));
                        if first != rhs3 {
                            pre3.violate("pre3", witness(), fmt(&first), fmt(&rhs3));
                        }
                    }
                }
            }
        }
    }

    let mut report = Report::new("3-pre-lie");
    report.push_child(pre1);
    report.push_child(pre2);
    report.push_child(pre3);
    report
}

/// The sub-adjacent 3-Lie algebra `(A, {,,}_c)`.
pub fn subadjacent(p: &TriProduct) -> Result<AlgebraSpec> {
    let report = verify_prelie(p);
    if !report.passed {
        return Err(domain(format!("product is not 3-pre-Lie ({} failed)", report.failing_children().join(", "))));
    }
    let n = p.dim();
    let mut constants = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                constants.insert([i, j, k], p.cyclic(i, j, k));
            }
        }
    }
    AlgebraSpec::new("subadjacent", default_labels(n), constants)
}

/// Checks `{x,y,z}_Dc = D[Dx,Dy,Dz]` and `D{x,y,z}_Dc = [Dx,Dy,Dz]` on all basis triples.
pub fn verify_d_isomorphism(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    let pd = prelie_from_d(alg, d)?;
    let n = alg.dim();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    let mut formula = Report::new("cyclic-formula");
    let mut iso = Report::new("isomorphism");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let dc = pd.cyclic(i, j, k);
                let ddd = alg.br(&images[i], &images[j], &images[k]);
                let d_ddd = d.apply_unchecked(&ddd);
                formula.evaluated += 1;
                if dc != d_ddd {
                    formula.violate("cyclic-formula", vec![i, j, k], alg.fmt_vector(&dc), alg.fmt_vector(&d_ddd));
                }
                iso.evaluated += 1;
                let d_dc = d.apply_unchecked(&dc);
                if d_dc != ddd {
                    iso.violate("isomorphism", vec![i, j, k], alg.fmt_vector(&d_dc), alg.fmt_vector(&ddd));
                }
            }
        }
    }
    let mut report = Report::new("d-isomorphism");
    report.push_child(formula);
    report.push_child(iso);
    Ok(report)
}

/// Expected multiple of `[x,y,z]` for `{x,y,z}_D` by eigenvalue pattern.
/// The listed cases are taken as given; the two remaining mixed orderings
/// follow from antisymmetry in the first two slots.
pub fn pre_d_case(pattern: [i8; 3]) -> i64 {
    match pattern {
        [1, 1, 1] | [-1, -1, -1] => 0,
        [1, 1, -1] => 1,
        [1, -1, -1] => -1,
        [-1, -1, 1] => 1,
        [1, -1, 1] => -1,
        // Antisymmetry: {x,y,z} = −{y,x,z}.
        [-1, 1, 1] => -1,
        [-1, 1, -1] => -1,
        _ => unreachable!("eigenvalues are ±1"),
    }
}

/// Expected multiple of `[x,y,z]` for `{x,y,z}_Dc`; mixed patterns not listed
/// explicitly follow from total antisymmetry of the sub-adjacent bracket.
pub fn pre_dc_case(pattern: [i8; 3]) -> i64 {
    if pattern[0] == pattern[1] && pattern[1] == pattern[2] {
        0
    } else {
        -1
    }
}

/// Checks the piecewise descriptions of `{,,}_D` and `{,,}_Dc` on every
/// ordered triple of eigenbasis vectors.
pub fn piecewise_check(alg: &AlgebraSpec, d: &LinearMap) -> Result<Report> {
    let split = eigensplit(alg, d)?;
    let pd = prelie_from_d(alg, d)?;
    let basis = split.eigenbasis();
    let mut dr = Report::new("preD-cases");
    let mut dcr = Report::new("preDc-cases");
    for (a, (ea, va)) in basis.iter().enumerate() {
        for (b, (eb, vb)) in basis.iter().enumerate() {
            for (c, (ec, vc)) in basis.iter().enumerate() {
                let pattern = [*ea, *eb, *ec];
                let br = alg.br(va, vb, vc);
                let got_d = pd.eval(va, vb, vc)?;
                let mut got_dc = got_d.clone();
                add_scaled(&mut got_dc, &Scalar::one(), &pd.eval(vb, vc, va)?);
                add_scaled(&mut got_dc, &Scalar::one(), &pd.eval(vc, va, vb)?);
                let want_d: Vector = br.iter().map(|x| x * int(pre_d_case(pattern))).collect();
                let want_dc: Vector = br.iter().map(|x| x * int(pre_dc_case(pattern))).collect();
                dr.evaluated += 1;
                if got_d != want_d {
                    dr.violate("preD-case", vec![a, b, c], alg.fmt_vector(&got_d), alg.fmt_vector(&want_d));
                }
                dcr.evaluated += 1;
                if got_dc != want_dc {
                    dcr.violate("preDc-case", vec![a, b, c], alg.fmt_vector(&got_dc), alg.fmt_vector(&want_dc));
                }
            }
        }
    }
    let mut report = Report::new("piecewise");
    report.note(format!("eigenbasis: {} vectors in A_1, {} in A_-1", split.plus.dim(), split.minus.dim()));
    report.push_child(dr);
    report.push_child(dcr);
    Ok(report)
}

/// Whether every entry of the product is zero.
pub fn is_zero_product(p: &TriProduct) -> bool {
    p.table.iter().all(|v| v.iter().all(Zero::is_zero))
}
