//! Sparse multilinear tensors over a finite basis.
//!
//! A [`Tensor`] of rank `k` over a `dim`-dimensional space is a map from
//! index tuples to nonzero scalars. Absent entries are zero, so equality is
//! literal map equality. Indices are 0-based in memory; factor slots are
//! numbered from 1 to match the `φ_pq` slot operators.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{shape, Result};
use crate::scalar::{fmt_coeff_prefix, support, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(rank: usize, dim: usize) -> Self {
        assert!(rank > 0 && dim > 0, "tensor rank and dim must be positive");
        Tensor { rank, dim, entries: BTreeMap::new() }
    }

    /// `coeff · e_{i1} ⊗ … ⊗ e_{ik}`.
    pub fn monomial(dim: usize, indices: &[usize], coeff: Scalar) -> Self {
        let mut t = Tensor::zero(indices.len(), dim);
        t.add_term(indices.to_vec(), coeff);
        t
    }

    /// `v1 ⊗ v2 ⊗ … ⊗ vk`.
    pub fn outer(factors: &[&[Scalar]]) -> Result<Self> {
        let dim = factors.first().map(|v| v.len()).ok_or_else(|| shape("outer product of no factors"))?;
        if factors.iter().any(|v| v.len() != dim) {
            return Err(shape("outer product factors have different dimensions"));
        }
        let mut t = Tensor::zero(factors.len(), dim);
        let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::from_integer(1.into()))];
        for v in factors {
            let mut next = Vec::new();
            for (idx, c) in &acc {
                for (i, x) in support(v) {
                    let mut idx = idx.clone();
                    idx.push(i);
                    next.push((idx, c * x));
                }
            }
            acc = next;
        }
        for (idx, c) in acc {
            t.add_term(idx, c);
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, indices: &[usize]) -> Scalar {
        self.entries.get(indices).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    /// Adds `coeff` at `indices`, dropping the entry if it cancels.
    pub fn add_term(&mut self, indices: Vec<usize>, coeff: Scalar) {
        debug_assert_eq!(indices.len(), self.rank);
        debug_assert!(indices.iter().all(|&i| i < self.dim));
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(indices) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.rank != other.rank || self.dim != other.dim {
            return Err(shape(format!(
                "tensor shape mismatch: rank {} dim {} vs rank {} dim {}",
                self.rank, self.dim, other.rank, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.entries {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Tensor) -> Result<()> {
        self.check_same_shape(other)?;
        for (idx, c) in &other.entries {
            self.add_term(idx.clone(), c.clone());
        }
        Ok(())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-Scalar::from_integer(1.into()))
    }

    pub fn scale(&self, coeff: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.dim);
        if coeff.is_zero() {
            return out;
        }
        out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v * coeff)).collect();
        out
    }

    /// The slot exchange `φ_pq` (slots numbered from 1).
    pub fn permute_factors(&self, p: usize, q: usize) -> Result<Tensor> {
        if p == q || p == 0 || q == 0 || p > self.rank || q > self.rank {
            return Err(shape(format!("invalid slot pair ({p},{q}) for a rank {} tensor", self.rank)));
        }
        let mut out = Tensor::zero(self.rank, self.dim);
        for (idx, c) in &self.entries {
            let mut idx = idx.clone();
            idx.swap(p - 1, q - 1);
            out.entries.insert(idx, c.clone());
        }
        Ok(out)
    }

    /// Applies the linear map `e_i ↦ image(i)` to one factor (slot from 1),
    /// identity on the others.
    pub fn map_slot<F>(&self, slot: usize, image: F) -> Result<Tensor>
    where
        F: Fn(usize) -> Vector,
    {
        if slot == 0 || slot > self.rank {
            return Err(shape(format!("slot {slot} out of range for rank {}", self.rank)));
        }
        let mut out = Tensor::zero(self.rank, self.dim);
        let mut cache: BTreeMap<usize, Vector> = BTreeMap::new();
        for (idx, c) in &self.entries {
            let i = idx[slot - 1];
            let v = cache.entry(i).or_insert_with(|| image(i));
            for (j, x) in support(v) {
                let mut k = idx.clone();
                k[slot - 1] = j;
                out.add_term(k, c * x);
            }
        }
        Ok(out)
    }

    /// Σ_{σ∈S₃} sgn(σ)·σ(t) / 6, together with whether `t` already equals it.
    pub fn alternating_part(&self) -> Result<(Tensor, bool)> {
        if self.rank != 3 {
            return Err(shape(format!("alternating part needs rank 3, got {}", self.rank)));
        }
        let mut out = Tensor::zero(3, self.dim);
        for (idx, c) in &self.entries {
            for (perm, sign) in S3 {
                let k = vec![idx[perm[0]], idx[perm[1]], idx[perm[2]]];
                out.add_term(k, if sign > 0 { c.clone() } else { -c });
            }
        }
        let out = out.scale(&Scalar::new(1.into(), 6.into()));
        let is_alt = out == *self;
        Ok((out, is_alt))
    }

    /// Renders the nonzero monomials, e.g. `x1⊗x2* - 2x3⊗x1*`.
    pub fn fmt_with(&self, labels: &[String]) -> String {
        if self.entries.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, c) in &self.entries {
            let body: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
            push_signed_term(&mut out, c, &body.join("⊗"));
        }
        out
    }
}

/// Permutations of three slots with their signs. `perm[s]` is the source slot
/// feeding output slot `s`.
pub(crate) const S3: [([usize; 3], i32); 6] =
    [([0, 1, 2], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 2, 0], 1), ([2, 0, 1], 1)];

pub(crate) fn push_signed_term(out: &mut String, c: &Scalar, body: &str) {
    use num_traits::Signed;
    if out.is_empty() {
        out.push_str(&fmt_coeff_prefix(c));
    } else if c.is_negative() {
        out.push_str(" - ");
        out.push_str(&fmt_coeff_prefix(&-c));
    } else {
        out.push_str(" + ");
        out.push_str(&fmt_coeff_prefix(c));
    }
    out.push_str(body);
}

/// The unnormalized wedge `a∧b∧c = Σ_{σ∈S₃} sgn(σ)·σ(a⊗b⊗c)` (six terms, no 1/6).
pub fn wedge3(a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Tensor> {
    if a.len() != b.len() || b.len() != c.len() {
        return Err(shape("wedge factors have different dimensions"));
    }
    let base = Tensor::outer(&[a, b, c])?;
    let mut out = Tensor::zero(3, a.len());
    for (idx, coeff) in &base.entries {
        for (perm, sign) in S3 {
            let k = vec![idx[perm[0]], idx[perm[1]], idx[perm[2]]];
            out.add_term(k, if sign > 0 { coeff.clone() } else { -coeff });
        }
    }
    Ok(out)
}

/// `e_a ∧ e_b ∧ e_c` for basis indices.
pub fn wedge3_basis(dim: usize, a: usize, b: usize, c: usize) -> Tensor {
    let mut out = Tensor::zero(3, dim);
    let idx = [a, b, c];
    for (perm, sign) in S3 {
        out.add_term(vec![idx[perm[0]], idx[perm[1]], idx[perm[2]]], Scalar::from_integer(sign.into()));
    }
    out
}

/// Wedge normal form of an alternating rank-3 tensor: coefficients of
/// `e_a∧e_b∧e_c` for `a<b<c`. Caller is responsible for alternation.
pub fn wedge_coordinates(t: &Tensor) -> BTreeMap<[usize; 3], Scalar> {
    t.entries()
        .filter(|(idx, _)| idx[0] < idx[1] && idx[1] < idx[2])
        .map(|(idx, c)| ([idx[0], idx[1], idx[2]], c.clone()))
        .collect()
}

/// Renders an alternating rank-3 tensor as `c a∧b∧c + …` with increasing factors.
pub fn fmt_wedge(t: &Tensor, labels: &[String]) -> String {
    let coords = wedge_coordinates(t);
    if coords.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, c) in &coords {
        let body = format!("{}∧{}∧{}", labels[idx[0]], labels[idx[1]], labels[idx[2]]);
        push_signed_term(&mut out, c, &body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{basis_vector, int, ratio};
    use proptest::prelude::*;

    fn e(dim: usize, i: usize) -> Vector {
        basis_vector(dim, i)
    }

    #[test]
    fn additive_identity_and_inverse() {
        let a = Tensor::monomial(3, &[0, 1], int(2));
        assert_eq!(a.add(&Tensor::zero(2, 3)).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let m = Tensor::monomial(3, &[0, 1], int(1));
        assert_eq!(m.add(&m).unwrap(), Tensor::monomial(3, &[0, 1], int(2)));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = Tensor::zero(2, 3);
        let b = Tensor::zero(3, 3);
        assert!(matches!(a.add(&b), Err(crate::Error::Shape(_))));
        assert!(a.permute_factors(1, 3).is_err());
        assert!(a.permute_factors(1, 1).is_err());
    }

    #[test]
    fn swap_on_monomial() {
        let t = Tensor::monomial(3, &[0, 1, 2], int(1));
        assert_eq!(t.permute_factors(1, 2).unwrap(), Tensor::monomial(3, &[1, 0, 2], int(1)));
    }

    #[test]
    fn composed_swaps_cycle_factors() {
        // φ13 ∘ φ12 (a⊗b⊗c): φ12 gives b⊗a⊗c, then φ13 gives c⊗a⊗b.
        let (a, b, c) = (0, 1, 2);
        let t = Tensor::monomial(3, &[a, b, c], int(1));
        let out = t.permute_factors(1, 2).unwrap().permute_factors(1, 3).unwrap();
        assert_eq!(out, Tensor::monomial(3, &[c, a, b], int(1)));
        let other = t.permute_factors(1, 3).unwrap().permute_factors(1, 2).unwrap();
        assert_eq!(other, Tensor::monomial(3, &[b, c, a], int(1)));
    }

    #[test]
    fn wedge_expansion_by_hand() {
        // x2* ∧ x4* ∧ x3* in an 8-dim double space (x_i* at index 4 + i - 1).
        let (p, q, r) = (5, 7, 6);
        let w = wedge3(&e(8, p), &e(8, q), &e(8, r)).unwrap();
        let mut expected = Tensor::zero(3, 8);
        expected.add_term(vec![p, q, r], int(1));
        expected.add_term(vec![q, p, r], int(-1));
        expected.add_term(vec![p, r, q], int(-1));
        expected.add_term(vec![r, q, p], int(-1));
        expected.add_term(vec![q, r, p], int(1));
        expected.add_term(vec![r, p, q], int(1));
        assert_eq!(w, expected);
        assert_eq!(w, wedge3_basis(8, p, q, r));
    }

    #[test]
    fn wedge_with_repeat_is_zero() {
        let v = vec![int(1), int(2), int(0)];
        let w = vec![int(0), ratio(1, 3), int(5)];
        assert!(wedge3(&v, &v, &w).unwrap().is_zero());
    }

    #[test]
    fn alternating_part_cases() {
        let w = wedge3_basis(3, 0, 1, 2);
        assert_eq!(w.alternating_part().unwrap(), (w.clone(), true));

        // Brute force: the six signed permutations of x1⊗x1⊗x2 cancel pairwise.
        let t = Tensor::monomial(3, &[0, 0, 1], int(1));
        let mut brute = Tensor::zero(3, 3);
        for (perm, sign) in S3 {
            let idx = [0usize, 0, 1];
            brute.add_term(vec![idx[perm[0]], idx[perm[1]], idx[perm[2]]], int(sign as i64));
        }
        let (alt, is_alt) = t.alternating_part().unwrap();
        assert_eq!(alt, brute.scale(&ratio(1, 6)));
        assert!(alt.is_zero());
        assert!(!is_alt);

        let z = Tensor::zero(3, 4);
        assert_eq!(z.alternating_part().unwrap(), (z.clone(), true));
    }

    #[test]
    fn wedge_formatting() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let w = wedge3_basis(3, 1, 0, 2);
        assert_eq!(fmt_wedge(&w, &labels), "-a∧b∧c");
    }

    fn arb_tensor(rank: usize, dim: usize) -> impl Strategy<Value = Tensor> {
        prop::collection::vec((prop::collection::vec(0..dim, rank), -5i64..=5, 1i64..=4), 0..8).prop_map(move |terms| {
            let mut t = Tensor::zero(rank, dim);
            for (idx, n, d) in terms {
                t.add_term(idx, ratio(n, d));
            }
            t
        })
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = Vector> {
        prop::collection::vec((-4i64..=4, 1i64..=3), dim)
            .prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect())
    }

    proptest! {
        #[test]
        fn swap_is_an_involution(t in arb_tensor(4, 5), p in 1usize..=4, q in 1usize..=4) {
            prop_assume!(p != q);
            let back = t.permute_factors(p, q).unwrap().permute_factors(p, q).unwrap();
            prop_assert_eq!(back, t);
        }

        #[test]
        fn wedge_is_alternating(a in arb_vec(4), b in arb_vec(4), c in arb_vec(4)) {
            let w = wedge3(&a, &b, &c).unwrap();
            prop_assert_eq!(wedge3(&b, &a, &c).unwrap(), w.neg());
            prop_assert_eq!(wedge3(&a, &c, &b).unwrap(), w.neg());
            prop_assert!(wedge3(&a, &b, &a).unwrap().is_zero());
            prop_assert!(w.alternating_part().unwrap().1);
        }

        #[test]
        fn scalar_field_axioms(a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)) {
            let (a, b, c) = (ratio(a.0, a.1), ratio(b.0, b.1), ratio(c.0, c.1));
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), int(1));
            }
        }
    }
}
