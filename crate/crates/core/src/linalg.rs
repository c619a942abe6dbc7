//! Exact linear algebra: matrices, reduced row-echelon form, nullspaces and
//! canonical subspaces.

use num_traits::{One, Zero};

use crate::error::{shape, Result};
use crate::scalar::{add_scaled, fmt_scalar, is_zero_vector, one, zero_vector, Scalar, Vector};

/// A linear map between coordinate spaces. Column `j` is the image of the
/// `j`-th basis vector of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: Vec<Vector>,
    domain: usize,
}

impl LinearMap {
    pub fn zero(codomain: usize, domain: usize) -> Self {
        LinearMap { rows: vec![zero_vector(domain); codomain], domain }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = LinearMap::zero(dim, dim);
        for i in 0..dim {
            m.rows[i][i] = one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = LinearMap::zero(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    /// Diagonal ±1 map from a sign pattern.
    pub fn signs(pattern: &[i8]) -> Self {
        let entries: Vec<Scalar> = pattern.iter().map(|&s| Scalar::from_integer(s.into())).collect();
        LinearMap::diagonal(&entries)
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let domain = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.is_empty() || rows.iter().any(|r| r.len() != domain) {
            return Err(shape("matrix rows must be nonempty and of equal length"));
        }
        Ok(LinearMap { rows, domain })
    }

    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let codomain = cols.first().map(|c| c.len()).unwrap_or(0);
        if cols.is_empty() || cols.iter().any(|c| c.len() != codomain) {
            return Err(shape("matrix columns must be nonempty and of equal length"));
        }
        let rows = (0..codomain).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        Ok(LinearMap { rows, domain: cols.len() })
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.domain
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.rows[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.rows[row][col] = value;
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn column(&self, col: usize) -> Vector {
        self.rows.iter().map(|r| r[col].clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.domain {
            return Err(shape(format!("vector of dim {} applied to a map with domain dim {}", v.len(), self.domain)));
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.rows.len());
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_zero() {
                    out[i] += &row[j] * x;
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.domain != other.codomain_dim() {
            return Err(shape("composition of incompatible maps"));
        }
        let cols: Vec<Vector> = (0..other.domain).map(|j| self.apply_unchecked(&other.column(j))).collect();
        if cols.is_empty() {
            return Ok(LinearMap::zero(self.codomain_dim(), 0));
        }
        LinearMap::from_columns(&cols)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &LinearMap, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<LinearMap> {
        if self.rows.len() != other.rows.len() || self.domain != other.domain {
            return Err(shape("matrix shapes differ"));
        }
        let rows =
            self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect()).collect();
        Ok(LinearMap { rows, domain: self.domain })
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap { rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(), domain: self.domain }
    }

    pub fn neg(&self) -> LinearMap {
        self.scale(&-one())
    }

    pub fn transpose(&self) -> LinearMap {
        let cols: Vec<Vector> = self.rows.clone();
        LinearMap::from_columns(&cols).unwrap_or_else(|_| LinearMap::zero(self.domain, 0))
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &LinearMap) -> Result<LinearMap> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| is_zero_vector(r))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    /// Diagonal entries, if the map is diagonal.
    pub fn as_diagonal(&self) -> Option<Vector> {
        if !self.is_square() {
            return None;
        }
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if i != j && !x.is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.domain).map(|i| self.rows[i][i].clone()).collect())
    }

    /// Row-major flattening, used as coordinates in `End(A)`.
    pub fn flatten(&self) -> Vector {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn from_flat(dim: usize, flat: &[Scalar]) -> Result<LinearMap> {
        if flat.len() != dim * dim || dim == 0 {
            return Err(shape("flat matrix has the wrong length"));
        }
        LinearMap::from_rows(flat.chunks(dim).map(|c| c.to_vec()).collect())
    }

    pub fn fmt_rows(&self) -> String {
        self.rows.iter().map(|r| r.iter().map(fmt_scalar).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
    }
}

/// Reduces `rows` to reduced row-echelon form in place, drops zero rows, and
/// returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                add_scaled(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{ v : rows · v = 0 }`, one vector per free column.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.iter().filter(|r| !is_zero_vector(r)).cloned().collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vector(ncols);
            v[f] = one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `F^n`, stored as its canonical RREF basis so that equality is
/// literal comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| crate::scalar::basis_vector(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vector>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().filter(|v| !is_zero_vector(v)).collect();
        debug_assert!(rows.iter().all(|v| v.len() == ambient));
        rref(&mut rows);
        Subspace { ambient, basis: rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&mut rows);
        rows.len() == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Span of both subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }
}
