//! Dense brute-force oracles over i64, written straight from the definitions.
//! They share no code with the library beyond reading its structure constants.

#![allow(dead_code)]

use lie3_core::catalog::{self, Params};
use lie3_core::{AlgebraSpec, Scalar};

pub fn to_i64(c: &Scalar) -> i64 {
    assert!(c.is_integer(), "oracle needs integer constants, got {c}");
    c.numer().try_into().expect("small integer")
}

/// Dense trilinear bracket: `c[((a*n+b)*n+c)*n+p]` is the `p`-coordinate of
/// `[e_a,e_b,e_c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub n: usize,
    pub c: Vec<i64>,
}

impl Dense {
    pub fn zero(n: usize) -> Self {
        Dense { n, c: vec![0; n * n * n * n] }
    }

    pub fn at(&self, a: usize, b: usize, c: usize, p: usize) -> i64 {
        let n = self.n;
        self.c[((a * n + b) * n + c) * n + p]
    }

    fn at_mut(&mut self, a: usize, b: usize, c: usize, p: usize) -> &mut i64 {
        let n = self.n;
        &mut self.c[((a * n + b) * n + c) * n + p]
    }

    /// Fills all six orderings of each listed increasing triple.
    pub fn from_spec(alg: &AlgebraSpec) -> Self {
        let n = alg.dim();
        let mut d = Dense::zero(n);
        for (&[i, j, k], v) in alg.constants() {
            for (p, c) in v.iter().enumerate() {
                let c = to_i64(c);
                for (a, b, cc, s) in
                    [(i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)]
                {
                    *d.at_mut(a, b, cc, p) = s * c;
                }
            }
        }
        d
    }

    pub fn bracket(&self, u: &[i64], v: &[i64], w: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0; n];
        for a in (0..n).filter(|&a| u[a] != 0) {
            for b in (0..n).filter(|&b| v[b] != 0) {
                for c in (0..n).filter(|&c| w[c] != 0) {
                    let k = u[a] * v[b] * w[c];
                    for (p, o) in out.iter_mut().enumerate() {
                        *o += k * self.at(a, b, c, p);
                    }
                }
            }
        }
        out
    }

    pub fn basis_bracket(&self, a: usize, b: usize, c: usize) -> Vec<i64> {
        (0..self.n).map(|p| self.at(a, b, c, p)).collect()
    }
}

pub fn e(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// First basis 5-tuple violating the Filippov identity, over all `n⁵` tuples.
pub fn filippov_violation(d: &Dense) -> Option<[usize; 5]> {
    let n = d.n;
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                for x4 in 0..n {
                    for x5 in 0..n {
                        let b = |u: &[i64], v: &[i64], w: &[i64]| d.bracket(u, v, w);
                        let (e1, e2, e3, e4, e5) = (e(n, x1), e(n, x2), e(n, x3), e(n, x4), e(n, x5));
                        let lhs = b(&e1, &e2, &b(&e3, &e4, &e5));
                        let r1 = b(&b(&e1, &e2, &e3), &e4, &e5);
                        let r2 = b(&e3, &b(&e1, &e2, &e4), &e5);
                        let r3 = b(&e3, &e4, &b(&e1, &e2, &e5));
                        if lhs != add(&add(&r1, &r2), &r3) {
                            return Some([x1, x2, x3, x4, x5]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// `A ⋉ A*` from `⟨ad*(x,y)ξ, z⟩ = −⟨ξ, [x,y,z]⟩`, dual vectors after `A`.
pub fn semidirect(a: &Dense) -> Dense {
    let n = a.n;
    let mut b = Dense::zero(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for p in 0..n {
                    *b.at_mut(i, j, k, p) = a.at(i, j, k, p);
                }
                // ad*(x_i,x_j) x_k* = −Σ_l ⟨x_k*, [x_i,x_j,x_l]⟩ x_l*
                for l in 0..n {
                    let v = -a.at(i, j, l, k);
                    let (xi, xj, xs) = (i, j, n + k);
                    for (p, q, r, s) in [(xi, xj, xs, 1), (xj, xs, xi, 1), (xs, xi, xj, 1)] {
                        *b.at_mut(p, q, r, n + l) = s * v;
                    }
                    for (p, q, r) in [(xj, xi, xs), (xi, xs, xj), (xs, xj, xi)] {
                        *b.at_mut(p, q, r, n + l) = -v;
                    }
                }
            }
        }
    }
    b
}

/// Dense `r` for diagonal `D = diag(eps)`: `r = Σ x_i*⊗Dx_i − Dx_i⊗x_i*`.
pub fn r_diag(eps: &[i8]) -> Vec<Vec<i64>> {
    let n = eps.len();
    let mut r = vec![vec![0i64; 2 * n]; 2 * n];
    for (i, &s) in eps.iter().enumerate() {
        r[n + i][i] += s as i64;
        r[i][n + i] -= s as i64;
    }
    r
}

/// Only the first half `Σ x_i*⊗Dx_i`, which is not skew.
pub fn r_half(eps: &[i8]) -> Vec<Vec<i64>> {
    let n = eps.len();
    let mut r = vec![vec![0i64; 2 * n]; 2 * n];
    for (i, &s) in eps.iter().enumerate() {
        r[n + i][i] += s as i64;
    }
    r
}

/// `[[r,r,r]]` as a dense `(2n)⁴` array, from the coordinate formula
/// `r = Σ r^{ab} e_a⊗e_b`.
pub fn cybe(b: &Dense, r: &[Vec<i64>]) -> Vec<i64> {
    let m = b.n;
    let idx = |p: usize, q: usize, s: usize, t: usize| ((p * m + q) * m + s) * m + t;
    let mut out = vec![0i64; m * m * m * m];
    let nz: Vec<(usize, usize, i64)> = (0..m)
        .flat_map(|a| (0..m).map(move |c| (a, c)))
        .filter_map(|(a, c)| (r[a][c] != 0).then_some((a, c, r[a][c])))
        .collect();
    for &(a, bb, ra) in &nz {
        for &(c, d, rc) in &nz {
            for &(ee, f, re) in &nz {
                let k = ra * rc * re;
                for p in 0..m {
                    out[idx(p, bb, d, f)] += k * b.at(a, c, ee, p);
                    out[idx(a, p, d, f)] += k * b.at(bb, c, ee, p);
                    out[idx(a, c, p, f)] += k * b.at(bb, d, ee, p);
                    out[idx(a, c, ee, p)] += k * b.at(bb, d, f, p);
                }
            }
        }
    }
    out
}

/// `Δ = Δ₁+Δ₂+Δ₃` on `B`: `Δ₁(x)_{pqs} = Σ_{a,b} r^{as} r^{bq} [x,e_a,e_b]_p`,
/// `Δ₂(x)_{pqs} = Δ₁(x)_{qsp}`, `Δ₃(x)_{pqs} = Δ₁(x)_{spq}`. Returns the three
/// parts, each indexed `[x][(p*m+q)*m+s]`.
pub fn coproduct(b: &Dense, r: &[Vec<i64>]) -> [Vec<Vec<i64>>; 3] {
    let m = b.n;
    let idx = |p: usize, q: usize, s: usize| (p * m + q) * m + s;
    let mut d1 = vec![vec![0i64; m * m * m]; m];
    for (x, img) in d1.iter_mut().enumerate() {
        for a in 0..m {
            for s in 0..m {
                if r[a][s] == 0 {
                    continue;
                }
                for bb in 0..m {
                    for q in 0..m {
                        if r[bb][q] == 0 {
                            continue;
                        }
                        for p in 0..m {
                            img[idx(p, q, s)] += r[a][s] * r[bb][q] * b.at(x, a, bb, p);
                        }
                    }
                }
            }
        }
    }
    let shuffle = |f: &dyn Fn(usize, usize, usize) -> usize| -> Vec<Vec<i64>> {
        d1.iter()
            .map(|img| {
                let mut out = vec![0; m * m * m];
                for p in 0..m {
                    for q in 0..m {
                        for s in 0..m {
                            out[idx(p, q, s)] = img[f(p, q, s)];
                        }
                    }
                }
                out
            })
            .collect()
    };
    let d2 = shuffle(&|p, q, s| idx(q, s, p));
    let d3 = shuffle(&|p, q, s| idx(s, p, q));
    [d1, d2, d3]
}

pub fn total(parts: &[Vec<Vec<i64>>; 3]) -> Vec<Vec<i64>> {
    (0..parts[0].len())
        .map(|x| (0..parts[0][x].len()).map(|k| parts[0][x][k] + parts[1][x][k] + parts[2][x][k]).collect())
        .collect()
}

pub fn is_alternating(img: &[i64], m: usize) -> bool {
    let idx = |p: usize, q: usize, s: usize| (p * m + q) * m + s;
    (0..m).all(|p| {
        (0..m)
            .all(|q| (0..m).all(|s| img[idx(p, q, s)] == -img[idx(q, p, s)] && img[idx(p, q, s)] == -img[idx(p, s, q)]))
    })
}

/// Dual bracket `[e^a,e^b,e^c] = Σ_x Δ(x)_{abc} e^x`.
pub fn dual(delta: &[Vec<i64>]) -> Dense {
    let m = delta.len();
    let mut d = Dense::zero(m);
    for (x, img) in delta.iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    *d.at_mut(a, b, c, x) = img[(a * m + b) * m + c];
                }
            }
        }
    }
    d
}

/// Slot-`k` cocycle identity on all ordered basis triples.
pub fn cocycle_holds(b: &Dense, part: &[Vec<i64>], slot: usize) -> bool {
    let m = b.n;
    let idx = |p: usize, q: usize, s: usize| (p * m + q) * m + s;
    let apply = |v: &[i64]| -> Vec<i64> {
        let mut out = vec![0; m * m * m];
        for (x, c) in v.iter().enumerate() {
            if *c != 0 {
                for (o, t) in out.iter_mut().zip(&part[x]) {
                    *o += c * t;
                }
            }
        }
        out
    };
    let act = |x: usize, y: usize, t: &[i64]| -> Vec<i64> {
        let mut out = vec![0; m * m * m];
        for p in 0..m {
            for q in 0..m {
                for s in 0..m {
                    let c = t[idx(p, q, s)];
                    if c == 0 {
                        continue;
                    }
                    let f = [p, q, s];
                    let moved = f[slot - 1];
                    for l in 0..m {
                        let k = b.at(x, y, moved, l);
                        if k != 0 {
                            let mut g = f;
                            g[slot - 1] = l;
                            out[idx(g[0], g[1], g[2])] += c * k;
                        }
                    }
                }
            }
        }
        out
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let lhs = apply(&b.basis_bracket(x, y, z));
                let rhs = add(&add(&act(x, y, &part[z]), &act(y, z, &part[x])), &act(z, x, &part[y]));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// All diagonal sign patterns that make `diag(ε)` a derivation, by checking
/// the derivation law on every basis triple.
pub fn diagonal_witnesses(a: &Dense) -> Vec<Vec<i8>> {
    let n = a.n;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let eps: Vec<i8> = (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|p| {
                        let lhs = eps[p] as i64 * a.at(i, j, k, p);
                        let rhs = (eps[i] + eps[j] + eps[k]) as i64 * a.at(i, j, k, p);
                        lhs == rhs
                    })
                })
            })
        });
        if ok {
            out.push(eps);
        }
    }
    out
}

pub fn default_algebra(id: &str) -> AlgebraSpec {
    catalog::catalog_algebra(id, &Params::default()).unwrap()
}
