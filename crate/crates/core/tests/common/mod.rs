#![allow(dead_code)]

//! Oracles that do not go through the library: rings embedded in ℤ⁵ with
//! componentwise multiplication, and determinants by permutation expansion.

use quintic_resolvent::quintic::{GridSet, QuinticRing};
use quintic_resolvent::{Scalar, ScalarRing};

pub fn permutations(n: usize) -> Vec<(Vec<usize>, i128)> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<(Vec<usize>, i128)>) {
        if prefix.len() == n {
            let mut sign = 1;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        sign = -sign;
                    }
                }
            }
            out.push((prefix.clone(), sign));
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    permutations(n)
        .iter()
        .map(|(p, s)| s * (0..n).map(|r| m[r][p[r]]).product::<i128>())
        .sum()
}

/// A rank-5 subring of ℤ⁵ given by the ℤ⁵-coordinates of `1, e₁..e₄`.
pub struct SplitModel {
    basis: Vec<Vec<i128>>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl SplitModel {
    pub fn new(l_basis: [[i128; 5]; 4]) -> Self {
        let mut basis = vec![vec![1; 5]];
        basis.extend(l_basis.iter().map(|r| r.to_vec()));
        let det = leibniz_det(&basis);
        assert_ne!(det, 0);
        // adjugate: adj[j][i] = (-1)^{i+j} minor(i, j)
        let mut adj = vec![vec![0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                let minor: Vec<Vec<i128>> = (0..5)
                    .filter(|&r| r != i)
                    .map(|r| (0..5).filter(|&c| c != j).map(|c| basis[r][c]).collect())
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[j][i] = sign * leibniz_det(&minor);
            }
        }
        SplitModel { basis, adj, det }
    }

    pub fn diagonal(d: [i128; 4]) -> Self {
        let mut rows = [[0; 5]; 4];
        for i in 0..4 {
            rows[i][i] = d[i];
        }
        SplitModel::new(rows)
    }

    pub fn embed(&self, x: &[i128]) -> Vec<i128> {
        (0..5)
            .map(|c| (0..5).map(|r| x[r] * self.basis[r][c]).sum())
            .collect()
    }

    pub fn coords(&self, v: &[i128]) -> Vec<i128> {
        // x B = v  ⇒  x = v B⁻¹ = v adj / det
        (0..5)
            .map(|c| {
                let num: i128 = (0..5).map(|r| v[r] * self.adj[r][c]).sum();
                assert_eq!(num % self.det, 0, "product leaves the lattice");
                num / self.det
            })
            .collect()
    }

    /// Product of two elements given on `(1, e₁..e₄)`.
    pub fn mul(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        let (a, b) = (self.embed(x), self.embed(y));
        self.coords(&a.iter().zip(&b).map(|(s, t)| s * t).collect::<Vec<_>>())
    }

    /// `x ∧ y ∧ z ∧ yz` in `Λ⁴L` for `x, y, z ∈ L`.
    pub fn triple_wedge(&self, x: &[i128], y: &[i128], z: &[i128]) -> i128 {
        let lift = |v: &[i128]| {
            let mut w = vec![0];
            w.extend_from_slice(v);
            w
        };
        let yz = self.mul(&lift(y), &lift(z));
        leibniz_det(&[x.to_vec(), y.to_vec(), z.to_vec(), yz[1..].to_vec()])
    }

    pub fn f_form(&self, t: [&[i128]; 5]) -> i128 {
        let [a, b, c, d, e] = t;
        self.triple_wedge(a, b, c) * self.triple_wedge(a, d, e)
            + self.triple_wedge(a, b, d) * self.triple_wedge(a, e, c)
            + self.triple_wedge(a, b, e) * self.triple_wedge(a, c, d)
    }

    /// Structure constants `c_ij^k` on `(1, e₁..e₄)`, `1 ≤ i ≤ j ≤ 4`.
    pub fn constants(&self) -> Vec<(usize, usize, Vec<i128>)> {
        let mut out = Vec::new();
        for i in 1..=4 {
            for j in i..=4 {
                let mut x = vec![0; 5];
                let mut y = vec![0; 5];
                x[i] = 1;
                y[j] = 1;
                out.push((i, j, self.mul(&x, &y)));
            }
        }
        out
    }

    pub fn to_ring(&self, ring: ScalarRing) -> QuinticRing {
        let entries: Vec<_> = self
            .constants()
            .into_iter()
            .map(|(i, j, v)| {
                (
                    i,
                    j,
                    v.iter()
                        .map(|&c| Scalar::from_i64(ring, c as i64))
                        .collect(),
                )
            })
            .collect();
        QuinticRing::from_entries(ring, &entries).unwrap()
    }

    /// `gcd` of `F` over all five-tuples of grid vectors.
    pub fn grid_gcd(&self) -> i128 {
        let grid: Vec<Vec<i128>> = GridSet::supports()
            .iter()
            .map(|&(a, b)| {
                let mut v = vec![0; 4];
                v[a] += 1;
                if b != a {
                    v[b] += 1;
                }
                v
            })
            .collect();
        let n = grid.len();
        let mut tw = vec![0i128; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    tw[(a * n + b) * n + c] = self.triple_wedge(&grid[a], &grid[b], &grid[c]);
                }
            }
        }
        let t = |a: usize, b: usize, c: usize| tw[(a * n + b) * n + c];
        let mut g: i128 = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for e in 0..n {
                            let f = t(a, b, c) * t(a, d, e)
                                + t(a, b, d) * t(a, e, c)
                                + t(a, b, e) * t(a, c, d);
                            g = gcd(g, f);
                        }
                    }
                }
            }
        }
        g
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn to_i128(v: &[Scalar]) -> Vec<i128> {
    v.iter()
        .map(|s| s.to_integer().unwrap().try_into().unwrap())
        .collect()
}

pub fn scalars(ring: ScalarRing, v: &[i128]) -> Vec<Scalar> {
    v.iter()
        .map(|&x| Scalar::from_i64(ring, x as i64))
        .collect()
}

/// `φ(eᵢ) = fᵢ ∧ (f_{i−1} + f_{i+1})`, indices mod 5, as skew matrices.
pub fn cyclic_matrices() -> Vec<Vec<Vec<i128>>> {
    (0..5)
        .map(|i| {
            let mut a = vec![vec![0i128; 5]; 5];
            for nb in [(i + 4) % 5, (i + 1) % 5] {
                a[i][nb] += 1;
                a[nb][i] -= 1;
            }
            a
        })
        .collect()
}
