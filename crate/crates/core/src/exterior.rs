//! Exterior powers of a free module of small rank.
//!
//! Basis vectors are written `f₁..fₙ` in docs and indexed from 0 in code.
//! A degree-k element stores one coefficient per sorted k-subset, with the
//! subsets in lexicographic order.

use std::fmt;

use crate::corelin::{ExactMatrix, Scalar, ScalarRing};
use crate::error::{Error, Result};

/// Sorted k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn subset_position(n: usize, set: &[usize]) -> usize {
    subsets(n, set.len())
        .iter()
        .position(|s| s == set)
        .expect("sorted subset")
}

/// Sign of the permutation sorting `seq`, or 0 when an index repeats.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn signed(ring: ScalarRing, sign: i64, v: Scalar) -> Scalar {
    match sign {
        1 => v,
        -1 => -v,
        _ => Scalar::zero(ring),
    }
}

/// An element of Λᵏ(Rⁿ).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtVector {
    ring: ScalarRing,
    n: usize,
    k: usize,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (s, c) in subsets(self.n, self.k).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let name: Vec<String> = s.iter().map(|i| format!("f{}", i + 1)).collect();
            terms.push(format!("{c}·{}", name.join("∧")));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl ExtVector {
    pub fn zero(ring: ScalarRing, n: usize, k: usize) -> Self {
        let len = subsets(n, k).len();
        ExtVector {
            ring,
            n,
            k,
            coeffs: vec![Scalar::zero(ring); len],
        }
    }

    pub fn from_coeffs(ring: ScalarRing, n: usize, k: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if k > n {
            return Err(Error::DegreeOverflow(k, n));
        }
        let len = subsets(n, k).len();
        if coeffs.len() != len {
            return Err(Error::Dimension(format!(
                "Λ^{k} of rank {n} needs {len} coefficients"
            )));
        }
        crate::corelin::scalar::check_ring(ring, &coeffs)?;
        Ok(ExtVector { ring, n, k, coeffs })
    }

    /// `f_{i₁}∧…∧f_{i_k}` for arbitrary (possibly unsorted) indices.
    pub fn basis(ring: ScalarRing, n: usize, indices: &[usize]) -> Result<Self> {
        if indices.len() > n {
            return Err(Error::DegreeOverflow(indices.len(), n));
        }
        let mut out = ExtVector::zero(ring, n, indices.len());
        let sign = perm_sign(indices);
        if sign != 0 {
            let mut sorted = indices.to_vec();
            sorted.sort_unstable();
            out.coeffs[subset_position(n, &sorted)] = Scalar::from_i64(ring, sign);
        }
        Ok(out)
    }

    /// A degree-1 vector from its coordinates.
    pub fn vector(ring: ScalarRing, coords: &[Scalar]) -> Result<Self> {
        ExtVector::from_coeffs(ring, coords.len(), 1, coords.to_vec())
    }

    /// The 2-vector `Σ_{a<b} A_ab f_a∧f_b` of an alternating matrix.
    pub fn from_skew(a: &ExactMatrix) -> Result<Self> {
        if !a.is_alternating() {
            return Err(Error::NonSkew);
        }
        let n = a.rows();
        let coeffs = subsets(n, 2)
            .iter()
            .map(|s| a.get(s[0], s[1]).clone())
            .collect();
        ExtVector::from_coeffs(a.ring(), n, 2, coeffs)
    }

    /// The alternating matrix of a 2-vector.
    pub fn to_skew(&self) -> Result<ExactMatrix> {
        self.expect_degree(2)?;
        let mut m = ExactMatrix::zeros(self.ring, self.n, self.n);
        for (s, c) in subsets(self.n, 2).iter().zip(&self.coeffs) {
            m.set(s[0], s[1], c.clone());
            m.set(s[1], s[0], -c);
        }
        Ok(m)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `f_{i₁}∧…∧f_{i_k}`, with the sign of the given ordering.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        assert_eq!(indices.len(), self.k);
        let sign = perm_sign(indices);
        if sign == 0 {
            return Scalar::zero(self.ring);
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        signed(
            self.ring,
            sign,
            self.coeffs[subset_position(self.n, &sorted)].clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn expect_degree(&self, k: usize) -> Result<()> {
        if self.k == k {
            Ok(())
        } else {
            Err(Error::WrongDegree {
                expected: k,
                found: self.k,
            })
        }
    }

    fn compatible(&self, other: &ExtVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "ambient ranks {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtVector) -> Result<ExtVector> {
        self.compatible(other)?;
        self.expect_degree(other.k)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExtVector {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &ExtVector) -> Result<ExtVector> {
        self.add(&other.scale(&Scalar::from_i64(self.ring, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> ExtVector {
        ExtVector {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    pub fn wedge(&self, other: &ExtVector) -> Result<ExtVector> {
        self.compatible(other)?;
        let k = self.k + other.k;
        if k > self.n {
            return Err(Error::DegreeOverflow(k, self.n));
        }
        let mut out = ExtVector::zero(self.ring, self.n, k);
        let left = subsets(self.n, self.k);
        let right = subsets(self.n, other.k);
        for (s, a) in left.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (t, b) in right.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                let seq: Vec<usize> = s.iter().chain(t).copied().collect();
                let sign = perm_sign(&seq);
                if sign == 0 {
                    continue;
                }
                let mut sorted = seq;
                sorted.sort_unstable();
                let pos = subset_position(self.n, &sorted);
                out.coeffs[pos] += signed(self.ring, sign, a * b);
            }
        }
        Ok(out)
    }

    /// The quadratic map `μ ↦ μ^□`: for `μ = Σ m_ab f_a∧f_b` it sums
    /// `m_x m_y · f_a∧f_b∧f_c∧f_d` over pairs of terms `x < y`.
    pub fn box_square(&self) -> Result<ExtVector> {
        self.expect_degree(2)?;
        let pairs = subsets(self.n, 2);
        let terms: Vec<(&Vec<usize>, &Scalar)> = pairs
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = ExtVector::zero(self.ring, self.n, 4.min(self.n));
        if self.n < 4 {
            return Ok(out);
        }
        for x in 0..terms.len() {
            for y in x + 1..terms.len() {
                let seq = [terms[x].0[0], terms[x].0[1], terms[y].0[0], terms[y].0[1]];
                let sign = perm_sign(&seq);
                if sign == 0 {
                    continue;
                }
                let mut sorted = seq.to_vec();
                sorted.sort_unstable();
                let pos = subset_position(self.n, &sorted);
                out.coeffs[pos] += signed(self.ring, sign, terms[x].1 * terms[y].1);
            }
        }
        Ok(out)
    }

    /// Coefficient of the top generator `f₁∧…∧fₙ`.
    pub fn top_coeff(&self) -> Result<Scalar> {
        self.expect_degree(self.n)?;
        Ok(self.coeffs[0].clone())
    }

    /// The covector `v ↦ (coefficient of f_top in α∧v)` of a degree n−1 element.
    pub fn hat(&self) -> Result<Vec<Scalar>> {
        self.expect_degree(self.n - 1)?;
        Ok((0..self.n)
            .map(|i| {
                let rest: Vec<usize> = (0..self.n).filter(|&j| j != i).collect();
                let mut seq = rest.clone();
                seq.push(i);
                signed(
                    self.ring,
                    perm_sign(&seq),
                    self.coeffs[subset_position(self.n, &rest)].clone(),
                )
            })
            .collect())
    }

    /// Inverse of [`ExtVector::hat`].
    pub fn from_hat(ring: ScalarRing, covector: &[Scalar]) -> Result<ExtVector> {
        let n = covector.len();
        let mut out = ExtVector::zero(ring, n, n - 1);
        for (i, c) in covector.iter().enumerate() {
            let rest: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let mut seq = rest.clone();
            seq.push(i);
            out.coeffs[subset_position(n, &rest)] = signed(ring, perm_sign(&seq), c.clone());
        }
        Ok(out)
    }

    /// The degree n−1 generator `ĝᵢ` whose hat is the i-th coordinate covector.
    pub fn standard_generator(ring: ScalarRing, n: usize, i: usize) -> ExtVector {
        let mut cov = vec![Scalar::zero(ring); n];
        cov[i] = Scalar::one(ring);
        ExtVector::from_hat(ring, &cov).expect("valid covector")
    }

    /// Image under Λᵏg, where `g` sends `f_j` to `Σ_i g[i][j] f_i`.
    pub fn pushforward(&self, g: &ExactMatrix) -> Result<ExtVector> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::Dimension("pushforward needs an n×n matrix".into()));
        }
        let subs = subsets(self.n, self.k);
        let mut out = ExtVector::zero(self.ring, self.n, self.k);
        for (t, c) in subs.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (pos, s) in subs.iter().enumerate() {
                let mut minor = ExactMatrix::zeros(self.ring, self.k, self.k);
                for (a, &i) in s.iter().enumerate() {
                    for (b, &j) in t.iter().enumerate() {
                        minor.set(a, b, g.get(i, j).clone());
                    }
                }
                out.coeffs[pos] += c * &minor.det()?;
            }
        }
        Ok(out)
    }
}

/// `μ(α, β) = Σ_{a<b} m_ab (â_a b̂_b − â_b b̂_a)`, the coefficient of `f_top^⊗2`.
pub fn contract(mu: &ExtVector, alpha: &ExtVector, beta: &ExtVector) -> Result<Scalar> {
    mu.expect_degree(2)?;
    mu.compatible(alpha)?;
    mu.compatible(beta)?;
    let n = mu.n;
    let a = alpha.hat()?;
    let b = beta.hat()?;
    let mut acc = Scalar::zero(mu.ring);
    for (s, m) in subsets(n, 2).iter().zip(&mu.coeffs) {
        if m.is_zero() {
            continue;
        }
        let (x, y) = (s[0], s[1]);
        acc += m * &(&a[x] * &b[y] - &a[y] * &b[x]);
    }
    Ok(acc)
}

/// Determinant of five 4-vectors, normalized so the standard generators give 1.
pub fn det_in_wedge4(ws: &[ExtVector]) -> Result<Scalar> {
    let first = ws
        .first()
        .ok_or_else(|| Error::Dimension("no vectors".into()))?;
    let n = first.n;
    if ws.len() != n {
        return Err(Error::Dimension(format!(
            "need {n} vectors, got {}",
            ws.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for w in ws {
        first.compatible(w)?;
        rows.push(w.hat()?);
    }
    ExactMatrix::from_rows(first.ring, rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: ScalarRing = ScalarRing::Integer;

    fn b(idx: &[usize]) -> ExtVector {
        ExtVector::basis(Z, 5, idx).unwrap()
    }

    fn one() -> Scalar {
        Scalar::one(Z)
    }

    #[test]
    fn wedge_examples() {
        let top4 = b(&[0, 1]).wedge(&b(&[2, 3])).unwrap();
        assert_eq!(top4, b(&[0, 1, 2, 3]));
        assert!(b(&[0, 1]).wedge(&b(&[1, 2])).unwrap().is_zero());
        let w = b(&[1, 2, 3, 4]).wedge(&b(&[0])).unwrap();
        assert_eq!(w.top_coeff().unwrap(), one());
        assert!(matches!(
            b(&[0, 1, 2]).wedge(&b(&[3, 4, 0])),
            Err(Error::DegreeOverflow(6, 5))
        ));
    }

    #[test]
    fn box_square_examples() {
        assert!(b(&[0, 1]).box_square().unwrap().is_zero());
        let mu = b(&[0, 1]).add(&b(&[2, 3])).unwrap();
        assert_eq!(mu.box_square().unwrap(), b(&[0, 1, 2, 3]));
        let f2 = ScalarRing::PrimeField(2);
        let mu2 = ExtVector::basis(f2, 5, &[0, 1])
            .unwrap()
            .add(&ExtVector::basis(f2, 5, &[1, 2]).unwrap())
            .unwrap()
            .add(&ExtVector::basis(f2, 5, &[2, 3]).unwrap())
            .unwrap();
        assert_eq!(
            mu2.box_square().unwrap(),
            ExtVector::basis(f2, 5, &[0, 1, 2, 3]).unwrap()
        );
        assert!(matches!(
            b(&[0]).box_square(),
            Err(Error::WrongDegree {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn hat_round_trip_and_generators() {
        let gens: Vec<ExtVector> = (0..5)
            .map(|i| ExtVector::standard_generator(Z, 5, i))
            .collect();
        assert_eq!(det_in_wedge4(&gens).unwrap(), one());
        let mut rep = gens.clone();
        rep[1] = rep[0].clone();
        assert!(det_in_wedge4(&rep).unwrap().is_zero());
        let cov: Vec<Scalar> = [3, -1, 4, 1, -5]
            .iter()
            .map(|&v| Scalar::from_i64(Z, v))
            .collect();
        assert_eq!(ExtVector::from_hat(Z, &cov).unwrap().hat().unwrap(), cov);
    }

    #[test]
    fn contraction_example() {
        let mu = b(&[0, 1]);
        let alpha = b(&[1, 2, 3, 4]);
        let beta = b(&[0, 2, 3, 4]);
        // â = f₁*, b̂ = −f₂*
        assert_eq!(alpha.hat().unwrap()[0], one());
        assert_eq!(beta.hat().unwrap()[1], -one());
        assert_eq!(contract(&mu, &alpha, &beta).unwrap(), -one());
        assert!(contract(&mu, &alpha, &alpha).unwrap().is_zero());
    }

    #[test]
    fn skew_round_trip() {
        let mu = b(&[0, 3])
            .add(&b(&[2, 4]).scale(&Scalar::from_i64(Z, 7)))
            .unwrap();
        let a = mu.to_skew().unwrap();
        assert_eq!(ExtVector::from_skew(&a).unwrap(), mu);
    }
}
