//! Small dense matrices with exact entries.

use std::fmt;

use crate::corelin::scalar::{Scalar, ScalarRing};
use crate::error::{Error, Result};

/// A rectangular matrix whose entries all live in one scalar ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: ScalarRing,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix[{}; {}x{}]", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn zeros(ring: ScalarRing, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: ScalarRing, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ring));
        }
        m
    }

    pub fn from_rows(ring: ScalarRing, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            crate::corelin::scalar::check_ring(ring, &row)?;
            data.extend(row);
        }
        Ok(ExactMatrix {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(ring: ScalarRing, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(ring, v)).collect())
            .collect();
        ExactMatrix::from_rows(ring, rows).expect("homogeneous by construction")
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.ring(), self.ring);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.ring != rhs.ring {
            return Err(Error::MixedRings {
                left: self.ring,
                right: rhs.ring,
            });
        }
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(Scalar::zero(self.ring), |acc, i| {
                    acc + &v[i] * self.get(i, j)
                })
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(self.ring), |acc, j| {
                    acc + self.get(i, j) * &v[j]
                })
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn change_ring(&self, target: ScalarRing) -> Result<ExactMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.change_ring(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact over ℤ as well.
    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Scalar::one(self.ring);
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Scalar::zero(self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    let v = num.checked_div(&prev).expect("Bareiss division is exact");
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        let d = if n == 0 {
            Scalar::one(self.ring)
        } else {
            m.get(n - 1, n - 1).clone()
        };
        Ok(if negate { -d } else { d })
    }

    fn field_copy(&self) -> Result<ExactMatrix> {
        match self.ring {
            ScalarRing::Integer => self.change_ring(ScalarRing::Rational),
            _ => Ok(self.clone()),
        }
    }

    /// Reduced row echelon form over the fraction field; returns the pivot columns.
    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        let mut a = self.field_copy()?;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inverse().expect("nonzero in a field");
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let v = a.get(i, j) - &(&f * a.get(r, j));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((a, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right kernel `{x : A x = 0}` over the fraction field.
    pub fn kernel(&self) -> Result<Vec<Vec<Scalar>>> {
        let (a, pivots) = self.rref()?;
        let ring = a.ring;
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(ring); a.cols];
                v[fc] = Scalar::one(ring);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(row, fc);
                }
                v
            })
            .collect())
    }

    /// Inverse over the fraction field (ℤ input yields a rational matrix).
    pub fn inverse(&self) -> Result<ExactMatrix> {
        self.require_square()?;
        let n = self.rows;
        let a = self.field_copy()?;
        let ring = a.ring;
        let mut aug = ExactMatrix::zeros(ring, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, a.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(ring));
        }
        let (red, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularSystem("matrix is not invertible".into()));
        }
        let mut inv = ExactMatrix::zeros(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Unique solution of `A x = b` for square nonsingular `A` over a field.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.require_square()?;
        let inv = self.inverse()?;
        let b: Vec<Scalar> = b
            .iter()
            .map(|x| x.change_ring(inv.ring))
            .collect::<Result<_>>()?;
        Ok(inv.apply(&b))
    }

    /// Monic characteristic polynomial `det(tI - A)`, coefficients in ascending
    /// degree. Integer input is handled over ℚ and returned over ℤ.
    pub fn char_poly(&self) -> Result<Vec<Scalar>> {
        self.require_square()?;
        let coeffs = hessenberg_char_poly(&self.field_copy()?);
        if self.ring == ScalarRing::Integer {
            coeffs
                .iter()
                .map(|c| c.change_ring(ScalarRing::Integer))
                .collect()
        } else {
            Ok(coeffs)
        }
    }

    /// Zero diagonal and `A = -Aᵀ`; meaningful in every characteristic.
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.cols).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    /// Pfaffian by expansion along the first row, normalized so that the
    /// block-diagonal matrix of `[[0, 1], [-1, 0]]` blocks has Pfaffian 1.
    pub fn pfaffian(&self) -> Result<Scalar> {
        self.require_square()?;
        if self.rows % 2 == 1 {
            return Err(Error::OddSize(self.rows));
        }
        if !self.is_alternating() {
            return Err(Error::NonSkew);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(pfaffian_rec(self, &idx))
    }
}

fn pfaffian_rec(a: &ExactMatrix, idx: &[usize]) -> Scalar {
    if idx.is_empty() {
        return Scalar::one(a.ring);
    }
    let first = idx[0];
    let mut acc = Scalar::zero(a.ring);
    for pos in 1..idx.len() {
        let entry = a.get(first, idx[pos]);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != 0 && k != pos)
            .map(|(_, &v)| v)
            .collect();
        let term = entry * &pfaffian_rec(a, &rest);
        if pos % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn hessenberg_char_poly(a: &ExactMatrix) -> Vec<Scalar> {
    let n = a.rows;
    let ring = a.ring;
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
            continue;
        };
        if i != m {
            h.swap_rows(i, m);
            for r in 0..n {
                h.data.swap(r * n + i, r * n + m);
            }
        }
        let pivot_inv = h.get(m, m - 1).inverse().expect("nonzero pivot");
        for j in m + 1..n {
            let u = h.get(j, m - 1) * &pivot_inv;
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = h.get(j, c) - &(&u * h.get(m, c));
                h.set(j, c, v);
            }
            for r in 0..n {
                let v = h.get(r, m) + &(&u * h.get(r, j));
                h.set(r, m, v);
            }
        }
    }
    // p_k = characteristic polynomial of the leading k x k block.
    let mut polys: Vec<Vec<Scalar>> = vec![vec![Scalar::one(ring)]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![Scalar::zero(ring); m + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= &(h.get(m, m) * c);
        }
        let mut prod = Scalar::one(ring);
        for i in (0..m).rev() {
            prod = &prod * h.get(i + 1, i);
            let coef = h.get(i, m) * &prod;
            if coef.is_zero() {
                continue;
            }
            for (d, c) in polys[i].iter().enumerate() {
                next[d] -= &(&coef * c);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(ScalarRing::Integer, rows)
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&x| Scalar::from_i64(ScalarRing::Integer, x))
            .collect()
    }

    #[test]
    fn pfaffian_sign_anchors() {
        let j = z(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(
            j.pfaffian().unwrap(),
            Scalar::from_i64(ScalarRing::Integer, 1)
        );
        let jj = z(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ]);
        assert_eq!(
            jj.pfaffian().unwrap(),
            Scalar::from_i64(ScalarRing::Integer, 1)
        );
    }

    #[test]
    fn pfaffian_errors() {
        assert!(matches!(z(&[vec![0]]).pfaffian(), Err(Error::OddSize(1))));
        assert!(matches!(
            z(&[vec![0, 1], vec![1, 0]]).pfaffian(),
            Err(Error::NonSkew)
        ));
        assert!(matches!(
            z(&[vec![1, 1], vec![-1, 0]]).pfaffian(),
            Err(Error::NonSkew)
        ));
        // over F_2 an alternating matrix is symmetric
        let f2 = ExactMatrix::from_i64_rows(ScalarRing::PrimeField(2), &[vec![0, 1], vec![1, 0]]);
        assert!(f2.pfaffian().unwrap().is_one());
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            z(&[vec![0, 0], vec![0, 0]]).char_poly().unwrap(),
            ints(&[0, 0, 1])
        );
        let id = ExactMatrix::identity(ScalarRing::Integer, 3);
        assert_eq!(id.char_poly().unwrap(), ints(&[-1, 3, -3, 1]));
        // companion matrix of t^3 - 2t + 1
        let comp = z(&[vec![0, 0, -1], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(comp.char_poly().unwrap(), ints(&[1, -2, 0, 1]));
        assert!(matches!(
            z(&[vec![1, 2]]).char_poly(),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn char_poly_handles_pivot_swaps() {
        // zero subdiagonal entry forces a row/column swap during reduction
        let a = z(&[
            vec![1, 2, 3, 4],
            vec![0, 5, 6, 7],
            vec![8, 9, 1, 2],
            vec![3, 4, 5, 6],
        ]);
        let cp = a.char_poly().unwrap();
        // oracle: det(tI - A) evaluated at t = 0..4 against the polynomial
        for t in 0..5i64 {
            let mut shifted = a.scale(&Scalar::from_i64(ScalarRing::Integer, -1));
            for i in 0..4 {
                let v = shifted.get(i, i) + &Scalar::from_i64(ScalarRing::Integer, t);
                shifted.set(i, i, v);
            }
            let val = cp
                .iter()
                .rev()
                .fold(Scalar::zero(ScalarRing::Integer), |acc, c| {
                    acc * Scalar::from_i64(ScalarRing::Integer, t) + c
                });
            assert_eq!(shifted.det().unwrap(), val);
        }
    }

    #[test]
    fn det_inverse_solve() {
        let a = z(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.det().unwrap(), Scalar::from_i64(ScalarRing::Integer, 18));
        let inv = a.inverse().unwrap();
        let prod = a
            .change_ring(ScalarRing::Rational)
            .unwrap()
            .mul(&inv)
            .unwrap();
        assert_eq!(prod, ExactMatrix::identity(ScalarRing::Rational, 3));
        let x = a.solve(&ints(&[3, 5, 5])).unwrap();
        assert!(x.iter().all(|v| v.is_one()));
        let sing = z(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.det().unwrap().is_zero());
        assert!(sing.inverse().is_err());
        assert_eq!(sing.kernel().unwrap().len(), 1);
    }
}
