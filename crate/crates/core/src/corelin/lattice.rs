//! Full-rank lattices in ℤⁿ and ℚⁿ kept in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::corelin::matrix::ExactMatrix;
use crate::corelin::scalar::{Scalar, ScalarRing};
use crate::error::{Error, Result};

/// Full-rank sublattice of ℤⁿ. The basis is the row-style HNF: upper
/// triangular, positive pivots, entries above a pivot in `[0, pivot)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerLattice {
    basis: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.basis.iter().map(|r| format_row(r)))
            .finish()
    }
}

fn format_row(r: &[BigInt]) -> String {
    let parts: Vec<String> = r.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Row-reduces `gens` to HNF; returns the nonzero rows and their pivot columns.
fn hnf_rows(mut rows: Vec<Vec<BigInt>>, n: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut cur = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if cur == rows.len() {
            break;
        }
        loop {
            let best = (cur..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(cur, best);
            let mut done = true;
            for i in cur + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[cur][c]);
                let pivot_row = rows[cur].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[cur][c].is_zero() {
            continue;
        }
        if rows[cur][c].is_negative() {
            for x in rows[cur].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[cur].clone();
        for i in 0..cur {
            let q = rows[i][c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        pivots.push(c);
        cur += 1;
        rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    }
    rows.truncate(cur);
    (rows, pivots)
}

impl IntegerLattice {
    /// Canonical HNF basis of the lattice spanned by `gens` in ℤⁿ.
    pub fn from_generators(gens: &[Vec<BigInt>], n: usize) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::Dimension(format!(
                "generator of length {} in rank {n}",
                bad.len()
            )));
        }
        let (rows, pivots) = hnf_rows(gens.to_vec(), n);
        if pivots.len() != n {
            return Err(Error::RankDeficient {
                expected: n,
                found: pivots.len(),
            });
        }
        Ok(IntegerLattice { basis: rows })
    }

    pub fn from_i64(gens: &[Vec<i64>], n: usize) -> Result<Self> {
        let gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        IntegerLattice::from_generators(&gens, n)
    }

    pub fn standard(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        IntegerLattice { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        let rows = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| Scalar::from_bigint(ScalarRing::Integer, v))
                    .collect()
            })
            .collect();
        ExactMatrix::from_rows(ScalarRing::Integer, rows).expect("integer rows")
    }

    /// `[ℤⁿ : L]`, the product of the pivots.
    pub fn index(&self) -> BigInt {
        (0..self.rank()).map(|i| self.basis[i][i].clone()).product()
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.rank() {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let (q, r) = rest[i].div_rem(&self.basis[i][i]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(&self.basis[i]) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let gens: Vec<Vec<BigInt>> = self.basis.iter().chain(&other.basis).cloned().collect();
        IntegerLattice::from_generators(&gens, self.rank()).expect("sum of full-rank lattices")
    }

    pub fn intersection(&self, other: &IntegerLattice) -> IntegerLattice {
        let r =
            RationalLattice::from(self.clone()).intersection(&RationalLattice::from(other.clone()));
        r.to_integer_lattice()
            .expect("intersection of integer lattices is integral")
    }

    pub fn scale(&self, k: &BigInt) -> IntegerLattice {
        assert!(k.is_positive(), "lattice scale factor must be positive");
        IntegerLattice {
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|v| v * k).collect())
                .collect(),
        }
    }

    /// `{x ∈ ℚⁿ : x·b ∈ ℤ for every b in the lattice}`.
    pub fn dual(&self) -> RationalLattice {
        let inv = self
            .basis_matrix()
            .inverse()
            .expect("full rank")
            .transpose();
        let rows: Vec<Vec<BigRational>> = inv
            .to_rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.to_rational().expect("rational"))
                    .collect()
            })
            .collect();
        RationalLattice::from_rational_rows(&rows, self.rank()).expect("full rank")
    }
}

/// A full-rank lattice `(1/d)·H` in ℚⁿ with `H` integral in HNF and `d > 0`
/// minimal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalLattice {
    denom: BigInt,
    numer: IntegerLattice,
}

impl fmt::Debug for RationalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{})·{:?}", self.denom, self.numer)
    }
}

impl From<IntegerLattice> for RationalLattice {
    fn from(l: IntegerLattice) -> Self {
        RationalLattice {
            denom: BigInt::one(),
            numer: l,
        }
    }
}

impl RationalLattice {
    fn normalized(denom: BigInt, numer: IntegerLattice) -> Self {
        let g = numer
            .basis
            .iter()
            .flatten()
            .fold(denom.clone(), |g, v| g.gcd(v));
        if g.is_one() {
            return RationalLattice { denom, numer };
        }
        let basis = numer
            .basis
            .iter()
            .map(|r| r.iter().map(|v| v / &g).collect())
            .collect();
        RationalLattice {
            denom: denom / &g,
            numer: IntegerLattice { basis },
        }
    }

    pub fn from_rational_rows(gens: &[Vec<BigRational>], n: usize) -> Result<Self> {
        let d = gens
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q * BigRational::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect();
        Ok(RationalLattice::normalized(
            d.clone(),
            IntegerLattice::from_generators(&ints, n)?,
        ))
    }

    pub fn rank(&self) -> usize {
        self.numer.rank()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn numerator_lattice(&self) -> &IntegerLattice {
        &self.numer
    }

    /// Basis rows as rational vectors (the HNF rows divided by the denominator).
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.numer
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| BigRational::new(v.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn to_integer_lattice(&self) -> Option<IntegerLattice> {
        self.denom.is_one().then(|| self.numer.clone())
    }

    /// Covolume `|det B|` of the lattice.
    pub fn covolume(&self) -> BigRational {
        BigRational::new(self.numer.index(), self.denom.pow(self.rank() as u32))
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let d = BigRational::from_integer(self.denom.clone());
        let scaled: Option<Vec<BigInt>> = v
            .iter()
            .map(|q| {
                let s = q * &d;
                s.is_integer().then(|| s.to_integer())
            })
            .collect();
        scaled.is_some_and(|s| self.numer.contains(&s))
    }

    pub fn is_sublattice_of(&self, other: &RationalLattice) -> bool {
        self.basis().iter().all(|r| other.contains(r))
    }

    /// `[other : self]` when `self ⊆ other`.
    pub fn index_in(&self, other: &RationalLattice) -> Option<BigInt> {
        if !self.is_sublattice_of(other) {
            return None;
        }
        let q = self.covolume() / other.covolume();
        debug_assert!(q.is_integer());
        Some(q.to_integer())
    }

    pub fn scale(&self, k: &BigRational) -> RationalLattice {
        assert!(k.is_positive(), "lattice scale factor must be positive");
        let d = &self.denom * k.denom();
        let numer = self.numer.scale(k.numer());
        RationalLattice::normalized(d, numer)
    }

    pub fn sum(&self, other: &RationalLattice) -> RationalLattice {
        let d = self.denom.lcm(&other.denom);
        let a = self.numer.scale(&(&d / &self.denom));
        let b = other.numer.scale(&(&d / &other.denom));
        RationalLattice::normalized(d, a.sum(&b))
    }

    pub fn dual(&self) -> RationalLattice {
        self.numer
            .dual()
            .scale(&BigRational::from_integer(self.denom.clone()))
    }

    pub fn intersection(&self, other: &RationalLattice) -> RationalLattice {
        self.dual().sum(&other.dual()).dual()
    }
}
