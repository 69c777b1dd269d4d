//! Quintic rings `Q = R·1 ⊕ L` given by structure constants.
//!
//! Elements of `Q` are 5-vectors of coordinates on `(1, e₁, e₂, e₃, e₄)`;
//! elements of `L` are 4-vectors on `(e₁, …, e₄)`. Ring indices `i, j` in the
//! public API run over `1..=4` and `k` over `0..=4`, matching `c_ij^k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::corelin::{ExactMatrix, Scalar, ScalarRing};
use crate::error::{Error, Result};

pub type Element = Vec<Scalar>;

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    4 * i - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Structure constants of a commutative rank-5 ring with unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuinticRing {
    ring: ScalarRing,
    table: Vec<Vec<Scalar>>,
}

impl fmt::Debug for QuinticRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuinticRing[{}]", self.ring)?;
        for i in 1..=4 {
            for j in i..=4 {
                let row: Vec<String> = (0..5).map(|k| self.constant(i, j, k).to_string()).collect();
                writeln!(f, "  e{i}e{j} = [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

/// The ten grid vectors `e₁..e₄, e₁+e₂, e₁+e₃, e₁+e₄, e₂+e₃, e₂+e₄, e₃+e₄`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GridSet;

impl GridSet {
    pub const LEN: usize = 10;

    /// Index pairs, 0-based, with `(i, i)` standing for `eᵢ`.
    pub fn supports() -> [(usize, usize); 10] {
        [
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 3),
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
        ]
    }

    pub fn vectors(ring: ScalarRing) -> Vec<Element> {
        GridSet::supports()
            .iter()
            .map(|&(a, b)| {
                let mut v = vec![Scalar::zero(ring); 4];
                v[a] = Scalar::one(ring);
                v[b] = Scalar::one(ring);
                v
            })
            .collect()
    }

    pub fn label(idx: usize) -> String {
        let (a, b) = GridSet::supports()[idx];
        if a == b {
            format!("e{}", a + 1)
        } else {
            format!("e{}+e{}", a + 1, b + 1)
        }
    }
}

/// Outcome of the very-degeneracy test over a small prime field.
#[derive(Clone, Debug)]
pub struct VeryDegeneracyReport {
    pub very_degenerate: bool,
    /// Bases of `Q₄ ⊇ Q₃` with `Q₄Q₃ = 0`.
    pub witness: Option<(Vec<Element>, Vec<Element>)>,
    /// Grid indices of a tuple with `F ≠ 0`, and the value.
    pub counterexample: Option<([usize; 5], Scalar)>,
}

/// The three very degenerate quintic algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeryDegenerateType {
    A18,
    A19,
    A20,
}

impl fmt::Display for VeryDegenerateType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VeryDegenerateType::A18 => "A18",
            VeryDegenerateType::A19 => "A19",
            VeryDegenerateType::A20 => "A20",
        };
        f.write_str(s)
    }
}

/// Integral classes in `p⁻¹Q/Q`.
#[derive(Clone, Debug)]
pub struct IntegralClasses {
    pub p: u64,
    pub dim: usize,
    /// 𝔽_p-basis, coordinates on `(1, e₁..e₄)` in `[0, p)`.
    pub basis: Vec<Vec<u64>>,
    pub count: usize,
}

/// Triple-wedge values on all grid triples, for fast evaluation of `F`.
pub struct GridTable {
    ring: ScalarRing,
    tw: Vec<Scalar>,
}

impl GridTable {
    pub fn triple(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.tw[(a * 10 + b) * 10 + c]
    }

    /// `F` on grid indices.
    pub fn f(&self, t: [usize; 5]) -> Scalar {
        let [a, b, c, d, e] = t;
        self.triple(a, b, c) * self.triple(a, d, e)
            + self.triple(a, b, d) * self.triple(a, e, c)
            + self.triple(a, b, e) * self.triple(a, c, d)
    }

    /// First grid tuple in lexicographic order with `F ≠ 0`.
    pub fn first_nonzero(&self) -> Option<([usize; 5], Scalar)> {
        for t in grid_tuples() {
            let v = self.f(t);
            if !v.is_zero() {
                return Some((t, v));
            }
        }
        None
    }

    /// Positive generator of the ideal spanned by all grid values of `F` (ℤ only).
    pub fn gcd_of_values(&self) -> Result<BigInt> {
        if self.ring != ScalarRing::Integer {
            return Err(Error::Dimension(
                "value ideal needs integer constants".into(),
            ));
        }
        let mut g = BigInt::zero();
        for t in grid_tuples() {
            if let Scalar::Integer(v) = self.f(t) {
                g = g.gcd(&v);
            }
        }
        Ok(g)
    }
}

fn grid_tuples() -> impl Iterator<Item = [usize; 5]> {
    (0..100_000usize).map(|mut n| {
        let mut t = [0usize; 5];
        for slot in t.iter_mut().rev() {
            *slot = n % 10;
            n /= 10;
        }
        t
    })
}

impl QuinticRing {
    /// The ring with all products of elements of `L` equal to zero.
    pub fn zero(ring: ScalarRing) -> Self {
        QuinticRing {
            ring,
            table: vec![vec![Scalar::zero(ring); 5]; 10],
        }
    }

    /// Builds a ring from `(i, j, [c⁰..c⁴])` entries; omitted pairs are zero.
    pub fn from_entries(ring: ScalarRing, entries: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let mut q = QuinticRing::zero(ring);
        for (i, j, c) in entries {
            if !(1..=4).contains(i) || !(1..=4).contains(j) || c.len() != 5 {
                return Err(Error::Dimension(format!(
                    "bad structure-constant entry ({i}, {j})"
                )));
            }
            crate::corelin::scalar::check_ring(ring, c)?;
            q.table[pair_index(i - 1, j - 1)] = c.clone();
        }
        Ok(q)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    /// `c_ij^k` for `i, j ∈ 1..=4` and `k ∈ 0..=4`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[pair_index(i - 1, j - 1)][k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        assert_eq!(v.ring(), self.ring);
        self.table[pair_index(i - 1, j - 1)][k] = v;
    }

    /// Entries `(i, j, [c⁰..c⁴])` for `1 ≤ i ≤ j ≤ 4`.
    pub fn entries(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let mut out = Vec::with_capacity(10);
        for i in 1..=4 {
            for j in i..=4 {
                out.push((i, j, self.table[pair_index(i - 1, j - 1)].clone()));
            }
        }
        out
    }

    pub fn change_ring(&self, target: ScalarRing) -> Result<QuinticRing> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.change_ring(target))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuinticRing {
            ring: target,
            table,
        })
    }

    pub fn one(&self) -> Element {
        let mut v = vec![Scalar::zero(self.ring); 5];
        v[0] = Scalar::one(self.ring);
        v
    }

    /// `(0, x)` for `x ∈ L`.
    pub fn lift(&self, x: &[Scalar]) -> Element {
        std::iter::once(Scalar::zero(self.ring))
            .chain(x.iter().cloned())
            .collect()
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Element> {
        if u.len() != 5 || v.len() != 5 {
            return Err(Error::Dimension("ring elements have 5 coordinates".into()));
        }
        crate::corelin::scalar::check_ring(self.ring, u.iter().chain(v))?;
        let mut out = vec![Scalar::zero(self.ring); 5];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let w = a * b;
                if i == 0 {
                    out[j] += &w;
                } else if j == 0 {
                    out[i] += &w;
                } else {
                    for (k, c) in self.table[pair_index(i - 1, j - 1)].iter().enumerate() {
                        if !c.is_zero() {
                            out[k] += &w * c;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![Scalar::zero(self.ring); 5];
        v[i] = Scalar::one(self.ring);
        v
    }

    /// Triples `(i, j, k)` with `(eᵢeⱼ)e_k ≠ eᵢ(eⱼe_k)`; all 64 ordered triples are checked.
    pub fn check_associative(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 1..=4 {
            for j in 1..=4 {
                for k in 1..=4 {
                    let (ei, ej, ek) = (
                        self.basis_element(i),
                        self.basis_element(j),
                        self.basis_element(k),
                    );
                    let left = self
                        .multiply(&self.multiply(&ei, &ej).unwrap(), &ek)
                        .unwrap();
                    let right = self
                        .multiply(&ei, &self.multiply(&ej, &ek).unwrap())
                        .unwrap();
                    if left != right {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn is_associative(&self) -> bool {
        self.check_associative().is_empty()
    }

    /// Coefficient of `e_top` in `x∧y∧z∧(yz mod R)` for `x, y, z ∈ L`.
    pub fn triple_wedge(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Scalar {
        let yz = self
            .multiply(&self.lift(y), &self.lift(z))
            .expect("L elements have 4 coordinates");
        let rows = vec![x.to_vec(), y.to_vec(), z.to_vec(), yz[1..].to_vec()];
        ExactMatrix::from_rows(self.ring, rows)
            .and_then(|m| m.det())
            .expect("4x4 determinant")
    }

    /// The pentaquadratic form `F(a, b, c, d, e)`.
    pub fn f_form(
        &self,
        a: &[Scalar],
        b: &[Scalar],
        c: &[Scalar],
        d: &[Scalar],
        e: &[Scalar],
    ) -> Scalar {
        let w = |u: &[Scalar], v: &[Scalar]| self.triple_wedge(a, u, v);
        w(b, c) * w(d, e) + w(b, d) * w(e, c) + w(b, e) * w(c, d)
    }

    pub fn grid_table(&self) -> GridTable {
        let g = GridSet::vectors(self.ring);
        let mut tw = Vec::with_capacity(1000);
        for a in &g {
            for b in &g {
                for c in &g {
                    tw.push(self.triple_wedge(a, b, c));
                }
            }
        }
        GridTable {
            ring: self.ring,
            tw,
        }
    }

    /// Basis of `{v ∈ span(vs) : v·w = 0 for all w ∈ ws}`.
    fn annihilator_within(&self, vs: &[Element], ws: &[Element]) -> Result<Vec<Element>> {
        let products: Vec<Vec<Element>> = vs
            .iter()
            .map(|v| {
                ws.iter()
                    .map(|w| self.multiply(v, w))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let rows = ws.len() * 5;
        let mut m = ExactMatrix::zeros(self.ring, rows.max(1), vs.len());
        for (col, prods) in products.iter().enumerate() {
            for (wi, p) in prods.iter().enumerate() {
                for k in 0..5 {
                    m.set(wi * 5 + k, col, p[k].clone());
                }
            }
        }
        let kernel = m.kernel()?;
        let field = if self.ring == ScalarRing::Integer {
            ScalarRing::Rational
        } else {
            self.ring
        };
        Ok(kernel
            .iter()
            .map(|c| {
                (0..5)
                    .map(|k| {
                        vs.iter().zip(c).fold(Scalar::zero(field), |acc, (v, ci)| {
                            acc + ci * &v[k].change_ring(field).expect("field embedding")
                        })
                    })
                    .collect()
            })
            .collect())
    }

    fn structural_witness(&self) -> Result<Option<(Vec<Element>, Vec<Element>)>> {
        let ScalarRing::PrimeField(p) = self.ring else {
            return Err(Error::NotAField(self.ring));
        };
        let mut lambda = [0u64; 4];
        loop {
            let q4: Vec<Element> = (0..4)
                .map(|i| {
                    let mut v = self.basis_element(i + 1);
                    v[0] = Scalar::from_i64(self.ring, -(lambda[i] as i64));
                    v
                })
                .collect();
            let ann = self.annihilator_within(&q4, &q4)?;
            if ann.len() >= 3 {
                return Ok(Some((q4, ann[..3].to_vec())));
            }
            let mut pos = 0;
            loop {
                if pos == 4 {
                    return Ok(None);
                }
                lambda[pos] += 1;
                if lambda[pos] < p {
                    break;
                }
                lambda[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Very-degeneracy over 𝔽_p, `p ≤ 7`, by a structural search over
    /// hyperplanes `Q₄ ∌ 1` and by the grid test `F|G⁵ ≡ 0`. The two methods
    /// must agree.
    pub fn is_very_degenerate(&self) -> Result<VeryDegeneracyReport> {
        match self.ring {
            ScalarRing::PrimeField(p) if p <= 7 => {}
            ScalarRing::PrimeField(p) => return Err(Error::FieldTooLarge(p)),
            other => return Err(Error::NotAField(other)),
        }
        let witness = self.structural_witness()?;
        let counterexample = self.grid_table().first_nonzero();
        if witness.is_some() == counterexample.is_some() {
            return Err(Error::Invariant(
                "structural search and grid test disagree on very degeneracy".into(),
            ));
        }
        Ok(VeryDegeneracyReport {
            very_degenerate: witness.is_some(),
            witness,
            counterexample,
        })
    }

    /// Multiplication-by-`w` matrix; column `b` holds the coordinates of `w·b_b`.
    pub fn mult_matrix(&self, w: &[Scalar]) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::zeros(self.ring, 5, 5);
        for b in 0..5 {
            let prod = self.multiply(w, &self.basis_element(b))?;
            for (k, v) in prod.into_iter().enumerate() {
                m.set(k, b, v);
            }
        }
        Ok(m)
    }

    pub fn trace(&self, w: &[Scalar]) -> Result<Scalar> {
        let m = self.mult_matrix(w)?;
        Ok((0..5).fold(Scalar::zero(self.ring), |acc, i| acc + m.get(i, i)))
    }

    pub fn trace_form(&self) -> Result<ExactMatrix> {
        let mut g = ExactMatrix::zeros(self.ring, 5, 5);
        for a in 0..5 {
            for b in a..5 {
                let t =
                    self.trace(&self.multiply(&self.basis_element(a), &self.basis_element(b))?)?;
                g.set(a, b, t.clone());
                g.set(b, a, t);
            }
        }
        Ok(g)
    }

    /// `det(Tr(bᵢbⱼ))` on the basis `(1, e₁..e₄)`.
    pub fn discriminant(&self) -> Result<Scalar> {
        self.trace_form()?.det()
    }

    fn radical_witness(&self) -> Result<(Vec<Element>, Vec<Element>)> {
        let rad = self.trace_form()?.kernel()?;
        let fq = if self.ring == ScalarRing::Integer {
            self.change_ring(ScalarRing::Rational)?
        } else {
            self.clone()
        };
        let standard: Vec<Element> = (0..5).map(|i| fq.basis_element(i)).collect();
        let (q4, q3) = match rad.len() {
            3 => (fq.annihilator_within(&standard, &rad)?, rad),
            4 => {
                let inner = fq.annihilator_within(&rad, &rad)?;
                (rad, inner.into_iter().take(3).collect())
            }
            _ => return Err(Error::NotVeryDegenerate),
        };
        if q4.len() != 4 || q3.len() != 3 {
            return Err(Error::Invariant(
                "radical does not yield a very-degenerate flag".into(),
            ));
        }
        Ok((q4, q3))
    }

    /// Identifies a very degenerate algebra over 𝔽_p or ℚ.
    pub fn classify_very_degenerate(&self) -> Result<VeryDegenerateType> {
        let fq = match self.ring {
            ScalarRing::Integer => self.change_ring(ScalarRing::Rational)?,
            _ => self.clone(),
        };
        let (q4, q3) = match fq.ring {
            ScalarRing::PrimeField(p) if p <= 7 => fq
                .is_very_degenerate()?
                .witness
                .ok_or(Error::NotVeryDegenerate)?,
            _ => {
                if fq.grid_table().first_nonzero().is_some() {
                    return Err(Error::NotVeryDegenerate);
                }
                fq.radical_witness()?
            }
        };
        for a in &q4 {
            for b in &q3 {
                if fq.multiply(a, b)?.iter().any(|v| !v.is_zero()) {
                    return Err(Error::Invariant("witness has Q₄Q₃ ≠ 0".into()));
                }
            }
        }
        let rank_q3 = ExactMatrix::from_rows(fq.ring, q3.clone())?.rank()?;
        let alpha = q4
            .iter()
            .find(|v| {
                let mut rows = q3.clone();
                rows.push((*v).clone());
                ExactMatrix::from_rows(fq.ring, rows)
                    .and_then(|m| m.rank())
                    .unwrap_or(0)
                    > rank_q3
            })
            .ok_or_else(|| Error::Invariant("Q₄ does not extend Q₃".into()))?
            .clone();
        let u = fq.multiply(&alpha, &alpha)?;
        if u.iter().all(Scalar::is_zero) {
            return Ok(VeryDegenerateType::A20);
        }
        let mut cols = vec![alpha];
        cols.extend(q3);
        let m = ExactMatrix::from_rows(fq.ring, cols)?.transpose();
        let mut aug_rows = m.to_rows();
        for (row, v) in aug_rows.iter_mut().zip(&u) {
            row.push(v.clone());
        }
        let aug = ExactMatrix::from_rows(fq.ring, aug_rows)?;
        let (red, pivots) = aug.rref()?;
        if pivots.contains(&4) {
            return Err(Error::Invariant("α² does not lie in Q₄".into()));
        }
        let alpha_component = pivots
            .iter()
            .position(|&c| c == 0)
            .map(|row| red.get(row, 4).clone())
            .unwrap_or_else(|| Scalar::zero(fq.ring));
        Ok(if alpha_component.is_zero() {
            VeryDegenerateType::A19
        } else {
            VeryDegenerateType::A18
        })
    }

    /// Integral classes of `p⁻¹Q/Q` for a ring over ℤ, `p ≤ 5`: the class of
    /// `v/p` is integral when the characteristic polynomial of multiplication
    /// by `v/p` has integer coefficients.
    pub fn integral_class_dim(&self, p: u64) -> Result<IntegralClasses> {
        if self.ring != ScalarRing::Integer {
            return Err(Error::Dimension(
                "integral classes need constants over ℤ".into(),
            ));
        }
        ScalarRing::prime_field(p)?;
        if p > 5 {
            return Err(Error::PrimeTooLarge(p));
        }
        let fq = self.change_ring(ScalarRing::Rational)?;
        let inv_p = Scalar::parse(ScalarRing::Rational, &format!("1/{p}"))?;
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let total = p.pow(5);
        for n in 0..total {
            let mut digits = vec![0u64; 5];
            let mut r = n;
            for d in digits.iter_mut() {
                *d = r % p;
                r /= p;
            }
            let w: Element = digits
                .iter()
                .map(|&d| Scalar::from_i64(ScalarRing::Rational, d as i64) * &inv_p)
                .collect();
            let cp = fq.mult_matrix(&w)?.char_poly()?;
            if cp.iter().all(|c| c.to_integer().is_some()) {
                classes.push(digits);
            }
        }
        let fp = ScalarRing::PrimeField(p);
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut rank = 0;
        for c in &classes {
            let mut rows: Vec<Vec<Scalar>> = basis
                .iter()
                .chain(std::iter::once(c))
                .map(|v| v.iter().map(|&x| Scalar::from_i64(fp, x as i64)).collect())
                .collect();
            let r = ExactMatrix::from_rows(fp, std::mem::take(&mut rows))?.rank()?;
            if r > rank {
                rank = r;
                basis.push(c.clone());
            }
        }
        if classes.len() as u64 != p.pow(rank as u32) {
            return Err(Error::Invariant(format!(
                "{} integral classes do not form a subspace of dimension {rank}",
                classes.len()
            )));
        }
        Ok(IntegralClasses {
            p,
            dim: rank,
            basis,
            count: classes.len(),
        })
    }

    /// The same ring on the basis `eᵢ' = eᵢ + sᵢ·1`.
    pub fn translate(&self, s: &[Scalar]) -> QuinticRing {
        assert_eq!(s.len(), 4);
        let lifted: Vec<Element> = (0..4)
            .map(|i| {
                let mut v = self.basis_element(i + 1);
                v[0] = s[i].clone();
                v
            })
            .collect();
        let mut out = QuinticRing::zero(self.ring);
        for i in 0..4 {
            for j in i..4 {
                let prod = self
                    .multiply(&lifted[i], &lifted[j])
                    .expect("5 coordinates");
                let mut row = prod.clone();
                for k in 0..4 {
                    row[0] -= &prod[k + 1] * &s[k];
                }
                out.table[pair_index(i, j)] = row;
            }
        }
        out
    }

    /// The translate with `c₁₂¹ = c₁₂² = c₃₄³ = c₃₄⁴ = 0`.
    pub fn gauge_normalized(&self) -> QuinticRing {
        let s = vec![
            -self.constant(1, 2, 2),
            -self.constant(1, 2, 1),
            -self.constant(3, 4, 4),
            -self.constant(3, 4, 3),
        ];
        self.translate(&s)
    }

    /// The same ring on the basis `eᵢ' = Σⱼ P_ij eⱼ` of `L`; `P` must be
    /// invertible over the scalar ring.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<QuinticRing> {
        if p.rows() != 4 || p.cols() != 4 {
            return Err(Error::Dimension("L has rank 4".into()));
        }
        if !p.det()?.is_unit() {
            return Err(Error::SingularSystem(
                "basis change is not invertible over the ring".into(),
            ));
        }
        let inv = p.inverse()?.change_ring(self.ring)?;
        let new_basis: Vec<Element> = (0..4).map(|i| self.lift(p.row(i))).collect();
        let mut out = QuinticRing::zero(self.ring);
        for i in 0..4 {
            for j in i..4 {
                let prod = self.multiply(&new_basis[i], &new_basis[j])?;
                let l_coords = inv.transpose().apply(&prod[1..]);
                let mut row = vec![prod[0].clone()];
                row.extend(l_coords);
                out.table[pair_index(i, j)] = row;
            }
        }
        Ok(out)
    }
}
