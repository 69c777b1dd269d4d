//! Resolvent data `(φ, θ)` in coordinates and reconstruction of the ring.
//!
//! `φ(e_top ⊗ eᵢ)` is the alternating matrix `Aᵢ` on the basis `f₁..f₅` of
//! `M`, and `θ(f_top) = t·e_top^⊗3`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corelin::{ExactMatrix, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::exterior::{contract, ExtVector};
use crate::quintic::{GridSet, QuinticRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolventData {
    ring: ScalarRing,
    phi: Vec<ExactMatrix>,
    t: Scalar,
}

/// One failed identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub z: Vec<Scalar>,
    pub resolvent_side: Scalar,
    pub ring_side: Scalar,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub grid_checked: usize,
    pub random_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn unit(ring: ScalarRing, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(ring); 4];
    v[i] = Scalar::one(ring);
    v
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl ResolventData {
    pub fn new(ring: ScalarRing, phi: Vec<ExactMatrix>, t: Scalar) -> Result<Self> {
        if phi.len() != 4 {
            return Err(Error::Dimension(format!(
                "need 4 matrices, got {}",
                phi.len()
            )));
        }
        for a in &phi {
            if a.ring() != ring {
                return Err(Error::MixedRings {
                    left: ring,
                    right: a.ring(),
                });
            }
            if a.rows() != 5 || a.cols() != 5 {
                return Err(Error::NonSquare {
                    rows: a.rows(),
                    cols: a.cols(),
                });
            }
            if !a.is_alternating() {
                return Err(Error::NonSkew);
            }
        }
        if t.ring() != ring {
            return Err(Error::MixedRings {
                left: ring,
                right: t.ring(),
            });
        }
        Ok(ResolventData { ring, phi, t })
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn phi(&self) -> &[ExactMatrix] {
        &self.phi
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    /// θ is an isomorphism.
    pub fn is_numerical(&self) -> bool {
        self.t.is_unit()
    }

    pub fn change_ring(&self, target: ScalarRing) -> Result<ResolventData> {
        let phi = self
            .phi
            .iter()
            .map(|a| a.change_ring(target))
            .collect::<Result<Vec<_>>>()?;
        ResolventData::new(target, phi, self.t.change_ring(target)?)
    }

    /// `φ(e_top ⊗ x)` as a skew matrix.
    pub fn phi_matrix(&self, x: &[Scalar]) -> ExactMatrix {
        assert_eq!(x.len(), 4);
        let mut m = ExactMatrix::zeros(self.ring, 5, 5);
        for (a, xi) in self.phi.iter().zip(x) {
            if xi.is_zero() {
                continue;
            }
            for r in 0..5 {
                for c in 0..5 {
                    let v = m.get(r, c) + &(xi * a.get(r, c));
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn phi_of(&self, x: &[Scalar]) -> ExtVector {
        ExtVector::from_skew(&self.phi_matrix(x)).expect("alternating by construction")
    }

    /// `φ^□(x) = φ(x)^□ ∈ Λ⁴M`.
    pub fn phi_box(&self, x: &[Scalar]) -> ExtVector {
        self.phi_of(x).box_square().expect("degree 2")
    }

    /// `t²·φ(x)(φ(y)^□, φ(z)^□)`.
    pub fn s_value(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Scalar {
        let c = contract(&self.phi_of(x), &self.phi_box(y), &self.phi_box(z)).expect("rank 5");
        &self.t * &self.t * c
    }

    /// Compares both sides of the resolvent identity on `x ∈ {eᵢ}`, `y, z` in
    /// the grid (400 checks), plus 20 random triples from `seed`.
    pub fn verify_seeded(&self, q: &QuinticRing, seed: u64) -> Result<VerifyReport> {
        if q.ring() != self.ring {
            return Err(Error::MixedRings {
                left: self.ring,
                right: q.ring(),
            });
        }
        let grid = GridSet::vectors(self.ring);
        let mut failures = Vec::new();
        let mut check = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
            let lhs = self.s_value(x, y, z);
            let rhs = q.triple_wedge(x, y, z);
            if lhs != rhs {
                failures.push(IdentityFailure {
                    x: x.to_vec(),
                    y: y.to_vec(),
                    z: z.to_vec(),
                    resolvent_side: lhs,
                    ring_side: rhs,
                });
            }
        };
        for x in &grid[..4] {
            for y in &grid {
                for z in &grid {
                    check(x, y, z);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = self.ring;
        let mut rand_vec = || -> Vec<Scalar> {
            (0..4)
                .map(|_| Scalar::from_i64(ring, rng.gen_range(-5..=5)))
                .collect()
        };
        for _ in 0..20 {
            let (x, y, z) = (rand_vec(), rand_vec(), rand_vec());
            check(&x, &y, &z);
        }
        Ok(VerifyReport {
            grid_checked: 400,
            random_checked: 20,
            failures,
        })
    }

    pub fn verify(&self, q: &QuinticRing) -> Result<VerifyReport> {
        self.verify_seeded(q, 0)
    }

    /// The quintic ring of this resolvent, in the gauge
    /// `c₁₂¹ = c₁₂² = c₃₄³ = c₃₄⁴ = 0`.
    pub fn ring_from_resolvent(&self) -> Result<QuinticRing> {
        let q = self.ring_without_unit_terms();
        let mut q = q;
        for i in 1..=4 {
            for j in i..=4 {
                let cands = c0_candidates(&q, i, j);
                if cands.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::InconsistentResolvent(format!(
                        "c_{i}{j}^0 depends on the auxiliary index"
                    )));
                }
                q.set_constant(i, j, 0, cands[0].clone());
            }
        }
        let bad = q.check_associative();
        if let Some(&(i, j, k)) = bad.first() {
            return Err(Error::InconsistentResolvent(format!(
                "reconstructed ring fails associativity at (e{i}e{j})e{k}"
            )));
        }
        let report = self.verify(&q)?;
        if !report.passed() {
            return Err(Error::InconsistentResolvent(format!(
                "{} identity checks fail on the reconstructed ring",
                report.failures.len()
            )));
        }
        Ok(q)
    }

    /// Structure constants `c_ij^k` for `k ≠ 0` in the gauge; `c_ij^0` left zero.
    pub fn ring_without_unit_terms(&self) -> QuinticRing {
        let ring = self.ring;
        let e = |i: usize| unit(ring, i - 1);
        let s = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| self.s_value(x, y, z);
        let sg = |seq: [usize; 4]| {
            let v: Vec<usize> = seq.to_vec();
            Scalar::from_i64(ring, crate::exterior::perm_sign(&v))
        };
        let mut q = QuinticRing::zero(ring);
        let c = |q: &QuinticRing, i: usize, j: usize, k: usize| q.constant(i, j, k).clone();
        let others =
            |excl: &[usize]| -> Vec<usize> { (1..=4).filter(|r| !excl.contains(r)).collect() };

        // distinct i, j, k
        for i in 1..=4 {
            for j in i + 1..=4 {
                let rest = others(&[i, j]);
                for &k in &rest {
                    let l = *rest.iter().find(|&&r| r != k).unwrap();
                    q.set_constant(i, j, k, s(&e(l), &e(i), &e(j)) * sg([l, i, j, k]));
                }
            }
        }
        // c_ii^j, j ≠ i
        for i in 1..=4 {
            for j in others(&[i]) {
                let kl = others(&[i, j]);
                let (k, l) = (kl[0], kl[1]);
                let v = s(&e(l), &e(i), &add(&e(i), &e(k))) * sg([l, i, k, j]) - c(&q, i, k, j);
                q.set_constant(i, i, j, v);
            }
        }
        // c_ik^k, with the gauge partner j of i fixed to c_ij^j = 0
        let partner = |i: usize| [2, 1, 4, 3][i - 1];
        for i in 1..=4 {
            let j = partner(i);
            for k in others(&[i, j]) {
                let l = others(&[i, j, k])[0];
                let v = s(&e(l), &e(i), &add(&e(j), &e(k))) * sg([l, i, j, k]) - c(&q, i, j, k)
                    + c(&q, i, k, j)
                    + c(&q, i, j, j);
                q.set_constant(i, k, k, v);
            }
        }
        // c_ii^i
        for i in 1..=4 {
            let jkl = others(&[i]);
            let (j, k, l) = (jkl[0], jkl[1], jkl[2]);
            let tw = s(&e(l), &add(&e(i), &e(k)), &add(&e(i), &e(j)));
            let v = -(tw * sg([l, i, j, k]))
                + c(&q, i, i, k)
                + c(&q, i, j, k)
                + c(&q, j, k, k)
                + c(&q, i, i, j)
                + c(&q, i, k, j)
                + c(&q, j, k, j)
                - c(&q, i, j, i)
                - c(&q, i, k, i)
                - c(&q, j, k, i)
                + c(&q, i, j, j)
                + c(&q, i, k, k);
            q.set_constant(i, i, i, v);
        }
        q
    }

    /// `½(Pf[[Y, X], [X, Z]] + Pf[[Y, X], [X, −Z]])` with `X = φ(x)` etc.
    pub fn pfaffian_bracket(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Scalar> {
        let (a, b) = self.bracket_pfaffians(x, y, z)?;
        halve(a + b)
    }

    /// The combination with a minus sign, `½(Pf[[Y, X], [X, Z]] − Pf[[Y, X], [X, −Z]])`.
    pub fn pfaffian_bracket_minus(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> Result<Scalar> {
        let (a, b) = self.bracket_pfaffians(x, y, z)?;
        halve(a - b)
    }

    fn bracket_pfaffians(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> Result<(Scalar, Scalar)> {
        if self.ring.characteristic() == 2 {
            return Err(Error::CharTwo);
        }
        let (xm, ym, zm) = (self.phi_matrix(x), self.phi_matrix(y), self.phi_matrix(z));
        let neg_z = zm.scale(&Scalar::from_i64(self.ring, -1));
        let block = |lower_right: &ExactMatrix| {
            let mut m = ExactMatrix::zeros(self.ring, 10, 10);
            for r in 0..5 {
                for c in 0..5 {
                    m.set(r, c, ym.get(r, c).clone());
                    m.set(r, c + 5, xm.get(r, c).clone());
                    m.set(r + 5, c, xm.get(r, c).clone());
                    m.set(r + 5, c + 5, lower_right.get(r, c).clone());
                }
            }
            m
        };
        Ok((block(&zm).pfaffian()?, block(&neg_z).pfaffian()?))
    }

    /// New basis `eᵢ' = Σⱼ P_ij eⱼ` of `L`: `Aᵢ' = det P · Σⱼ P_ij Aⱼ`, `t' = t / det(P)³`.
    pub fn change_l_basis(&self, p: &ExactMatrix) -> Result<ResolventData> {
        if p.rows() != 4 || p.cols() != 4 || p.ring() != self.ring {
            return Err(Error::Dimension(
                "L basis change needs a 4×4 matrix over the same ring".into(),
            ));
        }
        let d = p.det()?;
        let phi = (0..4)
            .map(|i| self.phi_matrix(p.row(i)).scale(&d))
            .collect::<Vec<_>>();
        let t = self
            .t
            .checked_div(&d.pow(3))
            .ok_or_else(|| Error::NotIntegral(format!("t / det(P)³ with det(P) = {d}")))?;
        ResolventData::new(self.ring, phi, t)
    }

    /// New basis `f_i' = Σⱼ B_ij fⱼ` of `M`: `A' = Cᵀ A C` with `C = B⁻¹`, `t' = t · det B`.
    pub fn change_m_basis(&self, b: &ExactMatrix) -> Result<ResolventData> {
        if b.rows() != 5 || b.cols() != 5 {
            return Err(Error::Dimension("M basis change needs a 5×5 matrix".into()));
        }
        let c = b.inverse()?.change_ring(self.ring)?;
        let ct = c.transpose();
        let phi = self
            .phi
            .iter()
            .map(|a| ct.mul(a)?.mul(&c))
            .collect::<Result<Vec<_>>>()?;
        let t = &self.t * &b.det()?.change_ring(self.ring)?;
        ResolventData::new(self.ring, phi, t)
    }
}

fn halve(v: Scalar) -> Result<Scalar> {
    let two = Scalar::from_i64(v.ring(), 2);
    v.checked_div(&two)
        .ok_or_else(|| Error::Invariant("Pfaffian combination is odd".into()))
}

/// Values of `Σ_r (c_jk^r c_ri^k − c_ij^r c_rk^k)` over every admissible `k ≠ i`
/// and both orderings of `(i, j)`; a consistent ring gives one value.
pub fn c0_candidates(q: &QuinticRing, i: usize, j: usize) -> Vec<Scalar> {
    let ring = q.ring();
    let mut out = Vec::new();
    for (a, b) in [(i, j), (j, i)] {
        for k in (1..=4).filter(|&k| k != a) {
            let v = (1..=4).fold(Scalar::zero(ring), |acc, r| {
                acc + q.constant(b, k, r) * q.constant(r, a, k)
                    - q.constant(a, b, r) * q.constant(r, k, k)
            });
            out.push(v);
        }
    }
    out
}
