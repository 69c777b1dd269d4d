//! The resolvent of a quintic algebra over a field that is not very degenerate.

use crate::corelin::{ExactMatrix, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::exterior::{contract, subsets, ExtVector};
use crate::quintic::{Element, GridSet, QuinticRing};
use crate::resolvent::ResolventData;

/// Grid elements `a₁..a₅` with `F(a₁, …, a₅) = f₀ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorTuple {
    pub indices: [usize; 5],
    pub a: Vec<Element>,
    pub f0: Scalar,
}

fn require_field(q: &QuinticRing) -> Result<()> {
    if q.ring().is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(q.ring()))
    }
}

/// First grid tuple in lexicographic order on which `F` is nonzero.
pub fn find_anchor_tuple(q: &QuinticRing) -> Result<AnchorTuple> {
    require_field(q)?;
    let (indices, f0) = q
        .grid_table()
        .first_nonzero()
        .ok_or(Error::VeryDegenerate)?;
    let grid = GridSet::vectors(q.ring());
    let a = indices.iter().map(|&i| grid[i].clone()).collect();
    Ok(AnchorTuple { indices, a, f0 })
}

/// `φ^□(a) = Σᵢ F(a₁, …, a, …, a₅) / f₀ · vᵢ`, with `a` in slot `i`.
pub fn phi_box_from_anchor(
    q: &QuinticRing,
    anchor: &AnchorTuple,
    v: &[ExtVector],
    a: &[Scalar],
) -> ExtVector {
    let ring = q.ring();
    let inv_f0 = anchor.f0.inverse().expect("f0 is nonzero in a field");
    let mut out = ExtVector::zero(ring, 5, 4);
    for i in 0..5 {
        let mut args = anchor.a.clone();
        args[i] = a.to_vec();
        let coef = q.f_form(&args[0], &args[1], &args[2], &args[3], &args[4]) * &inv_f0;
        out = out.add(&v[i].scale(&coef)).expect("same shape");
    }
    out
}

/// The basis `v₁ = f₀·ĝ₁, vᵢ = ĝᵢ` of `Λ⁴M` with `det = f₀`.
pub fn anchor_basis(ring: ScalarRing, f0: &Scalar) -> Vec<ExtVector> {
    (0..5)
        .map(|i| {
            let g = ExtVector::standard_generator(ring, 5, i);
            if i == 0 {
                g.scale(f0)
            } else {
                g
            }
        })
        .collect()
}

/// Builds `(φ, θ)` with `t = 1` from the anchor tuple and checks the
/// resolvent identity before returning.
pub fn construct_resolvent(q: &QuinticRing) -> Result<ResolventData> {
    let anchor = find_anchor_tuple(q)?;
    construct_with_anchor(q, &anchor)
}

pub fn construct_with_anchor(q: &QuinticRing, anchor: &AnchorTuple) -> Result<ResolventData> {
    let ring = q.ring();
    let v = anchor_basis(ring, &anchor.f0);
    let pairs = subsets(5, 2);
    // row (i, j): the linear functional μ ↦ μ(vᵢ, vⱼ) on Λ²M
    let mut system = ExactMatrix::zeros(ring, 10, 10);
    for (row, p) in pairs.iter().enumerate() {
        for (col, s) in pairs.iter().enumerate() {
            let mu = ExtVector::basis(ring, 5, s)?;
            system.set(row, col, contract(&mu, &v[p[0]], &v[p[1]])?);
        }
    }
    if system.rank()? < 10 {
        return Err(Error::SingularSystem(
            "anchor basis does not determine φ".into(),
        ));
    }
    let mut phi = Vec::with_capacity(4);
    for m in 0..4 {
        let mut x = vec![Scalar::zero(ring); 4];
        x[m] = Scalar::one(ring);
        let rhs: Vec<Scalar> = pairs
            .iter()
            .map(|p| q.triple_wedge(&x, &anchor.a[p[0]], &anchor.a[p[1]]))
            .collect();
        let coeffs = system.solve(&rhs)?;
        phi.push(ExtVector::from_coeffs(ring, 5, 2, coeffs)?.to_skew()?);
    }
    let res = ResolventData::new(ring, phi, Scalar::one(ring))?;
    let report = res.verify(q)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::NotAResolvent(format!(
            "identity fails at x = {:?}, y = {:?}, z = {:?} ({} vs {})",
            f.x.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            f.y.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            f.z.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            f.resolvent_side,
            f.ring_side
        )));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarRing = ScalarRing::Rational;

    fn split(ring: ScalarRing) -> QuinticRing {
        let mut q = QuinticRing::zero(ring);
        for i in 1..=4 {
            q.set_constant(i, i, i, Scalar::one(ring));
        }
        q
    }

    #[test]
    fn split_ring_gets_a_resolvent() {
        let q = split(Q);
        let res = construct_resolvent(&q).unwrap();
        assert!(res.verify(&q).unwrap().passed());
        let anchor = find_anchor_tuple(&q).unwrap();
        let v = anchor_basis(Q, &anchor.f0);
        for g in GridSet::vectors(Q) {
            assert_eq!(res.phi_box(&g), phi_box_from_anchor(&q, &anchor, &v, &g));
        }
    }

    #[test]
    fn trivial_ring_is_rejected() {
        assert!(matches!(
            construct_resolvent(&QuinticRing::zero(Q)),
            Err(Error::VeryDegenerate)
        ));
        assert!(matches!(
            find_anchor_tuple(&split(ScalarRing::Integer)),
            Err(Error::NotAField(ScalarRing::Integer))
        ));
    }

    #[test]
    fn works_over_prime_fields() {
        let q = split(ScalarRing::PrimeField(7));
        assert!(construct_resolvent(&q).is_ok());
    }
}
