//! Resolvents of quintic rings over ℤ as lattices in the rational resolvent
//! space: the bounding lattice `M₀`, the conductor, and enumeration.
//!
//! Lattices live in the frame of a reference rational resolvent: a lattice
//! with basis rows `B` carries `φ` as `Cᵀ A C` (`C = B⁻¹`) and `t·det B`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::corelin::{ExactMatrix, RationalLattice, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::fieldres::{construct_resolvent, find_anchor_tuple};
use crate::quintic::{GridSet, QuinticRing};
use crate::resolvent::ResolventData;

/// `M₀` together with the rational resolvent whose frame it is expressed in.
#[derive(Clone, Debug)]
pub struct BoundingLattice {
    pub ring: QuinticRing,
    pub reference: ResolventData,
    pub m0: RationalLattice,
    /// `θ` on `Λ⁵M₀`.
    pub t_m0: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conductor {
    pub c: BigInt,
    pub factorization: Vec<(u64, u32)>,
    /// `[Λ⁵M₀ : θ⁻¹((Λ⁴L)^⊗3)]`.
    pub from_theta: BigInt,
    /// Positive generator of the ideal of grid values of `F`.
    pub from_f_values: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventStatus {
    pub phi_ok: bool,
    pub theta_ok: bool,
    pub is_resolvent: bool,
    pub is_numerical: bool,
    pub index_in_m0: BigInt,
    /// `[(Λ⁴L)^⊗3 : θ(Λ⁵M)]` when `θ(Λ⁵M)` is integral.
    pub theta_index: Option<BigInt>,
}

/// A resolvent lattice with the inherited integral data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventLattice {
    pub lattice: RationalLattice,
    pub data: ResolventData,
    pub numerical: bool,
    pub theta_index: BigInt,
    pub index_in_m0: BigInt,
}

/// Limits of the sublattice chain search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_prime: u64,
    pub max_exponent: u32,
    pub max_nodes: usize,
    /// Largest sublattice index searched for, when set.
    pub max_index: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_prime: 7,
            max_exponent: 3,
            max_nodes: 200_000,
            max_index: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AllResolvents {
    pub resolvents: Vec<ResolventLattice>,
    /// Set when some branch of the search was cut by the budget.
    pub partial: bool,
}

fn rat(s: &Scalar) -> BigRational {
    s.to_rational().expect("rational scalar")
}

/// Basis rows of a lattice as a rational matrix.
pub fn basis_matrix(l: &RationalLattice) -> ExactMatrix {
    let rows = l
        .basis()
        .into_iter()
        .map(|r| r.into_iter().map(Scalar::Rational).collect())
        .collect();
    ExactMatrix::from_rows(ScalarRing::Rational, rows).expect("rational rows")
}

fn lattice_from_rows(rows: &[Vec<BigRational>]) -> RationalLattice {
    RationalLattice::from_rational_rows(rows, 5).expect("full-rank lattice")
}

fn require_integer_ring(q: &QuinticRing) -> Result<()> {
    if q.ring() == ScalarRing::Integer {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "lattice resolvents need a ring over ℤ, got {}",
            q.ring()
        )))
    }
}

/// `M₀` as the dual of the lattice spanned by the covectors `t·φ^□(g)^`,
/// `g` in the grid. Without a reference, the resolvent of `Q ⊗ ℚ` is
/// constructed from an anchor tuple.
pub fn compute_m0(q: &QuinticRing, reference: Option<&ResolventData>) -> Result<BoundingLattice> {
    require_integer_ring(q)?;
    let qq = q.change_ring(ScalarRing::Rational)?;
    let reference = match reference {
        Some(r) => {
            find_anchor_tuple(&qq)?;
            let r = r.change_ring(ScalarRing::Rational)?;
            let report = r.verify(&qq)?;
            if !report.passed() {
                return Err(Error::NotAResolvent(format!(
                    "reference fails {} identity checks",
                    report.failures.len()
                )));
            }
            r
        }
        None => construct_resolvent(&qq)?,
    };
    let t = rat(reference.t());
    let gens: Vec<Vec<BigRational>> = GridSet::vectors(ScalarRing::Rational)
        .iter()
        .map(|g| {
            reference
                .phi_box(g)
                .hat()
                .expect("degree 4")
                .iter()
                .map(|c| rat(c) * &t)
                .collect()
        })
        .collect();
    let n = RationalLattice::from_rational_rows(&gens, 5).map_err(|e| match e {
        Error::RankDeficient { .. } => Error::VeryDegenerate,
        other => other,
    })?;
    let m0 = n.dual();
    if !phi_integral(&reference, &m0)? {
        return Err(Error::Invariant("φ does not land in Λ²M₀".into()));
    }
    let t_m0 = theta_scalar(&reference, &m0)?;
    Ok(BoundingLattice {
        ring: q.clone(),
        reference,
        m0,
        t_m0,
    })
}

/// `θ(Λ⁵M)` as a multiple of `e_top^⊗3`.
pub fn theta_scalar(reference: &ResolventData, m: &RationalLattice) -> Result<BigRational> {
    Ok(rat(reference.t()) * rat(&basis_matrix(m).det()?))
}

/// `φ` expressed on the basis of `m`.
pub fn inherited_data(reference: &ResolventData, m: &RationalLattice) -> Result<ResolventData> {
    reference.change_m_basis(&basis_matrix(m))
}

fn phi_integral(reference: &ResolventData, m: &RationalLattice) -> Result<bool> {
    let data = inherited_data(reference, m)?;
    Ok(data
        .phi()
        .iter()
        .all(|a| (0..5).all(|r| (0..5).all(|c| a.get(r, c).to_integer().is_some()))))
}

fn factor(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.to_u64().expect("small prime"), e));
        }
        d += 1u32;
    }
    if n > BigInt::one() {
        out.push((n.to_u64().expect("prime factor fits in u64"), 1));
    }
    out
}

/// Both expressions for the conductor; they must agree.
pub fn conductor(bl: &BoundingLattice) -> Result<Conductor> {
    let inv = bl.t_m0.recip().abs();
    if !inv.is_integer() {
        return Err(Error::Invariant(format!(
            "θ on Λ⁵M₀ is {}, not the inverse of an integer",
            bl.t_m0
        )));
    }
    let from_theta = inv.to_integer();
    let from_f_values = bl.ring.grid_table().gcd_of_values()?;
    if from_theta != from_f_values {
        return Err(Error::Invariant(format!(
            "conductor formulas disagree: {from_theta} vs {from_f_values}"
        )));
    }
    Ok(Conductor {
        factorization: factor(&from_theta),
        c: from_theta.clone(),
        from_theta,
        from_f_values,
    })
}

/// Checks both resolvent conditions for `m`.
pub fn resolvent_status(bl: &BoundingLattice, m: &RationalLattice) -> Result<ResolventStatus> {
    let index_in_m0 = m.index_in(&bl.m0).ok_or(Error::NotInsideM0)?;
    let phi_ok = phi_integral(&bl.reference, m)?;
    let t_m = theta_scalar(&bl.reference, m)?;
    let theta_ok = t_m.is_integer();
    let theta_index = theta_ok.then(|| t_m.to_integer().abs());
    let is_resolvent = phi_ok && theta_ok;
    let is_numerical = is_resolvent && theta_index.as_ref().is_some_and(|t| t.is_one());
    Ok(ResolventStatus {
        phi_ok,
        theta_ok,
        is_resolvent,
        is_numerical,
        index_in_m0,
        theta_index,
    })
}

fn to_resolvent_lattice(
    bl: &BoundingLattice,
    m: &RationalLattice,
    st: &ResolventStatus,
) -> Result<ResolventLattice> {
    let data = inherited_data(&bl.reference, m)?.change_ring(ScalarRing::Integer)?;
    Ok(ResolventLattice {
        lattice: m.clone(),
        data,
        numerical: st.is_numerical,
        theta_index: st.theta_index.clone().expect("resolvent has integral θ"),
        index_in_m0: st.index_in_m0.clone(),
    })
}

/// Projective points of the span of `basis` over 𝔽_p, normalized so the
/// first nonzero coordinate is 1.
fn projective_points(basis: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let mut out = BTreeSet::new();
    let total = p.pow(d as u32);
    for n in 1..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut r = n;
        for _ in 0..d {
            coeffs.push(r % p);
            r /= p;
        }
        let mut v = vec![0u64; 5];
        for (c, b) in coeffs.iter().zip(basis) {
            for k in 0..5 {
                v[k] = (v[k] + c * b[k]) % p;
            }
        }
        let Some(lead) = v.iter().find(|&&x| x != 0).copied() else {
            continue;
        };
        let inv = Scalar::from_i64(ScalarRing::PrimeField(p), lead as i64)
            .inverse()
            .expect("unit");
        let inv = match inv {
            Scalar::PrimeField { value, .. } => value,
            _ => unreachable!(),
        };
        out.insert(v.iter().map(|x| x * inv % p).collect::<Vec<_>>());
    }
    out.into_iter().collect()
}

/// Functionals `ℓ` on `M/pM` (up to scaling) killing every `φ(eᵢ) mod p`.
pub fn admissible_functionals(
    reference: &ResolventData,
    m: &RationalLattice,
    p: u64,
) -> Result<Vec<Vec<u64>>> {
    let fp = ScalarRing::PrimeField(p);
    let data = inherited_data(reference, m)?;
    let mut rows = Vec::with_capacity(20);
    for a in data.phi() {
        for r in 0..5 {
            let row = (0..5)
                .map(|c| a.get(r, c).change_ring(fp))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::Invariant("φ is not integral on the lattice".into()))?;
            rows.push(row);
        }
    }
    let kernel = ExactMatrix::from_rows(fp, rows)?.kernel()?;
    let basis: Vec<Vec<u64>> = kernel
        .iter()
        .map(|v| {
            v.iter()
                .map(|s| match s {
                    Scalar::PrimeField { value, .. } => *value,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    Ok(projective_points(&basis, p))
}

/// `ker ℓ ⊆ M`, for `ℓ` normalized with leading coefficient 1.
fn kernel_sublattice(m: &RationalLattice, ell: &[u64], p: u64) -> RationalLattice {
    let basis = m.basis();
    let j = ell
        .iter()
        .position(|&x| x != 0)
        .expect("nonzero functional");
    let pq = BigRational::from_integer(BigInt::from(p));
    let mut gens = Vec::with_capacity(5);
    for i in 0..5 {
        if i == j {
            gens.push(basis[j].iter().map(|x| x * &pq).collect());
        } else {
            let li = BigRational::from_integer(BigInt::from(ell[i]));
            gens.push(
                basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| a - &li * b)
                    .collect(),
            );
        }
    }
    lattice_from_rows(&gens)
}

fn descend(
    reference: &ResolventData,
    start: &RationalLattice,
    p: u64,
    n: u32,
    budget: &SearchBudget,
    nodes: &mut usize,
) -> Result<Vec<RationalLattice>> {
    let mut level: BTreeSet<RationalLattice> = BTreeSet::from([start.clone()]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for m in &level {
            for ell in admissible_functionals(reference, m, p)? {
                *nodes += 1;
                if *nodes > budget.max_nodes {
                    return Err(Error::SearchBudgetExceeded(format!(
                        "more than {} sublattices visited",
                        budget.max_nodes
                    )));
                }
                next.insert(kernel_sublattice(m, &ell, p));
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

fn check_budget(factorization: &[(u64, u32)], budget: &SearchBudget) -> Result<()> {
    let index: BigInt = factorization
        .iter()
        .map(|&(p, e)| BigInt::from(p).pow(e))
        .product();
    if let Some(cap) = budget.max_index {
        if index > BigInt::from(cap) {
            return Err(Error::SearchBudgetExceeded(format!(
                "index {index} is above the cap {cap}"
            )));
        }
    }
    for &(p, e) in factorization {
        if p > budget.max_prime || e > budget.max_exponent {
            return Err(Error::SearchBudgetExceeded(format!(
                "prime power {p}^{e} is beyond p ≤ {}, exponent ≤ {}",
                budget.max_prime, budget.max_exponent
            )));
        }
    }
    Ok(())
}

/// All sublattices of `start` of index `∏ pᵉ` (over `factorization`) on which
/// `φ` stays integral.
fn phi_sublattices(
    reference: &ResolventData,
    start: &RationalLattice,
    factorization: &[(u64, u32)],
    budget: &SearchBudget,
) -> Result<Vec<RationalLattice>> {
    if !phi_integral(reference, start)? {
        return Ok(Vec::new());
    }
    let mut nodes = 0;
    let mut combined: Vec<RationalLattice> = vec![start.clone()];
    for &(p, e) in factorization {
        let local = descend(reference, start, p, e, budget, &mut nodes)?;
        let mut next = BTreeSet::new();
        for a in &combined {
            for b in &local {
                next.insert(a.intersection(b));
            }
        }
        combined = next.into_iter().collect();
    }
    Ok(combined)
}

/// `∏ ((p⁵ − 1)/(p − 1))ⁿ` over `pⁿ ∥ c`.
pub fn numerical_count_bound(factorization: &[(u64, u32)]) -> BigInt {
    factorization
        .iter()
        .map(|&(p, e)| BigInt::from((p.pow(5) - 1) / (p - 1)).pow(e))
        .product()
}

/// All numerical resolvents: index-`𝔠` sublattices of `M₀` reached by chains
/// of kernels of admissible functionals.
pub fn enumerate_numerical_resolvents(
    bl: &BoundingLattice,
    cond: &Conductor,
    budget: &SearchBudget,
) -> Result<Vec<ResolventLattice>> {
    check_budget(&cond.factorization, budget)?;
    let candidates = phi_sublattices(&bl.reference, &bl.m0, &cond.factorization, budget)?;
    let mut out = Vec::new();
    for m in candidates {
        let st = resolvent_status(bl, &m)?;
        if st.is_numerical {
            out.push(to_resolvent_lattice(bl, &m, &st)?);
        }
    }
    out.sort_by(|a, b| a.lattice.cmp(&b.lattice));
    let bound = numerical_count_bound(&cond.factorization);
    if out.is_empty() || BigInt::from(out.len()) > bound {
        return Err(Error::Invariant(format!(
            "{} numerical resolvents violates 1 ≤ count ≤ {bound}",
            out.len()
        )));
    }
    Ok(out)
}

/// All resolvents, numerical or not. A resolvent `M` with `θ`-index `s`
/// satisfies `M ⊆ s·M₀` and `[s·M₀ : M] = 𝔠/s⁴`, so `s⁴ | 𝔠` and each `s`
/// gives a finite search. Branches beyond the budget set `partial`;
/// `extra_candidates` are checked directly.
pub fn enumerate_all_resolvents(
    bl: &BoundingLattice,
    cond: &Conductor,
    budget: &SearchBudget,
    extra_candidates: &[RationalLattice],
) -> Result<AllResolvents> {
    let mut partial = false;
    let mut found: BTreeSet<RationalLattice> = BTreeSet::new();
    let mut s = BigInt::one();
    while s.pow(4) <= cond.c {
        if (&cond.c % s.pow(4)).is_zero() {
            let rest = &cond.c / s.pow(4);
            let fac = factor(&rest);
            let start = bl.m0.scale(&BigRational::from_integer(s.clone()));
            let attempt = check_budget(&fac, budget)
                .and_then(|_| phi_sublattices(&bl.reference, &start, &fac, budget));
            match attempt {
                Ok(list) => found.extend(list),
                Err(Error::SearchBudgetExceeded(_)) => partial = true,
                Err(e) => return Err(e),
            }
        }
        s += 1u32;
    }
    for m in extra_candidates {
        if m.is_sublattice_of(&bl.m0) {
            found.insert(m.clone());
        }
    }
    let mut resolvents = Vec::new();
    for m in found {
        let st = resolvent_status(bl, &m)?;
        if st.is_resolvent {
            resolvents.push(to_resolvent_lattice(bl, &m, &st)?);
        }
    }
    Ok(AllResolvents {
        resolvents,
        partial,
    })
}

#[derive(Clone, Debug)]
pub struct StrongMaximalReport {
    pub dims: Vec<(u64, usize)>,
    pub hypothesis_holds: bool,
    pub covers_conductor: bool,
    /// Set when the hypothesis predicts a unique numerical resolvent.
    pub predicts_unique: bool,
    /// Number of numerical resolvents found, when the prediction was checked.
    pub enumerated: Option<usize>,
}

/// Integral-class dimensions per prime; when all are at most 2 and the primes
/// cover the conductor, the predicted unique resolvent is checked by
/// enumeration.
pub fn check_strong_maximal_hypothesis(
    bl: &BoundingLattice,
    cond: &Conductor,
    primes: &[u64],
    budget: &SearchBudget,
) -> Result<StrongMaximalReport> {
    let mut dims = Vec::new();
    for &p in primes {
        dims.push((p, bl.ring.integral_class_dim(p)?.dim));
    }
    let hypothesis_holds = dims.iter().all(|&(_, d)| d <= 2);
    let covers_conductor = cond.factorization.iter().all(|(p, _)| primes.contains(p));
    let predicts_unique = hypothesis_holds && covers_conductor;
    let enumerated = if predicts_unique {
        let n = enumerate_numerical_resolvents(bl, cond, budget)?.len();
        if n != 1 {
            return Err(Error::Invariant(format!(
                "predicted a unique resolvent, found {n}"
            )));
        }
        Some(n)
    } else {
        None
    };
    Ok(StrongMaximalReport {
        dims,
        hypothesis_holds,
        covers_conductor,
        predicts_unique,
        enumerated,
    })
}
