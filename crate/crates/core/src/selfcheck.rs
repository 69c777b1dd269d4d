//! Seeded invariant suites over the whole library.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corelin::{ExactMatrix, Scalar, ScalarRing};
use crate::error::Result;
use crate::exterior::{contract, det_in_wedge4, ExtVector};
use crate::latres::{self, SearchBudget};
use crate::quintic::QuinticRing;
use crate::registry;
use crate::resolvent::{c0_candidates, ResolventData};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>) -> Self {
        SuiteResult {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn rand_scalar(ring: ScalarRing, rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::from_i64(ring, rng.gen_range(-bound..=bound))
}

pub fn rand_vec(ring: ScalarRing, rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| rand_scalar(ring, rng, bound)).collect()
}

pub fn rand_ext(ring: ScalarRing, rng: &mut impl Rng, k: usize, bound: i64) -> ExtVector {
    let len = crate::exterior::subsets(5, k).len();
    ExtVector::from_coeffs(ring, 5, k, rand_vec(ring, rng, len, bound)).expect("shape")
}

pub fn rand_skew(ring: ScalarRing, rng: &mut impl Rng, n: usize, bound: i64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(ring, n, n);
    for r in 0..n {
        for c in r + 1..n {
            let v = rand_scalar(ring, rng, bound);
            m.set(c, r, -v.clone());
            m.set(r, c, v);
        }
    }
    m
}

pub fn rand_resolvent(ring: ScalarRing, rng: &mut impl Rng, bound: i64) -> ResolventData {
    let phi = (0..4).map(|_| rand_skew(ring, rng, 5, bound)).collect();
    ResolventData::new(ring, phi, Scalar::one(ring)).expect("alternating")
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Identities of `□` and the contraction on random data over ℤ, 𝔽₂, 𝔽₃.
pub fn identity_suites(seed: u64, cases: usize) -> Vec<SuiteResult> {
    let rings = [
        ScalarRing::Integer,
        ScalarRing::PrimeField(2),
        ScalarRing::PrimeField(3),
    ];
    let mut out = Vec::new();
    for (salt, ring) in rings.into_iter().enumerate() {
        let mut rng = rng_for(seed, salt as u64 + 1);
        let mut polar = SuiteResult::new(format!("polarization of box over {ring}"));
        let mut basis = SuiteResult::new(format!("basis independence of box over {ring}"));
        let mut play = SuiteResult::new(format!("contraction identities (a)-(c) over {ring}"));
        let mut tobox = SuiteResult::new(format!("box against four-fold wedge over {ring}"));
        let mut pf = SuiteResult::new(format!("Pf^2 = det over {ring}"));
        for _ in 0..cases {
            let mu = rand_ext(ring, &mut rng, 2, 4);
            let nu = rand_ext(ring, &mut rng, 2, 4);
            let xi = rand_ext(ring, &mut rng, 2, 4);
            let al = rand_ext(ring, &mut rng, 4, 4);
            let mb = mu.box_square().unwrap();

            let lhs = mu
                .add(&nu)
                .unwrap()
                .box_square()
                .unwrap()
                .sub(&mb)
                .unwrap()
                .sub(&nu.box_square().unwrap())
                .unwrap();
            polar.check(lhs == mu.wedge(&nu).unwrap(), || {
                format!("mu = {mu:?}, nu = {nu:?}")
            });

            let rows: Vec<Vec<Scalar>> = (0..5).map(|_| rand_vec(ring, &mut rng, 5, 3)).collect();
            let g = ExactMatrix::from_rows(ring, rows).unwrap();
            let moved = mu.pushforward(&g).unwrap().box_square().unwrap();
            basis.check(moved == mb.pushforward(&g).unwrap(), || {
                format!("mu = {mu:?}, g = {g:?}")
            });

            let mn = mu.wedge(&nu).unwrap();
            let a = contract(&mu, &mn, &al).unwrap() == -contract(&nu, &mb, &al).unwrap();
            let b = contract(&mu, &mb, &al).unwrap().is_zero();
            let c = contract(&nu, &mb, &mu.wedge(&xi).unwrap()).unwrap()
                == -contract(&xi, &mb, &mn).unwrap();
            play.check(a && b && c, || {
                format!("(a) {a} (b) {b} (c) {c} at mu = {mu:?}")
            });

            let [b1, c1, d1] = [0; 3].map(|_| rand_ext(ring, &mut rng, 4, 4));
            let m = |x: &ExtVector, y: &ExtVector| contract(&mu, x, y).unwrap();
            let rhs =
                m(&al, &b1) * m(&c1, &d1) + m(&al, &c1) * m(&d1, &b1) + m(&al, &d1) * m(&b1, &c1);
            let lhs = det_in_wedge4(&[mb.clone(), al.clone(), b1.clone(), c1.clone(), d1.clone()])
                .unwrap();
            tobox.check(lhs == rhs, || format!("mu = {mu:?}: {lhs} vs {rhs}"));

            let n = if rng.gen_bool(0.5) { 4 } else { 6 };
            let s = rand_skew(ring, &mut rng, n, 4);
            let p = s.pfaffian().unwrap();
            pf.check(&p * &p == s.det().unwrap(), || format!("{s:?}"));
        }
        out.extend([polar, basis, play, tobox, pf]);
    }
    out
}

/// Example 5 quadruples, stars zero and random, over ℚ and 𝔽₃.
pub fn example5_suite(seed: u64, random_stars: usize) -> SuiteResult {
    let mut res = SuiteResult::new("Example 5 families");
    let mut rng = rng_for(seed, 5);
    let mut stars = vec![[[0i64; 3]; 4]];
    for _ in 0..random_stars {
        stars.push([0; 4].map(|_| [0; 3].map(|_| rng.gen_range(-5..=5))));
    }
    for ring in [ScalarRing::Rational, ScalarRing::PrimeField(3)] {
        for st in &stars {
            let fams: [(&str, ResolventData, QuinticRing); 2] = [
                (
                    "A18",
                    registry::a18_resolvent(ring, st),
                    registry::a18_ring(ring),
                ),
                (
                    "A19",
                    registry::a19_resolvent(ring, st),
                    registry::a19_ring(ring),
                ),
            ];
            for (name, r, q) in fams {
                let ok = r.verify(&q).map(|v| v.passed()).unwrap_or(false);
                res.check(ok, || format!("{name} over {ring} with stars {st:?}"));
            }
        }
    }
    res
}

/// Rings built from random integer `φ` are associative, satisfy the identity
/// and have `c_ij^0` independent of the auxiliary index.
pub fn random_resolvent_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut res = SuiteResult::new("random resolvents give associative rings");
    let mut rng = rng_for(seed, 7);
    for _ in 0..cases {
        let r = rand_resolvent(ScalarRing::Integer, &mut rng, 3);
        let q = r.ring_without_unit_terms();
        let mut consistent = true;
        for i in 1..=4 {
            for j in i..=4 {
                let c = c0_candidates(&q, i, j);
                consistent &= c.windows(2).all(|w| w[0] == w[1]);
            }
        }
        let Some(q) = res.record(r.ring_from_resolvent(), "ring_from_resolvent") else {
            continue;
        };
        let assoc = q.check_associative().is_empty();
        let verified = r.verify(&q).map(|v| v.passed()).unwrap_or(false);
        res.check(consistent && assoc && verified, || {
            format!(
                "consistent {consistent} associative {assoc} verified {verified} for {:?}",
                r.phi()
            )
        });
    }
    res
}

fn f_cases() -> Vec<(&'static str, ResolventData, QuinticRing)> {
    let q = ScalarRing::Rational;
    let bl2 = latres::compute_m0(
        &registry::example2_ring(ScalarRing::Integer, 2),
        Some(&registry::example2_reference(2)),
    )
    .expect("Example 2 bounding lattice");
    let zero = [[0; 3]; 4];
    vec![
        (
            "Example 1",
            registry::example1_resolvent(q),
            registry::example1_ring(q),
        ),
        (
            "Example 2",
            latres::inherited_data(&bl2.reference, &bl2.m0).expect("basis change"),
            registry::example2_ring(q, 2),
        ),
        (
            "Example 5 A18",
            registry::a18_resolvent(q, &zero),
            registry::a18_ring(q),
        ),
        (
            "Example 5 A19",
            registry::a19_resolvent(q, &zero),
            registry::a19_ring(q),
        ),
    ]
}

/// `t⁴ · det(φ^□(a), …, φ^□(e)) = F(a, …, e)` on random five-tuples.
pub fn f_form_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut res = SuiteResult::new("F against the box determinant");
    let mut rng = rng_for(seed, 8);
    for (name, r, q) in f_cases() {
        let t4 = r.t().pow(4);
        for _ in 0..cases {
            let xs: Vec<Vec<Scalar>> = (0..5).map(|_| rand_vec(q.ring(), &mut rng, 4, 3)).collect();
            let boxes: Vec<ExtVector> = xs.iter().map(|x| r.phi_box(x)).collect();
            let lhs = &t4 * &det_in_wedge4(&boxes).unwrap();
            let rhs = q.f_form(&xs[0], &xs[1], &xs[2], &xs[3], &xs[4]);
            res.check(lhs == rhs, || format!("{name}: {lhs} vs {rhs}"));
        }
    }
    res
}

/// The sign `σ` with `pfaffian_bracket = σ · s / t²`, and the cases checked.
pub fn pfaffian_sign_suite(seed: u64, cases: usize) -> (SuiteResult, Option<i64>) {
    let mut res = SuiteResult::new("Pfaffian bracket against s / t^2");
    let mut rng = rng_for(seed, 9);
    let q = ScalarRing::Rational;
    let mut data: Vec<ResolventData> = f_cases()
        .into_iter()
        .filter(|c| c.0 != "Example 2")
        .map(|c| c.1)
        .collect();
    data.extend((0..cases).map(|_| rand_resolvent(q, &mut rng, 3)));
    let mut sigma: Option<i64> = None;
    for r in &data {
        for _ in 0..5 {
            let [x, y, z] = [0; 3].map(|_| rand_vec(q, &mut rng, 4, 3));
            let pf = r.pfaffian_bracket(&x, &y, &z).unwrap();
            let s = r.s_value(&x, &y, &z).checked_div(&r.t().pow(2)).unwrap();
            if s.is_zero() {
                res.check(pf.is_zero(), || format!("bracket {pf} with s = 0"));
                continue;
            }
            let ratio = pf.checked_div(&s).unwrap();
            let this = if ratio.is_one() {
                Some(1)
            } else if (-ratio).is_one() {
                Some(-1)
            } else {
                None
            };
            let agrees = this.is_some() && (sigma.is_none() || sigma == this);
            if sigma.is_none() {
                sigma = this;
            }
            res.check(agrees, || format!("bracket {pf} against s/t^2 = {s}"));
        }
    }
    (res, sigma)
}

/// Every enumeration stays within `1 ≤ count ≤ ∏((p⁵−1)/(p−1))ⁿ`.
pub fn counting_bound_suite() -> SuiteResult {
    let mut res = SuiteResult::new("numerical resolvent counting bound");
    let z = ScalarRing::Integer;
    let mut cases: Vec<(String, QuinticRing, Option<ResolventData>)> = vec![
        (
            "Example 1".into(),
            registry::example1_ring(z),
            Some(registry::example1_resolvent(z)),
        ),
        ("Example 3".into(), registry::example3_ring(z), None),
    ];
    for p in [2, 3] {
        cases.push((
            format!("Example 2 (p = {p})"),
            registry::example2_ring(z, p),
            Some(registry::example2_reference(p)),
        ));
    }
    for (name, q, r) in cases {
        let Some(bl) = res.record(latres::compute_m0(&q, r.as_ref()), &name) else {
            continue;
        };
        let Some(cond) = res.record(latres::conductor(&bl), &name) else {
            continue;
        };
        let Some(list) = res.record(
            latres::enumerate_numerical_resolvents(&bl, &cond, &SearchBudget::default()),
            &name,
        ) else {
            continue;
        };
        let bound = latres::numerical_count_bound(&cond.factorization);
        let n = num_bigint::BigInt::from(list.len());
        res.check(n >= 1.into() && n <= bound, || {
            format!("{name}: {n} outside [1, {bound}]")
        });
    }
    res
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    let mut out = identity_suites(seed, 200);
    out.push(example5_suite(seed, 5));
    out.push(random_resolvent_suite(seed, 100));
    out.push(f_form_suite(seed, 50));
    out.push(pfaffian_sign_suite(seed, 50).0);
    out.push(counting_bound_suite());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in identity_suites(0, 20) {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures.first());
        }
        for s in [
            example5_suite(0, 1),
            random_resolvent_suite(0, 5),
            f_form_suite(0, 5),
            pfaffian_sign_suite(0, 5).0,
        ] {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures.first());
        }
        assert_eq!(pfaffian_sign_suite(0, 2).1, Some(1));
    }
}
