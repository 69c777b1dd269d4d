//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cyclic_matrices, scalars, to_i128, SplitModel};
use quintic_resolvent::exterior::{contract, ExtVector};
use quintic_resolvent::latres::{self, SearchBudget};
use quintic_resolvent::quintic::{GridSet, QuinticRing, VeryDegenerateType};
use quintic_resolvent::registry;
use quintic_resolvent::selfcheck;
use quintic_resolvent::{RationalLattice, Scalar, ScalarRing};

const Z: ScalarRing = ScalarRing::Integer;
const Q: ScalarRing = ScalarRing::Rational;

fn unit(i: usize) -> Vec<i128> {
    let mut v = vec![0; 4];
    v[i] = 1;
    v
}

fn grid() -> Vec<Vec<i128>> {
    GridSet::vectors(Z).iter().map(|v| to_i128(v)).collect()
}

fn criterion1() {
    let model = SplitModel::diagonal([1, 1, 1, 1]);
    let res = registry::example1_resolvent(Z);
    assert_eq!(res.t(), &Scalar::one(Z));
    for (i, a) in res.phi().iter().enumerate() {
        let want = &cyclic_matrices()[i];
        for r in 0..5 {
            for c in 0..5 {
                assert_eq!(to_i128(&[a.get(r, c).clone()])[0], want[r][c]);
            }
        }
    }
    let mut checked = 0;
    for l in 0..4 {
        for y in grid() {
            for z in grid() {
                let x = unit(l);
                let lhs = res.s_value(&scalars(Z, &x), &scalars(Z, &y), &scalars(Z, &z));
                assert_eq!(
                    to_i128(&[lhs])[0],
                    model.triple_wedge(&x, &y, &z),
                    "x = {x:?}, y = {y:?}, z = {z:?}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 400);
    let report = res.verify(&registry::example1_ring(Z)).unwrap();
    assert!(report.passed() && report.grid_checked == 400);
}

fn criterion2() {
    // ℤ⁵ on (1, e₁..e₄) with idempotents eᵢ: eᵢeⱼ = δᵢⱼeᵢ, already in the gauge
    let mut hand = QuinticRing::zero(Z);
    for i in 1..=4 {
        hand.set_constant(i, i, i, Scalar::one(Z));
    }
    let model = SplitModel::diagonal([1, 1, 1, 1]).to_ring(Z);
    assert_eq!(model, hand);
    let rebuilt = registry::example1_resolvent(Z)
        .ring_from_resolvent()
        .unwrap();
    assert_eq!(rebuilt, hand);
    assert_eq!(hand.gauge_normalized(), hand);
}

fn example2_model(p: i128) -> SplitModel {
    SplitModel::new([
        [p, 0, 0, 0, 0],
        [0, p, 0, 0, 0],
        [0, 0, p, 0, 0],
        [0, 0, 0, 0, 1],
    ])
}

/// `ker ℓ` inside `m`, `ℓ` given on the basis of `m` with a coordinate equal to 1.
fn kernel_of(m: &RationalLattice, ell: &[u64], p: u64) -> RationalLattice {
    let b = m.basis();
    let j = ell.iter().position(|&x| x == 1).unwrap();
    let gens: Vec<Vec<BigRational>> = (0..5)
        .map(|i| {
            if i == j {
                b[j].iter()
                    .map(|x| x * BigRational::from_integer(p.into()))
                    .collect()
            } else {
                let li = BigRational::from_integer(ell[i].into());
                b[i].iter().zip(&b[j]).map(|(x, y)| x - &li * y).collect()
            }
        })
        .collect();
    RationalLattice::from_rational_rows(&gens, 5).unwrap()
}

fn criterion3() {
    for p in [2u64, 3] {
        let model = example2_model(p as i128);
        let q = registry::example2_ring(Z, p);
        assert_eq!(model.to_ring(Z), q);
        let bl = latres::compute_m0(&q, Some(&registry::example2_reference(p))).unwrap();
        assert_eq!(bl.m0, registry::example2_m0(p));
        let cond = latres::conductor(&bl).unwrap();
        assert_eq!(cond.from_theta, BigInt::from(p));
        assert_eq!(cond.from_f_values, BigInt::from(p));
        assert_eq!(model.grid_gcd(), p as i128);

        let list =
            latres::enumerate_numerical_resolvents(&bl, &cond, &SearchBudget::default()).unwrap();
        assert_eq!(list.len() as u64, p + 1);

        // brute force over every hyperplane of M₀ / pM₀
        let mut brute = Vec::new();
        for n in 1..p.pow(5) {
            let ell: Vec<u64> = (0..5).map(|k| n / p.pow(k) % p).collect();
            if ell.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let m = kernel_of(&bl.m0, &ell, p);
            if latres::resolvent_status(&bl, &m).unwrap().is_numerical {
                brute.push(m);
            }
        }
        brute.sort();
        let found: Vec<_> = list.iter().map(|r| r.lattice.clone()).collect();
        assert_eq!(found, brute);

        let ells = latres::admissible_functionals(&bl.reference, &bl.m0, p).unwrap();
        assert_eq!(ells.len() as u64, p + 1);
        assert!(ells.iter().all(|l| l[1] == 0 && l[2] == 0 && l[3] == 0));
        assert!(ells.iter().any(|l| l[0] != 0) && ells.iter().any(|l| l[4] != 0));

        let all =
            latres::enumerate_all_resolvents(&bl, &cond, &SearchBudget::default(), &[]).unwrap();
        assert!(!all.partial);
        assert!(all.resolvents.iter().all(|r| r.numerical));
        assert_eq!(all.resolvents.len() as u64, p + 1);
    }
}

fn criterion4() {
    let p = 2u64;
    let q = registry::example4_ring(Z, p);
    assert_eq!(SplitModel::diagonal([4, 4, 4, 4]).to_ring(Z), q);
    let supplied = registry::example4_resolvent(Z, p);
    assert!(supplied.verify(&q).unwrap().passed());
    let bl = latres::compute_m0(&q, Some(&supplied)).unwrap();
    let m = registry::build_example(4, Some(p)).unwrap().cases[0]
        .lattice
        .clone()
        .unwrap();
    let st = latres::resolvent_status(&bl, &m).unwrap();
    assert!(st.phi_ok && st.is_resolvent && !st.is_numerical);
    assert_eq!(st.theta_index, Some(BigInt::from(p)));
    // φ on M is the cyclic map itself
    let on_m = latres::inherited_data(&bl.reference, &m).unwrap();
    for (a, want) in on_m.phi().iter().zip(cyclic_matrices()) {
        for r in 0..5 {
            for c in 0..5 {
                assert_eq!(
                    a.get(r, c).to_rational().unwrap(),
                    BigRational::from_integer(want[r][c].into())
                );
            }
        }
    }
    // M ⊊ M₀; super-modules of index p inside M₀ are numerical
    assert!(m.is_sublattice_of(&bl.m0) && m != bl.m0);
    let half = BigRational::new(1.into(), BigInt::from(p));
    for v in [
        [1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [1, 1, 0, 0, 0],
        [1, 1, 1, 1, 1],
        [0, 1, 0, 1, 1],
    ] {
        let extra: Vec<BigRational> = v
            .iter()
            .map(|&x| &half * BigRational::from_integer(x.into()))
            .collect();
        let mut gens = m.basis();
        gens.push(extra);
        let bigger = RationalLattice::from_rational_rows(&gens, 5).unwrap();
        assert_eq!(m.index_in(&bigger), Some(BigInt::from(p)));
        assert!(
            latres::resolvent_status(&bl, &bigger).unwrap().is_numerical,
            "{v:?}"
        );
    }
}

fn a18_by_hand(ring: ScalarRing) -> QuinticRing {
    let mut q = QuinticRing::zero(ring);
    q.set_constant(1, 1, 1, Scalar::from_i64(ring, -1));
    q
}

fn a19_by_hand(ring: ScalarRing) -> QuinticRing {
    let mut q = QuinticRing::zero(ring);
    q.set_constant(1, 1, 2, Scalar::one(ring));
    q
}

fn criterion5() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut stars = vec![[[0i64; 3]; 4]];
    for _ in 0..5 {
        stars.push([0; 4].map(|_| [0; 3].map(|_| rng.gen_range(-5..=5))));
    }
    for ring in [Q, ScalarRing::PrimeField(3)] {
        assert_eq!(
            a18_by_hand(ring).classify_very_degenerate().unwrap(),
            VeryDegenerateType::A18
        );
        assert_eq!(
            a19_by_hand(ring).classify_very_degenerate().unwrap(),
            VeryDegenerateType::A19
        );
        for st in &stars {
            assert!(registry::a18_resolvent(ring, st)
                .verify(&a18_by_hand(ring))
                .unwrap()
                .passed());
            assert!(registry::a19_resolvent(ring, st)
                .verify(&a19_by_hand(ring))
                .unwrap()
                .passed());
        }
    }
    assert!(selfcheck::example5_suite(0, 5).passed());
}

fn criterion6() {
    for s in selfcheck::identity_suites(0, 200) {
        assert_eq!(s.cases, 200);
        assert!(s.passed(), "{}: {:?}", s.name, s.failures.first());
    }
    // the first contraction identity carries a minus sign: one explicit instance
    let b = |i: &[usize]| ExtVector::basis(Z, 5, i).unwrap();
    let mu = b(&[0, 1]).add(&b(&[2, 3])).unwrap();
    let nu = b(&[0, 4]);
    let alpha = ExtVector::standard_generator(Z, 5, 0);
    let lhs = contract(&mu, &mu.wedge(&nu).unwrap(), &alpha).unwrap();
    let rhs = contract(&nu, &mu.box_square().unwrap(), &alpha).unwrap();
    assert_eq!((lhs, rhs), (Scalar::one(Z), Scalar::from_i64(Z, -1)));
}

fn associative_by_hand(q: &QuinticRing) -> bool {
    // products of basis elements from the raw table
    let mul = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(Z); 5];
        for a in 0..5 {
            for b in 0..5 {
                let coef = &u[a] * &v[b];
                if coef.is_zero() {
                    continue;
                }
                match (a, b) {
                    (0, _) => out[b] += coef,
                    (_, 0) => out[a] += coef,
                    _ => {
                        for k in 0..5 {
                            out[k] += &coef * q.constant(a, b, k);
                        }
                    }
                }
            }
        }
        out
    };
    let e = |i: usize| {
        let mut v = vec![Scalar::zero(Z); 5];
        v[i] = Scalar::one(Z);
        v
    };
    (1..=4).all(|i| {
        (1..=4).all(|j| {
            (1..=4).all(|k| mul(&mul(&e(i), &e(j)), &e(k)) == mul(&e(i), &mul(&e(j), &e(k))))
        })
    })
}

fn criterion7() {
    let s = selfcheck::random_resolvent_suite(0, 100);
    assert_eq!(s.cases, 100);
    assert!(s.passed(), "{:?}", s.failures.first());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let r = selfcheck::rand_resolvent(Z, &mut rng, 3);
        let q = r.ring_from_resolvent().unwrap();
        assert!(associative_by_hand(&q));
    }
}

fn criterion8() {
    let s = selfcheck::f_form_suite(0, 50);
    assert!(s.passed(), "{:?}", s.failures.first());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let bl2 = latres::compute_m0(
        &registry::example2_ring(Z, 2),
        Some(&registry::example2_reference(2)),
    )
    .unwrap();
    let cases = [
        (
            registry::example1_resolvent(Q),
            SplitModel::diagonal([1, 1, 1, 1]),
        ),
        (
            latres::inherited_data(&bl2.reference, &bl2.m0).unwrap(),
            example2_model(2),
        ),
    ];
    for (r, model) in cases {
        let t4 = r.t().pow(4);
        for _ in 0..50 {
            let xs: Vec<Vec<i128>> = (0..5)
                .map(|_| (0..4).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let boxes: Vec<_> = xs.iter().map(|x| r.phi_box(&scalars(Q, x))).collect();
            let lhs = &t4 * &quintic_resolvent::exterior::det_in_wedge4(&boxes).unwrap();
            let f = model.f_form([&xs[0], &xs[1], &xs[2], &xs[3], &xs[4]]);
            assert_eq!(lhs, Scalar::from_i64(Q, f as i64));
        }
    }
}

fn criterion9() {
    let (s, sigma) = selfcheck::pfaffian_sign_suite(0, 50);
    assert!(s.passed(), "{:?}", s.failures.first());
    assert!(sigma == Some(1) || sigma == Some(-1));
}

fn criterion10() {
    let q3 = registry::example3_ring(Z);
    let bl = latres::compute_m0(&q3, None).unwrap();
    let cond = latres::conductor(&bl).unwrap();
    let rep =
        latres::check_strong_maximal_hypothesis(&bl, &cond, &[2, 3], &SearchBudget::default())
            .unwrap();
    assert_eq!(rep.dims, vec![(2, 2), (3, 2)]);
    assert!(rep.predicts_unique);
    assert_eq!(rep.enumerated, Some(1));
    let z5 = SplitModel::diagonal([1, 1, 1, 1]).to_ring(Z);
    for p in [2, 3, 5] {
        assert_eq!(z5.integral_class_dim(p).unwrap().dim, 0);
    }
    assert_eq!(
        registry::example4_ring(Z, 2)
            .integral_class_dim(2)
            .unwrap()
            .dim,
        4
    );
}

fn criterion11() {
    assert!(selfcheck::counting_bound_suite().passed());
    let bl = latres::compute_m0(
        &registry::example2_ring(Z, 2),
        Some(&registry::example2_reference(2)),
    )
    .unwrap();
    let cond = latres::conductor(&bl).unwrap();
    let n = latres::enumerate_numerical_resolvents(&bl, &cond, &SearchBudget::default())
        .unwrap()
        .len();
    let bound = (2u64.pow(5) - 1) / (2 - 1);
    assert_eq!(
        latres::numerical_count_bound(&cond.factorization),
        BigInt::from(bound)
    );
    assert!(1 <= n && n as u64 <= bound);
    assert_eq!((n, bound), (3, 31));
}

fn main() {
    type Case = (u32, &'static str, u64, fn());
    let cases: [Case; 11] = [
        (1, "Example 1 passes the 400-point grid", 1, criterion1),
        (
            2,
            "Example 1 round trip gives the normalized table of Z^5",
            1,
            criterion2,
        ),
        (
            3,
            "Example 2 at p = 2, 3: conductor p, p + 1 numerical, none other",
            30,
            criterion3,
        ),
        (
            4,
            "Example 4 at p = 2: theta index p, non-numerical",
            5,
            criterion4,
        ),
        (5, "Example 5 families over Q and F_3", 5, criterion5),
        (6, "identity suites over Z, F_2, F_3", 30, criterion6),
        (
            7,
            "random resolvents give associative rings",
            60,
            criterion7,
        ),
        (8, "F against the determinant of box values", 10, criterion8),
        (
            9,
            "Pfaffian bracket matches s / t^2 with one sign",
            10,
            criterion9,
        ),
        (
            10,
            "strong maximality dimensions and uniqueness",
            30,
            criterion10,
        ),
        (
            11,
            "counting bound on numerical resolvents",
            30,
            criterion11,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in cases {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let ok = outcome.is_ok() && in_time;
        if !ok {
            failed += 1;
        }
        let note = match (outcome.is_ok(), in_time) {
            (true, true) => String::new(),
            (false, _) => " (assertion failed)".into(),
            (true, false) => format!(" (over the {limit} s limit)"),
        };
        println!(
            "criterion {id:>2} {}: {name} [{:.2} s]{note}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
