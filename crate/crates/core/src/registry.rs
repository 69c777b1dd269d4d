//! The five worked examples as ready-made rings and resolvents.

use num_rational::BigRational;

use crate::corelin::{ExactMatrix, RationalLattice, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::exterior::ExtVector;
use crate::quintic::QuinticRing;
use crate::resolvent::ResolventData;

/// A named ring with an optional resolvent.
#[derive(Clone, Debug)]
pub struct ExampleCase {
    pub name: String,
    pub ring: QuinticRing,
    pub resolvent: Option<ResolventData>,
    /// Basis of the resolvent lattice inside the reference frame, when the
    /// resolvent is not the reference itself.
    pub lattice: Option<RationalLattice>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub conductor: Option<u64>,
    pub numerical_count: Option<usize>,
    pub non_numerical_count: Option<usize>,
    pub theta_index: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub id: u32,
    pub p: Option<u64>,
    pub cases: Vec<ExampleCase>,
    pub expected: Expected,
}

/// Star entries of the very degenerate families: `stars[m][r]` sits at
/// row `r` (0-based, `r < 3`), column 5 of the `m`-th matrix.
pub type Stars = [[i64; 3]; 4];

fn skew_from(ring: ScalarRing, entries: &[(usize, usize, i64)]) -> ExactMatrix {
    let mut a = ExactMatrix::zeros(ring, 5, 5);
    for &(i, j, v) in entries {
        let cur = a.get(i - 1, j - 1) + &Scalar::from_i64(ring, v);
        a.set(i - 1, j - 1, cur.clone());
        a.set(j - 1, i - 1, -cur);
    }
    a
}

fn split_ring(ring: ScalarRing, diag: [i64; 4]) -> QuinticRing {
    let mut q = QuinticRing::zero(ring);
    for (i, d) in diag.iter().enumerate() {
        q.set_constant(i + 1, i + 1, i + 1, Scalar::from_i64(ring, *d));
    }
    q
}

/// `φ(eᵢ) = fᵢ∧(f_{i−1} + f_{i+1})`, indices mod 5, for `i = 1..5`.
pub fn example1_matrices(ring: ScalarRing) -> Vec<ExactMatrix> {
    (1..=5usize)
        .map(|i| {
            let prev = if i == 1 { 5 } else { i - 1 };
            let next = if i == 5 { 1 } else { i + 1 };
            skew_from(ring, &[(i, prev, 1), (i, next, 1)])
        })
        .collect()
}

pub fn example1_resolvent(ring: ScalarRing) -> ResolventData {
    let mats = example1_matrices(ring);
    let total = mats.iter().skip(1).try_fold(mats[0].clone(), |acc, m| {
        let rows = (0..5)
            .map(|r| (0..5).map(|c| acc.get(r, c) + m.get(r, c)).collect())
            .collect();
        ExactMatrix::from_rows(ring, rows)
    });
    assert!(
        total.expect("same shape") == ExactMatrix::zeros(ring, 5, 5),
        "φ(e₁ + … + e₅) must vanish"
    );
    ResolventData::new(ring, mats[..4].to_vec(), Scalar::one(ring)).expect("alternating")
}

pub fn example1_ring(ring: ScalarRing) -> QuinticRing {
    split_ring(ring, [1, 1, 1, 1])
}

/// Example 2's ring on the basis `(pe₁, pe₂, pe₃, e₅)` of `L`.
pub fn example2_ring(ring: ScalarRing, p: u64) -> QuinticRing {
    let p = p as i64;
    split_ring(ring, [p, p, p, 1])
}

/// `L`-basis of Example 2 in the coordinates of Example 1.
pub fn example2_l_basis(p: u64) -> ExactMatrix {
    let p = p as i64;
    ExactMatrix::from_i64_rows(
        ScalarRing::Rational,
        &[
            vec![p, 0, 0, 0],
            vec![0, p, 0, 0],
            vec![0, 0, p, 0],
            vec![-1, -1, -1, -1],
        ],
    )
}

/// Example 1's resolvent re-expressed on Example 2's `L`, over ℚ.
pub fn example2_reference(p: u64) -> ResolventData {
    example1_resolvent(ScalarRing::Rational)
        .change_l_basis(&example2_l_basis(p))
        .expect("invertible over ℚ")
}

/// `M₀ = ⟨p(f₁+f₄), p²f₂, p²f₃, p²f₄, pf₅⟩`.
pub fn example2_m0_basis(p: u64) -> ExactMatrix {
    let p = p as i64;
    ExactMatrix::from_i64_rows(
        ScalarRing::Rational,
        &[
            vec![p, 0, 0, p, 0],
            vec![0, p * p, 0, 0, 0],
            vec![0, 0, p * p, 0, 0],
            vec![0, 0, 0, p * p, 0],
            vec![0, 0, 0, 0, p],
        ],
    )
}

pub fn example2_m0(p: u64) -> RationalLattice {
    lattice_of_rows(&example2_m0_basis(p))
}

/// The four displayed values of φ on `p⁴e_top e₁, p⁴e_top e₂, p⁴e_top e₃,
/// p³e_top e₅`, in the basis `f₁'..f₅'` of `M₀`, exactly as printed.
pub fn example2_fixtures(p: u64) -> Vec<ExtVector> {
    let r = ScalarRing::Integer;
    let p = p as i64;
    let vec = |c: [i64; 5]| {
        ExtVector::vector(
            r,
            &c.iter()
                .map(|&x| Scalar::from_i64(r, x))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let w = |a: [i64; 5], b: [i64; 5]| vec(a).wedge(&vec(b)).unwrap();
    vec![
        w([p, 0, 0, -1, 0], [0, 1, 0, 0, p]),
        w([0, 1, 0, 0, 0], [p, 0, 1, -1, 0]),
        w([0, 0, 1, 0, 0], [0, p, 0, 1, 0]),
        w([0, 0, 0, 0, 1], [p, 0, 0, 0, 0]),
    ]
}

/// Example 3: `ℤ ⊕ ℤ ⊕ ℤ[x, y]/(x, y)²` on the basis `(e₁, e₂, x, y)`.
pub fn example3_ring(ring: ScalarRing) -> QuinticRing {
    split_ring(ring, [1, 1, 0, 0])
}

/// Example 4: `ℤ + p²ℤ^⊕5` on the basis `p²e₁..p²e₄` of `L`.
pub fn example4_ring(ring: ScalarRing, p: u64) -> QuinticRing {
    let p2 = (p * p) as i64;
    split_ring(ring, [p2, p2, p2, p2])
}

/// Example 4's resolvent on `M = p⁵M₁`: Example 1's matrices with `t = p`.
pub fn example4_resolvent(ring: ScalarRing, p: u64) -> ResolventData {
    let mats = example1_matrices(ring);
    ResolventData::new(ring, mats[..4].to_vec(), Scalar::from_i64(ring, p as i64))
        .expect("alternating")
}

fn with_stars(
    ring: ScalarRing,
    base: [&[(usize, usize, i64)]; 4],
    stars: &Stars,
) -> Vec<ExactMatrix> {
    base.iter()
        .zip(stars)
        .map(|(entries, st)| {
            let mut e = entries.to_vec();
            for (r, &v) in st.iter().enumerate() {
                e.push((r + 1, 5, v));
            }
            skew_from(ring, &e)
        })
        .collect()
}

const A18_BASE: [&[(usize, usize, i64)]; 4] =
    [&[(4, 5, 1)], &[(2, 3, 1)], &[(1, 3, -1)], &[(1, 2, 1)]];
const A19_BASE: [&[(usize, usize, i64)]; 4] =
    [&[(2, 3, 1), (4, 5, 1)], &[], &[(1, 3, -1)], &[(1, 2, 1)]];

pub fn a18_resolvent(ring: ScalarRing, stars: &Stars) -> ResolventData {
    ResolventData::new(ring, with_stars(ring, A18_BASE, stars), Scalar::one(ring))
        .expect("alternating")
}

pub fn a19_resolvent(ring: ScalarRing, stars: &Stars) -> ResolventData {
    ResolventData::new(ring, with_stars(ring, A19_BASE, stars), Scalar::one(ring))
        .expect("alternating")
}

/// `A₁₈ = K ⊕ K[x,y,z]/(x,y,z)²` with `e₁² = −e₁` (so `−e₁` is idempotent).
pub fn a18_ring(ring: ScalarRing) -> QuinticRing {
    split_ring(ring, [-1, 0, 0, 0])
}

/// `A₁₉ = K[x,y,z]/(x³, xy, y², xz, yz, z²)` with `e₁ = x`, `e₂ = x²`.
pub fn a19_ring(ring: ScalarRing) -> QuinticRing {
    let mut q = QuinticRing::zero(ring);
    q.set_constant(1, 1, 2, Scalar::one(ring));
    q
}

/// `A₂₀`: all products in the augmentation ideal vanish.
pub fn a20_ring(ring: ScalarRing) -> QuinticRing {
    QuinticRing::zero(ring)
}

pub fn lattice_of_rows(b: &ExactMatrix) -> RationalLattice {
    let rows: Vec<Vec<BigRational>> = b
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| s.to_rational().expect("rational entry"))
                .collect()
        })
        .collect();
    RationalLattice::from_rational_rows(&rows, b.cols()).expect("full rank")
}

pub fn build_example(id: u32, p: Option<u64>) -> Result<ExampleSpec> {
    build_example_with_stars(id, p, &[[0; 3]; 4])
}

pub fn build_example_with_stars(id: u32, p: Option<u64>, stars: &Stars) -> Result<ExampleSpec> {
    let z = ScalarRing::Integer;
    let need_p = |id| {
        let p = p.ok_or(Error::MissingPrime(id))?;
        ScalarRing::prime_field(p)?;
        Ok::<u64, Error>(p)
    };
    let built = match id {
        1 => ExampleSpec {
            id,
            p: None,
            cases: vec![ExampleCase {
                name: "Z^5".into(),
                ring: example1_ring(z),
                resolvent: Some(example1_resolvent(z)),
                lattice: None,
            }],
            expected: Expected {
                conductor: Some(1),
                numerical_count: Some(1),
                non_numerical_count: Some(0),
                theta_index: Some(1),
            },
        },
        2 => {
            let p = need_p(id)?;
            ExampleSpec {
                id,
                p: Some(p),
                cases: vec![ExampleCase {
                    name: format!("Example 2, p = {p}"),
                    ring: example2_ring(z, p),
                    resolvent: Some(example2_reference(p)),
                    lattice: None,
                }],
                expected: Expected {
                    conductor: Some(p),
                    numerical_count: Some(p as usize + 1),
                    non_numerical_count: Some(0),
                    theta_index: None,
                },
            }
        }
        3 => ExampleSpec {
            id,
            p: None,
            cases: vec![ExampleCase {
                name: "Z + Z + Z[x,y]/(x,y)^2".into(),
                ring: example3_ring(z),
                resolvent: None,
                lattice: None,
            }],
            expected: Expected {
                conductor: Some(1),
                numerical_count: Some(1),
                non_numerical_count: None,
                theta_index: None,
            },
        },
        4 => {
            let p = need_p(id)?;
            let m = RationalLattice::from(crate::corelin::IntegerLattice::standard(5));
            ExampleSpec {
                id,
                p: Some(p),
                cases: vec![ExampleCase {
                    name: format!("Z + {p}^2 Z^5"),
                    ring: example4_ring(z, p),
                    resolvent: Some(example4_resolvent(z, p)),
                    lattice: Some(m),
                }],
                expected: Expected {
                    conductor: Some(p.pow(4)),
                    numerical_count: None,
                    non_numerical_count: None,
                    theta_index: Some(p),
                },
            }
        }
        5 => {
            let q = ScalarRing::Rational;
            ExampleSpec {
                id,
                p: None,
                cases: vec![
                    ExampleCase {
                        name: "A18".into(),
                        ring: a18_ring(q),
                        resolvent: Some(a18_resolvent(q, stars)),
                        lattice: None,
                    },
                    ExampleCase {
                        name: "A19".into(),
                        ring: a19_ring(q),
                        resolvent: Some(a19_resolvent(q, stars)),
                        lattice: None,
                    },
                ],
                expected: Expected::default(),
            }
        }
        other => return Err(Error::UnknownExample(other)),
    };
    Ok(built)
}
