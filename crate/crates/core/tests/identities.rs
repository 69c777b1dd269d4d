mod common;

use proptest::prelude::*;

use common::{leibniz_det, scalars};
use quintic_resolvent::exterior::{contract, det_in_wedge4, subsets, ExtVector};
use quintic_resolvent::json;
use quintic_resolvent::quintic::QuinticRing;
use quintic_resolvent::{ExactMatrix, Scalar, ScalarRing};

const Z: ScalarRing = ScalarRing::Integer;

fn vecs(k: usize) -> impl Strategy<Value = Vec<Vec<i128>>> {
    prop::collection::vec(prop::collection::vec(-4i128..=4, 5), k)
}

fn ext_of(vs: &[Vec<i128>]) -> ExtVector {
    let mut acc = ExtVector::vector(Z, &scalars(Z, &vs[0])).unwrap();
    for v in &vs[1..] {
        acc = acc
            .wedge(&ExtVector::vector(Z, &scalars(Z, v)).unwrap())
            .unwrap();
    }
    acc
}

fn minors(vs: &[Vec<i128>]) -> Vec<Scalar> {
    subsets(5, vs.len())
        .iter()
        .map(|cols| {
            let m: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| cols.iter().map(|&c| v[c]).collect())
                .collect();
            Scalar::from_i64(Z, leibniz_det(&m) as i64)
        })
        .collect()
}

fn with(vs: &[Vec<i128>], extra: &[i128]) -> Vec<Vec<i128>> {
    let mut out = vs.to_vec();
    out.push(extra.to_vec());
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn wedge_of_vectors_is_the_minor_vector(vs in vecs(3)) {
        prop_assert_eq!(ext_of(&vs).coeffs().to_vec(), minors(&vs));
    }

    #[test]
    fn box_of_two_planes_is_their_wedge(vs in vecs(4)) {
        let mu = ext_of(&vs[..2]).add(&ext_of(&vs[2..])).unwrap();
        prop_assert_eq!(mu.box_square().unwrap().coeffs().to_vec(), minors(&vs));
        let twice = mu.wedge(&mu).unwrap();
        let doubled = mu.box_square().unwrap().scale(&Scalar::from_i64(Z, 2));
        prop_assert_eq!(twice, doubled);
    }

    #[test]
    fn contraction_of_a_plane(uv in vecs(2), a in vecs(4), b in vecs(4)) {
        let d = |four: &[Vec<i128>], x: &[i128]| leibniz_det(&with(four, x));
        let want = d(&a, &uv[0]) * d(&b, &uv[1]) - d(&a, &uv[1]) * d(&b, &uv[0]);
        let got = contract(&ext_of(&uv), &ext_of(&a), &ext_of(&b)).unwrap();
        prop_assert_eq!(got, Scalar::from_i64(Z, want as i64));
    }

    #[test]
    fn hat_reads_the_top_coefficient(a in vecs(4)) {
        let alpha = ext_of(&a);
        let hat = alpha.hat().unwrap();
        for i in 0..5 {
            let mut e = vec![0; 5];
            e[i] = 1;
            prop_assert_eq!(&hat[i], &Scalar::from_i64(Z, leibniz_det(&with(&a, &e)) as i64));
        }
        prop_assert_eq!(ExtVector::from_hat(Z, &hat).unwrap(), alpha);
    }

    #[test]
    fn five_fourfold_wedges(rows in vecs(5)) {
        // degree-4 vectors with prescribed hats
        let ws: Vec<ExtVector> = rows.iter().map(|r| ExtVector::from_hat(Z, &scalars(Z, r)).unwrap()).collect();
        prop_assert_eq!(det_in_wedge4(&ws).unwrap(), Scalar::from_i64(Z, leibniz_det(&rows) as i64));
    }

    #[test]
    fn pfaffian_of_four(entries in prop::collection::vec(-6i128..=6, 6)) {
        let [a, b, c, d, e, f] = <[i128; 6]>::try_from(entries).unwrap();
        let rows = vec![
            vec![0, a, b, c],
            vec![-a, 0, d, e],
            vec![-b, -d, 0, f],
            vec![-c, -e, -f, 0],
        ];
        let m = ExactMatrix::from_rows(Z, rows.iter().map(|r| scalars(Z, r)).collect()).unwrap();
        let pf = a * f - b * e + c * d;
        prop_assert_eq!(m.pfaffian().unwrap(), Scalar::from_i64(Z, pf as i64));
        prop_assert_eq!(pf * pf, leibniz_det(&rows));
    }

    #[test]
    fn ring_json_is_byte_stable(vals in prop::collection::vec(-9i64..=9, 50)) {
        let mut entries = Vec::new();
        let mut it = vals.chunks(5);
        for i in 1..=4 {
            for j in i..=4 {
                let c = it.next().unwrap();
                entries.push((i, j, c.iter().map(|&x| Scalar::from_i64(Z, x)).collect()));
            }
        }
        let q = QuinticRing::from_entries(Z, &entries).unwrap();
        let text = json::ring_to_json(&q);
        let back = json::ring_from_json(&text).unwrap();
        prop_assert_eq!(json::ring_to_json(&back), text);
        prop_assert_eq!(back, q);
    }
}
