use ncspace_core::exactfield::{Arith, ExactMatrix, Field, FieldEmbedding, FieldSpec};
use ncspace_core::heights::*;
use ncspace_core::presentation::{parse_field, parse_scalar};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// max |p_i| / gcd(p_i) for an integer point.
fn naive_height(p: &[i64]) -> f64 {
    let g = p.iter().fold(0, |acc, &x| gcd(acc, x));
    p.iter().map(|x| x.abs()).max().unwrap() as f64 / g as f64
}

fn point(f: &Field, coords: &[&str]) -> ProjectivePoint {
    ProjectivePoint::new(f, coords.iter().map(|s| parse_scalar(f, s, &["t"]).unwrap()).collect()).unwrap()
}

fn nonzero_point(max: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-max..=max, 2..5).prop_filter("not all zero", |v| v.iter().any(|&x| x != 0))
}

#[test]
fn central_height_examples() {
    let pts = [ProjectivePoint::from_i64(&[1, 0, 0, 1]).unwrap(), ProjectivePoint::from_i64(&[8, 1, 2, 1]).unwrap()];
    assert_eq!(central_height(&pts).unwrap(), vec![1.0, 8.0]);
    assert!(central_height(&[]).is_err());
}

#[test]
fn scaling_invariance() {
    for field in ["Q", "Qext x^2-2"] {
        let f = parse_field(field).unwrap();
        let base = point(&f, &["3", "-4", "7"]);
        let h = weil_height(&base).unwrap();
        let mut scalars = vec!["2", "3", "-5"];
        if f.degree() == 2 {
            scalars.push("1 + t");
        }
        for c in scalars {
            let c = parse_scalar(&f, c, &["t"]).unwrap();
            let scaled = ProjectivePoint::new(&f, base.coords().iter().map(|x| f.mul(x, &c)).collect()).unwrap();
            assert!((weil_height(&scaled).unwrap() - h).abs() < 1e-9 * h, "{field}");
        }
    }
}

#[test]
fn tower_coherence() {
    let q = FieldSpec::rationals();
    let points: Vec<Vec<i64>> = (1..=20).map(|k| vec![k, (k * k) % 7 - 3, 2 * k + 1]).collect();
    for d in ["x^2-2", "x^2-3", "x^2+1"] {
        let k = parse_field(&format!("Qext {d}")).unwrap();
        let emb = FieldEmbedding::new(&q, &k).unwrap();
        for p in &points {
            let base = ProjectivePoint::from_i64(p).unwrap();
            let hq = weil_height(&base).unwrap();
            let hk = weil_height(&base.lift(&emb).unwrap()).unwrap();
            assert!((hk - hq * hq).abs() < 1e-9 * hk, "{d} {p:?}");
            let (abs, _) = absolute_and_log(&base.lift(&emb).unwrap()).unwrap();
            assert!((abs - hq).abs() < 1e-9 * hq);
        }
    }
}

#[test]
fn gaussian_point_with_nontrivial_ideal() {
    // (1 + i : 2): coordinate ideal (1 + i) has norm 2; |1 ± i| = √2 < 2.
    let k = parse_field("Qext x^2+1").unwrap();
    let p = point(&k, &["1 + t", "2"]);
    assert!((weil_height(&p).unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn non_maximal_order_is_refused_for_places() {
    let k = parse_field("Qext x^2-5").unwrap();
    let m = ExactMatrix::from_entries(&k, 1, 1, vec![parse_scalar(&k, "2", &["t"]).unwrap()]).unwrap();
    assert!(representation_height(&k, &[m], false).is_err());
    assert!(fundamental_discriminant(&5.into()));
    assert!(!fundamental_discriminant(&20.into()));
}

#[test]
fn representation_height_over_quadratic_field() {
    // In ℚ(√2), 2 = (√2)², ramified with local degree 2: v(√2) = 1, h = −2.
    let k = parse_field("Qext x^2-2").unwrap();
    let m = ExactMatrix::from_entries(&k, 1, 1, vec![parse_scalar(&k, "t", &["t"]).unwrap()]).unwrap();
    assert_eq!(representation_height(&k, &[m], false).unwrap(), -2.0);
    // 3 + √2 has norm 7 and generates one of the two split places above 7.
    let m = ExactMatrix::from_entries(&k, 1, 1, vec![parse_scalar(&k, "3 + t", &["t"]).unwrap()]).unwrap();
    assert_eq!(representation_height(&k, &[m], false).unwrap(), -1.0);
}

fn vp(mut n: i64, p: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_height_matches_naive(p in nonzero_point(200)) {
        let h = weil_height(&ProjectivePoint::from_i64(&p).unwrap()).unwrap();
        prop_assert_eq!(h, naive_height(&p));
        prop_assert!(h >= 1.0);
    }

    #[test]
    fn permutation_invariance(p in nonzero_point(50), seed in any::<u64>()) {
        let mut q = p.clone();
        let n = q.len();
        q.rotate_left((seed as usize) % n);
        q.reverse();
        let a = weil_height(&ProjectivePoint::from_i64(&p).unwrap()).unwrap();
        let b = weil_height(&ProjectivePoint::from_i64(&q).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn quadratic_heights_are_at_least_one(
        c in proptest::collection::vec((-9i64..=9, -9i64..=9), 2..4)
            .prop_filter("not all zero", |v| v.iter().any(|&(a, b)| a != 0 || b != 0)),
        d in prop_oneof![Just("x^2-2"), Just("x^2+1"), Just("x^2-3")],
    ) {
        let k = parse_field(&format!("Qext {d}")).unwrap();
        let coords: Vec<String> = c.iter().map(|(a, b)| format!("{a} + {b}*t")).collect();
        let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
        let p = point(&k, &refs);
        prop_assert!(weil_height(&p).unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn one_by_one_representation_height(vals in proptest::collection::vec(-60i64..=60, 1..4)) {
        let q = FieldSpec::rationals();
        let ms: Vec<ExactMatrix> = vals.iter().map(|&v| ExactMatrix::from_i64_rows(&q, &[vec![v]]).unwrap()).collect();
        let mut expected = 0;
        for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59] {
            if vals.iter().any(|&v| v != 0 && v % p == 0) {
                expected -= vals.iter().map(|&v| vp(v, p)).min().unwrap();
            }
        }
        prop_assert_eq!(representation_height(&q, &ms, false).unwrap(), expected as f64);
    }
}
