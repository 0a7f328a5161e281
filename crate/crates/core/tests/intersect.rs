use ncspace_core::error::Error;
use ncspace_core::exactfield::{ExactMatrix, FieldSpec};
use ncspace_core::intersect::*;
use ncspace_core::repmod::parse;
use proptest::prelude::*;

const CENTRE: &[&str] = &["t^3 - r*s"];

fn mu3_ring() -> PolyRing {
    let (alg, _) = parse(&std::fs::read_to_string(fixture("mu3.ncs")).unwrap()).unwrap();
    PolyRing::new(&alg.field, &["r", "s", "t"]).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Dimension of the span of `x^i y^j σ^k` (i, j, k < 3) acting on the
/// 3-dimensional module at the point r = s = t = 1.
fn fibre_rank_by_enumeration() -> usize {
    let (_, mods) = parse(&std::fs::read_to_string(fixture("mu3.ncs")).unwrap()).unwrap();
    let m = &mods["M"];
    let f = m.field().clone();
    let pow = |a: &ExactMatrix, k: usize| (0..k).fold(ExactMatrix::identity(&f, 3), |acc, _| acc.mul(a).unwrap());
    let (x, y, s) = (m.matrix("x").unwrap(), m.matrix("y").unwrap(), m.matrix("sigma").unwrap());
    let mut rows = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let w = pow(x, i).mul(&pow(y, j)).unwrap().mul(&pow(s, k)).unwrap();
                rows.push(w.entries().to_vec());
            }
        }
    }
    ExactMatrix::from_rows(&f, rows).unwrap().rank()
}

#[test]
fn mu3_intersection_at_one() {
    let ring = mu3_ring();
    let rank = fibre_rank_by_enumeration();
    assert_eq!(rank, 9);
    let e = CentralDivisor::parse(&ring, "E", &["t - 1"], CENTRE).unwrap();
    let f = CentralDivisor::parse(&ring, "F", &["r - 1"], CENTRE).unwrap();
    assert_eq!(intersection_number(&ring, &e, &f, rank).unwrap(), 9);
    assert_eq!(intersection_number(&ring, &f, &e, rank).unwrap(), 9);
}

#[test]
fn mu3_disjoint_and_self() {
    let ring = mu3_ring();
    let e = CentralDivisor::parse(&ring, "E", &["t - 1"], CENTRE).unwrap();
    let g = CentralDivisor::parse(&ring, "G", &["t - 2"], CENTRE).unwrap();
    assert_eq!(intersection_number(&ring, &e, &g, 9).unwrap(), 0);
    assert!(matches!(intersection_number(&ring, &e, &e, 9), Err(Error::NotZeroDimensional)));
}

#[test]
fn centre_point_basis() {
    let ring = mu3_ring();
    let gens: Vec<_> = ["t^3 - r*s", "r - 1", "s - 1", "t - 1"].iter().map(|s| ring.parse(s).unwrap()).collect();
    let gb = ring.buchberger(&gens).unwrap();
    let shown: Vec<String> = gb.iter().map(|g| ring.format(g)).collect();
    assert_eq!(shown.len(), 3);
    for g in ["r - 1", "s - 1", "t - 1"] {
        assert!(shown.contains(&g.to_string()));
    }
    assert_eq!(quotient_dimension(&ring, &gb).unwrap(), QuotientDimension::Finite(1));
}

#[test]
fn multiplicity_counts_length() {
    // Tangent intersection of a parabola and a line: length 2.
    let q = FieldSpec::rationals();
    let ring = PolyRing::new(&q, &["x", "y"]).unwrap();
    let d = CentralDivisor::parse(&ring, "D", &["y - x^2"], &[]).unwrap();
    let e = CentralDivisor::parse(&ring, "E", &["y"], &[]).unwrap();
    for rank in 1..5 {
        assert_eq!(intersection_number(&ring, &d, &e, rank).unwrap(), 2 * rank);
    }
}

fn random_poly() -> impl Strategy<Value = String> {
    proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 1..4).prop_map(|terms| {
        terms.iter().map(|(c, a, b, d)| format!("({c})*x^{a}*y^{b}*z^{d}")).collect::<Vec<_>>().join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn buchberger_is_idempotent_and_sound(gens in proptest::collection::vec(random_poly(), 1..4)) {
        let ring = PolyRing::new(&FieldSpec::rationals(), &["x", "y", "z"]).unwrap();
        let polys: Vec<_> = gens.iter().map(|s| ring.parse(s).unwrap()).collect();
        let gb = ring.buchberger(&polys).unwrap();
        prop_assert_eq!(ring.buchberger(&gb).unwrap(), gb.clone());
        for p in &polys {
            prop_assert!(ring.reduce(p, &gb).is_zero());
        }
    }

    #[test]
    fn quotient_dimension_ignores_generator_order(
        gens in proptest::collection::vec(random_poly(), 1..4),
        rot in 0usize..4,
    ) {
        let ring = PolyRing::new(&FieldSpec::rationals(), &["x", "y", "z"]).unwrap();
        let mut polys: Vec<_> = gens.iter().map(|s| ring.parse(s).unwrap()).collect();
        // Bound the staircase so every case is zero-dimensional.
        for b in ["x^3 - 1", "y^3 + y", "z^2 - 2"] {
            polys.push(ring.parse(b).unwrap());
        }
        let a = quotient_dimension(&ring, &ring.buchberger(&polys).unwrap()).unwrap();
        let n = polys.len();
        polys.rotate_left(rot % n);
        polys.reverse();
        let b = quotient_dimension(&ring, &ring.buchberger(&polys).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn intersection_is_symmetric_and_linear_in_rank(a in -3i64..=3, b in -3i64..=3, rank in 1usize..10) {
        let ring = PolyRing::new(&FieldSpec::rationals(), &["x", "y"]).unwrap();
        let d = CentralDivisor::parse(&ring, "D", &[&format!("y - x^2 - ({a})")], &[]).unwrap();
        let e = CentralDivisor::parse(&ring, "E", &[&format!("y - ({b})*x")], &[]).unwrap();
        let de = intersection_number(&ring, &d, &e, rank).unwrap();
        prop_assert_eq!(de, intersection_number(&ring, &e, &d, rank).unwrap());
        prop_assert_eq!(de, rank * intersection_number(&ring, &d, &e, 1).unwrap());
        prop_assert_eq!(de, 2 * rank);
    }
}
