use std::collections::BTreeMap;
use std::sync::Arc;

use ncspace_core::exactfield::{Arith, ExactMatrix, FieldEmbedding};
use ncspace_core::extcalc::*;
use ncspace_core::presentation::{parse_field, AlgebraPresentation};
use ncspace_core::repmod::*;
use ncspace_core::Error;
use proptest::prelude::*;

type Fixture = (Arc<AlgebraPresentation>, BTreeMap<String, Representation>);

fn fixture(name: &str) -> Fixture {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const ALL: [&str; 8] = [
    "mu3.ncs",
    "quad_d2_p7split.ncs",
    "quad_d2_p5inert.ncs",
    "quad_d3_p3.ncs",
    "quad_d2_p2.ncs",
    "quad_d2_q.ncs",
    "curve_f7.ncs",
    "curve_f3.ncs",
];

fn pairs(f: &Fixture) -> Vec<(&Representation, &Representation)> {
    let ms: Vec<&Representation> = f.1.values().collect();
    ms.iter().flat_map(|a| ms.iter().map(move |b| (*a, *b))).collect()
}

fn dim(file: &str, m: &str, n: &str) -> usize {
    let (_, mods) = fixture(file);
    ext1(&mods[m], &mods[n]).unwrap().dim_ext1
}

#[test]
fn split_square_relation_kills_the_diagonal() {
    let (_, mods) = fixture("quad_d2_p7split.ncs");
    let m = &mods["M"];
    let sys = derivation_system(m, m).unwrap();
    assert_eq!(sys.num_unknowns(), 2 * 2 * 2);
    // Columns 0..4 are δ(x) row-major; x₁₁ and x₂₂ sit at 0 and 3.
    for v in sys.matrix.rref().kernel_basis() {
        assert!(v[0] == m.field().zero() && v[3] == m.field().zero());
    }
}

#[test]
fn leibniz_on_a_square() {
    let (alg, mods) = parse("field Q; algebra A { gens x; rel x^2 - 9; } module M dim 1 { x = [[3]]; }").unwrap();
    let sys = derivation_system(&mods["M"], &mods["M"]).unwrap();
    assert_eq!(*sys.matrix.get(0, 0), alg.field.from_i64(6));
}

#[test]
fn cube_relation_coefficients() {
    let (alg, mods) = fixture("curve_f7.ncs");
    let f = &alg.field;
    let sys = derivation_system(&mods["M"], &mods["N"]).unwrap();
    // Relation 2 is x³ − u; unknowns are d_u, d_v, d_x, d_y.
    assert!(f.is_zero(sys.matrix.get(2, 2)));
    assert_eq!(*sys.matrix.get(2, 0), f.from_i64(-1));
}

#[test]
fn worked_ext_dimensions() {
    assert_eq!(dim("mu3.ncs", "M", "M"), 2);
    assert_eq!(dim("quad_d2_p2.ncs", "M3", "M3"), 2);
    assert_eq!(dim("quad_d2_p7split.ncs", "M", "M"), 0);
    assert_eq!(dim("quad_d2_p5inert.ncs", "M", "M"), 0);
}

#[test]
fn axis_modules_share_one_isomorphism_class() {
    // Ext¹ only sees isomorphism classes, and the three axis modules are
    // one class, so every entry equals Ext¹(M1, M1).
    let (_, mods) = fixture("mu3.ncs");
    let d = ext1(&mods["M1"], &mods["M1"]).unwrap().dim_ext1;
    for a in ["M1", "M2", "M3"] {
        for b in ["M1", "M2", "M3"] {
            assert!(is_isomorphic(&mods[a], &mods[b]).unwrap());
            assert_eq!(ext1(&mods[a], &mods[b]).unwrap().dim_ext1, d);
        }
    }
    assert_eq!(d, 2);
}

#[test]
fn oracle_examples() {
    let (_, wild) = fixture("quad_d2_p2.ncs");
    assert_eq!(ext1_bruteforce(&wild["M1"], &wild["M2"]).unwrap(), 2);
    let (_, tame) = fixture("quad_d3_p3.ncs");
    assert_eq!(ext1_bruteforce(&tame["M3"], &tame["M2"]).unwrap(), 0);
    let (_, free) = parse("field Fp 2; algebra F { gens x; } module T dim 1 { x = [[0]]; }").unwrap();
    let r = ext1(&free["T"], &free["T"]).unwrap();
    assert_eq!((r.dim_der, r.dim_inner, r.dim_ext1), (1, 0, 1));
    assert_eq!(ext1_bruteforce(&free["T"], &free["T"]).unwrap(), 1);
}

#[test]
fn oracle_refuses_large_or_nonprime_inputs() {
    let (_, split) = fixture("quad_d2_p7split.ncs");
    assert!(matches!(ext1_bruteforce(&split["M"], &split["M"]), Err(Error::TooLarge(_))));
    let (_, mu3) = fixture("mu3.ncs");
    assert!(ext1_bruteforce(&mu3["M"], &mu3["M"]).is_err());
}

#[test]
fn oracle_agrees_on_small_fixtures() {
    let mut checked = 0;
    for file in ["quad_d2_p2.ncs", "quad_d3_p3.ncs", "curve_f3.ncs", "curve_f7.ncs"] {
        let fx = fixture(file);
        for (m, n) in pairs(&fx) {
            assert_eq!(ext1(m, n).unwrap().dim_ext1, ext1_bruteforce(m, n).unwrap(), "{file} {} {}", m.label(), n.label());
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn report_invariants_on_all_fixtures() {
    for file in ALL {
        let fx = fixture(file);
        for (m, n) in pairs(&fx) {
            let r = ext1(m, n).unwrap();
            assert_eq!(r.dim_inner + r.dim_hom, m.dim() * n.dim(), "{file}");
            assert_eq!(r.dim_ext1, r.dim_der - r.dim_inner);
            assert_eq!(r.cocycle_basis.len(), r.dim_ext1);
            for c in &r.cocycle_basis {
                assert!(is_derivation(m, n, c).unwrap());
            }
            // Inner derivations satisfy the constraints; use every matrix unit.
            for i in 0..n.dim() {
                for j in 0..m.dim() {
                    let mut theta = ExactMatrix::zeros(m.field(), n.dim(), m.dim());
                    theta.set(i, j, m.field().one());
                    assert!(is_derivation(m, n, &inner_derivation(m, n, &theta).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn cocycles_are_not_inner() {
    for file in ["quad_d2_p2.ncs", "mu3.ncs", "curve_f7.ncs"] {
        let fx = fixture(file);
        for (m, n) in pairs(&fx) {
            let r = ext1(m, n).unwrap();
            if r.cocycle_basis.is_empty() {
                continue;
            }
            // Adding the cocycles to the inner image raises the rank by dim Ext¹.
            let inner = inner_map(m, n).unwrap();
            let base = inner.rank();
            let f = m.field();
            let mut cols = inner.transpose().to_rows();
            for c in &r.cocycle_basis {
                cols.push(c.components.iter().flat_map(|x| x.entries().iter().cloned()).collect());
            }
            let stacked = ExactMatrix::from_rows(f, cols).unwrap();
            assert_eq!(stacked.rank(), base + r.dim_ext1, "{file}");
        }
    }
}

#[test]
fn muller_direction() {
    let (_, mods) = fixture("mu3.ncs");
    let rst: Vec<String> = ["r", "s", "t"].iter().map(|s| s.to_string()).collect();
    let fx = fixture("mu3.ncs");
    for (m, n) in pairs(&fx) {
        let cm = central_character(m, &rst).unwrap();
        let cn = central_character(n, &rst).unwrap();
        if cm != cn {
            assert_eq!(ext1(m, n).unwrap().dim_ext1, 0);
        }
    }
    assert_eq!(ext1(&mods["M"], &mods["M1"]).unwrap().dim_ext1, 0);
}

#[test]
fn base_change_invariance() {
    let cases = [
        ("quad_d2_p2.ncs", "Fpext 2 x^2+x+1"),
        ("quad_d3_p3.ncs", "Fpext 3 x^2+1"),
        ("curve_f3.ncs", "Fpext 3 x^2+1"),
        ("curve_f7.ncs", "Fpext 7 x^2-3"),
        ("quad_d2_p7split.ncs", "Fpext 7 x^2-3"),
        ("quad_d2_p5inert.ncs", "Fpext 5 x^2-2"),
        ("quad_d2_q.ncs", "Qext x^2-2"),
        ("mu3.ncs", "Qext x^4+2*x^3-x^2-2*x+7"),
    ];
    for (file, big) in cases {
        let (alg, mods) = fixture(file);
        let emb = FieldEmbedding::new(&alg.field, &parse_field(big).unwrap()).unwrap();
        let family: Vec<Representation> = mods.values().cloned().collect();
        let ext = extend_family(&family, &emb).unwrap();
        for i in 0..family.len() {
            for j in 0..family.len() {
                let a = ext1(&family[i], &family[j]).unwrap();
                let b = ext1(&ext[i], &ext[j]).unwrap();
                assert_eq!((a.dim_hom, a.dim_ext1), (b.dim_hom, b.dim_ext1), "{file} {i} {j}");
            }
        }
    }
}

#[test]
fn mismatched_algebras() {
    let (_, a) = fixture("quad_d2_p2.ncs");
    let (_, b) = fixture("quad_d3_p3.ncs");
    assert!(matches!(ext1(&a["M1"], &b["M1"]), Err(Error::AlgebraMismatch)));
}

fn commuting_pair(p: u64, a: [i64; 4], c: [i64; 4]) -> Fixture {
    // x = a₀ + a₁·B and y = c₀ + c₁·B commute for any B.
    let b = [a[2], a[3], c[2], c[3]];
    let poly = |k0: i64, k1: i64| {
        format!(
            "[[{}, {}], [{}, {}]]",
            k0 + k1 * b[0],
            k1 * b[1],
            k1 * b[2],
            k0 + k1 * b[3]
        )
    };
    let text = format!(
        "field Fp {p}; algebra C {{ gens x, y; rel x*y - y*x; }}
         module M dim 2 {{ x = {}; y = {}; }}
         module N dim 1 {{ x = [[{}]]; y = [[{}]]; }}",
        poly(a[0], a[1]),
        poly(c[0], c[1]),
        a[0],
        c[0]
    );
    parse(&text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_matches_oracle_on_random_commuting_modules(
        p in prop_oneof![Just(2u64), Just(3u64)],
        a in proptest::array::uniform4(0i64..3),
        c in proptest::array::uniform4(0i64..3),
    ) {
        let fx = commuting_pair(p, a, c);
        for (m, n) in pairs(&fx) {
            let r = ext1(m, n).unwrap();
            prop_assert_eq!(r.dim_ext1, ext1_bruteforce(m, n).unwrap());
            prop_assert_eq!(r.dim_inner + r.dim_hom, m.dim() * n.dim());
        }
    }
}
