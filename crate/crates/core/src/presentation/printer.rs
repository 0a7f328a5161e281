//! Canonical printer emitting the `.ncs` grammar.

use std::fmt::Write;

use super::algebra::AlgebraPresentation;
use super::parser::ModuleCandidate;
use super::polynomial::{NcPolynomial, Word};
use crate::exactfield::field::format_int_poly;
use crate::exactfield::{Arith, ExactMatrix, FieldSpec};

pub fn print_field(f: &FieldSpec) -> String {
    let mut out = f.describe();
    for b in f.bindings() {
        write!(out, " bind {} root_of {}", b.name, format_int_poly(&b.poly, "x")).unwrap();
    }
    out
}

fn print_word(alg: &AlgebraPresentation, w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == g {
            run += 1;
        }
        let name = &alg.generators[g];
        parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
        i += run;
    }
    parts.join("*")
}

/// Terms in descending degree-lex order; `0` for the zero polynomial.
pub fn print_polynomial(alg: &AlgebraPresentation, p: &NcPolynomial) -> String {
    let f = &alg.field;
    let mut out = String::new();
    for (k, (w, c)) in p.terms().rev().enumerate() {
        let coeff = f.format(c);
        let term = if w.is_empty() {
            if coeff.contains(' ') {
                format!("({coeff})")
            } else {
                coeff
            }
        } else {
            let word = print_word(alg, w);
            if f.is_one(c) {
                word
            } else if f.is_one(&f.neg(c)) {
                format!("-{word}")
            } else if coeff.contains(' ') {
                format!("({coeff})*{word}")
            } else {
                format!("{coeff}*{word}")
            }
        };
        match (k, term.strip_prefix('-')) {
            (0, _) => out.push_str(&term),
            (_, Some(rest)) => write!(out, " - {rest}").unwrap(),
            (_, None) => write!(out, " + {term}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn print_matrix(f: &FieldSpec, m: &ExactMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m.row(i).iter().map(|e| f.format(e)).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn print_algebra(alg: &AlgebraPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "field {};", print_field(&alg.field)).unwrap();
    writeln!(out, "algebra {} {{", alg.name).unwrap();
    writeln!(out, "  gens {};", alg.generators.join(", ")).unwrap();
    if !alg.central.is_empty() {
        writeln!(out, "  central {};", alg.central.join(", ")).unwrap();
    }
    for r in &alg.relations {
        writeln!(out, "  rel {};", print_polynomial(alg, r)).unwrap();
    }
    for (n, p) in &alg.central_elements {
        writeln!(out, "  zelt {n} = {};", print_polynomial(alg, p)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn print_module(alg: &AlgebraPresentation, m: &ModuleCandidate) -> String {
    let mut out = String::new();
    writeln!(out, "module {} dim {} {{", m.name, m.dim).unwrap();
    for g in &alg.generators {
        if let Some(mat) = m.matrices.get(g) {
            writeln!(out, "  {g} = {};", print_matrix(&alg.field, mat)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn print_source(alg: &AlgebraPresentation, modules: &[ModuleCandidate]) -> String {
    let mut out = print_algebra(alg);
    for m in modules {
        out.push('\n');
        out.push_str(&print_module(alg, m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parser::parse_source;
    use proptest::prelude::*;

    const QUAD: &str = "
        field Fp 7;
        algebra A { gens x, tau; rel x^2 - 2; rel tau*x + x*tau; rel tau^2 - 1; }
        module M dim 2 { x = [[3, 0], [0, 4]]; tau = [[0, 1], [1, 0]]; }
    ";

    #[test]
    fn printed_form() {
        let src = parse_source(QUAD).unwrap();
        let text = print_source(&src.algebra, &src.modules);
        // Residues print in [0, p).
        assert!(text.contains("rel x^2 + 5;"), "{text}");
        assert!(text.contains("rel tau*x + x*tau;"), "{text}");
        assert!(text.contains("x = [[3, 0], [0, 4]];"), "{text}");
    }

    fn roundtrip(text: &str) {
        let a = parse_source(text).unwrap();
        let printed = print_source(&a.algebra, &a.modules);
        let b = parse_source(&printed).unwrap();
        assert_eq!(a.algebra, b.algebra, "{printed}");
        let strip = |ms: &[ModuleCandidate]| -> Vec<_> {
            ms.iter().map(|m| (m.name.clone(), m.dim, m.matrices.clone())).collect()
        };
        assert_eq!(strip(&a.modules), strip(&b.modules));
        assert_eq!(print_source(&b.algebra, &b.modules), printed);
    }

    #[test]
    fn fixed_roundtrips() {
        roundtrip(QUAD);
        roundtrip(
            "field Qext x^2+x+1 bind zeta3 root_of x^2+x+1;
             algebra A { gens x, y, s; central y;
               rel s*x - zeta3*x*s; rel (1/2 - theta)*x^3 + 5; zelt r = x^3; zelt t = x*y; }
             module M dim 1 { x = [[0]]; y = [[zeta3]]; s = [[1]]; }",
        );
        roundtrip("field Fpext 3 x^2+1; algebra B { gens a; rel theta*a^2 - 2*theta - 1; }");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_presentations_roundtrip(
            rels in proptest::collection::vec(
                proptest::collection::vec((-4i64..5, 0i64..3, proptest::collection::vec(0usize..3, 0..4)), 1..4),
                1..4),
            central_mask in 0u8..8,
        ) {
            let gens = ["a", "b", "c"];
            let central: Vec<&str> = (0..3).filter(|i| central_mask >> i & 1 == 1).map(|i| gens[i]).collect();
            let mut text = String::from("field Qext x^2-3; algebra R { gens a, b, c;");
            if !central.is_empty() {
                text.push_str(&format!(" central {};", central.join(", ")));
            }
            for r in &rels {
                let terms: Vec<String> = r
                    .iter()
                    .map(|(c, t, w)| {
                        let mut s = format!("({c} + {t}*theta)");
                        for g in w {
                            s.push('*');
                            s.push_str(gens[*g]);
                        }
                        s
                    })
                    .collect();
                text.push_str(&format!(" rel {};", terms.join(" + ")));
            }
            text.push('}');
            roundtrip(&text);
        }
    }
}
