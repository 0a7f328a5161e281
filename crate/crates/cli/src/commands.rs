use std::path::Path;

use anyhow::{bail, Context, Result};
use ncspace_core::exactfield::{Field, FieldSpec, IntPolynomial, Scalar};
use ncspace_core::extcalc::ext1;
use ncspace_core::heights::{
    absolute_and_log, central_height, representation_height, total_height, weil_height, ProjectivePoint,
};
use ncspace_core::intersect::{intersection_number, quotient_dimension, CentralDivisor, PolyRing, QuotientDimension};
use ncspace_core::presentation::{
    parse_field, parse_scalar, parse_source, print_field, print_matrix, print_polynomial, SourceFile,
};
use ncspace_core::repmod::{classify_family, validate, Representation};
use ncspace_core::tangent::{export_dot, hull_skeleton, nc_height, tangent_graph, NcHeightMode};
use serde_json::{json, Value};

use crate::report::{real, Report};

/// Name used for the field generator in coordinates and scalars.
pub const THETA_ALIAS: &str = "t";

#[derive(Debug, thiserror::Error)]
#[error("unknown module `{0}`")]
pub struct UnknownModule(pub String);

pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, exit: 0 }
    }
}

pub struct Source {
    pub bytes: Vec<u8>,
    pub file: SourceFile,
}

pub fn load(path: &Path) -> Result<Source> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).context("source is not UTF-8")?;
    let file = parse_source(&text)?;
    Ok(Source { bytes, file })
}

fn family(src: &Source, names: &[String]) -> Result<Vec<Representation>> {
    names
        .iter()
        .map(|n| {
            let c = src.file.module(n).ok_or_else(|| UnknownModule(n.clone()))?;
            Ok(Representation::new(&src.file.algebra, c)?)
        })
        .collect()
}

fn big(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

pub fn validate_cmd(path: &Path) -> Result<Outcome> {
    let src = load(path)?;
    let alg = &src.file.algebra;
    let mut all_valid = true;
    let modules: Vec<Value> = src
        .file
        .modules
        .iter()
        .map(|c| {
            let (valid, violations) = match validate(alg, c) {
                Ok(v) => (
                    v.is_empty(),
                    v.iter().map(|x| json!({"index": x.index, "relation": x.relation})).collect::<Vec<_>>(),
                ),
                Err(e) => (false, vec![json!({"error": e.to_string()})]),
            };
            all_valid &= valid;
            json!({"name": c.name, "dim": c.dim, "valid": valid, "violations": violations})
        })
        .collect();
    let result = json!({
        "algebra": {
            "name": alg.name,
            "field": print_field(&alg.field),
            "generators": alg.generators,
            "central": alg.central,
            "relations": alg.relations.iter().map(|r| print_polynomial(alg, r)).collect::<Vec<_>>(),
        },
        "modules": modules,
        "valid": all_valid,
    });
    let report = Report::new("validate", &src.bytes, result);
    Ok(Outcome { report, exit: if all_valid { 0 } else { 3 } })
}

pub fn ext_cmd(path: &Path, m: &str, n: &str) -> Result<Outcome> {
    let src = load(path)?;
    let fam = family(&src, &[m.to_string(), n.to_string()])?;
    let r = ext1(&fam[0], &fam[1])?;
    let f = fam[0].field();
    let alg = &src.file.algebra;
    let basis: Vec<Value> = r
        .cocycle_basis
        .iter()
        .map(|d| {
            let mut obj = serde_json::Map::new();
            for (g, c) in alg.generators.iter().zip(&d.components) {
                obj.insert(g.clone(), json!(print_matrix(f, c)));
            }
            Value::Object(obj)
        })
        .collect();
    let result = json!({
        "modules": [m, n],
        "field": print_field(f),
        "dim_hom": r.dim_hom,
        "dim_der": r.dim_der,
        "dim_inner": r.dim_inner,
        "dim_ext1": r.dim_ext1,
        "cocycle_basis": basis,
    });
    Ok(Report::new("ext", &src.bytes, result).convention("ext1", "derivations modulo inner derivations").into())
}

/// Spectral radius of an integer adjacency; a characteristic-p family is
/// read over ℚ since the adjacency does not depend on the field.
fn height_of(g: &ncspace_core::tangent::TangentGraph, field: &Field, mode: NcHeightMode) -> Result<(f64, &'static str)> {
    if field.characteristic() == 0 {
        Ok((nc_height(g, field, mode)?, "base field"))
    } else {
        Ok((nc_height(g, &FieldSpec::rationals(), mode)?, "Q (characteristic-p family)"))
    }
}

pub fn graph_cmd(path: &Path, modules: &[String], dot: Option<&Path>, mode: NcHeightMode) -> Result<Outcome> {
    let src = load(path)?;
    let fam = family(&src, modules)?;
    let g = tangent_graph(&fam)?;
    let (h, read_over) = height_of(&g, fam[0].field(), mode)?;
    if let Some(p) = dot {
        std::fs::write(p, export_dot(&g)).with_context(|| format!("writing {}", p.display()))?;
    }
    let eig: Vec<Value> = g.eigenvalues()?.iter().map(|z| json!({"re": real(z.re), "im": real(z.im)})).collect();
    let result = json!({
        "vertices": g.vertices,
        "ext0": g.ext0,
        "ext1": g.ext1,
        "char_poly": poly_json(&g.char_poly()?),
        "eigenvalues": eig,
        "nc_height": real(h),
        "hull_skeleton": hull_skeleton(&g).render(),
    });
    Ok(Report::new("graph", &src.bytes, result)
        .convention("nc_height_mode", mode.as_str())
        .convention("spectrum_over", read_over)
        .convention("char_poly", "integer coefficients, constant term first")
        .into())
}

fn parse_point(field: &Field, text: &str) -> Result<ProjectivePoint> {
    let coords = text
        .split(',')
        .map(|s| parse_scalar(field, s.trim(), &[THETA_ALIAS]))
        .collect::<ncspace_core::Result<Vec<Scalar>>>()?;
    Ok(ProjectivePoint::new(field, coords)?)
}

fn args_digest(parts: &[&str]) -> Vec<u8> {
    parts.join("\n").into_bytes()
}

pub fn height_weil_cmd(field: &str, coords: &str) -> Result<Outcome> {
    let f = parse_field(field)?;
    let p = parse_point(&f, coords)?;
    let rel = weil_height(&p)?;
    let (abs, log) = absolute_and_log(&p)?;
    let result = json!({
        "field": print_field(&f),
        "degree": f.degree(),
        "relative": real(rel),
        "absolute": real(abs),
        "log": real(log),
    });
    Ok(Report::new("height weil", &args_digest(&[field, coords]), result)
        .convention("theta_alias", THETA_ALIAS)
        .into())
}

pub fn height_central_cmd(field: &str, points: &[String]) -> Result<Outcome> {
    let f = parse_field(field)?;
    let pts = points.iter().map(|p| parse_point(&f, p)).collect::<Result<Vec<_>>>()?;
    let hs = central_height(&pts)?;
    let mut digest_parts = vec![field];
    digest_parts.extend(points.iter().map(String::as_str));
    let result = json!({"field": print_field(&f), "central": hs.into_iter().map(real).collect::<Vec<_>>()});
    Ok(Report::new("height central", &args_digest(&digest_parts), result)
        .convention("theta_alias", THETA_ALIAS)
        .into())
}

fn rep_conventions(r: Report, archimedean: bool) -> Report {
    r.convention("zero_entry_valuation", "v(0) = 0")
        .convention("min_over", "all generator matrices")
        .convention("archimedean_places", archimedean)
}

pub fn height_rep_cmd(path: &Path, module: &str, archimedean: bool) -> Result<Outcome> {
    let src = load(path)?;
    let fam = family(&src, &[module.to_string()])?;
    let h = representation_height(fam[0].field(), fam[0].matrices(), archimedean)?;
    let result = json!({"module": module, "representation": real(h)});
    Ok(rep_conventions(Report::new("height rep", &src.bytes, result), archimedean).into())
}

pub fn height_total_cmd(
    path: &Path,
    modules: &[String],
    points: &[String],
    mode: NcHeightMode,
    archimedean: bool,
) -> Result<Outcome> {
    let src = load(path)?;
    let fam = family(&src, modules)?;
    let field = fam[0].field();
    let pts = points.iter().map(|p| parse_point(field, p)).collect::<Result<Vec<_>>>()?;
    let central = central_height(&pts)?;
    let rep = representation_height(field, fam[0].matrices(), archimedean)?;
    let g = tangent_graph(&fam)?;
    let (nc, read_over) = height_of(&g, field, mode)?;
    let v = total_height(central, rep, nc)?;
    let result = json!({
        "modules": modules,
        "central": v.central.into_iter().map(real).collect::<Vec<_>>(),
        "representation": real(v.representation),
        "noncommutative": real(v.noncommutative),
    });
    Ok(rep_conventions(Report::new("height total", &src.bytes, result), archimedean)
        .convention("nc_height_mode", mode.as_str())
        .convention("spectrum_over", read_over)
        .convention("representation_of", "first listed module")
        .convention("theta_alias", THETA_ALIAS)
        .into())
}

pub fn classify_cmd(path: &Path, modules: &[String], central: Option<&[String]>) -> Result<Outcome> {
    let src = load(path)?;
    let fam = family(&src, modules)?;
    let alg = &src.file.algebra;
    let names: Vec<String> = match central {
        Some(c) => c.to_vec(),
        None => alg.central_elements.iter().map(|(n, _)| n.clone()).chain(alg.central.iter().cloned()).collect(),
    };
    let rep = classify_family(&fam, &names)?;
    let f = fam[0].field();
    let fibres: Vec<Value> = rep
        .fibres
        .iter()
        .map(|fb| {
            let mut ch = serde_json::Map::new();
            for (n, p) in &fb.character.values {
                ch.insert(n.clone(), json!(p.iter().map(|c| f.format(c)).collect::<Vec<_>>()));
            }
            json!({
                "members": fb.members.iter().map(|&i| modules[i].clone()).collect::<Vec<_>>(),
                "character": Value::Object(ch),
                "non_isomorphic": fb.non_isomorphic,
                "flag": fb.flag.as_str(),
            })
        })
        .collect();
    let result = json!({
        "modules": modules,
        "central_elements": names,
        "fibres": fibres,
        "ext1": rep.ext1,
        "muller_consistent": rep.muller_consistent,
    });
    let mut report = Report::new("classify", &src.bytes, result)
        .convention("character", "minimal polynomial of each central element, constant term first");
    if names.is_empty() {
        report = report.convention("no_central_elements", "the whole family is one fibre");
    }
    Ok(report.into())
}

pub fn intersect_cmd(
    path: &Path,
    vars: Option<&[String]>,
    relations: &[String],
    divisors: &[String],
    rank: usize,
) -> Result<Outcome> {
    let src = load(path)?;
    let alg = &src.file.algebra;
    let var_names: Vec<String> = match vars {
        Some(v) => v.to_vec(),
        None => alg.central_elements.iter().map(|(n, _)| n.clone()).collect(),
    };
    let refs: Vec<&str> = var_names.iter().map(String::as_str).collect();
    let ring = PolyRing::new(&alg.field, &refs)?;
    if divisors.len() != 2 {
        bail!(ncspace_core::Error::DegenerateInput(format!("expected 2 divisors, got {}", divisors.len())));
    }
    let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
    let mut divs = Vec::new();
    for d in divisors {
        let (label, gens) = d.split_once('=').unwrap_or(("", d.as_str()));
        let gens: Vec<&str> = gens.split(',').map(str::trim).collect();
        divs.push(CentralDivisor::parse(&ring, label.trim(), &gens, &rels)?);
    }
    let n = intersection_number(&ring, &divs[0], &divs[1], rank)?;
    let sum: Vec<_> = divs[0].ideal.iter().chain(&divs[1].ideal).cloned().collect();
    let gb = ring.buchberger(&sum)?;
    let qdim = match quotient_dimension(&ring, &gb)? {
        QuotientDimension::Finite(k) => k,
        QuotientDimension::Infinite => unreachable!("intersection_number rejects infinite quotients"),
    };
    let result = json!({
        "variables": var_names,
        "centre_relations": relations,
        "divisors": divs.iter().map(|d| json!({
            "label": d.label,
            "ideal": d.ideal.iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "groebner_basis": gb.iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
        "quotient_dimension": qdim,
        "rank": rank,
        "intersection_number": n,
    });
    Ok(Report::new("intersect", &src.bytes, result)
        .convention("intersection", "ideal-sum")
        .convention("monomial_order", "degrevlex")
        .into())
}
