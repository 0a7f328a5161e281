//! Tangent-space graphs of module families, their tangent-level hull
//! skeletons, and the non-commutative height read off the adjacency
//! spectrum.

use std::fmt::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{char_poly_i64, poly_roots_complex, FieldSpec, IntPolynomial};
use crate::extcalc::ext1;
use crate::repmod::Representation;

/// Residual bound passed to the root finder for adjacency spectra.
pub const EIGEN_TOL: f64 = 1e-12;

/// Directed graph on a family: `ext1[i][j]` arrows from `M_i` to `M_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentGraph {
    pub vertices: Vec<String>,
    pub ext0: Vec<Vec<usize>>,
    pub ext1: Vec<Vec<usize>>,
}

/// Computes all ordered-pair Ext⁰ and Ext¹ dimensions.
pub fn tangent_graph(family: &[Representation]) -> Result<TangentGraph> {
    if family.is_empty() {
        return Err(Error::DegenerateInput("empty family".into()));
    }
    for m in &family[1..] {
        m.field().ensure_same(family[0].field())?;
    }
    let n = family.len();
    let dims: Vec<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .map(|k| ext1(&family[k / n], &family[k % n]).map(|r| (r.dim_hom, r.dim_ext1)))
        .collect::<Result<_>>()?;
    let split = |pick: fn(&(usize, usize)) -> usize| -> Vec<Vec<usize>> {
        dims.chunks(n).map(|row| row.iter().map(pick).collect()).collect()
    };
    Ok(TangentGraph {
        vertices: family.iter().map(|m| m.label().to_string()).collect(),
        ext0: split(|d| d.0),
        ext1: split(|d| d.1),
    })
}

impl TangentGraph {
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.ext1
    }

    fn adjacency_i64(&self) -> Vec<Vec<i64>> {
        self.ext1.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn char_poly(&self) -> Result<IntPolynomial> {
        char_poly_i64(&self.adjacency_i64())
    }

    /// Adjacency eigenvalues with multiplicity, sorted by real part.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        poly_roots_complex(&self.char_poly()?, EIGEN_TOL)
    }

    /// Relabels by `perm`: vertex `i` of the result is vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> TangentGraph {
        let pick = |m: &[Vec<usize>]| -> Vec<Vec<usize>> {
            perm.iter().map(|&i| perm.iter().map(|&j| m[i][j]).collect()).collect()
        };
        TangentGraph {
            vertices: perm.iter().map(|&i| self.vertices[i].clone()).collect(),
            ext0: pick(&self.ext0),
            ext1: pick(&self.ext1),
        }
    }
}

/// Builds a graph directly from an adjacency matrix (no modules behind it).
pub fn graph_from_adjacency(ext1: Vec<Vec<usize>>) -> Result<TangentGraph> {
    let n = ext1.len();
    if ext1.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("adjacency must be square".into()));
    }
    Ok(TangentGraph {
        vertices: (1..=n).map(|i| format!("M{i}")).collect(),
        ext0: (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect(),
        ext1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NcHeightMode {
    /// Largest eigenvalue modulus.
    #[default]
    Single,
    /// Largest eigenvalue modulus raised to the number of complex embeddings.
    Product,
}

impl NcHeightMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NcHeightMode::Single => "single",
            NcHeightMode::Product => "product",
        }
    }
}

impl std::str::FromStr for NcHeightMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(NcHeightMode::Single),
            "product" => Ok(NcHeightMode::Product),
            _ => Err(Error::Unsupported(format!("height mode `{s}`"))),
        }
    }
}

/// Spectral radius of the adjacency, optionally raised to the field degree.
/// The field must have characteristic 0.
pub fn nc_height(g: &TangentGraph, field: &FieldSpec, mode: NcHeightMode) -> Result<f64> {
    if field.characteristic() != 0 {
        return Err(Error::NoEmbeddings(field.characteristic()));
    }
    let radius = g.eigenvalues()?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(match mode {
        NcHeightMode::Single => radius,
        NcHeightMode::Product => radius.powi(field.degree() as i32),
    })
}

/// Generator counts of the pro-representing hull, truncated at tangent
/// level: power-series variables on the diagonal, bimodule generators off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullSkeleton {
    pub counts: Vec<Vec<usize>>,
}

pub fn hull_skeleton(g: &TangentGraph) -> HullSkeleton {
    HullSkeleton { counts: g.ext1.clone() }
}

impl HullSkeleton {
    /// Text form of each entry, e.g. `k<<t11^1, t11^2>>` or `<t12^1>`.
    pub fn render(&self) -> Vec<Vec<String>> {
        let n = self.counts.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.counts[i][j];
                        let vars: Vec<String> = (1..=c)
                            .map(|k| if c == 1 { format!("t{}{}", i + 1, j + 1) } else { format!("t{}{}^{k}", i + 1, j + 1) })
                            .collect();
                        match (i == j, c) {
                            (true, 0) => "k".to_string(),
                            (true, _) => format!("k<<{}>>", vars.join(", ")),
                            (false, 0) => "0".to_string(),
                            (false, _) => format!("<{}>", vars.join(", ")),
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one labelled edge per nonzero `ext1[i][j]`, in row-major
/// order.
pub fn export_dot(g: &TangentGraph) -> String {
    let mut out = String::from("digraph tangent {\n");
    for v in &g.vertices {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for (i, row) in g.ext1.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m > 0 {
                writeln!(out, "  {} -> {} [label=\"{m}\"];", dot_id(&g.vertices[i]), dot_id(&g.vertices[j])).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_radius_examples() {
        let q = FieldSpec::rationals();
        let g = graph_from_adjacency(vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]).unwrap();
        assert!((nc_height(&g, &q, NcHeightMode::Single).unwrap() - 4.0).abs() < 1e-9);
        let z = graph_from_adjacency(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(nc_height(&z, &q, NcHeightMode::Single).unwrap(), 0.0);
        let f = FieldSpec::prime(7).unwrap();
        assert!(matches!(nc_height(&g, &f, NcHeightMode::Single), Err(Error::NoEmbeddings(7))));
    }

    #[test]
    fn product_mode_uses_the_degree() {
        let k = FieldSpec::number_field(vec![(-2).into(), 0.into(), 1.into()]).unwrap();
        let g = graph_from_adjacency(vec![vec![3]]).unwrap();
        assert!((nc_height(&g, &k, NcHeightMode::Product).unwrap() - 9.0).abs() < 1e-9);
        assert!((nc_height(&g, &k, NcHeightMode::Single).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn renders_and_dot() {
        let g = graph_from_adjacency(vec![vec![0]]).unwrap();
        assert_eq!(hull_skeleton(&g).render(), vec![vec!["k".to_string()]]);
        assert_eq!(export_dot(&g), "digraph tangent {\n  \"M1\";\n}\n");
        let g = graph_from_adjacency(vec![vec![2, 1], vec![0, 1]]).unwrap();
        let r = hull_skeleton(&g).render();
        assert_eq!(r[0][0], "k<<t11^1, t11^2>>");
        assert_eq!(r[0][1], "<t12>");
        assert_eq!(r[1][0], "0");
        assert_eq!(r[1][1], "k<<t22>>");
        assert_eq!(export_dot(&g).matches("->").count(), 3);
    }
}
