//! Heights of projective points over ℚ and number fields, plus the
//! representation height and the assembled height vector.

mod local;

pub use local::{fundamental_discriminant, quadratic_places, FinitePlace, PlaceKind};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{complex_embeddings, smith_index, Arith, ExactMatrix, Field, FieldSpec, Scalar};

/// A point of projective space with integral coordinates in a
/// characteristic-zero field.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    field: Field,
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    /// Clears denominators if needed; heights are invariant under scaling.
    pub fn new(field: &Field, coords: Vec<Scalar>) -> Result<Self> {
        if field.characteristic() != 0 {
            return Err(Error::NoEmbeddings(field.characteristic()));
        }
        if coords.is_empty() || coords.iter().all(|c| field.is_zero(c)) {
            return Err(Error::DegenerateInput("all projective coordinates are zero".into()));
        }
        for c in &coords {
            field.check(c)?;
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(&field.denominator(c)));
        let scale = field.from_bigint(&den);
        let coords = coords.iter().map(|c| field.mul(c, &scale)).collect();
        Ok(ProjectivePoint { field: field.clone(), coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        let q = FieldSpec::rationals();
        let c = coords.iter().map(|&x| q.from_i64(x)).collect();
        Self::new(&q, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// The same point read in a larger field.
    pub fn lift(&self, emb: &crate::exactfield::FieldEmbedding) -> Result<Self> {
        self.field.ensure_same(emb.source())?;
        Self::new(emb.target(), self.coords.iter().map(|c| emb.map(c)).collect())
    }
}

/// Index of the ideal generated by integral elements, as a sublattice of
/// `ℤ[θ]` spanned by all `a·θʲ`.
pub fn ideal_norm(field: &FieldSpec, gens: &[Scalar]) -> Result<BigInt> {
    let n = field.degree();
    let theta = field.theta();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !field.is_zero(g)) {
        let mut x = g.clone();
        for _ in 0..n {
            let coords = field
                .integer_coords(&x)
                .ok_or_else(|| Error::DegenerateInput("ideal generator is not integral".into()))?;
            rows.push(coords);
            x = field.mul(&x, &theta);
        }
    }
    if rows.is_empty() {
        return Err(Error::DegenerateInput("zero ideal".into()));
    }
    let cols: Vec<Vec<BigInt>> = (0..n).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
    smith_index(&cols)
}

/// Relative height `H_K(p) = ∏_σ max_i |σ(p_i)| / N(I)` over all complex
/// embeddings, where `I` is the coordinate ideal. Over ℚ this is
/// `max |p_i| / gcd(p_i)`.
pub fn weil_height(p: &ProjectivePoint) -> Result<f64> {
    let f = &p.field;
    if f.degree() == 1 {
        let ints: Vec<BigInt> = p.coords.iter().map(|c| f.integer_coords(c).unwrap().remove(0)).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let max = ints.iter().map(|x| x.abs()).max().unwrap();
        return Ok(BigRational::new(max, g).to_f64().unwrap_or(f64::INFINITY));
    }
    let mut archimedean = 1.0;
    for sigma in complex_embeddings(f)? {
        archimedean *= p.coords.iter().map(|c| sigma.eval(c).norm()).fold(0.0, f64::max);
    }
    let norm = ideal_norm(f, &p.coords)?;
    Ok(archimedean / norm.to_f64().unwrap_or(f64::INFINITY))
}

/// Absolute height `H = H_K^{1/[K:ℚ]}` and its logarithm.
pub fn absolute_and_log(p: &ProjectivePoint) -> Result<(f64, f64)> {
    let h = weil_height(p)?.powf(1.0 / p.field.degree() as f64);
    Ok((h, h.ln()))
}

/// Absolute heights of the images of the underlying central points.
pub fn central_height(points: &[ProjectivePoint]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("no central points".into()));
    }
    points.iter().map(|p| absolute_and_log(p).map(|(h, _)| h)).collect()
}

/// `−Σ_v n_v · min_i det(v(M_i))` over the places of ℚ or a quadratic
/// field, with `v` applied entrywise. Zero entries are given valuation 0 so
/// that only places dividing some entry contribute. Archimedean places use
/// `−log|σ(·)|` and are included only on request.
pub fn representation_height(field: &Field, matrices: &[ExactMatrix], include_archimedean: bool) -> Result<f64> {
    if field.characteristic() != 0 {
        return Err(Error::NoEmbeddings(field.characteristic()));
    }
    if field.degree() > 2 {
        return Err(Error::Unsupported(format!("representation height over a degree-{} field", field.degree())));
    }
    if matrices.is_empty() {
        return Err(Error::DegenerateInput("no matrices".into()));
    }
    for m in matrices {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
        }
        m.field().ensure_same(field)?;
    }
    let entries: Vec<Scalar> = matrices
        .iter()
        .flat_map(|m| m.entries().iter().cloned())
        .filter(|e| !field.is_zero(e))
        .collect();
    let q = FieldSpec::rationals();
    let mut total = 0.0;
    for place in local::finite_places(field, &entries)? {
        let mut least: Option<BigRational> = None;
        for m in matrices {
            let vals = m
                .entries()
                .iter()
                .map(|e| {
                    let v = if field.is_zero(e) { 0 } else { place.valuation(field, e)? };
                    Ok(q.from_i64(v))
                })
                .collect::<Result<Vec<_>>>()?;
            let det = ExactMatrix::from_entries(&q, m.rows(), m.cols(), vals)?.det()?;
            let det = det.rational_coords().unwrap()[0].clone();
            least = Some(match least {
                Some(l) if l <= det => l,
                _ => det,
            });
        }
        total -= place.local_degree as f64 * least.unwrap().to_f64().unwrap_or(f64::NAN);
    }
    if include_archimedean {
        for (sigma, n_v) in local::archimedean_places(field)? {
            let mut least = f64::INFINITY;
            for m in matrices {
                let k = m.rows();
                let vals: Vec<f64> = m
                    .entries()
                    .iter()
                    .map(|e| if field.is_zero(e) { 0.0 } else { -sigma.eval(e).norm().ln() })
                    .collect();
                least = least.min(det_f64(vals, k));
            }
            total -= n_v as f64 * least;
        }
    }
    Ok(total)
}

fn det_f64(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).unwrap();
        if a[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for i in col + 1..n {
            let factor = a[i * n + col] / d;
            for j in col..n {
                a[i * n + j] -= factor * a[col * n + j];
            }
        }
    }
    det
}

/// `(central heights, representation height, non-commutative height)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightVector {
    pub central: Vec<f64>,
    pub representation: f64,
    pub noncommutative: f64,
}

pub fn total_height(central: Vec<f64>, representation: f64, noncommutative: f64) -> Result<HeightVector> {
    if central.is_empty() {
        return Err(Error::DegenerateInput("central height vector is empty".into()));
    }
    if central.iter().chain([&representation, &noncommutative]).any(|x| !x.is_finite()) {
        return Err(Error::DegenerateInput("height entries must be finite".into()));
    }
    if central.iter().any(|&h| h < 1.0 - 1e-12) {
        return Err(Error::DegenerateInput("central heights are at least 1".into()));
    }
    Ok(HeightVector { central, representation, noncommutative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_field, parse_scalar};

    fn point(field: &str, coords: &[&str]) -> ProjectivePoint {
        let f = parse_field(field).unwrap();
        let c = coords.iter().map(|s| parse_scalar(&f, s, &["t"]).unwrap()).collect();
        ProjectivePoint::new(&f, c).unwrap()
    }

    #[test]
    fn rational_points() {
        assert_eq!(weil_height(&ProjectivePoint::from_i64(&[4, 6, 2]).unwrap()).unwrap(), 3.0);
        assert_eq!(weil_height(&ProjectivePoint::from_i64(&[1, 1, 1, 1]).unwrap()).unwrap(), 1.0);
        let (h, l) = absolute_and_log(&ProjectivePoint::from_i64(&[2, 1]).unwrap()).unwrap();
        assert_eq!(h, 2.0);
        assert!((l - 2f64.ln()).abs() < 1e-12);
        assert!(ProjectivePoint::from_i64(&[0, 0]).is_err());
    }

    #[test]
    fn denominators_are_cleared() {
        let p = point("Q", &["1/2", "3/4"]);
        assert_eq!(weil_height(&p).unwrap(), 3.0);
    }

    #[test]
    fn sqrt2_point() {
        let p = point("Qext x^2-2", &["t", "1"]);
        assert!((weil_height(&p).unwrap() - 2.0).abs() < 1e-9);
        let (h, l) = absolute_and_log(&p).unwrap();
        assert!((h - 2f64.sqrt()).abs() < 1e-9);
        assert!((l - 0.5 * 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn non_unit_coordinate_ideal() {
        // (√2 : 2) generates (√2), of norm 2: both embeddings give max 2.
        let p = point("Qext x^2-2", &["t", "2"]);
        assert!((weil_height(&p).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn representation_height_examples() {
        let q = FieldSpec::rationals();
        let m = |v: i64| ExactMatrix::from_i64_rows(&q, &[vec![v]]).unwrap();
        assert_eq!(representation_height(&q, &[m(2)], false).unwrap(), -1.0);
        assert_eq!(representation_height(&q, &[m(2), m(3)], false).unwrap(), 0.0);
        let id = ExactMatrix::identity(&q, 3);
        assert_eq!(representation_height(&q, &[id.clone(), id], false).unwrap(), 0.0);
        // Archimedean term for (2): −log 2.
        let h = representation_height(&q, &[m(2)], true).unwrap();
        assert!((h - (-1.0 + 2f64.ln())).abs() < 1e-12);
        let cubic = parse_field("Qext x^3-2").unwrap();
        assert!(matches!(
            representation_height(&cubic, &[ExactMatrix::identity(&cubic, 1)], false),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn total_vector() {
        let v = total_height(vec![4.0], -1.0, 4.0).unwrap();
        assert_eq!(v, HeightVector { central: vec![4.0], representation: -1.0, noncommutative: 4.0 });
        assert!(total_height(vec![], 0.0, 0.0).is_err());
    }
}
