//! Complex embeddings of number fields and embeddings between fields of the
//! supported tower.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::arith::{self, rational_to_f64, Arith, QArith};
use super::field::{Field, FieldSpec, Scalar};
use super::intpoly::{poly_roots_complex, IntPolynomial};
use crate::error::{Error, Result};

/// An embedding `σ: K → ℂ`, determined by the image of θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEmbedding {
    pub theta: Complex64,
}

impl ComplexEmbedding {
    pub fn eval(&self, a: &Scalar) -> Complex64 {
        let Scalar::Rational(c) = a else {
            panic!("complex embedding applied to a positive-characteristic element");
        };
        c.iter()
            .rev()
            .fold(Complex64::zero(), |acc, x| acc * self.theta + rational_to_f64(x))
    }

    pub fn is_real(&self) -> bool {
        self.theta.im == 0.0
    }
}

/// All `[K:ℚ]` embeddings of a characteristic-zero field, sorted by the
/// image of θ (real part, then imaginary part).
pub fn complex_embeddings(field: &FieldSpec) -> Result<Vec<ComplexEmbedding>> {
    if field.characteristic() != 0 {
        return Err(Error::NoEmbeddings(field.characteristic()));
    }
    match field.extension() {
        None => Ok(vec![ComplexEmbedding { theta: Complex64::zero() }]),
        Some(poly) => {
            let roots = poly_roots_complex(&IntPolynomial::new(poly.to_vec()), 1e-12)?;
            Ok(roots.into_iter().map(|theta| ComplexEmbedding { theta }).collect())
        }
    }
}

/// Roots in a characteristic-zero field of a rational polynomial.
///
/// For every compatible assignment of complex roots of `poly` to the
/// embeddings of the field, the power-basis coordinates are recovered from
/// the Vandermonde system, rounded to nearby rationals, and kept only if the
/// candidate is an exact root.
pub(crate) fn number_field_roots(field: &FieldSpec, poly: &[BigInt]) -> Result<Vec<Scalar>> {
    let g = IntPolynomial::new(poly.to_vec());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let g_roots = poly_roots_complex(&g, 1e-10)?;
    let mut distinct: Vec<Complex64> = Vec::new();
    for r in g_roots {
        if !distinct.iter().any(|d| (d - r).norm() < 1e-8) {
            distinct.push(r);
        }
    }
    let embeddings = complex_embeddings(field)?;
    let n = embeddings.len();
    let coeffs: Vec<Scalar> = poly.iter().map(|c| field.from_bigint(c)).collect();

    let mut found: Vec<Scalar> = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let values: Vec<Complex64> = choice.iter().map(|&i| distinct[i]).collect();
        if let Some(coords) = solve_vandermonde(&embeddings, &values) {
            if let Some(q) = coords
                .iter()
                .map(|c| if c.im.abs() < 1e-6 { nearest_rational(c.re, 100_000) } else { None })
                .collect::<Option<Vec<_>>>()
            {
                let cand = Scalar::Rational(q);
                if field.check(&cand).is_ok()
                    && field.is_zero(&arith::eval(field, &coeffs, &cand))
                    && !found.contains(&cand)
                {
                    found.push(cand);
                }
            }
        }
        // next assignment
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < distinct.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    found.sort();
    Ok(found)
}

fn solve_vandermonde(emb: &[ComplexEmbedding], values: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = emb.len();
    let mut a: Vec<Vec<Complex64>> = emb
        .iter()
        .zip(values)
        .map(|(e, v)| {
            let mut row: Vec<Complex64> = (0..n).map(|i| e.theta.powu(i as u32)).collect();
            row.push(*v);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for r in 0..n {
            if r != col {
                let f = a[r][col] * inv;
                for c in col..=n {
                    let v = a[col][c] * f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

/// Best rational approximation with denominator at most `max_den`, accepted
/// only if it reproduces `x` to within 1e-7.
fn nearest_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    ((approx - x).abs() < 1e-7).then(|| BigRational::new(p1.into(), q1.into()))
}

/// Searches for a monic integer factor of `poly` whose degree is flagged in
/// `degrees`, using products of subsets of its complex roots.
pub(crate) fn find_integer_factor(poly: &[BigInt], degrees: &[bool]) -> Option<IntPolynomial> {
    let f = IntPolynomial::new(poly.to_vec());
    let n = f.degree()?;
    let roots = poly_roots_complex(&f, 1e-9).ok()?;
    for (d, _) in degrees.iter().enumerate().filter(|(d, open)| **open && *d >= 1 && *d < n) {
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            let mut prod = vec![Complex64::one()];
            for &i in &subset {
                let mut next = vec![Complex64::zero(); prod.len() + 1];
                for (k, c) in prod.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * roots[i];
                }
                prod = next;
            }
            let rounded: Option<Vec<BigInt>> = prod
                .iter()
                .map(|c| {
                    let r = c.re.round();
                    ((c.re - r).abs() < 1e-6 && c.im.abs() < 1e-6).then(|| BigInt::from(r as i64))
                })
                .collect();
            if let Some(cand) = rounded {
                let ar = QArith;
                let to_q = |v: &[BigInt]| v.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>();
                let (_, r) = arith::divrem(&ar, &to_q(poly), &to_q(&cand));
                if r.is_empty() {
                    return Some(IntPolynomial::new(cand));
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    None
}

/// A field homomorphism `source → target`, fixed by the image of the
/// source generator θ.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    source: Field,
    target: Field,
    theta_image: Scalar,
}

impl FieldEmbedding {
    /// Picks the canonical root of the source's defining polynomial in the
    /// target (see [`FieldSpec::roots_of`]).
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.characteristic() != target.characteristic() {
            return Err(Error::FieldMismatch(format!(
                "cannot embed characteristic {} into characteristic {}",
                source.characteristic(),
                target.characteristic()
            )));
        }
        let theta_image = match source.extension() {
            None => target.zero(),
            Some(poly) => target
                .roots_of(poly)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::FieldMismatch(format!("{} does not embed into {}", source, target)))?,
        };
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), theta_image })
    }

    pub fn with_theta_image(source: &Field, target: &Field, theta_image: Scalar) -> Result<Self> {
        target.check(&theta_image)?;
        if let Some(poly) = source.extension() {
            let coeffs: Vec<Scalar> = poly.iter().map(|c| target.from_bigint(c)).collect();
            if !target.is_zero(&arith::eval(target.as_ref(), &coeffs, &theta_image)) {
                return Err(Error::FieldMismatch("image of θ is not a root of its minimal polynomial".into()));
            }
        }
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), theta_image })
    }

    pub fn identity(field: &Field) -> Self {
        FieldEmbedding { source: field.clone(), target: field.clone(), theta_image: field.theta() }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: &Scalar) -> Scalar {
        let t = &self.target;
        let coords: Vec<Scalar> = match a {
            Scalar::Rational(c) => c
                .iter()
                .map(|x| t.from_rational(x).expect("characteristic zero"))
                .collect(),
            Scalar::Modular(c) => c.iter().map(|x| t.from_bigint(&BigInt::from(*x))).collect(),
        };
        if self.source.degree() == 1 {
            return coords.into_iter().next().unwrap();
        }
        arith::eval(t.as_ref(), &coords, &self.theta_image)
    }

    /// Carries the source's constant bindings over to the target, keeping
    /// their images (not the target's canonical roots).
    pub fn target_with_bindings(&self) -> Result<Field> {
        let mut spec: FieldSpec = (*self.target).clone();
        for b in self.source.bindings() {
            spec = spec.with_bound_value(&b.name, b.poly.clone(), self.map(&b.value))?;
        }
        Ok(std::sync::Arc::new(spec))
    }
}

impl FieldSpec {
    /// Binds `name` to an explicit root of `poly`.
    pub fn with_bound_value(&self, name: &str, poly: Vec<BigInt>, value: Scalar) -> Result<FieldSpec> {
        self.check(&value)?;
        let coeffs: Vec<Scalar> = poly.iter().map(|c| self.from_bigint(c)).collect();
        if !self.is_zero(&arith::eval(self, &coeffs, &value)) {
            return Err(Error::ConstantUnresolvable(name.to_string()));
        }
        Ok(self.replace_binding(name, poly, value))
    }
}

/// Advances `subset` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let d = subset.len();
    for i in (0..d).rev() {
        if subset[i] < n - d + i {
            subset[i] += 1;
            for j in i + 1..d {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn embeddings_of_small_fields() {
        let q = FieldSpec::rationals();
        assert_eq!(complex_embeddings(&q).unwrap().len(), 1);

        let k = FieldSpec::number_field(ints(&[-2, 0, 1])).unwrap();
        let e = complex_embeddings(&k).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|x| x.is_real()));
        assert!((e[0].theta.re + std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((e[1].theta.re - std::f64::consts::SQRT_2).abs() < 1e-12);

        // Roots of x^2+x+1 by the quadratic formula: (-1 ± i√3)/2.
        let z = FieldSpec::number_field(ints(&[1, 1, 1])).unwrap();
        let e = complex_embeddings(&z).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((e[0].theta - Complex64::new(-0.5, -h)).norm() < 1e-12);
        assert!((e[1].theta - Complex64::new(-0.5, h)).norm() < 1e-12);

        assert_eq!(complex_embeddings(&FieldSpec::prime(5).unwrap()), Err(Error::NoEmbeddings(5)));
    }

    #[test]
    fn roots_in_quadratic_fields() {
        // x^2+x+1 in Q(√-3): roots (-1 ± θ)/2
        let k = FieldSpec::number_field(ints(&[3, 0, 1])).unwrap();
        let roots = k.roots_of(&ints(&[1, 1, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let v = k.add(&k.add(&k.mul(r, r), r), &k.one());
            assert!(k.is_zero(&v));
        }
        // x^2 - 3 has no root in Q(√2).
        let k2 = FieldSpec::number_field(ints(&[-2, 0, 1])).unwrap();
        assert!(k2.roots_of(&ints(&[-3, 0, 1])).unwrap().is_empty());
        // rational roots in Q
        let q = FieldSpec::rationals();
        assert_eq!(q.roots_of(&ints(&[-1, 0, 4])).unwrap().len(), 2);
    }

    #[test]
    fn embed_zeta3_field_into_quartic() {
        // Q(ζ3) → Q(ζ3 + √2), minimal polynomial x^4 + 2x^3 - x^2 - 2x + 7.
        let small = FieldSpec::number_field(ints(&[1, 1, 1])).unwrap();
        let big = FieldSpec::number_field(ints(&[7, -2, -1, 2, 1])).unwrap();
        let emb = FieldEmbedding::new(&small, &big).unwrap();
        let z = emb.map(&small.theta());
        assert!(big.is_one(&big.pow(&z, 3)));
        assert!(!big.is_one(&z));
        // Multiplicative.
        let a = small.add(&small.theta(), &small.from_i64(3));
        let b = small.sub(&small.from_i64(2), &small.theta());
        assert_eq!(emb.map(&small.mul(&a, &b)), big.mul(&emb.map(&a), &emb.map(&b)));
    }

    #[test]
    fn embed_finite_fields() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f4 = FieldSpec::finite_extension(2, ints(&[1, 1, 1])).unwrap();
        let e = FieldEmbedding::new(&f2, &f4).unwrap();
        assert_eq!(e.map(&f2.one()), f4.one());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(FieldEmbedding::new(&f3, &f4).is_err());
    }

    #[test]
    fn finds_factor_of_reducible_quartic() {
        let f = find_integer_factor(&ints(&[4, 0, 0, 0, 1]), &[false, true, true, false, false]);
        assert!(f.is_some());
        assert!(find_integer_factor(&ints(&[1, 0, 0, 0, 1]), &[false, true, true, false, false]).is_none());
    }
}
