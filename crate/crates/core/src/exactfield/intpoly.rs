//! Integer polynomials, exact characteristic polynomials and a certified
//! complex root finder.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{self, Arith, QArith};
use super::field::format_int_poly;
use crate::error::{Error, Result};

/// Dense integer polynomial, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    /// Primitive integer multiple of a rational polynomial, positive lead.
    fn from_rational(p: &[BigRational]) -> Self {
        if p.is_empty() {
            return IntPolynomial::new(Vec::new());
        }
        let den = p.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        IntPolynomial::new(ints.into_iter().map(|c| &c / &g * &sign).collect())
    }

    /// Squarefree decomposition (Yun): `(factor, multiplicity)` pairs with
    /// primitive factors of positive degree.
    pub fn squarefree_factors(&self) -> Vec<(IntPolynomial, usize)> {
        let ar = QArith;
        let f = self.to_rational();
        if f.len() <= 1 {
            return Vec::new();
        }
        let df = arith::derivative(&ar, &f);
        let a0 = arith::gcd(&ar, &f, &df);
        let mut b = arith::divrem(&ar, &f, &a0).0;
        let mut c = arith::divrem(&ar, &df, &a0).0;
        let mut d = arith::sub(&ar, &c, &arith::derivative(&ar, &b));
        let mut out = Vec::new();
        let mut i = 1;
        while b.len() > 1 {
            let a = arith::gcd(&ar, &b, &d);
            if a.len() > 1 {
                out.push((IntPolynomial::from_rational(&a), i));
            }
            b = arith::divrem(&ar, &b, &a).0;
            c = arith::divrem(&ar, &d, &a).0;
            d = arith::sub(&ar, &c, &arith::derivative(&ar, &b));
            i += 1;
        }
        out
    }

    pub fn display_in(&self, var: &str) -> String {
        format_int_poly(&self.coeffs, var)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// Exact characteristic polynomial `det(λI − m)` of a square integer matrix.
///
/// The matrix is reduced to upper Hessenberg form by exact rational
/// similarity transforms; the polynomial then follows from the standard
/// three-term recurrence on leading principal blocks.
pub fn char_poly(m: &[Vec<BigInt>]) -> Result<IntPolynomial> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Shape("characteristic polynomial needs a square matrix".into()));
    }
    let ar = QArith;
    let mut h: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();

    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| !h[r][col].is_zero()) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = h[col + 1][col].recip();
        for r in col + 2..n {
            if h[r][col].is_zero() {
                continue;
            }
            let f = &h[r][col] * &inv;
            // row_r -= f·row_{col+1}, then col_{col+1} += f·col_r
            for c in 0..n {
                let v = &h[col + 1][c] * &f;
                h[r][c] -= v;
            }
            for row in h.iter_mut() {
                let v = &row[r] * &f;
                row[col + 1] += v;
            }
        }
    }

    // p[k] = char poly of the leading k×k block.
    let mut p: Vec<Vec<BigRational>> = vec![vec![ar.one()]];
    for k in 0..n {
        let lambda_minus = vec![-h[k][k].clone(), ar.one()];
        let mut next = arith::mul(&ar, &lambda_minus, &p[k]);
        let mut prod = ar.one();
        for i in (0..k).rev() {
            prod = &prod * &h[i + 1][i];
            let coeff = &prod * &h[i][k];
            if coeff.is_zero() {
                continue;
            }
            next = arith::sub(&ar, &next, &arith::scale(&ar, &p[i], &coeff));
        }
        p.push(next);
    }
    let last = p.pop().unwrap();
    debug_assert!(last.iter().all(|c| c.is_integer()));
    Ok(IntPolynomial::new(last.iter().map(|c| c.to_integer()).collect()))
}

/// Convenience wrapper for small integer matrices.
pub fn char_poly_i64(m: &[Vec<i64>]) -> Result<IntPolynomial> {
    char_poly(&m.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect::<Vec<_>>())
}

const ABERTH_MAX_ITERS: usize = 200;

/// All complex roots of `p` with multiplicity.
///
/// Each squarefree part is solved by Aberth simultaneous iteration started on
/// a circle of radius `1 + max|a_i/a_n|`, then Newton-polished. Every
/// returned root is certified by `|p(z)| < tol·(1 + ‖p‖₁)`. Roots are sorted
/// by real part, then imaginary part.
pub fn poly_roots_complex(p: &IntPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial".into()));
    }
    if tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateInput("tolerance must be positive".into()));
    }
    let mut roots = Vec::new();
    for (factor, mult) in p.squarefree_factors() {
        let rs = squarefree_roots(&factor)?;
        for r in rs {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    let bound = tol * (1.0 + p.norm1());
    for z in &roots {
        let res = p.eval_complex(*z).norm();
        if !(res < bound) {
            return Err(Error::NotConverged(format!("residual {res:e} at {z} exceeds {bound:e}")));
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn squarefree_roots(f: &IntPolynomial) -> Result<Vec<Complex64>> {
    let n = f.degree().unwrap_or(0);
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut pv = Complex64::new(monic[n], 0.0);
        let mut dv = Complex64::zero();
        for k in (0..n).rev() {
            dv = dv * z + pv;
            pv = pv * z + monic[k];
        }
        (pv, dv)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..ABERTH_MAX_ITERS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (pv, dv) = eval(z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..4 {
            let (pv, dv) = eval(*zk);
            if dv.norm() == 0.0 {
                break;
            }
            let step = pv / dv;
            if !step.is_finite() {
                break;
            }
            *zk -= step;
        }
        // Snap numerically real roots of real polynomials.
        if zk.im.abs() < 1e-14 * (1.0 + zk.re.abs()) {
            zk.im = 0.0;
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: det(λI − m) by Leibniz expansion with polynomial entries.
    fn leibniz_char_poly(m: &[Vec<i64>]) -> IntPolynomial {
        let n = m.len();
        let mut total: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut prod: Vec<BigInt> = vec![BigInt::one()];
            for (i, &j) in p.iter().enumerate() {
                let entry: Vec<BigInt> = if i == j {
                    vec![BigInt::from(-m[i][j]), BigInt::one()]
                } else {
                    vec![BigInt::from(-m[i][j])]
                };
                let mut next = vec![BigInt::zero(); prod.len() + entry.len() - 1];
                for (a, x) in prod.iter().enumerate() {
                    for (b, y) in entry.iter().enumerate() {
                        next[a + b] += x * y;
                    }
                }
                prod = next;
            }
            for (k, c) in prod.into_iter().enumerate() {
                if inversions % 2 == 0 {
                    total[k] += c;
                } else {
                    total[k] -= c;
                }
            }
        });
        IntPolynomial::new(total)
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn char_poly_examples() {
        let e = vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]];
        assert_eq!(char_poly_i64(&e).unwrap(), IntPolynomial::from_i64(&[-4, 9, -6, 1]));
        let c = vec![vec![1, 2, 1], vec![1, 1, 2], vec![2, 1, 1]];
        assert_eq!(char_poly_i64(&c).unwrap(), IntPolynomial::from_i64(&[-4, -3, -3, 1]));
        assert_eq!(char_poly_i64(&[vec![0, 0], vec![0, 0]]).unwrap(), IntPolynomial::from_i64(&[0, 0, 1]));
        assert!(matches!(char_poly_i64(&[vec![1, 2]]), Err(Error::Shape(_))));
    }

    #[test]
    fn char_poly_matches_leibniz_oracle() {
        let cases = vec![
            vec![vec![2, 2, 1], vec![1, 2, 2], vec![2, 1, 2]],
            vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0]],
            vec![vec![0, 0, 3], vec![0, 0, 0], vec![5, 0, 0]],
            vec![vec![1, 1, 1], vec![1, 1, 1], vec![0, 0, 1]],
        ];
        for m in cases {
            assert_eq!(char_poly_i64(&m).unwrap(), leibniz_char_poly(&m), "{m:?}");
        }
    }

    #[test]
    fn roots_with_multiplicity() {
        let p = IntPolynomial::from_i64(&[-4, 9, -6, 1]);
        let r = poly_roots_complex(&p, 1e-9).unwrap();
        let expect = [1.0, 1.0, 4.0];
        for (z, e) in r.iter().zip(expect) {
            assert!((z - Complex64::new(e, 0.0)).norm() < 1e-9, "{z}");
        }
    }

    #[test]
    fn surd_and_complex_roots() {
        let r = poly_roots_complex(&IntPolynomial::from_i64(&[-2, 0, 1]), 1e-12).unwrap();
        assert!((r[0].re + std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((r[1].re - std::f64::consts::SQRT_2).abs() < 1e-12);

        let p = IntPolynomial::from_i64(&[-5, 6, -6, 1]);
        let r = poly_roots_complex(&p, 1e-9).unwrap();
        let real: Vec<_> = r.iter().filter(|z| z.im == 0.0).collect();
        // Factors as (λ - 5)(λ² - λ + 1): the real root is exactly 5 and the
        // conjugate pair lies on the unit circle.
        assert_eq!(real.len(), 1);
        assert!((real[0].re - 5.0).abs() < 1e-9);
        assert_eq!(p.eval_int(&BigInt::from(5)), BigInt::zero());
        for z in r.iter().filter(|z| z.im != 0.0) {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
        for z in &r {
            assert!(p.eval_complex(*z).norm() < 1e-9 * (1.0 + p.norm1()));
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            poly_roots_complex(&IntPolynomial::new(vec![]), 1e-9),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn squarefree_decomposition() {
        // (x-1)^2 (x+2)
        let p = IntPolynomial::from_i64(&[2, -3, 0, 1]);
        let f = p.squarefree_factors();
        assert_eq!(f, vec![(IntPolynomial::from_i64(&[2, 1]), 1), (IntPolynomial::from_i64(&[-1, 1]), 2)]);
    }
}
