use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{self, Arith, FpArith, QArith};
use super::embedding;
use crate::error::{Error, Result};

/// Largest extension degree accepted for `Qext`/`Fpext` fields.
pub const MAX_EXTENSION_DEGREE: usize = 6;

/// Finite fields up to this order can be enumerated element by element.
pub const MAX_ENUMERABLE_ORDER: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    NumberField,
    PrimeField,
    FiniteFieldExtension,
}

/// An exact field element: coordinates in the power basis `1, θ, …, θ^{n-1}`
/// over the prime field (or over ℚ).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(Vec<BigRational>),
    Modular(Vec<u64>),
}

impl Scalar {
    pub fn len(&self) -> usize {
        match self {
            Scalar::Rational(c) => c.len(),
            Scalar::Modular(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rational_coords(&self) -> Option<&[BigRational]> {
        match self {
            Scalar::Rational(c) => Some(c),
            Scalar::Modular(_) => None,
        }
    }

    pub fn modular_coords(&self) -> Option<&[u64]> {
        match self {
            Scalar::Modular(c) => Some(c),
            Scalar::Rational(_) => None,
        }
    }
}

/// A named constant bound to a root of an integer polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: String,
    /// Defining polynomial, constant term first.
    pub poly: Vec<BigInt>,
    pub value: Scalar,
}

#[derive(Debug, Clone)]
pub struct FieldSpec {
    kind: FieldKind,
    characteristic: u64,
    extension: Option<Vec<BigInt>>,
    bindings: Vec<Binding>,
    q_modulus: Vec<BigRational>,
    p_modulus: Vec<u64>,
}

pub type Field = Arc<FieldSpec>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Field {
        Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: 0,
            extension: None,
            bindings: Vec::new(),
            q_modulus: Vec::new(),
            p_modulus: Vec::new(),
        })
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Arc::new(FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: p,
            extension: None,
            bindings: Vec::new(),
            q_modulus: Vec::new(),
            p_modulus: Vec::new(),
        }))
    }

    /// ℚ(θ) with θ a root of the monic integer polynomial `poly`.
    pub fn number_field(poly: Vec<BigInt>) -> Result<Field> {
        let poly = check_extension_poly(poly)?;
        if !is_irreducible_over_q(&poly) {
            return Err(Error::InvalidField(format!(
                "{} is reducible over Q",
                format_int_poly(&poly, "x")
            )));
        }
        let q_modulus = poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Ok(Arc::new(FieldSpec {
            kind: FieldKind::NumberField,
            characteristic: 0,
            extension: Some(poly),
            bindings: Vec::new(),
            q_modulus,
            p_modulus: Vec::new(),
        }))
    }

    /// 𝔽_p(θ) with θ a root of `poly` reduced mod p.
    pub fn finite_extension(p: u64, poly: Vec<BigInt>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let ar = FpArith(p);
        let reduced: Vec<BigInt> = poly.iter().map(|c| BigInt::from(ar.reduce_big(c))).collect();
        let poly = check_extension_poly(reduced)?;
        let p_modulus: Vec<u64> = poly.iter().map(|c| ar.reduce_big(c)).collect();
        if !arith::is_irreducible_mod_p(&ar, &p_modulus) {
            return Err(Error::InvalidField(format!(
                "{} is reducible mod {p}",
                format_int_poly(&poly, "x")
            )));
        }
        Ok(Arc::new(FieldSpec {
            kind: FieldKind::FiniteFieldExtension,
            characteristic: p,
            extension: Some(poly),
            bindings: Vec::new(),
            q_modulus: Vec::new(),
            p_modulus,
        }))
    }

    /// Returns a copy of the field with `name` bound to the canonical root
    /// of `poly` (see [`FieldSpec::roots_of`]).
    pub fn with_binding(&self, name: &str, poly: Vec<BigInt>) -> Result<Field> {
        let roots = self.roots_of(&poly)?;
        let value = roots
            .into_iter()
            .next()
            .ok_or_else(|| Error::ConstantUnresolvable(name.to_string()))?;
        Ok(Arc::new(self.replace_binding(name, poly, value)))
    }

    pub(crate) fn replace_binding(&self, name: &str, poly: Vec<BigInt>, value: Scalar) -> FieldSpec {
        let mut spec = self.clone();
        spec.bindings.retain(|b| b.name != name);
        spec.bindings.push(Binding { name: name.to_string(), poly, value });
        spec
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn extension(&self) -> Option<&[BigInt]> {
        self.extension.as_deref()
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    pub fn constant(&self, name: &str) -> Option<&Scalar> {
        self.bindings.iter().find(|b| b.name == name).map(|b| &b.value)
    }

    /// Degree over the prime field (or over ℚ).
    pub fn degree(&self) -> usize {
        self.extension.as_ref().map_or(1, |e| e.len() - 1)
    }

    /// Number of elements, `None` in characteristic zero.
    pub fn order(&self) -> Option<u128> {
        if self.characteristic == 0 {
            None
        } else {
            (self.characteristic as u128).checked_pow(self.degree() as u32)
        }
    }

    /// Same underlying arithmetic (bindings are names only).
    pub fn same_arithmetic(&self, other: &FieldSpec) -> bool {
        self.characteristic == other.characteristic && self.extension == other.extension
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self.same_arithmetic(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.describe(), other.describe())))
        }
    }

    /// Human-readable description, e.g. `Fpext 2 x^2+x+1`.
    pub fn describe(&self) -> String {
        match self.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::PrimeField => format!("Fp {}", self.characteristic),
            FieldKind::NumberField => {
                format!("Qext {}", format_int_poly(self.extension.as_ref().unwrap(), "x"))
            }
            FieldKind::FiniteFieldExtension => format!(
                "Fpext {} {}",
                self.characteristic,
                format_int_poly(self.extension.as_ref().unwrap(), "x")
            ),
        }
    }

    /// Checks that `s` is a well-formed element of this field.
    pub fn check(&self, s: &Scalar) -> Result<()> {
        let ok = match s {
            Scalar::Rational(c) => self.characteristic == 0 && c.len() == self.degree(),
            Scalar::Modular(c) => {
                self.characteristic != 0
                    && c.len() == self.degree()
                    && c.iter().all(|x| *x < self.characteristic)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "element with {} coordinates does not belong to {}",
                s.len(),
                self.describe()
            )))
        }
    }

    pub fn theta(&self) -> Scalar {
        let n = self.degree();
        if n == 1 {
            return self.zero();
        }
        self.from_coords_i64(&(0..n).map(|i| i64::from(i == 1)).collect::<Vec<_>>())
    }

    fn from_coords_i64(&self, c: &[i64]) -> Scalar {
        if self.characteristic == 0 {
            Scalar::Rational(c.iter().map(|x| QArith.from_i64(*x)).collect())
        } else {
            let ar = FpArith(self.characteristic);
            Scalar::Modular(c.iter().map(|x| ar.from_i64(*x)).collect())
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let mut s = self.zero();
        match &mut s {
            Scalar::Rational(c) => c[0] = BigRational::from_integer(n.clone()),
            Scalar::Modular(c) => c[0] = FpArith(self.characteristic).reduce_big(n),
        }
        s
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        let inv = self.inv(&den).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&num, &inv))
    }

    /// Builds an element from rational coordinates in the power basis.
    pub fn from_rational_coords(&self, coords: &[BigRational]) -> Result<Scalar> {
        if coords.len() != self.degree() {
            return Err(Error::FieldMismatch(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        let theta = self.theta();
        let mut acc = self.zero();
        let mut power = self.one();
        for c in coords {
            acc = self.add(&acc, &self.mul(&self.from_rational(c)?, &power));
            power = self.mul(&power, &theta);
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Scalar, mut exp: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    /// Whether every coordinate is an integer (characteristic zero only).
    pub fn is_integral(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(c) => c.iter().all(|x| x.is_integer()),
            Scalar::Modular(_) => true,
        }
    }

    /// Integer coordinates of an integral element of a characteristic-zero field.
    pub fn integer_coords(&self, a: &Scalar) -> Option<Vec<BigInt>> {
        match a {
            Scalar::Rational(c) if c.iter().all(|x| x.is_integer()) => {
                Some(c.iter().map(|x| x.to_integer()).collect())
            }
            _ => None,
        }
    }

    /// Lowest common denominator of the coordinates (1 in positive characteristic).
    pub fn denominator(&self, a: &Scalar) -> BigInt {
        match a {
            Scalar::Rational(c) => c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())),
            Scalar::Modular(_) => BigInt::one(),
        }
    }

    /// All elements in a fixed order, for finite fields of enumerable size.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?;
        if q > MAX_ENUMERABLE_ORDER {
            return None;
        }
        let p = self.characteristic;
        let n = self.degree();
        Some(
            (0..q as u64)
                .map(|mut idx| {
                    let mut c = vec![0u64; n];
                    for slot in c.iter_mut() {
                        *slot = idx % p;
                        idx /= p;
                    }
                    Scalar::Modular(c)
                })
                .collect(),
        )
    }

    /// Roots of the rational polynomial `poly` lying in this field, in
    /// canonical order: θ first when it is a root, then by enumeration order
    /// (finite fields) or by coordinate order (characteristic zero).
    pub fn roots_of(&self, poly: &[BigInt]) -> Result<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = poly.iter().map(|c| self.from_bigint(c)).collect();
        let mut coeffs = coeffs;
        arith::trim(self, &mut coeffs);
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput("zero polynomial has every element as a root".into()));
        }
        let mut roots = if self.characteristic == 0 {
            embedding::number_field_roots(self, poly)?
        } else {
            let elems = self.elements().ok_or_else(|| {
                Error::Unsupported(format!("root search in {} (too many elements)", self.describe()))
            })?;
            elems
                .into_iter()
                .filter(|e| self.is_zero(&arith::eval(self, &coeffs, e)))
                .collect()
        };
        let theta = self.theta();
        if let Some(i) = roots.iter().position(|r| *r == theta) {
            let t = roots.remove(i);
            roots.insert(0, t);
        }
        Ok(roots)
    }

    /// Renders an element in the DSL's scalar syntax using `theta` for the
    /// adjoined generator.
    pub fn format(&self, a: &Scalar) -> String {
        let mut terms: Vec<(bool, String)> = Vec::new();
        let push = |terms: &mut Vec<(bool, String)>, neg: bool, mag: String, i: usize| {
            let mono = match i {
                0 => None,
                1 => Some("theta".to_string()),
                _ => Some(format!("theta^{i}")),
            };
            let body = match (mag.as_str(), mono) {
                (m, None) => m.to_string(),
                ("1", Some(t)) => t,
                (m, Some(t)) => format!("{m}*{t}"),
            };
            terms.push((neg, body));
        };
        match a {
            Scalar::Rational(c) => {
                for (i, x) in c.iter().enumerate().rev() {
                    if x.is_zero() {
                        continue;
                    }
                    let mag = x.abs();
                    let mag = if mag.is_integer() {
                        mag.numer().to_string()
                    } else {
                        format!("{}/{}", mag.numer(), mag.denom())
                    };
                    push(&mut terms, x.is_negative(), mag, i);
                }
            }
            Scalar::Modular(c) => {
                for (i, x) in c.iter().enumerate().rev() {
                    if *x != 0 {
                        push(&mut terms, false, x.to_string(), i);
                    }
                }
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        out
    }

    fn reduce_q(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree();
        if n > 1 {
            arith::trim(&QArith, &mut c);
            c = arith::rem(&QArith, &c, &self.q_modulus);
        }
        c.resize(n, BigRational::zero());
        c
    }

    fn reduce_p(&self, mut c: Vec<u64>) -> Vec<u64> {
        let n = self.degree();
        if n > 1 {
            let ar = FpArith(self.characteristic);
            arith::trim(&ar, &mut c);
            c = arith::rem(&ar, &c, &self.p_modulus);
        }
        c.resize(n, 0);
        c
    }
}

impl Arith for FieldSpec {
    type E = Scalar;

    fn zero(&self) -> Scalar {
        self.from_coords_i64(&vec![0; self.degree()])
    }

    fn one(&self) -> Scalar {
        let mut c = vec![0; self.degree()];
        c[0] = 1;
        self.from_coords_i64(&c)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                let ar = FpArith(self.characteristic);
                Scalar::Modular(x.iter().zip(y).map(|(u, v)| ar.add(u, v)).collect())
            }
            _ => panic!("mixed-characteristic scalars"),
        }
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => {
                if x.len() == 1 {
                    return Scalar::Rational(vec![&x[0] * &y[0]]);
                }
                Scalar::Rational(self.reduce_q(arith::mul(&QArith, x, y)))
            }
            (Scalar::Modular(x), Scalar::Modular(y)) => {
                let ar = FpArith(self.characteristic);
                if x.len() == 1 {
                    return Scalar::Modular(vec![ar.mul(&x[0], &y[0])]);
                }
                Scalar::Modular(self.reduce_p(arith::mul(&ar, x, y)))
            }
            _ => panic!("mixed-characteristic scalars"),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(x.iter().map(|u| -u).collect()),
            Scalar::Modular(x) => {
                let ar = FpArith(self.characteristic);
                Scalar::Modular(x.iter().map(|u| ar.neg(u)).collect())
            }
        }
    }

    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Rational(x) => {
                if x.len() == 1 {
                    return Some(Scalar::Rational(vec![x[0].recip()]));
                }
                let mut x = x.clone();
                arith::trim(&QArith, &mut x);
                let (g, s) = arith::ext_gcd_left(&QArith, &x, &self.q_modulus);
                debug_assert_eq!(g.len(), 1);
                Some(Scalar::Rational(self.reduce_q(s)))
            }
            Scalar::Modular(x) => {
                let ar = FpArith(self.characteristic);
                if x.len() == 1 {
                    return ar.inv(&x[0]).map(|v| Scalar::Modular(vec![v]));
                }
                let mut x = x.clone();
                arith::trim(&ar, &mut x);
                let (g, s) = arith::ext_gcd_left(&ar, &x, &self.p_modulus);
                debug_assert_eq!(g.len(), 1);
                Some(Scalar::Modular(self.reduce_p(s)))
            }
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.iter().all(|u| u.is_zero()),
            Scalar::Modular(x) => x.iter().all(|u| *u == 0),
        }
    }

    fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }
}

fn check_extension_poly(mut poly: Vec<BigInt>) -> Result<Vec<BigInt>> {
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let deg = poly.len().saturating_sub(1);
    if !(2..=MAX_EXTENSION_DEGREE).contains(&deg) {
        return Err(Error::InvalidField(format!(
            "extension degree must be between 2 and {MAX_EXTENSION_DEGREE}, got {deg}"
        )));
    }
    if !poly[deg].is_one() {
        return Err(Error::InvalidField("extension polynomial must be monic".into()));
    }
    Ok(poly)
}

/// Irreducibility over ℚ of a monic integer polynomial of degree ≤ 6.
///
/// Factor-degree patterns modulo small primes rule out most splittings; any
/// degree left open is settled by an exact search over products of complex
/// root subsets.
pub fn is_irreducible_over_q(poly: &[BigInt]) -> bool {
    let n = poly.len() - 1;
    if n <= 1 {
        return true;
    }
    // Candidate degrees of a proper factor of degree ≤ n/2.
    let mut open: Vec<bool> = (0..=n).map(|d| (1..=n / 2).contains(&d)).collect();
    let mut tried = 0;
    for p in (3u64..200).filter(|p| is_prime(*p)) {
        let ar = FpArith(p);
        let f: Vec<u64> = poly.iter().map(|c| ar.reduce_big(c)).collect();
        if arith::gcd(&ar, &f, &arith::derivative(&ar, &f)).len() != 1 {
            continue;
        }
        let degs = arith::factor_degrees_mod_p(&ar, &f);
        let mut reachable = vec![false; n + 1];
        reachable[0] = true;
        for d in degs {
            for s in (d..=n).rev() {
                if reachable[s - d] {
                    reachable[s] = true;
                }
            }
        }
        for d in 1..=n {
            open[d] &= reachable[d];
        }
        tried += 1;
        if !open.iter().any(|x| *x) || tried >= 12 {
            break;
        }
    }
    if !open.iter().any(|x| *x) {
        return true;
    }
    embedding::find_integer_factor(poly, &open).is_none()
}

pub fn format_int_poly(poly: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_arithmetic(other) && self.bindings == other.bindings
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn rejects_reducible_extensions() {
        assert!(FieldSpec::number_field(ints(&[-4, 0, 1])).is_err());
        // x^4 + 1 is irreducible over Q though reducible mod every prime.
        assert!(FieldSpec::number_field(ints(&[1, 0, 0, 0, 1])).is_ok());
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(FieldSpec::number_field(ints(&[4, 0, 0, 0, 1])).is_err());
        assert!(FieldSpec::finite_extension(7, ints(&[1, 1, 1])).is_err());
        assert!(FieldSpec::finite_extension(2, ints(&[1, 1, 1])).is_ok());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn theta_satisfies_its_minimal_polynomial() {
        let k = FieldSpec::number_field(ints(&[1, 1, 1])).unwrap();
        let t = k.theta();
        let v = k.add(&k.add(&k.mul(&t, &t), &t), &k.one());
        assert!(k.is_zero(&v));
        assert!(k.is_one(&k.pow(&t, 3)));
    }

    #[test]
    fn zeta3_over_f7_resolves_to_smallest_root() {
        let f7 = FieldSpec::prime(7).unwrap();
        let roots = f7.roots_of(&ints(&[1, 1, 1])).unwrap();
        assert_eq!(roots, vec![Scalar::Modular(vec![2]), Scalar::Modular(vec![4])]);
        let bound = f7.with_binding("zeta3", ints(&[1, 1, 1])).unwrap();
        assert_eq!(bound.constant("zeta3"), Some(&Scalar::Modular(vec![2])));
    }

    #[test]
    fn zeta3_over_f5_is_unresolvable() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            f5.with_binding("zeta3", ints(&[1, 1, 1])).unwrap_err(),
            Error::ConstantUnresolvable("zeta3".into())
        );
    }

    #[test]
    fn format_uses_theta() {
        let k = FieldSpec::number_field(ints(&[-2, 0, 1])).unwrap();
        let a = k.from_rational_coords(&[QArith.from_i64(-1), BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(k.format(&a), "1/2*theta - 1");
        assert_eq!(k.format(&k.zero()), "0");
    }
}
