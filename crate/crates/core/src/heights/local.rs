//! Finite places of ℚ and of quadratic fields whose ring of integers is `ℤ[θ]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{complex_embeddings, Arith, ComplexEmbedding, FieldSpec, Scalar};

/// Trial division stops here; a larger cofactor is accepted only if it is
/// below the square of this bound (and therefore prime).
const TRIAL_BOUND: u64 = 1_000_000;
/// Largest prime for which split roots are found by search.
const ROOT_SEARCH_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceKind {
    Rational,
    Split,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePlace {
    pub p: BigInt,
    pub kind: PlaceKind,
    /// `e·f` of the place over `p`.
    pub local_degree: u32,
    /// For split places: the root of the defining polynomial mod `p` that
    /// the place corresponds to.
    pub root: Option<BigInt>,
}

fn vp(n: &BigInt, p: &BigInt) -> i64 {
    if n.is_zero() {
        return i64::MAX;
    }
    let mut n = n.abs();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

/// `(b, c)` of the defining polynomial `x² + b·x + c`.
fn quadratic_coeffs(field: &FieldSpec) -> (BigInt, BigInt) {
    let poly = field.extension().expect("quadratic field");
    (poly[1].clone(), poly[0].clone())
}

fn discriminant(field: &FieldSpec) -> BigInt {
    let (b, c) = quadratic_coeffs(field);
    &b * &b - BigInt::from(4) * c
}

/// Whether `D` is the discriminant of a quadratic field, i.e. `ℤ[θ]` is the
/// full ring of integers when `θ` has discriminant `D`.
pub fn fundamental_discriminant(d: &BigInt) -> bool {
    let squarefree = |n: &BigInt| -> bool {
        let n = n.abs();
        let mut k = BigInt::from(2);
        while &k * &k <= n {
            if (&n % (&k * &k)).is_zero() {
                return false;
            }
            k += 1;
        }
        true
    };
    let four = BigInt::from(4);
    let r = modp(d, &four);
    if r == BigInt::one() {
        return *d != BigInt::one() && squarefree(d);
    }
    if r.is_zero() {
        let m = d / &four;
        let s = modp(&m, &four);
        return (s == BigInt::from(2) || s == BigInt::from(3)) && squarefree(&m);
    }
    false
}

pub(crate) fn prime_factors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return Ok(out);
    }
    let mut d = 2u64;
    while d < TRIAL_BOUND && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(bd.clone());
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        if n >= BigInt::from(TRIAL_BOUND) * BigInt::from(TRIAL_BOUND) {
            return Err(Error::ResourceExhausted(format!("cannot factor {n} by trial division")));
        }
        out.push(n);
    }
    Ok(out)
}

/// Legendre-style splitting type of an odd or even prime in a quadratic
/// field of fundamental discriminant `d`.
fn splitting(d: &BigInt, p: &BigInt) -> PlaceKind {
    if (d % p).is_zero() {
        return PlaceKind::Ramified;
    }
    if *p == BigInt::from(2) {
        return if modp(d, &BigInt::from(8)) == BigInt::one() { PlaceKind::Split } else { PlaceKind::Inert };
    }
    let e = (p - 1u32) / 2u32;
    if modp(d, p).modpow(&e, p) == BigInt::one() {
        PlaceKind::Split
    } else {
        PlaceKind::Inert
    }
}

/// The places of a quadratic field above the rational prime `p`.
pub fn quadratic_places(field: &FieldSpec, p: &BigInt) -> Result<Vec<FinitePlace>> {
    let d = discriminant(field);
    if !fundamental_discriminant(&d) {
        return Err(Error::Unsupported(format!("Z[theta] is not maximal (discriminant {d})")));
    }
    Ok(match splitting(&d, p) {
        PlaceKind::Split => {
            let bound = p.to_u64().filter(|&x| x <= ROOT_SEARCH_BOUND).ok_or_else(|| {
                Error::ResourceExhausted(format!("root search modulo {p}"))
            })?;
            let (b, c) = quadratic_coeffs(field);
            (0..bound)
                .map(BigInt::from)
                .filter(|r| modp(&(r * r + &b * r + &c), p).is_zero())
                .map(|r| FinitePlace { p: p.clone(), kind: PlaceKind::Split, local_degree: 1, root: Some(r) })
                .collect()
        }
        kind => vec![FinitePlace { p: p.clone(), kind, local_degree: 2, root: None }],
    })
}

/// Places dividing the numerator or denominator of the norm of some entry.
pub(crate) fn finite_places(field: &FieldSpec, entries: &[Scalar]) -> Result<Vec<FinitePlace>> {
    let mut primes: Vec<BigInt> = Vec::new();
    for e in entries {
        let m = field.denominator(e);
        let beta = field.mul(e, &field.from_bigint(&m));
        let n = norm_integral(field, &beta);
        for p in prime_factors(&m)?.into_iter().chain(prime_factors(&n)?) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    let mut out = Vec::new();
    for p in primes {
        if field.degree() == 1 {
            out.push(FinitePlace { p, kind: PlaceKind::Rational, local_degree: 1, root: None });
        } else {
            out.extend(quadratic_places(field, &p)?);
        }
    }
    Ok(out)
}

fn norm_integral(field: &FieldSpec, beta: &Scalar) -> BigInt {
    let c = field.integer_coords(beta).expect("cleared denominators");
    if field.degree() == 1 {
        return c[0].clone();
    }
    let (b, cc) = quadratic_coeffs(field);
    &c[0] * &c[0] - &b * &c[0] * &c[1] + cc * &c[1] * &c[1]
}

/// Newton-lifts a simple root of `x² + bx + c` from mod `p` to mod `p^k`.
fn hensel(b: &BigInt, c: &BigInt, r: &BigInt, p: &BigInt, k: u32) -> BigInt {
    let modulus = p.pow(k);
    let mut r = r.clone();
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = p.pow(prec);
        let f = &r * &r + b * &r + c;
        let df = BigInt::from(2) * &r + b;
        let inv = modp(&df.extended_gcd(&m).x, &m);
        r = modp(&(&r - f * inv), &m);
    }
    modp(&r, &modulus)
}

impl FinitePlace {
    /// Normalised valuation of a nonzero element.
    pub fn valuation(&self, field: &FieldSpec, a: &Scalar) -> Result<i64> {
        let m = field.denominator(a);
        let beta = field.mul(a, &field.from_bigint(&m));
        let vm = vp(&m, &self.p);
        let n = norm_integral(field, &beta);
        let v = match self.kind {
            PlaceKind::Rational => return Ok(vp(&n, &self.p) - vm),
            PlaceKind::Inert => vp(&n, &self.p) / 2,
            PlaceKind::Ramified => vp(&n, &self.p),
            PlaceKind::Split => {
                let c = field.integer_coords(&beta).unwrap();
                let k = u32::try_from(vp(&n, &self.p) + 1)
                    .map_err(|_| Error::ResourceExhausted("valuation too large".into()))?;
                let (b, cc) = quadratic_coeffs(field);
                let r = hensel(&b, &cc, self.root.as_ref().unwrap(), &self.p, k);
                let value = modp(&(&c[0] + &c[1] * r), &self.p.pow(k));
                vp(&value, &self.p).min(i64::from(k))
            }
        };
        let e = if self.kind == PlaceKind::Ramified { 2 } else { 1 };
        Ok(v - e * vm)
    }
}

/// Archimedean places with their local degrees: real embeddings count 1,
/// a complex-conjugate pair counts once with degree 2.
pub(crate) fn archimedean_places(field: &FieldSpec) -> Result<Vec<(ComplexEmbedding, u32)>> {
    let embs = complex_embeddings(field)?;
    let mut out = Vec::new();
    for e in embs {
        if e.theta.im.abs() < 1e-12 {
            out.push((e, 1));
        } else if e.theta.im > 0.0 {
            out.push((e, 2));
        }
    }
    Ok(out)
}
