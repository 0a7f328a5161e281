//! Coefficient arithmetic shared by the field tower and the univariate
//! polynomial helpers built on top of it.
//!
//! Polynomials are dense coefficient vectors, constant term first, with no
//! trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic in a commutative field whose elements are `Self::E`.
pub trait Arith {
    type E: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `None` on zero.
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_i64(&self, n: i64) -> Self::E;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct QArith;

impl Arith for QArith {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// The prime field of order `p`, elements kept in `[0, p)`.
#[derive(Debug, Clone, Copy)]
pub struct FpArith(pub u64);

impl FpArith {
    pub fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let mut r = n % &p;
        if r.is_negative() {
            r += &p;
        }
        u64::try_from(r).expect("residue fits in u64")
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Arith for FpArith {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat; p is prime.
        Some(self.pow(*a, self.0 - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.0 as i64);
        m as u64
    }
}

pub fn trim<A: Arith>(ar: &A, p: &mut Vec<A::E>) {
    while p.last().is_some_and(|c| ar.is_zero(c)) {
        p.pop();
    }
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let n = a.len().max(b.len());
    let zero = ar.zero();
    let mut out: Vec<A::E> = (0..n)
        .map(|i| ar.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ar, &mut out);
    out
}

pub fn sub<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let n = a.len().max(b.len());
    let zero = ar.zero();
    let mut out: Vec<A::E> = (0..n)
        .map(|i| ar.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ar, &mut out);
    out
}

pub fn mul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ar.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ar.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ar.add(&out[i + j], &ar.mul(x, y));
        }
    }
    trim(ar, &mut out);
    out
}

pub fn scale<A: Arith>(ar: &A, a: &[A::E], c: &A::E) -> Vec<A::E> {
    let mut out: Vec<A::E> = a.iter().map(|x| ar.mul(x, c)).collect();
    trim(ar, &mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> (Vec<A::E>, Vec<A::E>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = ar.inv(&b[db]).expect("trimmed divisor has nonzero lead");
    let mut rem = a.to_vec();
    trim(ar, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![ar.zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = ar.mul(rem.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] = ar.sub(&rem[shift + i], &ar.mul(&c, bi));
        }
        quot[shift] = c;
        // The leading coefficient is now exactly zero.
        rem.pop();
        trim(ar, &mut rem);
    }
    trim(ar, &mut quot);
    (quot, rem)
}

pub fn rem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    divrem(ar, a, b).1
}

pub fn monic<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => scale(ar, a, &ar.inv(lead).expect("nonzero lead")),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ar, &mut x);
    trim(ar, &mut y);
    while !y.is_empty() {
        let r = rem(ar, &x, &y);
        x = y;
        y = r;
    }
    monic(ar, &x)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub fn ext_gcd_left<A: Arith>(ar: &A, a: &[A::E], m: &[A::E]) -> (Vec<A::E>, Vec<A::E>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(ar, &mut r0);
    trim(ar, &mut r1);
    let mut s0: Vec<A::E> = Vec::new();
    let mut s1: Vec<A::E> = vec![ar.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(ar, &r0, &r1);
        let s = sub(ar, &s0, &mul(ar, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lead) => {
            let li = ar.inv(lead).unwrap();
            (scale(ar, &r0, &li), rem(ar, &scale(ar, &s0, &li), m))
        }
    }
}

pub fn derivative<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    let mut out: Vec<A::E> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ar.mul(c, &ar.from_i64(i as i64)))
        .collect();
    trim(ar, &mut out);
    out
}

pub fn mulmod<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], m: &[A::E]) -> Vec<A::E> {
    rem(ar, &mul(ar, a, b), m)
}

pub fn powmod<A: Arith>(ar: &A, base: &[A::E], exp: &BigInt, m: &[A::E]) -> Vec<A::E> {
    let mut acc = rem(ar, &[ar.one()], m);
    let mut b = rem(ar, base, m);
    let bits = exp.bits();
    for i in (0..bits).rev() {
        acc = mulmod(ar, &acc, &acc, m);
        if exp.bit(i) {
            acc = mulmod(ar, &acc, &b, m);
        }
    }
    b.clear();
    acc
}

pub fn eval<A: Arith>(ar: &A, p: &[A::E], x: &A::E) -> A::E {
    p.iter()
        .rev()
        .fold(ar.zero(), |acc, c| ar.add(&ar.mul(&acc, x), c))
}

/// Ben-Or irreducibility test over the prime field `F_p`.
pub fn is_irreducible_mod_p(ar: &FpArith, f: &[u64]) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = monic(ar, f);
    let x = vec![0, 1 % ar.0];
    let p = BigInt::from(ar.0);
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = powmod(ar, &xp, &p, &f);
        let g = gcd(ar, &f, &sub(ar, &xp, &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Distinct-degree factorisation of a monic squarefree polynomial over
/// `F_p`: returns the degrees of its irreducible factors.
pub fn factor_degrees_mod_p(ar: &FpArith, f: &[u64]) -> Vec<usize> {
    let mut f = monic(ar, f);
    let x = vec![0, 1 % ar.0];
    let p = BigInt::from(ar.0);
    let mut xp = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while degree(&f).unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        xp = powmod(ar, &xp, &p, &f);
        let g = gcd(ar, &f, &sub(ar, &xp, &x));
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            f = divrem(ar, &f, &g).0;
            xp = rem(ar, &xp, &f);
        }
    }
    if let Some(d) = degree(&f) {
        if d > 0 {
            out.push(d);
        }
    }
    out
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs_dividend() {
        let ar = FpArith(7);
        let a = vec![3, 0, 5, 1, 2];
        let b = vec![1, 6, 1];
        let (q, r) = divrem(&ar, &a, &b);
        assert_eq!(add(&ar, &mul(&ar, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn ben_or_on_small_cases() {
        // x^2 + x + 1 is irreducible mod 2 and 5 but splits mod 7 and 3.
        assert!(is_irreducible_mod_p(&FpArith(2), &[1, 1, 1]));
        assert!(is_irreducible_mod_p(&FpArith(5), &[1, 1, 1]));
        assert!(!is_irreducible_mod_p(&FpArith(7), &[1, 1, 1]));
        assert!(!is_irreducible_mod_p(&FpArith(3), &[1, 1, 1]));
        // (x^2+1)^2 mod 3 has a repeated irreducible factor.
        assert!(!is_irreducible_mod_p(&FpArith(3), &[1, 0, 2, 0, 1]));
    }

    #[test]
    fn ddf_degrees() {
        // x^4 + 1 over F_3 = (x^2+x+2)(x^2+2x+2)
        let mut d = factor_degrees_mod_p(&FpArith(3), &[1, 0, 0, 0, 1]);
        d.sort();
        assert_eq!(d, vec![2, 2]);
        // x^3 - x over F_5 = x(x-1)(x+1)
        assert_eq!(factor_degrees_mod_p(&FpArith(5), &[0, 4, 0, 1]), vec![1, 1, 1]);
    }

    #[test]
    fn inverse_via_ext_gcd() {
        let ar = QArith;
        let q = |n: i64| ar.from_i64(n);
        // inverse of x modulo x^2 - 2 is x/2
        let (g, s) = ext_gcd_left(&ar, &[q(0), q(1)], &[q(-2), q(0), q(1)]);
        assert_eq!(g, vec![q(1)]);
        assert_eq!(s, vec![q(0), BigRational::new(1.into(), 2.into())]);
    }
}
