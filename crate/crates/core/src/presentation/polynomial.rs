use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::{Arith, ExactMatrix, Field, FieldSpec, Scalar};

/// A word in the generators, stored as generator indices. The empty word is
/// the unit. Words are ordered degree-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A noncommutative polynomial: merged terms with nonzero coefficients.
///
/// Arithmetic takes the coefficient field explicitly so that polynomials stay
/// plain data.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(f: &FieldSpec, c: Scalar) -> Self {
        Self::monomial(f, c, Word::unit())
    }

    pub fn one(f: &FieldSpec) -> Self {
        Self::constant(f, f.one())
    }

    pub fn generator(f: &FieldSpec, g: usize) -> Self {
        Self::monomial(f, f.one(), Word::letter(g))
    }

    pub fn monomial(f: &FieldSpec, c: Scalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero(&c) {
            terms.insert(w, c);
        }
        NcPolynomial { terms }
    }

    pub fn from_terms(f: &FieldSpec, terms: impl IntoIterator<Item = (Scalar, Word)>) -> Self {
        let mut p = Self::zero();
        for (c, w) in terms {
            p.add_term(f, w, &c);
        }
        p
    }

    fn add_term(&mut self, f: &FieldSpec, w: Word, c: &Scalar) {
        if let Some(existing) = self.terms.get_mut(&w) {
            let s = f.add(existing, c);
            if f.is_zero(&s) {
                self.terms.remove(&w);
            } else {
                *existing = s;
            }
        } else if !f.is_zero(c) {
            self.terms.insert(w, c.clone());
        }
    }

    /// Terms in ascending degree-lex order of their words.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no non-empty words.
    pub fn as_constant(&self, f: &FieldSpec) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(f.zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn add(&self, f: &FieldSpec, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(f, w.clone(), c);
        }
        out
    }

    pub fn neg(&self, f: &FieldSpec) -> NcPolynomial {
        NcPolynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, f: &FieldSpec, other: &NcPolynomial) -> NcPolynomial {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &FieldSpec, c: &Scalar) -> NcPolynomial {
        if f.is_zero(c) {
            return Self::zero();
        }
        NcPolynomial { terms: self.terms.iter().map(|(w, x)| (w.clone(), f.mul(x, c))).collect() }
    }

    pub fn mul(&self, f: &FieldSpec, other: &NcPolynomial) -> NcPolynomial {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(f, w1.concat(w2), &f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, f: &FieldSpec, n: u32) -> NcPolynomial {
        (0..n).fold(Self::one(f), |acc, _| acc.mul(f, self))
    }

    /// Commutator `a·b − b·a`.
    pub fn commutator(f: &FieldSpec, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        a.mul(f, b).sub(f, &b.mul(f, a))
    }

    /// Substitutes `mats[g]` for generator `g` and multiplies words left to
    /// right; the empty word becomes the `n × n` identity.
    pub fn eval(&self, field: &Field, mats: &[ExactMatrix], n: usize) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::zeros(field, n, n);
        for (w, c) in &self.terms {
            let mut m = ExactMatrix::scalar(field, n, c);
            for &g in &w.0 {
                let rho = mats
                    .get(g)
                    .ok_or_else(|| Error::UnboundGenerator(format!("#{g}")))?;
                m = m.mul(rho)?;
            }
            acc = acc.add(&m)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degree_lex_order() {
        let mut ws = vec![Word(vec![1, 0]), Word(vec![2]), Word(vec![0, 1]), Word::unit()];
        ws.sort();
        assert_eq!(ws, vec![Word::unit(), Word(vec![2]), Word(vec![0, 1]), Word(vec![1, 0])]);
    }

    #[test]
    fn terms_merge_and_cancel() {
        let f = FieldSpec::rationals();
        let x = NcPolynomial::generator(&f, 0);
        let y = NcPolynomial::generator(&f, 1);
        let c = NcPolynomial::commutator(&f, &x, &y);
        assert_eq!(c.num_terms(), 2);
        assert!(c.add(&f, &NcPolynomial::commutator(&f, &y, &x)).is_zero());
        assert!(x.sub(&f, &x).is_zero());
    }

    #[test]
    fn diagonal_commutator_vanishes() {
        let f = FieldSpec::rationals();
        let x = NcPolynomial::generator(&f, 0);
        let y = NcPolynomial::generator(&f, 1);
        let dx = ExactMatrix::from_i64_rows(&f, &[vec![2, 0], vec![0, 5]]).unwrap();
        let dy = ExactMatrix::from_i64_rows(&f, &[vec![-1, 0], vec![0, 3]]).unwrap();
        let r = NcPolynomial::commutator(&f, &x, &y).eval(&f, &[dx, dy], 2).unwrap();
        assert!(r.is_zero());
    }

    fn arb_poly(f: &FieldSpec, data: &[(i64, Vec<usize>)]) -> NcPolynomial {
        NcPolynomial::from_terms(f, data.iter().map(|(c, w)| (f.from_i64(*c), Word(w.clone()))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn eval_is_an_algebra_morphism(
            p in proptest::collection::vec((-3i64..4, proptest::collection::vec(0usize..2, 0..3)), 0..4),
            q in proptest::collection::vec((-3i64..4, proptest::collection::vec(0usize..2, 0..3)), 0..4),
            m in proptest::collection::vec(-3i64..4, 8),
        ) {
            let f = FieldSpec::prime(7).unwrap();
            let mats = vec![
                ExactMatrix::from_i64_rows(&f, &[m[0..2].to_vec(), m[2..4].to_vec()]).unwrap(),
                ExactMatrix::from_i64_rows(&f, &[m[4..6].to_vec(), m[6..8].to_vec()]).unwrap(),
            ];
            let (p, q) = (arb_poly(&f, &p), arb_poly(&f, &q));
            let ep = p.eval(&f, &mats, 2).unwrap();
            let eq = q.eval(&f, &mats, 2).unwrap();
            prop_assert_eq!(p.mul(&f, &q).eval(&f, &mats, 2).unwrap(), ep.mul(&eq).unwrap());
            prop_assert_eq!(p.add(&f, &q).eval(&f, &mats, 2).unwrap(), ep.add(&eq).unwrap());
        }
    }
}
