//! Commutative Gröbner bases over the central subalgebra, quotient
//! dimensions, and intersection numbers of central divisors on the
//! Azumaya locus.
//!
//! The intersection of two divisors is taken scheme-theoretically: the
//! ideal is `I_D + I_E` together with the relations of the centre.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactfield::{Arith, Field, FieldSpec, Scalar};
use crate::presentation::parse_polynomial;

pub const MAX_VARIABLES: usize = 8;
/// Bound on S-pairs examined by one Buchberger run.
pub const MAX_PAIRS: usize = 100_000;
/// Bound on monomials visited when counting a staircase.
pub const MAX_STAIRCASE: usize = 10_000_000;

/// Exponent vector ordered by degree-reverse-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn quotient(&self, by: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&by.0).map(|(a, b)| a - b).collect())
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // Smaller exponent in the last differing variable wins.
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with nonzero coefficients keyed by monomial; the largest key
/// is the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommutativePoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl CommutativePoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, f: &FieldSpec, m: Monomial, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !f.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = f.add(o.get(), &c);
                if f.is_zero(&s) {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    /// `self − c·m·g`.
    fn sub_multiple(&mut self, f: &FieldSpec, c: &Scalar, m: &Monomial, g: &CommutativePoly) {
        for (gm, gc) in &g.terms {
            self.add_term(f, gm.times(m), f.neg(&f.mul(c, gc)));
        }
    }

    fn monic(mut self, f: &FieldSpec) -> Self {
        if let Some((_, lc)) = self.leading() {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            for c in self.terms.values_mut() {
                *c = f.mul(c, &inv);
            }
        }
        self
    }
}

/// Polynomial ring `k[x₁, …, xₙ]` with named variables.
#[derive(Debug, Clone)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: &Field, vars: &[&str]) -> Result<Self> {
        if vars.is_empty() || vars.len() > MAX_VARIABLES {
            return Err(Error::Unsupported(format!("{} variables (1 to {MAX_VARIABLES} allowed)", vars.len())));
        }
        Ok(PolyRing { field: field.clone(), vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn parse(&self, text: &str) -> Result<CommutativePoly> {
        let nc = parse_polynomial(&self.field, &self.vars, text)?;
        let mut p = CommutativePoly::default();
        for (w, c) in nc.terms() {
            let mut e = vec![0u32; self.vars.len()];
            for &g in w.letters() {
                e[g] += 1;
            }
            p.add_term(&self.field, Monomial(e), c.clone());
        }
        Ok(p)
    }

    pub fn format(&self, p: &CommutativePoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in p.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let coeff = self.field.format(c);
            let term = match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff.clone(),
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) if coeff.contains(['+', ' ']) || coeff[1..].contains('-') => {
                    format!("({coeff})*{}", mono.join("*"))
                }
                _ => format!("{coeff}*{}", mono.join("*")),
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(&format!(" - {rest}"));
            } else {
                out.push_str(&format!(" + {term}"));
            }
        }
        out
    }

    /// Full reduction of `p` modulo `basis`.
    pub fn reduce(&self, p: &CommutativePoly, basis: &[CommutativePoly]) -> CommutativePoly {
        let f = &*self.field;
        let mut rest = p.clone();
        let mut out = CommutativePoly::default();
        while let Some((m, c)) = rest.terms.pop_last() {
            match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
                Some(g) => {
                    let (lm, lc) = g.leading().unwrap();
                    let q = f.mul(&c, &f.inv(lc).unwrap());
                    let shift = m.quotient(lm);
                    let mut tail = g.clone();
                    tail.terms.pop_last();
                    rest.sub_multiple(f, &q, &shift, &tail);
                }
                None => {
                    out.terms.insert(m, c);
                }
            }
        }
        out
    }

    fn s_poly(&self, a: &CommutativePoly, b: &CommutativePoly) -> CommutativePoly {
        let f = &*self.field;
        let (la, ca) = a.leading().unwrap();
        let (lb, cb) = b.leading().unwrap();
        let l = la.lcm(lb);
        let mut s = CommutativePoly::default();
        s.sub_multiple(f, &f.neg(&f.inv(ca).unwrap()), &l.quotient(la), a);
        s.sub_multiple(f, &f.inv(cb).unwrap(), &l.quotient(lb), b);
        s
    }

    /// Reduced Gröbner basis (monic, sorted by leading monomial) of the
    /// ideal generated by `gens`. The zero ideal gives an empty basis.
    pub fn buchberger(&self, gens: &[CommutativePoly]) -> Result<Vec<CommutativePoly>> {
        let f = &*self.field;
        let mut basis: Vec<CommutativePoly> = Vec::new();
        for g in gens {
            let r = self.reduce(g, &basis);
            if !r.is_zero() {
                basis.push(r.monic(f));
            }
        }
        // Normal strategy: the pair with the smallest lcm is treated first.
        let lcm = |b: &[CommutativePoly], i: usize, j: usize| b[i].leading().unwrap().0.lcm(b[j].leading().unwrap().0);
        let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.insert((lcm(&basis, i, j), i, j));
            }
        }
        let mut examined = 0usize;
        while let Some((l, i, j)) = pairs.pop_first() {
            examined += 1;
            if examined > MAX_PAIRS {
                return Err(Error::ResourceExhausted(format!("more than {MAX_PAIRS} S-pairs")));
            }
            let (li, _) = basis[i].leading().unwrap();
            let (lj, _) = basis[j].leading().unwrap();
            if li.coprime(lj) || self.chain(&basis, &pairs, &l, i, j) {
                continue;
            }
            let r = self.reduce(&self.s_poly(&basis[i], &basis[j]), &basis);
            if !r.is_zero() {
                basis.push(r.monic(f));
                let k = basis.len() - 1;
                for i in 0..k {
                    pairs.insert((lcm(&basis, i, k), i, k));
                }
            }
        }
        Ok(self.interreduce(basis))
    }

    /// Chain criterion: some `g_k` with leading monomial dividing `l` whose
    /// pairs with `g_i` and `g_j` are both already treated.
    fn chain(&self, basis: &[CommutativePoly], pending: &BTreeSet<(Monomial, usize, usize)>, l: &Monomial, i: usize, j: usize) -> bool {
        let open = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            let m = basis[a].leading().unwrap().0.lcm(basis[b].leading().unwrap().0);
            pending.contains(&(m, a, b))
        };
        (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].leading().unwrap().0.divides(l) && !open(i, k) && !open(j, k)
        })
    }

    fn interreduce(&self, mut basis: Vec<CommutativePoly>) -> Vec<CommutativePoly> {
        let f = &*self.field;
        basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
        // Drop elements whose leading monomial is divisible by another's.
        let mut minimal: Vec<CommutativePoly> = Vec::new();
        for (k, g) in basis.iter().enumerate() {
            let lm = g.leading().unwrap().0;
            let redundant = basis.iter().enumerate().any(|(i, h)| {
                let hm = h.leading().unwrap().0;
                i != k && hm.divides(lm) && (hm != lm || i < k)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<CommutativePoly> =
                minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
            let mut g = minimal[k].clone();
            let (lm, lc) = g.terms.pop_last().unwrap();
            let mut r = self.reduce(&g, &others);
            r.terms.insert(lm, lc);
            out.push(r.monic(f));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(usize),
    Infinite,
}

/// Number of standard monomials of a reduced Gröbner basis.
pub fn quotient_dimension(ring: &PolyRing, gb: &[CommutativePoly]) -> Result<QuotientDimension> {
    let n = ring.vars.len();
    let leads: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading().map(|(m, _)| m)).collect();
    let mut bound = vec![0u32; n];
    for (i, b) in bound.iter_mut().enumerate() {
        let pure = leads.iter().filter(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)).map(|m| m.0[i]).min();
        match pure {
            Some(e) => *b = e,
            None => return Ok(QuotientDimension::Infinite),
        }
    }
    let volume = bound.iter().try_fold(1usize, |acc, &b| acc.checked_mul(b.max(1) as usize));
    if volume.is_none_or(|v| v > MAX_STAIRCASE) {
        return Err(Error::ResourceExhausted("staircase too large to enumerate".into()));
    }
    if bound.contains(&0) {
        return Ok(QuotientDimension::Finite(0));
    }
    let mut count = 0;
    let mut e = vec![0u32; n];
    loop {
        let m = Monomial(e.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(QuotientDimension::Finite(count));
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Divisor of the centre, stored as the reduced Gröbner basis of its ideal
/// together with the centre's defining relations.
#[derive(Debug, Clone)]
pub struct CentralDivisor {
    pub label: String,
    pub ideal: Vec<CommutativePoly>,
}

impl CentralDivisor {
    pub fn new(ring: &PolyRing, label: &str, gens: &[CommutativePoly], centre_relations: &[CommutativePoly]) -> Result<Self> {
        let all: Vec<CommutativePoly> = gens.iter().chain(centre_relations).cloned().collect();
        Ok(CentralDivisor { label: label.to_string(), ideal: ring.buchberger(&all)? })
    }

    pub fn parse(ring: &PolyRing, label: &str, gens: &[&str], centre_relations: &[&str]) -> Result<Self> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        let r = centre_relations.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, label, &g, &r)
    }
}

/// `rank · dim k[Z]/(I_D + I_E)`, the total length of the intersection
/// summed over its points.
pub fn intersection_number(ring: &PolyRing, d: &CentralDivisor, e: &CentralDivisor, rank: usize) -> Result<usize> {
    if rank == 0 {
        return Err(Error::DegenerateInput("algebra rank over the centre must be positive".into()));
    }
    let sum: Vec<CommutativePoly> = d.ideal.iter().chain(&e.ideal).cloned().collect();
    let gb = ring.buchberger(&sum)?;
    match quotient_dimension(ring, &gb)? {
        QuotientDimension::Finite(n) => Ok(rank * n),
        QuotientDimension::Infinite => Err(Error::NotZeroDimensional),
    }
}
