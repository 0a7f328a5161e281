use std::collections::BTreeMap;
use std::sync::Arc;

use super::polynomial::{NcPolynomial, Word};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, Field, Scalar};

/// A finitely presented algebra over one of the supported fields.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub field: Field,
    pub generators: Vec<String>,
    /// Generators declared central.
    pub central: Vec<String>,
    pub relations: Vec<NcPolynomial>,
    /// Named elements of the centre, e.g. `r = x^3`.
    pub central_elements: Vec<(String, NcPolynomial)>,
}

impl AlgebraPresentation {
    /// Builds a presentation and inserts `c·g − g·c` for every declared
    /// central generator `c` and every other generator `g`, unless that
    /// commutator (or its negative) is already a relation.
    pub fn new(
        name: &str,
        field: &Field,
        generators: Vec<String>,
        central: Vec<String>,
        relations: Vec<NcPolynomial>,
        central_elements: Vec<(String, NcPolynomial)>,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DegenerateInput(format!("generator `{g}` declared twice")));
            }
        }
        for c in &central {
            if !generators.contains(c) {
                return Err(Error::UnknownGenerator(c.clone()));
            }
        }
        let n = generators.len();
        for p in relations.iter().chain(central_elements.iter().map(|(_, p)| p)) {
            if let Some(g) = p.max_generator().filter(|&g| g >= n) {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
        }
        let mut alg = AlgebraPresentation {
            name: name.to_string(),
            field: field.clone(),
            generators,
            central,
            relations,
            central_elements,
        };
        alg.insert_central_commutators();
        Ok(alg)
    }

    fn insert_central_commutators(&mut self) {
        let f = self.field.clone();
        let central: Vec<usize> = self.central.iter().filter_map(|c| self.index_of(c)).collect();
        for &c in &central {
            for g in 0..self.generators.len() {
                if g == c {
                    continue;
                }
                let rel = NcPolynomial::commutator(
                    &f,
                    &NcPolynomial::generator(&f, c),
                    &NcPolynomial::generator(&f, g),
                );
                let neg = rel.neg(&f);
                if !self.relations.iter().any(|r| *r == rel || *r == neg) {
                    self.relations.push(rel);
                }
            }
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn central_element(&self, name: &str) -> Option<&NcPolynomial> {
        self.central_elements.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Evaluates `p` under a named assignment of `n × n` matrices.
    pub fn eval(&self, p: &NcPolynomial, assignment: &BTreeMap<String, ExactMatrix>, n: usize) -> Result<ExactMatrix> {
        let mut mats = Vec::with_capacity(self.generators.len());
        let used: Vec<bool> = {
            let mut u = vec![false; self.generators.len()];
            for (w, _) in p.terms() {
                for &g in w.letters() {
                    u[g] = true;
                }
            }
            u
        };
        for (g, name) in self.generators.iter().enumerate() {
            match assignment.get(name) {
                Some(m) => mats.push(m.clone()),
                None if used[g] => return Err(Error::UnboundGenerator(name.clone())),
                None => mats.push(ExactMatrix::zeros(&self.field, n, n)),
            }
        }
        p.eval(&self.field, &mats, n)
    }

    /// Same algebra over another field; scalars are mapped by `map`.
    pub fn map_scalars(&self, field: &Field, map: impl Fn(&Scalar) -> Scalar) -> AlgebraPresentation {
        let conv = |p: &NcPolynomial| NcPolynomial::from_terms(field, p.terms().map(|(w, c)| (map(c), w.clone())));
        AlgebraPresentation {
            name: self.name.clone(),
            field: field.clone(),
            generators: self.generators.clone(),
            central: self.central.clone(),
            relations: self.relations.iter().map(conv).collect(),
            central_elements: self.central_elements.iter().map(|(n, p)| (n.clone(), conv(p))).collect(),
        }
    }
}

/// A diagonal action of the cyclic group of order `order` on commuting base
/// variables: the group generator multiplies each base variable by a root of
/// unity.
#[derive(Debug, Clone)]
pub struct GroupActionSpec {
    pub field: Field,
    pub base: Vec<String>,
    pub group_generator: String,
    pub order: u32,
    pub multipliers: Vec<Scalar>,
}

/// The skew group algebra: generators `base ∪ {σ}` with relations
/// `σ·x − m_x·x·σ`, `σ^N − 1`, and the pairwise commutators of the base.
pub fn crossed_product(name: &str, g: &GroupActionSpec) -> Result<Arc<AlgebraPresentation>> {
    let f = &g.field;
    if g.order == 0 {
        return Err(Error::InvalidAction("group order must be positive".into()));
    }
    if g.multipliers.len() != g.base.len() {
        return Err(Error::InvalidAction(format!(
            "{} multipliers for {} base generators",
            g.multipliers.len(),
            g.base.len()
        )));
    }
    for (x, m) in g.base.iter().zip(&g.multipliers) {
        f.check(m)?;
        if !f.is_one(&f.pow(m, u64::from(g.order))) {
            return Err(Error::InvalidAction(format!(
                "multiplier {} of `{x}` is not a root of unity of order dividing {}",
                f.format(m),
                g.order
            )));
        }
    }
    let n = g.base.len();
    let s = n;
    let sigma = NcPolynomial::generator(f, s);
    let mut relations = Vec::new();
    for (i, m) in g.multipliers.iter().enumerate() {
        let x = NcPolynomial::generator(f, i);
        let lhs = sigma.mul(f, &x);
        let rhs = NcPolynomial::monomial(f, m.clone(), Word(vec![i, s]));
        relations.push(lhs.sub(f, &rhs));
    }
    relations.push(sigma.pow(f, g.order).sub(f, &NcPolynomial::one(f)));
    for i in 0..n {
        for j in i + 1..n {
            relations.push(NcPolynomial::commutator(
                f,
                &NcPolynomial::generator(f, i),
                &NcPolynomial::generator(f, j),
            ));
        }
    }
    let mut generators = g.base.clone();
    generators.push(g.group_generator.clone());
    Ok(Arc::new(AlgebraPresentation::new(name, f, generators, Vec::new(), relations, Vec::new())?))
}
