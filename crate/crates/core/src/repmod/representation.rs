use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, Field};
use crate::presentation::{print_polynomial, AlgebraPresentation, ModuleCandidate};

/// A finite-dimensional module: one `dim × dim` matrix per generator,
/// satisfying every relation of the algebra.
#[derive(Debug, Clone)]
pub struct Representation {
    algebra: Arc<AlgebraPresentation>,
    label: String,
    dim: usize,
    matrices: Vec<ExactMatrix>,
}

/// A relation that does not vanish on a candidate module.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub relation: String,
    pub residual: ExactMatrix,
}

/// Evaluates every relation on the candidate and lists those that do not
/// vanish.
pub fn validate(algebra: &AlgebraPresentation, candidate: &ModuleCandidate) -> Result<Vec<Violation>> {
    let mats = ordered_matrices(algebra, candidate)?;
    let mut out = Vec::new();
    for (index, r) in algebra.relations.iter().enumerate() {
        let residual = r.eval(&algebra.field, &mats, candidate.dim)?;
        if !residual.is_zero() {
            out.push(Violation { index, relation: print_polynomial(algebra, r), residual });
        }
    }
    Ok(out)
}

fn ordered_matrices(algebra: &AlgebraPresentation, c: &ModuleCandidate) -> Result<Vec<ExactMatrix>> {
    if c.dim == 0 {
        return Err(Error::Shape(format!("module `{}` has dimension 0", c.name)));
    }
    if let Some(g) = c.matrices.keys().find(|g| algebra.index_of(g).is_none()) {
        return Err(Error::UnknownGenerator(g.clone()));
    }
    algebra
        .generators
        .iter()
        .map(|g| {
            let m = c.matrices.get(g).ok_or_else(|| Error::UnboundGenerator(g.clone()))?;
            m.field().ensure_same(&algebra.field)?;
            if m.rows() != c.dim || m.cols() != c.dim {
                return Err(Error::Shape(format!(
                    "matrix for `{g}` is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    c.dim,
                    c.dim
                )));
            }
            Ok(m.clone())
        })
        .collect()
}

impl Representation {
    pub fn new(algebra: &Arc<AlgebraPresentation>, candidate: &ModuleCandidate) -> Result<Self> {
        let matrices = ordered_matrices(algebra, candidate)?;
        let rep = Representation {
            algebra: algebra.clone(),
            label: candidate.name.clone(),
            dim: candidate.dim,
            matrices,
        };
        for r in &algebra.relations {
            if !r.eval(&algebra.field, &rep.matrices, rep.dim)?.is_zero() {
                return Err(Error::RelationViolated {
                    module: rep.label.clone(),
                    relation: print_polynomial(algebra, r),
                });
            }
        }
        Ok(rep)
    }

    /// Builds a module from generator-ordered matrices.
    pub fn from_matrices(algebra: &Arc<AlgebraPresentation>, label: &str, matrices: Vec<ExactMatrix>) -> Result<Self> {
        if matrices.len() != algebra.num_generators() {
            return Err(Error::Shape(format!(
                "{} matrices for {} generators",
                matrices.len(),
                algebra.num_generators()
            )));
        }
        let dim = matrices.first().map_or(0, ExactMatrix::rows);
        let candidate = ModuleCandidate {
            name: label.to_string(),
            dim,
            matrices: algebra.generators.iter().cloned().zip(matrices).collect(),
            pos: crate::error::Pos { line: 0, col: 0 },
        };
        Self::new(algebra, &candidate)
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        &self.algebra.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrices in generator order.
    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, generator: &str) -> Option<&ExactMatrix> {
        self.algebra.index_of(generator).map(|i| &self.matrices[i])
    }

    pub fn relabelled(&self, label: &str) -> Self {
        Representation { label: label.to_string(), ..self.clone() }
    }

    pub fn to_candidate(&self) -> ModuleCandidate {
        ModuleCandidate {
            name: self.label.clone(),
            dim: self.dim,
            matrices: self
                .algebra
                .generators
                .iter()
                .cloned()
                .zip(self.matrices.iter().cloned())
                .collect::<BTreeMap<_, _>>(),
            pos: crate::error::Pos { line: 0, col: 0 },
        }
    }

    pub(crate) fn same_algebra(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// Parses a source and validates every module in it.
pub fn parse(text: &str) -> Result<(Arc<AlgebraPresentation>, BTreeMap<String, Representation>)> {
    let src = crate::presentation::parse_source(text)?;
    let mut modules = BTreeMap::new();
    for c in &src.modules {
        modules.insert(c.name.clone(), Representation::new(&src.algebra, c)?);
    }
    Ok((src.algebra, modules))
}
