use std::sync::Arc;

use super::representation::Representation;
use crate::error::Result;
use crate::exactfield::{ExactMatrix, FieldEmbedding};
use crate::presentation::AlgebraPresentation;

/// The algebra with its scalars pushed through `emb`. Named constants keep
/// their images, so relations written with them still hold.
pub fn extend_algebra(alg: &AlgebraPresentation, emb: &FieldEmbedding) -> Result<Arc<AlgebraPresentation>> {
    alg.field.ensure_same(emb.source())?;
    let target = emb.target_with_bindings()?;
    Ok(Arc::new(alg.map_scalars(&target, |c| emb.map(c))))
}

/// Reinterprets a module over a larger field.
pub fn extend_scalars(m: &Representation, alg: &Arc<AlgebraPresentation>, emb: &FieldEmbedding) -> Result<Representation> {
    m.field().ensure_same(emb.source())?;
    let mats = m
        .matrices()
        .iter()
        .map(|a| {
            let entries = a.entries().iter().map(|c| emb.map(c)).collect();
            ExactMatrix::from_entries(&alg.field, a.rows(), a.cols(), entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::from_matrices(alg, m.label(), mats)
}

/// Extends a whole family over one shared extended algebra.
pub fn extend_family(family: &[Representation], emb: &FieldEmbedding) -> Result<Vec<Representation>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let alg = extend_algebra(first.algebra(), emb)?;
    family.iter().map(|m| extend_scalars(m, &alg, emb)).collect()
}
