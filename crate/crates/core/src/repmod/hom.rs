use std::collections::BTreeMap;

use super::representation::Representation;
use crate::error::{Error, Result};
use crate::exactfield::{Arith, ExactMatrix, Scalar};
use crate::presentation::NcPolynomial;

/// Largest number of coefficient combinations tried by [`is_isomorphic`].
pub const MAX_ISO_SEARCH: u128 = 1_000_000;

/// Matrix of `θ ↦ (ρ_N(g)·θ − θ·ρ_M(g))_g`.
///
/// `θ` is an `n_N × n_M` matrix flattened row-major; the output stacks one
/// flattened `n_N × n_M` block per generator. Its kernel is `Hom_A(M, N)`
/// and its image is the space of inner derivations.
pub fn inner_map(m: &Representation, n: &Representation) -> Result<ExactMatrix> {
    m.same_algebra(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let block = dn * dm;
    let gens = m.algebra().num_generators();
    let mut out = ExactMatrix::zeros(f, gens * block, block);
    for g in 0..gens {
        let rm = &m.matrices()[g];
        let rn = &n.matrices()[g];
        for a in 0..dn {
            for b in 0..dm {
                let row = g * block + a * dm + b;
                // (ρ_N θ)_{ab} = Σ_k ρ_N[a,k] θ[k,b]
                for k in 0..dn {
                    let c = rn.get(a, k);
                    if !f.is_zero(c) {
                        let col = k * dm + b;
                        let v = f.add(out.get(row, col), c);
                        out.set(row, col, v);
                    }
                }
                // (θ ρ_M)_{ab} = Σ_k θ[a,k] ρ_M[k,b]
                for k in 0..dm {
                    let c = rm.get(k, b);
                    if !f.is_zero(c) {
                        let col = a * dm + k;
                        let v = f.sub(out.get(row, col), c);
                        out.set(row, col, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Basis of the intertwiners `θ: M → N`, each an `n_N × n_M` matrix.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ExactMatrix>> {
    let map = inner_map(m, n)?;
    map.kernel_basis()
        .into_iter()
        .map(|v| ExactMatrix::from_entries(m.field(), n.dim(), m.dim(), v))
        .collect()
}

/// Whether some intertwiner `M → N` is invertible.
///
/// Over finite fields every combination of the hom-space basis is tried.
/// Over ℚ and number fields, combinations with integer coefficients in
/// `[-R, R]` are tried with `2R + 1 > dim`. The determinant of a generic
/// combination is a polynomial of degree `dim` in the coefficients, so if it
/// is nonzero it does not vanish on the whole grid.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    m.same_algebra(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let f = m.field().clone();
    let values: Vec<Scalar> = match f.elements() {
        Some(all) => all,
        None => {
            let r = (m.dim() as i64 / 2).max(2);
            // 0 first, then ±1, ±2, …
            let mut v = vec![f.zero()];
            for i in 1..=r {
                v.push(f.from_i64(i));
                v.push(f.from_i64(-i));
            }
            v
        }
    };
    let q = values.len() as u128;
    let total = q.checked_pow(basis.len() as u32).filter(|&t| t <= MAX_ISO_SEARCH);
    let Some(total) = total else {
        return Err(Error::Undecided(format!(
            "{} combinations of a {}-dimensional hom space",
            q.saturating_pow(basis.len() as u32),
            basis.len()
        )));
    };
    let mut digits = vec![0usize; basis.len()];
    for _ in 0..total {
        let mut theta = ExactMatrix::zeros(&f, n.dim(), m.dim());
        for (b, &d) in basis.iter().zip(&digits) {
            if d != 0 {
                theta = theta.add(&b.scale(&values[d]))?;
            }
        }
        if theta.is_invertible() {
            return Ok(true);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < values.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(false)
}

/// Minimal polynomials (monic, constant term first) of designated central
/// elements acting on a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    pub values: BTreeMap<String, Vec<Scalar>>,
}

impl CentralCharacter {
    /// The scalar by which `name` acts, when its minimal polynomial is linear.
    pub fn scalar(&self, f: &crate::exactfield::FieldSpec, name: &str) -> Option<Scalar> {
        match self.values.get(name) {
            Some(p) if p.len() == 2 => Some(f.neg(&p[0])),
            _ => None,
        }
    }
}

/// Evaluates each named central element (a `zelt` or a generator) on the
/// module and returns its minimal polynomial.
pub fn central_character(m: &Representation, names: &[String]) -> Result<CentralCharacter> {
    let alg = m.algebra();
    let f = m.field();
    let mut values = BTreeMap::new();
    for name in names {
        let poly = match alg.central_element(name) {
            Some(p) => p.clone(),
            None => {
                let g = alg
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                NcPolynomial::generator(f, g)
            }
        };
        let z = poly.eval(f, m.matrices(), m.dim())?;
        for rho in m.matrices() {
            if z.mul(rho)? != rho.mul(&z)? {
                return Err(Error::NotCentral(name.clone()));
            }
        }
        values.insert(name.clone(), z.minimal_polynomial()?);
    }
    Ok(CentralCharacter { values })
}
