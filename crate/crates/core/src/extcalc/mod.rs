//! `Ext¹_A(M, N)` as derivations `A → Hom(M, N)` modulo inner derivations.
//!
//! A derivation is fixed by its values `D_g` on the generators; it extends
//! to words by the Leibniz rule `δ(uv) = δ(u)·ρ_M(v) + ρ_N(u)·δ(v)`, and it
//! is well defined exactly when `δ(r) = 0` for every relation `r`.

mod oracle;

pub use oracle::{ext1_bruteforce, ORACLE_MAX_CANDIDATES, ORACLE_MAX_UNKNOWNS};

use crate::error::Result;
use crate::exactfield::{Arith, ExactMatrix, Scalar};
use crate::repmod::{inner_map, Representation};

/// Values `D_g : M → N` of a derivation on the generators, in generator
/// order; each is an `n_N × n_M` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationTuple {
    pub components: Vec<ExactMatrix>,
}

#[derive(Debug, Clone)]
pub struct ExtReport {
    pub dim_hom: usize,
    pub dim_der: usize,
    pub dim_inner: usize,
    pub dim_ext1: usize,
    /// Representatives of a basis of `Ext¹`.
    pub cocycle_basis: Vec<DerivationTuple>,
}

/// The linear system whose kernel is the space of derivations.
///
/// Unknowns are the entries of all `D_g`, generator-major and row-major
/// within each block. There is one block of `n_N · n_M` rows per relation.
#[derive(Debug, Clone)]
pub struct DerivationSystem {
    pub matrix: ExactMatrix,
    pub num_generators: usize,
    pub rows_n: usize,
    pub cols_m: usize,
}

impl DerivationSystem {
    pub fn num_unknowns(&self) -> usize {
        self.matrix.cols()
    }

    /// Splits a flat unknown vector into per-generator matrices.
    pub fn tuple(&self, v: &[Scalar]) -> Result<DerivationTuple> {
        let block = self.rows_n * self.cols_m;
        let f = self.matrix.field();
        let components = (0..self.num_generators)
            .map(|g| ExactMatrix::from_entries(f, self.rows_n, self.cols_m, v[g * block..(g + 1) * block].to_vec()))
            .collect::<Result<_>>()?;
        Ok(DerivationTuple { components })
    }
}

/// Linearises `δ(r) = 0` for every relation by splitting each word
/// `w = u·g·v` into `ρ_N(u)·D_g·ρ_M(v)`.
pub fn derivation_system(m: &Representation, n: &Representation) -> Result<DerivationSystem> {
    let alg = m.algebra().clone();
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    // Matching algebras are checked by inner_map below as well; check early.
    inner_map(m, n).map(|_| ())?;
    let block = dn * dm;
    let gens = alg.num_generators();
    let mut sys = ExactMatrix::zeros(&f, alg.relations.len() * block, gens * block);
    for (ri, rel) in alg.relations.iter().enumerate() {
        for (word, coeff) in rel.terms() {
            let letters = word.letters();
            // prefix[i] = ρ_N(g_0 … g_{i-1}), suffix[i] = ρ_M(g_{i+1} … g_{k-1})
            let mut prefix = vec![ExactMatrix::identity(&f, dn)];
            for &g in letters {
                let next = prefix.last().unwrap().mul(&n.matrices()[g])?;
                prefix.push(next);
            }
            let mut suffix = vec![ExactMatrix::identity(&f, dm); letters.len()];
            for i in (0..letters.len().saturating_sub(1)).rev() {
                suffix[i] = m.matrices()[letters[i + 1]].mul(&suffix[i + 1])?;
            }
            for (i, &g) in letters.iter().enumerate() {
                let (p, s) = (&prefix[i], &suffix[i]);
                // (P D S)_{ab} = Σ_{c,d} P[a,c] D[c,d] S[d,b]
                for a in 0..dn {
                    for c in 0..dn {
                        let pac = f.mul(coeff, p.get(a, c));
                        if f.is_zero(&pac) {
                            continue;
                        }
                        for d in 0..dm {
                            for b in 0..dm {
                                let sdb = s.get(d, b);
                                if f.is_zero(sdb) {
                                    continue;
                                }
                                let row = ri * block + a * dm + b;
                                let col = g * block + c * dm + d;
                                let v = f.add(sys.get(row, col), &f.mul(&pac, sdb));
                                sys.set(row, col, v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(DerivationSystem { matrix: sys, num_generators: gens, rows_n: dn, cols_m: dm })
}

/// Computes `Ext⁰` and `Ext¹` between two modules of the same algebra.
pub fn ext1(m: &Representation, n: &Representation) -> Result<ExtReport> {
    let system = derivation_system(m, n)?;
    let f = m.field().clone();
    let der = system.matrix.rref();
    let kernel = der.kernel_basis();
    let dim_der = kernel.len();

    let inner = inner_map(m, n)?;
    let inner_rref = inner.rref();
    let dim_hom = inner.cols() - inner_rref.rank;
    let dim_inner = inner_rref.rank;

    // Row-reduced basis of the inner subspace, then complete it greedily by
    // kernel vectors in order.
    let mut basis = Echelon::new(&f, inner.rows());
    for v in inner.transpose().to_rows() {
        basis.insert(v);
    }
    debug_assert_eq!(basis.len(), dim_inner);
    let mut cocycle_basis = Vec::new();
    for v in kernel {
        let reduced = basis.reduce(&v);
        if reduced.iter().any(|x| !f.is_zero(x)) {
            basis.insert(reduced.clone());
            cocycle_basis.push(system.tuple(&reduced)?);
        }
    }
    let dim_ext1 = dim_der - dim_inner;
    debug_assert_eq!(cocycle_basis.len(), dim_ext1);
    Ok(ExtReport { dim_hom, dim_der, dim_inner, dim_ext1, cocycle_basis })
}

/// The tuple `δ_θ(g) = ρ_N(g)·θ − θ·ρ_M(g)` of an inner derivation.
pub fn inner_derivation(m: &Representation, n: &Representation, theta: &ExactMatrix) -> Result<DerivationTuple> {
    let components = m
        .matrices()
        .iter()
        .zip(n.matrices())
        .map(|(rm, rn)| rn.mul(theta)?.sub(&theta.mul(rm)?))
        .collect::<Result<_>>()?;
    Ok(DerivationTuple { components })
}

/// Whether a tuple satisfies every relation constraint.
pub fn is_derivation(m: &Representation, n: &Representation, d: &DerivationTuple) -> Result<bool> {
    let system = derivation_system(m, n)?;
    let flat: Vec<Scalar> = d.components.iter().flat_map(|c| c.entries().iter().cloned()).collect();
    let f = m.field();
    Ok(system.matrix.mul_vec(&flat)?.iter().all(|x| f.is_zero(x)))
}

/// Incrementally maintained reduced echelon basis.
struct Echelon<'a> {
    f: &'a crate::exactfield::FieldSpec,
    rows: Vec<(usize, Vec<Scalar>)>,
    #[allow(dead_code)]
    width: usize,
}

impl<'a> Echelon<'a> {
    fn new(f: &'a crate::exactfield::FieldSpec, width: usize) -> Self {
        Echelon { f, rows: Vec::new(), width }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.f;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if !f.is_zero(&c) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Scalar>) {
        let f = self.f;
        let v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return;
        };
        let inv = f.inv(&v[p]).unwrap();
        let v: Vec<Scalar> = v.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if !f.is_zero(&c) {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push((p, v));
    }
}
