//! Brute-force `Ext¹` over small prime fields.
//!
//! Shares nothing with the linear-algebra path beyond reading the module
//! matrices: derivations are counted by enumerating every tuple and applying
//! the Leibniz rule word by word in plain `u64` arithmetic, inner derivations
//! by enumerating every `θ`. Then `dim Ext¹ = log_p(#Der / #Inn)`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactfield::{FieldKind, Scalar};
use crate::repmod::Representation;

pub const ORACLE_MAX_UNKNOWNS: usize = 12;
pub const ORACLE_MAX_CANDIDATES: u128 = 2_000_000;

type Mat = Vec<Vec<u64>>;

fn to_u64(m: &crate::exactfield::ExactMatrix) -> Mat {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| match s {
                    Scalar::Modular(c) => c[0],
                    Scalar::Rational(_) => unreachable!("checked prime field"),
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0u64; c]; r];
    for i in 0..r {
        for t in 0..k {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            for j in 0..c {
                out[i][j] = (out[i][j] + x * b[t][j]) % p;
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut Mat, b: &Mat, c: u64, p: u64) {
    for (ra, rb) in acc.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x = (*x + c * y) % p;
        }
    }
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

/// `δ(w)` for a word, peeling letters from the left:
/// `δ(u·g) = δ(u)·ρ_M(g) + ρ_N(u)·D_g`.
fn leibniz(word: &[usize], d: &[Mat], rm: &[Mat], rn: &[Mat], dn: usize, dm: usize, p: u64) -> Mat {
    let mut delta = vec![vec![0u64; dm]; dn];
    let mut prefix_n = identity(dn);
    for &g in word {
        let mut next = mat_mul(&delta, &rm[g], p);
        mat_add_scaled(&mut next, &mat_mul(&prefix_n, &d[g], p), 1, p);
        delta = next;
        prefix_n = mat_mul(&prefix_n, &rn[g], p);
    }
    delta
}

fn unflatten(digits: &[u64], gens: usize, dn: usize, dm: usize) -> Vec<Mat> {
    (0..gens)
        .map(|g| (0..dn).map(|a| digits[g * dn * dm + a * dm..g * dn * dm + (a + 1) * dm].to_vec()).collect())
        .collect()
}

fn increment(digits: &mut [u64], p: u64) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return;
        }
        *d = 0;
    }
}

/// Dimension of `Ext¹(M, N)` by exhaustive enumeration. Only prime fields
/// and tiny search spaces are accepted; otherwise [`Error::TooLarge`].
pub fn ext1_bruteforce(m: &Representation, n: &Representation) -> Result<usize> {
    m.same_algebra(n)?;
    let f = m.field();
    if f.kind() != FieldKind::PrimeField {
        return Err(Error::Unsupported("the enumeration oracle needs a prime field".into()));
    }
    let p = f.characteristic();
    let alg = m.algebra();
    let (dm, dn, gens) = (m.dim(), n.dim(), alg.num_generators());
    let unknowns = gens * dn * dm;
    let candidates = u128::from(p).checked_pow(unknowns as u32);
    if unknowns > ORACLE_MAX_UNKNOWNS || candidates.map_or(true, |c| c > ORACLE_MAX_CANDIDATES) {
        return Err(Error::TooLarge(format!("{p}^{unknowns} candidate derivations")));
    }
    let rm: Vec<Mat> = m.matrices().iter().map(to_u64).collect();
    let rn: Vec<Mat> = n.matrices().iter().map(to_u64).collect();
    let relations: Vec<Vec<(Vec<usize>, u64)>> = alg
        .relations
        .iter()
        .map(|r| {
            r.terms()
                .map(|(w, c)| match c {
                    Scalar::Modular(c) => (w.letters().to_vec(), c[0]),
                    Scalar::Rational(_) => unreachable!(),
                })
                .collect()
        })
        .collect();

    let mut derivations: u128 = 0;
    let mut digits = vec![0u64; unknowns];
    for _ in 0..candidates.unwrap() {
        let d = unflatten(&digits, gens, dn, dm);
        let ok = relations.iter().all(|rel| {
            let mut acc = vec![vec![0u64; dm]; dn];
            for (w, c) in rel {
                mat_add_scaled(&mut acc, &leibniz(w, &d, &rm, &rn, dn, dm, p), *c, p);
            }
            acc.iter().flatten().all(|&x| x == 0)
        });
        if ok {
            derivations += 1;
        }
        increment(&mut digits, p);
    }

    let mut inner: HashSet<Vec<u64>> = HashSet::new();
    let mut theta_digits = vec![0u64; dn * dm];
    for _ in 0..u128::from(p).pow((dn * dm) as u32) {
        let theta = unflatten(&theta_digits, 1, dn, dm).remove(0);
        let mut image = Vec::with_capacity(unknowns);
        for g in 0..gens {
            let mut t = mat_mul(&rn[g], &theta, p);
            mat_add_scaled(&mut t, &mat_mul(&theta, &rm[g], p), p - 1, p);
            image.extend(t.into_iter().flatten());
        }
        inner.insert(image);
        increment(&mut theta_digits, p);
    }

    let ratio = derivations / inner.len() as u128;
    let mut dim = 0;
    let mut power = 1u128;
    while power < ratio {
        power *= u128::from(p);
        dim += 1;
    }
    debug_assert_eq!(power, ratio);
    Ok(dim)
}
