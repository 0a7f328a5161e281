use rayon::prelude::*;

use super::hom::{central_character, is_isomorphic, CentralCharacter};
use super::representation::Representation;
use crate::error::{Error, Result};
use crate::extcalc::ext1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibreFlag {
    AzumayaLike,
    Ramified,
}

impl FibreFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            FibreFlag::AzumayaLike => "azumaya-like",
            FibreFlag::Ramified => "ramified",
        }
    }
}

/// Family members sharing one central character.
#[derive(Debug, Clone)]
pub struct Fibre {
    pub character: CentralCharacter,
    /// Indices into the family, ascending.
    pub members: Vec<usize>,
    pub non_isomorphic: usize,
    pub flag: FibreFlag,
}

#[derive(Debug, Clone)]
pub struct FibreReport {
    /// In order of first appearance in the family.
    pub fibres: Vec<Fibre>,
    /// `ext1[i][j] = dim Ext¹(M_i, M_j)`.
    pub ext1: Vec<Vec<usize>>,
    pub muller_consistent: bool,
}

impl FibreReport {
    pub fn fibre_of(&self, member: usize) -> Option<usize> {
        self.fibres.iter().position(|f| f.members.contains(&member))
    }
}

/// Partitions a family of (asserted simple) modules by central character and
/// checks that nonzero extensions only occur inside a fibre.
pub fn classify_family(family: &[Representation], central: &[String]) -> Result<FibreReport> {
    if family.is_empty() {
        return Err(Error::DegenerateInput("empty family".into()));
    }
    for m in &family[1..] {
        family[0].same_algebra(m)?;
    }
    let chars: Vec<CentralCharacter> = family
        .par_iter()
        .map(|m| central_character(m, central))
        .collect::<Result<_>>()?;

    let n = family.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let dims: Vec<usize> = pairs
        .par_iter()
        .map(|&(i, j)| ext1(&family[i], &family[j]).map(|r| r.dim_ext1))
        .collect::<Result<_>>()?;
    let ext: Vec<Vec<usize>> = dims.chunks(n).map(<[usize]>::to_vec).collect();

    let mut groups: Vec<(CentralCharacter, Vec<usize>)> = Vec::new();
    for (i, c) in chars.iter().enumerate() {
        match groups.iter_mut().find(|(k, _)| k == c) {
            Some((_, members)) => members.push(i),
            None => groups.push((c.clone(), vec![i])),
        }
    }

    let mut fibres = Vec::with_capacity(groups.len());
    for (character, members) in groups {
        let mut reps: Vec<usize> = Vec::new();
        for &i in &members {
            let mut new = true;
            for &r in &reps {
                if is_isomorphic(&family[r], &family[i])? {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(i);
            }
        }
        let off_diagonal = members
            .iter()
            .any(|&i| members.iter().any(|&j| i != j && ext[i][j] != 0));
        let flag = if reps.len() >= 2 || off_diagonal { FibreFlag::Ramified } else { FibreFlag::AzumayaLike };
        fibres.push(Fibre { character, members, non_isomorphic: reps.len(), flag });
    }

    let fibre_index: Vec<usize> = (0..n)
        .map(|i| fibres.iter().position(|f| f.members.contains(&i)).unwrap())
        .collect();
    let across_ok = pairs
        .iter()
        .all(|&(i, j)| ext[i][j] == 0 || fibre_index[i] == fibre_index[j]);
    // Copies of one isomorphism class need no linking extension.
    let within_ok = fibres.iter().filter(|f| f.non_isomorphic > 1).all(|f| {
        f.members
            .iter()
            .any(|&i| f.members.iter().any(|&j| i != j && ext[i][j] != 0))
    });
    Ok(FibreReport { fibres, ext1: ext, muller_consistent: across_ok && within_ok })
}
