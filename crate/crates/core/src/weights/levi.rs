use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::branching::{dim_irrep, restrict_to_blocks};
use super::dominant::{from_labelled, symmetry_flags, to_labelled, DominantWeight};
use super::partition::is_non_increasing;
use crate::error::{Error, Result};
use crate::shimura::PelDatum;

/// Per-embedding blocks keyed by embedding label.
pub type LabelledBlocks = BTreeMap<String, Vec<Vec<i64>>>;

/// A dominant weight of the mu-ordinary Levi: for each embedding, one
/// non-increasing tuple per GL block, highest slope first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeviWeight {
    blocks: Vec<Vec<Vec<i64>>>,
}

impl LeviWeight {
    pub fn new(datum: &PelDatum, blocks: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let w = LeviWeight { blocks };
        w.check_shape(datum)?;
        Ok(w)
    }

    pub fn zero(datum: &PelDatum) -> Result<Self> {
        let blocks = (0..datum.embeddings().len())
            .map(|i| {
                Ok(datum.levi_blocks(i)?.into_iter().map(|b| vec![0; b as usize]).collect())
            })
            .collect::<Result<_>>()?;
        Ok(LeviWeight { blocks })
    }

    /// Cuts each tuple of a weight of `J` into Levi blocks.
    pub fn from_dominant(kappa: &DominantWeight, datum: &PelDatum) -> Result<Self> {
        kappa.check_shape(datum)?;
        let mut blocks = Vec::with_capacity(kappa.entries().len());
        for (i, tuple) in kappa.entries().iter().enumerate() {
            let mut start = 0;
            let mut per = Vec::new();
            for b in datum.levi_blocks(i)? {
                per.push(tuple[start..start + b as usize].to_vec());
                start += b as usize;
            }
            blocks.push(per);
        }
        Ok(LeviWeight { blocks })
    }

    pub fn from_labels(datum: &PelDatum, map: &LabelledBlocks) -> Result<Self> {
        Self::new(datum, from_labelled(datum, map)?)
    }

    pub fn to_labels(&self, datum: &PelDatum) -> LabelledBlocks {
        to_labelled(datum, &self.blocks)
    }

    pub fn check_shape(&self, datum: &PelDatum) -> Result<()> {
        let expected = datum.embeddings().len();
        if self.blocks.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "{} embeddings given, datum has {expected}",
                self.blocks.len()
            )));
        }
        for (i, per) in self.blocks.iter().enumerate() {
            let sizes: Vec<usize> = per.iter().map(Vec::len).collect();
            let wanted: Vec<usize> = datum.levi_blocks(i)?.into_iter().map(|b| b as usize).collect();
            if sizes != wanted {
                return Err(Error::ShapeMismatch(format!(
                    "embedding {} needs blocks of sizes {wanted:?}, got {sizes:?}",
                    datum.label(i)
                )));
            }
            if !per.iter().all(|b| is_non_increasing(b)) {
                return Err(Error::ShapeMismatch(format!(
                    "a block at {} is not non-increasing",
                    datum.label(i)
                )));
            }
        }
        Ok(())
    }

    pub fn blocks(&self) -> &[Vec<Vec<i64>>] {
        &self.blocks
    }

    pub fn at(&self, idx: usize) -> &[Vec<i64>] {
        &self.blocks[idx]
    }

    /// Blocks concatenated back into one tuple per embedding.
    pub fn concatenated(&self) -> Vec<Vec<i64>> {
        self.blocks.iter().map(|per| per.iter().flatten().copied().collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|&x| x == 0)
    }

    /// Dimension of the irreducible Levi representation.
    pub fn dimension(&self) -> BigUint {
        self.blocks
            .iter()
            .flatten()
            .fold(BigUint::from(1u32), |acc, b| acc * dim_irrep(b).expect("dominant block"))
    }
}

/// The multiset `M_kappa` of Levi weights occurring in the restriction of
/// `rho_kappa`, ordered block by block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LRDecomposition {
    pub components: BTreeMap<LeviWeight, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LRComponent {
    pub weight: LabelledBlocks,
    pub multiplicity: u64,
}

impl LRDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn multiplicity(&self, w: &LeviWeight) -> u64 {
        self.components.get(w).copied().unwrap_or(0)
    }

    pub fn total_dimension(&self) -> BigUint {
        self.components.iter().map(|(w, &m)| w.dimension() * m).sum()
    }

    pub fn to_records(&self, datum: &PelDatum) -> Vec<LRComponent> {
        self.components
            .iter()
            .map(|(w, &m)| LRComponent { weight: w.to_labels(datum), multiplicity: m })
            .collect()
    }

    pub fn from_records(datum: &PelDatum, records: &[LRComponent]) -> Result<Self> {
        let mut components = BTreeMap::new();
        for r in records {
            *components.entry(LeviWeight::from_labels(datum, &r.weight)?).or_insert(0) +=
                r.multiplicity;
        }
        Ok(LRDecomposition { components })
    }
}

/// `M_kappa`: per-embedding restriction combined as a Cartesian product.
pub fn restrict_to_levi(kappa: &DominantWeight, datum: &PelDatum) -> Result<LRDecomposition> {
    kappa.check_shape(datum)?;
    let mut partial: Vec<(Vec<Vec<Vec<i64>>>, u64)> = vec![(Vec::new(), 1)];
    for (i, tuple) in kappa.entries().iter().enumerate() {
        let sizes: Vec<usize> = datum.levi_blocks(i)?.into_iter().map(|b| b as usize).collect();
        let local = restrict_to_blocks(tuple, &sizes)?;
        let mut next = Vec::with_capacity(partial.len() * local.len());
        for (prefix, m) in &partial {
            for (blocks, c) in &local {
                let mut w = prefix.clone();
                w.push(blocks.clone());
                next.push((w, m * c));
            }
        }
        partial = next;
    }
    let mut components = BTreeMap::new();
    for (blocks, m) in partial {
        *components.entry(LeviWeight { blocks }).or_insert(0) += m;
    }
    Ok(LRDecomposition { components })
}

pub fn is_multiplicity_free(kappa: &DominantWeight, datum: &PelDatum) -> Result<bool> {
    Ok(restrict_to_levi(kappa, datum)?.components.values().all(|&m| m == 1))
}

/// True iff `M_kappa1` and `M_kappa2` share no Levi weight.
pub fn weights_coprime(k1: &DominantWeight, k2: &DominantWeight, datum: &PelDatum) -> Result<bool> {
    for k in [k1, k2] {
        k.check_shape(datum)?;
        if !k.is_positive() {
            return Err(Error::NotPositive(format!("{:?}", k.entries())));
        }
    }
    if k1.size() != k2.size() {
        return Ok(true);
    }
    let a: BTreeSet<LeviWeight> = restrict_to_levi(k1, datum)?.components.into_keys().collect();
    let b = restrict_to_levi(k2, datum)?;
    Ok(b.components.keys().all(|w| !a.contains(w)))
}

/// Which block of an orbit the definition of simple weights leaves free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleReading {
    /// The block of the largest slope `s`.
    #[default]
    HighestSlope,
    /// The block of slope index `1`.
    LowestSlope,
}

/// Reasons why `lambda` is not simple; empty when it is.
pub fn simple_violations(
    lambda: &LeviWeight,
    datum: &PelDatum,
    reading: SimpleReading,
) -> Result<Vec<String>> {
    lambda.check_shape(datum)?;
    let mut out = Vec::new();
    let (positive, sum_symmetric, symmetric) = symmetry_flags(datum, &lambda.concatenated());
    if !symmetric {
        out.push(
            match (positive, sum_symmetric) {
                (false, _) => "not positive",
                (true, false) => "not sum-symmetric",
                _ => "not symmetric",
            }
            .to_string(),
        );
    }
    for (idx, emb) in datum.embeddings().iter().enumerate() {
        let orbit = datum.orbit(emb.orbit);
        let slopes = orbit.block_slope_indices(emb.position);
        let free = match reading {
            SimpleReading::HighestSlope => orbit.levels().s(),
            SimpleReading::LowestSlope => 1,
        };
        for (block, t) in lambda.at(idx).iter().zip(slopes) {
            if block.iter().all(|&x| x == 0) {
                continue;
            }
            if !orbit.is_interior() {
                out.push(format!(
                    "{} lies in an orbit where f takes the value 0 or n but has a nonzero block",
                    datum.label(idx)
                ));
            } else if t != free {
                out.push(format!("{} has a nonzero block at slope index {t}", datum.label(idx)));
            }
        }
    }
    Ok(out)
}

pub fn is_simple(lambda: &LeviWeight, datum: &PelDatum, reading: SimpleReading) -> Result<bool> {
    Ok(simple_violations(lambda, datum, reading)?.is_empty())
}
