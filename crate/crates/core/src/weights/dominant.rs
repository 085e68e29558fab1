use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::partition::is_non_increasing;
use crate::error::{Error, Result};
use crate::shimura::PelDatum;

/// Per-embedding integer tuples keyed by embedding label, as read from and
/// written to files.
pub type LabelledTuples = BTreeMap<String, Vec<i64>>;

/// A dominant weight of `J = prod_tau GL_{a+_tau}`: one non-increasing tuple
/// of length `f(tau)` per embedding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight {
    entries: Vec<Vec<i64>>,
}

fn check_count(datum: &PelDatum, got: usize) -> Result<()> {
    let expected = datum.embeddings().len();
    if got != expected {
        return Err(Error::ShapeMismatch(format!("{got} embeddings given, datum has {expected}")));
    }
    Ok(())
}

/// Reorders labelled data into embedding order. Missing labels default to
/// `T::default()`; unknown labels are rejected.
pub(crate) fn from_labelled<T: Clone + Default>(
    datum: &PelDatum,
    map: &BTreeMap<String, T>,
) -> Result<Vec<T>> {
    for label in map.keys() {
        if datum.index_of_label(label).is_none() {
            return Err(Error::ShapeMismatch(format!("unknown embedding `{label}`")));
        }
    }
    Ok((0..datum.embeddings().len())
        .map(|i| map.get(&datum.label(i)).cloned().unwrap_or_default())
        .collect())
}

pub(crate) fn to_labelled<T: Clone>(datum: &PelDatum, items: &[T]) -> BTreeMap<String, T> {
    items.iter().enumerate().map(|(i, x)| (datum.label(i), x.clone())).collect()
}

impl DominantWeight {
    pub fn new(datum: &PelDatum, entries: Vec<Vec<i64>>) -> Result<Self> {
        let w = DominantWeight { entries };
        w.check_shape(datum)?;
        Ok(w)
    }

    pub fn zero(datum: &PelDatum) -> Self {
        Self::parallel(datum, 0)
    }

    /// The weight with every entry equal to `k`.
    pub fn parallel(datum: &PelDatum, k: i64) -> Self {
        let entries =
            (0..datum.embeddings().len()).map(|i| vec![k; datum.a_plus(i) as usize]).collect();
        DominantWeight { entries }
    }

    pub fn from_labels(datum: &PelDatum, map: &LabelledTuples) -> Result<Self> {
        Self::new(datum, from_labelled(datum, map)?)
    }

    pub fn to_labels(&self, datum: &PelDatum) -> LabelledTuples {
        to_labelled(datum, &self.entries)
    }

    pub fn check_shape(&self, datum: &PelDatum) -> Result<()> {
        check_count(datum, self.entries.len())?;
        for (i, tuple) in self.entries.iter().enumerate() {
            let a = datum.a_plus(i) as usize;
            if tuple.len() != a {
                return Err(Error::ShapeMismatch(format!(
                    "embedding {} needs {a} entries, got {}",
                    datum.label(i),
                    tuple.len()
                )));
            }
            if !is_non_increasing(tuple) {
                return Err(Error::ShapeMismatch(format!(
                    "entries at {} are not non-increasing",
                    datum.label(i)
                )));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn at(&self, idx: usize) -> &[i64] {
        &self.entries[idx]
    }

    /// All entries, embedding by embedding.
    pub fn flat(&self) -> Vec<i64> {
        self.entries.iter().flatten().copied().collect()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x >= 0)
    }

    /// `|kappa| = sum of all entries`.
    pub fn size(&self) -> i64 {
        self.entries.iter().flatten().sum()
    }

    /// Constant on each embedding.
    pub fn is_scalar(&self) -> bool {
        self.entries.iter().all(|t| t.windows(2).all(|p| p[0] == p[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightClassReport {
    pub positive: bool,
    pub scalar: bool,
    pub sum_symmetric: bool,
    pub symmetric: bool,
    /// `d_{kappa, tau}` keyed by embedding label.
    pub degrees: BTreeMap<String, i64>,
    /// `|kappa|`, present for positive weights.
    pub total: Option<i64>,
    /// `|kappa| / 2`, present for sum-symmetric weights.
    pub depth: Option<i64>,
}

/// Positivity, sum-symmetry and symmetry of per-embedding tuples.
pub(crate) fn symmetry_flags(datum: &PelDatum, tuples: &[Vec<i64>]) -> (bool, bool, bool) {
    let positive = tuples.iter().flatten().all(|&x| x >= 0);
    let sums: Vec<i64> = tuples.iter().map(|t| t.iter().sum()).collect();
    let sum_symmetric = positive && (0..tuples.len()).all(|i| sums[i] == sums[datum.star(i)]);
    let symmetric = sum_symmetric
        && (0..tuples.len()).all(|i| {
            let (a, b) = (&tuples[i], &tuples[datum.star(i)]);
            a.iter().zip(b).all(|(x, y)| x == y)
        });
    (positive, sum_symmetric, symmetric)
}

pub fn classify(kappa: &DominantWeight, datum: &PelDatum) -> Result<WeightClassReport> {
    kappa.check_shape(datum)?;
    let (positive, sum_symmetric, symmetric) = symmetry_flags(datum, &kappa.entries);
    let degrees = kappa
        .entries
        .iter()
        .enumerate()
        .map(|(i, t)| (datum.label(i), t.iter().sum()))
        .collect();
    let total = positive.then(|| kappa.size());
    Ok(WeightClassReport {
        positive,
        scalar: kappa.is_scalar(),
        sum_symmetric,
        symmetric,
        degrees,
        total,
        depth: if sum_symmetric { total.map(|t| t / 2) } else { None },
    })
}
