use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::PrecisionContext;
use crate::shimura::PelDatum;
use crate::weights::{simple_violations, LeviWeight, SimpleReading};

/// Entry `entry` of the free block of the simple weight at one embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub embedding: usize,
    pub entry: usize,
}

/// File form of a slot: the embedding is given by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotRecord {
    pub embedding: String,
    pub entry: usize,
}

/// Which weight entry drives each multiplicative coordinate.
///
/// Slots sit on embeddings of the chosen half of the datum (for a
/// self-dual orbit, the first half of its positions) in orbits where `f`
/// never takes the value `0` or `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateAssignment {
    ctx: Arc<PrecisionContext>,
    slots: Vec<Slot>,
    reading: SimpleReading,
}

/// Embeddings whose free-block entries are independent parameters.
pub fn parameter_embeddings(datum: &PelDatum) -> Vec<usize> {
    datum
        .embeddings()
        .iter()
        .enumerate()
        .filter(|(_, emb)| {
            let orbit = datum.orbit(emb.orbit);
            orbit.is_interior()
                && datum.in_o0(emb.orbit)
                && (!orbit.is_self_dual() || emb.position < orbit.e() / 2)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Position of the free block in the block list of `idx`, with its size.
pub fn free_block(datum: &PelDatum, idx: usize, reading: SimpleReading) -> Option<(usize, usize)> {
    let emb = datum.embeddings()[idx];
    let orbit = datum.orbit(emb.orbit);
    let target = match reading {
        SimpleReading::HighestSlope => orbit.levels().s(),
        SimpleReading::LowestSlope => 1,
    };
    let k = orbit.block_slope_indices(emb.position).into_iter().position(|t| t == target)?;
    Some((k, orbit.block_sizes(emb.position)[k] as usize))
}

impl CoordinateAssignment {
    pub fn new(
        ctx: Arc<PrecisionContext>,
        slots: Vec<Slot>,
        datum: &PelDatum,
        reading: SimpleReading,
    ) -> Result<Self> {
        if slots.len() != ctx.arity() {
            return Err(Error::AssignmentMismatch(format!(
                "{} slots for {} coordinates",
                slots.len(),
                ctx.arity()
            )));
        }
        let allowed = parameter_embeddings(datum);
        let mut seen = BTreeSet::new();
        for (c, slot) in slots.iter().enumerate() {
            let name = &ctx.coords()[c];
            if slot.embedding >= datum.embeddings().len() || !allowed.contains(&slot.embedding) {
                return Err(Error::AssignmentMismatch(format!(
                    "coordinate `{name}` sits on an embedding that carries no multiplicative parameter"
                )));
            }
            let size = free_block(datum, slot.embedding, reading).map_or(0, |(_, s)| s);
            if slot.entry >= size {
                return Err(Error::AssignmentMismatch(format!(
                    "coordinate `{name}` names entry {} of a free block of size {size}",
                    slot.entry
                )));
            }
            if !seen.insert(*slot) {
                return Err(Error::AssignmentMismatch(format!(
                    "coordinate `{name}` repeats a slot already in use"
                )));
            }
        }
        Ok(CoordinateAssignment { ctx, slots, reading })
    }

    pub fn from_records(
        ctx: Arc<PrecisionContext>,
        records: &BTreeMap<String, SlotRecord>,
        datum: &PelDatum,
        reading: SimpleReading,
    ) -> Result<Self> {
        for label in records.keys() {
            ctx.coord_index(label)?;
        }
        let mut slots = Vec::with_capacity(ctx.arity());
        for name in ctx.coords() {
            let rec = records.get(name).ok_or_else(|| {
                Error::AssignmentMismatch(format!("coordinate `{name}` has no slot"))
            })?;
            let embedding = datum.index_of_label(&rec.embedding).ok_or_else(|| {
                Error::AssignmentMismatch(format!("unknown embedding `{}`", rec.embedding))
            })?;
            slots.push(Slot { embedding, entry: rec.entry });
        }
        Self::new(ctx, slots, datum, reading)
    }

    pub fn to_records(&self, datum: &PelDatum) -> BTreeMap<String, SlotRecord> {
        self.ctx
            .coords()
            .iter()
            .zip(&self.slots)
            .map(|(c, s)| {
                (c.clone(), SlotRecord { embedding: datum.label(s.embedding), entry: s.entry })
            })
            .collect()
    }

    /// Assigns coordinates in order to every free-block entry of every
    /// parameter embedding.
    pub fn canonical(ctx: Arc<PrecisionContext>, datum: &PelDatum, reading: SimpleReading) -> Result<Self> {
        let slots: Vec<Slot> = parameter_embeddings(datum)
            .into_iter()
            .flat_map(|embedding| {
                let size = free_block(datum, embedding, reading).map_or(0, |(_, s)| s);
                (0..size).map(move |entry| Slot { embedding, entry })
            })
            .collect();
        Self::new(ctx, slots, datum, reading)
    }

    pub fn ctx(&self) -> &Arc<PrecisionContext> {
        &self.ctx
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn reading(&self) -> SimpleReading {
        self.reading
    }

    /// The exponent `k_c` read off `lambda` for each coordinate.
    pub fn exponents(&self, lambda: &LeviWeight, datum: &PelDatum) -> Result<Vec<u32>> {
        let v = simple_violations(lambda, datum, self.reading)?;
        if !v.is_empty() {
            return Err(Error::NotSimple(v.join("; ")));
        }
        let covered: BTreeSet<Slot> = self.slots.iter().copied().collect();
        for idx in parameter_embeddings(datum) {
            let Some((k, _)) = free_block(datum, idx, self.reading) else { continue };
            for (entry, &x) in lambda.at(idx)[k].iter().enumerate() {
                if x != 0 && !covered.contains(&Slot { embedding: idx, entry }) {
                    return Err(Error::AssignmentMismatch(format!(
                        "entry {entry} of the free block at {} is nonzero but drives no coordinate",
                        datum.label(idx)
                    )));
                }
            }
        }
        self.slots
            .iter()
            .map(|s| {
                let (k, _) = free_block(datum, s.embedding, self.reading).expect("validated slot");
                let x = lambda.at(s.embedding)[k][s.entry];
                u32::try_from(x).map_err(|_| Error::NotPositive(format!("entry {x}")))
            })
            .collect()
    }
}
