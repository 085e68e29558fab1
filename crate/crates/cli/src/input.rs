use std::collections::BTreeMap;

use muord::shimura::DatumFile;
use muord::theta::{MeasureHandle, SlotRecord};
use muord::padic::UExpansion;
use muord::weights::{LabelledBlocks, LabelledTuples, SimpleReading};
use serde::{Deserialize, Serialize};

/// `restrict` takes either a bare `GL_N` weight with block sizes, or a datum
/// with a dominant weight keyed by embedding label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<LabelledTuples>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyInput {
    pub datum: DatumFile,
    pub kappa: LabelledTuples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleInput {
    pub datum: DatumFile,
    pub lambda: LabelledBlocks,
    #[serde(default)]
    pub reading: SimpleReading,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharCongInput {
    pub p: u64,
    pub m: u32,
    pub kappa: Vec<i64>,
    pub kappa_prime: Vec<i64>,
}

pub type AssignmentRecords = BTreeMap<String, SlotRecord>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaInput {
    pub datum: DatumFile,
    pub lambda: LabelledBlocks,
    pub assignment: AssignmentRecords,
    #[serde(default)]
    pub reading: SimpleReading,
    pub series: UExpansion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaCongInput {
    pub datum: DatumFile,
    pub lambda: LabelledBlocks,
    pub lambda_prime: LabelledBlocks,
    pub m: u32,
    pub assignment: AssignmentRecords,
    #[serde(default)]
    pub reading: SimpleReading,
    pub series: UExpansion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsInput {
    pub datum: DatumFile,
    pub assignment: AssignmentRecords,
    #[serde(default)]
    pub reading: SimpleReading,
    pub measure: MeasureHandle,
    pub weights: Vec<LabelledBlocks>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerTerm {
    pub coeff: i64,
    pub weight: LabelledBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerInput {
    pub datum: DatumFile,
    pub assignment: AssignmentRecords,
    #[serde(default)]
    pub reading: SimpleReading,
    pub measure: MeasureHandle,
    pub m: u32,
    pub terms: Vec<KummerTerm>,
}
