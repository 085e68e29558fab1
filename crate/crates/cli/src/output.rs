use std::collections::BTreeMap;

use muord::padic::UExpansion;
use muord::shimura::{CascadePiece, GrRank, NewtonPolygon};
use muord::suites::SuiteReport;
use muord::theta::KummerOutcome;
use muord::weights::{HypothesisReport, LabelledBlocks, SimpleReading, WeightClassReport};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Big integers travel as decimal strings.
mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "snake_case")]
pub enum Output {
    Newton(Vec<OrbitPolygon>),
    Dual(Vec<DualCheck>),
    Levi(Vec<LeviRow>),
    Hasse(HasseReport),
    Grranks(Vec<OrbitGrRanks>),
    Cascade(Vec<OrbitCascade>),
    Params(ParamsReport),
    Restrict(BlockRestriction),
    RestrictLevi(LeviRestriction),
    Classify(ClassifyReport),
    Simple(SimpleReport),
    Charcong(CharCongReport),
    Theta(UExpansion),
    Thetacong(ThetaCongReport),
    Moments(Vec<MomentRow>),
    Kummer(KummerReport),
    Proptest(ProptestReport),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Proptest(r) if !r.passed => 3,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPolygon {
    pub orbit: String,
    pub e: usize,
    pub n: u32,
    pub f: Vec<u32>,
    pub polygon: NewtonPolygon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCheck {
    pub orbit: String,
    pub polygon: NewtonPolygon,
    pub dual: NewtonPolygon,
    pub reflected: NewtonPolygon,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRow {
    pub embedding: String,
    pub signature: (u32, u32),
    pub blocks: Vec<u32>,
    pub slope_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseReport {
    pub p: u64,
    pub orbit_lengths: Vec<usize>,
    #[serde(with = "decimal")]
    pub weight: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGrRanks {
    pub orbit: String,
    pub ranks: Vec<GrRank>,
    pub lower_sum: u64,
    pub parameter_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCascade {
    pub orbit: String,
    pub pieces: Vec<CascadePiece>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
    /// Embeddings that can carry a multiplicative coordinate.
    pub parameter_embeddings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRow {
    pub parts: Vec<Vec<i64>>,
    pub multiplicity: u64,
    #[serde(with = "decimal")]
    pub dimension: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRestriction {
    pub weight: Vec<i64>,
    pub blocks: Vec<usize>,
    #[serde(with = "decimal")]
    pub dimension: BigUint,
    #[serde(with = "decimal")]
    pub total: BigUint,
    pub rows: Vec<BlockRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRowWeight {
    pub weight: LabelledBlocks,
    pub multiplicity: u64,
    #[serde(with = "decimal")]
    pub dimension: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviRestriction {
    #[serde(with = "decimal")]
    pub dimension: BigUint,
    #[serde(with = "decimal")]
    pub total: BigUint,
    pub multiplicity_free: bool,
    pub components: Vec<LeviRowWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(flatten)]
    pub classes: WeightClassReport,
    pub multiplicity_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub reading: SimpleReading,
    pub simple: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharCongReport {
    pub modulus: u64,
    pub congruent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaCongReport {
    pub reading: SimpleReading,
    pub hypotheses: HypothesisReport,
    /// Absent when the hypotheses fail.
    pub congruent: Option<bool>,
    pub theta: Option<UExpansion>,
    pub theta_prime: Option<UExpansion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRow {
    pub weight: LabelledBlocks,
    pub moment: UExpansion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerReport {
    pub m: u32,
    pub outcome: KummerOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProptestReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_suites_exit_with_three() {
        let failing = SuiteReport {
            criterion: 1,
            name: "polygon equivalence".into(),
            cases: 2,
            failures: 1,
            examples: vec!["case 0".into()],
        };
        let report = ProptestReport { seed: 1, suites: vec![failing], passed: false };
        assert_eq!(Output::Proptest(report).exit_code(), 3);
        let ok = ProptestReport { seed: 1, suites: Vec::new(), passed: true };
        assert_eq!(Output::Proptest(ok).exit_code(), 0);
    }
}
