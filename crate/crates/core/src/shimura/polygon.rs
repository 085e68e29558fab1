use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeSegment {
    /// Integer slope in `[0, e]`; the rational slope is `slope / e`.
    pub slope: u32,
    pub multiplicity: u32,
}

/// A Newton polygon as its distinct integer slopes with multiplicities,
/// strictly increasing in slope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<SlopeSegment>,
}

impl NewtonPolygon {
    /// Collects a multiset of slopes into segments. Order of the input does
    /// not matter.
    pub fn from_slope_multiset(slopes: impl IntoIterator<Item = u32>) -> Self {
        let mut all: Vec<u32> = slopes.into_iter().collect();
        all.sort_unstable();
        let mut segments: Vec<SlopeSegment> = Vec::new();
        for s in all {
            match segments.last_mut() {
                Some(seg) if seg.slope == s => seg.multiplicity += 1,
                _ => segments.push(SlopeSegment { slope: s, multiplicity: 1 }),
            }
        }
        NewtonPolygon { segments }
    }

    pub fn slopes(&self) -> impl Iterator<Item = u32> + '_ {
        self.segments.iter().map(|s| s.slope)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = u32> + '_ {
        self.segments.iter().map(|s| s.multiplicity)
    }

    /// Number of distinct slopes, `s + 1`.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.multiplicities().sum()
    }

    pub fn has_slope(&self, slope: u32) -> bool {
        self.segments.iter().any(|s| s.slope == slope)
    }

    /// The polygon with every slope `l` replaced by `e - l`.
    pub fn reflected(&self, e: u32) -> Self {
        let mut segments: Vec<SlopeSegment> = self
            .segments
            .iter()
            .map(|s| SlopeSegment { slope: e - s.slope, multiplicity: s.multiplicity })
            .collect();
        segments.reverse();
        NewtonPolygon { segments }
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.segments.iter().map(|s| format!("{}:{}", s.slope, s.multiplicity)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
