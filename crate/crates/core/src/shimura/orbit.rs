use serde::{Deserialize, Serialize};

use super::cascade::{CascadePiece, PieceKind};
use super::polygon::{NewtonPolygon, SlopeSegment};
use crate::error::{Error, Result};

/// A sigma-orbit of p-adic embeddings together with its multiplicative type.
///
/// `f[i]` is the rank of the Hodge piece at the `i`-th embedding of the orbit,
/// listed in Frobenius order. For a self-dual orbit, conjugation acts on the
/// orbit as the rotation by `e/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrbitWire")]
pub struct Orbit {
    n: u32,
    f: Vec<u32>,
    self_dual: bool,
}

#[derive(Deserialize)]
struct OrbitWire {
    n: u32,
    f: Vec<u32>,
    #[serde(default)]
    self_dual: bool,
}

impl TryFrom<OrbitWire> for Orbit {
    type Error = Error;

    fn try_from(w: OrbitWire) -> Result<Self> {
        Orbit::new(w.n, w.f, w.self_dual)
    }
}

/// The distinct values `F_0 = n > F_1 > ... > F_s > F_{s+1} = 0` of the
/// multiplicative type and how many embeddings take each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultTypeLevels {
    values: Vec<u32>,
    counts: Vec<u32>,
}

impl MultTypeLevels {
    /// Index `s` of the last slope.
    pub fn s(&self) -> usize {
        self.values.len() - 2
    }

    pub fn value(&self, i: usize) -> u32 {
        self.values[i]
    }

    pub fn count(&self, i: usize) -> u32 {
        self.counts[i]
    }

    /// Multiplicity `F_i - F_{i+1}` of the `i`-th slope.
    pub fn multiplicity(&self, i: usize) -> u32 {
        self.values[i] - self.values[i + 1]
    }

    /// The `i`-th slope, `d_0 + ... + d_i`.
    pub fn slope(&self, i: usize) -> u32 {
        self.counts[..=i].iter().sum()
    }

    /// The level `i` with `F_i = value`.
    pub fn level_of(&self, value: u32) -> usize {
        self.values.iter().position(|&v| v == value).expect("value of the multiplicative type")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrRank {
    pub i: usize,
    pub j: usize,
    pub rank: u64,
}

/// Ranks of the graded pieces indexed by pairs of slope indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrRankTable {
    pub size: usize,
    pub entries: Vec<GrRank>,
}

impl GrRankTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j].rank
    }

    /// Sum over the strictly lower triangle.
    pub fn lower_sum(&self) -> u64 {
        self.entries.iter().filter(|r| r.j < r.i).map(|r| r.rank).sum()
    }
}

impl Orbit {
    pub fn new(n: u32, f: Vec<u32>, self_dual: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrbit("rank n must be at least 1".into()));
        }
        if f.is_empty() {
            return Err(Error::InvalidOrbit("orbit must contain at least one embedding".into()));
        }
        if let Some(&bad) = f.iter().find(|&&x| x > n) {
            return Err(Error::InvalidOrbit(format!("multiplicative type value {bad} exceeds n = {n}")));
        }
        let orbit = Orbit { n, f, self_dual };
        if self_dual {
            let e = orbit.e();
            if !e.is_multiple_of(2) {
                return Err(Error::InvalidOrbit(format!(
                    "a self-dual orbit has even size, got e = {e}"
                )));
            }
            let h = e / 2;
            if let Some(i) = (0..e).find(|&i| orbit.f[(i + h) % e] != n - orbit.f[i]) {
                return Err(Error::InvalidOrbit(format!(
                    "self-dual orbit needs f[{}] = n - f[{i}]",
                    (i + h) % e
                )));
            }
        }
        Ok(orbit)
    }

    pub fn e(&self) -> usize {
        self.f.len()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mult_type(&self) -> &[u32] {
        &self.f
    }

    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    /// Position of the conjugate embedding inside a self-dual orbit.
    pub fn conjugate_position(&self, position: usize) -> Option<usize> {
        self.self_dual.then(|| (position + self.e() / 2) % self.e())
    }

    /// True when no embedding has `f` equal to `0` or `n`; these are the
    /// orbits carrying formal multiplicative pieces.
    pub fn is_interior(&self) -> bool {
        self.f.iter().all(|&x| x != 0 && x != self.n)
    }

    /// Slopes `a_j = #{tau : f(tau) > n - j}` for `j = 1..n`, collected.
    pub fn newton_slopes(&self) -> NewtonPolygon {
        let n = self.n;
        NewtonPolygon::from_slope_multiset(
            (1..=n).map(|j| self.f.iter().filter(|&&x| x > n - j).count() as u32),
        )
    }

    pub fn levels(&self) -> MultTypeLevels {
        let mut interior: Vec<u32> =
            self.f.iter().copied().filter(|&x| x >= 1 && x < self.n).collect();
        interior.sort_unstable_by(|a, b| b.cmp(a));
        interior.dedup();
        let mut values = Vec::with_capacity(interior.len() + 2);
        values.push(self.n);
        values.extend(interior);
        values.push(0);
        let counts =
            values.iter().map(|&v| self.f.iter().filter(|&&x| x == v).count() as u32).collect();
        MultTypeLevels { values, counts }
    }

    /// The same polygon computed level by level: slope `d_0 + ... + d_i` with
    /// multiplicity `F_i - F_{i+1}`.
    pub fn newton_from_multtype(&self) -> NewtonPolygon {
        let lv = self.levels();
        let segments = (0..=lv.s())
            .map(|i| SlopeSegment { slope: lv.slope(i), multiplicity: lv.multiplicity(i) })
            .filter(|s| s.multiplicity > 0)
            .collect();
        NewtonPolygon { segments }
    }

    /// The orbit with type `n - f`.
    pub fn dual(&self) -> Orbit {
        Orbit { n: self.n, f: self.f.iter().map(|&x| self.n - x).collect(), self_dual: self.self_dual }
    }

    /// True iff every slope is `0` or `e`.
    pub fn is_ordinary(&self) -> bool {
        let e = self.e() as u32;
        self.newton_slopes().slopes().all(|s| s == 0 || s == e)
    }

    fn middle_slope_check(&self, lv: &MultTypeLevels) -> Result<()> {
        let e = self.e() as u32;
        if self.self_dual && e.is_multiple_of(2) && (0..=lv.s()).any(|i| 2 * lv.slope(i) == e) {
            return Err(Error::SlopeEHalf { orbit: 0, half: e / 2 });
        }
        Ok(())
    }

    /// Sizes of the GL blocks of the Levi factor, highest slope first.
    pub fn levi_shape(&self) -> Result<Vec<u32>> {
        let lv = self.levels();
        let s = lv.s();
        if !self.self_dual {
            return Ok((0..=s).rev().map(|t| lv.multiplicity(t)).collect());
        }
        self.middle_slope_check(&lv)?;
        if !(s + 1).is_multiple_of(2) {
            return Err(Error::OddSlopeCount { orbit: 0, count: s + 1 });
        }
        Ok((s.div_ceil(2)..=s).rev().map(|t| lv.multiplicity(t)).collect())
    }

    /// Block sizes `(m_s, ..., m_{i_tau})` of the embedding at `position`,
    /// where `f(tau) = F_{i_tau}`. Empty when `f(tau) = 0`.
    pub fn block_sizes(&self, position: usize) -> Vec<u32> {
        let lv = self.levels();
        let i_tau = lv.level_of(self.f[position]);
        (i_tau..=lv.s()).rev().map(|t| lv.multiplicity(t)).collect()
    }

    /// Index, in slope numbering, of each block returned by
    /// [`block_sizes`](Self::block_sizes).
    pub fn block_slope_indices(&self, position: usize) -> Vec<usize> {
        let lv = self.levels();
        let i_tau = lv.level_of(self.f[position]);
        (i_tau..=lv.s()).rev().collect()
    }

    /// `rank(i, j) = m_i m_j (a_i - a_j)` for `j < i`, zero otherwise.
    pub fn gr_ranks(&self) -> GrRankTable {
        let lv = self.levels();
        let size = lv.s() + 1;
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let rank = if j < i {
                    lv.multiplicity(i) as u64
                        * lv.multiplicity(j) as u64
                        * (lv.slope(i) - lv.slope(j)) as u64
                } else {
                    0
                };
                entries.push(GrRank { i, j, rank });
            }
        }
        GrRankTable { size, entries }
    }

    /// Number of free canonical parameters, `sum_tau f(tau) (n - f(tau))`.
    pub fn moonen_parameter_count(&self) -> u64 {
        self.f.iter().map(|&x| x as u64 * (self.n - x) as u64).sum()
    }

    /// The building blocks of the local moduli at this orbit.
    ///
    /// Every pair of slopes `a_j < a_i` contributes a piece for a non-self-dual
    /// orbit. For a self-dual orbit only pairs in the lower half contribute,
    /// together with the diagonal pieces `(s - j, j)`.
    pub fn cascade(&self, orbit_index: usize) -> Result<Vec<CascadePiece>> {
        let lv = self.levels();
        let s = lv.s();
        let e = self.e() as u32;
        let piece = |i: usize, j: usize, diagonal: bool| {
            let (upper, lower) = (lv.slope(i), lv.slope(j));
            CascadePiece {
                orbit: orbit_index,
                upper_index: i,
                lower_index: j,
                upper,
                lower,
                dimension: upper - lower,
                height: e,
                multiplicity: lv.multiplicity(i) as u64 * lv.multiplicity(j) as u64,
                kind: PieceKind::classify(upper, lower, e),
                diagonal,
            }
        };
        let mut out = Vec::new();
        if !self.self_dual {
            for i in 1..=s {
                for j in 0..i {
                    out.push(piece(i, j, false));
                }
            }
            return Ok(out);
        }
        self.middle_slope_check(&lv).map_err(|err| err.at_orbit(orbit_index))?;
        for i in 1..=s / 2 {
            for j in 0..i {
                out.push(piece(i, j, false));
            }
        }
        for j in (0..=s).filter(|&j| 2 * j < s) {
            out.push(piece(s - j, j, true));
        }
        Ok(out)
    }
}

impl Error {
    /// Attaches an orbit index to orbit-level errors.
    pub fn at_orbit(self, orbit: usize) -> Self {
        match self {
            Error::SlopeEHalf { half, .. } => Error::SlopeEHalf { orbit, half },
            Error::OddSlopeCount { count, .. } => Error::OddSlopeCount { orbit, count },
            other => other,
        }
    }
}
