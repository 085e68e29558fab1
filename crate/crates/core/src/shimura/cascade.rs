use serde::{Deserialize, Serialize};

/// Type of the formal group underlying a cascade piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// Slopes `(0, e)`: copies of the formal multiplicative group.
    Multiplicative,
    /// Adjacent slopes `(a, a + 1)`: a Lubin-Tate module of slope `1/e`.
    LubinTate,
    General,
}

impl PieceKind {
    /// Multiplicative takes precedence when `e = 1`, where `(0, 1)` is both.
    pub fn classify(upper: u32, lower: u32, e: u32) -> Self {
        if lower == 0 && upper == e {
            PieceKind::Multiplicative
        } else if upper == lower + 1 {
            PieceKind::LubinTate
        } else {
            PieceKind::General
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadePiece {
    pub orbit: usize,
    pub upper_index: usize,
    pub lower_index: usize,
    pub upper: u32,
    pub lower: u32,
    /// `upper - lower`.
    pub dimension: u32,
    /// The orbit size `e`.
    pub height: u32,
    /// `m_i m_j`.
    pub multiplicity: u64,
    pub kind: PieceKind,
    /// Set for the self-dual pieces `(s - j, j)` of a self-dual orbit.
    pub diagonal: bool,
}
