//! PEL data at `p` and the invariants of its mu-ordinary Newton stratum.

mod cascade;
mod datum;
mod orbit;
mod polygon;

pub use cascade::{CascadePiece, PieceKind};
pub use datum::{DatumFile, Embedding, OrbitEntry, PelDatum, DATUM_VERSION};
pub use orbit::{GrRank, GrRankTable, MultTypeLevels, Orbit};
pub use polygon::{NewtonPolygon, SlopeSegment};
