use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::orbit::Orbit;
use crate::error::{Error, Result};
use crate::padic::is_odd_prime;

pub const DATUM_VERSION: u32 = 1;

/// On-disk form of a datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub version: u32,
    pub p: u64,
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    pub n: u32,
    pub f: Vec<u32>,
    #[serde(default)]
    pub self_dual: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_of: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    pub name: String,
    pub orbit: Orbit,
    /// Index of the dual orbit; `None` for self-dual orbits.
    pub dual_of: Option<usize>,
}

/// A p-adic embedding, addressed by orbit and position inside the orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub orbit: usize,
    pub position: usize,
}

/// PEL data at an odd unramified prime `p` with `B = F`.
///
/// Orbits come in dual pairs (`f*` is `n - f` position by position) or are
/// self-dual. The first-listed orbit of each pair, together with every
/// self-dual orbit, forms the chosen half `O_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DatumFile", into = "DatumFile")]
pub struct PelDatum {
    p: u64,
    entries: Vec<OrbitEntry>,
    embeddings: Vec<Embedding>,
}

impl TryFrom<DatumFile> for PelDatum {
    type Error = Error;

    fn try_from(file: DatumFile) -> Result<Self> {
        if file.version != DATUM_VERSION {
            return Err(Error::InvalidDatum(format!(
                "unsupported datum version {} (expected {DATUM_VERSION})",
                file.version
            )));
        }
        let mut entries = Vec::with_capacity(file.orbits.len());
        for (i, rec) in file.orbits.into_iter().enumerate() {
            if let Some(e) = rec.e {
                if e != rec.f.len() {
                    return Err(Error::InvalidDatum(format!(
                        "orbit {i}: e = {e} but f has {} entries",
                        rec.f.len()
                    )));
                }
            }
            let orbit = Orbit::new(rec.n, rec.f, rec.self_dual)
                .map_err(|err| Error::InvalidDatum(format!("orbit {i}: {err}")))?;
            entries.push(OrbitEntry {
                name: rec.name.unwrap_or_else(|| format!("o{i}")),
                orbit,
                dual_of: rec.dual_of,
            });
        }
        // A pair may be declared from one side only.
        for i in 0..entries.len() {
            if let Some(j) = entries[i].dual_of.filter(|&j| j < entries.len() && j != i) {
                if entries[j].dual_of.is_none() && !entries[j].orbit.is_self_dual() {
                    entries[j].dual_of = Some(i);
                }
            }
        }
        PelDatum::new(file.p, entries)
    }
}

impl From<PelDatum> for DatumFile {
    fn from(d: PelDatum) -> Self {
        DatumFile {
            version: DATUM_VERSION,
            p: d.p,
            orbits: d
                .entries
                .into_iter()
                .map(|en| OrbitRecord {
                    name: Some(en.name),
                    e: Some(en.orbit.e()),
                    n: en.orbit.n(),
                    f: en.orbit.mult_type().to_vec(),
                    self_dual: en.orbit.is_self_dual(),
                    dual_of: en.dual_of,
                })
                .collect(),
        }
    }
}

impl PelDatum {
    pub fn new(p: u64, entries: Vec<OrbitEntry>) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if entries.is_empty() {
            return Err(Error::InvalidDatum("no orbits".into()));
        }
        let n = entries[0].orbit.n();
        let mut names = std::collections::BTreeSet::new();
        for (i, en) in entries.iter().enumerate() {
            if en.orbit.n() != n {
                return Err(Error::InvalidDatum(format!(
                    "orbit {i} has rank {} but orbit 0 has rank {n}",
                    en.orbit.n()
                )));
            }
            if !names.insert(en.name.as_str()) {
                return Err(Error::InvalidDatum(format!("duplicate orbit name `{}`", en.name)));
            }
            if en.orbit.is_self_dual() {
                if en.dual_of.is_some_and(|j| j != i) {
                    return Err(Error::InvalidDatum(format!(
                        "orbit {i} is self-dual but names orbit {} as its dual",
                        en.dual_of.unwrap()
                    )));
                }
                continue;
            }
            let j = en.dual_of.ok_or_else(|| {
                Error::InvalidDatum(format!("orbit {i} is not self-dual and has no registered dual"))
            })?;
            let partner = entries.get(j).ok_or_else(|| {
                Error::InvalidDatum(format!("orbit {i} names missing orbit {j} as its dual"))
            })?;
            if j == i || partner.orbit.is_self_dual() || partner.dual_of != Some(i) {
                return Err(Error::InvalidDatum(format!(
                    "orbits {i} and {j} are not registered as a dual pair"
                )));
            }
            if partner.orbit != en.orbit.dual() {
                return Err(Error::InvalidDatum(format!(
                    "orbit {j} must have type n - f of orbit {i}"
                )));
            }
        }
        let embeddings = entries
            .iter()
            .enumerate()
            .flat_map(|(orbit, en)| (0..en.orbit.e()).map(move |position| Embedding { orbit, position }))
            .collect();
        Ok(PelDatum { p, entries, embeddings })
    }

    /// A datum built from orbits of `O_0`, adding the dual of each
    /// non-self-dual orbit right after it.
    pub fn with_duals(p: u64, orbits: impl IntoIterator<Item = Orbit>) -> Result<Self> {
        let mut entries = Vec::new();
        for orbit in orbits {
            let i = entries.len();
            if orbit.is_self_dual() {
                entries.push(OrbitEntry { name: format!("o{i}"), orbit, dual_of: None });
            } else {
                let dual = orbit.dual();
                entries.push(OrbitEntry { name: format!("o{i}"), orbit, dual_of: Some(i + 1) });
                entries.push(OrbitEntry { name: format!("o{}", i + 1), orbit: dual, dual_of: Some(i) });
            }
        }
        PelDatum::new(p, entries)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.entries[0].orbit.n()
    }

    pub fn entries(&self) -> &[OrbitEntry] {
        &self.entries
    }

    pub fn orbit(&self, i: usize) -> &Orbit {
        &self.entries[i].orbit
    }

    pub fn orbit_count(&self) -> usize {
        self.entries.len()
    }

    /// Whether orbit `i` belongs to the chosen half `O_0`.
    pub fn in_o0(&self, i: usize) -> bool {
        match self.entries[i].dual_of {
            None => true,
            Some(j) => j == i || i < j,
        }
    }

    /// All embeddings, orbit by orbit.
    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn embedding_index(&self, emb: Embedding) -> Option<usize> {
        self.embeddings.iter().position(|&x| x == emb)
    }

    pub fn label(&self, idx: usize) -> String {
        let emb = self.embeddings[idx];
        format!("{}.{}", self.entries[emb.orbit].name, emb.position)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        (0..self.embeddings.len()).find(|&i| self.label(i) == label)
    }

    /// `f(tau)`, i.e. `a+` at `tau`.
    pub fn a_plus(&self, idx: usize) -> u32 {
        let emb = self.embeddings[idx];
        self.orbit(emb.orbit).mult_type()[emb.position]
    }

    /// Signature `(a+, a-)` at `tau`.
    pub fn signature(&self, idx: usize) -> (u32, u32) {
        let a = self.a_plus(idx);
        (a, self.n() - a)
    }

    /// Index of the conjugate embedding `tau*`.
    pub fn star(&self, idx: usize) -> usize {
        let emb = self.embeddings[idx];
        let entry = &self.entries[emb.orbit];
        let target = match entry.orbit.conjugate_position(emb.position) {
            Some(pos) => Embedding { orbit: emb.orbit, position: pos },
            None => Embedding { orbit: entry.dual_of.expect("validated pairing"), position: emb.position },
        };
        self.embedding_index(target).expect("validated pairing")
    }

    /// Levi block sizes at `tau`, highest slope first.
    pub fn levi_blocks(&self, idx: usize) -> Result<Vec<u32>> {
        let emb = self.embeddings[idx];
        let orbit = self.orbit(emb.orbit);
        if orbit.is_self_dual() {
            orbit.levi_shape().map_err(|e| e.at_orbit(emb.orbit))?;
        }
        Ok(orbit.block_sizes(emb.position))
    }

    /// Weight `lcm_o (p^{e_o} - 1)` of the mu-ordinary Hasse invariant.
    pub fn hasse_weight(&self) -> BigUint {
        self.entries.iter().fold(BigUint::from(1u32), |acc, en| {
            let term = BigUint::from(self.p).pow(en.orbit.e() as u32) - 1u32;
            acc.lcm(&term)
        })
    }
}
