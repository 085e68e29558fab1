use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::modular::ResidueRing;
use crate::error::{Error, Result};

/// Largest admissible `p^M`; keeps every intermediate product inside `u128`.
pub const MAX_MODULUS: u64 = 4_826_809; // 13^6
/// Largest admissible total-degree bound.
pub const MAX_DEGREE: u32 = 12;

/// Prime, coefficient precision, degree bound and coordinate labels shared by
/// every expansion that may be combined with another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ContextWire", into = "ContextWire")]
pub struct PrecisionContext {
    ring: ResidueRing,
    degree: u32,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ContextWire {
    p: u64,
    precision: u32,
    degree: u32,
    coords: Vec<String>,
}

impl TryFrom<ContextWire> for PrecisionContext {
    type Error = Error;

    fn try_from(w: ContextWire) -> Result<Self> {
        PrecisionContext::new(w.p, w.precision, w.degree, w.coords)
    }
}

impl From<PrecisionContext> for ContextWire {
    fn from(c: PrecisionContext) -> Self {
        ContextWire { p: c.prime(), precision: c.precision(), degree: c.degree, coords: c.coords }
    }
}

impl PrecisionContext {
    pub fn new<S: Into<String>>(
        p: u64,
        precision: u32,
        degree: u32,
        coords: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionOutOfRange { p, exponent: precision });
        }
        let ring = ResidueRing::new(p, precision)?;
        if ring.modulus() > MAX_MODULUS {
            return Err(Error::PrecisionOutOfRange { p, exponent: precision });
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { got: degree, max: MAX_DEGREE });
        }
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for c in &coords {
            if !seen.insert(c.as_str()) {
                return Err(Error::DuplicateCoordinate(c.clone()));
            }
        }
        Ok(PrecisionContext { ring, degree, coords })
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn precision(&self) -> u32 {
        self.ring.exponent()
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coord_index(&self, label: &str) -> Result<usize> {
        self.coords
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::UnknownCoordinate(label.to_string()))
    }
}

/// A multivariate expansion truncated at total degree `D` with coefficients
/// in `Z / p^M`.
///
/// Absent exponent vectors have coefficient zero; stored residues are always
/// nonzero and reduced.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionWire", into = "ExpansionWire")]
pub struct UExpansion {
    ctx: Arc<PrecisionContext>,
    coeffs: BTreeMap<Vec<u32>, u64>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionWire {
    #[serde(flatten)]
    ctx: ContextWire,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exponents: Vec<u32>,
    residue: u64,
}

impl TryFrom<ExpansionWire> for UExpansion {
    type Error = Error;

    fn try_from(w: ExpansionWire) -> Result<Self> {
        let ctx = Arc::new(PrecisionContext::try_from(w.ctx)?);
        let m = ctx.modulus();
        for t in &w.terms {
            if t.residue >= m {
                return Err(Error::InvalidDatum(format!(
                    "residue {} is not reduced modulo {m}",
                    t.residue
                )));
            }
        }
        UExpansion::from_terms(ctx, w.terms.into_iter().map(|t| (t.exponents, t.residue as i64)))
    }
}

impl From<UExpansion> for ExpansionWire {
    fn from(f: UExpansion) -> Self {
        let ctx = ContextWire::from((*f.ctx).clone());
        let terms = f
            .coeffs
            .into_iter()
            .map(|(exponents, residue)| TermWire { exponents, residue })
            .collect();
        ExpansionWire { ctx, terms }
    }
}

impl fmt::Debug for UExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UExpansion(mod {}; {})", self.ctx.modulus(), self)
    }
}

impl fmt::Display for UExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.ctx.coords)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
                .collect();
            match (mono.is_empty(), *c == 1) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl UExpansion {
    pub fn zero(ctx: Arc<PrecisionContext>) -> Self {
        UExpansion { ctx, coeffs: BTreeMap::new() }
    }

    pub fn constant(ctx: Arc<PrecisionContext>, c: i64) -> Self {
        let n = ctx.arity();
        let r = ctx.ring().reduce(c);
        let mut coeffs = BTreeMap::new();
        if r != 0 {
            coeffs.insert(vec![0; n], r);
        }
        UExpansion { ctx, coeffs }
    }

    pub fn one(ctx: Arc<PrecisionContext>) -> Self {
        Self::constant(ctx, 1)
    }

    /// The coordinate function `u_label` (zero when the degree bound is 0).
    pub fn variable(ctx: Arc<PrecisionContext>, label: &str) -> Result<Self> {
        let i = ctx.coord_index(label)?;
        let mut exps = vec![0; ctx.arity()];
        exps[i] = 1;
        if ctx.degree() == 0 {
            return Ok(Self::zero(ctx));
        }
        Self::from_terms(ctx, [(exps, 1)])
    }

    /// Builds an expansion from `(exponents, coefficient)` pairs; repeated
    /// exponents accumulate. Terms beyond the degree bound are an error.
    pub fn from_terms(
        ctx: Arc<PrecisionContext>,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        let ring = *ctx.ring();
        let mut coeffs: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (exps, c) in terms {
            check_exponents(&ctx, &exps)?;
            let entry = coeffs.entry(exps).or_insert(0);
            *entry = ring.add(*entry, ring.reduce(c));
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(UExpansion { ctx, coeffs })
    }

    /// Like [`from_terms`](Self::from_terms) but silently drops terms of
    /// total degree above the bound.
    pub fn from_terms_truncating(
        ctx: Arc<PrecisionContext>,
        terms: impl IntoIterator<Item = (Vec<u32>, u64)>,
    ) -> Self {
        let ring = *ctx.ring();
        let bound = ctx.degree();
        let mut coeffs: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (exps, c) in terms {
            debug_assert_eq!(exps.len(), ctx.arity());
            if exps.iter().sum::<u32>() > bound {
                continue;
            }
            let entry = coeffs.entry(exps).or_insert(0);
            *entry = ring.add(*entry, ring.reduce_u64(c));
        }
        coeffs.retain(|_, c| *c != 0);
        UExpansion { ctx, coeffs }
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn ctx_handle(&self) -> Arc<PrecisionContext> {
        Arc::clone(&self.ctx)
    }

    pub fn coefficient(&self, exps: &[u32]) -> u64 {
        self.coeffs.get(exps).copied().unwrap_or(0)
    }

    /// Nonzero terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest total degree of a nonzero term.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.iter().sum()).max()
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let ring = self.ctx.ring();
        let mut coeffs = self.coeffs.clone();
        for (k, &v) in &other.coeffs {
            let e = coeffs.entry(k.clone()).or_insert(0);
            *e = ring.add(*e, v);
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(UExpansion { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn neg(&self) -> Self {
        let ring = self.ctx.ring();
        let coeffs = self.coeffs.iter().map(|(k, &v)| (k.clone(), ring.neg(v))).collect();
        UExpansion { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        let ring = self.ctx.ring();
        self.scale_residue(ring.reduce(c))
    }

    pub fn scale_residue(&self, c: u64) -> Self {
        let ring = self.ctx.ring();
        let mut coeffs: BTreeMap<Vec<u32>, u64> =
            self.coeffs.iter().map(|(k, &v)| (k.clone(), ring.mul(v, c))).collect();
        coeffs.retain(|_, c| *c != 0);
        UExpansion { ctx: Arc::clone(&self.ctx), coeffs }
    }

    /// Cauchy product truncated at the degree bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let ring = self.ctx.ring();
        let bound = self.ctx.degree();
        let mut coeffs: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (a, &x) in &self.coeffs {
            let da: u32 = a.iter().sum();
            for (b, &y) in &other.coeffs {
                if da + b.iter().sum::<u32>() > bound {
                    continue;
                }
                let key: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let e = coeffs.entry(key).or_insert(0);
                *e = ring.add(*e, ring.mul(x, y));
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(UExpansion { ctx: Arc::clone(&self.ctx), coeffs })
    }

    /// Whether every coefficient of `self - other` vanishes modulo `p^m`.
    pub fn congruent(&self, other: &Self, m: u32) -> Result<bool> {
        self.same_ctx(other)?;
        let available = self.ctx.precision();
        if m > available {
            return Err(Error::InsufficientPrecision { requested: m, available });
        }
        let pm = self.ctx.prime().pow(m);
        let diff = self.sub(other)?;
        Ok(diff.coeffs.values().all(|c| c % pm == 0))
    }

    /// Drops every term of total degree above `degree`.
    pub fn truncated(&self, degree: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| k.iter().sum::<u32>() <= degree)
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        UExpansion { ctx: Arc::clone(&self.ctx), coeffs }
    }
}

fn check_exponents(ctx: &PrecisionContext, exps: &[u32]) -> Result<()> {
    if exps.len() != ctx.arity() {
        return Err(Error::ExponentLength { got: exps.len(), expected: ctx.arity() });
    }
    let degree: u32 = exps.iter().sum();
    if degree > ctx.degree() {
        return Err(Error::DegreeExceeded { degree, bound: ctx.degree() });
    }
    Ok(())
}
