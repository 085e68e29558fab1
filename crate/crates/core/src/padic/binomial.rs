use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::modular::ResidueRing;
use super::series::{PrecisionContext, UExpansion};
use crate::error::{Error, Result};

/// `C(a, k) mod p^M`, exact for any `a`.
///
/// The falling factorial `a (a-1) ... (a-k+1)` equals `k! C(a, k)`, so it is
/// computed modulo `p^M k!` and divided by `k!` afterwards.
pub fn binomial_mod(a: u64, k: u32, ring: &ResidueRing) -> u64 {
    if (k as u64) > a {
        return 0;
    }
    let fact: u128 = (1..=k as u128).product();
    let q = ring.modulus() as u128 * fact;
    let mut falling: u128 = 1 % q;
    for i in 0..k as u64 {
        falling = falling * ((a - i) as u128 % q) % q;
    }
    ((falling / fact) % ring.modulus() as u128) as u64
}

/// A finite combination `sum coeff * prod_c (1 + u_c)^{a_c}`.
///
/// The `(1+u)^a` are eigenvectors of the theta operators, which is why
/// seeds of measures and most theta computations are carried in this basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BinomialWire", into = "BinomialWire")]
pub struct BinomialVector {
    ctx: Arc<PrecisionContext>,
    terms: BTreeMap<Vec<u64>, u64>,
}

#[derive(Serialize, Deserialize)]
struct BinomialWire {
    p: u64,
    precision: u32,
    degree: u32,
    coords: Vec<String>,
    terms: Vec<BinomialTermWire>,
}

#[derive(Serialize, Deserialize)]
struct BinomialTermWire {
    exponents: Vec<u64>,
    coeff: i64,
}

impl TryFrom<BinomialWire> for BinomialVector {
    type Error = Error;

    fn try_from(w: BinomialWire) -> Result<Self> {
        let ctx = Arc::new(PrecisionContext::new(w.p, w.precision, w.degree, w.coords)?);
        BinomialVector::from_terms(ctx, w.terms.into_iter().map(|t| (t.exponents, t.coeff)))
    }
}

impl From<BinomialVector> for BinomialWire {
    fn from(v: BinomialVector) -> Self {
        let ctx = &*v.ctx;
        BinomialWire {
            p: ctx.prime(),
            precision: ctx.precision(),
            degree: ctx.degree(),
            coords: ctx.coords().to_vec(),
            terms: v
                .terms
                .into_iter()
                .map(|(exponents, c)| BinomialTermWire { exponents, coeff: c as i64 })
                .collect(),
        }
    }
}

impl BinomialVector {
    pub fn zero(ctx: Arc<PrecisionContext>) -> Self {
        BinomialVector { ctx, terms: BTreeMap::new() }
    }

    /// Builds a vector from `(exponent tuple, coefficient)` pairs; repeated
    /// exponent tuples accumulate.
    pub fn from_terms(
        ctx: Arc<PrecisionContext>,
        terms: impl IntoIterator<Item = (Vec<u64>, i64)>,
    ) -> Result<Self> {
        let ring = *ctx.ring();
        let mut map: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != ctx.arity() {
                return Err(Error::ExponentLength { got: exps.len(), expected: ctx.arity() });
            }
            let e = map.entry(exps).or_insert(0);
            *e = ring.add(*e, ring.reduce(c));
        }
        map.retain(|_, c| *c != 0);
        Ok(BinomialVector { ctx, terms: map })
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn ctx_handle(&self) -> Arc<PrecisionContext> {
        Arc::clone(&self.ctx)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u64], u64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Replaces every coefficient `c` of `(1+u)^a` by `c * factor(a)`.
    pub fn map_coefficients(&self, factor: impl Fn(&[u64]) -> u64) -> Self {
        let ring = self.ctx.ring();
        let mut terms: BTreeMap<Vec<u64>, u64> = self
            .terms
            .iter()
            .map(|(a, &c)| (a.clone(), ring.mul(c, ring.reduce_u64(factor(a)))))
            .collect();
        terms.retain(|_, c| *c != 0);
        BinomialVector { ctx: Arc::clone(&self.ctx), terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        let ring = self.ctx.ring();
        let mut terms = self.terms.clone();
        for (k, &v) in &other.terms {
            let e = terms.entry(k.clone()).or_insert(0);
            *e = ring.add(*e, v);
        }
        terms.retain(|_, c| *c != 0);
        Ok(BinomialVector { ctx: Arc::clone(&self.ctx), terms })
    }

    pub fn scale(&self, c: i64) -> Self {
        let r = self.ctx.ring().reduce(c);
        self.map_coefficients(|_| r)
    }

    /// Expands each `prod_c (1+u_c)^{a_c}` by the binomial theorem,
    /// truncating at the degree bound.
    pub fn to_series(&self) -> UExpansion {
        let ctx = Arc::clone(&self.ctx);
        let ring = *ctx.ring();
        let bound = ctx.degree();
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (a, &c) in &self.terms {
            let rows: Vec<Vec<u64>> = a
                .iter()
                .map(|&ac| (0..=bound).map(|k| binomial_mod(ac, k, &ring)).collect())
                .collect();
            let mut exps = vec![0u32; a.len()];
            expand_into(&rows, 0, bound, c, &ring, &mut exps, &mut acc);
        }
        UExpansion::from_terms_truncating(ctx, acc)
    }
}

fn expand_into(
    rows: &[Vec<u64>],
    i: usize,
    budget: u32,
    c: u64,
    ring: &ResidueRing,
    exps: &mut Vec<u32>,
    acc: &mut BTreeMap<Vec<u32>, u64>,
) {
    if c == 0 {
        return;
    }
    if i == rows.len() {
        let e = acc.entry(exps.clone()).or_insert(0);
        *e = ring.add(*e, c);
        return;
    }
    for k in 0..=budget {
        let b = rows[i][k as usize];
        if b == 0 {
            continue;
        }
        exps[i] = k;
        expand_into(rows, i + 1, budget - k, ring.mul(c, b), ring, exps, acc);
    }
    exps[i] = 0;
}
