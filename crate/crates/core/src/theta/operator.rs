use std::collections::BTreeMap;
use std::sync::Arc;

use super::assignment::CoordinateAssignment;
use crate::error::{Error, Result};
use crate::padic::{BinomialVector, PrecisionContext, ResidueRing, UExpansion};
use crate::shimura::PelDatum;
use crate::weights::LeviWeight;

fn check_ctx(a: &PrecisionContext, b: &PrecisionContext) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `(1 + u_c) d/du_c` on the coordinate with index `c`.
pub fn theta_index(f: &UExpansion, c: usize) -> UExpansion {
    let ring = *f.ctx().ring();
    let mut out: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for (e, x) in f.terms() {
        let n = e[c];
        if n == 0 {
            continue;
        }
        let y = ring.mul(x, ring.reduce_u64(n as u64));
        let mut lower = e.to_vec();
        lower[c] -= 1;
        let slot = out.entry(lower).or_insert(0);
        *slot = ring.add(*slot, y);
        let slot = out.entry(e.to_vec()).or_insert(0);
        *slot = ring.add(*slot, y);
    }
    UExpansion::from_terms_truncating(f.ctx_handle(), out)
}

/// `(1 + u_c) d/du_c` on the coordinate labelled `label`. It lowers no
/// degree bound: the image of a term of degree `d` has degree at most `d`.
pub fn theta_coordinate(f: &UExpansion, label: &str) -> Result<UExpansion> {
    let c = f.ctx().coord_index(label)?;
    Ok(theta_index(f, c))
}

/// Matrix of `theta^k` on `1, u, ..., u^D`: entry `[n][n']` is the
/// coefficient of `u^{n'}` in `theta^k(u^n)`.
///
/// Obtained by passing to the basis `(1+u)^j`, where `theta` acts by `j`.
fn power_matrix(ring: &ResidueRing, degree: u32, k: u32) -> Vec<Vec<u64>> {
    let d = degree as usize;
    let mut pascal = vec![vec![0u64; d + 1]; d + 1];
    for n in 0..=d {
        pascal[n][0] = 1 % ring.modulus();
        for j in 1..=n {
            pascal[n][j] = ring.add(pascal[n - 1][j - 1], if j < n { pascal[n - 1][j] } else { 0 });
        }
    }
    let powers: Vec<u64> = (0..=d as u64).map(|j| ring.pow(j, k as u64)).collect();
    let mut t = vec![vec![0u64; d + 1]; d + 1];
    for (n, row) in t.iter_mut().enumerate() {
        for j in 0..=n {
            let to_basis = if (n - j) % 2 == 0 { pascal[n][j] } else { ring.neg(pascal[n][j]) };
            let scaled = ring.mul(to_basis, powers[j]);
            for (np, cell) in row.iter_mut().enumerate().take(j + 1) {
                *cell = ring.add(*cell, ring.mul(scaled, pascal[j][np]));
            }
        }
    }
    t
}

/// `prod_c theta_c^{k_c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaOperator {
    ctx: Arc<PrecisionContext>,
    exponents: Vec<u32>,
}

impl ThetaOperator {
    pub fn new(ctx: Arc<PrecisionContext>, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ctx.arity() {
            return Err(Error::ExponentLength { got: exponents.len(), expected: ctx.arity() });
        }
        Ok(ThetaOperator { ctx, exponents })
    }

    pub fn identity(ctx: Arc<PrecisionContext>) -> Self {
        let exponents = vec![0; ctx.arity()];
        ThetaOperator { ctx, exponents }
    }

    /// The operator of a simple weight, with exponents read off through
    /// `assignment`.
    pub fn from_weight(
        assignment: &CoordinateAssignment,
        lambda: &LeviWeight,
        datum: &PelDatum,
    ) -> Result<Self> {
        let exponents = assignment.exponents(lambda, datum)?;
        Ok(ThetaOperator { ctx: Arc::clone(assignment.ctx()), exponents })
    }

    pub fn ctx(&self) -> &Arc<PrecisionContext> {
        &self.ctx
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `prod_c a_c^{k_c} mod p^M`, the eigenvalue on `prod_c (1+u_c)^{a_c}`.
    pub fn eigenvalue(&self, a: &[u64]) -> u64 {
        let ring = self.ctx.ring();
        a.iter()
            .zip(&self.exponents)
            .fold(1 % ring.modulus(), |acc, (&ac, &k)| ring.mul(acc, ring.pow(ring.reduce_u64(ac), k as u64)))
    }

    /// Applies the operator to an expansion, one coordinate at a time.
    pub fn apply(&self, f: &UExpansion) -> Result<UExpansion> {
        check_ctx(&self.ctx, f.ctx())?;
        let ring = *self.ctx.ring();
        let mut current: BTreeMap<Vec<u32>, u64> =
            f.terms().map(|(e, x)| (e.to_vec(), x)).collect();
        for (c, &k) in self.exponents.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let t = power_matrix(&ring, self.ctx.degree(), k);
            let mut next: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            for (e, x) in current {
                let n = e[c] as usize;
                for (np, &coef) in t[n].iter().enumerate().take(n + 1) {
                    if coef == 0 {
                        continue;
                    }
                    let mut key = e.clone();
                    key[c] = np as u32;
                    let slot = next.entry(key).or_insert(0);
                    *slot = ring.add(*slot, ring.mul(x, coef));
                }
            }
            next.retain(|_, x| *x != 0);
            current = next;
        }
        Ok(UExpansion::from_terms_truncating(Arc::clone(&self.ctx), current))
    }

    /// Applies the operator by iterating [`theta_index`].
    pub fn apply_iterated(&self, f: &UExpansion) -> Result<UExpansion> {
        check_ctx(&self.ctx, f.ctx())?;
        let mut g = f.clone();
        for (c, &k) in self.exponents.iter().enumerate() {
            for _ in 0..k {
                g = theta_index(&g, c);
            }
        }
        Ok(g)
    }

    /// Scales each `(1+u)^a` by its eigenvalue.
    pub fn apply_binomial(&self, v: &BinomialVector) -> Result<BinomialVector> {
        check_ctx(&self.ctx, v.ctx())?;
        Ok(v.map_coefficients(|a| self.eigenvalue(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: u32, d: u32, coords: &[&str]) -> Arc<PrecisionContext> {
        Arc::new(PrecisionContext::new(p, m, d, coords.iter().copied()).unwrap())
    }

    #[test]
    fn coordinate_examples() {
        let c = ctx(5, 3, 6, &["u"]);
        let one = UExpansion::one(c.clone());
        assert!(theta_coordinate(&one, "u").unwrap().is_zero());
        let u = UExpansion::variable(c.clone(), "u").unwrap();
        assert_eq!(theta_coordinate(&u, "u").unwrap(), one.add(&u).unwrap());
        for a in [0u64, 1, 3, 6] {
            let f = BinomialVector::from_terms(c.clone(), [(vec![a], 1)]).unwrap().to_series();
            let expected = f.scale(a as i64);
            assert_eq!(theta_coordinate(&f, "u").unwrap(), expected);
        }
        assert!(theta_coordinate(&u, "w").is_err());
    }

    #[test]
    fn operator_examples() {
        let c = ctx(3, 3, 8, &["u"]);
        let f = BinomialVector::from_terms(c.clone(), [(vec![4], 1)]).unwrap().to_series();
        let op = ThetaOperator::new(c.clone(), vec![2]).unwrap();
        assert_eq!(op.apply(&f).unwrap(), f.scale(16));
        assert_eq!(ThetaOperator::identity(c).apply(&f).unwrap(), f);

        let c = ctx(5, 2, 8, &["u", "v"]);
        let v = BinomialVector::from_terms(c.clone(), [(vec![2, 3], 1)]).unwrap();
        let op = ThetaOperator::new(c, vec![1, 1]).unwrap();
        let f = v.to_series();
        assert_eq!(op.apply(&f).unwrap(), f.scale(6));
        assert_eq!(op.apply_binomial(&v).unwrap(), v.scale(6));
    }

    #[test]
    fn routes_agree() {
        let c = ctx(3, 2, 5, &["u", "v"]);
        let f = UExpansion::from_terms(
            c.clone(),
            [(vec![0, 0], 4), (vec![1, 2], 7), (vec![3, 1], 2), (vec![0, 5], 1), (vec![2, 2], 8)],
        )
        .unwrap();
        for k in [vec![0, 1], vec![3, 0], vec![2, 5], vec![7, 4]] {
            let op = ThetaOperator::new(c.clone(), k).unwrap();
            assert_eq!(op.apply(&f).unwrap(), op.apply_iterated(&f).unwrap());
        }
    }

    #[test]
    fn context_checks() {
        let a = ctx(3, 2, 5, &["u"]);
        let b = ctx(3, 3, 5, &["u"]);
        let op = ThetaOperator::identity(a);
        assert_eq!(op.apply(&UExpansion::one(b)), Err(Error::ContextMismatch));
        assert!(ThetaOperator::new(ctx(3, 2, 5, &["u"]), vec![1, 1]).is_err());
    }
}
