use serde::{Deserialize, Serialize};

use super::assignment::CoordinateAssignment;
use super::operator::ThetaOperator;
use crate::error::{Error, Result};
use crate::padic::{BinomialVector, PrecisionContext, ResidueRing, UExpansion};
use crate::shimura::PelDatum;
use crate::weights::LeviWeight;

/// Unit tuples the Kummer hypothesis may enumerate.
pub const MAX_KUMMER_POINTS: u64 = 1 << 20;

/// The seed `f` of the measure `mu_f`, whose moments are `theta^lambda(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "basis", content = "seed", rename_all = "snake_case")]
pub enum MeasureHandle {
    Series(UExpansion),
    Binomial(BinomialVector),
}

impl MeasureHandle {
    pub fn ctx(&self) -> &PrecisionContext {
        match self {
            MeasureHandle::Series(f) => f.ctx(),
            MeasureHandle::Binomial(v) => v.ctx(),
        }
    }

    pub fn series(&self) -> UExpansion {
        match self {
            MeasureHandle::Series(f) => f.clone(),
            MeasureHandle::Binomial(v) => v.to_series(),
        }
    }

    /// Moment against the character whose operator is `op`.
    pub fn moment_of(&self, op: &ThetaOperator) -> Result<UExpansion> {
        match self {
            MeasureHandle::Series(f) => op.apply(f),
            MeasureHandle::Binomial(v) => Ok(op.apply_binomial(v)?.to_series()),
        }
    }
}

/// `int lambda d mu_f = theta^lambda(f)`.
pub fn moment(
    h: &MeasureHandle,
    lambda: &LeviWeight,
    assignment: &CoordinateAssignment,
    datum: &PelDatum,
) -> Result<UExpansion> {
    h.moment_of(&ThetaOperator::from_weight(assignment, lambda, datum)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KummerOutcome {
    /// `sum c_i a^{lambda_i}` is not divisible by `p^m` at some unit point.
    HypothesisNotMet,
    /// The combination of moments vanishes modulo `p^m`.
    Holds,
    /// The hypothesis holds but the moments do not vanish.
    Fails,
}

/// Abstract Kummer congruence for a measure seeded by a combination of
/// `(1+u)^a` with unit exponents: if `sum c_i lambda_i(a) = 0 mod p^m` at
/// every unit tuple `a`, then `sum c_i int lambda_i d mu_f = 0 mod p^m`.
pub fn kummer_check(h: &MeasureHandle, terms: &[(i64, ThetaOperator)], m: u32) -> Result<KummerOutcome> {
    let MeasureHandle::Binomial(v) = h else {
        return Err(Error::NotBinomial);
    };
    let ctx = v.ctx();
    let available = ctx.precision();
    if m == 0 || m > available {
        return Err(Error::InsufficientPrecision { requested: m, available });
    }
    for (a, _) in v.terms() {
        for (c, &ac) in a.iter().enumerate() {
            if ac % ctx.prime() == 0 {
                return Err(Error::NonUnitExponent { coordinate: ctx.coords()[c].clone(), exponent: ac });
            }
        }
    }
    for (_, op) in terms {
        if **op.ctx() != *ctx {
            return Err(Error::ContextMismatch);
        }
    }
    if !hypothesis_holds(ctx.prime(), m, terms)? {
        return Ok(KummerOutcome::HypothesisNotMet);
    }
    let mut total = BinomialVector::zero(v.ctx_handle());
    for (c, op) in terms {
        total = total.add(&op.apply_binomial(v)?.scale(*c))?;
    }
    let pm = ctx.prime().pow(m);
    let vanishes = total.to_series().terms().all(|(_, x)| x % pm == 0);
    Ok(if vanishes { KummerOutcome::Holds } else { KummerOutcome::Fails })
}

/// [`kummer_check`] with each character given as a simple weight.
pub fn kummer_check_weights(
    h: &MeasureHandle,
    terms: &[(i64, LeviWeight)],
    m: u32,
    assignment: &CoordinateAssignment,
    datum: &PelDatum,
) -> Result<KummerOutcome> {
    let ops = terms
        .iter()
        .map(|(c, w)| Ok((*c, ThetaOperator::from_weight(assignment, w, datum)?)))
        .collect::<Result<Vec<_>>>()?;
    kummer_check(h, &ops, m)
}

/// Exhaustive check of `sum c_i prod_c a_c^{k_ic} = 0 mod p^m` over unit
/// tuples, on the coordinates where some exponent is nonzero.
fn hypothesis_holds(p: u64, m: u32, terms: &[(i64, ThetaOperator)]) -> Result<bool> {
    let ring = ResidueRing::new(p, m)?;
    let arity = terms.first().map_or(0, |(_, op)| op.exponents().len());
    let active: Vec<usize> =
        (0..arity).filter(|&c| terms.iter().any(|(_, op)| op.exponents()[c] != 0)).collect();
    let units: Vec<u64> = ring.units().collect();
    let count = (units.len() as u64)
        .checked_pow(active.len() as u32)
        .filter(|&n| n <= MAX_KUMMER_POINTS)
        .ok_or(Error::EnumerationTooLarge(units.len() as u64))?;
    let coeffs: Vec<u64> = terms.iter().map(|(c, _)| ring.reduce(*c)).collect();
    let mut digits = vec![0usize; active.len()];
    for _ in 0..count {
        let mut sum = 0;
        for ((_, op), &c) in terms.iter().zip(&coeffs) {
            let value = active.iter().zip(&digits).fold(c, |acc, (&coord, &d)| {
                ring.mul(acc, ring.pow(units[d], op.exponents()[coord] as u64))
            });
            sum = ring.add(sum, value);
        }
        if sum != 0 {
            return Ok(false);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < units.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(true)
}

/// A vector in the `(1+u)^a` basis tagged with a character of the torus,
/// flattened embedding by embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedVector {
    pub character: Vec<i64>,
    pub vector: BinomialVector,
}

impl TaggedVector {
    /// Applies `theta^lambda` and multiplies the tag by `lambda`.
    pub fn theta(
        &self,
        lambda: &LeviWeight,
        assignment: &CoordinateAssignment,
        datum: &PelDatum,
    ) -> Result<TaggedVector> {
        let flat: Vec<i64> = lambda.concatenated().into_iter().flatten().collect();
        if flat.len() != self.character.len() {
            return Err(Error::ShapeMismatch(format!(
                "character of rank {} tagged by a weight of rank {}",
                self.character.len(),
                flat.len()
            )));
        }
        let op = ThetaOperator::from_weight(assignment, lambda, datum)?;
        Ok(TaggedVector {
            character: self.character.iter().zip(&flat).map(|(a, b)| a + b).collect(),
            vector: op.apply_binomial(&self.vector)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::shimura::Orbit;
    use crate::weights::SimpleReading;

    fn setup(p: u64, precision: u32) -> (PelDatum, CoordinateAssignment) {
        let d = PelDatum::with_duals(p, [Orbit::new(2, vec![1], false).unwrap()]).unwrap();
        let ctx = Arc::new(PrecisionContext::new(p, precision, 6, ["u"]).unwrap());
        let a = CoordinateAssignment::canonical(ctx, &d, SimpleReading::HighestSlope).unwrap();
        (d, a)
    }

    fn weight(d: &PelDatum, k: i64) -> LeviWeight {
        LeviWeight::new(d, vec![vec![vec![k]], vec![vec![k]]]).unwrap()
    }

    #[test]
    fn moment_examples() {
        let (d, a) = setup(3, 3);
        let ctx = a.ctx().clone();
        let v = BinomialVector::from_terms(ctx.clone(), [(vec![1], 1), (vec![2], 1)]).unwrap();
        let h = MeasureHandle::Binomial(v.clone());
        assert_eq!(moment(&h, &weight(&d, 0), &a, &d).unwrap(), v.to_series());
        let k = 5;
        let expected = BinomialVector::from_terms(ctx, [(vec![1], 1), (vec![2], 1 << k)]).unwrap();
        assert_eq!(moment(&h, &weight(&d, k), &a, &d).unwrap(), expected.to_series());
        let s = MeasureHandle::Series(v.to_series());
        assert_eq!(moment(&s, &weight(&d, k), &a, &d).unwrap(), expected.to_series());
    }

    #[test]
    fn kummer_examples() {
        let (d, a) = setup(3, 2);
        let ctx = a.ctx().clone();
        let h = MeasureHandle::Binomial(
            BinomialVector::from_terms(ctx.clone(), [(vec![1], 2), (vec![5], 1), (vec![4], 3)]).unwrap(),
        );
        let run = |terms: &[(i64, i64)], m| {
            let terms: Vec<(i64, LeviWeight)> = terms.iter().map(|&(c, k)| (c, weight(&d, k))).collect();
            kummer_check_weights(&h, &terms, m, &a, &d).unwrap()
        };
        assert_eq!(run(&[(1, 2), (-1, 2)], 2), KummerOutcome::Holds);
        assert_eq!(run(&[(1, 1), (-1, 3)], 1), KummerOutcome::Holds);
        assert_eq!(run(&[(1, 1), (-1, 7)], 2), KummerOutcome::Holds);
        assert_eq!(run(&[(1, 1), (-1, 3)], 2), KummerOutcome::HypothesisNotMet);
    }

    #[test]
    fn kummer_preconditions() {
        let (d, a) = setup(3, 2);
        let ctx = a.ctx().clone();
        let terms = vec![(1, weight(&d, 1))];
        let non_unit = MeasureHandle::Binomial(BinomialVector::from_terms(ctx.clone(), [(vec![3], 1)]).unwrap());
        assert!(matches!(
            kummer_check_weights(&non_unit, &terms, 1, &a, &d),
            Err(Error::NonUnitExponent { exponent: 3, .. })
        ));
        let series = MeasureHandle::Series(UExpansion::one(ctx));
        assert_eq!(kummer_check_weights(&series, &terms, 1, &a, &d), Err(Error::NotBinomial));
    }

    #[test]
    fn tags_multiply() {
        let (d, a) = setup(5, 2);
        let v = BinomialVector::from_terms(a.ctx().clone(), [(vec![2], 1)]).unwrap();
        let t = TaggedVector { character: vec![1, 4], vector: v.clone() };
        let out = t.theta(&weight(&d, 3), &a, &d).unwrap();
        assert_eq!(out.character, vec![4, 7]);
        assert_eq!(out.vector, v.scale(8));
    }
}
