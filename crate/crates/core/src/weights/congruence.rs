use serde::{Deserialize, Serialize};

use super::levi::{simple_violations, LeviWeight, SimpleReading};
use crate::error::{Error, Result};
use crate::padic::is_odd_prime;
use crate::shimura::PelDatum;

fn pow_checked(p: u64, m: u32) -> Option<i128> {
    (p as i128).checked_pow(m)
}

fn divides(modulus: Option<i128>, x: i64) -> bool {
    match modulus {
        Some(q) => (x as i128) % q == 0,
        None => x == 0,
    }
}

/// Whether `g^k1 = g^k2 mod p^m` for every tuple `g` of units, given the
/// exponent tuples of two characters of the same torus.
///
/// `(Z/p^m)^x` is cyclic of order `p^{m-1}(p-1)`, so this holds exactly when
/// every exponent difference is divisible by that order.
pub fn char_congruent(k1: &[i64], k2: &[i64], m: u32, p: u64) -> Result<bool> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if k1.len() != k2.len() {
        return Err(Error::ShapeMismatch(format!(
            "characters of different rank: {} and {}",
            k1.len(),
            k2.len()
        )));
    }
    if m == 0 {
        return Ok(true);
    }
    let order = pow_checked(p, m - 1).map(|q| q * (p as i128 - 1));
    Ok(k1.iter().zip(k2).all(|(a, b)| divides(order, a - b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisFailure {
    /// `lambda(tau)_i - lambda'(tau)_i` is not divisible by `p^m (p-1)`.
    Congruence { embedding: String, index: usize, difference: i64 },
    /// Gaps at `i` differ and one of them is at most `m`.
    Gap { embedding: String, index: usize, gap: i64, gap_prime: i64 },
    /// Last entries differ and one of them is at most `m`.
    Last { embedding: String, value: i64, value_prime: i64 },
}

impl std::fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisFailure::Congruence { embedding, index, difference } => {
                write!(f, "{embedding} entry {index}: difference {difference} is not divisible by p^m(p-1)")
            }
            HypothesisFailure::Gap { embedding, index, gap, gap_prime } => {
                write!(f, "{embedding} gap {index}: {gap} vs {gap_prime}, smaller one not above m")
            }
            HypothesisFailure::Last { embedding, value, value_prime } => {
                write!(f, "{embedding} last entry: {value} vs {value_prime}, smaller one not above m")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub failures: Vec<HypothesisFailure>,
}

/// Checks the hypotheses under which the theta operators of two simple
/// weights agree modulo `p^{m+1}`. Indices in the report start at 1.
///
/// The gap condition compares `lambda_i - lambda_{i+1}` with
/// `lambda'_i - lambda'_{i+1}`.
pub fn theta_hypotheses(
    lambda: &LeviWeight,
    lambda_prime: &LeviWeight,
    m: u32,
    datum: &PelDatum,
    reading: SimpleReading,
) -> Result<HypothesisReport> {
    for w in [lambda, lambda_prime] {
        let v = simple_violations(w, datum, reading)?;
        if !v.is_empty() {
            return Err(Error::NotSimple(v.join("; ")));
        }
    }
    let p = datum.p();
    let modulus = pow_checked(p, m).map(|q| q * (p as i128 - 1));
    let bound = m as i64;
    let (x, y) = (lambda.concatenated(), lambda_prime.concatenated());
    let mut failures = Vec::new();
    for (idx, (a, b)) in x.iter().zip(&y).enumerate() {
        let label = datum.label(idx);
        for i in 0..a.len() {
            if !divides(modulus, a[i] - b[i]) {
                failures.push(HypothesisFailure::Congruence {
                    embedding: label.clone(),
                    index: i + 1,
                    difference: a[i] - b[i],
                });
            }
        }
        for i in 0..a.len().saturating_sub(1) {
            let (g, h) = (a[i] - a[i + 1], b[i] - b[i + 1]);
            if g != h && g.min(h) <= bound {
                failures.push(HypothesisFailure::Gap {
                    embedding: label.clone(),
                    index: i + 1,
                    gap: g,
                    gap_prime: h,
                });
            }
        }
        if let (Some(&u), Some(&v)) = (a.last(), b.last()) {
            if u != v && u.min(v) <= bound {
                failures.push(HypothesisFailure::Last { embedding: label, value: u, value_prime: v });
            }
        }
    }
    Ok(HypothesisReport { holds: failures.is_empty(), failures })
}
