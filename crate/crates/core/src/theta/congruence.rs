use super::assignment::CoordinateAssignment;
use super::operator::ThetaOperator;
use crate::error::{Error, Result};
use crate::padic::UExpansion;
use crate::shimura::PelDatum;
use crate::weights::{theta_hypotheses, LeviWeight};

/// Checks `theta^lambda(f) = theta^lambda'(f) mod p^{m+1}` for simple
/// weights satisfying the congruence hypotheses.
///
/// Failing hypotheses are reported as [`Error::ThetaHypotheses`]; `Ok(false)`
/// means the congruence itself fails.
pub fn verify_theta_congruence(
    f: &UExpansion,
    lambda: &LeviWeight,
    lambda_prime: &LeviWeight,
    m: u32,
    assignment: &CoordinateAssignment,
    datum: &PelDatum,
) -> Result<bool> {
    let report = theta_hypotheses(lambda, lambda_prime, m, datum, assignment.reading())?;
    if !report.holds {
        let text: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
        return Err(Error::ThetaHypotheses(text.join("; ")));
    }
    let available = f.ctx().precision();
    if m + 1 > available {
        return Err(Error::InsufficientPrecision { requested: m + 1, available });
    }
    let a = ThetaOperator::from_weight(assignment, lambda, datum)?.apply(f)?;
    let b = ThetaOperator::from_weight(assignment, lambda_prime, datum)?.apply(f)?;
    a.congruent(&b, m + 1)
}
