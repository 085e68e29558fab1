use crate::error::{Error, Result};

/// Trial-division primality test for odd primes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring `Z / p^k` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    exponent: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let modulus = p
            .checked_pow(exponent)
            .filter(|&m| m <= u32::MAX as u64)
            .ok_or(Error::PrecisionOutOfRange { p, exponent })?;
        Ok(ResidueRing { p, exponent, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the unit group, `p^(k-1) (p-1)`.
    pub fn unit_group_order(&self) -> u64 {
        self.modulus / self.p * (self.p - 1)
    }

    pub fn reduce(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn reduce_u64(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        // a^(phi - 1) is the inverse in the unit group.
        Some(self.pow(a, self.unit_group_order() - 1))
    }

    /// `a^exp` for a signed exponent; `None` for a negative power of a non-unit.
    pub fn pow_signed(&self, a: u64, exp: i64) -> Option<u64> {
        if exp >= 0 {
            Some(self.pow(a, exp as u64))
        } else {
            self.inverse(a).map(|inv| self.pow(inv, exp.unsigned_abs()))
        }
    }

    /// Residues prime to `p`, in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (1..self.modulus).filter(move |a| a % self.p != 0)
    }

    /// Largest `v <= exponent` with `p^v | a`.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.modulus;
        if a == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let odd: Vec<u64> = (0..30).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(ResidueRing::new(2, 1), Err(Error::NotOddPrime(2)));
        assert_eq!(ResidueRing::new(9, 1), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn arithmetic_mod_9() {
        let r = ResidueRing::new(3, 2).unwrap();
        assert_eq!(r.modulus(), 9);
        assert_eq!(r.unit_group_order(), 6);
        assert_eq!(r.reduce(-1), 8);
        assert_eq!(r.add(5, 7), 3);
        assert_eq!(r.sub(2, 7), 4);
        assert_eq!(r.inverse(2), Some(5));
        assert_eq!(r.inverse(3), None);
        assert_eq!(r.pow_signed(2, -1), Some(5));
        assert_eq!(r.units().count(), 6);
        assert_eq!(r.valuation(3), 1);
        assert_eq!(r.valuation(0), 2);
    }

    #[test]
    fn oversized_modulus_rejected() {
        assert!(matches!(ResidueRing::new(13, 9), Err(Error::PrecisionOutOfRange { .. })));
    }
}
