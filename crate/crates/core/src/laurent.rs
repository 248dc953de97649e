//! Laurent polynomials in one variable with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// `sum coefficients[i] * A^(min_degree + i)`, kept trimmed so equal
/// polynomials have equal representations. The zero polynomial has no
/// coefficients and `min_degree == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Laurent {
    pub min_degree: i32,
    pub coefficients: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self {
            min_degree: 0,
            coefficients: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, degree: i32) -> Self {
        Self::new(degree, vec![coefficient])
    }

    pub fn new(min_degree: i32, coefficients: Vec<i64>) -> Self {
        let mut p = Self {
            min_degree,
            coefficients,
        };
        p.trim();
        p
    }

    /// Builds from `(coefficient, degree)` terms; repeated degrees add up.
    pub fn from_terms(terms: &[(i64, i32)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(c, d)| acc + Self::monomial(c, d))
    }

    fn trim(&mut self) {
        let lead = self.coefficients.iter().take_while(|&&c| c == 0).count();
        if lead == self.coefficients.len() {
            *self = Self {
                min_degree: 0,
                coefficients: Vec::new(),
            };
            return;
        }
        self.coefficients.drain(..lead);
        self.min_degree += lead as i32;
        while self.coefficients.last() == Some(&0) {
            self.coefficients.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.coefficients.len() as i32 - 1
    }

    pub fn coefficient(&self, degree: i32) -> i64 {
        let i = degree - self.min_degree;
        if i < 0 {
            return 0;
        }
        self.coefficients.get(i as usize).copied().unwrap_or(0)
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            min_degree: self.min_degree + shift,
            coefficients: self.coefficients.clone(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = self.coefficients.clone();
        coefficients.reverse();
        Self {
            min_degree: -self.max_degree(),
            coefficients,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `(coefficient, degree)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i32)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (c, self.min_degree + i as i32))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().max(rhs.max_degree());
        let coefficients = (lo..=hi)
            .map(|d| self.coefficient(d) + rhs.coefficient(d))
            .collect();
        Laurent::new(lo, coefficients)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            min_degree: self.min_degree,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coefficients = vec![0; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                coefficients[i + j] += a * b;
            }
        }
        Laurent::new(self.min_degree + rhs.min_degree, coefficients)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, d)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            write!(f, "{sign}")?;
            match (mag, d) {
                (_, 0) => write!(f, "{mag}")?,
                (1, _) => write!(f, "A^{d}")?,
                _ => write!(f, "{mag}A^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_value_squared() {
        let d = Laurent::from_terms(&[(-1, 2), (-1, -2)]);
        assert_eq!(&d * &d, Laurent::from_terms(&[(1, 4), (2, 0), (1, -4)]));
    }

    #[test]
    fn cancellation_trims() {
        let p = Laurent::from_terms(&[(3, -5), (1, 2)]);
        let q = Laurent::from_terms(&[(3, -5)]);
        assert_eq!(&p - &q, Laurent::monomial(1, 2));
        assert!((&p - &p).is_zero());
        assert_eq!(&p - &p, Laurent::zero());
    }

    #[test]
    fn mirror_and_display() {
        let p = Laurent::from_terms(&[(-1, -16), (1, -12), (1, -4)]);
        assert_eq!(p.to_string(), "-A^-16+A^-12+A^-4");
        assert_eq!(p.mirror().to_string(), "A^4+A^12-A^16");
        assert_eq!(p.mirror().mirror(), p);
        assert_eq!(Laurent::from_terms(&[(2, 0), (-3, 1)]).to_string(), "2-3A^1");
    }

    #[test]
    fn serde_shape() {
        let p = Laurent::from_terms(&[(1, -2), (-1, 2)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"min_degree":-2,"coefficients":[1,0,0,0,-1]}"#);
    }
}
