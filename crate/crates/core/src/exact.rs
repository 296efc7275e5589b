//! Exact values of the form zeta8^k * p^(m/2).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::localfield::Sign;
use crate::wdalg::Rational;

/// Zero, or zeta8^k * p^(m/2) with k in Z/8 and m an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    Zero,
    Value {
        zeta: u8,
        p: u64,
        half_power: Rational,
    },
}

impl ExactNumber {
    pub fn one(p: u64) -> ExactNumber {
        ExactNumber::Value {
            zeta: 0,
            p,
            half_power: Rational::zero(),
        }
    }

    pub fn new(zeta: i64, p: u64, half_power: Rational) -> ExactNumber {
        ExactNumber::Value {
            zeta: zeta.rem_euclid(8) as u8,
            p,
            half_power,
        }
    }

    pub fn sign(s: Sign, p: u64) -> ExactNumber {
        ExactNumber::new(if s.is_minus() { 4 } else { 0 }, p, Rational::zero())
    }

    /// p^(m/2).
    pub fn sqrt_p_power(p: u64, half_power: Rational) -> ExactNumber {
        ExactNumber::new(0, p, half_power)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactNumber::Zero)
    }

    pub fn inv(self) -> Result<ExactNumber> {
        match self {
            ExactNumber::Zero => Err(Error::NotASign("0 is not invertible".into())),
            ExactNumber::Value {
                zeta,
                p,
                half_power,
            } => Ok(ExactNumber::new(-(zeta as i64), p, -half_power)),
        }
    }

    pub fn pow(self, e: i64) -> ExactNumber {
        match self {
            ExactNumber::Zero if e > 0 => ExactNumber::Zero,
            ExactNumber::Zero => panic!("zero raised to a non-positive power"),
            ExactNumber::Value {
                zeta,
                p,
                half_power,
            } => ExactNumber::new(zeta as i64 * e, p, half_power * e),
        }
    }

    /// The value as a sign, if it is one.
    pub fn as_sign(self) -> Option<Sign> {
        match self {
            ExactNumber::Value {
                zeta, half_power, ..
            } if half_power.is_zero() => match zeta {
                0 => Some(Sign::Plus),
                4 => Some(Sign::Minus),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn to_sign(self) -> Result<Sign> {
        self.as_sign()
            .ok_or_else(|| Error::NotASign(self.to_string()))
    }

    /// Floating-point value (re, im).
    pub fn to_complex(self) -> (f64, f64) {
        match self {
            ExactNumber::Zero => (0.0, 0.0),
            ExactNumber::Value {
                zeta,
                p,
                half_power,
            } => {
                let modulus = (p as f64)
                    .powf(*half_power.numer() as f64 / (2.0 * *half_power.denom() as f64));
                let arg = std::f64::consts::PI * zeta as f64 / 4.0;
                (modulus * arg.cos(), modulus * arg.sin())
            }
        }
    }
}

impl std::ops::Mul for ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: ExactNumber) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Zero, _) | (_, ExactNumber::Zero) => ExactNumber::Zero,
            (
                ExactNumber::Value {
                    zeta: a,
                    p,
                    half_power: m,
                },
                ExactNumber::Value {
                    zeta: b,
                    p: q,
                    half_power: n,
                },
            ) => {
                let base = if m.is_zero() {
                    q
                } else {
                    assert!(n.is_zero() || p == q, "exact numbers over different primes");
                    p
                };
                ExactNumber::new(a as i64 + b as i64, base, m + n)
            }
        }
    }
}

impl std::ops::Mul<Sign> for ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: Sign) -> ExactNumber {
        match self {
            ExactNumber::Zero => ExactNumber::Zero,
            ExactNumber::Value { p, .. } => self * ExactNumber::sign(rhs, p),
        }
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Zero => f.write_str("0"),
            ExactNumber::Value {
                zeta,
                p,
                half_power,
            } => {
                if half_power.denom().is_one() {
                    write!(f, "zeta8^{zeta} * {p}^({}/2)", half_power.numer())
                } else {
                    write!(f, "zeta8^{zeta} * {p}^(({half_power})/2)")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let i = ExactNumber::new(2, 5, Rational::zero());
        assert_eq!((i * i).as_sign(), Some(Sign::Minus));
        let r = ExactNumber::sqrt_p_power(5, Rational::from(1));
        assert_eq!((r * r.inv().unwrap()).as_sign(), Some(Sign::Plus));
        assert_eq!(r.pow(2), ExactNumber::new(0, 5, Rational::from(2)));
        assert!((ExactNumber::Zero * r).is_zero());
        assert_eq!(
            ExactNumber::new(-1, 3, Rational::zero()),
            ExactNumber::new(7, 3, Rational::zero())
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            ExactNumber::new(2, 3, Rational::from(1)).to_string(),
            "zeta8^2 * 3^(1/2)"
        );
        assert_eq!(ExactNumber::one(5).to_string(), "zeta8^0 * 5^(0/2)");
        assert_eq!(
            ExactNumber::new(0, 5, Rational::new(1, 3)).to_string(),
            "zeta8^0 * 5^((1/3)/2)"
        );
    }

    #[test]
    fn complex_values() {
        let (re, im) = ExactNumber::new(2, 3, Rational::from(1)).to_complex();
        assert!(re.abs() < 1e-12 && (im - 3f64.sqrt()).abs() < 1e-12);
    }
}
