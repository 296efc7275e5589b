//! Square classes, Hilbert symbols and quadratic characters of Q_p.
//!
//! A square class is stored as a small F_2 vector so that multiplication is
//! XOR. For odd p the bits are (unit non-square, valuation parity); for p = 2
//! they are (eps(u), omega(u), valuation parity) with eps(u) = (u-1)/2 and
//! omega(u) = (u^2-1)/8 taken mod 2.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sign in {+1, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: u64) -> Sign {
        if e.is_multiple_of(2) {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i32())
    }
}

/// The model field Q_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PAdicField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl PAdicField {
    pub fn new(p: u64) -> Result<PAdicField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 16 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(PAdicField { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    /// Smallest positive quadratic non-residue mod p (odd p only; 5 for p = 2).
    pub fn nonresidue(self) -> u64 {
        if self.p == 2 {
            return 5;
        }
        (2..self.p)
            .find(|&a| pow_mod(a, (self.p - 1) / 2, self.p) == self.p - 1)
            .expect("odd primes have non-residues")
    }

    fn class_bits(self) -> u32 {
        if self.p == 2 {
            3
        } else {
            2
        }
    }

    fn val_bit(self) -> u8 {
        1 << (self.class_bits() - 1)
    }

    /// All square classes in canonical order.
    pub fn square_classes(self) -> Vec<SquareClass> {
        (0..(1u8 << self.class_bits()))
            .map(|bits| SquareClass { field: self, bits })
            .collect()
    }

    pub fn one(self) -> SquareClass {
        SquareClass {
            field: self,
            bits: 0,
        }
    }

    pub fn class_of(self, n: i64) -> Result<SquareClass> {
        SquareClass::from_int(self, n)
    }

    pub fn check_same(self, other: PAdicField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }
}

impl fmt::Display for PAdicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}", self.p)
    }
}

/// An element of F^x / F^x2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    field: PAdicField,
    bits: u8,
}

impl SquareClass {
    pub fn from_int(field: PAdicField, n: i64) -> Result<SquareClass> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let p = field.p as i64;
        let mut unit = n;
        let mut val = 0u32;
        while unit % p == 0 {
            unit /= p;
            val += 1;
        }
        let val_bits = if val % 2 == 1 { field.val_bit() } else { 0 };
        let unit_bits = if field.p == 2 {
            let r = unit.rem_euclid(8);
            let eps = (r % 4 == 3) as u8;
            let omega = (r == 3 || r == 5) as u8;
            eps | (omega << 1)
        } else {
            let r = unit.rem_euclid(p) as u64;
            (pow_mod(r, (field.p - 1) / 2, field.p) != 1) as u8
        };
        Ok(SquareClass {
            field,
            bits: val_bits | unit_bits,
        })
    }

    pub fn field(self) -> PAdicField {
        self.field
    }

    /// Raw bit encoding (valuation parity is the top bit).
    pub fn bits(self) -> u8 {
        self.bits
    }

    pub fn is_one(self) -> bool {
        self.bits == 0
    }

    pub fn valuation_odd(self) -> bool {
        self.bits & self.field.val_bit() != 0
    }

    /// The class with the valuation bit cleared.
    pub fn unit_part(self) -> SquareClass {
        SquareClass {
            field: self.field,
            bits: self.bits & !self.field.val_bit(),
        }
    }

    pub fn try_mul(self, other: SquareClass) -> Result<SquareClass> {
        self.field.check_same(other.field)?;
        Ok(self * other)
    }

    /// Canonical integer representative.
    pub fn label(self) -> i64 {
        let p = self.field.p as i64;
        let unit_bits = self.unit_part().bits;
        let unit = if self.field.p == 2 {
            match unit_bits {
                0 => 1,
                1 => -1,
                2 => 5,
                _ => -5,
            }
        } else if unit_bits == 0 {
            1
        } else {
            self.field.nonresidue() as i64
        };
        if self.valuation_odd() {
            unit * p
        } else {
            unit
        }
    }

    fn eps2(self) -> bool {
        self.bits & 1 != 0
    }

    fn omega2(self) -> bool {
        self.bits & 2 != 0
    }

    fn odd_unit_nonsquare(self) -> bool {
        self.bits & 1 != 0
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        assert_eq!(
            self.field, rhs.field,
            "square classes over different fields"
        );
        SquareClass {
            field: self.field,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The quadratic Hilbert symbol (a, b).
pub fn hilbert_symbol(a: SquareClass, b: SquareClass) -> Result<Sign> {
    a.field.check_same(b.field)?;
    Ok(hilbert_unchecked(a, b))
}

pub(crate) fn hilbert_unchecked(a: SquareClass, b: SquareClass) -> Sign {
    let alpha = a.valuation_odd();
    let beta = b.valuation_odd();
    if a.field.p == 2 {
        let e = (a.eps2() && b.eps2()) ^ (alpha && b.omega2()) ^ (beta && a.omega2());
        Sign::from_parity(e)
    } else {
        let p_is_3_mod_4 = a.field.p % 4 == 3;
        let e = (alpha && beta && p_is_3_mod_4)
            ^ (beta && a.odd_unit_nonsquare())
            ^ (alpha && b.odd_unit_nonsquare());
        Sign::from_parity(e)
    }
}

/// The quadratic character chi_d = (., d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadChar {
    pub d: SquareClass,
}

impl QuadChar {
    pub fn new(d: SquareClass) -> QuadChar {
        QuadChar { d }
    }

    pub fn field(self) -> PAdicField {
        self.d.field
    }

    pub fn eval(self, x: SquareClass) -> Result<Sign> {
        hilbert_symbol(x, self.d)
    }

    /// Exponent a of the conductor p^a.
    pub fn conductor_exponent(self) -> u32 {
        let d = self.d;
        if d.field.p == 2 {
            if d.valuation_odd() {
                3
            } else if d.eps2() {
                2
            } else {
                0
            }
        } else {
            d.valuation_odd() as u32
        }
    }

    pub fn is_ramified(self) -> bool {
        self.conductor_exponent() > 0
    }

    /// chi(p), the value at the uniformizer.
    pub fn at_uniformizer(self) -> Sign {
        let p = SquareClass::from_int(self.d.field, self.d.field.p as i64).expect("p is nonzero");
        hilbert_unchecked(p, self.d)
    }

    /// chi(-1).
    pub fn at_minus_one(self) -> Sign {
        let m = SquareClass::from_int(self.d.field, -1).expect("-1 is nonzero");
        hilbert_unchecked(m, self.d)
    }
}

/// Evaluate chi_d at x.
pub fn quad_char_eval(chi: QuadChar, x: SquareClass) -> Result<Sign> {
    chi.eval(x)
}

/// Whether c is a norm from the quadratic algebra F(sqrt d).
pub fn norm_group_contains(d: SquareClass, c: SquareClass) -> Result<bool> {
    Ok(hilbert_symbol(c, d)? == Sign::Plus)
}

/// Discriminant of an orthogonal direct sum of spaces of dims m, m'.
pub fn disc_direct_sum(m: u32, d: SquareClass, m2: u32, d2: SquareClass) -> Result<SquareClass> {
    d.field.check_same(d2.field)?;
    let mut out = d * d2;
    if (m as u64 * m2 as u64) % 2 == 1 {
        out = out * SquareClass::from_int(d.field, -1)?;
    }
    Ok(out)
}

/// The two isometry classes sharing (dim, disc).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormVariant {
    Plus,
    Minus,
}

/// Label of an orthogonal space: dimension, discriminant and optional type (d, c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrthSpaceLabel {
    pub dim: u32,
    pub disc: SquareClass,
    pub type_pair: Option<(SquareClass, SquareClass)>,
    pub variant: FormVariant,
}

impl OrthSpaceLabel {
    pub fn new(dim: u32, disc: SquareClass, variant: FormVariant) -> Result<OrthSpaceLabel> {
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "orthogonal space of dimension 0".into(),
            ));
        }
        Ok(OrthSpaceLabel {
            dim,
            disc,
            type_pair: None,
            variant,
        })
    }

    pub fn with_type(self, d: SquareClass, c: SquareClass) -> Result<OrthSpaceLabel> {
        self.disc.field.check_same(d.field)?;
        self.disc.field.check_same(c.field)?;
        if d != self.disc {
            return Err(Error::MalformedParameter(format!(
                "type ({d}, {c}) requires disc {d}, found {}",
                self.disc
            )));
        }
        Ok(OrthSpaceLabel {
            type_pair: Some((d, c)),
            ..self
        })
    }

    pub fn chi(self) -> QuadChar {
        QuadChar::new(self.disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> PAdicField {
        PAdicField::new(p).unwrap()
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(PAdicField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PAdicField::new(65537), Err(Error::PrimeTooLarge(65537)));
    }

    #[test]
    fn labels_are_canonical() {
        let labels: Vec<i64> = q(5).square_classes().iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec![1, 2, 5, 10]);
        let labels: Vec<i64> = q(7).square_classes().iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec![1, 3, 7, 21]);
        let mut labels: Vec<i64> = q(2).square_classes().iter().map(|c| c.label()).collect();
        labels.sort();
        assert_eq!(labels, vec![-10, -5, -2, -1, 1, 2, 5, 10]);
    }

    #[test]
    fn class_of_label_round_trips() {
        for p in [2, 3, 5, 7, 13] {
            for c in q(p).square_classes() {
                assert_eq!(q(p).class_of(c.label()).unwrap(), c);
            }
        }
    }

    #[test]
    fn class_multiplication_matches_integers() {
        for p in [2, 3, 5, 7] {
            let f = q(p);
            for n in -40i64..40 {
                for m in -40i64..40 {
                    if n == 0 || m == 0 {
                        continue;
                    }
                    assert_eq!(
                        f.class_of(n).unwrap() * f.class_of(m).unwrap(),
                        f.class_of(n * m).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn zero_has_no_class() {
        assert_eq!(q(3).class_of(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = q(3).class_of(3).unwrap();
        let b = q(5).class_of(5).unwrap();
        assert!(matches!(
            hilbert_symbol(a, b),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn conductors() {
        let f = q(2);
        let cond = |n| QuadChar::new(f.class_of(n).unwrap()).conductor_exponent();
        assert_eq!((cond(1), cond(5), cond(-1), cond(-5)), (0, 0, 2, 2));
        assert_eq!((cond(2), cond(-2), cond(10), cond(-10)), (3, 3, 3, 3));
        let f = q(5);
        assert_eq!(
            QuadChar::new(f.class_of(2).unwrap()).conductor_exponent(),
            0
        );
        assert_eq!(
            QuadChar::new(f.class_of(10).unwrap()).conductor_exponent(),
            1
        );
    }

    #[test]
    fn orth_label_type_must_match_disc() {
        let f = q(5);
        let l = OrthSpaceLabel::new(3, f.class_of(5).unwrap(), FormVariant::Plus).unwrap();
        assert!(l.with_type(f.class_of(2).unwrap(), f.one()).is_err());
        assert!(l.with_type(f.class_of(5).unwrap(), f.one()).is_ok());
    }
}
