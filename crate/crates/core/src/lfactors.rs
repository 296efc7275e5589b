//! L-factor poles, epsilon factors at s = 1/2, root numbers and genericity.
//!
//! The additive character is psi(x) = exp(2 pi i {x}_p), trivial on Z_p and
//! nontrivial on p^-1 Z_p. psi_c(x) = psi(cx).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::ExactNumber;
use crate::localfield::{PAdicField, QuadChar, Sign, SquareClass};
use crate::wdalg::{GroupKind, Rational, WdIrred, WdRep};

/// Elements of Z[zeta8], stored on the basis 1, z, z^2, z^3 with z^4 = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cyclo8([i64; 4]);

impl Cyclo8 {
    fn zeta_pow(k: i64) -> Cyclo8 {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Cyclo8(c)
    }

    fn add(self, o: Cyclo8) -> Cyclo8 {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        Cyclo8(c)
    }

    fn mul(self, o: Cyclo8) -> Cyclo8 {
        let mut c = [0; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = self.0[i] * o.0[j];
                if i + j < 4 {
                    c[i + j] += v;
                } else {
                    c[i + j - 4] -= v;
                }
            }
        }
        Cyclo8(c)
    }

    fn scale(self, s: i64) -> Cyclo8 {
        Cyclo8(self.0.map(|v| v * s))
    }

    /// Identify as zeta8^k * 2^(m/2) (or zero).
    fn identify(self) -> Option<ExactNumber> {
        if self.0 == [0; 4] {
            return Some(ExactNumber::Zero);
        }
        let sqrt2 = Cyclo8([0, 1, 0, -1]);
        let mut power = Cyclo8([1, 0, 0, 0]);
        for m in 0..16 {
            for k in 0..8 {
                if Cyclo8::zeta_pow(k).mul(power) == self {
                    return Some(ExactNumber::new(k, 2, Rational::from(m)));
                }
            }
            power = power.mul(sqrt2);
        }
        None
    }
}

fn class_of_unit(field: PAdicField, x: i64) -> SquareClass {
    field.class_of(x).expect("units are nonzero")
}

/// sum over units x mod 2^k of chi(x) exp(2 pi i w x / 2^k), for k <= 3.
fn dyadic_sum(chi: QuadChar, k: u32, w: i64) -> ExactNumber {
    let field = chi.field();
    let modulus = 1i64 << k;
    let step = 8 / modulus;
    let mut acc = Cyclo8([0; 4]);
    for x in (1..modulus).step_by(2) {
        let s = chi
            .eval(class_of_unit(field, x))
            .expect("same field")
            .as_i32() as i64;
        acc = acc.add(Cyclo8::zeta_pow(w * x * step).scale(s));
    }
    acc.identify()
        .expect("Gauss sums over Q_2 lie in the exact ring")
}

fn primitive_gauss(chi: QuadChar, w: SquareClass) -> ExactNumber {
    let p = chi.field().p();
    let a = chi.conductor_exponent();
    if a == 0 {
        return ExactNumber::one(p);
    }
    if p == 2 {
        return dyadic_sum(chi, a, w.label());
    }
    let zeta = if p % 4 == 1 { 0 } else { 2 };
    let twist = chi.eval(w).expect("same field");
    ExactNumber::new(zeta, p, Rational::from(1)) * twist
}

/// Gauss sum of a primitive quadratic character at its conductor level.
pub fn gauss_sum(chi: QuadChar, level: u32) -> Result<ExactNumber> {
    let a = chi.conductor_exponent();
    if level != a {
        return Err(Error::NonPrimitiveCharacter {
            conductor: a,
            level,
        });
    }
    Ok(primitive_gauss(chi, chi.field().one()))
}

/// sum over units x mod p^level of chi(x) psi(x / p^level), at any level
/// at least the conductor.
pub fn gauss_sum_at_level(chi: QuadChar, level: u32) -> Result<ExactNumber> {
    let a = chi.conductor_exponent();
    let p = chi.field().p();
    if level < a {
        return Err(Error::NonPrimitiveCharacter {
            conductor: a,
            level,
        });
    }
    Ok(if level == a {
        primitive_gauss(chi, chi.field().one())
    } else if a == 0 && level == 1 {
        ExactNumber::sign(Sign::Minus, p)
    } else {
        ExactNumber::Zero
    })
}

/// epsilon(1/2, chi |.|^y, psi_c) for a quadratic chi.
pub fn char_epsilon(chi: QuadChar, y: Rational, c: SquareClass) -> Result<ExactNumber> {
    chi.field().check_same(c.field())?;
    let p = chi.field().p();
    let a = chi.conductor_exponent() as i64;
    let k = c.valuation_odd() as i64;
    let g = primitive_gauss(chi, c.unit_part());
    let at_p = ExactNumber::sign(chi.at_uniformizer(), p).pow(a + k);
    let scale = ExactNumber::sqrt_p_power(p, -(y * 2 * (a + k)) - Rational::from(a));
    Ok(at_p * scale * g)
}

/// epsilon(1/2, chi |.|^x ⊠ nu_n, psi_c).
pub fn epsilon_irred(x: &WdIrred, c: SquareClass) -> Result<ExactNumber> {
    let chi = x.chr.quad_char()?;
    let p = chi.field().p();
    let top = x.chr.exp + Rational::new(x.n as i64 - 1, 2);
    let mut acc = ExactNumber::one(p);
    for j in 0..x.n as i64 {
        acc = acc * char_epsilon(chi, top - j, c)?;
    }
    if !chi.is_ramified() {
        let minus_frob = Sign::Minus * chi.at_uniformizer();
        for j in 1..x.n as i64 {
            let y = top - j;
            acc = acc * ExactNumber::new(0, p, -(y * 2) - 1) * minus_frob;
        }
    }
    Ok(acc)
}

/// epsilon(1/2, A, psi_c).
pub fn epsilon_half_psi(a: &WdRep, c: SquareClass) -> Result<ExactNumber> {
    a.field().check_same(c.field())?;
    a.require_quadratic()?;
    let mut acc = ExactNumber::one(a.field().p());
    for (x, m) in a.iter() {
        acc = acc * epsilon_irred(x, c)?.pow(m as i64);
    }
    Ok(acc)
}

/// epsilon(1/2, A, psi) for the standard psi.
pub fn epsilon_half(a: &WdRep) -> Result<ExactNumber> {
    epsilon_half_psi(a, a.field().one())
}

/// The root number of a symplectic representation.
pub fn root_number(a: &WdRep) -> Result<Sign> {
    if !a.sign_of().admits_symplectic() {
        return Err(Error::WrongKind {
            op: "root_number",
            kind: a.sign_of().to_string(),
        });
    }
    epsilon_half(a)?.to_sign()
}

/// epsilon as a sign, for representations whose value must be +-1.
pub fn epsilon_sign(a: &WdRep) -> Result<Sign> {
    epsilon_half(a)?.to_sign()
}

/// lambda(E_d / F, psi) = epsilon(1/2, chi_d, psi).
pub fn lambda_factor(d: SquareClass) -> ExactNumber {
    char_epsilon(QuadChar::new(d), Rational::zero(), d.field().one()).expect("same field")
}

/// Real poles of L(s, A), with multiplicity, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoleLocus {
    pub poles: Vec<Rational>,
}

impl PoleLocus {
    pub fn union(&self, other: &PoleLocus) -> PoleLocus {
        let mut poles = self.poles.clone();
        poles.extend(other.poles.iter().copied());
        poles.sort();
        PoleLocus { poles }
    }

    pub fn contains(&self, s: Rational) -> bool {
        self.poles.contains(&s)
    }
}

fn irred_pole(x: &WdIrred) -> Option<Rational> {
    let real = x.chr.finite.is_quadratic() && x.chr.finite.quad.is_one();
    real.then(|| -x.chr.exp - Rational::new(x.n as i64 - 1, 2))
}

pub fn pole_locus(a: &WdRep) -> PoleLocus {
    let mut poles = Vec::new();
    for (x, m) in a.iter() {
        if let Some(s) = irred_pole(x) {
            poles.extend(std::iter::repeat_n(s, m as usize));
        }
    }
    poles.sort();
    PoleLocus { poles }
}

pub fn l_regular_at(a: &WdRep, s0: Rational) -> bool {
    !pole_locus(a).contains(s0)
}

/// A constituent of A whose Euler factor has a pole at s0.
pub fn pole_witness(a: &WdRep, s0: Rational) -> Option<WdIrred> {
    a.parts()
        .keys()
        .find(|x| irred_pole(x) == Some(s0))
        .cloned()
}

/// Ad composed with the standard representation of the kind's dual group.
pub fn adjoint(a: &WdRep, kind: GroupKind) -> WdRep {
    if kind.adjoint_is_sym() {
        a.sym_square()
    } else {
        a.ext_square()
    }
}

/// The constituent of Ad(A) obstructing genericity, if any.
pub fn generic_obstruction(a: &WdRep, kind: GroupKind) -> Result<Option<WdIrred>> {
    a.require_kind(kind)?;
    Ok(pole_witness(&adjoint(a, kind), Rational::from(1)))
}

pub fn is_generic(a: &WdRep, kind: GroupKind) -> Result<bool> {
    Ok(generic_obstruction(a, kind)?.is_none())
}

/// Error unless A is generic of the given kind.
pub fn require_generic(a: &WdRep, kind: GroupKind) -> Result<()> {
    match generic_obstruction(a, kind)? {
        None => Ok(()),
        Some(x) => Err(Error::NotGeneric(format!(
            "1 from constituent {} of Ad",
            crate::dsl::print_irred(&x)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_rep;

    fn f(p: u64) -> PAdicField {
        PAdicField::new(p).unwrap()
    }

    fn chi(p: u64, d: i64) -> QuadChar {
        QuadChar::new(f(p).class_of(d).unwrap())
    }

    #[test]
    fn gauss_sums_known_values() {
        assert_eq!(gauss_sum(chi(5, 1), 0).unwrap(), ExactNumber::one(5));
        assert_eq!(
            gauss_sum(chi(5, 5), 1).unwrap(),
            ExactNumber::new(0, 5, Rational::from(1))
        );
        assert_eq!(
            gauss_sum(chi(3, 3), 1).unwrap(),
            ExactNumber::new(2, 3, Rational::from(1))
        );
        assert_eq!(
            gauss_sum(chi(2, -1), 2).unwrap(),
            ExactNumber::new(2, 2, Rational::from(2))
        );
        assert_eq!(
            gauss_sum(chi(2, 2), 3).unwrap(),
            ExactNumber::new(0, 2, Rational::from(3))
        );
        assert_eq!(
            gauss_sum(chi(2, -2), 3).unwrap(),
            ExactNumber::new(2, 2, Rational::from(3))
        );
        assert!(matches!(
            gauss_sum(chi(5, 5), 2),
            Err(Error::NonPrimitiveCharacter { .. })
        ));
    }

    #[test]
    fn imprimitive_levels() {
        assert_eq!(
            gauss_sum_at_level(chi(7, 1), 1).unwrap().as_sign(),
            Some(Sign::Minus)
        );
        assert!(gauss_sum_at_level(chi(7, 3), 2).unwrap().is_zero());
        assert!(gauss_sum_at_level(chi(2, -1), 1).is_err());
    }

    #[test]
    fn epsilon_of_simple_reps() {
        let one = parse_rep("1", f(5)).unwrap();
        assert_eq!(epsilon_half(&one).unwrap(), ExactNumber::one(5));
        let st = parse_rep("sp(2)", f(5)).unwrap();
        assert_eq!(root_number(&st).unwrap(), Sign::Minus);
        let st_u = parse_rep("chi(2)*sp(2)", f(5)).unwrap();
        assert_eq!(root_number(&st_u).unwrap(), Sign::Plus);
        let st_p = parse_rep("chi(3)*sp(2)", f(3)).unwrap();
        assert_eq!(root_number(&st_p).unwrap(), Sign::Minus);
        assert!(root_number(&parse_rep("sp(3)", f(3)).unwrap()).is_err());
        assert!(epsilon_half(&parse_rep("op(P)+op(~P)", f(3)).unwrap()).is_err());
    }

    #[test]
    fn epsilon_of_minus_one_character_over_q2() {
        let e = epsilon_half(&parse_rep("chi(-1)", f(2)).unwrap()).unwrap();
        assert_eq!(e, ExactNumber::new(2, 2, Rational::zero()));
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_factor(f(5).one()), ExactNumber::one(5));
        assert_eq!(
            lambda_factor(f(5).class_of(2).unwrap()),
            ExactNumber::one(5)
        );
        assert!(lambda_factor(f(5).class_of(5).unwrap()).as_sign().is_some());
        assert_eq!(
            lambda_factor(f(3).class_of(3).unwrap()).to_string(),
            "zeta8^6 * 3^(0/2)"
        );
    }

    #[test]
    fn poles() {
        let f5 = f(5);
        assert!(l_regular_at(
            &parse_rep("1", f5).unwrap(),
            Rational::from(1)
        ));
        assert!(!l_regular_at(
            &parse_rep("t(-1)", f5).unwrap(),
            Rational::from(1)
        ));
        assert!(l_regular_at(
            &parse_rep("chi(2)*t(-1)", f5).unwrap(),
            Rational::from(1)
        ));
        let sym = parse_rep("t(1/2)+t(-1/2)", f5).unwrap().sym_square();
        assert!(!l_regular_at(&sym, Rational::from(1)));
        assert_eq!(
            pole_locus(&parse_rep("sp(3)+2*t(1)", f5).unwrap()).poles,
            vec![Rational::from(-1), Rational::from(-1), Rational::from(-1)]
        );
    }

    #[test]
    fn genericity() {
        let f5 = f(5);
        let phi_e = parse_rep("t(1/2)+t(-1/2)", f5).unwrap();
        assert!(!is_generic(&phi_e, GroupKind::Mp).unwrap());
        assert!(matches!(
            require_generic(&phi_e, GroupKind::Mp),
            Err(Error::NotGeneric(_))
        ));
        let t = parse_rep("chi(2)+chi(5)+chi(10)", f5).unwrap();
        assert!(is_generic(&t, GroupKind::Sp).unwrap());
        assert!(is_generic(&t, GroupKind::SoOdd).is_err());
    }
}
