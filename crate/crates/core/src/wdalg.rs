//! Weil–Deligne representations built from twisted characters and SL_2 factors.
//!
//! A constituent is `chi |.|^x ⊠ nu_n` where the finite part of `chi` is a
//! quadratic class times a monomial in opaque non-self-dual labels.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::localfield::{hilbert_unchecked, PAdicField, QuadChar, Sign, SquareClass};

pub type Rational = Ratio<i64>;

/// Finite-order part of a character: quadratic class times opaque labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePart {
    pub quad: SquareClass,
    pub opaque: BTreeMap<String, i32>,
}

impl FinitePart {
    pub fn quadratic(quad: SquareClass) -> FinitePart {
        FinitePart {
            quad,
            opaque: BTreeMap::new(),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.opaque.is_empty()
    }

    pub fn mul(&self, other: &FinitePart) -> FinitePart {
        let mut opaque = self.opaque.clone();
        for (k, v) in &other.opaque {
            let e = opaque.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                opaque.remove(k);
            }
        }
        FinitePart {
            quad: self.quad * other.quad,
            opaque,
        }
    }

    pub fn pow(&self, n: i64) -> FinitePart {
        let quad = if n % 2 == 0 {
            self.quad.field().one()
        } else {
            self.quad
        };
        let opaque = if n == 0 {
            BTreeMap::new()
        } else {
            self.opaque
                .iter()
                .map(|(k, v)| (k.clone(), v * n as i32))
                .collect()
        };
        FinitePart { quad, opaque }
    }

    pub fn dual(&self) -> FinitePart {
        self.pow(-1)
    }
}

/// A character chi |.|^x of W_F.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedChar {
    pub finite: FinitePart,
    pub exp: Rational,
}

impl TwistedChar {
    pub fn trivial(field: PAdicField) -> TwistedChar {
        TwistedChar::quadratic(field.one(), Rational::zero())
    }

    pub fn quadratic(d: SquareClass, exp: Rational) -> TwistedChar {
        TwistedChar {
            finite: FinitePart::quadratic(d),
            exp,
        }
    }

    pub fn field(&self) -> PAdicField {
        self.finite.quad.field()
    }

    pub fn mul(&self, other: &TwistedChar) -> TwistedChar {
        TwistedChar {
            finite: self.finite.mul(&other.finite),
            exp: self.exp + other.exp,
        }
    }

    pub fn pow(&self, n: i64) -> TwistedChar {
        TwistedChar {
            finite: self.finite.pow(n),
            exp: self.exp * n,
        }
    }

    pub fn dual(&self) -> TwistedChar {
        self.pow(-1)
    }

    pub fn is_self_dual(&self) -> bool {
        self.finite.is_quadratic() && self.exp.is_zero()
    }

    pub fn is_unitary(&self) -> bool {
        self.exp.is_zero()
    }

    pub fn quad_char(&self) -> Result<QuadChar> {
        if self.finite.is_quadratic() {
            Ok(QuadChar::new(self.finite.quad))
        } else {
            Err(Error::UnsupportedConstituent(format!("{self:?}")))
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.finite.quad.is_one() && self.finite.is_quadratic() && self.exp.is_zero()
    }

    /// Value at a square class, when it is a well-defined sign.
    pub fn eval_sign(&self, c: SquareClass) -> Result<Sign> {
        let chi = self.quad_char()?;
        if !self.exp.is_zero() && c.valuation_odd() {
            return Err(Error::NotASign(format!(
                "|{}|^{} on a class of odd valuation",
                c, self.exp
            )));
        }
        self.field().check_same(c.field())?;
        Ok(hilbert_unchecked(c, chi.d))
    }
}

/// An irreducible chi |.|^x ⊠ nu_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WdIrred {
    pub chr: TwistedChar,
    pub n: u32,
}

/// Self-duality type of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelfDualSign {
    Orthogonal,
    Symplectic,
    Both,
    None,
}

impl SelfDualSign {
    pub fn admits_orthogonal(self) -> bool {
        matches!(self, SelfDualSign::Orthogonal | SelfDualSign::Both)
    }

    pub fn admits_symplectic(self) -> bool {
        matches!(self, SelfDualSign::Symplectic | SelfDualSign::Both)
    }
}

impl fmt::Display for SelfDualSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SelfDualSign::Orthogonal => "orthogonal",
            SelfDualSign::Symplectic => "symplectic",
            SelfDualSign::Both => "orthogonal-and-symplectic",
            SelfDualSign::None => "none",
        };
        f.write_str(s)
    }
}

impl WdIrred {
    pub fn new(chr: TwistedChar, n: u32) -> WdIrred {
        assert!(n >= 1, "nu_0 does not exist");
        WdIrred { chr, n }
    }

    pub fn quadratic(d: SquareClass, exp: Rational, n: u32) -> WdIrred {
        WdIrred::new(TwistedChar::quadratic(d, exp), n)
    }

    pub fn field(&self) -> PAdicField {
        self.chr.field()
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn is_self_dual(&self) -> bool {
        self.chr.is_self_dual()
    }

    /// Sign of the invariant pairing, for self-dual constituents.
    pub fn parity_sign(&self) -> Option<Sign> {
        self.is_self_dual()
            .then(|| Sign::from_parity(self.n.is_multiple_of(2)))
    }

    pub fn dual(&self) -> WdIrred {
        WdIrred::new(self.chr.dual(), self.n)
    }

    pub fn det(&self) -> TwistedChar {
        self.chr.pow(self.n as i64)
    }

    pub fn twist(&self, chi: &TwistedChar) -> WdIrred {
        WdIrred::new(self.chr.mul(chi), self.n)
    }

    pub fn conductor_exponent(&self) -> u32 {
        QuadChar::new(self.chr.finite.quad).conductor_exponent()
    }

    fn sort_key(&self) -> (u8, u32, u32, Rational) {
        let rank = match self.parity_sign() {
            Some(Sign::Plus) => 0,
            Some(Sign::Minus) => 1,
            None => 2,
        };
        (rank, self.conductor_exponent(), self.n, self.chr.exp)
    }
}

impl Ord for WdIrred {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.chr.cmp(&other.chr))
    }
}

impl PartialOrd for WdIrred {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// nu_a ⊗ nu_b by Clebsch–Gordan.
pub fn clebsch_gordan(a: u32, b: u32) -> Vec<u32> {
    (0..a.min(b)).map(|k| a + b - 1 - 2 * k).collect()
}

/// The dimensions appearing in Λ² nu_n (alternating = true) or Sym² nu_n.
fn square_dims(n: u32, alternating: bool) -> Vec<u32> {
    let top = if alternating {
        2 * n as i64 - 3
    } else {
        2 * n as i64 - 1
    };
    (0..)
        .map(|k| top - 4 * k)
        .take_while(|&d| d >= 1)
        .map(|d| d as u32)
        .collect()
}

/// The kinds of groups whose parameters the engine handles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Sp(W_2n); dual group SO_{2n+1}.
    Sp,
    /// SO(V_{2n+1}); dual group Sp_{2n}.
    SoOdd,
    /// SO(V_{2n}) with the given discriminant; dual group SO_{2n}.
    SoEven { disc: SquareClass },
    /// Mp(W_2n); dual group Sp_{2n}.
    Mp,
}

impl GroupKind {
    pub fn name(&self) -> String {
        match self {
            GroupKind::Sp => "Sp".into(),
            GroupKind::SoOdd => "SO-odd".into(),
            GroupKind::SoEven { disc } => format!("SO-even({disc})"),
            GroupKind::Mp => "Mp".into(),
        }
    }

    /// Whether the parameter takes values in an orthogonal group.
    pub fn orthogonal(&self) -> bool {
        matches!(self, GroupKind::Sp | GroupKind::SoEven { .. })
    }

    /// Whether Ad is Sym² (symplectic dual group) rather than Λ².
    pub fn adjoint_is_sym(&self) -> bool {
        !self.orthogonal()
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Why a representation fails to be a parameter of a given kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamReject {
    DimensionParity { dim: u32 },
    Sign { found: SelfDualSign },
    Determinant { expected: String, found: String },
    Field { expected: u64, found: u64 },
}

impl ParamReject {
    pub fn code(&self) -> &'static str {
        match self {
            ParamReject::DimensionParity { .. } => "dimension-parity",
            ParamReject::Sign { .. } => "sign",
            ParamReject::Determinant { .. } => "determinant",
            ParamReject::Field { .. } => "field",
        }
    }
}

impl fmt::Display for ParamReject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamReject::DimensionParity { dim } => write!(f, "dimension-parity: dim {dim}"),
            ParamReject::Sign { found } => write!(f, "sign: found {found}"),
            ParamReject::Determinant { expected, found } => {
                write!(f, "determinant: expected {expected}, found {found}")
            }
            ParamReject::Field { expected, found } => {
                write!(f, "field: expected Q_{expected}, found Q_{found}")
            }
        }
    }
}

/// Output of the Langlands decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanglandsData {
    /// Unitary pieces phi_i with exponents s_1 > ... > s_r > 0.
    pub pieces: Vec<(WdRep, Rational)>,
    pub core: WdRep,
}

impl LanglandsData {
    pub fn reassemble(&self) -> WdRep {
        let mut out = self.core.clone();
        for (piece, s) in &self.pieces {
            let chi = TwistedChar::quadratic(out.field.one(), *s);
            let lifted = piece.twist_by(&chi);
            out = out.sum(&lifted).sum(&lifted.dual());
        }
        out
    }
}

/// A finite multiset of irreducible Weil–Deligne constituents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WdRep {
    field: PAdicField,
    parts: BTreeMap<WdIrred, u32>,
}

impl WdRep {
    pub fn zero(field: PAdicField) -> WdRep {
        WdRep {
            field,
            parts: BTreeMap::new(),
        }
    }

    pub fn trivial(field: PAdicField) -> WdRep {
        WdRep::irred(WdIrred::new(TwistedChar::trivial(field), 1))
    }

    pub fn irred(x: WdIrred) -> WdRep {
        let mut r = WdRep::zero(x.field());
        r.add(x, 1);
        r
    }

    /// The one-dimensional chi_d.
    pub fn quad_char(d: SquareClass) -> WdRep {
        WdRep::irred(WdIrred::quadratic(d, Rational::zero(), 1))
    }

    pub fn from_parts<I: IntoIterator<Item = (WdIrred, u32)>>(
        field: PAdicField,
        parts: I,
    ) -> Result<WdRep> {
        let mut r = WdRep::zero(field);
        for (x, m) in parts {
            field.check_same(x.field())?;
            r.add(x, m);
        }
        Ok(r)
    }

    /// Add `mult` copies of `x` (fields must agree).
    pub fn add(&mut self, x: WdIrred, mult: u32) {
        assert_eq!(x.field(), self.field, "constituent over a different field");
        if mult > 0 {
            *self.parts.entry(x).or_insert(0) += mult;
        }
    }

    pub fn field(&self) -> PAdicField {
        self.field
    }

    pub fn parts(&self) -> &BTreeMap<WdIrred, u32> {
        &self.parts
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WdIrred, u32)> {
        self.parts.iter().map(|(x, m)| (x, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, x: &WdIrred) -> u32 {
        self.parts.get(x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: &WdIrred) -> bool {
        self.multiplicity(x) > 0
    }

    pub fn dim(&self) -> u32 {
        self.iter().map(|(x, m)| x.n * m).sum()
    }

    pub fn det(&self) -> TwistedChar {
        self.iter()
            .fold(TwistedChar::trivial(self.field), |acc, (x, m)| {
                acc.mul(&x.det().pow(m as i64))
            })
    }

    pub fn dual(&self) -> WdRep {
        WdRep {
            field: self.field,
            parts: self.iter().map(|(x, m)| (x.dual(), m)).collect(),
        }
    }

    /// Whether every constituent has a quadratic finite part.
    pub fn is_quadratic(&self) -> bool {
        self.parts.keys().all(|x| x.chr.finite.is_quadratic())
    }

    pub fn require_quadratic(&self) -> Result<()> {
        match self.parts.keys().find(|x| !x.chr.finite.is_quadratic()) {
            Some(x) => Err(Error::UnsupportedConstituent(format!("{x:?}"))),
            None => Ok(()),
        }
    }

    pub fn sum(&self, other: &WdRep) -> WdRep {
        let mut out = self.clone();
        for (x, m) in other.iter() {
            out.add(x.clone(), m);
        }
        out
    }

    pub fn direct_sum(&self, other: &WdRep) -> Result<WdRep> {
        self.field.check_same(other.field)?;
        Ok(self.sum(other))
    }

    /// Remove `mult` copies of `x`; errors if not present.
    pub fn remove(&self, x: &WdIrred, mult: u32) -> Result<WdRep> {
        let have = self.multiplicity(x);
        if have < mult {
            return Err(Error::MalformedParameter(format!(
                "cannot remove {mult} copies of a constituent present {have} times"
            )));
        }
        let mut out = self.clone();
        if have == mult {
            out.parts.remove(x);
        } else {
            out.parts.insert(x.clone(), have - mult);
        }
        Ok(out)
    }

    fn tensor_irred(x: &WdIrred, y: &WdIrred) -> Vec<WdIrred> {
        let chr = x.chr.mul(&y.chr);
        clebsch_gordan(x.n, y.n)
            .into_iter()
            .map(|n| WdIrred::new(chr.clone(), n))
            .collect()
    }

    pub fn tensor(&self, other: &WdRep) -> Result<WdRep> {
        self.field.check_same(other.field)?;
        let mut out = WdRep::zero(self.field);
        for (x, m) in self.iter() {
            for (y, k) in other.iter() {
                for z in WdRep::tensor_irred(x, y) {
                    out.add(z, m * k);
                }
            }
        }
        Ok(out)
    }

    /// Twist every constituent by a character.
    pub fn twist_by(&self, chi: &TwistedChar) -> WdRep {
        WdRep {
            field: self.field,
            parts: self.iter().map(|(x, m)| (x.twist(chi), m)).collect(),
        }
    }

    /// A ⊗ chi_c.
    pub fn twist(&self, c: SquareClass) -> WdRep {
        self.twist_by(&TwistedChar::quadratic(c, Rational::zero()))
    }

    fn square(&self, alternating: bool) -> WdRep {
        let mut out = WdRep::zero(self.field);
        let items: Vec<(&WdIrred, u32)> = self.iter().collect();
        for (i, &(x, m)) in items.iter().enumerate() {
            let chr = x.chr.pow(2);
            for n in square_dims(x.n, alternating) {
                out.add(WdIrred::new(chr.clone(), n), m);
            }
            let pairs = m * (m - 1) / 2;
            if pairs > 0 {
                for z in WdRep::tensor_irred(x, x) {
                    out.add(z, pairs);
                }
            }
            for &(y, k) in &items[i + 1..] {
                for z in WdRep::tensor_irred(x, y) {
                    out.add(z, m * k);
                }
            }
        }
        out
    }

    pub fn ext_square(&self) -> WdRep {
        self.square(true)
    }

    pub fn sym_square(&self) -> WdRep {
        self.square(false)
    }

    pub fn sign_of(&self) -> SelfDualSign {
        let mut orth_ok = true;
        let mut symp_ok = true;
        for (x, m) in self.iter() {
            match x.parity_sign() {
                Some(Sign::Plus) => symp_ok &= m % 2 == 0,
                Some(Sign::Minus) => orth_ok &= m % 2 == 0,
                None => {
                    if self.multiplicity(&x.dual()) != m {
                        return SelfDualSign::None;
                    }
                }
            }
        }
        match (orth_ok, symp_ok) {
            (true, true) => SelfDualSign::Both,
            (true, false) => SelfDualSign::Orthogonal,
            (false, true) => SelfDualSign::Symplectic,
            (false, false) => SelfDualSign::None,
        }
    }

    pub fn classify_parameter(&self, kind: GroupKind) -> std::result::Result<(), ParamReject> {
        let dim = self.dim();
        let sign = self.sign_of();
        let (want_odd, sign_ok) = match kind {
            GroupKind::Sp => (true, sign.admits_orthogonal()),
            GroupKind::SoEven { .. } => (false, sign.admits_orthogonal()),
            GroupKind::SoOdd | GroupKind::Mp => (false, sign.admits_symplectic()),
        };
        if let GroupKind::SoEven { disc } = kind {
            if disc.field() != self.field {
                return Err(ParamReject::Field {
                    expected: self.field.p(),
                    found: disc.field().p(),
                });
            }
        }
        if (dim % 2 == 1) != want_odd {
            return Err(ParamReject::DimensionParity { dim });
        }
        if !sign_ok {
            return Err(ParamReject::Sign { found: sign });
        }
        let det = self.det();
        let expected = match kind {
            GroupKind::Sp => Some(self.field.one()),
            GroupKind::SoEven { disc } => Some(disc),
            _ => None,
        };
        if let Some(d) = expected {
            if det != TwistedChar::quadratic(d, Rational::zero()) {
                return Err(ParamReject::Determinant {
                    expected: format!("chi({d})"),
                    found: crate::dsl::print_char(&det),
                });
            }
        }
        Ok(())
    }

    /// classify_parameter as a crate error.
    pub fn require_kind(&self, kind: GroupKind) -> Result<()> {
        self.classify_parameter(kind)
            .map_err(|r| Error::Classification {
                kind: kind.name(),
                reason: r.to_string(),
            })
    }

    pub fn langlands_decompose(&self) -> Result<LanglandsData> {
        if *self != self.dual() {
            return Err(Error::MalformedParameter(
                "representation is not isomorphic to its dual".into(),
            ));
        }
        let mut by_exp: BTreeMap<Rational, WdRep> = BTreeMap::new();
        let mut core = WdRep::zero(self.field);
        for (x, m) in self.iter() {
            let s = x.chr.exp;
            if s.is_zero() {
                core.add(x.clone(), m);
            } else if s.is_positive() {
                let unitary = TwistedChar {
                    finite: x.chr.finite.clone(),
                    exp: Rational::zero(),
                };
                by_exp
                    .entry(s)
                    .or_insert_with(|| WdRep::zero(self.field))
                    .add(WdIrred::new(unitary, x.n), m);
            }
        }
        let pieces = by_exp.into_iter().rev().map(|(s, r)| (r, s)).collect();
        Ok(LanglandsData { pieces, core })
    }

    pub fn is_tempered(&self) -> bool {
        self.parts.keys().all(|x| x.chr.is_unitary())
    }

    /// Every constituent self-dual of the kind's sign, each with multiplicity one.
    pub fn is_discrete(&self, kind: GroupKind) -> Result<bool> {
        self.require_kind(kind)?;
        let want = if kind.orthogonal() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        Ok(self
            .iter()
            .all(|(x, m)| m == 1 && x.parity_sign() == Some(want)))
    }

    pub fn is_epsilon_invariant(&self) -> Result<bool> {
        if !self.dim().is_multiple_of(2) || !self.sign_of().admits_orthogonal() {
            return Err(Error::WrongKind {
                op: "is_epsilon_invariant",
                kind: format!("{} rep of dim {}", self.sign_of(), self.dim()),
            });
        }
        Ok(self
            .parts
            .keys()
            .any(|x| x.parity_sign() == Some(Sign::Plus) && x.n % 2 == 1))
    }
}

impl fmt::Display for WdRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::print_rep(self))
    }
}
