//! Text syntax for representations.
//!
//! ```text
//! rep  := term ("+" term)* | "0"
//! term := [int "*"] atom ("*" atom)*
//! atom := "1" | "chi(" int ")" | "t(" rational ")" | "sp(" int ")" | "op(" ["~"] ident ")"
//! ```
//!
//! `op(P)` names an opaque non-self-dual character and `op(~P)` its dual.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::localfield::PAdicField;
use crate::wdalg::{FinitePart, GroupKind, Rational, TwistedChar, WdIrred, WdRep};

fn char_atoms(chr: &TwistedChar) -> Vec<String> {
    let mut atoms = Vec::new();
    if !chr.finite.quad.is_one() {
        atoms.push(format!("chi({})", chr.finite.quad.label()));
    }
    for (label, &e) in &chr.finite.opaque {
        let name = if e < 0 {
            format!("~{label}")
        } else {
            label.clone()
        };
        for _ in 0..e.unsigned_abs() {
            atoms.push(format!("op({name})"));
        }
    }
    if !chr.exp.is_zero() {
        atoms.push(format!("t({})", chr.exp));
    }
    atoms
}

/// Canonical text of a character.
pub fn print_char(chr: &TwistedChar) -> String {
    let atoms = char_atoms(chr);
    if atoms.is_empty() {
        "1".into()
    } else {
        atoms.join("*")
    }
}

pub fn print_irred(x: &WdIrred) -> String {
    let mut atoms = char_atoms(&x.chr);
    if x.n > 1 {
        atoms.push(format!("sp({})", x.n));
    }
    if atoms.is_empty() {
        "1".into()
    } else {
        atoms.join("*")
    }
}

/// Canonical text of a representation; `parse_rep` inverts it.
pub fn print_rep(rep: &WdRep) -> String {
    if rep.is_zero() {
        return "0".into();
    }
    rep.iter()
        .map(|(x, m)| {
            if m > 1 {
                format!("{m}*{}", print_irred(x))
            } else {
                print_irred(x)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Default)]
struct Term {
    quad: Option<i64>,
    exp: Option<Rational>,
    n: Option<u32>,
    opaque: BTreeMap<String, i32>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{c}`"))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err(start, "expected an integer");
        }
        match self.src[start..self.pos].parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(start, "integer out of range"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.integer()?;
            if den <= 0 {
                return self.err(at, "denominator must be positive");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from(num))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok = c == '_' || c.is_ascii_alphabetic() || (!first && c.is_ascii_digit());
            if !ok {
                break;
            }
            first = false;
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an identifier");
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn atom(&mut self, term: &mut Term) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let v = self.integer()?;
            if v != 1 {
                return self.err(start, "only `1` is an integer atom");
            }
            return Ok(());
        }
        let Some((at, name)) = self.word() else {
            return self.err(start, "expected an atom");
        };
        self.expect('(')?;
        match name {
            "chi" => {
                let arg_at = self.pos;
                let v = self.integer()?;
                if v == 0 {
                    return self.err(arg_at, "chi(0) is not a character");
                }
                if term.quad.replace(v).is_some() {
                    return self.err(at, "repeated chi in one term");
                }
            }
            "t" => {
                let v = self.rational()?;
                if term.exp.replace(v).is_some() {
                    return self.err(at, "repeated t in one term");
                }
            }
            "sp" => {
                let arg_at = self.pos;
                let v = self.integer()?;
                if v < 1 || v > u32::MAX as i64 {
                    return self.err(arg_at, "sp(n) needs n >= 1");
                }
                if term.n.replace(v as u32).is_some() {
                    return self.err(at, "repeated sp in one term");
                }
            }
            "op" => {
                let dual = self.eat('~');
                let label = self.ident()?;
                let e = term.opaque.entry(label.clone()).or_insert(0);
                *e += if dual { -1 } else { 1 };
                if *e == 0 {
                    term.opaque.remove(&label);
                }
            }
            _ => return self.err(at, format!("unknown atom `{name}`")),
        }
        self.expect(')')
    }

    fn term(&mut self, field: PAdicField) -> Result<(WdIrred, u32)> {
        self.skip_ws();
        let start = self.pos;
        let mut mult = 1u32;
        let mut t = Term::default();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let v = self.integer()?;
            if self.eat('*') {
                if v < 1 || v > u32::MAX as i64 {
                    return self.err(start, "multiplicity must be at least 1");
                }
                mult = v as u32;
                self.atom(&mut t)?;
            } else if v != 1 {
                return self.err(start, "expected `*` after a multiplicity");
            }
        } else {
            self.atom(&mut t)?;
        }
        while self.eat('*') {
            self.atom(&mut t)?;
        }
        let quad = match t.quad {
            Some(v) => field.class_of(v)?,
            None => field.one(),
        };
        let chr = TwistedChar {
            finite: FinitePart {
                quad,
                opaque: t.opaque,
            },
            exp: t.exp.unwrap_or_else(Rational::zero),
        };
        Ok((WdIrred::new(chr, t.n.unwrap_or(1)), mult))
    }
}

/// Parse a representation over `field`.
pub fn parse_rep(text: &str, field: PAdicField) -> Result<WdRep> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if text.trim() == "0" {
        return Ok(WdRep::zero(field));
    }
    let mut rep = WdRep::zero(field);
    loop {
        let (x, m) = p.term(field)?;
        rep.add(x, m);
        if !p.eat('+') {
            break;
        }
    }
    p.skip_ws();
    if p.pos != text.len() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(rep)
}

/// Parse a group kind: `sp`, `so-odd`, `mp`, `so-even` or `so-even:<d>`.
///
/// A bare `so-even` takes its discriminant from `det`, when given.
pub fn parse_kind(text: &str, field: PAdicField, det: Option<&TwistedChar>) -> Result<GroupKind> {
    let lower = text.trim().to_ascii_lowercase();
    let bad = || Error::Parse {
        offset: 0,
        message: format!("unknown group kind `{text}`"),
    };
    match lower.as_str() {
        "sp" => Ok(GroupKind::Sp),
        "so-odd" | "so_odd" => Ok(GroupKind::SoOdd),
        "mp" => Ok(GroupKind::Mp),
        "so-even" | "so_even" => {
            let det = det.ok_or_else(bad)?;
            if !det.is_self_dual() {
                return Err(Error::MalformedParameter(format!(
                    "determinant {} is not quadratic",
                    print_char(det)
                )));
            }
            Ok(GroupKind::SoEven {
                disc: det.finite.quad,
            })
        }
        other => {
            let rest = other
                .strip_prefix("so-even:")
                .or_else(|| other.strip_prefix("so_even:"))
                .ok_or_else(bad)?;
            let d: i64 = rest.trim().parse().map_err(|_| bad())?;
            Ok(GroupKind::SoEven {
                disc: field.class_of(d)?,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PAdicField {
        PAdicField::new(p).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = parse_rep("t(1/2)+t(-1/2)", f(5)).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(print_rep(&r), "t(-1/2)+t(1/2)");
        let r = parse_rep("chi(2)*sp(2)", f(3)).unwrap();
        assert_eq!(print_rep(&r), "chi(2)*sp(2)");
        let r = parse_rep("2*chi(5)+1", f(3)).unwrap();
        assert_eq!(print_rep(&r), "1+2*chi(2)");
        assert_eq!(parse_rep(" 0 ", f(3)).unwrap().dim(), 0);
    }

    #[test]
    fn reduces_chi_arguments_to_square_classes() {
        let a = parse_rep("chi(20)", f(5)).unwrap();
        let b = parse_rep("chi(5)", f(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_rep("chi(4)", f(5)).unwrap(),
            parse_rep("1", f(5)).unwrap()
        );
    }

    #[test]
    fn opaque_atoms() {
        let r = parse_rep("op(P)*t(1/3)+op(~P)*t(-1/3)", f(7)).unwrap();
        assert_eq!(r.dual(), r);
        let r2 = parse_rep(&print_rep(&r), f(7)).unwrap();
        assert_eq!(r, r2);
        let sq = parse_rep("op(P)*op(P)", f(7)).unwrap();
        assert_eq!(print_rep(&sq), "op(P)*op(P)");
        assert_eq!(
            parse_rep("op(P)*op(~P)", f(7)).unwrap(),
            parse_rep("1", f(7)).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_rep("1+chi(0)", f(5)).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                offset: 6,
                message: "chi(0) is not a character".into()
            }
        );
        let e = parse_rep("sp(0)", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 3, .. }));
        let e = parse_rep("chi(2)+", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 7, .. }));
        let e = parse_rep("foo(2)", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, .. }));
        let e = parse_rep("chi(2)*chi(3)", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 7, .. }));
        let e = parse_rep("3", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, .. }));
        let e = parse_rep("0*chi(2)", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, .. }));
        let e = parse_rep("t(1/0)", f(5)).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 4, .. }));
    }

    #[test]
    fn kinds() {
        let f5 = f(5);
        assert_eq!(parse_kind("Sp", f5, None).unwrap(), GroupKind::Sp);
        assert_eq!(
            parse_kind("so-even:10", f5, None).unwrap(),
            GroupKind::SoEven {
                disc: f5.class_of(10).unwrap()
            }
        );
        let det = parse_rep("chi(2)", f5).unwrap().det();
        assert_eq!(
            parse_kind("so-even", f5, Some(&det)).unwrap(),
            GroupKind::SoEven {
                disc: f5.class_of(2).unwrap()
            }
        );
        assert!(parse_kind("gl", f5, None).is_err());
    }
}
