//! Seeded random and exhaustive corpora of parameters.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::localfield::{PAdicField, SquareClass};
use crate::wdalg::{GroupKind, Rational, TwistedChar, WdIrred, WdRep};

/// The family a corpus draws from; SO-even picks its discriminant from the sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sp,
    SoOdd,
    SoEven,
    Mp,
}

impl Family {
    fn orthogonal(self) -> bool {
        matches!(self, Family::Sp | Family::SoEven)
    }

    pub fn of_kind(kind: GroupKind) -> Family {
        match kind {
            GroupKind::Sp => Family::Sp,
            GroupKind::SoOdd => Family::SoOdd,
            GroupKind::SoEven { .. } => Family::SoEven,
            GroupKind::Mp => Family::Mp,
        }
    }
}

/// Random-number generator for item `index` of a corpus with `seed`.
pub fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Options for random sampling.
#[derive(Debug, Clone, Copy)]
pub struct SampleOptions {
    pub max_dim: u32,
    pub tempered: bool,
    pub max_n: u32,
}

impl SampleOptions {
    pub fn tempered(max_dim: u32) -> SampleOptions {
        SampleOptions {
            max_dim,
            tempered: true,
            max_n: 4,
        }
    }
}

fn random_class<R: Rng>(rng: &mut R, field: PAdicField) -> SquareClass {
    *field
        .square_classes()
        .choose(rng)
        .expect("classes are nonempty")
}

fn random_n<R: Rng>(rng: &mut R, max_n: u32, odd: bool) -> u32 {
    let choices: Vec<u32> = (1..=max_n.max(2)).filter(|n| (n % 2 == 1) == odd).collect();
    *choices.choose(rng).expect("some n of each parity")
}

const EXPONENTS: [(i64, i64); 4] = [(1, 2), (1, 4), (1, 1), (3, 2)];

fn random_blocks<R: Rng>(
    rng: &mut R,
    field: PAdicField,
    family: Family,
    opts: SampleOptions,
) -> WdRep {
    let mut rep = WdRep::zero(field);
    let blocks = rng.random_range(0..=3);
    for _ in 0..blocks {
        let d = random_class(rng, field);
        let roll = rng.random_range(0..10);
        if roll < 6 {
            let n = random_n(rng, opts.max_n, family.orthogonal());
            let mult = rng.random_range(1..=2);
            rep.add(WdIrred::quadratic(d, Rational::from(0), n), mult);
        } else if roll < 8 || opts.tempered {
            let n = random_n(rng, opts.max_n, !family.orthogonal());
            rep.add(WdIrred::quadratic(d, Rational::from(0), n), 2);
        } else {
            let (a, b) = *EXPONENTS.choose(rng).expect("nonempty");
            let x = Rational::new(a, b);
            let n = rng.random_range(1..=2);
            let up = WdIrred::quadratic(d, x, n);
            rep.add(up.dual(), 1);
            rep.add(up, 1);
        }
    }
    rep
}

fn det_class(rep: &WdRep) -> SquareClass {
    rep.det().finite.quad
}

fn project<R: Rng>(rng: &mut R, mut rep: WdRep, family: Family) -> (WdRep, GroupKind) {
    let field = rep.field();
    match family {
        Family::Sp => {
            let delta = det_class(&rep);
            if rep.dim().is_multiple_of(2) {
                rep.add(WdIrred::quadratic(delta, Rational::from(0), 1), 1);
            } else if !delta.is_one() {
                rep.add(WdIrred::quadratic(delta, Rational::from(0), 1), 1);
                rep.add(WdIrred::new(TwistedChar::trivial(field), 1), 1);
            }
            (rep, GroupKind::Sp)
        }
        Family::SoEven => {
            if rep.dim() % 2 == 1 {
                let e = random_class(rng, field);
                rep.add(WdIrred::quadratic(e, Rational::from(0), 1), 1);
            }
            let disc = det_class(&rep);
            (rep, GroupKind::SoEven { disc })
        }
        Family::SoOdd => (rep, GroupKind::SoOdd),
        Family::Mp => (rep, GroupKind::Mp),
    }
}

/// A random parameter of the family, valid by construction.
pub fn random_param<R: Rng>(
    rng: &mut R,
    field: PAdicField,
    family: Family,
    opts: SampleOptions,
) -> (WdRep, GroupKind) {
    loop {
        let raw = random_blocks(rng, field, family, opts);
        let (rep, kind) = project(rng, raw, family);
        if rep.dim() <= opts.max_dim && rep.classify_parameter(kind).is_ok() {
            return (rep, kind);
        }
    }
}

/// A random parameter of exactly the given dimension.
pub fn random_param_of_dim<R: Rng>(
    rng: &mut R,
    field: PAdicField,
    family: Family,
    dim: u32,
    opts: SampleOptions,
) -> (WdRep, GroupKind) {
    let opts = SampleOptions {
        max_dim: dim,
        max_n: opts.max_n.min(dim.max(2)),
        ..opts
    };
    loop {
        let (rep, kind) = random_param(rng, field, family, opts);
        if rep.dim() == dim {
            return (rep, kind);
        }
    }
}

/// A random symplectic representation (not necessarily of any group kind's
/// determinant) of dimension at most `max_dim`.
pub fn random_symplectic<R: Rng>(rng: &mut R, field: PAdicField, opts: SampleOptions) -> WdRep {
    random_param(rng, field, Family::Mp, opts).0
}

fn push_multisets(
    cands: &[(WdIrred, u32)],
    budget: u32,
    current: &mut Vec<(WdIrred, u32)>,
    field: PAdicField,
    out: &mut Vec<WdRep>,
) {
    let Some(((x, step), rest)) = cands.split_first() else {
        let rep = WdRep::from_parts(field, current.iter().cloned()).expect("one field");
        out.push(rep);
        return;
    };
    let mut k = 0;
    loop {
        if k > 0 {
            current.push((x.clone(), k));
        }
        push_multisets(rest, budget - k * x.n, current, field, out);
        if k > 0 {
            current.pop();
        }
        k += step;
        if k * x.n > budget {
            break;
        }
    }
}

/// Every tempered quadratic parameter of the family with dimension at most `max_dim`.
pub fn enumerate_params(
    field: PAdicField,
    family: Family,
    max_dim: u32,
) -> Vec<(WdRep, GroupKind)> {
    let mut cands = Vec::new();
    for d in field.square_classes() {
        for n in 1..=max_dim {
            let same = (n % 2 == 1) == family.orthogonal();
            cands.push((
                WdIrred::quadratic(d, Rational::from(0), n),
                if same { 1 } else { 2 },
            ));
        }
    }
    let mut reps = Vec::new();
    push_multisets(&cands, max_dim, &mut Vec::new(), field, &mut reps);
    let mut out = Vec::new();
    for rep in reps {
        let kind = match family {
            Family::Sp => GroupKind::Sp,
            Family::SoOdd => GroupKind::SoOdd,
            Family::Mp => GroupKind::Mp,
            Family::SoEven => GroupKind::SoEven {
                disc: det_class(&rep),
            },
        };
        if rep.classify_parameter(kind).is_ok() {
            out.push((rep, kind));
        }
    }
    out.sort_by(|a, b| {
        (a.0.dim(), crate::dsl::print_rep(&a.0)).cmp(&(b.0.dim(), crate::dsl::print_rep(&b.0)))
    });
    out
}

/// Which branching recipe a pair feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecipeCase {
    Bessel,
    FourierJacobi,
}

/// Every codimension-one pair of tempered quadratic parameters with both
/// dimensions at most `max_dim`: Bessel pairs (SO-odd, SO-even) with
/// dim N in {dim M, dim M + 2}, and Fourier–Jacobi pairs (Mp, Sp) with
/// dim N = dim M ± 1.
pub fn recipe_pairs(field: PAdicField, max_dim: u32) -> Vec<(RecipeCase, WdRep, WdRep)> {
    let mut out = Vec::new();
    let so_odd = enumerate_params(field, Family::SoOdd, max_dim);
    let so_even = enumerate_params(field, Family::SoEven, max_dim);
    for (m, _) in &so_odd {
        for (n, _) in &so_even {
            if n.dim() == m.dim() || n.dim() == m.dim() + 2 {
                out.push((RecipeCase::Bessel, m.clone(), n.clone()));
            }
        }
    }
    let mp = enumerate_params(field, Family::Mp, max_dim);
    let sp = enumerate_params(field, Family::Sp, max_dim);
    for (m, _) in &mp {
        for (n, _) in &sp {
            if n.dim() == m.dim() + 1 || n.dim() + 1 == m.dim() {
                out.push((RecipeCase::FourierJacobi, m.clone(), n.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_params_are_valid() {
        let field = PAdicField::new(3).unwrap();
        for (i, fam) in [Family::Sp, Family::SoOdd, Family::SoEven, Family::Mp]
            .iter()
            .enumerate()
        {
            let mut rng = item_rng(7, i as u64);
            for _ in 0..200 {
                let opts = SampleOptions {
                    max_dim: 8,
                    tempered: false,
                    max_n: 4,
                };
                let (rep, kind) = random_param(&mut rng, field, *fam, opts);
                assert!(rep.classify_parameter(kind).is_ok());
                assert!(rep.dim() <= 8);
            }
        }
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let field = PAdicField::new(5).unwrap();
        let a = random_param(
            &mut item_rng(1, 4),
            field,
            Family::Sp,
            SampleOptions::tempered(9),
        );
        let b = random_param(
            &mut item_rng(1, 4),
            field,
            Family::Sp,
            SampleOptions::tempered(9),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_small_cases() {
        let field = PAdicField::new(3).unwrap();
        let sp1 = enumerate_params(field, Family::Sp, 1);
        assert_eq!(sp1.len(), 1);
        let mp2 = enumerate_params(field, Family::Mp, 2);
        // zero rep, four chi_d ⊗ nu_2, and 2*chi_d for four classes
        assert_eq!(mp2.len(), 9);
        let so2 = enumerate_params(field, Family::SoEven, 2);
        // zero rep, chi_a + chi_b for a != b, and 2*chi_a
        assert_eq!(so2.len(), 1 + 6 + 4);
    }

    #[test]
    fn recipe_pair_dimensions() {
        let field = PAdicField::new(3).unwrap();
        let pairs = recipe_pairs(field, 2);
        // Bessel: (0,0), (0,2) x 10, (2,2) 8 x 10; FJ: (0,1), (2,1) x 8
        assert_eq!(pairs.len(), 1 + 10 + 80 + 1 + 8);
    }
}
