use langparam::corpus::{enumerate_params, recipe_pairs, Family};
use langparam::dsl::parse_rep;
use langparam::exec::map_indexed;
use langparam::f2::SignCharacter;
use langparam::localfield::{FormVariant, OrthSpaceLabel};
use langparam::packets::{component_group, EnhancedParam};
use langparam::sweep::{
    mp_cocycle_defect, prasad_p1_defect, prasad_p2_defect, recipe_pair_defect, seesaw_defect,
};
use langparam::thetaggp::{bessel_recipe, fj_recipe, prasad_p1, SeesawOptions};
use langparam::{GroupKind, PAdicField, Sign, WdRep};

fn f(p: u64) -> PAdicField {
    PAdicField::new(p).unwrap()
}

/// Every character of the kind's domain, as basis-value vectors on the full group.
fn all_etas(phi: &WdRep, kind: GroupKind) -> Vec<Vec<Sign>> {
    let rank = component_group(phi, kind).unwrap().rank();
    let mut out = Vec::new();
    for mask in 0u32..(1 << rank) {
        let v: Vec<Sign> = (0..rank)
            .map(|i| Sign::from_parity(mask >> i & 1 == 1))
            .collect();
        out.push(v);
    }
    out
}

#[test]
fn recipe_characters_on_small_pairs() {
    for p in [2u64, 3, 5] {
        let pairs = recipe_pairs(f(p), 4);
        let defects = map_indexed(pairs.len(), |i| {
            let (case, m, n) = &pairs[i];
            recipe_pair_defect(*case, m, n)
                .unwrap()
                .map(|w| format!("{m} / {n}: {w}"))
        });
        let bad: Vec<_> = defects.into_iter().flatten().collect();
        assert!(bad.is_empty(), "p={p}: {bad:?}");
    }
}

#[test]
fn recipe_at_identity_is_one() {
    let q3 = f(3);
    let m = parse_rep("chi(3)*sp(2)+sp(2)", q3).unwrap();
    let n = parse_rep("1+chi(2)+chi(3)+chi(6)", q3).unwrap();
    let b = bessel_recipe(&m, &n).unwrap();
    assert_eq!(b.pair.chi_on_m.eval(0).unwrap(), Sign::Plus);
    assert_eq!(b.pair.chi_on_n.eval(0).unwrap(), Sign::Plus);
    let n = parse_rep("1+2*chi(2)", q3).unwrap();
    let m = parse_rep("chi(2)*sp(2)+chi(3)*sp(2)", q3).unwrap();
    let fj = fj_recipe(&m, &n).unwrap();
    assert_eq!(fj.pair.chi_on_m.eval(0).unwrap(), Sign::Plus);
    assert_eq!(fj.pair.chi_on_n.eval(0).unwrap(), Sign::Plus);
}

#[test]
fn mp_change_psi_is_a_cocycle() {
    for p in [2u64, 3, 5] {
        let fl = f(p);
        for (phi, kind) in enumerate_params(fl, Family::Mp, 4) {
            for eta in all_etas(&phi, kind) {
                let e =
                    EnhancedParam::with_basis_values(kind, phi.clone(), &eta, fl.one()).unwrap();
                for c1 in fl.square_classes() {
                    for c2 in fl.square_classes() {
                        assert_eq!(
                            mp_cocycle_defect(&e, c1, c2).unwrap(),
                            None,
                            "{phi} {eta:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn prasad_p1_counts_and_round_trip() {
    for p in [2u64, 3, 5] {
        let fl = f(p);
        for (phi, kind) in enumerate_params(fl, Family::Sp, 5) {
            for eta in all_etas(&phi, kind) {
                let e =
                    EnhancedParam::with_basis_values(kind, phi.clone(), &eta, fl.one()).unwrap();
                for disc in fl.square_classes() {
                    let v = OrthSpaceLabel::new(phi.dim() + 1, disc, FormVariant::Plus).unwrap();
                    assert_eq!(prasad_p1_defect(&e, &v).unwrap(), None, "{phi} disc={disc}");
                }
            }
        }
    }
}

#[test]
fn prasad_p2_counts() {
    for p in [2u64, 3, 5] {
        let fl = f(p);
        for (phi, kind) in enumerate_params(fl, Family::SoEven, 4) {
            for eta in all_etas(&phi, kind) {
                let e =
                    EnhancedParam::with_basis_values(kind, phi.clone(), &eta, fl.one()).unwrap();
                assert_eq!(prasad_p2_defect(&e).unwrap(), None, "{phi}");
            }
        }
    }
}

#[test]
fn prasad_extensions_restrict_to_source() {
    let q5 = f(5);
    let phi = parse_rep("chi(2)+chi(5)+chi(10)", q5).unwrap();
    let e = EnhancedParam::with_basis_values(
        GroupKind::Sp,
        phi,
        &[Sign::Minus, Sign::Minus, Sign::Plus],
        q5.one(),
    )
    .unwrap();
    let v = OrthSpaceLabel::new(4, q5.one(), FormVariant::Plus).unwrap();
    let lift = prasad_p1(&e, &v).unwrap();
    assert_eq!(lift.partial.extensions.len(), 2);
    for chi in &lift.partial.extensions {
        let back: SignCharacter = chi
            .pull_back(&lift.partial.embedding, &e.eta.domain())
            .unwrap();
        assert_eq!(back, e.eta);
    }
}

#[test]
fn seesaw_on_small_generic_pairs() {
    for p in [3u64, 5] {
        let fl = f(p);
        let ms = enumerate_params(fl, Family::Mp, 2);
        let ns = enumerate_params(fl, Family::Sp, 3);
        let classes = fl.square_classes();
        for (m, _) in &ms {
            for (n, _) in ns.iter().filter(|(n, _)| n.dim() == m.dim() + 1) {
                for w in classes.windows(2) {
                    let r = seesaw_defect(m, n, w[0], w[1], SeesawOptions::default()).unwrap();
                    assert_eq!(r, None, "{m} / {n}");
                }
            }
        }
    }
}

#[test]
fn seesaw_rejects_bad_dimensions() {
    let q3 = f(3);
    let m = parse_rep("sp(2)", q3).unwrap();
    let n = parse_rep("1", q3).unwrap();
    assert!(seesaw_defect(
        &m,
        &n,
        q3.one(),
        q3.class_of(3).unwrap(),
        SeesawOptions::default()
    )
    .is_err());
}
