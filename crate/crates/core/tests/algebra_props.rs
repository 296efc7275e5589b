use langparam::corpus::{item_rng, random_param, Family, SampleOptions};
use langparam::dsl::{parse_rep, print_rep};
use langparam::wdalg::{SelfDualSign, TwistedChar};
use langparam::{PAdicField, Rational, WdIrred, WdRep};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];
const FAMILIES: [Family; 4] = [Family::Sp, Family::SoOdd, Family::SoEven, Family::Mp];

fn sample(seed: u64, pi: usize, fi: usize, tempered: bool) -> WdRep {
    let field = PAdicField::new(PRIMES[pi]).unwrap();
    let opts = SampleOptions {
        max_dim: 8,
        tempered,
        max_n: 4,
    };
    random_param(&mut item_rng(seed, 0), field, FAMILIES[fi], opts).0
}

fn rep() -> impl Strategy<Value = WdRep> {
    (any::<u64>(), 0usize..4, 0usize..4, any::<bool>()).prop_map(|(s, p, f, t)| sample(s, p, f, t))
}

fn pair() -> impl Strategy<Value = (WdRep, WdRep)> {
    (any::<u64>(), any::<u64>(), 0usize..4, 0usize..4)
        .prop_map(|(s, t, p, f)| (sample(s, p, f, false), sample(t, p, f, false)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse(a in rep()) {
        let back = parse_rep(&print_rep(&a), a.field()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dual_is_an_involution(a in rep()) {
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.dual().dim(), a.dim());
    }

    #[test]
    fn tensor_dimensions_and_det((a, b) in pair()) {
        let t = a.tensor(&b).unwrap();
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        // det(A ⊗ B) = det(A)^dim B det(B)^dim A
        let want = a.det().pow(b.dim() as i64).mul(&b.det().pow(a.dim() as i64));
        prop_assert_eq!(t.det(), want);
        prop_assert_eq!(a.tensor(&b).unwrap(), b.tensor(&a).unwrap());
    }

    #[test]
    fn squares_split_the_tensor_square(a in rep()) {
        let whole = a.tensor(&a).unwrap();
        prop_assert_eq!(a.sym_square().sum(&a.ext_square()), whole);
        let n = a.dim();
        prop_assert_eq!(a.ext_square().dim(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn sums_of_parameters_are_self_dual((a, b) in pair()) {
        let s = a.sum(&b);
        prop_assert_eq!(s.dual(), s.clone());
        prop_assert_ne!(s.sign_of(), SelfDualSign::None);
    }

    #[test]
    fn langlands_data_reassembles(a in rep()) {
        prop_assert_eq!(a.langlands_decompose().unwrap().reassemble(), a);
    }
}

#[test]
fn documented_algebra() {
    let q3 = PAdicField::new(3).unwrap();
    let r = |s: &str| parse_rep(s, q3).unwrap();
    assert_eq!(r("sp(2)").tensor(&r("sp(2)")).unwrap(), r("sp(3)+1"));
    assert_eq!(r("chi(3)").tensor(&r("chi(3)")).unwrap(), r("1"));
    assert_eq!(r("sp(2)").ext_square(), r("1"));
    assert_eq!(r("sp(2)").sym_square(), r("sp(3)"));
    assert_eq!(r("t(1/2)+t(-1/2)").sym_square(), r("t(1)+1+t(-1)"));
    assert_eq!(
        r("chi(2)+chi(3)").det(),
        TwistedChar::quadratic(q3.class_of(6).unwrap(), Rational::from(0))
    );
    assert!(r("chi(3)*sp(2)").det().is_trivial());
    assert_eq!(r("sp(3)").sign_of(), SelfDualSign::Orthogonal);
    assert_eq!(r("chi(2)*sp(2)").sign_of(), SelfDualSign::Symplectic);
    assert_eq!(
        r("chi(2)*t(1/2)+chi(2)*t(-1/2)").sign_of(),
        SelfDualSign::Both
    );
    assert!(!r("t(1/2)+t(-1/2)").is_tempered());
    let x = WdIrred::quadratic(q3.one(), Rational::new(1, 2), 1);
    assert_eq!(WdRep::irred(x.clone()).dual(), WdRep::irred(x.dual()));
}

#[test]
fn parse_errors_carry_offsets() {
    let q3 = PAdicField::new(3).unwrap();
    for bad in ["chi(0)", "sp(0)", "chi(2)*chi(3)", "1+", "t(1/0)", "2*"] {
        assert!(parse_rep(bad, q3).is_err(), "{bad}");
    }
    let err = parse_rep("1+chi(2)+?", q3).unwrap_err().to_string();
    assert!(err.contains('9'), "{err}");
}
