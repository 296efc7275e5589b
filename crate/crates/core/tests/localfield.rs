mod common;

use common::{class_reps, hilbert_brute, same_class};
use langparam::localfield::{disc_direct_sum, hilbert_symbol, norm_group_contains, quad_char_eval};
use langparam::{PAdicField, QuadChar, Sign};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn f(p: u64) -> PAdicField {
    PAdicField::new(p).unwrap()
}

#[test]
fn class_count_matches_search() {
    for p in PRIMES {
        let expected = if p == 2 { 8 } else { 4 };
        assert_eq!(class_reps(p).len(), expected, "p = {p}");
        assert_eq!(f(p).square_classes().len(), expected);
    }
}

#[test]
fn labels_lie_in_their_class() {
    for p in PRIMES {
        for c in f(p).square_classes() {
            assert_eq!(f(p).class_of(c.label()).unwrap(), c);
        }
        for n in (1..300).flat_map(|k| [k, -k]) {
            let c = f(p).class_of(n).unwrap();
            assert!(
                same_class(n, c.label(), p),
                "p={p} n={n} label={}",
                c.label()
            );
        }
    }
}

#[test]
fn hilbert_matches_conic_search() {
    for p in PRIMES {
        let reps = class_reps(p);
        for &a in &reps {
            for &b in &reps {
                let got =
                    hilbert_symbol(f(p).class_of(a).unwrap(), f(p).class_of(b).unwrap()).unwrap();
                assert_eq!(got.as_i32(), hilbert_brute(a, b, p), "p={p} ({a},{b})");
            }
        }
    }
}

#[test]
fn documented_values() {
    let q5 = f(5);
    let q2 = f(2);
    let h = |fl: PAdicField, a, b| {
        hilbert_symbol(fl.class_of(a).unwrap(), fl.class_of(b).unwrap()).unwrap()
    };
    assert_eq!(h(q5, 2, 5), Sign::Minus);
    assert_eq!(h(q2, -1, -1), Sign::Minus);
    assert_eq!(
        quad_char_eval(
            QuadChar::new(q5.class_of(5).unwrap()),
            q5.class_of(2).unwrap()
        )
        .unwrap(),
        Sign::Minus
    );
    let u = q5.class_of(2).unwrap();
    assert!(!norm_group_contains(u, q5.class_of(5).unwrap()).unwrap());
    assert!(norm_group_contains(u, u).unwrap());
    assert_eq!(
        disc_direct_sum(1, q5.one(), 1, q5.one()).unwrap(),
        q5.class_of(-1).unwrap()
    );
    assert_eq!(q5.class_of(-1).unwrap(), q5.one());
}

#[test]
fn nondegenerate_pairing() {
    for p in PRIMES {
        let classes = f(p).square_classes();
        for &a in &classes {
            if a.is_one() {
                continue;
            }
            assert!(classes
                .iter()
                .any(|&b| hilbert_symbol(a, b).unwrap() == Sign::Minus));
        }
    }
}

#[test]
fn mixed_fields_rejected() {
    assert!(hilbert_symbol(f(3).one(), f(5).one()).is_err());
}

fn nonzero() -> impl Strategy<Value = i64> {
    (1i64..100_000).prop_flat_map(|n| prop_oneof![Just(n), Just(-n)])
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn class_of_is_multiplicative(a in nonzero(), b in nonzero(), pi in 0usize..6) {
        let fl = f(PRIMES[pi]);
        let prod = fl.class_of(a).unwrap() * fl.class_of(b).unwrap();
        prop_assert_eq!(prod, fl.class_of(a * b).unwrap());
    }

    #[test]
    fn hilbert_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), pi in 0usize..6) {
        let fl = f(PRIMES[pi]);
        let (a, b, c) = (fl.class_of(a).unwrap(), fl.class_of(b).unwrap(), fl.class_of(c).unwrap());
        prop_assert_eq!(hilbert_symbol(a * b, c).unwrap(), hilbert_symbol(a, c).unwrap() * hilbert_symbol(b, c).unwrap());
        prop_assert_eq!(hilbert_symbol(a, b).unwrap(), hilbert_symbol(b, a).unwrap());
        let minus_a = fl.class_of(-1).unwrap() * a;
        prop_assert_eq!(hilbert_symbol(a, minus_a).unwrap(), Sign::Plus);
    }
}
