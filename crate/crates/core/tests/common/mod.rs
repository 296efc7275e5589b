//! Oracles that never call the library's own formulas.

#![allow(dead_code)]

use std::f64::consts::PI;

pub fn vp(mut n: i128, p: i128) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Whether the nonzero integer r is a square in Q_p.
pub fn is_square_qp(r: i128, p: i128) -> bool {
    let v = vp(r, p);
    if v % 2 == 1 {
        return false;
    }
    let u = r / p.pow(v);
    if p == 2 {
        u.rem_euclid(8) == 1
    } else {
        (1..p).any(|z| (z * z - u).rem_euclid(p) == 0)
    }
}

fn search_modulus(p: i128) -> i128 {
    if p == 2 {
        64
    } else {
        p * p * p
    }
}

/// +1 iff z^2 = a x^2 + b y^2 has a nonzero solution, by search over
/// primitive (x, y) modulo p^3 (2^6 for p = 2).
pub fn hilbert_brute(a: i64, b: i64, p: u64) -> i32 {
    let (a, b, p) = (a as i128, b as i128, p as i128);
    let m = search_modulus(p);
    let hit = |r: i128| r == 0 || is_square_qp(r, p);
    // x = 1, any y
    if (0..m).any(|y| hit(a + b * y * y)) {
        return 1;
    }
    // y = 1, x divisible by p
    if (0..m).step_by(p as usize).any(|x| hit(a * x * x + b)) {
        return 1;
    }
    -1
}

/// Representatives of Q_p^x / Q_p^x2 found by search.
pub fn class_reps(p: u64) -> Vec<i64> {
    let p = p as i64;
    let mut reps: Vec<i64> = Vec::new();
    for n in (1..200).flat_map(|k| [k, -k]) {
        if n % (p * p) == 0 {
            continue;
        }
        let new = reps
            .iter()
            .all(|&r| !is_square_qp((r as i128) * (n as i128), p as i128));
        if new {
            reps.push(n);
        }
    }
    reps
}

/// Whether m and n lie in the same square class.
pub fn same_class(m: i64, n: i64, p: u64) -> bool {
    is_square_qp(m as i128 * n as i128, p as i128)
}

/// sum over units x mod p^level of chi_d(x) e^{2 pi i x / p^level}, with
/// chi_d(x) taken from the conic oracle.
pub fn gauss_float(d: i64, p: u64, level: u32) -> (f64, f64) {
    let m = (p as i64).pow(level);
    let (mut re, mut im) = (0.0, 0.0);
    for x in 1..m {
        if x % p as i64 == 0 {
            continue;
        }
        let s = hilbert_brute(d, x, p) as f64;
        let t = 2.0 * PI * x as f64 / m as f64;
        re += s * t.cos();
        im += s * t.sin();
    }
    (re, im)
}
