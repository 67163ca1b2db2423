#![allow(dead_code)]

use digit_fractals::radix::{DigitString, DigitSystem};
use rand::Rng;

/// Every legal (m, b) with m in the given range.
pub fn systems(radices: std::ops::RangeInclusive<i64>) -> Vec<DigitSystem> {
    radices
        .flat_map(|m| (0..=m / 2).filter_map(move |b| DigitSystem::new(m, b).ok()))
        .collect()
}

/// Random numeral with digits at exponents `lo..=hi`, where `lo` is drawn
/// from `-max_frac..=0` and `hi` from `0..=max_int`.
pub fn random_numeral<R: Rng>(
    rng: &mut R,
    sys: DigitSystem,
    max_frac: i32,
    max_int: i32,
) -> DigitString {
    let lo = rng.gen_range(-max_frac..=0);
    let hi = rng.gen_range(0..=max_int);
    fixed_numeral(rng, sys, lo, hi)
}

/// Random numeral with digits at exponents exactly `lo..=hi`.
pub fn fixed_numeral<R: Rng>(rng: &mut R, sys: DigitSystem, lo: i32, hi: i32) -> DigitString {
    let digits: Vec<(i32, i64)> = (lo..=hi)
        .map(|e| (e, rng.gen_range(sys.alphabet())))
        .collect();
    DigitString::new(sys, digits).unwrap()
}
