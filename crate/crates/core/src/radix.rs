//! Standard and balanced base-`m` numerals.
//!
//! A [`DigitSystem`] fixes a radix `m` and a balance offset `b`; its digit
//! alphabet is the interval `[-b, m-1-b]`. `b = 0` is the ordinary base-`m`
//! system, `b >= 1` a balanced one (balanced ternary is `m = 3, b = 1`).
//!
//! [`DigitString`] stores digits sparsely by exponent so integer and
//! fractional parts live in the same value.
//!
//! # Text format
//!
//! ```text
//! numeral := "[" digits "]@" m "b" b
//! digits  := token (" " token)*
//! token   := digit | "."
//! digit   := "-"? [0-9]+            (also accepted on input: "(" "-"? [0-9]+ ")")
//! ```
//!
//! Digits are written most significant first. Without a `.` the last digit
//! has exponent 0. At most one `.` may appear and it must have a digit on
//! both sides. Printing always emits the canonical form: no leading zeros
//! above exponent 0, no trailing zeros below it, and `[0]` for zero, e.g.
//! `[1 -1 -1 -1]@3b1` or `[1 0 . 2]@3b0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("malformed rational `{text}`")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Radix and digit alphabet `[-b, m-1-b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitSystem {
    m: i64,
    b: i64,
}

impl DigitSystem {
    pub fn new(m: i64, b: i64) -> Result<Self> {
        let standard = m >= 2 && b == 0;
        let balanced = m > 2 && b >= 1 && 2 * b <= m;
        if standard || balanced {
            Ok(Self { m, b })
        } else {
            Err(Error::InvalidSystem { m, b })
        }
    }

    pub fn standard(m: i64) -> Result<Self> {
        Self::new(m, 0)
    }

    pub fn radix(&self) -> i64 {
        self.m
    }

    pub fn balance(&self) -> i64 {
        self.b
    }

    pub fn is_balanced(&self) -> bool {
        self.b != 0
    }

    pub fn min_digit(&self) -> i64 {
        -self.b
    }

    pub fn max_digit(&self) -> i64 {
        self.m - 1 - self.b
    }

    pub fn alphabet(&self) -> RangeInclusive<i64> {
        self.min_digit()..=self.max_digit()
    }

    pub fn contains_digit(&self, digit: i64) -> bool {
        self.alphabet().contains(&digit)
    }

    /// Range of values taken by pure fractional strings `[0.d1 d2 ...]`.
    pub fn value_interval(&self) -> ValueInterval {
        ValueInterval {
            lo: ratio(-self.b, self.m - 1),
            hi: ratio(self.m - 1 - self.b, self.m - 1),
        }
    }

    /// Splits a raw column sum into the alphabet digit congruent to it mod `m`
    /// and the carry into the next column.
    fn split_column(&self, sum: i64) -> (i64, i64) {
        let mut digit = sum.rem_euclid(self.m);
        if digit > self.max_digit() {
            digit -= self.m;
        }
        (digit, (sum - digit) / self.m)
    }

    fn check_digit(&self, digit: i64) -> Result<()> {
        if self.contains_digit(digit) {
            Ok(())
        } else {
            Err(Error::DigitOutOfRange {
                digit,
                lo: self.min_digit(),
                hi: self.max_digit(),
            })
        }
    }

    fn ensure_same(&self, other: &DigitSystem) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SystemMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for DigitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}b{}", self.m, self.b)
    }
}

/// Closed interval `[-b/(m-1), (m-1-b)/(m-1)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ValueInterval {
    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    fn check(&self, value: &Rational) -> Result<()> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(Error::OutsideInterval {
                value: value.to_string(),
                lo: self.lo.to_string(),
                hi: self.hi.to_string(),
            })
        }
    }
}

/// Finite signed-digit numeral. Exponents absent from the map are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    system: DigitSystem,
    digits: BTreeMap<i32, i64>,
}

impl DigitString {
    pub fn zero(system: DigitSystem) -> Self {
        Self {
            system,
            digits: BTreeMap::new(),
        }
    }

    /// Builds a numeral from `(exponent, digit)` pairs. Later pairs for the
    /// same exponent overwrite earlier ones.
    pub fn new(system: DigitSystem, digits: impl IntoIterator<Item = (i32, i64)>) -> Result<Self> {
        let mut out = Self::zero(system);
        for (exp, digit) in digits {
            system.check_digit(digit)?;
            if digit == 0 {
                out.digits.remove(&exp);
            } else {
                out.digits.insert(exp, digit);
            }
        }
        Ok(out)
    }

    /// Digits given most significant first; the last one has exponent
    /// `lowest_exponent`.
    pub fn from_msd(system: DigitSystem, digits: &[i64], lowest_exponent: i32) -> Result<Self> {
        let top = lowest_exponent + digits.len() as i32 - 1;
        Self::new(
            system,
            digits.iter().enumerate().map(|(k, &d)| (top - k as i32, d)),
        )
    }

    /// Pure fractional numeral `[0.d1 d2 ...]`.
    pub fn fraction(system: DigitSystem, digits: &[i64]) -> Result<Self> {
        Self::from_msd(system, digits, -(digits.len() as i32))
    }

    pub fn system(&self) -> DigitSystem {
        self.system
    }

    pub fn digit(&self, exp: i32) -> i64 {
        self.digits.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero digits in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.digits.iter().map(|(&e, &d)| (e, d))
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.digits.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.digits.keys().next_back().copied()
    }

    pub fn value(&self) -> Rational {
        digits_to_rational(self)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hi = self.max_exponent().unwrap_or(0).max(0);
        let lo = self.min_exponent().unwrap_or(0).min(0);
        let mut tokens = Vec::with_capacity((hi - lo + 2) as usize);
        for exp in (lo..=hi).rev() {
            if exp == -1 {
                tokens.push(".".to_string());
            }
            tokens.push(self.digit(exp).to_string());
        }
        write!(f, "[{}]@{}", tokens.join(" "), self.system)
    }
}

impl FromStr for DigitString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("malformed numeral `{text}`: {why}"));
        let text = text.trim();
        let body = text.strip_prefix('[').ok_or_else(|| bad("missing `[`"))?;
        let (body, suffix) = body.split_once("]@").ok_or_else(|| bad("missing `]@`"))?;
        let (m, b) = suffix
            .split_once('b')
            .ok_or_else(|| bad("missing `b` in suffix"))?;
        let m: i64 = m.parse().map_err(|_| bad("bad base"))?;
        let b: i64 = b.parse().map_err(|_| bad("bad balance"))?;
        let system = DigitSystem::new(m, b)?;

        let mut whole = Vec::new();
        let mut frac = Vec::new();
        let mut seen_point = false;
        for token in body.split_whitespace() {
            if token == "." {
                if seen_point {
                    return Err(bad("more than one `.`"));
                }
                seen_point = true;
                continue;
            }
            let inner = token
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(token);
            if inner.starts_with('+') {
                return Err(bad("unexpected `+`"));
            }
            let digit: i64 = inner.parse().map_err(|_| bad("bad digit"))?;
            if seen_point {
                frac.push(digit);
            } else {
                whole.push(digit);
            }
        }
        if whole.is_empty() || (seen_point && frac.is_empty()) {
            return Err(bad("a digit is required on each side of `.`"));
        }
        let frac_len = frac.len() as i32;
        whole.extend(frac);
        DigitString::from_msd(system, &whole, -frac_len)
    }
}

/// Integer to numeral by repeated division, remainders taken in `[0, m-1]`
/// and shifted down by `m` when they exceed the top digit.
pub fn int_to_digits(n: &BigInt, sys: DigitSystem) -> Result<DigitString> {
    if n.is_negative() && !sys.is_balanced() {
        return Err(Error::NegativeStandard(n.to_string()));
    }
    let m = BigInt::from(sys.radix());
    let mut rest = n.clone();
    let mut digits = BTreeMap::new();
    let mut exp = 0i32;
    while !rest.is_zero() {
        let mut digit = rest
            .mod_floor(&m)
            .to_i64()
            .expect("remainder below radix fits in i64");
        if digit > sys.max_digit() {
            digit -= sys.radix();
        }
        if digit != 0 {
            digits.insert(exp, digit);
        }
        rest = (rest - digit) / &m;
        exp += 1;
    }
    Ok(DigitString {
        system: sys,
        digits,
    })
}

/// Exact value `sum d_i m^i`.
pub fn digits_to_rational(d: &DigitString) -> Rational {
    let m = BigInt::from(d.system.radix());
    let Some(lowest) = d.min_exponent() else {
        return Rational::zero();
    };
    // Horner over the shifted integer sum d_i m^(i - lowest).
    let top = d.max_exponent().unwrap_or(lowest);
    let mut acc = BigInt::zero();
    for exp in (lowest..=top).rev() {
        acc = acc * &m + d.digit(exp);
    }
    let scale = num_traits::pow(m, lowest.unsigned_abs() as usize);
    if lowest >= 0 {
        Rational::from_integer(acc * scale)
    } else {
        Rational::new(acc, scale)
    }
}

/// Column addition from the lowest exponent upward with carries in `{-1, 0, 1}`.
pub fn add(x: &DigitString, y: &DigitString) -> Result<DigitString> {
    x.system.ensure_same(&y.system)?;
    let sys = x.system;
    let (Some(lo), Some(hi)) = (
        x.min_exponent().into_iter().chain(y.min_exponent()).min(),
        x.max_exponent().into_iter().chain(y.max_exponent()).max(),
    ) else {
        return Ok(DigitString::zero(sys));
    };
    let mut digits = BTreeMap::new();
    let mut carry = 0i64;
    let mut exp = lo;
    while exp <= hi || carry != 0 {
        let (digit, next) = sys.split_column(x.digit(exp) + y.digit(exp) + carry);
        debug_assert!((-1..=1).contains(&next));
        if digit != 0 {
            digits.insert(exp, digit);
        }
        carry = next;
        exp += 1;
    }
    Ok(DigitString {
        system: sys,
        digits,
    })
}

/// True iff every column sum `x_i + y_i` already lies in the alphabet.
pub fn carry_free(x: &DigitString, y: &DigitString) -> Result<bool> {
    x.system.ensure_same(&y.system)?;
    let sys = x.system;
    let exps = x.digits.keys().chain(y.digits.keys());
    Ok(exps
        .copied()
        .all(|e| sys.contains_digit(x.digit(e) + y.digit(e))))
}

/// Digits `d` whose remainder `m*r - d` stays in the value interval, in
/// ascending order, each paired with that remainder.
pub fn frac_digit_choices(r: &Rational, sys: DigitSystem) -> Result<Vec<(i64, Rational)>> {
    let interval = sys.value_interval();
    interval.check(r)?;
    let scaled = r * Rational::from_integer(BigInt::from(sys.radix()));
    // d ranges over [m r - hi, m r - lo], an interval of width 1.
    let first = (&scaled - &interval.hi).ceil().to_integer();
    let last = (&scaled - &interval.lo).floor().to_integer();
    let mut out = Vec::with_capacity(2);
    let mut d = first;
    while d <= last {
        let digit = d.to_i64().expect("digit candidate fits in i64");
        if sys.contains_digit(digit) {
            let rem = &scaled - Rational::from_integer(d.clone());
            out.push((digit, rem));
        }
        d += 1;
    }
    Ok(out)
}

/// All distinct length-`depth` prefixes of expansions `[0.d1 d2 ...]` of `r`,
/// ordered lexicographically by digit value.
pub fn expansions(r: &Rational, sys: DigitSystem, depth: usize) -> Result<Vec<DigitString>> {
    sys.value_interval().check(r)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(depth);
    unfold(r, sys, depth, &mut prefix, &mut out)?;
    Ok(out)
}

fn unfold(
    r: &Rational,
    sys: DigitSystem,
    depth: usize,
    prefix: &mut Vec<i64>,
    out: &mut Vec<DigitString>,
) -> Result<()> {
    if prefix.len() == depth {
        let s = DigitString::fraction(sys, prefix)?;
        if !out.contains(&s) {
            out.push(s);
        }
        return Ok(());
    }
    for (digit, rem) in frac_digit_choices(r, sys)? {
        prefix.push(digit);
        unfold(&rem, sys, depth, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Convenience for tests and callers holding machine integers.
pub fn int_to_digits_i64(n: i64, sys: DigitSystem) -> Result<DigitString> {
    int_to_digits(&BigInt::from(n), sys)
}
