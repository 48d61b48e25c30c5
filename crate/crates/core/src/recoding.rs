//! Signed-digit expansions of nonnegative integers.
//!
//! All expansions are stored most-significant digit first, the order in
//! which the scalar-multiplication loops consume them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MIN_WIDTH: u32 = 2;
pub const MAX_WIDTH: u32 = 16;

/// A base-2 expansion `sum d_i 2^i` with signed digits.
///
/// `digits[0]` is the most significant digit. Leading zeros are stripped on
/// construction, so the first digit of a nonempty expansion is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedExpansion {
    digits: Vec<i32>,
    digit_bound: u32,
}

impl SignedExpansion {
    /// Builds an expansion from MSB-first digits.
    ///
    /// Every digit must satisfy `|d| <= digit_bound`; for `digit_bound > 1`
    /// nonzero digits must also be odd.
    pub fn from_msb_digits(digits: Vec<i32>, digit_bound: u32) -> Result<Self> {
        if digit_bound == 0 {
            return Err(Error::InvalidParameter(
                "digit bound must be positive".into(),
            ));
        }
        for &d in &digits {
            if d.unsigned_abs() > digit_bound || (digit_bound > 1 && d != 0 && d % 2 == 0) {
                return Err(Error::InvalidDigit {
                    digit: d,
                    bound: digit_bound,
                });
            }
        }
        Ok(Self::new_unchecked(digits, digit_bound))
    }

    /// Builds an expansion from LSB-first digits, as produced by right-to-left recoders.
    pub fn from_lsb_digits(mut digits: Vec<i32>, digit_bound: u32) -> Result<Self> {
        digits.reverse();
        Self::from_msb_digits(digits, digit_bound)
    }

    fn new_unchecked(mut digits: Vec<i32>, digit_bound: u32) -> Self {
        let lead = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
        digits.drain(..lead);
        Self {
            digits,
            digit_bound,
        }
    }

    pub fn empty() -> Self {
        Self {
            digits: Vec::new(),
            digit_bound: 1,
        }
    }

    /// Digits, most significant first.
    pub fn digits(&self) -> &[i32] {
        &self.digits
    }

    pub fn digit_bound(&self) -> u32 {
        self.digit_bound
    }

    /// Digit at position `i` counted from the least significant end.
    pub fn digit_at(&self, i: usize) -> i32 {
        let l = self.digits.len();
        if i < l {
            self.digits[l - 1 - i]
        } else {
            0
        }
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn leading_digit(&self) -> Option<i32> {
        self.digits.first().copied()
    }

    /// Number of positions from the leading nonzero digit down to position 0.
    pub fn length(&self) -> usize {
        self.digits.len()
    }

    /// Number of nonzero digits.
    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    /// Exact integer value of the expansion.
    pub fn value(&self) -> BigInt {
        self.digits
            .iter()
            .fold(BigInt::zero(), |acc, &d| (acc << 1u32) + BigInt::from(d))
    }

    /// True when no two adjacent positions are both nonzero.
    pub fn is_non_adjacent(&self) -> bool {
        self.digits.windows(2).all(|p| p[0] == 0 || p[1] == 0)
    }
}

impl fmt::Display for SignedExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn length_of(e: &SignedExpansion) -> usize {
    e.length()
}

pub fn weight_of(e: &SignedExpansion) -> usize {
    e.weight()
}

pub fn value_of(e: &SignedExpansion) -> BigInt {
    e.value()
}

/// Plain binary digits of `m`; zero gives the empty expansion.
pub fn binary_expansion(m: &BigUint) -> SignedExpansion {
    let bits = m.bits();
    let digits = (0..bits).rev().map(|i| i32::from(m.bit(i))).collect();
    SignedExpansion::new_unchecked(digits, 1)
}

/// Non-adjacent form of `m`.
pub fn naf(m: &BigUint) -> SignedExpansion {
    SignedExpansion::new_unchecked(signed_window_digits(m, 2), 1)
}

/// Width-`w` NAF: odd digits with `|d| < 2^(w-1)`, at most one nonzero
/// digit in any `w` consecutive positions.
pub fn width_w_naf(m: &BigUint, w: u32) -> Result<SignedExpansion> {
    if !(MIN_WIDTH..=MAX_WIDTH).contains(&w) {
        return Err(Error::WidthOutOfRange(w));
    }
    Ok(SignedExpansion::new_unchecked(
        signed_window_digits(m, w),
        (1u32 << (w - 1)) - 1,
    ))
}

// Right-to-left: while k is odd take the signed residue of k mod 2^w in
// (-2^(w-1), 2^(w-1)), subtract it, then shift. Returns MSB-first digits.
fn signed_window_digits(m: &BigUint, w: u32) -> Vec<i32> {
    let modulus = 1i64 << w;
    let half = 1i64 << (w - 1);
    let mut k = BigInt::from_biguint(Sign::Plus, m.clone());
    let mut lsb_first = Vec::with_capacity(m.bits() as usize + 1);
    while !k.is_zero() {
        if k.is_odd() {
            let low = low_bits(&k, w);
            let d = if low >= half { low - modulus } else { low };
            k -= d;
            lsb_first.push(d as i32);
        } else {
            lsb_first.push(0);
        }
        k >>= 1u32;
    }
    lsb_first.reverse();
    lsb_first
}

// k mod 2^w for nonnegative k, w <= 16.
fn low_bits(k: &BigInt, w: u32) -> i64 {
    debug_assert!(!k.is_negative());
    let word = k.iter_u64_digits().next().unwrap_or(0);
    (word & ((1u64 << w) - 1)).to_i64().unwrap_or_default()
}

/// Recoding selector used by the CLI and harnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DigitForm {
    Binary,
    Naf,
    Wnaf(u32),
}

impl DigitForm {
    pub fn recode(self, m: &BigUint) -> Result<SignedExpansion> {
        match self {
            DigitForm::Binary => Ok(binary_expansion(m)),
            DigitForm::Naf => Ok(naf(m)),
            DigitForm::Wnaf(w) => width_w_naf(m, w),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DigitForm::Binary => "binary",
            DigitForm::Naf => "naf",
            DigitForm::Wnaf(_) => "wnaf",
        }
    }

    pub fn width(self) -> Option<u32> {
        match self {
            DigitForm::Wnaf(w) => Some(w),
            _ => None,
        }
    }
}

impl FromStr for DigitForm {
    type Err = Error;

    /// Accepts `binary`, `naf`, `wnaf` (width 4) or `wnaf:<w>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(DigitForm::Binary),
            "naf" => Ok(DigitForm::Naf),
            "wnaf" => Ok(DigitForm::Wnaf(4)),
            _ => {
                let w = s
                    .strip_prefix("wnaf:")
                    .and_then(|w| w.parse::<u32>().ok())
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("unknown recoding form `{s}`"))
                    })?;
                if !(MIN_WIDTH..=MAX_WIDTH).contains(&w) {
                    return Err(Error::WidthOutOfRange(w));
                }
                Ok(DigitForm::Wnaf(w))
            }
        }
    }
}
