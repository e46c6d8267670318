//! Exact integer and rational primitives shared by every bound computation.
//!
//! Counts and degrees are [`Nat`], bound values are [`Rat`]; nothing here
//! passes through floating point. Display columns are rendered by
//! [`decimal_string`] with round-half-even on the exact rational.

use std::cmp::Ordering;

use num::traits::Pow;
use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};

/// Arbitrary-precision unsigned integer used for point counts and degrees.
pub type Nat = BigUint;

/// Arbitrary-precision rational used for every bound value.
pub type Rat = BigRational;

/// Shorthand for a small [`Nat`].
pub fn nat(x: u64) -> Nat {
    Nat::from(x)
}

/// Shorthand for a small [`Rat`]. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Embeds a [`Nat`] into [`Rat`].
pub fn nat_to_rat(x: &Nat) -> Rat {
    Rat::from_integer(BigInt::from(x.clone()))
}

/// Converts to `u64` when the value fits.
pub fn nat_to_u64(x: &Nat) -> Option<u64> {
    u64::try_from(x).ok()
}

/// `base^exp` on [`Nat`].
pub fn nat_pow(base: &Nat, exp: u32) -> Nat {
    Pow::pow(base, exp)
}

/// `q^exp` on [`Rat`], computed on numerator and denominator separately.
pub fn rat_pow(q: &Rat, exp: u32) -> Rat {
    Rat::new(Pow::pow(q.numer(), exp), Pow::pow(q.denom(), exp))
}

/// Multiplicative inverse. Panics if `q` is zero.
pub fn rat_inv(q: &Rat) -> Rat {
    assert!(!q.is_zero(), "rat_inv of zero");
    q.recip()
}

/// `10^e` as a [`Nat`].
pub fn ten_pow(e: u32) -> Nat {
    nat_pow(&nat(10), e)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binom(n: &Nat, k: &Nat) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let kk = (n - k).min(k.clone());
    let base = n - &kk;
    let mut acc = Nat::one();
    let mut i = Nat::one();
    while i <= kk {
        // The running product of i consecutive integers is divisible by i!.
        acc = acc * (&base + &i) / &i;
        i += 1u32;
    }
    acc
}

/// Largest `b` with `b^n <= x`, by binary search on integer powers.
///
/// Panics if `n == 0`.
pub fn int_root_floor(x: &Nat, n: u32) -> Nat {
    assert!(n > 0, "int_root_floor of degree zero");
    if x.is_zero() || n == 1 {
        return x.clone();
    }
    let mut lo = Nat::one();
    let mut hi: Nat = Nat::one() << (x.bits() / u64::from(n) + 1);
    // Invariant: lo^n <= x < hi^n.
    while &lo + 1u32 < hi {
        let mid: Nat = (&lo + &hi) >> 1u32;
        if nat_pow(&mid, n) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

const ROOT_GUARD_DIGITS: u32 = 24;

/// Lower approximation of the real n-th root of `r`, exact on perfect powers.
///
/// The result `v` satisfies `v <= r^(1/n) < v + 10^-24`.
pub fn nth_root_approx(r: &Nat, n: u32) -> Rat {
    let scale = ten_pow(ROOT_GUARD_DIGITS);
    let scaled = r * nat_pow(&scale, n);
    let root = int_root_floor(&scaled, n);
    Rat::new(BigInt::from(root), BigInt::from(scale))
}

/// Renders `q` with exactly `digits` fractional digits, rounding half to even.
pub fn decimal_string(q: &Rat, digits: u32) -> String {
    let scale = BigInt::from(ten_pow(digits));
    let scaled_abs = q.numer().abs() * &scale;
    let (mut quot, rem) = scaled_abs.div_rem(q.denom());
    let round_up = match (&rem + &rem).cmp(q.denom()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => quot.is_odd(),
    };
    if round_up {
        quot += BigInt::one();
    }
    let sign = if q.is_negative() && !quot.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{quot}");
    }
    let (int_part, frac_part) = quot.div_rem(&scale);
    format!(
        "{sign}{int_part}.{frac_part:0width$}",
        width = digits as usize
    )
}
