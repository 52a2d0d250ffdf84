//! Binary floating-point reals at an explicit precision, plus the
//! constants and elementary functions the closed forms need.
//!
//! A [`BigReal`] is `mant * 2^exp` with `|mant| < 2^(prec+1)`. Every
//! arithmetic operation rounds to nearest at the larger operand precision,
//! so each step contributes at most one unit in the last place; composite
//! algorithms document how those errors accumulate.

mod constants;
mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use constants::{euler_gamma, log2, pi, pi_agm, pi_machin};
pub use elementary::{cos_pi, exp, ln, sqrt};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Guard allowance above the decimal target.
pub const GUARD_BITS: u64 = 64;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Requested decimal digits and the binary working precision behind them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub target_digits: u32,
    pub working_bits: u64,
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Self {
        let bits = (target_digits as f64 * LOG2_10).ceil() as u64 + GUARD_BITS;
        PrecisionContext {
            target_digits,
            working_bits: bits,
        }
    }

    /// Same target, extra working bits.
    pub fn with_extra_bits(self, extra: u64) -> Self {
        PrecisionContext {
            working_bits: self.working_bits + extra,
            ..self
        }
    }

    pub fn bits(&self) -> u64 {
        self.working_bits
    }

    /// This context, raised if needed to carry `digits` digits.
    pub fn at_least(self, digits: u32) -> Self {
        if self.target_digits >= digits {
            self
        } else {
            let raised = PrecisionContext::new(digits);
            PrecisionContext {
                working_bits: raised.working_bits.max(self.working_bits),
                ..raised
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u64,
}

fn round_mag(mag: BigUint, shift: u64) -> BigUint {
    if shift == 0 {
        return mag;
    }
    let half = BigUint::from(1u8) << (shift - 1);
    (mag + half) >> shift
}

impl BigReal {
    fn from_parts(mant: BigInt, exp: i64, prec: u64) -> Self {
        let bits = mant.bits();
        if mant.is_zero() {
            return BigReal::zero(prec);
        }
        if bits > prec {
            let shift = bits - prec;
            let (sign, mag) = mant.into_parts();
            let m = BigInt::from_biguint(sign, round_mag(mag, shift));
            BigReal {
                mant: m,
                exp: exp + shift as i64,
                prec,
            }
        } else {
            BigReal { mant, exp, prec }
        }
    }

    pub fn zero(prec: u64) -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u64) -> Self {
        Self::from_parts(n.into(), 0, prec)
    }

    /// `mant * 2^exp`, rounded to `prec` bits.
    pub fn from_scaled(mant: BigInt, exp: i64, prec: u64) -> Self {
        Self::from_parts(mant, exp, prec)
    }

    /// Nearest value at `prec` bits (error at most one ulp).
    pub fn from_rational(q: &Rational, prec: u64) -> Self {
        let n = BigReal::from_int(q.numer().clone(), prec + 8);
        let d = BigReal::from_int(q.denom().clone(), prec + 8);
        n.div_prec(&d, prec)
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    /// Re-rounds to a new precision (never adds information).
    pub fn with_prec(&self, prec: u64) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            ..self.clone()
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigReal {
            exp: self.exp + k,
            ..self.clone()
        }
    }

    /// Approximate `log2 |x|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let top = (self.mant.abs() >> (bits - keep) as usize).to_f64().unwrap_or(1.0);
        top.log2() + (self.exp + (bits - keep) as i64) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let l = self.log2_abs();
        let s = self.signum() as f64;
        s * l.exp2()
    }

    /// Mantissa aligned to exponent `e` (rounded when `e > exp`).
    fn mant_at(&self, e: i64) -> BigInt {
        if e <= self.exp {
            &self.mant << (self.exp - e) as usize
        } else {
            let (sign, mag) = self.mant.clone().into_parts();
            BigInt::from_biguint(sign, round_mag(mag, (e - self.exp) as u64))
        }
    }

    fn top_exp(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn add_prec(&self, rhs: &BigReal, prec: u64) -> BigReal {
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        let top = self.top_exp().max(rhs.top_exp());
        let e = self.exp.min(rhs.exp).max(top - prec as i64 - 8);
        Self::from_parts(self.mant_at(e) + rhs.mant_at(e), e, prec)
    }

    pub fn mul_prec(&self, rhs: &BigReal, prec: u64) -> BigReal {
        Self::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }

    /// Panics on division by zero; see [`BigReal::checked_div`].
    pub fn div_prec(&self, rhs: &BigReal, prec: u64) -> BigReal {
        assert!(!rhs.is_zero(), "BigReal division by zero");
        let s = (prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << s as usize) / &rhs.mant;
        Self::from_parts(q, self.exp - s - rhs.exp, prec)
    }

    pub fn checked_div(&self, rhs: &BigReal) -> Result<BigReal> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self.div_prec(rhs, self.prec.max(rhs.prec)))
    }

    pub fn recip(&self) -> BigReal {
        BigReal::from_int(1, self.prec).div_prec(self, self.prec)
    }

    pub fn mul_rational(&self, q: &Rational) -> BigReal {
        let n = BigReal::from_int(q.numer().clone(), self.prec + 8);
        let d = BigReal::from_int(q.denom().clone(), self.prec + 8);
        self.mul_prec(&n, self.prec + 8).div_prec(&d, self.prec)
    }

    pub fn add_rational(&self, q: &Rational) -> BigReal {
        self + &BigReal::from_rational(q, self.prec)
    }

    pub fn powi(&self, e: i64) -> BigReal {
        let mut base = self.with_prec(self.prec + 16);
        let mut acc = BigReal::from_int(1, self.prec + 16);
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        let r = if e < 0 { acc.recip() } else { acc };
        r.with_prec(self.prec)
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            let d = BigInt::from(1) << (-self.exp) as usize;
            self.mant.div_floor(&d)
        }
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        }
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let q = self.to_rational().abs();
        let mut e10 = (self.log2_abs() / LOG2_10).floor() as i64;
        let digits = loop {
            let p = sig as i64 - 1 - e10;
            let scaled = if p >= 0 {
                &q * Rational::from_integer(BigInt::from(10).pow(p as u32))
            } else {
                &q / Rational::from_integer(BigInt::from(10).pow((-p) as u32))
            };
            let n = scaled.round().to_integer();
            let s = n.to_string();
            if s.len() > sig {
                e10 += 1;
            } else if s.len() < sig {
                e10 -= 1;
            } else {
                break s;
            }
        };
        let sign = if self.signum() < 0 { "-" } else { "" };
        if (-8..=30).contains(&e10) {
            if e10 >= 0 {
                let int_len = (e10 + 1) as usize;
                if int_len >= digits.len() {
                    format!("{sign}{}{}", digits, "0".repeat(int_len - digits.len()))
                } else {
                    format!("{sign}{}.{}", &digits[..int_len], &digits[int_len..])
                }
            } else {
                format!("{sign}0.{}{}", "0".repeat((-e10 - 1) as usize), digits)
            }
        } else {
            let (h, t) = digits.split_at(1);
            if t.is_empty() {
                format!("{sign}{h}e{e10}")
            } else {
                format!("{sign}{h}.{t}e{e10}")
            }
        }
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl BigReal {
    pub fn cmp_value(&self, other: &BigReal) -> Ordering {
        let e = self.exp.min(other.exp);
        self.mant_at(e).cmp(&other.mant_at(e))
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        self.add_prec(rhs, self.prec.max(rhs.prec))
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self.add_prec(&-rhs, self.prec.max(rhs.prec))
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        self.mul_prec(rhs, self.prec.max(rhs.prec))
    }
}

impl Div for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        self.div_prec(rhs, self.prec.max(rhs.prec))
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            ..self.clone()
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) / LOG2_10).floor().max(1.0) as usize;
        let digits = f.precision().unwrap_or(digits);
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// Number of matching leading decimal digits:
/// `floor(-log10(|x - y| / max(|x|, 1)))`, 0 if the signs differ, and
/// `cap` when the values coincide.
pub fn agree_digits(x: &BigReal, y: &BigReal, cap: u32) -> u32 {
    if x.signum() * y.signum() < 0 {
        return 0;
    }
    let prec = x.prec().max(y.prec()) + 16;
    let diff = x.add_prec(&-y, prec);
    if diff.is_zero() {
        return cap;
    }
    let scale = x.log2_abs().max(0.0);
    let rel = diff.log2_abs() - scale;
    let d = (-rel / LOG2_10 + 1e-9).floor();
    if d <= 0.0 {
        0
    } else {
        (d as u32).min(cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn r(n: i64, d: i64) -> BigReal {
        BigReal::from_rational(&rat(n, d), 200)
    }

    #[test]
    fn context_guard() {
        let c = PrecisionContext::new(50);
        assert_eq!(c.working_bits, 167 + 64);
    }

    #[test]
    fn arithmetic_and_rendering() {
        let third = r(1, 3);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        let x = &(&r(7, 2) * &r(2, 1)) - &r(1, 1);
        assert_eq!(x.to_decimal(5), "6.0000");
        assert_eq!(r(-15, 8).to_decimal(4), "-1.875");
        assert_eq!(r(1, 1_000_000_000).to_decimal(3), "1.00e-9");
        assert_eq!(BigReal::from_int(123456, 64).to_decimal(3), "123000");
        assert_eq!((&r(10, 1) / &r(4, 1)).to_decimal(3), "2.50");
    }

    #[test]
    fn rational_round_trip_is_close() {
        let q = rat(22, 7);
        let x = BigReal::from_rational(&q, 128);
        let back = x.to_rational();
        let err = (back - q).abs();
        assert!(err < Rational::new(1.into(), BigInt::from(1) << 126));
    }

    #[test]
    fn agree_digits_cases() {
        let p = pi(&PrecisionContext::new(40));
        let approx = BigReal::from_rational(&rat(355, 113), p.prec());
        assert_eq!(agree_digits(&p, &approx, 40), 7);
        assert_eq!(agree_digits(&p, &p, 40), 40);
        assert_eq!(agree_digits(&r(1, 1), &r(-1, 1), 40), 0);
        assert_eq!(agree_digits(&r(1, 1000), &BigReal::zero(200), 40), 3);
    }

    #[test]
    fn ordering() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(-1, 2) < r(0, 1));
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(9, 4).floor(), BigInt::from(2));
        assert_eq!(r(-9, 4).floor(), BigInt::from(-3));
    }

    #[test]
    fn tiny_addend_is_absorbed() {
        let big = BigReal::from_int(1, 64);
        let tiny = BigReal::from_int(1, 64).mul_pow2(-500);
        assert_eq!(&big + &tiny, big);
    }
}
