//! pi, log 2 and Euler's gamma, memoized per working precision.
//!
//! pi comes from Machin's arctangent formula (with Gauss-Legendre AGM as an
//! independent second route), log 2 from a three-term atanh formula, and
//! gamma from the Brent-McMillan algorithm B1.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{sqrt, BigReal, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Log2,
    EulerGamma,
}

type Memo = Mutex<HashMap<(Constant, u64), Arc<OnceLock<BigReal>>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Concurrent readers share one cell per (constant, bits); the first caller
/// computes while later callers for the same key block on the cell.
fn cached(c: Constant, bits: u64, compute: impl FnOnce() -> BigReal) -> BigReal {
    let cell = {
        let mut map = memo().lock().unwrap_or_else(|e| e.into_inner());
        map.entry((c, bits)).or_default().clone()
    };
    cell.get_or_init(compute).clone()
}

/// pi to working precision (Machin).
pub fn pi(ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.working_bits;
    cached(Constant::Pi, bits, || pi_machin(bits))
}

pub fn log2(ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.working_bits;
    cached(Constant::Log2, bits, || log2_atanh(bits))
}

pub fn euler_gamma(ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.working_bits;
    cached(Constant::EulerGamma, bits, || {
        let value = brent_mcmillan(bits);
        let check = brent_mcmillan(2 * bits).with_prec(bits);
        let drift = (&value - &check).log2_abs();
        let top = value.log2_abs();
        assert!(
            drift < top - bits as f64 + 8.0,
            "Brent-McMillan self-check failed at {bits} bits"
        );
        check
    })
}

/// sum_j (-1)^j / ((2j+1) n^(2j+1)) as a fixed-point integer scaled by 2^scale.
fn arctan_recip(n: u64, scale: u64, alternating: bool) -> BigInt {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::from(1) << scale as usize) / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if alternating && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &n2;
        j += 1;
    }
    sum
}

/// pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi_machin(bits: u64) -> BigReal {
    let scale = bits + 32;
    let v = arctan_recip(5, scale, true) * 16 - arctan_recip(239, scale, true) * 4;
    BigReal::from_scaled(v, -(scale as i64), bits)
}

/// Gauss-Legendre iteration; an independent route to pi for cross-checks.
pub fn pi_agm(bits: u64) -> BigReal {
    let w = bits + 32;
    let one = BigReal::from_int(1, w);
    let mut a = one.clone();
    let mut b = sqrt(&BigReal::from_int(1, w).mul_pow2(-1)).expect("positive");
    let mut t = one.mul_pow2(-2);
    let mut p = one.clone();
    loop {
        let an = (&a + &b).mul_pow2(-1);
        let bn = sqrt(&(&a * &b)).expect("positive");
        let d = &a - &an;
        t = &t - &(&p * &(&d * &d));
        p = p.mul_pow2(1);
        let converged = d.is_zero() || d.log2_abs() < -((w / 2) as f64) - 4.0;
        a = an;
        b = bn;
        if converged {
            break;
        }
    }
    let s = &a + &b;
    (&(&s * &s) / &t.mul_pow2(2)).with_prec(bits)
}

/// ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749).
fn log2_atanh(bits: u64) -> BigReal {
    let scale = bits + 32;
    let v = arctan_recip(26, scale, false) * 18 - arctan_recip(4801, scale, false) * 2
        + arctan_recip(8749, scale, false) * 8;
    BigReal::from_scaled(v, -(scale as i64), bits)
}

/// Brent-McMillan B1 with n = 2^m, so that ln n = m ln 2; truncation error
/// is O(e^{-4n}) < 2^{-bits}.
fn brent_mcmillan(bits: u64) -> BigReal {
    let scale = bits + 48;
    let need = (bits as f64 * std::f64::consts::LN_2 / 4.0).ceil() as u64 + 2;
    let m = 64 - need.leading_zeros() as u64;
    let n = 1u64 << m;
    let ctx = PrecisionContext {
        target_digits: 0,
        working_bits: scale,
    };
    let ln_n = log2(&ctx).mul_rational(&crate::exact::int(m as i64));
    let ln_n_fixed = ln_n.mul_pow2(scale as i64).floor();

    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut b = BigInt::from(1) << scale as usize;
    let mut a = -ln_n_fixed;
    let mut u = a.clone();
    let mut v = b.clone();
    let mut k: u64 = 1;
    loop {
        let kk = BigInt::from(k);
        b = &b * &n2 / (&kk * &kk);
        a = (&a * &n2 / &kk + &b) / &kk;
        u += &a;
        v += &b;
        if k > n && b.is_zero() && a.abs() <= BigInt::from(1) {
            break;
        }
        k += 1;
    }
    let ur = BigReal::from_int(u, scale);
    let vr = BigReal::from_int(v, scale);
    ur.div_prec(&vr, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::agree_digits;

    #[test]
    fn pi_digits() {
        let p = pi(&PrecisionContext::new(50));
        assert_eq!(p.to_decimal(50), "3.1415926535897932384626433832795028841971693993751");
        let p10 = pi(&PrecisionContext::new(10));
        assert_eq!(p10.to_decimal(10), "3.141592654");
    }

    #[test]
    fn pi_routes_agree() {
        for digits in [30u32, 200, 1000] {
            let ctx = PrecisionContext::new(digits);
            let a = pi_machin(ctx.working_bits);
            let b = pi_agm(ctx.working_bits);
            assert!(agree_digits(&a, &b, digits) >= digits, "{digits}");
        }
    }

    #[test]
    fn pi_precisions_are_consistent() {
        let a = pi(&PrecisionContext::new(40));
        let b = pi(&PrecisionContext::new(80));
        assert!(agree_digits(&a, &b, 40) >= 40);
    }

    #[test]
    fn log2_digits() {
        let l = log2(&PrecisionContext::new(50));
        assert_eq!(l.to_decimal(20), "0.69314718055994530942");
        // independent route: 2 atanh(1/3)
        let bits = l.prec();
        let alt = BigReal::from_scaled(arctan_recip(3, bits + 32, false) * 2, -((bits + 32) as i64), bits);
        assert!(agree_digits(&l, &alt, 50) >= 50);
    }

    #[test]
    fn euler_gamma_digits() {
        let g = euler_gamma(&PrecisionContext::new(30));
        assert_eq!(g.to_decimal(30), "0.577215664901532860606512090082");
        let g100 = euler_gamma(&PrecisionContext::new(100));
        assert!(g100.to_decimal(100).starts_with(
            "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674"
        ));
    }
}
