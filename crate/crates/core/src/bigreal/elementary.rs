//! Square root, logarithm, exponential and cos(pi q) on [`BigReal`].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{log2, pi, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

fn ctx_bits(bits: u64) -> PrecisionContext {
    PrecisionContext {
        target_digits: 0,
        working_bits: bits,
    }
}

/// Correctly rounded-ish square root via integer isqrt at `x.prec()` bits.
pub fn sqrt(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    match x.signum() {
        0 => return Ok(BigReal::zero(prec)),
        s if s < 0 => return Err(Error::Domain(format!("sqrt of negative value {}", x.to_decimal(12)))),
        _ => {}
    }
    // x = m 2^e with m scaled to 2*(prec+4) bits and e even.
    let q = x.to_rational();
    let want = 2 * (prec as i64 + 4);
    let top = x.log2_abs().floor() as i64 + 1;
    let mut shift = want - top;
    if shift.rem_euclid(2) == 1 {
        shift += 1;
    }
    let scaled = if shift >= 0 {
        (q * Rational::from_integer(BigInt::from(1) << shift as usize)).to_integer()
    } else {
        (q / Rational::from_integer(BigInt::from(1) << (-shift) as usize)).to_integer()
    };
    let r = scaled.sqrt();
    Ok(BigReal::from_scaled(r, -shift / 2, prec))
}

/// Natural logarithm; domain error for x <= 0.
pub fn ln(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    if x.signum() <= 0 {
        return Err(Error::Domain(format!("ln of non-positive value {}", x.to_decimal(12))));
    }
    const ROOTS: u32 = 10;
    let w = prec + 32 + ROOTS as u64;
    let s = x.log2_abs().floor() as i64;
    let mut y = x.with_prec(w).mul_pow2(-s);
    for _ in 0..ROOTS {
        y = sqrt(&y)?;
    }
    let one = BigReal::from_int(1, w);
    let z = &(&y - &one) / &(&y + &one);
    let z2 = &z * &z;
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut j: i64 = 1;
    let floor = -(w as f64) - 4.0;
    while !term.is_zero() && term.log2_abs() - ((2 * j + 1) as f64).log2() > floor + sum.log2_abs().min(0.0) {
        term = &term * &z2;
        sum = &sum + &term.mul_rational(&rat(1, 2 * j + 1));
        j += 1;
    }
    let atanh_part = sum.mul_pow2(ROOTS as i64 + 1);
    let l2 = log2(&ctx_bits(w));
    let r = &atanh_part + &l2.mul_rational(&Rational::from_integer(BigInt::from(s)));
    Ok(r.with_prec(prec))
}

/// Exponential; domain error if the result would not be representable
/// (|x| beyond 2^40).
pub fn exp(x: &BigReal) -> Result<BigReal> {
    let prec = x.prec();
    if x.is_zero() {
        return Ok(BigReal::from_int(1, prec));
    }
    if x.log2_abs() > 40.0 {
        return Err(Error::Domain(format!("exp argument {} out of range", x.to_decimal(12))));
    }
    let n = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
    let halvings = ((prec as f64).sqrt() / 2.0) as u64 + 4;
    let w = prec + 32 + halvings + 64 - n.unsigned_abs().leading_zeros() as u64;
    let l2 = log2(&ctx_bits(w));
    let r = &x.with_prec(w) - &l2.mul_rational(&Rational::from_integer(BigInt::from(n)));
    let r = r.mul_pow2(-(halvings as i64));
    let mut term = BigReal::from_int(1, w);
    let mut sum = term.clone();
    let mut j: i64 = 1;
    loop {
        term = (&term * &r).mul_rational(&rat(1, j));
        if term.is_zero() || term.log2_abs() < -(w as f64) - 4.0 {
            break;
        }
        sum = &sum + &term;
        j += 1;
    }
    for _ in 0..halvings {
        sum = &sum * &sum;
    }
    Ok(sum.mul_pow2(n).with_prec(prec))
}

/// cos(pi q) for rational q, exact at multiples of 1/2.
pub fn cos_pi(q: &Rational, ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.working_bits;
    // reduce q into [0, 2), then to [0, 1/2] with a sign
    let two = Rational::from_integer(BigInt::from(2));
    let mut r = q.abs();
    let wraps = (&r / &two).floor();
    r -= &wraps * &two;
    let one = Rational::from_integer(BigInt::from(1));
    let half = rat(1, 2);
    let mut negate = false;
    if r > one {
        r = &two - &r;
    }
    if r > half {
        r = &one - &r;
        negate = true;
    }
    let value = if r.is_zero() {
        BigReal::from_int(1, prec)
    } else if r == half {
        BigReal::zero(prec)
    } else if r > rat(1, 4) {
        sin_small(&(&half - &r), prec)
    } else {
        cos_small(&r, prec)
    };
    if negate {
        -value
    } else {
        value
    }
}

fn taylor(x: &BigReal, start: BigReal, first_index: i64, w: u64) -> BigReal {
    let x2 = x * x;
    let mut term = start.clone();
    let mut sum = start;
    let mut j = first_index;
    loop {
        term = (&term * &x2).mul_rational(&rat(-1, (j + 1) * (j + 2)));
        if term.is_zero() || term.log2_abs() < -(w as f64) - 4.0 {
            break;
        }
        sum = &sum + &term;
        j += 2;
    }
    sum
}

fn cos_small(r: &Rational, prec: u64) -> BigReal {
    let w = prec + 32;
    let x = pi(&ctx_bits(w)).mul_rational(r);
    taylor(&x, BigReal::from_int(1, w), 0, w).with_prec(prec)
}

fn sin_small(r: &Rational, prec: u64) -> BigReal {
    let w = prec + 32;
    let x = pi(&ctx_bits(w)).mul_rational(r);
    taylor(&x, x.clone(), 1, w).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::agree_digits;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(60)
    }

    #[test]
    fn sqrt_two() {
        let two = BigReal::from_int(2, ctx().bits());
        assert_eq!(
            sqrt(&two).unwrap().to_decimal(40),
            "1.414213562373095048801688724209698078570"
        );
        assert!(sqrt(&BigReal::from_int(-1, 64)).is_err());
        let q = BigReal::from_rational(&rat(9, 4), ctx().bits());
        assert_eq!(sqrt(&q).unwrap(), BigReal::from_rational(&rat(3, 2), ctx().bits()));
    }

    #[test]
    fn ln_and_exp_invert() {
        let c = ctx();
        for (n, d) in [(1, 3), (7, 2), (1000, 1), (1, 1000), (5, 4)] {
            let x = BigReal::from_rational(&rat(n, d), c.bits());
            let back = exp(&ln(&x).unwrap()).unwrap();
            assert!(agree_digits(&x, &back, 60) >= 58, "{n}/{d}");
        }
        let l2 = ln(&BigReal::from_int(2, c.bits())).unwrap();
        assert!(agree_digits(&l2, &log2(&c), 60) >= 60);
        assert!(ln(&BigReal::zero(64)).is_err());
    }

    #[test]
    fn exp_one() {
        let e = exp(&BigReal::from_int(1, ctx().bits())).unwrap();
        assert!(e
            .to_decimal(40)
            .starts_with("2.718281828459045235360287471352662497757"));
        let small = exp(&BigReal::from_int(-50, ctx().bits())).unwrap();
        assert!(small.to_decimal(20).starts_with("1.9287498479639177830e-22"));
    }

    #[test]
    fn cos_pi_special_values() {
        let c = ctx();
        assert_eq!(cos_pi(&rat(0, 1), &c), BigReal::from_int(1, c.bits()));
        assert!(cos_pi(&rat(1, 2), &c).is_zero());
        assert!(cos_pi(&rat(-3, 2), &c).is_zero());
        assert_eq!(cos_pi(&rat(1, 1), &c), BigReal::from_int(-1, c.bits()));
        let third = cos_pi(&rat(1, 3), &c);
        assert!(agree_digits(&third, &BigReal::from_rational(&rat(1, 2), c.bits()), 60) >= 60);
        let tt = cos_pi(&rat(2, 3), &c);
        assert!(agree_digits(&tt, &BigReal::from_rational(&rat(-1, 2), c.bits()), 60) >= 60);
        let q = cos_pi(&rat(1, 4), &c);
        let s = sqrt(&BigReal::from_rational(&rat(1, 2), c.bits())).unwrap();
        assert!(agree_digits(&q, &s, 60) >= 60);
        let q = cos_pi(&rat(-7, 4), &c);
        assert!(agree_digits(&q, &s, 60) >= 60);
        let q = cos_pi(&rat(5, 6), &c);
        let s3 = sqrt(&BigReal::from_rational(&rat(3, 4), c.bits())).unwrap();
        assert!(agree_digits(&q, &(-s3), 60) >= 60);
    }
}
