//! Gamma, digamma and trigamma at positive rational arguments.
//!
//! All three shift the argument up to `X >= max(10, 0.4 * bits)` with the
//! exact recurrences, then sum the Stirling-type asymptotic series with
//! cached Bernoulli numbers. The series are enveloping for real `X > 0`, so
//! twice the first omitted term bounds the truncation error.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::bigreal::{exp, ln, pi, sqrt, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_cached, factorial, int, pochhammer, pochhammer_ratio, rat, Rational};

/// Exact `Gamma(m + 1/2) = coeff * sqrt(pi)^sqrt_pi_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegerGamma {
    pub coeff: Rational,
    pub sqrt_pi_power: u32,
}

impl HalfIntegerGamma {
    pub fn to_real(&self, ctx: &PrecisionContext) -> BigReal {
        let c = BigReal::from_rational(&self.coeff, ctx.working_bits);
        if self.sqrt_pi_power == 0 {
            c
        } else {
            &c * &sqrt_pi(ctx)
        }
    }
}

/// Gamma(m + 1/2) for any integer m, exactly.
pub fn gamma_half_integer_exact(m: i64) -> HalfIntegerGamma {
    let coeff = if m >= 0 {
        let m = m as u64;
        let num = factorial(2 * m);
        let den = (BigInt::one() << (2 * m) as usize) * factorial(m);
        Rational::new(num, den)
    } else {
        let j = m.unsigned_abs();
        let num = BigInt::from(-4).pow(j as u32) * factorial(j);
        Rational::new(num, factorial(2 * j))
    };
    HalfIntegerGamma {
        coeff,
        sqrt_pi_power: 1,
    }
}

pub fn sqrt_pi(ctx: &PrecisionContext) -> BigReal {
    sqrt(&pi(ctx)).expect("pi is positive")
}

/// Splits `Gamma(q) = coeff * Gamma(red)` with `red` in (0, 1] and `coeff`
/// exact; fails at the poles q = 0, -1, -2, ...
pub fn gamma_reduce(q: &Rational) -> Result<(Rational, Rational)> {
    let red = q - q.ceil() + Rational::one();
    let coeff = pochhammer_ratio(&red, q)?;
    Ok((coeff, red))
}

fn require_positive(x: &Rational, what: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs a positive argument, got {x}")))
    }
}

/// Smallest integer m with x + m >= max(10, 0.4 * bits).
fn shift_for(x: &Rational, bits: u64) -> u64 {
    let threshold = (0.4 * bits as f64).max(10.0).ceil();
    let xf = x.to_f64().unwrap_or(0.0);
    (threshold - xf).ceil().max(0.0) as u64
}

/// Sums `sum_{j>=1} c_j * X^{-(2j + offset)}` where `c_j = B_{2j} * coeff(j)`,
/// stopping once a term drops below `2^{-w}` relative to `scale`.
fn stirling_tail(x_big: &BigReal, w: u64, offset: i64, coeff: impl Fn(u64) -> Rational) -> Result<BigReal> {
    let inv = x_big.recip();
    let inv2 = &inv * &inv;
    let mut power = inv.powi(offset + 2);
    let mut sum = BigReal::zero(w);
    let floor = -(w as f64) - 2.0;
    let mut nmax = 64usize;
    let mut bern = bernoulli_cached(nmax);
    let mut j = 1u64;
    loop {
        if 2 * j as usize > nmax {
            nmax *= 2;
            bern = bernoulli_cached(nmax);
        }
        let c = &bern[2 * j as usize] * coeff(j);
        let term = power.mul_rational(&c);
        // twice the first omitted term is the error bound
        if term.is_zero() || term.log2_abs() + 1.0 < floor {
            return Ok(sum);
        }
        if j > 4 * w {
            return Err(Error::NonConvergence {
                terms: j as usize,
                detail: "Stirling series did not reach the working precision".into(),
            });
        }
        sum = &sum + &term;
        power = &power * &inv2;
        j += 1;
    }
}

/// ln Gamma(X) for X already shifted into the asymptotic range.
fn ln_gamma_shifted(x: &Rational, w: u64) -> Result<BigReal> {
    let xb = BigReal::from_rational(x, w);
    let lx = ln(&xb)?;
    let ctx = PrecisionContext {
        target_digits: 0,
        working_bits: w,
    };
    let ln2pi = ln(&pi(&ctx).mul_pow2(1))?;
    let main = &(&lx.mul_rational(&(x - rat(1, 2))) - &xb) + &ln2pi.mul_pow2(-1);
    let tail = stirling_tail(&xb, w, -1, |j| rat(1, (2 * j * (2 * j - 1)) as i64))?;
    Ok(&main + &tail)
}

/// ln Gamma(x) for rational x > 0.
pub fn ln_gamma_rational(x: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(x, "lnGamma")?;
    let bits = ctx.working_bits;
    let m = shift_for(x, bits);
    let big_x = x + int(m as i64);
    let w = bits + 32 + (bits as f64).log2() as u64;
    let lg = ln_gamma_shifted(&big_x, w)?;
    let p = pochhammer(x, m);
    let lp = ln(&BigReal::from_rational(&p, w))?;
    Ok((&lg - &lp).with_prec(bits))
}

/// Gamma(x) for rational x > 0.
pub fn gamma_pos_rational(x: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(x, "Gamma")?;
    let bits = ctx.working_bits;
    if x.is_integer() {
        let n = x
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::ResourceLimit(format!("Gamma({x})")))?;
        return Ok(BigReal::from_int(factorial(n - 1), bits));
    }
    let twice = x * int(2);
    if twice.is_integer() {
        let m = ((x - rat(1, 2)).to_integer())
            .to_i64()
            .ok_or_else(|| Error::ResourceLimit(format!("Gamma({x})")))?;
        return Ok(gamma_half_integer_exact(m).to_real(ctx));
    }
    let m = shift_for(x, bits);
    let big_x = x + int(m as i64);
    let w = bits + 48 + (bits as f64).log2() as u64;
    let lg = ln_gamma_shifted(&big_x, w)?;
    let g = exp(&lg)?;
    let p = BigReal::from_rational(&pochhammer(x, m), w);
    Ok((&g / &p).with_prec(bits))
}

/// psi(x) = Gamma'(x)/Gamma(x) for rational x > 0.
pub fn digamma_rational(x: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(x, "digamma")?;
    let bits = ctx.working_bits;
    let m = shift_for(x, bits);
    let big_x = x + int(m as i64);
    let w = bits + 32;
    let xb = BigReal::from_rational(&big_x, w);
    let main = &ln(&xb)? - &xb.recip().mul_pow2(-1);
    let tail = stirling_tail(&xb, w, 0, |j| rat(-1, 2 * j as i64))?;
    let mut acc = &main + &tail;
    for i in 0..m {
        let t = BigReal::from_rational(&(x + int(i as i64)), w).recip();
        acc = &acc - &t;
    }
    Ok(acc.with_prec(bits))
}

/// psi'(x) = sum_{k>=0} 1/(k+x)^2 for rational x > 0.
pub fn trigamma_rational(x: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(x, "trigamma")?;
    let bits = ctx.working_bits;
    let m = shift_for(x, bits);
    let big_x = x + int(m as i64);
    let w = bits + 32;
    let xb = BigReal::from_rational(&big_x, w);
    let inv = xb.recip();
    let main = &inv + &(&inv * &inv).mul_pow2(-1);
    let tail = stirling_tail(&xb, w, 1, |_| Rational::one())?;
    let mut acc = &main + &tail;
    for i in 0..m {
        let t = BigReal::from_rational(&(x + int(i as i64)), w).recip();
        acc = &acc + &(&t * &t);
    }
    Ok(acc.with_prec(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{agree_digits, euler_gamma, log2};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50)
    }

    #[test]
    fn half_integer_coefficients() {
        assert_eq!(gamma_half_integer_exact(0).coeff, int(1));
        assert_eq!(gamma_half_integer_exact(2).coeff, rat(3, 4));
        assert_eq!(gamma_half_integer_exact(-1).coeff, int(-2));
        assert_eq!(gamma_half_integer_exact(-2).coeff, rat(4, 3));
    }

    #[test]
    fn gamma_values() {
        let c = ctx();
        let sp = sqrt_pi(&c);
        let g = gamma_pos_rational(&rat(1, 2), &c).unwrap();
        assert!(agree_digits(&g, &sp, 50) >= 50);
        let g = gamma_pos_rational(&rat(5, 2), &c).unwrap();
        assert!(agree_digits(&g, &sp.mul_rational(&rat(3, 4)), 50) >= 50);
        // reflection: Gamma(1/3) Gamma(2/3) = 2 pi / sqrt 3
        let a = gamma_pos_rational(&rat(1, 3), &c).unwrap();
        let b = gamma_pos_rational(&rat(2, 3), &c).unwrap();
        let three = sqrt(&BigReal::from_int(3, c.bits())).unwrap();
        let want = &pi(&c).mul_pow2(1) / &three;
        assert!(agree_digits(&(&a * &b), &want, 50) >= 50);
        assert_eq!(
            gamma_pos_rational(&rat(1, 3), &c).unwrap().to_decimal(30),
            "2.67893853470774763365569294097"
        );
    }

    #[test]
    fn gamma_recurrence() {
        let c = ctx();
        for (n, d) in [(1, 7), (9, 4), (31, 5), (13, 3), (1, 100)] {
            let x = rat(n, d);
            let g0 = gamma_pos_rational(&x, &c).unwrap();
            let g1 = gamma_pos_rational(&(&x + int(1)), &c).unwrap();
            assert!(agree_digits(&g1, &g0.mul_rational(&x), 50) >= 49, "{x}");
        }
        assert!(gamma_pos_rational(&int(0), &c).is_err());
        assert!(gamma_pos_rational(&rat(-1, 2), &c).is_err());
    }

    #[test]
    fn ln_gamma_path_matches_half_integers() {
        let c = ctx();
        for m in [0i64, 1, 7, 50] {
            let x = rat(2 * m + 1, 2);
            let lg = ln_gamma_rational(&x, &c).unwrap();
            let exact = gamma_half_integer_exact(m).to_real(&c);
            assert!(agree_digits(&exp(&lg).unwrap(), &exact, 50) >= 48, "{m}");
        }
    }

    #[test]
    fn digamma_table() {
        let c = ctx();
        let g = euler_gamma(&c);
        let l2 = log2(&c);
        let p = pi(&c);
        let psi1 = digamma_rational(&int(1), &c).unwrap();
        assert!(agree_digits(&psi1, &-g.clone(), 50) >= 50);
        let psi_half = digamma_rational(&rat(1, 2), &c).unwrap();
        let want = &-g.clone() - &l2.mul_pow2(1);
        assert!(agree_digits(&psi_half, &want, 50) >= 50);
        let base = &-g.clone() - &l2.mul_rational(&int(3));
        let q1 = digamma_rational(&rat(1, 4), &c).unwrap();
        assert!(agree_digits(&q1, &(&base - &p.mul_pow2(-1)), 50) >= 50);
        let q3 = digamma_rational(&rat(3, 4), &c).unwrap();
        assert!(agree_digits(&q3, &(&base + &p.mul_pow2(-1)), 50) >= 50);
        assert!(digamma_rational(&int(-1), &c).is_err());
    }

    #[test]
    fn trigamma_table() {
        let c = ctx();
        let p2 = &pi(&c) * &pi(&c);
        let t1 = trigamma_rational(&int(1), &c).unwrap();
        assert!(agree_digits(&t1, &p2.mul_rational(&rat(1, 6)), 50) >= 50);
        let th = trigamma_rational(&rat(1, 2), &c).unwrap();
        assert!(agree_digits(&th, &p2.mul_pow2(-1), 50) >= 50);
    }

    #[test]
    fn digamma_is_log_derivative() {
        let c = PrecisionContext::new(60);
        let h = rat(1, 10i64.pow(15));
        for (n, d) in [(1, 3), (7, 5), (2, 9)] {
            let x = rat(n, d);
            let up = ln_gamma_rational(&(&x + &h), &c).unwrap();
            let dn = ln_gamma_rational(&(&x - &h), &c).unwrap();
            let fd = (&up - &dn).mul_rational(&(int(1) / (&h * int(2))));
            let psi = digamma_rational(&x, &c).unwrap();
            assert!(agree_digits(&fd, &psi, 60) >= 20, "{x}");
        }
    }

    #[test]
    fn reduction_splits_gamma() {
        let (c, r) = gamma_reduce(&rat(7, 3)).unwrap();
        assert_eq!(r, rat(1, 3));
        assert_eq!(c, rat(4, 9));
        let (c, r) = gamma_reduce(&rat(-1, 2)).unwrap();
        assert_eq!(r, rat(1, 2));
        assert_eq!(c, int(-2));
        let (c, r) = gamma_reduce(&int(3)).unwrap();
        assert_eq!((c, r), (int(2), int(1)));
        assert!(gamma_reduce(&int(-2)).is_err());
    }
}
