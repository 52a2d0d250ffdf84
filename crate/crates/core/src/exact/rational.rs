use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q`. Decimal notation is rejected: a decimal
/// would silently stand in for a different rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = |message: &str| Error::Parse {
        input: s.to_string(),
        message: message.to_string(),
    };
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(err("expected an exact rational such as 1/3, not a decimal"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Rising factorial (x)_n = x(x+1)...(x+n-1).
pub fn pochhammer(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..n {
        if f.is_zero() {
            return Rational::zero();
        }
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// Gamma(y)/Gamma(x) for y - x an integer, as an exact rational.
///
/// Fails when a Pochhammer factor that would be inverted vanishes.
pub fn pochhammer_ratio(x: &Rational, y: &Rational) -> Result<Rational> {
    let diff = y - x;
    if !diff.is_integer() {
        return Err(Error::Domain(format!(
            "Gamma ratio needs an integer argument difference, got {y} - {x}"
        )));
    }
    let steps: i64 =
        i64::try_from(diff.to_integer()).map_err(|_| Error::ResourceLimit("Gamma shift too large".into()))?;
    if steps >= 0 {
        // Gamma(x + n)/Gamma(x) = (x)_n; a zero factor means Gamma(x) itself is a pole.
        let mut acc = Rational::one();
        let mut f = x.clone();
        for j in 0..steps {
            if f.is_zero() {
                return Err(Error::Pole {
                    what: format!("Gamma({x})"),
                    index: j,
                });
            }
            acc *= &f;
            f += Rational::one();
        }
        Ok(acc)
    } else {
        let p = pochhammer(y, steps.unsigned_abs());
        if p.is_zero() {
            return Err(Error::Pole {
                what: format!("Gamma({y})"),
                index: 0,
            });
        }
        Ok(p.recip())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&int(-2), 4), int(0));
    }

    #[test]
    fn parse_accepts_fractions_only() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" -4/6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gamma_ratio_both_directions() {
        // Gamma(5/2)/Gamma(1/2) = 3/4
        assert_eq!(pochhammer_ratio(&rat(1, 2), &rat(5, 2)).unwrap(), rat(3, 4));
        // Gamma(-1/2)/Gamma(1/2) = -2
        assert_eq!(pochhammer_ratio(&rat(1, 2), &rat(-1, 2)).unwrap(), int(-2));
        assert!(pochhammer_ratio(&int(1), &int(-1)).is_err());
        assert!(pochhammer_ratio(&rat(1, 3), &rat(1, 2)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
