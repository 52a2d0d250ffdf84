//! Symbolic right-hand sides: expression trees over rationals, pi, log 2,
//! gamma, and Gamma/psi/psi' at positive rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::bigreal::{euler_gamma, exp, ln, log2, pi, sqrt, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::special::{digamma_rational, gamma_pos_rational, trigamma_rational};

#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    Rat(Rational),
    Pi,
    Log2,
    EulerGamma,
    Gamma(Rational),
    Digamma(Rational),
    Trigamma(Rational),
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
    Neg(Box<ClosedForm>),
    Pow(Box<ClosedForm>, Rational),
}

/// Bits added per tree level during evaluation.
const BITS_PER_LEVEL: u64 = 4;

impl ClosedForm {
    pub fn rat(q: Rational) -> Self {
        ClosedForm::Rat(q)
    }

    pub fn int(n: i64) -> Self {
        ClosedForm::Rat(int(n))
    }

    pub fn pi() -> Self {
        ClosedForm::Pi
    }

    pub fn log2() -> Self {
        ClosedForm::Log2
    }

    pub fn gamma(q: Rational) -> Self {
        ClosedForm::Gamma(q)
    }

    pub fn sqrt(self) -> Self {
        self.pow(Rational::new(1.into(), 2.into()))
    }

    pub fn pow(self, q: Rational) -> Self {
        ClosedForm::Pow(Box::new(self), q)
    }

    pub fn powi(self, n: i64) -> Self {
        self.pow(int(n))
    }

    pub fn depth(&self) -> u64 {
        use ClosedForm::*;
        match self {
            Rat(_) | Pi | Log2 | EulerGamma | Gamma(_) | Digamma(_) | Trigamma(_) => 1,
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => 1 + a.depth().max(b.depth()),
            Neg(a) | Pow(a, _) => 1 + a.depth(),
        }
    }

    /// Checks that every Gamma/psi node has a positive argument.
    pub fn validate(&self) -> Result<()> {
        use ClosedForm::*;
        match self {
            Gamma(q) | Digamma(q) | Trigamma(q) if !q.is_positive() => Err(Error::Domain(format!(
                "special-function node needs a positive argument, got {q}"
            ))),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                a.validate()?;
                b.validate()
            }
            Neg(a) | Pow(a, _) => a.validate(),
            _ => Ok(()),
        }
    }

    /// Value at `ctx`; internal work carries a few extra bits per level.
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        self.validate()?;
        let inner = ctx.with_extra_bits(BITS_PER_LEVEL * self.depth());
        Ok(self.eval_at(&inner)?.with_prec(ctx.working_bits))
    }

    fn eval_at(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        use ClosedForm::*;
        let bits = ctx.working_bits;
        Ok(match self {
            Rat(q) => BigReal::from_rational(q, bits),
            Pi => pi(ctx),
            Log2 => log2(ctx),
            EulerGamma => euler_gamma(ctx),
            Gamma(q) => gamma_pos_rational(q, ctx)?,
            Digamma(q) => digamma_rational(q, ctx)?,
            Trigamma(q) => trigamma_rational(q, ctx)?,
            Add(a, b) => &a.eval_at(ctx)? + &b.eval_at(ctx)?,
            Sub(a, b) => &a.eval_at(ctx)? - &b.eval_at(ctx)?,
            Mul(a, b) => &a.eval_at(ctx)? * &b.eval_at(ctx)?,
            Div(a, b) => {
                let d = b.eval_at(ctx)?;
                if d.is_zero() || d.log2_abs() < -(bits as f64) + 16.0 {
                    return Err(Error::Domain(format!(
                        "division by a value indistinguishable from zero in {self}"
                    )));
                }
                &a.eval_at(ctx)? / &d
            }
            Neg(a) => -a.eval_at(ctx)?,
            Pow(a, q) => {
                let base = a.eval_at(ctx)?;
                pow_rational(&base, q)?
            }
        })
    }
}

fn pow_rational(base: &BigReal, q: &Rational) -> Result<BigReal> {
    let two = int(2);
    if q.is_integer() {
        let n = q.to_integer();
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::ResourceLimit("power too large".into()))?;
        if n < 0 && base.is_zero() {
            return Err(Error::Domain("zero to a negative power".into()));
        }
        return Ok(base.powi(n));
    }
    if base.signum() < 0 {
        return Err(Error::Domain(format!("fractional power {q} of a negative value")));
    }
    if base.is_zero() {
        return Ok(base.clone());
    }
    if (q * &two).is_integer() {
        let n: i64 = (q * &two)
            .to_integer()
            .try_into()
            .map_err(|_| Error::ResourceLimit("power too large".into()))?;
        return Ok(sqrt(base)?.powi(n));
    }
    let l = ln(base)?;
    exp(&l.mul_rational(q))
}

fn is_atom(cf: &ClosedForm) -> bool {
    use ClosedForm::*;
    match cf {
        Rat(q) => q.is_integer() && !q.is_negative(),
        Pi | Log2 | EulerGamma | Gamma(_) | Digamma(_) | Trigamma(_) | Pow(..) => true,
        _ => false,
    }
}

fn is_product(cf: &ClosedForm) -> bool {
    is_atom(cf) || matches!(cf, ClosedForm::Mul(..) | ClosedForm::Div(..))
}

struct Wrapped<'a>(&'a ClosedForm, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClosedForm::*;
        match self {
            Rat(q) => write!(f, "{q}"),
            Pi => write!(f, "π"),
            Log2 => write!(f, "log 2"),
            EulerGamma => write!(f, "γ"),
            Gamma(q) => write!(f, "Γ({q})"),
            Digamma(q) => write!(f, "ψ({q})"),
            Trigamma(q) => write!(f, "ψ′({q})"),
            Add(a, b) => write!(f, "{a} + {b}"),
            Sub(a, b) => {
                let wrap = matches!(**b, Add(..) | Sub(..));
                write!(f, "{a} − {}", Wrapped(b, wrap))
            }
            Mul(a, b) => {
                let lead = matches!(&**a, Rat(q) if q.is_integer());
                write!(
                    f,
                    "{}·{}",
                    Wrapped(a, !lead && !is_product(a)),
                    Wrapped(b, !is_product(b))
                )
            }
            Div(a, b) => write!(f, "{}/{}", Wrapped(a, !is_product(a)), Wrapped(b, !is_atom(b))),
            Neg(a) => write!(f, "−{}", Wrapped(a, !is_product(a))),
            Pow(a, q) => {
                if *q == Rational::new(1.into(), 2.into()) {
                    write!(f, "√{}", Wrapped(a, !is_atom(a)))
                } else if q.is_integer() && !q.is_negative() {
                    write!(f, "{}^{q}", Wrapped(a, !is_atom(a) || matches!(**a, Pow(..))))
                } else {
                    write!(f, "{}^({q})", Wrapped(a, !is_atom(a) || matches!(**a, Pow(..))))
                }
            }
        }
    }
}

impl From<Rational> for ClosedForm {
    fn from(q: Rational) -> Self {
        ClosedForm::Rat(q)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $v:ident) => {
        impl $tr for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, rhs: ClosedForm) -> ClosedForm {
                ClosedForm::$v(Box::new(self), Box::new(rhs))
            }
        }
        impl $tr<Rational> for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, rhs: Rational) -> ClosedForm {
                ClosedForm::$v(Box::new(self), Box::new(ClosedForm::Rat(rhs)))
            }
        }
        impl $tr<ClosedForm> for Rational {
            type Output = ClosedForm;
            fn $m(self, rhs: ClosedForm) -> ClosedForm {
                ClosedForm::$v(Box::new(ClosedForm::Rat(self)), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        match self {
            ClosedForm::Rat(q) => ClosedForm::Rat(-q),
            other => ClosedForm::Neg(Box::new(other)),
        }
    }
}

impl ClosedForm {
    /// `c * product of factors`, skipping a unit coefficient.
    pub fn scaled(c: Rational, body: ClosedForm) -> ClosedForm {
        if c.is_one() {
            body
        } else if c == -Rational::one() {
            -body
        } else if c.is_zero() {
            ClosedForm::Rat(c)
        } else {
            ClosedForm::Rat(c) * body
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::agree_digits;
    use crate::exact::rat;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50)
    }

    #[test]
    fn four_over_pi() {
        let cf = ClosedForm::int(4) / ClosedForm::pi();
        assert_eq!(cf.to_string(), "4/π");
        assert!(cf
            .eval(&ctx())
            .unwrap()
            .to_decimal(21)
            .starts_with("1.27323954473516268615"));
    }

    #[test]
    fn log_over_pi() {
        let cf = ClosedForm::int(-8) * ClosedForm::log2() / ClosedForm::pi();
        assert_eq!(cf.to_string(), "-8·log 2/π");
        let v = cf.eval(&ctx()).unwrap();
        assert!(
            v.to_decimal(21).starts_with("-1.76508480122121274717"),
            "{}",
            v.to_decimal(25)
        );
    }

    #[test]
    fn rational_literal() {
        let cf = ClosedForm::rat(rat(16, 3));
        assert_eq!(
            cf.eval(&ctx()).unwrap(),
            BigReal::from_rational(&rat(16, 3), ctx().bits())
        );
        assert_eq!(cf.to_string(), "16/3");
    }

    #[test]
    fn gamma_quotient() {
        // Gamma(1/2)^2 = pi
        let cf = ClosedForm::gamma(rat(1, 2)).powi(2);
        let v = cf.eval(&ctx()).unwrap();
        assert!(agree_digits(&v, &pi(&ctx()), 50) >= 50);
        let s = ClosedForm::pi().sqrt();
        assert_eq!(s.to_string(), "√π");
        let q = ClosedForm::int(2) * ClosedForm::gamma(rat(3, 2)) / (s * ClosedForm::gamma(rat(1, 1)));
        assert_eq!(q.to_string(), "2·Γ(3/2)/(√π·Γ(1))");
        let v = q.eval(&ctx()).unwrap();
        assert!(agree_digits(&v, &BigReal::from_int(1, 200), 50) >= 50);
    }

    #[test]
    fn psi_table_closed_forms() {
        let c = ctx();
        let lhs = ClosedForm::Digamma(rat(1, 4));
        let rhs =
            -ClosedForm::EulerGamma - ClosedForm::int(3) * ClosedForm::log2() - ClosedForm::pi() / ClosedForm::int(2);
        assert!(agree_digits(&lhs.eval(&c).unwrap(), &rhs.eval(&c).unwrap(), 50) >= 50);
        let t = ClosedForm::Trigamma(rat(1, 1));
        let want = ClosedForm::pi().powi(2) / ClosedForm::int(6);
        assert!(agree_digits(&t.eval(&c).unwrap(), &want.eval(&c).unwrap(), 50) >= 50);
    }

    #[test]
    fn errors() {
        let c = ctx();
        assert!(ClosedForm::Gamma(rat(-1, 2)).eval(&c).is_err());
        assert!((ClosedForm::int(1) / ClosedForm::int(0)).eval(&c).is_err());
        assert!(ClosedForm::int(-2).sqrt().eval(&c).is_err());
        let cube = ClosedForm::int(8).pow(rat(1, 3)).eval(&c).unwrap();
        assert!(agree_digits(&cube, &BigReal::from_int(2, c.bits()), 50) >= 50);
    }
}
