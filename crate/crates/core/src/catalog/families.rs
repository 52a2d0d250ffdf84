//! One-parameter families `sum_k T_k(p) w_k(p) = C * prod Gamma(a0 + a1 p)^e`
//! and their parameter derivatives.
//!
//! Differentiating `(a0 + a1 p)_{mk}` in p gives
//! `a1 * H_{mk}(a0 + a1 p - 1)` times the factor, and `Gamma(x)^e` gives
//! `e * psi(x)`, so the derivative family needs no transcription.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{catalog, verify_series, IdentityRecord};
use crate::bigreal::{agree_digits, BigReal, PrecisionContext};
use crate::closed_form::ClosedForm;
use crate::error::{Error, Result};
use crate::exact::{int, rat, HarmonicRef, Rational, RationalFunction, Var};
use crate::report::VerificationReport;
use crate::series::{ConvergenceClass, HyperTerm, PochFactor, SeriesSpec, WeightExpr};

/// `(a0 + a1 p)_{mult k}^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoch {
    pub a0: Rational,
    pub a1: Rational,
    pub mult: u32,
    pub power: i32,
}

impl ParamPoch {
    pub fn arg_at(&self, p: &Rational) -> Rational {
        &self.a0 + &self.a1 * p
    }

    pub fn at(&self, p: &Rational) -> PochFactor {
        PochFactor::new(self.arg_at(p), self.mult, self.power)
    }
}

/// `coeff * prod Gamma(a0 + a1 p)^e`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaProduct {
    pub coeff: ClosedForm,
    pub gammas: Vec<(Rational, Rational, i32)>,
}

impl GammaProduct {
    pub fn at(&self, p: &Rational) -> Result<ClosedForm> {
        let mut out = self.coeff.clone();
        for (a0, a1, e) in &self.gammas {
            let x = a0 + a1 * p;
            if !x.is_positive() {
                return Err(Error::Domain(format!("Gamma argument {x} is not positive")));
            }
            let g = ClosedForm::gamma(x);
            out = if *e == 1 { out * g } else { out * g.powi(*e as i64) };
        }
        Ok(out)
    }

    /// `sum e * a1 * psi(a0 + a1 p)`: the logarithmic derivative in p.
    pub fn log_derivative_at(&self, p: &Rational) -> ClosedForm {
        let mut out: Option<ClosedForm> = None;
        for (a0, a1, e) in &self.gammas {
            let c = a1 * int(*e as i64);
            if c.is_zero() {
                continue;
            }
            let term = ClosedForm::scaled(c, ClosedForm::Digamma(a0 + a1 * p));
            out = Some(match out {
                None => term,
                Some(acc) => acc + term,
            });
        }
        out.unwrap_or_else(|| ClosedForm::int(0))
    }
}

/// A family value at `at` equals `scale` times the linked record, term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub at: Rational,
    pub record: &'static str,
    pub scale: Rational,
}

/// The derivative series as printed: `w * L + sign * D w`, summed from `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintedDerivative {
    pub anchor: &'static str,
    pub log_weight: &'static str,
    pub dw_sign: i32,
    pub start: u64,
}

#[derive(Debug, Clone)]
pub struct ParamFamily {
    pub id: &'static str,
    pub anchor: &'static str,
    pub var: Var,
    /// Open interval of admissible parameter values.
    pub domain: (Rational, Rational),
    pub z: Rational,
    pub factors: Vec<ParamPoch>,
    pub weight_text: &'static str,
    pub rhs: GammaProduct,
    pub points: Vec<Rational>,
    pub specializations: Vec<Link>,
    pub derivative_link: Option<Link>,
    pub printed_derivative: PrintedDerivative,
}

fn linear_text(a0: &Rational, a1: &Rational, var: Var) -> String {
    let v = match a1 {
        a if a.is_zero() => String::new(),
        a if a.is_one() => var.to_string(),
        a if *a == -Rational::one() => format!("-{var}"),
        a => format!("{a}{var}"),
    };
    match (a0.is_zero(), v.is_empty()) {
        (_, true) => a0.to_string(),
        (true, false) => v,
        (false, false) if v.starts_with('-') => format!("{a0}{v}"),
        (false, false) => format!("{v}+{a0}"),
    }
}

impl ParamFamily {
    pub fn weight_rf(&self) -> RationalFunction {
        RationalFunction::parse(self.weight_text).expect("family weights parse")
    }

    pub fn check_domain(&self, p: &Rational) -> Result<()> {
        if p > &self.domain.0 && p < &self.domain.1 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} = {p} is outside the admissible interval ({}, {}) of {}",
                self.var, self.domain.0, self.domain.1, self.id
            )))
        }
    }

    pub fn base_at(&self, p: &Rational) -> HyperTerm {
        HyperTerm::new(int(1), self.z.clone(), self.factors.iter().map(|f| f.at(p)).collect())
    }

    /// Read off the base term's ratio limit, which does not depend on p.
    pub fn class(&self) -> ConvergenceClass {
        let probe = &(&self.domain.0 + &self.domain.1) / int(2);
        match self.base_at(&probe).ratio_limit() {
            Some(r) if r < Rational::one() => ConvergenceClass::Geometric(r),
            _ if self.z.is_negative() => ConvergenceClass::AlternatingSlow,
            _ => ConvergenceClass::AlgebraicSlow,
        }
    }

    pub fn lhs_at(&self, p: &Rational) -> Result<SeriesSpec> {
        let w = self.weight_rf().substitute(self.var, p)?;
        Ok(SeriesSpec::new(self.base_at(p), WeightExpr::rf(w), self.class()))
    }

    pub fn rhs_at(&self, p: &Rational) -> Result<ClosedForm> {
        self.rhs.at(p)
    }

    /// `L_k(p) = sum power * a1 * H_{mult k}(a0 + a1 p - 1)`.
    pub fn log_weight_at(&self, p: &Rational) -> WeightExpr {
        let mut out = WeightExpr::zero();
        for f in self.factors.iter().filter(|f| !f.a1.is_zero()) {
            let c = &f.a1 * int(f.power as i64);
            let h = HarmonicRef::shifted(f.mult, f.arg_at(p) - int(1));
            out = &out + &WeightExpr::harmonic(h).scale_rational(&c);
        }
        out
    }

    pub fn derivative_weight_at(&self, p: &Rational) -> Result<WeightExpr> {
        let w = self.weight_rf();
        let wp = w.substitute(self.var, p)?;
        let dw = w.derivative(self.var).substitute(self.var, p)?;
        Ok(&self.log_weight_at(p).scale(&wp) + &WeightExpr::rf(dw))
    }

    pub fn derivative_lhs_at(&self, p: &Rational) -> Result<SeriesSpec> {
        Ok(SeriesSpec::new(
            self.base_at(p),
            self.derivative_weight_at(p)?,
            self.class(),
        ))
    }

    pub fn derivative_rhs_at(&self, p: &Rational) -> Result<ClosedForm> {
        Ok(self.rhs.at(p)? * self.rhs.log_derivative_at(p))
    }

    /// The derivative weight transcribed from its printed form.
    pub fn printed_derivative_weight_at(&self, p: &Rational) -> Result<WeightExpr> {
        let pd = &self.printed_derivative;
        let log = WeightExpr::parse(pd.log_weight, &[(self.var, p.clone())])?;
        let w = self.weight_rf();
        let wp = w.substitute(self.var, p)?;
        let dw = w
            .derivative(self.var)
            .substitute(self.var, p)?
            .scale(&int(pd.dw_sign as i64));
        Ok(&log.scale(&wp) + &WeightExpr::rf(dw))
    }

    pub fn printed_derivative_lhs_at(&self, p: &Rational) -> Result<SeriesSpec> {
        Ok(
            SeriesSpec::new(self.base_at(p), self.printed_derivative_weight_at(p)?, self.class())
                .starting_at(self.printed_derivative.start),
        )
    }

    pub fn base_text(&self) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for f in &self.factors {
            let idx = if f.mult == 1 {
                "k".to_string()
            } else {
                format!("{}k", f.mult)
            };
            let mut s = format!("({})_{{{idx}}}", linear_text(&f.a0, &f.a1, self.var));
            if f.power.abs() != 1 {
                s.push_str(&format!("^{}", f.power.abs()));
            }
            if f.power > 0 {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        let z = if self.z.is_one() {
            String::new()
        } else {
            format!("({})^k·", self.z)
        };
        format!("{z}{}/{}", num.join(""), den.join(""))
    }

    pub fn rhs_text(&self) -> String {
        let mut s = self.rhs.coeff.to_string();
        for (a0, a1, e) in &self.rhs.gammas {
            s.push_str(&format!("·Γ({})", linear_text(a0, a1, self.var)));
            if *e != 1 {
                s.push_str(&format!("^({e})"));
            }
        }
        s
    }
}

/// The differentiated family of a parent family.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeIdentity<'a> {
    pub family: &'a ParamFamily,
}

impl DerivativeIdentity<'_> {
    pub fn lhs_at(&self, p: &Rational) -> Result<SeriesSpec> {
        self.family.check_domain(p)?;
        self.family.derivative_lhs_at(p)
    }

    pub fn rhs_at(&self, p: &Rational) -> Result<ClosedForm> {
        self.family.check_domain(p)?;
        self.family.derivative_rhs_at(p)
    }
}

impl fmt::Display for DerivativeIdentity<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = self.family;
        let v = fam.var;
        let mut log = Vec::new();
        for p in fam.factors.iter().filter(|p| !p.a1.is_zero()) {
            let c = &p.a1 * int(p.power as i64);
            let idx = if p.mult == 1 {
                "k".to_string()
            } else {
                format!("{}k", p.mult)
            };
            let shift = linear_text(&(&p.a0 - int(1)), &p.a1, v);
            log.push(format!("{c}·H_{{{idx}}}({shift})"));
        }
        let mut psi = Vec::new();
        for (a0, a1, e) in &fam.rhs.gammas {
            let c = a1 * int(*e as i64);
            if !c.is_zero() {
                psi.push(format!("{c}·ψ({})", linear_text(a0, a1, v)));
            }
        }
        write!(
            f,
            "sum T_k({v})·{{w_k({v})·[{}] + D_{v} w_k({v})}} = RHS({v})·[{}]",
            log.join(" + "),
            psi.join(" + ")
        )
    }
}

pub fn derivative_identity(id: &str) -> Result<DerivativeIdentity<'static>> {
    Ok(DerivativeIdentity {
        family: catalog().family(id)?,
    })
}

/// Verifies a family at one parameter value.
pub fn verify_param(id: &str, p: &Rational, ctx: &PrecisionContext, digits: u32) -> Result<VerificationReport> {
    let fam = catalog().family(id)?;
    fam.check_domain(p)?;
    let label = format!("{id}@{}={p}", fam.var);
    verify_series(&label, fam.anchor, &fam.lhs_at(p)?, &fam.rhs_at(p)?, ctx, digits, None)
}

/// Verifies the differentiated family at one parameter value against its
/// digamma right-hand side.
pub fn verify_derivative(id: &str, p: &Rational, ctx: &PrecisionContext, digits: u32) -> Result<VerificationReport> {
    let d = derivative_identity(id)?;
    let label = format!("D{}[{id}]@{p}", d.family.var);
    verify_series(
        &label,
        d.family.printed_derivative.anchor,
        &d.lhs_at(p)?,
        &d.rhs_at(p)?,
        ctx,
        digits,
        None,
    )
}

fn scaled_record_rhs(link: &Link) -> Result<(&'static IdentityRecord, ClosedForm)> {
    let rec = catalog().record(link.record)?;
    Ok((rec, ClosedForm::scaled(link.scale.clone(), rec.rhs.clone())))
}

/// First `kmax` terms of `a` equal `scale` times those of `b`, exactly.
pub fn terms_proportional(a: &SeriesSpec, b: &SeriesSpec, scale: &Rational, kmax: u64) -> Result<bool> {
    for (x, y) in a.terms().zip(b.terms()).take(kmax as usize) {
        let (x, y) = (x?, y?);
        if x.value != scale * &y.value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks a specialization: exactly at the term level for k < 40, then the
/// family sum against the scaled record value.
pub fn verify_specialization(
    fam: &ParamFamily,
    link: &Link,
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<VerificationReport> {
    let (rec, rhs) = scaled_record_rhs(link)?;
    let spec = fam.lhs_at(&link.at)?;
    let label = format!("{}@{}={} -> {}", fam.id, fam.var, link.at, rec.id);
    let mut report = verify_series(&label, fam.anchor, &spec, &rhs, ctx, digits, None)?;
    if !terms_proportional(&spec, &rec.lhs, &link.scale, 40)? {
        report.pass = false;
        report.digits_matched = 0;
    }
    Ok(report)
}

/// Same for the differentiated family and its linked record.
pub fn verify_derivative_link(
    fam: &ParamFamily,
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<Option<VerificationReport>> {
    let Some(link) = &fam.derivative_link else {
        return Ok(None);
    };
    let (rec, rhs) = scaled_record_rhs(link)?;
    let spec = fam.derivative_lhs_at(&link.at)?;
    let label = format!("D{}[{}]@{} -> {}", fam.var, fam.id, link.at, rec.id);
    let mut report = verify_series(&label, fam.printed_derivative.anchor, &spec, &rhs, ctx, digits, None)?;
    let start = rec.lhs.start_index;
    let exact = terms_proportional(&spec.clone().starting_at(0), &rec.lhs, &link.scale, 40)?;
    if !exact || start != 0 {
        report.pass = false;
        report.digits_matched = 0;
    }
    Ok(Some(report))
}

/// Symmetric difference quotient of the family sum against the
/// differentiated series, both at 60 or more digits with h = 10^-10.
///
/// The quotient at 2h predicts the h^2 truncation error; a gap beyond ten
/// times that prediction is reported as an instability.
pub fn central_difference_check(id: &str, p0: &Rational, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let fam = catalog().family(id)?;
    let started = Instant::now();
    let digits = ctx.target_digits.max(60);
    let work = ctx.at_least(digits);
    let h = Rational::new(BigInt::one(), BigInt::from(10).pow(10));
    let two_h = &h * int(2);
    for q in [p0 - &two_h, p0 + &two_h] {
        fam.check_domain(&q)?;
    }
    let sum_at = |p: &Rational| -> Result<(BigReal, usize)> {
        let r = fam.lhs_at(p)?.sum(&work, digits, None)?;
        Ok((r.value, r.terms_used))
    };
    let quotient = |step: &Rational| -> Result<(BigReal, usize)> {
        let (hi, n1) = sum_at(&(p0 + step))?;
        let (lo, n2) = sum_at(&(p0 - step))?;
        let inv = (step * int(2)).recip();
        Ok(((&hi - &lo).mul_rational(&inv), n1 + n2))
    };
    let (d1, n1) = quotient(&h)?;
    let (d2, n2) = quotient(&two_h)?;
    let analytic = fam.derivative_lhs_at(p0)?.sum(&work, digits, None)?;

    let gap = (&d1 - &analytic.value).abs();
    let predicted = (&d2 - &d1).abs().mul_rational(&rat(10, 3));
    let floor = BigReal::from_int(1, 64).mul_pow2(-((digits as f64 - 25.0) * std::f64::consts::LOG2_10) as i64);
    if gap > &predicted + &floor {
        return Err(Error::Instability {
            first: d1.to_decimal(30),
            second: analytic.value.to_decimal(30),
            digits: agree_digits(&d1, &analytic.value, digits),
        });
    }
    Ok(VerificationReport::compare(
        format!("{id}@{}={p0}", fam.var),
        fam.printed_derivative.anchor,
        15,
        digits,
        &d1,
        &analytic.value,
        n1 + n2 + analytic.terms_used,
        "central_difference",
        started.elapsed(),
    ))
}

fn lin(a0: Rational, a1: i64, mult: u32, power: i32) -> ParamPoch {
    ParamPoch {
        a0,
        a1: int(a1),
        mult,
        power,
    }
}

fn fixed(a: Rational, mult: u32, power: i32) -> ParamPoch {
    lin(a, 0, mult, power)
}

fn g(a0: Rational, a1: i64, e: i32) -> (Rational, Rational, i32) {
    (a0, int(a1), e)
}

fn one_over_sqrt_pi() -> ClosedForm {
    ClosedForm::int(1) / ClosedForm::pi().sqrt()
}

/// `sqrt(2)/4 * Gamma(3/2 - p)^2 / (Gamma(3/4 - p) Gamma(5/4 - p))`.
fn quarter_gamma_rhs() -> GammaProduct {
    GammaProduct {
        coeff: ClosedForm::int(2).sqrt() / ClosedForm::int(4),
        gammas: vec![g(rat(3, 2), -1, 2), g(rat(3, 4), -1, -1), g(rat(5, 4), -1, -1)],
    }
}

/// `Gamma(3/2 - p) Gamma(1/2 + p) / (pi Gamma(p) Gamma(1 - p))`.
fn reflection_rhs() -> GammaProduct {
    GammaProduct {
        coeff: ClosedForm::int(1) / ClosedForm::pi(),
        gammas: vec![
            g(rat(3, 2), -1, 1),
            g(rat(1, 2), 1, 1),
            g(int(0), 1, -1),
            g(int(1), -1, -1),
        ],
    }
}

fn link(at: Rational, record: &'static str, scale: Rational) -> Link {
    Link { at, record, scale }
}

fn printed(anchor: &'static str, log_weight: &'static str, dw_sign: i32, start: u64) -> PrintedDerivative {
    PrintedDerivative {
        anchor,
        log_weight,
        dw_sign,
        start,
    }
}

pub(super) fn families() -> Vec<ParamFamily> {
    let h = || rat(1, 2);
    let unit = || (int(0), int(1));
    let three = || vec![rat(1, 5), rat(1, 3), rat(1, 2)];
    vec![
        ParamFamily {
            id: "th1",
            anchor: r"\frac{2\Gamma(\frac{3}{2}-c)}{\sqrt{\pi}\Gamma(1-c)}",
            var: Var::C,
            domain: (int(0), rat(3, 4)),
            z: int(-1),
            factors: vec![
                fixed(h(), 1, 2),
                lin(int(0), 1, 1, 1),
                fixed(int(1), 1, -2),
                lin(rat(3, 2), -1, 1, -1),
            ],
            weight_text: "4k+1",
            rhs: GammaProduct {
                coeff: ClosedForm::int(2) * one_over_sqrt_pi(),
                gammas: vec![g(rat(3, 2), -1, 1), g(int(1), -1, -1)],
            },
            points: vec![rat(1, 4), rat(1, 3), rat(1, 2)],
            specializations: vec![link(h(), "ra1", int(1))],
            derivative_link: Some(link(h(), "thm-(5)", int(2))),
            printed_derivative: printed(
                r"(4k+1)\big\{H_k(c-1)+H_k(\tfrac{1}{2}-c)\big\}",
                "H[k](c-1)+H[k](1/2-c)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "1c2",
            anchor: r"\frac{3k-c+1}{2}=\frac{\Gamma(\frac{3}{2}-c)}{\sqrt{\pi}\Gamma(1-c)}",
            var: Var::C,
            domain: unit(),
            z: rat(1, 4),
            factors: vec![
                fixed(h(), 1, 1),
                lin(int(0), 1, 1, 1),
                lin(int(1), -1, 1, 1),
                fixed(int(1), 1, -2),
                lin(rat(3, 2), -1, 1, -1),
            ],
            weight_text: "(3k-c+1)/2",
            rhs: GammaProduct {
                coeff: one_over_sqrt_pi(),
                gammas: vec![g(rat(3, 2), -1, 1), g(int(1), -1, -1)],
            },
            points: three(),
            specializations: vec![link(h(), "ra2", rat(1, 4))],
            derivative_link: Some(link(h(), "thm-(1)", rat(1, 4))),
            printed_derivative: printed(
                r"\big(H_k(c-1)-H_k(-c)+H_k(\tfrac{1}{2}-c)\big)-\frac{1}{2}",
                "H[k](c-1)-H[k](-c)+H[k](1/2-c)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "2b2",
            anchor: r"6k^2-(4b-6)k-b+1",
            var: Var::B,
            domain: unit(),
            z: int(1),
            factors: vec![
                fixed(h(), 1, 2),
                lin(int(1), -1, 1, 2),
                fixed(int(1), 1, -2),
                lin(rat(3, 2), -1, 2, -1),
            ],
            weight_text: "(6k^2-(4b-6)k-b+1)/(4k-2b+3)",
            rhs: GammaProduct {
                coeff: one_over_sqrt_pi(),
                gammas: vec![g(rat(3, 2), -1, 1), g(int(1), -1, -1)],
            },
            points: three(),
            specializations: vec![link(h(), "ra2", rat(1, 4))],
            derivative_link: Some(link(h(), "aux-(2b4)", rat(-1, 4))),
            printed_derivative: printed(
                r"f_k(b)\big(H_{2k}(\tfrac{1}{2}-b)-2H_k(-b)\big)-\mathcal{D}_bf_k(b)",
                "H[2k](1/2-b)-2H[k](-b)",
                -1,
                0,
            ),
        },
        ParamFamily {
            id: "3b1",
            anchor: r"\frac{40k^2+(50-48b)k+16b^2-32b+15}{16(4k-2b+3)}",
            var: Var::B,
            domain: (int(0), rat(3, 4)),
            z: int(-1),
            factors: vec![
                fixed(h(), 1, 1),
                lin(rat(3, 4), -1, 1, 1),
                lin(int(1), -1, 1, 1),
                lin(rat(5, 4), -1, 1, 1),
                fixed(int(1), 1, -1),
                lin(rat(3, 2), -1, 2, -1),
                lin(rat(3, 2), -1, 1, -1),
            ],
            weight_text: "(40k^2+(50-48b)k+16b^2-32b+15)/(16(4k-2b+3))",
            rhs: quarter_gamma_rhs(),
            points: three(),
            specializations: vec![link(h(), "ra3", rat(1, 32))],
            derivative_link: Some(link(h(), "aux-(3b3)", rat(1, 32))),
            printed_derivative: printed(
                r"H_{2k}(\tfrac{1}{2}-b)+H_{k}(\tfrac{1}{2}-b)-H_k(-\tfrac{1}{4}-b)-H_k(-b)-H_k(\tfrac{1}{4}-b)",
                "H[2k](1/2-b)+H[k](1/2-b)-H[k](-1/4-b)-H[k](-b)-H[k](1/4-b)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "4c1",
            anchor: r"20k^2+(19-12c)k-5c+4",
            var: Var::C,
            domain: (int(0), rat(3, 4)),
            z: int(-1),
            factors: vec![
                fixed(rat(1, 4), 1, 1),
                fixed(rat(3, 4), 1, 1),
                lin(int(0), 1, 1, 1),
                lin(int(1), -1, 1, 1),
                fixed(int(1), 2, -1),
                lin(rat(3, 2), -1, 1, -2),
            ],
            weight_text: "(20k^2+(19-12c)k-5c+4)/(16(2k+1))",
            rhs: quarter_gamma_rhs(),
            points: three(),
            specializations: vec![link(h(), "ra3", rat(1, 32))],
            derivative_link: Some(link(h(), "aux-(4c3)", rat(1, 16))),
            printed_derivative: printed(
                r"H_k(c-1)-H_k(-c)+2H_{k}(\tfrac{1}{2}-c)",
                "H[k](c-1)-H[k](-c)+2H[k](1/2-c)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "5d1",
            anchor: r"20k^2+(11-12d)k-d+1",
            var: Var::D,
            domain: (int(0), rat(3, 4)),
            z: int(-1),
            factors: vec![
                fixed(h(), 1, 2),
                fixed(rat(1, 4), 1, 1),
                lin(int(0), 1, 1, 1),
                lin(int(1), -1, 1, 1),
                fixed(int(1), 1, -1),
                fixed(int(1), 2, -1),
                lin(rat(3, 2), -1, 1, -1),
                lin(rat(5, 4), -1, 1, -1),
            ],
            weight_text: "(20k^2+(11-12d)k-d+1)/8",
            rhs: GammaProduct {
                coeff: ClosedForm::gamma(rat(3, 4)) / (ClosedForm::pi().sqrt() * ClosedForm::gamma(rat(1, 4))),
                gammas: vec![
                    g(rat(3, 2), -1, 1),
                    g(rat(5, 4), -1, 1),
                    g(int(1), -1, -1),
                    g(rat(3, 4), -1, -1),
                ],
            },
            points: vec![rat(1, 5), rat(1, 3), rat(1, 2)],
            specializations: vec![link(rat(1, 4), "ra3", rat(1, 32))],
            derivative_link: Some(link(rat(1, 4), "aux-(5d3)", rat(1, 32))),
            printed_derivative: printed(
                r"H_k(d-1)-H_k(-d)+H_{k}(\tfrac{1}{2}-d)+H_{k}(\tfrac{1}{4}-d)",
                "H[k](d-1)-H[k](-d)+H[k](1/2-d)+H[k](1/4-d)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "6e1",
            anchor: r"t_k(e)=\frac{1}{8}(5k-3e+3)",
            var: Var::E,
            domain: unit(),
            z: int(-1),
            factors: vec![
                fixed(h(), 1, 2),
                fixed(rat(3, 4), 1, 1),
                lin(int(0), 1, 1, 1),
                lin(int(1), -1, 1, 1),
                fixed(int(1), 1, -1),
                fixed(int(1), 2, -1),
                lin(rat(3, 2), -1, 1, -1),
                lin(rat(7, 4), -1, 1, -1),
            ],
            weight_text: "(5k-3e+3)/8",
            rhs: GammaProduct {
                coeff: ClosedForm::gamma(rat(1, 4))
                    / (ClosedForm::int(4) * ClosedForm::pi().sqrt() * ClosedForm::gamma(rat(3, 4))),
                gammas: vec![
                    g(rat(3, 2), -1, 1),
                    g(rat(7, 4), -1, 1),
                    g(int(1), -1, -1),
                    g(rat(5, 4), -1, -1),
                ],
            },
            points: vec![rat(1, 5), rat(1, 3), rat(3, 4)],
            specializations: vec![link(rat(3, 4), "ra3", rat(1, 32))],
            derivative_link: Some(link(rat(3, 4), "aux-(6e3)", rat(1, 32))),
            printed_derivative: printed(
                r"H_k(e-1)-H_k(-e)+H_{k}(\tfrac{1}{2}-e)+H_{k}(\tfrac{3}{4}-e)",
                "H[k](e-1)-H[k](-e)+H[k](1/2-e)+H[k](3/4-e)",
                1,
                1,
            ),
        },
        ParamFamily {
            id: "th6.1",
            anchor: r"120k^4+154k^3",
            var: Var::B,
            domain: unit(),
            z: int(1),
            factors: vec![
                fixed(h(), 2, 1),
                fixed(h(), 1, 2),
                lin(int(0), 1, 1, 2),
                lin(int(1), -1, 1, 2),
                fixed(int(1), 1, -2),
                fixed(int(1), 2, -1),
                lin(rat(3, 2), -1, 2, -1),
                lin(rat(1, 2), 1, 2, -1),
            ],
            weight_text: "(120k^4+154k^3-(48b^2-48b-55)k^2-(22b^2-22b-6)k-3b^2+3b)/(2(4k-2b+3)(4k+2b+1))",
            rhs: reflection_rhs(),
            points: three(),
            specializations: vec![link(h(), "guillera-pi2", rat(1, 32))],
            derivative_link: None,
            printed_derivative: printed(
                r"2H_k(b-1)-2H_k(-b)+H_{2k}(\tfrac{1}{2}-b)-H_{2k}(b-\tfrac{1}{2})",
                "2H[k](b-1)-2H[k](-b)+H[2k](1/2-b)-H[2k](b-1/2)",
                1,
                0,
            ),
        },
        ParamFamily {
            id: "th6.11",
            anchor: r"60k^5+107k^4",
            var: Var::C,
            domain: unit(),
            z: int(1),
            factors: vec![
                fixed(h(), 2, 1),
                lin(int(0), 1, 1, 3),
                lin(int(1), -1, 1, 3),
                fixed(int(1), 2, -3),
                lin(rat(3, 2), -1, 1, -1),
                lin(rat(1, 2), 1, 1, -1),
            ],
            weight_text:
                "(60k^5+107k^4+(8c^2-8c+74)k^3+(6c^2-6c+24)k^2-(4c^4-8c^3+6c^2-2c-3)k-c^4+2c^3-2c^2+c)/(2(1+2k)^3)",
            rhs: reflection_rhs(),
            points: three(),
            specializations: vec![link(h(), "guillera-pi2", rat(1, 32))],
            derivative_link: None,
            printed_derivative: printed(
                r"3H_k(c-1)-3H_k(-c)+H_{k}(\tfrac{1}{2}-c)-H_{k}(c-\tfrac{1}{2})",
                "3H[k](c-1)-3H[k](-c)+H[k](1/2-c)-H[k](c-1/2)",
                1,
                0,
            ),
        },
    ]
}
