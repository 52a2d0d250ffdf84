//! Weights: linear combinations of harmonic quantities with rational-function
//! coefficients in k.
//!
//! Text form, e.g. `(20k+3)(H[2k]-3H[k])+12`, `H2[2k]`, `H[k](-3/4)`,
//! `H[2k](1/2-b)`. `H` is order 1, `H2` order 2; the bracket holds the index
//! multiple of k and the optional parenthesis the shift.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{HarmonicRef, HarmonicState, Rational, RationalFunction, Var};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    One,
    H(HarmonicRef),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::One => write!(f, "1"),
            Basis::H(r) => write!(f, "{r}"),
        }
    }
}

/// `sum_i c_i(k) * B_i` with `B_i` either 1 or a harmonic quantity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightExpr {
    terms: BTreeMap<Basis, RationalFunction>,
}

impl WeightExpr {
    pub fn zero() -> Self {
        WeightExpr::default()
    }

    pub fn rf(c: RationalFunction) -> Self {
        let mut w = WeightExpr::zero();
        w.add_term(Basis::One, c);
        w
    }

    pub fn constant(c: Rational) -> Self {
        Self::rf(RationalFunction::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn harmonic(r: HarmonicRef) -> Self {
        let mut w = WeightExpr::zero();
        w.add_term(Basis::H(r), RationalFunction::one());
        w
    }

    pub fn add_term(&mut self, b: Basis, c: RationalFunction) {
        let sum = match self.terms.remove(&b) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(b, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &RationalFunction)> {
        self.terms.iter()
    }

    /// The weight as a plain rational function, if it has no harmonic part.
    pub fn as_rf(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Basis::One).cloned(),
            _ => None,
        }
    }

    /// Coefficient of `1`.
    pub fn rational_part(&self) -> RationalFunction {
        self.terms
            .get(&Basis::One)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn harmonic_refs(&self) -> Vec<HarmonicRef> {
        self.terms
            .keys()
            .filter_map(|b| match b {
                Basis::H(r) => Some(r.clone()),
                Basis::One => None,
            })
            .collect()
    }

    pub fn scale(&self, c: &RationalFunction) -> WeightExpr {
        let mut out = WeightExpr::zero();
        for (b, v) in &self.terms {
            out.add_term(b.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> WeightExpr {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    pub fn substitute(&self, v: Var, value: &Rational) -> Result<WeightExpr> {
        let mut out = WeightExpr::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c.substitute(v, value)?);
        }
        Ok(out)
    }

    /// Exact value at the state's index.
    pub fn eval(&self, state: &HarmonicState) -> Result<Rational> {
        let k = state.k();
        let mut acc = Rational::zero();
        for (b, c) in &self.terms {
            let coeff = c
                .eval_k(k)
                .map_err(|e| e.context(format!("weight coefficient {c} at k = {k}")))?;
            match b {
                Basis::One => acc += coeff,
                Basis::H(r) => {
                    let h = state
                        .value(r)
                        .ok_or_else(|| Error::Domain(format!("harmonic quantity {r} was not registered")))?;
                    acc += coeff * h;
                }
            }
        }
        Ok(acc)
    }

    /// Parses the text form, substituting any bound parameters.
    pub fn parse(src: &str, bindings: &[(Var, Rational)]) -> Result<WeightExpr> {
        let mut p = WeightParser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            bindings,
        };
        let w = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

impl std::ops::Add for &WeightExpr {
    type Output = WeightExpr;
    fn add(self, rhs: &WeightExpr) -> WeightExpr {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &WeightExpr {
    type Output = WeightExpr;
    fn sub(self, rhs: &WeightExpr) -> WeightExpr {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.scale(&-Rational::one()));
        }
        out
    }
}

impl std::ops::Neg for &WeightExpr {
    type Output = WeightExpr;
    fn neg(self) -> WeightExpr {
        self.scale_rational(&-Rational::one())
    }
}

impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // harmonic terms first, rational part last
        let ordered = self
            .terms
            .iter()
            .filter(|(b, _)| **b != Basis::One)
            .chain(self.terms.iter().filter(|(b, _)| **b == Basis::One));
        for (b, c) in ordered {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match b {
                Basis::One => write!(f, "{c}")?,
                Basis::H(r) => match c.as_constant() {
                    Some(q) if q.is_one() => write!(f, "{r}")?,
                    Some(q) => write!(f, "{q}*{r}")?,
                    None => write!(f, "({c})*{r}")?,
                },
            }
        }
        Ok(())
    }
}

struct WeightParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    bindings: &'a [(Var, Rational)],
}

impl WeightParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            message: format!("{msg} at position {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<WeightExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c == 'H' || c.is_ascii_digit() || Var::from_char(c).is_some())
    }

    fn term(&mut self) -> Result<WeightExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let d = rhs
                    .as_rf()
                    .ok_or_else(|| self.err("cannot divide by a harmonic quantity"))?;
                let mut out = WeightExpr::zero();
                for (b, c) in &acc.terms {
                    out.add_term(b.clone(), c.checked_div(&d).map_err(|_| self.err("division by zero"))?);
                }
                acc = out;
            } else if self.starts_atom() {
                let rhs = self.power()?;
                acc = self.mul(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&self, a: WeightExpr, b: WeightExpr) -> Result<WeightExpr> {
        if let Some(c) = a.as_rf() {
            Ok(b.scale(&c))
        } else if let Some(c) = b.as_rf() {
            Ok(a.scale(&c))
        } else {
            Err(self.err("product of two harmonic quantities"))
        }
    }

    fn unary(&mut self) -> Result<WeightExpr> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<WeightExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let e = if neg { -(n as i32) } else { n as i32 };
            let rf = base.as_rf().ok_or_else(|| self.err("power of a harmonic quantity"))?;
            return Ok(WeightExpr::rf(
                rf.powi(e).map_err(|_| self.err("zero to a negative power"))?,
            ));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<WeightExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('H') => {
                self.pos += 1;
                let order = if self.eat('2') { 2 } else { 1 };
                self.expect('[')?;
                let mult = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.integer()? as u32
                } else {
                    1
                };
                self.expect('k')?;
                self.expect(']')?;
                let shift = if self.eat('(') {
                    let s = self.expr()?;
                    self.expect(')')?;
                    s.as_rf()
                        .and_then(|r| r.as_constant())
                        .ok_or_else(|| self.err("harmonic shift must be a constant"))?
                } else {
                    Rational::zero()
                };
                if mult == 0 {
                    return Err(self.err("harmonic index multiple must be positive"));
                }
                Ok(WeightExpr::harmonic(HarmonicRef::new(mult, order, shift)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(WeightExpr::constant(Rational::from_integer(n.into())))
            }
            Some(c) => match Var::from_char(c) {
                Some(v) => {
                    self.pos += 1;
                    if let Some((_, val)) = self.bindings.iter().find(|(b, _)| *b == v) {
                        Ok(WeightExpr::constant(val.clone()))
                    } else {
                        Ok(WeightExpr::rf(RationalFunction::var(v)))
                    }
                }
                None => Err(self.err(&format!("unexpected `{c}`"))),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}
