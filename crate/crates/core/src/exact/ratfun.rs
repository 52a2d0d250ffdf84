use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Variables a rational function may depend on: the summation index and
/// the five hypergeometric parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    K,
    A,
    B,
    C,
    D,
    E,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::K, Var::A, Var::B, Var::C, Var::D, Var::E];

    pub fn from_char(c: char) -> Option<Var> {
        Some(match c {
            'k' => Var::K,
            'a' => Var::A,
            'b' => Var::B,
            'c' => Var::C,
            'd' => Var::D,
            'e' => Var::E,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Var::K => 'k',
            Var::A => 'a',
            Var::B => 'b',
            Var::C => 'c',
            Var::D => 'd',
            Var::E => 'e',
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

type Monomial = [u32; 6];

/// Sparse multivariate polynomial over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; 6], c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 6];
        m[v.slot()] = 1;
        let mut p = Poly::zero();
        p.add_term(m, Rational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 6]).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m[v.slot()] > 0))
            .collect()
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn scale(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero();
        for (m, v) in &self.terms {
            p.add_term(*m, v * c);
        }
        p
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let e = m[v.slot()];
            if e > 0 {
                let mut m2 = *m;
                m2[v.slot()] -= 1;
                p.add_term(m2, c * int(e as i64));
            }
        }
        p
    }

    /// Substitutes a value for one variable.
    pub fn substitute(&self, v: Var, value: &Rational) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let e = m[v.slot()];
            let mut m2 = *m;
            m2[v.slot()] = 0;
            p.add_term(m2, c * num_traits::pow(value.clone(), e as usize));
        }
        p
    }

    pub fn eval(&self, bindings: &[(Var, Rational)]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m[v.slot()];
                if e == 0 {
                    continue;
                }
                let x = bindings
                    .iter()
                    .find(|(bv, _)| *bv == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| Error::Domain(format!("variable {v} is unbound")))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = [0; 6];
                for i in 0..6 {
                    m[i] = ma[i] + mb[i];
                }
                p.add_term(m, ca * cb);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.iter().all(|&e| e == 0) {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                match m[v.slot()] {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Quotient of two polynomials; the denominator is never identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::constant(Rational::one()),
            };
        }
        let lead = den.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
        let inv = lead.recip();
        let (num, den) = (num.scale(&inv), den.scale(&inv));
        RationalFunction { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        RationalFunction {
            num: Poly::var(v),
            den: Poly::constant(Rational::one()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.num.variables();
        for x in self.den.variables() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v.sort();
        v
    }

    /// Evaluates exactly; a vanishing denominator is a pole error.
    pub fn eval(&self, bindings: &[(Var, Rational)]) -> Result<Rational> {
        let d = self.den.eval(bindings)?;
        if d.is_zero() {
            let at = bindings
                .iter()
                .map(|(v, x)| format!("{v}={x}"))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::Pole {
                what: format!("denominator {} at ({at})", self.den),
                index: 0,
            });
        }
        Ok(self.num.eval(bindings)? / d)
    }

    /// Shorthand for univariate evaluation at `k`.
    pub fn eval_k(&self, k: u64) -> Result<Rational> {
        self.eval(&[(Var::K, int(k as i64))])
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self, v: Var) -> RationalFunction {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self::normalized(num, den)
    }

    pub fn substitute(&self, v: Var, value: &Rational) -> Result<RationalFunction> {
        RationalFunction::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    pub fn powi(&self, e: i32) -> Result<RationalFunction> {
        let mut acc = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * self;
        }
        if e < 0 {
            RationalFunction::one().checked_div(&acc)
        } else {
            Ok(acc)
        }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Parses expressions such as `(6k^2-(4b-6)k-b+1)/(4k-2b+3)`.
    ///
    /// Grammar: sums and differences of products and quotients of
    /// integers, the variables `k a b c d e`, parenthesised groups and
    /// integer powers (`^n`, `^(-n)`). Juxtaposition multiplies.
    pub fn parse(src: &str) -> Result<RationalFunction> {
        let mut p = Parser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let r = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by the zero function; use `checked_div` otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(d) if d.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            message: format!("{message} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = acc.checked_div(&rhs).map_err(|_| self.err("division by zero"))?;
                }
                Some(c) if c == '(' || c.is_ascii_digit() || Var::from_char(c).is_some() => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = if self.peek() == Some('(') {
                self.pos += 1;
                let neg = if self.peek() == Some('-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = self.integer()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)` after exponent"));
                }
                self.pos += 1;
                if neg {
                    -e
                } else {
                    e
                }
            } else {
                self.integer()?
            };
            let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return base.powi(e).map_err(|_| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            Some(c) => match Var::from_char(c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(RationalFunction::var(v))
                }
                None => Err(self.err(&format!("unexpected `{c}`"))),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn eval_catalog_weights() {
        let f = rf("(6k^2-(4b-6)k-b+1)/(4k-2b+3)");
        assert_eq!(f.eval(&[(Var::K, int(0)), (Var::B, rat(1, 2))]).unwrap(), rat(1, 4));
        let t = rf("(5k-3e+3)/8");
        assert_eq!(t.eval(&[(Var::K, int(0)), (Var::E, rat(3, 4))]).unwrap(), rat(3, 32));
        let h = rf("(20k^2+(19-12c)k-5c+4)/(16(2k+1))");
        assert_eq!(h.eval(&[(Var::K, int(0)), (Var::C, rat(1, 2))]).unwrap(), rat(3, 32));
    }

    #[test]
    fn derivative_examples() {
        let f = rf("(1-b)/(3-2b)");
        let df = f.derivative(Var::B);
        assert_eq!(df.eval(&[(Var::B, rat(1, 2))]).unwrap(), rat(-1, 4));
        let t = rf("(5k-3e+3)/8").derivative(Var::E);
        assert_eq!(t.as_constant(), Some(rat(-3, 8)));
        let h = rf("(20k^2+(19-12c)k-5c+4)/(16(2k+1))").derivative(Var::C);
        assert_eq!(h.eval(&[(Var::K, int(1)), (Var::C, rat(1, 2))]).unwrap(), rat(-17, 48));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        // exact central difference at h = 10^-20
        let g = rf("(40k^2+(50-48b)k+16b^2-32b+15)/(16(4k-2b+3))");
        let dg = g.derivative(Var::B);
        let h = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(20));
        for (k, b) in [(0, rat(1, 3)), (3, rat(2, 7)), (11, rat(-5, 9))] {
            let at = |x: Rational| g.eval(&[(Var::K, int(k)), (Var::B, x)]).unwrap();
            let fd = (at(&b + &h) - at(&b - &h)) / (int(2) * &h);
            let exact = dg.eval(&[(Var::K, int(k)), (Var::B, b.clone())]).unwrap();
            let err = (fd - exact).abs();
            assert!(err < Rational::new(1.into(), num_bigint::BigInt::from(10).pow(30)));
        }
    }

    #[test]
    fn pole_is_an_error() {
        let f = rf("1/(2k-1)");
        assert!(f.eval(&[(Var::K, rat(1, 2))]).is_err());
        assert!(RationalFunction::parse("1/(k-k)").is_err());
    }

    #[test]
    fn parse_round_trips_through_display() {
        for s in [
            "(6k^2-(4b-6)k-b+1)/(4k-2b+3)",
            "(120k^4+154k^3-(48b^2-48b-55)k^2-(22b^2-22b-6)k-3b^2+3b)/(2(4k-2b+3)(4k+2b+1))",
            "3/2k - 7",
            "k^(-2) + 1",
        ] {
            let a = rf(s);
            let b = rf(&a.to_string());
            assert_eq!(a, b, "{s} -> {a}");
        }
    }

    #[test]
    fn substitution() {
        let f = rf("(3k-c+1)/2").substitute(Var::C, &rat(1, 2)).unwrap();
        assert_eq!(f, rf("(6k+1)/4"));
        assert_eq!(f.variables(), vec![Var::K]);
    }
}
