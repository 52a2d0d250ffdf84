use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Names one harmonic quantity tracked along a series:
/// `H_{mult*k}^{(order)}(shift) = sum_{j=1}^{mult*k} 1/(shift+j)^order`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HarmonicRef {
    pub mult: u32,
    pub order: u32,
    pub shift: Rational,
}

impl HarmonicRef {
    /// Ordinary `H_{mult*k}`.
    pub fn plain(mult: u32) -> Self {
        Self::new(mult, 1, Rational::zero())
    }

    /// `H^{(2)}_{mult*k}`.
    pub fn order2(mult: u32) -> Self {
        Self::new(mult, 2, Rational::zero())
    }

    /// `H_{mult*k}(shift)`.
    pub fn shifted(mult: u32, shift: Rational) -> Self {
        Self::new(mult, 1, shift)
    }

    pub fn new(mult: u32, order: u32, shift: Rational) -> Self {
        assert!(
            mult >= 1 && order >= 1,
            "harmonic index multiplier and order must be positive"
        );
        HarmonicRef { mult, order, shift }
    }

    fn is_fixed_slot(&self) -> bool {
        self.shift.is_zero() && matches!((self.mult, self.order), (1, 1) | (2, 1) | (4, 1) | (1, 2) | (2, 2))
    }
}

impl fmt::Display for HarmonicRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = if self.mult == 1 {
            "k".to_string()
        } else {
            format!("{}k", self.mult)
        };
        write!(f, "H_{{{idx}}}")?;
        if self.order != 1 {
            write!(f, "^{{({})}}", self.order)?;
        }
        if !self.shift.is_zero() {
            write!(f, "({})", self.shift)?;
        }
        Ok(())
    }
}

/// `sum_{j=1}^{n} 1/(x+j)^order`, computed from scratch.
pub fn harmonic_sum(x: &Rational, n: u64, order: u32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in 1..=n {
        let d = x + int(j as i64);
        if d.is_zero() {
            return Err(Error::Pole {
                what: format!("H_n({x})"),
                index: j as i64,
            });
        }
        acc += num_traits::pow(d, order as usize).recip();
    }
    Ok(acc)
}

/// `H_k(x) = sum_{j=1}^{k} 1/(x+j)`.
pub fn shifted_harmonic(x: &Rational, k: u64) -> Result<Rational> {
    harmonic_sum(x, k, 1)
}

/// Harmonic values at index `k`, advanced one step at a time.
///
/// `H_k`, `H_{2k}`, `H_{4k}`, `H^{(2)}_k` and `H^{(2)}_{2k}` are always
/// present; any other [`HarmonicRef`] must be registered up front.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicState {
    k: u64,
    h: Rational,
    h_2k: Rational,
    h_4k: Rational,
    h2: Rational,
    h2_2k: Rational,
    shifted: BTreeMap<HarmonicRef, Rational>,
}

impl HarmonicState {
    /// State at k = 0, where every tracked value is 0.
    pub fn new<I: IntoIterator<Item = HarmonicRef>>(registered: I) -> Self {
        let shifted = registered
            .into_iter()
            .filter(|r| !r.is_fixed_slot())
            .map(|r| (r, Rational::zero()))
            .collect();
        HarmonicState {
            k: 0,
            h: Rational::zero(),
            h_2k: Rational::zero(),
            h_4k: Rational::zero(),
            h2: Rational::zero(),
            h2_2k: Rational::zero(),
            shifted,
        }
    }

    /// State at index `k`, reached by repeated advancing.
    pub fn at<I: IntoIterator<Item = HarmonicRef>>(k: u64, registered: I) -> Result<Self> {
        let mut s = Self::new(registered);
        for _ in 0..k {
            s = s.advance()?;
        }
        Ok(s)
    }

    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn h(&self) -> &Rational {
        &self.h
    }
    pub fn h_2k(&self) -> &Rational {
        &self.h_2k
    }
    pub fn h_4k(&self) -> &Rational {
        &self.h_4k
    }
    pub fn h2(&self) -> &Rational {
        &self.h2
    }
    pub fn h2_2k(&self) -> &Rational {
        &self.h2_2k
    }

    pub fn value(&self, r: &HarmonicRef) -> Option<&Rational> {
        if r.shift.is_zero() {
            match (r.mult, r.order) {
                (1, 1) => return Some(&self.h),
                (2, 1) => return Some(&self.h_2k),
                (4, 1) => return Some(&self.h_4k),
                (1, 2) => return Some(&self.h2),
                (2, 2) => return Some(&self.h2_2k),
                _ => {}
            }
        }
        self.shifted.get(r)
    }

    /// Returns the state at `k + 1`.
    pub fn advance(&self) -> Result<Self> {
        let k = self.k;
        let recip = |j: u64| Rational::new(1.into(), j.into());
        let mut next = self.clone();
        next.k = k + 1;
        next.h += recip(k + 1);
        next.h_2k += recip(2 * k + 1) + recip(2 * k + 2);
        for j in 4 * k + 1..=4 * k + 4 {
            next.h_4k += recip(j);
        }
        next.h2 += recip((k + 1) * (k + 1));
        next.h2_2k += recip((2 * k + 1) * (2 * k + 1)) + recip((2 * k + 2) * (2 * k + 2));
        for (r, v) in next.shifted.iter_mut() {
            let m = r.mult as u64;
            for j in m * k + 1..=m * (k + 1) {
                let d = &r.shift + int(j as i64);
                if d.is_zero() {
                    return Err(Error::Pole {
                        what: format!("{r}"),
                        index: j as i64,
                    });
                }
                *v += num_traits::pow(d, r.order as usize).recip();
            }
        }
        Ok(next)
    }
}

impl Default for HarmonicState {
    fn default() -> Self {
        Self::new(std::iter::empty())
    }
}
