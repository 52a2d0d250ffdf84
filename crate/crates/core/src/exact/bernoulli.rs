use std::sync::Mutex;

use num_traits::{One, Zero};

use super::rational::{binomial, Rational};

/// B_0..=B_nmax with the B_1 = -1/2 convention, from
/// sum_{j=0}^{n} C(n+1, j) B_j = 0.
pub fn bernoulli(nmax: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    extend(&mut b, nmax);
    b
}

fn extend(b: &mut Vec<Rational>, nmax: usize) {
    while b.len() <= nmax {
        let n = b.len();
        if n >= 3 && n % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += Rational::from_integer(binomial(n as u64 + 1, j as u64)) * bj;
            }
        }
        b.push(-acc / Rational::from_integer((n as u64 + 1).into()));
    }
}

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Shared table, grown on demand and reused by every Gamma/psi evaluation.
pub fn bernoulli_cached(nmax: usize) -> Vec<Rational> {
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if guard.is_empty() {
        guard.push(Rational::one());
    }
    extend(&mut guard, nmax);
    guard[..=nmax].to_vec()
}
