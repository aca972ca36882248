//! q-arithmetic primitives: q-integers, q-factorials, Gaussian binomials,
//! q-shifted factorials, q-exponential series, the Jackson q-derivative and
//! the q-difference operator.
//!
//! q lives in (0, 1]. Everything is defined through finite geometric sums and
//! finite products, so q = 1 is an ordinary input that reproduces the
//! classical objects; only the Jackson derivative rejects it.

use thiserror::Error;

use crate::algebra::{Poly, TruncSeries};
use crate::scalar::{choose2, pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("q must lie in (0, 1], got {0}")]
    QOutOfRange(String),
    #[error("operation is undefined at q = 1")]
    QEqualsOne,
    #[error("reciprocal series requires n >= 1")]
    InvalidOrder,
    #[error("sequence too short: need {needed} values, got {got}")]
    InsufficientSequence { needed: usize, got: usize },
}

/// Validated deformation parameter, 0 < q <= 1.
#[derive(Clone, Debug, PartialEq)]
pub struct QParam<T> {
    q: T,
}

impl<T: Scalar> QParam<T> {
    pub fn new(q: T) -> Result<Self, QError> {
        if q <= T::zero() || q > T::one() {
            return Err(QError::QOutOfRange(q.to_string()));
        }
        Ok(QParam { q })
    }

    pub fn value(&self) -> &T {
        &self.q
    }

    pub fn is_one(&self) -> bool {
        self.q.is_one()
    }

    /// q^e for small nonnegative exponents.
    pub fn power(&self, e: usize) -> T {
        pow(&self.q, e)
    }
}

/// [n]_q = 1 + q + ... + q^{n-1}; equals n at q = 1 and 0 at n = 0.
pub fn q_int<T: Scalar>(n: usize, q: &QParam<T>) -> T {
    let mut sum = T::zero();
    let mut term = T::one();
    for _ in 0..n {
        sum = sum + term.clone();
        term = term * q.q.clone();
    }
    sum
}

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1.
pub fn q_factorial<T: Scalar>(n: usize, q: &QParam<T>) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * q_int(i, q))
}

/// Gaussian binomial coefficient [n]_q!/([k]_q! [n-k]_q!); zero for k < 0
/// or k > n. Computed multiplicatively through the symmetric smaller index.
pub fn gauss_binom<T: Scalar>(n: usize, k: i64, q: &QParam<T>) -> T {
    if k < 0 || k as usize > n {
        return T::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = T::one();
    for i in 1..=k {
        acc = acc * q_int(n - k + i, q) / q_int(i, q);
    }
    acc
}

/// q-shifted factorial (1 - b)_q^n = prod_{i=1}^{n} (1 - b q^{i-1}).
pub fn q_shifted_factorial<T: Scalar>(b: &T, n: usize, q: &QParam<T>) -> T {
    let mut acc = T::one();
    let mut qpow = T::one();
    for _ in 0..n {
        acc = acc * (T::one() - b.clone() * qpow.clone());
        qpow = qpow * q.q.clone();
    }
    acc
}

/// (1 - b)_q^n expanded as a polynomial in b:
/// coefficient of b^i is C(n, i)_q q^{C(i,2)} (-1)^i.
pub fn q_binom_expand<T: Scalar>(n: usize, q: &QParam<T>) -> Poly<T> {
    // incremental ratio: c_{i+1} = -c_i [n-i]_q / [i+1]_q q^i
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = T::one();
    let mut qpow = T::one();
    for i in 0..=n {
        coeffs.push(c.clone());
        if i < n {
            c = -(c * q_int(n - i, q) / q_int(i + 1, q) * qpow.clone());
            qpow = qpow * q.value().clone();
        }
    }
    Poly::new(coeffs)
}

/// Series expansion of 1/(1 - b)_q^n: coefficient of b^i is C(n+i-1, i)_q,
/// truncated at the given order. Requires n >= 1.
pub fn q_reciprocal_series<T: Scalar>(
    order: usize,
    n: usize,
    q: &QParam<T>,
) -> Result<TruncSeries<T>, QError> {
    if n < 1 {
        return Err(QError::InvalidOrder);
    }
    // Incremental ratio: C(n+i, i+1)_q = C(n+i-1, i)_q * [n+i]_q / [i+1]_q.
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = T::one();
    for i in 0..=order {
        coeffs.push(c.clone());
        c = c * q_int(n + i, q) / q_int(i + 1, q);
    }
    Ok(TruncSeries::new(order, coeffs))
}

/// q-exponential-type series: raw coefficient of t^n is a_n / [n]_q!.
///
/// With a_n = (1-x)_q^n this is the series whose coefficient extraction
/// yields the q-Bernstein basis values.
pub fn q_egf_series<T: Scalar>(terms: &[T], q: &QParam<T>) -> TruncSeries<T> {
    if terms.is_empty() {
        return TruncSeries::zero(0);
    }
    let mut fact = T::one();
    let coeffs = terms
        .iter()
        .enumerate()
        .map(|(n, a)| {
            if n > 0 {
                fact = fact.clone() * q_int(n, q);
            }
            a.clone() / fact.clone()
        })
        .collect();
    TruncSeries::new(terms.len() - 1, coeffs)
}

/// Jackson q-derivative on polynomials: x^n -> [n]_q x^{n-1}. Rejects q = 1.
pub fn q_derivative<T: Scalar>(p: &Poly<T>, q: &QParam<T>) -> Result<Poly<T>, QError> {
    if q.is_one() {
        return Err(QError::QEqualsOne);
    }
    let coeffs = (1..=p.degree().map_or(0, |d| d))
        .map(|i| p.coeff(i) * q_int(i, q))
        .collect();
    Ok(Poly::new(coeffs))
}

/// n-th q-difference at zero of the sequence f(0), f(1), ..., f(n):
/// sum_k C(n, k)_q (-1)^{n-k} q^{C(n-k, 2)} f(k).
pub fn q_difference<T: Scalar>(seq: &[T], n: usize, q: &QParam<T>) -> Result<T, QError> {
    if seq.len() < n + 1 {
        return Err(QError::InsufficientSequence {
            needed: n + 1,
            got: seq.len(),
        });
    }
    let mut sum = T::zero();
    for k in 0..=n {
        let sign = if (n - k) % 2 == 0 { T::one() } else { -T::one() };
        sum = sum + sign * gauss_binom(n, k as i64, q) * q.power(choose2(n - k)) * seq[k].clone();
    }
    Ok(sum)
}

/// Fixed q-sample sequence 1/2, 1/3, 2/3, 1/5, 2/5, ... (numerators over
/// prime denominators, all distinct rationals in (0, 1)); shared by tests
/// and the certification engine so runs are reproducible without RNG state.
pub fn q_sample_sequence(count: usize) -> Vec<crate::Rational> {
    let mut out = Vec::with_capacity(count);
    let mut p: u64 = 2;
    while out.len() < count {
        for a in 1..p {
            out.push(crate::Rational::new((a as i64).into(), (p as i64).into()));
            if out.len() == count {
                break;
            }
        }
        p = next_prime(p);
    }
    out
}

fn next_prime(p: u64) -> u64 {
    let mut c = p + 1;
    loop {
        if (2..=c / 2).all(|d| c % d != 0) {
            return c;
        }
        c += 1;
    }
}
