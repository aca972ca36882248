//! Second-kind Stirling numbers, their q-deformation through the
//! q-difference operator, and the related operator identities.

use crate::algebra::Poly;
use crate::qcore::{gauss_binom, q_difference, q_factorial, q_int, QParam};
use crate::scalar::{binomial, binomial_general, choose2, factorial, int, pow, Scalar};

/// Which closed form of the operator-moment identity to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryForm {
    /// `sum_k C(n,k)_q x^k Delta_q^k 0^m`
    DeltaForm,
    /// `sum_k C(n,k)_q x^k [k]_q! q^{C(k,2)} S(m,k:q)`
    StirlingForm,
}

/// S(n, k) via the alternating sum `sum_l C(k,l) (-1)^{k-l} l^n / k!`;
/// integer-valued, with 0^0 = 1.
pub fn stirling2<T: Scalar>(n: usize, k: usize) -> T {
    let mut sum = T::zero();
    for l in 0..=k {
        let sign = if (k - l) % 2 == 0 { T::one() } else { -T::one() };
        let power = if l == 0 && n == 0 { T::one() } else { pow(&int::<T>(l as i64), n) };
        sum = sum + sign * binomial::<T>(k, l) * power;
    }
    sum / factorial::<T>(k)
}

/// `Delta_q^k 0^m`: the q-difference operator applied to the sequence
/// j -> [j]_q^m, evaluated at zero. [0]_q^0 is taken as 1.
pub fn delta_q_zero_power<T: Scalar>(k: usize, m: usize, q: &QParam<T>) -> T {
    let seq: Vec<T> = (0..=k)
        .map(|j| {
            if j == 0 && m == 0 {
                T::one()
            } else {
                pow(&q_int(j, q), m)
            }
        })
        .collect();
    q_difference(&seq, k, q).expect("sequence has k+1 entries")
}

/// Second-kind q-Stirling number `S(n, k : q) = q^{-C(k,2)}/[k]_q! Delta_q^k 0^n`;
/// reduces to S(n, k) at q = 1.
pub fn q_stirling2<T: Scalar>(n: usize, k: usize, q: &QParam<T>) -> T {
    delta_q_zero_power(k, n, q) / (q.power(choose2(k)) * q_factorial(k, q))
}

/// Right-hand side of the operator-moment corollaries as a polynomial in x:
/// both forms are `[n]_q^m * B_{n,q}(t -> t^m | x)`.
pub fn corollary_rhs<T: Scalar>(
    n: usize,
    m: usize,
    q: &QParam<T>,
    which: CorollaryForm,
) -> Poly<T> {
    assert!(n >= 1, "corollary needs n >= 1");
    let mut coeffs = vec![T::zero(); n + 1];
    for k in 0..=n {
        let inner = match which {
            CorollaryForm::DeltaForm => delta_q_zero_power(k, m, q),
            CorollaryForm::StirlingForm => {
                q_factorial(k, q) * q.power(choose2(k)) * q_stirling2(m, k, q)
            }
        };
        coeffs[k] = gauss_binom(n, k as i64, q) * inner;
    }
    Poly::new(coeffs)
}

/// Both sides of `x^n = sum_{k=0}^{n} C(x,k) k! S(n,k)` at a scalar x.
pub fn falling_factorial_identity<T: Scalar>(n: usize, x: &T) -> (T, T) {
    let lhs = if n == 0 { T::one() } else { pow(x, n) };
    let mut rhs = T::zero();
    for k in 0..=n {
        rhs = rhs + binomial_general(x, k) * factorial::<T>(k) * stirling2::<T>(n, k);
    }
    (lhs, rhs)
}

/// Triangle of Stirling or q-Stirling numbers, rows n = 0..=max_n,
/// row n holding S(n, 0..=n).
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTable<T> {
    max_n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> StirlingTable<T> {
    pub fn classical(max_n: usize) -> Self {
        let rows = (0..=max_n)
            .map(|n| (0..=n).map(|k| stirling2::<T>(n, k)).collect())
            .collect();
        StirlingTable { max_n, rows }
    }

    pub fn q_analog(max_n: usize, q: &QParam<T>) -> Self {
        let rows = (0..=max_n)
            .map(|n| (0..=n).map(|k| q_stirling2(n, k, q)).collect())
            .collect();
        StirlingTable { max_n, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn get(&self, n: usize, k: usize) -> T {
        if n <= self.max_n && k <= n {
            self.rows[n][k].clone()
        } else {
            T::zero()
        }
    }
}
