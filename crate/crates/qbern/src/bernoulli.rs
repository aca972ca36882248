//! Ordinary and higher-order Bernoulli numbers, q-Bernoulli polynomials of
//! order k, their umbral evaluation at the q-shifted-factorial powers, and
//! the closed forms tying them back to the q-Bernstein basis.

use crate::algebra::TruncSeries;
use crate::qcore::{gauss_binom, q_egf_series, q_factorial, q_shifted_factorial, QParam};
use crate::scalar::{binomial, factorial, pow, Scalar};
use crate::stirling::stirling2;

/// Bernoulli numbers of order k: B_m^(k) is m! times the coefficient of t^m
/// in (t/(e^t - 1))^k.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable<T> {
    order: usize,
    values: Vec<T>,
}

impl<T: Scalar> BernoulliTable<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_m(&self) -> usize {
        self.values.len() - 1
    }

    /// B_m^(k); panics beyond max_m.
    pub fn get(&self, m: usize) -> T {
        self.values[m].clone()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Raw truncated series (t/(e^t - 1))^k; coefficient of t^m is B_m^(k)/m!.
pub fn bernoulli_series<T: Scalar>(k: usize, order: usize) -> TruncSeries<T> {
    // (e^t - 1)/t truncated: coefficient of t^m is 1/(m+1)!
    let expm1_over_t = TruncSeries::new(
        order,
        (0..=order).map(|m| T::one() / factorial::<T>(m + 1)).collect(),
    );
    let kernel = expm1_over_t.invert().expect("constant term is 1");
    kernel.pow(k)
}

/// Order-k Bernoulli numbers B_0^(k) .. B_max_m^(k). Requires k >= 1.
pub fn bernoulli_numbers<T: Scalar>(k: usize, max_m: usize) -> BernoulliTable<T> {
    assert!(k >= 1, "Bernoulli order must be at least 1");
    let series = bernoulli_series::<T>(k, max_m);
    let values = (0..=max_m)
        .map(|m| series.coeff(m) * factorial::<T>(m))
        .collect();
    BernoulliTable { order: k, values }
}

/// Shared summation kernel for the q-Bernoulli polynomial of order k:
/// `sum_{m=0}^{n} C(n,m)_q ([m]_q!/m!) powers(n-m) B_m^(k)`, with the power
/// sequence supplied by the caller and the Bernoulli numbers by the table.
fn q_bernoulli_kernel<T: Scalar>(
    table: &BernoulliTable<T>,
    n: usize,
    q: &QParam<T>,
    powers: impl Fn(usize) -> T,
) -> T {
    let mut sum = T::zero();
    for m in 0..=n {
        sum = sum
            + gauss_binom(n, m as i64, q) * (q_factorial(m, q) / factorial::<T>(m))
                * powers(n - m)
                * table.get(m);
    }
    sum
}

/// q-Bernoulli polynomial of order k at a scalar x:
/// `beta_n^(k)(x, q) = sum_m C(n,m)_q ([m]_q!/m!) x^{n-m} B_m^(k)`.
pub fn q_bernoulli<T: Scalar>(n: usize, k: usize, x: &T, q: &QParam<T>) -> T {
    q_bernoulli_kernel(&bernoulli_numbers::<T>(k, n), n, q, |j| pow(x, j))
}

/// Umbral variant `beta_n^(k)((1-x)_q, q)`: the power sequence x^j is
/// replaced by the q-shifted-factorial sequence (1-x)_q^j.
pub fn q_bernoulli_umbral<T: Scalar>(n: usize, k: usize, x: &T, q: &QParam<T>) -> T {
    q_bernoulli_kernel(&bernoulli_numbers::<T>(k, n), n, q, |j| {
        q_shifted_factorial(x, j, q)
    })
}

fn umbral_with_table<T: Scalar>(
    table: &BernoulliTable<T>,
    n: usize,
    x: &T,
    q: &QParam<T>,
) -> T {
    q_bernoulli_kernel(table, n, q, |j| q_shifted_factorial(x, j, q))
}

/// Closed form for B_{k,l}(x, q) through Stirling numbers and umbral
/// q-Bernoulli polynomials:
/// `(k!/[k]_q!) x^k sum_{m=0}^{l} ([m]_q!/m!) S(m,k) C(l,m)_q
///  beta_{l-m}^(k)((1-x)_q, q)`. Requires k >= 1.
pub fn theorem10_rhs<T: Scalar>(k: usize, l: usize, x: &T, q: &QParam<T>) -> T {
    assert!(k >= 1, "closed form needs k >= 1");
    let table = bernoulli_numbers::<T>(k, l);
    let mut sum = T::zero();
    for m in 0..=l {
        let s = stirling2::<T>(m, k);
        if s.is_zero() {
            continue;
        }
        sum = sum
            + (q_factorial(m, q) / factorial::<T>(m))
                * s
                * gauss_binom(l, m as i64, q)
                * umbral_with_table(&table, l - m, x, q);
    }
    factorial::<T>(k) / q_factorial(k, q) * pow(x, k) * sum
}

/// Same closed form with k! S(m,k) replaced by the classical forward
/// difference Delta^k 0^m, computed independently of `stirling2`.
pub fn corollary11_rhs<T: Scalar>(k: usize, l: usize, x: &T, q: &QParam<T>) -> T {
    assert!(k >= 1, "closed form needs k >= 1");
    let table = bernoulli_numbers::<T>(k, l);
    let mut sum = T::zero();
    for m in 0..=l {
        let delta = forward_difference_zero_power::<T>(k, m);
        if delta.is_zero() {
            continue;
        }
        sum = sum
            + (q_factorial(m, q) / factorial::<T>(m))
                * gauss_binom(l, m as i64, q)
                * umbral_with_table(&table, l - m, x, q)
                * delta;
    }
    pow(x, k) / q_factorial(k, q) * sum
}

/// Classical `Delta^k 0^m = sum_j C(k,j) (-1)^{k-j} j^m`, with 0^0 = 1.
fn forward_difference_zero_power<T: Scalar>(k: usize, m: usize) -> T {
    let mut sum = T::zero();
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { T::one() } else { -T::one() };
        let power = if j == 0 && m == 0 {
            T::one()
        } else {
            pow(&crate::scalar::int::<T>(j as i64), m)
        };
        sum = sum + sign * binomial::<T>(k, j) * power;
    }
    sum
}

/// Independent truncated-series oracle for the closed forms: builds
/// `(tx)^k/[k]_q! * sum_m (1-x)_q^m t^m/[m]_q!` exactly and extracts
/// `[l]_q!` times the raw coefficient of t^l, which is B_{k,l}(x, q).
pub fn genfun30_coefficient<T: Scalar>(k: usize, l: usize, x: &T, q: &QParam<T>) -> T {
    // one guard term beyond the highest extracted coefficient
    let order = l + k + 1;
    let mut terms = Vec::with_capacity(order + 1);
    let mut acc = T::one();
    let mut qpow = T::one();
    for _ in 0..=order {
        terms.push(acc.clone());
        acc = acc * (T::one() - x.clone() * qpow.clone());
        qpow = qpow * q.value().clone();
    }
    let egf = q_egf_series(&terms, q);
    let series = egf.shift_up(k).scale(&(pow(x, k) / q_factorial(k, q)));
    series.coeff(l) * q_factorial(l, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::basis_poly;
    use crate::qcore::q_sample_sequence;
    use crate::Rational;
    use num::traits::{One, Zero};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn qp(n: i64, d: i64) -> QParam<Rational> {
        QParam::new(rat(n, d)).unwrap()
    }

    /// Independent oracle: sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    fn bernoulli_by_recurrence(max_m: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for m in 1..=max_m {
            let mut sum = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                sum = sum + binomial::<Rational>(m + 1, j) * bj.clone();
            }
            b.push(-sum / binomial::<Rational>(m + 1, m));
        }
        b
    }

    #[test]
    fn order_one_matches_recurrence_oracle() {
        let table = bernoulli_numbers::<Rational>(1, 20);
        let oracle = bernoulli_by_recurrence(20);
        assert_eq!(table.values(), &oracle[..]);
        assert_eq!(table.get(0), Rational::one());
        assert_eq!(table.get(1), rat(-1, 2));
        assert_eq!(table.get(2), rat(1, 6));
        assert_eq!(table.get(3), Rational::zero());
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        let table = bernoulli_numbers::<Rational>(1, 21);
        for j in 1..=10usize {
            assert_eq!(table.get(2 * j + 1), Rational::zero(), "B_{}", 2 * j + 1);
        }
    }

    #[test]
    fn higher_order_values() {
        for k in 1..=5usize {
            assert_eq!(bernoulli_numbers::<Rational>(k, 4).get(0), Rational::one());
        }
        assert_eq!(bernoulli_numbers::<Rational>(2, 4).get(1), rat(-1, 1));
    }

    #[test]
    fn order_additivity_of_series() {
        // series(k1) * series(k2) = series(k1 + k2), coefficients through t^12
        for k1 in 1..=3usize {
            for k2 in 1..=(4 - k1) {
                let a = bernoulli_series::<Rational>(k1, 12);
                let b = bernoulli_series::<Rational>(k2, 12);
                assert_eq!(a.mul(&b), bernoulli_series::<Rational>(k1 + k2, 12));
            }
        }
    }

    #[test]
    fn q_bernoulli_examples() {
        let q = qp(1, 2);
        assert_eq!(q_bernoulli(0, 3, &rat(2, 7), &q), Rational::one());

        // n=1, k=1: x - 1/2
        for x in [rat(0, 1), rat(1, 3), rat(4, 5)] {
            assert_eq!(q_bernoulli(1, 1, &x, &q), x - rat(1, 2));
        }
    }

    #[test]
    fn q_one_collapse_is_classical_bernoulli_polynomial() {
        // at q = 1 the value matches the EGF of (t/(e^t-1))^k e^{xt}
        let q1 = qp(1, 1);
        let x = rat(2, 5);
        for k in 1..=3usize {
            for n in 0..=6usize {
                let kernel = bernoulli_series::<Rational>(k, n);
                let exp_xt = TruncSeries::new(
                    n,
                    (0..=n).map(|m| pow(&x, m) / factorial::<Rational>(m)).collect(),
                );
                let expected = kernel.mul(&exp_xt).coeff(n) * factorial::<Rational>(n);
                assert_eq!(q_bernoulli(n, k, &x, &q1), expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn umbral_examples() {
        let q = qp(1, 2);
        assert_eq!(q_bernoulli_umbral(0, 2, &rat(1, 3), &q), Rational::one());
        assert_eq!(q_bernoulli_umbral(1, 1, &rat(1, 2), &q), Rational::zero());

        // x = 0 makes every shifted power 1
        let table = bernoulli_numbers::<Rational>(1, 3);
        let mut expected = Rational::zero();
        for m in 0..=3usize {
            expected = expected
                + gauss_binom(3, m as i64, &q) * (q_factorial(m, &q) / factorial::<Rational>(m))
                    * table.get(m);
        }
        assert_eq!(q_bernoulli_umbral(3, 1, &rat(0, 1), &q), expected);
    }

    #[test]
    fn theorem10_small_cases() {
        let q = qp(1, 2);
        // k=1, l=1 gives x
        for x in [rat(1, 5), rat(2, 3), rat(1, 1)] {
            assert_eq!(theorem10_rhs(1, 1, &x, &q), x);
        }
        // k=1, l=2 at x = 1/2, q = 1/2 gives B_{1,2}(1/2, 1/2) = 3/8
        assert_eq!(theorem10_rhs(1, 2, &rat(1, 2), &q), rat(3, 8));
        // x = 0 kills the x^k prefactor
        assert_eq!(theorem10_rhs(2, 4, &rat(0, 1), &q), Rational::zero());
    }

    #[test]
    fn genfun30_examples() {
        let q = qp(1, 2);
        assert_eq!(genfun30_coefficient(3, 2, &rat(1, 2), &q), Rational::zero());
        assert_eq!(genfun30_coefficient(2, 2, &rat(1, 3), &q), rat(1, 9));
        assert_eq!(
            genfun30_coefficient(1, 3, &rat(1, 3), &q),
            basis_poly(1, 3, &q).eval(&rat(1, 3))
        );
    }

    #[test]
    fn closed_forms_match_series_oracle_and_basis() {
        let sample_x = [rat(1, 7), rat(2, 7), rat(1, 2), rat(1, 1)];
        for q0 in q_sample_sequence(2) {
            let q = QParam::new(q0).unwrap();
            for k in 1..=2usize {
                for l in 0..=4usize {
                    for x in &sample_x {
                        let oracle = genfun30_coefficient(k, l, x, &q);
                        let direct = basis_poly(k, l, &q).eval(x);
                        assert_eq!(oracle, direct, "k={k} l={l} x={x}");
                        assert_eq!(theorem10_rhs(k, l, x, &q), direct, "thm10 k={k} l={l} x={x}");
                        assert_eq!(corollary11_rhs(k, l, x, &q), direct, "cor11 k={k} l={l} x={x}");
                    }
                }
            }
        }
    }
}
