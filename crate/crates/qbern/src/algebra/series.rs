use std::ops::{Add, Mul, Sub};

use super::AlgebraError;
use crate::scalar::Scalar;

/// Truncated power series in t: raw coefficients of t^0..t^N for an explicit
/// truncation order N. Factorial or q-factorial normalizations are applied by
/// the callers that need them; the representation is always raw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>, // length order + 1, trailing zeros kept
}

impl<T: Scalar> TruncSeries<T> {
    /// Series with the given coefficients, padded or cut to order + 1 terms.
    pub fn new(order: usize, coeffs: Vec<T>) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(order + 1);
        coeffs.resize_with(order + 1, T::zero);
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::new(order, vec![T::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Raw coefficient of t^n; zero above the truncation order.
    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries::new(order, (0..=order).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries::new(order, (0..=order).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }

    /// Cauchy product truncated at min(order(a), order(b)).
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiply by t^k, keeping the truncation order (top k terms drop off).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + k <= order {
                out[i + k] = a.clone();
            }
        }
        TruncSeries { coeffs: out }
    }

    /// k-th power by repeated truncated products; `pow(0)` is the one-series.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = TruncSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order.
    ///
    /// Uses the triangular recurrence b_0 = 1/a_0,
    /// b_n = -(1/a_0) * sum_{j=1}^{n} a_j b_{n-j}.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(AlgebraError::ZeroConstantTerm);
        }
        let order = self.order();
        let inv_a0 = T::one() / a0;
        let mut out = vec![T::zero(); order + 1];
        out[0] = inv_a0.clone();
        for n in 1..=order {
            let mut sum = T::zero();
            for j in 1..=n {
                let aj = self.coeff(j);
                if aj.is_zero() {
                    continue;
                }
                sum = sum + aj * out[n - j].clone();
            }
            out[n] = -(inv_a0.clone() * sum);
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl<T: Scalar> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn add(self, rhs: Self) -> TruncSeries<T> {
        TruncSeries::add(self, rhs)
    }
}

impl<T: Scalar> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn sub(self, rhs: Self) -> TruncSeries<T> {
        TruncSeries::sub(self, rhs)
    }
}

impl<T: Scalar> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn mul(self, rhs: Self) -> TruncSeries<T> {
        TruncSeries::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::factorial;
    use crate::Rational;
    use num::traits::One;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = TruncSeries::new(2, vec![rat(1, 1), rat(1, 1)]); // 1 + t
        let b = TruncSeries::new(2, vec![rat(1, 1), rat(-1, 1)]); // 1 - t
        assert_eq!(a.mul(&b), TruncSeries::new(2, vec![rat(1, 1), rat(0, 1), rat(-1, 1)]));

        let c = TruncSeries::new(5, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(a.mul(&c).order(), 2);
    }

    #[test]
    fn addition_truncates_to_min_order() {
        let a = TruncSeries::new(2, vec![rat(1, 1), rat(2, 1), rat(3, 1)]);
        let b = TruncSeries::new(5, vec![rat(1, 2); 6]);
        let sum = a.add(&b);
        assert_eq!(sum.order(), 2);
        assert_eq!(sum.coeffs(), &[rat(3, 2), rat(5, 2), rat(7, 2)]);
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let a = TruncSeries::new(3, vec![rat(2, 3), rat(-1, 7), rat(4, 5), rat(1, 9)]);
        assert_eq!(a.mul(&TruncSeries::one(3)), a);
    }

    #[test]
    fn exponential_times_its_reciprocal_is_one() {
        // (sum t^n/n!) * (sum (-t)^n/n!) = 1 through order 4
        let exp_pos = TruncSeries::new(
            4,
            (0..=4).map(|n| Rational::one() / factorial::<Rational>(n)).collect(),
        );
        let exp_neg = TruncSeries::new(
            4,
            (0..=4)
                .map(|n| rat(if n % 2 == 0 { 1 } else { -1 }, 1) / factorial::<Rational>(n))
                .collect(),
        );
        assert_eq!(exp_pos.mul(&exp_neg), TruncSeries::one(4));
    }

    #[test]
    fn invert_geometric_series() {
        let a = TruncSeries::new(3, vec![rat(1, 1), rat(-1, 1)]); // 1 - t
        let inv = a.invert().unwrap();
        assert_eq!(inv, TruncSeries::new(3, vec![rat(1, 1); 4]));
        let one = TruncSeries::<Rational>::one(5);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_rejects_zero_constant_term() {
        let a = TruncSeries::new(2, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(a.invert(), Err(AlgebraError::ZeroConstantTerm));
    }

    /// Independent Bernoulli oracle: B_0 = 1 and sum_{j=0}^{m} C(m+1, j) B_j = 0.
    fn bernoulli_by_recurrence(max_m: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for m in 1..=max_m {
            let mut sum = Rational::zero();
            for (j, bj) in b.iter().enumerate() {
                sum = sum + crate::scalar::binomial::<Rational>(m + 1, j) * bj.clone();
            }
            b.push(-sum / crate::scalar::binomial::<Rational>(m + 1, m));
        }
        b
    }

    use num::traits::Zero;

    #[test]
    fn inverting_expm1_over_t_gives_bernoulli_coefficients() {
        // (e^t - 1)/t truncated at order 4 has coefficients 1/(m+1)!
        let expm1_over_t = TruncSeries::new(
            4,
            (0..=4).map(|m| Rational::one() / factorial::<Rational>(m + 1)).collect(),
        );
        let inv = expm1_over_t.invert().unwrap();
        let oracle = bernoulli_by_recurrence(4);
        for m in 0..=4 {
            assert_eq!(inv.coeff(m), oracle[m].clone() / factorial::<Rational>(m), "m={m}");
        }
        // spot values: 1, -1/2, 1/12, 0, -1/720
        assert_eq!(inv.coeff(1), rat(-1, 2));
        assert_eq!(inv.coeff(2), rat(1, 12));
        assert_eq!(inv.coeff(3), rat(0, 1));
        assert_eq!(inv.coeff(4), rat(-1, 720));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn invert_round_trips_at_every_order(
            order in 1usize..=16,
            c0 in prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
            rest in prop::collection::vec((-5i64..=5, 1i64..=5), 0..16),
        ) {
            let mut coeffs = vec![rat(c0, 1)];
            coeffs.extend(rest.into_iter().map(|(n, d)| rat(n, d)));
            let a = TruncSeries::new(order, coeffs);
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv), TruncSeries::one(order));
        }
    }
}
