//! Scalar abstraction shared by every arithmetic kernel in the crate.
//!
//! Core math is written against [`Scalar`] so the same code runs over the
//! exact rationals (`num::BigRational`, the default throughout) and over
//! `f64` where an approximate instantiation is wanted.

use std::fmt::{Debug, Display};

use num::traits::{FromPrimitive, Num, Signed};

/// Field-like scalar: exact rationals and IEEE floats both qualify.
pub trait Scalar: Clone + Num + Signed + PartialOrd + FromPrimitive + Debug + Display {}

impl<T> Scalar for T where T: Clone + Num + Signed + PartialOrd + FromPrimitive + Debug + Display {}

/// Embed a small signed integer into the scalar type.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer embeds into scalar")
}

/// x^n by binary exponentiation; `pow(x, 0) = 1` for every x.
pub fn pow<T: Scalar>(x: &T, n: usize) -> T {
    let mut result = T::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    result
}

/// n! built up by small multiplications, so it stays exact for big rationals.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * int::<T>(i as i64))
}

/// Generalized binomial coefficient C(x, k) = x(x-1)...(x-k+1)/k! for scalar x.
pub fn binomial_general<T: Scalar>(x: &T, k: usize) -> T {
    let mut num = T::one();
    for i in 0..k {
        num = num * (x.clone() - int::<T>(i as i64));
    }
    num / factorial::<T>(k)
}

/// Classical binomial coefficient C(n, k) as a scalar; 0 for k > n.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    binomial_general(&int::<T>(n as i64), k)
}

/// C(m, 2) = m(m-1)/2, the exponent of q carried by reversal factors.
pub fn choose2(m: usize) -> usize {
    m * (m.saturating_sub(1)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pow_handles_zero_exponent() {
        assert_eq!(pow(&rat(3, 7), 0), rat(1, 1));
        assert_eq!(pow(&rat(1, 2), 10), rat(1, 1024));
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial::<BigRational>(0), rat(1, 1));
        assert_eq!(factorial::<BigRational>(5), rat(120, 1));
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial::<BigRational>(5, 2), rat(10, 1));
        assert_eq!(binomial::<BigRational>(3, 5), rat(0, 1));
        for n in 1..=10usize {
            for k in 1..=n {
                let lhs: BigRational = binomial(n, k);
                let rhs: BigRational =
                    binomial::<BigRational>(n - 1, k - 1) + binomial::<BigRational>(n - 1, k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn binomial_general_at_rational_argument() {
        // C(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(binomial_general(&rat(1, 2), 2), rat(-1, 8));
    }
}
