//! Phillips q-Bernstein basis and operator.
//!
//! The basis polynomial of index k and degree n is
//! `B_{k,n}(x, q) = C(n,k)_q x^k (1-x)_q^{n-k}`, the probability mass
//! function of the q-binomial distribution. Four independent routes to it
//! live here: the definition, the degree recurrence, the power-basis
//! expansion and the generating-function coefficient; the verify module
//! certifies they coincide. The operator applies a function at the nodes
//! `[k]_q/[n]_q` with these weights, and the conversion matrices translate
//! between the q-Bernstein and power bases.

use thiserror::Error;

use crate::algebra::{AlgebraError, Matrix, Poly};
use crate::qcore::{
    gauss_binom, q_binom_expand, q_difference, q_egf_series, q_factorial, q_int,
    q_shifted_factorial, QParam,
};
use crate::scalar::{choose2, pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernsteinError {
    #[error("sample x = {x} hits the pole of the ratio identity")]
    PoleAtSample { x: String },
    #[error("x = {x} lies outside [0, 1]")]
    DomainError { x: String },
}

/// B_{k,n}(x, q) from the definition; the zero polynomial for k > n.
pub fn basis_poly<T: Scalar>(k: usize, n: usize, q: &QParam<T>) -> Poly<T> {
    if k > n {
        return Poly::zero();
    }
    let shifted = q_binom_expand(n - k, q);
    shifted.mul_monomial(&gauss_binom(n, k as i64, q), k)
}

/// B_{k,n}(x, q) built bottom-up from the degree recurrence
/// `B_{k,n} = q^k (1 - q^{n-k-1} x) B_{k,n-1} + x B_{k-1,n-1}`.
pub fn basis_poly_via_recurrence<T: Scalar>(k: usize, n: usize, q: &QParam<T>) -> Poly<T> {
    if k > n {
        return Poly::zero();
    }
    // row m holds B_{j,m} for j = 0..=m
    let mut row: Vec<Poly<T>> = vec![Poly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            // first term vanishes for j = m (B_{m,m-1} = 0), so the exponent
            // m - j - 1 is only formed when it is nonnegative
            let mut p = Poly::zero();
            if j < m {
                let factor = Poly::new(vec![T::one(), -q.power(m - j - 1)]);
                p = factor.mul(&row[j]).scale(&q.power(j));
            }
            if j > 0 {
                p = p.add(&row[j - 1].mul_monomial(&T::one(), 1));
            }
            next.push(p);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// B_{k,n}(x, q) in the power basis:
/// `sum_{i=k}^{n} C(n,i)_q C(i,k)_q (-1)^{i-k} q^{C(i-k,2)} x^i`.
pub fn basis_power_expansion<T: Scalar>(k: usize, n: usize, q: &QParam<T>) -> Poly<T> {
    if k > n {
        return Poly::zero();
    }
    let mut coeffs = vec![T::zero(); n + 1];
    for i in k..=n {
        let sign = if (i - k) % 2 == 0 { T::one() } else { -T::one() };
        coeffs[i] = sign
            * gauss_binom(n, i as i64, q)
            * gauss_binom(i, k as i64, q)
            * q.power(choose2(i - k));
    }
    Poly::new(coeffs)
}

/// Right-hand side of the q-derivative recurrence,
/// `[n]_q q^{-k} ( q B_{k-1,n-1}(qx, q) - B_{k,n-1}(qx, q) )`,
/// which equals the Jackson derivative of B_{k,n} for q != 1.
pub fn basis_qderivative<T: Scalar>(k: usize, n: usize, q: &QParam<T>) -> Poly<T> {
    if n == 0 {
        return Poly::zero();
    }
    let left = if k >= 1 {
        basis_poly(k - 1, n - 1, q).dilate(q.value()).scale(q.value())
    } else {
        Poly::zero()
    };
    let right = basis_poly(k, n - 1, q).dilate(q.value());
    let scale = q_int(n, q) / q.power(k);
    left.sub(&right).scale(&scale)
}

/// Both sides of the degree-reduction identity
/// `([n-k]_q/[n]_q) B_{k,n} + ([k+1]_q/[n]_q) B_{k+1,n}
///  = B_{k,n-1} + x [n-k-1]_q (1-q) B_{k,n-1}`,
/// for the verify module to compare. Requires n >= 1 and k <= n-1.
pub fn degree_reduction_sides<T: Scalar>(
    k: usize,
    n: usize,
    q: &QParam<T>,
) -> (Poly<T>, Poly<T>) {
    assert!(n >= 1 && k + 1 <= n, "degree reduction needs 0 <= k < n");
    let inv_n = T::one() / q_int(n, q);
    let left = basis_poly(k, n, q)
        .scale(&(q_int(n - k, q) * inv_n.clone()))
        .add(&basis_poly(k + 1, n, q).scale(&(q_int(k + 1, q) * inv_n)));
    let lower = basis_poly(k, n - 1, q);
    let correction = lower.mul_monomial(&(q_int(n - k - 1, q) * (T::one() - q.value().clone())), 1);
    (left, lower.add(&correction))
}

/// Both sides of the one-step ratio identity
/// `B_{k,n}(x) = ([n-k+1]_q/[k]_q) * (x / (1 - x q^{n-k})) * B_{k-1,n}(x)`
/// at one sample x. Requires 1 <= k <= n; errors when x hits the pole.
pub fn ratio_step_sides<T: Scalar>(
    k: usize,
    n: usize,
    q: &QParam<T>,
    x: &T,
) -> Result<(T, T), BernsteinError> {
    assert!(k >= 1 && k <= n, "ratio step needs 1 <= k <= n");
    let denom = T::one() - x.clone() * q.power(n - k);
    if denom.is_zero() {
        return Err(BernsteinError::PoleAtSample { x: x.to_string() });
    }
    let lhs = basis_poly(k, n, q).eval(x);
    let ratio = q_int(n - k + 1, q) / q_int(k, q) * (x.clone() / denom);
    let rhs = ratio * basis_poly(k - 1, n, q).eval(x);
    Ok((lhs, rhs))
}

/// `sum_{k=i}^{n} (C(k,i)_q / C(n,i)_q) B_{k,n}(x, q)`, which the moment
/// identity asserts equals the monomial x^i.
pub fn moment_sum<T: Scalar>(i: usize, n: usize, q: &QParam<T>) -> Poly<T> {
    assert!(i <= n, "moment index must satisfy 0 <= i <= n");
    let denom = gauss_binom(n, i as i64, q);
    let mut sum = Poly::zero();
    for k in i..=n {
        let weight = gauss_binom(k, i as i64, q) / denom.clone();
        sum = sum.add(&basis_poly(k, n, q).scale(&weight));
    }
    sum
}

/// q-Bernstein operator: `sum_k B_{k,n}(x, q) f([k]_q/[n]_q)`. Requires n >= 1.
pub fn operator_apply<T: Scalar>(
    f: impl Fn(&T) -> T,
    n: usize,
    q: &QParam<T>,
    x: &T,
) -> T {
    assert!(n >= 1, "operator order must be positive");
    let qn = q_int(n, q);
    let mut sum = T::zero();
    for k in 0..=n {
        let node = q_int(k, q) / qn.clone();
        sum = sum + basis_poly(k, n, q).eval(x) * f(&node);
    }
    sum
}

/// Same operator through q-differences at zero:
/// `sum_k C(n,k)_q x^k Delta_q^k f(0/[n]_q)` over the node sequence
/// j -> f([j]_q/[n]_q).
pub fn operator_delta_form<T: Scalar>(
    f: impl Fn(&T) -> T,
    n: usize,
    q: &QParam<T>,
    x: &T,
) -> T {
    assert!(n >= 1, "operator order must be positive");
    let qn = q_int(n, q);
    let nodes: Vec<T> = (0..=n).map(|j| f(&(q_int(j, q) / qn.clone()))).collect();
    let mut sum = T::zero();
    for k in 0..=n {
        let delta = q_difference(&nodes, k, q).expect("node sequence has n+1 entries");
        sum = sum + gauss_binom(n, k as i64, q) * pow(x, k) * delta;
    }
    sum
}

/// Coefficient route to B_{k,n}(x, q): build the series
/// `x^k t^k / [k]_q! * sum_m (1-x)_q^m t^m / [m]_q!`, read off the raw
/// coefficient of t^n and multiply by [n]_q!.
pub fn genfun_coefficient<T: Scalar>(k: usize, n: usize, x: &T, q: &QParam<T>) -> T {
    let order = n + 1;
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
    series.coeff(n) * q_factorial(n, q)
}

/// (n+1) x (n+1) conversion matrix M with `M[i][k]` the coefficient of x^i
/// in B_{k,n}(x, q); lower triangular.
pub fn to_power_matrix<T: Scalar>(n: usize, q: &QParam<T>) -> Matrix<T> {
    let mut m = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let b = basis_power_expansion(k, n, q);
        for i in 0..=n {
            m[(i, k)] = b.coeff(i);
        }
    }
    m
}

/// Inverse conversion matrix (power basis back to q-Bernstein coefficients).
/// Entry (k, i) equals `C(k,i)_q / C(n,i)_q` by the moment identity.
pub fn from_power_matrix<T: Scalar>(n: usize, q: &QParam<T>) -> Result<Matrix<T>, AlgebraError> {
    to_power_matrix(n, q).inverse()
}

/// q-binomial distribution mass `P(X = k) = C(n,k)_q x^k (1-x)_q^{n-k}`
/// for x in [0, 1]; zero for k > n.
pub fn pmf<T: Scalar>(n: usize, k: usize, x: &T, q: &QParam<T>) -> Result<T, BernsteinError> {
    if *x < T::zero() || *x > T::one() {
        return Err(BernsteinError::DomainError { x: x.to_string() });
    }
    if k > n {
        return Ok(T::zero());
    }
    Ok(gauss_binom(n, k as i64, q) * pow(x, k) * q_shifted_factorial(x, n - k, q))
}
