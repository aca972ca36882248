//! The identity registry and its documented mutation catalog.
//!
//! Every displayed identity of the underlying theory is registered exactly
//! once, with conservative q-degree bounds (over-estimation only costs
//! samples). Mutation entries are deliberately broken variants at small
//! parameter ranges; the engine must flag every one of them.

use num::traits::{One, Zero};

use super::{
    ComparisonMode, Counterexample, Ctx, IdentityDef, MutationDef, Params, QPolicy,
};
use crate::algebra::{Matrix, TruncSeries};
use crate::bernoulli::{
    corollary11_rhs, genfun30_coefficient, q_bernoulli, q_bernoulli_umbral, theorem10_rhs,
};
use crate::bernstein::{
    basis_poly, basis_poly_via_recurrence, basis_power_expansion, basis_qderivative,
    degree_reduction_sides, from_power_matrix, genfun_coefficient, moment_sum, operator_apply,
    ratio_step_sides, to_power_matrix, BernsteinError,
};
use crate::qcore::{
    gauss_binom, q_binom_expand, q_derivative, q_difference, q_factorial, q_int,
    q_reciprocal_series, q_shifted_factorial, QParam,
};
use crate::scalar::{choose2, factorial, int, pow};
use crate::stirling::{
    delta_q_zero_power, falling_factorial_identity, q_stirling2, stirling2, CorollaryForm,
    corollary_rhs,
};
use crate::{RPoly, Rational};

type RQ = QParam<Rational>;
type CheckResult = Result<(), Counterexample>;

fn ce(
    params: &Params,
    q: &RQ,
    x: Option<&Rational>,
    lhs: impl ToString,
    rhs: impl ToString,
) -> Counterexample {
    Counterexample {
        params: params.to_string(),
        q: q.value().to_string(),
        x: x.map(|v| v.to_string()),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn expect_poly(params: &Params, q: &RQ, lhs: &RPoly, rhs: &RPoly) -> CheckResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(ce(params, q, None, lhs, rhs))
    }
}

fn expect_scalar(
    params: &Params,
    q: &RQ,
    x: Option<&Rational>,
    lhs: &Rational,
    rhs: &Rational,
) -> CheckResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(ce(params, q, x, lhs, rhs))
    }
}

fn series_str(s: &TruncSeries<Rational>) -> String {
    let cs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", cs.join(", "))
}

fn matrix_str(m: &Matrix<Rational>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

// ---- instance builders ----

fn pairs_k_le_n(n_min: usize, n_max: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        for k in 0..=n {
            out.push(Params::new(&[("k", k as i64), ("n", n as i64)]));
        }
    }
    out
}

fn range_n(n_min: usize, n_max: usize) -> Vec<Params> {
    (n_min..=n_max).map(|n| Params::new(&[("n", n as i64)])).collect()
}

fn grid2(
    a: &'static str,
    a_lo: usize,
    a_hi: usize,
    b: &'static str,
    b_lo: usize,
    b_hi: usize,
) -> Vec<Params> {
    let mut out = Vec::new();
    for av in a_lo..=a_hi {
        for bv in b_lo..=b_hi {
            out.push(Params::new(&[(a, av as i64), (b, bv as i64)]));
        }
    }
    out
}

/// [n]_q^m * B_{n,q}(t^m | x) as an exact polynomial in x.
fn operator_moment_poly(n: usize, m: usize, q: &RQ) -> RPoly {
    let mut sum = RPoly::zero();
    for k in 0..=n {
        let node_power = if k == 0 && m == 0 {
            Rational::one()
        } else {
            pow(&q_int(k, q), m)
        };
        sum = sum.add(&basis_poly(k, n, q).scale(&node_power));
    }
    sum
}

/// Degree in q of the coefficients of B_{k,n}: at most C(n,2).
fn deg_basis(n: usize) -> usize {
    choose2(n)
}

// ---- identity checks ----

fn check_pascal_recursions(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.get("k");
    let lhs = gauss_binom(n + 1, k, q);
    let r1 = gauss_binom(n, k - 1, q) + q.power(k.max(0) as usize) * gauss_binom(n, k, q);
    expect_scalar(p, q, None, &lhs, &r1)?;
    let e2 = (n as i64 + 1 - k).max(0) as usize;
    let r2 = q.power(e2) * gauss_binom(n, k - 1, q) + gauss_binom(n, k, q);
    expect_scalar(p, q, None, &lhs, &r2)
}

fn check_qbinom_theorem(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let mut product = RPoly::one();
    for i in 0..n {
        product = product.mul(&RPoly::new(vec![Rational::one(), -q.power(i)]));
    }
    expect_poly(p, q, &q_binom_expand(n, q), &product)
}

fn check_qbinom_reciprocal(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let order = p.usize("order");
    let expansion = TruncSeries::new(order, q_binom_expand(n, q).coeffs().to_vec());
    let recip = q_reciprocal_series(order, n, q).expect("n >= 1");
    let product = expansion.mul(&recip);
    let one = TruncSeries::one(order);
    if product == one {
        Ok(())
    } else {
        Err(ce(p, q, None, series_str(&product), series_str(&one)))
    }
}

fn check_product_rule(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let idx = p.get("pair") as u64;
    let df = p.usize("df");
    let dg = p.usize("dg");
    let mut rng = ctx.rng("product-rule", idx);
    let f = super::random_poly(&mut rng, df);
    let g = super::random_poly(&mut rng, dg);
    let lhs = q_derivative(&f.mul(&g), q).expect("q != 1");
    let rhs = g
        .mul(&q_derivative(&f, q).expect("q != 1"))
        .add(&f.dilate(q.value()).mul(&q_derivative(&g, q).expect("q != 1")));
    expect_poly(p, q, &lhs, &rhs)
}

fn check_qdiff_orderings(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let mut rng = ctx.rng("qdiff-orderings", n as u64);
    let seq: Vec<Rational> = (0..=n).map(|_| super::random_rational(&mut rng)).collect();
    let lhs = q_difference(&seq, n, q).expect("length n+1");
    let mut rhs = Rational::zero();
    for k in 0..=n {
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        rhs = rhs + sign * gauss_binom(n, k as i64, q) * q.power(choose2(k)) * seq[n - k].clone();
    }
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn qstirling_ordering_sum(k: usize, n: usize, q: &RQ, reversed: bool) -> Rational {
    let mut sum = Rational::zero();
    for j in 0..=k {
        let (sign_exp, qexp, base) = if reversed {
            (k - j, choose2(k - j), j)
        } else {
            (j, choose2(j), k - j)
        };
        let sign = if sign_exp % 2 == 0 { Rational::one() } else { -Rational::one() };
        let power = if base == 0 && n == 0 {
            Rational::one()
        } else {
            pow(&q_int(base, q), n)
        };
        sum = sum + sign * q.power(qexp) * gauss_binom(k, j as i64, q) * power;
    }
    sum
}

fn check_qstirling_orderings(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    let first = qstirling_ordering_sum(k, n, q, false);
    let second = qstirling_ordering_sum(k, n, q, true);
    expect_scalar(p, q, None, &first, &second)
}

fn check_qstirling_q1_collapse(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    let lhs = q_stirling2(n, k, q);
    let rhs = stirling2::<Rational>(n, k);
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn check_binom_exchange(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    let i = p.usize("i");
    let lhs = gauss_binom(n, k as i64, q) * gauss_binom(n - k, i as i64 - k as i64, q);
    let rhs = gauss_binom(n, i as i64, q) * gauss_binom(i, k as i64, q);
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn check_prop1_expansion(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m_f = p.usize("m");
    let f = |t: &Rational| if m_f == 0 { Rational::one() } else { pow(t, m_f) };
    let qn = q_int(n, q);
    let nodes: Vec<Rational> = (0..=n).map(|k| f(&(q_int(k, q) / qn.clone()))).collect();
    // inner alternating sums and the basis polynomials are x-independent
    let mut rhs_coeffs = vec![Rational::zero(); n + 1];
    for m in 0..=n {
        let mut inner = Rational::zero();
        for k in 0..=m {
            let sign = if (m - k) % 2 == 0 { Rational::one() } else { -Rational::one() };
            inner = inner
                + sign * gauss_binom(m, k as i64, q) * q.power(choose2(m - k)) * nodes[k].clone();
        }
        rhs_coeffs[m] = gauss_binom(n, m as i64, q) * inner;
    }
    let rhs_poly = RPoly::new(rhs_coeffs);
    let basis: Vec<RPoly> = (0..=n).map(|k| basis_poly(k, n, q)).collect();
    for x in &ctx.x_grid {
        let lhs = basis
            .iter()
            .zip(&nodes)
            .fold(Rational::zero(), |acc, (b, fv)| acc + b.eval(x) * fv.clone());
        let rhs = rhs_poly.eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn check_thm2_delta_form(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m_f = p.usize("m");
    let f = |t: &Rational| if m_f == 0 { Rational::one() } else { pow(t, m_f) };
    let qn = q_int(n, q);
    let nodes: Vec<Rational> = (0..=n).map(|k| f(&(q_int(k, q) / qn.clone()))).collect();
    let basis: Vec<RPoly> = (0..=n).map(|k| basis_poly(k, n, q)).collect();
    let mut rhs_coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        let delta = q_difference(&nodes, k, q).expect("n+1 nodes");
        rhs_coeffs[k] = gauss_binom(n, k as i64, q) * delta;
    }
    let rhs_poly = RPoly::new(rhs_coeffs);
    for x in &ctx.x_grid {
        let lhs = basis
            .iter()
            .zip(&nodes)
            .fold(Rational::zero(), |acc, (b, fv)| acc + b.eval(x) * fv.clone());
        expect_scalar(p, q, Some(x), &lhs, &rhs_poly.eval(x))?;
    }
    Ok(())
}

fn check_cor3(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = p.usize("m");
    let lhs = operator_moment_poly(n, m, q);
    let rhs = corollary_rhs(n, m, q, CorollaryForm::DeltaForm);
    expect_poly(p, q, &lhs, &rhs)
}

fn check_cor4(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = p.usize("m");
    let lhs = operator_moment_poly(n, m, q);
    let rhs = corollary_rhs(n, m, q, CorollaryForm::StirlingForm);
    expect_poly(p, q, &lhs, &rhs)
}

fn check_thm5_recurrence(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    expect_poly(p, q, &basis_poly_via_recurrence(k, n, q), &basis_poly(k, n, q))
}

fn check_thm5_derivative(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    let lhs = q_derivative(&basis_poly(k, n, q), q).expect("q != 1");
    expect_poly(p, q, &lhs, &basis_qderivative(k, n, q))
}

fn check_thm6(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    let (left, right) = degree_reduction_sides(k, n, q);
    expect_poly(p, q, &left, &right)
}

fn check_prop7(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    for x in &ctx.x_grid {
        match ratio_step_sides(k, n, q, x) {
            Ok((lhs, rhs)) => expect_scalar(p, q, Some(x), &lhs, &rhs)?,
            Err(BernsteinError::PoleAtSample { .. }) => continue,
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
    Ok(())
}

fn check_thm8(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    expect_poly(p, q, &basis_power_expansion(k, n, q), &basis_poly(k, n, q))
}

fn check_thm9(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let i = p.usize("i");
    let n = p.usize("n");
    let lhs = moment_sum(i, n, q);
    let rhs = RPoly::monomial(Rational::one(), i);
    expect_poly(p, q, &lhs, &rhs)
}

fn check_genfun(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    let reference = basis_poly(k, n, q);
    for x in &ctx.x_grid {
        let lhs = genfun_coefficient(k, n, x, q);
        expect_scalar(p, q, Some(x), &lhs, &reference.eval(x))?;
    }
    Ok(())
}

fn check_thm10(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    let reference = basis_poly(k, l, q);
    for x in &ctx.x_grid {
        let lhs = theorem10_rhs(k, l, x, q);
        expect_scalar(p, q, Some(x), &lhs, &reference.eval(x))?;
    }
    Ok(())
}

fn check_cor11(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    let reference = basis_poly(k, l, q);
    for x in &ctx.x_grid {
        let lhs = corollary11_rhs(k, l, x, q);
        expect_scalar(p, q, Some(x), &lhs, &reference.eval(x))?;
    }
    Ok(())
}

fn check_series_oracle(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    let reference = basis_poly(k, l, q);
    for x in &ctx.x_grid {
        let lhs = genfun30_coefficient(k, l, x, q);
        expect_scalar(p, q, Some(x), &lhs, &reference.eval(x))?;
    }
    Ok(())
}

fn check_falling_factorial(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    // q-free identity; dedicated 11-point grid is degree-complete for n <= 10
    for j in 0..=10i64 {
        let x = Rational::new(j.into(), 11.into());
        let (lhs, rhs) = falling_factorial_identity(n, &x);
        expect_scalar(p, q, Some(&x), &lhs, &rhs)?;
    }
    Ok(())
}

fn check_partition_of_unity(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let mut sum = RPoly::zero();
    for k in 0..=n {
        sum = sum.add(&basis_poly(k, n, q));
    }
    expect_poly(p, q, &sum, &RPoly::one())
}

fn check_linear_precision(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let qn = q_int(n, q);
    let mut sum = RPoly::zero();
    for k in 0..=n {
        sum = sum.add(&basis_poly(k, n, q).scale(&(q_int(k, q) / qn.clone())));
    }
    expect_poly(p, q, &sum, &RPoly::monomial(Rational::one(), 1))
}

fn check_matrix_roundtrip(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = to_power_matrix(n, q);
    let inv = from_power_matrix(n, q).expect("conversion matrix is triangular with unit-like diagonal");
    let product = m.multiply(&inv).expect("square");
    let identity = Matrix::identity(n + 1);
    if product == identity {
        Ok(())
    } else {
        Err(ce(p, q, None, matrix_str(&product), matrix_str(&identity)))
    }
}

pub(super) fn identities() -> Vec<IdentityDef> {
    use ComparisonMode::*;
    use QPolicy::*;
    vec![
        IdentityDef {
            id: "cor11-closed-form",
            summary: "basis value via classical forward differences and umbral q-Bernoulli polynomials",
            mode: Pointwise,
            param_ranges: "1<=k<=3, 0<=l<=6",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("k", 1, 3, "l", 0, 6),
            q_degree_bound: |p| {
                let l = p.usize("l");
                2 * l * l + choose2(p.usize("k")) + 2
            },
            check: check_cor11,
        },
        IdentityDef {
            id: "cor3-delta-powers",
            summary: "[n]^m B(t^m|x) as q-binomial sum of q-differences of powers",
            mode: PolyInX,
            param_ranges: "1<=n<=6, 0<=m<=4",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 1, 6, "m", 0, 4),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n / 4 + choose2(n) + n * p.usize("m") + n + 1
            },
            check: check_cor3,
        },
        IdentityDef {
            id: "cor4-qstirling-powers",
            summary: "[n]^m B(t^m|x) through q-Stirling numbers",
            mode: PolyInX,
            param_ranges: "1<=n<=6, 0<=m<=4",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 1, 6, "m", 0, 4),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n / 4 + choose2(n) + n * p.usize("m") + n + 1
            },
            check: check_cor4,
        },
        IdentityDef {
            id: "pascal-recursions",
            summary: "both Pascal-type recursions of the Gaussian binomial",
            mode: Pointwise,
            param_ranges: "0<=k<=n+1, 0<=n<=12",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || {
                let mut out = Vec::new();
                for n in 0..=12usize {
                    for k in 0..=(n + 1) {
                        out.push(Params::new(&[("k", k as i64), ("n", n as i64)]));
                    }
                }
                out
            },
            q_degree_bound: |p| {
                let n = p.usize("n");
                let k = p.usize("k");
                k * (n + 1 - k.min(n + 1)) + k * (n + 1) / 2 + n + 2
            },
            check: check_pascal_recursions,
        },
        IdentityDef {
            id: "qdiff-orderings",
            summary: "both index orderings of the q-difference operator agree",
            mode: Pointwise,
            param_ranges: "0<=n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || range_n(0, 10),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n + 1
            },
            check: check_qdiff_orderings,
        },
        IdentityDef {
            id: "qstirling-q1-collapse",
            summary: "q-Stirling numbers collapse to classical ones at q = 1",
            mode: Pointwise,
            param_ranges: "0<=n<=10, 0<=k<=10",
            q_policy: SingleQOne,
            allows_q_one: true,
            instances: || grid2("n", 0, 10, "k", 0, 10),
            q_degree_bound: |_| 0,
            check: check_qstirling_q1_collapse,
        },
        IdentityDef {
            id: "qstirling-orderings",
            summary: "both orderings of the q-Stirling alternating sum agree",
            mode: Pointwise,
            param_ranges: "0<=n<=8, 0<=k<=8",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 0, 8, "k", 0, 8),
            q_degree_bound: |p| {
                let n = p.usize("n");
                let k = p.usize("k");
                k * k + k * n + n + 1
            },
            check: check_qstirling_orderings,
        },
        IdentityDef {
            id: "qbinom-theorem",
            summary: "q-binomial expansion equals the finite product",
            mode: PolyInX,
            param_ranges: "0<=n<=12",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || range_n(0, 12),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n + 1
            },
            check: check_qbinom_theorem,
        },
        IdentityDef {
            id: "qbinom-reciprocal",
            summary: "reciprocal series inverts the q-binomial expansion",
            mode: PolyInX,
            param_ranges: "1<=n<=4, 1<=N<=8",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 1, 4, "order", 1, 8),
            q_degree_bound: |p| {
                let n = p.usize("n");
                let order = p.usize("order");
                n * n + order * n + 1
            },
            check: check_qbinom_reciprocal,
        },
        IdentityDef {
            id: "binom-exchange",
            summary: "Gaussian binomial product exchange identity",
            mode: Pointwise,
            param_ranges: "0<=k<=i<=n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || {
                let mut out = Vec::new();
                for n in 0..=10usize {
                    for i in 0..=n {
                        for k in 0..=i {
                            out.push(Params::new(&[
                                ("k", k as i64),
                                ("i", i as i64),
                                ("n", n as i64),
                            ]));
                        }
                    }
                }
                out
            },
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n / 2 + 1
            },
            check: check_binom_exchange,
        },
        IdentityDef {
            id: "series-oracle",
            summary: "truncated-series route to the basis value",
            mode: Pointwise,
            param_ranges: "1<=k<=3, 0<=l<=6",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("k", 1, 3, "l", 0, 6),
            q_degree_bound: |p| {
                let l = p.usize("l");
                2 * choose2(l) + l + p.usize("k") + 2
            },
            check: check_series_oracle,
        },
        IdentityDef {
            id: "falling-factorial",
            summary: "powers expand in falling factorials with Stirling weights",
            mode: Pointwise,
            param_ranges: "0<=n<=8",
            q_policy: SingleQOne,
            allows_q_one: true,
            instances: || range_n(0, 8),
            q_degree_bound: |_| 0,
            check: check_falling_factorial,
        },
        IdentityDef {
            id: "product-rule",
            summary: "Jackson derivative product rule on random polynomial pairs",
            mode: PolyInX,
            param_ranges: "5 seeded pairs, deg f + deg g <= 16",
            q_policy: Interpolate,
            allows_q_one: false,
            instances: || {
                [(0i64, 8i64, 8i64), (1, 5, 7), (2, 8, 3), (3, 4, 4), (4, 6, 8)]
                    .iter()
                    .map(|&(pair, df, dg)| {
                        Params::new(&[("pair", pair), ("df", df), ("dg", dg)])
                    })
                    .collect()
            },
            q_degree_bound: |p| 2 * (p.usize("df") + p.usize("dg")) + 1,
            check: check_product_rule,
        },
        IdentityDef {
            id: "genfun-coefficients",
            summary: "generating-function coefficients reproduce the basis",
            mode: Pointwise,
            param_ranges: "0<=k<=8, 0<=n<=8",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("k", 0, 8, "n", 0, 8),
            q_degree_bound: |p| {
                let n = p.usize("n");
                2 * choose2(n) + n + 2
            },
            check: check_genfun,
        },
        IdentityDef {
            id: "linear-precision",
            summary: "the operator reproduces the identity function",
            mode: PolyInX,
            param_ranges: "1<=n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || range_n(1, 10),
            q_degree_bound: |p| {
                let n = p.usize("n");
                deg_basis(n) + n + 1
            },
            check: check_linear_precision,
        },
        IdentityDef {
            id: "partition-of-unity",
            summary: "basis functions of fixed degree sum to one",
            mode: PolyInX,
            param_ranges: "0<=n<=12",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || range_n(0, 12),
            q_degree_bound: |p| deg_basis(p.usize("n")) + 1,
            check: check_partition_of_unity,
        },
        IdentityDef {
            id: "prop1-expansion",
            summary: "operator expansion with explicit alternating inner sums",
            mode: Pointwise,
            param_ranges: "1<=n<=6, monomials t^m, 0<=m<=4",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 1, 6, "m", 0, 4),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n / 2 + choose2(n) + n * p.usize("m") + n + 1
            },
            check: check_prop1_expansion,
        },
        IdentityDef {
            id: "prop7-ratio",
            summary: "one-step ratio between neighbouring basis polynomials",
            mode: Pointwise,
            param_ranges: "1<=k<=n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || {
                pairs_k_le_n(1, 10)
                    .into_iter()
                    .filter(|p| p.get("k") >= 1)
                    .collect()
            },
            q_degree_bound: |p| {
                let n = p.usize("n");
                deg_basis(n) + 2 * n + 2
            },
            check: check_prop7,
        },
        IdentityDef {
            id: "matrix-roundtrip",
            summary: "conversion matrix times its inverse is the identity",
            mode: Pointwise,
            param_ranges: "0<=n<=8",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || range_n(0, 8),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n + n + 1
            },
            check: check_matrix_roundtrip,
        },
        IdentityDef {
            id: "thm10-closed-form",
            summary: "basis value via Stirling numbers and umbral q-Bernoulli polynomials",
            mode: Pointwise,
            param_ranges: "1<=k<=3, 0<=l<=6",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("k", 1, 3, "l", 0, 6),
            q_degree_bound: |p| {
                let l = p.usize("l");
                2 * l * l + choose2(p.usize("k")) + 2
            },
            check: check_thm10,
        },
        IdentityDef {
            id: "thm2-delta-form",
            summary: "operator equals its q-difference expansion at zero",
            mode: Pointwise,
            param_ranges: "1<=n<=6, monomials t^m, 0<=m<=4",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || grid2("n", 1, 6, "m", 0, 4),
            q_degree_bound: |p| {
                let n = p.usize("n");
                n * n / 2 + choose2(n) + n * p.usize("m") + n + 1
            },
            check: check_thm2_delta_form,
        },
        IdentityDef {
            id: "thm5-derivative",
            summary: "Jackson derivative of the basis via dilated lower-degree bases",
            mode: PolyInX,
            param_ranges: "0<=k<=n, 1<=n<=10",
            q_policy: Interpolate,
            allows_q_one: false,
            instances: || pairs_k_le_n(1, 10),
            q_degree_bound: |p| {
                let n = p.usize("n");
                deg_basis(n) + 3 * n + 1
            },
            check: check_thm5_derivative,
        },
        IdentityDef {
            id: "thm5-recurrence",
            summary: "degree recurrence rebuilds the basis",
            mode: PolyInX,
            param_ranges: "0<=k<=n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || pairs_k_le_n(0, 10),
            q_degree_bound: |p| {
                let n = p.usize("n");
                deg_basis(n) + n + 1
            },
            check: check_thm5_recurrence,
        },
        IdentityDef {
            id: "thm6-degree-reduction",
            summary: "weighted neighbours reduce to the degree-(n-1) basis",
            mode: PolyInX,
            param_ranges: "0<=k<n<=10",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || {
                let mut out = Vec::new();
                for n in 1..=10usize {
                    for k in 0..n {
                        out.push(Params::new(&[("k", k as i64), ("n", n as i64)]));
                    }
                }
                out
            },
            q_degree_bound: |p| {
                let n = p.usize("n");
                deg_basis(n) + 2 * n + 1
            },
            check: check_thm6,
        },
        IdentityDef {
            id: "thm8-power-basis",
            summary: "power-basis expansion rebuilds the basis",
            mode: PolyInX,
            param_ranges: "0<=k<=n<=9",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || pairs_k_le_n(0, 9),
            q_degree_bound: |p| {
                let n = p.usize("n");
                let k = p.usize("k");
                let term_max = (k..=n)
                    .map(|i| i * (n - i) + k * (i - k) + choose2(i - k))
                    .max()
                    .unwrap_or(0);
                term_max.max(deg_basis(n)) + 1
            },
            check: check_thm8,
        },
        IdentityDef {
            id: "thm9-moments",
            summary: "binomial-ratio mixtures of the basis give back monomials",
            mode: PolyInX,
            param_ranges: "0<=i<=n<=8",
            q_policy: Interpolate,
            allows_q_one: true,
            instances: || {
                let mut out = Vec::new();
                for n in 0..=8usize {
                    for i in 0..=n {
                        out.push(Params::new(&[("i", i as i64), ("n", n as i64)]));
                    }
                }
                out
            },
            q_degree_bound: |p| {
                let n = p.usize("n");
                let i = p.usize("i");
                i * (n - i) + deg_basis(n) + 1
            },
            check: check_thm9,
        },
    ]
}

// ---- mutation checks ----

fn mut_thm5_recurrence(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    // q^j factor dropped from the first recurrence term
    let mut row: Vec<RPoly> = vec![RPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut poly = RPoly::zero();
            if j < m {
                let factor = RPoly::new(vec![Rational::one(), -q.power(m - j - 1)]);
                poly = factor.mul(&row[j]);
            }
            if j > 0 {
                poly = poly.add(&row[j - 1].mul_monomial(&Rational::one(), 1));
            }
            next.push(poly);
        }
        row = next;
    }
    expect_poly(p, q, &row[k], &basis_poly(k, n, q))
}

fn mut_pascal(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.get("k");
    let lhs = gauss_binom(n + 1, k, q);
    let rhs = gauss_binom(n, k - 1, q) + q.power(k.max(0) as usize + 1) * gauss_binom(n, k, q);
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn mut_thm8_sign(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    let mut coeffs = vec![Rational::zero(); n + 1];
    for i in k..=n {
        let sign = if (i - k) % 2 == 0 { -Rational::one() } else { Rational::one() };
        coeffs[i] = sign
            * gauss_binom(n, i as i64, q)
            * gauss_binom(i, k as i64, q)
            * q.power(choose2(i - k));
    }
    expect_poly(p, q, &RPoly::new(coeffs), &basis_poly(k, n, q))
}

fn mut_qbinom(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    // q^{C(i,2)} factor dropped
    let coeffs = (0..=n)
        .map(|i| {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            sign * gauss_binom(n, i as i64, q)
        })
        .collect();
    let mut product = RPoly::one();
    for i in 0..n {
        product = product.mul(&RPoly::new(vec![Rational::one(), -q.power(i)]));
    }
    expect_poly(p, q, &RPoly::new(coeffs), &product)
}

fn mut_thm9_normalizer(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let i = p.usize("i");
    let n = p.usize("n");
    let mut sum = RPoly::zero();
    for k in i..=n {
        sum = sum.add(&basis_poly(k, n, q).scale(&gauss_binom(k, i as i64, q)));
    }
    expect_poly(p, q, &sum, &RPoly::monomial(Rational::one(), i))
}

fn mut_qdiff_qpower(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let seq: Vec<Rational> = (0..=n)
        .map(|j| Rational::new(1.into(), (j as i64 + 1).into()))
        .collect();
    // every q-power bumped by one
    let mut lhs = Rational::zero();
    for k in 0..=n {
        let sign = if (n - k) % 2 == 0 { Rational::one() } else { -Rational::one() };
        lhs = lhs + sign * gauss_binom(n, k as i64, q) * q.power(choose2(n - k) + 1) * seq[k].clone();
    }
    let rhs = q_difference(&seq, n, q).expect("length n+1");
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn mut_thm6_oneminusq(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    let (left, _) = degree_reduction_sides(k, n, q);
    let lower = basis_poly(k, n - 1, q);
    // (1-q) factor dropped from the correction term
    let right = lower.add(&lower.mul_monomial(&q_int(n - k - 1, q), 1));
    expect_poly(p, q, &left, &right)
}

fn mut_prop7_ratio(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    for x in &ctx.x_grid {
        let denom = Rational::one() - x * q.power(n - k);
        if denom.is_zero() {
            continue;
        }
        let lhs = basis_poly(k, n, q).eval(x);
        // [n-k]_q instead of [n-k+1]_q
        let rhs = q_int(n - k, q) / q_int(k, q) * (x / denom.clone())
            * basis_poly(k - 1, n, q).eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_thm5_derivative(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    // q^{-k} scale dropped
    let left = if k >= 1 {
        basis_poly(k - 1, n - 1, q).dilate(q.value()).scale(q.value())
    } else {
        RPoly::zero()
    };
    let right = basis_poly(k, n - 1, q).dilate(q.value());
    let rhs = left.sub(&right).scale(&q_int(n, q));
    let lhs = q_derivative(&basis_poly(k, n, q), q).expect("q != 1");
    expect_poly(p, q, &lhs, &rhs)
}

fn mut_thm10_scalar(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    for x in &ctx.x_grid {
        // scalar substitution 1-x instead of the umbral sequence (1-x)_q
        let mut sum = Rational::zero();
        for m in 0..=l {
            sum = sum
                + (q_factorial(m, q) / factorial::<Rational>(m))
                    * stirling2::<Rational>(m, k)
                    * gauss_binom(l, m as i64, q)
                    * q_bernoulli(l - m, k, &(Rational::one() - x), q);
        }
        let lhs = factorial::<Rational>(k) / q_factorial(k, q) * pow(x, k) * sum;
        let rhs = basis_poly(k, l, q).eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_cor3_classical(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = p.usize("m");
    let lhs = operator_moment_poly(n, m, q);
    // classical forward differences instead of q-differences
    let one = QParam::new(Rational::one()).unwrap();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        coeffs[k] = gauss_binom(n, k as i64, q) * delta_q_zero_power(k, m, &one);
    }
    expect_poly(p, q, &lhs, &RPoly::new(coeffs))
}

fn mut_falling_factorial_shift(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    for j in 0..=10i64 {
        let x = Rational::new(j.into(), 11.into());
        let lhs = if n == 0 { Rational::one() } else { pow(&x, n) };
        let mut rhs = Rational::zero();
        for k in 0..=n {
            rhs = rhs
                + crate::scalar::binomial_general(&x, k)
                    * factorial::<Rational>(k)
                    * stirling2::<Rational>(n, k + 1);
        }
        expect_scalar(p, q, Some(&x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_partition_classical(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    // classical power (1-x)^{n-k} instead of the q-shifted factorial
    let mut sum = RPoly::zero();
    for k in 0..=n {
        let mut classical = RPoly::one();
        for _ in 0..(n - k) {
            classical = classical.mul(&RPoly::new(vec![Rational::one(), -Rational::one()]));
        }
        sum = sum.add(&classical.mul_monomial(&gauss_binom(n, k as i64, q), k));
    }
    expect_poly(p, q, &sum, &RPoly::one())
}

fn mut_matrix_transpose(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = to_power_matrix(n, q);
    let mut transposed = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            transposed[(i, j)] = m[(j, i)].clone();
        }
    }
    let inv = from_power_matrix(n, q).expect("invertible");
    let product = transposed.multiply(&inv).expect("square");
    let identity = Matrix::identity(n + 1);
    if product == identity {
        Ok(())
    } else {
        Err(ce(p, q, None, matrix_str(&product), matrix_str(&identity)))
    }
}

fn mut_cor4_qfactorial(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let m = p.usize("m");
    let lhs = operator_moment_poly(n, m, q);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        // [k]_q! factor dropped
        coeffs[k] = gauss_binom(n, k as i64, q) * q.power(choose2(k)) * q_stirling2(m, k, q);
    }
    expect_poly(p, q, &lhs, &RPoly::new(coeffs))
}

fn mut_reciprocal(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let order = p.usize("order");
    // shifted top index C(n+i, i) instead of C(n+i-1, i)
    let coeffs: Vec<Rational> = (0..=order)
        .map(|i| gauss_binom(n + i, i as i64, q))
        .collect();
    let recip = TruncSeries::new(order, coeffs);
    let expansion = TruncSeries::new(order, q_binom_expand(n, q).coeffs().to_vec());
    let product = expansion.mul(&recip);
    let one = TruncSeries::one(order);
    if product == one {
        Ok(())
    } else {
        Err(ce(p, q, None, series_str(&product), series_str(&one)))
    }
}

fn mut_product_rule_dilation(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let _ = p;
    let f = RPoly::new(vec![Rational::one(), Rational::one()]);
    let g = RPoly::monomial(Rational::one(), 2);
    let lhs = q_derivative(&f.mul(&g), q).expect("q != 1");
    // f(x) instead of f(qx) in the second term
    let rhs = g
        .mul(&q_derivative(&f, q).expect("q != 1"))
        .add(&f.mul(&q_derivative(&g, q).expect("q != 1")));
    expect_poly(p, q, &lhs, &rhs)
}

fn mut_qstirling_q1(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    // normalization 1/[k]_q! dropped
    let lhs = delta_q_zero_power(k, n, q) / q.power(choose2(k));
    let rhs = stirling2::<Rational>(n, k);
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn mut_thm2_nodes(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    for x in &ctx.x_grid {
        let lhs = operator_apply(|t| t.clone(), n, q, x);
        //差 nodes scaled by [n+1]_q instead of [n]_q
        let qn1 = q_int(n + 1, q);
        let nodes: Vec<Rational> = (0..=n).map(|j| q_int(j, q) / qn1.clone()).collect();
        let mut rhs = Rational::zero();
        for k in 0..=n {
            let delta = q_difference(&nodes, k, q).expect("n+1 nodes");
            rhs = rhs + gauss_binom(n, k as i64, q) * pow(x, k) * delta;
        }
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_prop1_sign(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let f = |_: &Rational| Rational::one();
    let qn = q_int(n, q);
    for x in &ctx.x_grid {
        let lhs = operator_apply(f, n, q, x);
        let mut rhs = Rational::zero();
        for m in 0..=n {
            let mut inner = Rational::zero();
            for k in 0..=m {
                // alternating sign dropped
                inner = inner
                    + gauss_binom(m, k as i64, q) * q.power(choose2(m - k))
                        * f(&(q_int(k, q) / qn.clone()));
            }
            rhs = rhs + gauss_binom(n, m as i64, q) * pow(x, m) * inner;
        }
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_linear_precision(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let qn = q_int(n, q);
    let mut sum = RPoly::zero();
    for k in 0..=n {
        // weight [k+1]_q instead of [k]_q
        sum = sum.add(&basis_poly(k, n, q).scale(&(q_int(k + 1, q) / qn.clone())));
    }
    expect_poly(p, q, &sum, &RPoly::monomial(Rational::one(), 1))
}

fn mut_genfun_kfactorial(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let n = p.usize("n");
    for x in &ctx.x_grid {
        let order = n + 1;
        let terms: Vec<Rational> = (0..=order).map(|m| q_shifted_factorial(x, m, q)).collect();
        let egf = crate::qcore::q_egf_series(&terms, q);
        // 1/[k]_q! normalization dropped
        let series = egf.shift_up(k).scale(&pow(x, k));
        let lhs = series.coeff(n) * q_factorial(n, q);
        let rhs = basis_poly(k, n, q).eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_binom_exchange_swap(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    let i = p.usize("i");
    let lhs = gauss_binom(n, k as i64, q) * gauss_binom(n - k, i as i64 - k as i64, q);
    // C(i-1, k) instead of C(i, k)
    let rhs = gauss_binom(n, i as i64, q) * gauss_binom(i.saturating_sub(1), k as i64, q);
    expect_scalar(p, q, None, &lhs, &rhs)
}

fn mut_series_oracle_shift(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    for x in &ctx.x_grid {
        let order = l + k + 1;
        let terms: Vec<Rational> = (0..=order).map(|m| q_shifted_factorial(x, m, q)).collect();
        let egf = crate::qcore::q_egf_series(&terms, q);
        // t^k shift omitted
        let series = egf.scale(&(pow(x, k) / q_factorial(k, q)));
        let lhs = series.coeff(l) * q_factorial(l, q);
        let rhs = basis_poly(k, l, q).eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_cor11_qfactorial(p: &Params, q: &RQ, ctx: &Ctx) -> CheckResult {
    let k = p.usize("k");
    let l = p.usize("l");
    for x in &ctx.x_grid {
        let mut sum = Rational::zero();
        for m in 0..=l {
            // [m]_q!/m! weight replaced by 1
            let mut delta = Rational::zero();
            for j in 0..=k {
                let sign = if (k - j) % 2 == 0 { Rational::one() } else { -Rational::one() };
                let power = if j == 0 && m == 0 {
                    Rational::one()
                } else {
                    pow(&int::<Rational>(j as i64), m)
                };
                delta = delta + sign * crate::scalar::binomial::<Rational>(k, j) * power;
            }
            sum = sum + gauss_binom(l, m as i64, q) * q_bernoulli_umbral(l - m, k, x, q) * delta;
        }
        let lhs = pow(x, k) / q_factorial(k, q) * sum;
        let rhs = basis_poly(k, l, q).eval(x);
        expect_scalar(p, q, Some(x), &lhs, &rhs)?;
    }
    Ok(())
}

fn mut_qstirling_orderings(p: &Params, q: &RQ, _ctx: &Ctx) -> CheckResult {
    let n = p.usize("n");
    let k = p.usize("k");
    // q^{C(j,2)} dropped from the first ordering
    let mut first = Rational::zero();
    for j in 0..=k {
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let power = if k - j == 0 && n == 0 {
            Rational::one()
        } else {
            pow(&q_int(k - j, q), n)
        };
        first = first + sign * gauss_binom(k, j as i64, q) * power;
    }
    let second = qstirling_ordering_sum(k, n, q, true);
    expect_scalar(p, q, None, &first, &second)
}

pub(super) fn mutations() -> Vec<MutationDef> {
    use ComparisonMode::*;
    use QPolicy::*;
    vec![
        MutationDef {
            name: "mut-thm5-recurrence-drop-qk",
            target: "thm5-recurrence",
            description: "q^k factor dropped from the degree recurrence",
            def: IdentityDef {
                id: "mut-thm5-recurrence-drop-qk",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "0<=k<=n<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || pairs_k_le_n(1, 4),
                q_degree_bound: |_| 3,
                check: mut_thm5_recurrence,
            },
        },
        MutationDef {
            name: "mut-pascal-recursions-extra-power",
            target: "pascal-recursions",
            description: "q^k replaced by q^{k+1} in the first recursion",
            def: IdentityDef {
                id: "mut-pascal-recursions-extra-power",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=k<=n<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || {
                    pairs_k_le_n(1, 4).into_iter().filter(|p| p.get("k") >= 1).collect()
                },
                q_degree_bound: |_| 3,
                check: mut_pascal,
            },
        },
        MutationDef {
            name: "mut-thm8-sign-flip",
            target: "thm8-power-basis",
            description: "(-1)^{i-k} sign flipped in the power expansion",
            def: IdentityDef {
                id: "mut-thm8-sign-flip",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "0<=k<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || pairs_k_le_n(0, 3),
                q_degree_bound: |_| 3,
                check: mut_thm8_sign,
            },
        },
        MutationDef {
            name: "mut-qbinom-drop-qpower",
            target: "qbinom-theorem",
            description: "q^{C(i,2)} factor dropped from the expansion",
            def: IdentityDef {
                id: "mut-qbinom-drop-qpower",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "2<=n<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || range_n(2, 4),
                q_degree_bound: |_| 3,
                check: mut_qbinom,
            },
        },
        MutationDef {
            name: "mut-thm9-drop-normalizer",
            target: "thm9-moments",
            description: "1/C(n,i)_q normalizer dropped from the moment mixture",
            def: IdentityDef {
                id: "mut-thm9-drop-normalizer",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "1<=i<=2, 2<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || grid2("i", 1, 2, "n", 2, 3),
                q_degree_bound: |_| 3,
                check: mut_thm9_normalizer,
            },
        },
        MutationDef {
            name: "mut-qdiff-extra-qpower",
            target: "qdiff-orderings",
            description: "every q^{C(n-k,2)} bumped to q^{C(n-k,2)+1}",
            def: IdentityDef {
                id: "mut-qdiff-extra-qpower",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=n<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || range_n(1, 4),
                q_degree_bound: |_| 3,
                check: mut_qdiff_qpower,
            },
        },
        MutationDef {
            name: "mut-thm6-drop-oneminusq",
            target: "thm6-degree-reduction",
            description: "(1-q) factor dropped from the correction term",
            def: IdentityDef {
                id: "mut-thm6-drop-oneminusq",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "0<=k<=1, n=3",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || grid2("k", 0, 1, "n", 3, 3),
                q_degree_bound: |_| 3,
                check: mut_thm6_oneminusq,
            },
        },
        MutationDef {
            name: "mut-prop7-wrong-qint",
            target: "prop7-ratio",
            description: "[n-k+1]_q replaced by [n-k]_q in the ratio",
            def: IdentityDef {
                id: "mut-prop7-wrong-qint",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=n, 1<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || {
                    (1..=3i64).map(|n| Params::new(&[("k", n), ("n", n)])).collect()
                },
                q_degree_bound: |_| 3,
                check: mut_prop7_ratio,
            },
        },
        MutationDef {
            name: "mut-thm5-derivative-drop-qscale",
            target: "thm5-derivative",
            description: "q^{-k} scale dropped from the derivative recurrence",
            def: IdentityDef {
                id: "mut-thm5-derivative-drop-qscale",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "1<=k<=n<=3",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || {
                    pairs_k_le_n(1, 3).into_iter().filter(|p| p.get("k") >= 1).collect()
                },
                q_degree_bound: |_| 3,
                check: mut_thm5_derivative,
            },
        },
        MutationDef {
            name: "mut-thm10-scalar-bernoulli",
            target: "thm10-closed-form",
            description: "umbral argument (1-x)_q replaced by the scalar 1-x",
            def: IdentityDef {
                id: "mut-thm10-scalar-bernoulli",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=1, 3<=l<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || grid2("k", 1, 1, "l", 3, 4),
                q_degree_bound: |_| 3,
                check: mut_thm10_scalar,
            },
        },
        MutationDef {
            name: "mut-cor3-classical-delta",
            target: "cor3-delta-powers",
            description: "q-differences replaced by classical forward differences",
            def: IdentityDef {
                id: "mut-cor3-classical-delta",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "2<=n<=3, 2<=m<=3",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || grid2("n", 2, 3, "m", 2, 3),
                q_degree_bound: |_| 3,
                check: mut_cor3_classical,
            },
        },
        MutationDef {
            name: "mut-falling-factorial-shifted-stirling",
            target: "falling-factorial",
            description: "S(n,k) replaced by S(n,k+1)",
            def: IdentityDef {
                id: "mut-falling-factorial-shifted-stirling",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=n<=3",
                q_policy: SingleQOne,
                allows_q_one: true,
                instances: || range_n(1, 3),
                q_degree_bound: |_| 0,
                check: mut_falling_factorial_shift,
            },
        },
        MutationDef {
            name: "mut-partition-classical-power",
            target: "partition-of-unity",
            description: "q-shifted factorial replaced by the classical power",
            def: IdentityDef {
                id: "mut-partition-classical-power",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "2<=n<=3",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || range_n(2, 3),
                q_degree_bound: |_| 3,
                check: mut_partition_classical,
            },
        },
        MutationDef {
            name: "mut-matrix-roundtrip-transposed",
            target: "matrix-roundtrip",
            description: "conversion matrix transposed before the round trip",
            def: IdentityDef {
                id: "mut-matrix-roundtrip-transposed",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || range_n(1, 3),
                q_degree_bound: |_| 3,
                check: mut_matrix_transpose,
            },
        },
        MutationDef {
            name: "mut-cor4-drop-qfactorial",
            target: "cor4-qstirling-powers",
            description: "[k]_q! factor dropped from the q-Stirling form",
            def: IdentityDef {
                id: "mut-cor4-drop-qfactorial",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "2<=n<=3, 2<=m<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || grid2("n", 2, 3, "m", 2, 3),
                q_degree_bound: |_| 3,
                check: mut_cor4_qfactorial,
            },
        },
        MutationDef {
            name: "mut-qbinom-reciprocal-shifted-index",
            target: "qbinom-reciprocal",
            description: "C(n+i-1,i)_q replaced by C(n+i,i)_q",
            def: IdentityDef {
                id: "mut-qbinom-reciprocal-shifted-index",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "1<=n<=2, N=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || grid2("n", 1, 2, "order", 3, 3),
                q_degree_bound: |_| 3,
                check: mut_reciprocal,
            },
        },
        MutationDef {
            name: "mut-product-rule-drop-dilation",
            target: "product-rule",
            description: "f(qx) replaced by f(x) in the product rule",
            def: IdentityDef {
                id: "mut-product-rule-drop-dilation",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "fixed pair f=1+x, g=x^2",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || vec![Params::new(&[("pair", 0)])],
                q_degree_bound: |_| 3,
                check: mut_product_rule_dilation,
            },
        },
        MutationDef {
            name: "mut-qstirling-q1-drop-normalizer",
            target: "qstirling-q1-collapse",
            description: "1/[k]_q! normalization dropped at q = 1",
            def: IdentityDef {
                id: "mut-qstirling-q1-drop-normalizer",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "2<=k<=3, n=k..4",
                q_policy: SingleQOne,
                allows_q_one: true,
                instances: || {
                    let mut out = Vec::new();
                    for k in 2..=3i64 {
                        for n in k..=4 {
                            out.push(Params::new(&[("n", n), ("k", k)]));
                        }
                    }
                    out
                },
                q_degree_bound: |_| 0,
                check: mut_qstirling_q1,
            },
        },
        MutationDef {
            name: "mut-thm2-wrong-node-scale",
            target: "thm2-delta-form",
            description: "nodes scaled by [n+1]_q instead of [n]_q",
            def: IdentityDef {
                id: "mut-thm2-wrong-node-scale",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || range_n(1, 3),
                q_degree_bound: |_| 3,
                check: mut_thm2_nodes,
            },
        },
        MutationDef {
            name: "mut-prop1-drop-sign",
            target: "prop1-expansion",
            description: "(-1)^{m-k} alternating sign dropped",
            def: IdentityDef {
                id: "mut-prop1-drop-sign",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "1<=n<=3, f = 1",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || range_n(1, 3),
                q_degree_bound: |_| 3,
                check: mut_prop1_sign,
            },
        },
        MutationDef {
            name: "mut-linear-precision-shifted-weight",
            target: "linear-precision",
            description: "weights [k]_q/[n]_q replaced by [k+1]_q/[n]_q",
            def: IdentityDef {
                id: "mut-linear-precision-shifted-weight",
                summary: "mutation",
                mode: PolyInX,
                param_ranges: "1<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || range_n(1, 3),
                q_degree_bound: |_| 3,
                check: mut_linear_precision,
            },
        },
        MutationDef {
            name: "mut-genfun-missing-kfactorial",
            target: "genfun-coefficients",
            description: "1/[k]_q! normalization dropped from the series",
            def: IdentityDef {
                id: "mut-genfun-missing-kfactorial",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=2, n=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || vec![Params::new(&[("k", 2), ("n", 3)])],
                q_degree_bound: |_| 3,
                check: mut_genfun_kfactorial,
            },
        },
        MutationDef {
            name: "mut-binom-exchange-swapped",
            target: "binom-exchange",
            description: "C(i,k)_q replaced by C(i-1,k)_q on the right side",
            def: IdentityDef {
                id: "mut-binom-exchange-swapped",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=i, 1<=i<=n<=3",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || {
                    let mut out = Vec::new();
                    for n in 1..=3i64 {
                        for i in 1..=n {
                            out.push(Params::new(&[("k", i), ("i", i), ("n", n)]));
                        }
                    }
                    out
                },
                q_degree_bound: |_| 3,
                check: mut_binom_exchange_swap,
            },
        },
        MutationDef {
            name: "mut-series-oracle-missing-shift",
            target: "series-oracle",
            description: "t^k shift omitted before coefficient extraction",
            def: IdentityDef {
                id: "mut-series-oracle-missing-shift",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=1, l=2",
                q_policy: Interpolate,
                allows_q_one: true,
                instances: || vec![Params::new(&[("k", 1), ("l", 2)])],
                q_degree_bound: |_| 3,
                check: mut_series_oracle_shift,
            },
        },
        MutationDef {
            name: "mut-cor11-drop-qfactorial-weight",
            target: "cor11-closed-form",
            description: "[m]_q!/m! weight replaced by 1",
            def: IdentityDef {
                id: "mut-cor11-drop-qfactorial-weight",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "k=1, 3<=l<=4",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || grid2("k", 1, 1, "l", 3, 4),
                q_degree_bound: |_| 3,
                check: mut_cor11_qfactorial,
            },
        },
        MutationDef {
            name: "mut-qstirling-orderings-drop-qpower",
            target: "qstirling-orderings",
            description: "q^{C(j,2)} dropped from the first ordering",
            def: IdentityDef {
                id: "mut-qstirling-orderings-drop-qpower",
                summary: "mutation",
                mode: Pointwise,
                param_ranges: "n=2, 2<=k<=3",
                q_policy: Interpolate,
                allows_q_one: false,
                instances: || grid2("n", 2, 2, "k", 2, 3),
                q_degree_bound: |_| 3,
                check: mut_qstirling_orderings,
            },
        },
    ]
}
