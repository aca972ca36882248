//! Floating-point experiment harness for the q-Bernstein operator.
//!
//! Basis weights are computed exactly over the rationals and converted to
//! binary64 afterwards, so weight sums stay at 1 to ulp scale and the
//! alternating power-basis form never gets a chance to cancel
//! catastrophically. Only the sampled function values and the error
//! accumulation run in binary64.

use std::io::Write;
use std::path::Path;

use num::traits::{Signed, ToPrimitive, Zero};
use num::BigInt;
use thiserror::Error;

use crate::bernstein::pmf;
use crate::qcore::QParam;
use crate::{RPoly, Rational};

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("unknown function {0:?} (expected exp, sin-pi, abs-shift, runge or poly:c0,c1,...)")]
    UnknownFunction(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Built-in function registry for experiments.
///
/// `poly:c0,c1,...` carries exact rational coefficients; `exp` and `sin-pi`
/// only exist in binary64, `abs-shift` and `runge` are exactly evaluable.
#[derive(Clone, Debug)]
pub enum FunctionKind {
    Exp,
    SinPi,
    AbsShift,
    Runge,
    Poly(RPoly),
}

impl FunctionKind {
    pub fn parse(name: &str) -> Result<Self, ApproxError> {
        match name {
            "exp" => Ok(FunctionKind::Exp),
            "sin-pi" => Ok(FunctionKind::SinPi),
            "abs-shift" => Ok(FunctionKind::AbsShift),
            "runge" => Ok(FunctionKind::Runge),
            _ => {
                if let Some(list) = name.strip_prefix("poly:") {
                    let coeffs: Result<Vec<Rational>, _> =
                        list.split(',').map(|c| c.trim().parse::<Rational>()).collect();
                    match coeffs {
                        Ok(cs) if !list.trim().is_empty() => Ok(FunctionKind::Poly(RPoly::new(cs))),
                        _ => Err(ApproxError::UnknownFunction(name.to_string())),
                    }
                } else {
                    Err(ApproxError::UnknownFunction(name.to_string()))
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            FunctionKind::Exp => "exp".into(),
            FunctionKind::SinPi => "sin-pi".into(),
            FunctionKind::AbsShift => "abs-shift".into(),
            FunctionKind::Runge => "runge".into(),
            FunctionKind::Poly(p) => {
                let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                format!("poly:{}", cs.join(","))
            }
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        match self {
            FunctionKind::Exp => x.exp(),
            FunctionKind::SinPi => (std::f64::consts::PI * x).sin(),
            FunctionKind::AbsShift => (x - 0.5).abs(),
            FunctionKind::Runge => 1.0 / (1.0 + 25.0 * (x - 0.5) * (x - 0.5)),
            FunctionKind::Poly(p) => p
                .coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap()),
        }
    }

    /// Exact evaluation where the function is rational-valued.
    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        match self {
            FunctionKind::Exp | FunctionKind::SinPi => None,
            FunctionKind::AbsShift => Some((x - Rational::new(1.into(), 2.into())).abs()),
            FunctionKind::Runge => {
                let d = x - Rational::new(1.into(), 2.into());
                let one = Rational::from_integer(1.into());
                Some(one.clone() / (one + Rational::from_integer(25.into()) * d.clone() * d))
            }
            FunctionKind::Poly(p) => Some(p.eval(x)),
        }
    }
}

/// How q varies with the operator order n.
#[derive(Clone, Debug, PartialEq)]
pub enum QSchedule {
    Fixed(Rational),
    /// q_n = 1 - 1/n (needs n >= 2)
    OneMinusInverse,
    Custom(Vec<Rational>),
}

impl QSchedule {
    /// q values paired with a given degree; `Custom` yields one row per q.
    fn qs_for(&self, n: usize) -> Vec<Rational> {
        match self {
            QSchedule::Fixed(q) => vec![q.clone()],
            QSchedule::OneMinusInverse => {
                assert!(n >= 2, "q_n = 1 - 1/n needs n >= 2");
                vec![Rational::from_integer(1.into()) - Rational::new(1.into(), (n as i64).into())]
            }
            QSchedule::Custom(qs) => qs.clone(),
        }
    }

    /// Parse `fixed:1/2`, `one-minus-inverse` or `custom:1/2,2/3,...`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "one-minus-inverse" {
            return Some(QSchedule::OneMinusInverse);
        }
        if let Some(q) = s.strip_prefix("fixed:") {
            return q.trim().parse::<Rational>().ok().map(QSchedule::Fixed);
        }
        if let Some(list) = s.strip_prefix("custom:") {
            let qs: Result<Vec<Rational>, _> =
                list.split(',').map(|c| c.trim().parse::<Rational>()).collect();
            return qs.ok().filter(|v| !v.is_empty()).map(QSchedule::Custom);
        }
        None
    }
}

/// One experiment: a function, a list of operator orders, a q schedule and
/// the evaluation grid resolution.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub function: FunctionKind,
    pub degrees: Vec<usize>,
    pub schedule: QSchedule,
    pub grid_size: usize,
}

/// One measured cell of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub q: f64,
    pub sup_error: f64,
    pub mean_error: f64,
}

/// Error measurements, ordered by n ascending then q ascending.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
}

/// Unreduced exact fraction. The weight pipeline multiplies many positive
/// factors; skipping gcd reduction until the single final f64 conversion
/// keeps the exact path cheap even at n = 64.
#[derive(Clone, Debug)]
struct RawRatio {
    num: BigInt,
    den: BigInt, // always positive
}

impl RawRatio {
    fn one() -> Self {
        RawRatio { num: 1.into(), den: 1.into() }
    }

    fn mul(&self, other: &Self) -> Self {
        RawRatio {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    fn to_f64(&self) -> f64 {
        num::BigRational::new_raw(self.num.clone(), self.den.clone())
            .to_f64()
            .expect("finite ratio")
    }

    fn reduced(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }
}

/// Exact q-Bernstein weights B_{k,n}(x, q) for k = 0..=n via the product
/// form and the paired node values [k]_q/[n]_q, all as unreduced exact
/// fractions. Nonnegativity of every weight is asserted.
fn raw_weights_and_nodes(
    n: usize,
    q: &QParam<Rational>,
    x: &Rational,
) -> (Vec<RawRatio>, Vec<RawRatio>) {
    let a = q.value().numer().clone();
    let d = q.value().denom().clone();
    let xn = x.numer().clone();
    let xd = x.denom().clone();

    // powers of a and d up to n
    let mut apow = vec![BigInt::from(1)];
    let mut dpow = vec![BigInt::from(1)];
    for i in 1..=n {
        apow.push(&apow[i - 1] * &a);
        dpow.push(&dpow[i - 1] * &d);
    }
    // s_m = numerator of [m]_q over d^{m-1}: s_0 = 0, s_{m+1} = s_m d + a^m
    let mut s = vec![BigInt::from(0)];
    for m in 0..n {
        s.push(&s[m] * &d + &apow[m]);
    }

    // suffix products (1 - x q^{j-1}) for j = 1..=n
    let mut shifted = vec![RawRatio::one()];
    for j in 1..=n {
        let factor = RawRatio {
            num: &xd * &dpow[j - 1] - &xn * &apow[j - 1],
            den: &xd * &dpow[j - 1],
        };
        shifted.push(shifted[j - 1].mul(&factor));
    }

    let mut weights = Vec::with_capacity(n + 1);
    let mut nodes = Vec::with_capacity(n + 1);
    let mut binom = RawRatio::one();
    let mut xpow = RawRatio::one();
    for k in 0..=n {
        let w = binom.mul(&xpow).mul(&shifted[n - k]);
        assert!(
            w.num.sign() != num::bigint::Sign::Minus,
            "basis weight must be nonnegative for q in (0,1], x in [0,1]"
        );
        weights.push(w);
        nodes.push(RawRatio {
            num: &s[k] * &dpow[n - k],
            den: s[n].clone(),
        });
        if k < n {
            // C(n,k+1)_q = C(n,k)_q [n-k]_q / [k+1]_q
            binom = binom.mul(&RawRatio {
                num: &s[n - k] * &dpow[k],
                den: &s[k + 1] * &dpow[n - k - 1],
            });
            xpow = xpow.mul(&RawRatio { num: xn.clone(), den: xd.clone() });
        }
    }
    (weights, nodes)
}

/// Exact reduced weights (used by tests and exact consumers).
pub fn exact_weights(n: usize, q: &QParam<Rational>, x: &Rational) -> Vec<Rational> {
    raw_weights_and_nodes(n, q, x)
        .0
        .iter()
        .map(RawRatio::reduced)
        .collect()
}

/// Operator evaluation in binary64 with exact-then-converted weights.
pub fn operator_apply_f64(f: &FunctionKind, n: usize, q: &QParam<Rational>, x: &Rational) -> f64 {
    let (weights, nodes) = raw_weights_and_nodes(n, q, x);
    let mut sum = 0.0;
    for (w, node) in weights.iter().zip(&nodes) {
        sum += w.to_f64() * f.eval_f64(node.to_f64());
    }
    sum
}

/// Run the sweep: one row per (n, q) cell with sup and mean grid errors.
pub fn approximate(cfg: &ExperimentConfig) -> ErrorTable {
    assert!(cfg.grid_size >= 2, "grid needs at least the two endpoints");
    assert!(
        cfg.degrees.iter().all(|&n| n >= 1),
        "operator degrees must be positive"
    );
    let grid: Vec<Rational> = (0..cfg.grid_size)
        .map(|j| Rational::new((j as i64).into(), ((cfg.grid_size - 1) as i64).into()))
        .collect();
    let mut rows = Vec::new();
    let mut degrees = cfg.degrees.clone();
    degrees.sort_unstable();
    for &n in &degrees {
        let mut qs = cfg.schedule.qs_for(n);
        qs.sort();
        for q0 in qs {
            let q = QParam::new(q0.clone()).expect("schedule q must lie in (0, 1]");
            let mut sup = 0.0f64;
            let mut total = 0.0f64;
            for x in &grid {
                let approx = operator_apply_f64(&cfg.function, n, &q, x);
                let exact = cfg.function.eval_f64(x.to_f64().unwrap());
                let err = (approx - exact).abs();
                sup = sup.max(err);
                total += err;
            }
            rows.push(ErrorRow {
                n,
                q: q0.to_f64().unwrap(),
                sup_error: sup,
                mean_error: total / cfg.grid_size as f64,
            });
        }
    }
    ErrorTable { rows }
}

/// 17-significant-digit decimal used for every binary64 column.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render the CSV: header `n,q,sup_error,mean_error`, rows already ordered.
pub fn table_to_csv(table: &ErrorTable) -> String {
    let mut out = String::from("n,q,sup_error,mean_error\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.n,
            fmt_f64(row.q),
            fmt_f64(row.sup_error),
            fmt_f64(row.mean_error)
        ));
    }
    out
}

pub fn emit_csv(table: &ErrorTable, path: &Path) -> Result<(), ApproxError> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(table_to_csv(table).as_bytes())?;
    Ok(())
}

/// JSON mirror of the table.
pub fn table_to_json(table: &ErrorTable) -> serde_json::Value {
    serde_json::json!({
        "rows": table.rows.iter().map(|r| serde_json::json!({
            "n": r.n,
            "q": r.q,
            "sup_error": r.sup_error,
            "mean_error": r.mean_error,
        })).collect::<Vec<_>>()
    })
}

/// Exact pmf normalization check: `sum_k pmf(n, k, x, q)` as a rational.
pub fn pmf_total(n: usize, x: &Rational, q: &QParam<Rational>) -> Rational {
    (0..=n)
        .map(|k| pmf(n, k, x, q).expect("x in [0,1]"))
        .fold(Rational::zero(), |a, b| a + b)
}
