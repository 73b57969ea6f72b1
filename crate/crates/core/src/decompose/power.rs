//! Tensor powers in the fusion semiring and the growth sequence `b_n`.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};

use super::{Decomposition, FusionTable};
use crate::error::{Error, Result};

/// How `a^(n)` is assembled from table products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PowerStrategy {
    /// `((a * a) * a) * ...`, one vector-table product per step.
    #[default]
    LeftToRight,
    /// Binary exponentiation.
    Squaring,
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("tensor powers start at n = 1".into()));
    }
    Ok(())
}

pub fn tensor_power_dense(
    a: &[BigUint],
    n: u32,
    t: &FusionTable,
    strategy: PowerStrategy,
) -> Result<Vec<BigUint>> {
    check_n(n)?;
    if a.len() != t.roots().len() {
        return Err(Error::LengthMismatch { expected: t.roots().len(), got: a.len() });
    }
    Ok(match strategy {
        PowerStrategy::LeftToRight => {
            let mut acc = a.to_vec();
            for _ in 1..n {
                acc = t.product(&acc, a);
            }
            acc
        }
        PowerStrategy::Squaring => {
            let mut result: Option<Vec<BigUint>> = None;
            let mut base = a.to_vec();
            let mut e = n;
            loop {
                if e & 1 == 1 {
                    result = Some(match result {
                        None => base.clone(),
                        Some(r) => t.product(&r, &base),
                    });
                }
                e >>= 1;
                if e == 0 {
                    break;
                }
                base = t.product(&base, &base);
            }
            result.expect("n >= 1")
        }
    })
}

/// Multiplicities `a^(1), ..., a^(n_max)` of successive tensor powers.
pub fn power_sequence(a: &Decomposition, n_max: u32, t: &FusionTable) -> Result<Vec<Vec<BigUint>>> {
    check_n(n_max)?;
    let base = a.to_dense(t.roots())?;
    let mut out = Vec::with_capacity(n_max as usize);
    out.push(base.clone());
    for _ in 1..n_max {
        let next = t.product(out.last().expect("nonempty"), &base);
        out.push(next);
    }
    Ok(out)
}

/// Decomposition of `M^(x)n` where `M = (+)_d a_d M(d)`.
pub fn tensor_power_decomposition(a: &Decomposition, n: u32, t: &FusionTable) -> Result<Decomposition> {
    tensor_power_decomposition_with(a, n, t, PowerStrategy::default())
}

pub fn tensor_power_decomposition_with(
    a: &Decomposition,
    n: u32,
    t: &FusionTable,
    strategy: PowerStrategy,
) -> Result<Decomposition> {
    let dense = tensor_power_dense(&a.to_dense(t.roots())?, n, t, strategy)?;
    Ok(Decomposition::from_dense(t.roots(), &dense))
}

/// Number of indecomposable summands of `M^(x)n`, with multiplicity.
pub fn b_n(a: &Decomposition, n: u32, t: &FusionTable) -> Result<BigUint> {
    Ok(tensor_power_decomposition(a, n, t)?.total())
}

/// `b_1, ..., b_{n_max}`.
pub fn b_sequence(a: &Decomposition, n_max: u32, t: &FusionTable) -> Result<Vec<BigUint>> {
    Ok(power_sequence(a, n_max, t)?.into_iter().map(|v| v.iter().sum()).collect())
}

pub const DEFAULT_DIGITS: usize = 30;

/// `b^(1/n)` truncated to `digits` significant digits, as a decimal string.
pub fn nth_root_decimal(b: &BigUint, n: u32, digits: usize) -> String {
    if b.is_zero() {
        return "0".to_string();
    }
    let int_part = b.nth_root(n);
    let int_digits = int_part.to_string().len();
    let frac = digits.saturating_sub(int_digits);
    if frac == 0 {
        return int_part.to_string();
    }
    let scale = BigUint::from(10u32).pow(frac as u32 * n);
    let scaled = (b * scale).nth_root(n).to_string();
    let (head, tail) = scaled.split_at(scaled.len() - frac);
    format!("{head}.{tail}")
}

/// The sequence `b_n^(1/n)` for `1 <= n <= n_max`.
pub fn beta_estimate(a: &Decomposition, n_max: u32, t: &FusionTable) -> Result<Vec<String>> {
    beta_estimate_with_digits(a, n_max, t, DEFAULT_DIGITS)
}

pub fn beta_estimate_with_digits(
    a: &Decomposition,
    n_max: u32,
    t: &FusionTable,
    digits: usize,
) -> Result<Vec<String>> {
    Ok(b_sequence(a, n_max, t)?
        .iter()
        .enumerate()
        .map(|(i, b)| nth_root_decimal(b, i as u32 + 1, digits))
        .collect())
}

/// Exact test of `|b^(1/n) - target| < percent% * target`.
pub fn root_within_percent(b: &BigUint, n: u32, target: &BigUint, percent: u32) -> bool {
    if percent >= 100 || target.is_zero() {
        return false;
    }
    let hundred_n = BigUint::from(100u32).pow(n);
    let lhs = b * &hundred_n;
    let low = (target * BigUint::from(100 - percent)).pow(n);
    let high = (target * BigUint::from(100 + percent)).pow(n);
    low < lhs && lhs < high
}

/// Whether every sampled pair satisfies `b_{m+n} <= b_m * b_n` (indices 1-based).
pub fn is_submultiplicative(b: &[BigUint]) -> bool {
    let n = b.len();
    (1..=n).all(|i| (1..=n).filter(|j| i + j <= n).all(|j| b[i + j - 1] <= &b[i - 1] * &b[j - 1]))
}

/// `sum_k (dim M_k)^n`.
pub fn sum_of_vertex_powers(dims: &[BigUint], n: u32) -> BigUint {
    dims.iter().map(|d| d.pow(n)).sum()
}
