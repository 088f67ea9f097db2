//! Exact counting series.
//!
//! `A(t)` counts right 0-pyramids (Fuss–Catalan), `B(t)` all pyramids,
//! `B(t, v)` pyramids by size and left width, and `C(t)` the total left width
//! of pyramids of each size. Coefficients are exact big integers; floats only
//! show up in the asymptotic comparisons, which work on a log scale.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bigmath::{binomial, ln_big, pow_u, ratio_f64};
use crate::error::{Error, Result};
use crate::heap::PieceLength;

/// Truncated power series `c_1 t + ... + c_M t^M`. `coeffs[0]` is the
/// constant term and is always zero here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub a: PieceLength,
    pub coeffs: Vec<BigUint>,
}

impl SeriesTable {
    fn zeros(a: PieceLength, order: usize) -> Self {
        SeriesTable {
            a,
            coeffs: vec![BigUint::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, m: usize) -> &BigUint {
        &self.coeffs[m]
    }

    /// One `n a(n)` pair per line for `n = 1..=M`.
    pub fn to_bfile(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.coeffs.iter().enumerate().skip(1) {
            writeln!(s, "{m} {c}").unwrap();
        }
        s
    }

    pub fn to_csv(&self, column: &str) -> String {
        let mut s = format!("m,{column}\n");
        for (m, c) in self.coeffs.iter().enumerate().skip(1) {
            writeln!(s, "{m},{c}").unwrap();
        }
        s
    }
}

/// Triangular table of `B_{m,n}`: `rows[m][n]` for `n <= (a-1)(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateTable {
    pub a: PieceLength,
    pub rows: Vec<Vec<BigUint>>,
}

impl BivariateTable {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{m,n}`, zero outside the stored triangle.
    pub fn get(&self, m: usize, n: usize) -> BigUint {
        self.rows.get(m).and_then(|r| r.get(n)).cloned().unwrap_or_default()
    }

    /// `sum_n B_{m,n}`, i.e. the `v = 1` specialization.
    pub fn row_sum(&self, m: usize) -> BigUint {
        self.rows[m].iter().sum()
    }

    /// `sum_n n B_{m,n}`.
    pub fn first_moment(&self, m: usize) -> BigUint {
        self.rows[m].iter().enumerate().map(|(n, c)| c * n).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,count\n");
        for (m, row) in self.rows.iter().enumerate().skip(1) {
            for (n, c) in row.iter().enumerate() {
                writeln!(s, "{m},{n},{c}").unwrap();
            }
        }
        s
    }
}

fn b_of(a: PieceLength) -> u64 {
    a.get() as u64 - 1
}

/// Fuss–Catalan number `binom(am, m) / ((a-1)m + 1)`.
pub fn count_a(a: PieceLength, m: usize) -> BigUint {
    let m = m as u64;
    binomial(a.get() as u64 * m, m) / ((a.get() as u64 - 1) * m + 1)
}

/// `binom(am - 1, m - 1)`; zero for `m = 0`.
pub fn count_b(a: PieceLength, m: usize) -> BigUint {
    if m == 0 {
        return BigUint::zero();
    }
    binomial(a.get() as u64 * m as u64 - 1, m as u64 - 1)
}

/// `count_a` for every `m <= order`.
pub fn series_a_closed(a: PieceLength, order: usize) -> SeriesTable {
    let mut t = SeriesTable::zeros(a, order);
    for m in 1..=order {
        t.coeffs[m] = count_a(a, m);
    }
    t
}

/// `count_b` for every `m <= order`, each from the previous by multiplying
/// and dividing by the few factors that change.
pub fn series_b_closed(a: PieceLength, order: usize) -> SeriesTable {
    let mut t = SeriesTable::zeros(a, order);
    if order == 0 {
        return t;
    }
    let av = a.get() as u64;
    let mut cur = BigUint::one();
    t.coeffs[1] = cur.clone();
    for m in 1..order as u64 {
        // binom(n, k) -> binom(n + a, k + 1) with n = am - 1, k = m - 1
        let n = av * m - 1;
        let k = m - 1;
        for i in 1..=av {
            cur *= n + i;
        }
        let mut den = BigUint::from(k + 1);
        for i in 1..av {
            den *= n - k + i;
        }
        cur /= den;
        t.coeffs[m as usize + 1] = cur.clone();
    }
    t
}

/// Coefficients of `A = t (1 + A)^a`, computed term by term while keeping the
/// truncated powers `(1 + A)^k` for `k = 1..=a` up to date.
pub fn series_a_recursive(a: PieceLength, order: usize) -> SeriesTable {
    let k_max = a.get() as usize;
    let mut out = SeriesTable::zeros(a, order);
    // pw[k][n] = [t^n] (1 + A)^(k+1)
    let mut pw: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]; k_max];
    for m in 1..=order {
        out.coeffs[m] = pw[k_max - 1][m - 1].clone();
        let one_plus_a = |n: usize| -> BigUint {
            if n == 0 {
                BigUint::one()
            } else {
                out.coeffs[n].clone()
            }
        };
        pw[0].push(out.coeffs[m].clone());
        for k in 1..k_max {
            let c: BigUint = (0..=m).map(|i| one_plus_a(i) * &pw[k - 1][m - i]).sum();
            pw[k].push(c);
        }
    }
    out
}

/// `B = A / (1 - (a-1) A)`, through `B_m = A_m + (a-1) sum_k A_k B_{m-k}`.
pub fn series_b_from_a(a_series: &SeriesTable) -> SeriesTable {
    let a = a_series.a;
    let order = a_series.order();
    let w = b_of(a);
    let mut out = SeriesTable::zeros(a, order);
    for m in 1..=order {
        let conv: BigUint = (1..m).map(|k| &a_series.coeffs[k] * &out.coeffs[m - k]).sum();
        out.coeffs[m] = &a_series.coeffs[m] + conv * w;
    }
    out
}

/// Truncated product of two series with zero constant term.
fn mul_trunc(x: &[BigUint], y: &[BigUint], order: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); order + 1];
    for (m, slot) in out.iter_mut().enumerate().skip(2) {
        *slot = (1..m)
            .filter(|&k| k < x.len() && m - k < y.len())
            .map(|k| &x[k] * &y[m - k])
            .sum();
    }
    out
}

/// `sum_r (a-1)^(r-1) [t^m] A^r`: every composition `m_1 + ... + m_r = m`
/// contributes `(a-1)^(r-1) A_{m_1} ... A_{m_r}`, grouped by the number of
/// parts `r`.
pub fn sum_over_compositions_b(a: PieceLength, m: usize) -> BigUint {
    if m == 0 {
        return BigUint::zero();
    }
    let base = series_a_closed(a, m).coeffs;
    let mut power = base.clone();
    let mut total = BigUint::zero();
    for r in 1..=m {
        total += &power[m] * pow_u(b_of(a), r as u32 - 1);
        if r < m {
            power = mul_trunc(&power, &base, m);
        }
    }
    total
}

/// Same sum as [`sum_over_compositions_b`], but visiting each of the
/// `2^(m-1)` compositions separately. Refuses when that exceeds `budget`.
pub fn sum_over_compositions_b_explicit(a: PieceLength, m: usize, budget: u64) -> Result<BigUint> {
    if m == 0 {
        return Ok(BigUint::zero());
    }
    let n = 1u128 << (m - 1).min(127);
    if n > budget as u128 {
        return Err(Error::budget(format!("compositions of {m}"), n, budget));
    }
    let am: Vec<BigUint> = (0..=m).map(|k| count_a(a, k)).collect();
    let w = b_of(a);
    let mut total = BigUint::zero();
    // bit i of the mask set = a cut after position i + 1
    for mask in 0u64..n as u64 {
        let mut prod = BigUint::one();
        let mut last = 0;
        for i in 0..m - 1 {
            if mask >> i & 1 == 1 {
                prod *= &am[i + 1 - last];
                prod *= w;
                last = i + 1;
            }
        }
        prod *= &am[m - last];
        total += prod;
    }
    Ok(total)
}

/// `B(t, v) = A(t) (1 + (v + ... + v^(a-1)) B(t, v))`.
pub fn series_b_bivariate(a: PieceLength, order: usize) -> BivariateTable {
    let w = b_of(a) as usize;
    let am = series_a_closed(a, order).coeffs;
    let mut rows: Vec<Vec<BigUint>> = vec![Vec::new()];
    // shifted[j] = (v + ... + v^(a-1)) * B_j(v)
    let mut shifted: Vec<Vec<BigUint>> = vec![Vec::new()];
    for m in 1..=order {
        let mut row = vec![BigUint::zero(); w * (m - 1) + 1];
        row[0] = am[m].clone();
        for k in 1..m {
            for (n, c) in shifted[m - k].iter().enumerate() {
                if !c.is_zero() {
                    row[n] += &am[k] * c;
                }
            }
        }
        let mut sh = vec![BigUint::zero(); row.len() + w];
        for (n, c) in row.iter().enumerate() {
            for d in 1..=w {
                sh[n + d] += c;
            }
        }
        shifted.push(sh);
        rows.push(row);
    }
    BivariateTable { a, rows }
}

/// `C = (a(a-1)/2) B^2`, the total left width by size.
pub fn series_c(a: PieceLength, order: usize) -> SeriesTable {
    let b = series_b_closed(a, order);
    series_c_from_b(&b)
}

pub fn series_c_from_b(b: &SeriesTable) -> SeriesTable {
    let a = b.a;
    let av = a.get() as u64;
    let factor = av * (av - 1) / 2;
    let coeffs: Vec<BigUint> = (0..=b.order())
        .into_par_iter()
        .map(|m| {
            let s: BigUint = (1..m).map(|k| &b.coeffs[k] * &b.coeffs[m - k]).sum();
            s * factor
        })
        .collect();
    SeriesTable { a, coeffs }
}

/// The single coefficient `C_m`, without the lower ones.
pub fn c_coefficient(a: PieceLength, m: usize) -> BigUint {
    let b = series_b_closed(a, m);
    let av = a.get() as u64;
    let s: BigUint = (1..m).into_par_iter().map(|k| &b.coeffs[k] * &b.coeffs[m - k]).sum();
    s * (av * (av - 1) / 2)
}

/// Twice the average left width plus `a`: `2 C_m / B_m + a`.
pub fn average_width_exact(a: PieceLength, m: usize) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    Ok(average_width_from(a, &c_coefficient(a, m), &count_b(a, m)))
}

fn average_width_from(a: PieceLength, c: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(c * 2u32), BigInt::from(b.clone())) + BigRational::from_integer(a.get().into())
}

/// `sqrt((pi/2) a (a-1) m)`.
pub fn average_width_asymptote(a: PieceLength, m: usize) -> f64 {
    let av = a.get() as f64;
    (PI / 2.0 * av * (av - 1.0) * m as f64).sqrt()
}

/// Ratio of the exact average width to its asymptote for every `m <= order`,
/// as `(m, exact, asymptote, ratio)` rows.
pub fn width_ratio_table(a: PieceLength, order: usize) -> Vec<(usize, f64, f64, f64)> {
    let b = series_b_closed(a, order);
    let c = series_c_from_b(&b);
    let av = a.get() as f64;
    (1..=order)
        .map(|m| {
            let exact = 2.0 * ratio_f64(&c.coeffs[m], &b.coeffs[m]) + av;
            let asym = average_width_asymptote(a, m);
            (m, exact, asym, exact / asym)
        })
        .collect()
}

/// Location of the dominant singularity of `A(t)` and the constant of the
/// square-root behaviour there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityData {
    /// `(a-1)^(a-1) / a^a`
    #[serde(serialize_with = "ser_rational")]
    pub t0: BigRational,
    /// `1 / (a-1)`
    #[serde(serialize_with = "ser_rational")]
    pub a_at_t0: BigRational,
    /// `(a-1)^(-2) sqrt(2a(a-1))`
    pub c0: f64,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn singularity_data(a: PieceLength) -> SingularityData {
    let av = a.get() as u64;
    let w = av - 1;
    let t0 = BigRational::new(BigInt::from(pow_u(w, w as u32)), BigInt::from(pow_u(av, av as u32)));
    let a_at_t0 = BigRational::new(BigInt::one(), BigInt::from(w));
    let (af, wf) = (av as f64, w as f64);
    SingularityData {
        t0,
        a_at_t0,
        c0: (2.0 * af * wf).sqrt() / (wf * wf),
    }
}

/// `ln(1/t0) = a ln a - (a-1) ln(a-1)`.
fn ln_inv_t0(a: PieceLength) -> f64 {
    let af = a.get() as f64;
    let wf = af - 1.0;
    let wl = if wf == 1.0 { 0.0 } else { wf * wf.ln() };
    af * af.ln() - wl
}

/// `ln` of `(2 pi a (a-1) m)^(-1/2) (a^a / (a-1)^(a-1))^m`.
pub fn stirling_ln_b(a: PieceLength, m: usize) -> f64 {
    let af = a.get() as f64;
    let mf = m as f64;
    -0.5 * (2.0 * PI * af * (af - 1.0) * mf).ln() + mf * ln_inv_t0(a)
}

/// `ln` of `(1/4) t0^(-m)`.
pub fn c_asymptote_ln(a: PieceLength, m: usize) -> f64 {
    0.25f64.ln() + m as f64 * ln_inv_t0(a)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub m: usize,
    pub exact_ln: f64,
    pub asymptote_ln: f64,
    /// exact / asymptote
    pub ratio: f64,
}

impl AsymptoticReport {
    fn new(m: usize, exact_ln: f64, asymptote_ln: f64) -> Self {
        AsymptoticReport {
            m,
            exact_ln,
            asymptote_ln,
            ratio: (exact_ln - asymptote_ln).exp(),
        }
    }
}

pub fn b_asymptotic_report(a: PieceLength, m: usize) -> AsymptoticReport {
    AsymptoticReport::new(m, ln_big(&count_b(a, m)), stirling_ln_b(a, m))
}

/// Comparison of the exact `C_m` with `(1/4) t0^(-m)`; `m >= 2`.
pub fn c_asymptotic_report(a: PieceLength, m: usize) -> Result<AsymptoticReport> {
    if m < 2 {
        return Err(Error::InvalidArgument("C_m vanishes below m = 2".into()));
    }
    Ok(AsymptoticReport::new(
        m,
        ln_big(&c_coefficient(a, m)),
        c_asymptote_ln(a, m),
    ))
}

/// Coefficients of `A - t (1 + A)^a` through the order of `a_series`.
pub fn fixed_point_residual(a_series: &SeriesTable) -> Vec<BigInt> {
    let order = a_series.order();
    let mut one_plus: Vec<BigUint> = a_series.coeffs.clone();
    one_plus[0] = BigUint::one();
    let mut power = vec![BigUint::zero(); order + 1];
    power[0] = BigUint::one();
    for _ in 0..a_series.a.get() {
        let mut next = vec![BigUint::zero(); order + 1];
        for (i, x) in one_plus.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in power.iter().enumerate().take(order + 1 - i) {
                next[i + j] += x * y;
            }
        }
        power = next;
    }
    (0..=order)
        .map(|m| {
            let rhs = if m == 0 { BigUint::zero() } else { power[m - 1].clone() };
            BigInt::from(a_series.coeffs[m].clone()) - BigInt::from(rhs)
        })
        .collect()
}
