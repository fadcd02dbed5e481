//! Truncated power series in `y` over [`RationalFunctionQ`], and the
//! factorization chains that turn p-power proportions into full ones.

use rayon::prelude::*;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exactalg::{pochhammer, rat, PochBase, RationalFunctionQ};
use crate::formulas::{self, ConjIdentity, Family};
use crate::report::{Record, VerificationReport};

/// `Σ_{k < order} c_k y^k`; coefficients at or beyond `order` are never consulted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RationalFunctionQ>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![RationalFunctionQ::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, RationalFunctionQ::one())
    }

    /// `c y^k`, or zero when `k >= order`.
    pub fn monomial(order: usize, k: usize, c: RationalFunctionQ) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients from `f(k)` for each `k < order`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> RationalFunctionQ) -> Self {
        TruncatedSeries { coeffs: (0..order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, k: usize) -> Result<&RationalFunctionQ> {
        self.coeffs
            .get(k)
            .ok_or_else(|| Error::InvalidArgument(format!("coefficient {k} is beyond the truncation order {}", self.order())))
    }

    /// The same series cut to a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn coefficients(&self) -> &[RationalFunctionQ] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = (0..self.order())
            .into_par_iter()
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .map(|i| &self.coeffs[i] * &other.coeffs[k - i])
                    .sum()
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let inv0 = c0.inv()?;
        let mut out: Vec<RationalFunctionQ> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let acc: RationalFunctionQ = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero())
                .map(|i| &self.coeffs[i] * &out[k - i])
                .sum();
            out.push(-(&(&acc * &inv0)));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `(1 - y^step)^{-1}` truncated.
    pub fn geometric(order: usize, step: usize) -> Self {
        Self::from_fn(order, |k| {
            if k % step == 0 {
                RationalFunctionQ::one()
            } else {
                RationalFunctionQ::zero()
            }
        })
    }
}

/// The Steinberg series of each family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesFamily {
    U,
    Sp,
    O,
    OBar,
}

fn inv_q2_poch(j: usize) -> RationalFunctionQ {
    pochhammer(&PochBase::inv_q_squared().as_rational_function(), j)
}

fn recip(f: RationalFunctionQ) -> RationalFunctionQ {
    f.inv().expect("Steinberg coefficients are nonzero")
}

/// In even degrees only: `f(k/2)` at `y^k`.
fn even_series(order: usize, f: impl Fn(usize) -> RationalFunctionQ) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| if k % 2 == 0 { f(k / 2) } else { RationalFunctionQ::zero() })
}

pub fn build_t(family: SeriesFamily, order: usize) -> TruncatedSeries {
    let qp = RationalFunctionQ::q_pow;
    match family {
        SeriesFamily::U => TruncatedSeries::from_fn(order, |m| {
            recip(qp(m as i64) * pochhammer(&PochBase::minus_inv_q().as_rational_function(), m))
        }),
        SeriesFamily::Sp => even_series(order, |m| recip(qp(m as i64) * inv_q2_poch(m))),
        SeriesFamily::O => TruncatedSeries::from_fn(order, |m| recip(qp((m / 2) as i64) * inv_q2_poch(m / 2))),
        SeriesFamily::OBar => even_series(order, |m| recip(qp(2 * m as i64) * inv_q2_poch(m))),
    }
}

/// The chains re-executed by [`verify_chain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chain {
    U,
    Sp,
    OSum,
    ODiff,
}

impl Chain {
    pub const ALL: [Chain; 4] = [Chain::U, Chain::Sp, Chain::OSum, Chain::ODiff];

    pub fn name(self) -> &'static str {
        match self {
            Chain::U => "u",
            Chain::Sp => "sp",
            Chain::OSum => "o-sum",
            Chain::ODiff => "o-diff",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Chain::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown chain '{s}'")))
    }
}

fn rec(family: &str, k: usize, lhs: &RationalFunctionQ, rhs: &RationalFunctionQ, conj: bool, start: Instant) -> Record {
    Record::new(family, lhs, rhs, lhs == rhs)
        .param("k", k as i64)
        .conjectural(conj)
        .elapsed(start)
}

fn per_coefficient(report: &mut VerificationReport, family: &str, a: &TruncatedSeries, b: &TruncatedSeries, conj: bool) {
    let start = Instant::now();
    for (k, (x, y)) in a.coefficients().iter().zip(b.coefficients()).enumerate() {
        report.push(rec(family, k, x, y, conj, start));
    }
}

/// Rebuild `U'` from the closed forms for `u_m`, factor it, and compare the
/// resulting `d'_m` / `d_m` with the displayed closed forms.
///
/// Records are keyed by the `y`-degree `k`.
pub fn verify_chain(chain: Chain, order: usize) -> Result<VerificationReport> {
    if order < 3 {
        return Err(Error::InvalidArgument(format!("chain order must be at least 3, got {order}")));
    }
    let one = RationalFunctionQ::one();
    let qp = RationalFunctionQ::q_pow;
    let mut report = VerificationReport::default();
    match chain {
        Chain::U => {
            let t = build_t(SeriesFamily::U, order);
            let u_prime = TruncatedSeries::from_fn(order, |m| {
                if m == 0 {
                    one.clone()
                } else {
                    t.coeffs[m].sub(&formulas::delta_p_au(m).expect("m >= 1"))
                }
            });
            let geo = TruncatedSeries::geometric(order, 1);
            let d_prime = t.invert()?.mul(&geo)?.mul(&u_prime)?;
            let display = TruncatedSeries::from_fn(order, formulas::d_prime_au);
            per_coefficient(&mut report, "chain-u-dprime", &d_prime, &display, false);
            // U' = D̄ T with D̄ = Σ (d'_i - d'_{i-1}) y^i
            let d_bar = TruncatedSeries::from_fn(order, |i| {
                let i = i as i64;
                let neg = |k: i64| RationalFunctionQ::monomial(rat(if k % 2 == 0 { 1 } else { -1 }, 1), 2 * k);
                (&one - &neg(i + 1)).mul(&neg(-(i * (i + 3) / 2))).div(&(&one + &RationalFunctionQ::q())).unwrap()
            });
            per_coefficient(&mut report, "chain-u-factorization", &u_prime, &d_bar.mul(&t)?, false);
            // all class variables set to one: the display's D'_U times T_U / U'_U is (1 - y)^{-1}
            let all_ones = display.mul(&t)?.mul(&u_prime.invert()?)?;
            per_coefficient(&mut report, "chain-u-all-ones", &all_ones, &geo, false);
            let start = Instant::now();
            for m in 1..order {
                let d = &one - &d_prime.coeffs[m];
                report.push(rec("chain-u-delta", m, &d, &formulas::delta_au(m)?, false, start).param("m", m as i64));
            }
        }
        Chain::Sp => {
            let t = build_t(SeriesFamily::Sp, order);
            let u_prime = even_series(order, |m| {
                if m == 0 {
                    one.clone()
                } else {
                    t.coeffs[2 * m].sub(&formulas::conj_identity_rhs(ConjIdentity::I, m).expect("m >= 1"))
                }
            });
            let d_prime = t.invert()?.mul(&TruncatedSeries::geometric(order, 2))?.mul(&u_prime)?;
            let display = even_series(order, formulas::d_prime_sp);
            per_coefficient(&mut report, "chain-sp-dprime", &d_prime, &display, true);
            let d_bar = even_series(order, |i| {
                let i = i as i64;
                let sg = RationalFunctionQ::from_integer(if i % 2 == 0 { 1 } else { -1 });
                (sg * (qp(2 * i + 1) + one.clone()) * qp(-(i * (i + 2)))).div(&(&one + &RationalFunctionQ::q())).unwrap()
            });
            per_coefficient(&mut report, "chain-sp-factorization", &u_prime, &d_bar.mul(&t)?, true);
            let start = Instant::now();
            for m in 1..order.div_ceil(2) {
                let d = &one - &d_prime.coeffs[2 * m];
                let expect = formulas::conj_delta(Family::Asp, m)?;
                report.push(rec("chain-sp-delta", 2 * m, &d, &expect, true, start).param("m", m as i64));
            }
        }
        Chain::OSum => {
            let t_sp = build_t(SeriesFamily::Sp, order);
            let t_o = build_t(SeriesFamily::O, order);
            let one_plus_y = TruncatedSeries::one(order).add(&TruncatedSeries::monomial(order, 1, one.clone()))?;
            per_coefficient(&mut report, "chain-o-t-factorization", &t_o, &one_plus_y.mul(&t_sp)?, false);
            let u_prime = TruncatedSeries::from_fn(order, |n| {
                if n == 0 {
                    return one.clone();
                }
                let d = n / 2;
                let u = if n % 2 == 1 {
                    formulas::conj_identity_rhs(ConjIdentity::Ii, d)
                } else {
                    formulas::conj_identity_rhs(ConjIdentity::Iii, d)
                };
                t_o.coeffs[n].sub(&u.expect("valid index"))
            });
            let d_prime = t_sp.invert()?.mul(&TruncatedSeries::geometric(order, 1))?.mul(&u_prime)?;
            let display = TruncatedSeries::from_fn(order, |n| {
                if n % 2 == 0 {
                    one.clone()
                } else {
                    let d = (n / 2) as i64;
                    let sg = RationalFunctionQ::from_integer(if d % 2 == 0 { 1 } else { -1 });
                    &one + &(sg * qp(-(d + 1) * (d + 1)))
                }
            });
            per_coefficient(&mut report, "chain-o-sum-dprime", &d_prime, &display, true);
            let d_tilde = TruncatedSeries::from_fn(order, |d| {
                let sg = RationalFunctionQ::from_integer(if (d / 2) % 2 == 0 { 1 } else { -1 });
                let c = d.div_ceil(2) as i64;
                sg * qp(-c * c)
            });
            per_coefficient(&mut report, "chain-o-sum-factorization", &u_prime, &d_tilde.mul(&t_sp)?, true);
            let start = Instant::now();
            let two = RationalFunctionQ::from_integer(2);
            for n in 2..order {
                let d = &two - &d_prime.coeffs[n];
                let m = n / 2;
                let expect = if n % 2 == 1 {
                    &two * &formulas::conj_delta(Family::AoOdd, m)?
                } else {
                    formulas::conj_delta(Family::AoPlus, m)? + formulas::conj_delta(Family::AoMinus, m)?
                };
                report.push(rec("chain-o-sum-delta", n, &d, &expect, true, start).param("m", m as i64));
            }
        }
        Chain::ODiff => {
            let t_bar = build_t(SeriesFamily::OBar, order);
            let u_prime = even_series(order, |m| {
                if m == 0 {
                    one.clone()
                } else {
                    t_bar.coeffs[2 * m].sub(&formulas::u_bar_rhs(m).expect("m >= 1"))
                }
            });
            let d_prime = t_bar.invert()?.mul(&u_prime)?;
            let display = even_series(order, |m| {
                let m = m as i64;
                RationalFunctionQ::from_integer(if m % 2 == 0 { 1 } else { -1 }) * qp(-m * (m + 1))
            });
            per_coefficient(&mut report, "chain-o-diff-dprime", &d_prime, &display, false);
            let start = Instant::now();
            for m in 1..order.div_ceil(2) {
                let d = -(&d_prime.coeffs[2 * m]);
                let mi = m as i64;
                let closed = RationalFunctionQ::from_integer(if mi % 2 == 1 { 1 } else { -1 }) * qp(-mi * (mi + 1));
                let from_delta = formulas::conj_delta(Family::AoPlus, m)? - formulas::conj_delta(Family::AoMinus, m)?;
                let mut r = rec("chain-o-diff-delta", 2 * m, &d, &closed, false, start).param("m", m as i64);
                r.equal &= closed == from_delta;
                report.push(r);
            }
        }
    }
    Ok(report)
}

/// `Σ y^m / (q^m (1/q)_m) = ∏_{i≥1} (1 - y/q^i)^{-1}` modulo `y^order`.
///
/// The product is cut at `i = 2·order`; every omitted factor only changes
/// terms of `q`-degree below `-2·order`, so both sides are compared as
/// expansions at `q = ∞` down to `q^{-2·order}`.
pub fn euler_check(order: usize) -> Result<bool> {
    if order < 2 {
        return Err(Error::InvalidArgument("euler_check needs order >= 2".into()));
    }
    let window = 2 * order;
    let x = RationalFunctionQ::q_pow(-1);
    let lhs = TruncatedSeries::from_fn(order, |m| recip(RationalFunctionQ::q_pow(m as i64) * pochhammer(&x, m)));
    let mut rhs = TruncatedSeries::one(order);
    for i in 1..=window as i64 {
        let factor = TruncatedSeries::one(order).sub(&TruncatedSeries::monomial(order, 1, RationalFunctionQ::q_pow(-i)))?;
        rhs = rhs.mul(&factor.invert()?)?;
    }
    let downto = -2 * window as i64;
    Ok(lhs.coefficients().iter().zip(rhs.coefficients()).all(|(a, b)| {
        a.expand_at_infinity(downto) == b.expand_at_infinity(downto)
    }))
}

/// Jacobi's triple product `Σ_j t^{j²} z^j = ∏ (1 + z t^{2j-1})(1 + z^{-1} t^{2j-1})(1 - t^{2j})`,
/// as series in `t` up to `t^bound` with Laurent coefficients in `z` (held in the `s` slot).
pub fn jacobi_check(bound: usize) -> Result<bool> {
    if bound < 2 {
        return Err(Error::InvalidArgument("jacobi_check needs bound >= 2".into()));
    }
    let order = bound + 1;
    let z = |k: i64| RationalFunctionQ::s_pow(k);
    let mut lhs = TruncatedSeries::zero(order);
    let reach = (bound as f64).sqrt() as i64 + 1;
    for j in -reach..=reach {
        let d = (j * j) as usize;
        if d <= bound {
            lhs = lhs.add(&TruncatedSeries::monomial(order, d, z(j)))?;
        }
    }
    let mut rhs = TruncatedSeries::one(order);
    let one = TruncatedSeries::one(order);
    for j in 1..=bound.div_ceil(2) {
        let odd = 2 * j - 1;
        rhs = rhs.mul(&one.add(&TruncatedSeries::monomial(order, odd, z(1)))?)?;
        rhs = rhs.mul(&one.add(&TruncatedSeries::monomial(order, odd, z(-1)))?)?;
        rhs = rhs.mul(&one.sub(&TruncatedSeries::monomial(order, 2 * j, RationalFunctionQ::one()))?)?;
    }
    Ok(lhs == rhs)
}

/// The specialization used for cute partitions, multiplied through by `xy`:
/// `xy (F₂¹ - F₂²) = -(xy + 1) ∏_{b≥1} (1 - y x^b)(1 - y^{-1} x^{b-1})(1 - x^b)`,
/// with `F₂¹ = Σ_b x^{b(b+3)/2} (-y)^b` and `F₂² = Σ_b x^{b(b+1)/2} (-y)^b`.
/// Series in `x` up to `x^bound`, Laurent coefficients in `y`.
pub fn jacobi_specialization_check(bound: usize) -> Result<bool> {
    let order = bound + 1;
    let y = |k: i64, c: i64| RationalFunctionQ::monomial(rat(c, 1), k);
    let mut lhs = TruncatedSeries::zero(order);
    let reach = bound as i64 + 3;
    for b in -reach..=reach {
        let sg = if b % 2 == 0 { 1 } else { -1 };
        for (e, c) in [(1 + b * (b + 3) / 2, sg), (1 + b * (b + 1) / 2, -sg)] {
            if (0..order as i64).contains(&e) {
                lhs = lhs.add(&TruncatedSeries::monomial(order, e as usize, y(b + 1, c)))?;
            }
        }
    }
    let one = TruncatedSeries::one(order);
    let mut rhs = TruncatedSeries::monomial(order, 0, y(0, -1)).add(&TruncatedSeries::monomial(order, 1, y(1, -1)))?;
    for b in 1..=order {
        rhs = rhs.mul(&one.sub(&TruncatedSeries::monomial(order, b, y(1, 1)))?)?;
        rhs = rhs.mul(&one.sub(&TruncatedSeries::monomial(order, b - 1, y(-1, 1)))?)?;
        rhs = rhs.mul(&one.sub(&TruncatedSeries::monomial(order, b, y(0, 1)))?)?;
    }
    Ok(lhs == rhs)
}
