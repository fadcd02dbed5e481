//! Closed forms: derangement proportions, the identities behind them,
//! classical group orders and unipotent (Steinberg) proportions.
//!
//! Every function returns an exact [`RationalFunctionQ`]. Formulas in the
//! formal variable `x` use the same ring with `x` read in place of `q`.

use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::{pochhammer, rat, PochBase, RationalFunctionQ};

/// An affine classical group family, indexed by its dimension parameter `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Agl,
    Au,
    Asp,
    AoOdd,
    AoPlus,
    AoMinus,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Agl, Family::Au, Family::Asp, Family::AoOdd, Family::AoPlus, Family::AoMinus];

    pub fn name(self) -> &'static str {
        match self {
            Family::Agl => "agl",
            Family::Au => "au",
            Family::Asp => "asp",
            Family::AoOdd => "ao-odd",
            Family::AoPlus => "ao-plus",
            Family::AoMinus => "ao-minus",
        }
    }

    pub fn linear_name(self) -> &'static str {
        match self {
            Family::Agl => "GL",
            Family::Au => "U",
            Family::Asp => "Sp",
            Family::AoOdd => "O-odd",
            Family::AoPlus => "O-plus",
            Family::AoMinus => "O-minus",
        }
    }

    /// Degree of the field of definition over `F_q`.
    pub fn e(self) -> u32 {
        if self == Family::Au {
            2
        } else {
            1
        }
    }

    /// Dimension of the natural module for parameter `m`.
    pub fn dimension(self, m: usize) -> usize {
        match self {
            Family::Agl | Family::Au => m,
            Family::Asp | Family::AoPlus | Family::AoMinus => 2 * m,
            Family::AoOdd => 2 * m + 1,
        }
    }

    pub fn needs_odd_q(self) -> bool {
        matches!(self, Family::Asp | Family::AoOdd | Family::AoPlus | Family::AoMinus)
    }

    /// Whether the closed form for δ rests on an unproved identity.
    pub fn delta_is_conjectural(self) -> bool {
        self.needs_odd_q()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{s}'")))
    }
}

/// Which identity of the conjectured family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConjIdentity {
    /// Symplectic, size `2m`.
    I,
    /// Orthogonal, size `2m + 1`.
    Ii,
    /// Orthogonal, size `2m`.
    Iii,
}

fn q() -> RationalFunctionQ {
    RationalFunctionQ::q()
}

fn qp(k: i64) -> RationalFunctionQ {
    RationalFunctionQ::q_pow(k)
}

/// `(-q)^k`.
fn neg_qp(k: i64) -> RationalFunctionQ {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    RationalFunctionQ::monomial(rat(sign, 1), 2 * k)
}

fn sign(k: i64) -> RationalFunctionQ {
    RationalFunctionQ::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn poch(base: PochBase, j: usize) -> RationalFunctionQ {
    pochhammer(&base.as_rational_function(), j)
}

fn x() -> RationalFunctionQ {
    PochBase::x().as_rational_function()
}

fn xp(k: i64) -> RationalFunctionQ {
    RationalFunctionQ::q_pow(k)
}

fn div(a: &RationalFunctionQ, b: &RationalFunctionQ) -> RationalFunctionQ {
    a.div(b).expect("closed-form denominators are nonzero")
}

fn one_plus_q() -> RationalFunctionQ {
    RationalFunctionQ::one() + q()
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument("m must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn delta_agl(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    Ok((1..=m as i64).map(|i| sign(i - 1) * qp(-(i * (i + 1) / 2))).sum())
}

pub fn delta_au(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let m = m as i64;
    let inner = RationalFunctionQ::one() - neg_qp(-(m * (m + 3) / 2));
    Ok(div(&inner, &one_plus_q()))
}

/// The partial sum `d'_m` whose complement is [`delta_au`].
pub fn d_prime_au(m: usize) -> RationalFunctionQ {
    let s: RationalFunctionQ = (0..=m as i64)
        .map(|i| (RationalFunctionQ::one() - neg_qp(i + 1)) * neg_qp(-(i * (i + 3) / 2)))
        .sum();
    div(&s, &one_plus_q())
}

pub fn delta_p_au(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let s: RationalFunctionQ = (1..=mi)
        .map(|i| {
            let num = sign(i) * (neg_qp(i + 1) - RationalFunctionQ::one());
            let den = neg_qp(i * (i + 1) / 2) * poch(PochBase::minus_inv_q(), (mi - i) as usize);
            div(&num, &den)
        })
        .sum();
    Ok(div(&s, &(qp(mi) * one_plus_q())))
}

/// Generating function of cute partitions with exactly `m` parts.
pub fn genfun_cute_rhs(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let s: RationalFunctionQ = (1..=mi)
        .map(|i| {
            let num = sign(i) * xp(i * (i - 1) / 2) * (xp(i) - RationalFunctionQ::one());
            div(&num, &poch(PochBase::x(), (mi - i) as usize))
        })
        .sum();
    Ok(div(&(xp(mi) * s), &(RationalFunctionQ::one() - x())))
}

/// Generating function of partitions with `m` parts having a fixed point `λ_k = k`.
pub fn g_rhs(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let s: RationalFunctionQ = (1..=mi)
        .map(|i| div(&(sign(i - 1) * xp(i * (i - 1) / 2)), &poch(PochBase::x(), (mi - i) as usize)))
        .sum();
    Ok(xp(mi) * s)
}

/// `G` in Durfee-square form.
pub fn g_durfee(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    durfee_sum(m, |mi, j| (mi - j) * (mi - j) + j)
}

pub fn k_rhs(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    durfee_sum(m, |mi, j| (mi - j) * (mi - j) + mi - 1)
}

fn durfee_sum(m: usize, exponent: impl Fn(i64, i64) -> i64) -> Result<RationalFunctionQ> {
    let mi = m as i64;
    let top = poch(PochBase::x(), m - 1);
    Ok((0..mi)
        .map(|j| {
            let inner = poch(PochBase::x(), (mi - j - 1) as usize);
            let den = &inner * &inner * poch(PochBase::x(), j as usize);
            div(&(xp(exponent(mi, j)) * &top), &den)
        })
        .sum())
}

/// `H` in the simplified single-sum form.
pub fn h_rhs(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let s: RationalFunctionQ = (1..=mi)
        .map(|i| {
            let num = sign(i) * xp(i * (i + 1) / 2) * (RationalFunctionQ::one() - xp(-(i + 1)));
            div(&num, &poch(PochBase::x(), (mi - i) as usize))
        })
        .sum();
    Ok(div(&(xp(mi + 1) * s), &(RationalFunctionQ::one() - x())))
}

/// Conjectured closed form for δ of the symplectic and orthogonal families.
pub fn conj_delta(family: Family, m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let half = RationalFunctionQ::from(rat(1, 2));
    match family {
        Family::Asp => {
            let inner = RationalFunctionQ::one() - neg_qp(-(mi * (mi + 2)));
            Ok(div(&inner, &one_plus_q()))
        }
        Family::AoOdd => Ok(&half + &(&half * sign(mi - 1) * qp(-((mi + 1) * (mi + 1))))),
        Family::AoPlus => Ok(&half + &(&half * sign(mi - 1) * qp(-(mi * (mi + 1))))),
        Family::AoMinus => Ok(&half - &(&half * sign(mi - 1) * qp(-(mi * (mi + 1))))),
        Family::Agl | Family::Au => Err(Error::InvalidArgument(format!(
            "{family} has a proved closed form, not a conjectured one"
        ))),
    }
}

/// `d'_m` for the symplectic chain; its complement is [`conj_delta`] for `asp`.
pub fn d_prime_sp(m: usize) -> RationalFunctionQ {
    let s: RationalFunctionQ = (0..=m as i64)
        .map(|i| sign(i) * (qp(2 * i + 1) + RationalFunctionQ::one()) * qp(-(i * (i + 2))))
        .sum();
    div(&s, &one_plus_q())
}

/// Right-hand sides of the conjectured partition-sum identities.
/// (ii) also holds at `m = 0`, where it reads `u_1 = 1 - 1/q`.
pub fn conj_identity_rhs(which: ConjIdentity, m: usize) -> Result<RationalFunctionQ> {
    if !matches!(which, ConjIdentity::Ii) {
        check_m(m)?;
    }
    let mi = m as i64;
    let p = |j: i64| poch(PochBase::inv_q_squared(), j as usize);
    Ok(match which {
        ConjIdentity::I => {
            let s: RationalFunctionQ = (1..=mi)
                .map(|i| {
                    let num = sign(i - 1) * (qp(2 * i + 1) + RationalFunctionQ::one());
                    div(&num, &(qp(i * (i + 1)) * p(mi - i)))
                })
                .sum();
            div(&s, &(qp(mi) * one_plus_q()))
        }
        ConjIdentity::Ii => {
            let s: RationalFunctionQ =
                (0..=mi).map(|i| div(&sign(i - 1), &(qp(i * (i + 1)) * p(mi - i)))).sum();
            div(&RationalFunctionQ::one(), &(qp(mi) * p(mi))) + qp(-(mi + 1)) * s
        }
        ConjIdentity::Iii => {
            let s: RationalFunctionQ =
                (1..=mi).map(|i| div(&sign(i - 1), &(qp(i * (i - 1)) * p(mi - i)))).sum();
            qp(-mi) * s
        }
    })
}

/// The proved closed form for the difference sum `ū_{2m}`; equals `G(1/q^2)`.
pub fn u_bar_rhs(m: usize) -> Result<RationalFunctionQ> {
    check_m(m)?;
    let mi = m as i64;
    let s: RationalFunctionQ = (1..=mi)
        .map(|i| div(&sign(i - 1), &(qp(i * (i - 1)) * poch(PochBase::inv_q_squared(), (mi - i) as usize))))
        .sum();
    Ok(qp(-2 * mi) * s)
}

/// Closed form for δ of the family, and whether it is conjectural.
pub fn delta(family: Family, m: usize) -> Result<(RationalFunctionQ, bool)> {
    match family {
        Family::Agl => Ok((delta_agl(m)?, false)),
        Family::Au => Ok((delta_au(m)?, false)),
        f => Ok((conj_delta(f, m)?, true)),
    }
}

/// Closed form for δ_p (derangements of p-power order), and whether it is conjectural.
///
/// For `agl` this is `G(1/q)`; for the orthogonal families it combines the
/// conjectured sum with the proved difference.
pub fn delta_p(family: Family, m: usize) -> Result<(RationalFunctionQ, bool)> {
    check_m(m)?;
    let half = RationalFunctionQ::from(rat(1, 2));
    Ok(match family {
        Family::Agl => {
            let mi = m as i64;
            let s: RationalFunctionQ = (1..=mi)
                .map(|i| {
                    div(&(sign(i - 1) * qp(-(i * (i - 1) / 2))), &poch(PochBase::new(1, -2), (mi - i) as usize))
                })
                .sum();
            (qp(-mi) * s, false)
        }
        Family::Au => (delta_p_au(m)?, false),
        Family::Asp => (conj_identity_rhs(ConjIdentity::I, m)?, true),
        Family::AoOdd => (&half * &conj_identity_rhs(ConjIdentity::Ii, m)?, true),
        Family::AoPlus => (&half * &(conj_identity_rhs(ConjIdentity::Iii, m)? + u_bar_rhs(m)?), true),
        Family::AoMinus => (&half * &(conj_identity_rhs(ConjIdentity::Iii, m)? - u_bar_rhs(m)?), true),
    })
}

/// `|GL_n(q)|`.
pub fn order_gl(n: usize) -> RationalFunctionQ {
    let n = n as i64;
    (1..=n).map(|i| qp(i) - RationalFunctionQ::one()).product::<RationalFunctionQ>() * qp(n * (n - 1) / 2)
}

/// `|U_n(q)|`.
pub fn order_u(n: usize) -> RationalFunctionQ {
    let n = n as i64;
    (1..=n).map(|i| qp(i) - sign(i)).product::<RationalFunctionQ>() * qp(n * (n - 1) / 2)
}

fn prod_q2i_minus_one(n: i64) -> RationalFunctionQ {
    (1..=n).map(|i| qp(2 * i) - RationalFunctionQ::one()).product()
}

/// `|Sp_dim(q)|` for even `dim`.
pub fn order_sp(dim: usize) -> Result<RationalFunctionQ> {
    if dim % 2 != 0 {
        return Err(Error::InvalidArgument(format!("symplectic dimension {dim} is odd")));
    }
    let n = (dim / 2) as i64;
    Ok(qp(n * n) * prod_q2i_minus_one(n))
}

/// `|O^sign_dim(q)|`; the sign is ignored in odd dimension.
pub fn order_o(dim: usize, plus: bool) -> Result<RationalFunctionQ> {
    if dim == 0 {
        return Err(Error::InvalidArgument("orthogonal dimension must be positive".into()));
    }
    let two = RationalFunctionQ::from_integer(2);
    let n = (dim / 2) as i64;
    if dim % 2 == 1 {
        return Ok(two * qp(n * n) * prod_q2i_minus_one(n));
    }
    let eps = RationalFunctionQ::from_integer(if plus { 1 } else { -1 });
    Ok(two * qp(n * n - n) * (qp(n) - eps) * prod_q2i_minus_one(n - 1))
}

/// Order of the linear part of the family at parameter `m`.
pub fn group_order(family: Family, m: usize) -> Result<RationalFunctionQ> {
    let d = family.dimension(m);
    match family {
        Family::Agl => Ok(order_gl(d)),
        Family::Au => Ok(order_u(d)),
        Family::Asp => order_sp(d),
        Family::AoOdd | Family::AoPlus => order_o(d, true),
        Family::AoMinus => order_o(d, false),
    }
}

/// Proportion of unipotent elements in the linear part.
pub fn steinberg_proportion(family: Family, m: usize) -> Result<RationalFunctionQ> {
    let mi = m as i64;
    let one = RationalFunctionQ::one();
    Ok(match family {
        Family::Agl => div(&one, &(qp(mi) * poch(PochBase::new(1, -2), m))),
        Family::Au => div(&one, &(qp(mi) * poch(PochBase::minus_inv_q(), m))),
        Family::Asp => div(&one, &(qp(mi) * poch(PochBase::inv_q_squared(), m))),
        Family::AoOdd => div(&one, &(RationalFunctionQ::from_integer(2) * qp(mi) * poch(PochBase::inv_q_squared(), m))),
        Family::AoPlus | Family::AoMinus => {
            check_m(m)?;
            let eps = RationalFunctionQ::from_integer(if family == Family::AoPlus { 1 } else { -1 });
            let den = RationalFunctionQ::from_integer(2) * (qp(mi) - eps) * prod_q2i_minus_one(mi - 1);
            div(&qp(mi * mi - mi), &den)
        }
    })
}

/// Evaluate at an integer `q`.
pub fn eval_q(f: &RationalFunctionQ, q: u64) -> Result<BigRational> {
    f.eval_at_q(&BigRational::from_integer(q.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate, PartitionConstraint};

    fn at(f: &RationalFunctionQ, q: u64) -> BigRational {
        eval_q(f, q).unwrap()
    }

    fn x_coeffs(f: &RationalFunctionQ, upto: usize) -> Vec<BigRational> {
        let e = f.expand_at_zero(2 * upto as i64);
        (0..=upto).map(|n| e.get(&(2 * n as i64)).cloned().unwrap_or_default()).collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(delta_agl(1).unwrap(), qp(-1));
        assert_eq!(at(&delta_agl(3).unwrap(), 2), rat(25, 64));
        assert_eq!(delta_au(1).unwrap().to_string(), "(q - 1)/q^2");
        assert_eq!(at(&delta_au(2).unwrap(), 2), rat(11, 32));
        assert_eq!(delta_p_au(1).unwrap(), delta_au(1).unwrap());
        assert_eq!(genfun_cute_rhs(1).unwrap(), x());
        assert_eq!(g_rhs(1).unwrap(), x());
        assert_eq!(h_rhs(1).unwrap(), x() + xp(2));
        assert_eq!(at(&conj_delta(Family::Asp, 1).unwrap(), 3), rat(7, 27));
        assert_eq!(at(&conj_delta(Family::AoOdd, 1).unwrap(), 3), rat(41, 81));
        assert_eq!(at(&conj_delta(Family::AoPlus, 1).unwrap(), 3), rat(5, 9));
        assert_eq!(at(&conj_delta(Family::AoMinus, 1).unwrap(), 3), rat(4, 9));
        assert_eq!(conj_identity_rhs(ConjIdentity::I, 1).unwrap().to_string(), "(q^2 - q + 1)/q^3");
        assert_eq!(conj_identity_rhs(ConjIdentity::Iii, 1).unwrap(), qp(-1));
        assert_eq!(at(&conj_identity_rhs(ConjIdentity::Ii, 1).unwrap(), 3), rat(85, 324));
        assert_eq!(u_bar_rhs(1).unwrap(), qp(-2));
    }

    #[test]
    fn cute_series_coefficients_for_two_parts() {
        let c = x_coeffs(&genfun_cute_rhs(2).unwrap(), 6);
        let expect = [0, 0, 1, 0, 0, 1, 1];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(c[n], rat(*e, 1), "x^{n}");
        }
    }

    #[test]
    fn orders_and_unipotent_proportions() {
        assert_eq!(at(&order_u(1), 2), rat(3, 1));
        assert_eq!(at(&order_sp(2).unwrap(), 3), rat(24, 1));
        assert_eq!(at(&order_o(2, true).unwrap(), 3), rat(4, 1));
        assert_eq!(at(&order_o(3, true).unwrap(), 3), rat(48, 1));
        assert_eq!(at(&order_gl(2), 2), rat(6, 1));
        assert_eq!(at(&steinberg_proportion(Family::Asp, 1).unwrap(), 3), rat(3, 8));
        assert_eq!(steinberg_proportion(Family::Au, 1).unwrap().to_string(), "1/(q + 1)");
        assert_eq!(at(&steinberg_proportion(Family::AoPlus, 1).unwrap(), 3), rat(1, 4));
        // sum of the two even-dimensional orthogonal proportions matches the symplectic one
        for m in 1..8 {
            let s = steinberg_proportion(Family::AoPlus, m).unwrap() + steinberg_proportion(Family::AoMinus, m).unwrap();
            assert_eq!(s, steinberg_proportion(Family::Asp, m).unwrap());
        }
    }

    #[test]
    fn complements_and_telescoping() {
        for m in 1..=30 {
            let one = RationalFunctionQ::one();
            assert_eq!(delta_au(m).unwrap() + d_prime_au(m), one.clone(), "unitary m = {m}");
            assert_eq!(conj_delta(Family::Asp, m).unwrap() + d_prime_sp(m), one, "symplectic m = {m}");
        }
    }

    #[test]
    fn h_splits_as_g_plus_xk() {
        for m in 1..=20 {
            assert_eq!(h_rhs(m).unwrap(), g_rhs(m).unwrap() + x() * k_rhs(m).unwrap(), "m = {m}");
            assert_eq!(g_durfee(m).unwrap(), g_rhs(m).unwrap(), "m = {m}");
            assert_eq!(k_rhs(m).unwrap(), genfun_cute_rhs(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn p_power_unitary_is_h_at_minus_inverse_q() {
        // u_m = (-1)^m H(-1/q): substitute x -> -1/q by hand on the closed form
        for m in 1..=8 {
            let h = h_rhs(m).unwrap();
            for qn in [2u64, 3, 5] {
                let xv = rat(-1, qn as i64);
                let hv = h.eval_at_q(&xv).unwrap();
                let sgn = if m % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                assert_eq!(hv * sgn, at(&delta_p_au(m).unwrap(), qn), "m = {m}, q = {qn}");
            }
        }
    }

    #[test]
    fn proportions_lie_strictly_between_zero_and_one() {
        let zero = rat(0, 1);
        let one = rat(1, 1);
        for f in Family::ALL {
            for m in 1..=10 {
                let (d, _) = delta(f, m).unwrap();
                let (dp, _) = delta_p(f, m).unwrap();
                for qn in [2u64, 3, 4, 5, 7, 9] {
                    if f.needs_odd_q() && qn % 2 == 0 {
                        continue;
                    }
                    let v = at(&d, qn);
                    let vp = at(&dp, qn);
                    assert!(zero < v && v < one, "{f} m = {m} q = {qn}: {v}");
                    assert!(zero < vp && vp <= v, "{f} m = {m} q = {qn}: {vp} vs {v}");
                }
            }
        }
    }

    #[test]
    fn fixed_point_counts_match_g() {
        for m in 1..=8 {
            let c = x_coeffs(&g_rhs(m).unwrap(), 30);
            for (n, cn) in c.iter().enumerate() {
                let count = enumerate(n, &PartitionConstraint::ExactlyParts(m))
                    .filter(|p| p.has_fixed_point())
                    .count();
                assert_eq!(*cn, rat(count as i64, 1), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("ao".parse::<Family>().is_err());
    }
}
