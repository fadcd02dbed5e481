use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::zpoly::ZPoly;

/// Laurent polynomial in `s`, where `s^2 = q`, with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HalfPowerLaurent {
    terms: BTreeMap<i64, BigRational>,
}

impl HalfPowerLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * s^exp`.
    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        HalfPowerLaurent { terms }
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// Build from `(s-exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True iff every stored s-exponent is even.
    pub fn has_integral_q_degree(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        HalfPowerLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        HalfPowerLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Substitute `s -> s^k` (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution s -> s^0 is not invertible");
        HalfPowerLaurent {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Evaluate at a value of `s`.
    pub fn eval_s(&self, s: &BigRational) -> Option<BigRational> {
        if s.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(s, *e);
        }
        Some(acc)
    }

    /// Split as `scale * s^shift * P(s)` with `P` a primitive integer polynomial,
    /// `P(0) != 0` and positive leading coefficient. Zero maps to `None`.
    pub(crate) fn to_zparts(&self) -> Option<(BigRational, i64, ZPoly)> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        let p = ZPoly::from_coeffs(coeffs);
        let mut ct = p.content();
        if p.lc().is_negative() {
            ct = -ct;
        }
        let p = p.div_scalar(&ct);
        Some((BigRational::new(ct, den), lo, p))
    }

    pub(crate) fn from_zpoly(p: &ZPoly, scale: &BigRational, shift: i64) -> Self {
        let mut terms = BTreeMap::new();
        if scale.is_zero() {
            return HalfPowerLaurent { terms };
        }
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i as i64 + shift, scale * BigRational::from_integer(c.clone()));
            }
        }
        HalfPowerLaurent { terms }
    }

    /// Display with variable `var` standing for `q` (so `s^k` renders as `var^(k/2)`).
    pub fn render_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_power(var, *e);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn render_power(var: &str, s_exp: i64) -> String {
    if s_exp == 0 {
        String::new()
    } else if s_exp % 2 != 0 {
        format!("{var}^({s_exp}/2)")
    } else if s_exp == 2 {
        var.to_string()
    } else {
        format!("{var}^{}", s_exp / 2)
    }
}

pub(crate) fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Display for HalfPowerLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("q"))
    }
}

impl Add for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn add(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn sub(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn mul(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = HalfPowerLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn neg(self) -> HalfPowerLaurent {
        HalfPowerLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HalfPowerLaurent {
            type Output = HalfPowerLaurent;
            fn $m(self, rhs: HalfPowerLaurent) -> HalfPowerLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn render_descending_with_half_powers() {
        let p = HalfPowerLaurent::from_terms([(4, r(1, 1)), (2, r(-1, 1)), (0, r(1, 1)), (3, r(2, 3))]);
        assert_eq!(p.to_string(), "q^2 + 2/3*q^(3/2) - q + 1");
        assert!(!p.has_integral_q_degree());
        assert_eq!(HalfPowerLaurent::q_pow(-1).to_string(), "q^-1");
    }

    #[test]
    fn zparts_round_trip() {
        let p = HalfPowerLaurent::from_terms([(-2, r(-3, 2)), (1, r(9, 4))]);
        let (sc, sh, z) = p.to_zparts().unwrap();
        assert_eq!(sh, -2);
        assert!(z.lc() > &BigInt::zero());
        assert_eq!(HalfPowerLaurent::from_zpoly(&z, &sc, sh), p);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = HalfPowerLaurent::from_terms([(0, r(1, 1)), (2, r(1, 1))]);
        let b = HalfPowerLaurent::from_terms([(2, r(1, 1))]);
        assert_eq!(&a - &b, HalfPowerLaurent::one());
        assert!((&b - &b).is_zero());
    }
}
