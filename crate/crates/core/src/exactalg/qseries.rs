//! q-Pochhammer symbols and Gaussian binomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::HalfPowerLaurent;
use super::ratfunc::RationalFunctionQ;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// `(x)_j = (1 - x)(1 - x^2)...(1 - x^j)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &RationalFunctionQ, j: usize) -> RationalFunctionQ {
    if let Some(base) = PochBase::from_monomial(x) {
        return RationalFunctionQ::from_laurent(&base.pochhammer_laurent(j));
    }
    let one = RationalFunctionQ::one();
    let mut acc = RationalFunctionQ::one();
    let mut xi = RationalFunctionQ::one();
    for _ in 0..j {
        xi = xi.mul(x);
        acc = acc.mul(&one.sub(&xi));
    }
    acc
}

/// `[n choose k]_q`, a polynomial in `q`.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<RationalFunctionQ> {
    if k > n {
        return Err(Error::InvalidArgument(format!("gaussian_binomial: k = {k} exceeds n = {n}")));
    }
    let top = poch_poly(n);
    let bottom = poch_poly(k).mul(&poch_poly(n - k));
    let quotient = top.div_exact(&bottom).expect("Gaussian binomial is a polynomial in q");
    let p = HalfPowerLaurent::from_zpoly(&quotient.expand(2), &BigRational::one(), 0);
    Ok(RationalFunctionQ::from_laurent(&p))
}

/// `prod_{i=1..j} (1 - t^i)` as an integer polynomial in `t`.
pub(crate) fn poch_poly(j: usize) -> ZPoly {
    let mut acc = ZPoly::one();
    for i in 1..=j {
        let mut c = vec![BigInt::zero(); i + 1];
        c[0] = BigInt::one();
        c[i] = -BigInt::one();
        acc = acc.mul(&ZPoly::from_coeffs(c));
    }
    acc
}

/// Coefficients of `prod_{i=1..j} (1 - t^i)` in machine integers.
pub(crate) fn poch_coeffs_i128(j: usize) -> Vec<i128> {
    let deg = j * (j + 1) / 2;
    let mut c = vec![0i128; deg + 1];
    c[0] = 1;
    let mut cur = 0;
    for i in 1..=j {
        for d in (i..=cur + i).rev() {
            c[d] -= c[d - i];
        }
        cur += i;
    }
    c
}

/// A monomial Pochhammer base `x = sign * s^s_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochBase {
    pub sign: i8,
    pub s_exp: i64,
}

impl PochBase {
    pub const fn new(sign: i8, s_exp: i64) -> Self {
        PochBase { sign, s_exp }
    }

    /// `1/q^2`.
    pub const fn inv_q_squared() -> Self {
        PochBase::new(1, -4)
    }

    /// `-1/q`.
    pub const fn minus_inv_q() -> Self {
        PochBase::new(-1, -2)
    }

    /// The formal variable `x`, identified with `q`.
    pub const fn x() -> Self {
        PochBase::new(1, 2)
    }

    pub fn from_monomial(x: &RationalFunctionQ) -> Option<Self> {
        let p = x.as_laurent()?;
        if p.len() != 1 {
            return None;
        }
        let (e, c) = p.terms().next()?;
        if e == 0 {
            return None;
        }
        if c.is_one() {
            Some(PochBase::new(1, e))
        } else if (-c).is_one() {
            Some(PochBase::new(-1, e))
        } else {
            None
        }
    }

    pub fn as_rational_function(&self) -> RationalFunctionQ {
        RationalFunctionQ::monomial(BigRational::from_integer(self.sign.into()), self.s_exp)
    }

    /// `x^j` as a monomial `(sign, s-exponent)`.
    pub fn power(&self, j: i64) -> (i64, i64) {
        let sign = if self.sign < 0 && j.rem_euclid(2) == 1 { -1 } else { 1 };
        (sign, self.s_exp * j)
    }

    /// Substitute this base into a polynomial in `t` given by integer coefficients.
    pub fn substitute(&self, coeffs: &[i128]) -> HalfPowerLaurent {
        HalfPowerLaurent::from_terms(coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| {
            let (sg, e) = self.power(j as i64);
            (e, BigRational::from_integer(BigInt::from(*c * sg as i128)))
        }))
    }

    pub fn pochhammer_laurent(&self, j: usize) -> HalfPowerLaurent {
        self.substitute(&poch_coeffs_i128(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunctionQ {
        RationalFunctionQ::q()
    }

    fn c(k: i64) -> RationalFunctionQ {
        RationalFunctionQ::from_integer(k)
    }

    #[test]
    fn pochhammer_examples() {
        let x = q().pow(-2).unwrap();
        assert!(pochhammer(&x, 0).is_one());
        assert_eq!(pochhammer(&x, 1), c(1).sub(&x));
        // (1 + 1/q)(1 - 1/q^2), multiplied out independently
        let y = q().inv().unwrap().neg();
        let expanded = c(1) + q().inv().unwrap() - q().pow(-2).unwrap() - q().pow(-3).unwrap();
        assert_eq!(pochhammer(&y, 2), expanded);
    }

    #[test]
    fn generic_and_monomial_paths_agree() {
        let x = q().pow(-2).unwrap();
        let slow: RationalFunctionQ = (1..=6).map(|i| c(1).sub(&x.pow(i).unwrap())).product();
        assert_eq!(pochhammer(&x, 6), slow);
        let z = c(1).div(&(q() + c(1))).unwrap();
        let p = pochhammer(&z, 3);
        let expect: RationalFunctionQ = (1..=3).map(|i| c(1).sub(&z.pow(i).unwrap())).product();
        assert_eq!(p, expect);
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert!(gaussian_binomial(5, 0).unwrap().is_one());
        assert_eq!(gaussian_binomial(2, 1).unwrap(), q() + c(1));
        let expect = c(1) + q() + c(2) * q().pow(2).unwrap() + q().pow(3).unwrap() + q().pow(4).unwrap();
        assert_eq!(gaussian_binomial(4, 2).unwrap(), expect);
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn machine_coefficients_match_bigint() {
        for j in 0..12 {
            let a = poch_poly(j);
            let b: Vec<BigInt> = poch_coeffs_i128(j).into_iter().map(BigInt::from).collect();
            assert_eq!(a, ZPoly::from_coeffs(b));
        }
    }
}
