use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use super::ratfunc::RationalFunctionQ;
use crate::error::{Error, Result};

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

/// Element of Q(i)(s), kept as a pair of real rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRationalFunction {
    pub re: RationalFunctionQ,
    pub im: RationalFunctionQ,
}

impl GaussianRationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_real(re: RationalFunctionQ) -> Self {
        GaussianRationalFunction { re, im: RationalFunctionQ::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real value, or an error if the imaginary part did not cancel.
    pub fn into_real(self) -> Result<RationalFunctionQ> {
        if self.im.is_zero() {
            Ok(self.re)
        } else {
            Err(Error::NonRealResult(self.im.to_string()))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRationalFunction { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRationalFunction { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        GaussianRationalFunction { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRationalFunction {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Multiply by a real rational function.
    pub fn mul_real(&self, f: &RationalFunctionQ) -> Self {
        GaussianRationalFunction { re: self.re.mul(f), im: self.im.mul(f) }
    }

    /// Multiply by a Gaussian rational scalar.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let re_c = RationalFunctionQ::constant(c.re.clone());
        let im_c = RationalFunctionQ::constant(c.im.clone());
        GaussianRationalFunction {
            re: self.re.mul(&re_c).sub(&self.im.mul(&im_c)),
            im: self.re.mul(&im_c).add(&self.im.mul(&re_c)),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ni = n.inv()?;
        Ok(GaussianRationalFunction { re: self.re.mul(&ni), im: self.im.neg().mul(&ni) })
    }
}

impl fmt::Display for GaussianRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + i*({})", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.mul(&i), GaussianRational::one().neg());
        let z = GaussianRational::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        assert_eq!(z.mul(&z.inv().unwrap()), GaussianRational::one());
    }

    #[test]
    fn imaginary_parts_must_cancel() {
        let q = RationalFunctionQ::q();
        let a = GaussianRationalFunction::from_real(q.clone()).scale(&GaussianRational::i());
        assert!(a.clone().into_real().is_err());
        let b = a.add(&a.neg()).add(&GaussianRationalFunction::from_real(q.clone()));
        assert_eq!(b.into_real().unwrap(), q);
        let sq = a.mul(&a);
        assert_eq!(sq.into_real().unwrap(), q.mul(&q).neg());
    }
}
