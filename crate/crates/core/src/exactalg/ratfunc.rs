use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::laurent::{pow_rational, HalfPowerLaurent};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Reduced quotient of Laurent polynomials in `s = q^{1/2}`.
///
/// Internally `scale * s^shift * num(s) / den(s)` where `num`, `den` are
/// coprime primitive integer polynomials with nonzero constant terms and
/// positive leading coefficients. This is a canonical form, so structural
/// equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    scale: BigRational,
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        RationalFunctionQ {
            scale: BigRational::zero(),
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunctionQ { scale: c, shift: 0, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * s^k`.
    pub fn monomial(c: BigRational, s_exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunctionQ { scale: c, shift: s_exp, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn s() -> Self {
        Self::s_pow(1)
    }

    pub fn q() -> Self {
        Self::s_pow(2)
    }

    pub fn s_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn from_laurent(p: &HalfPowerLaurent) -> Self {
        match p.to_zparts() {
            None => Self::zero(),
            Some((scale, shift, num)) => RationalFunctionQ { scale, shift, num, den: ZPoly::one() },
        }
    }

    /// `num / den`, reduced.
    pub fn new(num: &HalfPowerLaurent, den: &HalfPowerLaurent) -> Result<Self> {
        let (ds, dsh, dp) = den.to_zparts().ok_or(Error::DivisionByZero)?;
        let Some((ns, nsh, np)) = num.to_zparts() else {
            return Ok(Self::zero());
        };
        Ok(Self::reduce_parts(ns / ds, nsh - dsh, np, dp))
    }

    /// Canonicalize from parts where `num`, `den` are primitive, nonzero at 0,
    /// with positive leading coefficients, but not necessarily coprime.
    fn reduce_parts(scale: BigRational, shift: i64, num: ZPoly, den: ZPoly) -> Self {
        if den.is_one() || num.is_one() {
            return RationalFunctionQ { scale, shift, num, den };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return RationalFunctionQ { scale, shift, num, den };
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        RationalFunctionQ { scale, shift, num, den }.fix_signs()
    }

    /// Dividing by a positive-lc gcd keeps leading coefficients positive, but
    /// primitivity and sign are restored here defensively.
    fn fix_signs(mut self) -> Self {
        for (p, flip) in [(&mut self.num, false), (&mut self.den, true)] {
            let mut ct = p.content();
            if p.lc().is_negative() {
                ct = -ct;
            }
            if !ct.is_one() {
                *p = p.div_scalar(&ct);
                let c = BigRational::from_integer(ct);
                if flip {
                    self.scale /= c;
                } else {
                    self.scale *= c;
                }
            }
        }
        self
    }

    /// Normalize an arbitrary integer polynomial numerator over a denominator.
    fn from_raw(scale: BigRational, shift: i64, num: ZPoly, den: ZPoly, reduce: bool) -> Self {
        if num.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let lo = num.low_order();
        let num = num.shift_down(lo);
        let mut ct = num.content();
        if num.lc().is_negative() {
            ct = -ct;
        }
        let num = num.div_scalar(&ct);
        let scale = scale * BigRational::from_integer(ct);
        let shift = shift + lo as i64;
        if reduce {
            Self::reduce_parts(scale, shift, num, den)
        } else {
            RationalFunctionQ { scale, shift, num, den }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True iff the value is a Laurent polynomial.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator in the canonical spec view: denominator has leading
    /// coefficient 1 and minimal s-exponent 0.
    pub fn numerator(&self) -> HalfPowerLaurent {
        let lc = BigRational::from_integer(self.den.lc().clone());
        HalfPowerLaurent::from_zpoly(&self.num, &(&self.scale / lc), self.shift)
    }

    pub fn denominator(&self) -> HalfPowerLaurent {
        let lc = BigRational::from_integer(self.den.lc().clone());
        HalfPowerLaurent::from_zpoly(&self.den, &lc.recip(), 0)
    }

    /// Defined as a Laurent polynomial, if it is one.
    pub fn as_laurent(&self) -> Option<HalfPowerLaurent> {
        self.den.is_one().then(|| self.numerator())
    }

    /// True iff numerator and denominator involve only integral powers of `q`.
    pub fn has_integral_q_degree(&self) -> bool {
        let even = |p: &ZPoly| p.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || i % 2 == 0);
        self.is_zero() || (self.shift % 2 == 0 && even(&self.num) && even(&self.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunctionQ { scale: -self.scale.clone(), ..self.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunctionQ {
            scale: self.scale.recip(),
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let scale = &self.scale * &other.scale;
        let shift = self.shift + other.shift;
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        RationalFunctionQ { scale, shift, num: n1.mul(&n2), den: d1.mul(&d2) }.fix_signs()
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let shift = self.shift.min(other.shift);
        let l = self.scale.denom().lcm(other.scale.denom());
        let a = self.scale.numer() * (&l / self.scale.denom());
        let b = other.scale.numer() * (&l / other.scale.denom());
        let t1 = self.num.mul(&d2).scale(&a).shift_up((self.shift - shift) as usize);
        let t2 = other.num.mul(&d1).scale(&b).shift_up((other.shift - shift) as usize);
        let m = t1.add(&t2);
        if m.is_zero() {
            return Self::zero();
        }
        // The new numerator can only share factors with g.
        let scale = BigRational::new(BigInt::one(), l);
        let raw = Self::from_raw(scale, shift, m, ZPoly::one(), false);
        let (num, g_rest) = if g.is_one() { (raw.num.clone(), g) } else { cancel(&raw.num, &g) };
        RationalFunctionQ {
            scale: raw.scale,
            shift: raw.shift,
            num,
            den: g_rest.mul(&d1).mul(&d2),
        }
        .fix_signs()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        if base.is_zero() {
            return Ok(if e == 0 { Self::one() } else { Self::zero() });
        }
        let e32 = u32::try_from(e).map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))?;
        Ok(RationalFunctionQ {
            scale: num_traits::pow(base.scale.clone(), e as usize),
            shift: base.shift * e as i64,
            num: base.num.pow(e32),
            den: base.den.pow(e32),
        })
    }

    /// Substitute `s -> s^k`; for `k < 0` this composes with `s -> 1/s`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution s -> s^0 is not invertible");
        if self.is_zero() {
            return Self::zero();
        }
        let base = if k < 0 { self.reflect() } else { self.clone() };
        let g = k.unsigned_abs() as usize;
        RationalFunctionQ {
            scale: base.scale.clone(),
            shift: base.shift * g as i64,
            num: base.num.expand(g),
            den: base.den.expand(g),
        }
    }

    /// `f(1/s)`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let shift = -self.shift - self.num.degree() as i64 + self.den.degree() as i64;
        RationalFunctionQ {
            scale: self.scale.clone(),
            shift,
            num: self.num.reversed(),
            den: self.den.reversed(),
        }
        .fix_signs()
    }

    /// Evaluate at `s`.
    pub fn eval_at_s(&self, s: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluation(s.to_string()));
        }
        if s.is_zero() && self.shift < 0 {
            return Err(Error::PoleAtEvaluation(s.to_string()));
        }
        Ok(&self.scale * pow_rational(s, self.shift) * self.num.eval(s) / d)
    }

    /// Evaluate at a rational `q`. Half-integral values need `q` to be a rational square.
    pub fn eval_at_q(&self, q: &BigRational) -> Result<BigRational> {
        if q.is_zero() {
            return Err(Error::PoleAtEvaluation("0".into()));
        }
        if self.has_integral_q_degree() {
            let half = self.substitute_half();
            return half.eval_at_s(q);
        }
        let s = rational_sqrt(q).ok_or_else(|| Error::NonSquareQ(q.to_string()))?;
        self.eval_at_s(&s)
    }

    /// Rewrite an integral-degree value in the variable `q` (i.e. `s^2 -> s`).
    fn substitute_half(&self) -> Self {
        let compress = |p: &ZPoly| {
            ZPoly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect())
        };
        RationalFunctionQ {
            scale: self.scale.clone(),
            shift: self.shift / 2,
            num: compress(&self.num),
            den: compress(&self.den),
        }
    }

    /// Expansion about `s = 0`: coefficients of `s^k` for all `k <= upto`.
    pub fn expand_at_zero(&self, upto: i64) -> BTreeMap<i64, BigRational> {
        let mut out = BTreeMap::new();
        if self.is_zero() || upto < self.shift {
            return out;
        }
        let n = (upto - self.shift) as usize + 1;
        // power series of num/den up to s^{n-1}, exact over Q since den(0) != 0
        let d = self.den.coeffs();
        let d0 = BigRational::from_integer(d[0].clone());
        let mut series: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = BigRational::from_integer(self.num.coeffs().get(k).cloned().unwrap_or_default());
            for j in 1..=k.min(d.len() - 1) {
                if !d[j].is_zero() {
                    acc -= BigRational::from_integer(d[j].clone()) * &series[k - j];
                }
            }
            series.push(acc / &d0);
        }
        for (k, c) in series.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(self.shift + k as i64, c * &self.scale);
            }
        }
        out
    }

    /// Expansion about `s = infinity`: coefficients of `s^k` for all `k >= downto`.
    pub fn expand_at_infinity(&self, downto: i64) -> BTreeMap<i64, BigRational> {
        self.reflect()
            .expand_at_zero(-downto)
            .into_iter()
            .map(|(k, c)| (-k, c))
            .collect()
    }

    /// Render with `var` standing for `q`.
    pub fn render_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut num = self.numerator();
        let mut den = self.denominator();
        if let Some(lo) = num.min_exp().filter(|&e| e < 0) {
            num = num.shift(-lo);
            den = den.shift(-lo);
        }
        let clear = num.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        if !clear.is_one() {
            let k = BigRational::from_integer(clear);
            num = num.scale(&k);
            den = den.scale(&k);
        }
        let ns = num.render_with(var);
        if den.len() == 1 && den.coeff(0).is_one() {
            return ns;
        }
        let simple_num = num.len() == 1 && num.terms().all(|(e, c)| e == 0 || c.is_integer());
        let ns = if simple_num { ns } else { format!("({ns})") };
        let ds = den.render_with(var);
        let ds = if den.len() > 1 || den.terms().any(|(e, c)| e != 0 && !c.is_one()) {
            format!("({ds})")
        } else {
            ds
        };
        format!("{ns}/{ds}")
    }

    /// Sum `terms` over a caller-supplied common denominator with a single
    /// final reduction. Every term's reduced denominator must divide `common`
    /// up to a monomial; otherwise this falls back to pairwise addition.
    pub fn sum_over(common: &HalfPowerLaurent, terms: &[RationalFunctionQ]) -> Result<Self> {
        let (_, _, cpoly) = common.to_zparts().ok_or(Error::DivisionByZero)?;
        let mut acc = ZPoly::zero();
        let mut acc_shift: Option<i64> = None;
        let mut acc_den = BigInt::one();
        let mut pending: Vec<(BigRational, i64, ZPoly)> = Vec::with_capacity(terms.len());
        for t in terms.iter().filter(|t| !t.is_zero()) {
            let Some(cof) = cpoly.div_exact(&t.den) else {
                let direct = terms.iter().fold(Self::zero(), |a, b| a + b);
                return Ok(direct);
            };
            pending.push((t.scale.clone(), t.shift, t.num.mul(&cof)));
        }
        for (_, sh, _) in &pending {
            acc_shift = Some(acc_shift.map_or(*sh, |a: i64| a.min(*sh)));
        }
        let Some(base) = acc_shift else {
            return Ok(Self::zero());
        };
        for (sc, _, _) in &pending {
            acc_den = acc_den.lcm(sc.denom());
        }
        for (sc, sh, p) in pending {
            let k = sc.numer() * (&acc_den / sc.denom());
            acc = acc.add(&p.scale(&k).shift_up((sh - base) as usize));
        }
        let scale = BigRational::new(BigInt::one(), acc_den);
        Ok(Self::from_raw(scale, base, acc, cpoly, true))
    }
}

/// Remove the common factor of `a` and `b`.
fn cancel(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
    if a.is_one() || b.is_one() {
        return (a.clone(), b.clone());
    }
    let g = a.gcd(b);
    if g.is_one() {
        return (a.clone(), b.clone());
    }
    (a.div_exact(&g).expect("gcd divides"), b.div_exact(&g).expect("gcd divides"))
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("q"))
    }
}

impl From<&HalfPowerLaurent> for RationalFunctionQ {
    fn from(p: &HalfPowerLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for RationalFunctionQ {
    fn from(c: i64) -> Self {
        Self::from_integer(c)
    }
}

impl From<BigRational> for RationalFunctionQ {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
                RationalFunctionQ::$m(self, rhs)
            }
        }
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                RationalFunctionQ::$m(&self, &rhs)
            }
        }
        impl $tr<&RationalFunctionQ> for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
                RationalFunctionQ::$m(&self, rhs)
            }
        }
        impl $tr<RationalFunctionQ> for &RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                RationalFunctionQ::$m(self, &rhs)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    /// Panics on division by zero; use [`RationalFunctionQ::div`] to handle it.
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        RationalFunctionQ::div(self, rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ::neg(self)
    }
}

impl std::iter::Sum for RationalFunctionQ {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a.add(&b))
    }
}

impl std::iter::Product for RationalFunctionQ {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a.mul(&b))
    }
}
