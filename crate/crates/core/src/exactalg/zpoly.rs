//! Dense univariate polynomials over the integers.
//!
//! This is the work-horse behind [`RationalFunctionQ`](super::RationalFunctionQ):
//! canonical forms are kept as primitive integer polynomials, and gcds are
//! computed with a dense modular algorithm (Brown/Collins style) so that
//! reductions of degree ~10^3 stay cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// `c[i]` is the coefficient of `s^i`; no trailing zeros, the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = ZPoly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// Divide by `s^k`; the caller guarantees the low `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.c.iter().take(k).all(Zero::is_zero));
        ZPoly { c: self.c[k.min(self.c.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.c.get(i), other.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            c.push(v);
        }
        ZPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.c.len() == 1 {
            return other.scale(&self.c[0]);
        }
        if other.c.len() == 1 {
            return self.scale(&other.c[0]);
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(c)
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut result = ZPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `k`; exactness is the caller's responsibility.
    pub fn div_scalar(&self, k: &BigInt) -> ZPoly {
        if k.is_one() {
            return self.clone();
        }
        ZPoly { c: self.c.iter().map(|x| x / k).collect() }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in Z[s].
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        if d.c.len() == 1 {
            let k = &d.c[0];
            if self.c.iter().all(|x| x.is_multiple_of(k)) {
                return Some(self.div_scalar(k));
            }
            return None;
        }
        let dl = d.lc();
        let dn = d.c.len() - 1;
        let mut r = self.c.clone();
        let qn = r.len() - dn;
        let mut q = vec![BigInt::zero(); qn];
        for i in (0..qn).rev() {
            let top = &r[i + dn];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] -= &qi * b;
                }
            }
            q[i] = qi;
        }
        if r.iter().take(dn).any(|x| !x.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(q))
    }

    /// Largest `g` such that every exponent carrying a nonzero coefficient is a multiple of `g`.
    fn exponent_stride(&self) -> usize {
        let mut g = 0usize;
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() && i > 0 {
                g = g.gcd(&i);
                if g == 1 {
                    break;
                }
            }
        }
        g
    }

    /// Substitute `s^g -> s`; requires `g` to divide every occupied exponent.
    fn compress(&self, g: usize) -> ZPoly {
        if g <= 1 {
            return self.clone();
        }
        ZPoly { c: self.c.iter().step_by(g).cloned().collect() }
    }

    /// Substitute `s -> s^g`.
    pub fn expand(&self, g: usize) -> ZPoly {
        if g <= 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); (self.c.len() - 1) * g + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * g] = x.clone();
        }
        ZPoly { c }
    }

    /// Coefficients in reverse order, `s^deg * p(1/s)`.
    pub fn reversed(&self) -> ZPoly {
        let mut c = self.c.clone();
        c.reverse();
        ZPoly::from_coeffs(c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for coeff in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(coeff.clone());
        }
        acc
    }

    /// Primitive gcd with positive leading coefficient.
    ///
    /// Both inputs must be primitive. A common stride in the occupied exponents
    /// is factored out first, which halves or quarters the working degree for
    /// the q-power expressions this crate manipulates.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        let a = self.shift_down(self.low_order());
        let b = other.shift_down(other.low_order());
        gcd_core(&a, &b).shift_up(self.low_order().min(other.low_order()))
    }

    fn normalized_sign(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ct = self.content();
        let p = self.div_scalar(&ct);
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }
}

/// gcd of primitive polynomials with nonzero constant term.
fn gcd_core(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.degree() == 0 || b.degree() == 0 {
        return ZPoly::one();
    }
    let stride = a.exponent_stride().gcd(&b.exponent_stride());
    if stride > 1 {
        return gcd_core(&a.compress(stride), &b.compress(stride)).expand(stride);
    }
    if a == b {
        return a.normalized_sign();
    }
    if let Some(g) = quick_divisor(a, b) {
        return g;
    }
    modular_gcd(a, b)
}

/// If one operand divides the other, it is the gcd.
fn quick_divisor(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let (small, big) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
    if small.degree() * 4 < big.degree() && small.degree() < 64 {
        // cheap enough to just try
        if big.div_exact(small).is_some() {
            return Some(small.normalized_sign());
        }
    }
    None
}

// ---------------------------------------------------------------------------
// arithmetic modulo word-sized primes

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut n = (1u64 << 61) - 1;
        while out.len() < 512 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = x.mod_floor(&pb);
    r.to_u64().expect("residue fits in u64")
}

fn poly_mod(a: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.c.iter().map(|x| reduce_mod(x, p)).collect();
    while matches!(v.last(), Some(0)) {
        v.pop();
    }
    v
}

/// Monic gcd over GF(p).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b
        let inv = invmod(*b.last().unwrap(), p);
        let db = b.len() - 1;
        while a.len() >= b.len() {
            let top = *a.last().unwrap();
            if top != 0 {
                let f = mulmod(top, inv, p);
                let off = a.len() - 1 - db;
                for (j, &bj) in b.iter().enumerate() {
                    let t = mulmod(f, bj, p);
                    let slot = &mut a[off + j];
                    *slot = if *slot >= t { *slot - t } else { *slot + p - t };
                }
            }
            a.pop();
            while matches!(a.last(), Some(0)) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = invmod(l, p);
        for x in a.iter_mut() {
            *x = mulmod(*x, inv, p);
        }
    }
    a
}

fn modular_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lc_gcd = a.lc().gcd(b.lc());
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut acc_deg: Option<usize> = None;
    let mut previous: Option<ZPoly> = None;

    for &p in primes() {
        let la = reduce_mod(a.lc(), p);
        let lb = reduce_mod(b.lc(), p);
        if la == 0 || lb == 0 {
            continue;
        }
        let gp = gcd_mod(poly_mod(a, p), poly_mod(b, p), p);
        let d = gp.len() - 1;
        if d == 0 {
            return ZPoly::one();
        }
        let scale = reduce_mod(&lc_gcd, p);
        let gp: Vec<u64> = gp.iter().map(|&x| mulmod(x, scale, p)).collect();
        match acc_deg {
            Some(cur) if d > cur => continue,
            Some(cur) if d == cur => {
                let m_mod_p = reduce_mod(&modulus, p);
                let inv = invmod(m_mod_p, p);
                let pb = BigInt::from(p);
                for (slot, &r) in acc.iter_mut().zip(gp.iter()) {
                    let cur = reduce_mod(slot, p);
                    let diff = if r >= cur { r - cur } else { r + p - cur };
                    let t = mulmod(diff, inv, p);
                    *slot += &modulus * BigInt::from(t);
                }
                modulus *= pb;
            }
            _ => {
                acc = gp.iter().map(|&x| BigInt::from(x)).collect();
                modulus = BigInt::from(p);
                acc_deg = Some(d);
                previous = None;
                continue;
            }
        }
        let half = &modulus >> 1;
        let candidate = ZPoly::from_coeffs(
            acc.iter()
                .map(|x| if x > &half { x - &modulus } else { x.clone() })
                .collect(),
        );
        if previous.as_ref() == Some(&candidate) {
            let g = candidate.normalized_sign();
            if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                return g;
            }
        }
        previous = Some(candidate);
    }
    panic!("modular gcd did not converge within the prime table");
}
