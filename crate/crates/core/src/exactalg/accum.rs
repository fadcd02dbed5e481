//! Shared-denominator accumulation of large partition sums.
//!
//! Each term has the shape `N(s) / prod_j (x)_{k_j}` with `sum_j k_j <= M` and
//! a fixed monomial base `x`. Since `(x)_M / prod_j (x)_{k_j}` is a polynomial,
//! every term can be lifted to the common denominator `(x)_M`. Terms are
//! grouped by the multiset `{k_j}` so each cofactor is built once, and the
//! final quotient is reduced a single time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

use super::laurent::HalfPowerLaurent;
use super::qseries::{poch_coeffs_i128, PochBase};
use super::ratfunc::RationalFunctionQ;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SharedDenominatorSum {
    base: PochBase,
    max_index: usize,
    groups: BTreeMap<Vec<usize>, HalfPowerLaurent>,
    terms: u64,
}

impl SharedDenominatorSum {
    pub fn new(base: PochBase, max_index: usize) -> Self {
        SharedDenominatorSum { base, max_index, groups: BTreeMap::new(), terms: 0 }
    }

    pub fn base(&self) -> PochBase {
        self.base
    }

    /// Number of terms added so far (including zero terms).
    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Add `numerator / prod (x)_{k}` over `indices`; zero indices are ignored.
    pub fn add(&mut self, indices: &[usize], numerator: &HalfPowerLaurent) -> Result<()> {
        self.terms += 1;
        let mut key: Vec<usize> = indices.iter().copied().filter(|&k| k > 0).collect();
        if key.iter().sum::<usize>() > self.max_index {
            return Err(Error::InvalidArgument(format!(
                "Pochhammer indices {key:?} exceed the shared bound {}",
                self.max_index
            )));
        }
        if numerator.is_zero() {
            return Ok(());
        }
        key.sort_unstable_by(|a, b| b.cmp(a));
        let slot = self.groups.entry(key).or_default();
        for (e, c) in numerator.terms() {
            slot.add_term(e, c.clone());
        }
        Ok(())
    }

    /// Absorb another partial sum over the same base and bound.
    pub fn merge(&mut self, other: SharedDenominatorSum) {
        assert_eq!(self.base, other.base, "merging sums over different bases");
        assert_eq!(self.max_index, other.max_index, "merging sums with different bounds");
        self.terms += other.terms;
        for (k, v) in other.groups {
            let slot = self.groups.entry(k).or_default();
            for (e, c) in v.terms() {
                slot.add_term(e, c.clone());
            }
        }
    }

    /// The accumulated numerator over `(x)_M` and the common denominator itself.
    pub fn numerator_and_denominator(&self) -> Result<(HalfPowerLaurent, HalfPowerLaurent)> {
        let full = poch_coeffs_i128(self.max_index);
        let den = self.base.substitute(&full);
        let groups: Vec<(&Vec<usize>, &HalfPowerLaurent)> =
            self.groups.iter().filter(|(_, v)| !v.is_zero()).collect();
        if groups.is_empty() {
            return Ok((HalfPowerLaurent::zero(), den));
        }

        let mut lcm = BigInt::one();
        for (_, v) in &groups {
            for (_, c) in v.terms() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for (_, v) in &groups {
            lo = lo.min(v.min_exp().unwrap());
            hi = hi.max(v.max_exp().unwrap());
        }
        let span_x = self.base.s_exp * full.len() as i64;
        let (lo, hi) = if span_x < 0 { (lo + span_x, hi) } else { (lo, hi + span_x) };
        let width = (hi - lo + 1) as usize;

        let total: Option<Vec<i128>> = groups
            .par_iter()
            .try_fold(
                || vec![0i128; width],
                |mut acc, (key, num)| {
                    let cof = cofactor(&full, key)?;
                    accumulate_i128(&mut acc, lo, num, &lcm, &cof, self.base)?;
                    Some(acc)
                },
            )
            .try_reduce(|| vec![0i128; width], add_i128);
        let total: Vec<BigInt> = match total {
            Some(t) => t.into_iter().map(BigInt::from).collect(),
            None => self.accumulate_big(&groups, &full, lo, width, &lcm)?,
        };
        let scale = BigRational::new(BigInt::one(), lcm);
        let num = HalfPowerLaurent::from_terms(
            total
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, BigRational::from_integer(c) * &scale)),
        );
        Ok((num, den))
    }

    fn accumulate_big(
        &self,
        groups: &[(&Vec<usize>, &HalfPowerLaurent)],
        full: &[i128],
        lo: i64,
        width: usize,
        lcm: &BigInt,
    ) -> Result<Vec<BigInt>> {
        groups
            .par_iter()
            .try_fold(
                || vec![BigInt::zero(); width],
                |mut acc, (key, num)| {
                    let cof = cofactor(full, key)
                        .ok_or_else(|| Error::Internal("cofactor does not divide the shared denominator".into()))?;
                    for (e, c) in num.terms() {
                        let ci = c.numer() * (lcm / c.denom());
                        for (j, &t) in cof.iter().enumerate() {
                            if t != 0 {
                                let (sg, xe) = self.base.power(j as i64);
                                acc[(e + xe - lo) as usize] += &ci * BigInt::from(t * sg as i128);
                            }
                        }
                    }
                    Ok(acc)
                },
            )
            .try_reduce(
                || vec![BigInt::zero(); width],
                |mut a, b| {
                    for (slot, v) in a.iter_mut().zip(b) {
                        *slot += v;
                    }
                    Ok(a)
                },
            )
    }

    /// Reduce the accumulated sum to canonical form.
    pub fn finish(&self) -> Result<RationalFunctionQ> {
        let (num, den) = self.numerator_and_denominator()?;
        RationalFunctionQ::new(&num, &den)
    }
}

/// `(x)_M / prod (x)_{k}` by repeated exact division by `1 - x^l`.
fn cofactor(full: &[i128], key: &[usize]) -> Option<Vec<i128>> {
    let mut p = full.to_vec();
    for &k in key {
        for l in 1..=k {
            p = divide_one_minus_power(&p, l)?;
        }
    }
    Some(p)
}

fn divide_one_minus_power(p: &[i128], l: usize) -> Option<Vec<i128>> {
    if p.len() <= l {
        return None;
    }
    let qlen = p.len() - l;
    let mut q = vec![0i128; qlen];
    for i in 0..qlen {
        q[i] = if i >= l { p[i].checked_add(q[i - l])? } else { p[i] };
    }
    // the top l coefficients are the remainder check
    for i in qlen..p.len() {
        if p[i] != if i >= l { -q[i - l] } else { 0 } {
            return None;
        }
    }
    Some(q)
}

fn accumulate_i128(
    acc: &mut [i128],
    lo: i64,
    num: &HalfPowerLaurent,
    lcm: &BigInt,
    cof: &[i128],
    base: PochBase,
) -> Option<()> {
    for (e, c) in num.terms() {
        let ci = (c.numer() * (lcm / c.denom())).to_i128()?;
        for (j, &t) in cof.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let (sg, xe) = base.power(j as i64);
            let idx = (e + xe - lo) as usize;
            let v = ci.checked_mul(t)?;
            acc[idx] = if sg < 0 { acc[idx].checked_sub(v)? } else { acc[idx].checked_add(v)? };
        }
    }
    Some(())
}

fn add_i128(mut a: Vec<i128>, b: Vec<i128>) -> Option<Vec<i128>> {
    for (slot, v) in a.iter_mut().zip(b) {
        *slot = slot.checked_add(v)?;
    }
    Some(a)
}
