//! Species calculus at the level of counting sequences.
//!
//! A [`CountSeq`] holds `a_0..=a_N`, the number of structures of each size,
//! as signed big integers so that virtual species (formal differences) are
//! plain sequences. Every operation returns a sequence whose length is the
//! number of coefficients it can actually determine from its inputs; nothing
//! is padded or extrapolated.
//!
//! [`RatSeries`] is a truncated power series with rational coefficients. Its
//! coefficients are always those of the underlying function; the [`View`]
//! records whether they are read as `a_n / n!` (exponential) or `a_n`
//! (ordinary).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition needs an inner series with zero constant term (got {0})")]
    NonzeroConstant(String),
    #[error("constant term is zero; the series has no multiplicative inverse")]
    ZeroConstant,
    #[error("constant term {0} is not a unit; the inverse is not integral")]
    NonUnitConstant(String),
    #[error("square root needs constant term 1 (got {0})")]
    SqrtConstant(String),
    #[error("coefficient {index} is {value}, not an integer")]
    NotIntegral { index: usize, value: String },
    #[error("cannot divide coefficient {index} ({value}) exactly by {divisor}")]
    Inexact { index: usize, value: String, divisor: String },
    #[error("series has no known coefficients")]
    Empty,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Row `n` of Pascal's triangle.
pub fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    pascal_row(n).swap_remove(k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = BigInt::one();
    out.push(f.clone());
    for i in 1..=n {
        f *= BigInt::from(i);
        out.push(f.clone());
    }
    out
}

/// Exact counting sequence `a_0..=a_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CountSeq {
    coeffs: Vec<BigInt>,
}

impl CountSeq {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        CountSeq { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        CountSeq { coeffs: (0..=order).map(f).collect() }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        CountSeq { coeffs: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        CountSeq { coeffs: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Number of known coefficients (`N + 1`).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Truncation order `N`; `None` when no coefficient is known.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, len: usize) -> CountSeq {
        CountSeq { coeffs: self.coeffs.iter().take(len).cloned().collect() }
    }

    /// First index where the two sequences differ, within their common length.
    pub fn first_mismatch(&self, other: &CountSeq) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    pub fn add(&self, other: &CountSeq) -> CountSeq {
        CountSeq { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CountSeq) -> CountSeq {
        CountSeq { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scalar_mul(&self, c: impl Into<BigInt>) -> CountSeq {
        let c = c.into();
        CountSeq { coeffs: self.coeffs.iter().map(|a| a * &c).collect() }
    }

    /// Coefficient-wise exact division; fails if any coefficient is not a multiple.
    pub fn div_exact(&self, d: impl Into<BigInt>) -> Result<CountSeq> {
        let d = d.into();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, a)| {
                let (q, r) = a.div_rem(&d);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(SeriesError::Inexact { index, value: a.to_string(), divisor: d.to_string() })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(CountSeq::new)
    }

    /// `F_+`: drop the structures on the empty set.
    pub fn plus(&self) -> CountSeq {
        let mut c = self.clone();
        if let Some(a0) = c.coeffs.first_mut() {
            *a0 = BigInt::zero();
        }
        c
    }

    /// Structures on sets of even size only.
    pub fn even_part(&self) -> CountSeq {
        self.parity_filter(0)
    }

    pub fn odd_part(&self) -> CountSeq {
        self.parity_filter(1)
    }

    fn parity_filter(&self, parity: usize) -> CountSeq {
        CountSeq {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| if n % 2 == parity { a.clone() } else { BigInt::zero() })
                .collect(),
        }
    }

    /// Species product: `c_n = sum_i C(n, i) a_i b_{n-i}`.
    pub fn species_product(&self, other: &CountSeq) -> CountSeq {
        let len = self.len().min(other.len());
        let coeffs = (0..len)
            .map(|n| {
                let row = pascal_row(n);
                (0..=n).map(|i| &row[i] * &self.coeffs[i] * &other.coeffs[n - i]).sum()
            })
            .collect();
        CountSeq { coeffs }
    }

    pub fn pow(&self, k: usize) -> CountSeq {
        let mut acc = one(self.order().unwrap_or(0)).truncate(self.len());
        for _ in 0..k {
            acc = acc.species_product(self);
        }
        acc
    }

    /// `F(G)`; requires `g_0 = 0`.
    pub fn compose(&self, inner: &CountSeq) -> Result<CountSeq> {
        self.to_egf().compose(&inner.to_egf())?.to_counts()
    }

    /// `F'`: `a'_n = a_{n+1}`.
    pub fn derivative(&self) -> CountSeq {
        CountSeq { coeffs: self.coeffs.iter().skip(1).cloned().collect() }
    }

    /// `∫F`: shift right with a zero constant term.
    pub fn integral(&self) -> CountSeq {
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        CountSeq { coeffs }
    }

    /// `F•`: `a_n ↦ n a_n`.
    pub fn pointing(&self) -> CountSeq {
        CountSeq { coeffs: self.coeffs.iter().enumerate().map(|(n, a)| a * BigInt::from(n)).collect() }
    }

    /// `F ⊙ G`: `c_n = sum_{i+j=n} a_i b_j`.
    pub fn ordinal_product(&self, other: &CountSeq) -> CountSeq {
        let len = self.len().min(other.len());
        let coeffs = (0..len)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &other.coeffs[n - i]).sum())
            .collect();
        CountSeq { coeffs }
    }

    /// `F * G = F ⊙ X ⊙ G`: `c_0 = 0`, `c_n = sum_{i+j=n-1} a_i b_j`.
    pub fn convolution(&self, other: &CountSeq) -> CountSeq {
        if self.is_empty() || other.is_empty() {
            return CountSeq::default();
        }
        self.ordinal_product(other).integral()
    }

    /// Inverse under the species product. Needs `a_0 = ±1`.
    pub fn reciprocal(&self) -> Result<CountSeq> {
        let a0 = self.coeffs.first().ok_or(SeriesError::Empty)?;
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        if !a0.abs().is_one() {
            return Err(SeriesError::NonUnitConstant(a0.to_string()));
        }
        let mut c: Vec<BigInt> = vec![a0.clone()]; // 1/a0 = a0 for a unit
        for n in 1..self.len() {
            let row = pascal_row(n);
            let s: BigInt = (1..=n).map(|i| &row[i] * &self.coeffs[i] * &c[n - i]).sum();
            c.push(-(s * a0));
        }
        Ok(CountSeq { coeffs: c })
    }

    /// `A · B^{-1}`.
    pub fn divide(&self, other: &CountSeq) -> Result<CountSeq> {
        Ok(self.species_product(&other.reciprocal()?))
    }

    /// `F` from `G` through `F' = E·G'`:
    /// `F_0 = 1`, `F_n = sum_{j=1}^{n} C(n-1, j-1) G_j`.
    pub fn binomial_transform(&self) -> CountSeq {
        let coeffs = (0..self.len())
            .map(|n| {
                if n == 0 {
                    return BigInt::one();
                }
                let row = pascal_row(n - 1);
                (1..=n).map(|j| &row[j - 1] * &self.coeffs[j]).sum()
            })
            .collect();
        CountSeq { coeffs }
    }

    /// `G` from `F` through `G' = E^{-1}·F'`:
    /// `G_n = sum_{j=1}^{n} (-1)^{n-j} C(n-1, j-1) F_j` (so `G_0 = 0`).
    pub fn inverse_binomial_transform(&self) -> CountSeq {
        let coeffs = (0..self.len())
            .map(|n| {
                if n == 0 {
                    return BigInt::zero();
                }
                let row = pascal_row(n - 1);
                (1..=n)
                    .map(|j| {
                        let t = &row[j - 1] * &self.coeffs[j];
                        if (n - j) % 2 == 0 {
                            t
                        } else {
                            -t
                        }
                    })
                    .sum()
            })
            .collect();
        CountSeq { coeffs }
    }

    /// Exponential view: coefficients `a_n / n!`.
    pub fn to_egf(&self) -> RatSeries {
        let f = factorials(self.len());
        RatSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&f)
                .map(|(a, nf)| BigRational::new(a.clone(), nf.clone()))
                .collect(),
            view: View::Egf,
        }
    }

    /// Ordinary view: coefficients `a_n`.
    pub fn to_ogf(&self) -> RatSeries {
        RatSeries {
            coeffs: self.coeffs.iter().map(|a| BigRational::from_integer(a.clone())).collect(),
            view: View::Ogf,
        }
    }

    /// Decimal strings, since values outgrow native integers.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|a| serde_json::Value::String(a.to_string())).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Option<CountSeq> {
        v.as_array()?
            .iter()
            .map(|x| x.as_str()?.parse::<BigInt>().ok())
            .collect::<Option<Vec<_>>>()
            .map(CountSeq::new)
    }

    pub fn to_bfile(&self) -> String {
        crate::enumerate::bfile(&self.coeffs)
    }
}

impl fmt::Display for CountSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Add for &CountSeq {
    type Output = CountSeq;
    fn add(self, rhs: &CountSeq) -> CountSeq {
        CountSeq::add(self, rhs)
    }
}

impl Sub for &CountSeq {
    type Output = CountSeq;
    fn sub(self, rhs: &CountSeq) -> CountSeq {
        CountSeq::sub(self, rhs)
    }
}

/// Species product.
impl Mul for &CountSeq {
    type Output = CountSeq;
    fn mul(self, rhs: &CountSeq) -> CountSeq {
        self.species_product(rhs)
    }
}

impl Neg for &CountSeq {
    type Output = CountSeq;
    fn neg(self) -> CountSeq {
        self.scalar_mul(-1)
    }
}

pub fn zero(order: usize) -> CountSeq {
    CountSeq::from_fn(order, |_| BigInt::zero())
}

/// `1`: one structure on the empty set.
pub fn one(order: usize) -> CountSeq {
    e_exactly(0, order)
}

/// `X`: singletons.
pub fn x(order: usize) -> CountSeq {
    e_exactly(1, order)
}

/// `E`: sets.
pub fn e(order: usize) -> CountSeq {
    CountSeq::from_fn(order, |_| BigInt::one())
}

/// `E_+`: nonempty sets.
pub fn e_plus(order: usize) -> CountSeq {
    e(order).plus()
}

pub fn e_even(order: usize) -> CountSeq {
    e(order).even_part()
}

pub fn e_odd(order: usize) -> CountSeq {
    e(order).odd_part()
}

/// `E_k`: sets of size exactly `k`.
pub fn e_exactly(k: usize, order: usize) -> CountSeq {
    CountSeq::from_fn(order, |n| if n == k { BigInt::one() } else { BigInt::zero() })
}

/// `L`: linear orders, `n!`.
pub fn l(order: usize) -> CountSeq {
    CountSeq::new(factorials(order))
}

/// `C`: cyclic permutations, `(n-1)!` for `n >= 1`.
pub fn cyc(order: usize) -> CountSeq {
    let f = factorials(order);
    CountSeq::from_fn(order, |n| if n == 0 { BigInt::zero() } else { f[n - 1].clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum View {
    Egf,
    Ogf,
}

/// Truncated power series `c_0 + c_1 x + ... + c_N x^N` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
    view: View,
}

impl RatSeries {
    pub fn new(coeffs: Vec<BigRational>, view: View) -> Self {
        RatSeries { coeffs, view }
    }

    pub fn from_integers(values: &[i64], view: View) -> Self {
        RatSeries {
            coeffs: values.iter().map(|&v| BigRational::from_integer(v.into())).collect(),
            view,
        }
    }

    /// The constant series `c`, known to `order`.
    pub fn constant(c: BigRational, order: usize, view: View) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        RatSeries { coeffs, view }
    }

    /// `x`, known to `order`.
    pub fn monomial_x(order: usize, view: View) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = BigRational::one();
        }
        RatSeries { coeffs, view }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn view(&self) -> View {
        self.view
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, len: usize) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().take(len).cloned().collect(), view: self.view }
    }

    pub fn add(&self, other: &RatSeries) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), view: self.view }
    }

    pub fn sub(&self, other: &RatSeries) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(), view: self.view }
    }

    pub fn scale(&self, c: &BigRational) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), view: self.view }
    }

    pub fn add_constant(&self, c: &BigRational) -> RatSeries {
        let mut out = self.clone();
        if let Some(c0) = out.coeffs.first_mut() {
            *c0 += c;
        }
        out
    }

    /// Cauchy product of the coefficient sequences.
    pub fn mul(&self, other: &RatSeries) -> RatSeries {
        let len = self.len().min(other.len());
        let coeffs = (0..len)
            .map(|n| (0..=n).map(|i| &self.coeffs[i] * &other.coeffs[n - i]).sum())
            .collect();
        RatSeries { coeffs, view: self.view }
    }

    pub fn reciprocal(&self) -> Result<RatSeries> {
        let c0 = self.coeffs.first().ok_or(SeriesError::Empty)?;
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstant);
        }
        let inv0 = c0.recip();
        let mut out = vec![inv0.clone()];
        for n in 1..self.len() {
            let s: BigRational = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-(s * &inv0));
        }
        Ok(RatSeries { coeffs: out, view: self.view })
    }

    /// The series `s` with `s_0 = 1` and `s·s = self` to the truncation order.
    pub fn sqrt(&self) -> Result<RatSeries> {
        let c0 = self.coeffs.first().ok_or(SeriesError::Empty)?;
        if !c0.is_one() {
            return Err(SeriesError::SqrtConstant(c0.to_string()));
        }
        let two = BigRational::from_integer(2.into());
        let mut s = vec![BigRational::one()];
        for n in 1..self.len() {
            let cross: BigRational = (1..n).map(|i| &s[i] * &s[n - i]).sum();
            s.push((&self.coeffs[n] - cross) / &two);
        }
        Ok(RatSeries { coeffs: s, view: self.view })
    }

    /// Function composition `self(inner(x))` by Horner's rule; `inner_0 = 0`.
    pub fn compose(&self, inner: &RatSeries) -> Result<RatSeries> {
        if let Some(g0) = inner.coeffs.first() {
            if !g0.is_zero() {
                return Err(SeriesError::NonzeroConstant(g0.to_string()));
            }
        }
        let len = self.len().min(inner.len());
        if len == 0 {
            return Ok(RatSeries { coeffs: Vec::new(), view: self.view });
        }
        let inner = inner.truncate(len);
        let mut acc = RatSeries::constant(self.coeffs[len - 1].clone(), len - 1, self.view);
        for k in (0..len - 1).rev() {
            acc = acc.mul(&inner).add_constant(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Back to counts through the exponential view, checking integrality.
    pub fn to_counts(&self) -> Result<CountSeq> {
        let f = factorials(self.len());
        self.coeffs
            .iter()
            .zip(&f)
            .enumerate()
            .map(|(index, (c, nf))| {
                let v = match self.view {
                    View::Egf => c * BigRational::from_integer(nf.clone()),
                    View::Ogf => c.clone(),
                };
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(SeriesError::NotIntegral { index, value: v.to_string() })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(CountSeq::new)
    }

    /// Reinterprets exponential coefficients `a_n/n!` as ordinary ones `a_n`.
    pub fn egf_to_ogf(&self) -> RatSeries {
        let f = factorials(self.len());
        RatSeries {
            coeffs: self.coeffs.iter().zip(&f).map(|(c, nf)| c * BigRational::from_integer(nf.clone())).collect(),
            view: View::Ogf,
        }
    }

    pub fn ogf_to_egf(&self) -> RatSeries {
        let f = factorials(self.len());
        RatSeries {
            coeffs: self.coeffs.iter().zip(&f).map(|(c, nf)| c / BigRational::from_integer(nf.clone())).collect(),
            view: View::Egf,
        }
    }

    /// `x·Â(x)`: the ordinary image of integration, `a_n ↦ a_{n-1}`.
    pub fn ogf_shift(&self) -> RatSeries {
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        RatSeries { coeffs, view: self.view }
    }

    /// `(Â(x) - â_0)/x`: the ordinary image of differentiation, `a_n ↦ a_{n+1}`.
    pub fn ogf_divshift(&self) -> RatSeries {
        RatSeries { coeffs: self.coeffs.iter().skip(1).cloned().collect(), view: self.view }
    }

    /// `Â(x/(1+x))/(1+x)`: the ordinary image of multiplying the exponential
    /// series by `e^{-x}`.
    pub fn ogf_substitute_x_over_1px(&self) -> RatSeries {
        let order = match self.len().checked_sub(1) {
            Some(o) => o,
            None => return self.clone(),
        };
        let one_plus_x = RatSeries::constant(BigRational::one(), order, self.view).add(&RatSeries::monomial_x(order, self.view));
        let inv = one_plus_x.reciprocal().expect("1 + x is invertible");
        let inner = RatSeries::monomial_x(order, self.view).mul(&inv);
        self.compose(&inner).expect("x/(1+x) has zero constant term").mul(&inv)
    }

    /// `c_n` as integers, failing on any fraction.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NotIntegral { index, value: c.to_string() })
                }
            })
            .collect()
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> CountSeq {
        CountSeq::from_i64s(v)
    }

    fn ints(s: &CountSeq) -> Vec<i64> {
        s.coeffs().iter().map(|a| i64::try_from(a).unwrap()).collect()
    }

    fn rat(s: &RatSeries) -> Vec<i64> {
        s.integer_coeffs().unwrap().iter().map(|a| i64::try_from(a).unwrap()).collect()
    }

    #[test]
    fn sum_and_scalar() {
        assert_eq!(ints(&(&e(5) + &e(5)))[3], 2);
        assert_eq!(&e_even(8) + &e_odd(8), e(8));
        let alt = (&(&l(6) + &one(6)) + &x(6)).div_exact(2).unwrap();
        assert_eq!(ints(&alt), [1, 1, 1, 3, 12, 60, 360]);
        assert!(l(3).div_exact(4).is_err());
    }

    #[test]
    fn species_product_examples() {
        assert_eq!(ints(&(&e_even(6) * &e(6)))[5], 16);
        let a = seq(&[3, -1, 4, 1, 5]);
        assert_eq!(&one(4) * &a, a);
        let fub = l(6).compose(&e_plus(6)).unwrap();
        assert_eq!(ints(&(&fub * &fub))[3], 44);
    }

    #[test]
    fn composition_examples() {
        let fub = l(5).compose(&e_plus(5)).unwrap();
        assert_eq!(ints(&fub), [1, 1, 3, 13, 75, 541]);
        let a = seq(&[2, 7, 1, 8, 2, 8]);
        assert_eq!(a.compose(&x(5)).unwrap(), a);
        let e12 = &e_exactly(1, 6) + &e_exactly(2, 6);
        assert_eq!(ints(&l(6).compose(&e12).unwrap())[4], 66);
        assert!(matches!(l(3).compose(&e(3)), Err(SeriesError::NonzeroConstant(_))));
        assert_eq!(e(8).compose(&cyc(8)).unwrap(), l(8));
        assert_eq!(ints(&e(4).compose(&e_plus(4)).unwrap()), [1, 1, 2, 5, 15]);
    }

    #[test]
    fn calculus_examples() {
        let alt = (&(&l(9) + &one(9)) + &x(9)).div_exact(2).unwrap();
        let d = alt.derivative();
        for n in 1..d.len() {
            assert_eq!(d.coeffs()[n], factorial(n + 1) / 2);
        }
        let a = seq(&[5, 1, 2, 3, 4]);
        assert_eq!(a.derivative().integral(), a.plus());
        assert_eq!(ints(&e(6).pointing()), [0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn ordinal_products() {
        // S = E + E*S•: at n = 2, 1 + 1 = 2
        let rhs = &e(6) + &e(6).convolution(&l(6).pointing());
        assert_eq!(rhs.truncate(7), l(6));
        // Catalan F = 1 + F*F by fixed-point iteration
        let mut f = one(6);
        for _ in 0..7 {
            f = (&one(6) + &f.convolution(&f)).truncate(7);
        }
        assert_eq!(ints(&f), [1, 1, 2, 5, 14, 42, 132]);
        let a = seq(&[4, 0, 3, 9]);
        assert_eq!(one(3).ordinal_product(&a), a);
    }

    #[test]
    fn reciprocals() {
        let r = e(8).reciprocal().unwrap();
        assert_eq!(ints(&r), [1, -1, 1, -1, 1, -1, 1, -1, 1]);
        assert_eq!(&e(8) * &r, one(8));
        assert_eq!(one(5).reciprocal().unwrap(), one(5));
        assert_eq!(ints(&l(5).reciprocal().unwrap()), [1, -1, 0, 0, 0, 0]);
        assert_eq!(x(3).reciprocal(), Err(SeriesError::ZeroConstant));
        assert!(matches!(seq(&[2, 1]).reciprocal(), Err(SeriesError::NonUnitConstant(_))));
    }

    #[test]
    fn binomial_transforms() {
        let cay231 = seq(&[1, 1, 3, 12, 56, 284, 1516]);
        let prim = cay231.inverse_binomial_transform();
        assert_eq!(ints(&prim), [0, 1, 2, 7, 28, 121, 550]);
        assert_eq!(prim.binomial_transform(), cay231);
        let prim212 = seq(&[0, 1, 2, 7, 32, 181]);
        assert_eq!(ints(&prim212.binomial_transform()), [1, 1, 3, 12, 60, 360]);
    }

    #[test]
    fn ogf_pack() {
        let a = seq(&[1, 1, 3, 12]).to_ogf();
        assert_eq!(rat(&a.ogf_shift()), [0, 1, 1, 3, 12]);
        assert_eq!(rat(&a.ogf_divshift()), [1, 3, 12]);
        let egf = seq(&[1, 4, 9, 16, 25]).to_egf();
        assert_eq!(egf.egf_to_ogf().ogf_to_egf(), egf);
    }

    #[test]
    fn substitution_matches_binomial_formula() {
        // [x^n] Â(x/(1+x))/(1+x) = sum_k (-1)^{n-k} C(n,k) a_k
        let a = [3i64, -1, 4, 1, -5, 9, 2, 6];
        let got = rat(&RatSeries::from_integers(&a, View::Ogf).ogf_substitute_x_over_1px());
        for (n, &g) in got.iter().enumerate() {
            let want: i64 = (0..=n)
                .map(|k| {
                    let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                    sign * i64::try_from(binomial(n, k)).unwrap() * a[k]
                })
                .sum();
            assert_eq!(g, want, "n = {n}");
        }
    }

    #[test]
    fn square_roots() {
        let one_s = RatSeries::constant(BigRational::one(), 5, View::Ogf);
        assert_eq!(one_s.sqrt().unwrap(), one_s);
        let q = RatSeries::from_integers(&[1, -8, 8, 0, 0], View::Ogf);
        let s = q.sqrt().unwrap();
        assert_eq!(rat(&s), [1, -4, -4, -16, -72]);
        assert_eq!(s.mul(&s), q);
        let half = BigRational::new(1.into(), 2.into());
        let ogf = s.add_constant(&BigRational::one()).reciprocal().unwrap().add_constant(&half);
        assert_eq!(rat(&ogf), [1, 1, 3, 12, 56]);
        assert!(matches!(
            RatSeries::from_integers(&[4, 1], View::Ogf).sqrt(),
            Err(SeriesError::SqrtConstant(_))
        ));
    }

    #[test]
    fn builders() {
        assert_eq!(ints(&e_even(4)), [1, 0, 1, 0, 1]);
        assert_eq!(ints(&e_odd(3)), [0, 1, 0, 1]);
        assert_eq!(ints(&cyc(5)), [0, 1, 1, 2, 6, 24]);
        assert_eq!(ints(&e_exactly(2, 3)), [0, 0, 1, 0]);
    }

    #[test]
    fn json_and_bfile() {
        let s = seq(&[1, -2, 3]);
        assert_eq!(s.to_json().to_string(), r#"["1","-2","3"]"#);
        assert_eq!(CountSeq::from_json(&s.to_json()), Some(s.clone()));
        assert_eq!(s.to_bfile(), "0 1\n1 -2\n2 3\n");
    }

    #[test]
    fn hyperbolic_identity() {
        assert_eq!(&e_even(12) * &e_even(12), &one(12) + &(&e_odd(12) * &e_odd(12)));
    }

    fn arb_seq(len: usize) -> impl Strategy<Value = CountSeq> {
        proptest::collection::vec(-50i64..50, len).prop_map(|v| CountSeq::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in arb_seq(11), b in arb_seq(11)) {
            let lhs = a.convolution(&b).derivative();
            let rhs = &b.scalar_mul(a.coeffs()[0].clone()) + &a.derivative().convolution(&b);
            prop_assert_eq!(lhs.first_mismatch(&rhs), None);
            prop_assert!(rhs.len() >= 10);
        }

        #[test]
        fn reciprocal_is_inverse(mut v in proptest::collection::vec(-50i64..50, 11), sign in prop::bool::ANY) {
            v[0] = if sign { 1 } else { -1 };
            let a = CountSeq::from_i64s(&v);
            prop_assert_eq!(&a * &a.reciprocal().unwrap(), one(10));
        }

        #[test]
        fn view_conversions_round_trip(a in arb_seq(10)) {
            prop_assert_eq!(a.to_egf().egf_to_ogf(), a.to_ogf());
            prop_assert_eq!(a.to_ogf().ogf_to_egf(), a.to_egf());
            prop_assert_eq!(a.to_egf().to_counts().unwrap(), a.clone());
        }

        #[test]
        fn sqrt_squares_back(tail in proptest::collection::vec(-20i64..20, 9)) {
            let mut v = vec![1i64];
            v.extend(tail);
            let q = RatSeries::from_integers(&v, View::Ogf);
            let s = q.sqrt().unwrap();
            prop_assert_eq!(s.mul(&s), q);
        }

        #[test]
        fn transform_round_trip(tail in proptest::collection::vec(-50i64..50, 9)) {
            let mut g = vec![0i64];
            g.extend(tail);
            let g = CountSeq::from_i64s(&g);
            prop_assert_eq!(g.binomial_transform().inverse_binomial_transform(), g);
        }
    }
}
