use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use super::{MultiPoly3, TermJson};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Power series in `x, y` with every term of total degree above `degree`
/// discarded. Coefficients of retained terms are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries2 {
    degree: u32,
    terms: BTreeMap<(u32, u32), Rational>,
}

impl TruncSeries2 {
    pub fn zero(degree: u32) -> Self {
        TruncSeries2 {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: u32) -> Self {
        Self::monomial(degree, Rational::one(), 0, 0)
    }

    pub fn monomial(degree: u32, c: Rational, ex: u32, ey: u32) -> Self {
        let mut s = Self::zero(degree);
        s.add_term(ex, ey, c);
        s
    }

    pub fn x(degree: u32) -> Self {
        Self::monomial(degree, Rational::one(), 1, 0)
    }

    pub fn y(degree: u32) -> Self {
        Self::monomial(degree, Rational::one(), 0, 1)
    }

    /// Embeds a polynomial in `x, y` (its `z` exponents must be zero).
    pub fn from_poly(p: &MultiPoly3, degree: u32) -> Result<Self> {
        let mut s = Self::zero(degree);
        for (m, c) in p.terms() {
            if m.0[2] != 0 {
                return Err(Error::usage("series embedding expects a polynomial in x and y"));
            }
            s.add_term(m.0[0], m.0[1], c.clone());
        }
        Ok(s)
    }

    /// `(1 + x)^e` for any integer `e`, via the generalized binomial series.
    pub fn one_plus_x_pow(degree: u32, e: i64) -> Self {
        let mut s = Self::zero(degree);
        for (k, c) in binomial_series(e, degree).into_iter().enumerate() {
            s.add_term(k as u32, 0, c);
        }
        s
    }

    /// `(1 + y)^e` for any integer `e`.
    pub fn one_plus_y_pow(degree: u32, e: i64) -> Self {
        let mut s = Self::zero(degree);
        for (k, c) in binomial_series(e, degree).into_iter().enumerate() {
            s.add_term(0, k as u32, c);
        }
        s
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, ex: u32, ey: u32, c: Rational) {
        if ex + ey > self.degree || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((ex, ey)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(ex, ey));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, ex: u32, ey: u32) -> Result<Rational> {
        if ex + ey > self.degree {
            return Err(Error::usage(format!(
                "x^{ex} y^{ey} lies beyond truncation degree {}",
                self.degree
            )));
        }
        Ok(self.terms.get(&(ex, ey)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.degree);
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = Self::zero(self.degree);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                if a1 + a2 + b1 + b2 <= self.degree {
                    out.add_term(a1 + a2, b1 + b2, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.degree);
        for _ in 0..e {
            acc = acc.mul(self).expect("same truncation degree");
        }
        acc
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.scale(&-Rational::one()))
    }

    fn check_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree != rhs.degree {
            return Err(Error::usage(format!(
                "truncation degrees differ: {} vs {}",
                self.degree, rhs.degree
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(a, b), _)| std::cmp::Reverse((a + b, a, b)));
        keys.into_iter()
            .map(|(&(a, b), c)| TermJson {
                e: vec![a, b],
                c: c.to_string(),
            })
            .collect()
    }
}

/// Coefficients `C(e, k)` for `k = 0..=degree`, generalized to negative `e`.
fn binomial_series(e: i64, degree: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(degree as usize + 1);
    let mut c = Rational::one();
    for k in 0..=degree as i64 {
        out.push(c.clone());
        c = c * Rational::from_integer((e - k).into()) / Rational::from_integer((k + 1).into());
    }
    out
}

impl Add for &TruncSeries2 {
    type Output = TruncSeries2;

    /// Panics on mismatched truncation degrees; use `try_add` to handle that.
    fn add(self, rhs: &TruncSeries2) -> TruncSeries2 {
        self.try_add(rhs).expect("same truncation degree")
    }
}

impl Sub for &TruncSeries2 {
    type Output = TruncSeries2;

    fn sub(self, rhs: &TruncSeries2) -> TruncSeries2 {
        self.try_sub(rhs).expect("same truncation degree")
    }
}
