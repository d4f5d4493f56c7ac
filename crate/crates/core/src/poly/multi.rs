use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{TermJson, UniPoly};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent triple `x^ex y^ey z^ez`.
///
/// Ordered graded-lexicographically: total degree first, then `ex`, `ey`.
/// The greatest monomial is the leading one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Point3 = [Rational; 3];

/// Sparse polynomial in `x, y, z` with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rational, e: [u32; 3]) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(e), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), [1, 0, 0])
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), [0, 1, 0])
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), [0, 0, 1])
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, [u32; 3])>,
    {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: leading (graded-lex greatest) first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: [u32; 3]) -> Rational {
        self.terms.get(&Monomial(e)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly3 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &Point3) -> Rational {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = at.iter().map(|v| power_table(v, deg)).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                c * &powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize]
                    * &powers[2][m.0[2] as usize]
            })
            .sum()
    }

    /// `t -> p((1 - t) start + t end)` as an exact univariate polynomial.
    pub fn restrict_to_line(&self, start: &Point3, end: &Point3) -> Result<UniPoly> {
        if start == end {
            return Err(Error::domain("segment endpoints coincide"));
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<UniPoly>> = (0..3)
            .map(|i| {
                let line = UniPoly::new(vec![start[i].clone(), &end[i] - &start[i]]);
                let mut table = vec![UniPoly::one()];
                for k in 1..=deg {
                    let next = &table[k - 1] * &line;
                    table.push(next);
                }
                table
            })
            .collect();
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let [a, b, cz] = m.0;
            let term = &(&powers[0][a as usize] * &powers[1][b as usize]) * &powers[2][cz as usize];
            out = &out + &term.scale(c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(m, c)| TermJson {
                e: m.0.to_vec(),
                c: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<Self> {
        let mut p = Self::zero();
        for t in terms {
            let e: [u32; 3] = t
                .e
                .as_slice()
                .try_into()
                .map_err(|_| Error::usage("trivariate term needs three exponents"))?;
            p.add_term(Monomial(e), parse_rational(&t.c)?);
        }
        Ok(p)
    }
}

fn power_table(v: &Rational, deg: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(deg + 1);
    table.push(Rational::one());
    for k in 1..=deg {
        let next = &table[k - 1] * v;
        table.push(next);
    }
    table
}

impl Add for &MultiPoly3 {
    type Output = MultiPoly3;

    fn add(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly3 {
    type Output = MultiPoly3;

    fn sub(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly3 {
    type Output = MultiPoly3;

    fn neg(self) -> MultiPoly3 {
        MultiPoly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly3 {
    type Output = MultiPoly3;

    fn mul(self, rhs: &MultiPoly3) -> MultiPoly3 {
        let mut out = MultiPoly3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = [ma.0[0] + mb.0[0], ma.0[1] + mb.0[1], ma.0[2] + mb.0[2]];
                out.add_term(Monomial(e), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly3 {
            type Output = MultiPoly3;
            fn $f(self, rhs: MultiPoly3) -> MultiPoly3 {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Human-readable form, leading term first: `120 x^2 y^3 z^2 - 420 x^2 y^2 z^3 + ...`.
impl fmt::Display for MultiPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(m.0)
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join(" "))?;
            } else {
                write!(f, "{abs} {}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn x() -> MultiPoly3 {
        MultiPoly3::x()
    }
    fn y() -> MultiPoly3 {
        MultiPoly3::y()
    }
    fn z() -> MultiPoly3 {
        MultiPoly3::z()
    }

    #[test]
    fn products() {
        let p = (x() + y()) * (x() - y());
        assert_eq!(p, x().pow(2) - y().pow(2));
        assert!((x() * MultiPoly3::zero()).is_zero());
        let q = (x() - z()) * (x() - z());
        assert_eq!(q.coefficient([2, 0, 0]), rat(1));
        assert_eq!(q.coefficient([1, 0, 1]), rat(-2));
        assert_eq!(q.coefficient([0, 0, 2]), rat(1));
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &(x() + y()) - &(x() + y());
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn evaluation() {
        let p = x().pow(2) * y() - z();
        assert_eq!(p.eval(&[rat(1), rat(1), rat(1)]), rat(0));
        let q = &p + &MultiPoly3::constant(frac(7, 3));
        assert_eq!(q.eval(&[rat(0), rat(0), rat(0)]), frac(7, 3));
    }

    #[test]
    fn restriction_to_segments() {
        let s = x() + y() + z();
        let a = [rat(1), rat(0), rat(0)];
        let c = [frac(3, 9), frac(4, 9), frac(2, 9)];
        assert_eq!(s.restrict_to_line(&a, &c).unwrap(), UniPoly::constant(rat(1)));
        let l2 = s.restrict_to_line(&[frac(1, 2), frac(1, 2), rat(0)], &[rat(0), rat(0), rat(1)]);
        assert_eq!(l2.unwrap(), UniPoly::constant(rat(1)));
        let zt = z()
            .restrict_to_line(&[frac(1, 2), frac(1, 2), rat(0)], &[rat(0), rat(0), rat(1)])
            .unwrap();
        assert_eq!(zt, UniPoly::new(vec![rat(0), rat(1)]));
        assert!(matches!(s.restrict_to_line(&a, &a), Err(Error::Domain(_))));
    }

    #[test]
    fn display_and_order() {
        let p = MultiPoly3::from_terms([
            (rat(-3), [0, 0, 2]),
            (rat(1), [2, 0, 0]),
            (rat(2), [1, 1, 0]),
        ]);
        assert_eq!(p.to_string(), "x^2 + 2 x y - 3 z^2");
        let json = p.to_json();
        assert_eq!(json[0].e, vec![2, 0, 0]);
        assert_eq!(MultiPoly3::from_json(&json).unwrap(), p);
    }
}
