use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest prime accepted for cyclotomic checks.
pub const MAX_PRIME: u32 = 97;

pub fn validate_odd_prime(p: u32) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime || p == 2 {
        return Err(Error::usage(format!("{p} is not an odd prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::usage(format!("prime {p} exceeds the supported bound {MAX_PRIME}")));
    }
    Ok(())
}

/// Element of `Q(α_p) = Q[t] / (1 + t + ... + t^{p-1})`, stored as its
/// reduced coefficient vector of length `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElement {
    p: u32,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn zero(p: u32) -> Self {
        CycloElement {
            p,
            coeffs: vec![Rational::zero(); (p - 1) as usize],
        }
    }

    pub fn from_rational(p: u32, c: Rational) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = c;
        out
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    /// `α_p^e` for any integer `e`; exponents are taken mod `p`.
    pub fn alpha_pow(p: u32, e: i64) -> Self {
        let mut full = vec![Rational::zero(); p as usize];
        full[e.rem_euclid(p as i64) as usize] = Rational::one();
        Self::reduce(p, full)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Reduces a coefficient vector of length `p` (already folded by `t^p = 1`)
    /// using `t^{p-1} = -(1 + ... + t^{p-2})`.
    fn reduce(p: u32, mut full: Vec<Rational>) -> Self {
        let top = full.pop().expect("length p");
        for c in full.iter_mut() {
            *c -= &top;
        }
        CycloElement { p, coeffs: full }
    }

    /// The element as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.p), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    fn cyclotomic_poly(p: u32) -> UniPoly {
        UniPoly::new(vec![Rational::one(); p as usize])
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("zero has no inverse in the cyclotomic field"));
        }
        let a = UniPoly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&Self::cyclotomic_poly(self.p));
        if g.degree() != Some(0) {
            return Err(Error::invariant("cyclotomic polynomial is reducible over Q"));
        }
        let mut full = vec![Rational::zero(); self.p as usize];
        for (i, c) in s.coeffs().iter().enumerate() {
            full[i % self.p as usize] += c;
        }
        Ok(Self::reduce(self.p, full))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;

    fn add(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;

    fn sub(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        CycloElement {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;

    fn mul(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic fields");
        let p = self.p as usize;
        let mut full = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CycloElement::reduce(self.p, full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn prime_validation() {
        assert!(validate_odd_prime(3).is_ok());
        assert!(validate_odd_prime(97).is_ok());
        for bad in [0, 1, 2, 4, 9, 15, 101] {
            assert!(validate_odd_prime(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn roots_of_unity() {
        for p in [3, 5, 7] {
            let a = CycloElement::alpha_pow(p, 1);
            assert_eq!(a.pow(p), CycloElement::one(p));
            assert_eq!(CycloElement::alpha_pow(p, -1), a.pow(p - 1));
            // 1 + α + ... + α^{p-1} = 0
            let sum = (0..p as i64).fold(CycloElement::zero(p), |acc, k| &acc + &CycloElement::alpha_pow(p, k));
            assert!(sum.is_zero());
            // Σ_{k=1}^{p-1} α^{kl} is -1 unless p | l
            for l in [1, 2, p as i64 + 1, -1] {
                let s = (1..p as i64).fold(CycloElement::zero(p), |acc, k| &acc + &CycloElement::alpha_pow(p, k * l));
                assert_eq!(s.as_rational(), Some(rat(-1)));
            }
        }
    }

    #[test]
    fn inverses() {
        let p = 5;
        let x = &CycloElement::alpha_pow(p, 1) - &CycloElement::one(p);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, CycloElement::one(p));
        let y = &CycloElement::alpha_pow(p, 2).scale(&frac(3, 2)) + &CycloElement::from_rational(p, rat(7));
        assert_eq!(&y.div(&x).unwrap() * &x, y);
        assert!(CycloElement::zero(p).inverse().is_err());
    }
}
