//! The obstruction polynomial and the localized sums it is assembled from.
//!
//! A Kähler class is written `Ω = x ũ + y ṽ + z w̃`, with `ũ, ṽ` pulled back
//! from the hyperplane classes of `CP^m, CP^n` and `w̃ = c₁(J*)` the dual
//! tautological class. The Futaki character of `Ω` vanishes exactly where
//!
//! ```text
//! F(x,y,z) = -(m(m+2) yz + n(n+2) xz + 2xy) g(x,y,z) + xyz h(x,y,z)
//! ```
//!
//! vanishes. `Ŝ_ε(ζ)` below is the mod-p reduced fixed-point sum with the
//! `1/p` factor cleared. Its top coefficients are `g` and `-ε h`, and the
//! alternating sinh sums recover `2^{m+n+2} (m+n+2)! F` from it exactly.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, factorial, int, ipow, rat, Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly3, TermJson, UniPoly};

/// Complex dimensions `(m, n)` of the two projective factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dims {
    pub m: u32,
    pub n: u32,
}

impl Dims {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::usage(format!("dimensions must be positive, got ({m}, {n})")));
        }
        Ok(Dims { m, n })
    }

    /// Complex dimension of the total space, `m + n + 1`.
    pub fn total_dim(&self) -> u32 {
        self.m + self.n + 1
    }

    pub fn degree_f(&self) -> u32 {
        self.m + self.n + 4
    }

    /// `1 <= m < n <= 10`, the range with established sign and Kähler-Einstein verdicts.
    pub fn paper_backed(&self) -> bool {
        1 <= self.m && self.m < self.n && self.n <= 10
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Coordinates of a class in the basis `(ũ, ṽ, w̃)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KahlerClass {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl KahlerClass {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        KahlerClass { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        KahlerClass::new(rat(x), rat(y), rat(z))
    }

    pub fn from_point(p: &[Rational; 3]) -> Self {
        KahlerClass::new(p[0].clone(), p[1].clone(), p[2].clone())
    }

    pub fn point(&self) -> [Rational; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn scale(&self, s: &Rational) -> Self {
        KahlerClass::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }

    /// `(λ, μ, ν)` of an integral class.
    pub fn integral_coords(&self) -> Result<[i64; 3]> {
        use num_traits::ToPrimitive;
        let conv = |v: &Rational| {
            if !v.is_integer() {
                return None;
            }
            v.to_integer().to_i64()
        };
        match (conv(&self.x), conv(&self.y), conv(&self.z)) {
            (Some(a), Some(b), Some(c)) => Ok([a, b, c]),
            _ => Err(Error::usage(format!("class {self} is not integral"))),
        }
    }
}

impl fmt::Display for KahlerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `ε ∈ {-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Epsilon {
    Minus,
    Zero,
    Plus,
}

impl Epsilon {
    pub const ALL: [Epsilon; 3] = [Epsilon::Minus, Epsilon::Zero, Epsilon::Plus];

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Minus => -1,
            Epsilon::Zero => 0,
            Epsilon::Plus => 1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            -1 => Ok(Epsilon::Minus),
            0 => Ok(Epsilon::Zero),
            1 => Ok(Epsilon::Plus),
            _ => Err(Error::usage(format!("ε must be -1, 0 or 1, got {v}"))),
        }
    }
}

/// Weight data of one fixed component `N_i ≅ CP^m × CP^n` of the fiber
/// circle action, with the linear forms already evaluated at `(λ, μ, ν)`.
///
/// `r`: weight on `K^{-1}`; `kappa`: weight on `L`; `(a, b)`: `c₁(K^{-1}|N_i)`
/// in `(u, v)`; `(rho, tau)`: `c₁(L|N_i)`; `delta`: sign of the normal weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    pub index: u8,
    pub r: i64,
    pub kappa: i64,
    pub a: i64,
    pub b: i64,
    pub rho: i64,
    pub tau: i64,
    pub delta: i64,
    #[serde(skip)]
    dims: Dims,
    #[serde(skip)]
    class: [i64; 3],
}

impl FixedComponent {
    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn class(&self) -> [i64; 3] {
        self.class
    }

    /// `ζκ - εr`, the exponent of `α_p^k` on the line-bundle factor.
    pub fn weight(&self, eps: Epsilon, zeta: i64) -> i64 {
        zeta * self.kappa - eps.value() * self.r
    }

    /// `(β, γ) = (ζρ - εa, ζτ - εb)`.
    pub fn beta_gamma(&self, eps: Epsilon, zeta: i64) -> (i64, i64) {
        let e = eps.value();
        (zeta * self.rho - e * self.a, zeta * self.tau - e * self.b)
    }

    fn check(&self, d: Dims, cls: [i64; 3]) -> Result<()> {
        if self.dims != d || self.class != cls {
            return Err(Error::usage(format!(
                "fixed component built for {} / {:?}, used with {} / {:?}",
                self.dims, self.class, d, cls
            )));
        }
        Ok(())
    }
}

/// `g`, `h` and `F` for one pair of dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterPolys {
    pub dims: Dims,
    pub g: MultiPoly3,
    pub h: MultiPoly3,
    pub f: MultiPoly3,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterPolysJson {
    pub m: u32,
    pub n: u32,
    pub g: Vec<TermJson>,
    pub h: Vec<TermJson>,
    #[serde(rename = "F")]
    pub f: Vec<TermJson>,
    #[serde(rename = "degreeF")]
    pub degree_f: u32,
}

impl CharacterPolys {
    pub fn to_json(&self) -> CharacterPolysJson {
        CharacterPolysJson {
            m: self.dims.m,
            n: self.dims.n,
            g: self.g.to_json(),
            h: self.h.to_json(),
            f: self.f.to_json(),
            degree_f: self.dims.degree_f(),
        }
    }

    pub fn eval_f(&self, c: &KahlerClass) -> Rational {
        self.f.eval(&c.point())
    }
}

/// The coefficient `C(m+n+2, s) C(s, m-q) C(m+n-s, q)` shared by every sum.
fn triple_binomial(d: Dims, s: i64, q: i64) -> Integer {
    let (m, n) = (d.mi(), d.ni());
    binomial(m + n + 2, s) * binomial(s, m - q) * binomial(m + n - s, q)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Iterates `(s, q, C(...)·(-1)^{m+n+s+q+1})` over the nonvanishing terms.
fn gh_terms(d: Dims) -> impl Iterator<Item = (i64, i64, Rational)> {
    let (m, n) = (d.mi(), d.ni());
    (0..=m + n).flat_map(move |s| {
        (0..=m).filter_map(move |q| {
            let c = triple_binomial(d, s, q);
            if c.is_zero() {
                return None;
            }
            let signed = c * sign(m + n + s + q + 1);
            Some((s, q, Rational::from_integer(signed)))
        })
    })
}

fn powers(base: &MultiPoly3, up_to: usize) -> Vec<MultiPoly3> {
    let mut table = vec![MultiPoly3::constant(Rational::one())];
    for k in 1..=up_to {
        let next = &table[k - 1] * base;
        table.push(next);
    }
    table
}

struct PowerTables {
    x: Vec<MultiPoly3>,
    y: Vec<MultiPoly3>,
    x_minus_z: Vec<MultiPoly3>,
    y_minus_z: Vec<MultiPoly3>,
}

impl PowerTables {
    fn new(d: Dims) -> Self {
        let top = (d.m + d.n + 2) as usize;
        let (x, y, z) = (MultiPoly3::x(), MultiPoly3::y(), MultiPoly3::z());
        PowerTables {
            x: powers(&x, top),
            y: powers(&y, top),
            x_minus_z: powers(&(&x - &z), top),
            y_minus_z: powers(&(&y - &z), top),
        }
    }

    /// `(x-z)^i y^j`
    fn left(&self, i: i64, j: i64) -> MultiPoly3 {
        &self.x_minus_z[i as usize] * &self.y[j as usize]
    }

    /// `x^i (y-z)^j`
    fn right(&self, i: i64, j: i64) -> MultiPoly3 {
        &self.x[i as usize] * &self.y_minus_z[j as usize]
    }
}

pub fn compute_g(d: Dims) -> MultiPoly3 {
    compute_g_with(d, &PowerTables::new(d))
}

fn compute_g_with(d: Dims, pt: &PowerTables) -> MultiPoly3 {
    let (m, n) = (d.mi(), d.ni());
    let mut g = MultiPoly3::zero();
    for (_, q, c) in gh_terms(d) {
        let bracket = &pt.left(m - q, n + q + 2) - &pt.right(m - q, n + q + 2);
        g = &g + &bracket.scale(&c);
    }
    g
}

pub fn compute_h(d: Dims) -> MultiPoly3 {
    compute_h_with(d, &PowerTables::new(d))
}

fn compute_h_with(d: Dims, pt: &PowerTables) -> MultiPoly3 {
    let (m, n) = (d.mi(), d.ni());
    let mut h = MultiPoly3::zero();
    for (s, q, c) in gh_terms(d) {
        let j = s - m + q;
        let mut bracket = pt
            .left(m - q, n + q + 1)
            .scale(&rat((m + n + 2 - s) + (n + 2) * j));
        bracket = &bracket + &pt.right(m - q, n + q + 1).scale(&rat((m + n + 2 - s) - n * j));
        // the (m - q) multiplier kills these terms when q = m
        if m - q > 0 {
            bracket = &bracket + &pt.left(m - q - 1, n + q + 2).scale(&rat(m * (m - q)));
            bracket = &bracket - &pt.right(m - q - 1, n + q + 2).scale(&rat((m + 2) * (m - q)));
        }
        h = &h + &bracket.scale(&c);
    }
    h
}

/// `m(m+2) yz + n(n+2) xz + 2xy`, the numerator of the slope `μ_Ω`.
pub fn slope_numerator(d: Dims) -> MultiPoly3 {
    let (m, n) = (d.mi(), d.ni());
    MultiPoly3::from_terms([
        (rat(m * (m + 2)), [0, 1, 1]),
        (rat(n * (n + 2)), [1, 0, 1]),
        (rat(2), [1, 1, 0]),
    ])
}

pub fn compute_f(d: Dims) -> Result<CharacterPolys> {
    let pt = PowerTables::new(d);
    let g = compute_g_with(d, &pt);
    let h = compute_h_with(d, &pt);
    let xyz = MultiPoly3::monomial(Rational::one(), [1, 1, 1]);
    let f = &(&xyz * &h) - &(&slope_numerator(d) * &g);

    if !f.is_integral() {
        return Err(Error::invariant(format!("F{d} has a non-integral coefficient")));
    }
    let expect = [
        ("g", &g, d.m + d.n + 2),
        ("h", &h, d.m + d.n + 1),
        ("F", &f, d.degree_f()),
    ];
    for (name, p, deg) in expect {
        if !p.is_zero() && p.homogeneous_degree() != Some(deg) {
            return Err(Error::invariant(format!(
                "{name}{d} is not homogeneous of degree {deg}"
            )));
        }
    }
    Ok(CharacterPolys { dims: d, g, h, f })
}

/// `μ_Ω = (m(m+2) yz + n(n+2) xz + 2xy) / ((m+n+1) xyz)`.
pub fn mu_omega(d: Dims, c: &KahlerClass) -> Result<Rational> {
    let denom = rat(d.total_dim() as i64) * &c.x * &c.y * &c.z;
    if denom.is_zero() {
        return Err(Error::domain(format!("slope undefined: class {c} has a zero coordinate")));
    }
    Ok(slope_numerator(d).eval(&c.point()) / denom)
}

/// The anticanonical class `c₁(M) = (m+2) ũ + (n+2) ṽ + 2 w̃`.
pub fn c1_class(d: Dims) -> KahlerClass {
    KahlerClass::from_ints(d.mi() + 2, d.ni() + 2, 2)
}

pub fn fixed_components(d: Dims, cls: &KahlerClass) -> Result<[FixedComponent; 2]> {
    let [l, mu, nu] = cls.integral_coords()?;
    let (m, n) = (d.mi(), d.ni());
    let first = FixedComponent {
        index: 1,
        r: -1,
        kappa: -mu,
        a: m,
        b: n + 2,
        rho: l - nu,
        tau: mu,
        delta: -1,
        dims: d,
        class: [l, mu, nu],
    };
    let second = FixedComponent {
        index: 2,
        r: 1,
        kappa: -mu + nu,
        a: m + 2,
        b: n,
        rho: l,
        tau: mu - nu,
        delta: 1,
        dims: d,
        class: [l, mu, nu],
    };
    Ok([first, second])
}

/// `Σ_{i=0}^{k} (-1)^i C(k,i) (k-2i)^l`: zero for `l < k` and `l = k+1`,
/// `2^k k!` for `l = k`.
pub fn sinh_sum(k: u32, l: u32) -> Integer {
    let k = k as i64;
    (0..=k)
        .map(|i| binomial(k, i) * sign(i) * ipow(k - 2 * i, l))
        .sum()
}

fn linear_powers(slope: i64, constant: i64, up_to: usize) -> Vec<UniPoly> {
    let base = UniPoly::linear(rat(slope), rat(constant));
    let mut table = vec![UniPoly::one()];
    for k in 1..=up_to {
        let next = &table[k - 1] * &base;
        table.push(next);
    }
    table
}

/// One fixed component's share of `Ŝ_ε(ζ)`:
///
/// `Σ_{s,q} C(m+n+2,s) C(s,m-q) C(m+n-s,q) (-1)^q δ (κζ-rε)^{m+n+2-s} (ρζ-aε)^{m-q} (τζ-bε)^{s-m+q}`.
pub fn s_hat_component(d: Dims, fc: &FixedComponent, eps: Epsilon, cls: &KahlerClass) -> Result<UniPoly> {
    fc.check(d, cls.integral_coords()?)?;
    let (m, n) = (d.mi(), d.ni());
    let e = eps.value();
    let top = (m + n + 2) as usize;
    let w = linear_powers(fc.kappa, -fc.r * e, top);
    let u = linear_powers(fc.rho, -fc.a * e, top);
    let v = linear_powers(fc.tau, -fc.b * e, top);
    let mut out = UniPoly::zero();
    for s in 0..=m + n {
        for q in 0..=m {
            let c = triple_binomial(d, s, q);
            if c.is_zero() {
                continue;
            }
            let c = Rational::from_integer(c * sign(q) * fc.delta);
            let term = &(&w[(m + n + 2 - s) as usize] * &u[(m - q) as usize]) * &v[(s - m + q) as usize];
            out = &out + &term.scale(&c);
        }
    }
    Ok(out)
}

/// `Ŝ_ε(ζ)`: both fixed components summed.
pub fn s_hat(d: Dims, eps: Epsilon, cls: &KahlerClass) -> Result<UniPoly> {
    let [first, second] = fixed_components(d, cls)?;
    Ok(&s_hat_component(d, &first, eps, cls)? + &s_hat_component(d, &second, eps, cls)?)
}

/// `Ŝ_ε(ζ)` from the formula with the fixed-component data substituted in,
/// computed without going through [`FixedComponent`].
pub fn s_hat_direct(d: Dims, eps: Epsilon, cls: &KahlerClass) -> Result<UniPoly> {
    let [l, mu, nu] = cls.integral_coords()?;
    let (m, n) = (d.mi(), d.ni());
    let e = eps.value();
    let lin = |a: i64, b: i64| UniPoly::linear(rat(a), rat(b));
    let mut out = UniPoly::zero();
    for s in 0..=m + n {
        for q in 0..=m {
            let c = triple_binomial(d, s, q);
            if c.is_zero() {
                continue;
            }
            let c = Rational::from_integer(c * sign(q));
            let (e1, e2, e3) = ((m + n + 2 - s) as u32, (m - q) as u32, (s - m + q) as u32);
            let first = &(&lin(mu, -e).pow(e1) * &lin(l - nu, -m * e).pow(e2))
                * &lin(mu, -(n + 2) * e).pow(e3);
            let first = first.scale(&rat(sign(m + n + s + 1)));
            let second = &(&lin(nu - mu, -e).pow(e1) * &lin(l, -(m + 2) * e).pow(e2))
                * &lin(mu - nu, -n * e).pow(e3);
            out = &out + &(&first + &second).scale(&c);
        }
    }
    Ok(out)
}

/// Evaluates the localized assembly
///
/// `(m+n+2) λμν Σ_i (-1)^i C(m+n+1,i) [Ŝ_{-1} - Ŝ_{+1}](m+n+1-2i)
///  - (m(m+2)μν + n(n+2)λν + 2λμ) Σ_i (-1)^i C(m+n+2,i) Ŝ_0(m+n+2-2i)`,
///
/// which equals `2^{m+n+2} (m+n+2)! F(λ, μ, ν)`.
pub fn assemble_f_loc(d: Dims, cls: &KahlerClass) -> Result<Rational> {
    let [l, mu, nu] = cls.integral_coords()?;
    let (m, n) = (d.mi(), d.ni());
    let k = m + n + 1;
    let diff = &s_hat(d, Epsilon::Minus, cls)? - &s_hat(d, Epsilon::Plus, cls)?;
    let s0 = s_hat(d, Epsilon::Zero, cls)?;

    let alt = |poly: &UniPoly, top: i64| -> Rational {
        (0..=top)
            .map(|i| {
                let coeff = Rational::from_integer(binomial(top, i) * sign(i));
                coeff * poly.eval(&rat(top - 2 * i))
            })
            .sum()
    };
    let lmn = Integer::from(l) * mu * nu;
    let first = Rational::from_integer(int(m + n + 2) * lmn) * alt(&diff, k);
    let slope = int(m * (m + 2)) * mu * nu + int(n * (n + 2)) * l * nu + int(2) * l * mu;
    let second = Rational::from_integer(slope) * alt(&s0, k + 1);
    Ok(first - second)
}

/// `2^{m+n+2} (m+n+2)!`, the constant linking the assembly to `F`.
pub fn assembly_constant(d: Dims) -> Integer {
    let k = (d.m + d.n + 2) as i64;
    ipow(2, k as u32) * factorial(k).expect("non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn d(m: u32, n: u32) -> Dims {
        Dims::new(m, n).unwrap()
    }

    /// The (1,2) polynomial as printed, transcribed term by term.
    fn printed_f12() -> MultiPoly3 {
        MultiPoly3::from_terms(
            [
                (120, [2, 3, 2]),
                (-420, [2, 2, 3]),
                (390, [2, 1, 4]),
                (-120, [2, 0, 5]),
                (60, [1, 4, 2]),
                (-90, [1, 3, 3]),
                (150, [1, 2, 4]),
                (-99, [1, 1, 5]),
                (24, [1, 0, 6]),
                (-90, [0, 4, 3]),
                (90, [0, 3, 4]),
                (-45, [0, 2, 5]),
                (9, [0, 1, 6]),
            ]
            .map(|(c, e)| (rat(c), e)),
        )
    }

    #[test]
    fn f12_matches_printed_polynomial() {
        let polys = compute_f(d(1, 2)).unwrap();
        assert_eq!(polys.f, printed_f12());
        assert_eq!(polys.f.coefficient([2, 3, 2]), rat(120));
        assert_eq!(polys.eval_f(&KahlerClass::from_ints(3, 4, 2)), rat(-2304));
    }

    #[test]
    fn g_and_h_for_m1_n1() {
        // frozen from an independent per-(s,q) symbolic expansion
        let g = MultiPoly3::from_terms(
            [(-24, [1, 2, 1]), (24, [1, 1, 2]), (-8, [1, 0, 3]), (12, [0, 2, 2]), (-8, [0, 1, 3]), (2, [0, 0, 4])]
                .map(|(c, e)| (rat(c), e)),
        );
        let h = MultiPoly3::from_terms(
            [(-48, [1, 2, 0]), (-24, [0, 2, 1]), (72, [0, 1, 2]), (-24, [0, 0, 3])].map(|(c, e)| (rat(c), e)),
        );
        assert_eq!(compute_g(d(1, 1)), g);
        assert_eq!(compute_h(d(1, 1)), h);
        assert_eq!(g.eval(&KahlerClass::from_ints(2, 3, 1).point()), rat(-218));
    }

    #[test]
    fn g_vanishes_on_z_zero() {
        for (m, n) in [(1, 1), (1, 2), (2, 5), (3, 3)] {
            let polys = compute_f(d(m, n)).unwrap();
            for (mon, _) in polys.g.terms() {
                assert!(mon.0[2] > 0, "g has a z-free term {mon:?}");
            }
            for (mon, _) in polys.f.terms() {
                assert!(mon.0[2] > 0);
            }
            assert_eq!(polys.g.homogeneous_degree(), Some(m + n + 2));
            assert_eq!(polys.h.homogeneous_degree(), Some(m + n + 1));
        }
    }

    #[test]
    fn slope_values() {
        assert_eq!(mu_omega(d(1, 2), &KahlerClass::from_ints(3, 4, 2)).unwrap(), rat(1));
        assert_eq!(mu_omega(d(1, 1), &KahlerClass::from_ints(1, 1, 1)).unwrap(), frac(8, 3));
        assert!(matches!(
            mu_omega(d(1, 2), &KahlerClass::from_ints(1, 1, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn anticanonical_class() {
        assert_eq!(c1_class(d(1, 2)), KahlerClass::from_ints(3, 4, 2));
        assert_eq!(c1_class(d(1, 1)), KahlerClass::from_ints(3, 3, 2));
        assert_eq!(c1_class(d(9, 10)), KahlerClass::from_ints(11, 12, 2));
    }

    #[test]
    fn fixed_component_table() {
        let [a, b] = fixed_components(d(1, 2), &KahlerClass::from_ints(3, 4, 2)).unwrap();
        let row = |f: &FixedComponent| (f.r, f.kappa, f.a, f.b, f.rho, f.tau, f.delta);
        assert_eq!(row(&a), (-1, -4, 1, 4, 1, 4, -1));
        assert_eq!(row(&b), (1, -2, 3, 2, 3, 2, 1));
        let [z, _] = fixed_components(d(3, 5), &KahlerClass::from_ints(0, 0, 0)).unwrap();
        assert_eq!(row(&z), (-1, 0, 3, 7, 0, 0, -1));
        assert!(fixed_components(d(1, 2), &KahlerClass::new(frac(1, 2), rat(1), rat(1))).is_err());
    }

    #[test]
    fn sinh_sums() {
        assert_eq!(sinh_sum(2, 2), int(8));
        assert_eq!(sinh_sum(3, 1), int(0));
        assert_eq!(sinh_sum(3, 4), int(0));
        assert_eq!(sinh_sum(0, 0), int(1));
    }

    #[test]
    fn s_hat_component_frozen_values() {
        let cls = KahlerClass::from_ints(1, 1, 1);
        let [first, _] = fixed_components(d(1, 1), &cls).unwrap();
        let got = s_hat_component(d(1, 1), &first, Epsilon::Plus, &cls).unwrap();
        assert_eq!(got, UniPoly::from_ints(&[-42, 104, -84, 24, -2]));
        let zero = s_hat_component(d(1, 1), &first, Epsilon::Zero, &cls).unwrap();
        assert_eq!(zero.term_count(), 1);
        assert_eq!(zero.order(), Some(4));
    }

    #[test]
    fn s_hat_top_coefficients() {
        let dd = d(1, 2);
        let cls = KahlerClass::from_ints(3, 4, 2);
        let plus = s_hat(dd, Epsilon::Plus, &cls).unwrap();
        assert_eq!(plus, UniPoly::from_ints(&[96, -6480, 24960, -36960, 24480, -6096]));
        let polys = compute_f(dd).unwrap();
        assert_eq!(plus.coefficient(5), polys.g.eval(&cls.point()));
        assert_eq!(plus.coefficient(4), -polys.h.eval(&cls.point()));
        let minus = s_hat(dd, Epsilon::Minus, &cls).unwrap();
        assert!((&minus - &plus).coefficient(5).is_zero());
        let zero = s_hat(dd, Epsilon::Zero, &cls).unwrap();
        assert_eq!(zero, UniPoly::monomial(rat(-6096), 5));
    }

    #[test]
    fn s_hat_routes_agree() {
        let cases = [(d(1, 2), KahlerClass::from_ints(3, 4, 2)), (d(1, 1), KahlerClass::from_ints(5, -2, 3))];
        for (dd, cls) in cases {
            for eps in Epsilon::ALL {
                assert_eq!(s_hat(dd, eps, &cls).unwrap(), s_hat_direct(dd, eps, &cls).unwrap());
            }
        }
        let direct = s_hat_direct(d(2, 3), Epsilon::Zero, &KahlerClass::from_ints(1, 1, 1)).unwrap();
        assert_eq!(direct, UniPoly::monomial(rat(-4), 7));
        let zero = s_hat(d(1, 1), Epsilon::Zero, &KahlerClass::from_ints(2, 3, 1)).unwrap();
        assert_eq!(zero, UniPoly::monomial(rat(-218), 4));
    }

    #[test]
    fn mismatched_component_is_rejected() {
        let [first, _] = fixed_components(d(1, 2), &KahlerClass::from_ints(3, 4, 2)).unwrap();
        let other = KahlerClass::from_ints(1, 1, 1);
        assert!(matches!(
            s_hat_component(d(1, 2), &first, Epsilon::Zero, &other),
            Err(Error::Usage(_))
        ));
        assert!(s_hat_component(d(1, 3), &first, Epsilon::Zero, &KahlerClass::from_ints(3, 4, 2)).is_err());
    }

    #[test]
    fn assembly_identity_examples() {
        assert_eq!(assemble_f_loc(d(1, 2), &KahlerClass::from_ints(3, 4, 2)).unwrap(), rat(-8847360));
        assert!(assemble_f_loc(d(2, 3), &KahlerClass::from_ints(4, -7, 0)).unwrap().is_zero());
        assert_eq!(assemble_f_loc(d(2, 2), &KahlerClass::from_ints(1, 1, 1)).unwrap(), rat(-1658880));
        assert_eq!(assembly_constant(d(1, 2)), int(32 * 120));
    }
}
