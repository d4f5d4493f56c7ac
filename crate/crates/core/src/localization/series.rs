use num_traits::{One, Zero};

use crate::arith::{binomial, int_pow, rat, Rational};
use crate::character::{Dims, Epsilon, FixedComponent, KahlerClass};
use crate::error::{Error, Result};
use crate::poly::{TruncSeries2, UniPoly};

/// The power series `Φ, Ψ` of one fixed component at fixed `(ε, ζ)`,
/// truncated at total degree `m + n`.
///
/// `Φ = (1+x)^{-δ} (1+y)^{δ} - 1`, `Ψ = (1+x)^{β} (1+y)^{γ} - 1` with
/// `β = ζρ - εa`, `γ = ζτ - εb`.
#[derive(Debug, Clone)]
pub struct SeriesContext {
    pub dims: Dims,
    pub degree: u32,
    pub phi: TruncSeries2,
    pub psi: TruncSeries2,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    /// `ζκ - εr`
    pub weight: i64,
    base: TruncSeries2,
}

pub fn build_series_context(
    d: Dims,
    fc: &FixedComponent,
    eps: Epsilon,
    zeta: i64,
    cls: &KahlerClass,
) -> Result<SeriesContext> {
    if fc.dims() != d || fc.class() != cls.integral_coords()? {
        return Err(Error::usage("fixed component does not belong to this class"));
    }
    let degree = d.m + d.n;
    let one = TruncSeries2::one(degree);
    let (beta, gamma) = fc.beta_gamma(eps, zeta);
    let phi = TruncSeries2::one_plus_x_pow(degree, -fc.delta).mul(&TruncSeries2::one_plus_y_pow(degree, fc.delta))?;
    let psi = TruncSeries2::one_plus_x_pow(degree, beta).mul(&TruncSeries2::one_plus_y_pow(degree, gamma))?;
    let base = TruncSeries2::one_plus_x_pow(degree, d.m as i64)
        .mul(&TruncSeries2::one_plus_y_pow(degree, d.n as i64))?;
    Ok(SeriesContext {
        dims: d,
        degree,
        phi: &phi - &one,
        psi: &psi - &one,
        beta,
        gamma,
        delta: fc.delta,
        weight: fc.weight(eps, zeta),
        base,
    })
}

/// `x^m y^n` coefficient of `(1+x)^m (1+y)^n Φ^j Ψ^s`.
pub fn xy_coefficient(ctx: &SeriesContext, s: u32, j: u32) -> Result<Rational> {
    let prod = ctx.base.mul(&ctx.phi.pow(j))?.mul(&ctx.psi.pow(s))?;
    prod.coefficient(ctx.dims.m, ctx.dims.n)
}

/// Value at `ζ` of the component's share of `Ŝ_ε`, extracted from the full
/// truncated series with only the `j = m+n-s` terms weighted by `Λ_j(1)`.
pub fn series_s_hat_component(ctx: &SeriesContext) -> Result<Rational> {
    let total = (ctx.dims.m + ctx.dims.n) as i64;
    let w = rat(ctx.weight);
    let delta = rat(ctx.delta);
    let mut acc = Rational::zero();
    for s in 0..=total {
        let lambda_one = int_pow(&delta, total - s + 1)? * int_pow(&w, total + 2 - s)?;
        if lambda_one.is_zero() {
            continue;
        }
        let c = xy_coefficient(ctx, s as u32, (total - s) as u32)?;
        acc += Rational::from_integer(binomial(total + 2, s)) * lambda_one * c;
    }
    Ok(acc)
}

/// The series route as a polynomial in `ζ`, by interpolation through
/// `ζ = 0, ..., m+n+2`.
pub fn series_s_hat_poly(d: Dims, fc: &FixedComponent, eps: Epsilon, cls: &KahlerClass) -> Result<UniPoly> {
    let nodes: Vec<i64> = (0..=(d.m + d.n + 2) as i64).collect();
    let mut values = Vec::with_capacity(nodes.len());
    for &z in &nodes {
        values.push(series_s_hat_component(&build_series_context(d, fc, eps, z, cls)?)?);
    }
    Ok(interpolate(&nodes, &values))
}

fn interpolate(nodes: &[i64], values: &[Rational]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, (&xi, yi)) in nodes.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Rational::one();
        for (k, &xk) in nodes.iter().enumerate() {
            if k != i {
                basis = &basis * &UniPoly::linear(Rational::one(), rat(-xk));
                denom *= rat(xi - xk);
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}
