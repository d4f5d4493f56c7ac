use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use super::cyclo::{validate_odd_prime, CycloElement};
use super::series::{build_series_context, xy_coefficient};
use crate::arith::{binomial, rat, Rational};
use crate::character::{s_hat_component, Dims, Epsilon, FixedComponent, KahlerClass};
use crate::error::{Error, Result};
use crate::poly::TruncSeries2;

/// Outcome of one cyclotomic check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub params: serde_json::Value,
    pub pass: bool,
    /// The exact integer the roots-of-unity sum collapsed to.
    pub witness: String,
}

fn check_j(d: Dims, s: i64, j: i64) -> Result<()> {
    let total = (d.m + d.n) as i64;
    if s < 0 || s > total || j < 0 || j > total - s {
        return Err(Error::usage(format!("need 0 <= j <= m+n-s, got s={s}, j={j} for {d}")));
    }
    Ok(())
}

fn check_delta(delta: i64) -> Result<()> {
    if delta.abs() != 1 {
        return Err(Error::usage(format!("δ must be ±1, got {delta}")));
    }
    Ok(())
}

/// `lim_{t→1} Λ_j(t)` where
/// `Λ_j(t) = t^{sw+δ} (t^w - 1)^{m+n+2-s} / ((t - 1)(t^δ - 1)^{j+1})`, `w = ζκ - εr`.
///
/// Computed from the expansions of numerator and denominator at `t = 1 + u`.
pub fn lambda_at_one(d: Dims, s: i64, j: i64, weight: i64, delta: i64) -> Result<Rational> {
    check_j(d, s, j)?;
    check_delta(delta)?;
    let e = (d.m + d.n) as i64 + 2 - s;
    let order = (j + 2) as u32;
    let one = TruncSeries2::one(order);
    let u = TruncSeries2::x(order);

    let shifted = TruncSeries2::one_plus_x_pow(order, s * weight + delta);
    let factor = &TruncSeries2::one_plus_x_pow(order, weight) - &one;
    let numer = shifted.mul(&factor.pow(e as u32))?;
    let denom = u.mul(&(&TruncSeries2::one_plus_x_pow(order, delta) - &one).pow((j + 1) as u32))?;

    let lead = denom.valuation().ok_or_else(|| Error::invariant("Λ_j denominator vanished"))?;
    for k in 0..lead {
        if !numer.coefficient(k, 0)?.is_zero() {
            return Err(Error::invariant(format!("Λ_j has a pole at t = 1 (s={s}, j={j})")));
        }
    }
    Ok(numer.coefficient(lead, 0)? / denom.coefficient(lead, 0)?)
}

/// `Λ_j(α_p^k)` in exact cyclotomic arithmetic.
pub fn lambda_at_root(p: u32, k: i64, d: Dims, s: i64, j: i64, weight: i64, delta: i64) -> Result<CycloElement> {
    check_j(d, s, j)?;
    check_delta(delta)?;
    let e = (d.m + d.n) as i64 + 2 - s;
    let one = CycloElement::one(p);
    let t_pow = |exp: i64| CycloElement::alpha_pow(p, k * exp);
    let numer = &t_pow(s * weight + delta) * &(&t_pow(weight) - &one).pow(e as u32);
    let denom = &(&t_pow(1) - &one) * &(&t_pow(delta) - &one).pow((j + 1) as u32);
    numer.div(&denom)
}

fn collapse_to_integer(sum: &CycloElement, what: &str) -> Result<BigInt> {
    let r = sum
        .as_rational()
        .ok_or_else(|| Error::invariant(format!("{what}: roots-of-unity sum is not rational")))?;
    if !r.is_integer() {
        return Err(Error::invariant(format!("{what}: roots-of-unity sum {r} is not an integer")));
    }
    Ok(r.to_integer())
}

fn congruent(a: &BigInt, b: &Rational, p: u32) -> bool {
    b.is_integer() && (a - b.to_integer()).mod_floor(&BigInt::from(p)).is_zero()
}

/// Checks `-Σ_{k=1}^{p-1} Λ_j(α_p^k) ≡ Λ_j(1) (mod p)`.
pub fn lambda_sum_check(p: u32, d: Dims, s: i64, j: i64, weight: i64, delta: i64) -> Result<Verdict> {
    validate_odd_prime(p)?;
    check_j(d, s, j)?;
    let mut sum = CycloElement::zero(p);
    for k in 1..p as i64 {
        sum = &sum + &lambda_at_root(p, k, d, s, j, weight, delta)?;
    }
    let total = collapse_to_integer(&sum, "lambda_sum_check")?;
    let at_one = lambda_at_one(d, s, j, weight, delta)?;
    Ok(Verdict {
        check: "lambda_sum".into(),
        params: json!({"p": p, "m": d.m, "n": d.n, "s": s, "j": j, "weight": weight, "delta": delta}),
        pass: congruent(&-&total, &at_one, p),
        witness: total.to_string(),
    })
}

/// Checks that `Σ_{k=1}^{p-1} T_i(k, ε, ζ)`, expanded over all `(s, j)` with
/// exact `Λ_j(α_p^k)` weights, is an integer congruent mod `p` to the reduced
/// closed form of the component evaluated at `ζ`.
pub fn t_sum_congruence_check(
    p: u32,
    d: Dims,
    fc: &FixedComponent,
    eps: Epsilon,
    zeta: i64,
    cls: &KahlerClass,
) -> Result<Verdict> {
    validate_odd_prime(p)?;
    let ctx = build_series_context(d, fc, eps, zeta, cls)?;
    let total = (d.m + d.n) as i64;
    let weight = fc.weight(eps, zeta);

    let mut coeffs = Vec::new();
    for s in 0..=total {
        for j in 0..=total - s {
            let c = xy_coefficient(&ctx, s as u32, j as u32)?;
            if !c.is_zero() {
                coeffs.push((s, j, Rational::from_integer(binomial(total + 2, s)) * c));
            }
        }
    }

    let mut sum = CycloElement::zero(p);
    for k in 1..p as i64 {
        for (s, j, c) in &coeffs {
            let lam = lambda_at_root(p, k, d, *s, *j, weight, fc.delta)?;
            sum = &sum - &lam.scale(c);
        }
    }
    let witness = collapse_to_integer(&sum, "t_sum_congruence_check")?;
    let closed = s_hat_component(d, fc, eps, cls)?.eval(&rat(zeta));
    Ok(Verdict {
        check: "t_sum_congruence".into(),
        params: json!({
            "p": p, "m": d.m, "n": d.n, "component": fc.index,
            "epsilon": eps.value(), "zeta": zeta, "class": fc.class(),
        }),
        pass: congruent(&witness, &closed, p),
        witness: witness.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::character::fixed_components;

    fn d(m: u32, n: u32) -> Dims {
        Dims::new(m, n).unwrap()
    }

    #[test]
    fn lambda_limits() {
        assert_eq!(lambda_at_one(d(1, 1), 0, 2, 3, 1).unwrap(), rat(81));
        assert_eq!(lambda_at_one(d(1, 1), 0, 1, 3, 1).unwrap(), rat(0));
        assert_eq!(lambda_at_one(d(1, 1), 0, 0, 5, -1).unwrap(), rat(0));
        assert_eq!(lambda_at_one(d(1, 2), 1, 2, 0, -1).unwrap(), rat(0));
        // δ^{m+n-s+1} w^{m+n+2-s} with δ = -1
        assert_eq!(lambda_at_one(d(1, 2), 1, 2, 2, -1).unwrap(), rat(-16));
        assert!(lambda_at_one(d(1, 1), 1, 2, 1, 1).is_err());
    }

    #[test]
    fn lambda_sum_examples() {
        let v = lambda_sum_check(3, d(1, 1), 2, 0, 1, 1).unwrap();
        assert!(v.pass);
        assert_eq!(v.witness, "2");
        let v = lambda_sum_check(5, d(1, 2), 1, 2, 2, -1).unwrap();
        assert!(v.pass);
        assert_eq!(v.witness, "-4");
        assert!(matches!(lambda_sum_check(4, d(1, 1), 0, 0, 1, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn t_sum_examples() {
        let cls = KahlerClass::from_ints(1, 1, 1);
        let fcs = fixed_components(d(1, 1), &cls).unwrap();
        assert!(t_sum_congruence_check(3, d(1, 1), &fcs[0], Epsilon::Zero, 1, &cls).unwrap().pass);

        let cls = KahlerClass::from_ints(3, 4, 2);
        let fcs = fixed_components(d(1, 2), &cls).unwrap();
        assert!(t_sum_congruence_check(5, d(1, 2), &fcs[1], Epsilon::Minus, 2, &cls).unwrap().pass);
        assert!(t_sum_congruence_check(9, d(1, 2), &fcs[1], Epsilon::Minus, 2, &cls).is_err());
    }
}
