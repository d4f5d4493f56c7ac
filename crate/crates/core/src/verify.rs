//! Self-check battery: every derivation step re-run against exact data.
//!
//! Checks 1 to 10 are fast; check 11 (cyclotomic congruences) only runs
//! with `deep` enabled.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ipow, factorial, rat, Rational};
use crate::character::{
    assemble_f_loc, assembly_constant, c1_class, compute_f, fixed_components, mu_omega, s_hat, s_hat_component,
    s_hat_direct, sinh_sum, Dims, Epsilon, KahlerClass,
};
use crate::error::Result;
use crate::explorer::{default_width, limit_l1, limit_l2, Explorer, Sign};
use crate::localization::{build_series_context, lambda_sum_check, series_s_hat_component, t_sum_congruence_check};
use crate::poly::{sturm_isolate, Isolation, MultiPoly3, SturmChain};

pub const SEED: u64 = 0x5eed_f07a;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

type Outcome = Result<(bool, String)>;

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult {
        id,
        name,
        pass,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn dims(m: u32, n: u32) -> Dims {
    Dims { m, n }
}

/// Pairs `1 <= m < n <= 10`.
pub fn reference_pairs() -> Vec<Dims> {
    (1..=10).flat_map(|m| (m + 1..=10).map(move |n| dims(m, n))).collect()
}

/// The reference `(m, n) = (1, 2)` polynomial, term by term.
pub fn golden_f12() -> MultiPoly3 {
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

/// Integral classes with entries in `[-9, 9]`, reproducible per `(m, n)`.
pub fn sample_classes(d: Dims, count: usize) -> Vec<KahlerClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((d.m as u64) << 32 | d.n as u64));
    (0..count)
        .map(|_| KahlerClass::from_ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9)))
        .collect()
}

fn small_pairs(max_total: u32) -> Vec<Dims> {
    (1..max_total)
        .flat_map(|m| (1..=max_total - m).map(move |n| dims(m, n)))
        .collect()
}

fn first_failure<T: Sync>(items: Vec<T>, f: impl Fn(&T) -> Result<Option<String>> + Sync + Send) -> Result<Option<String>> {
    let results: Vec<Result<Option<String>>> = items.par_iter().map(f).collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn verdict(failure: Option<String>, ok: String) -> Outcome {
    Ok(match failure {
        Some(msg) => (false, msg),
        None => (true, ok),
    })
}

pub fn check_golden_polynomial() -> CheckResult {
    timed(1, "golden (1,2) polynomial", || {
        let polys = compute_f(dims(1, 2))?;
        let golden = golden_f12();
        Ok(if polys.f == golden {
            (true, format!("{} terms match exactly", golden.len()))
        } else {
            (false, format!("computed {} differs from {}", polys.f, golden))
        })
    })
}

pub fn check_limit_signs() -> CheckResult {
    timed(2, "limit signs over 1<=m<n<=10", || {
        let failure = first_failure(reference_pairs(), |&d| {
            let (l1, l2) = (limit_l1(d), limit_l2(d));
            Ok((Sign::of(&l1) != Sign::Negative || Sign::of(&l2) != Sign::Positive)
                .then(|| format!("{d}: limit_l1 = {l1}, limit_l2 = {l2}")))
        })?;
        verdict(failure, "45 pairs: limit_l1 < 0 and limit_l2 > 0".into())
    })
}

pub fn check_ke_obstruction() -> CheckResult {
    timed(3, "F(m+2,n+2,2) != 0 over 1<=m<n<=10", || {
        let failure = first_failure(reference_pairs(), |&d| {
            let ke = Explorer::new(d)?.ke_check();
            Ok(ke.ke_admissible.then(|| format!("{d}: F(c1) = 0")))
        })?;
        verdict(failure, "45 pairs: F(c1) nonzero".into())
    })
}

pub fn check_assembly_identity() -> CheckResult {
    timed(4, "localization assembly identity", || {
        let pairs = small_pairs(7);
        let count = pairs.len();
        let failure = first_failure(pairs, |&d| {
            let polys = compute_f(d)?;
            let k = Rational::from_integer(assembly_constant(d));
            for cls in sample_classes(d, 20) {
                let lhs = assemble_f_loc(d, &cls)?;
                let rhs = &k * polys.eval_f(&cls);
                if lhs != rhs {
                    return Ok(Some(format!("{d} at {cls:?}: {lhs} != {rhs}")));
                }
            }
            Ok(None)
        })?;
        verdict(failure, format!("{count} pairs x 20 classes exact"))
    })
}

pub fn check_s_hat_structure() -> CheckResult {
    timed(5, "reduced sum structure", || {
        let pairs = small_pairs(7);
        let failure = first_failure(pairs, |&d| {
            let polys = compute_f(d)?;
            let top = (d.m + d.n + 2) as usize;
            for cls in sample_classes(d, 20) {
                let p = cls.point();
                let (g, h) = (polys.g.eval(&p), polys.h.eval(&p));
                for eps in Epsilon::ALL {
                    let sh = s_hat(d, eps, &cls)?;
                    if sh.coefficient(top) != g {
                        return Ok(Some(format!("{d} {cls:?} eps={}: top coefficient != g", eps.value())));
                    }
                    if sh.coefficient(top - 1) != -rat(eps.value()) * &h {
                        return Ok(Some(format!("{d} {cls:?} eps={}: next coefficient != -eps h", eps.value())));
                    }
                    if eps == Epsilon::Zero && sh.term_count() > 1 {
                        return Ok(Some(format!("{d} {cls:?}: S_0 = {sh} is not a monomial")));
                    }
                    if sh != s_hat_direct(d, eps, &cls)? {
                        return Ok(Some(format!("{d} {cls:?} eps={}: direct expansion differs", eps.value())));
                    }
                }
            }
            Ok(None)
        })?;
        verdict(failure, "top coefficients, monomial S_0 and direct expansion agree".into())
    })
}

pub fn check_series_oracle() -> CheckResult {
    timed(6, "series oracle equivalence", || {
        let mut cases = Vec::new();
        for d in [dims(1, 1), dims(1, 2), dims(2, 2), dims(1, 3)] {
            for cls in [[3, 4, 2], [1, 1, 1], [2, -1, 1]] {
                cases.push((d, KahlerClass::from_ints(cls[0], cls[1], cls[2])));
            }
        }
        let count = cases.len();
        let failure = first_failure(cases, |(d, cls)| {
            for fc in fixed_components(*d, cls)? {
                for eps in Epsilon::ALL {
                    let closed = s_hat_component(*d, &fc, eps, cls)?;
                    for zeta in -3..=3 {
                        let ctx = build_series_context(*d, &fc, eps, zeta, cls)?;
                        let series = series_s_hat_component(&ctx)?;
                        let expected = closed.eval(&rat(zeta));
                        if series != expected {
                            return Ok(Some(format!(
                                "{d} {cls:?} component {} eps={} zeta={zeta}: {series} != {expected}",
                                fc.index,
                                eps.value()
                            )));
                        }
                    }
                }
            }
            Ok(None)
        })?;
        verdict(failure, format!("{count} (dims, class) cases, 2 components, 3 eps, 7 zeta"))
    })
}

pub fn check_sinh_identity() -> CheckResult {
    timed(7, "sinh power identity", || {
        for k in 0..=12u32 {
            for l in 0..=k + 1 {
                let expected = if l == k {
                    ipow(2, k) * factorial(k as i64)?
                } else {
                    Zero::zero()
                };
                let got = sinh_sum(k, l);
                if got != expected {
                    return Ok((false, format!("k={k} l={l}: {got} != {expected}")));
                }
            }
        }
        Ok((true, "k <= 12, l <= k+1".into()))
    })
}

pub fn check_vanishing_orders() -> CheckResult {
    timed(8, "vanishing orders along l1 and l2", || {
        let failure = first_failure(reference_pairs(), |&d| {
            let ex = Explorer::new(d)?;
            let (e1, e2) = (ex.expand_l1()?, ex.expand_l2()?);
            if e1.order != Some((d.n + 3) as usize) || e1.leading != limit_l1(d) {
                return Ok(Some(format!("{d}: l1 order {:?}, leading {}", e1.order, e1.leading)));
            }
            if e2.order != Some(2) || e2.leading != limit_l2(d) {
                return Ok(Some(format!("{d}: l2 order {:?}, leading {}", e2.order, e2.leading)));
            }
            Ok(None)
        })?;
        verdict(failure, "45 pairs: ord n+3 and 2 with matching leading coefficients".into())
    })
}

/// Segments for the isolation check: the scan witness plus fixed chords of
/// the triangle.
fn isolation_segments(ex: &Explorer) -> Result<Vec<(KahlerClass, KahlerClass)>> {
    let mut segs = Vec::new();
    if let Some(w) = ex.sign_change_witness(&default_width())? {
        let parse = |c: &[String; 3]| -> Result<KahlerClass> {
            Ok(KahlerClass::new(
                crate::arith::parse_rational(&c[0])?,
                crate::arith::parse_rational(&c[1])?,
                crate::arith::parse_rational(&c[2])?,
            ))
        };
        segs.push((parse(&w.from.0)?, parse(&w.to.0)?));
    }
    let c1 = c1_class(ex.dims());
    for p in [[8, 8, 1], [10, 1, 1], [1, 10, 1], [20, 20, 1]] {
        segs.push((KahlerClass::from_ints(p[0], p[1], p[2]), c1.clone()));
    }
    Ok(segs)
}

pub fn check_root_isolation() -> CheckResult {
    timed(9, "root isolation soundness", || {
        let ex = Explorer::new(dims(1, 2))?;
        let width = default_width();
        let mut sign_changes = 0;
        let mut intervals = 0;
        for (p, q) in isolation_segments(&ex)? {
            let (sp, sq) = (ex.sign_at(&p), ex.sign_at(&q));
            let line = ex.polys().f.restrict_to_line(&p.point(), &q.point())?;
            let sf = line.square_free();
            let Isolation::Roots(roots) = sturm_isolate(&line, &Rational::zero(), &rat(1), &width)? else {
                return Ok((false, format!("segment {p:?} -> {q:?} reported identically zero")));
            };
            let opposite = sp != Sign::Zero && sq != Sign::Zero && sp != sq;
            if opposite {
                sign_changes += 1;
                if roots.is_empty() {
                    return Ok((false, format!("signs differ on {p:?} -> {q:?} but no interval")));
                }
            }
            for r in &roots {
                let (a, b) = (sf.eval(&r.lo), sf.eval(&r.hi));
                if Sign::of(&a) == Sign::Zero || Sign::of(&a) == Sign::of(&b) {
                    return Ok((false, format!("interval ({}, {}] has no sign change", r.lo, r.hi)));
                }
                if r.width() > width {
                    return Ok((false, format!("interval ({}, {}] wider than requested", r.lo, r.hi)));
                }
            }
            let count = SturmChain::new(&sf).count_roots(&Rational::zero(), &rat(1));
            if count != roots.len() {
                return Ok((false, format!("Sturm count {count} != {} intervals", roots.len())));
            }
            intervals += roots.len();
        }
        Ok(if sign_changes == 0 {
            (false, "no segment with a sign change was found".into())
        } else {
            (true, format!("{sign_changes} sign-changing segments, {intervals} intervals"))
        })
    })
}

pub fn check_structure() -> CheckResult {
    timed(10, "integrality, homogeneity, F(x,y,0) = 0, slope of c1", || {
        let all: Vec<Dims> = (1..=10).flat_map(|m| (1..=10).map(move |n| dims(m, n))).collect();
        let failure = first_failure(all, |&d| {
            let polys = compute_f(d)?;
            if !polys.f.is_integral() || polys.f.homogeneous_degree() != Some(d.m + d.n + 4) {
                return Ok(Some(format!("{d}: F not integral of degree m+n+4")));
            }
            if polys.f.terms().any(|(mon, _)| mon.0[2] == 0) {
                return Ok(Some(format!("{d}: F(x,y,0) is not identically zero")));
            }
            Ok(None)
        })?;
        if failure.is_some() {
            return verdict(failure, String::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..10 {
            let d = dims(rng.gen_range(1..=30), rng.gen_range(1..=30));
            let mu = mu_omega(d, &c1_class(d))?;
            if mu != rat(1) {
                return Ok((false, format!("{d}: slope of c1 is {mu}")));
            }
        }
        Ok((true, "100 pairs m,n <= 10; slope 1 at c1 for 10 random pairs".into()))
    })
}

pub fn check_congruences() -> CheckResult {
    timed(11, "cyclotomic congruences", || {
        let mut cases = Vec::new();
        for p in [3u32, 5] {
            for d in [dims(1, 1), dims(1, 2)] {
                for cls in [[3, 4, 2], [1, 1, 1]] {
                    cases.push((p, d, KahlerClass::from_ints(cls[0], cls[1], cls[2])));
                }
            }
        }
        let checked = std::sync::atomic::AtomicUsize::new(0);
        let failure = first_failure(cases, |(p, d, cls)| {
            for fc in fixed_components(*d, cls)? {
                for eps in Epsilon::ALL {
                    for zeta in [1, 2] {
                        let w = fc.weight(eps, zeta);
                        let total = (d.m + d.n) as i64;
                        for s in 0..=total {
                            for j in 0..=total - s {
                                let v = lambda_sum_check(*p, *d, s, j, w, fc.delta)?;
                                if !v.pass {
                                    return Ok(Some(format!("lambda sum failed: {}", v.params)));
                                }
                            }
                        }
                        let v = t_sum_congruence_check(*p, *d, &fc, eps, zeta, cls)?;
                        if !v.pass {
                            return Ok(Some(format!("T sum failed: {} (witness {})", v.params, v.witness)));
                        }
                        checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    }
                }
            }
            Ok(None)
        })?;
        verdict(failure, format!("{} component/eps/zeta cases", checked.into_inner()))
    })
}

/// Runs the battery in criterion order.
pub fn run(deep: bool) -> Vec<CheckResult> {
    let mut checks: Vec<fn() -> CheckResult> = vec![
        check_golden_polynomial,
        check_limit_signs,
        check_ke_obstruction,
        check_assembly_identity,
        check_s_hat_structure,
        check_series_oracle,
        check_sinh_identity,
        check_vanishing_orders,
        check_root_isolation,
        check_structure,
    ];
    if deep {
        checks.push(check_congruences);
    }
    checks.into_iter().map(|c| c()).collect()
}
