use num_traits::{Signed, Zero};
use serde::Serialize;

use super::UniPoly;
use crate::arith::{rational_str, Rational};
use crate::error::{Error, Result};

/// Open interval `(lo, hi)` holding exactly one real root of the
/// square-free part. Neither endpoint is a root, so the square-free part
/// takes opposite signs there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(with = "rational_str")]
    pub lo: Rational,
    #[serde(with = "rational_str")]
    pub hi: Rational,
    /// The root is a simple root of the original polynomial.
    pub simple: bool,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isolation {
    /// The input polynomial is identically zero; every point is a root.
    IdenticallyZero,
    Roots(Vec<RootInterval>),
}

impl Isolation {
    pub fn roots(&self) -> Option<&[RootInterval]> {
        match self {
            Isolation::IdenticallyZero => None,
            Isolation::Roots(r) => Some(r),
        }
    }
}

/// Sturm sequence `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)`.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        // positive rescaling leaves sign variations unchanged
        let p = p.primitive();
        let mut cur = p.derivative().primitive();
        let mut seq = vec![p];
        while !cur.is_zero() {
            let prev = seq.last().expect("nonempty");
            let (_, r) = prev.div_rem(&cur).expect("nonzero divisor");
            seq.push(cur);
            cur = (-&r).primitive();
        }
        SturmChain { seq }
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.seq
    }

    /// Sign variations at `t`, zeros skipped.
    pub fn variations(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let s = p.sign_at(t);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Isolates every distinct real root of `p` in `(lo, hi]`, bisecting each
/// isolating interval until it is no wider than `width`.
///
/// Intervals are returned in increasing order and are pairwise disjoint.
/// When a root sits exactly on `hi`, its interval pokes slightly past `hi`.
pub fn sturm_isolate(p: &UniPoly, lo: &Rational, hi: &Rational, width: &Rational) -> Result<Isolation> {
    if lo >= hi {
        return Err(Error::usage(format!("empty interval ({lo}, {hi}]")));
    }
    if !width.is_positive() {
        return Err(Error::usage("isolation width must be positive"));
    }
    if p.is_zero() {
        return Ok(Isolation::IdenticallyZero);
    }
    let sqfree = p.square_free().primitive();
    if sqfree.degree() == Some(0) {
        return Ok(Isolation::Roots(Vec::new()));
    }
    let chain = SturmChain::new(&sqfree);
    let repeated = p.gcd(&p.derivative());
    let repeated_chain = (repeated.degree().unwrap_or(0) > 0).then(|| SturmChain::new(&repeated.square_free()));

    let lo = nudge_off_root(&sqfree, &chain, lo, &(hi - lo));
    let hi = nudge_off_root(&sqfree, &chain, hi, &(hi - &lo));

    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_roots(&lo, &hi))];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            let simple = repeated_chain
                .as_ref()
                .is_none_or(|rc| rc.count_roots(&a, &b) == 0);
            out.push(RootInterval { lo: a, hi: b, simple });
            continue;
        }
        let c = split_point(&sqfree, &a, &b);
        let left = chain.count_roots(&a, &c);
        stack.push((c.clone(), b, n - left));
        stack.push((a, c, left));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(Isolation::Roots(out))
}

/// A point strictly inside `(a, b)` that is not a root of `q`.
fn split_point(q: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let len = b - a;
    let half = Rational::new(1.into(), 2.into());
    let mut offset = Rational::zero();
    let mut step = Rational::new(1.into(), 8.into());
    loop {
        let c = a + &len * (&half + &offset);
        if q.sign_at(&c) != 0 {
            return c;
        }
        offset = if offset.is_positive() { -offset } else { -offset + &step };
        step /= Rational::from_integer(2.into());
    }
}

/// Moves an endpoint that is a root of `q` just past that root, without
/// crossing any other root.
fn nudge_off_root(q: &UniPoly, chain: &SturmChain, t: &Rational, span: &Rational) -> Rational {
    if q.sign_at(t) != 0 {
        return t.clone();
    }
    let mut eps = span / Rational::from_integer(2.into());
    loop {
        let cand = t + &eps;
        if q.sign_at(&cand) != 0 && chain.count_roots(t, &cand) == 0 {
            return cand;
        }
        eps /= Rational::from_integer(2.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn roots(p: &UniPoly, lo: i64, hi: i64, w: Rational) -> Vec<RootInterval> {
        sturm_isolate(p, &rat(lo), &rat(hi), &w)
            .unwrap()
            .roots()
            .unwrap()
            .to_vec()
    }

    #[test]
    fn two_simple_roots() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let r = roots(&p, -2, 2, frac(1, 8));
        assert_eq!(r.len(), 2);
        assert!(r[0].lo < rat(-1) && rat(-1) < r[0].hi);
        assert!(r[1].lo < rat(1) && rat(1) < r[1].hi);
        for iv in &r {
            assert!(iv.width() <= frac(1, 8));
            assert!(iv.simple);
        }
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert!(roots(&p, -10, 10, frac(1, 8)).is_empty());
    }

    #[test]
    fn zero_polynomial_and_bad_ranges() {
        assert_eq!(
            sturm_isolate(&UniPoly::zero(), &rat(0), &rat(1), &rat(1)).unwrap(),
            Isolation::IdenticallyZero
        );
        let p = UniPoly::from_ints(&[0, 1]);
        assert!(sturm_isolate(&p, &rat(1), &rat(1), &rat(1)).is_err());
        assert!(sturm_isolate(&p, &rat(0), &rat(1), &rat(0)).is_err());
    }

    #[test]
    fn roots_on_the_endpoints() {
        // t (t - 1): root at lo is excluded, root at hi is included
        let p = UniPoly::from_ints(&[0, -1, 1]);
        let r = roots(&p, 0, 1, frac(1, 16));
        assert_eq!(r.len(), 1);
        assert!(r[0].lo < rat(1) && rat(1) < r[0].hi);
        // root exactly at a bisection midpoint
        let q = UniPoly::from_ints(&[0, 1]);
        let r = roots(&q, -1, 1, frac(1, 64));
        assert_eq!(r.len(), 1);
        assert!(!q.eval(&r[0].lo).is_zero() && !q.eval(&r[0].hi).is_zero());
    }

    #[test]
    fn repeated_roots_are_flagged() {
        // (t - 1/2)^2 (t + 1/3)
        let p = &(&UniPoly::linear(rat(1), frac(-1, 2)) * &UniPoly::linear(rat(1), frac(-1, 2)))
            * &UniPoly::linear(rat(1), frac(1, 3));
        let r = roots(&p, -1, 1, frac(1, 32));
        assert_eq!(r.len(), 2);
        assert!(r[0].simple);
        assert!(!r[1].simple);
    }
}
