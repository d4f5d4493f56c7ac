//! Sign and zero-locus exploration of `F` on the face `x + y + z = 1`.
//!
//! `F` is homogeneous, so its sign on positive classes is read off the face.
//! With `A = (1,0,0)`, `B = (0,1,0)` and `C = (m+2, n+2, 2)/(m+n+6)` (the
//! anticanonical direction), the open triangle `ABC` consists of Kähler
//! classes. Only that region is reported as certified; elsewhere signs are
//! given with unknown Kähler status.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, frac, int_pow, ipow, rat, rational_str, signum, Rational};
use crate::character::{c1_class, compute_f, CharacterPolys, Dims, KahlerClass};
use crate::error::{Error, Result};
use crate::poly::{sturm_isolate, Isolation, RootInterval, UniPoly};

/// Default isolation width on the segment parameter, `2^-20`.
pub fn default_width() -> Rational {
    Rational::new(1.into(), ipow(2, 20))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Self {
        match signum(r) {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

/// Position of a class relative to the certified triangle `ABC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Inside,
    Boundary,
    Outside,
    NotNormalizable,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Inside => "inside",
            Region::Boundary => "boundary",
            Region::Outside => "outside",
            Region::NotNormalizable => "not-normalizable",
        }
    }
}

/// A point on the face `x + y + z = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacePoint {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
    #[serde(with = "rational_str")]
    pub z: Rational,
}

impl FacePoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        if &x + &y + &z != Rational::one() {
            return Err(Error::domain(format!("({x}, {y}, {z}) is not on the face x+y+z=1")));
        }
        Ok(FacePoint { x, y, z })
    }

    /// Rescales a class with positive coordinate sum onto the face.
    pub fn normalize(c: &KahlerClass) -> Option<Self> {
        let sum = &c.x + &c.y + &c.z;
        if !sum.is_positive() {
            return None;
        }
        let s = sum.recip();
        let k = c.scale(&s);
        Some(FacePoint { x: k.x, y: k.y, z: k.z })
    }

    pub fn class(&self) -> KahlerClass {
        KahlerClass::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn point(&self) -> [Rational; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

pub fn vertex_a() -> FacePoint {
    FacePoint { x: rat(1), y: rat(0), z: rat(0) }
}

pub fn vertex_b() -> FacePoint {
    FacePoint { x: rat(0), y: rat(1), z: rat(0) }
}

pub fn vertex_c(d: Dims) -> FacePoint {
    FacePoint::normalize(&c1_class(d)).expect("c1 has positive coordinates")
}

/// Start and end of `l₂(t) = (1-t)(1/2, 1/2, 0) + t (0, 0, 1)`.
pub fn l2_endpoints() -> (FacePoint, FacePoint) {
    (
        FacePoint { x: frac(1, 2), y: frac(1, 2), z: rat(0) },
        FacePoint { x: rat(0), y: rat(0), z: rat(1) },
    )
}

pub fn in_kahler_triangle(d: Dims, c: &KahlerClass) -> Region {
    let Some(p) = FacePoint::normalize(c) else {
        return Region::NotNormalizable;
    };
    let vc = vertex_c(d);
    // p = a A + b B + w C
    let w = &p.z / &vc.z;
    let a = &p.x - &w * &vc.x;
    let b = &p.y - &w * &vc.y;
    let coords = [a, b, w];
    if coords.iter().any(Signed::is_negative) {
        Region::Outside
    } else if coords.iter().any(Zero::is_zero) {
        Region::Boundary
    } else {
        Region::Inside
    }
}

/// Closed form of `lim_{t→0+} F(l₁(t)) / y₁(t)^{n+3}` along `l₁ = (1-t)A + tC`.
pub fn limit_l1(d: Dims) -> Rational {
    let (m, n) = (d.m as i64, d.n as i64);
    let base = m + m * n + 2 * n + n * n;
    let big = Rational::from_integer(ipow(n + 2, (n + 1) as u32));
    let small = Rational::from_integer(ipow(n, (n + 1) as u32));
    let prefactor = rat(2) / Rational::from_integer(ipow(n + 2, (n + 2) as u32));
    let mut acc = Rational::zero();
    for s in 0..=m + n {
        let c = binomial(m + n + 2, s) * binomial(s, m);
        if c.is_zero() {
            continue;
        }
        let sgn = if (m + n + s + 1) % 2 == 0 { 1 } else { -1 };
        let bracket = rat((n + 1) * s - base) * &big - rat((n + 1) * s - base - 2) * &small;
        acc += Rational::from_integer(c * sgn) * &prefactor * bracket;
    }
    acc
}

/// Closed form of `lim_{t→0+} F(l₂(t)) / z₂(t)^2` along `l₂`.
pub fn limit_l2(d: Dims) -> Rational {
    let (m, n) = (d.m as i64, d.n as i64);
    let prefactor = Rational::new(1.into(), ipow(2, (m + n + 2) as u32));
    let lin_q = m * m - 4 * m * n - n * n - 7 * m - 3 * n - 2;
    let lin_s = -m * n + n * n - m + 2 * n + 1;
    let constant = 3 * m * m + m * m * n - n * n * n - m * n - 4 * n * n - 2 * m - 4 * n;
    let mut acc = Rational::zero();
    for s in 0..=m + n {
        for q in 0..=m {
            let c = binomial(m + n + 2, s) * binomial(s, m - q) * binomial(m + n - s, q);
            if c.is_zero() {
                continue;
            }
            let sgn = if (m + n + s + q + 1) % 2 == 0 { 1 } else { -1 };
            let bracket = 2 * (n - m) * q * q + (2 * (n + 1) * s + lin_q) * q + lin_s * s + constant;
            acc += Rational::from_integer(c * sgn * bracket) * &prefactor;
        }
    }
    acc
}

/// Order of vanishing at `t = 0` and the leading coefficient of `F` along a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineExpansion {
    pub poly: UniPoly,
    pub order: Option<usize>,
    pub leading: Rational,
}

impl LineExpansion {
    fn new(poly: UniPoly) -> Self {
        let order = poly.order();
        let leading = order.map(|k| poly.coefficient(k)).unwrap_or_else(Rational::zero);
        LineExpansion { poly, order, leading }
    }
}

/// The polynomial `F` of one `Dims` together with the operations that
/// need it.
#[derive(Debug, Clone)]
pub struct Explorer {
    polys: CharacterPolys,
}

impl Explorer {
    pub fn new(d: Dims) -> Result<Self> {
        Ok(Explorer { polys: compute_f(d)? })
    }

    pub fn from_polys(polys: CharacterPolys) -> Self {
        Explorer { polys }
    }

    pub fn dims(&self) -> Dims {
        self.polys.dims
    }

    pub fn polys(&self) -> &CharacterPolys {
        &self.polys
    }

    pub fn eval(&self, c: &KahlerClass) -> Rational {
        self.polys.eval_f(c)
    }

    pub fn sign_at(&self, c: &KahlerClass) -> Sign {
        Sign::of(&self.eval(c))
    }

    /// `F` along `l₁`; its expansion should start at `t^{n+3}`, and the
    /// normalized leading coefficient `coeff · ((m+n+6)/(n+2))^{n+3}` is
    /// returned as `leading`.
    pub fn expand_l1(&self) -> Result<LineExpansion> {
        let d = self.dims();
        let poly = self.polys.f.restrict_to_line(&vertex_a().point(), &vertex_c(d).point())?;
        let mut exp = LineExpansion::new(poly);
        if let Some(k) = exp.order {
            let ratio = frac((d.m + d.n + 6) as i64, (d.n + 2) as i64);
            exp.leading = &exp.leading * int_pow(&ratio, k as i64)?;
        }
        Ok(exp)
    }

    /// `F` along `l₂`; `z₂(t) = t`, so the leading coefficient is already normalized.
    pub fn expand_l2(&self) -> Result<LineExpansion> {
        let (start, end) = l2_endpoints();
        Ok(LineExpansion::new(self.polys.f.restrict_to_line(&start.point(), &end.point())?))
    }

    pub fn ke_check(&self) -> KeCheck {
        let value = self.eval(&c1_class(self.dims()));
        KeCheck {
            ke_admissible: value.is_zero(),
            f_at_c1: value,
        }
    }

    pub fn isolate_on_segment(&self, from: &KahlerClass, to: &KahlerClass, width: &Rational) -> Result<SegmentReport> {
        if from == to {
            return Err(Error::usage("segment endpoints coincide"));
        }
        let d = self.dims();
        let (p, q) = (from.point(), to.point());
        let line = self.polys.f.restrict_to_line(&p, &q)?;
        let sign_from = self.sign_at(from);
        let sign_to = self.sign_at(to);
        let at = |t: &Rational| -> KahlerClass {
            let one_minus = Rational::one() - t;
            KahlerClass::new(
                &one_minus * &p[0] + t * &q[0],
                &one_minus * &p[1] + t * &q[1],
                &one_minus * &p[2] + t * &q[2],
            )
        };

        let roots = match sturm_isolate(&line, &Rational::zero(), &Rational::one(), width)? {
            Isolation::IdenticallyZero => None,
            Isolation::Roots(list) => Some(
                list.into_iter()
                    .map(|interval| {
                        let certified = in_kahler_triangle(d, &at(&interval.lo)) == Region::Inside
                            && in_kahler_triangle(d, &at(&interval.hi)) == Region::Inside;
                        SegmentRoot {
                            midpoint: FacePoint::normalize(&at(&interval.midpoint())),
                            midpoint_class: ClassJson::from(&at(&interval.midpoint())),
                            certified_kahler: certified,
                            interval,
                        }
                    })
                    .collect::<Vec<_>>(),
            ),
        };

        let opposite = matches!(
            (sign_from, sign_to),
            (Sign::Negative, Sign::Positive) | (Sign::Positive, Sign::Negative)
        );
        if opposite && roots.as_ref().is_some_and(Vec::is_empty) {
            return Err(Error::invariant("endpoint signs differ but no root was isolated"));
        }
        Ok(SegmentReport {
            from: ClassJson::from(from),
            to: ClassJson::from(to),
            sign_from,
            sign_to,
            identically_zero: roots.is_none(),
            roots: roots.unwrap_or_default(),
            line: line.to_string(),
        })
    }

    /// Walks `l₂` towards `t = 0` at `t = 1/8, 1/16, ...` (at most 20 halvings)
    /// for a positive class, then isolates roots between it and `C`.
    pub fn sign_change_witness(&self, width: &Rational) -> Result<Option<SegmentReport>> {
        let (start, end) = l2_endpoints();
        let c = vertex_c(self.dims()).class();
        let mut t = frac(1, 8);
        for _ in 0..=20 {
            let one_minus = Rational::one() - &t;
            let p = KahlerClass::new(&one_minus * &start.x, &one_minus * &start.y, &t * &end.z);
            if self.sign_at(&p) == Sign::Positive {
                return self.isolate_on_segment(&p, &c, width).map(Some);
            }
            t /= rat(2);
        }
        Ok(None)
    }

    /// Interior lattice points `(i, j, k)/R` of the face with `i, j, k >= 1`.
    pub fn sample_face(&self, resolution: u32) -> Result<Vec<FaceSample>> {
        if resolution < 2 {
            return Err(Error::usage("face resolution must be at least 2"));
        }
        let r = resolution as i64;
        let d = self.dims();
        let mut out = Vec::new();
        for i in 1..r {
            for j in 1..r - i {
                let k = r - i - j;
                let point = FacePoint {
                    x: frac(i, r),
                    y: frac(j, r),
                    z: frac(k, r),
                };
                let class = point.class();
                let value = self.eval(&class);
                out.push(FaceSample {
                    sign: Sign::of(&value),
                    region: in_kahler_triangle(d, &class),
                    value,
                    point,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeCheck {
    #[serde(with = "rational_str")]
    pub f_at_c1: Rational,
    pub ke_admissible: bool,
}

/// A class serialized as three `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassJson(pub [String; 3]);

impl From<&KahlerClass> for ClassJson {
    fn from(c: &KahlerClass) -> Self {
        ClassJson([c.x.to_string(), c.y.to_string(), c.z.to_string()])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentRoot {
    /// Interval in the segment parameter `t ∈ (0, 1]`.
    pub interval: RootInterval,
    pub midpoint_class: ClassJson,
    /// Midpoint rescaled onto the face, when that is possible.
    pub midpoint: Option<FacePoint>,
    /// Every class of the interval lies in the open triangle `ABC`.
    pub certified_kahler: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentReport {
    pub from: ClassJson,
    pub to: ClassJson,
    pub sign_from: Sign,
    pub sign_to: Sign,
    pub identically_zero: bool,
    pub roots: Vec<SegmentRoot>,
    /// `F` restricted to the segment, as a polynomial in `t`.
    pub line: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSample {
    pub point: FacePoint,
    pub sign: Sign,
    pub region: Region,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

/// One line of a dimension scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub n: u32,
    #[serde(with = "rational_str")]
    pub limit_l1: Rational,
    #[serde(with = "rational_str")]
    pub limit_l2: Rational,
    #[serde(rename = "F_at_c1", with = "rational_str")]
    pub f_at_c1: Rational,
    pub ke_admissible: bool,
    pub sign_change_found: bool,
    pub paper_backed: bool,
    pub witness: Option<SegmentReport>,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Include pairs with `m >= n`.
    pub all_pairs: bool,
    pub width: Rational,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            all_pairs: false,
            width: default_width(),
        }
    }
}

pub fn scan_pair(d: Dims, opts: &ScanOptions) -> Result<ScanRow> {
    let ex = Explorer::new(d)?;
    let ke = ex.ke_check();
    let witness = ex.sign_change_witness(&opts.width)?;
    let sign_change_found = witness.as_ref().is_some_and(|w| {
        w.sign_from != w.sign_to && w.sign_from != Sign::Zero && w.sign_to != Sign::Zero && !w.roots.is_empty()
    });
    Ok(ScanRow {
        m: d.m,
        n: d.n,
        limit_l1: limit_l1(d),
        limit_l2: limit_l2(d),
        f_at_c1: ke.f_at_c1,
        ke_admissible: ke.ke_admissible,
        sign_change_found,
        paper_backed: d.paper_backed(),
        witness,
    })
}

/// Scans every `(m, n)` in the given inclusive ranges, in lexicographic order.
/// Pairs with `m >= n` are skipped unless `opts.all_pairs` is set.
pub fn scan_range(m_lo: u32, m_hi: u32, n_lo: u32, n_hi: u32, opts: &ScanOptions) -> Result<Vec<ScanRow>> {
    if m_lo == 0 || n_lo == 0 {
        return Err(Error::usage("scan bounds must be at least 1"));
    }
    let pairs: Vec<Dims> = (m_lo..=m_hi)
        .flat_map(|m| (n_lo..=n_hi).map(move |n| (m, n)))
        .filter(|(m, n)| opts.all_pairs || m < n)
        .map(|(m, n)| Dims { m, n })
        .collect();
    pairs.par_iter().map(|&d| scan_pair(d, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: u32, n: u32) -> Dims {
        Dims::new(m, n).unwrap()
    }

    #[test]
    fn vertex_c_values() {
        assert_eq!(vertex_c(d(1, 2)), FacePoint::new(frac(3, 9), frac(4, 9), frac(2, 9)).unwrap());
        assert_eq!(vertex_c(d(1, 1)), FacePoint::new(frac(3, 8), frac(3, 8), frac(2, 8)).unwrap());
        assert!(FacePoint::new(rat(1), rat(1), rat(0)).is_err());
    }

    #[test]
    fn triangle_classification() {
        let dd = d(1, 2);
        let centroid = KahlerClass::new(frac(4, 9), frac(13, 27), frac(2, 27));
        assert_eq!(in_kahler_triangle(dd, &centroid), Region::Inside);
        assert_eq!(in_kahler_triangle(dd, &KahlerClass::from_ints(1, 0, 0)), Region::Boundary);
        assert_eq!(in_kahler_triangle(dd, &KahlerClass::from_ints(1, 1, 5)), Region::Outside);
        assert_eq!(in_kahler_triangle(dd, &KahlerClass::from_ints(-1, 0, 0)), Region::NotNormalizable);
        assert_eq!(in_kahler_triangle(dd, &c1_class(dd)), Region::Boundary);
    }

    #[test]
    fn limits_for_m1_n2() {
        // frozen from an independent symbolic expansion of F along l1, l2
        assert_eq!(limit_l1(d(1, 2)), frac(-15, 8));
        assert_eq!(limit_l2(d(1, 2)), frac(45, 8));
        assert_eq!(limit_l1(d(2, 3)), frac(-27216, 3125));
        assert_eq!(limit_l2(d(2, 3)), frac(525, 32));
        let ex = Explorer::new(d(1, 2)).unwrap();
        let l1 = ex.expand_l1().unwrap();
        assert_eq!(l1.order, Some(5));
        assert_eq!(l1.leading, frac(-15, 8));
        let l2 = ex.expand_l2().unwrap();
        assert_eq!(l2.order, Some(2));
        assert_eq!(l2.leading, frac(45, 8));
    }

    #[test]
    fn signs_and_ke() {
        let ex = Explorer::new(d(1, 2)).unwrap();
        assert_eq!(ex.sign_at(&KahlerClass::from_ints(3, 4, 2)), Sign::Negative);
        assert_eq!(ex.sign_at(&KahlerClass::from_ints(1, 1, 0)), Sign::Zero);
        assert_eq!(ex.sign_at(&KahlerClass::from_ints(6, 8, 4)), Sign::Negative);
        let ke = ex.ke_check();
        assert_eq!(ke.f_at_c1, rat(-2304));
        assert!(!ke.ke_admissible);
        assert!(!d(1, 1).paper_backed());
    }

    #[test]
    fn segment_isolation() {
        let ex = Explorer::new(d(1, 2)).unwrap();
        let w = ex.sign_change_witness(&default_width()).unwrap().unwrap();
        assert_eq!(w.sign_from, Sign::Positive);
        assert_eq!(w.sign_to, Sign::Negative);
        assert!(!w.roots.is_empty());
        assert!(w.roots.iter().all(|r| r.certified_kahler));

        let flat = ex
            .isolate_on_segment(&KahlerClass::from_ints(1, 0, 0), &KahlerClass::from_ints(0, 1, 0), &default_width())
            .unwrap();
        assert!(flat.identically_zero);

        let same = KahlerClass::from_ints(1, 1, 1);
        assert!(matches!(ex.isolate_on_segment(&same, &same, &default_width()), Err(Error::Usage(_))));
    }

    #[test]
    fn face_samples() {
        let ex = Explorer::new(d(1, 2)).unwrap();
        let three = ex.sample_face(3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].point, FacePoint::new(frac(1, 3), frac(1, 3), frac(1, 3)).unwrap());
        let nine = ex.sample_face(9).unwrap();
        let c = nine.iter().find(|s| s.point == vertex_c(d(1, 2))).unwrap();
        assert_eq!(c.sign, Sign::Negative);
        assert!(nine.iter().all(|s| &s.point.x + &s.point.y + &s.point.z == rat(1)));
        assert!(ex.sample_face(1).is_err());
    }

    #[test]
    fn small_scan() {
        let rows = scan_range(1, 1, 2, 3, &ScanOptions::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.paper_backed && r.sign_change_found && !r.ke_admissible));
        let diag = scan_range(3, 3, 3, 3, &ScanOptions { all_pairs: true, ..Default::default() }).unwrap();
        assert_eq!(diag.len(), 1);
        assert!(!diag[0].paper_backed);
        assert!(scan_range(3, 3, 3, 3, &ScanOptions::default()).unwrap().is_empty());
    }
}
