//! Exact geometric kernel.
//!
//! Coordinates are arbitrary-precision rationals. Orientation signs are first
//! attempted with a floating-point evaluation guarded by a conservative error
//! bound; whenever the bound cannot certify the sign the determinant is
//! evaluated exactly. Every sign returned is therefore exact.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A point with exact rational coordinates.
///
/// A floating-point approximation of each coordinate is cached for the
/// predicate filter; it never influences a returned sign.
#[derive(Clone)]
pub struct Point3 {
    coords: [BigRational; 3],
    approx: [f64; 3],
}

impl Point3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        let approx = [to_f64(&x), to_f64(&y), to_f64(&z)];
        Point3 {
            coords: [x, y, z],
            approx,
        }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z))
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_ratios(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(r(x), r(y), r(z))
    }

    pub fn x(&self) -> &BigRational {
        &self.coords[0]
    }

    pub fn y(&self) -> &BigRational {
        &self.coords[1]
    }

    pub fn z(&self) -> &BigRational {
        &self.coords[2]
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    /// Floating-point approximation, for diagnostics and bounding boxes only.
    pub fn approx(&self) -> [f64; 3] {
        self.approx
    }

    pub fn translate(&self, offset: &[BigRational; 3]) -> Point3 {
        Point3::new(
            &self.coords[0] + &offset[0],
            &self.coords[1] + &offset[1],
            &self.coords[2] + &offset[2],
        )
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point3, t: &BigRational) -> Point3 {
        let c = |i: usize| &self.coords[i] + t * (&other.coords[i] - &self.coords[i]);
        Point3::new(c(0), c(1), c(2))
    }

    pub fn sub(&self, other: &Point3) -> [BigRational; 3] {
        [
            &self.coords[0] - &other.coords[0],
            &self.coords[1] - &other.coords[1],
            &self.coords[2] - &other.coords[2],
        ]
    }
}

impl PartialEq for Point3 {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Point3 {}

impl Hash for Point3 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl FromStr for Point3 {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(format!("expected 3 coordinates, found {}", fields.len()));
        }
        Ok(Point3::new(
            parse_rational(fields[0])?,
            parse_rational(fields[1])?,
            parse_rational(fields[2])?,
        ))
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, integer, or decimal literals (`-1.25`, `3e-2`) into an exact rational.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in {s:?}"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid number {s:?}"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| format!("invalid number {s:?}"))?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact sign of a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &BigRational) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Sign of `det(b - a, c - a, d - a)`. Positive when `d` sees `(a, b, c)` counterclockwise.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    match orient3d_filtered(&a.approx, &b.approx, &c.approx, &d.approx) {
        Some(s) => s,
        None => Sign::of(&orient3d_value(a, b, c, d)),
    }
}

// Inputs are approximations within a couple of ulps of the exact coordinates;
// the bound below covers conversion and evaluation error with a wide margin.
fn orient3d_filtered(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3], d: &[f64; 3]) -> Option<Sign> {
    let diff = |p: &[f64; 3], i: usize| p[i] - a[i];
    let mag = |p: &[f64; 3], i: usize| p[i].abs() + a[i].abs();
    let (bx, by, bz) = (diff(b, 0), diff(b, 1), diff(b, 2));
    let (cx, cy, cz) = (diff(c, 0), diff(c, 1), diff(c, 2));
    let (dx, dy, dz) = (diff(d, 0), diff(d, 1), diff(d, 2));
    let det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
    let (mbx, mby, mbz) = (mag(b, 0), mag(b, 1), mag(b, 2));
    let (mcx, mcy, mcz) = (mag(c, 0), mag(c, 1), mag(c, 2));
    let (mdx, mdy, mdz) = (mag(d, 0), mag(d, 1), mag(d, 2));
    let perm = mbx * (mcy * mdz + mcz * mdy) + mby * (mcx * mdz + mcz * mdx) + mbz * (mcx * mdy + mcy * mdx);
    if !det.is_finite() || !perm.is_finite() || perm < 1e-200 {
        return None;
    }
    let bound = 1e-13 * perm;
    if det > bound {
        Some(Sign::Positive)
    } else if det < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Exact value of `det(b - a, c - a, d - a)`, i.e. six times the signed volume.
pub fn orient3d_value(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> BigRational {
    let u = b.sub(a);
    let v = c.sub(a);
    let w = d.sub(a);
    det3(&u, &v, &w)
}

pub(crate) fn det3(u: &[BigRational; 3], v: &[BigRational; 3], w: &[BigRational; 3]) -> BigRational {
    &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0])
}

/// Sign of `det(u1 - u0, v1 - v0, w1 - w0)` for three point pairs, filtered
/// like [`orient3d`].
pub fn det_sign(u: (&Point3, &Point3), v: (&Point3, &Point3), w: (&Point3, &Point3)) -> Sign {
    let diff = |(p, q): (&Point3, &Point3)| [0, 1, 2].map(|i| q.approx[i] - p.approx[i]);
    let mag = |(p, q): (&Point3, &Point3)| [0, 1, 2].map(|i| q.approx[i].abs() + p.approx[i].abs());
    let (x, y, z) = (diff(u), diff(v), diff(w));
    let (mx, my, mz) = (mag(u), mag(v), mag(w));
    let det =
        x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) + x[2] * (y[0] * z[1] - y[1] * z[0]);
    let perm = mx[0] * (my[1] * mz[2] + my[2] * mz[1])
        + mx[1] * (my[0] * mz[2] + my[2] * mz[0])
        + mx[2] * (my[0] * mz[1] + my[1] * mz[0]);
    if det.is_finite() && perm.is_finite() && perm >= 1e-200 {
        let bound = 1e-13 * perm;
        if det > bound {
            return Sign::Positive;
        } else if det < -bound {
            return Sign::Negative;
        }
    }
    Sign::of(&det3(&u.1.sub(u.0), &v.1.sub(v.0), &w.1.sub(w.0)))
}

/// True iff the three points lie on a common line.
pub fn collinear(a: &Point3, b: &Point3, c: &Point3) -> bool {
    let u = b.sub(a);
    let v = c.sub(a);
    (&u[1] * &v[2] - &u[2] * &v[1]).is_zero()
        && (&u[2] * &v[0] - &u[0] * &v[2]).is_zero()
        && (&u[0] * &v[1] - &u[1] * &v[0]).is_zero()
}

/// Anything that resolves vertex identifiers to points.
pub trait VertexStore {
    fn point(&self, v: VertexId) -> &Point3;
}

impl VertexStore for [Point3] {
    fn point(&self, v: VertexId) -> &Point3 {
        &self[v]
    }
}

impl VertexStore for Vec<Point3> {
    fn point(&self, v: VertexId) -> &Point3 {
        &self[v]
    }
}

/// A tetrahedron as four vertex identifiers, positively oriented when valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tetra(pub [VertexId; 4]);

impl Tetra {
    pub fn vertices(&self) -> [VertexId; 4] {
        self.0
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// The face opposite corner `i`, sorted ascending.
    pub fn face(&self, i: usize) -> [VertexId; 3] {
        let mut f = [0; 3];
        let mut k = 0;
        for (j, &v) in self.0.iter().enumerate() {
            if j != i {
                f[k] = v;
                k += 1;
            }
        }
        f.sort_unstable();
        f
    }

    pub fn faces(&self) -> [[VertexId; 3]; 4] {
        [self.face(0), self.face(1), self.face(2), self.face(3)]
    }

    /// The corner not on `face`, if `face` is one of ours.
    pub fn apex(&self, face: &[VertexId; 3]) -> Option<VertexId> {
        let missing: Vec<VertexId> = self.0.iter().copied().filter(|v| !face.contains(v)).collect();
        (missing.len() == 1).then(|| missing[0])
    }

    pub fn orientation<S: VertexStore + ?Sized>(&self, store: &S) -> Sign {
        let [a, b, c, d] = self.0;
        orient3d(store.point(a), store.point(b), store.point(c), store.point(d))
    }

    /// The same tetrahedron with its orientation reversed.
    pub fn flipped(&self) -> Tetra {
        let [a, b, c, d] = self.0;
        Tetra([b, a, c, d])
    }
}

/// Location of a point relative to a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Exterior,
}

/// Classifies `p` against the positively oriented tetrahedron `t`.
pub fn tetra_contains<S: VertexStore + ?Sized>(t: &Tetra, p: &Point3, store: &S) -> Containment {
    let pts = t.0.map(|v| store.point(v));
    let mut on_plane = false;
    for i in 0..4 {
        let mut q = pts;
        q[i] = p;
        match orient3d(q[0], q[1], q[2], q[3]) {
            Sign::Negative => return Containment::Exterior,
            Sign::Zero => on_plane = true,
            Sign::Positive => {}
        }
    }
    if on_plane {
        Containment::Boundary
    } else {
        Containment::Interior
    }
}

/// Exact arithmetic mean.
pub fn centroid(points: &[Point3]) -> Result<Point3> {
    centroid_of(points.iter())
}

pub(crate) fn centroid_of<'a>(points: impl IntoIterator<Item = &'a Point3>) -> Result<Point3> {
    let mut sum = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    let mut count = 0i64;
    for p in points {
        for (s, c) in sum.iter_mut().zip(p.coords.iter()) {
            *s += c;
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyInput);
    }
    let n = int(count);
    let [x, y, z] = sum;
    Ok(Point3::new(x / &n, y / &n, z / &n))
}

/// Exact sum, added pairwise in a balanced tree so that denominators grow
/// evenly instead of one running total absorbing every term.
pub fn exact_sum(terms: impl IntoIterator<Item = BigRational>) -> BigRational {
    let mut level: Vec<BigRational> = terms.into_iter().collect();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len() / 2 + 1);
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a + b,
                None => a,
            });
        }
        level = next;
    }
    level.pop().unwrap_or_else(BigRational::zero)
}

/// Six times the signed volume of `t`; positive for valid tetrahedra.
pub fn tetra_volume6<S: VertexStore + ?Sized>(t: &Tetra, store: &S) -> BigRational {
    let [a, b, c, d] = t.0;
    orient3d_value(store.point(a), store.point(b), store.point(c), store.point(d))
}
