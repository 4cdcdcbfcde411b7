//! Elliptic curves `y^2 = x^3 + A x + B` over the rationals, exact group law.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_integer, rat_display, rat_string, Int, Rat};
use crate::{Error, Result};

/// Rational torsion points have order at most 12.
pub const MAZUR_BOUND: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Infinity,
    Affine {
        #[serde(with = "rat_string")]
        x: Rat,
        #[serde(with = "rat_string")]
        y: Rat,
    },
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn neg(&self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: -y },
        }
    }

    /// Both coordinates are integers. The point at infinity is not integral.
    pub fn is_integral(&self) -> bool {
        match self {
            Point::Infinity => false,
            Point::Affine { x, y } => is_integer(x) && is_integer(y),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({}, {})", rat_display(x), rat_display(y)),
        }
    }
}

/// `-16 (4A^3 + 27B^2)`; defined for singular coefficient pairs too.
pub fn discriminant(a: &Rat, b: &Rat) -> Rat {
    let c = four_a3_27b2(a, b);
    -Rat::from_integer(16.into()) * c
}

pub fn j_invariant(a: &Rat, b: &Rat) -> Result<Rat> {
    let c = four_a3_27b2(a, b);
    if c.is_zero() {
        return Err(Error::SingularCurve);
    }
    let four_a3 = Rat::from_integer(4.into()) * a * a * a;
    Ok(Rat::from_integer(1728.into()) * four_a3 / c)
}

fn four_a3_27b2(a: &Rat, b: &Rat) -> Rat {
    Rat::from_integer(4.into()) * a * a * a + Rat::from_integer(27.into()) * b * b
}

/// Nonsingular short Weierstrass curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct Curve {
    #[serde(with = "rat_string")]
    a: Rat,
    #[serde(with = "rat_string")]
    b: Rat,
}

#[derive(Deserialize)]
struct RawCurve {
    #[serde(with = "rat_string")]
    a: Rat,
    #[serde(with = "rat_string")]
    b: Rat,
}

impl TryFrom<RawCurve> for Curve {
    type Error = Error;
    fn try_from(r: RawCurve) -> Result<Self> {
        Curve::new(r.a, r.b)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", rat_display(&self.a), rat_display(&self.b))
    }
}

impl Curve {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if four_a3_27b2(&a, &b).is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { a, b })
    }

    pub fn from_ints(a: impl Into<Int>, b: impl Into<Int>) -> Result<Self> {
        Curve::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn discriminant(&self) -> Rat {
        discriminant(&self.a, &self.b)
    }

    pub fn j_invariant(&self) -> Rat {
        j_invariant(&self.a, &self.b).expect("curve is nonsingular by construction")
    }

    /// Right-hand side `x^3 + A x + B`.
    pub fn rhs(&self, x: &Rat) -> Rat {
        x * x * x + &self.a * x + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    pub fn ensure(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(p.to_string()))
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.ensure(p)?;
        self.ensure(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &Point) -> Result<Point> {
        self.ensure(p)?;
        Ok(self.double_unchecked(p))
    }

    /// `[m]P`; negative `m` multiplies the inverse.
    pub fn mul(&self, m: i64, p: &Point) -> Result<Point> {
        self.ensure(p)?;
        Ok(self.mul_unchecked(m, p))
    }

    /// Third intersection of the chord through two distinct affine points.
    pub fn chord_third(&self, p: &Point, q: &Point) -> Result<Point> {
        self.ensure(p)?;
        self.ensure(q)?;
        if p.is_infinity() || q.is_infinity() {
            return Err(Error::InvalidArgument("chord needs affine points".into()));
        }
        if p == q {
            return Err(Error::InvalidArgument("chord needs distinct points".into()));
        }
        if p.x() == q.x() {
            return Err(Error::Degenerate("vertical chord meets the curve again only at infinity".into()));
        }
        Ok(self.add_unchecked(p, q).neg())
    }

    /// Decides infinite order by the Mazur bound: a torsion point satisfies
    /// `[m]P = O` for some `m <= 12`.
    pub fn has_infinite_order(&self, p: &Point) -> Result<bool> {
        self.ensure(p)?;
        let mut acc = Point::Infinity;
        for _ in 1..=MAZUR_BOUND {
            acc = self.add_unchecked(&acc, p);
            if acc.is_infinity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Infinity;
            }
            return self.double_unchecked(p);
        }
        let slope = (y2 - y1) / (x2 - x1);
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        Point::Affine { x: x3, y: y3 }
    }

    pub(crate) fn double_unchecked(&self, p: &Point) -> Point {
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine { x, y } => (x, y),
        };
        if y.is_zero() {
            return Point::Infinity;
        }
        let three = Rat::from_integer(3.into());
        let two = Rat::from_integer(2.into());
        let slope = (three * x * x + &self.a) / (two * y);
        let x3 = &slope * &slope - x - x;
        let y3 = slope * (x - &x3) - y;
        Point::Affine { x: x3, y: y3 }
    }

    pub(crate) fn mul_unchecked(&self, m: i64, p: &Point) -> Point {
        let base = if m < 0 { p.neg() } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &addend);
            }
            k >>= 1;
            if k > 0 {
                addend = self.double_unchecked(&addend);
            }
        }
        acc
    }

    /// Two-torsion points `(r, 0)` for integer roots `r` of the cubic, when
    /// the coefficients are integers.
    pub fn integer_two_torsion(&self) -> Vec<Point> {
        if !is_integer(&self.a) || !is_integer(&self.b) {
            return Vec::new();
        }
        // Integer roots divide B (or include 0 when B = 0).
        let b = self.b.numer().clone();
        let mut candidates: Vec<Int> = vec![Int::zero()];
        if !b.is_zero() {
            let mut d = Int::one();
            let abs = if b < Int::zero() { -b.clone() } else { b.clone() };
            while &d * &d <= abs {
                if (&abs % &d).is_zero() {
                    for c in [d.clone(), &abs / &d] {
                        candidates.push(c.clone());
                        candidates.push(-c);
                    }
                }
                d += 1;
            }
        } else {
            // B = 0: roots 0 and +-sqrt(-A).
            if let Some(r) = crate::arith::sqrt_exact(&-self.a.numer().clone()) {
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        candidates
            .into_iter()
            .map(Rat::from_integer)
            .filter(|r| self.rhs(r).is_zero())
            .map(|x| Point::Affine { x, y: Rat::zero() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pt(x: Rat, y: Rat) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn discriminant_and_j() {
        let e = Curve::from_ints(-36, 0).unwrap();
        assert_eq!(e.j_invariant(), rat(1728, 1));
        let e = Curve::from_ints(-28, 57).unwrap();
        assert_eq!(e.discriminant(), rat(1360, 1));
        assert_eq!(e.j_invariant(), rat(1728 * -87808, -85));
        assert_ne!(e.j_invariant(), rat(1728, 1));
        assert!(Curve::from_ints(-3, 2).is_err());
        assert_eq!(j_invariant(&rat(-3, 1), &rat(2, 1)), Err(Error::SingularCurve));
        assert_eq!(discriminant(&rat(-3, 1), &rat(2, 1)), rat(0, 1));
    }

    #[test]
    fn membership() {
        let e = Curve::from_ints(-28, 57).unwrap();
        assert!(e.contains(&pt(rat(-6, 1), rat(3, 1))));
        assert!(e.contains(&Point::Infinity));
        assert!(!e.contains(&pt(rat(-6, 1), rat(4, 1))));
        let e2 = Curve::from_ints(-351, 1026).unwrap();
        assert!(e2.contains(&pt(rat(-6, 1), rat(54, 1))));
    }

    #[test]
    fn doubling_examples() {
        let e = Curve::from_ints(-28, 57).unwrap();
        let two_p = e.double(&pt(rat(-6, 1), rat(3, 1))).unwrap();
        assert_eq!(two_p, pt(rat(1708, 9), rat(-70561, 27)));
        assert!(!two_p.is_integral());
        let e2 = Curve::from_ints(-351, 1026).unwrap();
        let two_q = e2.double(&pt(rat(-6, 1), rat(54, 1))).unwrap();
        assert_eq!(two_q.x(), Some(&rat(273, 16)));
    }

    #[test]
    fn inverse_and_off_curve() {
        let e = Curve::from_ints(-28, 57).unwrap();
        let p = pt(rat(-6, 1), rat(3, 1));
        assert_eq!(e.add(&p, &p.neg()).unwrap(), Point::Infinity);
        assert_eq!(e.mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(e.mul(-1, &p).unwrap(), p.neg());
        let off = pt(rat(0, 1), rat(0, 1));
        assert!(matches!(e.add(&p, &off), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn chord_third_examples() {
        let e2 = Curve::from_ints(-351, 1026).unwrap();
        let q = pt(rat(-6, 1), rat(54, 1));
        let r = pt(rat(-15, 1), rat(54, 1));
        assert_eq!(e2.chord_third(&q, &r).unwrap(), pt(rat(21, 1), rat(54, 1)));
        let e = Curve::from_ints(-36, 0).unwrap();
        let t1 = pt(rat(-6, 1), rat(0, 1));
        let t2 = pt(rat(6, 1), rat(0, 1));
        assert_eq!(e.chord_third(&t1, &t2).unwrap(), pt(rat(0, 1), rat(0, 1)));
        let p = pt(rat(12, 1), rat(36, 1));
        assert!(matches!(e.chord_third(&p, &p.neg()), Err(Error::Degenerate(_))));
        assert!(e.chord_third(&p, &p).is_err());
    }

    #[test]
    fn torsion_detection() {
        let e = Curve::from_ints(-36, 0).unwrap();
        assert!(!e.has_infinite_order(&pt(rat(-6, 1), rat(0, 1))).unwrap());
        assert!(e.has_infinite_order(&pt(rat(12, 1), rat(36, 1))).unwrap());
        // y^2 = x^3 + 1 has the 6-torsion point (2, 3).
        let e = Curve::from_ints(0, 1).unwrap();
        assert!(!e.has_infinite_order(&pt(rat(2, 1), rat(3, 1))).unwrap());
        assert_eq!(e.mul(6, &pt(rat(2, 1), rat(3, 1))).unwrap(), Point::Infinity);
    }

    #[test]
    fn two_torsion_of_congruent_curve() {
        let e = Curve::from_ints(-36, 0).unwrap();
        let t = e.integer_two_torsion();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|p| e.double(p).unwrap().is_infinity()));
    }

    #[test]
    fn point_json() {
        let p = pt(rat(1708, 9), rat(-70561, 27));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"affine":{"x":"1708/9","y":"-70561/27"}}"#);
        assert_eq!(serde_json::to_string(&Point::Infinity).unwrap(), r#""infinity""#);
        let e = Curve::from_ints(-28, 57).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"a":"-28/1","b":"57/1"}"#);
        assert!(serde_json::from_str::<Curve>(r#"{"a":"-3","b":"2"}"#).is_err());
    }
}
