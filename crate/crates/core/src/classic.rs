//! Rational right triangles and the classic congruent-number curve
//! `y^2 = x^3 - n^2 x`, the `alpha^4 - beta^4` witness family, and
//! ternary-form counting.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{is_square_free, isqrt, rat_display, rat_string, Int, Rat};
use crate::ecq::{Curve, Point};
use crate::exec::{self, Strategy};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RightTriangle {
    #[serde(with = "rat_string")]
    pub a: Rat,
    #[serde(with = "rat_string")]
    pub b: Rat,
    #[serde(with = "rat_string")]
    pub c: Rat,
}

impl RightTriangle {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() || !c.is_positive() {
            return Err(Error::InvalidArgument("triangle sides must be positive".into()));
        }
        if &a * &a + &b * &b != &c * &c {
            return Err(Error::InvalidArgument(format!(
                "({}, {}, {}) is not a right triangle",
                rat_display(&a),
                rat_display(&b),
                rat_display(&c)
            )));
        }
        Ok(RightTriangle { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        RightTriangle::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()), Rat::from_integer(c.into()))
    }

    pub fn area(&self) -> Rat {
        &self.a * &self.b / Rat::from_integer(2.into())
    }

    pub fn swapped(&self) -> RightTriangle {
        RightTriangle { a: self.b.clone(), b: self.a.clone(), c: self.c.clone() }
    }
}

impl std::fmt::Display for RightTriangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", rat_display(&self.a), rat_display(&self.b), rat_display(&self.c))
    }
}

/// `y^2 = x^3 - n^2 x`.
pub fn congruent_curve(n: &Int) -> Result<Curve> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    Curve::new(Rat::from_integer(-(n * n)), Rat::zero())
}

/// `(n (a + c) / b, 2 n^2 (a + c) / b^2)` for a triangle of area `n`.
pub fn triangle_to_point(n: &Int, t: &RightTriangle) -> Result<Point> {
    let nq = Rat::from_integer(n.clone());
    if t.area() != nq {
        return Err(Error::InvalidArgument(format!("triangle {t} does not have area {n}")));
    }
    let s = &t.a + &t.c;
    let x = &nq * &s / &t.b;
    let y = Rat::from_integer(2.into()) * &nq * &nq * s / (&t.b * &t.b);
    let p = Point::new(x, y);
    congruent_curve(n)?.ensure(&p)?;
    Ok(p)
}

/// `(|2nx/y|, |(x^2 - n^2)/y|, |(x^2 + n^2)/y|)` for a non-2-torsion point.
pub fn point_to_triangle(n: &Int, p: &Point) -> Result<RightTriangle> {
    congruent_curve(n)?.ensure(p)?;
    let (x, y) = match p {
        Point::Affine { x, y } if !y.is_zero() => (x, y),
        _ => return Err(Error::Degenerate(format!("{p} is a 2-torsion point"))),
    };
    let nq = Rat::from_integer(n.clone());
    let n2 = &nq * &nq;
    let a = (Rat::from_integer(2.into()) * &nq * x / y).abs();
    let b = ((x * x - &n2) / y).abs();
    let c = ((x * x + &n2) / y).abs();
    let t = RightTriangle::new(a, b, c)?;
    debug_assert_eq!(t.area(), nq.abs());
    Ok(t)
}

/// `m = alpha^4 - beta^4` with the triangle
/// `(2 alpha beta, m / (alpha beta), (alpha^4 + beta^4) / (alpha beta))`.
pub fn quartic_triangle(alpha: u64, beta: u64) -> Result<(Int, RightTriangle)> {
    if alpha <= beta || beta == 0 {
        return Err(Error::InvalidArgument(format!("need alpha > beta >= 1, got ({alpha}, {beta})")));
    }
    let al = Int::from(alpha);
    let be = Int::from(beta);
    let a4 = al.pow(4);
    let b4 = be.pow(4);
    let m = &a4 - &b4;
    let ab = Rat::from_integer(&al * &be);
    let t = RightTriangle::new(
        Rat::from_integer(Int::from(2) * &al * &be),
        Rat::from_integer(m.clone()) / &ab,
        Rat::from_integer(a4 + b4) / &ab,
    )?;
    Ok((m, t))
}

/// The four ternary forms of the Tunnell-style criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TernaryForm {
    /// `2x^2 + y^2 + 8z^2`
    F1,
    /// `2x^2 + y^2 + 32z^2`
    F2,
    /// `8x^2 + 2y^2 + 16z^2`
    F3,
    /// `8x^2 + 2y^2 + 64z^2`
    F4,
}

impl TernaryForm {
    pub fn coefficients(self) -> [u64; 3] {
        match self {
            TernaryForm::F1 => [2, 1, 8],
            TernaryForm::F2 => [2, 1, 32],
            TernaryForm::F3 => [8, 2, 16],
            TernaryForm::F4 => [8, 2, 64],
        }
    }
}

/// Number of integer triples `(x, y, z)` (any signs) with `F(x, y, z) = m`.
pub fn count_ternary(form: TernaryForm, m: u64) -> u64 {
    count_ternary_with(form, m, Strategy::Sequential)
}

pub fn count_ternary_with(form: TernaryForm, m: u64, strategy: Strategy) -> u64 {
    let [cx, cy, cz] = form.coefficients();
    let xmax = isqrt(m / cx);
    // index i covers x = i - xmax
    exec::sum_range(strategy, 0..=2 * xmax, |i| {
        let x = i.abs_diff(xmax);
        let rem = m - cx * x * x;
        let ymax = isqrt(rem / cy);
        let mut count = 0;
        for y in 0..=ymax {
            let rest = rem - cy * y * y;
            if !rest.is_multiple_of(cz) {
                continue;
            }
            let z2 = rest / cz;
            let z = isqrt(z2);
            if z * z == z2 {
                let ys = if y == 0 { 1 } else { 2 };
                let zs = if z == 0 { 1 } else { 2 };
                count += ys * zs;
            }
        }
        count
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TunnellCheck {
    pub m: u64,
    pub odd: bool,
    pub square_free: bool,
    /// Representations by F1 (odd) or F3 (even).
    pub lhs: u64,
    /// Representations by F2 (odd) or F4 (even).
    pub rhs: u64,
    /// `lhs == 2 rhs`
    pub consistent: bool,
}

/// Compares the two counts for `m` exactly as stated, without reducing `m`
/// to its square-free part.
pub fn tunnell_for_m(m: u64, strategy: Strategy) -> Result<TunnellCheck> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let odd = m % 2 == 1;
    let (f, g) = if odd { (TernaryForm::F1, TernaryForm::F2) } else { (TernaryForm::F3, TernaryForm::F4) };
    let lhs = count_ternary_with(f, m, strategy);
    let rhs = count_ternary_with(g, m, strategy);
    Ok(TunnellCheck { m, odd, square_free: is_square_free(m), lhs, rhs, consistent: lhs == 2 * rhs })
}

/// The check for `m = (k^2 - 1) n`.
pub fn tunnell_check(n: u64, k: u64, strategy: Strategy) -> Result<TunnellCheck> {
    if k < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!("need k >= 2 and n >= 1, got k = {k}, n = {n}")));
    }
    let m = (k as u128 * k as u128 - 1)
        .checked_mul(n as u128)
        .and_then(|m| u64::try_from(m).ok())
        .ok_or_else(|| Error::InvalidArgument("(k^2 - 1) n overflows".into()))?;
    tunnell_for_m(m, strategy)
}
