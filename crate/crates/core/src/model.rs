//! Right trapezoids under the three constraint systems, with exact validators.
//!
//! Labeling is fixed: `a` is the longer parallel side, `d` the shorter one
//! (offset for the d-flavor), `b` the height shared by both right angles and
//! `c` the slant side.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, rat_display, rat_string, Rat};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositive(&'static str),
    Negative(&'static str),
    NotLonger { a: String, d: String },
    Pythagoras { legs: String, hypotenuse: String },
    NotCoprime { b: u64, c: u64, gcd: u64 },
    KRelation { a: String, kd: String },
    KTooSmall(u64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive(s) => write!(f, "{s} must be positive"),
            Violation::Negative(s) => write!(f, "{s} must be non-negative"),
            Violation::NotLonger { a, d } => write!(f, "a = {a} must exceed d = {d}"),
            Violation::Pythagoras { legs, hypotenuse } => {
                write!(f, "Pythagoras fails: sum of squared legs {legs} != c^2 = {hypotenuse}")
            }
            Violation::NotCoprime { b, c, gcd } => write!(f, "gcd(b, c) = gcd({b}, {c}) = {gcd}, need 1"),
            Violation::KRelation { a, kd } => write!(f, "a = {a} != k d = {kd}"),
            Violation::KTooSmall(k) => write!(f, "k = {k} must be >= 1"),
        }
    }
}

/// Integer right trapezoid; `d = 0` is the degenerate right triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawI")]
pub struct TrapezoidI {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

#[derive(Deserialize)]
struct RawI {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl TryFrom<RawI> for TrapezoidI {
    type Error = Error;
    fn try_from(r: RawI) -> Result<Self, Error> {
        validate_i(r.a, r.b, r.c, r.d).map_err(Error::Invalid)
    }
}

impl TrapezoidI {
    pub fn area(&self) -> Rat {
        Rat::new(((self.a + self.d) as u128 * self.b as u128).into(), 2.into())
    }
}

impl fmt::Display for TrapezoidI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c,d)=({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

pub fn validate_i(a: u64, b: u64, c: u64, d: u64) -> Result<TrapezoidI, Vec<Violation>> {
    let mut v = Vec::new();
    if b == 0 {
        v.push(Violation::NonPositive("b"));
    }
    if c == 0 {
        v.push(Violation::NonPositive("c"));
    }
    if a <= d {
        v.push(Violation::NotLonger { a: a.to_string(), d: d.to_string() });
    } else {
        let run = (a - d) as u128;
        let legs = run * run + b as u128 * b as u128;
        let hyp = c as u128 * c as u128;
        if legs != hyp {
            v.push(Violation::Pythagoras { legs: legs.to_string(), hypotenuse: hyp.to_string() });
        }
    }
    let g = gcd_u64(b, c);
    if b > 0 && c > 0 && g != 1 {
        v.push(Violation::NotCoprime { b, c, gcd: g });
    }
    if v.is_empty() {
        Ok(TrapezoidI { a, b, c, d })
    } else {
        Err(v)
    }
}

/// Rational right trapezoid with `a = k d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawK")]
pub struct TrapezoidK {
    pub k: u64,
    #[serde(with = "rat_string")]
    pub a: Rat,
    #[serde(with = "rat_string")]
    pub b: Rat,
    #[serde(with = "rat_string")]
    pub c: Rat,
    #[serde(with = "rat_string")]
    pub d: Rat,
}

#[derive(Deserialize)]
struct RawK {
    k: u64,
    #[serde(with = "rat_string")]
    a: Rat,
    #[serde(with = "rat_string")]
    b: Rat,
    #[serde(with = "rat_string")]
    c: Rat,
    #[serde(with = "rat_string")]
    d: Rat,
}

impl TryFrom<RawK> for TrapezoidK {
    type Error = Error;
    fn try_from(r: RawK) -> Result<Self, Error> {
        validate_k(r.a, r.b, r.c, r.d, r.k).map_err(Error::Invalid)
    }
}

impl TrapezoidK {
    pub fn area(&self) -> Rat {
        (&self.a + &self.d) * &self.b / Rat::from_integer(2.into())
    }
}

impl fmt::Display for TrapezoidK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a,b,c,d)=({},{},{},{}), k={}",
            rat_display(&self.a),
            rat_display(&self.b),
            rat_display(&self.c),
            rat_display(&self.d),
            self.k
        )
    }
}

fn check_positive(v: &mut Vec<Violation>, name: &'static str, x: &Rat) {
    if !x.is_positive() {
        v.push(Violation::NonPositive(name));
    }
}

fn check_pythagoras(v: &mut Vec<Violation>, leg1: &Rat, leg2: &Rat, c: &Rat) {
    let legs = leg1 * leg1 + leg2 * leg2;
    let hyp = c * c;
    if legs != hyp {
        v.push(Violation::Pythagoras { legs: rat_display(&legs), hypotenuse: rat_display(&hyp) });
    }
}

pub fn validate_k(a: Rat, b: Rat, c: Rat, d: Rat, k: u64) -> Result<TrapezoidK, Vec<Violation>> {
    let mut v = Vec::new();
    if k < 1 {
        v.push(Violation::KTooSmall(k));
    }
    for (name, x) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
        check_positive(&mut v, name, x);
    }
    let kd = Rat::from_integer(k.into()) * &d;
    if a != kd {
        v.push(Violation::KRelation { a: rat_display(&a), kd: rat_display(&kd) });
    }
    check_pythagoras(&mut v, &(&a - &d), &b, &c);
    if v.is_empty() {
        Ok(TrapezoidK { k, a, b, c, d })
    } else {
        Err(v)
    }
}

/// Rational right trapezoid of the offset flavor: legs `a`, `b`, hypotenuse
/// `c`, offset `d >= 0`, area `(a + 2d) b / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawD")]
pub struct TrapezoidD {
    #[serde(with = "rat_string")]
    pub a: Rat,
    #[serde(with = "rat_string")]
    pub b: Rat,
    #[serde(with = "rat_string")]
    pub c: Rat,
    #[serde(with = "rat_string")]
    pub d: Rat,
}

#[derive(Deserialize)]
struct RawD {
    #[serde(with = "rat_string")]
    a: Rat,
    #[serde(with = "rat_string")]
    b: Rat,
    #[serde(with = "rat_string")]
    c: Rat,
    #[serde(with = "rat_string")]
    d: Rat,
}

impl TryFrom<RawD> for TrapezoidD {
    type Error = Error;
    fn try_from(r: RawD) -> Result<Self, Error> {
        validate_d(r.a, r.b, r.c, r.d).map_err(Error::Invalid)
    }
}

impl TrapezoidD {
    pub fn area(&self) -> Rat {
        let two = Rat::from_integer(2.into());
        (&self.a + &two * &self.d) * &self.b / two
    }
}

impl fmt::Display for TrapezoidD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a,b,c)=({},{},{}), d={}",
            rat_display(&self.a),
            rat_display(&self.b),
            rat_display(&self.c),
            rat_display(&self.d)
        )
    }
}

pub fn validate_d(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<TrapezoidD, Vec<Violation>> {
    let mut v = Vec::new();
    for (name, x) in [("a", &a), ("b", &b), ("c", &c)] {
        check_positive(&mut v, name, x);
    }
    if d.is_negative() {
        v.push(Violation::Negative("d"));
    }
    check_pythagoras(&mut v, &a, &b, &c);
    if v.is_empty() {
        Ok(TrapezoidD { a, b, c, d })
    } else {
        Err(v)
    }
}

/// Checks that a computed trapezoid has the expected area.
pub(crate) fn expect_area(area: &Rat, n: u64) -> Result<(), Error> {
    let want = Rat::from_integer(n.into());
    if *area == want {
        Ok(())
    } else {
        Err(Error::Construction(format!("area {} != {n}", rat_display(area))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn integer_trapezoid_area_and_validation() {
        let t = validate_i(25, 7, 25, 1).unwrap();
        assert_eq!(t.area(), rat(91, 1));
        let tri = validate_i(3, 4, 5, 0).unwrap();
        assert_eq!(tri.area(), rat(6, 1));
        let bad = validate_i(1, 1, 5, 0).unwrap_err();
        assert!(matches!(bad[0], Violation::Pythagoras { .. }));
        // Non-primitive (b, c) share a factor.
        let bad = validate_i(6, 8, 10, 0).unwrap_err();
        assert_eq!(bad, vec![Violation::NotCoprime { b: 8, c: 10, gcd: 2 }]);
        let bad = validate_i(2, 1, 1, 2).unwrap_err();
        assert!(matches!(bad[0], Violation::NotLonger { .. }));
    }

    #[test]
    fn k_trapezoids_from_examples() {
        let t = validate_k(rat(8, 3), rat(1, 1), rat(5, 3), rat(4, 3), 2).unwrap();
        assert_eq!(t.area(), rat(2, 1));
        let t = validate_k(rat(9, 4), rat(2, 1), rat(5, 2), rat(3, 4), 3).unwrap();
        assert_eq!(t.area(), rat(3, 1));
        let err = validate_k(rat(9, 4), rat(2, 1), rat(5, 2), rat(3, 4), 2).unwrap_err();
        assert!(err.iter().any(|v| matches!(v, Violation::KRelation { .. })));
        let err = validate_k(rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1), 1).unwrap_err();
        assert!(err.contains(&Violation::NonPositive("d")));
    }

    #[test]
    fn d_trapezoid_from_example() {
        let t = validate_d(rat(1352, 123), rat(123, 1045), rat(1412921, 128535), rat(3, 1)).unwrap();
        assert_eq!(t.area(), rat(1, 1));
        // d = 0 is the right-triangle area.
        let t = validate_d(rat(3, 1), rat(4, 1), rat(5, 1), rat(0, 1)).unwrap();
        assert_eq!(t.area(), rat(6, 1));
        assert!(validate_d(rat(3, 1), rat(4, 1), rat(5, 1), rat(-1, 1)).is_err());
    }

    #[test]
    fn json_uses_num_den_strings_and_revalidates() {
        let t = validate_k(rat(8, 3), rat(1, 1), rat(5, 3), rat(4, 3), 2).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"k":2,"a":"8/3","b":"1/1","c":"5/3","d":"4/3"}"#);
        assert_eq!(serde_json::from_str::<TrapezoidK>(&s).unwrap(), t);
        assert!(serde_json::from_str::<TrapezoidK>(r#"{"k":3,"a":"8/3","b":"1","c":"5/3","d":"4/3"}"#).is_err());
        let i: TrapezoidI = serde_json::from_str(r#"{"a":25,"b":7,"c":25,"d":1}"#).unwrap();
        assert_eq!(i.area(), rat(91, 1));
        assert!(serde_json::from_str::<TrapezoidI>(r#"{"a":25,"b":7,"c":24,"d":1}"#).is_err());
    }
}
