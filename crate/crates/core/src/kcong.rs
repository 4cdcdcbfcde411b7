//! k-congruent numbers.
//!
//! A rational point on `y^2 = x^3 - ((k^2-1) n)^2 x` (off the 2-torsion)
//! gives a right trapezoid with `a = k d` and area `n`. Witness points come
//! from right triangles of area `(k^2-1) n`: the `n^3 - n` triangle when
//! `k = n`, the `m^3 - m` identities, and the `alpha^4 - beta^4` family, whose
//! integer solutions are searched directly or through a Pell reduction.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{gcd, iroot4, rat_display, sqrt_exact, Int, Rat};
use crate::classic::{congruent_curve, quartic_triangle, triangle_to_point, RightTriangle};
use crate::ecq::{Curve, Point};
use crate::exec::{self, Strategy};
use crate::model::{expect_area, validate_k, TrapezoidK};
use crate::{Error, Result};

/// `(k^2 - 1) n`, the congruent number behind the k-curve.
pub fn k_multiplier(n: u64, k: u64) -> Int {
    (Int::from(k) * k - 1) * n
}

/// `y^2 = x^3 - ((k^2-1) n)^2 x`.
pub fn curve_k(n: u64, k: u64) -> Result<Curve> {
    if k <= 1 {
        return Err(Error::InvalidArgument(format!("k = {k}: the k-curve needs k >= 2")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    congruent_curve(&k_multiplier(n, k))
}

pub fn point_to_trapezoid_k(n: u64, k: u64, p: &Point) -> Result<TrapezoidK> {
    let curve = curve_k(n, k)?;
    curve.ensure(p)?;
    let m = Rat::from_integer(k_multiplier(n, k));
    let (x, y) = match p {
        Point::Affine { x, y } if !y.is_zero() && !x.is_zero() => (x, y),
        _ => return Err(Error::Degenerate(format!("{p} gives zero-length sides"))),
    };
    let nq = Rat::from_integer(n.into());
    let kq = Rat::from_integer(k.into());
    let two = Rat::from_integer(2.into());
    let m2 = &m * &m;
    let d = (&two * &nq * x / y).abs();
    let a = &kq * &d;
    let k1y = (&kq + Rat::one()) * y;
    let b = ((x * x - &m2) / &k1y).abs();
    let c = ((x * x + &m2) / &k1y).abs();
    let t = validate_k(a, b, c, d, k).map_err(Error::Invalid)?;
    expect_area(&t.area(), n)?;
    Ok(t)
}

/// The three `(k, m)` with `n (k^2 - 1) = m^3 - m`:
/// `(n, n)`, `(8n - 3, 4n - 1)`, `(8n + 3, 4n + 1)`.
pub fn cubic_identity_solutions(n: u64) -> Result<[(Int, Int); 3]> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let nn = Int::from(n);
    let sols = [
        (nn.clone(), nn.clone()),
        (Int::from(8) * &nn - 3, Int::from(4) * &nn - 1),
        (Int::from(8) * &nn + 3, Int::from(4) * &nn + 1),
    ];
    for (k, m) in &sols {
        if &nn * (k * k - 1) != m * m * m - m {
            return Err(Error::Construction(format!("n (k^2-1) != m^3 - m for (k, m) = ({k}, {m})")));
        }
    }
    Ok(sols)
}

/// Triangle `(m^2 - 1, 2m, m^2 + 1)` of area `m^3 - m`.
fn cubic_triangle(m: &Int) -> Result<RightTriangle> {
    let q = |v: Int| Rat::from_integer(v);
    RightTriangle::new(q(m * m - 1), q(Int::from(2) * m), q(m * m + 1))
}

/// Witness with `k = n` from the triangle of area `n^3 - n`.
pub fn nnn_witness(n: u64) -> Result<TrapezoidK> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be >= 2".into()));
    }
    let m = Int::from(n);
    let area = &m * &m * &m - &m;
    let t = cubic_triangle(&m)?;
    let p = triangle_to_point(&area, &t)?;
    point_to_trapezoid_k(n, n, &p)
}

/// Witness for one of the `m^3 - m` identity pairs.
pub fn cubic_identity_witness(n: u64, k: &Int, m: &Int) -> Result<TrapezoidK> {
    let k64: u64 = k.try_into().map_err(|_| Error::InvalidArgument("k out of range".into()))?;
    let area = m * m * m - m;
    if area != k_multiplier(n, k64) {
        return Err(Error::InvalidArgument(format!("(k, m) = ({k}, {m}) does not solve n (k^2-1) = m^3 - m")));
    }
    let p = triangle_to_point(&area, &cubic_triangle(m)?)?;
    point_to_trapezoid_k(n, k64, &p)
}

/// Row of the `(k^2 - 1) n = alpha^4 - beta^4` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuarticRow {
    pub n: u64,
    pub k: u64,
    pub alpha: u64,
    pub beta: u64,
}

impl QuarticRow {
    pub fn is_valid(&self) -> bool {
        let m = (self.k as u128 * self.k as u128 - 1) * self.n as u128;
        let (a, b) = (self.alpha as u128, self.beta as u128);
        self.k >= 2 && a > b && a.pow(4) - b.pow(4) == m
    }
}

/// Every `(k, alpha, beta)` with `2 <= k <= k_max`, `alpha > beta >= 1` and
/// `(k^2 - 1) n = alpha^4 - beta^4`, ordered by `k` then `alpha`.
pub fn quartic_search(n: u64, k_max: u64, strategy: Strategy) -> Vec<QuarticRow> {
    if n == 0 || k_max < 2 {
        return Vec::new();
    }
    exec::flat_map_range(strategy, 2..=k_max, |k| {
        let m = (k as u128 * k as u128 - 1) * n as u128;
        let mut rows = Vec::new();
        // alpha^4 - (alpha-1)^4 <= m bounds alpha from above.
        let mut alpha = iroot4(m) + 1;
        while alpha.pow(4) - (alpha - 1).pow(4) <= m {
            let b4 = alpha.pow(4) - m;
            let beta = iroot4(b4);
            if beta >= 1 && beta.pow(4) == b4 {
                rows.push(QuarticRow { n, k, alpha: alpha as u64, beta: beta as u64 });
            }
            alpha += 1;
        }
        rows
    })
}

/// Table row -> triangle of area `(k^2-1) n` -> point on the k-curve ->
/// trapezoid.
pub fn quartic_to_trapezoid(row: &QuarticRow) -> Result<TrapezoidK> {
    if !row.is_valid() {
        return Err(Error::InvalidArgument(format!("{row:?} does not solve (k^2-1) n = alpha^4 - beta^4")));
    }
    if row.beta == 0 {
        return Err(Error::Degenerate("beta = 0 gives a zero leg".into()));
    }
    let (m, t) = quartic_triangle(row.alpha, row.beta)?;
    debug_assert_eq!(m, k_multiplier(row.n, row.k));
    let p = triangle_to_point(&m, &t)?;
    point_to_trapezoid_k(row.n, row.k, &p)
}

/// `n = k^2 + 1` with the witness from `(alpha, beta) = (k, 1)`.
pub fn prop31_witness(k: u64) -> Result<(u64, TrapezoidK)> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be >= 2".into()));
    }
    let n = k * k + 1;
    let t = quartic_to_trapezoid(&QuarticRow { n, k, alpha: k, beta: 1 })?;
    Ok((n, t))
}

/// `(n - lambda^2) alpha^2 - (n + lambda^2) beta^2 = 2 n lambda`, carried as
/// `X^2 - D beta^2 = N` with `X = (n - lambda^2) alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellProblem {
    pub n: u64,
    pub lambda: u64,
    /// `n^2 - lambda^4`
    #[serde(with = "crate::arith::int_string")]
    pub d: Int,
    /// `2 n lambda (n - lambda^2)`
    #[serde(with = "crate::arith::int_string")]
    pub rhs: Int,
    /// `n - lambda^2`
    #[serde(with = "crate::arith::int_string")]
    pub scale: Int,
}

impl PellProblem {
    /// Checks `(alpha, beta)` against the unscaled equation.
    pub fn satisfies(&self, alpha: &Int, beta: &Int) -> bool {
        let l2 = Int::from(self.lambda) * self.lambda;
        let n = Int::from(self.n);
        (&n - &l2) * alpha * alpha - (&n + &l2) * beta * beta == Int::from(2) * &n * self.lambda
    }
}

pub fn pell_reduce(n: u64, lambda: u64) -> Result<PellProblem> {
    if n == 0 || lambda == 0 {
        return Err(Error::InvalidArgument("n and lambda must be >= 1".into()));
    }
    let l2 = Int::from(lambda) * lambda;
    let nn = Int::from(n);
    if l2 == nn {
        return Err(Error::Degenerate("lambda^2 = n".into()));
    }
    let scale = &nn - &l2;
    Ok(PellProblem { n, lambda, d: &nn * &nn - &l2 * &l2, rhs: Int::from(2) * &nn * lambda * &scale, scale })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolutions {
    /// `(alpha, beta)` in increasing `alpha`.
    pub pairs: Vec<(Int, Int)>,
    /// `D` is a perfect square: the solution set is finite and complete.
    pub finite: bool,
}

const MAX_BASE_SEARCH: u64 = 50_000_000;
const MAX_ORBIT_STEPS: usize = 96;

/// Fundamental solution of `x^2 - D y^2 = 1`, `D > 0` non-square, via the
/// continued fraction of `sqrt(D)`.
pub fn fundamental_unit(d: &Int) -> (Int, Int) {
    let a0 = d.sqrt();
    let (mut m, mut q, mut a) = (Int::zero(), Int::one(), a0.clone());
    let (mut p_prev, mut p) = (Int::one(), a0.clone());
    let (mut q_prev, mut qq) = (Int::zero(), Int::one());
    loop {
        if &p * &p - d * &qq * &qq == Int::one() {
            return (p, qq);
        }
        m = &a * &q - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &qq + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut qq, q_next);
    }
}

/// `(D', f)` with `D = f^2 D'` and `D'` square-free (when `D` fits in 64 bits).
fn square_split(d: &Int) -> (Int, Int) {
    let Ok(small) = u64::try_from(d) else { return (d.clone(), Int::one()) };
    let Ok(factors) = crate::arith::factorize(small) else { return (d.clone(), Int::one()) };
    let (mut core, mut f) = (1u64, 1u64);
    for (p, e) in factors {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    (Int::from(core), Int::from(f))
}

/// First `want` non-negative solutions `(alpha, beta)` by increasing `alpha`.
pub fn pell_solve(problem: &PellProblem, want: usize) -> Result<PellSolutions> {
    if !problem.d.is_positive() {
        return Err(Error::InvalidArgument(format!("D = {} must be positive", problem.d)));
    }
    let big_n = &problem.rhs;
    let to_alpha = |x: &Int| -> Option<Int> {
        let (q, r) = x.abs().div_rem(&problem.scale);
        r.is_zero().then_some(q)
    };
    if let Some(s) = sqrt_exact(&problem.d) {
        // (X - s beta)(X + s beta) = N over divisor pairs e f = N.
        let mut pairs = Vec::new();
        let mut e = Int::one();
        while &e * &e <= *big_n {
            if (big_n % &e).is_zero() {
                let f = big_n / &e;
                if (&e + &f).is_even() && (&f - &e).is_even() {
                    let x = (&e + &f) / 2;
                    let sb: Int = (&f - &e) / 2;
                    if (&sb % &s).is_zero() {
                        if let Some(alpha) = to_alpha(&x) {
                            pairs.push((alpha, sb / &s));
                        }
                    }
                }
            }
            e += 1;
        }
        pairs.sort();
        pairs.dedup();
        pairs.truncate(want);
        return Ok(PellSolutions { pairs, finite: true });
    }
    // X^2 - D beta^2 = N is solved as X^2 - D' Y^2 = N with D = f^2 D' and
    // Y = f beta, which keeps the unit (and the class search) small.
    let (core, f) = square_split(&problem.d);
    let d = &core;
    let (x1, y1) = fundamental_unit(d);
    // Nagell's bound for N > 0: 0 <= v <= y1 sqrt(N / (2 (x1 + 1))).
    let mut bases = Vec::new();
    let mut v = Int::zero();
    let limit_lhs = |v: &Int| Int::from(2) * (&x1 + 1u32) * v * v;
    let limit_rhs = &y1 * &y1 * big_n;
    let mut steps = 0u64;
    while limit_lhs(&v) <= limit_rhs {
        steps += 1;
        if steps > MAX_BASE_SEARCH {
            return Err(Error::Construction(format!("class search for D = {d} exceeds {MAX_BASE_SEARCH} steps")));
        }
        if let Some(u) = sqrt_exact(&(big_n + d * &v * &v)) {
            bases.push((u.clone(), v.clone()));
            if !v.is_zero() {
                bases.push((u, -v.clone()));
            }
        }
        v += 1;
    }
    let step = |(u, v): &(Int, Int)| (u * &x1 + d * v * &y1, u * &y1 + v * &x1);
    let mut orbits: Vec<Vec<(Int, Int)>> = bases.into_iter().map(|b| vec![b]).collect();
    let collect = |orbits: &Vec<Vec<(Int, Int)>>| {
        let mut found: Vec<(Int, Int)> = orbits
            .iter()
            .flatten()
            .filter(|(_, v)| (v % &f).is_zero())
            .filter_map(|(u, v)| to_alpha(u).map(|a| (a, v.abs() / &f)))
            .collect();
        found.sort();
        found.dedup();
        found
    };
    for _ in 0..MAX_ORBIT_STEPS {
        let found = collect(&orbits);
        if found.len() >= want {
            let cutoff = &found[want - 1].0 * &problem.scale;
            let settled = orbits.iter().all(|o| {
                let n = o.len();
                n >= 2 && o[n - 1].0.abs() > o[n - 2].0.abs() && o[n - 1].0.abs() > cutoff
            });
            if settled {
                let mut pairs = found;
                pairs.truncate(want);
                return Ok(PellSolutions { pairs, finite: false });
            }
        }
        if orbits.is_empty() {
            break;
        }
        for o in orbits.iter_mut() {
            let next = step(o.last().expect("orbit is nonempty"));
            o.push(next);
        }
    }
    let mut pairs = collect(&orbits);
    pairs.truncate(want);
    Ok(PellSolutions { pairs, finite: false })
}

/// `k = (alpha^2 - beta^2) / lambda - 1` when integral, `k >= 2`, and
/// `n (k - 1) = lambda (alpha^2 + beta^2)`.
pub fn pell_to_k(n: u64, lambda: u64, alpha: &Int, beta: &Int) -> Option<Int> {
    if lambda == 0 {
        return None;
    }
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let (q, r) = (&a2 - &b2).div_rem(&Int::from(lambda));
    if !r.is_zero() {
        return None;
    }
    let k = q - 1;
    if k < Int::from(2) || Int::from(n) * (&k - 1) != Int::from(lambda) * (&a2 + &b2) {
        return None;
    }
    debug_assert_eq!((&k * &k - 1) * n, &a2 * &a2 - &b2 * &b2);
    Some(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KSource {
    Rectangle,
    CubeMinusN,
    CubicIdentity,
    Quartic,
    PointSearch,
}

/// Tries the known constructions for `(n, k)`, then a small-height point
/// search on the k-curve with numerators up to `bound`.
pub fn find_k_witness(n: u64, k: u64, bound: u64) -> Result<Option<(TrapezoidK, KSource)>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be >= 1".into()));
    }
    if k == 1 {
        // Degenerate rectangle a = d = n, b = c = 1.
        let one = Rat::one();
        let nq = Rat::from_integer(n.into());
        let t = validate_k(nq.clone(), one.clone(), one, nq, 1).map_err(Error::Invalid)?;
        return Ok(Some((t, KSource::Rectangle)));
    }
    if k == n {
        return Ok(Some((nnn_witness(n)?, KSource::CubeMinusN)));
    }
    for (kk, m) in cubic_identity_solutions(n)? {
        if kk == Int::from(k) && m >= Int::from(2) {
            return Ok(Some((cubic_identity_witness(n, &kk, &m)?, KSource::CubicIdentity)));
        }
    }
    if let Some(row) = quartic_search_k(n, k) {
        return Ok(Some((quartic_to_trapezoid(&row)?, KSource::Quartic)));
    }
    let m = k_multiplier(n, k);
    let m2 = &m * &m;
    let curve = curve_k(n, k)?;
    let wmax = crate::arith::isqrt(bound).max(1);
    for w in 1..=wmax {
        let w2 = Int::from(w) * w;
        let w4 = &w2 * &w2;
        for u in 1..=bound as i64 {
            for u in [Int::from(u), Int::from(-u)] {
                if !gcd(&u, &Int::from(w)).is_one() {
                    continue;
                }
                // x = u / w^2: y^2 w^6 = u^3 - m^2 u w^4.
                let val = &u * &u * &u - &m2 * &u * &w4;
                if val.is_positive() {
                    if let Some(r) = sqrt_exact(&val) {
                        let x = Rat::new(u.clone(), w2.clone());
                        let y = Rat::new(r, &w2 * &Int::from(w));
                        let p = Point::new(x, y);
                        debug_assert!(curve.contains(&p));
                        if let Ok(t) = point_to_trapezoid_k(n, k, &p) {
                            return Ok(Some((t, KSource::PointSearch)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn quartic_search_k(n: u64, k: u64) -> Option<QuarticRow> {
    let m = (k as u128 * k as u128).checked_sub(1)?.checked_mul(n as u128)?;
    let mut alpha = iroot4(m) + 1;
    while alpha.checked_pow(4)? - (alpha - 1).pow(4) <= m {
        let b4 = alpha.pow(4) - m;
        let beta = iroot4(b4);
        if beta >= 1 && beta.pow(4) == b4 {
            return Some(QuarticRow { n, k, alpha: alpha as u64, beta: beta as u64 });
        }
        alpha += 1;
    }
    None
}

/// Human form of a witness pair for logs.
pub fn describe(t: &TrapezoidK) -> String {
    format!("({}, {}, {}, {})", rat_display(&t.a), rat_display(&t.b), rat_display(&t.c), rat_display(&t.d))
}
