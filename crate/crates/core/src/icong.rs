//! i-congruent numbers: areas of integer right trapezoids with a primitive
//! slant triangle.
//!
//! The ground truth is [`witness_oracle`], which enumerates every trapezoid of
//! a given area through the primitive Pythagorean parametrization. The closed
//! classification ([`classify_prop11`]) and the five non-congruent forms
//! ([`star_forms`]) are checked against it, never assumed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{factorize, gcd_u64, is_prime, primes_up_to, v2};
use crate::exec::{self, Strategy};
use crate::model::{validate_i, TrapezoidI};
use crate::{Error, Result};

/// `1 + ln 2`, the limiting constant of `f(x) log x / x`.
pub const F_LIMIT: f64 = 1.0 + std::f64::consts::LN_2;

/// Pythagorean generator pair: `x > y >= 1`, coprime, opposite parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PythParam {
    pub x: u64,
    pub y: u64,
}

impl PythParam {
    pub fn new(x: u64, y: u64) -> Option<Self> {
        (x > y && y >= 1 && gcd_u64(x, y) == 1 && (x - y) % 2 == 1).then_some(PythParam { x, y })
    }

    /// `x y`
    pub fn product(&self) -> u64 {
        self.x * self.y
    }

    /// `x^2 - y^2`
    pub fn difference(&self) -> u64 {
        self.x * self.x - self.y * self.y
    }

    pub fn hypotenuse(&self) -> u64 {
        self.x * self.x + self.y * self.y
    }
}

/// All generator pairs with `x y (x^2 - y^2) <= bound`. Every witness of an
/// area `n` comes from such a pair with `bound = n`.
pub fn params_up_to(bound: u64) -> Vec<PythParam> {
    let mut out = Vec::new();
    let mut x = 2u64;
    // y = 1 minimises x y (x^2 - y^2) for fixed x.
    while (x as u128) * (x as u128 * x as u128 - 1) <= bound as u128 {
        for y in 1..x {
            if let Some(p) = PythParam::new(x, y) {
                if p.product() as u128 * p.difference() as u128 <= bound as u128 {
                    out.push(p);
                }
            }
        }
        x += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum WitnessCase {
    /// Odd height `b = x^2 - y^2`, `a - d = 2xy`.
    OddHeight,
    /// Even height `b = 2xy`, `a - d = x^2 - y^2`.
    EvenHeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IWitness {
    pub trapezoid: TrapezoidI,
    pub param: PythParam,
    pub case: WitnessCase,
    pub k: u64,
}

fn witness_from(param: PythParam, n: u64) -> impl Iterator<Item = IWitness> {
    let p = param.product();
    let diff = param.difference();
    let hyp = param.hypotenuse();
    let odd = (n.is_multiple_of(diff) && n / diff >= p).then(|| {
        let k = n / diff;
        let t = validate_i(k + p, diff, hyp, k - p).expect("odd-height witness is valid");
        IWitness { trapezoid: t, param, case: WitnessCase::OddHeight, k }
    });
    let even = (n.is_multiple_of(p) && (n / p) % 2 == 1 && n / p >= diff).then(|| {
        let k = n / p;
        let t = validate_i((k + diff) / 2, 2 * p, hyp, (k - diff) / 2).expect("even-height witness is valid");
        IWitness { trapezoid: t, param, case: WitnessCase::EvenHeight, k }
    });
    odd.into_iter().chain(even)
}

/// Every i-trapezoid of area `n`, with the generator pair that produced it.
pub fn witnesses(n: u64) -> Vec<IWitness> {
    let mut out: Vec<IWitness> = params_up_to(n).into_iter().flat_map(|p| witness_from(p, n)).collect();
    out.sort();
    out
}

/// Complete list of integer right trapezoids with area `n` (empty iff `n` is
/// not i-congruent).
pub fn witness_oracle(n: u64) -> Vec<TrapezoidI> {
    let mut out: Vec<TrapezoidI> = witnesses(n).into_iter().map(|w| w.trapezoid).collect();
    out.sort();
    out.dedup();
    out
}

pub fn has_witness(n: u64) -> bool {
    params_up_to(n).into_iter().any(|p| witness_from(p, n).next().is_some())
}

/// Decomposition certifying i-congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `n = p k`, `p` an odd prime, `k >= (p^2 - 1) / 4`.
    OddPrime { p: u64, k: u64 },
    /// `n = 2^i k`, `k` odd, `k >= 4^i - 1`.
    PowerOfTwo { i: u32, k: u64 },
}

/// All certificates of the closed classification for `n`.
pub fn certificates(n: u64) -> Vec<Certificate> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (p, _) in factorize(n).expect("n > 0") {
        if p == 2 {
            continue;
        }
        let k = n / p;
        if 4 * k as u128 >= p as u128 * p as u128 - 1 {
            out.push(Certificate::OddPrime { p, k });
        }
    }
    let i = v2(n);
    if i >= 1 {
        let k = n >> i;
        if i < 32 && k >= (1u64 << (2 * i)) - 1 {
            out.push(Certificate::PowerOfTwo { i, k });
        }
    }
    out
}

/// Closed-form classification; `Some` carries the first certificate found.
pub fn classify_prop11(n: u64) -> Option<Certificate> {
    certificates(n).into_iter().next()
}

/// Numbers `<= x` admitting both an odd-prime and a power-of-two certificate.
pub fn intersection_set(x: u64) -> Vec<u64> {
    (1..=x)
        .filter(|&n| {
            let c = certificates(n);
            c.iter().any(|c| matches!(c, Certificate::OddPrime { .. }))
                && c.iter().any(|c| matches!(c, Certificate::PowerOfTwo { .. }))
        })
        .collect()
}

/// One of the five non-i-congruent shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "tag")]
pub enum IForm {
    #[serde(rename = "P")]
    Prime { p: u64 },
    #[serde(rename = "P_SQUARED")]
    PrimeSquared { p: u64 },
    #[serde(rename = "PQ")]
    PrimePair { p: u64, q: u64 },
    #[serde(rename = "POW2")]
    PowerOfTwo { i: u32 },
    #[serde(rename = "POW2_P")]
    PowerOfTwoPrime { i: u32, p: u64 },
}

impl IForm {
    pub fn value(&self) -> u64 {
        match *self {
            IForm::Prime { p } => p,
            IForm::PrimeSquared { p } => p * p,
            IForm::PrimePair { p, q } => p * q,
            IForm::PowerOfTwo { i } => 1 << i,
            IForm::PowerOfTwoPrime { i, p } => (1 << i) * p,
        }
    }
}

impl std::fmt::Display for IForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            IForm::Prime { p } => write!(f, "p={p}"),
            IForm::PrimeSquared { p } => write!(f, "p^2 with p={p}"),
            IForm::PrimePair { p, q } => write!(f, "pq with p={p}, q={q}"),
            IForm::PowerOfTwo { i } => write!(f, "2^{i}"),
            IForm::PowerOfTwoPrime { i, p } => write!(f, "2^{i}*p with p={p}"),
        }
    }
}

fn pq_admissible(p: u64, q: u64) -> bool {
    5 < p && p < q && (4 * q as u128) < p as u128 * p as u128 - 1
}

// 2^(1 + i/2) < p < 2^(2i) - 1, squared on the left to stay in integers.
fn pow2p_admissible(i: u32, p: u64) -> bool {
    (2..32).contains(&i) && p > 2 && (1u128 << (i + 2)) < p as u128 * p as u128 && (p as u128) < (1u128 << (2 * i)) - 1
}

/// Forms matched by `n`, empty when none.
pub fn star_forms(n: u64) -> Vec<IForm> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if n.is_power_of_two() {
        out.push(IForm::PowerOfTwo { i: v2(n) });
    }
    let f = factorize(n).expect("n > 0");
    match f.as_slice() {
        [(p, 1)] if *p > 2 => out.push(IForm::Prime { p: *p }),
        [(p, 2)] if *p != 3 => out.push(IForm::PrimeSquared { p: *p }),
        [(p, 1), (q, 1)] if pq_admissible(*p, *q) => out.push(IForm::PrimePair { p: *p, q: *q }),
        [(2, i), (p, 1)] if pow2p_admissible(*i, *p) => out.push(IForm::PowerOfTwoPrime { i: *i, p: *p }),
        _ => {}
    }
    out.sort();
    out
}

/// Every `n <= x` of one of the five forms, built constructively from a
/// prime sieve.
pub fn enumerate_star_forms(x: u64) -> BTreeMap<u64, Vec<IForm>> {
    let mut out: BTreeMap<u64, Vec<IForm>> = BTreeMap::new();
    let mut add = |f: IForm| out.entry(f.value()).or_default().push(f);
    if x == 0 {
        return out;
    }
    let primes = primes_up_to(x);
    for &p in &primes {
        if p > 2 {
            add(IForm::Prime { p });
        }
        if p != 3 && p.checked_mul(p).is_some_and(|sq| sq <= x) {
            add(IForm::PrimeSquared { p });
        }
    }
    for (idx, &p) in primes.iter().enumerate() {
        if p <= 5 {
            continue;
        }
        if p * p > x {
            break;
        }
        for &q in &primes[idx + 1..] {
            if p * q > x || !pq_admissible(p, q) {
                break;
            }
            add(IForm::PrimePair { p, q });
        }
    }
    let mut i = 0u32;
    while i < 64 && (1u64 << i) <= x {
        add(IForm::PowerOfTwo { i });
        i += 1;
    }
    let mut i = 2u32;
    while i < 63 && (1u64 << i) * 3 <= x {
        for &p in primes.iter().skip(1) {
            if (1u64 << i) * p > x {
                break;
            }
            if pow2p_admissible(i, p) {
                add(IForm::PowerOfTwoPrime { i, p });
            }
        }
        i += 1;
    }
    for forms in out.values_mut() {
        forms.sort();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Exhaustive witness search.
    Oracle,
    /// Constructive enumeration of the five forms.
    StarForms,
}

/// Marks every i-congruent `n` in `range` by walking the witness families of
/// each generator pair.
fn congruent_marks(range: std::ops::RangeInclusive<u64>, params: &[PythParam]) -> Vec<bool> {
    let (lo, hi) = (*range.start(), *range.end());
    let mut marks = vec![false; (hi - lo + 1) as usize];
    for param in params {
        let p = param.product();
        let diff = param.difference();
        // n = diff * k, k >= p
        let mut k = p.max(lo.div_ceil(diff));
        while let Some(n) = k.checked_mul(diff).filter(|&n| n <= hi) {
            marks[(n - lo) as usize] = true;
            k += 1;
        }
        // n = p * k, k odd, k >= diff
        let mut k = diff.max(lo.div_ceil(p));
        if k % 2 == 0 {
            k += 1;
        }
        while let Some(n) = k.checked_mul(p).filter(|&n| n <= hi) {
            marks[(n - lo) as usize] = true;
            k += 2;
        }
    }
    marks
}

const SIEVE_CHUNK: u64 = 1 << 16;

/// Non-i-congruent numbers in `1..=x` according to the witness oracle.
pub fn non_congruent_oracle(x: u64, strategy: Strategy) -> Vec<u64> {
    let params = params_up_to(x);
    let chunks = exec::chunks(x, SIEVE_CHUNK);
    exec::map_slice(strategy, &chunks, |r| {
        let lo = *r.start();
        congruent_marks(r.clone(), &params)
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m)
            .map(|(i, _)| lo + i as u64)
            .collect::<Vec<_>>()
    })
    .concat()
}

/// Number of non-i-congruent `n` with `1 <= n <= x`.
pub fn count_f(x: u64, mode: CountMode, strategy: Strategy) -> u64 {
    match mode {
        CountMode::Oracle => {
            let params = params_up_to(x);
            let chunks = exec::chunks(x, SIEVE_CHUNK);
            exec::map_slice(strategy, &chunks, |r| {
                congruent_marks(r.clone(), &params).iter().filter(|m| !**m).count() as u64
            })
            .into_iter()
            .sum()
        }
        CountMode::StarForms => enumerate_star_forms(x).len() as u64,
    }
}

/// `f(x) ln x / x`, to be compared with [`F_LIMIT`].
pub fn f_ratio(x: u64, mode: CountMode, strategy: Strategy) -> f64 {
    let f = count_f(x, mode, strategy) as f64;
    f * (x as f64).ln() / x as f64
}

/// Right triangle from the degenerate (`d = 0`) family, legs ordered `a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct D0Entry {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// Pair `(s, t)`, `s > t >= 1`, reduced parts of opposite parity.
pub fn is_d0_pair(s: u64, t: u64) -> bool {
    if s <= t || t == 0 {
        return false;
    }
    let g = gcd_u64(s, t);
    (s / g + t / g) % 2 == 1
}

/// All `n = s t (s^2 - t^2) <= x` with multiplicity, sorted by `(n, s, t)`.
pub fn list_d0(x: u64) -> Vec<D0Entry> {
    let mut out = Vec::new();
    let mut t = 1u64;
    // s >= t + 1 gives n >= t (t+1) (2t+1) > 2 t^3.
    while (t as u128) * (t as u128 + 1) * (2 * t as u128 + 1) <= x as u128 {
        let mut s = t + 1;
        loop {
            let n = s as u128 * t as u128 * (s as u128 * s as u128 - t as u128 * t as u128);
            if n > x as u128 {
                break;
            }
            if is_d0_pair(s, t) {
                let (l1, l2) = (2 * s * t, s * s - t * t);
                out.push(D0Entry { n: n as u64, s, t, a: l1.max(l2), b: l1.min(l2), c: s * s + t * t });
            }
            s += 1;
        }
        t += 1;
    }
    out.sort();
    out
}

pub fn count_g(x: u64) -> u64 {
    list_d0(x).len() as u64
}

/// Lower bound `sqrt(x) / 2` for `count_g`.
pub fn g_lower(x: u64) -> f64 {
    (x as f64).sqrt() / 2.0
}

/// Upper bound `x^(2/3) / (2 * 4^(1/3)) + 2 x^(5/9)` for `count_g`.
pub fn g_upper(x: u64) -> f64 {
    let x = x as f64;
    x.powf(2.0 / 3.0) / (2.0 * 4f64.cbrt()) + 2.0 * x.powf(5.0 / 9.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiWitness {
    pub m: u32,
    pub primes: Vec<u64>,
    pub n_prime: u64,
    pub n: u64,
    pub witnesses: Vec<TrapezoidI>,
}

/// `n = p_1 ... p_m n'` with at least `m` distinct witnesses, trying
/// `n' = ceil((p_m - 1)^2 / 4), ...` for at most `bound` candidates.
pub fn multi_witness(m: u32, bound: u64) -> Result<MultiWitness> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let primes = first_primes(m as usize);
    let prod = primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
    let prod = prod.ok_or_else(|| Error::InvalidArgument(format!("product of {m} primes overflows")))?;
    let pm = *primes.last().expect("m >= 1");
    let start = ((pm - 1) * (pm - 1)).div_ceil(4).max(1);
    for n_prime in start..start.saturating_add(bound.max(1)) {
        let Some(n) = prod.checked_mul(n_prime) else { break };
        let w = witness_oracle(n);
        if w.len() >= m as usize {
            return Ok(MultiWitness { m, primes, n_prime, n, witnesses: w });
        }
    }
    Err(Error::Construction(format!("no n' within {bound} candidates gives {m} witnesses")))
}

fn first_primes(m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    let mut c = 2;
    while out.len() < m {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// `n` in `lo..=hi` whose form membership disagrees with the negated
/// classification.
pub fn star_complement_mismatches(lo: u64, hi: u64, strategy: Strategy) -> Vec<u64> {
    exec::filter_range(strategy, lo..=hi, |n| star_forms(n).is_empty() == classify_prop11(n).is_none())
}

/// `n` in `1..=hi` where the classification and the witness oracle disagree.
pub fn classifier_oracle_mismatches(hi: u64, strategy: Strategy) -> Vec<u64> {
    exec::filter_range(strategy, 1..=hi, |n| classify_prop11(n).is_some() != has_witness(n))
}
