//! Named sequences, closed forms and a registry of identity checks.
//!
//! Every check compares two or more independently computed sides: exhaustive
//! enumeration, species calculus, closed forms or recurrences. A side is never
//! derived from another side of the same check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{
    count_avoiders, count_by_max, count_cayley, count_primitive, count_primitive_avoiders, gen_avoiders,
    gen_cayley, Space,
};
use crate::series::{self, binomial, factorial, CountSeq, RatSeries, View};
use crate::word::{Letter, Pattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("cay_1k needs k >= 2 (got {0})")]
    KTooSmall(usize),
}

fn pat(s: &str) -> Pattern {
    s.parse().expect("built-in pattern")
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn two_pow(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Enumerated counts `f(0..=order)` as a sequence.
fn enumerated(order: usize, f: impl Fn(usize) -> u64 + Sync) -> CountSeq {
    CountSeq::new((0..=order).map(|n| big(f(n))).collect())
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Ballots by the first-block recurrence `a_n = sum_k C(n,k) a_{n-k}`.
pub fn fubini(order: usize) -> CountSeq {
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=order {
        let row = series::pascal_row(n);
        let v = (1..=n).map(|k| &row[k] * &a[n - k]).sum();
        a.push(v);
    }
    CountSeq::new(a)
}

/// `L(E_1 + ... + E_{k-1})`: Cayley permutations avoiding `1^k`.
pub fn cay_1k(k: usize, order: usize) -> Result<CountSeq, CatalogError> {
    if k < 2 {
        return Err(CatalogError::KTooSmall(k));
    }
    let mut inner = series::zero(order);
    for i in 1..k {
        inner = &inner + &series::e_exactly(i, order);
    }
    Ok(series::l(order).compose(&inner).expect("inner series has no constant term"))
}

/// `1^k`-avoiders through the rational expansion of `(1 - sum_{i<k} x^i/i!)^{-1}`.
fn cay_1k_rational(k: usize, order: usize) -> CountSeq {
    let coeffs = (0..=order)
        .map(|i| match i {
            0 => BigRational::one(),
            i if i < k => -BigRational::new(BigInt::one(), factorial(i)),
            _ => BigRational::zero(),
        })
        .collect();
    RatSeries::new(coeffs, View::Egf)
        .reciprocal()
        .and_then(|r| r.to_counts())
        .expect("unit constant term, integral counts")
}

/// `n! ((1+√3)^{n+1} - (1-√3)^{n+1}) / (2^{n+1} √3)`, evaluated in `Z[√3]`.
pub fn cay111_closed_form(n: usize) -> BigInt {
    // (1+√3)^{n+1} = p + q√3, so the difference of powers is 2q√3.
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for _ in 0..=n {
        let np = &p + &q * 3;
        let nq = &p + &q;
        p = np;
        q = nq;
    }
    let (value, rem) = (factorial(n) * q).div_rem(&two_pow(n));
    assert!(rem.is_zero(), "closed form is integral");
    value
}

/// `1` for `n = 0`, otherwise `(n+1)!/2`.
pub fn cay112_count(n: usize) -> BigInt {
    if n == 0 {
        BigInt::one()
    } else {
        factorial(n + 1) / 2
    }
}

/// `a_0 = a_1 = 1`, `a_{n+1} = sum_{i=0}^{n-1} (4 a_i - 1) a_{n-i}`.
pub fn cay231_recurrence(order: usize) -> CountSeq {
    let mut a: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    while a.len() <= order {
        let n = a.len() - 1;
        let v = (0..n).map(|i| (&a[i] * 4 - 1) * &a[n - i]).sum();
        a.push(v);
    }
    a.truncate(order + 1);
    CountSeq::new(a)
}

/// `sum_{j=0}^{n} (-1)^j 2^{n-j-1} C(n-j, j) C_{n-j}`; `1` at `n = 0`.
pub fn cay123_birmajer(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    (0..=n / 2)
        .map(|j| {
            let t = two_pow(n - j - 1) * binomial(n - j, j) * catalan(n - j);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// Words over `[k]` of length `n` avoiding a fixed pattern of `S_3`.
/// `k = 0` and `k = 1` are counted directly.
pub fn kary_burstein(k: usize, n: usize) -> BigInt {
    match k {
        0 => return if n == 0 { BigInt::one() } else { BigInt::zero() },
        1 => return BigInt::one(),
        _ => {}
    }
    let r = k - 2;
    let mut s = BigInt::zero();
    for m in 0..=r {
        for j in m..=r {
            s += catalan(j) * binomial(2 * (r - j), r - j) * binomial(n + 2 * m, n);
        }
    }
    let (value, rem) = (s * two_pow(n)).div_rem(&two_pow(2 * r));
    assert!(rem.is_zero(), "word count is integral");
    value
}

/// `sum_{k=1}^{n} sum_{j=1}^{k} (-1)^{k-j} C(k,j) |[j]^n(p)|`; `1` at `n = 0`.
pub fn cay_s3_kasraoui(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let words: Vec<BigInt> = (0..=n).map(|j| kary_burstein(j, n)).collect();
    let mut total = BigInt::zero();
    for k in 1..=n {
        let row = series::pascal_row(k);
        for j in 1..=k {
            let t = &row[j] * &words[j];
            if (k - j) % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
    }
    total
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn poly(coeffs: &[i64], order: usize) -> RatSeries {
    let mut c: Vec<BigRational> = coeffs.iter().map(|&v| rat(v)).collect();
    c.resize(order + 1, BigRational::zero());
    c.truncate(order + 1);
    RatSeries::new(c, View::Ogf)
}

/// `1/2 + 1/(1 + √(1 - 8x + 8x²))`.
pub fn s3_ogf(order: usize) -> RatSeries {
    let s = poly(&[1, -8, 8], order).sqrt().expect("constant term 1");
    s.add_constant(&rat(1))
        .reciprocal()
        .expect("constant term 2")
        .add_constant(&BigRational::new(1.into(), 2.into()))
}

fn sqrt_1_6x_x2(order: usize) -> RatSeries {
    poly(&[1, -6, 1], order).sqrt().expect("constant term 1")
}

/// `x (2 / (1 + x + √(1 - 6x + x²)))²`.
pub fn prim231_ogf(order: usize) -> RatSeries {
    let denom = sqrt_1_6x_x2(order).add(&poly(&[1, 1], order));
    let f = denom.reciprocal().expect("constant term 2").scale(&rat(2));
    f.mul(&f).ogf_shift().truncate(order + 1)
}

/// `(1 + x)/(1 + x + √(1 - 6x + x²)) - 1/2`.
pub fn prim231_ogf_closed(order: usize) -> RatSeries {
    let denom = sqrt_1_6x_x2(order).add(&poly(&[1, 1], order));
    poly(&[1, 1], order)
        .mul(&denom.reciprocal().expect("constant term 2"))
        .add_constant(&BigRational::new((-1).into(), 2.into()))
}

/// Ordinary image of `G = ∫(E^{-1}·F')`: divshift, substitute `x/(1+x)`
/// with the `1/(1+x)` factor, then shift.
pub fn ogf_prim_chain(f: &RatSeries) -> RatSeries {
    f.ogf_divshift().ogf_substitute_x_over_1px().ogf_shift()
}

/// `∫(E^{-1}·L³)`.
pub fn prim212_series(order: usize) -> CountSeq {
    let l = series::l(order);
    let einv = series::e(order).reciprocal().expect("unit constant term");
    (&einv * &(&(&l * &l) * &l)).integral().truncate(order + 1)
}

/// `(L + 1 + X)/2`: even permutations as an `L`-species.
pub fn alt(order: usize) -> CountSeq {
    (&(&series::l(order) + &series::one(order)) + &series::x(order))
        .div_exact(2)
        .expect("n! + [n<=1] is even")
}

/// `L - Alt`: odd permutations.
pub fn altc(order: usize) -> CountSeq {
    &series::l(order) - &alt(order)
}

/// Even and odd permutations of `[n]`, by walking all of them.
fn permutations_by_sign(n: usize) -> (u64, u64) {
    let (mut even, mut odd) = (0, 0);
    for w in gen_avoiders(&pat("11"), n) {
        let inversions: usize =
            (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum();
        if inversions.is_multiple_of(2) {
            even += 1;
        } else {
            odd += 1;
        }
    }
    (even, odd)
}

/// Counts for patterns with a known closed form or recurrence.
#[derive(Debug, Clone)]
pub struct KnownCounts {
    pub formula: &'static str,
    pub counts: CountSeq,
}

/// Formula-backed `|Cay(p)[n]|` for `n <= order`, when one is known for `p`.
pub fn known_counts(p: &Pattern, order: usize) -> Option<KnownCounts> {
    let letters = p.letters();
    let k = letters.len();
    if letters.iter().all(|&a| a == 1) {
        return Some(KnownCounts { formula: "L(E_1 + ... + E_{k-1})", counts: cay_1k(k, order).ok()? });
    }
    let text = p.to_string();
    let (formula, counts) = match text.as_str() {
        "12" | "21" => ("2^{n-1}", CountSeq::from_fn(order, |n| if n == 0 { BigInt::one() } else { two_pow(n - 1) })),
        "112" | "121" | "122" | "211" | "212" | "221" => ("(n+1)!/2", CountSeq::from_fn(order, cay112_count)),
        "123" | "132" | "213" | "231" | "312" | "321" => {
            ("a_{n+1} = sum (4a_i - 1) a_{n-i}", cay231_recurrence(order))
        }
        _ => return None,
    };
    Some(KnownCounts { formula, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// At least one side enumerates words.
    Enumeration,
    /// Every side is pure series arithmetic.
    Series,
}

impl CheckKind {
    pub fn default_bound(self) -> usize {
        match self {
            CheckKind::Enumeration => 8,
            CheckKind::Series => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Where the sides part ways, e.g. `n=5` or `p=123 n=4 k=2`.
    pub at: String,
    /// `(side label, value)` for every side at that point.
    pub values: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub bound: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    pub reference: &'static str,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub conjecture: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// One line: `name  PASS|FAIL  (bound N)  formula`.
    pub fn to_text(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let mut line = format!("{:<18} {} (n <= {})", self.name, verdict, self.bound);
        if self.conjecture {
            line.push_str(" [CONJECTURE, verified up to the bound]");
        }
        line.push_str(&format!("  {}", self.reference));
        if let Some(m) = &self.mismatch {
            let vals: Vec<String> = m.values.iter().map(|(l, v)| format!("{l}={v}")).collect();
            line.push_str(&format!("\n    first mismatch at {}: {}", m.at, vals.join(", ")));
        }
        line
    }
}

type Runner = fn(usize) -> Option<Mismatch>;

/// A named identity with its independent sides.
#[derive(Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub formula: &'static str,
    pub kind: CheckKind,
    pub conjecture: bool,
    run: Runner,
}

impl std::fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("name", &self.name)
            .field("formula", &self.formula)
            .field("kind", &self.kind)
            .field("conjecture", &self.conjecture)
            .finish()
    }
}

impl IdentityCheck {
    pub fn run(&self, bound: Option<usize>) -> CheckReport {
        let bound = bound.unwrap_or_else(|| self.kind.default_bound());
        let mismatch = (self.run)(bound);
        CheckReport {
            name: self.name,
            bound,
            verdict: if mismatch.is_none() { Verdict::Pass } else { Verdict::Fail },
            mismatch,
            reference: self.formula,
            conjecture: self.conjecture,
        }
    }
}

/// First index in `start..=end` where the labelled sides disagree.
fn agree(context: &str, start: usize, end: usize, sides: &[(&str, &CountSeq)]) -> Option<Mismatch> {
    let at = |n: usize| if context.is_empty() { format!("n={n}") } else { format!("{context} n={n}") };
    for n in start..=end {
        let values: Vec<Option<&BigInt>> = sides.iter().map(|(_, s)| s.get(n)).collect();
        let consistent = values.iter().all(|v| v.is_some() && *v == values[0]);
        if !consistent {
            return Some(Mismatch {
                at: at(n),
                values: sides
                    .iter()
                    .zip(&values)
                    .map(|((l, _), v)| (l.to_string(), v.map_or("unknown".into(), |x| x.to_string())))
                    .collect(),
            });
        }
    }
    None
}

fn rat_counts(s: &RatSeries) -> CountSeq {
    CountSeq::new(s.integer_coeffs().expect("integral ordinary coefficients"))
}

fn avoiders(p: &str, order: usize) -> CountSeq {
    let p = pat(p);
    enumerated(order, |n| count_avoiders(&p, n))
}

fn prim_avoiders(p: &str, order: usize) -> CountSeq {
    let p = pat(p);
    enumerated(order, |n| count_primitive_avoiders(&p, n))
}

fn check_cay_eq_bal(n: usize) -> Option<Mismatch> {
    let bal = series::l(n).compose(&series::e_plus(n)).ok()?;
    agree(
        "",
        0,
        n,
        &[("enumerated", &enumerated(n, count_cayley)), ("ballot recurrence", &fubini(n)), ("L(E+)", &bal)],
    )
}

fn check_cay21(n: usize) -> Option<Mismatch> {
    let e = series::e(n);
    let lhs = &series::one(n + 1) + &(&e * &e).integral();
    let even = &series::e_even(n) * &e;
    let pow = CountSeq::from_fn(n, |i| if i == 0 { BigInt::one() } else { two_pow(i - 1) });
    agree(
        "",
        0,
        n,
        &[("enumerated", &avoiders("21", n)), ("1+int(E.E)", &lhs), ("Eeven.E", &even), ("2^(n-1)", &pow)],
    )
}

fn check_cay1k(n: usize) -> Option<Mismatch> {
    (2..=4).find_map(|k| {
        let p = "1".repeat(k);
        agree(
            &format!("k={k}"),
            0,
            n,
            &[
                ("enumerated", &avoiders(&p, n)),
                ("L(E_1+...+E_{k-1})", &cay_1k(k, n).ok()?),
                ("egf reciprocal", &cay_1k_rational(k, n)),
            ],
        )
    })
}

fn check_cay111(n: usize) -> Option<Mismatch> {
    agree(
        "",
        0,
        n,
        &[
            ("enumerated", &avoiders("111", n)),
            ("Z[sqrt3] closed form", &CountSeq::from_fn(n, cay111_closed_form)),
            ("L(E1+E2)", &cay_1k(3, n).ok()?),
        ],
    )
}

fn check_cay112_ode(n: usize) -> Option<Mismatch> {
    let f = avoiders("112", n + 1);
    let l = series::l(n + 1);
    let rhs = &(&l * &f) + &(&l * &f.plus());
    agree("", 0, n, &[("Cay(112)'", &f.derivative()), ("L.F + L.F+", &rhs)])
}

fn check_cay112_alt(n: usize) -> Option<Mismatch> {
    agree(
        "",
        0,
        n,
        &[
            ("enumerated", &avoiders("112", n)),
            ("Alt'", &alt(n + 1).derivative()),
            ("(n+1)!/2", &CountSeq::from_fn(n, cay112_count)),
        ],
    )
}

fn check_cay212_eq(n: usize) -> Option<Mismatch> {
    let f = avoiders("212", n);
    let e = series::e(n);
    let rhs = &(&series::one(n + 1) + &e.convolution(&f)) + &e.convolution(&f.pointing());
    agree("", 0, n, &[("enumerated", &f), ("1 + E*F + E*F.", &rhs)])
}

fn check_cay212_alt(n: usize) -> Option<Mismatch> {
    agree("", 0, n, &[("enumerated", &avoiders("212", n)), ("Alt'", &alt(n + 1).derivative())])
}

fn check_cay231_eq(n: usize) -> Option<Mismatch> {
    let f = avoiders("231", n);
    let inner = &f.scalar_mul(4) - &series::e(n);
    let rhs = &(&series::one(n + 1) + &series::x(n + 1)) + &inner.convolution(&f.plus());
    agree("", 0, n, &[("enumerated", &f), ("1 + X + (4F - E)*F+", &rhs)])
}

fn check_cay231_rec(n: usize) -> Option<Mismatch> {
    agree("", 0, n, &[("enumerated", &avoiders("231", n)), ("recurrence", &cay231_recurrence(n))])
}

const S3: [&str; 6] = ["123", "132", "213", "231", "312", "321"];

fn check_s3_closed(n: usize) -> Option<Mismatch> {
    let birmajer = CountSeq::from_fn(n, cay123_birmajer);
    let kasraoui = CountSeq::from_fn(n, cay_s3_kasraoui);
    S3.iter().find_map(|p| {
        agree(
            &format!("p={p}"),
            0,
            n,
            &[("enumerated", &avoiders(p, n)), ("Birmajer sum", &birmajer), ("Kasraoui sum", &kasraoui)],
        )
    })
}

fn check_s3_ogf(n: usize) -> Option<Mismatch> {
    agree(
        "",
        0,
        n,
        &[
            ("1/2 + 1/(1+sqrt(1-8x+8x^2))", &rat_counts(&s3_ogf(n))),
            ("recurrence", &cay231_recurrence(n)),
            ("Birmajer sum", &CountSeq::from_fn(n, cay123_birmajer)),
            ("Kasraoui sum", &CountSeq::from_fn(n, cay_s3_kasraoui)),
        ],
    )
}

fn check_sym_conv(n: usize) -> Option<Mismatch> {
    let rhs = &series::e(n) + &series::e(n).convolution(&series::l(n).pointing());
    agree("", 0, n, &[("S", &series::l(n)), ("E + E*S.", &rhs)])
}

fn check_altc_conv(n: usize) -> Option<Mismatch> {
    let rhs = series::e(n).convolution(&alt(n).pointing());
    agree("", 0, n, &[("S - Alt", &altc(n)), ("E*Alt.", &rhs)])
}

fn check_alt_decomp(n: usize) -> Option<Mismatch> {
    let rhs = &(&series::one(n) + &series::x(n)) + &series::e(n).convolution(&alt(n).pointing());
    agree("", 0, n, &[("(S+1+X)/2", &alt(n)), ("1 + X + E*Alt.", &rhs)])
}

fn check_alt_closed(n: usize) -> Option<Mismatch> {
    let signs: Vec<(u64, u64)> = (0..=n).map(permutations_by_sign).collect();
    let even = CountSeq::from_fn(n, |i| big(signs[i].0));
    let odd = CountSeq::from_fn(n, |i| big(signs[i].1));
    agree("even", 0, n, &[("enumerated", &even), ("(S+1+X)/2", &alt(n))])
        .or_else(|| agree("odd", 0, n, &[("enumerated", &odd), ("S - Alt", &altc(n))]))
}

fn check_catalan(n: usize) -> Option<Mismatch> {
    let one = series::one(n);
    let mut f = one.clone();
    for _ in 0..=n {
        f = (&one + &f.convolution(&f)).truncate(n + 1);
    }
    let p231 = pat("231");
    let perms = enumerated(n, |i| gen_avoiders(&p231, i).filter(|w| w.max() as usize == w.len()).count() as u64);
    agree(
        "",
        0,
        n,
        &[("F = 1 + F*F", &f), ("C(2n,n)/(n+1)", &CountSeq::from_fn(n, catalan)), ("231-avoiding permutations", &perms)],
    )
}

fn check_eeven_sq(n: usize) -> Option<Mismatch> {
    let (ev, od) = (series::e_even(n), series::e_odd(n));
    agree("", 0, n, &[("Eeven^2", &(&ev * &ev)), ("1 + Eodd^2", &(&series::one(n) + &(&od * &od)))])
}

fn check_prim_sq(n: usize) -> Option<Mismatch> {
    let prim_d = enumerated(n + 1, count_primitive).derivative();
    let fub = fubini(n);
    agree("", 0, n, &[("Prim'", &prim_d), ("Cay^2", &(&fub * &fub))])
}

/// Both directions of the primitive decomposition for one family.
fn prim_pair(context: &str, n: usize, cay: &CountSeq, prim: &CountSeq) -> Option<Mismatch> {
    let cay_rhs = &series::one(n + 1) + &(&series::e(n) * &prim.derivative()).integral();
    let einv = series::e(n).reciprocal().expect("unit constant term");
    let prim_rhs = (&einv * &cay.derivative()).integral();
    agree(context, 0, n, &[("Cay", cay), ("1 + int(E.Prim')", &cay_rhs)]).or_else(|| {
        agree(
            context,
            0,
            n,
            &[("Prim", prim), ("int(E^-1.Cay')", &prim_rhs), ("inverse binomial", &cay.inverse_binomial_transform())],
        )
    })
}

fn check_prim_lemma(n: usize) -> Option<Mismatch> {
    prim_pair("", n, &enumerated(n, count_cayley), &enumerated(n, count_primitive))
}

const PRIMITIVE_PATTERNS: [&str; 8] = ["21", "212", "123", "132", "213", "231", "312", "321"];

fn check_prim_p(n: usize) -> Option<Mismatch> {
    PRIMITIVE_PATTERNS
        .iter()
        .find_map(|p| prim_pair(&format!("p={p}"), n, &avoiders(p, n), &prim_avoiders(p, n)))
        .or_else(|| agree("p=21", 0, n, &[("Prim(21)", &prim_avoiders("21", n)), ("E+", &series::e_plus(n))]))
        .or_else(|| {
            agree("p=212", 0, n, &[("Prim(212)", &prim_avoiders("212", n)), ("int(E^-1.L^3)", &prim212_series(n))])
        })
}

fn check_prim231_ogf_guess(n: usize) -> Option<Mismatch> {
    agree(
        "",
        0,
        n,
        &[
            ("x(2/(1+x+sqrt(1-6x+x^2)))^2", &rat_counts(&prim231_ogf(n))),
            ("(1+x)/(1+x+sqrt(1-6x+x^2)) - 1/2", &rat_counts(&prim231_ogf_closed(n))),
            ("ogf chain on the S3 series", &rat_counts(&ogf_prim_chain(&s3_ogf(n)))),
            ("inverse binomial of recurrence", &cay231_recurrence(n).inverse_binomial_transform()),
        ],
    )
}

fn check_prim231_chain(n: usize) -> Option<Mismatch> {
    let cay = avoiders("231", n);
    agree(
        "",
        0,
        n,
        &[
            ("ogf chain on enumerated Cay(231)", &rat_counts(&ogf_prim_chain(&cay.to_ogf()))),
            ("enumerated Prim(231)", &prim_avoiders("231", n)),
            ("x(2/(1+x+sqrt(1-6x+x^2)))^2", &rat_counts(&prim231_ogf(n))),
        ],
    )
}

const EQWILF_PATTERNS: [&str; 7] = ["11", "12", "111", "112", "212", "123", "231"];
const EQWILF_MAX_K: usize = 5;

fn check_eqwilf(n: usize) -> Option<Mismatch> {
    EQWILF_PATTERNS.iter().find_map(|ps| {
        let p = pat(ps);
        (0..=n).find_map(|len| {
            // by_max[i] = |Cay^i(p)[len]|
            let mut by_max = count_by_max(len, Space::Cayley, false, Some(&p));
            by_max.resize(EQWILF_MAX_K.max(len) + 1, 0);
            let words: Vec<u64> = (0..=EQWILF_MAX_K)
                .map(|k| count_by_max(len, Space::Kary(k as Letter), false, Some(&p)).iter().sum())
                .collect();
            (0..=EQWILF_MAX_K).find_map(|k| {
                let row = series::pascal_row(k);
                let eq1: BigInt = (0..=k).map(|i| &row[i] * big(by_max[i])).sum();
                let eq2: BigInt = (0..=k)
                    .map(|i| {
                        let t = &row[i] * big(words[i]);
                        if (k - i) % 2 == 0 {
                            t
                        } else {
                            -t
                        }
                    })
                    .sum();
                let at = format!("p={ps} n={len} k={k}");
                if eq1 != big(words[k]) {
                    Some(Mismatch {
                        at,
                        values: vec![
                            ("|[k]^n(p)|".into(), words[k].to_string()),
                            ("sum C(k,i)|Cay^i(p)[n]|".into(), eq1.to_string()),
                        ],
                    })
                } else if eq2 != big(by_max[k]) {
                    Some(Mismatch {
                        at,
                        values: vec![
                            ("|Cay^k(p)[n]|".into(), by_max[k].to_string()),
                            ("sum (-1)^(k-i) C(k,i)|[i]^n(p)|".into(), eq2.to_string()),
                        ],
                    })
                } else {
                    None
                }
            })
        })
    })
}

fn check_fixpoint_conj(n: usize) -> Option<Mismatch> {
    let prim = enumerated(n + 1, count_primitive);
    (1..=n).find_map(|len| {
        let (letter_sum, fixed_sum) = gen_cayley(len)
            .par_bridge()
            .map(|w| {
                let s: u64 = w.iter().map(|&a| a as u64).sum();
                let f: u64 = w.fixed_points().iter().map(|&i| i as u64).sum();
                (s, f)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let half_prim = &prim.coeffs()[len + 1] / 2;
        let divisible = letter_sum % len as u64 == 0 && prim.coeffs()[len + 1].is_even();
        let mean = letter_sum / len as u64;
        if !divisible || half_prim != big(mean) || half_prim != big(fixed_sum) {
            Some(Mismatch {
                at: format!("n={len}"),
                values: vec![
                    ("|Prim'[n]|/2".into(), format!("{}/2", prim.coeffs()[len + 1])),
                    ("(1/n) sum of letters".into(), format!("{letter_sum}/{len}")),
                    ("sum of fixed points".into(), fixed_sum.to_string()),
                ],
            })
        } else {
            None
        }
    })
}

/// Rows of the summary table for patterns of length two and three.
fn table1_rows(n: usize) -> Vec<(&'static [&'static str], &'static str, CountSeq, &'static str, CountSeq)> {
    let e = series::e(n);
    let egf = |s: RatSeries| s.to_counts().expect("integral counts");
    let inv = |s: RatSeries| s.reciprocal().expect("invertible");
    // The ordinary coefficients below are read as exponential ones.
    let as_egf = |s: RatSeries| RatSeries::new(s.coeffs().to_vec(), View::Egf);
    let series_11 = egf(as_egf(inv(poly(&[1, -1], n))));
    let series_12 = (&(&e * &e) + &series::one(n)).div_exact(2).expect("even");
    let series_111 = egf(as_egf(inv(poly(&[2, -2, -1], n)).scale(&rat(2))));
    let series_212 = egf(as_egf(poly(&[2, -2, 1], n).mul(&inv(poly(&[2, -4, 2], n)))));
    vec![
        (&["11"], "n!", series::l(n), "1/(1-x)", series_11),
        (
            &["12", "21"],
            "2^(n-1)",
            CountSeq::from_fn(n, |i| if i == 0 { BigInt::one() } else { two_pow(i - 1) }),
            "(e^(2x)+1)/2",
            series_12,
        ),
        (&["111"], "Z[sqrt3] closed form", CountSeq::from_fn(n, cay111_closed_form), "2/(2-2x-x^2)", series_111),
        (
            &["212", "121", "112", "211", "221", "122"],
            "(n+1)!/2",
            CountSeq::from_fn(n, cay112_count),
            "(x^2-2x+2)/(2(x-1)^2)",
            series_212,
        ),
        (&S3, "Birmajer sum", CountSeq::from_fn(n, cay123_birmajer), "ogf 1/2 + 1/(1+sqrt(1-8x+8x^2))", rat_counts(&s3_ogf(n))),
    ]
}

fn check_table1(n: usize) -> Option<Mismatch> {
    table1_rows(n).into_iter().find_map(|(patterns, fname, formula, sname, series)| {
        patterns.iter().find_map(|p| {
            agree(&format!("p={p}"), 0, n, &[("enumerated", &avoiders(p, n)), (fname, &formula), (sname, &series)])
        })
    })
}

macro_rules! entry {
    ($name:literal, $formula:literal, $kind:ident, $run:expr) => {
        IdentityCheck { name: $name, formula: $formula, kind: CheckKind::$kind, conjecture: false, run: $run }
    };
}

/// All registered identities, in a fixed order.
pub fn registry() -> Vec<IdentityCheck> {
    let mut checks = vec![
        entry!("cay_eq_bal", "Cay = Bal = L(E+)", Enumeration, check_cay_eq_bal),
        entry!("cay21", "Cay(21) = 1 + int(E^2) = Eeven.E", Enumeration, check_cay21),
        entry!("cay1k", "Cay(1^k) = L(E_1 + ... + E_{k-1})", Enumeration, check_cay1k),
        entry!("cay111", "|Cay(111)[n]| = n!((1+√3)^{n+1} - (1-√3)^{n+1})/(2^{n+1}√3)", Enumeration, check_cay111),
        entry!("cay112_ode", "Cay(112)' = L.Cay(112) + L.Cay+(112)", Enumeration, check_cay112_ode),
        entry!("cay112_alt", "Cay(112) = Alt'", Enumeration, check_cay112_alt),
        entry!("cay212_eq", "Cay(212) = 1 + E*Cay(212) + E*Cay(212)•", Enumeration, check_cay212_eq),
        entry!("cay212_alt", "Cay(212) = Alt'", Enumeration, check_cay212_alt),
        entry!("cay231_eq", "Cay(231) = 1 + X + (4Cay(231) - E)*Cay+(231)", Enumeration, check_cay231_eq),
        entry!("cay231_rec", "a_{n+1} = sum_{i<n} (4a_i - 1) a_{n-i}", Enumeration, check_cay231_rec),
        entry!("s3_closed", "|Cay(p)[n]| for p in S3: Birmajer and Kasraoui sums", Enumeration, check_s3_closed),
        entry!("s3_ogf_check", "sum |Cay(231)[n]| x^n = 1/2 + 1/(1+√(1-8x+8x²))", Series, check_s3_ogf),
        entry!("sym_conv", "S = E + E*S•", Series, check_sym_conv),
        entry!("altc_conv", "AltC = E*Alt•", Series, check_altc_conv),
        entry!("alt_decomp", "Alt = 1 + X + AltC", Series, check_alt_decomp),
        entry!("alt_closed", "Alt = (S + 1 + X)/2", Enumeration, check_alt_closed),
        entry!("catalan", "F = 1 + F⊙X⊙F", Enumeration, check_catalan),
        entry!("eeven_sq", "Eeven² = 1 + Eodd²", Series, check_eeven_sq),
        entry!("prim_sq", "Prim' = Cay²", Enumeration, check_prim_sq),
        entry!("prim_lemma", "Cay = 1 + int(E.Prim')", Enumeration, check_prim_lemma),
        entry!("prim_p", "Cay(p) = 1 + int(E.Prim(p)'), Prim(p) = int(E^-1.Cay(p)') for primitive p", Enumeration, check_prim_p),
        entry!("prim231_ogf_guess", "sum |Prim(231)[n]| x^n = x(2/(1+x+√(1-6x+x²)))²", Series, check_prim231_ogf_guess),
        entry!("prim231_chain", "Prim(231) = int(E^-1.Cay(231)') through ordinary series", Enumeration, check_prim231_chain),
        entry!("eqwilf", "|[k]^n(p)| = sum C(k,i)|Cay^i(p)[n]| and its inverse", Enumeration, check_eqwilf),
        entry!("table1", "length two and three patterns: enumeration, formula and series columns", Enumeration, check_table1),
    ];
    checks.push(IdentityCheck {
        name: "fixpoint_conj",
        formula: "|Prim'[n]|/2 = (1/n) sum_w sum_i w_i = sum_w sum_{i in fix(w)} i",
        kind: CheckKind::Enumeration,
        conjecture: true,
        run: check_fixpoint_conj,
    });
    checks
}

pub fn find(name: &str) -> Result<IdentityCheck, CatalogError> {
    registry()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| CatalogError::UnknownIdentity(name.to_string()))
}

/// Runs one check at `bound`, or at its default bound when `None`.
pub fn verify_identity(name: &str, bound: Option<usize>) -> Result<CheckReport, CatalogError> {
    Ok(find(name)?.run(bound))
}

/// Runs every check; reports come back in registry order.
pub fn verify_all(bound: Option<usize>) -> Vec<CheckReport> {
    registry().par_iter().map(|c| c.run(bound)).collect()
}
