//! Constructive bijections with exhaustive round-trip suites.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{count_avoiders, count_primitive, gen_avoiders, gen_cayley};
use crate::series::binomial;
use crate::word::{Ballot, CayleyWord, Letter, Pattern, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("{word} contains {pattern}")]
    ContainsPattern { word: String, pattern: String },
    #[error("no filling letter fits position {0}")]
    NoEligibleLetter(usize),
    #[error("slot {slot} is not in 2..={n}")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("{slots} duplicated slots need a word of length {expected}, got {got}")]
    LengthMismatch { slots: usize, expected: usize, got: usize },
    #[error("{0} has a flat step")]
    NotPrimitive(String),
    #[error("the empty word has no primitive decomposition")]
    EmptyWord,
    #[error("unknown bijection `{0}`")]
    UnknownBijection(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub type Result<T> = std::result::Result<T, BijectionError>;

/// Block `i` holds the positions carrying letter `i`.
pub fn cay_to_ballot(w: &CayleyWord) -> Ballot {
    let mut blocks = vec![BTreeSet::new(); w.max() as usize];
    for (j, &a) in w.iter().enumerate() {
        blocks[a as usize - 1].insert(j + 1);
    }
    Ballot::new(blocks).expect("preimages of a surjection form a ballot")
}

pub fn ballot_to_cay(b: &Ballot) -> CayleyWord {
    let mut letters = vec![0 as Letter; b.size()];
    for (i, block) in b.blocks().iter().enumerate() {
        for &j in block {
            letters[j - 1] = i as Letter + 1;
        }
    }
    CayleyWord::new(letters).expect("a ballot covers every position")
}

/// Slots outside the weak left-to-right minima, with the minimum seen so far.
fn filling_slots(w: &[Letter]) -> Vec<(usize, Letter)> {
    let mut current = Letter::MAX;
    let mut slots = Vec::new();
    for (i, &a) in w.iter().enumerate() {
        if a <= current {
            current = a;
        } else {
            slots.push((i, current));
        }
    }
    slots
}

/// Rewrites the filling slots, choosing each letter from the unused filling
/// with `pick(available, floor)`; the letter must exceed `floor`.
fn refill(w: &CayleyWord, pick: impl Fn(&[Letter], Letter) -> Option<usize>) -> Result<CayleyWord> {
    let mut pool = w.filling();
    let mut out = w.letters().to_vec();
    for (i, floor) in filling_slots(w) {
        let idx = pick(&pool, floor).filter(|&k| pool[k] > floor).ok_or(BijectionError::NoEligibleLetter(i + 1))?;
        out[i] = pool.remove(idx);
    }
    Ok(CayleyWord::new(out)?)
}

/// Same weak left-to-right minima, filling written weakly decreasing.
pub fn to_123_rep(w: &CayleyWord) -> Result<CayleyWord> {
    refill(w, |pool, _| pool.len().checked_sub(1))
}

/// Same weak left-to-right minima; each filling slot takes the smallest unused
/// filling letter above the current minimum.
pub fn to_132_rep(w: &CayleyWord) -> Result<CayleyWord> {
    refill(w, |pool, floor| pool.iter().position(|&a| a > floor))
}

fn require_avoids(w: &CayleyWord, p: &str) -> Result<()> {
    let pattern: Pattern = p.parse()?;
    if w.contains(&pattern) {
        return Err(BijectionError::ContainsPattern { word: w.compact(), pattern: p.into() });
    }
    Ok(())
}

/// `Cay(123)[n] -> Cay(132)[n]`.
pub fn simion_schmidt(u: &CayleyWord) -> Result<CayleyWord> {
    require_avoids(u, "123")?;
    to_132_rep(u)
}

/// `Cay(132)[n] -> Cay(123)[n]`.
pub fn simion_schmidt_inverse(v: &CayleyWord) -> Result<CayleyWord> {
    require_avoids(v, "132")?;
    to_123_rep(v)
}

/// Writes `v` on the slots of `[n]` outside `slots`, then gives each slot in
/// `slots` the letter to its left.
pub fn prim_expand(slots: &BTreeSet<usize>, v: &CayleyWord, n: usize) -> Result<CayleyWord> {
    if let Some(&slot) = slots.iter().find(|&&s| s < 2 || s > n) {
        return Err(BijectionError::SlotOutOfRange { slot, n });
    }
    if slots.len() + v.len() != n {
        return Err(BijectionError::LengthMismatch {
            slots: slots.len(),
            expected: n - slots.len(),
            got: v.len(),
        });
    }
    if !v.is_primitive() && !v.is_empty() {
        return Err(BijectionError::NotPrimitive(v.compact()));
    }
    let mut letters = v.iter();
    let mut out: Vec<Letter> = Vec::with_capacity(n);
    for slot in 1..=n {
        let a = if slots.contains(&slot) { out[slot - 2] } else { *letters.next().expect("length checked") };
        out.push(a);
    }
    Ok(CayleyWord::new(out)?)
}

/// Records every flat step `w_i = w_{i-1}` as slot `i` and deletes it.
pub fn prim_contract(w: &CayleyWord) -> Result<(BTreeSet<usize>, CayleyWord)> {
    if w.is_empty() {
        return Err(BijectionError::EmptyWord);
    }
    let mut slots = BTreeSet::new();
    let mut kept = vec![w[0]];
    for i in 1..w.len() {
        if w[i] == w[i - 1] {
            slots.insert(i + 1);
        } else {
            kept.push(w[i]);
        }
    }
    Ok((slots, CayleyWord::new(kept)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub name: String,
    pub n: usize,
    pub checked: usize,
    pub round_trip_ok: bool,
    pub property_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.round_trip_ok && self.property_ok
    }
}

struct Tally {
    checked: usize,
    round_trip_ok: bool,
    property_ok: bool,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, round_trip_ok: true, property_ok: true, first_failure: None }
    }

    fn round_trip(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.round_trip_ok = false;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn property(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.property_ok = false;
            self.first_failure.get_or_insert_with(what);
        }
    }

    fn report(self, name: &str, n: usize) -> BijectionReport {
        BijectionReport {
            name: name.into(),
            n,
            checked: self.checked,
            round_trip_ok: self.round_trip_ok,
            property_ok: self.property_ok,
            first_failure: self.first_failure,
        }
    }
}

fn suite_cay_bal(n: usize) -> BijectionReport {
    let mut t = Tally::new();
    let mut seen = HashSet::new();
    for w in gen_cayley(n) {
        t.checked += 1;
        let b = cay_to_ballot(&w);
        t.round_trip(ballot_to_cay(&b) == w, || format!("{} does not come back", w.compact()));
        let b2 = cay_to_ballot(&ballot_to_cay(&b));
        t.round_trip(b2 == b, || format!("ballot {b} does not come back"));
        let placed = w.iter().enumerate().all(|(j, &a)| b.blocks()[a as usize - 1].contains(&(j + 1)));
        t.property(b.blocks().len() == CayleyWord::max(&w) as usize && placed, || format!("{} -> {b}", w.compact()));
        t.property(seen.insert(b.to_string()), || format!("ballot {b} hit twice"));
    }
    t.report("cay_bal", n)
}

fn suite_simion_schmidt(n: usize) -> BijectionReport {
    let p123: Pattern = "123".parse().expect("pattern");
    let p132: Pattern = "132".parse().expect("pattern");
    let mut t = Tally::new();
    let mut images = HashSet::new();
    for u in gen_avoiders(&p123, n) {
        t.checked += 1;
        match simion_schmidt(&u) {
            Ok(v) => {
                let back = simion_schmidt_inverse(&v);
                t.round_trip(back.as_ref() == Ok(&u), || format!("{} -> {} does not come back", u.compact(), v.compact()));
                t.property(!v.contains(&p132), || format!("{} contains 132", v.compact()));
                t.property(images.insert(v.compact()), || format!("{} hit twice", v.compact()));
            }
            Err(e) => t.round_trip(false, || format!("{}: {e}", u.compact())),
        }
    }
    let target = count_avoiders(&p132, n) as usize;
    t.property(images.len() == target, || format!("{} images, {} 132-avoiders", images.len(), target));
    // Class representatives over all of Cay[n].
    for w in gen_cayley(n) {
        for (rep, p) in [(to_123_rep(&w), &p123), (to_132_rep(&w), &p132)] {
            match rep {
                Ok(r) => t.property(
                    r.wlmin() == w.wlmin() && r.filling() == w.filling() && !r.contains(p),
                    || format!("representative {} of {} breaks the class", r.compact(), w.compact()),
                ),
                Err(e) => t.property(false, || format!("{}: {e}", w.compact())),
            }
        }
    }
    t.report("simion_schmidt", n)
}

fn suite_prim(n: usize) -> BijectionReport {
    let mut t = Tally::new();
    if n == 0 {
        t.checked = 1;
        return t.report("prim", n);
    }
    for w in gen_cayley(n) {
        t.checked += 1;
        match prim_contract(&w) {
            Ok((slots, v)) => {
                t.property(v.is_primitive() && !slots.contains(&1), || format!("{} contracts badly", w.compact()));
                let back = prim_expand(&slots, &v, n);
                t.round_trip(back.as_ref() == Ok(&w), || format!("{} does not rebuild", w.compact()));
            }
            Err(e) => t.round_trip(false, || format!("{}: {e}", w.compact())),
        }
    }
    // |Cay[n]| = sum_j C(n-1, j) |Prim[n-j]|: one term per size of the slot set.
    let pairs: u128 =
        (0..n).map(|j| u128::try_from(binomial(n - 1, j)).expect("small") * count_primitive(n - j) as u128).sum();
    let checked = t.checked;
    t.property(pairs == checked as u128, || format!("{pairs} decompositions for {checked} words"));
    t.report("prim", n)
}

/// Exhaustive check of one bijection over every input of size `n`.
pub fn bijection_suite(name: &str, n: usize) -> Result<BijectionReport> {
    match name {
        "cay_bal" => Ok(suite_cay_bal(n)),
        "simion_schmidt" => Ok(suite_simion_schmidt(n)),
        "prim" => Ok(suite_prim(n)),
        _ => Err(BijectionError::UnknownBijection(name.into())),
    }
}

pub const SUITES: [&str; 3] = ["cay_bal", "simion_schmidt", "prim"];
