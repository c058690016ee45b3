//! Words over the positive integers, Cayley permutations, patterns and ballots.
//!
//! Letters are 1-based. A word is a Cayley permutation when its set of
//! distinct letters is exactly `{1, ..., k}` for some `k`; the empty word is
//! the unique Cayley permutation with `k = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

pub type Letter = u32;

/// Multiset of letters, letter ↦ multiplicity. Letters with multiplicity
/// zero are never stored.
pub type Content = BTreeMap<Letter, usize>;

/// Longest pattern the matcher accepts.
pub const MAX_PATTERN_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter 0 at position {0}: letters are positive integers")]
    ZeroLetter(usize),
    #[error("cannot parse word at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is not a Cayley permutation: its letters must be exactly 1, 2, ..., k for some k")]
    NotCayley(String),
    #[error("patterns must be nonempty")]
    EmptyPattern,
    #[error("pattern of length {0} exceeds the supported maximum of {MAX_PATTERN_LEN}")]
    PatternTooLong(usize),
    #[error("target set has {got} elements but the word has {expected} distinct letters")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid ballot: {0}")]
    InvalidBallot(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(pos) = letters.iter().position(|&a| a == 0) {
            return Err(WordError::ZeroLetter(pos + 1));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter, 0 for the empty word.
    pub fn image_max(&self) -> Letter {
        image_max(&self.0)
    }

    pub fn is_cayley(&self) -> bool {
        is_cayley(&self.0)
    }

    pub fn content(&self) -> Content {
        content(&self.0)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Replaces the i-th smallest distinct letter by the i-th smallest
    /// element of `target`.
    pub fn standardize(&self, target: &BTreeSet<Letter>) -> Result<Word, WordError> {
        let image: BTreeSet<Letter> = self.0.iter().copied().collect();
        if image.len() != target.len() {
            return Err(WordError::SizeMismatch {
                expected: image.len(),
                got: target.len(),
            });
        }
        if target.contains(&0) {
            return Err(WordError::ZeroLetter(0));
        }
        let relabel: BTreeMap<Letter, Letter> = image.into_iter().zip(target.iter().copied()).collect();
        Ok(Word(self.0.iter().map(|a| relabel[a]).collect()))
    }

    /// Positions `i` (1-based) with `w_i = i`.
    pub fn fixed_points(&self) -> Vec<usize> {
        fixed_points(&self.0)
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        contains(&self.0, p.letters())
    }

    /// Canonical text for pattern-like words: undelimited digits when every
    /// letter is at most 9, comma separated otherwise.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&a| a <= 9) {
            self.0.iter().map(|a| a.to_string()).collect()
        } else {
            join(&self.0, ",")
        }
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

fn join(letters: &[Letter], sep: &str) -> String {
    letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0, " "))
    }
}

/// Accepts letters separated by spaces and/or commas, or an undelimited
/// digit string (one letter per digit).
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let delimited = trimmed.contains(|c: char| c == ',' || c.is_whitespace());
        let mut letters = Vec::new();
        if delimited {
            let mut pos = 0;
            for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    pos += 1;
                    continue;
                }
                let a: Letter = token.parse().map_err(|_| WordError::Parse {
                    pos: pos + 1,
                    msg: format!("'{token}' is not a positive integer"),
                })?;
                letters.push(a);
                pos += token.len() + 1;
            }
        } else {
            for (pos, c) in trimmed.chars().enumerate() {
                let d = c.to_digit(10).ok_or_else(|| WordError::Parse {
                    pos: pos + 1,
                    msg: format!("unexpected character '{c}'"),
                })?;
                letters.push(d);
            }
        }
        Word::new(letters)
    }
}

/// A word whose image is exactly `[k]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyWord {
    word: Word,
    max: Letter,
}

impl CayleyWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        Word::new(letters)?.try_into()
    }

    /// Caller guarantees the Cayley property.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_cayley(&letters));
        let max = image_max(&letters);
        CayleyWord { word: Word(letters), max }
    }

    pub fn empty() -> Self {
        CayleyWord::default()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn max(&self) -> Letter {
        self.max
    }

    pub fn reverse(&self) -> CayleyWord {
        CayleyWord { word: self.word.reverse(), max: self.max }
    }

    pub fn complement(&self) -> CayleyWord {
        let top = self.max + 1;
        CayleyWord {
            word: Word(self.word.iter().map(|&a| top - a).collect()),
            max: self.max,
        }
    }

    /// Nonempty with no two equal adjacent letters.
    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.word)
    }

    /// Weak left-to-right minima as 1-based `(position, value)` pairs.
    pub fn wlmin(&self) -> Vec<(usize, Letter)> {
        wlmin(&self.word)
    }

    /// Letters at positions that are not weak left-to-right minima, sorted.
    pub fn filling(&self) -> Vec<Letter> {
        filling(&self.word)
    }
}

impl Deref for CayleyWord {
    type Target = Word;
    fn deref(&self) -> &Word {
        &self.word
    }
}

impl TryFrom<Word> for CayleyWord {
    type Error = WordError;

    fn try_from(word: Word) -> Result<Self, Self::Error> {
        if !word.is_cayley() {
            return Err(WordError::NotCayley(word.compact()));
        }
        let max = word.image_max();
        Ok(CayleyWord { word, max })
    }
}

impl From<CayleyWord> for Word {
    fn from(w: CayleyWord) -> Word {
        w.word
    }
}

impl fmt::Display for CayleyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl FromStr for CayleyWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Word>()?.try_into()
    }
}

/// A nonempty Cayley permutation used as a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(CayleyWord);

impl Pattern {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        CayleyWord::new(letters)?.try_into()
    }

    pub fn cayley(&self) -> &CayleyWord {
        &self.0
    }

    pub fn reverse(&self) -> Pattern {
        Pattern(self.0.reverse())
    }

    pub fn complement(&self) -> Pattern {
        Pattern(self.0.complement())
    }
}

impl Deref for Pattern {
    type Target = CayleyWord;
    fn deref(&self) -> &CayleyWord {
        &self.0
    }
}

impl TryFrom<CayleyWord> for Pattern {
    type Error = WordError;
    fn try_from(w: CayleyWord) -> Result<Self, Self::Error> {
        if w.is_empty() {
            return Err(WordError::EmptyPattern);
        }
        if w.len() > MAX_PATTERN_LEN {
            return Err(WordError::PatternTooLong(w.len()));
        }
        Ok(Pattern(w))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

impl FromStr for Pattern {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<CayleyWord>()?.try_into()
    }
}

/// Ordered set partition of `{1, ..., n}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot {
    blocks: Vec<BTreeSet<usize>>,
    size: usize,
}

impl Ballot {
    pub fn new(blocks: Vec<BTreeSet<usize>>) -> Result<Self, WordError> {
        let size: usize = blocks.iter().map(BTreeSet::len).sum();
        let mut seen = vec![false; size + 1];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(WordError::InvalidBallot(format!("block {} is empty", i + 1)));
            }
            for &x in block {
                if x == 0 || x > size {
                    return Err(WordError::InvalidBallot(format!(
                        "element {x} outside 1..={size}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(WordError::InvalidBallot(format!("element {x} repeated")));
                }
            }
        }
        Ok(Ballot { blocks, size })
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.size
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for Ballot {
    type Err = WordError;

    /// Parses `{2}|{5,6,7}|{1,3}|{4,8}`; the empty string is the empty ballot.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ballot::new(Vec::new());
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(|| WordError::InvalidBallot(format!("malformed block '{part}'")))?;
            let mut block = BTreeSet::new();
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let x: usize = tok
                    .parse()
                    .map_err(|_| WordError::InvalidBallot(format!("bad element '{tok}'")))?;
                if !block.insert(x) {
                    return Err(WordError::InvalidBallot(format!("element {x} repeated")));
                }
            }
            blocks.push(block);
        }
        Ballot::new(blocks)
    }
}

pub fn image_max(w: &[Letter]) -> Letter {
    w.iter().copied().max().unwrap_or(0)
}

pub fn is_cayley(w: &[Letter]) -> bool {
    let max = image_max(w) as usize;
    if max > w.len() {
        return false;
    }
    let mut seen = vec![false; max + 1];
    for &a in w {
        if a == 0 {
            return false;
        }
        seen[a as usize] = true;
    }
    seen[1..].iter().all(|&b| b)
}

pub fn content(w: &[Letter]) -> Content {
    let mut c = Content::new();
    for &a in w {
        *c.entry(a).or_insert(0) += 1;
    }
    c
}

pub fn fixed_points(w: &[Letter]) -> Vec<usize> {
    (1..=w.len()).filter(|&i| w[i - 1] as usize == i).collect()
}

pub fn is_primitive(w: &[Letter]) -> bool {
    !w.is_empty() && w.windows(2).all(|p| p[0] != p[1])
}

pub fn wlmin(w: &[Letter]) -> Vec<(usize, Letter)> {
    let mut out = Vec::new();
    let mut min = Letter::MAX;
    for (i, &a) in w.iter().enumerate() {
        if a <= min {
            min = a;
            out.push((i + 1, a));
        }
    }
    out
}

pub fn filling(w: &[Letter]) -> Vec<Letter> {
    let mut min = Letter::MAX;
    let mut out = Vec::new();
    for &a in w {
        if a <= min {
            min = a;
        } else {
            out.push(a);
        }
    }
    out.sort_unstable();
    out
}

/// True iff `a` and `b` have the same length and the same relative order
/// (equalities and strict inequalities) at every pair of positions.
pub fn order_isomorphic(a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..i).all(|j| a[j].cmp(&a[i]) == b[j].cmp(&b[i])))
}

/// Reference matcher: tries every strictly increasing index sequence.
/// Exponential in `|w|`; used as the oracle for [`Matcher`].
pub fn contains_naive(w: &[Letter], p: &[Letter]) -> bool {
    let k = p.len();
    let n = w.len();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut sub = vec![0; k];
    loop {
        for (s, &i) in sub.iter_mut().zip(&idx) {
            *s = w[i];
        }
        if order_isomorphic(&sub, p) {
            return true;
        }
        // next k-combination of 0..n
        let mut j = k;
        loop {
            if j == 0 {
                return false;
            }
            j -= 1;
            if idx[j] < n - k + j {
                break;
            }
        }
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

pub fn contains(w: &[Letter], p: &[Letter]) -> bool {
    Matcher::new(p).contains(w)
}

/// Backtracking occurrence finder for a fixed pattern.
///
/// Pattern positions are bound to word positions left to right; a pattern
/// value is bound to a word value the first time it is used and every new
/// binding must lie strictly between the bindings of the nearest smaller and
/// larger pattern values.
#[derive(Debug, Clone)]
pub struct Matcher {
    pattern: Vec<Letter>,
    max: usize,
}

impl Matcher {
    pub fn new(pattern: &[Letter]) -> Self {
        assert!(pattern.len() <= MAX_PATTERN_LEN, "pattern too long");
        Matcher {
            pattern: pattern.to_vec(),
            max: image_max(pattern) as usize,
        }
    }

    pub fn pattern(&self) -> &[Letter] {
        &self.pattern
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        if self.pattern.is_empty() {
            return true;
        }
        let mut state = State::new();
        self.search(w, 0, 0, false, &mut state)
    }

    /// True iff some occurrence of the pattern uses the last letter of `w`.
    /// When `w[..n-1]` avoids the pattern this is equivalent to `contains(w)`.
    pub fn contains_ending_at_last(&self, w: &[Letter]) -> bool {
        if self.pattern.is_empty() {
            return true;
        }
        if w.len() < self.pattern.len() {
            return false;
        }
        let mut state = State::new();
        self.search(w, 0, 0, true, &mut state)
    }

    fn fits(&self, state: &State, pv: usize, v: Letter) -> bool {
        let bound = state.bound[pv];
        if bound != 0 {
            return bound == v;
        }
        // nearest bound value below and above pv
        for u in (1..pv).rev() {
            let b = state.bound[u];
            if b != 0 {
                if b >= v {
                    return false;
                }
                break;
            }
        }
        for u in pv + 1..=self.max {
            let b = state.bound[u];
            if b != 0 {
                if b <= v {
                    return false;
                }
                break;
            }
        }
        true
    }

    fn search(&self, w: &[Letter], j: usize, start: usize, anchor_last: bool, state: &mut State) -> bool {
        let k = self.pattern.len();
        if j == k {
            return true;
        }
        let n = w.len();
        let remaining = k - j;
        if start + remaining > n {
            return false;
        }
        let pv = self.pattern[j] as usize;
        // With an anchor the last pattern letter is pinned to position n-1;
        // earlier letters keep the usual room-to-finish bound.
        let (lo, hi) = if anchor_last && j == k - 1 {
            (n - 1, n - 1)
        } else {
            (start, n - remaining)
        };
        if lo > hi || lo < start {
            return false;
        }
        for i in lo..=hi {
            let v = w[i];
            if !self.fits(state, pv, v) {
                continue;
            }
            let fresh = state.bound[pv] == 0;
            if fresh {
                state.bound[pv] = v;
            }
            state.uses[pv] += 1;
            if self.search(w, j + 1, i + 1, anchor_last, state) {
                return true;
            }
            state.uses[pv] -= 1;
            if state.uses[pv] == 0 {
                state.bound[pv] = 0;
            }
        }
        false
    }
}

struct State {
    bound: [Letter; MAX_PATTERN_LEN + 1],
    uses: [u8; MAX_PATTERN_LEN + 1],
}

impl State {
    fn new() -> Self {
        State {
            bound: [0; MAX_PATTERN_LEN + 1],
            uses: [0; MAX_PATTERN_LEN + 1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn cayley_predicate() {
        assert!(w("121").is_cayley());
        assert!(Word::empty().is_cayley());
        assert!(!w("13").is_cayley());
        assert!(!w("2").is_cayley());
    }

    #[test]
    fn containment_examples() {
        assert!(w("31342224").contains(&p("112")));
        for s in ["1", "11", "12", "212", "1342", "13442"] {
            let pat = p(s);
            assert!(pat.word().contains(&pat), "{s} contains itself");
        }
        assert!(!w("12").contains(&p("11")));
        assert!(!w("1234").contains(&p("21")));
        assert!(w("1324").contains(&p("21")));
    }

    #[test]
    fn anchored_match_requires_last_letter() {
        let m = Matcher::new(&[1, 2]);
        assert!(m.contains_ending_at_last(&[1, 2]));
        assert!(!m.contains_ending_at_last(&[1, 2, 1]));
        assert!(m.contains_ending_at_last(&[2, 1, 3]));
        let m = Matcher::new(&[1, 1, 2]);
        assert!(m.contains_ending_at_last(&[3, 1, 3, 4]));
        assert!(!m.contains_ending_at_last(&[3, 1, 3]));
    }

    #[test]
    fn reverse_and_complement() {
        let c: CayleyWord = "123".parse().unwrap();
        assert_eq!(c.reverse().compact(), "321");
        let c: CayleyWord = "122".parse().unwrap();
        assert_eq!(c.complement().compact(), "211");
        assert_eq!(c.complement().reverse().compact(), "112");
        let c: CayleyWord = "212".parse().unwrap();
        assert_eq!(c.complement().compact(), "121");
    }

    #[test]
    fn standardization() {
        let a: BTreeSet<Letter> = [2, 5, 6, 7, 9].into();
        assert_eq!(w("337217813").standardize(&a).unwrap().compact(), "667527926");
        let word = w("31342224");
        let img: BTreeSet<Letter> = word.iter().copied().collect();
        assert_eq!(word.standardize(&img).unwrap(), word);
        let a: BTreeSet<Letter> = [1, 2, 3].into();
        assert_eq!(w("22577").standardize(&a).unwrap().compact(), "11233");
        let a: BTreeSet<Letter> = [1, 2].into();
        assert_eq!(
            w("22577").standardize(&a),
            Err(WordError::SizeMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(w("12").fixed_points(), vec![1, 2]);
        assert!(w("21").fixed_points().is_empty());
        assert_eq!(w("11").fixed_points(), vec![1]);
    }

    #[test]
    fn primitivity() {
        assert!("121".parse::<CayleyWord>().unwrap().is_primitive());
        assert!(!"112".parse::<CayleyWord>().unwrap().is_primitive());
        assert!(!CayleyWord::empty().is_primitive());
    }

    #[test]
    fn weak_minima_and_filling() {
        let x: CayleyWord = "7 7 9 8 5 9 9 5 6 7 4 1 2 6 3 1 3 3".parse().unwrap();
        assert_eq!(
            x.wlmin(),
            vec![(1, 7), (2, 7), (5, 5), (8, 5), (11, 4), (12, 1), (16, 1)]
        );
        assert_eq!(x.filling(), vec![2, 3, 3, 3, 6, 6, 7, 8, 9, 9, 9]);
        let y: CayleyWord = "123".parse().unwrap();
        assert_eq!(y.wlmin(), vec![(1, 1)]);
        assert_eq!(y.filling(), vec![2, 3]);
    }

    #[test]
    fn content_and_max() {
        let c = w("31342224").content();
        assert_eq!(c, Content::from([(1, 1), (2, 3), (3, 2), (4, 2)]));
        assert!(Word::empty().content().is_empty());
        assert_eq!(Word::empty().image_max(), 0);
        assert_eq!(w("111").content(), Content::from([(1, 3)]));
        assert_eq!(w("111").image_max(), 1);
    }

    #[test]
    fn text_forms() {
        assert_eq!(w("1 2 10").letters(), &[1, 2, 10]);
        assert_eq!(w("1,2,10").compact(), "1,2,10");
        assert_eq!(w("31342224").to_string(), "3 1 3 4 2 2 2 4");
        assert!(matches!("1x".parse::<Word>(), Err(WordError::Parse { pos: 2, .. })));
        assert!(matches!("0".parse::<Word>(), Err(WordError::ZeroLetter(1))));
        assert!(matches!("13".parse::<Pattern>(), Err(WordError::NotCayley(_))));
        assert!(matches!("".parse::<Pattern>(), Err(WordError::EmptyPattern)));
    }

    #[test]
    fn ballot_text() {
        let b: Ballot = "{2}|{5,6,7}|{1,3}|{4,8}".parse().unwrap();
        assert_eq!(b.size(), 8);
        assert_eq!(b.to_string(), "{2}|{5,6,7}|{1,3}|{4,8}");
        assert!("{1}|{1}".parse::<Ballot>().is_err());
        assert!("{1}|{}".parse::<Ballot>().is_err());
        assert!("{1}|{3}".parse::<Ballot>().is_err());
    }
}
