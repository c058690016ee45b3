//! Exhaustive generation and counting of Cayley permutations, k-ary words and
//! primitive Cayley permutations, optionally restricted to those avoiding a
//! pattern.
//!
//! Every family is walked by one depth-first engine ([`Enumerator`]) in
//! lexicographic order. A prefix is extended by `v` only if the finished word
//! can still land in the family: for Cayley words the number of values missing
//! below the running maximum may not exceed the number of free positions.
//! Avoidance is checked incrementally, so a prefix containing the pattern is
//! never extended.
//!
//! Counting splits the tree at a fixed prefix depth and sums the subtrees on
//! the current rayon pool; the result does not depend on the pool size.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::word::{CayleyWord, Content, Letter, Matcher, Pattern, Word};

/// Which words of length `n` are walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// All Cayley permutations.
    Cayley,
    /// Cayley permutations with maximum exactly `k`.
    CayleyMax(Letter),
    /// Cayley permutations with maximum at most `k`.
    CayleyUpTo(Letter),
    /// All words over `[k]`.
    Kary(Letter),
}

/// Depth-first walker over one family of words of a fixed length.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
    stop: usize,
    floor: usize,
    space: Space,
    primitive: bool,
    matcher: Option<Matcher>,
    word: Vec<Letter>,
    maxes: Vec<Letter>,
    counts: Vec<u32>,
    distinct: usize,
    started: bool,
    done: bool,
}

impl Enumerator {
    pub fn new(n: usize, space: Space, primitive: bool, pattern: Option<&Pattern>) -> Self {
        let bound = match space {
            Space::Cayley => n as Letter,
            Space::CayleyMax(k) | Space::CayleyUpTo(k) | Space::Kary(k) => k,
        };
        Enumerator {
            n,
            stop: n,
            floor: 0,
            space,
            primitive,
            matcher: pattern.map(|p| Matcher::new(p.letters())),
            word: Vec::with_capacity(n),
            maxes: Vec::with_capacity(n),
            counts: vec![0; bound as usize + 2],
            distinct: 0,
            started: false,
            done: false,
        }
    }

    /// Walks admissible prefixes of length `depth` instead of full words.
    fn prefixes(mut self, depth: usize) -> Self {
        self.stop = depth.min(self.n);
        self
    }

    /// Restricts the walk to completions of an admissible `prefix`.
    fn below(mut self, prefix: &[Letter]) -> Self {
        for &v in prefix {
            self.push(v);
        }
        self.floor = prefix.len();
        self
    }

    fn bound(&self) -> Letter {
        match self.space {
            Space::Cayley => self.n as Letter,
            Space::CayleyMax(k) | Space::CayleyUpTo(k) | Space::Kary(k) => k,
        }
    }

    fn current_max(&self) -> Letter {
        self.maxes.last().copied().unwrap_or(0)
    }

    fn push(&mut self, v: Letter) {
        let m = self.current_max().max(v);
        self.word.push(v);
        self.maxes.push(m);
        let c = &mut self.counts[v as usize];
        if *c == 0 {
            self.distinct += 1;
        }
        *c += 1;
    }

    fn pop(&mut self) -> Letter {
        let v = self.word.pop().expect("pop below floor");
        self.maxes.pop();
        let c = &mut self.counts[v as usize];
        *c -= 1;
        if *c == 0 {
            self.distinct -= 1;
        }
        v
    }

    fn shape_ok(&self, v: Letter) -> bool {
        if self.primitive && self.word.last() == Some(&v) {
            return false;
        }
        let remaining = self.n - self.word.len() - 1;
        let distinct = self.distinct + usize::from(self.counts[v as usize] == 0);
        match self.space {
            Space::Cayley | Space::CayleyUpTo(_) => {
                let m = self.current_max().max(v) as usize;
                m - distinct <= remaining
            }
            Space::CayleyMax(k) => (k as usize) - distinct <= remaining,
            Space::Kary(_) => true,
        }
    }

    fn try_place(&mut self, lower: Letter) -> bool {
        let mut upper = self.bound();
        if matches!(self.space, Space::Cayley | Space::CayleyUpTo(_)) {
            let remaining = self.n - self.word.len() - 1;
            upper = upper.min((self.distinct + 1 + remaining) as Letter);
        }
        for v in lower..=upper {
            if !self.shape_ok(v) {
                continue;
            }
            self.push(v);
            let clash = self
                .matcher
                .as_ref()
                .is_some_and(|m| m.contains_ending_at_last(&self.word));
            if !clash {
                return true;
            }
            self.pop();
        }
        false
    }

    /// Advances to the next word (or prefix) and returns it.
    pub fn next_leaf(&mut self) -> Option<&[Letter]> {
        if self.done {
            return None;
        }
        let mut lower;
        if !self.started {
            self.started = true;
            if self.word.len() == self.stop {
                return Some(&self.word);
            }
            lower = 1;
        } else {
            if self.word.len() == self.floor {
                self.done = true;
                return None;
            }
            lower = self.pop() + 1;
        }
        loop {
            if self.try_place(lower) {
                if self.word.len() == self.stop {
                    return Some(&self.word);
                }
                lower = 1;
            } else {
                if self.word.len() == self.floor {
                    self.done = true;
                    return None;
                }
                lower = self.pop() + 1;
            }
        }
    }
}

/// Iterator adaptor over an [`Enumerator`].
pub struct Words<T> {
    inner: Enumerator,
    wrap: fn(Vec<Letter>) -> T,
}

impl<T> Iterator for Words<T> {
    type Item = T;
    fn next(&mut self) -> Option<T> {
        let wrap = self.wrap;
        self.inner.next_leaf().map(|w| wrap(w.to_vec()))
    }
}

fn cayley_stream(e: Enumerator) -> Words<CayleyWord> {
    Words { inner: e, wrap: CayleyWord::from_letters_unchecked }
}

/// Every Cayley permutation of length `n`, lexicographically.
pub fn gen_cayley(n: usize) -> Words<CayleyWord> {
    cayley_stream(Enumerator::new(n, Space::Cayley, false, None))
}

/// Cayley permutations of length `n` with maximum exactly `k`.
pub fn gen_cayley_with_max(n: usize, k: Letter) -> Words<CayleyWord> {
    let mut e = Enumerator::new(n, Space::CayleyMax(k), false, None);
    if k as usize > n || (k == 0 && n > 0) {
        e.done = true;
    }
    cayley_stream(e)
}

/// All `k^n` words of length `n` over `[k]`.
pub fn gen_kary(n: usize, k: Letter) -> Words<Word> {
    let mut e = Enumerator::new(n, Space::Kary(k), false, None);
    if k == 0 && n > 0 {
        e.done = true;
    }
    Words { inner: e, wrap: |v| Word::new(v).expect("letters are positive") }
}

/// Primitive Cayley permutations of length `n` (none for `n = 0`).
pub fn gen_primitive(n: usize) -> Words<CayleyWord> {
    let mut e = Enumerator::new(n, Space::Cayley, true, None);
    if n == 0 {
        e.done = true;
    }
    cayley_stream(e)
}

/// Cayley permutations of length `n` avoiding `p`.
pub fn gen_avoiders(p: &Pattern, n: usize) -> Words<CayleyWord> {
    cayley_stream(Enumerator::new(n, Space::Cayley, false, Some(p)))
}

const SPLIT_DEPTH: usize = 3;

/// Number of words of length `n` in `space` (optionally primitive, optionally
/// avoiding `pattern`) bucketed by their largest letter.
pub fn count_by_max(n: usize, space: Space, primitive: bool, pattern: Option<&Pattern>) -> Vec<u64> {
    let proto = Enumerator::new(n, space, primitive, pattern);
    let width = proto.bound() as usize + 1;
    let impossible = match space {
        Space::CayleyMax(k) => k as usize > n || (k == 0 && n > 0),
        Space::Kary(0) | Space::CayleyUpTo(0) => n > 0,
        _ => false,
    } || (primitive && n == 0);
    let mut out = vec![0u64; width];
    if impossible {
        return out;
    }
    let depth = SPLIT_DEPTH.min(n);
    let mut prefixes = Vec::new();
    let mut walker = proto.clone().prefixes(depth);
    while let Some(p) = walker.next_leaf() {
        prefixes.push(p.to_vec());
    }
    let partials: Vec<Vec<u64>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut local = vec![0u64; width];
            let mut e = proto.clone().below(prefix);
            while let Some(w) = e.next_leaf() {
                let m = w.iter().copied().max().unwrap_or(0) as usize;
                local[m] += 1;
            }
            local
        })
        .collect();
    for part in partials {
        for (o, x) in out.iter_mut().zip(part) {
            *o += x;
        }
    }
    out
}

fn total(v: Vec<u64>) -> u64 {
    v.into_iter().sum()
}

/// `|Cay[n]|` by exhaustive generation.
pub fn count_cayley(n: usize) -> u64 {
    total(count_by_max(n, Space::Cayley, false, None))
}

/// `|Cay(p)[n]|`.
pub fn count_avoiders(p: &Pattern, n: usize) -> u64 {
    total(count_by_max(n, Space::Cayley, false, Some(p)))
}

/// `|Cay^k(p)[n]|`: avoiders with maximum exactly `k`.
pub fn count_avoiders_with_max(p: &Pattern, n: usize, k: Letter) -> u64 {
    total(count_by_max(n, Space::CayleyMax(k), false, Some(p)))
}

/// `|[k]^n(p)|`.
pub fn count_kary_avoiders(p: &Pattern, n: usize, k: Letter) -> u64 {
    total(count_by_max(n, Space::Kary(k), false, Some(p)))
}

/// `|Prim[n]|`.
pub fn count_primitive(n: usize) -> u64 {
    total(count_by_max(n, Space::Cayley, true, None))
}

/// `|Prim(p)[n]|`.
pub fn count_primitive_avoiders(p: &Pattern, n: usize) -> u64 {
    total(count_by_max(n, Space::Cayley, true, Some(p)))
}

/// Every multiset of size `n` over `[k]`, as a content map.
pub fn all_contents(n: usize, k: Letter, require_full_support: bool) -> Vec<Content> {
    fn rec(
        letter: Letter,
        k: Letter,
        left: usize,
        full: bool,
        cur: &mut Content,
        out: &mut Vec<Content>,
    ) {
        if letter > k {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let min = usize::from(full);
        if letter == k {
            if left >= min {
                if left > 0 {
                    cur.insert(letter, left);
                }
                out.push(cur.clone());
                cur.remove(&letter);
            }
            return;
        }
        for m in min..=left {
            if m > 0 {
                cur.insert(letter, m);
            }
            rec(letter + 1, k, left - m, full, cur, out);
            cur.remove(&letter);
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Content::new());
        }
        return out;
    }
    rec(1, k, n, require_full_support, &mut Content::new(), &mut out);
    out
}

fn content_counts(n: usize, space: Space, k: Letter, full: bool, p: Option<&Pattern>) -> BTreeMap<Content, u64> {
    let mut map: BTreeMap<Content, u64> = all_contents(n, k, full).into_iter().map(|c| (c, 0)).collect();
    if full && (k as usize > n || (k == 0 && n > 0)) {
        return map;
    }
    if !full && k == 0 && n > 0 {
        return map;
    }
    let mut e = Enumerator::new(n, space, false, p);
    while let Some(w) = e.next_leaf() {
        *map.entry(crate::word::content(w)).or_insert(0) += 1;
    }
    map
}

/// For each content multiset over `[k]` of size `n`, the number of words in
/// `[k]^n` with that content avoiding `p`. Contents with no avoiders map to 0.
pub fn content_indexed_counts(p: &Pattern, n: usize, k: Letter) -> BTreeMap<Content, u64> {
    content_counts(n, Space::Kary(k), k, false, Some(p))
}

/// Same as [`content_indexed_counts`] restricted to `Cay^k(p)[n]`.
pub fn cayley_content_counts(p: &Pattern, n: usize, k: Letter) -> BTreeMap<Content, u64> {
    content_counts(n, Space::CayleyMax(k), k, true, Some(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Cayley words, tabulated by maximum for every `k <= n`.
    All,
    /// Cayley words with maximum exactly `k`, for `k <= K`.
    MaxExactlyK,
    /// Words over `[k]`, for `k <= K`.
    Kary,
    /// Primitive Cayley words, tabulated by maximum.
    Primitive,
}

/// Counts indexed by `(n, k)` for `n <= max_n`, `k <= max_k`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CountTable {
    pub pattern: Option<String>,
    pub mode: Mode,
    pub max_n: usize,
    pub max_k: Letter,
    pub counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn build(pattern: Option<&Pattern>, mode: Mode, max_n: usize, max_k: Option<Letter>) -> Self {
        let max_k = max_k.unwrap_or(max_n as Letter);
        let width = max_k as usize + 1;
        let mut counts = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let row = match mode {
                Mode::All | Mode::MaxExactlyK => count_by_max(n, Space::CayleyUpTo(max_k), false, pattern),
                Mode::Primitive => count_by_max(n, Space::CayleyUpTo(max_k), true, pattern),
                Mode::Kary => {
                    let by_max = count_by_max(n, Space::Kary(max_k), false, pattern);
                    by_max
                        .iter()
                        .scan(0u64, |acc, &x| {
                            *acc += x;
                            Some(*acc)
                        })
                        .collect()
                }
            };
            let mut row = row;
            row.resize(width, 0);
            counts.push(row);
        }
        CountTable { pattern: pattern.map(|p| p.compact()), mode, max_n, max_k, counts }
    }

    pub fn get(&self, n: usize, k: Letter) -> u64 {
        self.counts[n][k as usize]
    }

    /// Row totals for the Cayley modes; the `k = max_k` column for k-ary words.
    pub fn marginal(&self) -> Vec<u64> {
        self.counts
            .iter()
            .map(|row| match self.mode {
                Mode::Kary => row[self.max_k as usize],
                _ => row.iter().sum(),
            })
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tk\tcount\n");
        for (n, row) in self.counts.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                let _ = writeln!(s, "{n}\t{k}\t{c}");
            }
        }
        s
    }

    pub fn to_bfile(&self) -> String {
        bfile(&self.marginal())
    }
}

/// OEIS b-file text: `n a(n)` per line starting from `n = 0`.
pub fn bfile<T: std::fmt::Display>(values: &[T]) -> String {
    let mut s = String::new();
    for (n, v) in values.iter().enumerate() {
        let _ = writeln!(s, "{n} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn strings<I: Iterator<Item = CayleyWord>>(it: I) -> Vec<String> {
        it.map(|w| w.compact()).collect()
    }

    #[test]
    fn cayley_words_small() {
        assert_eq!(strings(gen_cayley(2)), ["11", "12", "21"]);
        let three = strings(gen_cayley(3));
        assert_eq!(
            three,
            ["111", "112", "121", "122", "123", "132", "211", "212", "213", "221", "231", "312", "321"]
        );
        let zero: Vec<_> = gen_cayley(0).collect();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_empty());
    }

    #[test]
    fn surjections_and_kary() {
        assert_eq!(strings(gen_cayley_with_max(3, 2)), ["112", "121", "122", "211", "212", "221"]);
        assert_eq!(gen_kary(2, 3).count(), 9);
        assert_eq!(gen_cayley_with_max(2, 3).count(), 0);
        assert_eq!(gen_kary(0, 0).count(), 1);
        assert_eq!(gen_kary(2, 0).count(), 0);
    }

    #[test]
    fn avoider_counts() {
        assert_eq!(count_avoiders(&p("21"), 5), 16);
        assert_eq!(count_avoiders(&p("231"), 5), 284);
        assert_eq!(count_avoiders(&p("11"), 4), 24);
    }

    #[test]
    fn primitive_counts() {
        assert_eq!(count_primitive(3), 8);
        assert_eq!(count_primitive(0), 0);
        for n in 1..=7 {
            assert_eq!(count_primitive_avoiders(&p("21"), n), 1);
        }
        assert_eq!(count_primitive_avoiders(&p("231"), 5), 121);
        assert_eq!(count_primitive_avoiders(&p("231"), 6), 550);
    }

    #[test]
    fn content_indexed() {
        let m = content_indexed_counts(&p("11"), 2, 2);
        assert_eq!(m[&Content::from([(1, 1), (2, 1)])], 2);
        assert_eq!(m[&Content::from([(1, 2)])], 0);
        assert_eq!(m[&Content::from([(2, 2)])], 0);
        let m = content_indexed_counts(&p("11"), 0, 2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[&Content::new()], 1);
        // 112, 121 and 211 all avoid 212
        let m = content_indexed_counts(&p("212"), 3, 2);
        assert_eq!(m[&Content::from([(1, 2), (2, 1)])], 3);
    }

    #[test]
    fn table_marginals_and_formats() {
        let t = CountTable::build(Some(&p("21")), Mode::All, 4, None);
        assert_eq!(t.marginal(), vec![1, 1, 2, 4, 8]);
        assert_eq!(t.get(3, 2), 2);
        assert!(t.to_tsv().starts_with("n\tk\tcount\n0\t0\t1\n"));
        assert_eq!(t.to_bfile(), "0 1\n1 1\n2 2\n3 4\n4 8\n");
        let k = CountTable::build(Some(&p("11")), Mode::Kary, 3, Some(3));
        assert_eq!(k.get(2, 3), 6);
        assert_eq!(k.get(3, 2), 0);
    }
}
