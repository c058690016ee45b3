//! Count-based equivalences between patterns, checked up to explicit bounds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{cayley_content_counts, content_indexed_counts, count_by_max, gen_cayley, Space};
use crate::word::{Content, Letter, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `|Cay(p)[n]|`.
    C,
    /// `|Cay^k(p)[n]|`.
    Cm,
    /// `Cay^k(p)[n]` split by content class.
    Sc,
    /// `|[k]^n(p)|`.
    W,
    /// `[k]^n(p)` split by content class.
    Sw,
    /// `|[n]^n(p)|`.
    E,
}

impl Relation {
    pub const ALL: [Relation; 6] = [Relation::C, Relation::Cm, Relation::Sc, Relation::W, Relation::Sw, Relation::E];

    pub fn tag(self) -> &'static str {
        match self {
            Relation::C => "c",
            Relation::Cm => "cm",
            Relation::Sc => "sc",
            Relation::W => "w",
            Relation::Sw => "sw",
            Relation::E => "e",
        }
    }

    fn uses_k(self) -> bool {
        matches!(self, Relation::Cm | Relation::Sc | Relation::W | Relation::Sw)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Relation::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| format!("unknown relation `{s}` (expected one of c, cm, sc, w, sw, e)"))
    }
}

/// Largest word length `n` and largest alphabet size `k` examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n: usize,
    pub k: usize,
}

impl Bounds {
    pub fn new(n: usize, k: usize) -> Self {
        Bounds { n, k }
    }
}

/// One counted quantity of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    n: usize,
    k: Option<Letter>,
    content: Option<ContentClass>,
    count: u64,
}

/// Letter multiplicities in decreasing order; contents related by a
/// relabelling of letters share a class.
type ContentClass = Vec<usize>;

fn content_class(c: &Content) -> ContentClass {
    let mut m: Vec<usize> = c.values().copied().filter(|&x| x > 0).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

fn content_text(c: &ContentClass) -> String {
    let parts: Vec<String> = c.iter().map(|m| m.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Every count the relation compares, in `(n, k, content)` order.
fn family(p: &Pattern, rel: Relation, b: Bounds) -> Vec<Entry> {
    let kmax = b.k as Letter;
    let mut out = Vec::new();
    for n in 0..=b.n {
        match rel {
            Relation::C => {
                let count = count_by_max(n, Space::Cayley, false, Some(p)).iter().sum();
                out.push(Entry { n, k: None, content: None, count });
            }
            Relation::E => {
                let count = count_by_max(n, Space::Kary(n as Letter), false, Some(p)).iter().sum();
                out.push(Entry { n, k: None, content: None, count });
            }
            Relation::Cm => {
                let by_max = count_by_max(n, Space::CayleyUpTo(kmax), false, Some(p));
                for k in 0..=kmax {
                    let count = by_max.get(k as usize).copied().unwrap_or(0);
                    out.push(Entry { n, k: Some(k), content: None, count });
                }
            }
            Relation::W => {
                let by_max = count_by_max(n, Space::Kary(kmax), false, Some(p));
                let mut running = 0;
                for k in 0..=kmax {
                    running += by_max.get(k as usize).copied().unwrap_or(0);
                    out.push(Entry { n, k: Some(k), content: None, count: running });
                }
            }
            Relation::Sc | Relation::Sw => {
                for k in 0..=kmax {
                    let map = if rel == Relation::Sc {
                        cayley_content_counts(p, n, k)
                    } else {
                        content_indexed_counts(p, n, k)
                    };
                    let mut classes: BTreeMap<ContentClass, u64> = BTreeMap::new();
                    for (c, count) in map {
                        *classes.entry(content_class(&c)).or_default() += count;
                    }
                    out.extend(
                        classes.into_iter().map(|(c, count)| Entry { n, k: Some(k), content: Some(c), count }),
                    );
                }
            }
        }
    }
    out
}

/// A reproducible point where two patterns' counts differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub content: Option<String>,
    pub counts: [u64; 2],
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(c) = &self.content {
            write!(f, " multiplicities={c}")?;
        }
        write!(f, ": {} vs {}", self.counts[0], self.counts[1])
    }
}

fn first_difference(a: &[Entry], b: &[Entry]) -> Option<Witness> {
    a.iter().zip(b).find(|(x, y)| x.count != y.count || x.content != y.content || x.k != y.k).map(|(x, y)| Witness {
        n: x.n,
        k: x.k,
        content: x.content.as_ref().map(content_text),
        counts: [x.count, y.count],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "EQUIVALENT-UP-TO-BOUNDS")]
    EquivalentUpToBounds,
    #[serde(rename = "DISTINGUISHED")]
    Distinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EquivalentUpToBounds => "EQUIVALENT-UP-TO-BOUNDS",
            Verdict::Distinguished => "DISTINGUISHED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivReport {
    pub p: String,
    pub q: String,
    pub relation: Relation,
    pub bounds: Bounds,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl EquivReport {
    pub fn equivalent(&self) -> bool {
        self.verdict == Verdict::EquivalentUpToBounds
    }

    pub fn to_text(&self) -> String {
        let bound = if self.relation.uses_k() {
            format!("n <= {}, k <= {}", self.bounds.n, self.bounds.k)
        } else {
            format!("n <= {}", self.bounds.n)
        };
        let mut s = format!("{} ~{} {}: {} ({bound})", self.p, self.relation, self.q, self.verdict);
        if let Some(w) = &self.witness {
            s.push_str(&format!(" at {w}"));
        }
        s
    }
}

/// Orbit of `p` under reverse and complement, sorted.
pub fn symmetry_class(p: &Pattern) -> Vec<Pattern> {
    let set: BTreeSet<Pattern> =
        [p.clone(), p.reverse(), p.complement(), p.reverse().complement()].into_iter().collect();
    let mut v: Vec<Pattern> = set.into_iter().collect();
    v.sort_by_key(|x| x.to_string());
    v
}

pub fn test_relation(p: &Pattern, q: &Pattern, rel: Relation, bounds: Bounds) -> EquivReport {
    let (fp, fq) = rayon::join(|| family(p, rel, bounds), || family(q, rel, bounds));
    let witness = first_difference(&fp, &fq);
    EquivReport {
        p: p.to_string(),
        q: q.to_string(),
        relation: rel,
        bounds,
        verdict: if witness.is_some() { Verdict::Distinguished } else { Verdict::EquivalentUpToBounds },
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub relation: Relation,
    pub bounds: Bounds,
    /// Each class sorted, classes ordered by their least member.
    pub classes: Vec<Vec<String>>,
}

impl Classification {
    pub fn to_text(&self) -> String {
        let classes: Vec<String> = self.classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
        format!("~{} (n <= {}, k <= {}): {}", self.relation, self.bounds.n, self.bounds.k, classes.join(" "))
    }
}

fn counts_only(f: &[Entry]) -> Vec<u64> {
    f.iter().map(|e| e.count).collect()
}

/// Groups patterns whose count families coincide within `bounds`.
pub fn classify(patterns: &[Pattern], rel: Relation, bounds: Bounds) -> Classification {
    use rayon::prelude::*;
    let sigs: Vec<(String, Vec<u64>)> =
        patterns.par_iter().map(|p| (p.to_string(), counts_only(&family(p, rel, bounds)))).collect();
    let mut classes: Vec<(Vec<u64>, Vec<String>)> = Vec::new();
    for (name, sig) in sigs {
        match classes.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, members)) => members.push(name),
            None => classes.push((sig, vec![name])),
        }
    }
    let mut classes: Vec<Vec<String>> = classes
        .into_iter()
        .map(|(_, mut m)| {
            m.sort();
            m.dedup();
            m
        })
        .collect();
    classes.sort();
    Classification { relation: rel, bounds, classes }
}

/// Every Cayley permutation of length `len`, as patterns.
pub fn patterns_of_length(len: usize) -> Vec<Pattern> {
    gen_cayley(len).filter_map(|w| Pattern::try_from(w).ok()).collect()
}

/// The `(|p|, min(max p, max q))` witness when the maxima differ, with both
/// counts confirmed by enumeration.
pub fn max_distinguisher(p: &Pattern, q: &Pattern) -> Option<Witness> {
    let (mp, mq) = (p.cayley().max(), q.cayley().max());
    if mp == mq {
        return None;
    }
    let (m, n) = if mp < mq { (mp, p.len()) } else { (mq, q.len()) };
    let count = |x: &Pattern| count_by_max(n, Space::CayleyMax(m), false, Some(x)).iter().sum::<u64>();
    let counts = [count(p), count(q)];
    (counts[0] != counts[1]).then_some(Witness { n, k: Some(m), content: None, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    CmImpliesSc,
    CImpliesCm,
    CImpliesEqualMax,
    MaxMonotonicity,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] =
        [Conjecture::CmImpliesSc, Conjecture::CImpliesCm, Conjecture::CImpliesEqualMax, Conjecture::MaxMonotonicity];

    pub fn tag(self) -> &'static str {
        match self {
            Conjecture::CmImpliesSc => "cm_implies_sc",
            Conjecture::CImpliesCm => "c_implies_cm",
            Conjecture::CImpliesEqualMax => "c_implies_equal_max",
            Conjecture::MaxMonotonicity => "max_monotonicity",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Conjecture::CmImpliesSc => "p ~cm q implies p ~sc q",
            Conjecture::CImpliesCm => "p ~c q implies p ~cm q",
            Conjecture::CImpliesEqualMax => "p ~c q implies max(p) = max(q)",
            Conjecture::MaxMonotonicity => "max(p) <= max(q) implies |Cay_n(p)| >= |Cay_n(q)|",
        }
    }
}

impl FromStr for Conjecture {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Conjecture::ALL.into_iter().find(|c| c.tag() == s).ok_or_else(|| {
            format!("unknown conjecture `{s}` (expected cm_implies_sc, c_implies_cm, c_implies_equal_max or max_monotonicity)")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanVerdict {
    #[serde(rename = "NO-COUNTEREXAMPLE-FOUND")]
    NoCounterexampleFound,
    #[serde(rename = "CANDIDATE-COUNTEREXAMPLE")]
    CandidateCounterexample,
}

impl fmt::Display for ScanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanVerdict::NoCounterexampleFound => "NO-COUNTEREXAMPLE-FOUND",
            ScanVerdict::CandidateCounterexample => "CANDIDATE-COUNTEREXAMPLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub p: String,
    pub q: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub statement: &'static str,
    pub max_len: usize,
    pub bounds: Bounds,
    /// Ordered or unordered pairs examined, depending on the statement.
    pub pairs_tested: usize,
    /// Pairs satisfying the hypothesis within the bounds.
    pub premise_pairs: usize,
    pub verdict: ScanVerdict,
    pub candidates: Vec<Candidate>,
    pub note: String,
}

impl ConjectureReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {} (patterns of length <= {}, n <= {}, k <= {}; {} pairs, {} meet the hypothesis)",
            self.conjecture.tag(),
            self.verdict,
            self.max_len,
            self.bounds.n,
            self.bounds.k,
            self.pairs_tested,
            self.premise_pairs
        );
        for c in &self.candidates {
            s.push_str(&format!("\n  candidate {} / {}: {}", c.p, c.q, c.detail));
        }
        if !self.note.is_empty() {
            s.push_str(&format!("\n  note: {}", self.note));
        }
        s
    }
}

struct Profile {
    pattern: Pattern,
    name: String,
    c: Vec<Entry>,
    cm: Option<Vec<Entry>>,
    sc: Option<Vec<Entry>>,
}

/// Bounded exhaustive test of one conjecture over all patterns of each
/// length up to `max_len`.
pub fn conjecture_scan(which: Conjecture, max_len: usize, bounds: Bounds) -> ConjectureReport {
    use rayon::prelude::*;
    let mut pairs_tested = 0;
    let mut premise_pairs = 0;
    let mut candidates = Vec::new();
    for len in 1..=max_len {
        let patterns = patterns_of_length(len);
        let profiles: Vec<Profile> = patterns
            .par_iter()
            .map(|p| {
                let needs_cm = matches!(which, Conjecture::CmImpliesSc | Conjecture::CImpliesCm);
                Profile {
                    pattern: p.clone(),
                    name: p.to_string(),
                    c: family(p, Relation::C, bounds),
                    cm: needs_cm.then(|| family(p, Relation::Cm, bounds)),
                    sc: (which == Conjecture::CmImpliesSc).then(|| family(p, Relation::Sc, bounds)),
                }
            })
            .collect();
        for (i, a) in profiles.iter().enumerate() {
            for b in &profiles[i + 1..] {
                match which {
                    Conjecture::CmImpliesSc | Conjecture::CImpliesCm | Conjecture::CImpliesEqualMax => {
                        pairs_tested += 1;
                        let premise = match which {
                            Conjecture::CmImpliesSc => first_difference(a.cm.as_ref().unwrap(), b.cm.as_ref().unwrap()),
                            _ => first_difference(&a.c, &b.c),
                        };
                        if premise.is_some() {
                            continue;
                        }
                        premise_pairs += 1;
                        let failure = match which {
                            Conjecture::CmImpliesSc => first_difference(a.sc.as_ref().unwrap(), b.sc.as_ref().unwrap())
                                .map(|w| format!("~sc fails at {w}")),
                            Conjecture::CImpliesCm => first_difference(a.cm.as_ref().unwrap(), b.cm.as_ref().unwrap())
                                .map(|w| format!("~cm fails at {w}")),
                            _ => (a.pattern.cayley().max() != b.pattern.cayley().max())
                                .then(|| format!("max {} vs {}", a.pattern.cayley().max(), b.pattern.cayley().max())),
                        };
                        if let Some(detail) = failure {
                            candidates.push(Candidate { p: a.name.clone(), q: b.name.clone(), detail });
                        }
                    }
                    Conjecture::MaxMonotonicity => {
                        for (x, y) in [(a, b), (b, a)] {
                            pairs_tested += 1;
                            if x.pattern.cayley().max() > y.pattern.cayley().max() {
                                continue;
                            }
                            premise_pairs += 1;
                            if let Some(e) = x.c.iter().zip(&y.c).find(|(u, v)| u.count < v.count) {
                                candidates.push(Candidate {
                                    p: x.name.clone(),
                                    q: y.name.clone(),
                                    detail: format!("n={}: {} < {}", e.0.n, e.0.count, e.1.count),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let verdict = if candidates.is_empty() {
        ScanVerdict::NoCounterexampleFound
    } else {
        ScanVerdict::CandidateCounterexample
    };
    let note = if candidates.is_empty() {
        "bounded search: absence of a counterexample is evidence only".to_string()
    } else {
        "bounded search: a candidate shows the bounded hypothesis holding while the conclusion fails".to_string()
    };
    ConjectureReport {
        conjecture: which,
        statement: which.statement(),
        max_len,
        bounds,
        pairs_tested,
        premise_pairs,
        verdict,
        candidates,
        note,
    }
}

/// The smallest pair suspected to separate `~c` from `~cm`.
pub const CANDIDATE_PAIR: (&str, &str) = ("13442", "14233");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidatePairReport {
    pub c: EquivReport,
    pub cm: EquivReport,
    /// `~c` holds within the bounds while `~cm` fails.
    pub flagged: bool,
}

/// Compares the candidate pair under `~c` and `~cm`.
pub fn candidate_pair_report(bounds: Bounds) -> CandidatePairReport {
    let p: Pattern = CANDIDATE_PAIR.0.parse().expect("pattern");
    let q: Pattern = CANDIDATE_PAIR.1.parse().expect("pattern");
    let c = test_relation(&p, &q, Relation::C, bounds);
    let cm = test_relation(&p, &q, Relation::Cm, bounds);
    let flagged = c.equivalent() && !cm.equivalent();
    CandidatePairReport { c, cm, flagged }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn names(v: &[Pattern]) -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn symmetry_classes() {
        assert_eq!(names(&symmetry_class(&pat("112"))), ["112", "122", "211", "221"]);
        assert_eq!(names(&symmetry_class(&pat("212"))), ["121", "212"]);
        assert_eq!(names(&symmetry_class(&pat("11"))), ["11"]);
    }

    #[test]
    fn relation_tags_round_trip() {
        for r in Relation::ALL {
            assert_eq!(r.tag().parse::<Relation>().unwrap(), r);
        }
        assert!("x".parse::<Relation>().is_err());
        for c in Conjecture::ALL {
            assert_eq!(c.tag().parse::<Conjecture>().unwrap(), c);
        }
    }

    #[test]
    fn length_two_classes() {
        let c = classify(&patterns_of_length(2), Relation::C, Bounds::new(5, 3));
        assert_eq!(c.classes, vec![vec!["11".to_string()], vec!["12".to_string(), "21".to_string()]]);
        let single = classify(&[pat("123")], Relation::C, Bounds::new(4, 3));
        assert_eq!(single.classes, vec![vec!["123".to_string()]]);
    }

    #[test]
    fn distinguishing_witness() {
        let r = test_relation(&pat("11"), &pat("12"), Relation::C, Bounds::new(5, 3));
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert_eq!(r.witness, Some(Witness { n: 3, k: None, content: None, counts: [6, 4] }));
        let r = test_relation(&pat("12"), &pat("21"), Relation::Sw, Bounds::new(5, 3));
        assert!(r.equivalent());
    }

    #[test]
    fn max_witnesses() {
        assert_eq!(
            max_distinguisher(&pat("111"), &pat("123")),
            Some(Witness { n: 3, k: Some(1), content: None, counts: [0, 1] })
        );
        assert_eq!(max_distinguisher(&pat("123"), &pat("321")), None);
        assert_eq!(
            max_distinguisher(&pat("112"), &pat("123")),
            Some(Witness { n: 3, k: Some(2), content: None, counts: [5, 6] })
        );
    }

    #[test]
    fn content_keys_render() {
        let a: Content = [(1, 2), (2, 1)].into();
        let b: Content = [(1, 1), (2, 2)].into();
        assert_eq!(content_class(&a), content_class(&b));
        assert_eq!(content_text(&content_class(&a)), "(2,1)");
    }
}
