//! Library results against brute-force oracles and frozen reference tables.

use caypat::catalog;
use caypat::enumerate::{
    cayley_content_counts, content_indexed_counts, count_avoiders, count_by_max, count_kary_avoiders,
    count_primitive_avoiders, gen_avoiders, Space,
};
use caypat::equiv::patterns_of_length;
use caypat::series::{self, CountSeq};
use caypat::word::{Content, Letter, Pattern};

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

/// All words over `[k]` of length `n`, in lexicographic order.
fn all_words(n: usize, k: Letter) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w| (1..=k).map(move |a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

fn is_cayley(w: &[Letter]) -> bool {
    let m = w.iter().copied().max().unwrap_or(0);
    (1..=m).all(|a| w.contains(&a))
}

fn same_shape(a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].cmp(&a[j]) == b[i].cmp(&b[j])))
}

/// Subsets of positions by bitmask; independent of the library matcher.
fn oracle_contains(w: &[Letter], p: &[Letter]) -> bool {
    if p.len() > w.len() {
        return false;
    }
    (0u32..1 << w.len()).filter(|m| m.count_ones() as usize == p.len()).any(|m| {
        let sub: Vec<Letter> = (0..w.len()).filter(|i| m >> i & 1 == 1).map(|i| w[i]).collect();
        same_shape(&sub, p)
    })
}

fn oracle_cayley_avoiders(p: &Pattern, n: usize) -> Vec<Vec<Letter>> {
    all_words(n, n as Letter).into_iter().filter(|w| is_cayley(w) && !oracle_contains(w, p)).collect()
}

#[test]
fn avoider_counts_match_brute_force() {
    for len in 1..=3 {
        for p in patterns_of_length(len) {
            for n in 0..=6 {
                assert_eq!(count_avoiders(&p, n), oracle_cayley_avoiders(&p, n).len() as u64, "{p} n={n}");
            }
        }
    }
    for p in ["1342", "2121", "1111", "2413"] {
        let p = pat(p);
        for n in 0..=5 {
            assert_eq!(count_avoiders(&p, n), oracle_cayley_avoiders(&p, n).len() as u64, "{p} n={n}");
        }
    }
}

#[test]
fn generated_avoiders_are_the_brute_force_set() {
    for p in ["132", "212", "1221"] {
        let p = pat(p);
        let got: Vec<Vec<Letter>> = gen_avoiders(&p, 5).map(|w| w.letters().to_vec()).collect();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted, "{p}: lexicographic order");
        assert_eq!(got, oracle_cayley_avoiders(&p, 5), "{p}");
    }
}

#[test]
fn by_max_and_kary_counts_match_brute_force() {
    let p = pat("121");
    for n in 0..=5 {
        let by_max = count_by_max(n, Space::Cayley, false, Some(&p));
        for (k, &c) in by_max.iter().enumerate() {
            let want = oracle_cayley_avoiders(&p, n).iter().filter(|w| w.iter().copied().max().unwrap_or(0) as usize == k).count();
            assert_eq!(c, want as u64, "n={n} k={k}");
        }
        for k in 0..=4 {
            let want = all_words(n, k).iter().filter(|w| !oracle_contains(w, &p)).count();
            assert_eq!(count_kary_avoiders(&p, n, k), want as u64, "[{k}]^{n}");
        }
    }
}

#[test]
fn content_counts_match_brute_force() {
    let p = pat("212");
    for n in 0..=4 {
        for k in 0..=3 {
            let mut want = std::collections::BTreeMap::<Content, u64>::new();
            for w in all_words(n, k).iter().filter(|w| !oracle_contains(w, &p)) {
                *want.entry(caypat::word::content(w)).or_default() += 1;
            }
            let got = content_indexed_counts(&p, n, k);
            let nonzero: std::collections::BTreeMap<_, _> = got.iter().filter(|(_, &c)| c > 0).map(|(a, &b)| (a.clone(), b)).collect();
            assert_eq!(nonzero, want, "n={n} k={k}");
            let cayley_total: u64 = cayley_content_counts(&p, n, k).values().sum();
            let cayley_want = all_words(n, k)
                .iter()
                .filter(|w| is_cayley(w) && w.iter().copied().max().unwrap_or(0) == k && !oracle_contains(w, &p))
                .count();
            assert_eq!(cayley_total, cayley_want as u64, "Cay^{k}[{n}]");
        }
    }
}

#[test]
fn frozen_reference_tables() {
    let table: [(&str, [u64; 7]); 7] = [
        ("1234", [1, 1, 3, 13, 74, 508, 3962]),
        ("1324", [1, 1, 3, 13, 74, 508, 3962]),
        ("3412", [1, 1, 3, 13, 74, 508, 3962]),
        ("4231", [1, 1, 3, 13, 74, 508, 3962]),
        ("1111", [1, 1, 3, 13, 74, 530, 4550]),
        ("1122", [1, 1, 3, 13, 74, 520, 4340]),
        ("2121", [1, 1, 3, 13, 74, 520, 4337]),
    ];
    for (p, want) in table {
        let got: Vec<u64> = (0..=6).map(|n| count_avoiders(&pat(p), n)).collect();
        assert_eq!(got, want, "{p}");
    }
    assert_eq!(count_by_max(6, Space::Cayley, false, Some(&pat("1212"))), vec![0, 1, 40, 396, 1380, 1800, 720]);
    let prim: Vec<u64> = (0..=6).map(|n| count_primitive_avoiders(&pat("123"), n)).collect();
    assert_eq!(prim, [0, 1, 2, 7, 28, 121, 550]);
    let kary: Vec<u64> = (0..=6).map(|n| count_kary_avoiders(&pat("121"), n, 3)).collect();
    assert_eq!(kary, [1, 3, 9, 24, 56, 116, 218]);
}

#[test]
fn closed_forms_match_enumeration() {
    for n in 0..=7 {
        assert_eq!(catalog::cay111_closed_form(n), count_avoiders(&pat("111"), n).into(), "111 n={n}");
        assert_eq!(catalog::cay112_count(n), count_avoiders(&pat("212"), n).into(), "212 n={n}");
        assert_eq!(catalog::cay123_birmajer(n), count_avoiders(&pat("123"), n).into(), "123 n={n}");
        assert_eq!(catalog::cay_s3_kasraoui(n), count_avoiders(&pat("312"), n).into(), "312 n={n}");
    }
    for k in 0..=4 {
        for n in 0..=6 {
            assert_eq!(catalog::kary_burstein(k, n), count_kary_avoiders(&pat("123"), n, k as Letter).into(), "k={k} n={n}");
        }
    }
    let from_words = CountSeq::from_u64s(&(0..=7).map(|n| count_avoiders(&pat("1111"), n)).collect::<Vec<_>>());
    assert_eq!(catalog::cay_1k(4, 7).unwrap(), from_words);
}

#[test]
fn species_builders_count_their_structures() {
    let cay: Vec<u64> = (0..=6).map(|n| all_words(n, n as Letter).iter().filter(|w| is_cayley(w)).count() as u64).collect();
    assert_eq!(series::l(6).compose(&series::e_plus(6)).unwrap(), CountSeq::from_u64s(&cay));
    let injective: Vec<u64> = (0..=6)
        .map(|n| {
            all_words(n, n as Letter)
                .iter()
                .filter(|w| is_cayley(w) && w.iter().copied().max().unwrap_or(0) as usize == n)
                .count() as u64
        })
        .collect();
    assert_eq!(series::l(6), CountSeq::from_u64s(&injective));
}

#[test]
fn oracle_sanity() {
    assert!(same_shape(&[2, 2, 5], &[1, 1, 2]));
    assert!(!same_shape(&[2, 3, 5], &[1, 1, 2]));
    assert!(oracle_contains(&[3, 1, 3, 4, 2], &[2, 1, 2]));
    assert!(!oracle_contains(&[1, 2, 3], &[2, 1]));
}
