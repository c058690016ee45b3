//! One line per acceptance criterion; the process fails if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use caypat::bijections::{self, SUITES};
use caypat::catalog::{self, CheckKind};
use caypat::enumerate::{count_avoiders, count_avoiders_with_max, count_cayley, gen_cayley};
use caypat::equiv::{self, Bounds, Conjecture, Relation, ScanVerdict};
use caypat::series::{self, factorial, RatSeries, View};
use caypat::word::{Ballot, CayleyWord, Pattern};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn pat(s: &str) -> Pattern {
    s.parse().expect("pattern")
}

fn cw(s: &str) -> CayleyWord {
    s.parse().expect("word")
}

fn within(label: &str, took: Duration, limit_secs: u64) -> Result<(), String> {
    if took > Duration::from_secs(limit_secs) {
        return Err(format!("{label} took {took:.2?}, limit {limit_secs} s"));
    }
    Ok(())
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("pool")
}

fn fubini_baseline() -> Outcome {
    const EXPECTED: [u64; 10] = [1, 1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261];
    let started = Instant::now();
    let sequential: Vec<u64> = pool(1).install(|| (0..=9).map(count_cayley).collect());
    let seq_time = started.elapsed();
    if sequential != EXPECTED {
        return Err(format!("sequential enumeration gave {sequential:?}"));
    }
    let started = Instant::now();
    let parallel: Vec<u64> = pool(0).install(|| (0..=9).map(count_cayley).collect());
    let par_time = started.elapsed();
    if parallel != EXPECTED {
        return Err(format!("parallel enumeration gave {parallel:?}"));
    }
    let generated = gen_cayley(7).count() as u64;
    if generated != EXPECTED[7] {
        return Err(format!("generator yields {generated} words of length 7"));
    }
    let bal = series::l(9).compose(&series::e_plus(9)).map_err(|e| e.to_string())?;
    if bal != series::CountSeq::from_u64s(&EXPECTED) {
        return Err(format!("L(E+) gives {bal}"));
    }
    within("sequential n <= 9", seq_time, 60)?;
    within("parallel n <= 9", par_time, 15)?;
    Ok(format!("n <= 9 sequential {seq_time:.2?}, parallel {par_time:.2?}"))
}

/// The formula column for patterns of length two and three.
fn table_formula(p: &str, n: usize) -> BigInt {
    match p {
        "11" => factorial(n),
        "12" | "21" => BigInt::from(1u64 << n.saturating_sub(1)),
        "111" => catalog::cay111_closed_form(n),
        "112" | "121" | "211" | "122" | "212" | "221" => catalog::cay112_count(n),
        _ => catalog::cay231_recurrence(n).coeffs()[n].clone(),
    }
}

fn table_one() -> Outcome {
    let started = Instant::now();
    let mut checked = 0;
    for len in 2..=3 {
        for p in equiv::patterns_of_length(len) {
            for n in 0..=8 {
                let got = BigInt::from(count_avoiders(&p, n));
                let want = table_formula(&p.to_string(), n);
                if got != want {
                    return Err(format!("{p} at n={n}: enumerated {got}, formula {want}"));
                }
                checked += 1;
            }
        }
    }
    let report = catalog::verify_identity("table1", Some(8)).map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(report.to_text());
    }
    within("table", started.elapsed(), 30)?;
    Ok(format!("{checked} counts for 16 patterns in {:.2?}", started.elapsed()))
}

fn species_identities() -> Outcome {
    const REQUIRED: [&str; 18] = [
        "cay21",
        "cay112_ode",
        "cay112_alt",
        "cay212_eq",
        "cay212_alt",
        "cay231_eq",
        "cay231_rec",
        "sym_conv",
        "altc_conv",
        "alt_decomp",
        "eeven_sq",
        "catalan",
        "prim_sq",
        "prim_lemma",
        "prim_p",
        "eqwilf",
        "s3_ogf_check",
        "prim231_ogf_guess",
    ];
    let registry = catalog::registry();
    for name in REQUIRED {
        if !registry.iter().any(|c| c.name == name) {
            return Err(format!("{name} is not registered"));
        }
    }
    for c in &registry {
        let want = match c.kind {
            CheckKind::Enumeration => 8,
            CheckKind::Series => 12,
        };
        if c.kind.default_bound() != want {
            return Err(format!("{} runs at n <= {} by default", c.name, c.kind.default_bound()));
        }
    }
    let reports = catalog::verify_all(None);
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_text()).collect();
    if !failed.is_empty() {
        return Err(failed.join("; "));
    }
    Ok(format!("{} identities pass at their default bounds", reports.len()))
}

fn specific_counts() -> Outcome {
    let cases: [(&str, usize, Option<u32>, u64); 4] = [
        ("1342", 7, None, 33712),
        ("1423", 7, None, 33710),
        ("13442", 9, Some(5), 742943),
        ("14233", 9, Some(5), 742944),
    ];
    let mut notes = Vec::new();
    for (p, n, k, want) in cases {
        let started = Instant::now();
        let got = match k {
            None => count_avoiders(&pat(p), n),
            Some(k) => count_avoiders_with_max(&pat(p), n, k),
        };
        let took = started.elapsed();
        if got != want {
            return Err(format!("{p} at n={n}: {got}, expected {want}"));
        }
        within(p, took, 120)?;
        notes.push(format!("{p} {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn bijection_suites() -> Outcome {
    let ballot: Ballot = "{2}|{5,6,7}|{1,3}|{4,8}".parse().map_err(|e| format!("{e:?}"))?;
    if bijections::cay_to_ballot(&cw("31342224")) != ballot || bijections::ballot_to_cay(&ballot) != cw("31342224") {
        return Err("31342224 does not map to {2}|{5,6,7}|{1,3}|{4,8} and back".into());
    }
    let w: CayleyWord = "7,7,9,8,5,9,9,5,6,7,4,1,2,6,3,1,3,3".parse().map_err(|e| format!("{e}"))?;
    let rep123: CayleyWord = "7,7,9,9,5,9,8,5,7,6,4,1,6,3,3,1,3,2".parse().map_err(|e| format!("{e}"))?;
    let rep132: CayleyWord = "7,7,8,9,5,6,6,5,7,9,4,1,2,3,3,1,3,9".parse().map_err(|e| format!("{e}"))?;
    if bijections::to_123_rep(&w).ok() != Some(rep123) || bijections::to_132_rep(&w).ok() != Some(rep132) {
        return Err("class representatives of the length-18 example differ".into());
    }
    let slots: BTreeSet<usize> = [2, 3, 7].into();
    if bijections::prim_expand(&slots, &cw("325154"), 9).ok() != Some(cw("333251154"))
        || bijections::prim_contract(&cw("333251154")).ok() != Some((slots, cw("325154")))
    {
        return Err("325154 with slots {2,3,7} does not expand to 333251154 and back".into());
    }
    let limits = [6, 7, 6];
    let mut total = 0;
    for (name, max_n) in SUITES.iter().zip(limits) {
        for n in 0..=max_n {
            let r = bijections::bijection_suite(name, n).map_err(|e| e.to_string())?;
            if !r.ok() {
                return Err(format!("{name} n={n}: {:?}", r.first_failure));
            }
            total += r.checked;
        }
    }
    Ok(format!("worked examples and {total} suite cases"))
}

fn classification() -> Outcome {
    let three = equiv::classify(&equiv::patterns_of_length(3), Relation::C, Bounds::new(8, 6));
    let want: Vec<Vec<String>> = vec![
        vec!["111".into()],
        ["112", "121", "122", "211", "212", "221"].map(String::from).to_vec(),
        ["123", "132", "213", "231", "312", "321"].map(String::from).to_vec(),
    ];
    let mut got = three.classes.clone();
    got.sort();
    if got != want {
        return Err(format!("length 3 gives {}", three.to_text()));
    }
    let two = equiv::classify(&equiv::patterns_of_length(2), Relation::C, Bounds::new(8, 6));
    let mut got = two.classes.clone();
    got.sort();
    if got != vec![vec!["11".to_string()], vec!["12".to_string(), "21".to_string()]] {
        return Err(format!("length 2 gives {}", two.to_text()));
    }
    Ok("three classes for length 3, {11} {12,21} for length 2".into())
}

fn conjecture_scans() -> Outcome {
    let started = Instant::now();
    let bounds = Bounds::new(7, 5);
    let all = [Conjecture::CmImpliesSc, Conjecture::CImpliesCm, Conjecture::CImpliesEqualMax, Conjecture::MaxMonotonicity];
    let mut failures = Vec::new();
    for which in all {
        let r = equiv::conjecture_scan(which, 3, bounds);
        if r.verdict != ScanVerdict::NoCounterexampleFound {
            failures.push(r.to_text());
        }
    }
    let fix = catalog::verify_identity("fixpoint_conj", Some(7)).map_err(|e| e.to_string())?;
    if !fix.passed() {
        failures.push(fix.to_text());
    }
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    within("scans", started.elapsed(), 10)?;
    Ok(format!("four scans and the fixed-point check in {:.2?}", started.elapsed()))
}

fn transform_chain() -> Outcome {
    let counts: Vec<i64> = (0..=6).map(|n| count_avoiders(&pat("231"), n) as i64).collect();
    let ogf = RatSeries::from_integers(&counts, View::Ogf);
    let prim = catalog::ogf_prim_chain(&ogf).integer_coeffs().map_err(|e| e.to_string())?;
    let want: Vec<BigInt> = [0, 1, 2, 7, 28, 121, 550].into_iter().map(BigInt::from).collect();
    if prim != want {
        return Err(format!("chain gives {prim:?}"));
    }
    Ok("0 1 2 7 28 121 550".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("fubini baseline", fubini_baseline),
        ("table of length two and three patterns", table_one),
        ("species identities", species_identities),
        ("specific counts", specific_counts),
        ("bijection suites", bijection_suites),
        ("equivalence classification", classification),
        ("conjecture scans", conjecture_scans),
        ("transform chain", transform_chain),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {label}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
