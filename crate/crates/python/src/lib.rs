//! Python bindings: patterns, counting sequences, identity checks,
//! bijections and equivalence tests.

use std::collections::BTreeSet;

use caypat::bijections;
use caypat::catalog;
use caypat::enumerate::{self, CountTable, Mode};
use caypat::equiv::{self, Bounds, Conjecture, Relation};
use caypat::expr;
use caypat::series::{self, CountSeq};
use caypat::word::{Ballot, CayleyWord, Letter, Pattern};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cayley(s: &str) -> PyResult<CayleyWord> {
    s.parse().map_err(value_error)
}

/// A pattern: a nonempty Cayley permutation.
#[pyclass(name = "Pattern", module = "caypat_py", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPattern(Pattern);

#[pymethods]
impl PyPattern {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPattern).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pattern('{}')", self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn letters(&self) -> Vec<Letter> {
        self.0.letters().to_vec()
    }

    fn reverse(&self) -> Self {
        PyPattern(self.0.reverse())
    }

    fn complement(&self) -> Self {
        PyPattern(self.0.complement())
    }

    fn symmetry_class(&self) -> Vec<String> {
        equiv::symmetry_class(&self.0).iter().map(|p| p.to_string()).collect()
    }

    /// Whether the word `text` contains this pattern.
    fn occurs_in(&self, text: &str) -> PyResult<bool> {
        let w: caypat::word::Word = text.parse().map_err(value_error)?;
        Ok(w.contains(&self.0))
    }

    /// `|Cay(p)[n]|`.
    fn count(&self, py: Python<'_>, n: usize) -> u64 {
        py.detach(|| enumerate::count_avoiders(&self.0, n))
    }

    /// `|Cay^k(p)[n]|`.
    fn count_with_max(&self, py: Python<'_>, n: usize, k: Letter) -> u64 {
        py.detach(|| enumerate::count_avoiders_with_max(&self.0, n, k))
    }

    /// `|[k]^n(p)|`.
    fn count_kary(&self, py: Python<'_>, n: usize, k: Letter) -> u64 {
        py.detach(|| enumerate::count_kary_avoiders(&self.0, n, k))
    }

    fn count_primitive(&self, py: Python<'_>, n: usize) -> u64 {
        py.detach(|| enumerate::count_primitive_avoiders(&self.0, n))
    }

    /// Avoiders of length `n` in lexicographic order.
    fn avoiders(&self, py: Python<'_>, n: usize) -> Vec<String> {
        py.detach(|| enumerate::gen_avoiders(&self.0, n).map(|w| w.to_string()).collect())
    }

    /// Rows `n = 0..=max_n`, columns `k = 0..=max_k`.
    #[pyo3(signature = (max_n, max_k=None, mode="all"))]
    fn table(&self, py: Python<'_>, max_n: usize, max_k: Option<Letter>, mode: &str) -> PyResult<Vec<Vec<u64>>> {
        let mode = parse_mode(mode)?;
        Ok(py.detach(|| CountTable::build(Some(&self.0), mode, max_n, max_k).counts))
    }
}

fn parse_mode(s: &str) -> PyResult<Mode> {
    Ok(match s {
        "all" => Mode::All,
        "max-exactly-k" => Mode::MaxExactlyK,
        "kary" => Mode::Kary,
        "primitive" => Mode::Primitive,
        _ => return Err(value_error(format!("unknown mode `{s}`"))),
    })
}

/// An exact counting sequence `a_0..a_N` of a species.
#[pyclass(name = "CountSeq", module = "caypat_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCountSeq(CountSeq);

#[pymethods]
impl PyCountSeq {
    #[new]
    fn new(values: Vec<BigInt>) -> Self {
        PyCountSeq(CountSeq::new(values))
    }

    /// Evaluates an expression such as `"L o E+"` through `a_order`.
    #[staticmethod]
    fn parse(source: &str, order: usize) -> PyResult<Self> {
        expr::evaluate(source, order).map(PyCountSeq).map_err(value_error)
    }

    #[staticmethod]
    fn builder(name: &str, order: usize) -> PyResult<Self> {
        Ok(PyCountSeq(match name {
            "0" => series::zero(order),
            "1" => series::one(order),
            "X" => series::x(order),
            "E" => series::e(order),
            "E+" => series::e_plus(order),
            "Eeven" => series::e_even(order),
            "Eodd" => series::e_odd(order),
            "L" => series::l(order),
            "C" => series::cyc(order),
            _ => return Err(value_error(format!("unknown builder `{name}`"))),
        }))
    }

    fn to_list(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CountSeq([{}])", self.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyCountSeq(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyCountSeq(self.0.sub(&other.0))
    }

    /// Species product.
    fn __mul__(&self, other: &Self) -> Self {
        PyCountSeq(self.0.species_product(&other.0))
    }

    fn compose(&self, inner: &Self) -> PyResult<Self> {
        self.0.compose(&inner.0).map(PyCountSeq).map_err(value_error)
    }

    fn derivative(&self) -> Self {
        PyCountSeq(self.0.derivative())
    }

    fn integral(&self) -> Self {
        PyCountSeq(self.0.integral())
    }

    fn pointing(&self) -> Self {
        PyCountSeq(self.0.pointing())
    }

    fn ordinal_product(&self, other: &Self) -> Self {
        PyCountSeq(self.0.ordinal_product(&other.0))
    }

    fn convolution(&self, other: &Self) -> Self {
        PyCountSeq(self.0.convolution(&other.0))
    }

    fn reciprocal(&self) -> PyResult<Self> {
        self.0.reciprocal().map(PyCountSeq).map_err(value_error)
    }

    fn binomial_transform(&self) -> Self {
        PyCountSeq(self.0.binomial_transform())
    }

    fn inverse_binomial_transform(&self) -> Self {
        PyCountSeq(self.0.inverse_binomial_transform())
    }
}

#[pyfunction]
fn count_cayley(py: Python<'_>, n: usize) -> u64 {
    py.detach(|| enumerate::count_cayley(n))
}

/// Runs one registered identity check and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, bound=None))]
fn verify<'py>(py: Python<'py>, name: &str, bound: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| catalog::verify_identity(name, bound)).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (report.to_json().to_string(),))
}

#[pyfunction]
fn identities() -> Vec<&'static str> {
    catalog::registry().into_iter().map(|c| c.name).collect()
}

/// Returns `(equivalent, witness)`; the witness describes the first difference.
#[pyfunction]
#[pyo3(signature = (p, q, relation="c", max_n=8, max_k=6))]
fn test_relation(
    py: Python<'_>,
    p: &PyPattern,
    q: &PyPattern,
    relation: &str,
    max_n: usize,
    max_k: usize,
) -> PyResult<(bool, Option<String>)> {
    let rel: Relation = relation.parse().map_err(value_error)?;
    let r = py.detach(|| equiv::test_relation(&p.0, &q.0, rel, Bounds::new(max_n, max_k)));
    Ok((r.equivalent(), r.witness.map(|w| w.to_string())))
}

#[pyfunction]
#[pyo3(signature = (patterns, relation="c", max_n=8, max_k=6))]
fn classify(
    py: Python<'_>,
    patterns: Vec<PyPattern>,
    relation: &str,
    max_n: usize,
    max_k: usize,
) -> PyResult<Vec<Vec<String>>> {
    let rel: Relation = relation.parse().map_err(value_error)?;
    let pats: Vec<Pattern> = patterns.into_iter().map(|p| p.0).collect();
    Ok(py.detach(|| equiv::classify(&pats, rel, Bounds::new(max_n, max_k)).classes))
}

#[pyfunction]
fn patterns_of_length(len: usize) -> Vec<PyPattern> {
    equiv::patterns_of_length(len).into_iter().map(PyPattern).collect()
}

/// Bounded scan; returns a dict with the verdict and any candidates.
#[pyfunction]
#[pyo3(signature = (which, max_len=3, max_n=7, max_k=5))]
fn conjecture_scan<'py>(
    py: Python<'py>,
    which: &str,
    max_len: usize,
    max_n: usize,
    max_k: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let conj: Conjecture = which.parse().map_err(value_error)?;
    let r = py.detach(|| equiv::conjecture_scan(conj, max_len, Bounds::new(max_n, max_k)));
    let d = PyDict::new(py);
    d.set_item("conjecture", conj.tag())?;
    d.set_item("verdict", r.verdict.to_string())?;
    d.set_item("pairs_tested", r.pairs_tested)?;
    d.set_item("premise_pairs", r.premise_pairs)?;
    let candidates: Vec<(String, String, String)> = r.candidates.into_iter().map(|c| (c.p, c.q, c.detail)).collect();
    d.set_item("candidates", candidates)?;
    Ok(d)
}

#[pyfunction]
fn cay_to_ballot(word: &str) -> PyResult<String> {
    Ok(bijections::cay_to_ballot(&cayley(word)?).to_string())
}

#[pyfunction]
fn ballot_to_cay(ballot: &str) -> PyResult<String> {
    let b: Ballot = ballot.parse().map_err(value_error)?;
    Ok(bijections::ballot_to_cay(&b).to_string())
}

#[pyfunction]
fn to_123_rep(word: &str) -> PyResult<String> {
    bijections::to_123_rep(&cayley(word)?).map(|w| w.to_string()).map_err(value_error)
}

#[pyfunction]
fn to_132_rep(word: &str) -> PyResult<String> {
    bijections::to_132_rep(&cayley(word)?).map(|w| w.to_string()).map_err(value_error)
}

#[pyfunction]
fn simion_schmidt(word: &str) -> PyResult<String> {
    bijections::simion_schmidt(&cayley(word)?).map(|w| w.to_string()).map_err(value_error)
}

#[pyfunction]
fn simion_schmidt_inverse(word: &str) -> PyResult<String> {
    bijections::simion_schmidt_inverse(&cayley(word)?).map(|w| w.to_string()).map_err(value_error)
}

/// Returns `(slots, primitive word)`.
#[pyfunction]
fn prim_contract(word: &str) -> PyResult<(Vec<usize>, String)> {
    let (slots, v) = bijections::prim_contract(&cayley(word)?).map_err(value_error)?;
    Ok((slots.into_iter().collect(), v.to_string()))
}

#[pyfunction]
fn prim_expand(slots: Vec<usize>, word: &str, n: usize) -> PyResult<String> {
    let slots: BTreeSet<usize> = slots.into_iter().collect();
    let v = if word.is_empty() { CayleyWord::empty() } else { cayley(word)? };
    bijections::prim_expand(&slots, &v, n).map(|w| w.to_string()).map_err(value_error)
}

#[pymodule]
fn caypat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPattern>()?;
    m.add_class::<PyCountSeq>()?;
    m.add_function(wrap_pyfunction!(count_cayley, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(test_relation, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(patterns_of_length, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_scan, m)?)?;
    m.add_function(wrap_pyfunction!(cay_to_ballot, m)?)?;
    m.add_function(wrap_pyfunction!(ballot_to_cay, m)?)?;
    m.add_function(wrap_pyfunction!(to_123_rep, m)?)?;
    m.add_function(wrap_pyfunction!(to_132_rep, m)?)?;
    m.add_function(wrap_pyfunction!(simion_schmidt, m)?)?;
    m.add_function(wrap_pyfunction!(simion_schmidt_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(prim_contract, m)?)?;
    m.add_function(wrap_pyfunction!(prim_expand, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_level_wrappers() {
        assert_eq!(cay_to_ballot("31342224").unwrap(), "{2}|{5,6,7}|{1,3}|{4,8}");
        assert_eq!(prim_contract("111").unwrap(), (vec![2, 3], "1".to_string()));
        assert_eq!(prim_expand(vec![2, 3], "1", 3).unwrap(), "1 1 1");
        assert!(matches!(parse_mode("kary"), Ok(Mode::Kary)));
        assert_eq!(identities().len(), catalog::registry().len());
    }
}
