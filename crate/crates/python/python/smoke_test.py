"""Smoke test for the compiled extension.

Build and install first, e.g. ``maturin develop --release`` or
``pip install crates/python`` from the workspace root.
"""

import caypat_py as cp


def main() -> None:
    assert [cp.count_cayley(n) for n in range(7)] == [1, 1, 3, 13, 75, 541, 4683]

    p = cp.Pattern("231")
    assert str(p) == "231" and len(p) == 3
    assert [p.count(n) for n in range(7)] == [1, 1, 3, 12, 56, 284, 1516]
    assert p.occurs_in("12213") is False
    assert p.occurs_in("31342224")
    assert cp.Pattern("212").occurs_in("31342224")
    assert p.avoiders(2) == ["1 1", "1 2", "2 1"]
    assert cp.Pattern("13442").count_with_max(9, 5) == 742943
    assert sorted(p.symmetry_class()) == ["132", "213", "231", "312"]
    try:
        cp.Pattern("13")
    except ValueError as e:
        assert "Cayley permutation" in str(e)
    else:
        raise AssertionError("13 accepted as a pattern")

    bal = cp.CountSeq.parse("L o E+", 6)
    assert bal.to_list() == [1, 1, 3, 13, 75, 541, 4683]
    l, e_plus = cp.CountSeq.builder("L", 6), cp.CountSeq.builder("E+", 6)
    assert l.compose(e_plus) == bal
    big = cp.CountSeq.parse("Fub", 30).to_list()[30]
    assert big > 2**64

    report = cp.verify("prim_sq", 6)
    assert report["verdict"] == "PASS", report
    assert "fixpoint_conj" in cp.identities()

    assert cp.cay_to_ballot("31342224") == "{2}|{5,6,7}|{1,3}|{4,8}"
    assert cp.ballot_to_cay("{2}|{5,6,7}|{1,3}|{4,8}") == "3 1 3 4 2 2 2 4"
    assert cp.prim_expand([2, 3, 7], "325154", 9) == "3 3 3 2 5 1 1 5 4"
    assert cp.prim_contract("333251154") == ([2, 3, 7], "3 2 5 1 5 4")

    ok, witness = cp.test_relation(cp.Pattern("112"), cp.Pattern("123"), "c", 5)
    assert not ok and witness.startswith("n=4")
    classes = cp.classify(cp.patterns_of_length(3), "c", 6)
    assert len(classes) == 3
    scan = cp.conjecture_scan("max_monotonicity", 3, 6, 5)
    assert scan["verdict"] == "NO-COUNTEREXAMPLE-FOUND"

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
