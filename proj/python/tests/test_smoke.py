import json
import math
import os
from fractions import Fraction

import pytest

import kacforge as kf

DATA = os.environ.get(
    "KACFORGE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data")
)


def data(name):
    return os.path.join(DATA, name)


def test_group_file():
    g = kf.load_group(data("s3_perm.json"))
    assert g.order == 6
    assert not g.is_abelian()
    assert kf.is_isomorphic(g, kf.symmetric_group(3))


def test_bad_cayley_raises():
    with pytest.raises(kf.KacforgeError, match="ValidationError"):
        kf.load_group(data("bad_cayley.json"))


def test_axioms_and_peter_weyl():
    mp = kf.load_pair(data("s4_s3_z4.json"))
    assert not mp.alpha_trivial() and not mp.beta_trivial()
    results = kf.check_axioms(mp)
    assert len(results) == 13
    assert all(dev < 1e-9 and not witness for _, dev, witness in results)
    dims = kf.irrep_dims(mp)
    assert sum(d * d for d in dims) == kf.algebra_dim(mp) == 24


def test_invariants_s3():
    inv = kf.invariant_groups(kf.load_pair("corpus:s3_z2_z3"))
    assert inv["intrinsic_order"] == 6 and inv["intrinsic_name"] == "S3"
    assert inv["intrinsic_matches"] and inv["spectrum_matches"]


def test_audit_distinctness():
    ok, entries = kf.audit(kf.load_pair("corpus:s3_z3_z2"))
    assert ok
    assert any(s == "AUDIT-DISAGREE" and "distinct" in claim for s, claim, _ in entries)


def test_sl2z_abelianization():
    factors, rank = kf.abelian_invariants(2, [[4, 0], [0, 6], [2, -3]])
    assert factors == [12] and rank == 0


def test_chebyshev_matches_fractions():
    # Independent recursion in Python's exact fractions.
    def cheb(x, k):
        p = [Fraction(1), Fraction(x)]
        while len(p) <= k:
            p.append(x * p[-1] - p[-2])
        return p

    got = [Fraction(v) for v in kf.chebyshev_values(3, "2", 12)]
    want = [a / b for a, b in zip(cheb(Fraction(2), 12), cheb(Fraction(3), 12))]
    assert got == want
    assert got[:3] == [1, Fraction(2, 3), Fraction(3, 8)]


def test_run_structured_report_is_deterministic():
    code, doc = kf.run("crossed", [data("s3_conj_z3.json")], seed=7, structured=True)
    code2, doc2 = kf.run("crossed", [data("s3_conj_z3.json")], seed=7, structured=True)
    assert code == code2 == 0 and doc == doc2
    report = json.loads(doc)
    assert report["seed"] == "0x7"
    names = [e["name"] for s in report["sections"] for e in s["entries"]]
    assert any("Int" in n for n in names)


def test_run_exit_codes():
    assert kf.run("validate", [data("bad_syntax.json")])[0] == 1
    code, text = kf.run("shadow chebyshev", options={"N": "3", "t": "2", "cutoff": "10"})
    assert code == 0 and "1, 2/3, 3/8" in text


def test_center_gcd():
    for n, p in [(2, 3), (2, 5), (3, 2)]:
        assert len(kf.special_linear_group(n, p).center()) == math.gcd(n, p - 1)
