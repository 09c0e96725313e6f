"""Smoke test for the pykxval extension module.

Build it first, e.g. `pip install --no-build-isolation -e crates/python`.
"""

import pykxval as kx


def main():
    h = kx.Field("perfect_hull", 2)
    t = h.elem("t")
    assert t.val() == "1"
    assert (t * t).val() == "2"
    assert str(h.elem("t^(1/2)") ** 2) == "t"

    f = h.poly("x^2 + x + t")
    q, r = divmod(f, h.poly("x + 1"))
    assert q * h.poly("x + 1") + r == f
    assert [str(c) for c in h.poly("x^3").expand(h.poly("x - t"))] == ["t^3", "t^2", "t", "1"]

    v = kx.Valuation.monomial(t, "2")
    assert str(v(h.poly("x"))) == "1"
    assert str(v(h.poly("x - t"))) == "2"
    assert v.vtype() == "RT"

    nt = kx.Sequence.artin_schreier_nt(h)
    mu, kind = nt.valuation()
    assert kind == "NT" and str(mu(f)) == "inf"

    vt = kx.Sequence.artin_schreier_vt(h)
    mu, kind = vt.valuation()
    assert kind == "VT" and str(mu.gamma) == "0-"
    assert kx.Value("0-") < kx.Value("0")
    assert kx.compare(kx.Value("inf"), kx.Value("5")) == 1

    al, kind = kx.Sequence.random_digits(h, 7).valuation()
    assert kind == "AL" and al.kind == "limit"

    a = kx.Approximation.from_sequence(vt)
    assert a.kind == "generated" and a.vtype() == "VT" and a.supp() == "0-"
    b = kx.Approximation.principal(t, "2")
    assert b.valuation().kind == "monomial"

    try:
        kx.Sequence.cut_approach(h.elem("0"), "inf").without_witness().valuation()
    except kx.InconclusiveError:
        pass
    else:
        raise AssertionError("expected an inconclusive analysis")

    checks = kx.examples(3, depth=4)
    assert checks and all(ok for _, ok, _ in checks), checks

    print("pykxval smoke test passed")


if __name__ == "__main__":
    main()
