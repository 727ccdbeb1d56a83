"""Smoke test for the pycmreg extension: python python/smoke_test.py"""

import pycmreg

SAMPLE = """char 101
vars x y z
gens 0
rels
x^2
x*y
end
"""


def main():
    m = pycmreg.Module.parse(SAMPLE)
    assert m.regularity() == 1
    assert m.column_degrees == [2, 2]
    assert (0, 0, 1) in m.betti()

    h = m.hilbert()
    assert h["dimension"] == 2 and h["multiplicity"] == 1

    report = m.audit()
    assert report["values"]["cm_regularity"] == 6
    assert all(v["pass"] for v in report["verdicts"])

    again = pycmreg.Module.parse(m.to_text())
    assert again.to_text() == m.to_text()

    assert pycmreg.ideal_bounds(3, 2)["small_vars"] == 4
    big = pycmreg.ideal_bounds(8, 10)["bayer_mumford"]
    assert big == 20 ** 5040

    mb = pycmreg.multiplicity_bounds([0], [3, 2], 2)
    assert mb["sum_form"] == mb["series_form"] == 6

    r = pycmreg.Module.random(7, p_vars=2, n=1, m=2)
    assert r.regularity() >= 0

    code, out, _ = pycmreg.run_cli(["bounds", "--vars", "3", "--B", "2"])
    assert code == 0 and "small_vars = 4" in out

    try:
        pycmreg.Module.parse("char 4\nvars x\ngens 0\nrels\nend\n")
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("non-prime characteristic accepted")

    print("pycmreg smoke test passed")


if __name__ == "__main__":
    main()
