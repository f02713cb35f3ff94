"""Smoke test for the pynokcert extension module."""

import json
from fractions import Fraction

import pynokcert as nk


def main():
    assert nk.normalize_expr("t^2/2 - 5*(t-eps)^2/2") == nk.normalize_expr("(t^2 - 5*(t - eps)^2)/2")
    assert Fraction(nk.eval_expr("t^2/2 - 5*(t-eps)^2/2", "1", "5/4")) == Fraction(5, 32) * 4

    assert nk.debarre_min_mult("59", "3/2") == 5
    assert Fraction(nk.seshadri_width_cap(5, "3/2")) == Fraction(15, 8)
    try:
        nk.eval_expr("t + 0.5", "1", "1")
    except ValueError as e:
        print("rejected decimal:", e)
    else:
        raise AssertionError("decimal literal accepted")

    names = nk.builtin_names()
    assert "thm-main-case-3.1" in names

    one = json.loads(nk.verify_scenario(nk.builtin_json("thm-main-case-3.1")))
    rec = one["results"][0]
    assert rec["holds"] and Fraction(rec["margin_lower_bound"]) == Fraction(3779, 768)
    assert [Fraction(x) for x in rec["sup_enclosure"]] == [Fraction(1215, 256)] * 2

    first = nk.run_builtin_suite()
    assert first == nk.run_builtin_suite(), "suite output is not deterministic"
    report = json.loads(first)
    assert report["status"] == "pass" and report["seed"] == nk.DEFAULT_SEED
    for r in report["results"]:
        print(f"{r['name']:<22} holds={r['holds']}  margin >= {r['margin_decimal']}")

    stretch = json.loads(nk.run_builtin_suite(with_stretch=True))
    assert stretch["status"] == "fail"
    print("smoke test ok")


if __name__ == "__main__":
    main()
