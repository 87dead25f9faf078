#!/usr/bin/env python3
"""Smoke test for the trinogen_py extension module.

Builds the cdylib with cargo, loads it under the module name Python expects,
and exercises the main entry points against hand-checked values.

Usage: python3 python/smoke.py
"""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "-p", "trinogen-python"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "debug" / "libtrinogen_py.so"
    if not built.exists():  # e.g. macOS
        built = REPO / "target" / "debug" / "libtrinogen_py.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="trinogen_py."))
    shutil.copy2(built, stage / f"trinogen_py{suffix}")
    sys.path.insert(0, str(stage))
    import trinogen_py

    return trinogen_py


def main():
    tg = build_and_import()

    # Value type: exact integers end to end.
    t = tg.Trinomial(4, 8, 8)
    assert t.n == 4 and t.a == 8 and t.b == 8
    assert t.discriminant() == 20480 == 5 * 2**12
    assert str(t) == "x^4 + 8x + 8"
    desc, proved = t.irreducibility()
    assert proved, desc

    big = tg.Trinomial(5, 10**40, -(3**50))
    assert big.b == -(3**50)
    assert big.discriminant() == 5**5 * (3**50) ** 4 + 4**4 * 10**200

    # Full verdict dict for a field with a common index divisor.
    v = tg.analyze(5, 5, 2)
    assert v["schema"] == "trinogen.verdict/1"
    assert v["status"] == "not-monogenic"
    assert v["witnesses"] == [{"p": 2, "m": 1, "Pm": 3, "Npm": "2"}]
    assert v["clauses"][0]["table"] == "d51" and v["clauses"][0]["clause"] == 1
    assert "not monogenic" in tg.analyze_text(5, 5, 2).splitlines()[4]

    # Shapes, witnesses, candidates.
    shape, complete = tg.factor_shape(6, 270, 26, 3)
    assert complete and shape == [(1, 1), (1, 1), (2, 1), (2, 1)]
    assert tg.index_divisor_witness(6, 270, 26, 3) == (1, 4, 3)
    assert tg.index_divisor_witness(6, 6, 9, 2) == (2, 2, 1)
    assert tg.index_divisor_witness(4, 8, 8, 2) is None
    assert tg.candidate_primes(5, 5, 2) == [2]

    # Polygon data for the quintic at 2: factors x and x + 1.
    factors = tg.polygon(5, 5, 2, 2)
    assert [f["factor"] for f in factors] == ["x", "x + 1"]
    assert factors[1]["lift"] == "x - 1"
    assert factors[1]["vertices"] == [(0, 3), (1, 1), (4, 0)]
    assert [s["slope"] for s in factors[1]["sides"]] == ["-2", "-1/3"]
    assert factors[1]["index"] == 1

    # Clause tables.
    assert tg.family_tables() == [
        "dp^r", "3^r", "dn1", "dn2", "corn11", "corn12", "d51", "d61",
    ]
    fired = tg.fired_clauses(6, 270, 26)
    assert ("d61", 4, 3) in [(c[0], c[1], c[2]) for c in fired]
    cert = tg.certify_family(5, 5, 2, "d51")
    assert cert["clause"] == 1 and cert["engine_confirms"] is True
    cert = tg.certify_family(27, 810, 2, "3^r")
    assert cert["clause"] is None

    # Generator certificates.
    gen = tg.certify_generator(4, 8, 8)
    assert gen["generator"] == "theta^3/4"
    assert gen["minimal_polynomial"] == "x^4 + 6x^3 + 12x^2 + 8x + 2"
    assert (gen["disc_valuation_from"], gen["disc_valuation_to"]) == (12, 6)
    assert tg.certify_generator(5, 5, 2) is None

    # Counting helpers.
    assert tg.count_irreducibles(3, 1) == 3
    assert tg.count_irreducibles(2, 20) == 52377
    assert tg.irreducible_factor_count(3, 8, 2, 2) == 3

    # Errors surface as ValueError.
    for bad in (lambda: tg.Trinomial(1, 1, 1), lambda: tg.factor_shape(5, 5, 2, 4)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke: OK")


if __name__ == "__main__":
    main()
