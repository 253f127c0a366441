"""Smoke test for the `symper` extension module.

Build it first, either with maturin (`maturin develop -m crates/py/Cargo.toml`)
or with cargo:

    cargo build --release -p symper-py --features extension-module

then run `python3 python/smoke_test.py`. Without an installed module the
script loads target/release/libsymper.so (or $SYMPER_LIB) directly.
"""

import importlib.machinery
import importlib.util
import json
import os
import pathlib
import sys


def load():
    try:
        import symper

        return symper
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [os.environ.get("SYMPER_LIB")] + [
        str(root / "target" / profile / name)
        for profile in ("release", "debug")
        for name in ("libsymper.so", "libsymper.dylib", "symper.dll")
    ]
    for path in filter(None, candidates):
        if os.path.exists(path):
            loader = importlib.machinery.ExtensionFileLoader("symper", path)
            spec = importlib.util.spec_from_loader("symper", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("symper extension not found; build crates/py first")


def main():
    sp = load()
    P = sp.PeriodicProfile

    f = P(5, 1, 2)
    assert f.layers() == [1, 3, 5]
    assert sp.make_periodic(5, 1, 2) == [1, 3, 5]
    assert sp.detect_period(4, [0, 2, 4]) == P(4, 0, 2)
    assert sp.detect_period(4, [1, 2, 3, 4]) is None
    assert P(3, 1, 2).eval([2, 1, 1]) == 1 and P(3, 1, 2).eval([0, 2, 2]) == 0
    assert P(6, 2, 4).ratio() == 2

    layers, h = sp.nset_intersection([P(6, 0, 2), P(6, 0, 3)])
    assert layers == [0, 6] and (h.d, h.t) == (0, 6)

    g = P(4, 0, 2)
    sig = [("g", g)]
    assert sp.realize("(g x1 x1 x2 x2)", 2, sig).is_i()
    assert sp.theta("(g x1 x1 x2 x2)", 2, sig) == []
    assert sp.rewrite_i("(i2 (i2 x1 x2) x3)") == "(i3 x1 x2 x3)"

    yes = sp.member(P(2, 0, 2), g)
    assert yes["verdict"] == "yes" and yes["branch"] == "L2"
    assert sp.member(P(2, 0, 2), P(3, 0, 2))["verdict"] == "no"
    assert sp.member(P(2, 0, 2), P(3, 0, 2), with_i=True)["verdict"] == "yes"

    found, witness = sp.member_oracle(P(2, 0, 2), [g])
    assert found and sp.realize(witness.replace("g1", "g"), 2, sig) == P(2, 0, 2).table()
    assert sp.member_oracle(P(2, 0, 2), [P(3, 0, 2)]) == (False, None)

    derived = sp.close([sp.TableFn.parse("table n=2 bits=f")], 3)
    assert len(derived) == 7 and all(t.is_i() for _, t, _ in derived)

    basis, removed = sp.extract_finite_basis([P(2, 0, 2), g], 2)
    assert basis == [g] and removed[0][0] == P(2, 0, 2)

    desc = {"p": 2, "finite": [], "sequences": [
        {"t_exp": {"a": 1, "b": 1}, "d": {"c": 1, "g": 0, "e": 0}, "n": {"u": 1, "v": 0, "w": 1}}]}
    verdict, report = sp.classify_family(json.dumps(desc))
    assert verdict == "CountableBasis" and json.loads(report)["verdict"] == "CountableBasis"

    passed, text = sp.run_verify("prop2")
    assert passed, text

    try:
        P(2, 2, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("d >= t must be rejected")
    print("smoke test passed")


if __name__ == "__main__":
    main()
