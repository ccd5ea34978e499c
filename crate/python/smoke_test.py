#!/usr/bin/env python3
"""Smoke test for the qna_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/, copies
it next to a temporary directory under the importable name, and runs the
pipeline on a few catalog algebras.

Usage:
    cargo build -p qna-py [--release]
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_library() -> pathlib.Path:
    candidates = []
    for profile in ("release", "debug"):
        for name in ("libqna_py.so", "qna_py.dll", "libqna_py.dylib"):
            p = ROOT / "target" / profile / name
            if p.exists():
                candidates.append(p)
    if not candidates:
        sys.exit("build the extension first: cargo build -p qna-py")
    return max(candidates, key=lambda p: p.stat().st_mtime)


def import_module():
    lib = locate_library()
    tmp = tempfile.mkdtemp(prefix="qna-py-")
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, pathlib.Path(tmp) / f"qna_py{suffix}")
    sys.path.insert(0, tmp)
    import qna_py  # noqa: E402

    return qna_py


def main() -> None:
    qna = import_module()

    names = qna.catalog_names()
    assert "uq_plus_sl3" in names, names

    # q^2 * q^-2 == 1 at the scalar level.
    q2 = json.loads(qna.qpow(2))
    assert q2["num"] == [["1", 2]], q2

    p = qna.Presentation.catalog("uq_plus_sl3")
    assert p.n_vars == 3 and p.rank == 2
    assert p.is_valid()

    report = json.loads(p.validate())
    assert report["q_exponents"]["3"] == -2, report

    # x3 x1 = q x1 x3 - q x2.
    prod = json.loads(p.multiply(p.generator(3), p.generator(1)))
    exps = sorted(tuple(t["exps"]) for t in prod)
    assert exps == [(0, 1, 0), (1, 0, 1)], prod

    cluster = json.loads(p.y_elements())
    assert cluster["mu"] == [1, 2, 1], cluster
    assert cluster["s"] == [3, None, None], cluster

    centre = json.loads(p.center())
    assert centre["torus_center_rank"] == 1
    assert centre["kernel_basis"] == [[0, 1, 1]]

    hyp = json.loads(p.hypothesis())
    assert hyp["valid"] and hyp["pivots"] == [2], hyp

    hh1 = json.loads(p.hh1_basis())
    assert hh1["rank"] == 2, hh1

    # Decomposition roundtrip: D = ad_{x1 x3} + 0 recovers an inner part.
    x1x3 = p.multiply(p.generator(1), p.generator(3))
    d_values = [
        json.loads(p.commutator(x1x3, p.generator(k))) for k in (1, 2, 3)
    ]
    derivation = json.dumps({"format": 1, "values": d_values})
    assert p.validate_derivation(derivation)
    result = p.decompose(derivation, degree_bound=4)
    assert qna.decomposition_is_exact(result), result
    eta = json.loads(result)["eta"]
    assert all(v == [] for v in eta.values()), eta

    # The hypothesis fails definitively on the mixed-sign kernel example.
    bad = qna.Presentation.catalog("qspace_111")
    hyp = json.loads(bad.hypothesis())
    assert not hyp["valid"] and hyp["failure_reason"] == "NoNonnegativeBasis"

    # And that example's extra derivation has no inner witness at bound 6.
    delta = json.dumps(
        {
            "format": 1,
            "values": [
                [],
                [{"coeff": {"num": [["1", 0]], "den": [["1", 0]]}, "exps": [1, 0, 1]}],
                [],
            ],
        }
    )
    assert bad.validate_derivation(delta)
    assert bad.is_inner_up_to(delta, 6) is None

    print("qna_py smoke test: OK")


if __name__ == "__main__":
    main()
