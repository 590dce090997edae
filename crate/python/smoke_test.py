"""Smoke test for the `vizing` extension module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/vizing-*.whl

then run `python python/smoke_test.py`.
"""

import csv
import io
import json

import vizing


def main():
    c4 = vizing.Graph.cycle(4)
    assert c4.n == 4 and c4.edge_count() == 4
    assert vizing.Graph.from_graph6(c4.to_graph6()) == c4
    assert vizing.Graph.from_edgelist("4\n0 1\n1 2\n2 3\n3 0\n") == c4

    r = vizing.gamma_exact(c4)
    assert r["gamma"] == 2 and c4.is_dominating(r["witness"])
    assert vizing.gamma_bruteforce(vizing.Graph.path(6)) == 2
    assert len(vizing.minimum_dominating_sets(c4)) == 6

    pg = vizing.cartesian_product(c4, vizing.Graph.path(3))
    assert (pg.g_size, pg.h_size, pg.graph.n) == (4, 3, 12)
    assert pg.graph.edge_count() == 4 * 2 + 3 * 4
    assert pg.unflat(pg.flat(2, 1)) == (2, 1)

    p2 = vizing.Graph.path(2)
    rep = vizing.check_pair(p2, p2)
    assert rep["vizing_holds"] and rep["gamma_product"] == 2

    k1 = vizing.Graph.complete(1)
    cert = vizing.certify(k1, k1)
    assert cert["outcome"].startswith("CERTIFIED") and cert["audit_passed"]
    assert json.loads(cert["trace"])["schema_version"] == 1
    retry = vizing.certify(c4, c4, retry=True)
    assert retry["outcome"].startswith("CERTIFIED") and retry["certified_count"] == 4

    holds, labels = vizing.observation(c4, c4)
    assert holds and all(g or h for _, _, g, h in labels)

    row = vizing.dryer_probability(256, p=0.5, epsilon=0.5, trials=50, seed=1)
    assert row["t"] == 12 and 0 <= row["wilson_lo"] <= row["phat"] <= row["wilson_hi"] <= 1

    text = vizing.corollary_sweep(2, 4, trials=20, seed=3, g_cap=8)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 20 and all(r["vizing_holds"] in ("true", "") for r in rows)

    text, summary = vizing.exhaustive_pairs(max_n=3)
    assert summary["pairs"] == 121 and summary["vizing_violations"] == 0
    assert text.startswith("g_id,h_id,gamma_g,gamma_h,gamma_prod,vizing,suen_tarr,condition,engine_outcome")

    try:
        vizing.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self loop accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
