"""Smoke test for the tropabel_py extension.

Build first:  cargo build -p tropabel-py --features extension-module
Then run:     python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libtropabel_py.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "tropabel_py.so")
            sys.path.insert(0, str(tmp))
            import tropabel_py

            return tropabel_py
    sys.exit("libtropabel_py.so not found; build with --features extension-module")


def main():
    tp = load()
    c4 = tp.Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert c4.genus == 1
    assert [e[0] for e in c4.edges] == ["e0", "e1", "e2", "e3"]

    d = {"a": 2, "b": -1, "c": -1}
    assert tp.quasistable_rep(c4, d, "a") == {"a": 1, "d": -1}
    assert tp.oracle_quasistable_class(c4, d, "a") == {"a": 1, "d": -1}
    assert tp.convert_deg2(c4, "a", "b", "c") == {"a": 1, "d": -1}
    assert tp.is_quasistable(c4, {"a": 1, "d": -1}, "a")
    assert not tp.is_quasistable(c4, d, "a")

    assert len(tp.hemispheres(c4, 2)) == 12
    assert tp.tails(c4, "a", [2]) == [["b"], ["c"], ["d"], ["b", "c"], ["c", "d"], ["b", "c", "d"]]

    b3 = tp.Graph.from_json(json.dumps({"vertices": ["u", "w"], "edges": [{"ends": ["u", "w"]}] * 3}))
    assert tp.blowup_plan(b3, "u") == {"diagonal": True, "centers": [["w"]]}

    c = tp.classify_node_pair(c4, "a", "e0", "e1", [3, 4])
    assert c["verdict"] == "BLOWUP_Z1xZ2" and c["fast_path"] == "TWO_TAIL" and c["z1"] == ["b"]

    q = tp.qs_abel2(c4, "a", '{"edge": "e1", "t": "1/3"}', '{"vertex": "c"}')
    assert sum(p["k"] for p in q["points"]) == 0

    scan = tp.find_witnesses(c4)
    assert scan["pseudo_hyperelliptic"]
    assert any(w["pair1"] == ["a", "b"] and w["pair2"] == ["c", "d"] for w in scan["witnesses"])

    try:
        tp.quasistable_rep(c4, {"z": 1}, "a")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown vertex accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
