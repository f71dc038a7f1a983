"""Smoke test for the fsw extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import json
import sys

import fsw


def main() -> int:
    assert fsw.group_order("atlas:A10") == 1814400
    assert "PSL4_3" in fsw.atlas_names()

    r = fsw.fusion_build("atlas:PSL2_7")
    assert r["fsw_schema"] == fsw.SCHEMA_VERSION == 1
    assert r["saturated"] and r["focal_index"] == 1
    json.dumps(r)

    h = fsw.hmain("atlas:A10")
    assert h["failed_hypothesis"] == "Q_cyclic"
    c = fsw.conclusion("atlas:PSL4_3")
    assert (c["k"], c["q1"], c["verdict"]) == (3, 3, "holds")

    assert fsw.l2q_omnibus(9)["holds"]
    assert fsw.maxclass("atlas:PSL3_3", q=3)["case"] == "semidihedral"

    rows = fsw.near_miss_table()
    assert [r["failed_hypothesis"] for r in rows] == ["Q not cyclic", "F not perfect", "Q not cyclic", None]
    print(fsw.render_table())

    try:
        fsw.group_order("atlas:NOPE")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown atlas name accepted")

    for crit in fsw.verify_desk(jobs=2):
        print(f"criterion {crit['id']}: {'PASS' if crit['passed'] else 'FAIL'}  {crit['detail']}")
        assert crit["passed"]
    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
