import math
import pathlib

import numpy as np
import pytest

import dsamp

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"
SENSES = {"<=", ">=", "="}


def read_lp(text):
    """Minimal reader for the LP subset the exporter writes."""
    section = None
    objective, rows, binaries = [], [], []
    tokens = {"obj": [], "rows": []}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if line in ("Minimize", "Subject To", "Binary", "End"):
            section = line
            continue
        if section == "Minimize":
            tokens["obj"] += line.split()
        elif section == "Subject To":
            tokens["rows"] += line.split()
        elif section == "Binary":
            binaries.append(line)

    def terms(toks):
        out, sign, coef = {}, 1, None
        for t in toks:
            if t in ("+", "-"):
                sign = 1 if t == "+" else -1
            elif t[0].isdigit():
                coef = int(t)
            else:
                out[t] = out.get(t, 0) + sign * (coef if coef is not None else 1)
                sign, coef = 1, None
        return out

    objective = terms(tokens["obj"][1:])
    current = None
    for t in tokens["rows"]:
        if t.endswith(":") and current is None:
            current = {"name": t[:-1], "toks": []}
        elif current is not None and current.get("sense") is not None:
            current["rhs"] = int(t)
            rows.append(current)
            current = None
        elif t in SENSES:
            current["sense"] = t
        else:
            current["toks"].append(t)
    for r in rows:
        r["terms"] = terms(r.pop("toks"))
    return objective, rows, binaries


def milp_optimum(text, relax=False):
    from scipy.optimize import LinearConstraint, milp

    objective, rows, names = read_lp(text)
    index = {n: i for i, n in enumerate(names)}
    c = np.zeros(len(names))
    for n, v in objective.items():
        c[index[n]] = v
    if not rows:
        return 0.0
    a = np.zeros((len(rows), len(names)))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for i, r in enumerate(rows):
        for n, v in r["terms"].items():
            a[i, index[n]] = v
        if r["sense"] in ("<=", "="):
            hi[i] = r["rhs"]
        if r["sense"] in (">=", "="):
            lo[i] = r["rhs"]
    res = milp(
        c,
        constraints=LinearConstraint(a, lo, hi),
        integrality=np.zeros(len(names)) if relax else np.ones(len(names)),
        bounds=(0, 1),
    )
    assert res.success, res.message
    return res.fun


def rules(k=3, litho=31.0):
    r = dsamp.TechRules()
    r.k_max = k
    r.litho_dist = litho
    return r


def test_k3_values():
    k3 = dsamp.Layout.load(FIXTURES / "k3.txt")
    assert len(k3) == 3
    assert [dsamp.solve(k3, rules(k))["num_colors"] for k in (1, 2, 3)] == [3, 2, 2]
    assert dsamp.solve(k3, rules(3), mode="general")["num_colors"] == 1
    stats = dsamp.graph_stats(k3)
    assert (stats["omega"], stats["delta"], stats["density"]) == (3, 2, 1.0)


def test_edges_match_pairwise_distances():
    layout = dsamp.generate_random_layout(60, 1.2, 3)
    pts = layout.points()
    d = layout.diameter
    want = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dist = math.dist(pts[i], pts[j])
            if max(0.0, dist - d) < 31.0 * (1 - 1e-9):
                want.add((i, j))
    assert {(u, v) for u, v, _ in dsamp.edges(layout)} == want


@pytest.mark.parametrize("model,k", [
    ("pairing", 2), ("naive", 2), ("naive", 3), ("naive-strengthened", 3),
    ("induced-path", 2), ("induced-path", 3), ("general-path", 3),
])
@pytest.mark.parametrize("fixture", ["k3.txt", "p5.txt", "c5.txt", "two_k3.txt"])
def test_milp_matches_native(model, k, fixture):
    layout = dsamp.Layout.load(FIXTURES / fixture)
    r = rules(k)
    mode = "general" if model == "general-path" else "induced"
    native = dsamp.solve(layout, r, mode=mode)["num_colors"]
    lp = dsamp.export_lp(layout, r, model=model, colors=4, mode=mode)
    assert round(milp_optimum(lp)) == native
    point = dsamp.native_assignment(layout, r, model=model, colors=4, mode=mode)
    check = dsamp.check_lp(lp, point)
    assert check["valid"] and check["objective"] == native


def test_milp_on_random_layouts():
    for seed in range(1, 6):
        layout = dsamp.generate_random_layout(9, 0.9, seed)
        r = rules(2)
        native = dsamp.solve(layout, r)["num_colors"]
        for model in ("pairing", "naive", "induced-path"):
            lp = dsamp.export_lp(layout, r, model=model, colors=4)
            assert round(milp_optimum(lp)) == native, (seed, model)


def test_strengthened_relaxation_is_tighter():
    k3 = dsamp.Layout.load(FIXTURES / "k3.txt")
    r = rules(2)
    plain = milp_optimum(dsamp.export_lp(k3, r, model="naive", colors=3), relax=True)
    strong = milp_optimum(
        dsamp.export_lp(k3, r, model="naive-strengthened", colors=3), relax=True)
    assert strong >= plain - 1e-9
    for seed in range(1, 4):
        layout = dsamp.generate_random_layout(10, 1.2, seed)
        a = milp_optimum(dsamp.export_lp(layout, r, model="naive", colors=4), relax=True)
        b = milp_optimum(
            dsamp.export_lp(layout, r, model="naive-strengthened", colors=4), relax=True)
        assert b >= a - 1e-9


def test_general_model_cap():
    layout = dsamp.generate_random_layout(1500, 1.3, 2)
    with pytest.raises(dsamp.ModelTooLarge):
        dsamp.export_lp(layout, rules(3), model="general-path")


def test_bad_arguments():
    with pytest.raises(dsamp.Error):
        dsamp.solve(dsamp.Layout.load(FIXTURES / "k3.txt"), mode="neither")
    r = dsamp.TechRules()
    r.tech = "euv"
    assert r.tech == "euv"
