#!/usr/bin/env python3
"""Regenerates the bundled complexes and maps under fixtures/."""
import itertools
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def complex_json(name, vertices, maximal, subcomplexes=None):
    order = {v: i for i, v in enumerate(vertices)}
    key = lambda s: (len(s), [order[v] for v in s])
    simp = sorted((sorted(s, key=order.get) for s in closure_labels(maximal, order)), key=key)
    subs = {}
    for sub, mx in (subcomplexes or {}).items():
        subs[sub] = sorted((sorted(s, key=order.get) for s in closure_labels(mx, order)), key=key)
    return {"name": name, "vertices": vertices, "simplices": simp, "subcomplexes": subs}


def closure_labels(maximal, order):
    out = set()
    for s in maximal:
        s = tuple(sorted(s, key=order.get))
        for r in range(1, len(s) + 1):
            out.update(itertools.combinations(s, r))
    return out


def circle(n, name):
    v = [f"v{i}" for i in range(n)]
    return complex_json(name, v, [(v[i], v[(i + 1) % n]) for i in range(n)])


def torus():
    lab = lambda i, j: f"t{i % 3}{j % 3}"
    v = [lab(i, j) for i in range(3) for j in range(3)]
    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((lab(i, j), lab(i + 1, j), lab(i + 1, j + 1)))
            tris.append((lab(i, j), lab(i, j + 1), lab(i + 1, j + 1)))
    diag = [(lab(i, i), lab(i + 1, i + 1)) for i in range(3)]
    return complex_json("torus", v, tris, {"diagonal": diag})


def dumps(obj, indent=0):
    # lists of scalars stay on one line so simplices read as [a, b, c]
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + "  " + dumps(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n")


def main():
    c = ROOT / "complexes"
    write(c / "point.json", complex_json("point", ["p"], [("p",)]))
    write(c / "circle3.json", circle(3, "circle3"))
    write(c / "circle6.json", circle(6, "circle6"))
    write(c / "circle9.json", circle(9, "circle9"))
    s2 = ["a", "b", "c", "d"]
    write(c / "sphere2.json", complex_json("sphere2", s2, itertools.combinations(s2, 3)))
    write(c / "disk.json", complex_json("disk", ["a", "b", "c"], [("a", "b", "c")],
                                        {"boundary": [("a", "b"), ("b", "c"), ("a", "c")]}))
    write(c / "torus.json", torus())
    # six-vertex projective plane; H^1 and H^2 over F2 are F2, over Q both vanish
    rp2 = [f"r{i}" for i in range(1, 7)]
    tris = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
    write(c / "rp2.json", complex_json("rp2", rp2, [tuple("r" + ch for ch in t) for t in tris]))

    m = ROOT / "maps"
    for p in (1, 2, 3):
        src = f"circle{3 * p}"
        img = {f"v{i}": f"v{i % 3}" for i in range(3 * p)}
        write(m / f"degree{p}.json", {"map": {"name": f"degree{p}", "source": src, "target": "circle3",
                                              "source_pair": None, "target_pair": None, "vertex_image": img}})
    write(m / "constant_circle.json", {"map": {"name": "constant_circle", "source": "circle3", "target": "circle3",
                                               "source_pair": None, "target_pair": None,
                                               "vertex_image": {f"v{i}": "v0" for i in range(3)}}})
    write(m / "circle_to_point.json", {"map": {"name": "circle_to_point", "source": "circle6", "target": "point",
                                               "source_pair": None, "target_pair": None,
                                               "vertex_image": {f"v{i}": "p" for i in range(6)}}})
    lab = lambda i, j: f"t{i % 3}{j % 3}"
    write(m / "torus_projection.json", {"map": {"name": "torus_projection", "source": "torus", "target": "circle3",
                                                "source_pair": None, "target_pair": None,
                                                "vertex_image": {lab(i, j): f"v{i}" for i in range(3)
                                                                 for j in range(3)}}})
    write(m / "diagonal_loop.json", {"map": {"name": "diagonal_loop", "source": "circle3", "target": "torus",
                                             "source_pair": None, "target_pair": None,
                                             "vertex_image": {f"v{i}": lab(i, i) for i in range(3)}}})


if __name__ == "__main__":
    main()
