"""Record formats: exact, language-neutral JSON for algebras and covers.

Scalars serialize as strings "p/q" (or "p"); labels are strings, or
nested lists for the tuple labels of tensor/product algebras.  Parse
errors name the file and the offending field.  Reports are plain JSON
with sorted keys and no floats anywhere, so a fixed seed reproduces a
byte-identical file.
"""

import json
from fractions import Fraction

from .cochain import Cochain, GradedSpace
from .dgla import ArtinAlgebra, DgLieAlgebra, DgLieMap, identity_map
from .linalg import ZERO


class ParseError(ValueError):
    def __init__(self, path, field, message):
        self.path = path
        self.field = field
        super().__init__(f"{path}: field {field!r}: {message}")


def scalar_to_str(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s, path="<record>", field="coeff"):
    if isinstance(s, float):
        raise ParseError(path, field,
                         f"floats are not exact; write {s!r} as \"p/q\"")
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(path, field, f"bad rational {s!r}: {exc}")


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


# ---------------------------------------------------------------------------
# dg Lie algebras


def algebra_to_record(g):
    basis = []
    for gi in range(g.total_dim()):
        basis.append({"label": label_to_json(g.space.label_of(gi)),
                      "degree": g.degree_of(gi)})
    differential = []
    for gi in sorted(g.d_table):
        for gj, c in sorted(g.d_table[gi].items()):
            differential.append({"from": label_to_json(g.space.label_of(gi)),
                                 "to": label_to_json(g.space.label_of(gj)),
                                 "coeff": scalar_to_str(c)})
    brackets = []
    for (i, j) in sorted(g.table):
        if i > j:
            continue   # the flip is determined by antisymmetry
        val = g.table[(i, j)]
        brackets.append({
            "left": label_to_json(g.space.label_of(i)),
            "right": label_to_json(g.space.label_of(j)),
            "value": [{"basis": label_to_json(g.space.label_of(k)),
                       "coeff": scalar_to_str(c)}
                      for k, c in sorted(val.items())]})
    return {"type": "dg_lie_algebra", "name": g.name,
            "basis": basis, "differential": differential,
            "brackets": brackets}


def algebra_from_record(rec, path="<record>", validate=True):
    if rec.get("type") != "dg_lie_algebra":
        raise ParseError(path, "type", "expected dg_lie_algebra")
    degrees = {}
    for entry in rec.get("basis", []):
        lab = label_from_json(entry["label"])
        degrees.setdefault(entry["degree"], []).append(lab)
    top = max(list(degrees) + [8]) + 1
    space = GradedSpace(degrees, top_degree=top)
    index = {}
    for gi in range(space.total_dim()):
        index[space.label_of(gi)] = gi

    def look(lab, field):
        lab = label_from_json(lab)
        if lab not in index:
            raise ParseError(path, field, f"unknown basis label {lab!r}")
        return index[lab]

    dmats = {}
    entries = {}
    for entry in rec.get("differential", []):
        src = look(entry["from"], "differential.from")
        tgt = look(entry["to"], "differential.to")
        if space.degree_of(tgt) != space.degree_of(src) + 1:
            raise ParseError(path, "differential",
                             "differential must raise degree by 1")
        c = scalar_from_str(entry["coeff"], path, "differential.coeff")
        entries.setdefault(src, {})[tgt] = \
            entries.get(src, {}).get(tgt, ZERO) + c
    for n in space.nonzero_degrees():
        rows = space.dim(n + 1)
        cols = space.dim(n)
        if rows == 0 or cols == 0:
            continue
        M = [[ZERO] * cols for _ in range(rows)]
        nonzero = False
        tidx = {g: r for r, g in enumerate(space.degree_indices(n + 1))}
        for col, src in enumerate(space.degree_indices(n)):
            for tgt, c in entries.get(src, {}).items():
                if space.degree_of(tgt) != n + 1:
                    raise ParseError(path, "differential",
                                     "differential must raise degree by 1")
                M[tidx[tgt]][col] = c
                nonzero = True
        if nonzero:
            dmats[n] = M
    try:
        cochain = Cochain(space, dmats)
    except ValueError as exc:
        raise ParseError(path, "differential", str(exc))
    brackets = {}
    for entry in rec.get("brackets", []):
        i = look(entry["left"], "brackets.left")
        j = look(entry["right"], "brackets.right")
        val = {}
        for term in entry.get("value", []):
            k = look(term["basis"], "brackets.value.basis")
            val[k] = val.get(k, ZERO) + scalar_from_str(
                term["coeff"], path, "brackets.value.coeff")
        brackets[(i, j)] = val
    try:
        return DgLieAlgebra(cochain, brackets, validate=validate,
                            name=rec.get("name"))
    except ValueError as exc:
        raise ParseError(path, "brackets", str(exc))


# ---------------------------------------------------------------------------
# artinian algebras


def artin_to_record(a):
    ideal = a.maximal_ideal()
    products = []
    for (i, j) in sorted(ideal.products):
        if i > j:
            continue
        val = ideal.products[(i, j)]
        products.append({
            "left": ideal.labels[i], "right": ideal.labels[j],
            "value": [{"basis": ideal.labels[k],
                       "coeff": scalar_to_str(c)}
                      for k, c in sorted(val.items())]})
    return {"type": "artin_algebra", "name": a.name,
            "ideal_basis": list(ideal.labels), "products": products}


def artin_from_record(rec, path="<record>"):
    if rec.get("type") != "artin_algebra":
        raise ParseError(path, "type", "expected artin_algebra")
    labels = list(rec.get("ideal_basis", []))
    index = {lab: i for i, lab in enumerate(labels)}
    products = {}
    for entry in rec.get("products", []):
        for side in ("left", "right"):
            if entry[side] not in index:
                raise ParseError(path, f"products.{side}",
                                 f"unknown label {entry[side]!r}")
        i, j = index[entry["left"]], index[entry["right"]]
        val = {}
        for term in entry.get("value", []):
            if term["basis"] not in index:
                raise ParseError(path, "products.value.basis",
                                 f"unknown label {term['basis']!r}")
            val[index[term["basis"]]] = scalar_from_str(
                term["coeff"], path, "products.value.coeff")
        products[(i, j)] = val
    try:
        return ArtinAlgebra(labels, products, name=rec.get("name"))
    except ValueError as exc:
        raise ParseError(path, "products", str(exc))


# ---------------------------------------------------------------------------
# covers and descent instances


def cover_to_record(cover):
    from .cech import CoverSpec
    assert isinstance(cover, CoverSpec)
    named = {}
    names = {}
    for J, g in sorted(cover.sections.items(), key=lambda kv: sorted(kv[0])):
        if id(g) not in names:
            nm = g.name or f"sec{len(named)}"
            while nm in named:
                nm += "'"
            names[id(g)] = nm
            named[nm] = g
    intersections = []
    for J, g in sorted(cover.sections.items(), key=lambda kv: sorted(kv[0])):
        intersections.append({"indices": sorted(J),
                              "algebra": names[id(g)]})
    restrictions = []
    for (J, J2), f in sorted(cover.restrictions.items(),
                             key=lambda kv: (sorted(kv[0][0]),
                                             sorted(kv[0][1]))):
        matrices = {}
        ident = True
        for n in f.source.space.nonzero_degrees():
            M = f.cmap.block(n)
            matrices[str(n)] = [[scalar_to_str(x) for x in row]
                                for row in M]
            k = f.source.space.dim(n)
            if M != [[Fraction(r == c) for c in range(k)]
                     for r in range(k)]:
                ident = False
        entry = {"from": sorted(J), "to": sorted(J2)}
        if ident and f.source is f.target:
            entry["matrix"] = "identity"
        else:
            entry["matrix"] = matrices
        restrictions.append(entry)
    return {"type": "cover", "name": cover.name,
            "opens": cover.num_opens,
            "sections": {nm: algebra_to_record(g)
                         for nm, g in named.items()},
            "intersections": intersections,
            "restrictions": restrictions}


def cover_from_record(rec, path="<record>", validate=True):
    from .cech import CoverSpec
    if rec.get("type") != "cover":
        raise ParseError(path, "type", "expected cover")
    named = {nm: algebra_from_record(sub, path=f"{path}:sections.{nm}",
                                     validate=validate)
             for nm, sub in rec.get("sections", {}).items()}
    sections = {}
    for entry in rec.get("intersections", []):
        nm = entry["algebra"]
        if nm not in named:
            raise ParseError(path, "intersections.algebra",
                             f"unknown section algebra {nm!r}")
        sections[frozenset(entry["indices"])] = named[nm]
    restrictions = {}
    for entry in rec.get("restrictions", []):
        J = frozenset(entry["from"])
        J2 = frozenset(entry["to"])
        if J not in sections or J2 not in sections:
            raise ParseError(path, "restrictions",
                             f"restriction between unknown intersections "
                             f"{sorted(J)} -> {sorted(J2)}")
        src, tgt = sections[J], sections[J2]
        if entry.get("matrix") == "identity":
            if src is not tgt:
                raise ParseError(path, "restrictions.matrix",
                                 "identity shorthand needs equal section "
                                 "algebras")
            restrictions[(J, J2)] = identity_map(src)
            continue
        blocks = {}
        for nstr, M in entry.get("matrix", {}).items():
            blocks[int(nstr)] = [[scalar_from_str(x, path,
                                                  "restrictions.matrix")
                                  for x in row] for row in M]
        try:
            restrictions[(J, J2)] = DgLieMap(src, tgt, blocks,
                                             validate=validate)
        except ValueError as exc:
            raise ParseError(path, "restrictions.matrix", str(exc))
    try:
        return CoverSpec(rec.get("opens", 0), sections, restrictions,
                         name=rec.get("name"))
    except ValueError as exc:
        raise ParseError(path, "intersections", str(exc))


def _map_to_matrices(f):
    out = {}
    for n in f.source.space.nonzero_degrees():
        M = f.cmap.block(n)
        if any(any(x for x in row) for row in M):
            out[str(n)] = [[scalar_to_str(x) for x in row] for row in M]
    return out


def _map_from_matrices(src, tgt, matrices, path, field, validate=True):
    blocks = {}
    for nstr, M in matrices.items():
        blocks[int(nstr)] = [[scalar_from_str(x, path, field) for x in row]
                             for row in M]
    try:
        return DgLieMap(src, tgt, blocks, validate=validate)
    except ValueError as exc:
        raise ParseError(path, field, str(exc))


def cosimplicial_to_record(cc):
    return {
        "type": "cosimplicial_dg_lie",
        "name": cc.name,
        "levels": [algebra_to_record(g) for g in cc.levels],
        "cofaces": [[_map_to_matrices(f) for f in maps]
                    for maps in cc.cofaces],
        "codegeneracies": [[_map_to_matrices(f) for f in maps]
                           for maps in cc.codegens],
    }


def cosimplicial_from_record(rec, path="<record>", validate=True):
    from .tot import CosimplicialDgLie
    if rec.get("type") != "cosimplicial_dg_lie":
        raise ParseError(path, "type", "expected cosimplicial_dg_lie")
    levels = [algebra_from_record(sub, path=f"{path}:levels[{q}]",
                                  validate=validate)
              for q, sub in enumerate(rec.get("levels", []))]
    cofaces = []
    for q, maps in enumerate(rec.get("cofaces", [])):
        cofaces.append([
            _map_from_matrices(levels[q], levels[q + 1], m, path,
                               f"cofaces[{q}][{i}]", validate=validate)
            for i, m in enumerate(maps)])
    codegens = []
    for q, maps in enumerate(rec.get("codegeneracies", [])):
        codegens.append([
            _map_from_matrices(levels[q + 1], levels[q], m, path,
                               f"codegeneracies[{q}][{i}]",
                               validate=validate)
            for i, m in enumerate(maps)])
    try:
        return CosimplicialDgLie(levels, cofaces, codegens,
                                 validate=validate, name=rec.get("name"))
    except ValueError as exc:
        raise ParseError(path, "cosimplicial structure", str(exc))


def instance_to_record(name, cover, base):
    return {"type": "descent_instance", "name": name,
            "cover": cover_to_record(cover),
            "base": artin_to_record(base)}


def instance_from_record(rec, path="<record>", validate=True):
    if rec.get("type") != "descent_instance":
        raise ParseError(path, "type", "expected descent_instance")
    cover = cover_from_record(rec["cover"], path=f"{path}:cover",
                              validate=validate)
    base = artin_from_record(rec["base"], path=f"{path}:base")
    return rec.get("name"), cover, base


# ---------------------------------------------------------------------------
# elements


def element_to_record(g, el):
    return [{"basis": label_to_json(g.space.label_of(k)),
             "coeff": scalar_to_str(v)} for k, v in sorted(el.items())]


def element_from_record(g, rec, path="<record>"):
    out = {}
    for term in rec:
        lab = label_from_json(term["basis"])
        try:
            gi = next(i for i in range(g.total_dim())
                      if g.space.label_of(i) == lab)
        except StopIteration:
            raise ParseError(path, "element.basis",
                             f"unknown basis label {lab!r}")
        out[gi] = scalar_from_str(term["coeff"], path, "element.coeff")
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# files


def load_record(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(path, "-", "file does not exist")
    except json.JSONDecodeError as exc:
        raise ParseError(path, f"line {exc.lineno}, column {exc.colno}",
                         exc.msg)


def dump_record(rec, path=None):
    text = json.dumps(rec, sort_keys=True, indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_any(path, validate=True):
    """Dispatch a record file on its type field."""
    rec = load_record(path)
    kind = rec.get("type")
    if kind == "dg_lie_algebra":
        return kind, algebra_from_record(rec, path, validate=validate)
    if kind == "artin_algebra":
        return kind, artin_from_record(rec, path)
    if kind == "cover":
        return kind, cover_from_record(rec, path, validate=validate)
    if kind == "descent_instance":
        return kind, instance_from_record(rec, path, validate=validate)
    if kind == "cosimplicial_dg_lie":
        return kind, cosimplicial_from_record(rec, path, validate=validate)
    raise ParseError(path, "type", f"unknown record type {kind!r}")
