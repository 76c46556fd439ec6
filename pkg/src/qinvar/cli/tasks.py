"""Task execution: each task maps to one module operation and yields a report section."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebras import QuantumWeylAlgebra, describe, format_nf
from ..automorphisms import DEFAULT_GROUP_CAP, AutGroup, check_auto, group_closure, quotient_scalars
from ..errors import DocumentError, QinvarError
from ..exactmath import (
    RatFun,
    det,
    factored_str,
    format_rational,
    parse_rational,
    series_coeffs,
)
from ..invariants import (
    hdet,
    hdet_rules,
    molien,
    reynolds_dims,
    stanley_check,
    trace_bruteforce,
    trace_closed,
    verdict,
)
from ..errors import UnsupportedLeaf
from ..lie import (
    DiagramAuto,
    diagram_auto_matrix,
    inner_exp,
    lie_algebra,
    standard_diagram_autos,
    transpose_negation_matrix,
    u_verdict,
)
from ..weyl import classify_qweyl_auto, qweyl_verdict, weyl_verdict

DEFAULT_MAX_DEGREE = 8


@dataclass
class Options:
    check_oracle: int | None = None
    max_degree: int = DEFAULT_MAX_DEGREE
    group_cap: int = DEFAULT_GROUP_CAP
    seed: int = 0


@dataclass
class Section:
    index: int
    op: str
    inputs: dict
    results: dict = field(default_factory=dict)
    citations: list = field(default_factory=list)
    flags: list = field(default_factory=list)
    status: str = "ok"
    error: str | None = None
    internal: bool = False

    @property
    def failed_assertion(self) -> bool:
        return any(f["kind"] == "assertion" for f in self.flags)


def fmt(x) -> str:
    return format_rational(x)


def series_block(H: RatFun, depth: int) -> dict:
    return {
        "series": str(H),
        "factored": factored_str(H),
        "coefficients": [fmt(c) for c in series_coeffs(H, depth)],
    }


def _auto_repr(g) -> str:
    alg = g.algebra
    parts = []
    for j, img in enumerate(g.images()):
        parts.append(f"{alg.names[j]} -> {format_nf(alg, img)}")
    return ", ".join(parts)


def _group(doc, name: str, opts: Options):
    alg, gens, close = doc.groups[name]
    if close:
        return alg, group_closure(gens, opts.group_cap, algebra=alg)
    return alg, AutGroup(alg, list(gens))


def _certify(alg, g):
    if not check_auto(alg, g):
        raise QinvarError(f"map [{_auto_repr(g)}] does not preserve the defining relations")


def _hdet_table(table) -> list:
    return [{"element": _auto_repr(g), "hdet": fmt(v)} for g, v in table]


def _compare(section: Section, key: str, claimed, computed, kind: str):
    c = str(claimed)
    try:
        c = fmt(parse_rational(claimed))
    except QinvarError:
        pass
    if c != str(computed):
        if kind == "claim":
            section.flags.append({"kind": "discrepancy", "key": key, "stated": c, "computed": str(computed),
                                  "message": f"stated {key} = {c}, computed {computed}"})
        else:
            section.flags.append({"kind": "assertion", "key": key, "expected": c, "computed": str(computed),
                                  "message": f"expected {key} = {c}, computed {computed}"})


def _flat(results: dict) -> dict:
    out = {}
    for k, v in results.items():
        if isinstance(v, dict):
            for k2, v2 in _flat(v).items():
                out[f"{k}.{k2}"] = v2
        else:
            out[k] = v
    return out


def _apply_checks(section: Section, task: dict):
    flat = _flat(section.results)
    for kind, table in (("claim", task.get("claims", {})), ("expect", task.get("expect", {}))):
        for key, value in table.items():
            if key not in flat:
                section.flags.append({"kind": "assertion", "key": key, "message": f"no result named {key!r}"})
                continue
            _compare(section, key, value, flat[key], kind)


# ------------------------------------------------------------------ ops

def op_trace(doc, task, opts, sec):
    alg = doc.algebras[task["algebra"]]
    g = doc.automorphisms[task["automorphism"]]
    _certify(alg, g)
    tr = trace_closed(alg, g)
    sec.results.update(series_block(tr.value, opts.max_degree))
    sec.results["method"] = tr.method
    if opts.check_oracle is not None:
        _oracle(sec, alg, g, tr.value, opts.check_oracle)


def _oracle(sec, alg, g, H, depth):
    closed = [fmt(c) for c in series_coeffs(H, depth)]
    brute = [fmt(c) for c in trace_bruteforce(alg, g, depth)]
    sec.results["oracle"] = {"depth": depth, "closed_form": closed, "brute_force": brute,
                             "match": closed == brute}
    if closed != brute:
        sec.flags.append({"kind": "assertion", "key": "oracle", "message": "closed form and brute force disagree"})


def op_hdet(doc, task, opts, sec):
    alg = doc.algebras[task["algebra"]]
    g = doc.automorphisms[task["automorphism"]]
    _certify(alg, g)
    res = hdet(alg, g)
    sec.results["hdet"] = fmt(res.value)
    sec.results["det_V"] = fmt(det(g.mat))
    sec.results["gorenstein_data"] = {"d": str(res.d), "l": str(res.l)}
    sec.results["leading"] = {"c": fmt(res.leading[0]), "e": str(res.leading[1])}
    try:
        sec.results["rules"] = fmt(hdet_rules((alg, g)))
    except UnsupportedLeaf as e:
        sec.results["rules"] = f"not applicable ({e})"
    lams = quotient_scalars(g)
    if lams:
        sec.results["normal_element_scalars"] = [fmt(x) for x in lams]
    if opts.check_oracle is not None:
        _oracle(sec, alg, g, trace_closed(alg, g).value, opts.check_oracle)


def op_molien(doc, task, opts, sec):
    alg, G = _group(doc, task["group"], opts)
    for g in G:
        _certify(alg, g)
    H = molien(alg, G)
    sec.results["order"] = str(G.order)
    sec.results.update(series_block(H, opts.max_degree))
    if opts.check_oracle is not None:
        _reynolds(sec, alg, G, H, opts.check_oracle)


def _reynolds(sec, alg, G, H, depth):
    mol = [fmt(c) for c in series_coeffs(H, depth)]
    rey = [str(x) for x in reynolds_dims(alg, G, depth)]
    sec.results["reynolds"] = {"depth": depth, "molien": mol, "invariant_dims": rey, "match": mol == rey}
    if mol != rey:
        sec.flags.append({"kind": "assertion", "key": "reynolds", "message": "Molien series and Reynolds ranks disagree"})


def op_stanley(doc, task, opts, sec):
    if "series" in task:
        H = RatFun.from_json(task["series"])
    elif "group" in task:
        alg, G = _group(doc, task["group"], opts)
        H = molien(alg, G)
    else:
        raise DocumentError("stanley needs 'series' or 'group'")
    st = stanley_check(H)
    sec.results["series"] = str(H)
    sec.results["factored"] = factored_str(H)
    sec.results["symmetric"] = st.symmetric
    if st.symmetric:
        sec.results["sign"] = str(st.sign)
        sec.results["m"] = str(st.m)


def _verdict_section(sec, v):
    sec.results["outcome"] = v.outcome
    sec.citations.append(v.justification)
    if "hdet" in v.evidence:
        sec.results["hdet_table"] = _hdet_table(v.evidence["hdet"])
    if "molien" in v.evidence:
        sec.results["molien"] = {"series": str(v.evidence["molien"]), "factored": factored_str(v.evidence["molien"])}
    if "stanley" in v.evidence:
        st = v.evidence["stanley"]
        sec.results["stanley"] = {"symmetric": st.symmetric}
        if st.symmetric:
            sec.results["stanley"].update({"sign": str(st.sign), "m": str(st.m)})


def op_verdict(doc, task, opts, sec):
    alg, G = _group(doc, task["group"], opts)
    for g in G:
        _certify(alg, g)
    sec.results["order"] = str(G.order)
    v = verdict(alg, G)
    _verdict_section(sec, v)
    if opts.check_oracle is not None:
        _reynolds(sec, alg, G, molien(alg, G), opts.check_oracle)


def op_oracle(doc, task, opts, sec):
    alg = doc.algebras[task["algebra"]]
    g = doc.automorphisms[task["automorphism"]]
    _certify(alg, g)
    depth = task.get("max_degree", opts.max_degree)
    tr = trace_closed(alg, g)
    sec.results["series"] = str(tr.value)
    _oracle(sec, alg, g, tr.value, depth)


def op_weyl(doc, task, opts, sec):
    n = task.get("n")
    if n is None:
        raise DocumentError("weyl task needs 'n'")
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
    gens = []
    for k, spec in enumerate(task.get("generators", [])):
        if not isinstance(spec, dict) or any(key not in names for key in spec):
            raise DocumentError(f"generator images must be keyed by {', '.join(names)}",
                                f"$.tasks[{sec.index}].generators[{k}]")
        gens.append([spec.get(nm, {nm: "1"}) for nm in names])
    v = weyl_verdict(n, gens, close=task.get("close", True), cap=opts.group_cap)
    sec.results["order"] = str(len(v.evidence["hdet"]))
    _verdict_section(sec, v)


def op_qweyl(doc, task, opts, sec):
    if "group" in task:
        alg, gens, close = doc.groups[task["group"]]
    else:
        alg = doc.algebras[task["algebra"]]
        gens, close = [doc.automorphisms[x] for x in task.get("generators", [])], task.get("close", True)
    if not isinstance(alg, QuantumWeylAlgebra):
        raise DocumentError("qweyl task needs a quantum Weyl algebra")
    v = qweyl_verdict(alg, gens, close=close, cap=opts.group_cap)
    _verdict_section(sec, v)
    if v.evidence.get("hdet"):
        shapes = []
        for g, _ in v.evidence["hdet"]:
            s = classify_qweyl_auto(alg, g)
            shapes.append({"alphas": [fmt(a) for a in s.alphas],
                           "off_diagonal": str(sum(len(b) for b in (s.a, s.b, s.c, s.d)))})
        sec.results["shapes"] = shapes


def _tau(type_, rank, tau):
    if isinstance(tau, str):
        named = standard_diagram_autos(type_, rank)
        if tau not in named:
            raise DocumentError(f"no diagram automorphism named {tau!r} for {type_}{rank}")
        tau = named[tau]
    return DiagramAuto.from_one_based(tau)


def op_lie_det(doc, task, opts, sec):
    t, r = task["type"], task["rank"]
    L = lie_algebra(t, r)
    tau = _tau(t, r, task.get("tau", list(range(1, r + 1))))
    M = diagram_auto_matrix(L, tau, seed=opts.seed)
    sec.results["dim"] = str(L.dim)
    sec.results["tau"] = [str(i + 1) for i in tau.tau]
    sec.results["det"] = fmt(det(M))
    sec.results["trace"] = fmt(M.trace())
    if t == "A" and tuple(tau.tau) == tuple(range(r - 1, -1, -1)):
        sec.results["transpose_negation_det"] = fmt(det(transpose_negation_matrix(r)))
        sec.results["exponent_formula"] = f"(-1)^(n(n+3)/2) = {fmt((-1) ** (r * (r + 3) // 2))}"


def op_u_verdict(doc, task, opts, sec):
    t, r = task["type"], task["rank"]
    L = lie_algebra(t, r)
    gens = []
    for k, spec in enumerate(task.get("generators", [])):
        if isinstance(spec, str):
            spec = {"tau": spec}
        if "tau" in spec:
            gens.append(diagram_auto_matrix(L, _tau(t, r, spec["tau"]), seed=opts.seed))
        elif "inner" in spec:
            x = {}
            for label, c in spec["inner"].items():
                if label not in L.labels:
                    raise DocumentError(f"unknown basis element {label!r}", f"$.tasks[{sec.index}].generators[{k}]")
                x[L.labels.index(label)] = parse_rational(c)
            gens.append(inner_exp(L, x))
        else:
            raise DocumentError("generator needs 'tau' or 'inner'", f"$.tasks[{sec.index}].generators[{k}]")
    v = u_verdict(L, gens, close=task.get("close", True), cap=opts.group_cap)
    sec.results["dim"] = str(L.dim)
    sec.results["order"] = str(len(v.evidence["hdet"]))
    sec.results["dets"] = [fmt(d) for _, d in v.evidence["hdet"]]
    sec.results["outcome"] = v.outcome
    sec.citations.append(v.justification)
    if "molien" in v.evidence:
        H = v.evidence["molien"]
        sec.results["molien"] = {"series": str(H), "factored": factored_str(H)}
        st = v.evidence["stanley"]
        sec.results["stanley"] = {"symmetric": st.symmetric}


OPS = {
    "trace": op_trace,
    "hdet": op_hdet,
    "molien": op_molien,
    "stanley": op_stanley,
    "verdict": op_verdict,
    "oracle": op_oracle,
    "weyl": op_weyl,
    "qweyl": op_qweyl,
    "lie-det": op_lie_det,
    "u-verdict": op_u_verdict,
}


def _echo_inputs(task: dict) -> dict:
    return {k: v for k, v in task.items() if k not in ("op", "claims", "expect")}


def run_task(doc, index: int, task: dict, opts: Options) -> Section:
    sec = Section(index, task["op"], _echo_inputs(task))
    if "algebra" in task and task["algebra"] in doc.algebras:
        sec.inputs["algebra_description"] = describe(doc.algebras[task["algebra"]])
    try:
        OPS[task["op"]](doc, task, opts, sec)
    except QinvarError as e:
        from ..errors import InternalInconsistency

        sec.status = "error"
        sec.error = f"{type(e).__name__}: {e}"
        sec.internal = isinstance(e, InternalInconsistency)
        return sec
    _apply_checks(sec, task)
    if task.get("note"):
        sec.inputs["note"] = task["note"]
    return sec
