"""Command-line front end.

Subcommands
-----------
report   one contraction: dimensions, Cartan matrix, frozen/mutable split,
         the triple (idim, fidim, domdim), and certification status
table    all nonempty vertex subsets of one diagram up to the involution,
         grouped by triple
certify  build the dualizing-module candidate for a contraction, certify it,
         and run the syzygy/orthogonality comparison; JSON certificate out
certify-module
         the same certification for a hand-written algebra (text file) and
         an optional module file
axioms   stable-category axiom checks with witnessing Hom pairs
build    construct an algebra (contraction or text file) and print a summary

Conventions: infinite dimensions print as "inf", undetermined ones as
"?>=BOUND".  Exit codes: 0 success, 1 certification failed, 2 invalid
input, 3 a report contains an undetermined value (values still printed).
All output is deterministic for a fixed (command line, CMPREPROJ_SEED).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

import numpy as np

from .algebra import FDAlgebra, build_quotient, parse_algebra_text
from .cm import (
    DEFAULT_SEED,
    certify_dualizing,
    check_syzygy_cm_equality,
    classify_dynkin,
    dualizing_pipeline,
)
from .linalg import PrimeField, RationalField
from .modules import (
    DEFAULT_BOUND,
    direct_sum,
    dual_of_regular,
    is_selfinjective,
    module_from_arrow_actions,
)
from .preprojective import (
    DynkinSpec,
    contracted_algebra,
    dynkin_spec,
    frozen_split,
    is_impartial,
)
from .stable import (
    axiom_d_report,
    quotient_hom_dim,
    stable_category,
)

_SPEC_RE = re.compile(r"^\s*([ADEade])\s*[_-]?\s*(\d+)\s*$")


class InputError(Exception):
    """Invalid command-line input (exit code 2)."""


def _parse_spec(text: str) -> DynkinSpec:
    m = _SPEC_RE.match(text)
    if not m:
        raise InputError(
            f"cannot parse diagram {text!r}; expected a family letter and a "
            "rank, like A6 or D5")
    try:
        return dynkin_spec(m.group(1).upper(), int(m.group(2)))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_subset(text: str, spec: DynkinSpec) -> tuple[int, ...]:
    raw = [p for chunk in text.split(",") for p in chunk.split()]
    if not raw:
        raise InputError("empty vertex subset")
    try:
        js = sorted({int(p) for p in raw})
    except ValueError:
        raise InputError(f"cannot parse vertex subset {text!r}") from None
    bad = [v for v in js if not 1 <= v <= spec.rank]
    if bad:
        raise InputError(
            f"vertices {bad} out of range for {spec.name} (1..{spec.rank})")
    return tuple(js)


def _field(char: int):
    if char == 0:
        return RationalField()
    try:
        return PrimeField(char)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CMPREPROJ_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(
                f"CMPREPROJ_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def _render_set(vals) -> str:
    return "{" + ", ".join(str(v) for v in sorted(vals)) + "}"


def _pattern(spec: DynkinSpec, js, frozen) -> str:
    marks = []
    for v in range(1, spec.rank + 1):
        if v in frozen:
            marks.append("f")
        elif v in js:
            marks.append("m")
        else:
            marks.append("\N{RING OPERATOR}")
    return " ".join(marks)


def _triple_strs(triple) -> dict:
    idim, fidim, domdim = triple
    return {"idim": str(idim), "fidim": str(fidim), "domdim": str(domdim)}


def _triple_text(triple) -> str:
    return "(" + ", ".join(str(t) for t in triple) + ")"


def _has_undetermined(triple) -> bool:
    return any(r.kind == "undetermined" for r in triple)


def _group_key(triple):
    idim, fidim, domdim = triple

    def val(r, big=10 ** 6):
        if r.kind == "finite":
            return r.value
        return big + (1 if r.kind == "undetermined" else 0)

    lead = 0 if (idim.kind == "finite" and idim.value == 0) else (
        1 if idim.kind == "finite" else 2)
    return (lead, -val(fidim), -val(domdim))


def _orbit_representatives(spec: DynkinSpec) -> list[tuple[int, ...]]:
    """Nonempty subsets in binary order, keeping the lexicographically
    smaller of each involution pair."""
    reps = []
    for mask in range(1, 1 << spec.rank):
        js = tuple(i + 1 for i in range(spec.rank) if mask >> i & 1)
        image = tuple(sorted(spec.involution_image(set(js))))
        if js <= image:
            reps.append(js)
    return reps


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _pretty_json(obj, level: int = 0) -> str:
    """json.dumps with flat lists kept on one line (matrix rows stay
    readable); output round-trips through json.loads unchanged."""
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(k)}: {_pretty_json(v, level + 1)}"
            for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float)) and not isinstance(x, bool)
               for x in obj):
            return json.dumps(obj)
        if all(not isinstance(x, (dict, list)) for x in obj):
            flat = json.dumps(obj)
            if len(flat) + len(pad) <= 78:
                return flat
        body = ",\n".join(f"{pad}  {_pretty_json(x, level + 1)}"
                          for x in obj)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(obj)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def cmd_report(args) -> int:
    spec = _parse_spec(args.spec)
    js = _parse_subset(args.J, spec)
    field = _field(args.char)
    seed = _seed(args)
    alg = contracted_algebra(spec, set(js), field)
    fs = frozen_split(spec, set(js))
    out = classify_dynkin(spec, js, field=field, bound=args.bound, seed=seed,
                          certify=not args.no_certify)
    cert_status = ("skipped" if out.certificate is None
                   else "pass" if out.certificate.passed else "fail")
    loewy = max(b.degree for b in alg.basis) + 1
    cartan = [[int(x) for x in row] for row in alg.cartan_matrix()]
    pattern = _pattern(spec, set(js), fs.frozen)

    if args.format == "json":
        doc = {
            "algebra": {"family": spec.family, "rank": spec.rank,
                        "J": list(js)},
            "pattern": pattern,
            "dim": int(alg.dim),
            "vertex_labels": [int(v) for v in alg.vertex_labels],
            "loewy_length": int(loewy),
            "cartan": cartan,
            "impartial": is_impartial(spec, set(js)),
            "frozen": sorted(fs.frozen),
            "mutable": sorted(fs.mutable),
            "selfinjective": is_selfinjective(alg),
            "triple": _triple_strs(out.computed),
            "predicted": _triple_strs(out.predicted),
            "certificate": cert_status,
            "red_flags": list(out.red_flags),
        }
        _emit(_pretty_json(doc))
    elif args.format == "tsv":
        header = ["family", "rank", "J", "pattern", "dim", "impartial",
                  "frozen", "mutable", "idim", "fidim", "domdim",
                  "certificate"]
        trip = _triple_strs(out.computed)
        row = [spec.family, str(spec.rank), ",".join(str(v) for v in js),
               pattern, str(alg.dim),
               "yes" if is_impartial(spec, set(js)) else "no",
               ",".join(str(v) for v in sorted(fs.frozen)),
               ",".join(str(v) for v in sorted(fs.mutable)),
               trip["idim"], trip["fidim"], trip["domdim"], cert_status]
        _emit("\t".join(header))
        _emit("\t".join(row))
    else:
        _emit(f"contraction of the preprojective algebra of {spec.name} "
              f"at J = {_render_set(js)}")
        _emit(f"pattern: {pattern}")
        _emit(f"dim: {alg.dim}")
        _emit(f"vertices: {alg.n} (labels "
              + ", ".join(str(v) for v in alg.vertex_labels) + ")")
        _emit(f"loewy length: {loewy}")
        _emit("cartan matrix:")
        for row in cartan:
            _emit("  " + " ".join(str(x) for x in row))
        _emit("impartial: "
              + ("yes" if is_impartial(spec, set(js)) else "no"))
        _emit(f"frozen part: {_render_set(fs.frozen)}")
        _emit(f"mutable part: {_render_set(fs.mutable)}")
        _emit("selfinjective: "
              + ("yes" if is_selfinjective(alg) else "no"))
        _emit("triple (idim, fidim, domdim): " + _triple_text(out.computed))
        _emit("predicted: " + _triple_text(out.predicted))
        _emit(f"certificate: {cert_status}")
    for flag in out.red_flags:
        print(f"red flag: {flag}", file=sys.stderr)
    return 3 if _has_undetermined(out.computed) else 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def cmd_table(args) -> int:
    spec = _parse_spec(args.spec if args.rank is None
                       else f"{args.spec}{args.rank}")
    field = _field(args.char)
    seed = _seed(args)
    rows = []
    failures = []
    for js in _orbit_representatives(spec):
        out = classify_dynkin(spec, js, field=field, bound=args.bound,
                              seed=seed, certify=not args.no_certify)
        fs = frozen_split(spec, set(js))
        rows.append((js, _pattern(spec, set(js), fs.frozen), out))
        if out.certificate is not None and not out.certificate.passed:
            failures.append(js)
        for flag in out.red_flags:
            print(f"red flag at J = {_render_set(js)}: {flag}",
                  file=sys.stderr)

    groups: dict[str, list] = {}
    keys: dict[str, tuple] = {}
    for js, pattern, out in rows:
        label = _triple_text(out.computed)
        groups.setdefault(label, []).append((js, pattern, out))
        keys.setdefault(label, _group_key(out.computed))
    ordered = sorted(groups, key=lambda lab: keys[lab])

    cert_note = ("skipped" if args.no_certify else
                 f"{len(rows) - len(failures)} of {len(rows)} pass")

    if args.format == "json":
        doc = {
            "family": spec.family,
            "rank": spec.rank,
            "subsets": "nonempty, up to the diagram involution",
            "groups": [
                {"triple": lab,
                 "entries": [{"J": list(js), "pattern": pat}
                             for js, pat, _ in groups[lab]]}
                for lab in ordered
            ],
            "certificates": cert_note,
        }
        _emit(_pretty_json(doc))
    elif args.format == "tsv":
        _emit("\t".join(["family", "rank", "J", "pattern", "idim", "fidim",
                         "domdim", "certificate"]))
        for lab in ordered:
            for js, pat, out in groups[lab]:
                trip = _triple_strs(out.computed)
                status = ("skipped" if out.certificate is None else
                          "pass" if out.certificate.passed else "fail")
                _emit("\t".join([spec.family, str(spec.rank),
                                 ",".join(str(v) for v in js), pat,
                                 trip["idim"], trip["fidim"],
                                 trip["domdim"], status]))
    else:
        _emit(f"(idim, fidim, domdim) for contractions of the "
              f"preprojective algebra of {spec.name}")
        _emit("nonempty vertex subsets up to the diagram involution")
        for lab in ordered:
            _emit("")
            _emit(lab)
            for js, pat, _ in groups[lab]:
                _emit(f"  {pat}    {_render_set(js)}")
        _emit("")
        _emit(f"certificates: {cert_note}")

    if any(_has_undetermined(out.computed) for _, _, out in rows):
        return 3
    return 0


# ---------------------------------------------------------------------------
# certify (contractions) and certify-module (hand-written algebras)
# ---------------------------------------------------------------------------


def _syzygy_note(alg, w, d: int) -> str:
    rep = check_syzygy_cm_equality(alg, w, d)
    agree = sum(1 for e in rep.entries if e.agree)
    note = (f"syzygy-CM check (d={rep.d}): "
            f"{agree}/{len(rep.entries)} samples agree")
    bad = rep.disagreements
    if bad:
        shown = ", ".join(e.label for e in bad[:4])
        more = "" if len(bad) <= 4 else f" (+{len(bad) - 4} more)"
        note += f"; disagreements: {shown}{more}"
    return note


def _finish_certify(cert, alg, w, head: dict, skip_syzygy: bool) -> int:
    doc = cert.to_json_dict()
    doc["algebra"] = {**head, **doc["algebra"]}
    fid = cert.dims.get("idim_w", "")
    if cert.passed and fid.isdigit() and not skip_syzygy:
        doc["notes"] = list(doc["notes"]) + [_syzygy_note(alg, w, int(fid))]
    _emit(_pretty_json(doc))
    if cert.passed:
        return 0
    failing = [k for k in ("i", "ii", "iii") if cert.conditions.get(k) is False]
    named = ", ".join(failing) if failing else "undetermined"
    print(f"certification failed at condition: {named}", file=sys.stderr)
    return 1


def cmd_certify(args) -> int:
    spec = _parse_spec(args.spec)
    js = _parse_subset(args.J, spec)
    field = _field(args.char)
    seed = _seed(args)
    pipe = dualizing_pipeline(spec, js, field)
    cert = certify_dualizing(pipe.algebra, None, bound=args.bound, seed=seed,
                             summands=pipe.summands)
    head = {"family": spec.family, "rank": spec.rank, "J": list(js)}
    return _finish_certify(cert, pipe.algebra, pipe.module, head,
                           args.skip_syzygy_check)


def _load_algebra_file(path: str, field, cutoff: int) -> FDAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        quiv, rels = parse_algebra_text(text)
        return build_quotient(field, quiv, rels, cutoff)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _matrix_entries(field, rows):
    def conv(x):
        if field.char == 0:
            return Fraction(x)
        if isinstance(x, str):
            raise InputError(
                "fraction entries need --char 0 (exact rationals)")
        return int(x)

    return [[conv(x) for x in row] for row in rows]


def _load_module_file(path: str, alg: FDAlgebra):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read module file {path}: {exc}") from None
    if not isinstance(doc, dict) or "dim_vector" not in doc:
        raise InputError(f"{path}: expected keys dim_vector and arrows")
    dv = tuple(int(x) for x in doc["dim_vector"])
    arrows = doc.get("arrows", {})
    f = alg.field
    mats = {}
    for name, rows in arrows.items():
        entries = _matrix_entries(f, rows)
        if f.char == 0:
            mats[name] = np.array(entries, dtype=object)
        else:
            mats[name] = np.array(entries, dtype=np.int64)
    try:
        return module_from_arrow_actions(alg, dv, mats)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_certify_module(args) -> int:
    field = _field(args.char)
    seed = _seed(args)
    alg = _load_algebra_file(args.algebra_file, field, args.cutoff)
    if args.W is not None:
        w = _load_module_file(args.W, alg)
        w_desc = args.W
    else:
        w = dual_of_regular(alg)
        w_desc = "dual of the regular module"
    cert = certify_dualizing(alg, w, bound=args.bound, seed=seed)
    head = {"source": args.algebra_file, "module": w_desc}
    return _finish_certify(cert, alg, w, head, args.skip_syzygy_check)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def _axiom_c_witnesses(cat, js, frozen):
    iota = cat.suspension
    bad_nu_to_m = None
    bad_m_to_nu = None
    for i in sorted(js):
        for j in sorted(js):
            if (bad_nu_to_m is None
                    and quotient_hom_dim(cat, iota(i), j, frozen) != 0):
                bad_nu_to_m = (iota(i), j)
            if (bad_m_to_nu is None
                    and quotient_hom_dim(cat, i, iota(j), frozen) != 0):
                bad_m_to_nu = (i, iota(j))
    return bad_nu_to_m, bad_m_to_nu


def _axioms_single(cat, spec, js, fmt) -> bool:
    frozen = frozen_split(spec, set(js)).frozen
    c1, c2 = _axiom_c_witnesses(cat, set(js), frozen)
    c_holds = c1 is None and c2 is None
    d_rep = axiom_d_report(cat, set(js))
    d_holds = all(w["nu_to_m"] is not None and w["m_to_nu"] is not None
                  for w in d_rep.values())
    if fmt == "json":
        doc = {
            "algebra": {"family": spec.family, "rank": spec.rank,
                        "J": list(js)},
            "frozen": sorted(frozen),
            "c": {"holds": c_holds,
                  "refuting_nu_to_m": list(c1) if c1 else None,
                  "refuting_m_to_nu": list(c2) if c2 else None},
            "d": {"holds": d_holds,
                  "per_dropped_vertex": {
                      str(x): {"nu_to_m": list(w["nu_to_m"]) if w["nu_to_m"]
                               else None,
                               "m_to_nu": list(w["m_to_nu"]) if w["m_to_nu"]
                               else None}
                      for x, w in sorted(d_rep.items())}},
        }
        _emit(_pretty_json(doc))
    elif fmt == "tsv":
        _emit("\t".join(["family", "rank", "J", "axiom_c", "axiom_d"]))
        _emit("\t".join([spec.family, str(spec.rank),
                         ",".join(str(v) for v in js),
                         "pass" if c_holds else "fail",
                         "pass" if d_holds else "fail"]))
    else:
        _emit(f"stable-category axioms for {spec.name} at "
              f"J = {_render_set(js)} (frozen part {_render_set(frozen)})")
        if c_holds:
            _emit("(c1) no surviving maps nu(M) -> M through the frozen "
                  "part: pass")
            _emit("(c2) no surviving maps M -> nu(M) through the frozen "
                  "part: pass")
        else:
            if c1 is not None:
                _emit(f"(c1) fails: surviving map at pair {c1}")
            else:
                _emit("(c1) no surviving maps nu(M) -> M through the frozen "
                      "part: pass")
            if c2 is not None:
                _emit(f"(c2) fails: surviving map at pair {c2}")
            else:
                _emit("(c2) no surviving maps M -> nu(M) through the frozen "
                      "part: pass")
        _emit("(d) dropping one frozen vertex leaves surviving maps both "
              "ways:")
        for x, wit in sorted(d_rep.items()):
            n2m = wit["nu_to_m"]
            m2n = wit["m_to_nu"]
            parts = []
            parts.append(f"nu(M) -> M at {n2m}" if n2m is not None
                         else "nu(M) -> M: none")
            parts.append(f"M -> nu(M) at {m2n}" if m2n is not None
                         else "M -> nu(M): none")
            status = ("pass" if n2m is not None and m2n is not None
                      else "fail")
            _emit(f"  drop {x}: " + "; ".join(parts) + f" [{status}]")
        _emit("all axioms hold" if c_holds and d_holds
              else "some axioms fail")
    return c_holds and d_holds


def cmd_axioms(args) -> int:
    field = _field(args.char)
    if args.sweep:
        if args.J is not None:
            raise InputError("--sweep enumerates subsets; drop --J")
        lines = []
        all_hold = True
        for spec_text in args.spec:
            spec = _parse_spec(spec_text)
            cat = stable_category(spec, field)
            for js in _orbit_representatives(spec):
                frozen = frozen_split(spec, set(js)).frozen
                c1, c2 = _axiom_c_witnesses(cat, set(js), frozen)
                c_holds = c1 is None and c2 is None
                d_rep = axiom_d_report(cat, set(js))
                d_holds = all(w["nu_to_m"] is not None
                              and w["m_to_nu"] is not None
                              for w in d_rep.values())
                all_hold = all_hold and c_holds and d_holds
                lines.append((spec, js, c_holds, d_holds))
        if args.format == "json":
            doc = {"entries": [
                {"algebra": {"family": s.family, "rank": s.rank,
                             "J": list(js)},
                 "c": c, "d": d} for s, js, c, d in lines],
                "all_hold": all_hold}
            _emit(_pretty_json(doc))
        elif args.format == "tsv":
            _emit("\t".join(["family", "rank", "J", "axiom_c", "axiom_d"]))
            for s, js, c, d in lines:
                _emit("\t".join([s.family, str(s.rank),
                                 ",".join(str(v) for v in js),
                                 "pass" if c else "fail",
                                 "pass" if d else "fail"]))
        else:
            for s, js, c, d in lines:
                _emit(f"{s.name} {_render_set(js)}: "
                      f"(c) {'pass' if c else 'fail'}, "
                      f"(d) {'pass' if d else 'fail'}")
            _emit(f"all axioms hold on {len(lines)} subsets" if all_hold
                  else "some axioms fail")
        return 0
    if len(args.spec) != 1 or args.J is None:
        raise InputError("give one diagram and --J, or use --sweep")
    spec = _parse_spec(args.spec[0])
    js = _parse_subset(args.J, spec)
    cat = stable_category(spec, field)
    _axioms_single(cat, spec, js, args.format)
    return 0


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


def _summarize_algebra(alg: FDAlgebra, title: str, fmt: str) -> None:
    degrees: dict[int, int] = {}
    for b in alg.basis:
        degrees[b.degree] = degrees.get(b.degree, 0) + 1
    by_degree = [degrees.get(d, 0) for d in range(max(degrees) + 1)]
    cartan = [[int(x) for x in row] for row in alg.cartan_matrix()]
    selfinj = is_selfinjective(alg)
    if fmt == "json":
        doc = {
            "algebra": title,
            "dim": int(alg.dim),
            "vertices": int(alg.n),
            "vertex_labels": [int(v) for v in alg.vertex_labels],
            "basis_by_degree": by_degree,
            "cartan": cartan,
            "selfinjective": selfinj,
        }
        _emit(_pretty_json(doc))
    elif fmt == "tsv":
        _emit("\t".join(["algebra", "dim", "vertices", "basis_by_degree",
                         "selfinjective"]))
        _emit("\t".join([title, str(alg.dim), str(alg.n),
                         ",".join(str(c) for c in by_degree),
                         "yes" if selfinj else "no"]))
    else:
        _emit(f"algebra: {title}")
        _emit(f"dim: {alg.dim}")
        _emit(f"vertices: {alg.n} (labels "
              + ", ".join(str(v) for v in alg.vertex_labels) + ")")
        _emit("basis by degree: "
              + " ".join(str(c) for c in by_degree))
        _emit("cartan matrix:")
        for row in cartan:
            _emit("  " + " ".join(str(x) for x in row))
        _emit("selfinjective: " + ("yes" if selfinj else "no"))


def cmd_build(args) -> int:
    field = _field(args.char)
    if args.algebra_file is not None:
        if args.spec is not None or args.J is not None:
            raise InputError("give either a diagram or --algebra-file")
        alg = _load_algebra_file(args.algebra_file, field, args.cutoff)
        _summarize_algebra(
            alg, f"{args.algebra_file} (degree cutoff {args.cutoff})",
            args.format)
        return 0
    if args.spec is None:
        raise InputError("give a diagram (like A6) or --algebra-file")
    spec = _parse_spec(args.spec)
    if args.J is None:
        js = tuple(range(1, spec.rank + 1))
    else:
        js = _parse_subset(args.J, spec)
    alg = contracted_algebra(spec, set(js), field)
    if len(js) == spec.rank:
        title = f"preprojective algebra of {spec.name}"
    else:
        title = (f"contraction of the preprojective algebra of {spec.name} "
                 f"at J = {_render_set(js)}")
    _summarize_algebra(alg, title, args.format)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_common(sub, bound=True):
    sub.add_argument("--char", type=int, default=101,
                     help="field characteristic; 0 means exact rationals "
                          "(default 101)")
    if bound:
        sub.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                         help="resolution depth before reporting a "
                              "dimension as undetermined (default 30)")
    sub.add_argument("--seed", type=int, default=None,
                     help="RNG seed; overrides CMPREPROJ_SEED "
                          "(default 1729)")
    sub.add_argument("--format", choices=("text", "json", "tsv"),
                     default="text", help="output format (default text)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cmpreproj",
        description="contracted preprojective algebras: homological "
                    "dimensions, dualizing modules, and Cohen-Macaulay "
                    "certification")
    subs = ap.add_subparsers(dest="command", required=True)

    rep = subs.add_parser("report", help="one contraction in detail")
    rep.add_argument("spec", help="Dynkin diagram, like A6 or E7")
    rep.add_argument("--J", required=True,
                     help="comma-separated chosen vertices, like 1,2,3,6")
    rep.add_argument("--no-certify", action="store_true",
                     help="skip certification (finitistic dimension is then "
                          "computed from the uncertified candidate)")
    _add_common(rep)
    rep.set_defaults(func=cmd_report)

    tab = subs.add_parser("table",
                          help="all subsets of one diagram, grouped by "
                               "triple")
    tab.add_argument("spec", help="diagram, like A4 (or family letter with "
                                  "the rank as a second argument)")
    tab.add_argument("rank", nargs="?", type=int, default=None,
                     help="rank when the first argument is only a family "
                          "letter")
    tab.add_argument("--no-certify", action="store_true",
                     help="skip certification for speed")
    _add_common(tab)
    tab.set_defaults(func=cmd_table)

    cer = subs.add_parser("certify",
                          help="certify the dualizing module of a "
                               "contraction (JSON out)")
    cer.add_argument("spec", help="Dynkin diagram, like A6")
    cer.add_argument("--J", required=True, help="chosen vertices")
    cer.add_argument("--skip-syzygy-check", action="store_true",
                     help="omit the syzygy-CM comparison note")
    _add_common(cer)
    cer.set_defaults(func=cmd_certify)

    cem = subs.add_parser("certify-module",
                          help="certify a hand-written algebra and module "
                               "(JSON out)")
    cem.add_argument("algebra_file",
                     help="text presentation: vertices, arrows, relations")
    cem.add_argument("--W", default=None,
                     help="module file (JSON with dim_vector and arrows); "
                          "defaults to the dual of the regular module")
    cem.add_argument("--cutoff", type=int, default=16,
                     help="degree cutoff for the quotient construction "
                          "(default 16)")
    cem.add_argument("--skip-syzygy-check", action="store_true",
                     help="omit the syzygy-CM comparison note")
    _add_common(cem)
    cem.set_defaults(func=cmd_certify_module)

    axs = subs.add_parser("axioms",
                          help="stable-category axiom checks with "
                               "witnesses")
    axs.add_argument("spec", nargs="+",
                     help="one diagram with --J, or several with --sweep")
    axs.add_argument("--J", default=None, help="chosen vertices")
    axs.add_argument("--sweep", action="store_true",
                     help="run every nonempty subset up to the involution")
    _add_common(axs, bound=False)
    axs.set_defaults(func=cmd_axioms)

    bld = subs.add_parser("build",
                          help="construct an algebra and print a summary")
    bld.add_argument("spec", nargs="?", default=None,
                     help="Dynkin diagram, like A6")
    bld.add_argument("--J", default=None,
                     help="chosen vertices (default: all of them)")
    bld.add_argument("--algebra-file", default=None,
                     help="text presentation instead of a diagram")
    bld.add_argument("--cutoff", type=int, default=16,
                     help="degree cutoff for --algebra-file (default 16)")
    _add_common(bld, bound=False)
    bld.set_defaults(func=cmd_build)

    return ap


def main(argv=None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
