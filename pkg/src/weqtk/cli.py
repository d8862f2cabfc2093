"""Batch front door: JSON jobs in, replayable certificates out.

One self-describing format ("weqtk/1") with a "kind" discriminator per
payload.  Matrices are row-major; prime-field entries are integers and
rational entries are [numerator, denominator] pairs.  Certificates echo
the command, budgets and input, carry the verdict and witness data, and
are fingerprinted; replay re-runs the job from the echoed input and
demands bit-identical verdict and witness, so any corrupted byte fails.

Exit codes: 0 verified/true/computed, 1 refuted, 2 unknown at the bound,
3 parse error, 4 unsupported backend, 5 search budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import chains, equivalence, puremono, subdivision
from .endofunctor import free_algebraic_injective
from .errors import (ParseError, SearchBudgetExceeded, StageBoundReached,
                     UnsupportedBackend, VersionMismatch, WeqtkError)
from .fincat import FinFunctor, build_category
from .finset import FINSET, FinSetObj, finset_map
from .lifting import Status, has_rlp
from .linalg import QQ, FieldSpec
from .simplicial import (FinSimplicialSet, SimplicialMap, pi0, pi0_map,
                         pi0_surjective)

FORMAT = "weqtk/1"
TOOL = "weqtk 0.1.0"

DEFAULT_BUDGETS = {
    "k_max": 2,
    "m_max": 0,
    "n_max": 0,
    "stage_bound": 8,
    "dim_bound": 1,
    "field": "2",
    "search_budget": 2000000,
    "size_bound": 2,
}


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def fingerprint(obj):
    return hashlib.sha256(canonical(obj).encode("utf-8")).hexdigest()


# Payload codecs.

def encode_finset_map(f):
    return {"kind": "finset-map", "source": f.source.size,
            "target": f.target.size, "table": list(f.table)}


def decode_finset_map(obj):
    try:
        return finset_map(obj["source"], obj["target"], obj["table"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad finset-map payload: {exc}")


def encode_fincategory(c):
    nonid = [m for m in range(c.n_morphisms()) if m not in c.identity_of]
    comp = []
    for g in nonid:
        for f in nonid:
            if c.comp[g][f] >= 0:
                comp.append([c.mor_names[g], c.mor_names[f],
                             c.mor_names[c.comp[g][f]]])
    return {"objects": list(c.objects),
            "morphisms": [[c.mor_names[m], c.objects[c.mor_source[m]],
                           c.objects[c.mor_target[m]]] for m in nonid],
            "composition": comp}


def decode_fincategory(obj):
    try:
        comp = {(g, f): h for g, f, h in obj.get("composition", [])}
        return build_category(obj["objects"],
                              [tuple(m) for m in obj["morphisms"]], comp)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad fin-category payload: {exc}")


def encode_finfunctor(fun):
    c, d = fun.source, fun.target
    return {"kind": "fin-functor",
            "source": encode_fincategory(c),
            "target": encode_fincategory(d),
            "object_map": {c.objects[a]: d.objects[fun.object_map[a]]
                           for a in range(c.n_objects())},
            "morphism_map": {c.mor_names[m]: d.mor_names[fun.morphism_map[m]]
                             for m in range(c.n_morphisms())
                             if m not in c.identity_of}}


def decode_finfunctor(obj):
    try:
        c = decode_fincategory(obj["source"])
        d = decode_fincategory(obj["target"])
        obj_idx = {name: i for i, name in enumerate(d.objects)}
        mor_idx = {name: i for i, name in enumerate(d.mor_names)}
        omap = tuple(obj_idx[obj["object_map"][name]] for name in c.objects)
        mmap = []
        for m in range(c.n_morphisms()):
            if m in c.identity_of:
                mmap.append(d.identity_of[omap[c.mor_source[m]]])
            else:
                mmap.append(mor_idx[obj["morphism_map"][c.mor_names[m]]])
        return FinFunctor(c, d, omap, tuple(mmap)).validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad fin-functor payload: {exc}")


def _field_of(name):
    if name == "rational":
        return QQ
    try:
        return FieldSpec(int(name))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad field {name!r}: {exc}")


def _encode_entry(field_spec, v):
    if field_spec.is_prime:
        return int(v)
    fr = Fraction(v)
    return [fr.numerator, fr.denominator]


def _decode_entry(field_spec, v):
    if field_spec.is_prime:
        return int(v) % field_spec.p
    if isinstance(v, list):
        return Fraction(v[0], v[1])
    return Fraction(v)


def encode_complex(x):
    return {"field": "rational" if not x.field.is_prime else str(x.field.p),
            "lo": x.lo,
            "ranks": list(x.ranks),
            "differentials": [[[ _encode_entry(x.field, v) for v in row]
                               for row in m] for m in x.diffs]}


def decode_complex(obj):
    try:
        fs = _field_of(obj["field"])
        diffs = [tuple(tuple(_decode_entry(fs, v) for v in row) for row in m)
                 for m in obj["differentials"]]
        return chains.make_complex(fs, obj["lo"], obj["ranks"], diffs)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad complex payload: {exc}")


def encode_chain_map(f):
    return {"kind": "chain-map",
            "source": encode_complex(f.source),
            "target": encode_complex(f.target),
            "components": {str(n): [[_encode_entry(f.source.field, v)
                                     for v in row] for row in f.comp(n)]
                           for n in f.source.degrees()}}


def decode_chain_map(obj):
    try:
        x = decode_complex(obj["source"])
        y = decode_complex(obj["target"])
        comps = {int(n): tuple(tuple(_decode_entry(x.field, v) for v in row)
                               for row in m)
                 for n, m in obj["components"].items()}
        return chains.make_chain_map(x, y, comps)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad chain-map payload: {exc}")


def encode_sset(x):
    return {"kind": "simplicial-set",
            "counts": list(x.counts),
            "faces": [[[[m, j, list(s)] for m, j, s in entry]
                       for entry in level] for level in x.faces]}


def decode_sset(obj):
    try:
        faces = tuple(tuple(tuple((m, j, tuple(s)) for m, j, s in entry)
                            for entry in level)
                      for level in obj["faces"])
        return FinSimplicialSet(tuple(obj["counts"]), faces).validate()
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad simplicial-set payload: {exc}")


def _encode_images(images):
    return [[[m, j, list(s)] for m, j, s in level] for level in images]


def encode_simplicial_map(f):
    return {"kind": "simplicial-map",
            "source": encode_sset(f.source),
            "target": encode_sset(f.target),
            "images": _encode_images(f.images)}


def decode_simplicial_map(obj):
    try:
        src = decode_sset(obj["source"])
        tgt = decode_sset(obj["target"])
        images = tuple(tuple((m, j, tuple(s)) for m, j, s in level)
                       for level in obj["images"])
        return SimplicialMap(src, tgt, images).validate()
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad simplicial-map payload: {exc}")


def decode_graph(obj):
    from .simplicial import ReflexiveGraph
    try:
        return ReflexiveGraph(obj["vertices"],
                              tuple(tuple(e) for e in obj["edges"])).validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph payload: {exc}")


# Command implementations: each returns (verdict string, witness object).

_STATUS_NAME = {
    Status.VERIFIED: "verified",
    Status.REFUTED_EXHAUSTIVE: "refuted",
    Status.UNKNOWN_AT_BOUND: "unknown-at-bound",
}


def _cmd_check_rlp(payload, budgets):
    j = decode_finset_map(payload["j"])
    g = decode_finset_map(payload["g"])
    verdict = has_rlp(FINSET, j, g)
    if verdict.verified:
        witness = {"fillers": [{"r": list(r.table), "s": list(s.table),
                                "filler": list(l.table)}
                               for r, s, l in verdict.witness]}
    else:
        r, s = verdict.counterexample
        witness = {"counterexample": {"r": list(r.table), "s": list(s.table)}}
    return _STATUS_NAME[verdict.status], witness


def _cmd_check_equivalence(payload, budgets):
    fun = decode_finfunctor(payload["functor"])
    via = equivalence.is_equivalence_via_injectivity(fun)
    direct, data = equivalence.is_equivalence_direct(fun)
    if direct != (via.status is Status.VERIFIED):
        raise AssertionError("direct and injectivity routes disagree")
    d = fun.target
    if direct:
        witness = {"eso": [[d.objects[b], fun.source.objects[a],
                            d.mor_names[phi], d.mor_names[phi_inv]]
                           for b, (a, phi, phi_inv) in enumerate(data.eso)],
                   "fullness": [[fun.source.objects[a], fun.source.objects[a2],
                                 d.mor_names[dm], fun.source.mor_names[m]]
                                for (a, a2), dm, m in data.fullness]}
        return "verified", witness
    return "refuted", {"failure": {"kind": data.kind,
                                   "detail": [str(v) for v in data.detail]}}


def _cmd_check_quasi_iso(payload, budgets):
    f = decode_chain_map(payload["map"])
    linear = chains.quasi_iso_condition_linear(f)
    byh = chains.is_quasi_iso_homology(f)
    if linear != byh:
        raise AssertionError("linear route disagrees with the homology oracle")
    witness = {"homology": []}
    for n in chains._joint_window(f):
        m, dx, dy = chains.induced_homology_matrix(f, n)
        witness["homology"].append([n, dx, dy])
    if f.source.field.is_prime:
        ok, cex = chains.quasi_iso_condition_enumerative(
            f, budget=budgets["search_budget"])
        if ok != linear:
            raise AssertionError("enumerative route disagrees")
        if not ok:
            n, a, b = cex
            witness["counterexample"] = {
                "degree": n,
                "cycle": [_encode_entry(f.source.field, v) for v in a],
                "coboundary_attempt": [_encode_entry(f.source.field, v) for v in b]}
    return ("verified" if linear else "refuted"), witness


def _cmd_check_we_sset(payload, budgets):
    from .simplicial import SSet
    f = decode_simplicial_map(payload["map"])
    out = subdivision.is_we_bounded(f, budgets["n_max"], budgets["m_max"],
                                    budgets["k_max"],
                                    cat=SSet(budgets["search_budget"]))
    entries = {}
    overall = "verified"
    for (n, m), verdict in sorted(out.items()):
        name = _STATUS_NAME[verdict.status]
        if verdict.status is not Status.VERIFIED:
            overall = "unknown-at-bound"
        entry = {"status": name}
        if verdict.verified:
            entry["factorizations"] = [
                {"attempt": {"top": _encode_images(att.top.images),
                             "bottom": _encode_images(att.bottom.images)},
                 "leg": k,
                 "through": {"top": _encode_images(w.top.images),
                             "bottom": _encode_images(w.bottom.images)}}
                for att, k, w in verdict.witness]
        else:
            att = verdict.counterexample
            entry["missed"] = {"top": _encode_images(att.top.images),
                               "bottom": _encode_images(att.bottom.images)}
        entries[f"{n},{m}"] = entry
    return overall, {"cones": entries}


def _cmd_check_pure_mono(payload, budgets):
    f = decode_finset_map(payload["map"])
    bound = budgets["size_bound"]
    verdict = puremono.is_pure_mono(f, bound)
    if verdict.verified:
        witness = {"tables": [[{"r": list(r.top.table), "s": list(r.bottom.table),
                                "v": list(w.top.table), "w": list(w.bottom.table)}
                               for r, w in table]
                              for table in verdict.witness]}
        return "verified", witness
    k, att = verdict.counterexample
    return "refuted", {"counterexample": {"square": k,
                                          "r": list(att.top.table),
                                          "s": list(att.bottom.table)}}


def _cmd_free_injective(payload, budgets):
    gens = tuple(decode_finset_map(j) for j in payload["J"])
    x = FinSetObj(payload["X"])
    rcon, result, w = free_algebraic_injective(FINSET, gens, x,
                                               budgets["stage_bound"])
    witness = {"carrier": w.carrier.size,
               "stabilized_at": result.stabilized_at,
               "stage_sizes": [s.size for s in result.chain.stages],
               "table": [[{"attempt": list(f.table), "filler": list(c.table)}
                          for f, c in row] for row in w.table]}
    return "verified", witness


def _cmd_subdivide(payload, budgets):
    x = decode_sset(payload["object"])
    iterations = payload.get("iterations", 1)
    for _ in range(iterations):
        x = subdivision.sd(x).sset
    return "computed", {"result": encode_sset(x), "counts": list(x.counts)}


def _cmd_ex(payload, budgets):
    x = decode_sset(payload["object"])
    res = subdivision.ex(x, budgets["dim_bound"])
    return "computed", {"result": encode_sset(res.sset),
                        "level_sizes": [len(lv) for lv in res.maps],
                        "counts": list(res.sset.counts)}


def _cmd_pi0(payload, budgets):
    if "map" in payload:
        f = decode_simplicial_map(payload["map"])
        nx, ny, table = pi0_map(f)
        return "computed", {"components_source": nx, "components_target": ny,
                            "table": {str(k): v for k, v in sorted(table.items())},
                            "surjective": pi0_surjective(f)}
    x = decode_sset(payload["object"])
    comps, _ = pi0(x)
    return "computed", {"components": [list(c) for c in comps]}


_COMMANDS = {
    "check-rlp": _cmd_check_rlp,
    "check-equivalence": _cmd_check_equivalence,
    "check-quasi-iso": _cmd_check_quasi_iso,
    "check-we-sset": _cmd_check_we_sset,
    "check-pure-mono": _cmd_check_pure_mono,
    "free-injective": _cmd_free_injective,
    "subdivide": _cmd_subdivide,
    "ex": _cmd_ex,
    "pi0": _cmd_pi0,
}

_EXIT = {"verified": 0, "computed": 0, "refuted": 1, "unknown-at-bound": 2}


@dataclass
class JobSpec:
    command: str
    payload: dict
    budgets: dict = field(default_factory=dict)
    output: str = None

    def resolved_budgets(self):
        out = dict(DEFAULT_BUDGETS)
        out.update({k: v for k, v in self.budgets.items() if v is not None})
        return out


def run(job):
    """Execute a job; returns (certificate dict, exit code)."""
    if job.command not in _COMMANDS:
        raise ParseError(f"unknown command {job.command!r}")
    if not isinstance(job.payload, dict):
        raise ParseError("job payload must be a JSON object")
    declared = job.payload.get("format", FORMAT)
    if declared != FORMAT:
        raise ParseError(f"unsupported format {declared!r}")
    budgets = job.resolved_budgets()
    for key, value in budgets.items():
        if key != "field" and (not isinstance(value, int) or value < 0):
            raise ParseError(f"budget {key} must be a nonnegative integer")
    _field_of(budgets["field"])
    verdict, witness = _COMMANDS[job.command](job.payload, budgets)
    cert = {
        "format": FORMAT,
        "tool": TOOL,
        "command": job.command,
        "budgets": budgets,
        "input": job.payload,
        "input_fingerprint": fingerprint(job.payload),
        "verdict": verdict,
        "witness": witness,
    }
    cert["fingerprint"] = fingerprint(cert)
    return cert, _EXIT[verdict]


def replay(cert):
    """True iff the certificate's verdict and witness are reproduced
    exactly by re-running the echoed input; any corruption fails."""
    try:
        if cert.get("format") != FORMAT:
            raise VersionMismatch(f"unknown format {cert.get('format')!r}")
        if cert.get("tool") != TOOL:
            raise VersionMismatch(f"certificate from {cert.get('tool')!r}")
        body = {k: v for k, v in cert.items() if k != "fingerprint"}
        if fingerprint(body) != cert.get("fingerprint"):
            return False
        if fingerprint(cert["input"]) != cert.get("input_fingerprint"):
            return False
        job = JobSpec(cert["command"], cert["input"], cert["budgets"])
        fresh, _ = run(job)
        return (canonical(fresh["verdict"]) == canonical(cert["verdict"])
                and canonical(fresh["witness"]) == canonical(cert["witness"]))
    except VersionMismatch:
        raise
    except WeqtkError:
        return False
    except (TypeError, KeyError, ValueError):
        return False


def _parser():
    p = argparse.ArgumentParser(prog="weqtk",
                                description="lifting-property and injectivity "
                                            "checks with replayable certificates")
    p.add_argument("command", choices=sorted(_COMMANDS) + ["replay"])
    p.add_argument("--input", required=True, help="input JSON file")
    p.add_argument("--output", help="certificate output path")
    p.add_argument("--k-max", type=int, dest="k_max")
    p.add_argument("--m-max", type=int, dest="m_max")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--stage-bound", type=int, dest="stage_bound")
    p.add_argument("--dim-bound", type=int, dest="dim_bound")
    p.add_argument("--field", dest="field")
    p.add_argument("--search-budget", type=int, dest="search_budget")
    p.add_argument("--size-bound", type=int, dest="size_bound")
    p.add_argument("--threads", type=int, default=1,
                   help="parallelism hint; output is identical for any value")
    p.add_argument("--seed", type=int, help="corpus generation only")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 3
    if args.command == "replay":
        try:
            ok = replay(payload)
        except VersionMismatch as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        print("replay: ok" if ok else "replay: FAILED")
        return 0 if ok else 1
    budgets = {k: getattr(args, k) for k in
               ("k_max", "m_max", "n_max", "stage_bound", "dim_bound",
                "field", "search_budget", "size_bound")}
    job = JobSpec(args.command, payload, budgets, args.output)
    try:
        cert, code = run(job)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnsupportedBackend as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (SearchBudgetExceeded, StageBoundReached) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    text = canonical(cert)
    if job.output:
        with open(job.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
