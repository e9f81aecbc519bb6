"""Command line driver: runs named checks and writes a versioned JSON report.

Every record carries a claim id, its inputs, the expected and computed
values and a pass flag.  Wall times and the timestamp live in a separate
"timing" block so that two runs with the same seed give identical records.
The exit status is 0 exactly when every record passes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .borel import I_cdn, enumerate_borel, gin, is_borel_fixed, lex_point
from .catalog import catalog_ideals, match_orbits, verify_pair_family, verify_point, FAMILIES
from .cones import (FAMILY_NAMES, MIN_N, canonical_class, canonical_class_derived, cone_contains,
                    is_fano, log_fano_witness, nef_generators, verify_tables)
from .deformation import CASES, mutation_scan, verify_obstruction_ideal, verify_versal
from .groebner import Ideal, ideal_equal
from .hilbert import HilbertPoly, hilbert_polynomial, hypersurface_polynomial, pair_hilbert_polynomial
from .poly import PolySyntaxError, standard_ring
from .resolution import depth, ek_betti, minimal_free_resolution, regularity
from .tangent import expected_component_dim, hom_degree_zero_dim

SCHEMA = "planepairs-report/1"
SUITES = ("borel", "gin", "tangent", "betti", "catalog", "family", "orbits", "deform", "cones")
DEFAULT_SEED = 42
DEFAULT_MUTATION = "5,6,u1*x4"


def _record(claim, inputs, expected, computed, ok) -> dict:
    return {"claim": claim, "inputs": inputs, "expected": expected, "computed": computed,
            "pass": bool(ok)}


def _gens(I: Ideal) -> list[str]:
    return [str(g) for g in I.generators]


# ---------------------------------------------------------------- borel

def check_borel_two_points(n: int) -> list:
    P = pair_hilbert_polynomial(1, n - 2, n)
    got = enumerate_borel(P, n)
    want = [I_cdn(1, n - 2, n), lex_point(P, n)]
    ok = len(got) == 2 and all(any(ideal_equal(g, w) for g in got) for w in want)
    return [_record("borel/two-fixed-points", {"P": P.formula(), "n": n},
                    {"J1": _gens(want[0]), "J2": _gens(want[1])},
                    [_gens(g) for g in got], ok)]


def check_borel_unique(n: int) -> list:
    out = []
    for kind, pairs in (("c,n-1", [(c, n - 1) for c in range(n)]), ("0,d", [(0, d) for d in range(n)])):
        bad = []
        for c, d in pairs:
            got = enumerate_borel(pair_hilbert_polynomial(c, d, n), n)
            if len(got) != 1 or not ideal_equal(got[0], I_cdn(c, d, n)):
                bad.append({"c": c, "d": d, "found": [_gens(g) for g in got]})
        claim = "borel/unique-point-plane-and-hyperplane" if kind == "c,n-1" else "borel/unique-point-with-a-point"
        out.append(_record(claim, {"n": n, "pairs": [list(p) for p in pairs]},
                           "exactly I_{c,d,n}", {"mismatches": bad}, not bad))
    return out


def check_borel_hypersurface(d: int, n: int) -> list:
    counts = [len(enumerate_borel(hypersurface_polynomial(d, n) + HilbertPoly.constant(k), n))
              for k in (1, 2, 3)]
    return [_record("borel/hypersurface-plus-points", {"d": d, "n": n, "k": [1, 2, 3]},
                    [1, 1, 2], counts, counts == [1, 1, 2])]


# ---------------------------------------------------------------- gin

def check_gin(family: str, n: int, seed: int) -> list:
    out = []
    for e in catalog_ideals(family, n):
        if e.gin_target is None:
            continue
        a, b = gin(e.ideal, seed=seed), gin(e.ideal, seed=seed + 1)
        ok = ideal_equal(a, b) and ideal_equal(a, e.gin_target) and is_borel_fixed(a)
        out.append(_record("gin/borel-point-of-pair-component",
                           {"family": family, "type": e.label, "n": n, "seeds": [seed, seed + 1]},
                           _gens(e.gin_target), {"seed_a": _gens(a), "seed_b": _gens(b)}, ok))
    return out


# ---------------------------------------------------------------- tangent

def _tangent_record(claim, inputs, I, expected) -> dict:
    t = hom_degree_zero_dim(I)
    return _record(claim, inputs, expected, t, t == expected)


def check_tangent_named() -> list:
    R4 = standard_ring(4)
    out = [
        _tangent_record("tangent/borel-point-line-plane", {"ideal": "I_{1,2,4}"}, I_cdn(1, 2, 4), 18),
        _tangent_record("tangent/borel-point-line-plane", {"ideal": "I_{1,3,5}"}, I_cdn(1, 3, 5), 24),
        _tangent_record("tangent/transverse-line-plane", {"n": 4},
                        Ideal(["x0", "x1"], R4) * Ideal(["x2", "x3", "x4"], R4), expected_component_dim(1, 2, 4)),
    ]
    for n in (3, 4):
        R = standard_ring(n)
        J = Ideal(["x0", "x1"], R) * Ideal([f"x{i}" for i in range(n)], R)
        out.append(_tangent_record("tangent/fat-point-on-plane", {"ideal": f"J_{n}", "n": n}, J, 6 * n - 4))
    return out


def check_tangent_borel_pairs(k: int, n: int) -> list:
    """The Borel point of H(n-k,n-k,n) also lies on other components, so the
    tangent space of the Hilbert scheme there has at least the component's
    dimension 2k(n-k+1)."""
    t = hom_degree_zero_dim(I_cdn(n - k, n - k, n))
    lo = 2 * k * (n - k + 1)
    return [_record("tangent/borel-point-at-least-component-dim", {"k": k, "n": n},
                    {"at_least": lo}, t, t >= lo)]


def check_tangent_h1(n: int) -> list:
    out = []
    for e in catalog_ideals("h1", n):
        out.append(_tangent_record("tangent/line-plane-types", {"type": e.label, "n": n,
                                                                  "component": e.component},
                                   e.ideal, e.tangent))
    return out


# ---------------------------------------------------------------- betti

def check_betti_displays() -> list:
    from .deformation import versal_data
    out = []
    for case, want in (("i124", (1, 6, 9, 5, 1)), ("j3", (1, 5, 6, 2))):
        d = versal_data(case)
        _, B = minimal_free_resolution(Ideal(d.phi0, d.x_ring))
        out.append(_record("betti/displayed-resolution", {"case": case}, list(want), list(B.totals()),
                           B.totals() == want))
    return out


def check_betti_borel_points(nmax: int) -> list:
    ek_bad, b1_bad, depth_bad = [], [], []
    count = 0
    for n in range(2, nmax + 1):
        for c in range(n):
            for d in range(c, n):
                if c + d + 1 < n:
                    continue
                count += 1
                I = I_cdn(c, d, n)
                _, B = minimal_free_resolution(I)
                tot = B.totals()
                if tuple(ek_betti(I)) != tuple(tot[1:]):
                    ek_bad.append([c, d, n])
                if tot[1] != (n - c) * (n - d):
                    b1_bad.append([c, d, n])
                if depth(B, n) != c + d + 2 - n:
                    depth_bad.append([c, d, n])
    inputs = {"n_max": nmax, "ideals": count}
    return [
        _record("betti/eliahou-kervaire-matches-resolution", inputs, "equal", {"mismatches": ek_bad}, not ek_bad),
        _record("betti/first-betti-number", inputs, "(n-c)(n-d)", {"mismatches": b1_bad}, not b1_bad),
        _record("betti/depth", inputs, "c+d+2-n", {"mismatches": depth_bad}, not depth_bad),
    ]


def check_linear_resolution(family: str, n: int) -> list:
    out = []
    for e in catalog_ideals(family, n):
        if not e.check_linear:
            continue
        _, B = minimal_free_resolution(e.ideal)
        reg = regularity(B)
        out.append(_record("betti/linear-resolution-on-pair-component",
                           {"family": family, "type": e.label, "n": n},
                           {"regularity": 2, "linear": True}, {"regularity": reg, "linear": B.is_linear(),
                                                               "betti": list(B.totals())},
                           reg == 2 and B.is_linear()))
    return out


# ---------------------------------------------------------------- catalog, family, orbits

def check_catalog(family: str, n: int, seed: int) -> list:
    out = []
    for e in catalog_ideals(family, n):
        rep = verify_point(e, seed=seed)
        expected = {"hilbert_polynomial": e.hilbert_polynomial.formula(), "saturated": True}
        if e.tangent is not None:
            expected["tangent"] = e.tangent
        if e.gin_target is not None:
            expected["gin"] = _gens(e.gin_target)
        out.append(_record(f"catalog/{family}", {"type": e.label, "n": n, "description": e.description,
                                                 "ideal": _gens(e.ideal)},
                           expected, {k: v for k, v in rep.items() if k not in ("family", "label", "n", "pass")},
                           rep["pass"]))
    return out


def check_pair_family(k: int, n: int, seed: int, samples: int = 20) -> list:
    rep = verify_pair_family(k, n, samples=samples, seed=seed)
    return [_record("pair-family/quadrics-form-groebner-basis", {"k": k, "n": n, "seed": seed,
                                                                 "samples": samples},
                    {"initial_ideal": rep["initial_ideal"], "hilbert_polynomial": rep["hilbert_polynomial"]},
                    {"checked": rep["checked"], "zero_patterns": rep["patterns"], "failures": rep["failures"]},
                    rep["pass"])]


def check_orbits(k: int, n: int, seed: int) -> list:
    fam = {2: "fixed", 3: "twoplane"}[k]
    types = sorted(e.label for e in catalog_ideals(fam, n))
    m = match_orbits(k, n, seed=seed)
    got = {"".join("1" if b else "0" for b in sig): lab for sig, lab in sorted(m.items())}
    ok = len(types) == 2 ** k and len(m) == 2 ** k and sorted(m.values()) == types
    return [_record("orbits/two-to-the-k", {"k": k, "n": n, "family": fam},
                    {"types": 2 ** k}, {"catalog_types": types, "pattern_to_type": got}, ok)]


# ---------------------------------------------------------------- deformations

def check_deform(case: str, mutate: str | None = None) -> list:
    mut = None
    if mutate:
        r, c, term = mutate.split(",", 2)
        mut = (int(r), int(c), term.strip())
    v = verify_versal(case, mutate=mut)
    o = verify_obstruction_ideal(case)
    inputs = {"case": case}
    if mut:
        inputs["mutation"] = list(mut)
    tangent = {"i124": 18, "j3": 14}[case]
    out = [
        _record(f"{case}/lift", inputs, True,
                {k: v[k] for k in ("lift_phi0", "lift_phi1", "phi1_is_syzygy_matrix")},
                v["lift_phi0"] and v["lift_phi1"] and v["phi1_is_syzygy_matrix"]),
        _record(f"{case}/flatness", inputs, {"failed_columns_mod_I_plus_J": [], "failed_columns_mod_J": []},
                {"failed_columns_mod_I_plus_J": v["flatness_failed_columns"],
                 "failed_columns_mod_J": v["flatness_strong_failed_columns"],
                 "errata_applied": v["errata_applied"]},
                v["flatness"] and v["flatness_strong"]),
        _record(f"{case}/syzygies-match-display", inputs, True, v["resolution_agrees"], v["resolution_agrees"]),
        _record(f"{case}/tangent-count", inputs, tangent,
                {"hom_dim": v["hom_dim"], "trivial": v["trivial_count"], "listed": v["tangent_count"],
                 "independent": v["independent"], "nontrivial_valid": v["nontrivial_valid"],
                 "printed_trivial_mismatches": sorted(k for k, ok in v["trivial_printed_matches_jacobian"].items()
                                                      if not ok)},
                v["tangent_ok"] and v["nontrivial_valid"] and v["hom_dim"] == tangent),
    ]
    exp = {"component_dims": [5, 2], "transverse": True} if case == "i124" else {"dim": 5}
    out.append(_record(f"{case}/obstruction-ideal", inputs, exp,
                       {k: o[k] for k in o if k not in ("case", "pass")}, o["pass"]))
    if case == "i124" and not mut:
        p = verify_versal(case, printed=True)
        po = verify_obstruction_ideal(case, printed=True)
        out.append(_record(f"{case}/printed-data-needs-errata", inputs,
                           {"printed": "fails", "corrected": "passes"},
                           {"printed_failed_columns": p["flatness_failed_columns"],
                            "printed_J_equals_presentation": po["equal_to_presentation"],
                            "errata": v["errata_applied"]},
                           (not p["flatness"]) and not po["equal_to_presentation"] and v["flatness"]
                           and o["equal_to_presentation"]))
    if not mut:
        s = mutation_scan(case)
        out.append(_record(f"{case}/mutations-detected", inputs, {"missed": []},
                           {"mutations": s["mutations"], "caught_mod_J": s["caught_mod_J"],
                            "caught_mod_I_plus_J": s["caught_mod_I_plus_J"], "missed": s["missed_mod_J"]},
                           not s["missed_mod_J"]))
    return out


# ---------------------------------------------------------------- cones

def check_cones(family: str, ns: list) -> list:
    rep = verify_tables(family)
    label = FAMILY_NAMES[family]
    out = [_record(f"cones/{family}/relations", {"family": label},
                   {k: r["stated"] for k, r in rep["relations"].items()},
                   {k: r["computed"] for k, r in rep["relations"].items()} | {
                       "unprinted_pairings": rep["unprinted_pairings"],
                       "inferred_pairings": rep["inferred_pairings"]}, rep["pass"])]
    for n in ns:
        K, K2 = canonical_class(family, n), canonical_class_derived(family, n)
        out.append(_record(f"cones/{family}/canonical-class", {"family": label, "n": n},
                           K.formula(), K2.formula(), K == K2))
        fano = is_fano(family, n)
        if family == "pair-3" and n == 6:
            w_d2 = log_fano_witness(family, n, "D2")
            w_n3 = log_fano_witness(family, n, "N3")
            out.append(_record(f"cones/{family}/log-fano", {"family": label, "n": n},
                               {"fano": False, "witness": "exists"},
                               {"fano": fano, "eps_with_D2": w_d2, "eps_with_N3": w_n3,
                                "minus_K_plus_tenth_D2_ample": cone_contains(
                                    -K + nef_generators(family, n)[1].scale(Fraction(1, 10)),
                                    nef_generators(family, n), strict=True)},
                               not fano and w_n3 is not None))
        elif family == "pair-3" and n != 5:
            continue
        else:
            out.append(_record(f"cones/{family}/fano", {"family": label, "n": n}, True, fano, fano))
    return out


# ---------------------------------------------------------------- suite assembly

CHECKS = {f.__name__: f for f in (
    check_borel_two_points, check_borel_unique, check_borel_hypersurface, check_gin,
    check_tangent_named, check_tangent_borel_pairs, check_tangent_h1, check_betti_displays,
    check_betti_borel_points, check_linear_resolution, check_catalog, check_pair_family,
    check_orbits, check_deform, check_cones)}


def suite_tasks(suite: str, seed: int, mutate: str | None = None) -> list:
    t = lambda name, **kw: (name, kw)
    if suite == "borel":
        return ([t("check_borel_two_points", n=n) for n in (4, 5, 6)]
                + [t("check_borel_unique", n=n) for n in (3, 4, 5, 6)]
                + [t("check_borel_hypersurface", d=d, n=n) for d, n in ((2, 3), (2, 4), (3, 3))])
    if suite == "gin":
        return [t("check_gin", family=f, n=n, seed=seed)
                for f, n in (("fixed", 4), ("twoplane", 6), ("h1", 4), ("h1", 5))]
    if suite == "tangent":
        return ([t("check_tangent_named")]
                + [t("check_tangent_borel_pairs", k=k, n=n) for k, n in ((2, 4), (2, 5), (3, 5), (3, 6))]
                + [t("check_tangent_h1", n=n) for n in (4, 5)])
    if suite == "betti":
        return ([t("check_betti_displays"), t("check_betti_borel_points", nmax=6)]
                + [t("check_linear_resolution", family=f, n=n)
                   for f, n in (("fixed", 4), ("twoplane", 6), ("h1", 4), ("h1", 5))])
    if suite == "catalog":
        plan = [("fixed", 3), ("fixed", 4), ("twoplane", 5), ("twoplane", 6), ("h1", 4), ("h1", 5),
                ("twopoints", 3), ("twopoints", 4), ("twopoints", 5), ("borel2", 4), ("borel2", 5),
                ("hypersurface", 3), ("hypersurface", 4)]
        return [t("check_catalog", family=f, n=n, seed=seed) for f, n in plan]
    if suite == "family":
        return [t("check_pair_family", k=k, n=n, seed=seed) for k, n in ((2, 3), (2, 4), (3, 5), (3, 6))]
    if suite == "orbits":
        return [t("check_orbits", k=2, n=4, seed=seed), t("check_orbits", k=3, n=6, seed=seed)]
    if suite == "deform":
        return [t("check_deform", case="i124", mutate=mutate), t("check_deform", case="j3")]
    if suite == "cones":
        return [t("check_cones", family=f, ns=list(range(MIN_N[f], 9))) for f in FAMILY_NAMES]
    raise ValueError(f"unknown suite {suite!r}")


def _run_task(task) -> tuple:
    name, kw = task
    t0 = time.perf_counter()
    try:
        recs = CHECKS[name](**kw)
    except Exception as exc:  # a crash is a failed record, not a crashed run
        recs = [_record(f"error/{name}", kw, "no exception", f"{type(exc).__name__}: {exc}", False)]
    return recs, time.perf_counter() - t0


def run_tasks(tasks: list, jobs: int = 1) -> tuple[list, list]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    records, timing = [], []
    for (name, _), (recs, secs) in zip(tasks, results):
        records.extend(recs)
        timing.append({"task": name, "records": len(recs), "seconds": round(secs, 3)})
    return records, timing


def build_report(command: str, config: dict, records: list, timing: list) -> dict:
    passed = sum(r["pass"] for r in records)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": config,
        "records": records,
        "summary": {"records": len(records), "passed": passed, "failed": len(records) - passed},
        "timing": {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"), "tasks": timing},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def summary_table(records: list) -> str:
    width = max([len(r["claim"]) for r in records] + [5])
    lines = [f"{'claim':<{width}}  {'inputs':<40}  result", "-" * (width + 50)]
    for r in records:
        inp = json.dumps(r["inputs"], sort_keys=True, default=str)
        if len(inp) > 40:
            inp = inp[:37] + "..."
        lines.append(f"{r['claim']:<{width}}  {inp:<40}  {'PASS' if r['pass'] else 'FAIL'}")
    failed = sum(not r["pass"] for r in records)
    lines.append(f"{len(records)} records, {failed} failed")
    return "\n".join(lines)


# ---------------------------------------------------------------- ad hoc computations

def _ideal_from_args(args) -> tuple[Ideal, dict]:
    if args.ideal:
        R = standard_ring(args.n)
        gens = [g.strip() for g in args.ideal.split(",") if g.strip()]
        return Ideal(gens, R), {"ideal": gens, "n": args.n}
    if args.family and args.type:
        for e in catalog_ideals(args.family, args.n):
            if e.label == args.type:
                return e.ideal, {"family": args.family, "type": e.label, "n": args.n}
        raise SystemExit(f"no type {args.type!r} in family {args.family!r}")
    raise SystemExit("give --ideal, or --family with --type")


def _compute(kind: str, args, seed) -> list:
    I, inputs = _ideal_from_args(args)
    if kind == "hilb":
        return [_record("compute/hilbert-polynomial", inputs, None, hilbert_polynomial(I).formula(), True)]
    if kind == "gin":
        G = gin(I, seed=seed)
        return [_record("compute/generic-initial-ideal", inputs | {"seed": seed}, None,
                        {"gin": _gens(G), "borel_fixed": is_borel_fixed(G)}, True)]
    if kind == "betti":
        _, B = minimal_free_resolution(I)
        return [_record("compute/betti-table", inputs, None,
                        {"totals": list(B.totals()), "table": B.text(), "regularity": regularity(B),
                         "linear": B.is_linear()}, True)]
    if kind == "tangent":
        return [_record("compute/tangent-dimension", inputs, None, hom_degree_zero_dim(I), True)]
    raise ValueError(kind)


# ---------------------------------------------------------------- entry point

def _seed_default() -> int:
    env = os.environ.get("PLANEPAIRS_SEED")
    return int(env) if env not in (None, "") else DEFAULT_SEED


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planepairs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"planepairs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, jobs=False):
        sp.add_argument("--out", help="write the JSON report here (default: stdout)")
        if seed:
            sp.add_argument("--seed", type=int, default=None,
                            help=f"random seed (default: $PLANEPAIRS_SEED or {DEFAULT_SEED})")
        if jobs:
            sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--quiet", action="store_true", help="no summary table on stderr")

    sp = sub.add_parser("verify-all", help="run every suite (or the ones given with --suite)")
    sp.add_argument("--suite", action="append", choices=SUITES)
    sp.add_argument("--mutate", nargs="?", const=DEFAULT_MUTATION, default=None,
                    help="perturb phi1_inf of i124 at ROW,COL by adding TERM (default 5,6,u1*x4)")
    common(sp, jobs=True)

    sp = sub.add_parser("catalog", help="verify the catalog entries of one family")
    sp.add_argument("--family", required=True, choices=sorted(FAMILIES))
    sp.add_argument("--n", type=int, required=True)
    common(sp, jobs=True)

    sp = sub.add_parser("borel-enum", help="Borel-fixed ideals with a given Hilbert polynomial")
    sp.add_argument("--poly", required=True, help='e.g. "C(t+2,2)+t+1"')
    sp.add_argument("--n", type=int, required=True)
    common(sp, seed=False)

    for name, helptext in (("gin", "generic initial ideal"), ("hilb", "Hilbert polynomial"),
                           ("betti", "Betti table"), ("tangent", "dim Hom(I, S/I)_0")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--ideal", help="comma separated generators in x0..xn")
        sp.add_argument("--family", choices=sorted(FAMILIES))
        sp.add_argument("--type", help="catalog label within --family")
        common(sp, seed=(name == "gin"))

    sp = sub.add_parser("deform", help="versal deformation checks")
    sp.add_argument("--case", choices=CASES + ("all",), default="all")
    sp.add_argument("--mutate", nargs="?", const=DEFAULT_MUTATION, default=None,
                    help="perturb phi1_inf of i124 at ROW,COL by adding TERM (default 5,6,u1*x4)")
    common(sp, seed=False, jobs=True)

    sp = sub.add_parser("cones", help="cone and canonical class checks")
    sp.add_argument("--family", choices=sorted(FAMILY_NAMES) + sorted(FAMILY_NAMES.values()), default=None)
    sp.add_argument("--n", type=int, action="append", help="may be repeated")
    common(sp, seed=False)

    sp = sub.add_parser("family", help="Groebner check of the k^2 quadrics")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=20)
    common(sp, jobs=False)
    return p


def _emit(report: dict, args) -> int:
    text = dumps(report)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not getattr(args, "quiet", False):
        print(summary_table(report["records"]), file=sys.stderr)
    return 0 if report["summary"]["failed"] == 0 else 1


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return _main(args)
    except (PolySyntaxError, ValueError) as e:
        parser.error(str(e))


def _main(args) -> int:
    from .cones import family_key
    seed = getattr(args, "seed", None)
    if seed is None and hasattr(args, "seed"):
        seed = _seed_default()
    jobs = max(1, getattr(args, "jobs", 1) or 1)
    cmd = args.command
    if cmd == "verify-all":
        suites = args.suite or list(SUITES)
        tasks = [t for s in suites for t in suite_tasks(s, seed, args.mutate)]
        config = {"suites": suites, "seed": seed, "mutate": args.mutate}
    elif cmd == "catalog":
        tasks = [("check_catalog", {"family": args.family, "n": args.n, "seed": seed})]
        config = {"family": args.family, "n": args.n, "seed": seed}
    elif cmd == "deform":
        cases = CASES if args.case == "all" else (args.case,)
        tasks = [("check_deform", {"case": c, "mutate": args.mutate if c == "i124" else None}) for c in cases]
        config = {"cases": list(cases), "mutate": args.mutate}
    elif cmd == "cones":
        fams = [family_key(args.family)] if args.family else list(FAMILY_NAMES)
        tasks = []
        for f in fams:
            ns = args.n or list(range(MIN_N[f], 9))
            bad = [n for n in ns if n < MIN_N[f]]
            if bad:
                raise SystemExit(f"{FAMILY_NAMES[f]} needs n >= {MIN_N[f]}")
            tasks.append(("check_cones", {"family": f, "ns": ns}))
        config = {"families": fams, "n": args.n}
    elif cmd == "family":
        tasks = [("check_pair_family", {"k": args.k, "n": args.n, "seed": seed, "samples": args.samples})]
        config = {"k": args.k, "n": args.n, "seed": seed, "samples": args.samples}
    elif cmd == "borel-enum":
        P = HilbertPoly.parse(args.poly)
        t0 = time.perf_counter()
        found = enumerate_borel(P, args.n)
        records = [_record("borel/enumeration", {"P": P.formula(), "n": args.n}, None,
                           [_gens(g) for g in found], True)]
        timing = [{"task": "borel-enum", "records": 1, "seconds": round(time.perf_counter() - t0, 3)}]
        return _emit(build_report(cmd, {"P": args.poly, "n": args.n}, records, timing), args)
    else:
        t0 = time.perf_counter()
        records = _compute(cmd, args, seed)
        timing = [{"task": cmd, "records": 1, "seconds": round(time.perf_counter() - t0, 3)}]
        cfg = {"n": args.n, "ideal": args.ideal, "family": args.family, "type": args.type}
        if cmd == "gin":
            cfg["seed"] = seed
        return _emit(build_report(cmd, cfg, records, timing), args)
    records, timing = run_tasks(tasks, jobs)
    return _emit(build_report(cmd, config, records, timing), args)


if __name__ == "__main__":
    sys.exit(main())
