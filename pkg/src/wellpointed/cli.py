"""Command line front end.

Every command prints one JSON envelope (see :mod:`wellpointed.export`). Exit
status: 0 when every certificate passes, 1 when a mathematical check fails
(the witness is in the JSON), 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import corpus as corpus_mod
from .core import CategoryError, EnumerationLimits, EnumerationRefused, FiniteCategory, find_left_adjoint
from .dsl import Diagnostic, Model, SpecError, load
from .export import dumps, envelope, to_dot
from .ind import find_ind_iso
from .localise import (WellPointedEndo, algebra_structure, check_well_pointed, hom_formula_agreement,
                       localisation_category, omega_infinity, theta_inverted, verify_localisation_universal)
from .orbit import OrbitCategory, check_composition, orbit_well_pointing
from .spectra import (SpectrumCategory, is_omega_spectrum, sigma_infinity, spectrify, spectrum_endofunctors,
                      theta_embedding, free_loop)
from .stabilise import (check_degree_shift, check_proposition_equivalence, eventual_image_duality_check,
                        omega_autoequivalence, stable_category)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Outcome:
    def __init__(self, ok: bool, result: dict, categories: Optional[dict] = None, dot: Optional[FiniteCategory] = None):
        self.ok = ok
        self.result = result
        self.categories = categories or {}
        self.dot = dot


def read_spec(path: str) -> str:
    """A file on disk, or the name of a packaged example such as ``chain3.cat``."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    stem = os.path.basename(path)
    stem = stem[:-4] if stem.endswith(".cat") else stem
    if stem in corpus_mod.CORPUS:
        return corpus_mod.corpus_text(stem)
    raise UsageError(f"no such spec file: {path}")


def load_model(path: str) -> Model:
    return load(read_spec(path))


def pair(model: Model, args):
    try:
        return corpus_mod.pick(model, args.endo, args.point)
    except KeyError as e:
        raise UsageError(str(e).strip("'\"")) from None


def endo(model: Model, args) -> WellPointedEndo:
    omega, theta = pair(model, args)
    if theta is None:
        raise UsageError("this command needs a point: name it with --point")
    return WellPointedEndo(omega, theta)


def limits(args) -> EnumerationLimits:
    kw = {}
    if getattr(args, "limit", None):
        kw["max_morphisms"] = args.limit
    return EnumerationLimits.from_env(**kw)


# -- commands ---------------------------------------------------------------------

def cmd_check(model: Model, args) -> Outcome:
    result = {"categories": {k: {"objects": len(c.objects), "morphisms": c.size, "enrichment": c.enrichment}
                             for k, c in model.categories.items()},
              "functors": sorted(model.functors), "nats": sorted(model.nats)}
    ok = True
    if model.nats or args.point:
        omega, theta = pair(model, args)
        if theta is not None:
            r = check_well_pointed(omega, theta)
            result["well_pointed"] = r.as_dict()
            ok = r.ok
    return Outcome(ok, result, dict(model.categories), next(iter(model.categories.values()), None))


def cmd_localise(model: Model, args) -> Outcome:
    wp = endo(model, args)
    wpr = check_well_pointed(wp.omega, wp.theta)
    if not wpr.ok:
        return Outcome(False, {"well_pointed": wpr.as_dict()})
    loc = localisation_category(wp)
    objs = list(loc.objects) if args.full else loc.skeleton_objects()
    mat = loc.materialise(objs)
    inverted = theta_inverted(loc)
    homs = hom_formula_agreement(wp, loc)
    algebras = {str(x): algebra_structure(wp, x) for x in wp.category.objects}
    result = {"objects": len(mat.category.objects), "morphisms": mat.category.size, "skeleton": not args.full,
              "theta_inverted": inverted.as_dict(), "hom_formula": all(h.ok for h in homs),
              "hom_formula_failures": [[str(h.x), str(h.y)] for h in homs if not h.ok], "algebras": algebras}
    return Outcome(inverted.ok and result["hom_formula"], result, {"localisation": mat.category}, mat.category)


def cmd_spectrify(model: Model, args) -> Outcome:
    wp = endo(model, args)
    C, omega = wp.category, wp.omega
    spectra = [theta_embedding(wp, x) for x in C.objects]
    ok, per = True, {}
    for x, X in zip(C.objects, spectra):
        Xs, I, _ = spectrify(omega, X)
        stable = is_omega_spectrum(I, Xs)
        target = omega_infinity(wp, x)
        constant = all(find_ind_iso(I, Xs.level(n), target) is not None for n in range(Xs.length))
        per[str(x)] = {"levels": [repr(A) for A in Xs.levels], "preperiod": Xs.preperiod, "period": Xs.period,
                       "omega_spectrum": stable, "constant_on_omega_infinity": constant}
        ok = ok and stable and constant
    result = {"theta_spectra": per}
    if args.certify:
        cert = spectrum_endofunctors(SpectrumCategory(C, omega, spectra), spectra).certificate
        result["endofunctors"] = cert.as_dict()
        ok = ok and cert.ok
    return Outcome(ok, result)


def cmd_stabilise(model: Model, args) -> Outcome:
    omega, _ = pair(model, args)
    window = args.window or model.directive("window", 1)
    S = stable_category(omega, window)
    pres = S.materialise()
    shift = check_degree_shift(S)
    auto = omega_autoequivalence(S)
    result = {"window": window, "objects": len(pres.category.objects), "morphisms": pres.category.size,
              "degree_shift": shift.as_dict(), "omega_autoequivalence": auto.as_dict()}
    return Outcome(shift.ok and auto.ok, result, {"stable": pres.category}, pres.category)


def cmd_orbit(model: Model, args) -> Outcome:
    omega, _ = pair(model, args)
    grades = args.max_grade if args.max_grade is not None else model.directive("grades", 3)
    try:
        A = OrbitCategory(omega)
    except CategoryError as e:
        raise UsageError(str(e)) from None
    homs = {}
    for x in A.objects:
        for y in A.objects:
            h = A.hom(x, y, grades)
            homs[f"{x}->{y}"] = {"sizes": h.sizes(), "preperiod": h.preperiod, "period": h.period}
    comp = check_composition(A, args.triples, grades)
    wpt = orbit_well_pointing(omega, grades)
    result = {"max_grade": grades, "homs": homs, "composition": comp.as_dict(),
              "well_pointing": dict(wpt.report.as_dict(), checked_to={str(k): v for k, v in wpt.checked_to.items()})}
    return Outcome(comp.ok and wpt.ok, result)


def cmd_compare(model: Model, args) -> Outcome:
    wp = endo(model, args)
    window = args.window or model.directive("window", 1)
    report = check_proposition_equivalence(wp, window)
    result = report.as_dict()
    if wp.category.enrichment == "set":
        eid = eventual_image_duality_check(wp.omega, window)
        result["eventual_image_duality"] = dict(eid.as_dict(), agrees_with_phi=eid.holds == report.phi_is_equivalence)
    return Outcome(report.ok and report.phi_inverse_psi, result)


def cmd_verify(model: Model, args) -> Outcome:
    wp = endo(model, args)
    enrichment = wp.category.enrichment
    if args.target:
        targets = [c for c in load_model(args.target).categories.values() if c.enrichment == enrichment]
    else:
        targets = list(corpus_mod.target_suite(enrichment))
    targets = [D for D in targets if len(D.objects) <= args.max_objects]
    if not targets:
        raise UsageError("no target categories within --max-objects of the right enrichment")
    lim = limits(args)
    runs, ok = [], True
    for D in targets:
        try:
            r = verify_localisation_universal(wp, D, lim)
        except EnumerationRefused as e:
            runs.append({"target": D.name, "refused": str(e)})
            ok = False
            continue
        runs.append(r.as_dict())
        ok = ok and r.ok
    return Outcome(ok, {"property": "localisation-universal", "targets": len(targets),
                        "inverting": sum(r.get("inverting", 0) for r in runs), "runs": runs})


def cmd_adjoint(model: Model, args) -> Outcome:
    omega, _ = pair(model, args)
    C = omega.src
    try:
        adj = find_left_adjoint(omega)
    except CategoryError as e:
        raise UsageError(str(e)) from None
    if adj is None:
        return Outcome(False, {"left_adjoint": None, "reason": "some object has no universal arrow"})
    result = {"left_adjoint": {"objects": {str(x): str(adj.left.obj(x)) for x in C.objects},
                               "morphisms": {str(u): str(adj.left.mor(u)) for u in C.labels}},
              "triangle": adj.report.as_dict()}
    ok = adj.report.ok
    levels = {}
    for x in C.objects:
        Xs, I, _ = spectrify(omega, sigma_infinity(adj, x))
        y, row = x, []
        for n in range(args.levels + 1):
            row.append(find_ind_iso(I, Xs.level(n), free_loop(adj, y)) is not None)
            y = adj.left.obj(y)
        levels[str(x)] = row
        ok = ok and all(row)
    result["free_loop_levels"] = levels
    return Outcome(ok, result)


COMMANDS = {"check": cmd_check, "localise": cmd_localise, "spectrify": cmd_spectrify, "stabilise": cmd_stabilise,
            "orbit": cmd_orbit, "compare": cmd_compare, "verify": cmd_verify, "adjoint": cmd_adjoint}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wellpointed", description="Localisation and stabilisation of finite categories.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        s = sub.add_parser(name, help=help_text)
        if name == "verify":
            s.add_argument("property", choices=["universal"])
        s.add_argument("spec", help="spec file, or the name of a packaged example")
        s.add_argument("--endo", help="name of the endofunctor Omega")
        s.add_argument("--point", help="name of the point theta: id -> Omega")
        s.add_argument("--dot", metavar="FILE", help="also write the computed category as DOT")
        s.add_argument("--output", "-o", metavar="FILE", help="write JSON here instead of stdout")
        return s

    add("check", "validate a spec and check well-pointedness")
    add("localise", "the localisation at theta").add_argument("--full", action="store_true",
                                                               help="all objects instead of a skeleton")
    add("spectrify", "spectrify Theta(x) for every object").add_argument("--certify", action="store_true",
                                                                         help="certify S, Omega and sigma")
    add("stabilise", "the stable category in a degree window").add_argument("--window", type=int)
    o = add("orbit", "the orbit category up to a grade bound")
    o.add_argument("--max-grade", type=int)
    o.add_argument("--triples", type=int, default=500)
    add("compare", "Phi, Psi, eta and epsilon and the equivalence verdict").add_argument("--window", type=int)
    v = add("verify", "check a universal property by enumeration")
    v.add_argument("--target", help="spec whose categories are the targets (default: built-in suite)")
    v.add_argument("--max-objects", type=int, default=3)
    v.add_argument("--limit", type=int, help="enumeration morphism limit (also WELLPOINTED_ENUM_LIMIT)")
    add("adjoint", "left adjoint of Omega and free loop levels").add_argument("--levels", type=int, default=6)
    return p


def _emit(doc: dict, args) -> None:
    text = dumps(doc)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    command = args.command
    try:
        model = load_model(args.spec)
        outcome = COMMANDS[command](model, args)
    except SpecError as e:
        _emit(envelope(command, False, diagnostics=[d.as_dict() for d in e.diagnostics]), args)
        return USAGE
    except UsageError as e:
        _emit(envelope(command, False, diagnostics=[Diagnostic("usage", str(e)).as_dict()]), args)
        return USAGE
    _emit(envelope(command, outcome.ok, outcome.result, outcome.categories), args)
    if args.dot and outcome.dot is not None:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(outcome.dot))
    return OK if outcome.ok else FAILED


def main() -> None:
    sys.exit(run())
