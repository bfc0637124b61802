"""Command-line interface.

Subcommands: link, manifold, lens, classify, torsion, selftest.  Results
are printed to stdout as canonical JSON (byte-identical across runs);
timing goes to stderr.  Exit codes: 0 ok, 2 invalid input, 3 omega not
computable, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time

from .algebra import Cyclotomic, MultiLaurent, RatFunc
from .algebra.palette import PaletteGroup
from .alexander import conway, delta_c
from .errors import (Gl11Error, InternalExactnessFailure, NotComputable,
                     SurgeryClosedMismatch)
from .lens import classify_lens, hj_continued_fraction, lens_invariant_table
from .linkdiag import linking_matrix, parse_link
from .manifold import (OmegaClass, SurgeryPresentation, delta_kirby,
                       delta_refined, enumerate_omega, make_omega)
from .torsion import tau_surgery, torsion_relation_check

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_COMPUTABLE = 3
EXIT_INTERNAL = 4


def _value_json(v):
    if isinstance(v, (RatFunc, MultiLaurent, Cyclotomic)):
        return v.to_json()
    if isinstance(v, (list, tuple)):
        return [_value_json(x) for x in v]
    if isinstance(v, dict):
        return {k: _value_json(x) for k, x in v.items()}
    return v


def _report(command, inputs, outputs, status="ok"):
    return {"command": command, "inputs": inputs,
            "outputs": _value_json(outputs), "status": status}


def _emit(args, report, t0, csv_rows=None, csv_header=None):
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"elapsed: {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return EXIT_OK


_IMAGE_RE = re.compile(r"^(zeta(\d+)|t|z(\d+))(\^(-?\d+))?$")


def _parse_image(group_state, text):
    """One factor of an omega image: t, t^-2, z1^3, zeta5^2, or products
    joined by '*'.  zeta factors force cyclotomic evaluation and pin the
    torsion order."""
    free = {}
    torsion = 0
    for part in text.split("*"):
        m = _IMAGE_RE.match(part.strip())
        if not m:
            raise ValueError(f"cannot parse omega image {text!r}")
        power = int(m.group(5)) if m.group(5) else 1
        if m.group(2):  # zetaM
            order = int(m.group(2))
            group_state["mode"] = "cyclotomic"
            if group_state.get("torsion") not in (None, order):
                raise ValueError("conflicting cyclotomic orders in omega")
            group_state["torsion"] = order
            torsion += power
        elif m.group(1) == "t":
            torsion += power
            group_state.setdefault("mode", "symbolic")
        else:  # zK
            idx = int(m.group(3))
            free[idx] = free.get(idx, 0) + power
            group_state.setdefault("mode", "symbolic")
    return free, torsion


def _build_omega(args, pres: SurgeryPresentation):
    """Omega from --omega mi=IMAGE pairs or --enumerate; returns
    (list of (label, OmegaClass, mode))."""
    r = pres.ncomponents
    if args.enumerate:
        m = args.torsion_order
        if m is None:
            raise ValueError("--enumerate requires --torsion-order")
        group = PaletteGroup(1, m)
        out = []
        for k, om in enumerate(enumerate_omega(pres, group)):
            out.append((f"omega{k}", om, "cyclotomic"))
        return out
    if not args.omega:
        raise ValueError("supply --omega pairs or --enumerate")
    state = {"torsion": args.torsion_order, "mode": None}
    given = {}
    for pair in args.omega:
        if "=" not in pair:
            raise ValueError(f"bad --omega syntax {pair!r}")
        name, image = pair.split("=", 1)
        m = re.match(r"^m(\d+)$", name.strip())
        if not m:
            raise ValueError(f"bad meridian name {name!r} (use m1, m2, ...)")
        idx = int(m.group(1)) - 1
        if not 0 <= idx < r:
            raise ValueError(f"meridian index {name} out of range")
        given[idx] = _parse_image(state, image.strip())
    mode = state["mode"] or "symbolic"
    torsion_order = state["torsion"] or 1
    max_free = max((max(f) for f, _ in given.values() if f), default=0)
    group = PaletteGroup(max(max_free, 1), torsion_order)

    if len(given) < r:
        if mode != "cyclotomic":
            raise ValueError("partial omega specs are completed by enumeration "
                             "and need cyclotomic (zeta) images")
        for om in enumerate_omega(pres, group):
            if all(om.images[i].torsion % torsion_order ==
                   t % torsion_order and not any(f.values())
                   for i, (f, t) in given.items()):
                return [("omega", om, mode)]
        raise ValueError("no homomorphism matches the given meridian images")

    images = []
    for i in range(r):
        f, t = given[i]
        vec = [0] * group.free_rank
        for idx, power in f.items():
            vec[idx - 1] = power
        images.append(group.element(free=vec, torsion=t))
    return [("omega", make_omega(pres, group, images), mode)]


def cmd_link(args) -> int:
    t0 = time.monotonic()
    with open(args.file) as fh:
        diagram = parse_link(fh.read())
    nabla = conway(diagram)
    dc = delta_c(diagram)
    lk = linking_matrix(diagram)
    report = _report("link", {"file": os.path.basename(args.file)}, {
        "components": diagram.ncomponents,
        "conway": nabla,
        "delta_c": dc,
        "linking_matrix": lk.to_lists(),
    })
    return _emit(args, report, t0)


def cmd_manifold(args) -> int:
    t0 = time.monotonic()
    with open(args.file) as fh:
        pres = SurgeryPresentation.from_text(fh.read())
    omegas = _build_omega(args, pres)
    results = {}
    for label, omega, mode in omegas:
        entry = {"images": [repr(g) for g in omega.images],
                 "computable": omega.computable}
        if not omega.computable:
            if not args.enumerate:
                raise NotComputable("some omega image is the identity")
            entry["value"] = None
        elif args.both:
            refined = delta_refined(pres, omega, mode=mode)
            kirby = delta_kirby(pres, omega, mode=mode)
            entry["refined"] = refined
            entry["kirby"] = kirby
            entry["equal"] = refined == kirby
            if not entry["equal"]:
                raise InternalExactnessFailure(
                    "Kirby-color and refined values disagree")
        elif args.kirby:
            entry["value"] = delta_kirby(pres, omega, mode=mode)
        else:
            entry["value"] = delta_refined(pres, omega, mode=mode)
        results[label] = entry
    report = _report("manifold", {"file": os.path.basename(args.file)}, results)
    return _emit(args, report, t0)


def cmd_lens(args) -> int:
    t0 = time.monotonic()
    table = lens_invariant_table(args.p, args.torsion_order)
    rows = table["rows"]
    if args.q is not None:
        rows = [r for r in rows if r["q"] == args.q]
    outputs = {"p": table["p"], "torsion": table["torsion"],
               "reason": table["reason"],
               "rows": [{k: _value_json(v) for k, v in r.items()}
                        for r in rows]}
    report = _report("lens", {"p": args.p, "q": args.q}, outputs)
    csv_rows = [[r["p"], r["q"], r["k"],
                 json.dumps(_value_json(r["closed"]), sort_keys=True),
                 json.dumps(_value_json(r["surgery"]), sort_keys=True),
                 r["equal"]] for r in rows]
    return _emit(args, report, t0, csv_rows,
                 ["p", "q", "k", "closed_value", "surgery_value", "equal"])


def cmd_classify(args) -> int:
    t0 = time.monotonic()
    result = classify_lens(args.p)
    report = _report("classify", {"p": args.p}, result)
    csv_rows = [[args.p, json.dumps(block)] for block in result["partition"]]
    return _emit(args, report, t0, csv_rows, ["p", "block"])


def cmd_torsion(args) -> int:
    t0 = time.monotonic()
    with open(args.file) as fh:
        pres = SurgeryPresentation.from_text(fh.read())
    charge = [int(x) for x in args.charge.split(",")]
    omegas = _build_omega(args, pres)
    results = {}
    for label, omega, mode in omegas:
        if not omega.computable:
            if not args.enumerate:
                raise NotComputable("some omega image is the identity")
            results[label] = {"computable": False}
            continue
        tau = tau_surgery(pres, omega, charge, mode=mode)
        holds, _, expected = torsion_relation_check(pres, omega, charge,
                                                    mode=mode)
        results[label] = {"tau": tau, "relation_rhs": expected,
                          "relation_holds": holds}
        if not holds:
            raise InternalExactnessFailure("torsion relation failed")
    report = _report("torsion",
                     {"file": os.path.basename(args.file), "charge": charge},
                     results)
    return _emit(args, report, t0)


def cmd_selftest(args) -> int:
    t0 = time.monotonic()
    from .linkdiag import chain_diagram, hopf_diagram, unknot_diagram
    from .manifold import omega_from_torsion_exponents

    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Gl11Error as exc:
            checks.append({"name": name, "ok": False, "error": str(exc)})
            return
        checks.append({"name": name, "ok": ok})

    def chain_formula():
        for n in range(2, 5):
            d = chain_diagram([2] * n)
            value = delta_c(d)
            expect = RatFunc.one(n)
            for i in range(1, n - 1):
                ti = MultiLaurent.var(n, i, 2)
                expect = expect * RatFunc(ti - ti.invert_vars())
            if value != expect:
                return False
        return True

    check("chain_formula", chain_formula)

    def kirby_refined():
        pres = SurgeryPresentation(chain_diagram([3, 2]))
        om = omega_from_torsion_exponents(pres, PaletteGroup(1, 5), [-2, 1])
        return (delta_kirby(pres, om, mode="symbolic")
                == delta_refined(pres, om, mode="symbolic"))

    check("kirby_equals_refined", kirby_refined)
    check("lens_table_p5",
          lambda: all(r["equal"] for r in lens_invariant_table(5)["rows"]))
    check("classify_p7",
          lambda: classify_lens(7)["partition"] == [[1], [2, 4], [3, 5], [6]])

    def torsion_relation():
        pres = SurgeryPresentation(chain_diagram([3, 2]))
        om = omega_from_torsion_exponents(pres, PaletteGroup(1, 5), [-2, 1])
        return torsion_relation_check(pres, om, (1, 1))[0]

    check("torsion_relation", torsion_relation)

    def conway_symmetry():
        for d in (unknot_diagram(0), hopf_diagram(), chain_diagram([2, 2, 2])):
            c = conway(d)
            if c.invert_vars() != (c if d.ncomponents % 2 == 0 else -c):
                return False
        return True

    check("conway_symmetry", conway_symmetry)

    ok = all(c["ok"] for c in checks)
    report = _report("selftest", {}, {"checks": checks},
                     status="ok" if ok else "internal-error")
    _emit(args, report, t0)
    return EXIT_OK if ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gl11",
        description="Exact gl(1|1)-Alexander invariants of links, 3-manifolds "
                    "and lens spaces")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write the result to a file")

    p_link = sub.add_parser("link", help="Conway function and colored invariant")
    p_link.add_argument("file")
    common(p_link)
    p_link.set_defaults(fn=cmd_link)

    def omega_flags(p):
        p.add_argument("--omega", action="append", default=[],
                       metavar="mi=IMAGE",
                       help="meridian image, e.g. m2=zeta5 or m1=t^-2")
        p.add_argument("--enumerate", action="store_true",
                       help="all nontrivial omega into Z/m")
        p.add_argument("--torsion-order", type=int, default=None, metavar="M")

    p_man = sub.add_parser("manifold", help="Delta(M, omega) from a surgery file")
    p_man.add_argument("file")
    omega_flags(p_man)
    group = p_man.add_mutually_exclusive_group()
    group.add_argument("--refined", action="store_true", default=True)
    group.add_argument("--kirby", action="store_true", default=False)
    group.add_argument("--both", action="store_true", default=False)
    common(p_man)
    p_man.set_defaults(fn=cmd_manifold)

    p_lens = sub.add_parser("lens", help="closed formula vs surgery table")
    p_lens.add_argument("p", type=int)
    p_lens.add_argument("q", type=int, nargs="?", default=None)
    p_lens.add_argument("--torsion-order", type=int, default=None, metavar="M")
    common(p_lens)
    p_lens.set_defaults(fn=cmd_lens)

    p_cls = sub.add_parser("classify", help="partition lens spaces L(p, *)")
    p_cls.add_argument("p", type=int)
    common(p_cls)
    p_cls.set_defaults(fn=cmd_classify)

    p_tor = sub.add_parser("torsion", help="Reidemeister torsion surgery formula")
    p_tor.add_argument("file")
    omega_flags(p_tor)
    p_tor.add_argument("--charge", required=True, metavar="k1,k2,...")
    common(p_tor)
    p_tor.set_defaults(fn=cmd_torsion)

    p_self = sub.add_parser("selftest", help="run the built-in property corpus")
    common(p_self)
    p_self.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NotComputable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_COMPUTABLE
    except (SurgeryClosedMismatch, InternalExactnessFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (Gl11Error, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
