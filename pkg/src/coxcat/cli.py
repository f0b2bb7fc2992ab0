"""Command-line front end.

Verbs: chi, regions, bounded, sketches, classes, canonical, stats, verify,
render.  Output is deterministic; exit status is 0 on success, 1 on a
verification failure, 2 on a usage error.  All numeric output is exact
(integers or rational strings, never decimals).

Guardrails refuse oracle commands above n = 5 and characteristic polynomials
above n = 4 to protect against accidental exponential runs; --max-n raises
the cap.  COXCAT_THREADS caps the finite-field sampling thread pool.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb, factorial

from . import charpoly, movelab, regionlab, sketchlib, statlab
from .arrangement import FAMILY_TAGS, build, rank
from .exactnum import rat_str

ORACLE_MAX_N = 5
CHI_MAX_N = 4


def closed_region_formula(family: str, n: int, m: int = None):
    a = statlab.fubini_numbers(max(n, 1))
    if family == "braid":
        return factorial(n)
    if family == "boolean":
        return 2 ** n
    if family == "type-c":
        return 2 ** n * factorial(n)
    if family == "type-d":
        return 2 ** (n - 1) * factorial(n) if n >= 2 else 1
    if family == "braid-boolean":
        return factorial(n + 1)
    if family == "fubini":
        return 2 * a[n]
    if family == "threshold":
        return 2 * (a[n] - n * a[n - 1]) if n >= 2 else 1
    if family == "catalan-a":
        return factorial(n) * comb(2 * n, n) // (n + 1)
    if family == "cat-c":
        return 2 ** n * factorial(n) * comb(2 * n, n)
    if family == "cat-c-ext":
        return 2 ** n * factorial(n) * comb((m + 1) * n, n)
    if family == "cat-d":
        if n < 2:
            return 1
        return 2 ** (n - 1) * factorial(2 * n - 2) // factorial(n - 1) * (3 * n - 2)
    if family == "pointed":
        return 2 ** n * factorial(n) * comb(2 * n + 2, n)
    if family == "cat-b":
        return 2 ** n * factorial(n) * comb(2 * n, n)
    if family == "cat-bc":
        return 2 ** (n - 1) * factorial(n) * comb(2 * n + 2, n + 1)
    if family == "raney":
        return factorial(n) * statlab.raney_number(n, m, 2)
    return None  # cat-threshold, shi-threshold: no closed count


def closed_bounded_formula(family: str, n: int, m: int = None):
    if family == "cat-c" or family == "cat-b":
        return 2 ** n * factorial(n) * comb(2 * n - 1, n)
    if family == "cat-d":
        if n < 2:
            return None
        return 2 ** (n - 1) * factorial(2 * n - 3) // factorial(n - 2) * (3 * n - 4)
    if family == "pointed":
        return 2 ** n * factorial(n) * comb(2 * n + 1, n + 1)
    if family == "cat-bc":
        return 2 ** n * factorial(n) * comb(2 * n, n)
    return None


def combinatorial_count(family: str, n: int, m: int = None):
    """The bijective route: sketches, move classes, or maximal sketches."""
    if family == "type-c":
        return 2 ** n * factorial(n)  # all reflection sketches
    if family in ("boolean", "type-d", "braid", "braid-boolean", "fubini", "threshold"):
        if family == "threshold" and n < 2:
            return None
        return movelab.canonical_count(family, n)
    if family == "cat-c":
        return len(sketchlib.enumerate_sketches(n))
    if family == "cat-c-ext":
        return len(sketchlib.enumerate_m_sketches(n, m))
    if family == "pointed":
        return len(sketchlib.enumerate_pointed(n))
    if family in ("cat-d", "cat-b", "cat-bc"):
        if family == "cat-d" and n < 2:
            return None
        return movelab.canonical_count(family, n)
    if family == "cat-threshold":
        return sum(1 for sk in sketchlib.enumerate_sketches(n) if movelab.is_ct_maximal(sk))
    if family == "shi-threshold":
        return sum(1 for sk in sketchlib.enumerate_sketches(n) if movelab.is_st_maximal(sk))
    return None


def verify_family(family: str, n: int, m: int = None):
    """Region counts by every available route, plus bounded counts."""
    arr = build(family, n, m)
    oracle = regionlab.region_count(arr)
    chi = charpoly.char_poly(arr)
    out = {
        "family": family,
        "n": n,
        "m": m,
        "regions": oracle,
        "formula": closed_region_formula(family, n, m),
        "chi_minus1": charpoly.regions_from_chi(chi),
        "classes": combinatorial_count(family, n, m),
    }
    bf = closed_bounded_formula(family, n, m)
    if bf is not None:
        out["bounded"] = regionlab.bounded_count(arr)
        out["bounded_formula"] = bf
        out["bounded_chi"] = charpoly.bounded_from_chi(chi, rank(arr))
    region_routes = [
        v for v in (out["regions"], out["formula"], out["chi_minus1"], out["classes"])
        if v is not None
    ]
    ok = len(set(region_routes)) == 1
    if bf is not None:
        ok = ok and out["bounded"] == out["bounded_formula"] == out["bounded_chi"]
    out["pass"] = ok
    return out


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_SCALE = 40
_BASE = 160


def _svg(width, height, body) -> str:
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'font-family="serif" font-size="14">\n%s\n</svg>\n' % (width, height, body)
    )


def arc_svg(diagram: sketchlib.ArcDiagram) -> str:
    size = diagram.size
    width = _SCALE * (size + 1)
    parts = []
    center_x = _SCALE * (size + 1) / 2
    parts.append(
        '<line x1="%g" y1="%d" x2="%g" y2="%d" stroke="blue"/>'
        % (center_x, _BASE - 18, center_x, _BASE + 18)
    )
    labels = diagram.labels_by_position()
    for p in range(1, size + 1):
        lab = labels[p]
        if lab == 0:
            text = "-" if p <= size // 2 else "+"
        else:
            text = str(lab)
        parts.append(
            '<text x="%d" y="%d" text-anchor="middle">%s</text>'
            % (_SCALE * p, _BASE + 5, text)
        )
    for ps, _ in diagram.blocks:
        for a, b in zip(ps, ps[1:]):
            x1, x2 = _SCALE * a, _SCALE * b
            r = (x2 - x1) / 2
            parts.append(
                '<path d="M %g %d A %g %g 0 0 1 %g %d" fill="none" stroke="black"/>'
                % (x1, _BASE - 12, r, r, x2, _BASE - 12)
            )
    return _svg(width, _BASE + 30, "\n".join(parts))


def path_svg(path: sketchlib.LatticePath) -> str:
    steps = path.steps
    hs = [0] + list(path.heights())
    top = max(hs)
    width = _SCALE * (len(steps) + 1)
    base = _SCALE * (top + 1)
    pts = [(_SCALE * i, base - _SCALE * h) for i, h in enumerate(hs)]
    parts = [
        '<line x1="0" y1="%d" x2="%d" y2="%d" stroke="green"/>' % (base, width, base)
    ]
    for i, ((x1, y1), (x2, y2)) in enumerate(zip(pts, pts[1:])):
        color = "red" if path.pointer is not None and i == path.pointer else "black"
        parts.append(
            '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" stroke-width="2"/>'
            % (x1, y1, x2, y2, color)
        )
    up_seen = 0
    for i, s in enumerate(steps):
        if s > 0 and up_seen < len(path.labels):
            x1, y1 = pts[i]
            parts.append(
                '<text x="%d" y="%d" text-anchor="end">%s</text>'
                % (x1 + _SCALE // 2 - 6, y1 - _SCALE // 2 + 5, path.labels[up_seen])
            )
            up_seen += 1
    for x, y in pts:
        parts.append('<circle cx="%d" cy="%d" r="3"/>' % (x, y))
    return _svg(width, base + 20, "\n".join(parts))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _arrangement(args):
    return build(args.family, args.n, args.m)


def _guard(args, cap: int):
    limit = max(cap, args.max_n or 0)
    if args.n > limit:
        raise UsageError(
            "n=%d exceeds the cap %d for this command (raise with --max-n)"
            % (args.n, limit)
        )


class UsageError(Exception):
    pass


def cmd_chi(args):
    _guard(args, CHI_MAX_N)
    chi = charpoly.char_poly(_arrangement(args))
    if args.format == "json":
        _emit(args, json.dumps({
            "family": args.family,
            "n": args.n,
            "m": args.m,
            "coeffs": list(chi.poly.coeffs),
            "poly": str(chi),
        }))
    else:
        _emit(args, str(chi))
    return 0


def cmd_regions(args):
    _guard(args, ORACLE_MAX_N)
    arr = _arrangement(args)
    regs = regionlab.enumerate_regions(arr)
    items = [
        {
            "signs": regionlab.signs_to_str(s),
            "witness": [rat_str(x) for x in w],
        }
        for s, w in sorted(regs.items())
    ]
    if args.format == "json":
        _emit(args, json.dumps({"family": args.family, "n": args.n, "m": args.m,
                                "count": len(items), "regions": items}))
    else:
        lines = ["%s  (%s)" % (it["signs"], ", ".join(it["witness"])) for it in items]
        _emit(args, "\n".join(lines + ["count: %d" % len(items)]))
    return 0


def cmd_bounded(args):
    _guard(args, ORACLE_MAX_N)
    arr = _arrangement(args)
    regs = regionlab.enumerate_regions(arr)
    items = [
        regionlab.signs_to_str(s)
        for s in sorted(regs)
        if regionlab.is_bounded_region(arr, s, check=False)
    ]
    if args.format == "json":
        _emit(args, json.dumps({"family": args.family, "n": args.n, "m": args.m,
                                "count": len(items), "bounded": items}))
    else:
        _emit(args, "\n".join(items + ["count: %d" % len(items)]))
    return 0


def _sketches_for(args):
    fam = args.family
    if fam == "type-c":
        return [sketchlib.ReflSketch(p) for p in sketchlib.signed_perms(args.n)]
    if fam == "cat-c":
        return sketchlib.enumerate_sketches(args.n)
    if fam == "cat-c-ext":
        return sketchlib.enumerate_m_sketches(args.n, args.m)
    if fam == "pointed":
        return sketchlib.enumerate_pointed(args.n)
    raise UsageError("sketch enumeration supports type-c, cat-c, cat-c-ext, pointed")


def cmd_sketches(args):
    _guard(args, 3)
    sks = _sketches_for(args)
    if args.format == "json":
        _emit(args, json.dumps({
            "family": args.family, "n": args.n, "m": args.m, "count": len(sks),
            "sketches": [sketchlib.compact_form(sk) for sk in sks],
        }))
    else:
        _emit(args, "\n".join(str(sk) for sk in sks) + "\ncount: %d" % len(sks))
    return 0


def cmd_classes(args):
    _guard(args, 3)
    if args.family not in movelab.MOVE_SYSTEMS:
        raise UsageError("no move system for family %r" % args.family)
    sys_ = movelab.MOVE_SYSTEMS[args.family]
    uni = movelab.universe(sys_, args.n)
    classes = movelab.classes(sys_, uni)
    out = []
    for cls in classes:
        members = sorted(sketchlib.compact_form(sk) for sk in cls)
        canon = sketchlib.compact_form(movelab.canonical(args.family, next(iter(cls))))
        out.append({"members": members, "canonical": canon})
    if args.format == "json":
        _emit(args, json.dumps({"family": args.family, "n": args.n,
                                "count": len(out), "classes": out}))
    else:
        lines = ["[%s] %s" % (c["canonical"], " ".join(c["members"])) for c in out]
        _emit(args, "\n".join(lines + ["count: %d" % len(out)]))
    return 0


def cmd_canonical(args):
    sk = sketchlib.parse_sketch(args.sketch)
    canon = movelab.canonical(args.family, sk)
    _emit(args, sketchlib.compact_form(canon) if args.format == "json" else str(canon))
    return 0


def cmd_stats(args):
    _guard(args, ORACLE_MAX_N if args.family in statlab._REFL_FAMILIES else 3)
    dist = statlab.distribution(args.family, args.n, args.m)
    chi = charpoly.char_poly(build(args.family, args.n, args.m))
    payload = {
        "family": args.family,
        "n": args.n,
        "m": args.m,
        "distribution": list(dist.counts),
        "chi_abs": list(chi.abs_coeffs()),
        "match": dist.counts == chi.abs_coeffs(),
    }
    if args.format == "json":
        _emit(args, json.dumps(payload))
    else:
        _emit(args, "distribution: %s\nchi_abs:      %s\nmatch: %s" % (
            list(dist.counts), list(chi.abs_coeffs()), payload["match"]))
    return 0 if payload["match"] else 1


def cmd_verify(args):
    _guard(args, ORACLE_MAX_N)
    out = verify_family(args.family, args.n, args.m)
    if args.format == "text":
        lines = ["%s: %s" % (k, v) for k, v in out.items()]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(out))
    return 0 if out["pass"] else 1


def cmd_render(args):
    sk = sketchlib.parse_sketch(args.sketch)
    if args.kind == "arc":
        if args.format == "svg":
            _emit(args, arc_svg(sketchlib.to_arc_diagram(sk)))
        else:
            _emit(args, str(sk))
    elif args.kind == "path":
        path = sketchlib.to_lattice_path(sk)
        if args.format == "svg":
            _emit(args, path_svg(path))
        else:
            steps = "".join("U" if s > 0 else "D" for s in path.steps)
            _emit(args, "%s labels=%s pointer=%s" % (steps, list(path.labels), path.pointer))
    else:
        raise UsageError("render --kind must be arc or path")
    return 0


_SEED_ROWS = [
    ("braid", 3, None), ("boolean", 3, None), ("type-c", 2, None),
    ("type-d", 2, None), ("braid-boolean", 2, None), ("fubini", 3, None),
    ("threshold", 3, None), ("cat-c", 2, None), ("cat-c-ext", 1, 2),
    ("cat-d", 2, None), ("pointed", 1, None), ("cat-b", 1, None),
    ("cat-bc", 1, None), ("cat-threshold", 2, None), ("shi-threshold", 2, None),
    ("raney", 2, 1), ("catalan-a", 2, None),
]


def cmd_seed_check(_args):
    failed = 0
    for family, n, m in _SEED_ROWS:
        out = verify_family(family, n, m)
        status = "pass" if out["pass"] else "FAIL"
        if not out["pass"]:
            failed += 1
        print(
            "%s %s n=%d%s regions=%s formula=%s chi=%s classes=%s"
            % (status, family, n, " m=%d" % m if m else "",
               out["regions"], out["formula"], out["chi_minus1"], out["classes"])
        )
    print("seed-check: %d/%d rows pass" % (len(_SEED_ROWS) - failed, len(_SEED_ROWS)))
    return 1 if failed else 0


def _parser():
    p = argparse.ArgumentParser(
        prog="coxcat",
        description="Exact region counting for reflection arrangements and "
        "their Catalan deformations, three independent ways.",
    )
    p.add_argument("--seed-check", action="store_true",
                   help="run the built-in verification sweep and exit")
    sub = p.add_subparsers(dest="verb")

    def common(sp, family=True, needs_n=True):
        if family:
            sp.add_argument("--family", required=True, choices=FAMILY_TAGS)
        if needs_n:
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--m", type=int, default=None)
        sp.add_argument("--format", choices=("text", "json", "svg"), default="text")
        sp.add_argument("--out", default=None)
        sp.add_argument("--max-n", type=int, default=None)

    for verb, fn in [
        ("chi", cmd_chi), ("regions", cmd_regions), ("bounded", cmd_bounded),
        ("sketches", cmd_sketches), ("classes", cmd_classes), ("stats", cmd_stats),
        ("verify", cmd_verify),
    ]:
        sp = sub.add_parser(verb)
        common(sp)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("canonical")
    sp.add_argument("--family", required=True, choices=FAMILY_TAGS)
    sp.add_argument("--sketch", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_canonical)

    sp = sub.add_parser("render")
    sp.add_argument("--kind", required=True, choices=("arc", "path"))
    sp.add_argument("--sketch", required=True)
    sp.add_argument("--format", choices=("text", "svg"), default="svg")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_render)

    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.seed_check:
        return cmd_seed_check(args)
    if not getattr(args, "fn", None):
        parser.print_usage()
        return 2
    try:
        return args.fn(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
