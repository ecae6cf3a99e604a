"""Command-line front end.

Group specifications::

    cyclic:N                  cyclic group of order N
    abelian:D1,D2,...         product of cyclic groups
    perm:DEG:(1 2 3);(1 2)    permutation group on DEG points
    metacyclic:P,Q,R,S        (Z_P x Z_P) semidirect Z_Q acting by (R, S)
    product:(SPEC)x(SPEC)     direct product
    zoo:NAME                  a named group (see ``pargroup zoo``)
    PATH                      multiplication table in mtab format

Exit codes: 1 usage, 2 bad input, 3 computation error, 4 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .decomp import (
    center_dimension,
    compare_decompositions,
    decompose_direct,
    decompose_formula,
    dim_partial_algebra,
    multiplicity_formula,
    wedderburn_expand,
)
from .errors import ComputationError, InputError, InvalidInput
from .exact import format_rational
from .groupoid import arrow_count, build_groupoid, direct_bound
from .groups import (
    FiniteGroup,
    conjugacy_classes,
    group_abelian,
    group_cyclic,
    group_direct_product,
    group_from_permutations,
    group_metacyclic_pair,
    read_mtab,
)
from .lattice import subgroup_lattice
from .parrep import invariant_inner_product, lift, loads_prep, verify_partial_rep
from .survey import counterexample_run, theorem_check
from .zoo import zoo_group, zoo_names

EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE, EXIT_MISMATCH = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- group specs ----------------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from None


def _matching(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise InvalidInput(f"unbalanced parentheses in {text!r}")


def parse_group_spec(spec: str) -> FiniteGroup:
    kind, sep, rest = spec.partition(":")
    if not sep or kind not in ("cyclic", "abelian", "perm", "metacyclic", "product", "zoo"):
        path = Path(spec)
        if not path.is_file():
            raise InvalidInput(f"not a group spec or readable file: {spec!r}")
        return read_mtab(path)
    if kind == "cyclic":
        if not rest.isdigit():
            raise InvalidInput(f"bad cyclic order {rest!r}")
        return group_cyclic(int(rest))
    if kind == "abelian":
        return group_abelian(_ints(rest))
    if kind == "metacyclic":
        args = _ints(rest)
        if len(args) != 4:
            raise InvalidInput("metacyclic needs p,q,r,s")
        return group_metacyclic_pair(*args)
    if kind == "zoo":
        try:
            return zoo_group(rest)
        except KeyError as exc:
            raise InvalidInput(str(exc)) from None
    if kind == "perm":
        degree, sep, cycles = rest.partition(":")
        if not sep or not degree.isdigit():
            raise InvalidInput("perm spec is perm:DEGREE:CYCLES;CYCLES;...")
        gens = [c.strip() for c in cycles.split(";") if c.strip()]
        return group_from_permutations(int(degree), gens)
    # product:(A)x(B)
    if not rest.startswith("("):
        raise InvalidInput("product spec is product:(SPEC)x(SPEC)")
    end = _matching(rest, 0)
    tail = rest[end + 1 :]
    if not tail.startswith("x(") or _matching(tail, 1) != len(tail) - 1:
        raise InvalidInput("product spec is product:(SPEC)x(SPEC)")
    return group_direct_product(parse_group_spec(rest[1:end]), parse_group_spec(tail[2:-1]))


def _load_overrides(path: str | None):
    if path is None:
        return None
    try:
        data = json.loads(Path(path).read_text())
        return {
            (int(e["order"]), int(e["classes"]), int(e["linear"])): {int(k): int(v) for k, v in e["degrees"].items()}
            for e in data
        }
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InvalidInput(f"bad degree override file: {exc}") from None


def _read_prep(g: FiniteGroup, path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    return loads_prep(g, text)


def _profile_json(profile) -> list[dict]:
    return [{"size": s, "mult": c} for s, c in profile.sizes]


def _matrix_json(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def _matrix_lines(m) -> list[str]:
    return ["  " + " ".join(format_rational(x) for x in row) for row in m]


# -- subcommands ----------------------------------------------------------
# each returns (json payload, text lines, exit code)

def cmd_info(args):
    g = parse_group_spec(args.group)
    classes = conjugacy_classes(g)
    orders: dict[int, int] = {}
    for x in range(g.order):
        k = g.element_order(x)
        orders[k] = orders.get(k, 0) + 1
    orders = dict(sorted(orders.items()))
    payload = {
        "group": args.group,
        "order": g.order,
        "abelian": g.is_abelian,
        "class_sizes": [len(c) for c in classes],
        "element_orders": {str(k): v for k, v in orders.items()},
    }
    lines = [
        f"group {args.group}",
        f"order {g.order}",
        f"abelian {'yes' if g.is_abelian else 'no'}",
        f"classes {len(classes)}: sizes " + " ".join(str(len(c)) for c in classes),
        "element orders " + " ".join(f"{k}:{v}" for k, v in orders.items()),
    ]
    return payload, lines, 0


def cmd_lattice(args):
    g = parse_group_spec(args.group)
    lat = subgroup_lattice(g)
    subs = []
    lines = [f"group {args.group}", f"subgroups {len(lat)}"]
    for i, h in enumerate(lat.subgroups):
        entry = {
            "index": i,
            "order": h.order,
            "bits": f"{h.bits:x}",
            "normal": lat.is_normal(i),
            "class": lat.class_of[i],
            "normalizer": lat.normalizer[i],
            "commutator": lat.commutator[i],
        }
        subs.append(entry)
        lines.append(
            f"  {i}: order {h.order} bits {h.bits:x} class {entry['class']}"
            f" normalizer {entry['normalizer']}" + (" normal" if entry["normal"] else "")
        )
    census = lat.order_census()
    lines.append("census " + " ".join(f"{k}:{v}" for k, v in census.items()))
    payload = {
        "group": args.group,
        "count": len(lat),
        "census": {str(k): v for k, v in census.items()},
        "subgroups": subs,
    }
    return payload, lines, 0


def cmd_groupoid(args):
    g = parse_group_spec(args.group)
    gamma = build_groupoid(g)
    levels = []
    lines = [f"group {args.group}", f"arrows {gamma.arrow_count()} (formula {arrow_count(g.order)})"]
    for k in sorted(gamma.levels):
        comps = gamma.components_at(k)
        levels.append({"level": k, "vertices": len(gamma.levels[k]), "components": len(comps)})
        lines.append(f"  level {k}: {len(gamma.levels[k])} vertices, {len(comps)} components")
    payload = {
        "group": args.group,
        "arrows": gamma.arrow_count(),
        "dimension_formula": dim_partial_algebra(g.order),
        "levels": levels,
    }
    return payload, lines, 0


def _blocks_json(d) -> list[dict]:
    return [
        {"m": b.m, "H": f"{b.order}:{b.bits:x}", "subgroup": b.subgroup, "mult": b.multiplicity}
        for b in d.blocks
    ]


def cmd_decompose(args):
    g = parse_group_spec(args.group)
    method = args.method or ("both" if g.order <= direct_bound() else "formula")
    lat = subgroup_lattice(g)
    if method == "direct":
        d = decompose_direct(g, lat)
    else:
        d = decompose_formula(g, lat)
    payload = {"group": args.group, "method": method, "dimension": d.dimension(), "blocks": _blocks_json(d)}
    lines = [f"group {args.group}", f"method {method}"] + d.lines() + [f"dimension {d.dimension()}"]
    code = 0
    if method == "both":
        ok = decompose_direct(g, lat).key() == d.key()
        payload["cross_check"] = "OK" if ok else "MISMATCH"
        lines.append("cross-check: " + payload["cross_check"])
        code = 0 if ok else EXIT_MISMATCH
    return payload, lines, code


def cmd_wedderburn(args):
    g = parse_group_spec(args.group)
    d = decompose_formula(g, subgroup_lattice(g))
    prof = wedderburn_expand(d, _load_overrides(args.degrees))
    center = center_dimension(d)
    payload = {
        "group": args.group,
        "profile": _profile_json(prof),
        "dimension": prof.dimension(),
        "center_dimension": center,
    }
    lines = [f"group {args.group}"] + prof.lines() + [f"dimension {prof.dimension()}", f"center {center}"]
    return payload, lines, 0


def cmd_multiplicity(args):
    g = parse_group_spec(args.group)
    lat = subgroup_lattice(g)
    value = multiplicity_formula(g, lat, args.k)
    size = g.order // args.k - 1
    payload = {"group": args.group, "k": args.k, "size": size, "multiplicity": value}
    return payload, [f"multiplicity of M{size}: {value}"], 0


def cmd_compare(args):
    g1, g2 = parse_group_spec(args.group1), parse_group_spec(args.group2)
    overrides = _load_overrides(args.degrees)
    cmp = compare_decompositions(
        decompose_formula(g1, subgroup_lattice(g1)), decompose_formula(g2, subgroup_lattice(g2)), overrides
    )
    payload = {"groups": [args.group1, args.group2], "equal": cmp.equal, "witness": cmp.witness}
    return payload, [str(cmp)], 0


def cmd_parrep_check(args):
    g = parse_group_spec(args.group)
    bad = verify_partial_rep(_read_prep(g, args.file))
    if bad is None:
        return {"valid": True, "witness": None}, ["valid"], 0
    witness = {"s": bad.s, "t": bad.t, "axiom": bad.axiom}
    return {"valid": False, "witness": witness}, [f"invalid: axiom ({bad.axiom}) fails at s={bad.s} t={bad.t}"], 0


def cmd_parrep_lift(args):
    g = parse_group_spec(args.group)
    lifted = lift(_read_prep(g, args.file))
    arrows, lines = [], []
    for a in lifted:
        m = lifted[a]
        if not any(m.flat):
            continue
        arrows.append({"source": f"{a.A:x}", "g": a.g, "matrix": _matrix_json(m)})
        lines.append(f"arrow source={a.A:x} g={g.label(a.g)}")
        lines += _matrix_lines(m)
    lines.append(f"nonzero images {len(arrows)} of {len(lifted)}")
    return {"arrows": arrows, "total": len(lifted)}, lines, 0


def cmd_parrep_gram(args):
    g = parse_group_spec(args.group)
    gram = invariant_inner_product(_read_prep(g, args.file))
    return {"gram": _matrix_json(gram)}, ["gram"] + _matrix_lines(gram), 0


def cmd_survey(args):
    report = theorem_check(args.n, threads=args.threads, bound=args.bound)
    return report.to_json(), report.table(), 0


def cmd_counterexample(args):
    res = counterexample_run(threads=args.threads)
    lines = []
    for name, census, ga, prof in zip(("G1", "G2"), res.census, res.group_algebra_profiles, res.profiles):
        lines.append(f"{name} census " + " ".join(f"{k}:{v}" for k, v in census.items()))
        lines.append(f"{name} group algebra " + ", ".join(f"M{s} x {c}" for s, c in sorted(ga.items())))
        lines.append(f"{name} profile " + ", ".join(prof.lines()))
    lines.append("EQUAL" if res.profiles_equal else "DIFFERENT")
    lines.append(f"note: {res.note}")
    return res.to_json(), lines, 0


def cmd_zoo(args):
    names = zoo_names()
    return {"names": names}, names, 0


COMMANDS = {
    "info": cmd_info,
    "lattice": cmd_lattice,
    "groupoid": cmd_groupoid,
    "decompose": cmd_decompose,
    "wedderburn": cmd_wedderburn,
    "multiplicity": cmd_multiplicity,
    "compare": cmd_compare,
    "parrep-check": cmd_parrep_check,
    "parrep-lift": cmd_parrep_lift,
    "parrep-gram": cmd_parrep_gram,
    "survey": cmd_survey,
    "counterexample": cmd_counterexample,
    "zoo": cmd_zoo,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")
    parser = _Parser(
        prog="pargroup",
        description="Partial group algebras of finite groups.",
        epilog=__doc__.split("\n", 2)[2],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *group_args):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for a in group_args:
            p.add_argument(a, metavar="SPEC" if a.startswith("group") else a.upper())
        return p

    add("info", "order, classes and element orders", "group")
    add("lattice", "list all subgroups", "group")
    add("groupoid", "levels and components of the groupoid", "group")
    p = add("decompose", "block decomposition", "group")
    p.add_argument("--method", choices=("direct", "formula", "both"))
    p = add("wedderburn", "Wedderburn profile", "group")
    p.add_argument("--degrees", help="JSON file of degree-profile overrides")
    p = add("multiplicity", "multiplicity of M_{n/k-1}", "group")
    p.add_argument("k", type=int)
    p = add("compare", "compare two partial group algebras", "group1", "group2")
    p.add_argument("--degrees", help="JSON file of degree-profile overrides")
    add("parrep-check", "check the partial representation axioms", "group", "file")
    add("parrep-lift", "lift to the groupoid algebra", "group", "file")
    add("parrep-gram", "invariant inner product", "group", "file")
    p = add("survey", "abelian groups of order N")
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=128)
    add("counterexample", "the order-605 pair")
    add("zoo", "list named groups")
    return parser


def main(argv=None) -> int:
    out, err = sys.stdout, sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        payload, lines, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except ComputationError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_COMPUTE
    if args.json:
        print(json.dumps({"command": args.command, **payload}, indent=2), file=out)
    else:
        print("\n".join(lines), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
