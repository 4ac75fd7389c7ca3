"""Command-line interface: ``emss-loop <command> [options]``.

Exit status: 0 on success, 2 when the computation is correct but incomplete
(undecided extensions, collapse refusal, oracle disagreement), 1 on input
errors, 3 when a computed presentation fails its own certification.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, AlgebraMorphism, AlgebraPresentation, ModuleSpec
from .chart import ChartBudgetError, render_chart
from .complexes import (ComplexError, bar_complex_truncated, cohomology, koszul_tor_complex,
                        periodic_hochschild_complex)
from .emss import CollapseCertificate, Refusal, WindowTooNarrowError, build_e2, collapse_by_sparsity
from .extension import EnumerationError, LoopHomology, loop_presentation
from .hochschild import CertificationError, UnsupportedAlgebraError, hh_ring
from .pipeline import decide_collapse, loop_homology, relative_loop_homology, _solve
from .scalars import FieldError, FieldSpec

SCHEMA = "emss-loop/1"


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing

def _load(path: str, what: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"{what}: file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _algebra(data: dict, char: int | None, what: str) -> AlgebraPresentation:
    if isinstance(data, dict) and "cohomology" in data:
        data = data["cohomology"]
    try:
        return AlgebraPresentation.from_json(data, char)
    except (AlgebraError, FieldError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"{what}: {e}") from None


def _space(path: str, char: int | None, what: str):
    data = _load(path, what)
    alg = _algebra(data, char, what)
    dim = data.get("dim") if isinstance(data, dict) else None
    ring = None
    if isinstance(data, dict) and "intersection_ring" in data:
        ring = _algebra(data["intersection_ring"], char, f"{what}.intersection_ring")
    return data, alg, dim, ring


def _window(text: str | None):
    if not text:
        return None
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise InputError(f"--window: expected lo:hi, got {text!r}") from None


def _morphism(path: str | None, source, target) -> AlgebraMorphism | None:
    if path is None:
        return None
    data = _load(path, "--map")
    if not isinstance(data, dict):
        raise InputError("--map: expected an object {generator: [[coef, {name: exp}], ...]}")
    try:
        return AlgebraMorphism.from_terms(source, target, data)
    except (AlgebraError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"--map: {e}") from None


# ---------------------------------------------------------------------------
# report helpers

def _field_json(F: FieldSpec) -> dict:
    return {"characteristic": F.characteristic, "symbol": F.symbol}


def _loop_json(res: LoopHomology) -> dict:
    out: dict = {"complete": res.complete, "unresolved": list(res.unresolved)}
    if res.sparsity is not None:
        out["sparsity"] = res.sparsity.to_json()
    if res.einf is not None:
        page = res.einf.page
        out["e2"] = page.to_json()
        out["collapse"] = res.einf.collapse.to_json()
        P = res.einf.presentation
        out["extensions"] = [r.to_json(P) for r in res.reports]
    if res.lift is not None:
        out["zero_column_lift"] = res.lift.to_json()
    if res.presentation is not None:
        L = res.presentation
        out["presentation"] = {
            "text": L.describe(),
            "generators": [{"name": g.name, "degree": g.degree, "bidegree": list(g.bidegree),
                            **({"bound": g.bound} if g.bound is not None else {})}
                           for g in L.generators],
            "relations": [L.format_relation(r) for r in L.all_relations()],
        }
    return out


def _loop_text(res: LoopHomology) -> str:
    lines = []
    if res.presentation is not None:
        L = res.presentation
        lines.append(L.describe())
        lines.append("degrees: " + ", ".join(f"|{g.name}|={g.degree}" for g in L.generators))
    else:
        lines.append("incomplete result")
        if res.refusal is not None:
            lines.append(f"collapse refused: {res.refusal.reason}")
        for u in res.unresolved:
            lines.append(f"unresolved extension: {u}")
    if res.einf is not None:
        c = res.einf.collapse
        lines.append(f"collapse: {c.kind}" + (f" ({c.citation})" if c.citation else ""))
        for r in res.reports:
            lines.append(f"  {r.candidate.label}: {r.verdict}")
    if res.lift is not None:
        lines.append("zero-column lift: " + ", ".join(res.lift.labels))
    return "\n".join(lines)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json" or text is None:
        body = json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2,
                          ensure_ascii=False)
    else:
        body = text
    if args.out:
        Path(args.out).write_text(body + "\n")
    else:
        sys.stdout.write(body + "\n")


def _dims_json(dims: dict) -> list:
    return [{"p": p, "q": q, "dim": d} for (p, q), d in sorted(dims.items()) if d]


# ---------------------------------------------------------------------------
# commands

def cmd_hh(args) -> int:
    alg = _algebra(_load(args.algebra, "--algebra"), args.char, "--algebra")
    page = build_e2(alg, None, 0, args.pmax)
    h = page.hh
    qw = _window(args.window)
    payload = {"command": "hh", "field": _field_json(alg.field), "hh": h.to_json(),
               "dims": _dims_json(h.series(args.pmax, qw))}
    text = f"HH = {h.describe()}\n" + "\n".join(
        f"  {g.name} at {g.bidegree}" for g in h.presentation.generators)
    if args.format == "chart":
        text = render_chart(page, args.pmax, qw, args.labels)
    _emit(args, payload, text)
    return 0


def _resolve_dim(args, dim) -> int:
    d = args.dim_n if args.dim_n is not None else dim
    if d is None:
        raise InputError("dimension of N unknown: give \"dim\" in the space file or --dim-n")
    return int(d)


def cmd_loop(args) -> int:
    data, alg, dim, ring = _space(args.space, args.char, "--space")
    cite = args.assume_collapse or (data.get("collapse_citation") if isinstance(data, dict) else None)
    res = loop_homology(alg, _resolve_dim(args, dim), cite, args.pmax, ring)
    payload = {"command": "loop", "field": _field_json(alg.field), **_loop_json(res)}
    _emit(args, payload, _loop_text(res))
    return 0 if res.complete else 2


def cmd_relative(args) -> int:
    data, N, dim, ring = _space(args.space, args.char, "--space")
    if not args.base:
        raise InputError("--base is required for relative-loop")
    _, M, _, _ = _space(args.base, args.char, "--base")
    f = _morphism(args.map, M, N)
    res = relative_loop_homology(M, N, f, _resolve_dim(args, dim), args.assume_collapse, args.pmax)
    payload = {"command": "relative-loop", "field": _field_json(N.field), **_loop_json(res)}
    _emit(args, payload, _loop_text(res))
    return 0 if res.complete else 2


def cmd_e2(args) -> int:
    data, alg, dim, _ = _space(args.space or args.algebra, args.char, "--space")
    page = build_e2(alg, None, int(args.dim_n or dim or 0), args.pmax)
    try:
        sp = collapse_by_sparsity(page)
        sj = sp.to_json()
    except WindowTooNarrowError as e:
        sp, sj = None, {"kind": "window_too_narrow", "reason": str(e)}
    qw = _window(args.window)
    payload = {"command": "e2", "field": _field_json(alg.field), "page": page.to_json(args.pmax, qw),
               "sparsity": sj, "generator_degrees": page.generator_degrees()}
    if args.format == "chart":
        text = render_chart(page, args.pmax, qw, args.labels)
    else:
        text = f"E2 = {page.hh.describe()}\nsparsity: {sj['kind']}"
    _emit(args, payload, text)
    return 0 if isinstance(sp, CollapseCertificate) or args.assume_collapse else 2


def cmd_ext_check(args) -> int:
    data, alg, dim, _ = _space(args.space or args.algebra, args.char, "--space")
    dim_n = args.dim_n if args.dim_n is not None else dim
    page = build_e2(alg, None, int(dim_n or 0), args.pmax)
    if args.no_simplify and len(alg.generators) == 1:
        from .emss import E2Page
        page = E2Page(hh_ring(alg, args.pmax), int(dim_n or 0), ("M", "M"), args.pmax)
    res = _solve(page, None if dim_n is None else int(dim_n), args.assume_collapse, None, False)
    payload = {"command": "ext-check", "field": _field_json(alg.field), **_loop_json(res)}
    _emit(args, payload, _loop_text(res))
    undecided = any(r.verdict != "holds" for r in res.reports)
    return 2 if undecided or not res.complete else 0


def cmd_tor(args) -> int:
    ring = _algebra(_load(args.ring, "--ring"), args.char, "--ring")

    def module(path, mp, what):
        if path is None:
            return ModuleSpec.trivial(ring)
        coeffs = _algebra(_load(path, what), args.char, what)
        f = _morphism(mp, ring, coeffs)
        try:
            return ModuleSpec(ring, coeffs, f)
        except AlgebraError as e:
            raise InputError(f"{what}: {e}") from None

    left = module(args.left, args.left_map, "--left")
    right = module(args.right, args.right_map, "--right")
    win = _window(args.window) or (0, 24)
    try:
        H = cohomology(koszul_tor_complex(ring, left, right, win))
    except ComplexError as e:
        raise InputError(f"--ring: {e}") from None
    dims = H.nonzero()
    payload = {"command": "tor", "field": _field_json(ring.field),
               "dims": [{"s": s, "internal": q, "degree": q - s, "dim": d}
                        for (s, q), d in dims.items()]}
    text = "\n".join(f"Tor_{s} internal {q} (degree {q - s}): {d}" for (s, q), d in dims.items())
    _emit(args, payload, text)
    return 0


def cmd_chart(args) -> int:
    data, alg, dim, _ = _space(args.space or args.algebra, args.char, "--space")
    page = build_e2(alg, None, int(args.dim_n or dim or 0), args.pmax)
    qw = _window(args.window)
    text = render_chart(page, args.pmax, qw, args.labels)
    if args.format == "json":
        _emit(args, {"command": "chart", "chart": text.split("\n")}, text)
    else:
        _emit(args, {}, text)
    return 0


def cmd_oracle(args) -> int:
    alg = _algebra(_load(args.algebra, "--algebra"), args.char, "--algebra")
    g = alg.generators
    if len(g) != 1 or g[0].bound is None or alg.relations:
        raise InputError("--algebra: oracle-compare needs K[x]/(x^(n+1))")
    d, n = g[0].degree, g[0].bound
    m = d // 2 if d % 2 == 0 else d
    try:
        per = cohomology(periodic_hochschild_complex(m, n, alg.field, s_max=args.pmax, x_degree=d)).nonzero()
    except ComplexError as e:
        raise InputError(f"--algebra: {e}") from None
    bar = cohomology(bar_complex_truncated(alg, p_max=args.pmax)).nonzero()
    equal = per == bar
    payload = {"command": "oracle-compare", "field": _field_json(alg.field), "equal": equal,
               "pmax": args.pmax, "periodic": _dims_json(per), "bar": _dims_json(bar)}
    text = "dims equal on window" if equal else "dims DIFFER on window"
    _emit(args, payload, text)
    return 0 if equal else 2


COMMANDS = {"hh": cmd_hh, "loop": cmd_loop, "relative-loop": cmd_relative, "e2": cmd_e2,
            "ext-check": cmd_ext_check, "tor": cmd_tor, "chart": cmd_chart,
            "oracle-compare": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emss-loop", description="Loop homology via the EMSS.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--algebra")
    ap.add_argument("--space")
    ap.add_argument("--base")
    ap.add_argument("--map")
    ap.add_argument("--ring")
    ap.add_argument("--left")
    ap.add_argument("--left-map")
    ap.add_argument("--right")
    ap.add_argument("--right-map")
    ap.add_argument("--char", type=int)
    ap.add_argument("--window")
    ap.add_argument("--pmax", type=int, default=4)
    ap.add_argument("--format", choices=["json", "text", "chart"], default="json")
    ap.add_argument("--labels", action="store_true")
    ap.add_argument("--assume-collapse")
    ap.add_argument("--dim-n", type=int)
    ap.add_argument("--no-simplify", action="store_true")
    ap.add_argument("--out")
    return ap


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--window -12:4" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        if args.char is not None:
            FieldSpec(args.char)
        need = {"hh": "algebra", "oracle-compare": "algebra", "loop": "space",
                "relative-loop": "space", "tor": "ring"}.get(args.command)
        if need and not getattr(args, need):
            raise InputError(f"--{need} is required for {args.command}")
        if args.command in ("e2", "ext-check", "chart") and not (args.space or args.algebra):
            raise InputError(f"--space or --algebra is required for {args.command}")
        return COMMANDS[args.command](args)
    except (InputError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (UnsupportedAlgebraError, EnumerationError, ChartBudgetError, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CertificationError as e:
        print(f"internal error (certification failed): {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
