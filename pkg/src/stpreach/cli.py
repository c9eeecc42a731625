"""Command-line front end: ``stpreach <command> [options]``.

Exit status is 0 on success (negative verdicts included), 2 for malformed
input and 3 for precondition violations such as a matrix whose row count
does not divide its column count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .annihilator import (
    Poly,
    format_poly,
    min_annihilator_space,
    min_annihilator_union,
    min_annihilator_vector,
    poly_divmod,
    union_annihilators,
    union_proper_test,
)
from .dimension import (
    build_profile,
    closed_form_dim,
    dim_trajectory,
    factorize,
    is_reachable_dim,
    minimal_invariant_time,
)
from .reachability import (
    PreconditionError,
    is_member,
    reach_subspaces,
    subspace_relate,
)
from .stp_core import DimensionError, RMatrix, RVector

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION = 0, 2, 3


class ParseError(ValueError):
    pass


# -- file formats -------------------------------------------------------------


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            yield lineno, col, tok
            col += len(tok) - 1


def _rational(tok: str, lineno: int, col: int) -> Fraction:
    num, sep, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"line {lineno}, column {col}: bad number {tok!r}") from None
    if d == 0:
        raise ParseError(f"line {lineno}, column {col}: zero denominator in {tok!r}")
    return Fraction(n, d)


def _read_header(toks, count: int, what: str) -> list[int]:
    out = []
    for _ in range(count):
        try:
            lineno, col, tok = next(toks)
        except StopIteration:
            raise ParseError(f"{what} header incomplete") from None
        if lineno != 1:
            raise ParseError(f"line {lineno}: {what} header must be on line 1")
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"line 1, column {col}: bad dimension {tok!r}") from None
        if v < 1:
            raise ParseError(f"line 1, column {col}: dimension must be positive")
        out.append(v)
    return out


def _read_entries(toks, n: int, what: str) -> list[Fraction]:
    vals = []
    for lineno, col, tok in toks:
        if lineno == 1:
            raise ParseError(f"line 1, column {col}: unexpected token {tok!r} after {what} header")
        if len(vals) == n:
            raise ParseError(f"line {lineno}, column {col}: more than {n} entries")
        vals.append(_rational(tok, lineno, col))
    if len(vals) != n:
        raise ParseError(f"expected {n} entries, found {len(vals)}")
    return vals


def parse_matrix_text(text: str) -> RMatrix:
    toks = _tokens(text)
    rows, cols = _read_header(toks, 2, "matrix")
    return RMatrix(_read_entries(toks, rows * cols, "matrix"), rows, cols)


def parse_vector_text(text: str) -> RVector:
    toks = _tokens(text)
    (dim,) = _read_header(toks, 1, "vector")
    return RVector(_read_entries(toks, dim, "vector"))


def parse_matrix(path) -> RMatrix:
    return parse_matrix_text(_read(path))


def parse_vector(path) -> RVector:
    return parse_vector_text(_read(path))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


# -- reports ------------------------------------------------------------------


@dataclass
class Table:
    headers: list[str]
    rows: list[list[Any]]


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    fields: dict[str, Any] = field(default_factory=dict)
    tables: dict[str, Table] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    elapsed: float | None = None


def to_jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Poly):
        return {"text": format_poly(v), "coeffs": [str(c) for c in v.coeffs]}
    if isinstance(v, RVector):
        return [str(c) for c in v.entries]
    if isinstance(v, RMatrix):
        return [[str(c) for c in v.row(i)] for i in range(v.rows)]
    if isinstance(v, Table):
        return {"headers": v.headers, "rows": [[to_jsonable(c) for c in r] for r in v.rows]}
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [to_jsonable(x) for x in items]
    return v


def poly_from_json(obj) -> Poly:
    return Poly(Fraction(c) for c in obj["coeffs"])


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, RVector):
        return "[" + " ".join(str(c) for c in v.entries) + "]"
    if isinstance(v, RMatrix):
        return "[" + "; ".join(" ".join(str(c) for c in v.row(i)) for i in range(v.rows)) + "]"
    if isinstance(v, Poly):
        return format_poly(v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple, set)):
        items = sorted(v) if isinstance(v, set) else v
        return "{" + ", ".join(_cell(x) for x in items) + "}"
    return str(v)


def render_json(rep: Report) -> str:
    doc = {
        "command": rep.command,
        "inputs": to_jsonable(rep.inputs),
        "fields": to_jsonable(rep.fields),
        "tables": to_jsonable(rep.tables),
    }
    if rep.errors:
        doc["errors"] = rep.errors
    if rep.elapsed is not None:
        doc["elapsed_seconds"] = round(rep.elapsed, 6)
    return json.dumps(doc, indent=2) + "\n"


def _table_lines(t: Table) -> list[str]:
    cells = [t.headers] + [[_cell(c) for c in r] for r in t.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(t.headers))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def render_text(rep: Report) -> str:
    out = [f"# {rep.command}"]
    out += [f"{k}: {_cell(v)}" for k, v in rep.inputs.items()]
    for k, v in rep.fields.items():
        out.append(f"{k}: {_cell(v)}")
    for name, t in rep.tables.items():
        out += ["", f"## {name}"] + _table_lines(t)
    for name, msg in rep.errors.items():
        out.append(f"error in {name}: {msg}")
    if rep.elapsed is not None:
        out.append(f"elapsed: {rep.elapsed:.6f}s")
    return "\n".join(out) + "\n"


def render_csv(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    multi = len(rep.tables) > 1
    for i, (name, t) in enumerate(rep.tables.items()):
        if multi:
            if i:
                buf.write("\n")
            buf.write(f"# {name}\n")
        w.writerow(t.headers)
        for r in t.rows:
            w.writerow([_cell(c) for c in r])
    if not rep.tables:
        w.writerow(["field", "value"])
        for k, v in rep.fields.items():
            w.writerow([k, _cell(v)])
    return buf.getvalue()


RENDERERS: dict[str, Callable[[Report], str]] = {
    "text": render_text,
    "json": render_json,
    "csv": render_csv,
}


# -- commands -----------------------------------------------------------------


def _bounded_mk(A: RMatrix) -> tuple[int, int]:
    if A.cols % A.rows:
        raise PreconditionError(
            f"matrix is {A.rows}x{A.cols}: {A.rows} does not divide {A.cols}, "
            "so the system is not dimension-bounded"
        )
    return A.rows, A.cols // A.rows


def _factored(n: int) -> str:
    return str(factorize(n)) if n <= 10**12 else ""


def _profile_fields(pr) -> dict[str, Any]:
    return {
        "alpha": pr.alpha,
        "d": pr.d,
        "p1": pr.p1,
        "r_star": pr.r_star,
        "t_star_bound": pr.t_star_bound,
        "minimal_t_star": minimal_invariant_time(pr.m, pr.k, pr.p),
    }


def _profile_tables(pr) -> dict[str, Table]:
    return {
        "k_primes": Table(
            ["prime", "mu", "beta", "tau", "eta", "exp_in_m"],
            [[kp.prime, kp.mu, kp.beta, kp.tau, kp.eta, kp.shared] for kp in pr.k_primes],
        ),
        "m_primes": Table(
            ["prime", "nu", "theta"],
            [[mp.prime, mp.nu, mp.theta] for mp in pr.m_primes],
        ),
    }


def _dims_table(m: int, k: int, p: int, t_max: int) -> Table:
    pr = build_profile(m, k, p)
    traj = dim_trajectory(m, k, p, t_max)
    rows = []
    for t, r in enumerate(traj.dims):
        rows.append([t, r, closed_form_dim(pr, t) if t else None, _factored(r)])
    return Table(["t", "r", "closed_form", "factored"], rows)


def cmd_dims(m: int, k: int, p: int, t_max: int | None = None) -> Report:
    pr = build_profile(m, k, p)
    if t_max is None:
        t_max = pr.t_star_bound + 1
    rep = Report("dims", {"m": m, "k": k, "p": p, "t_max": t_max})
    rep.fields = {
        "r_star": pr.r_star,
        "r_star_factored": _factored(pr.r_star),
        "t_star_bound": pr.t_star_bound,
        "minimal_t_star": minimal_invariant_time(m, k, p),
    }
    rep.tables["dims"] = _dims_table(m, k, p, t_max)
    return rep


def cmd_profile(m: int, k: int, p: int) -> Report:
    pr = build_profile(m, k, p)
    rep = Report("profile", {"m": m, "k": k, "p": p})
    rep.fields = _profile_fields(pr)
    rep.tables = _profile_tables(pr)
    return rep


def cmd_reachdim(m: int, k: int, p: int, r: int) -> Report:
    res = is_reachable_dim(m, k, p, r)
    rep = Report("reachdim", {"m": m, "k": k, "p": p, "r": r})
    rep.fields = {
        "reachable": res.reachable,
        "witness_times": list(res.witnesses),
        "at_initial_time": res.at_initial_time,
        "is_invariant_dim": res.is_invariant,
        "all_times_from": res.invariant_from,
    }
    return rep


def _basis_table(S) -> Table:
    return Table(["i", "vector"], [[i + 1, b] for i, b in enumerate(S.basis)])


def cmd_basis(A: RMatrix, p: int, t: int) -> Report:
    S = reach_subspaces(A, p, t)[t]
    rep = Report("basis", {"matrix": A, "p": p, "t": t})
    rep.fields = {"ambient": S.ambient, "dim": S.dim}
    rep.tables["basis"] = _basis_table(S)
    return rep


def cmd_member(A: RMatrix, p: int, x: RVector, t: int | None = None, t_max: int | None = None) -> Report:
    if t is not None:
        times = [t]
        horizon = t
    else:
        if t_max is None:
            t_max = 4
            if A.cols % A.rows == 0:
                t_max = build_profile(A.rows, A.cols // A.rows, p).t_star_bound + 2
        times = list(range(t_max + 1))
        horizon = t_max
    subs = reach_subspaces(A, p, horizon)
    rep = Report("member", {"matrix": A, "p": p, "vector": x, "t" if t is not None else "t_max": horizon})
    rows, hits = [], []
    for tt in times:
        S = subs[tt]
        v = is_member(S, x, tt)
        if v.reachable:
            hits.append(tt)
        rows.append([tt, S.ambient, S.dim, v.reachable, v.rank_with, v.rank_without, v.diagnostic])
    rep.fields = {"reachable_times": hits}
    rep.tables["verdicts"] = Table(
        ["t", "r", "dim_R", "reachable", "rank_with", "rank_without", "note"], rows
    )
    return rep


def cmd_annihilator(A: RMatrix, x: RVector | None = None, p: int | None = None, r: int | None = None) -> Report:
    inputs: dict[str, Any] = {"matrix": A}
    rep = Report("annihilator", inputs)
    if x is not None:
        inputs["vector"] = x
        rep.fields["min_annihilator"] = min_annihilator_vector(A, x)
    if r is not None:
        inputs["r"] = r
        rep.fields["space_annihilator"] = min_annihilator_space(A, r)
    if p is not None:
        inputs["p"] = p
        m, k = _bounded_mk(A)
        pr = build_profile(m, k, p)
        qs = union_annihilators(A, p)
        q = min_annihilator_union(A, p)
        f = min_annihilator_space(A, pr.r_star)
        rep.fields.update({
            "t_star": minimal_invariant_time(m, k, p),
            "r_star": pr.r_star,
            "union_annihilator": q,
            "invariant_space_annihilator": f,
            "union_test": union_proper_test(A, p).value,
        })
        rep.tables["basis_annihilators"] = Table(["i", "q_i"], [[i + 1, qi] for i, qi in enumerate(qs)])
    if x is None and p is None and r is None:
        raise PreconditionError("annihilator needs --vector, --p or --r")
    return rep


def cmd_report(A: RMatrix, p: int) -> Report:
    rep = Report("report", {"matrix": A, "p": p})
    t_star = None
    try:
        m, k = _bounded_mk(A)
        pr = build_profile(m, k, p)
        rep.fields.update({"m": m, "k": k})
        rep.fields.update(_profile_fields(pr))
        t_star = rep.fields["minimal_t_star"]
        rep.tables["dims"] = _dims_table(m, k, p, pr.t_star_bound + 1)
        rep.tables.update(_profile_tables(pr))
    except (PreconditionError, ValueError) as e:
        rep.errors["profile"] = str(e)

    t0 = t_star if t_star is not None else 0
    subs = reach_subspaces(A, p, t0 + 2)
    for t in range(t0 + 3):
        S = subs[t]
        rep.tables[f"R_{t}"] = Table(
            ["i", "vector"], [[i + 1, b] for i, b in enumerate(S.basis)]
        )
        rep.fields[f"dim_R_{t}"] = f"{S.dim} in V_{S.ambient}"

    try:
        m, k = _bounded_mk(A)
        pr = build_profile(m, k, p)
        qs = union_annihilators(A, p)
        q = min_annihilator_union(A, p)
        f = min_annihilator_space(A, pr.r_star)
        quot, rem = poly_divmod(f, q)
        rep.tables["annihilators"] = Table(["i", "q_i"], [[i + 1, qi] for i, qi in enumerate(qs)])
        rep.fields.update({
            "union_annihilator": q,
            "invariant_space_annihilator": f,
            "f_over_q": quot if rem.is_zero() else None,
            "q_divides_f": rem.is_zero(),
            "union_test": union_proper_test(A, p).value,
        })
    except (PreconditionError, ValueError, RuntimeError) as e:
        rep.errors["annihilators"] = str(e)

    rel_rows = []
    for i in range(t0, t0 + 3):
        for j in range(i + 1, t0 + 3):
            try:
                rel = subspace_relate(subs[i], subs[j])
                rel_rows.append([f"R_{i}", f"R_{j}", rel.relation, rel.intersection_dim])
            except DimensionError as e:
                rel_rows.append([f"R_{i}", f"R_{j}", f"n/a ({e})", None])
    rep.tables["relations"] = Table(["S1", "S2", "relation", "intersection_dim"], rel_rows)
    return rep


# -- argument handling --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stpreach", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=sorted(RENDERERS), default="text")
        sp.add_argument("--no-timing", action="store_true", help="omit the elapsed time")
        return sp

    def mk(sp, need_p=True):
        sp.add_argument("--m", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--matrix", help="matrix file; m and k are read from its shape")
        sp.add_argument("--p", type=int, required=need_p)

    sp = common(sub.add_parser("dims", help="state-dimension trajectory"))
    mk(sp)
    sp.add_argument("--t-max", type=int)

    sp = common(sub.add_parser("profile", help="prime decomposition of (m, k, p)"))
    mk(sp)

    sp = common(sub.add_parser("reachdim", help="is r a reachable dimension"))
    mk(sp)
    sp.add_argument("--r", type=int, required=True)

    sp = common(sub.add_parser("basis", help="basis of the t-step reachable subspace"))
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = common(sub.add_parser("member", help="t-step reachability of a state"))
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--vector", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--t", type=int)
    g.add_argument("--t-max", type=int)

    sp = common(sub.add_parser("annihilator", help="minimal A-annihilators"))
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--vector")
    sp.add_argument("--p", type=int)
    sp.add_argument("--r", type=int)

    sp = common(sub.add_parser("report", help="full analysis of a system"))
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--p", type=int, required=True)
    return ap


def _resolve_mk(args) -> tuple[int, int]:
    if args.matrix:
        return _bounded_mk(parse_matrix(args.matrix))
    if args.m is None or args.k is None:
        raise ParseError("give --m and --k, or --matrix")
    return args.m, args.k


def _positive(**kw):
    for name, v in kw.items():
        if v is not None and v < 1:
            raise ParseError(f"--{name} must be a positive integer")


def dispatch(args) -> Report:
    c = args.command
    _positive(p=getattr(args, "p", None), m=getattr(args, "m", None),
              k=getattr(args, "k", None), r=getattr(args, "r", None))
    for name in ("t", "t_max"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ParseError(f"--{name.replace('_', '-')} must be nonnegative")
    if c == "dims":
        m, k = _resolve_mk(args)
        return cmd_dims(m, k, args.p, args.t_max)
    if c == "profile":
        return cmd_profile(*_resolve_mk(args), args.p)
    if c == "reachdim":
        m, k = _resolve_mk(args)
        return cmd_reachdim(m, k, args.p, args.r)
    A = parse_matrix(args.matrix)
    if c == "basis":
        return cmd_basis(A, args.p, args.t)
    if c == "member":
        return cmd_member(A, args.p, parse_vector(args.vector), args.t, args.t_max)
    if c == "annihilator":
        x = parse_vector(args.vector) if args.vector else None
        return cmd_annihilator(A, x, args.p, args.r)
    return cmd_report(A, args.p)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = dispatch(args)
    except ParseError as e:
        print(f"stpreach: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except (PreconditionError, DimensionError) as e:
        print(f"stpreach: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as e:
        print(f"stpreach: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    if not args.no_timing:
        rep.elapsed = time.perf_counter() - start
    sys.stdout.write(RENDERERS[args.format](rep))
    for name, msg in rep.errors.items():
        print(f"stpreach: {name}: {msg}", file=sys.stderr)
    return EXIT_PRECONDITION if rep.errors else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
