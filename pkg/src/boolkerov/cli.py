"""Command-line front end: tables, verification suites, result cache."""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from math import factorial
from pathlib import Path

from . import basischange, heiscalc, observables
from .combinatorics import (Partition, enumerate_partitions, centralizer_order,
                            partitions_up_to, reflection_length_of_type)
from .exactmath import (GradedPolynomial, InconsistentSystemError,
                        InvalidInputError, iota_eigenvalue)
from .heiscalc import RewriteInvariantError

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# serialization helpers


def _ser_rational(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _ser_polynomial(p: GradedPolynomial) -> list[dict]:
    return [{"coeff": _ser_rational(c), "vars": list(mono)}
            for mono, c in p.sorted_terms()]


def _doc(command: str, params: dict, rows: list[dict]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "params": params, "rows": rows}


def _canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# result cache


class ResultCache:
    """File-backed store of canonical JSON documents, keyed by the command,
    its parameters, and the schema version."""

    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get("BK_CACHE_DIR")
        if root is None:
            base = os.environ.get("XDG_CACHE_HOME") or (Path.home() / ".cache")
            root = Path(base) / "boolean-kerov"
        self.root = Path(root)

    def _path(self, command: str, params: dict) -> Path:
        key = json.dumps({"schema_version": SCHEMA_VERSION, "command": command,
                          "params": params}, sort_keys=True)
        digest = hashlib.sha256(key.encode()).hexdigest()
        return self.root / f"{command}-{digest[:24]}.json"

    def get(self, command: str, params: dict) -> dict | None:
        path = self._path(command, params)
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if doc.get("schema_version") != SCHEMA_VERSION:
            return None
        return doc

    def put(self, command: str, params: dict, doc: dict) -> None:
        path = self._path(command, params)
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(_canonical_json(doc))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


# ---------------------------------------------------------------------------
# command implementations (each returns a document)


def cmd_observables(lam_spec: str, max_k: int, kind: str) -> dict:
    lam = Partition.parse(lam_spec)
    params = {"lambda": str(lam), "kind": kind, "max_k": max_k}
    if kind == "profile":
        prof = observables.profile_coordinates(lam)
        rows = [{"role": "minima", "contents": list(prof.minima)},
                {"role": "maxima", "contents": list(prof.maxima)}]
        return _doc("observables", params, rows)
    fn = {"moment": observables.moments,
          "boolean": observables.boolean_cumulants,
          "twisted": observables.twisted_boolean_cumulants,
          "free": observables.free_cumulants}[kind]
    vec = fn(lam, max_k)
    rows = [{"k": k, "value": _ser_rational(vec[k])}
            for k in range(vec.start, vec.max_index + 1)]
    return _doc("observables", params, rows)


def cmd_kerov_boolean(max_pi_size: int) -> dict:
    if max_pi_size < 1:
        raise InvalidInputError("max-pi-size must be >= 1")
    rows = []
    for size in range(1, max_pi_size + 1):
        for pi in enumerate_partitions(size):
            p = basischange.boolean_kerov_polynomial(pi)
            q = heiscalc.reduce_alpha(pi, (0,) * pi.size).relabel(
                "x", index_fn=lambda j: j + 2)
            wd = p.weighted_degree()
            rows.append({
                "pi": str(pi),
                "polynomial": _ser_polynomial(p),
                "display": str(p),
                "degree": 0 if wd is None else wd,
                "iota": iota_eigenvalue(p),
                "agree": p == q,
                "diff": "" if p == q else f"solver {p} vs diagrammatic {q}",
            })
    return _doc("kerov-boolean", {"max_pi_size": max_pi_size}, rows)


def cmd_expand_boolean(max_k: int) -> dict:
    if max_k < 2:
        raise InvalidInputError("max-k must be >= 2")
    rows = []
    for k in range(2, max_k + 1):
        solver = basischange.boolean_in_characters(k)
        diagram = heiscalc.aggregate_by_cycle_type(
            heiscalc.expand_dotted_strand(k - 2))
        agree = diagram == {pi: int(c) for pi, c in solver.items()}
        support_ok = all(reflection_length_of_type(pi) <= k - 2
                         and pi.size <= k - 1 for pi in solver)
        parity_ok = all((reflection_length_of_type(pi) - k) % 2 == 0
                        for pi in solver)
        rows.append({
            "k": k,
            "coefficients": [{"pi": str(pi), "coeff": _ser_rational(c)}
                             for pi, c in sorted(solver.items())],
            "support_ok": support_ok,
            "parity_ok": parity_ok,
            "agree": agree,
            "diff": "" if agree else
                    f"solver {sorted((str(p), _ser_rational(c)) for p, c in solver.items())} "
                    f"vs diagrammatic {sorted((str(p), c) for p, c in diagram.items())}",
        })
    return _doc("expand-boolean", {"max_k": max_k}, rows)


# ---------------------------------------------------------------------------
# verification suites


def _check_observable_invariants(max_n: int, max_k: int, add) -> None:
    for n in range(max_n + 1):
        for lam in enumerate_partitions(n):
            prof = observables.profile_coordinates(lam)  # validates itself
            observables.transition_measure(lam)          # validates itself
            m = observables.moments(lam, max_k)
            b = observables.boolean_cumulants(lam, max_k)
            if m[1] != 0 or b[1] != 0:
                add(f"observables first values vanish at {lam}", False,
                    f"M_1={m[1]}, B_1={b[1]}")
                return
            if b[2] != n:
                add(f"observables B_2 = |lambda| at {lam}", False, f"B_2={b[2]}")
                return
            if not all(v.denominator == 1 for v in m.values + b.values):
                add(f"observables integrality at {lam}", False, "")
                return
            bt = observables.boolean_cumulants(lam.conjugate(), max_k)
            if any(bt[k] != (-1) ** k * b[k] for k in range(1, max_k + 1)):
                add(f"observables transpose rule at {lam}", False, "")
                return
            if not observables.moment_cumulant_check(lam, max_k):
                add(f"observables moment/cumulant relation at {lam}", False, "")
                return
    add(f"observable invariants, diagrams up to size {max_n}, k <= {max_k}",
        True, "")


def hook_length_dimension(lam: Partition) -> int:
    """Independent dimension formula: n! over the product of hook lengths."""
    conj = lam.conjugate().parts
    prod = 1
    for i, p in enumerate(lam.parts):
        for j in range(p):
            prod *= p - j + conj[j] - (i + 1)
    return factorial(lam.size) // prod


def _check_characters(max_n_orth: int, max_n_dim: int, add) -> None:
    ok = True
    detail = ""
    for n in range(1, max_n_orth + 1):
        parts = enumerate_partitions(n)
        table = {lam: {rho: observables.mn_character(lam, rho) *
                       observables.character_dimension(lam)
                       for rho in parts} for lam in parts}
        for lam in parts:
            for mu in parts:
                ip = sum(factorial(n) // centralizer_order(rho)
                         * table[lam][rho] * table[mu][rho] for rho in parts)
                want = factorial(n) if lam == mu else 0
                if ip != want:
                    ok, detail = False, f"orthogonality fails at {lam},{mu}"
    add(f"character orthogonality, n <= {max_n_orth}", ok, detail)
    ok, detail = True, ""
    for n in range(max_n_dim + 1):
        for lam in enumerate_partitions(n):
            if observables.character_dimension(lam) != hook_length_dimension(lam):
                ok, detail = False, f"dimension mismatch at {lam}"
    add(f"character dimension vs hook lengths, n <= {max_n_dim}", ok, detail)


def _check_dual_route(max_pi: int, max_agg_k: int, add) -> None:
    ok, detail = True, ""
    for pi in partitions_up_to(max_pi):
        if pi.size == 0:
            continue
        p = basischange.boolean_kerov_polynomial(pi)
        q = heiscalc.reduce_alpha(pi, (0,) * pi.size).relabel(
            "x", index_fn=lambda j: j + 2)
        if p != q:
            ok, detail = False, f"routes disagree at {pi}: {p} vs {q}"
    add(f"character expansion dual-route agreement, |pi| <= {max_pi}", ok, detail)
    ok, detail = True, ""
    for k in range(0, max_agg_k + 1):
        agg = heiscalc.aggregate_by_cycle_type(heiscalc.expand_dotted_strand(k))
        want = {pi: int(c) for pi, c in basischange.boolean_in_characters(k + 2).items()}
        if agg != want:
            ok, detail = False, f"aggregates disagree at k={k}"
    add(f"cumulant expansion dual-route agreement, k <= {max_agg_k}", ok, detail)


def _check_rewriting(max_step_k: int, max_eval_n: int, max_full_k: int,
                     max_order_pi: int, add) -> None:
    ok, detail = True, ""
    diagrams = partitions_up_to(max_eval_n)
    for k in range(max_step_k + 1):
        lhs = heiscalc.close_state(heiscalc.DiagramState(
            {heiscalc.make_config((0,), [(k, 0)]): 1}))
        rhs = heiscalc.close_state(heiscalc.bubble_move_step(k))
        if lhs != rhs:
            ok, detail = False, f"closed bubble-move identity fails at k={k}"
            break
        for lam in diagrams:
            if heiscalc.evaluate_center(lhs, lam) != heiscalc.evaluate_center(rhs, lam):
                ok, detail = False, f"bridge evaluation fails at k={k}, {lam}"
    add(f"bubble-move closure identity, k <= {max_step_k}, "
        f"diagrams up to size {max_eval_n}", ok, detail)
    ok, detail = True, ""
    for k in range(max_full_k + 1):
        m, n = heiscalc.bubble_move_full(k)
        if any(c < 0 for c in m.values()) or any(c < 0 for c in n.values()):
            ok, detail = False, f"negative coefficient at k={k}"
    add(f"bubble-move coefficient positivity, k <= {max_full_k}", ok, detail)
    ok, detail = True, ""
    for pi in partitions_up_to(max_order_pi):
        if pi.size == 0:
            continue
        dots = (0,) * pi.size
        if (heiscalc.alpha_center(pi.parts, dots, "innermost")
                != heiscalc.alpha_center(pi.parts, dots, "outermost")):
            ok, detail = False, f"schedule dependence at {pi}"
    add(f"reduction order-independence, |pi| <= {max_order_pi}", ok, detail)


def cmd_verify(profile: str) -> dict:
    checks: list[dict] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    if profile == "quick":
        _check_observable_invariants(6, 8, add)
        _check_characters(4, 5, add)
        report = basischange.verify_theorems(4, 4)
        checks.extend(report.checks)
        _check_dual_route(4, 2, add)
        _check_rewriting(4, 4, 8, 3, add)
    else:
        _check_observable_invariants(10, 12, add)
        _check_characters(7, 8, add)
        report = basischange.verify_theorems(6, 8)
        checks.extend(report.checks)
        _check_dual_route(5, 6, add)
        _check_rewriting(8, 8, 12, 4, add)
    return _doc("verify", {"profile": profile}, checks)


# ---------------------------------------------------------------------------
# rendering


def _render_text(doc: dict) -> str:
    cmd = doc["command"]
    rows = doc["rows"]
    out: list[str] = []
    if cmd == "observables":
        if doc["params"]["kind"] == "profile":
            parts = [f"{r['role']}: " + ",".join(str(v) for v in r["contents"])
                     for r in rows]
            out.append(" | ".join(parts))
        else:
            out.append(",".join(str(r["value"]) for r in rows))
    elif cmd == "kerov-boolean":
        for r in rows:
            out.append(f"{r['pi']}: {r['display']} | degree {r['degree']} | "
                       f"iota {r['iota']:+d} | agree "
                       f"{'yes' if r['agree'] else 'no: ' + r['diff']}")
    elif cmd == "expand-boolean":
        for r in rows:
            coeffs = ", ".join(f"{c['pi']}: {c['coeff']}"
                               for c in r["coefficients"])
            out.append(f"k={r['k']}: {coeffs} | support "
                       f"{'ok' if r['support_ok'] else 'VIOLATED'} | parity "
                       f"{'ok' if r['parity_ok'] else 'VIOLATED'} | agree "
                       f"{'yes' if r['agree'] else 'no: ' + r['diff']}")
    elif cmd == "verify":
        passed = sum(1 for r in rows if r["passed"])
        for r in rows:
            mark = "PASS" if r["passed"] else "FAIL"
            suffix = f" ({r['detail']})" if r["detail"] and not r["passed"] else ""
            out.append(f"{mark} {r['name']}{suffix}")
        out.append(f"{passed} of {len(rows)} checks passed")
    return "\n".join(out) + "\n"


_CSV_COLUMNS = {
    "observables": ["k", "value"],
    "kerov-boolean": ["pi", "display", "degree", "iota", "agree"],
    "expand-boolean": ["k", "coefficients", "support_ok", "parity_ok", "agree"],
    "verify": ["name", "passed", "detail"],
}


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        if value and isinstance(value[0], dict):  # coefficient list
            return "; ".join(f"{c['pi']}: {c['coeff']}" for c in value)
        return " ".join(str(v) for v in value)
    return str(value)


def _render_csv(doc: dict) -> str:
    cmd = doc["command"]
    if cmd == "observables" and doc["params"]["kind"] == "profile":
        columns = ["role", "contents"]
    else:
        columns = _CSV_COLUMNS[cmd]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in doc["rows"]:
        writer.writerow([_csv_cell(r[c]) for c in columns])
    return buf.getvalue()


def _render_latex(doc: dict) -> str:
    cmd = doc["command"]
    if cmd == "observables" and doc["params"]["kind"] == "profile":
        columns = ["role", "contents"]
    else:
        columns = _CSV_COLUMNS[cmd]
    lines = [" & ".join(columns) + r" \\", r"\hline"]
    for r in doc["rows"]:
        lines.append(" & ".join(_csv_cell(r[c]).replace("_", r"\_")
                                for c in columns) + r" \\")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str, timestamp: bool = False) -> str:
    if fmt == "json":
        if timestamp:
            doc = dict(doc)
            doc["timestamp"] = datetime.datetime.now(
                datetime.timezone.utc).isoformat()
        return _canonical_json(doc)
    body = {"text": _render_text, "csv": _render_csv,
            "latex": _render_latex}[fmt](doc)
    if timestamp:
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        prefix = "% " if fmt == "latex" else "# "
        body = f"{prefix}generated {stamp}\n" + body
    return body


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["text", "csv", "json", "latex"],
                     default="text")
    sub.add_argument("--no-cache", action="store_true",
                     help="bypass the result cache")
    sub.add_argument("--timestamp", action="store_true",
                     help="stamp the output with the generation time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolkerov",
        description="Exact Young-diagram observables and the expansions "
                    "between symmetric-group characters and Boolean cumulants")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("observables", help="observable values of one diagram")
    p.add_argument("--lambda", dest="lam", required=True,
                   help='partition, e.g. "(2,1)" or "2,1"')
    p.add_argument("--kind", choices=["moment", "boolean", "twisted", "free",
                                      "profile"], default="moment")
    p.add_argument("--max-k", type=int, default=8)
    _add_common(p)

    p = subs.add_parser("kerov-boolean",
                        help="character-to-cumulant polynomials P_pi")
    p.add_argument("--max-pi-size", type=int, required=True)
    _add_common(p)

    p = subs.add_parser("expand-boolean",
                        help="cumulant-to-character coefficients m_pi")
    p.add_argument("--max-k", type=int, required=True)
    _add_common(p)

    p = subs.add_parser("verify", help="run the invariant suites")
    p.add_argument("profile", choices=["quick", "full"])
    _add_common(p)
    return parser


def _compute(args) -> dict:
    if args.command == "observables":
        params = {"lam_spec": args.lam, "max_k": args.max_k, "kind": args.kind}
        builder = lambda: cmd_observables(args.lam, args.max_k, args.kind)
    elif args.command == "kerov-boolean":
        params = {"max_pi_size": args.max_pi_size}
        builder = lambda: cmd_kerov_boolean(args.max_pi_size)
    elif args.command == "expand-boolean":
        params = {"max_k": args.max_k}
        builder = lambda: cmd_expand_boolean(args.max_k)
    else:
        params = {"profile": args.profile}
        builder = lambda: cmd_verify(args.profile)
    if args.no_cache or args.command == "verify":
        return builder()
    cache = ResultCache()
    doc = cache.get(args.command, params)
    if doc is None:
        doc = builder()
        cache.put(args.command, params, doc)
    return doc


def _exit_code(doc: dict) -> int:
    rows = doc["rows"]
    if doc["command"] == "verify":
        return 0 if all(r["passed"] for r in rows) else 1
    if doc["command"] in ("kerov-boolean", "expand-boolean"):
        return 0 if all(r["agree"] for r in rows) else 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = _compute(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RewriteInvariantError, InconsistentSystemError,
            AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(render(doc, args.format, args.timestamp))
    return _exit_code(doc)


if __name__ == "__main__":
    sys.exit(main())
