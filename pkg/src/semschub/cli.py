"""
Command line interface.

Subcommands: schubert, sem, expand-schubert, rep, det, paths, quantum,
classify, verify.  Output formats are text (default), json, latex, and --
for rep and paths -- svg figures rendered with matplotlib.  Exit status is
0 on success, 1 on a domain error (precondition or failed verification),
and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from . import lattice, perms, poly, render, schubert as schub
from .errors import BudgetError, DomainError, PatternViolation


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _perm(args) -> perms.Permutation:
    if not args.perm:
        raise DomainError("this command requires --perm")
    return perms.parse_permutation(args.perm)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _format_poly(args, p: poly.Polynomial) -> str:
    if args.format == "json":
        return _json_dump(p.to_json_obj())
    if args.format == "latex":
        return render.poly_latex(p)
    if args.format == "svg":
        raise DomainError("svg output applies to rep and paths only")
    return str(p)


def _read_rep(args) -> lattice.LatticeRep:
    if args.perm:
        return lattice.proper_rep(_perm(args))
    data = sys.stdin.read()
    if not data.strip():
        raise DomainError("provide --perm or pipe a representation (JSON) on stdin")
    return lattice.LatticeRep.from_json_obj(json.loads(data))


def cmd_schubert(args) -> int:
    _emit(args, _format_poly(args, schub.schubert(_perm(args))))
    return 0


def cmd_sem(args) -> int:
    w = _perm(args)
    expansion = poly.sem_expand(schub.schubert(w), max(w.n - 1, 1))
    if args.format == "json":
        _emit(args, _json_dump(expansion.to_json_obj()))
    elif args.format == "latex":
        _emit(args, render.sem_latex(expansion))
    elif args.format == "svg":
        raise DomainError("svg output applies to rep and paths only")
    else:
        _emit(args, render.sem_text(expansion))
    return 0


def cmd_expand_schubert(args) -> int:
    if args.poly:
        f = poly.Polynomial.from_json_obj(json.loads(args.poly))
    else:
        data = sys.stdin.read()
        if not data.strip():
            raise DomainError("provide --poly or pipe a polynomial (JSON) on stdin")
        f = poly.Polynomial.from_json_obj(json.loads(data))
    n = args.n or f.max_x_var() + 1
    coeffs = poly.schubert_expand(f, n)
    items = sorted(coeffs.items(), key=lambda item: item[0].word)
    if args.format == "json":
        _emit(args, _json_dump([{"perm": list(w.word), "coeff": str(c)} for w, c in items]))
    else:
        lines = [f"{w}: {c}" for w, c in items] or ["0"]
        _emit(args, "\n".join(lines))
    return 0


def cmd_rep(args) -> int:
    rep = lattice.proper_rep(_perm(args))
    if args.format == "json":
        _emit(args, _json_dump(rep.to_json_obj()))
    elif args.format == "latex":
        _emit(args, render.matrix_latex(rep))
    elif args.format == "svg":
        _emit(args, render.rep_svg(rep))
    else:
        _emit(args, str(rep))
    return 0


def cmd_det(args) -> int:
    rep = _read_rep(args)
    value = lattice.rep_determinant(rep)
    if args.format == "json":
        _emit(
            args,
            _json_dump(
                {
                    "rep": rep.to_json_obj(),
                    "matrix": [
                        [list(jk) if jk else 0 for jk in row]
                        for row in render.entry_indices(rep)
                    ],
                    "polynomial": value.to_json_obj(),
                }
            ),
        )
    elif args.format == "latex":
        _emit(args, render.matrix_latex(rep) + " = " + render.poly_latex(value))
    else:
        _emit(args, matrix_and_det_text(rep, value))
    return 0


def matrix_and_det_text(rep: lattice.LatticeRep, value: poly.Polynomial) -> str:
    sign = "+" if rep.sign > 0 else "-"
    return f"{render.matrix_text(rep)}\nsign: {sign}1\nsign * det = {value}"


def cmd_paths(args) -> int:
    rep = _read_rep(args)
    systems = lattice.enumerate_path_systems(rep)
    limit = args.budget if args.budget is not None else 20
    if args.format == "svg":
        _emit(args, render.rep_svg(rep))
        return 0
    if args.format == "json":
        _emit(
            args,
            _json_dump(
                {
                    "count": len(systems),
                    "signed_sum": lattice.lgv_sum(rep).to_json_obj(),
                    "systems": [s.to_json_obj() for s in systems[:limit]],
                }
            ),
        )
        return 0
    lines = [f"{len(systems)} nonintersecting path system(s)"]
    for system in systems[:limit]:
        sigma = " ".join(str(s + 1) for s in system.sigma)
        lines.append(f"  sigma: {sigma}  weight: {system.weight()}")
    if len(systems) > limit:
        lines.append(f"  ... ({len(systems) - limit} more; raise --budget to list them)")
    _emit(args, "\n".join(lines))
    return 0


def cmd_quantum(args) -> int:
    _emit(args, _format_poly(args, schub.quantum_schubert(_perm(args))))
    return 0


def cmd_classify(args) -> int:
    w = _perm(args)
    labels = sorted(perms.classify(w))
    payload: dict = {"perm": list(w.word), "labels": labels}
    if "thirteen-avoiding" in labels:
        u, v = perms.factorize(w)
        payload["q_set"] = sorted(perms.q_set(w))
        payload["u"] = list(u.word)
        payload["v"] = list(v.base.word)
    else:
        pattern, positions = perms.thirteen_witness(w)
        payload["violation"] = {"pattern": list(pattern.word), "positions": list(positions)}
    if args.format == "json":
        _emit(args, _json_dump(payload))
        return 0
    lines = [f"perm: {w}", f"labels: {', '.join(labels)}"]
    if "q_set" in payload:
        lines.append("Q = {" + ", ".join(str(q) for q in payload["q_set"]) + "}")
        lines.append(f"u = {' '.join(str(x) for x in payload['u'])}")
        lines.append(f"v = {' '.join(str(x) for x in payload['v'])}")
    else:
        violation = payload["violation"]
        lines.append(
            "contains pattern "
            + " ".join(str(x) for x in violation["pattern"])
            + " at positions "
            + " ".join(str(x) for x in violation["positions"])
        )
    _emit(args, "\n".join(lines))
    return 0


# --- verify ------------------------------------------------------------------

def _check_pipe_oracle(n: int, rng, budget: int) -> tuple[int, int]:
    checked = failed = 0
    for w in perms.all_permutations(n):
        checked += 1
        if schub.schubert(w) != schub.schubert_via_pipedreams(w):
            failed += 1
    return checked, failed


def _check_sem_bound(n: int, rng, budget: int) -> tuple[int, int]:
    checked = failed = 0
    for w in perms.all_permutations(n):
        checked += 1
        expansion = poly.sem_expand(schub.schubert(w), max(n - 1, 1))
        if expansion.max_coefficient() > 1:
            failed += 1
    return checked, failed


def _check_rep_correct(n: int, rng, budget: int) -> tuple[int, int]:
    checked = failed = 0
    for w in perms.all_permutations(n):
        if not perms.avoids_thirteen(w):
            continue
        checked += 1
        rep = lattice.proper_rep(w)
        target = schub.schubert(w)
        ok = rep.is_proper() and lattice.rep_determinant(rep) == target
        ok = ok and lattice.sem_of_proper(rep) == poly.sem_expand(target, max(n - 1, 1))
        if not ok:
            failed += 1
    return checked, failed


def _check_lgv_oracle(n: int, rng, budget: int) -> tuple[int, int]:
    checked = failed = 0
    for _ in range(budget):
        rep = lattice.random_rep(rng)
        checked += 1
        if lattice.lgv_sum(rep) != poly.determinant(rep.matrix()):
            failed += 1
    return checked, failed


def _check_quantum(n: int, rng, budget: int) -> tuple[int, int]:
    checked = failed = 0
    for k in range(0, min(n, 6) + 1):
        for j in range(0, k + 2):
            checked += 1
            if schub.quantum_elementary(j, k) != schub.quantum_elementary_via_matrix(j, k):
                failed += 1
    for w in perms.all_permutations(min(n, 5)):
        checked += 1
        if schub.quantum_schubert(w).subs_q_zero() != schub.schubert(w):
            failed += 1
            continue
        if perms.avoids_thirteen(w):
            rep = lattice.proper_rep(w)
            if lattice.rep_determinant_quantum(rep) != schub.quantum_schubert(w):
                failed += 1
    return checked, failed


CHECKS = {
    "pipe-oracle": (_check_pipe_oracle, 5),
    "sem-bound": (_check_sem_bound, 5),
    "rep-correct": (_check_rep_correct, 5),
    "lgv-oracle": (_check_lgv_oracle, 4),
    "quantum-consistency": (_check_quantum, 4),
}


def cmd_verify(args) -> int:
    names = [args.check] if args.check else list(CHECKS)
    for name in names:
        if name not in CHECKS:
            raise DomainError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    rng = random.Random(args.seed if args.seed is not None else 0)
    budget = args.budget if args.budget is not None else 200
    any_failed = False
    for name in names:
        fn, default_n = CHECKS[name]
        n = args.n or default_n
        checked, failed = fn(n, rng, budget)
        status = "PASS" if failed == 0 else "FAIL"
        any_failed |= failed > 0
        _emit(args, f"check {name}: {status} ({checked - failed}/{checked} ok, n={n})")
    return 1 if any_failed else 0


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semschub",
        description="Schubert polynomials, SEM expansions, and lattice path determinants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, perm=True):
        p = sub.add_parser(name, help=help_text)
        if perm:
            p.add_argument("--perm", help='one-line notation, e.g. "4 1 3 2" or "4132"')
        p.add_argument(
            "--format", choices=("text", "json", "latex", "svg"), default="text"
        )
        p.add_argument("--out", help="write the document to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    add("schubert", cmd_schubert, "Schubert polynomial of a permutation")
    add("sem", cmd_sem, "SEM expansion of the Schubert polynomial")
    p = add("expand-schubert", cmd_expand_schubert, "expand a polynomial in the Schubert basis",
            perm=False)
    p.add_argument("--poly", help="polynomial as JSON (default: read stdin)")
    p.add_argument("--n", type=int, help="expand over S_n (default: inferred)")
    add("rep", cmd_rep, "proper lattice path representation (13-pattern-avoiding input)")
    add("det", cmd_det, "e-matrix and signed determinant of a representation")
    p = add("paths", cmd_paths, "enumerate nonintersecting path systems")
    p.add_argument("--budget", type=int, help="max systems to list (default 20)")
    add("quantum", cmd_quantum, "quantum Schubert polynomial")
    add("classify", cmd_classify, "class labels, Q-set and factorization")
    p = add("verify", cmd_verify, "run consistency checks and report pass/fail", perm=False)
    p.add_argument("--check", help="one of: " + ", ".join(CHECKS))
    p.add_argument("--n", type=int, help="sweep size for exhaustive checks")
    p.add_argument("--seed", type=int, help="seed for randomized checks (default 0)")
    p.add_argument("--budget", type=int, help="trial count for randomized checks (default 200)")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PatternViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
