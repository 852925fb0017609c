"""Command-line front end; every command writes one JSON report."""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from collections import Counter

from . import __version__
from .abstract_cubic import AbstractCubic, validate
from .fields import FieldError, ff_make
from .geometry import CubicForm, GeometryError, collinearity, form_points, is_eckardt, lines_in_form, is_smooth

EXIT_OK, EXIT_BUDGET, EXIT_INVALID = 0, 2, 3


class InvalidInput(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


# -- inputs -------------------------------------------------------------------

def parse_field(text: str):
    parts = [int(t) for t in text.split(",")]
    if len(parts) == 1:
        parts.append(1)
    return ff_make(parts[0], parts[1])


def parse_indices(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def load_input(spec: str):
    """A JSON file holding a form or an abstract cubic, or ``corpus:NAME``.

    Returns (form or None, AbstractCubic).
    """
    if spec.startswith("corpus:"):
        from .corpus import entry
        name = spec[len("corpus:"):]
        try:
            e = entry(name)
        except KeyError as exc:
            raise InvalidInput(str(exc)) from exc
        return e.form, e.cubic
    with open(spec) as fh:
        obj = json.load(fh)
    if "coeffs" in obj:
        F = CubicForm.from_json(obj)
        return F, collinearity(F)
    if "triples" in obj:
        return None, AbstractCubic.from_json(obj)
    raise InvalidInput("input is neither a cubic form nor an abstract cubic")


def load_form(spec: str) -> CubicForm:
    F, _ = load_input(spec)
    if F is None:
        raise InvalidInput("a cubic form is required")
    return F


def point_list(P: AbstractCubic):
    return [list(x) for x in P.labels] if P.labels is not None else None


# -- commands -------------------------------------------------------------------

def cmd_enumerate_surfaces(args) -> dict:
    K = args.field_spec
    want_points = args.points
    want_eck = args.all_eckardt
    want_lines = args.lines
    limit = args.limit

    def describe(F):
        pts = form_points(F)
        rec = {"coeffs": F.to_json()["coeffs"], "points": len(pts)}
        if want_eck is not None or limit:
            rec["all_eckardt"] = all(is_eckardt(F, x) for x in pts)
        if want_lines is not None or limit:
            rec["rational_lines"] = len(lines_in_form(F))
        return rec

    def keep(rec):
        return ((want_points is None or rec["points"] == want_points)
                and (want_eck is None or rec["all_eckardt"] == want_eck)
                and (want_lines is None or rec["rational_lines"] == want_lines))

    if args.mode == "exhaustive":
        if K.q != 2:
            raise InvalidInput("exhaustive enumeration is only feasible over F_2")
        from .enumeration import form_from_int, point_counts_f2, smooth_mask_f2
        scan = smooth_mask_f2()
        forms = scan.forms()
        counts = point_counts_f2(forms)
        hist = Counter(int(c) for c in counts)
        matches, n_match = [], 0
        filtered = want_points is not None or want_eck is not None or want_lines is not None
        if filtered:
            for n, c in zip(forms, counts):
                if want_points is not None and c != want_points:
                    continue
                rec = describe(form_from_int(int(n)))
                if keep(rec):
                    n_match += 1
                    if len(matches) < limit:
                        matches.append(dict(rec, encoding=int(n)))
        return {"mode": "exhaustive", "smooth_forms": scan.count,
                "point_count_histogram": {str(k): hist[k] for k in sorted(hist)},
                "matches": n_match if filtered else None, "examples": matches}
    if args.mode == "diagonal":
        found = []
        one = K.one
        for a in range(1, K.q):
            for b in range(1, K.q):
                for c in range(1, K.q):
                    F = CubicForm.from_terms(K, 3, {(3, 0, 0, 0): one, (0, 3, 0, 0): a, (0, 0, 3, 0): b, (0, 0, 0, 3): c})
                    if not is_smooth(F):
                        continue
                    rec = describe(F)
                    if keep(rec):
                        found.append(rec)
        return {"mode": "diagonal", "matches": len(found), "examples": found[:limit]}
    if args.mode == "sampled":
        rng = random.Random(args.seed)
        found, tried = [], 0
        for _ in range(args.samples):
            coeffs = [rng.randrange(K.q) for _ in range(20)]
            if not any(coeffs):
                continue
            F = CubicForm(K, 3, coeffs)
            if not is_smooth(F):
                continue
            tried += 1
            rec = describe(F)
            if keep(rec):
                found.append(rec)
        return {"mode": "sampled", "samples": args.samples, "smooth": tried,
                "matches": len(found), "examples": found[:limit]}
    raise InvalidInput(f"unknown mode {args.mode}")


def cmd_collinearity(args) -> dict:
    F, P = load_input(args.input)
    rep = validate(P, strict=False)
    return {"cubic": P.to_json(), "points": point_list(P), "valid": rep.valid,
            "strict_valid": validate(P, strict=True).valid, "violations": rep.violations}


def cmd_equivalence(args) -> dict:
    from .equivalence import u2, u3, universal
    _, P = load_input(args.input)
    out = {}
    if args.command == "uequiv":
        U, trace = universal(P)
        out["partition"] = U.to_json()
        if args.trace:
            out["trace"] = {"stages": [[i, R.to_json()] for i, R in trace.stages],
                            "stabilized_at": trace.stabilized_at}
    elif args.command == "u3":
        U = u3(P)
    else:
        U = u2(P)
    out["partition"] = U.to_json()
    out["classes"] = U.n_classes
    return out


def cmd_quotient(args) -> dict:
    from .equivalence import ch_axioms_check, quotient, universal
    _, P = load_input(args.input)
    U, _ = universal(P)
    Q = quotient(P, U, strict=False)
    rep = ch_axioms_check(Q) if Q.is_total() else None
    return {"quotient": Q.to_json(), "total": Q.is_total(),
            "ch_axioms": None if rep is None else {"ok": rep.ok, "failures": rep.failures}}


def cmd_word(args) -> dict:
    from . import words
    _, P = load_input(args.input)
    w = parse_indices(args.word)
    if any(a < 0 or a >= P.n for a in w):
        raise InvalidInput("letter out of range")
    try:
        if args.op == "nf":
            r = words.normal_form(w, P, args.budget)
            if r.budget_hit:
                raise BudgetExhausted("rewrite closure exceeded the budget")
            return {"word": list(w), "normal_form": list(r.word), "closure_size": r.closure_size}
        if args.op == "eq":
            w2 = parse_indices(args.word2 or "")
            return {"word": list(w), "word2": list(w2), "equal": words.words_equal(w, w2, P, args.budget)}
        if args.op == "ord":
            return {"word": list(w), "x": args.x, "ord": words.ord_x(w, P, args.x, args.budget)}
        if args.op == "psi":
            return {"word": list(w), "psi": sorted(words.psi(w, P, args.budget).support)}
    except words.BudgetExceeded as exc:
        raise BudgetExhausted(str(exc)) from exc
    raise InvalidInput(f"unknown word op {args.op}")


def cmd_generate(args) -> dict:
    from .generation import ClosureConfig, closure
    _, P = load_input(args.input)
    cfg = ClosureConfig.parse(args.rule, max_rounds=args.budget)
    seed = parse_indices(args.seed_points)
    if not seed or any(a < 0 or a >= P.n for a in seed):
        raise InvalidInput("seed must be a nonempty list of point indices")
    r = closure(P, seed, cfg)
    if not r.complete:
        raise BudgetExhausted("closure did not reach a fixpoint within the round cap")
    return {"rule": args.rule, "seed": list(seed), "reached": sorted(r.reached),
            "rounds": r.rounds, "complete": r.complete, "generated_all": r.generated_all}


def _surface(args):
    from .split_surface import BaseConfig, build, find_general_position
    if args.config:
        with open(args.config) as fh:
            cfg = BaseConfig.from_json(json.load(fh))
    else:
        K = args.field_spec
        pts = find_general_position(K)
        if pts is None:
            raise InvalidInput(f"no general-position 6-tuple over {K}")
        cfg = BaseConfig(K, pts)
    return build(cfg)


def cmd_split(args) -> dict:
    from . import split_surface as ss
    from .geometry import all_planes
    S = _surface(args)
    K = S.field
    if args.action == "build":
        names = ss.classify_lines(S)
        return {"base": S.base.to_json(), "V": S.V.to_json(), "bookkeeping": ss.bookkeeping(S),
                "lines": sorted(["".join(str(t) for t in v) for v in names.values()]),
                "exceptional": [[list(b) for b in E.basis] for E in S.exceptional]}
    thm = args.theorem
    rng = random.Random(args.seed)
    if thm == "5.3":
        rows = []
        for x in S.complement:
            r = ss.theorem_53_check(S, x, witnesses=args.witnesses, extended=True)
            strict = ss.theorem_53_check(S, x, extended=False)
            row = {"x": list(x), "ok": r.ok, "sections": r.checked,
                   "strict_ok": strict.ok, "strict_missing": len(strict.failures)}
            if args.witnesses:
                row["witness_planes"] = r.witnesses
            rows.append(row)
        return {"theorem": thm, "ok": all(r["ok"] for r in rows), "points": rows}
    if thm == "5.2":
        found, tried = ss.theorem_52_seed_search(S, 1, 6)
        if found is None:
            return {"theorem": thm, "ok": False, "seeds_tried": tried}
        seed, res = found
        return {"theorem": thm, "ok": True, "seed": [list(s) for s in seed],
                "history": res.history, "seeds_tried": tried}
    if thm == "5.4":
        ok, n = ss.corollary_54_check(S)
        return {"theorem": thm, "ok": ok, "u3_classes": n}
    if thm in ("5.7.6", "5.1"):
        lines = ss.lines_in_form(S.V)
        smooth = [T for T in all_planes(K) if ss.section_is_smooth(S, T, lines)]
        bad, rows = 0, []
        for _ in range(args.samples):
            T = rng.choice(smooth)
            pts = ss.section_points(S, T)
            x, y, u, w = (rng.choice(pts) for _ in range(4))
            ok = ss.claim_576_check(S, T, x, y, u, w) if thm == "5.7.6" else ss.eq51_check(S, T, x, y, u, w)
            bad += not ok
        return {"theorem": thm, "ok": bad == 0, "samples": args.samples, "failures": bad}
    if thm == "5.7.7":
        configs = ss.claim_577_configs(S)
        rng.shuffle(configs)
        bad = checked = 0
        for lam, T in configs:
            if checked >= args.samples:
                break
            try:
                bad += not ss.claim_577_check(S, lam, T)
                checked += 1
            except (ss.SplitSurfaceError, GeometryError):
                continue
        return {"theorem": thm, "ok": bad == 0, "samples": checked, "failures": bad}
    raise InvalidInput(f"unknown theorem {thm}")


COMMANDS = {
    "enumerate-surfaces": cmd_enumerate_surfaces,
    "collinearity": cmd_collinearity,
    "uequiv": cmd_equivalence,
    "u3": cmd_equivalence,
    "u2": cmd_equivalence,
    "quotient": cmd_quotient,
    "word": cmd_word,
    "generate": cmd_generate,
    "split": cmd_split,
}


# -- parser and reports ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="2,1", help="p,e")
    common.add_argument("--budget", type=int, default=200_000)
    common.add_argument("--out", default=None)
    common.add_argument("--timings", action="store_true", help="embed wall-clock timings (breaks byte-identity)")
    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--seed", type=int, default=0, help="rng seed for sampled runs")

    parser = argparse.ArgumentParser(prog="cubicomp", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-surfaces", parents=[common, rng])
    p.add_argument("--mode", choices=["exhaustive", "sampled", "diagonal"], default="exhaustive")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--all-eckardt", dest="all_eckardt", action="store_const", const=True, default=None)
    p.add_argument("--lines", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--limit", type=int, default=20)

    for name in ("collinearity", "uequiv", "u3", "u2", "quotient"):
        p = sub.add_parser(name, parents=[common, rng])
        p.add_argument("input")
        if name == "uequiv":
            p.add_argument("--trace", action="store_true")

    p = sub.add_parser("word", parents=[common, rng])
    p.add_argument("op", choices=["nf", "eq", "ord", "psi"])
    p.add_argument("input")
    p.add_argument("--word", required=True, help="comma-separated point indices")
    p.add_argument("--word2", default=None)
    p.add_argument("--x", type=int, default=0)

    p = sub.add_parser("generate", parents=[common])
    p.add_argument("input")
    p.add_argument("--rule", default="std", help="std | distinct | a:<i> | a:inf")
    p.add_argument("--seed", dest="seed_points", required=True, help="comma-separated point indices")

    p = sub.add_parser("split", parents=[common, rng])
    p.add_argument("action", choices=["build", "check"])
    p.add_argument("--config", default=None)
    p.add_argument("--theorem", choices=["5.3", "5.2", "5.4", "5.7.6", "5.7.7", "5.1"], default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--witnesses", action="store_true", help="record the plane realizing each target")
    return parser


def run_config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "timings", "field_spec")}
    return cfg


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = run_config(args)
    report = {"command": args.command, "config": cfg, "config_hash": config_hash(cfg),
              "tool_version": __version__}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        args.field_spec = parse_field(args.field)
        if args.budget < 1:
            raise InvalidInput("budget must be positive")
        if args.command == "split" and args.action == "check" and not args.theorem:
            raise InvalidInput("split check needs --theorem")
        report["results"] = COMMANDS[args.command](args)
        report["status"] = "ok"
    except BudgetExhausted as exc:
        code = EXIT_BUDGET
        report["status"] = "budget_exhausted"
        report["error"] = str(exc)
    except (InvalidInput, FieldError, GeometryError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        code = EXIT_INVALID
        report["status"] = "invalid_input"
        report["error"] = f"{type(exc).__name__}: {exc}"
    if args.timings:
        report["timings"] = {"wall_seconds": round(time.perf_counter() - start, 3)}
    text = render(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
