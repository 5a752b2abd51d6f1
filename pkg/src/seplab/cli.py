"""Command line entry point and task runner.

``seplab run FILE`` executes the tasks of a scenario file and prints one
report per task; ``seplab paper-suite`` runs the bundled scenarios.  Exit
status is 0 when every report is PASS, 1 otherwise, 2 on usage or parse
errors.
"""

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .blowup import (
    check_lemma32,
    check_thm44,
    check_thm47,
    points_for_simple_ideal,
    simple_sequence,
    transform_ideal,
    transform_point,
    inverse_transform,
)
from .errors import (
    DegreeError,
    ParseError,
    ScopeError,
    SeplabError,
    TruncationError,
    UncertifiedError,
)
from .exact import INF, TRat
from .point import (
    BranchPoint,
    ChainStep,
    evaluate,
    ideal_value,
    sign_at,
    sign_stream,
    successor,
    support,
    val,
    value_semigroup,
    videal,
)
from .ring import DegreeBound, Ideal, Poly, ideal_equal, membership, mpower_in, random_poly
from .scenario import Chain, Str, StrList, parse_poly, parse_scenario, parse_t
from .sep import changes_sign, cone, is_simple, sep, star_condition

# argument kinds: P point, I ideal (name or literal), f polynomial, n number,
# A optional "along P", C chain literal
COMMANDS = {
    "eval": "Pf",
    "val": "Pf",
    "sign": "Pf",
    "support": "P",
    "stream": "Pn",
    "sep": "PP",
    "cone": "PP",
    "star": "PP",
    "changes-sign": "PPf",
    "videal": "Pn",
    "semigroup": "P",
    "successor": "PI",
    "is-simple": "PI",
    "contains": "If",
    "equal": "II",
    "transform-point": "PA",
    "transform-ideal": "IA",
    "inverse-transform": "IA",
    "simple-seq": "P",
}
VERIFY = {
    "lemma11": "Pn",
    "prop21": "PP",
    "prop22": "PP",
    "lemma32": "PP",
    "thm44": "PP",
    "thm47": "PP",
    "prop51": "C",
}
STATUSES = ("PASS", "FAIL", "UNKNOWN", "ERROR")
SAMPLES = 20


def _signature(task):
    if task.command == "verify":
        if not task.args or task.args[0] not in VERIFY:
            raise ScopeError(
                f"verify needs one of {', '.join(VERIFY)} (line {task.line})"
            )
        return VERIFY[task.args[0]], task.args[1:]
    if task.command not in COMMANDS:
        raise ScopeError(f"unknown command {task.command!r} (line {task.line})")
    return COMMANDS[task.command], task.args


def validate_task(task, sc):
    sig, args = _signature(task)
    args = list(args)
    where = f"(line {task.line})"
    for kind in sig:
        if kind == "A":
            if args and args[0] == "along":
                if len(args) < 2 or args[1] not in sc.points:
                    raise ScopeError(f"'along' needs a defined point {where}")
                args = args[2:]
            continue
        if not args:
            raise ParseError(f"{task.command} expects more arguments {where}")
        a = args.pop(0)
        if kind == "P" and (not isinstance(a, str) or a not in sc.points):
            raise ScopeError(f"undefined point {a!r} {where}")
        if kind == "I" and not isinstance(a, StrList) and (
            not isinstance(a, str) or a not in sc.ideals
        ):
            raise ScopeError(f"undefined ideal {a!r} {where}")
        if kind == "f" and not isinstance(a, Str):
            raise ParseError(f"expected a quoted polynomial, got {a!r} {where}")
        if kind == "n" and not isinstance(a, Fraction):
            raise ParseError(f"expected a number, got {a!r} {where}")
        if kind == "C" and not isinstance(a, Chain):
            raise ParseError(f"expected a chain literal {where}")
        if kind == "f":
            parse_poly(a.value, sc.nvars, task.line)
        if kind == "I" and isinstance(a, StrList):
            for g in a.values:
                parse_poly(g, sc.nvars, task.line)
    if args:
        raise ParseError(f"{task.command} has too many arguments {where}")
    for key, value in task.expect:
        if isinstance(value, str) and key in IDEAL_KEYS and value not in sc.ideals:
            raise ScopeError(f"undefined ideal {value!r} in expectation {where}")


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    task: int
    line: int
    command: str
    status: str
    payload: list = field(default_factory=list)
    error: str = ""
    seconds: float = 0.0

    def as_dict(self, timing=False):
        d = {
            "task": self.task,
            "line": self.line,
            "command": self.command,
            "status": self.status,
            "payload": {k: v for k, v in self.payload},
        }
        if self.error:
            d["error"] = self.error
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def text(self, timing=False):
        head = f"task={self.task} line={self.line} status={self.status} command={json.dumps(self.command)}"
        if timing:
            head += f" seconds={self.seconds:.3f}"
        out = [head]
        if self.error:
            out.append(f"  error={self.error}")
        out += [f"  {k}={v}" for k, v in self.payload]
        return "\n".join(out)


def render(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, Ideal):
        return "[" + ", ".join(str(g) for g in v.gens) + "]"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(render(x) for x in v) + "]"
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(str(x) for x in sorted(v)) + "}"
    return str(v)


# ---------------------------------------------------------------------------
# execution


class _Ctx:
    def __init__(self, sc, bound, seed, N):
        self.sc = sc
        self.bound = bound
        self.seed = seed
        self.N = N

    def point(self, name):
        return self.sc.points[name]

    def ideal(self, a):
        if isinstance(a, StrList):
            return Ideal([parse_poly(g, self.sc.nvars) for g in a.values], self.sc.nvars)
        return self.sc.ideals[a]

    def poly(self, a):
        return parse_poly(a.value, self.sc.nvars)


@dataclass
class Outcome:
    payload: list
    ideal: object = None
    ok: bool = True
    certified: bool = True
    raw: dict = field(default_factory=dict)


def _out(pairs, ideal=None, ok=True, certified=True):
    return Outcome([(k, render(v)) for k, v in pairs], ideal, ok, certified, dict(pairs))


def _along(ctx, args):
    if args and args[0] == "along":
        return ctx.point(args[1])
    return None


def _step_for(ctx, args):
    ref = _along(ctx, args)
    if ref is None:
        raise ScopeError("an ideal transform needs 'along P' to fix the chart")
    step, _ = transform_point(ref)
    return step, ref


def run_command(task, ctx):
    c, a, B = task.command, task.args, ctx.bound
    if c == "eval":
        P = ctx.point(a[0])
        if not isinstance(P, BranchPoint):
            raise ScopeError("eval needs a branch point")
        return _out([("value", evaluate(P, ctx.poly(a[1])))])
    if c == "val":
        return _out([("value", val(ctx.point(a[0]), ctx.poly(a[1])))])
    if c == "sign":
        return _out([("sign", sign_at(ctx.point(a[0]), ctx.poly(a[1])))])
    if c == "support":
        S = support(ctx.point(a[0]), B)
        return _out([("ideal", S)], S)
    if c == "stream":
        s = sign_stream(ctx.point(a[0]), int(a[1]), ctx.N)
        return _out([("functionals", len(s)), ("levels", s.N), ("values", sorted(set(s.values)))])
    if c == "sep":
        S = sep(ctx.point(a[0]), ctx.point(a[1]), B)
        return _out(
            [
                ("gamma_alpha", S.gamma_alpha),
                ("gamma_beta", S.gamma_beta),
                ("witness", S.witness),
                ("ideal", S.ideal),
                ("maximal", S.is_maximal),
                ("support_case", S.support_case),
                ("degree", S.degree),
                ("certified", S.certified),
            ],
            S.ideal,
            certified=S.certified,
        )
    if c == "cone":
        C = cone(ctx.point(a[0]), ctx.point(a[1]), B)
        o = _out([("dimension", C.dimension), ("rays", list(C.rays)), ("extreme", C.extreme)])
        o.raw["cone"] = C
        return o
    if c == "star":
        return _out([("star", star_condition(ctx.point(a[0]), ctx.point(a[1]), B))])
    if c == "changes-sign":
        return _out([("result", changes_sign(ctx.point(a[0]), ctx.point(a[1]), ctx.poly(a[2])))])
    if c == "videal":
        I = videal(ctx.point(a[0]), int(a[1]), B)
        return _out([("ideal", I)], I)
    if c == "semigroup":
        gmax = ctx.sc.bounds.get("gamma_max") or 20
        return _out([("values", value_semigroup(ctx.point(a[0]), B, gmax))])
    if c == "successor":
        P = ctx.point(a[0])
        I = successor(P, ctx.ideal(a[1]), B)
        return _out([("ideal", I), ("value", ideal_value(P, I))], I)
    if c == "is-simple":
        return _out([("simple", is_simple(ctx.point(a[0]), ctx.ideal(a[1]), B))])
    if c == "contains":
        return _out([("result", membership(ctx.poly(a[1]), ctx.ideal(a[0]), B))])
    if c == "equal":
        return _out([("result", ideal_equal(ctx.ideal(a[0]), ctx.ideal(a[1]), B))])
    if c == "transform-point":
        step, P1 = transform_point(ctx.point(a[0]), _step_along(ctx, a[1:]))
        return _out([("step", step), ("point", P1)])
    if c == "transform-ideal":
        step, ref = _step_for(ctx, a[1:])
        J = transform_ideal(ctx.ideal(a[0]), step, B)
        _, lifted = transform_point(ref, step)
        return _out([("step", step), ("ideal", J), ("value", ideal_value(lifted, J))], J)
    if c == "inverse-transform":
        step, ref = _step_for(ctx, a[1:])
        K = inverse_transform(ctx.ideal(a[0]), step, ref, B)
        return _out([("step", step), ("ideal", K), ("value", ideal_value(ref, K))], K)
    if c == "simple-seq":
        kmax = ctx.sc.bounds.get("kmax") or 4
        seq = simple_sequence(ctx.point(a[0]), B, kmax)
        return _out(
            [("ideals", list(seq.ideals)), ("values", list(seq.values)), ("ideal", seq.ideals[-1])],
            seq.ideals[-1],
        )
    if c == "verify":
        return VERIFIERS[a[0]](ctx, a[1:])
    raise ScopeError(f"unknown command {c!r}")


def _step_along(ctx, args):
    ref = _along(ctx, args)
    if ref is None:
        return None
    step, _ = transform_point(ref)
    return step


# -- verifiers


def _rng(ctx, salt):
    return random.Random(f"{ctx.seed}:{salt}")


def _verify_lemma11(ctx, a):
    """Threshold sets are exactly the ideals closed under ``|g| <= |f|``."""
    P, g = ctx.point(a[0]), int(a[1])
    B = ctx.bound
    I = videal(P, g, B)
    rng = _rng(ctx, "lemma11")
    n = ctx.sc.nvars
    top = (mpower_in(I, B) or 1) + 1
    threshold = convex = 0
    for _ in range(SAMPLES):
        f = sum((random_poly(rng, n, 2) * h for h in I.gens), Poly.const(0, n))
        h = random_poly(rng, n, top + 1, min_ord=rng.randint(1, top))
        for p in (f, h):
            if membership(p, I, B) != (val(P, p) >= g):
                return _out([("threshold", False), ("counterexample", p)], I, ok=False)
            threshold += 1
        if sign_at(P, f * f - h * h) >= 0:
            if not membership(h, I, B):
                return _out([("convex", False), ("counterexample", h)], I, ok=False)
            convex += 1
    return _out([("ideal", I), ("threshold_checks", threshold), ("convexity_checks", convex)], I)


def _verify_prop21(ctx, a):
    P, Q = ctx.point(a[0]), ctx.point(a[1])
    B = ctx.bound
    S = sep(P, Q, B)
    if S.support_case:
        raise SeplabError("the points coincide")
    as_beta = videal(Q, S.gamma_beta, B)
    both = ideal_equal(S.ideal, as_beta, B)
    rng = _rng(ctx, "prop21")
    agree = checked = 0
    for _ in range(4 * SAMPLES):
        f = random_poly(rng, ctx.sc.nvars, 4)
        if membership(f, S.ideal, B):
            continue
        checked += 1
        agree += sign_at(P, f) == sign_at(Q, f)
        if checked >= SAMPLES:
            break
    ok = both and agree == checked
    return _out(
        [
            ("alpha_ideal", S.ideal),
            ("beta_ideal", as_beta),
            ("both_v_ideal", both),
            ("sign_agreement", f"{agree}/{checked}"),
        ],
        S.ideal,
        ok=ok,
        certified=S.certified,
    )


def _verify_prop22(ctx, a):
    P, Q = ctx.point(a[0]), ctx.point(a[1])
    B = ctx.bound
    S = sep(P, Q, B)
    star = star_condition(P, Q, B)
    simple = is_simple(P, S.ideal, B) if not S.ideal.is_unit() else True
    return _out([("star", star), ("simple", simple), ("ideal", S.ideal)], S.ideal, ok=star and simple)


def _verify_lemma32(ctx, a):
    r = check_lemma32(ctx.point(a[0]), ctx.point(a[1]), ctx.bound)
    return _out(
        [
            ("lifted", r.lifted),
            ("containment", r.containment),
            ("proper", r.proper),
            ("transformed", r.transformed),
            ("lifted_sep", r.lifted_sep),
            ("value_transformed", r.value_transformed),
            ("value_lifted_sep", r.value_lifted_sep),
        ],
        r.lifted_sep,
        ok=r.lifted and r.containment,
    )


def _verify_thm44(ctx, a):
    r = check_thm44(ctx.point(a[0]), ctx.point(a[1]), ctx.bound)
    return _out(
        [("contains_smallest_simple", r.contains_smallest_simple), ("smallest_simple", r.smallest_simple), ("separating", r.separating)],
        r.separating,
        ok=r.contains_smallest_simple,
    )


def _verify_thm47(ctx, a):
    r = check_thm47(ctx.point(a[0]), ctx.point(a[1]), ctx.bound)
    return _out(
        [
            ("step", r.step),
            ("a_holds", r.a_holds),
            ("b_holds", r.b_holds),
            ("lhs", r.lhs),
            ("rhs", r.rhs),
            ("pulled_back", r.pulled_back),
            ("original", r.original),
        ],
        r.rhs,
        ok=r.a_holds and r.b_holds,
    )


def _verify_prop51(ctx, a):
    B = ctx.bound
    P1, P2, P = points_for_simple_ideal(a[0].steps, B)
    S = sep(P1, P2, B)
    equal = ideal_equal(S.ideal, P, B)
    simple = is_simple(P1, P, B)
    return _out(
        [("alpha", P1), ("beta", P2), ("P", P), ("separating", S.ideal), ("equal", equal), ("simple", simple)],
        P,
        ok=equal and simple,
        certified=S.certified,
    )


VERIFIERS = {
    "lemma11": _verify_lemma11,
    "prop21": _verify_prop21,
    "prop22": _verify_prop22,
    "lemma32": _verify_lemma32,
    "thm44": _verify_thm44,
    "thm47": _verify_thm47,
    "prop51": _verify_prop51,
}


# -- expectations

IDEAL_KEYS = {
    "ideal", "lhs", "rhs", "pulled_back", "original", "transformed", "lifted_sep",
    "P", "separating", "smallest_simple", "alpha_ideal", "beta_ideal",
}


def _expect_holds(key, want, out, ctx):
    raw = out.raw
    if key == "contains":
        return out.ideal is not None and membership(ctx.poly(want), out.ideal, ctx.bound)
    if key == "lacks":
        return out.ideal is not None and not membership(ctx.poly(want), out.ideal, ctx.bound)
    if key == "ord":
        from .ring import ideal_ord

        return out.ideal is not None and ideal_ord(out.ideal) == want
    if key == "rays":
        return _rays_match(raw.get("cone"), want, ctx)
    if key not in raw:
        return False
    got = raw[key]
    if key in IDEAL_KEYS:
        return isinstance(got, Ideal) and ideal_equal(got, ctx.ideal(want), ctx.bound)
    if isinstance(want, Chain):
        return isinstance(got, ChainStep) and want.steps == (got,)
    if key == "value" and isinstance(got, TRat):
        return got == parse_t(want.value)
    if isinstance(got, bool):
        return want == ("true" if got else "false")
    if isinstance(want, Fraction) or want == "inf":
        return render(got) == render(INF if want == "inf" else want)
    if isinstance(want, Str):
        return render(got) == want.value
    return render(got) == render(want)


def _rays_match(C, want, ctx):
    """Each expected ray is a positive multiple of a computed one modulo the
    successor intersection, and the counts agree."""
    from .sep import residue_coordinates

    if C is None or not isinstance(want, StrList) or len(want.values) != len(C.rays):
        return False
    got = [residue_coordinates(C, r) for r in C.rays]
    for w in want.values:
        v = residue_coordinates(C, parse_poly(w, ctx.sc.nvars))
        if v is None or not any(_positive_multiple(v, g) for g in got):
            return False
    return True


def _positive_multiple(v, g):
    if g is None or not any(g):
        return False
    ratios = {a / b for a, b in zip(v, g) if b} | ({0} if any(a and not b for a, b in zip(v, g)) else set())
    return len(ratios) == 1 and next(iter(ratios)) > 0 and all(
        (a == 0) == (b == 0) for a, b in zip(v, g)
    )


UNKNOWN_ERRORS = (UncertifiedError, DegreeError, TruncationError)


def run_task(index, task, ctx):
    start = time.perf_counter()
    want_error = dict(task.expect).get("error")
    try:
        out = run_command(task, ctx)
    except SeplabError as exc:
        status = "ERROR"
        if want_error is not None and exc.code == want_error:
            status = "PASS"
        elif isinstance(exc, UNKNOWN_ERRORS):
            status = "UNKNOWN"
        return Report(index, task.line, task.text(), status, [("code", exc.code)], str(exc),
                      time.perf_counter() - start)
    payload = list(out.payload)
    failed = []
    if want_error is not None:
        failed.append(("error", want_error, "no error"))
    for key, want in task.expect:
        if key == "error":
            continue
        if not _expect_holds(key, want, out, ctx):
            got = out.raw.get(key, out.ideal if key in ("contains", "lacks", "ord") else None)
            failed.append((key, want, got))
    for key, want, got in failed:
        payload.append((f"expected.{key}", render(want.value if isinstance(want, Str) else want)))
        payload.append((f"computed.{key}", render(got)))
    if not out.certified:
        status = "UNKNOWN"
    elif failed or not out.ok:
        status = "FAIL"
    else:
        status = "PASS"
    return Report(index, task.line, task.text(), status, payload, "", time.perf_counter() - start)


def make_bound(sc, D=None):
    if D is not None:
        return DegreeBound(D, False, D)
    d = sc.bounds.get("D") or 12
    return DegreeBound(d, False, max(d, 32))


def run_scenario(sc, D=None, N=None, seed=0):
    ctx = _Ctx(sc, make_bound(sc, D), seed, N if N is not None else sc.bounds.get("N"))
    return [run_task(i + 1, t, ctx) for i, t in enumerate(sc.tasks)]


def summary(reports):
    counts = {s: sum(r.status == s for r in reports) for s in STATUSES}
    return counts


def _emit(groups, fmt, timing, stream):
    allr = [r for _, rs in groups for r in rs]
    counts = summary(allr)
    if fmt == "json":
        doc = {
            "scenarios": [
                {"scenario": name, "reports": [r.as_dict(timing) for r in rs]} for name, rs in groups
            ],
            "summary": {k.lower(): v for k, v in counts.items()},
        }
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        for name, rs in groups:
            stream.write(f"scenario={name}\n")
            for r in rs:
                stream.write(r.text(timing) + "\n")
        stream.write(
            "summary " + " ".join(f"{k.lower()}={v}" for k, v in counts.items()) + f" total={len(allr)}\n"
        )
    return 0 if counts["PASS"] == len(allr) else 1


def bundled_scenarios():
    root = resources.files("seplab") / "scenarios"
    return sorted((p.name, p.read_text()) for p in root.iterdir() if p.name.endswith(".sep"))


def paper_suite(D=None, N=None, seed=0):
    groups = []
    for name, text in bundled_scenarios():
        groups.append((name, run_scenario(parse_scenario(text), D, N, seed)))
    return groups


def _parser():
    ap = argparse.ArgumentParser(prog="seplab", description="Separating ideals of real spectrum points.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in ("run", "paper-suite"):
        p = sub.add_parser(name)
        if name == "run":
            p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--D", type=int, default=None, help="working degree (disables escalation)")
        p.add_argument("--N", type=int, default=None, help="series levels for sign streams")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true", help="include wall time per task")
    return ap


def main(argv=None):
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.D is not None and args.D < 1:
        sys.stderr.write("E_USAGE: --D must be positive\n")
        return 2
    try:
        if args.cmd == "run":
            try:
                with open(args.file) as fh:
                    text = fh.read()
            except OSError as exc:
                sys.stderr.write(f"E_USAGE: {exc}\n")
                return 2
            sc = parse_scenario(text)
            groups = [(args.file, run_scenario(sc, args.D, args.N, args.seed))]
        else:
            groups = paper_suite(args.D, args.N, args.seed)
    except SeplabError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    return _emit(groups, args.format, args.timing, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
