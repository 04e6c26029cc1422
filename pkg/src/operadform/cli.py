"""
Batch verification driver.

    python3 -m operadform all --max-n 4 --max-weight 4 --degree 4 --format md

Every check produces one record {name, status, expected, computed, ms};
the exit code is 0 iff all records pass.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import platform
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .dk_algebra import PAPER_LITERAL, STANDARD, CacheCorruptionError, TruncationError

PASS, FAIL = "pass", "fail"


@dataclass
class RunConfig:
    max_n: int = 4
    max_weight: int = 4
    associator_degree: int = 4
    relator_mode: str = STANDARD
    cache_dir: str | None = None
    output_format: str = "json"
    associator_file: str = "associator.json"
    samples: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.max_weight < 1:
            raise ValueError("max_weight must be at least 1")
        if self.max_n < 2:
            raise ValueError("max_n must be at least 2")
        if self.relator_mode not in (STANDARD, PAPER_LITERAL):
            raise ValueError("unknown relator mode %r" % self.relator_mode)
        if self.output_format not in ("json", "markdown"):
            raise ValueError("unknown output format %r" % self.output_format)


@dataclass
class CheckRecord:
    name: str
    status: str
    expected: object
    computed: object
    ms: float
    inputs: dict = field(default_factory=dict)


class VerificationReport:
    def __init__(self, config: RunConfig):
        self.config = config
        self.checks: list = []

    def check(self, name, expected, fn, inputs=None, compare=None):
        """Run fn(), compare with expected (equality unless ``compare`` given)."""
        t = time.perf_counter()
        try:
            computed = fn()
            ok = compare(computed) if compare else computed == expected
        except (TruncationError, CacheCorruptionError, ValueError, ArithmeticError) as exc:
            computed, ok = "error: %s" % exc, False
        ms = round((time.perf_counter() - t) * 1000, 1)
        rec = CheckRecord(name, PASS if ok else FAIL, _plain(expected), _plain(computed), ms, inputs or {})
        self.checks.append(rec)
        return rec

    @property
    def failures(self):
        return [c for c in self.checks if c.status != PASS]

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        cfg = asdict(self.config)
        return {
            "config": cfg,
            "environment": {"python": platform.python_version(), "platform": platform.platform()},
            "checks": [asdict(c) for c in self.checks],
        }

    def render(self, fmt="json"):
        if fmt == "json":
            return json.dumps(self.to_json(), indent=1, sort_keys=True)
        return render_markdown(self)


def _plain(x):
    """JSON-friendly form of a computed value."""
    from fractions import Fraction
    from .kernel import fmt_rational
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def render_markdown(report: VerificationReport) -> str:
    lines = ["# Verification report", "", "## Config", ""]
    for k, v in asdict(report.config).items():
        lines.append("- `%s`: %s" % (k, v))
    lines += ["", "## Checks", "", "| name | status | expected | computed | ms |", "|---|---|---|---|---|"]
    for c in report.checks:
        lines.append("| %s | %s | %s | %s | %s |" % (
            c.name, c.status.upper(), json.dumps(c.expected), json.dumps(c.computed), c.ms))
    n_fail = len(report.failures)
    lines += ["", "%d checks, %d failing" % (len(report.checks), n_fail), ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# oracles

def series_coefficients(factors, N):
    """Coefficients of prod 1/(1 - a t) for a in factors, up to t^N."""
    out = [1] + [0] * N
    for a in factors:
        for d in range(1, N + 1):
            out[d] += a * out[d - 1]
    return out


def poincare_oracle(n):
    """prod_{k<n} (1 + k t)."""
    p = [1]
    for k in range(1, n):
        p = [a + k * b for a, b in zip(p + [0], [0] + p)]
    return p


# ---------------------------------------------------------------------------
# sections

def cmd_dims(config: RunConfig, report: VerificationReport):
    from .dk_algebra import degree_basis

    def dims(n, mode):
        return [degree_basis(n, d, mode).dimension for d in range(config.max_weight + 1)]

    for n in range(2, config.max_n + 1):
        std = series_coefficients(range(1, n), config.max_weight)
        inputs = {"n": n, "max_weight": config.max_weight, "relators": config.relator_mode}
        if config.relator_mode == STANDARD:
            report.check("dims n=%d" % n, std, lambda n=n: dims(n, STANDARD), inputs)
        else:
            # dropping relators can only enlarge the quotient; strictly so from n = 4, degree 2
            report.check("dims n=%d (%s)" % (n, config.relator_mode), ("exceeds standard %s" if n >= 4 else "equals standard %s") % std,
                         lambda n=n: dims(n, config.relator_mode), inputs,
                         compare=lambda got, n=n, std=std: _dominates(got, std, strict=n >= 4))


def _dominates(got, std, strict):
    return all((g > s) if strict and d >= 2 else (g == s) for d, (g, s) in enumerate(zip(got, std)))


def cmd_homology(config: RunConfig, report: VerificationReport):
    from .bar_complex import homology_dims
    from .lie_dk import ce_homology

    mode = config.relator_mode
    for n in range(2, config.max_n + 1):
        inputs = {"n": n, "max_weight": config.max_weight, "relators": mode}
        tables = {}

        def both(n=n):
            tables["ce"] = ce_homology(n, config.max_weight, mode)
            tables["bar"] = homology_dims(n, config.max_weight, mode)
            return {str(k): v for k, v in sorted(tables["bar"].items()) if v}

        report.check("homology agreement n=%d" % n, "identical (k, w) tables", both, inputs,
                     compare=lambda _: dict(tables["ce"]) == dict(tables["bar"]))
        if "ce" not in tables:
            continue
        ce = tables["ce"]
        report.check("homology poincare n=%d" % n, poincare_oracle(n),
                     lambda: ce.poincare(), inputs)
        report.check("homology total n=%d" % n, math.factorial(n),
                     lambda: ce.total(), inputs)


def cmd_e2(config: RunConfig, report: VerificationReport):
    from .gerstenhaber import basis, normal_form, random_tree, renormalize

    for n in range(1, max(5, config.max_n) + 1):
        report.check("e2 basis size n=%d" % n, math.factorial(n), lambda n=n: len(basis(n)), {"n": n})
    rng = random.Random(config.seed)

    def idempotent(n):
        bad = 0
        for _ in range(config.samples):
            nf = normal_form(random_tree(n, rng))
            bad += renormalize(nf) != nf
        return bad

    for n in range(2, max(5, config.max_n) + 1):
        report.check("e2 normal form idempotent n=%d" % n, 0, lambda n=n: idempotent(n),
                     {"n": n, "samples": config.samples, "seed": config.seed})


def cmd_solve_associator(config: RunConfig, report: VerificationReport):
    from .associator import is_group_like, solve
    from fractions import Fraction

    N = config.associator_degree
    holder = {}

    def run():
        phi = solve(N)
        holder["phi"] = phi
        Path(config.associator_file).parent.mkdir(parents=True, exist_ok=True)
        phi.dump(config.associator_file)
        return config.associator_file

    report.check("associator solve degree %d" % N, config.associator_file, run, {"degree": N})
    phi = holder.get("phi")
    if phi is None:
        return None
    report.check("associator group-like", True, lambda: is_group_like(phi.poly, N))
    if N >= 2:
        report.check("associator degree-2 coefficient of [t12,t23] (abs)", Fraction(1, 24),
                     lambda: phi.coefficient_of_bracket(2),
                     compare=lambda c: c is not None and abs(c) == Fraction(1, 24))
    return phi


def cmd_verify_formality(config: RunConfig, report: VerificationReport, phi=None):
    from .associator import AssociatorSeries, braid_relation_check, phi_evaluate, well_definedness_defects
    from .bar_complex import generation_check, get_bar
    from .braids_pab import PaBMorphism, compose_morphisms
    from .dk_algebra import NCPolynomial, augment
    from .gerstenhaber import k_rank
    from .kernel import echelon

    if phi is None:
        path = config.associator_file
        if not os.path.exists(path):
            raise FileNotFoundError("missing associator file %s" % path)
        phi = AssociatorSeries.load(path)
    for n in (2, 3):
        report.check("k rank n=%d" % n, math.factorial(n), lambda n=n: k_rank(n), {"n": n})
    for n in range(2, config.max_n + 1):
        report.check("generation n=%d" % n, True, lambda n=n: generation_check(n)[0], {"n": n})

    N = min(config.associator_degree, phi.degree)
    if config.associator_degree > phi.degree:
        raise TruncationError("associator file is known through degree %d, %d requested"
                              % (phi.degree, config.associator_degree))
    for d in well_definedness_defects(phi, N):
        report.check("defect %s" % d.name, "zero through degree %d" % N,
                     lambda d=d: "zero" if d.is_zero() else "nonzero in degree %d" % d.first_nonzero_degree(),
                     {"degree": N}, compare=lambda got: got == "zero")
    report.check("braid relation", True, lambda: braid_relation_check(phi, N), {"degree": N})

    def phi_rank():
        # classes of phi(id) (a 0-chain) and of phi(x then x') minus its
        # augmentation (a 1-chain) in the bar homology of A_2
        bar = get_bar(2, max(config.max_weight, N))
        x = PaBMorphism((1, 2), (2, 1), [1])
        xp = PaBMorphism((2, 1), (1, 2), [1])
        ident = phi_evaluate(PaBMorphism.identity((1, 2)), phi, N)
        loop = phi_evaluate(compose_morphisms(x, xp), phi, N)
        eps = augment(loop)
        classes = [bar.classify({(): augment(ident)}),
                   bar.classify(bar.tensor([loop - NCPolynomial.one(2).scale(eps)]))]
        index: dict = {}
        vecs = [{index.setdefault(k, len(index)): c for k, c in cls.flat().items()} for cls in classes]
        return len(echelon(vecs))

    report.check("phi image rank arity 2", 2, phi_rank, {"degree": N})


def cmd_controls(config: RunConfig, report: VerificationReport):
    from .associator import AssociatorSeries, well_definedness_defects
    from .lie_dk import ce_homology

    N = max(2, config.associator_degree)
    report.check("control: trivial associator fails a hexagon", True,
                 lambda: any(not d.is_zero() for d in well_definedness_defects(AssociatorSeries.trivial(N), N)
                             if d.name.startswith("hexagon")), {"degree": N})
    report.check("control: paper-literal homology total at n=4 differs from 4!", "!= 24",
                 lambda: ce_homology(4, config.max_weight, PAPER_LITERAL).total(),
                 {"n": 4, "max_weight": config.max_weight}, compare=lambda t: t != 24)


def run(command: str, config: RunConfig) -> VerificationReport:
    if config.cache_dir and not os.environ.get("OPERAD_CACHE"):
        os.environ["OPERAD_CACHE"] = config.cache_dir
    report = VerificationReport(config)
    if command == "dims":
        cmd_dims(config, report)
    elif command == "homology":
        cmd_homology(config, report)
    elif command == "e2":
        cmd_e2(config, report)
    elif command == "solve-associator":
        cmd_solve_associator(config, report)
    elif command == "verify-formality":
        cmd_verify_formality(config, report)
    elif command == "all":
        cmd_dims(config, report)
        cmd_homology(config, report)
        cmd_e2(config, report)
        phi = cmd_solve_associator(config, report)
        if phi is not None:
            cmd_verify_formality(config, report, phi)
        cmd_controls(config, report)
    else:
        raise ValueError("unknown command %r" % command)
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="operadform", description="Exact finite-truncation checks of the formality pipeline.")
    p.add_argument("command", choices=["dims", "homology", "e2", "solve-associator", "verify-formality", "all"])
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--degree", type=int, default=4, help="associator truncation degree")
    p.add_argument("--relators", choices=[STANDARD, PAPER_LITERAL], default=STANDARD)
    p.add_argument("--cache-dir", default=None, help="basis cache (OPERAD_CACHE overrides)")
    p.add_argument("--format", choices=["json", "md"], default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--associator", default="associator.json", help="associator file written/read")
    p.add_argument("--samples", type=int, default=200, help="random expressions per arity")
    p.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(max_n=args.max_n, max_weight=args.max_weight, associator_degree=args.degree,
                           relator_mode=args.relators, cache_dir=args.cache_dir,
                           output_format="markdown" if args.format == "md" else "json",
                           associator_file=args.associator, samples=args.samples, seed=args.seed)
        report = run(args.command, config)
    except (ValueError, FileNotFoundError, TruncationError, CacheCorruptionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    text = report.render("json" if config.output_format == "json" else "md")
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    for c in report.failures:
        print("FAILED: %s (expected %s, computed %s)" % (c.name, c.expected, c.computed), file=sys.stderr)
    return 0 if report.ok else 1
