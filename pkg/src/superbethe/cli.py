"""Configuration-driven verification runner and CLI.

Subcommands:
  verify --config CFG [--suite NAME]... [--seed N] [--max-a N] [--max-b N]
         [--report OUT]
  bethe eval --config CFG [--u P/Q]... [--v P/Q]...
  report --config CFG --out OUT

Configs and reports are JSON; rationals travel as "p/q" strings and basis
multi-indices as digit strings over {1,2,3}. Exit status is 0 iff every
executed check produced an exactly-zero residual, which makes the binary a
CI regression gate for the whole identity suite.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .actions import ELEMENTS, action_check, load_formula_table
from .bethe import (
    build_dual_vector,
    build_vector,
    build_vector_limit,
    grading_of,
    vector_to_json,
)
from .composite import (
    CompositeModel,
    SplitChain,
    action_decomposition_report,
    check_bethe_factorization,
    check_composite_creation_actions,
    check_dual_bethe_factorization,
    check_factor_exchange,
    check_recursion,
    compose_monodromy,
)
from .errors import DivisionByZero, PoleAtZero
from .gl12 import AmbiguousConvention
from .gl12 import (
    build_tilde_vector,
    check_tilde_dual_factorization,
    check_tilde_factorization,
    resolve_sign,
)
from .graded import SIGNATURES, check_ybe, decode, r_matrix, GradedOperator
from .monodromy import ChainModel, ChainSpec, check_rtt, check_supercommutator, vacuum_residuals
from .rational import BACKEND, rat_from_str
from .sampling import ParameterSampler
from .scalars import f, g, h, is_zero, izergin, three_term_witness

SUITES = (
    "scalar",
    "ybe",
    "rtt",
    "commutator",
    "bethe",
    "actions",
    "recursion",
    "composite",
    "proof-replay",
    "gl12",
)


class SchemaError(ValueError):
    def __init__(self, message, pointer):
        super().__init__(f"{message} (at {pointer})")
        self.pointer = pointer


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    c: object
    chains: list
    suites: tuple
    seed: int = 1729
    campaigns: int = 3
    max_a: int = 2
    max_b: int = 2
    max_len: int = 4
    split: tuple = None
    us: tuple = None
    vs: tuple = None
    z: object = None
    action_formula_file: str = None


def _rat_at(value, pointer):
    try:
        return rat_from_str(value) if isinstance(value, str) else rat_from_str(str(value))
    except (ValueError, TypeError):
        raise SchemaError(f"not a rational: {value!r}", pointer) from None


def load_config(path) -> RunConfig:
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}", "/") from None
    return parse_config(raw)


def parse_config(raw) -> RunConfig:
    if not isinstance(raw, dict):
        raise SchemaError("config must be an object", "/")
    c = _rat_at(raw.get("c", "1"), "/c")
    if is_zero(c):
        raise SchemaError("c must be nonzero", "/c")
    default_sig = raw.get("signature", "gl(2|1)")
    if default_sig not in SIGNATURES:
        raise SchemaError(f"unknown signature {default_sig!r}", "/signature")

    max_len = int(raw.get("max_L", 4))
    chains = []
    for idx, ch in enumerate(raw.get("chains", [])):
        base = f"/chains/{idx}"
        if not isinstance(ch, dict) or "L" not in ch:
            raise SchemaError("chain needs an integer L", base)
        length = ch["L"]
        if not isinstance(length, int) or length < 0 or length > max_len:
            raise SchemaError(f"L={length!r} outside 0..{max_len}", base + "/L")
        xi_raw = ch.get("xi", [str(k) for k in range(length)])
        if len(xi_raw) != length:
            raise SchemaError(f"need {length} inhomogeneities", base + "/xi")
        xi = tuple(_rat_at(x, base + f"/xi/{i}") for i, x in enumerate(xi_raw))
        if len(set(xi)) != length:
            raise SchemaError("inhomogeneities must be pairwise distinct", base + "/xi")
        twist_raw = ch.get("twist", ["1", "1", "1"])
        if len(twist_raw) != 3:
            raise SchemaError("twist needs three entries", base + "/twist")
        twist = tuple(_rat_at(d, base + f"/twist/{i}") for i, d in enumerate(twist_raw))
        if any(is_zero(d) for d in twist):
            raise SchemaError("twist entries must be nonzero", base + "/twist")
        sig_name = ch.get("signature", default_sig)
        if sig_name not in SIGNATURES:
            raise SchemaError(f"unknown signature {sig_name!r}", base + "/signature")
        chains.append(ChainSpec(length, xi, twist, SIGNATURES[sig_name], c))

    suites_raw = raw.get("suites", list(SUITES))
    for i, s in enumerate(suites_raw):
        if s not in SUITES:
            raise SchemaError(f"unknown suite {s!r}", f"/suites/{i}")

    split = raw.get("split")
    if split is not None:
        if (
            not isinstance(split, list)
            or len(split) != 2
            or any(not isinstance(i, int) or i < 0 or i >= len(chains) for i in split)
        ):
            raise SchemaError("split must be two valid chain indices", "/split")
        if chains[split[0]].sig != chains[split[1]].sig:
            raise SchemaError("split chains must share a signature", "/split")
        split = tuple(split)

    def param_list(key):
        if key not in raw:
            return None
        return tuple(_rat_at(x, f"/{key}/{i}") for i, x in enumerate(raw[key]))

    return RunConfig(
        c=c,
        chains=chains,
        suites=tuple(suites_raw),
        seed=int(raw.get("seed", 1729)),
        campaigns=int(raw.get("campaigns", 3)),
        max_a=int(raw.get("max_a", 2)),
        max_b=int(raw.get("max_b", 2)),
        max_len=max_len,
        split=split,
        us=param_list("u"),
        vs=param_list("v"),
        z=_rat_at(raw["z"], "/z") if "z" in raw else None,
        action_formula_file=raw.get("action_formula_file"),
    )


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass
class CheckRecord:
    suite: str
    name: str
    parameters: dict
    residual_is_zero: bool
    residual_sample: str
    runtime: float


@dataclass
class Report:
    records: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    sign_convention: int = None

    def all_zero(self):
        return all(r.residual_is_zero for r in self.records)

    def to_json(self):
        return {
            "environment": self.environment,
            "sign_convention": self.sign_convention,
            "checks": [
                {
                    "suite": r.suite,
                    "name": r.name,
                    "parameters": r.parameters,
                    "residual_is_zero": r.residual_is_zero,
                    "residual_sample": r.residual_sample,
                    "runtime": r.runtime,
                }
                for r in self.records
            ],
        }


def emit_report(report: Report, path):
    with open(path, "w") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _sample_of(residual):
    """Human-readable witness of the first nonzero entry, or "0"."""
    if hasattr(residual, "cols"):
        for col in sorted(residual.cols):
            for row in sorted(residual.cols[col]):
                r = decode(row, residual.arity)
                c = decode(col, residual.arity)
                return f"[{''.join(map(str,r))},{''.join(map(str,c))}]={residual.cols[col][row]}"
        return "0"
    if hasattr(residual, "entries"):
        for key in sorted(residual.entries):
            return f"[{''.join(map(str, decode(key, residual.arity)))}]={residual.entries[key]}"
        return "0"
    return "0" if is_zero(residual) else str(residual)


def _is_zero_residual(residual):
    if hasattr(residual, "is_zero"):
        return residual.is_zero()
    return is_zero(residual)


class _Runner:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.report = Report(
            environment={
                "python": sys.version.split()[0],
                "rational_backend": BACKEND,
                "package_version": __version__,
                "seed": cfg.seed,
            }
        )

    def sampler(self, suite):
        return ParameterSampler(f"{self.cfg.seed}:{suite}", self.cfg.c)

    def check(self, suite, name, parameters, thunk):
        t0 = time.perf_counter()
        residual = thunk()
        dt = time.perf_counter() - t0
        self.report.records.append(
            CheckRecord(
                suite,
                name,
                {k: str(v) for k, v in parameters.items()},
                _is_zero_residual(residual),
                _sample_of(residual),
                round(dt, 6),
            )
        )

    def chains_of(self, sig_name, max_len=None):
        out = [ch for ch in self.cfg.chains if ch.sig.name == sig_name]
        if max_len is not None:
            out = [ch for ch in out if ch.length <= max_len]
        return out

    def split_of(self, sig_name):
        cfg = self.cfg
        if cfg.split is not None and cfg.chains[cfg.split[0]].sig.name == sig_name:
            return SplitChain(cfg.chains[cfg.split[0]], cfg.chains[cfg.split[1]])
        parts = self.chains_of(sig_name)
        for i in range(len(parts)):
            for j in range(len(parts)):
                if i == j:
                    continue
                try:
                    return SplitChain(parts[i], parts[j])
                except ValueError:
                    continue
        return None

    def params(self, smp, a, b, avoid=()):
        cfg = self.cfg
        if cfg.us is not None and len(cfg.us) >= a and cfg.vs is not None and len(cfg.vs) >= b:
            return cfg.us[:a], cfg.vs[:b]
        drawn = smp.generic(a + b, avoid=avoid)
        return drawn[:a], drawn[a:]

    def ab_grid(self):
        return [
            (a, b)
            for a in range(self.cfg.max_a + 1)
            for b in range(self.cfg.max_b + 1)
        ]

    # -- suites ---------------------------------------------------------------

    def run(self, only=None):
        for suite in self.cfg.suites:
            if only and suite not in only:
                continue
            getattr(self, "suite_" + suite.replace("-", "_"))()
        return self.report

    def suite_scalar(self):
        smp = self.sampler("scalar")
        c = self.cfg.c
        for k in range(10):
            v, u = smp.generic(2)
            self.check(
                "scalar",
                f"izergin K1 equals g (draw {k})",
                {"v": v, "u": u},
                lambda v=v, u=u: izergin((v,), (u,), c) - g(v, u, c),
            )
        self.check(
            "scalar",
            "izergin K2 frozen value",
            {"v": "5,6", "u": "1,2", "c": 1},
            lambda: izergin((5, 6), (1, 2), 1) - rat_from_str("1/6"),
        )
        from itertools import permutations

        vs = smp.generic(3)
        us = smp.generic(3, avoid=vs)
        base = izergin(vs, us, c)
        worst = 0
        for pv in permutations(vs):
            for pu in permutations(us):
                d = izergin(pv, pu, c) - base
                if not is_zero(d):
                    worst = d
        self.check("scalar", "izergin permutation invariance n=3", {"v": vs, "u": us}, lambda: worst)
        for k in range(5):
            u, v, z = smp.generic(3)
            self.check(
                "scalar",
                f"three-term identity (draw {k})",
                {"u": u, "v": v, "z": z},
                lambda u=u, v=v, z=z: three_term_witness(u, v, z, c),
            )
            self.check(
                "scalar",
                f"g antisymmetry, f=1+g, h g=f (draw {k})",
                {"u": u, "v": v},
                lambda u=u, v=v: (g(u, v, c) + g(v, u, c))
                + (f(u, v, c) - 1 - g(u, v, c))
                + (h(u, v, c) * g(u, v, c) - f(u, v, c)),
            )

    def suite_ybe(self):
        c = self.cfg.c
        for sig_name, sig in SIGNATURES.items():
            smp = self.sampler("ybe:" + sig_name)
            for k in range(20):
                u, v, w = smp.generic(3)
                self.check(
                    "ybe",
                    f"{sig_name} Yang-Baxter (draw {k})",
                    {"u": u, "v": v, "w": w},
                    lambda u=u, v=v, w=w: check_ybe(u, v, w, sig, c),
                )
                gv = g(u, v, c)
                self.check(
                    "ybe",
                    f"{sig_name} unitarity (draw {k})",
                    {"u": u, "v": v},
                    lambda u=u, v=v, gv=gv: r_matrix(u, v, sig, c)
                    .compose(r_matrix(v, u, sig, c))
                    .sub(GradedOperator.identity(sig, 2).scale(1 - gv * gv)),
                )

    def suite_rtt(self):
        smp = self.sampler("rtt")
        for ci, chain in enumerate(self.cfg.chains):
            model = ChainModel(chain)
            for k in range(self.cfg.campaigns):
                u, v = smp.generic(2, avoid=chain.xi)
                self.check(
                    "rtt",
                    f"chain {ci} ({chain.sig.name}, L={chain.length}) RTT (draw {k})",
                    {"u": u, "v": v},
                    lambda m=model, u=u, v=v: check_rtt(m, u, v),
                )

    def suite_commutator(self):
        smp = self.sampler("commutator")
        for ci, chain in enumerate(self.cfg.chains):
            if chain.length != 2:
                continue
            model = ChainModel(chain)
            u, v = smp.generic(2, avoid=chain.xi)

            def all_tuples(m=model, u=u, v=v):
                for i in range(1, 4):
                    for j in range(1, 4):
                        for k in range(1, 4):
                            for l in range(1, 4):
                                r1, r2 = check_supercommutator(m, i, j, k, l, u, v)
                                if not r1.is_zero():
                                    return r1
                                if not r2.is_zero():
                                    return r2
                return r1

            self.check(
                "commutator",
                f"chain {ci} ({chain.sig.name}) exchange relations, all 81 tuples, both forms",
                {"u": u, "v": v},
                all_tuples,
            )

    def suite_bethe(self):
        smp = self.sampler("bethe")
        for ci, chain in enumerate(self.cfg.chains):
            model = ChainModel(chain)
            for k in range(min(self.cfg.campaigns, 10)):
                u = smp.generic_one(avoid=chain.xi)

                def vac(m=model, u=u):
                    bad = [name for name, ok in vacuum_residuals(m, u) if not ok]
                    return 0 if not bad else 1

                self.check(
                    "bethe",
                    f"chain {ci} ({chain.sig.name}, L={chain.length}) vacuum axioms (draw {k})",
                    {"u": u},
                    vac,
                )
            if chain.sig.name != "gl(2|1)":
                continue
            us, vs = self.params(smp, min(2, self.cfg.max_a), min(2, self.cfg.max_b), avoid=chain.xi)
            z = smp.generic_one(avoid=tuple(chain.xi) + us + vs)
            self.check(
                "bethe",
                f"chain {ci} permutation invariance",
                {"u": us, "v": vs},
                lambda m=model, us=us, vs=vs: build_vector(m, us, vs).sub(
                    build_vector(m, tuple(reversed(us)), tuple(reversed(vs)))
                ),
            )
            self.check(
                "bethe",
                f"chain {ci} gradation parity b mod 2",
                {"u": us, "v": vs},
                lambda m=model, us=us, vs=vs: 0
                if grading_of(build_vector(m, us, vs), len(vs) % 2) == len(vs) % 2
                and grading_of(build_dual_vector(m, us, vs), len(vs) % 2) == len(vs) % 2
                else 1,
            )
            self.check(
                "bethe",
                f"chain {ci} coincidence limit equals normalized T13 action",
                {"z": z},
                lambda m=model, z=z: build_vector_limit(m, (z,), (z,)).sub(
                    m.T(1, 3, z).apply(m.omega()).scale(1 / m.lam(2, z))
                ),
            )

    def suite_actions(self):
        smp = self.sampler("actions")
        table = load_formula_table(self.cfg.action_formula_file)
        grid = [(a, b) for (a, b) in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)) if a <= self.cfg.max_a and b <= self.cfg.max_b]
        for ci, chain in enumerate(self.chains_of("gl(2|1)", max_len=2)):
            model = ChainModel(chain)
            for a, b in grid:
                us, vs = self.params(smp, a, b, avoid=chain.xi)
                z = smp.generic_one(avoid=tuple(chain.xi) + us + vs)
                for el in ELEMENTS:
                    self.check(
                        "actions",
                        f"chain {ci} (L={chain.length}) {el} action at (a,b)=({a},{b})",
                        {"u": us, "v": vs, "z": z},
                        lambda m=model, el=el, us=us, vs=vs, z=z: action_check(m, el, us, vs, z, table=table),
                    )

    def suite_recursion(self):
        smp = self.sampler("recursion")
        for ci, chain in enumerate(self.chains_of("gl(2|1)", max_len=3)):
            model = ChainModel(chain)
            for a, b in self.ab_grid():
                if b == 0:
                    continue
                us, vs = self.params(smp, a, b - 1, avoid=chain.xi)
                z = smp.generic_one(avoid=tuple(chain.xi) + us + vs)
                self.check(
                    "recursion",
                    f"chain {ci} (L={chain.length}) recursion at (a,b)=({a},{b})",
                    {"u": us, "v": vs, "z": z},
                    lambda m=model, us=us, vs=vs, z=z: check_recursion(m, us, vs, z),
                )

    def suite_composite(self):
        smp = self.sampler("composite")
        split = self.split_of("gl(2|1)")
        if split is None:
            raise SchemaError("composite suite needs two gl(2|1) chains with disjoint xi", "/chains")
        xi = tuple(split.part1.xi) + tuple(split.part2.xi)
        u = smp.generic_one(avoid=xi)
        self.check(
            "composite",
            "coproduct monodromy equals direct total",
            {"u": u},
            lambda u=u: _first_nonzero(compose_monodromy(split, u)[1].values()),
        )
        total = CompositeModel(split)
        self.check(
            "composite",
            "ratio functions multiply across the split",
            {"u": u},
            lambda u=u: (total.r(1, u) - total.part1.r(1, u) * total.part2.r(1, u))
            + (total.r(3, u) - total.part1.r(3, u) * total.part2.r(3, u)),
        )
        for k in range(self.cfg.campaigns):
            for a, b in self.ab_grid():
                us, vs = self.params(smp, a, b, avoid=xi)
                self.check(
                    "composite",
                    f"bilinear factorization (a,b)=({a},{b}) campaign {k}",
                    {"u": us, "v": vs},
                    lambda us=us, vs=vs: check_bethe_factorization(split, us, vs),
                )
                self.check(
                    "composite",
                    f"dual bilinear factorization (a,b)=({a},{b}) campaign {k}",
                    {"u": us, "v": vs},
                    lambda us=us, vs=vs: check_dual_bethe_factorization(split, us, vs),
                )
        b1, b2 = min(1, self.cfg.max_b), min(1, self.cfg.max_b)
        vs1 = smp.generic(b1, avoid=xi)
        vs2 = smp.generic(b2, avoid=xi + vs1)
        us1 = smp.generic(1, avoid=xi + vs1 + vs2)
        us2 = smp.generic(1, avoid=xi + vs1 + vs2 + us1)
        self.check(
            "composite",
            "factor exchange identity",
            {"v1": vs1, "v2": vs2},
            lambda: check_factor_exchange(split, us1, vs1, us2, vs2),
        )
        us, vs = self.params(smp, min(1, self.cfg.max_a), min(1, self.cfg.max_b), avoid=xi)
        z = smp.generic_one(avoid=xi + us + vs)
        self.check(
            "composite",
            "creation-entry actions on composite sums",
            {"u": us, "v": vs, "z": z},
            lambda: _first_nonzero(check_composite_creation_actions(split, us, vs, z)),
        )

    def suite_proof_replay(self):
        smp = self.sampler("proof-replay")
        split = self.split_of("gl(2|1)")
        if split is None:
            raise SchemaError("proof-replay suite needs two gl(2|1) chains with disjoint xi", "/chains")
        xi = tuple(split.part1.xi) + tuple(split.part2.xi)
        for a, b in ((1, 1), (2, 1)):
            if a - 1 > self.cfg.max_a or b - 1 > self.cfg.max_b:
                continue
            us, vs = self.params(smp, a - 1, b - 1, avoid=xi)
            z = smp.generic_one(avoid=xi + us + vs)
            rep = action_decomposition_report(split, us, vs, z)
            for name, residual in rep.items():
                self.check(
                    "proof-replay",
                    f"(a,b)=({a},{b}) {name}",
                    {"u": us, "v": vs, "z": z},
                    lambda r=residual: r,
                )

    def suite_gl12(self):
        smp = self.sampler("gl12")
        split = self.split_of("gl(1|2)")
        if split is None:
            raise SchemaError("gl12 suite needs two gl(1|2) chains with disjoint xi", "/chains")
        xi = tuple(split.part1.xi) + tuple(split.part2.xi)
        signs = []
        for k in range(5):
            us, vs = smp.generic(1, avoid=xi), smp.generic(1, avoid=xi)
            while any(is_zero(u - v) for u in us for v in vs):
                vs = smp.generic(1, avoid=xi + us)
            signs.append(resolve_sign(split, us, vs))
        stable = len(set(signs)) == 1
        self.report.sign_convention = signs[0] if stable else None
        self.check(
            "gl12",
            "normalization sign stable across 5 probes",
            {"signs": signs},
            lambda: 0 if stable else 1,
        )
        sign = signs[0]
        for k in range(self.cfg.campaigns):
            for a, b in self.ab_grid():
                us, vs = self.params(smp, a, b, avoid=xi)
                self.check(
                    "gl12",
                    f"tilde bilinear factorization (a,b)=({a},{b}) campaign {k}",
                    {"u": us, "v": vs},
                    lambda us=us, vs=vs: check_tilde_factorization(split, us, vs, sign=sign),
                )
                self.check(
                    "gl12",
                    f"tilde dual bilinear factorization (a,b)=({a},{b}) campaign {k}",
                    {"u": us, "v": vs},
                    lambda us=us, vs=vs: check_tilde_dual_factorization(split, us, vs, sign=sign),
                )


def _first_nonzero(residuals):
    last = 0
    for r in residuals:
        last = r
        if not _is_zero_residual(r):
            return r
    return last


def run_suites(cfg: RunConfig, only=None) -> Report:
    return _Runner(cfg).run(only=only)


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.max_a is not None:
        cfg.max_a = args.max_a
    if args.max_b is not None:
        cfg.max_b = args.max_b
    only = set(args.suite) if args.suite else None
    if only:
        unknown = only - set(SUITES)
        if unknown:
            print(f"unknown suites: {sorted(unknown)}", file=sys.stderr)
            return 2
    report = run_suites(cfg, only=only)
    for rec in report.records:
        mark = "ok " if rec.residual_is_zero else "FAIL"
        print(f"[{mark}] {rec.suite} :: {rec.name} ({rec.runtime:.3f}s)")
    zeros = sum(r.residual_is_zero for r in report.records)
    print(f"{zeros}/{len(report.records)} checks with exactly-zero residual")
    if report.sign_convention is not None:
        print(f"resolved gl(1|2) composite normalization sign: {report.sign_convention:+d}")
    if args.report:
        emit_report(report, args.report)
        print(f"report written to {args.report}")
    return 0 if report.all_zero() else 1


def _cmd_report(args) -> int:
    cfg = load_config(args.config)
    report = run_suites(cfg)
    emit_report(report, args.out)
    print(f"report written to {args.out}")
    return 0 if report.all_zero() else 1


def _cmd_bethe_eval(args) -> int:
    cfg = load_config(args.config)
    if not cfg.chains:
        print("config has no chains", file=sys.stderr)
        return 2
    model = ChainModel(cfg.chains[0])
    us = tuple(rat_from_str(x) for x in args.u or [])
    vs = tuple(rat_from_str(x) for x in args.v or [])
    builder = build_vector if model.sig.name == "gl(2|1)" else build_tilde_vector
    vec = build_vector_limit(model, us, vs, builder=builder)
    print(json.dumps(vector_to_json(vec), indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="superbethe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites from a config")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--max-a", type=int, dest="max_a")
    p_verify.add_argument("--max-b", type=int, dest="max_b")
    p_verify.add_argument("--report", help="also write the JSON report here")
    p_verify.set_defaults(fn=_cmd_verify)

    p_report = sub.add_parser("report", help="run configured suites and write the JSON report")
    p_report.add_argument("--config", required=True)
    p_report.add_argument("--out", required=True)
    p_report.set_defaults(fn=_cmd_report)

    p_bethe = sub.add_parser("bethe", help="Bethe vector utilities")
    bsub = p_bethe.add_subparsers(dest="bethe_command", required=True)
    p_eval = bsub.add_parser("eval", help="print a Bethe vector's sparse entries")
    p_eval.add_argument("--config", required=True)
    p_eval.add_argument("--u", action="append", help="u parameter p/q (repeatable)")
    p_eval.add_argument("--v", action="append", help="v parameter p/q (repeatable)")
    p_eval.set_defaults(fn=_cmd_bethe_eval)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SchemaError, AmbiguousConvention, DivisionByZero, PoleAtZero, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
