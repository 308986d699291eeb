"""Parameter sweeps comparing closed forms against the brute-force engine."""
from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping

from . import closed_forms as cf
from .combinatorics import (
    binomial,
    check_vandermonde_l2,
    gen_vandermonde,
)
from .forms import DiagonalForm, diag, hyperbolic, perp
from .power_engine import (
    enum_cap,
    lambda_power,
    naive_lambda,
    naive_sym,
    sym_power,
    sym_power_via_s3,
)
from .squareclass import NEG_ONE, ONE, FieldMode, SquareClass, class_negate, sq
from .witt_normal import NormalForm, hyp_fill, normalize

__all__ = [
    "IdentityReport",
    "SuiteConfig",
    "DomainError",
    "UnknownIdentity",
    "REGISTRY",
    "verify",
    "run_suite",
    "random_form",
    "swap_in_hyperbolic",
    "default_config",
    "reports_to_json",
]


class UnknownIdentity(KeyError):
    pass


class DomainError(ValueError):
    pass


@dataclass
class IdentityReport:
    identity_id: str
    params: dict[str, int]
    mode: FieldMode
    passed: bool
    lhs: NormalForm | int
    rhs: NormalForm | int
    elapsed: float = field(default=0.0, compare=False)
    expect_mismatch: bool = False

    @property
    def matched(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self, elapsed: bool = False) -> dict:
        def side(v):
            return v.to_json() if isinstance(v, NormalForm) else str(v)

        out = {
            "id": self.identity_id,
            "params": {k: self.params[k] for k in self.params},
            "mode": self.mode.value,
            "passed": self.passed,
            "expect_mismatch": self.expect_mismatch,
            "lhs": side(self.lhs),
            "rhs": side(self.rhs),
        }
        if elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def summary(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        extra = " (expected mismatch)" if self.expect_mismatch else ""
        return f"{flag} {self.identity_id} {ps} mode={self.mode.value}{extra}: {self.lhs} | {self.rhs}"


# -- random forms ---------------------------------------------------------

_RANDOM_ATOMS = ("-1", "a", "b", "c")


def random_form(seed: int, max_classes: int = 8, max_dim: int = 40) -> DiagonalForm:
    """Seeded random form over the atoms -1, a, b, c."""
    rng = random.Random(seed)
    pool = [
        SquareClass.of(combo)
        for r in range(len(_RANDOM_ATOMS) + 1)
        for combo in itertools.combinations(_RANDOM_ATOMS, r)
    ]
    nclasses = rng.randint(1, max_classes)
    classes = rng.sample(pool, nclasses)
    dim = rng.randint(nclasses, max_dim)
    mults = dict.fromkeys(classes, 1)
    for cls in rng.choices(classes, k=dim - nclasses):
        mults[cls] += 1
    return DiagonalForm(mults)


def swap_in_hyperbolic(phi: DiagonalForm, seed: int) -> tuple[DiagonalForm, DiagonalForm]:
    """Two isometric diagonal forms related by trading a <c, -c> pair for H.

    If ``phi`` holds such a pair the result is ``(phi, phi with the pair
    replaced by H)``; otherwise ``(phi + <c, -c>, phi + H)``.
    """
    rng = random.Random(seed + 7919)
    pairs = [c for c in phi if not c.has_minus_one and class_negate(c) in phi]
    if not pairs:
        c = rng.choice(sorted(phi)) if not phi.is_zero else ONE
        return perp(phi, diag(c, class_negate(c))), perp(phi, hyperbolic(1))
    c = rng.choice(sorted(pairs))
    entries = dict(phi)
    entries[c] -= 1
    entries[class_negate(c)] -= 1
    return phi, perp(DiagonalForm(entries), hyperbolic(1))


# -- registry -------------------------------------------------------------

@dataclass(frozen=True)
class _Spec:
    params: tuple[str, ...]
    domain: Callable[[Mapping[str, int]], str | None]
    run: Callable[..., tuple[Any, Any]]
    trace: bool = False  # mode follows n


def _need(cond: bool, msg: str) -> str | None:
    return None if cond else msg


def _nf(form: DiagonalForm, mode: FieldMode) -> NormalForm:
    return normalize(form, mode)


def _trace_params(p, opts) -> cf.TraceParams:
    return cf.TraceParams(p["n"], p1_exponent=opts.get("p1_exponent", "standard"))


def _run_hyp_ext(p, mode, opts):
    h, k = p["h"], p["k"]
    return _nf(lambda_power(hyperbolic(h), k), mode), _nf(cf.ext_hyp_closed(h, k), mode)


def _run_hyp_sym(p, mode, opts):
    h, k = p["h"], p["k"]
    return _nf(sym_power(hyperbolic(h), k), mode), _nf(cf.sym_hyp_closed(h, k), mode)


def _run_l1(p, mode, opts):
    m, k, s = p["m"], p["k"], p["sign"]
    cls = ONE if s == 1 else NEG_ONE
    closed = DiagonalForm({cls ** k: binomial(m + k - 1, k)})
    return _nf(sym_power(DiagonalForm({cls: m}), k), mode), _nf(closed, mode)


def _run_l2(p, mode, opts):
    chk = check_vandermonde_l2(p["p"], p["r"])
    return chk.lhs, chk.rhs


def _run_l3(p, mode, opts):
    r, s = p["r"], p["s"]
    return binomial(r - 1, s) + binomial(r - 1, s - 1), binomial(r, s)


def _run_r1(p, mode, opts):
    r, s = p["r"], p["s"]
    return s * binomial(r, s), r * binomial(r - 1, s - 1)


def _run_gv(p, mode, opts):
    chk = gen_vandermonde(p["p"], p["q"], p["r"])
    return chk.lhs, chk.rhs


def _run_p1(p, mode, opts):
    tp = _trace_params(p, opts)
    closed, _ = cf.sym_trace_closed(tp, 1)
    return _nf(sym_power(cf.trace_form(tp), 1), mode), _nf(closed, mode)


def _run_sym_trace(p, mode, opts):
    tp = _trace_params(p, opts)
    closed, _ = cf.sym_trace_closed(tp, p["k"])
    return _nf(sym_power(cf.trace_form(tp), p["k"]), mode), _nf(closed, mode)


def _run_displayed(p, mode, opts):
    tp = _trace_params(p, opts)
    shown, _ = cf.sym_trace_displayed(tp, p["k"])
    closed, _ = cf.sym_trace_closed(tp, p["k"])
    return _nf(shown, mode), _nf(closed, mode)


def _run_lt(p, mode, opts):
    tp = _trace_params(p, opts)
    closed, _ = cf.ext_trace_closed(tp, p["k"], literal_table=opts.get("literal_table", False))
    return _nf(lambda_power(cf.trace_form(tp), p["k"]), mode), _nf(closed, mode)


def _run_s3eq(p, mode, opts):
    phi = random_form(p["seed"])
    return _nf(sym_power(phi, p["k"]), mode), _nf(sym_power_via_s3(phi, p["k"]), mode)


def _run_snaive(p, mode, opts):
    phi = random_form(p["seed"])
    return _nf(sym_power(phi, p["k"]), mode), _nf(naive_sym(phi, p["k"]), mode)


def _run_lnaive(p, mode, opts):
    phi = random_form(p["seed"])
    return _nf(lambda_power(phi, p["k"]), mode), _nf(naive_lambda(phi, p["k"]), mode)


def _run_iso(p, mode, opts):
    phi, other = swap_in_hyperbolic(random_form(p["seed"]), p["seed"])
    return _nf(sym_power(phi, p["k"]), mode), _nf(sym_power(other, p["k"]), mode)


def _naive_fits(kind: str):
    def check(p):
        dim = random_form(p["seed"]).dim
        k = p["k"]
        size = binomial(dim, k) if kind == "lambda" else binomial(dim + k - 1, k)
        return _need(size <= enum_cap(), "enumeration exceeds QF_ENUM_CAP")
    return check


def _all(*checks):
    def run(p):
        for c in checks:
            msg = c(p)
            if msg:
                return msg
        return None
    return run


_k_ge0 = lambda p: _need(p["k"] >= 0, "k >= 0")  # noqa: E731
_seed_ok = lambda p: _need(p["seed"] >= 0, "seed >= 0")  # noqa: E731

REGISTRY: dict[str, _Spec] = {
    "S4": _Spec(("h", "k"), lambda p: _need(
        p["h"] >= 1 and p["k"] % 2 == 1 and 1 <= p["k"] <= 2 * p["h"] - 1,
        "S4 requires h >= 1 and odd k with 1 <= k <= 2h-1"), _run_hyp_ext),
    "S5": _Spec(("h", "k"), lambda p: _need(
        p["h"] >= 1 and p["k"] % 2 == 0 and 0 <= p["k"] <= 2 * p["h"],
        "S5 requires h >= 1 and even k with 0 <= k <= 2h"), _run_hyp_ext),
    "N1": _Spec(("h", "k"), lambda p: _need(
        p["h"] >= 1 and p["k"] >= 1 and p["k"] % 2 == 1,
        "N1 requires h >= 1 and odd k >= 1"), _run_hyp_sym),
    "N2": _Spec(("h", "k"), lambda p: _need(
        p["h"] >= 1 and p["k"] >= 0 and p["k"] % 2 == 0,
        "N2 requires h >= 1 and even k >= 0"), _run_hyp_sym),
    "L1": _Spec(("m", "k", "sign"), lambda p: _need(
        p["m"] >= 1 and p["k"] >= 0 and p["sign"] in (1, -1),
        "L1 requires m >= 1, k >= 0, sign in {1, -1}"), _run_l1),
    "L2": _Spec(("p", "r"), lambda p: _need(p["p"] >= 0 and p["r"] >= 0, "L2 requires p, r >= 0"), _run_l2),
    "L3": _Spec(("r", "s"), lambda p: _need(1 <= p["s"] <= p["r"], "L3 requires 1 <= s <= r"), _run_l3),
    "R1": _Spec(("r", "s"), lambda p: _need(p["r"] >= 1 and p["s"] >= 1, "R1 requires r, s >= 1"), _run_r1),
    "GV": _Spec(("p", "q", "r"), lambda p: _need(
        min(p["p"], p["q"], p["r"]) >= 0, "GV requires p, q, r >= 0"), _run_gv),
    "P1": _Spec(("n",), lambda p: _need(p["n"] >= 1, "P1 requires n >= 1"), _run_p1, trace=True),
    "P10": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 1 and p["n"] % 2 == 1 and p["k"] >= 0,
        "P10 requires odd n >= 1 and k >= 0"), _run_sym_trace, trace=True),
    "P11": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 2 and p["n"] % 2 == 0 and p["k"] >= 0 and p["k"] % 2 == 1,
        "P11 requires even n and odd k"), _run_sym_trace, trace=True),
    "P12": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 2 and p["n"] % 2 == 0 and p["k"] >= 0 and p["k"] % 2 == 0,
        "P12 requires even n and even k"), _run_sym_trace, trace=True),
    "P11D": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 2 and p["n"] % 2 == 0 and p["k"] >= 3 and p["k"] % 2 == 1,
        "P11D requires even n and odd k >= 3"), _run_displayed, trace=True),
    "P12D": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 2 and p["n"] % 2 == 0 and p["k"] >= 4 and p["k"] % 2 == 0,
        "P12D requires even n and even k >= 4"), _run_displayed, trace=True),
    "LT": _Spec(("n", "k"), lambda p: _need(
        p["n"] >= 1 and 0 <= p["k"] <= p["n"] ** 2, "LT requires n >= 1 and 0 <= k <= n^2"),
        _run_lt, trace=True),
    "S3EQ": _Spec(("seed", "k"), _all(_seed_ok, _k_ge0), _run_s3eq),
    "SNAIVE": _Spec(("seed", "k"), _all(_seed_ok, _k_ge0, _naive_fits("sym")), _run_snaive),
    "LNAIVE": _Spec(("seed", "k"), _all(_seed_ok, _k_ge0, _naive_fits("lambda")), _run_lnaive),
    "ISO": _Spec(("seed", "k"), _all(_seed_ok, _k_ge0), _run_iso),
}


def _check_params(identity_id: str, params: Mapping[str, int]) -> tuple[_Spec, dict[str, int]]:
    try:
        spec = REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None
    missing = [name for name in spec.params if name not in params]
    if missing:
        raise DomainError(f"{identity_id} needs parameters {', '.join(missing)}")
    extra = sorted(set(params) - set(spec.params))
    if extra:
        raise DomainError(f"{identity_id} does not take {', '.join(extra)}")
    clean = {name: int(params[name]) for name in spec.params}
    msg = spec.domain(clean)
    if msg:
        raise DomainError(msg)
    return spec, clean


def in_domain(identity_id: str, params: Mapping[str, int]) -> bool:
    try:
        _check_params(identity_id, params)
    except DomainError:
        return False
    return True


def verify(
    identity_id: str,
    params: Mapping[str, int],
    mode: FieldMode | str | None = None,
    *,
    expect_mismatch: bool = False,
    p1_exponent: str = "standard",
    literal_table: bool = False,
) -> IdentityReport:
    spec, clean = _check_params(identity_id, params)
    if mode is None:
        mode = cf.required_mode(clean["n"]) if spec.trace else FieldMode.GENERIC
    else:
        mode = FieldMode.parse(mode)
    opts = {"p1_exponent": p1_exponent, "literal_table": literal_table}
    t0 = time.perf_counter()
    lhs, rhs = spec.run(clean, mode, opts)
    elapsed = time.perf_counter() - t0
    matched = lhs == rhs
    return IdentityReport(
        identity_id, clean, mode, matched != expect_mismatch, lhs, rhs, elapsed, expect_mismatch
    )


# -- suites ---------------------------------------------------------------

def _expand(value) -> list[int]:
    if isinstance(value, bool):
        raise ValueError("boolean is not a parameter range")
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        if ".." in value:
            lo, hi = value.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(value)]
    if isinstance(value, (list, tuple)):
        out: list[int] = []
        for v in value:
            out.extend(_expand(v))
        return out
    raise ValueError(f"cannot read parameter range {value!r}")


@dataclass
class SuiteConfig:
    """Sweep description: per identity, a range for each parameter.

    Ranges are ints, lists, or ``"lo..hi"`` strings; cells outside an
    identity's domain are skipped.
    """

    identities: dict[str, dict[str, Any]] = field(default_factory=dict)
    p1_exponent: str = "standard"
    literal_table: bool = False
    p12_negative: bool = False
    modes: dict[str, str] = field(default_factory=dict)
    workers: int = 1

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SuiteConfig":
        known = {"identities", "p1_exponent", "literal_table", "p12_negative", "modes", "workers"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls(
            identities={k: dict(v) for k, v in data.get("identities", {}).items()},
            p1_exponent=data.get("p1_exponent", "standard"),
            literal_table=bool(data.get("literal_table", False)),
            p12_negative=bool(data.get("p12_negative", False)),
            modes=dict(data.get("modes", {})),
            workers=int(data.get("workers", 1)),
        )
        for ident, ranges in cfg.identities.items():
            if ident not in REGISTRY:
                raise ValueError(f"unknown identity {ident!r} in config")
            for name in ranges:
                if name not in REGISTRY[ident].params:
                    raise ValueError(f"{ident} has no parameter {name!r}")
        return cfg

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        with open(path, "rb") as fh:
            return cls.from_mapping(tomllib.load(fh))

    def cells(self) -> list[tuple[str, dict[str, int]]]:
        out = []
        for ident, ranges in self.identities.items():
            names = REGISTRY[ident].params
            grids = [_expand(ranges[name]) for name in names]
            for values in itertools.product(*grids):
                params = dict(zip(names, values))
                if in_domain(ident, params):
                    out.append((ident, params))
        return out


def default_config() -> SuiteConfig:
    """The acceptance sweep."""
    return SuiteConfig(
        identities={
            "N1": {"h": "1..12", "k": "0..10"},
            "N2": {"h": "1..12", "k": "0..10"},
            "S4": {"h": "1..12", "k": "0..24"},
            "S5": {"h": "1..12", "k": "0..24"},
            "L1": {"m": "1..20", "k": "0..12", "sign": [1, -1]},
            "L2": {"p": "0..30", "r": "0..30"},
            "L3": {"r": "1..30", "s": "1..30"},
            "R1": {"r": "1..30", "s": "1..30"},
            "GV": {"p": "0..20", "q": "0..20", "r": "0..30"},
            "P1": {"n": "1..9"},
            "P10": {"n": [1, 3, 5, 7, 9], "k": "0..8"},
            "P11": {"n": [2, 4, 6, 8], "k": "0..7"},
            "P12": {"n": [2, 4, 6, 8], "k": "0..7"},
            "P11D": {"n": [2, 4, 6, 8], "k": "3..7"},
            "P12D": {"n": [2, 4, 6, 8], "k": "4..8"},
            "LT": {"n": "1..8", "k": "0..8"},
            "S3EQ": {"seed": "0..199", "k": "0..8"},
            "SNAIVE": {"seed": "0..199", "k": "0..8"},
            "LNAIVE": {"seed": "0..199", "k": "0..8"},
            "ISO": {"seed": "0..199", "k": "0..8"},
        },
        p12_negative=True,
    )


def _run_cell(args) -> IdentityReport:
    ident, params, mode, expect, p1, lit = args
    return verify(ident, params, mode, expect_mismatch=expect, p1_exponent=p1, literal_table=lit)


def _order_key(report: IdentityReport):
    return (report.identity_id, tuple(report.params.values()), report.expect_mismatch)


def run_suite(config: SuiteConfig | None = None) -> tuple[list[IdentityReport], bool]:
    config = default_config() if config is None else config
    jobs = [
        (ident, params, config.modes.get(ident), False, config.p1_exponent, config.literal_table)
        for ident, params in config.cells()
    ]
    if config.p12_negative:
        jobs.append(("P12", {"n": 4, "k": 4}, FieldMode.GENERIC, True, config.p1_exponent, False))
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(_run_cell, jobs, chunksize=16))
    else:
        reports = [_run_cell(job) for job in jobs]
    reports.sort(key=_order_key)
    return reports, all(r.passed for r in reports)


def reports_to_json(reports: Iterable[IdentityReport], elapsed: bool = False) -> str:
    return json.dumps([r.to_json(elapsed) for r in reports], indent=2)
