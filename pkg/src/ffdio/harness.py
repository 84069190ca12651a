"""Experiment configuration, instance generators, end-to-end verification runs
and CSV/JSON report emission.

A run is deterministic: identical configs (including seeds) produce
byte-identical reports. Verdicts are PASS/FAIL on the window tail; the fitted
additive constant is estimated from the window head and never asserted to be
anything but an empirical fit.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Optional

from . import linalg
from .heights import LinearForm, PlaceSet, height_point, proximity, weil
from .moving import (
    MovingHyperplaneFamily,
    PointSequence,
    Sequence,
    WindowVerdict,
    general_position_check,
    nondegeneracy_probe,
    normalize_xi,
    smallness_report,
    window_range,
)
from .parser import EvalError, ParseError, parse_expression
from .places import PrimeDivisor, parse_prime
from .ratfunc import RatFunc
from .reduction import (
    PlaceSelection,
    build_transfer,
    check_local_inequality,
    derive_and_pad,
    height_P_decomposition,
    invert_forms,
    select_J,
    stabilize_J,
    weil_transfer_check,
)
from .steinmetz import choose_s, dim_L, extend_basis, monomial_sequence

MAX_Q = 12
MAX_M = 4


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the field path."""


class ProbeRefusal(RuntimeError):
    """A hypothesis probe failed; the run is refused rather than reported."""

    def __init__(self, message: str, probes: dict):
        super().__init__(message)
        self.probes = probes


def _parse_fraction(text, path: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{path}: not a rational number: {text!r}") from exc


@dataclass(frozen=True)
class ExperimentConfig:
    m: int
    q: int
    s_places: tuple[str, ...]
    points: tuple[str, ...]  # M+1 index expressions
    hyperplanes: tuple[tuple[str, ...], ...]  # q rows of M+1 index expressions
    window: tuple[int, int]
    epsilon: Fraction
    delta: Fraction
    s_max: int
    tail_fraction: Fraction
    smallness_delta: Fraction
    infinite_subset: Optional[Fraction] = None
    threads: int = 1
    seed: Optional[int] = None
    profile: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "M": self.m,
            "q": self.q,
            "S": list(self.s_places),
            "points": list(self.points),
            "hyperplanes": [list(row) for row in self.hyperplanes],
            "window": list(self.window),
            "epsilon": str(self.epsilon),
            "delta": str(self.delta),
            "s_max": self.s_max,
            "thresholds": {
                "tail_fraction": str(self.tail_fraction),
                "smallness_delta": str(self.smallness_delta),
            },
            "infinite_subset": None if self.infinite_subset is None else str(self.infinite_subset),
            "threads": self.threads,
            "seed": self.seed,
            "profile": self.profile,
        }

    def window_indices(self) -> tuple[int, ...]:
        return window_range(*self.window)

    def places(self) -> list[PrimeDivisor]:
        return [parse_prime(s) for s in self.s_places]

    def place_set(self) -> PlaceSet:
        return PlaceSet.of(self.places())

    def point_sequence(self) -> PointSequence:
        return PointSequence.from_texts(self.points, alpha_min=self.window[0])

    def hyperplane_family(self) -> MovingHyperplaneFamily:
        return MovingHyperplaneFamily.from_texts(self.hyperplanes, alpha_min=self.window[0])


def parse_config(data: dict, mode: Optional[str] = None) -> ExperimentConfig:
    """Validate a raw config dict; error messages carry the offending field path."""
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")

    def need(key):
        if key not in data:
            raise ConfigError(f"{key}: missing")
        return data[key]

    m = need("M")
    q = need("q")
    if not isinstance(m, int) or not (1 <= m <= MAX_M):
        raise ConfigError(f"M: must be an integer in [1, {MAX_M}]")
    if not isinstance(q, int) or not (m + 1 <= q <= MAX_Q):
        raise ConfigError(f"q: must be an integer in [M+1, {MAX_Q}]")

    s_places = need("S")
    if not isinstance(s_places, list) or not s_places:
        raise ConfigError("S: must be a nonempty list of place strings")
    for i, s in enumerate(s_places):
        try:
            parse_prime(s)
        except (ValueError, ParseError) as exc:
            raise ConfigError(f"S[{i}]: {exc}") from exc

    points = need("points")
    if not isinstance(points, list) or len(points) != m + 1:
        raise ConfigError(f"points: must be a list of M+1 = {m + 1} expressions")
    for i, s in enumerate(points):
        try:
            parse_expression(s, index=True)
        except ParseError as exc:
            raise ConfigError(f"points[{i}]: {exc}") from exc

    hyperplanes = need("hyperplanes")
    if not isinstance(hyperplanes, list) or len(hyperplanes) != q:
        raise ConfigError(f"hyperplanes: must be a list of q = {q} rows")
    for j, row in enumerate(hyperplanes):
        if not isinstance(row, list) or len(row) != m + 1:
            raise ConfigError(f"hyperplanes[{j}]: must be a list of M+1 = {m + 1} expressions")
        for l, s in enumerate(row):
            try:
                parse_expression(s, index=True)
            except ParseError as exc:
                raise ConfigError(f"hyperplanes[{j}][{l}]: {exc}") from exc

    window = need("window")
    if (
        not isinstance(window, list)
        or len(window) != 2
        or not all(isinstance(v, int) for v in window)
        or window[1] < window[0]
    ):
        raise ConfigError("window: must be [lo, hi] with lo <= hi")

    epsilon = _parse_fraction(need("epsilon"), "epsilon")
    if epsilon <= 0:
        raise ConfigError("epsilon: must be positive")
    delta = _parse_fraction(data.get("delta", "1"), "delta")
    if delta <= 0:
        raise ConfigError("delta: must be positive")
    s_max = data.get("s_max", 12)
    if not isinstance(s_max, int) or s_max < 0:
        raise ConfigError("s_max: must be a nonnegative integer")

    thresholds = data.get("thresholds", {})
    tail_fraction = _parse_fraction(thresholds.get("tail_fraction", "1/4"), "thresholds.tail_fraction")
    if not (0 <= tail_fraction < 1):
        raise ConfigError("thresholds.tail_fraction: must be in [0, 1)")
    smallness_delta = _parse_fraction(
        thresholds.get("smallness_delta", "1/10"), "thresholds.smallness_delta"
    )
    if smallness_delta <= 0:
        raise ConfigError("thresholds.smallness_delta: must be positive")

    infinite_subset = data.get("infinite_subset")
    if infinite_subset is not None:
        infinite_subset = _parse_fraction(infinite_subset, "infinite_subset")
        if not (0 < infinite_subset <= 1):
            raise ConfigError("infinite_subset: must be in (0, 1]")

    threads = data.get("threads", 1)
    if not isinstance(threads, int) or threads < 1:
        raise ConfigError("threads: must be a positive integer")

    cfg = ExperimentConfig(
        m=m,
        q=q,
        s_places=tuple(s_places),
        points=tuple(points),
        hyperplanes=tuple(tuple(row) for row in hyperplanes),
        window=(window[0], window[1]),
        epsilon=epsilon,
        delta=delta,
        s_max=s_max,
        tail_fraction=tail_fraction,
        smallness_delta=smallness_delta,
        infinite_subset=infinite_subset,
        threads=threads,
        seed=data.get("seed"),
        profile=data.get("profile"),
    )

    if mode in ("verify", "reduce") and q <= m + 1:
        raise ConfigError(f"q: moving-target {mode} runs need q > M+1, got q={q}, M={m}")

    # Spot-check general position on three window points.
    fam = cfg.hyperplane_family()
    lo, hi = cfg.window
    for alpha in {lo, (lo + hi) // 2, hi}:
        try:
            if not general_position_check(fam, alpha):
                raise ConfigError(f"hyperplanes: not in general position at index {alpha}")
        except EvalError as exc:
            raise ConfigError(f"hyperplanes: evaluation failed at index {alpha}: {exc}") from exc
    return cfg


def load_experiment(path, mode: Optional[str] = None) -> ExperimentConfig:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON: {exc}") from exc
    return parse_config(data, mode)


@dataclass(frozen=True)
class ReportRow:
    alpha: int
    h_x: Optional[int]
    lam: tuple[Optional[int], ...]
    lhs: Optional[int]
    rhs: Optional[Fraction]
    ratio: Optional[Fraction]
    excluded: bool
    note: str = ""


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


@dataclass
class VerificationReport:
    mode: str
    config: ExperimentConfig
    rows: list[ReportRow]
    verdict: str  # "PASS" or "FAIL"
    verdict_no_constant: str
    fitted_constant: Fraction
    probes: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "PASS" else 2

    def to_csv(self) -> str:
        q = self.config.q
        header = ["alpha", "h_x", "lhs", "rhs", "ratio", "excluded"]
        header += [f"lam_{j + 1}" for j in range(q)]
        lines = [",".join(header)]
        for row in self.rows:
            cells = [
                _fmt(row.alpha),
                _fmt(row.h_x),
                _fmt(row.lhs),
                _fmt(row.rhs),
                _fmt(row.ratio),
                _fmt(row.excluded),
            ]
            cells += [_fmt(v) for v in row.lam]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "mode": self.mode,
            "verdict": self.verdict,
            "verdict_no_constant": self.verdict_no_constant,
            "fitted_constant": str(self.fitted_constant),
            "probes": self.probes,
            "extra": self.extra,
            "config": self.config.to_dict(),
            "rows": [
                {
                    "alpha": row.alpha,
                    "h_x": row.h_x,
                    "lhs": row.lhs,
                    "rhs": None if row.rhs is None else str(row.rhs),
                    "ratio": None if row.ratio is None else str(row.ratio),
                    "excluded": row.excluded,
                    "lam": list(row.lam),
                    "note": row.note,
                }
                for row in self.rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"


def _probe_summary(verdict: WindowVerdict) -> dict:
    return {
        "holds": verdict.holds,
        "exceptions": list(verdict.exceptions),
        "statistic": None if verdict.statistic is None else str(verdict.statistic),
    }


def _run_probes(cfg: ExperimentConfig, fam, xs, strict_gp: bool) -> tuple[dict, list[int]]:
    """Run the hypothesis probes. Returns (summaries, gp-failing indices).

    With strict_gp, any general-position failure refuses the run; otherwise
    the failing indices are reported for per-index exclusion.
    """
    window = cfg.window_indices()
    gp_bad = [alpha for alpha in window if not general_position_check(fam, alpha)]
    small = smallness_report(fam, xs, window, cfg.smallness_delta)
    nondeg = nondegeneracy_probe(xs, window)
    probes = {
        "general_position": {"holds": not gp_bad, "failing_indices": gp_bad},
        "smallness": _probe_summary(small),
        "nondegeneracy": _probe_summary(nondeg),
    }
    problems = []
    if gp_bad and strict_gp:
        problems.append(f"general position fails at {gp_bad[:5]}")
    if not small.holds:
        problems.append(f"smallness probe fails (end statistic {small.statistic})")
    if not nondeg.holds:
        problems.append("nondegeneracy probe fails")
    if problems:
        raise ProbeRefusal("; ".join(problems), probes)
    return probes, gp_bad


def _fit_constant(
    rows: list[ReportRow], slope: Fraction, head_fraction: Fraction = Fraction(1, 4)
) -> Fraction:
    """max(0, max over the window head of LHS - slope * h)."""
    included = [r for r in rows if not r.excluded]
    head = included[: max(1, len(included) // int(1 / head_fraction))]
    worst = Fraction(0)
    for r in head:
        gap = r.lhs - slope * r.h_x
        if gap > worst:
            worst = gap
    return worst


def _apply_bound(rows: list[ReportRow], slope: Fraction, constant: Fraction) -> list[ReportRow]:
    out = []
    for r in rows:
        if r.excluded:
            out.append(r)
            continue
        rhs = slope * r.h_x + constant
        ratio = Fraction(r.lhs, r.h_x) if r.h_x else None
        out.append(
            ReportRow(r.alpha, r.h_x, r.lam, r.lhs, rhs, ratio, False, r.note)
        )
    return out


def _tail_threshold(cfg: ExperimentConfig) -> Fraction:
    lo, hi = cfg.window
    return lo + cfg.tail_fraction * (hi - lo)


def _verdict(cfg: ExperimentConfig, rows: list[ReportRow]) -> str:
    included = [r for r in rows if not r.excluded]
    if not included:
        raise ProbeRefusal("all window indices are excluded", {})
    if cfg.infinite_subset is not None:
        good = sum(1 for r in included if r.lhs <= r.rhs)
        total = len(cfg.window_indices())
        return "PASS" if Fraction(good, total) >= cfg.infinite_subset else "FAIL"
    cut = _tail_threshold(cfg)
    tail = [r for r in included if r.alpha >= cut]
    if not tail:
        return "FAIL"
    return "PASS" if all(r.lhs <= r.rhs for r in tail) else "FAIL"


def _compute_rows(cfg: ExperimentConfig, per_alpha, window) -> list[ReportRow]:
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(per_alpha, window))
    return [per_alpha(alpha) for alpha in window]


def run_verify(cfg: ExperimentConfig) -> VerificationReport:
    """Check the moving-target proximity bound on the window."""
    if cfg.q <= cfg.m + 1:
        raise ConfigError(f"q: verify runs need q > M+1, got q={cfg.q}, M={cfg.m}")
    fam = cfg.hyperplane_family()
    xs = cfg.point_sequence()
    S = cfg.place_set()
    probes, _ = _run_probes(cfg, fam, xs, strict_gp=True)
    window = cfg.window_indices()

    def per_alpha(alpha: int) -> ReportRow:
        try:
            x = xs.eval_point(alpha)
        except EvalError as exc:
            return ReportRow(alpha, None, (None,) * cfg.q, None, None, None, True, str(exc))
        hx = height_point(x)
        lams = []
        for j in range(cfg.q):
            form = fam.eval_form(j, alpha)
            if form.apply(x).is_zero():
                return ReportRow(
                    alpha, hx, (None,) * cfg.q, None, None, None, True,
                    f"point on hyperplane {j}",
                )
            lams.append(proximity(x, form, S))
        if hx == 0:
            return ReportRow(alpha, hx, tuple(lams), sum(lams), None, None, True, "h(x)=0")
        return ReportRow(alpha, hx, tuple(lams), sum(lams), None, None, False)

    rows = _compute_rows(cfg, per_alpha, window)
    slope = cfg.m + 1 + cfg.epsilon
    constant = _fit_constant(rows, slope)
    rows = _apply_bound(rows, slope, constant)
    verdict = _verdict(cfg, rows)
    no_c = _verdict(cfg, _apply_bound(rows, slope, Fraction(0)))
    return VerificationReport(
        mode="verify",
        config=cfg,
        rows=rows,
        verdict=verdict,
        verdict_no_constant=no_c,
        fitted_constant=constant,
        probes=probes,
        extra={"slope": str(slope)},
    )


def admissible_subsets(forms: list[LinearForm], m: int) -> list[tuple[int, ...]]:
    """All index subsets of size <= M+1 whose forms are independent over Q(t)."""
    out = []
    for size in range(1, m + 2):
        for subset in combinations(range(len(forms)), size):
            mat = [list(forms[j].coeffs) for j in subset]
            if linalg.rank(mat) == size:
                out.append(subset)
    return out


def run_wang_check(cfg: ExperimentConfig) -> VerificationReport:
    """Check the fixed-target bound with the max over independent subsets."""
    fam = cfg.hyperplane_family()
    xs = cfg.point_sequence()
    S = cfg.place_set()
    window = cfg.window_indices()
    for j in range(cfg.q):
        for l in range(cfg.m + 1):
            if not fam.rows[j][l].is_constant_on(window):
                raise ConfigError(
                    f"hyperplanes[{j}][{l}]: fixed-target checks need constant coefficients"
                )
    probes, _ = _run_probes(cfg, fam, xs, strict_gp=True)

    forms = [fam.eval_form(j, window[0]) for j in range(cfg.q)]
    subsets = admissible_subsets(forms, cfg.m)
    places = cfg.places()

    def per_alpha(alpha: int) -> ReportRow:
        try:
            x = xs.eval_point(alpha)
        except EvalError as exc:
            return ReportRow(alpha, None, (None,) * cfg.q, None, None, None, True, str(exc))
        hx = height_point(x)
        for j, form in enumerate(forms):
            if form.apply(x).is_zero():
                return ReportRow(
                    alpha, hx, (None,) * cfg.q, None, None, None, True,
                    f"point on hyperplane {j}",
                )
        local = {(j, p): weil(x, forms[j], p) for j in range(cfg.q) for p in places}
        lhs = sum(
            max(sum(local[(j, p)] for j in subset) for subset in subsets) for p in places
        )
        lams = tuple(sum(local[(j, p)] for p in places) for j in range(cfg.q))
        if hx == 0:
            return ReportRow(alpha, hx, lams, lhs, None, None, True, "h(x)=0")
        return ReportRow(alpha, hx, lams, lhs, None, None, False)

    rows = _compute_rows(cfg, per_alpha, window)
    slope = cfg.m + 1 + cfg.epsilon
    constant = _fit_constant(rows, slope)
    rows = _apply_bound(rows, slope, constant)
    verdict = _verdict(cfg, rows)
    no_c = _verdict(cfg, _apply_bound(rows, slope, Fraction(0)))
    return VerificationReport(
        mode="wang",
        config=cfg,
        rows=rows,
        verdict=verdict,
        verdict_no_constant=no_c,
        fitted_constant=constant,
        probes=probes,
        extra={"slope": str(slope), "admissible_subsets": len(subsets)},
    )


def _dedup_sequences(seqs: list[Sequence], window) -> list[Sequence]:
    """Drop zero-valued and exactly duplicated sequences (by window values)."""
    seen = set()
    out = []
    for seq in seqs:
        values = tuple(seq.eval(alpha) for alpha in window)
        if not any(values) or values in seen:
            continue
        seen.add(values)
        out.append(seq)
    return out


def run_reduction(cfg: ExperimentConfig) -> VerificationReport:
    """Run the full moving-to-fixed pipeline and check every exact identity
    plus the assembled product-space inequality."""
    if cfg.q <= cfg.m + 1:
        raise ConfigError(f"q: reduce runs need q > M+1, got q={cfg.q}, M={cfg.m}")
    fam = cfg.hyperplane_family()
    xs = cfg.point_sequence()
    window = cfg.window_indices()
    probes, gp_bad = _run_probes(cfg, fam, xs, strict_gp=False)

    forms = normalize_xi(fam, window, max_exceptions=max(1, len(window) // 10))
    excluded = set(gp_bad) | set(forms.all_exceptions())
    usable = [alpha for alpha in window if alpha not in excluded]
    if not usable:
        raise ProbeRefusal("all window indices are excluded", probes)

    xis = _dedup_sequences([seq for row in forms.rows for seq in row], usable)
    s = choose_s(xis, cfg.delta, usable, cfg.s_max)
    space_s = dim_L(xis, s, usable)
    space_s1 = dim_L(xis, s + 1, usable)
    b_vectors = extend_basis(space_s, space_s1)
    b = [monomial_sequence(xis, vec) for vec in b_vectors]
    ls, ls1 = space_s.dim, space_s1.dim

    places = cfg.places()
    selections: dict[PrimeDivisor, PlaceSelection] = {}
    transfers = {}
    for p in places:
        sel = stabilize_J(p, usable, forms, xs)
        C = build_transfer(sel, b, ls, forms, xs, usable)
        derive_and_pad(C)
        selections[p] = sel
        transfers[p] = C
        for alpha in sel.stable_subset:
            inv = invert_forms(sel, alpha, forms)
            mat = [list(forms.eval_form(j, alpha).coeffs) for j in sel.J]
            _assert_inverse(inv, mat, p, alpha)
            for l in range(cfg.m + 1):
                for jj in range(ls):
                    weil_transfer_check(p, alpha, l, jj, C, b, forms, xs)

    local_checks = 0
    for p in places:
        for alpha in usable:
            x = xs.eval_point(alpha)
            try:
                J = select_J(p, alpha, forms, x)
            except ValueError:
                continue  # point on a hyperplane at alpha
            sel = PlaceSelection(p, J, (alpha,))
            res = check_local_inequality(p, alpha, sel, forms, x)
            if not res.holds:
                raise AssertionError(
                    f"local counting inequality fails at place {p}, index {alpha}"
                )
            local_checks += 1

    stable_common = set(usable)
    for sel in selections.values():
        stable_common &= set(sel.stable_subset)
    S = cfg.place_set()

    rows: list[ReportRow] = []
    slope = (cfg.m + 1) * ls1 + cfg.delta
    raw = []
    for alpha in window:
        if alpha not in stable_common:
            rows.append(
                ReportRow(alpha, None, (None,) * cfg.q, None, None, None, True,
                          "outside the common stable subset")
            )
            continue
        x = xs.eval_point(alpha)
        split = height_P_decomposition(b, xs, alpha)
        lam_sel = 0
        for p in places:
            sel = selections[p]
            for l in range(cfg.m + 1):
                lam_sel += weil(x, forms.eval_form(sel.J[l], alpha), p)
        lhs = ls * lam_sel
        lams = tuple(proximity(x, forms.eval_form(j, alpha), S) for j in range(cfg.q))
        raw.append((alpha, split, lhs, lams))

    constant = Fraction(0)
    head = raw[: max(1, len(raw) // 4)]
    for alpha, split, lhs, _ in head:
        gap = lhs - slope * split.h_product
        if gap > constant:
            constant = gap

    stable_rows = []
    for alpha, split, lhs, lams in raw:
        rhs = slope * split.h_product + constant
        ratio = Fraction(lhs, split.h_point) if split.h_point else None
        stable_rows.append(ReportRow(alpha, split.h_point, lams, lhs, rhs, ratio, False))
    rows = sorted(rows + stable_rows, key=lambda r: r.alpha)

    verdict = _verdict(cfg, rows)
    no_c_rows = [
        r if r.excluded else ReportRow(
            r.alpha, r.h_x, r.lam, r.lhs, r.rhs - constant, r.ratio, False, r.note
        )
        for r in rows
    ]
    no_c = _verdict(cfg, no_c_rows)

    return VerificationReport(
        mode="reduce",
        config=cfg,
        rows=rows,
        verdict=verdict,
        verdict_no_constant=no_c,
        fitted_constant=constant,
        probes=probes,
        extra={
            "s": s,
            "l_s": ls,
            "l_s1": ls1,
            "slope": str(slope),
            "selections": {str(p): list(selections[p].J) for p in places},
            "stable_indices": sorted(stable_common),
            "local_inequality_checks": local_checks,
        },
    )


def _assert_inverse(inv, mat, p, alpha) -> None:
    n = len(mat)
    one = RatFunc.constant(1)
    zero = RatFunc.constant(0)
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + inv[i][k] * mat[k][j]
            expected = one if i == j else zero
            if acc != expected:
                raise AssertionError(
                    f"inverse identity fails at place {p}, index {alpha}"
                )


def generate(profile: str, **params) -> ExperimentConfig:
    """Bundled instance generators whose hypotheses hold by construction."""
    if profile == "fixed-fermat":
        return _generate_fixed_fermat(**params)
    if profile == "slow-coeff":
        return _generate_slow_coeff(**params)
    if profile == "random-gp":
        return _generate_random_gp(**params)
    raise ConfigError(f"profile: unknown profile {profile!r}")


def _generate_fixed_fermat(m: int = 1, window=(1, 200), epsilon="1/2", seed=None) -> ExperimentConfig:
    rows = []
    for i in range(m + 1):
        rows.append(["1" if l == i else "0" for l in range(m + 1)])
    rows.append(["1"] + ["-1"] * m)
    points = [f"t^({i}*a)" if i else "1" for i in range(m + 1)]
    return parse_config(
        {
            "M": m,
            "q": m + 2,
            "S": ["t", "inf"],
            "points": points,
            "hyperplanes": rows,
            "window": list(window),
            "epsilon": str(epsilon),
            "profile": "fixed-fermat",
            "seed": seed,
        }
    )


def _generate_slow_coeff(m: int = 2, q: int = 5, window=(8, 256), epsilon="1/2", seed=None) -> ExperimentConfig:
    if m != 2 or q != 5:
        raise ConfigError("profile: slow-coeff is defined for M=2, q=5")
    rows = [
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["0", "0", "1"],
        ["1", "1", "1"],
        ["1", "t^ilog2(a)", "2"],
    ]
    points = ["1", "t^a", "t^(2*a)"]
    return parse_config(
        {
            "M": 2,
            "q": 5,
            "S": ["t", "inf"],
            "points": points,
            "hyperplanes": rows,
            "window": list(window),
            "epsilon": str(epsilon),
            "profile": "slow-coeff",
            "seed": seed,
        }
    )


def _generate_random_gp(
    m: int = 1, q: Optional[int] = None, seed: int = 0, window=(1, 60), epsilon="1/2"
) -> ExperimentConfig:
    q = q if q is not None else m + 2
    rng = random.Random(seed)
    while True:
        rows = [
            [rng.randint(-3, 3) for _ in range(m + 1)] for _ in range(q)
        ]
        if _constant_general_position(rows, m):
            break
    points = [f"t^({i}*a)" if i else "1" for i in range(m + 1)]
    return parse_config(
        {
            "M": m,
            "q": q,
            "S": ["t", "inf"],
            "points": points,
            "hyperplanes": [[str(c) for c in row] for row in rows],
            "window": list(window),
            "epsilon": str(epsilon),
            "profile": "random-gp",
            "seed": seed,
        }
    )


def _constant_general_position(rows: list[list[int]], m: int) -> bool:
    if any(not any(row) for row in rows):
        return False
    for subset in combinations(range(len(rows)), m + 1):
        mat = [[Fraction(c) for c in rows[j]] for j in subset]
        if linalg.det(mat) == 0:
            return False
    return True


def run(mode: str, cfg: ExperimentConfig) -> VerificationReport:
    if mode == "verify":
        return run_verify(cfg)
    if mode == "wang":
        return run_wang_check(cfg)
    if mode == "reduce":
        return run_reduction(cfg)
    raise ValueError(f"unknown mode {mode!r}")
