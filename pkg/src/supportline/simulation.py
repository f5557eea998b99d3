"""Seeded Monte Carlo engine for two-groups experiments.

Replicate r of a scenario draws from its own counter-based Philox stream,
``Generator(Philox(key=seed, counter=r << 128))``, so results are byte-stable
regardless of evaluation order, chunking, or parallelism degree.  Within a
replicate, every (procedure, q) pair is evaluated on the same sample.

Draw protocol per replicate (fixed; changing it changes results):
  1. one uniform vector of length m assigning null/alternative labels and,
     for location models, the shift component;
  2. the noise draws -- one standard normal or Cauchy vector, preceded for
     the positively equicorrelated design by one scalar factor draw.

False-rejection counts V always come from the true labels carried with the
sample, never from an estimate.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from . import special
from .models import (
    CauchyLocation,
    Lehmann,
    NormalLocation,
    TwoGroupsSpec,
    model_preset,
    oracle_threshold,
    true_lfdr,
)
from .procedures import storey_zeta_schedule

__all__ = [
    "Independent",
    "Equicorrelated",
    "Autoregressive",
    "ScenarioConfig",
    "ReplicateRecord",
    "ReplicateTable",
    "AggregateRow",
    "replicate_rng",
    "draw_location_means",
    "sample_two_groups",
    "sample_correlated_normal",
    "run_scenario",
    "aggregate",
    "write_aggregate_csv",
    "scenario_presets",
]

RNG_DESCRIPTION = "philox-counter-per-replicate"


@dataclass(frozen=True)
class Independent:
    kind = "independent"


@dataclass(frozen=True)
class Equicorrelated:
    rho: float
    kind = "equicorrelated"

    def validate(self, m: int) -> None:
        lower = -1.0 / (m - 1) if m > 1 else 0.0
        if not (lower < self.rho < 1.0) and self.rho != 0.0:
            raise ValueError(
                f"equicorrelation rho={self.rho!r} outside (-1/(m-1), 1) for m={m}"
            )


@dataclass(frozen=True)
class Autoregressive:
    rho: float
    kind = "autoregressive"

    def validate(self, m: int) -> None:
        if not (-1.0 < self.rho < 1.0):
            raise ValueError(f"autoregression rho={self.rho!r} outside (-1, 1)")


def _dependence_from(name: str, rho: float):
    if name == "independent":
        return Independent()
    if name == "equicorrelated":
        return Equicorrelated(rho)
    if name == "autoregressive":
        return Autoregressive(rho)
    raise ValueError(f"unknown dependence {name!r}")


_PROCEDURE_TOKENS = ("sl", "bh", "adaptive-sl", "oracle")


def _validate_procedure(token: str) -> None:
    if token in _PROCEDURE_TOKENS:
        return
    if token.startswith("fixed(") and token.endswith(")"):
        t = float(token[6:-1])
        if not (0.0 <= t <= 1.0):
            raise ValueError(f"fixed threshold {t!r} outside [0, 1]")
        return
    raise ValueError(
        f"unknown procedure {token!r}; expected sl, bh, adaptive-sl, fixed(t) or oracle"
    )


@dataclass(frozen=True)
class ScenarioConfig:
    """Inputs of one simulation scenario.

    ``zeta`` may be a number in (0, 1) or the string ``"auto"`` for the
    schedule 1 - m^(-1/5).  ``lambda_cost`` sets the false/true discovery
    cost ratio for the loss and regret columns (target lfdr alpha is
    1 / (1 + lambda_cost)).
    """

    name: str
    model: str
    m: int
    replications: int
    seed: int
    q_grid: tuple[float, ...]
    procedures: tuple[str, ...]
    dependence: str = "independent"
    rho: float = 0.0
    zeta: float | str = 0.5
    lambda_cost: float = 4.0

    def __post_init__(self):
        object.__setattr__(self, "q_grid", tuple(float(q) for q in self.q_grid))
        object.__setattr__(self, "procedures", tuple(self.procedures))
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.q_grid:
            raise ValueError("q_grid must be non-empty")
        if any(not (0.0 < q <= 1.0) for q in self.q_grid):
            raise ValueError("q_grid levels must lie in (0, 1]")
        if len(set(self.q_grid)) != len(self.q_grid):
            raise ValueError("q_grid levels must be distinct")
        if not self.procedures:
            raise ValueError("procedures must be non-empty")
        if len(set(self.procedures)) != len(self.procedures):
            raise ValueError("procedures must be distinct")
        for token in self.procedures:
            _validate_procedure(token)
        model_preset(self.model)
        _dependence_from(self.dependence, self.rho)
        if isinstance(self.zeta, str):
            if self.zeta != "auto":
                raise ValueError("zeta must be a number in (0, 1) or 'auto'")
        elif not (0.0 < float(self.zeta) < 1.0):
            raise ValueError("zeta must lie in (0, 1)")
        if self.lambda_cost <= 0.0:
            raise ValueError("lambda_cost must be positive")

    def resolved_zeta(self) -> float:
        if self.zeta == "auto":
            return storey_zeta_schedule(self.m)
        return float(self.zeta)


@dataclass(frozen=True)
class ReplicateRecord:
    """One (replicate, procedure, q) metric row."""

    replicate: int
    procedure: str
    q: float
    R: int
    V: int
    fdp: float
    last_null: int
    realized_max_lfdr: float
    loss: float
    regret: float
    tau: float
    pi0_hat: float


_COLUMNS = (
    "replicate",
    "q",
    "R",
    "V",
    "fdp",
    "last_null",
    "realized_max_lfdr",
    "loss",
    "regret",
    "tau",
    "pi0_hat",
)


class ReplicateTable:
    """Columnar store of replicate records, iterable as ReplicateRecord rows."""

    def __init__(self, scenario: str, seed: int, procedures: list[str], columns: dict):
        self.scenario = scenario
        self.seed = seed
        self._procedures = procedures  # per-row procedure label index
        self._columns = columns

    def __len__(self) -> int:
        return self._columns["replicate"].size

    def column(self, name: str) -> np.ndarray:
        return self._columns[name]

    @property
    def procedure(self) -> np.ndarray:
        return np.asarray(self._procedures)

    def __getitem__(self, i: int) -> ReplicateRecord:
        if i < 0:
            i += len(self)
        if not (0 <= i < len(self)):
            raise IndexError(i)
        c = self._columns
        return ReplicateRecord(
            replicate=int(c["replicate"][i]),
            procedure=self._procedures[i],
            q=float(c["q"][i]),
            R=int(c["R"][i]),
            V=int(c["V"][i]),
            fdp=float(c["fdp"][i]),
            last_null=int(c["last_null"][i]),
            realized_max_lfdr=float(c["realized_max_lfdr"][i]),
            loss=float(c["loss"][i]),
            regret=float(c["regret"][i]),
            tau=float(c["tau"][i]),
            pi0_hat=float(c["pi0_hat"][i]),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def select(self, procedure: str, q: float | None = None) -> dict:
        """Column slice for one (procedure, q) combination."""
        mask = self.procedure == procedure
        if q is not None:
            qcol = self._columns["q"]
            mask &= np.isclose(qcol, q, rtol=0.0, atol=1e-12) | (
                np.isnan(qcol) & math.isnan(q)
            )
        return {k: v[mask] for k, v in self._columns.items()}


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """The dedicated counter-based stream of one replicate."""
    return np.random.Generator(np.random.Philox(key=seed, counter=replicate << 128))


def draw_location_means(spec: TwoGroupsSpec, m: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """Labels and shift means from a single uniform vector.

    u < pi0 marks a null (mean 0); otherwise (u - pi0)/(1 - pi0) selects the
    shift component through its cdf.
    """
    u = rng.random(m)
    null = u < spec.pi0
    mu = np.zeros(m)
    if spec.pi0 < 1.0 and (~null).any():
        alt = spec.alternative
        mus = np.array([s for s, _ in alt.shifts])
        cum = np.cumsum([w for _, w in alt.shifts])
        v = (u[~null] - spec.pi0) / (1.0 - spec.pi0)
        j = np.minimum(np.searchsorted(cum, v, side="right"), mus.size - 1)
        mu[~null] = mus[j]
    return (~null).astype(np.int8), mu


def sample_two_groups(spec: TwoGroupsSpec, m: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """Independent draw of (hypotheses, p_values) from a two-groups model."""
    alt = spec.alternative
    if isinstance(alt, Lehmann):
        u = rng.random(m)
        h = (u >= spec.pi0).astype(np.int8)
        u2 = rng.random(m)
        p = np.where(h == 1, alt.inverse_F1(u2), u2)
        return h, p
    h, mu = draw_location_means(spec, m, rng)
    if isinstance(alt, NormalLocation):
        y = mu + rng.standard_normal(m)
        return h, special.norm_sf(y)
    if isinstance(alt, CauchyLocation):
        y = mu + rng.standard_cauchy(m)
        return h, np.asarray(special.cauchy_sf(y))
    raise TypeError(f"unsupported alternative {alt!r}")


def sample_correlated_normal(mu: np.ndarray, dependence, rng) -> np.ndarray:
    """One draw of Y ~ N(mu, Sigma) under the requested dependence.

    Positive equicorrelation uses the single-factor construction
    Y = mu + sqrt(rho) Z0 + sqrt(1-rho) Z; negative equicorrelation uses the
    closed-form symmetric square root a(I - P) + bP of the equicorrelation
    matrix (P the projection onto the ones vector), which is exact for every
    admissible rho.  The autoregressive model filters scaled innovations so
    each margin stays standard normal.
    """
    mu = np.asarray(mu, dtype=float)
    m = mu.size
    if isinstance(dependence, Independent):
        return mu + rng.standard_normal(m)
    if isinstance(dependence, Equicorrelated):
        dependence.validate(m)
        rho = dependence.rho
        z = rng.standard_normal(m)
        if rho == 0.0:
            return mu + z
        if rho > 0.0:
            z0 = rng.standard_normal()
            return mu + math.sqrt(rho) * z0 + math.sqrt(1.0 - rho) * z
        zbar = z.mean()
        a = math.sqrt(1.0 - rho)
        b = math.sqrt(1.0 + (m - 1) * rho)
        return mu + a * (z - zbar) + b * zbar
    if isinstance(dependence, Autoregressive):
        dependence.validate(m)
        rho = dependence.rho
        e = rng.standard_normal(m)
        if rho == 0.0:
            return mu + e
        innov = e.copy()
        innov[1:] *= math.sqrt(1.0 - rho * rho)
        eps = lfilter([1.0], [1.0, -rho], innov)
        return mu + eps
    raise TypeError(f"unsupported dependence {dependence!r}")


def _sample_replicate(spec, cfg_dep, m, rng):
    alt = spec.alternative
    if isinstance(cfg_dep, Independent) or isinstance(alt, Lehmann):
        if not isinstance(cfg_dep, Independent):
            raise ValueError("dependent designs require a location model")
        return sample_two_groups(spec, m, rng)
    if not isinstance(alt, NormalLocation):
        raise ValueError("dependent designs require the normal location model")
    h, mu = draw_location_means(spec, m, rng)
    y = sample_correlated_normal(mu, cfg_dep, rng)
    return h, special.norm_sf(y)


class _LfdrAtSortedPrefix:
    """Realized max-lfdr of prefix rejection sets, vectorized over a chunk.

    For monotone models the max over a prefix is the lfdr at the largest
    rejected p-value; otherwise a running maximum over the sorted sample is
    precomputed per chunk.
    """

    def __init__(self, spec: TwoGroupsSpec):
        self.spec = spec
        self.monotone = spec.monotone

    def __call__(self, p_sorted: np.ndarray, counts: np.ndarray) -> np.ndarray:
        rows = np.arange(p_sorted.shape[0])
        last = np.maximum(counts - 1, 0)
        if self.monotone:
            vals = true_lfdr(self.spec, p_sorted[rows, last])
        else:
            cummax = np.maximum.accumulate(true_lfdr(self.spec, p_sorted), axis=1)
            vals = cummax[rows, last]
        return np.where(counts > 0, vals, 0.0)


def run_scenario(config: ScenarioConfig, chunk_size: int = 4096) -> ReplicateTable:
    """Execute a scenario; deterministic given the config, whatever the chunking."""
    spec = model_preset(config.model)
    dep = _dependence_from(config.dependence, config.rho)
    if not isinstance(dep, Independent):
        dep.validate(config.m)
        if not isinstance(spec.alternative, NormalLocation):
            raise ValueError("dependent designs require the normal location model")
    m = config.m
    # cap chunk memory for large m; results are chunking-invariant
    chunk_size = max(16, min(chunk_size, (1 << 22) // max(m, 1)))
    lam = config.lambda_cost
    alpha = 1.0 / (1.0 + lam)
    zeta = config.resolved_zeta()

    regret_defined = spec.pi0 > 0.0 and spec.monotone
    tau_star = oracle_threshold(spec, alpha) if spec.pi0 > 0.0 else 1.0
    lfdr_prefix = _LfdrAtSortedPrefix(spec)

    combos: list[tuple[str, float]] = []
    for token in config.procedures:
        if token == "oracle" or token.startswith("fixed("):
            combos.append((token, math.nan))
        else:
            combos.extend((token, q) for q in config.q_grid)

    acc = {combo: {c: [] for c in _COLUMNS} for combo in combos}
    ks_over_m = np.arange(m + 1) / m

    for start in range(0, config.replications, chunk_size):
        nb = min(chunk_size, config.replications - start)
        P = np.empty((nb, m))
        H = np.empty((nb, m), dtype=np.int8)
        for i in range(nb):
            rng = replicate_rng(config.seed, start + i)
            h, p = _sample_replicate(spec, dep, m, rng)
            H[i] = h
            P[i] = p
        order = np.argsort(P, axis=1, kind="stable")
        Ps = np.take_along_axis(P, order, axis=1)
        Hs = np.take_along_axis(H, order, axis=1)
        aug = np.concatenate([np.zeros((nb, 1)), Ps], axis=1)
        rows = np.arange(nb)
        null_prefix = np.concatenate(
            [np.zeros((nb, 1), dtype=np.int64), np.cumsum(Hs == 0, axis=1)], axis=1
        )

        loss_star = None
        if regret_defined:
            counts_star = (Ps <= tau_star).sum(axis=1)
            v_star = null_prefix[rows, counts_star]
            loss_star = ((1.0 + lam) * v_star - counts_star) / m

        def finish(combo, counts, tau, pi0_hat=None):
            counts = counts.astype(np.int64)
            v = null_prefix[rows, counts]
            fdp = np.where(counts > 0, v / np.maximum(counts, 1), 0.0)
            last_null = np.where(
                counts > 0, Hs[rows, np.maximum(counts - 1, 0)] == 0, False
            )
            rml = lfdr_prefix(Ps, counts)
            loss = ((1.0 + lam) * v - counts) / m
            regret = loss - loss_star if regret_defined else np.full(nb, np.nan)
            a = acc[combo]
            a["replicate"].append(np.arange(start, start + nb))
            a["q"].append(np.full(nb, combo[1]))
            a["R"].append(counts)
            a["V"].append(v)
            a["fdp"].append(fdp)
            a["last_null"].append(last_null.astype(np.int8))
            a["realized_max_lfdr"].append(rml)
            a["loss"].append(loss)
            a["regret"].append(regret)
            a["tau"].append(tau)
            a["pi0_hat"].append(
                pi0_hat if pi0_hat is not None else np.full(nb, np.nan)
            )

        for combo in combos:
            token, q = combo
            if token == "sl":
                objective = aug - q * ks_over_m
                r_arg = m - np.argmin(objective[:, ::-1], axis=1)
                tau = aug[rows, r_arg]
                counts = (Ps <= tau[:, None]).sum(axis=1)
                finish(combo, counts, np.where(counts > 0, tau, 0.0))
            elif token == "bh":
                below = Ps <= q * np.arange(1, m + 1) / m
                anyr = below.any(axis=1)
                r_arg = np.where(anyr, m - np.argmax(below[:, ::-1], axis=1), 0)
                tau = q * r_arg / m
                counts = (Ps <= tau[:, None]).sum(axis=1)
                finish(combo, counts, np.where(counts > 0, tau, 0.0))
            elif token == "adaptive-sl":
                k_max = (Ps <= zeta).sum(axis=1)
                pi0_hat = (1.0 + (m - k_max)) / ((1.0 - zeta) * m)
                objective = pi0_hat[:, None] * aug - q * ks_over_m
                objective[np.arange(m + 1) > k_max[:, None]] = np.inf
                r_arg = m - np.argmin(objective[:, ::-1], axis=1)
                tau = aug[rows, r_arg]
                counts = (Ps <= tau[:, None]).sum(axis=1)
                finish(combo, counts, np.where(counts > 0, tau, 0.0), pi0_hat)
            elif token == "oracle":
                counts = (Ps <= tau_star).sum(axis=1)
                tau = np.where(counts > 0, tau_star, 0.0)
                finish(combo, counts, tau)
            else:  # fixed(t)
                t = float(token[6:-1])
                counts = (Ps <= t).sum(axis=1)
                finish(combo, counts, np.where(counts > 0, t, 0.0))

    labels: list[str] = []
    columns = {c: [] for c in _COLUMNS}
    for combo in combos:
        n = sum(a.size for a in acc[combo]["replicate"])
        labels.extend([combo[0]] * n)
        for c in _COLUMNS:
            columns[c].append(np.concatenate(acc[combo][c]))
    columns = {c: np.concatenate(parts) for c, parts in columns.items()}
    return ReplicateTable(config.name, config.seed, labels, columns)


@dataclass(frozen=True)
class AggregateRow:
    scenario: str
    procedure: str
    q: float
    metric: str
    mean: float
    se: float
    q25: float
    q50: float
    q75: float
    n_reps: int
    seed: int


_AGG_METRICS = ("fdp", "last_null", "loss", "regret", "realized_max_lfdr", "tau", "R", "pi0_hat")


def aggregate(records) -> list[AggregateRow]:
    """Per-(procedure, q) means, MC standard errors, and quartiles.

    Accepts a :class:`ReplicateTable` (fast columnar path) or any iterable of
    :class:`ReplicateRecord`.  Metrics that are entirely NaN for a
    combination (regret without an oracle, pi0_hat for non-adaptive rules)
    are omitted.
    """
    if not isinstance(records, ReplicateTable):
        rows = list(records)
        if not rows:
            raise ValueError("no records to aggregate")
        table = ReplicateTable(
            scenario=getattr(rows[0], "scenario", ""),
            seed=0,
            procedures=[r.procedure for r in rows],
            columns={
                c: np.array([getattr(r, c) for r in rows], dtype=float)
                for c in _COLUMNS
            },
        )
    else:
        table = records
        if len(table) == 0:
            raise ValueError("no records to aggregate")

    procs = table.procedure
    qcol = table.column("q")
    seen: list[tuple[str, float]] = []
    for p, q in zip(procs, qcol):
        key = (str(p), float(q))
        if key not in seen:
            seen.append(key)

    out: list[AggregateRow] = []
    for proc, q in seen:
        mask = procs == proc
        mask &= np.isnan(qcol) if math.isnan(q) else qcol == q
        n = int(mask.sum())
        for metric in _AGG_METRICS:
            vals = np.asarray(table.column(metric)[mask], dtype=float)
            if np.all(np.isnan(vals)):
                continue
            mean = float(np.mean(vals))
            se = float(np.std(vals, ddof=1) / math.sqrt(n)) if n > 1 else math.nan
            q25, q50, q75 = (float(v) for v in np.quantile(vals, (0.25, 0.5, 0.75)))
            out.append(
                AggregateRow(
                    scenario=table.scenario,
                    procedure=proc,
                    q=q,
                    metric=metric,
                    mean=mean,
                    se=se,
                    q25=q25,
                    q50=q50,
                    q75=q75,
                    n_reps=n,
                    seed=table.seed,
                )
            )
    return out


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


CSV_HEADER = "scenario,procedure,q,metric,mean,se,q25,q50,q75,n_reps,seed"


def _config_comment(config: ScenarioConfig) -> str:
    return "# " + " ".join(
        [
            f"scenario={config.name}",
            f"model={config.model}",
            f"m={config.m}",
            f"dependence={config.dependence}",
            f"rho={_fmt(float(config.rho))}",
            f"reps={config.replications}",
            f"seed={config.seed}",
            "q_grid=" + ";".join(_fmt(float(q)) for q in config.q_grid),
            "procedures=" + ";".join(config.procedures),
            f"zeta={config.zeta}",
            f"lambda={_fmt(float(config.lambda_cost))}",
            f"rng={RNG_DESCRIPTION}",
        ]
    )


def _write_rows(rows: list[AggregateRow], out: io.TextIOBase) -> None:
    for r in rows:
        out.write(
            ",".join(
                [
                    r.scenario,
                    r.procedure,
                    _fmt(r.q),
                    r.metric,
                    _fmt(r.mean),
                    _fmt(r.se),
                    _fmt(r.q25),
                    _fmt(r.q50),
                    _fmt(r.q75),
                    str(r.n_reps),
                    str(r.seed),
                ]
            )
            + "\n"
        )


def write_aggregate_csv(rows: list[AggregateRow], out: io.TextIOBase, config: ScenarioConfig | None = None) -> None:
    """Write aggregate rows as CSV with a provenance comment line."""
    if config is not None:
        out.write(_config_comment(config) + "\n")
    out.write(CSV_HEADER + "\n")
    _write_rows(rows, out)


def write_aggregate_report(entries, out: io.TextIOBase) -> None:
    """Write several (config, rows) pairs as one CSV.

    All provenance comments come first, then a single column-header line,
    then every scenario's rows in order.
    """
    entries = list(entries)
    for config, _ in entries:
        out.write(_config_comment(config) + "\n")
    out.write(CSV_HEADER + "\n")
    for _, rows in entries:
        _write_rows(rows, out)


_FIG3_QS = (0.05, 0.1, 0.2, 0.3, 0.4)
_FIG5_QS = tuple(round(0.05 * k, 2) for k in range(1, 11))
_RHO_GRID = (0.0, 0.2, 0.4, 0.5, 0.6, 0.8)
_ALPHA = 0.2


def scenario_presets() -> dict[str, tuple[ScenarioConfig, ...]]:
    """Named scenario bundles; ``<name>-ci`` variants reduce replications.

    fig3     FDR / max-lfdr comparison sweep (m=64 independent z-tests)
    fig4     regret versus sample size, corrected and uncorrected levels
    fig5     dispersion of the attained max-lfdr at m=64 and m=1024
    fig6-eq  equicorrelated robustness sweep at q=0.2
    fig6-ar  autoregressive robustness sweep at q=0.2
    fig7     Cauchy (non-monotone) misspecification sweep
    prop1    global-null regret at m=10^4
    """
    presets: dict[str, tuple[ScenarioConfig, ...]] = {}

    def add(name, configs):
        presets[name] = tuple(configs)

    def fig3(reps, suffix=""):
        return [
            ScenarioConfig(
                name=f"fig3{suffix}",
                model="bh64",
                m=64,
                replications=reps,
                seed=20260810,
                q_grid=_FIG3_QS,
                procedures=("sl", "bh", "adaptive-sl"),
                zeta=0.5,
            )
        ]

    add("fig3", fig3(100_000))
    add("fig3-ci", fig3(10_000, "-ci"))

    def fig4(reps, suffix=""):
        corrected = _ALPHA / 0.75
        return [
            ScenarioConfig(
                name=f"fig4-m{2**e}{suffix}",
                model="bh64",
                m=2**e,
                replications=reps,
                seed=20260811 + e,
                q_grid=(_ALPHA, corrected),
                procedures=("sl", "adaptive-sl"),
                zeta="auto",
            )
            for e in range(6, 15)
        ]

    add("fig4", fig4(100_000))
    add("fig4-ci", fig4(10_000, "-ci"))

    def fig5(reps, suffix=""):
        return [
            ScenarioConfig(
                name=f"fig5-m{m}{suffix}",
                model="bh64",
                m=m,
                replications=reps,
                seed=20260820 + m,
                q_grid=_FIG5_QS,
                procedures=("sl", "bh"),
                zeta=0.5,
            )
            for m in (64, 1024)
        ]

    add("fig5", fig5(100_000))
    add("fig5-ci", fig5(10_000, "-ci"))

    def fig6(dep, reps, suffix=""):
        tag = "eq" if dep == "equicorrelated" else "ar"
        return [
            ScenarioConfig(
                name=f"fig6-{tag}-rho{rho}{suffix}",
                model="bh64",
                m=64,
                replications=reps,
                seed=20260830,
                q_grid=(0.2,),
                procedures=("sl", "bh", "adaptive-sl"),
                dependence=dep,
                rho=rho,
                zeta=0.5,
            )
            for rho in _RHO_GRID
        ]

    add("fig6-eq", fig6("equicorrelated", 100_000))
    add("fig6-eq-ci", fig6("equicorrelated", 10_000, "-ci"))
    add("fig6-ar", fig6("autoregressive", 100_000))
    add("fig6-ar-ci", fig6("autoregressive", 10_000, "-ci"))

    def fig7(reps, suffix=""):
        return [
            ScenarioConfig(
                name=f"fig7{suffix}",
                model="bh64-cauchy",
                m=64,
                replications=reps,
                seed=20260840,
                q_grid=_FIG3_QS,
                procedures=("sl", "bh", "adaptive-sl"),
                zeta=0.5,
            )
        ]

    add("fig7", fig7(100_000))
    add("fig7-ci", fig7(10_000, "-ci"))

    def prop1(reps, suffix=""):
        return [
            ScenarioConfig(
                name=f"prop1{suffix}",
                model="lehmann(1.0,0.5)",
                m=10_000,
                replications=reps,
                seed=20260850,
                q_grid=(0.05,),
                procedures=("sl",),
                zeta=0.5,
            )
        ]

    add("prop1", prop1(100_000))
    add("prop1-ci", prop1(10_000, "-ci"))
    return presets
