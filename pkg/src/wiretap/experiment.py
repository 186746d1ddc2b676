"""Seeded Monte Carlo harness: method sweeps over SNR grids with CSV/JSON output.

Within one realization every requested method is evaluated on the identical
channel draw (paired comparison); a fresh channel is drawn for every
(realization, SNR) pair. Seeds derive from the master seed through
counter-based sequences, so results do not depend on evaluation order.
"""

import dataclasses
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .baselines import (
    misome_capacity,
    precode_gsvd,
    precode_isotropic,
    precode_slnr,
    precode_water_filling,
    precode_zero_forcing,
    random_search_oracle,
)
from .errors import InvalidConfigError
from .model import sample_channel, secrecy_rate
from .potdc import PotdcSettings
from .solver import AlternatingSettings, solve
from .unitary import UnitarySettings

LN2 = float(np.log(2.0))

METHOD_NAMES = (
    "potdc",
    "gsvd",
    "zero_forcing",
    "slnr",
    "water_filling",
    "isotropic",
    "random_search_oracle",
    "misome_capacity",
)

_PRECODERS = {
    "gsvd": precode_gsvd,
    "zero_forcing": precode_zero_forcing,
    "slnr": precode_slnr,
    "water_filling": precode_water_filling,
    "isotropic": precode_isotropic,
}


@dataclass
class ExperimentConfig:
    m: int
    n_main: int
    n_eave: int
    snr_db_grid: list
    methods: list
    realizations: int = 100
    master_seed: int = 0
    rate_units: str = "nats"
    solver: AlternatingSettings = field(default_factory=AlternatingSettings)
    oracle_samples: int = 10000

    def __post_init__(self):
        if min(self.m, self.n_main, self.n_eave) < 1:
            raise InvalidConfigError("antenna counts must be positive")
        if self.realizations < 1:
            raise InvalidConfigError("realizations must be >= 1")
        grid = [float(v) for v in self.snr_db_grid]
        if not grid:
            raise InvalidConfigError("snr_db_grid must be non-empty")
        self.snr_db_grid = grid
        if self.rate_units not in ("nats", "bits"):
            raise InvalidConfigError("rate_units must be 'nats' or 'bits'")
        methods = [str(mth) for mth in self.methods]
        unknown = [mth for mth in methods if mth not in METHOD_NAMES]
        if unknown:
            raise InvalidConfigError(f"unknown methods: {unknown}")
        if "misome_capacity" in methods and self.n_main != 1:
            raise InvalidConfigError("misome_capacity requires n_main == 1")
        self.methods = methods
        if self.oracle_samples < 1:
            raise InvalidConfigError("oracle_samples must be >= 1")

    def to_dict(self):
        return {
            "m": self.m,
            "n_main": self.n_main,
            "n_eave": self.n_eave,
            "snr_db_grid": list(self.snr_db_grid),
            "methods": list(self.methods),
            "realizations": self.realizations,
            "master_seed": self.master_seed,
            "rate_units": self.rate_units,
            "oracle_samples": self.oracle_samples,
            "solver": {
                "zeta2": self.solver.zeta2,
                "max_alternations": self.solver.max_alternations,
                "n_starts": self.solver.n_starts,
                "rng_seed": self.solver.rng_seed,
                "warm_start_lambda": self.solver.warm_start_lambda,
                "potdc": dataclasses.asdict(self.solver.potdc),
                "unitary": dataclasses.asdict(self.solver.unitary),
            },
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            solver_doc = dict(doc.get("solver", {}))
            potdc = PotdcSettings(**solver_doc.pop("potdc", {}))
            unitary = UnitarySettings(**solver_doc.pop("unitary", {}))
            solver = AlternatingSettings(potdc=potdc, unitary=unitary, **solver_doc)
            return cls(
                m=int(doc["m"]),
                n_main=int(doc["n_main"]),
                n_eave=int(doc["n_eave"]),
                snr_db_grid=list(doc["snr_db_grid"]),
                methods=list(doc["methods"]),
                realizations=int(doc.get("realizations", 100)),
                master_seed=int(doc.get("master_seed", 0)),
                rate_units=str(doc.get("rate_units", "nats")),
                solver=solver,
                oracle_samples=int(doc.get("oracle_samples", 10000)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfigError(f"malformed experiment config: {exc}") from exc


@dataclass
class ExperimentResult:
    """Aggregates plus the per-realization dump, with the config echoed back."""

    config: dict
    rows: list
    metadata: dict

    def to_dict(self):
        return {"config": self.config, "rows": self.rows, "metadata": self.metadata}

    @classmethod
    def from_dict(cls, doc):
        return cls(config=doc["config"], rows=doc["rows"], metadata=doc["metadata"])


def _derive_seed(master, snr_index, realization, stream):
    ss = np.random.SeedSequence(
        (int(master) % (1 << 64), int(snr_index), int(realization), int(stream))
    )
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _evaluate(method, ch, config, snr_index, realization):
    if method == "potdc":
        seed = _derive_seed(config.master_seed, snr_index, realization, 1)
        settings = dataclasses.replace(config.solver, rng_seed=seed, init_covariance=None)
        return solve(ch, settings).secrecy_rate
    if method == "misome_capacity":
        return misome_capacity(ch)
    if method == "random_search_oracle":
        seed = _derive_seed(config.master_seed, snr_index, realization, 2)
        rate, _ = random_search_oracle(ch, config.oracle_samples, seed)
        return max(0.0, rate)
    return max(0.0, secrecy_rate(ch, _PRECODERS[method](ch)))


def run_experiment(config):
    """Run the Monte Carlo sweep described by ``config``; fully deterministic."""
    t0 = time.perf_counter()
    scale = 1.0 if config.rate_units == "nats" else 1.0 / LN2
    dims = (config.m, config.n_main, config.n_eave)
    per_point = {(snr, mth): [] for snr in config.snr_db_grid for mth in config.methods}
    for snr_index, snr_db in enumerate(config.snr_db_grid):
        rho = 10.0 ** (snr_db / 10.0)
        for realization in range(config.realizations):
            ch_seed = _derive_seed(config.master_seed, snr_index, realization, 0)
            ch = sample_channel(dims, rho, rho, ch_seed)
            for method in config.methods:
                rate = _evaluate(method, ch, config, snr_index, realization)
                per_point[(snr_db, method)].append(scale * max(0.0, rate))
    rows = []
    for snr_db in config.snr_db_grid:
        for method in config.methods:
            rates = per_point[(snr_db, method)]
            n = len(rates)
            mean = float(np.mean(rates))
            stderr = float(np.std(rates, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
            rows.append(
                {
                    "snr_db": float(snr_db),
                    "method": method,
                    "mean_rate": mean,
                    "stderr": stderr,
                    "rates": [float(r) for r in rates],
                }
            )
    metadata = {
        "code_version": __version__,
        "wall_time_s": time.perf_counter() - t0,
        "channel_draws": "fresh channel per (realization, snr) pair",
    }
    return ExperimentResult(config=config.to_dict(), rows=rows, metadata=metadata)


def _fmt(value):
    return repr(float(value))


def render_csv(result):
    """Deterministic CSV text: one aggregate row per (snr, method)."""
    units = result.config.get("rate_units", "nats")
    realizations = result.config.get("realizations", 0)
    lines = ["snr_db,method,mean_rate,stderr,units,realizations"]
    for row in result.rows:
        lines.append(
            f"{_fmt(row['snr_db'])},{row['method']},{_fmt(row['mean_rate'])},"
            f"{_fmt(row['stderr'])},{units},{realizations}"
        )
    return "\n".join(lines) + "\n"


def render_json(result):
    """Deterministic JSON text mirroring the full result."""
    return json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n"


def emit_results(result, format="csv", path=None):
    """Write the result to ``path`` in the requested format.

    Re-emitting the same (or a JSON round-tripped) result produces identical
    bytes. IO failures raise the usual ``OSError``.
    """
    if format == "csv":
        text = render_csv(result)
    elif format == "json":
        text = render_json(result)
    else:
        raise InvalidConfigError(f"unknown output format: {format}")
    if path is None:
        raise InvalidConfigError("an output path is required")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
