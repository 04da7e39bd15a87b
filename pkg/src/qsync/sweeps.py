"""Sweep drivers and deterministic result tables behind the qsync CLI.

Every command resolves its flat key = value configuration into a
:class:`RunConfig`, evaluates a :class:`ResultTable`, and serializes it with
fixed formatting (17 significant digits, "." decimal separator, "\\n" line
endings), so identical configurations reproduce files byte for byte, with
any number of workers.  Degenerate cells never emit NaN; they carry zeros in
the numeric columns plus a flag in the status column.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .liouville import NonUniqueSteadyStateError, steady_state, vectorize
from .phasespace import max_sync, q_surface, sync_measure
from .spin1 import (
    GellmannVector8,
    Spin1Params,
    density_to_gellmann,
    gellmann_to_density,
    spin1_paper_formula,
    spin1_steady_oracle,
)
from .states import (
    BlochVector3,
    DegenerateModelError,
    SystemParams,
    bloch_from_density,
    density_from_bloch,
    validate_state,
)
from .twolevel import (
    DEFORMATION_THRESHOLD,
    default_time_step,
    expansion_coeffs,
    rotate_to_lab_frame,
    steady_state_closed_form,
    tls_liouvillian,
)
from .liouville import evolve as _evolve

__all__ = [
    "ConfigError",
    "RunConfig",
    "ResultTable",
    "COMMANDS",
    "STATUS_OK",
    "STATUS_DEFORMING",
    "STATUS_NON_UNIQUE",
    "STATUS_INVALID",
    "STATUS_FORMULA_SINGULAR",
    "run_steady",
    "run_tongue",
    "run_smeasure",
    "run_qsurface",
    "run_evolve",
    "run_spin1",
    "RUNNERS",
]

STATUS_OK = "ok"
STATUS_DEFORMING = "deforming"
STATUS_NON_UNIQUE = "non-unique"
STATUS_INVALID = "invalid"
STATUS_FORMULA_SINGULAR = "paper-formula-singular"

COMMANDS = ("steady", "tongue", "smeasure", "qsurface", "evolve", "spin1")


class ConfigError(ValueError):
    """A configuration key is unknown, missing, malformed or inconsistent."""


def _fmt_float(x: float) -> str:
    if x == 0.0:  # normalize -0.0 so zeros always print the same way
        x = 0.0
    return format(float(x), ".17g")


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        raise TypeError("no boolean configuration values")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"value {text!r} for key {key!r} is not a number") from None
    if not math.isfinite(value):
        raise ConfigError(f"value for key {key!r} must be finite, got {text!r}")
    return value


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"value {text!r} for key {key!r} is not an integer") from None


def _parse_str(key: str, text: str) -> str:
    return text


_KEY_PARSERS = {
    "model": _parse_str,
    "gamma_g": _parse_float,
    "gamma_d": _parse_float,
    "epsilon": _parse_float,
    "delta": _parse_float,
    "omega0": _parse_float,
    "omega": _parse_float,
    "alpha": _parse_float,
    "beta": _parse_float,
    "sweep": _parse_str,
    "sweep_start": _parse_float,
    "sweep_stop": _parse_float,
    "sweep_count": _parse_int,
    "epsilon_start": _parse_float,
    "epsilon_stop": _parse_float,
    "epsilon_count": _parse_int,
    "delta_start": _parse_float,
    "delta_stop": _parse_float,
    "delta_count": _parse_int,
    "family": _parse_str,
    "family_start": _parse_float,
    "family_stop": _parse_float,
    "family_count": _parse_int,
    "n_theta": _parse_int,
    "n_phi": _parse_int,
    "n_phi_measure": _parse_int,
    "t_final": _parse_float,
    "dt": _parse_float,
    "init_mx": _parse_float,
    "init_my": _parse_float,
    "init_mz": _parse_float,
    "out": _parse_str,
    "format": _parse_str,
    "jobs": _parse_int,
}

_COMMAND_KEYS = {
    "steady": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "sweep", "sweep_start", "sweep_stop", "sweep_count",
        "out", "format", "jobs",
    ),
    "tongue": (
        "model", "gamma_g", "gamma_d",
        "epsilon_start", "epsilon_stop", "epsilon_count",
        "delta_start", "delta_stop", "delta_count",
        "out", "format", "jobs",
    ),
    "smeasure": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "family", "family_start", "family_stop", "family_count",
        "n_phi_measure", "out", "format", "jobs",
    ),
    "qsurface": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "n_theta", "n_phi", "out", "format", "jobs",
    ),
    "evolve": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta", "omega0", "omega",
        "t_final", "dt", "init_mx", "init_my", "init_mz",
        "out", "format", "jobs",
    ),
    "spin1": (
        "model", "alpha", "beta",
        "sweep", "sweep_start", "sweep_stop", "sweep_count",
        "out", "format", "jobs",
    ),
}

# Resolved keys echoed into every output, in this order.  jobs is left out
# on purpose: results are independent of the worker count and the echo must
# be byte-identical across --jobs settings.
_ECHO_KEYS = {
    "steady": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "sweep", "sweep_start", "sweep_stop", "sweep_count", "out", "format",
    ),
    "tongue": (
        "model", "gamma_g", "gamma_d",
        "epsilon_start", "epsilon_stop", "epsilon_count",
        "delta_start", "delta_stop", "delta_count", "out", "format",
    ),
    "smeasure": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "family", "family_start", "family_stop", "family_count",
        "n_phi_measure", "out", "format",
    ),
    "qsurface": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta",
        "n_theta", "n_phi", "out", "format",
    ),
    "evolve": (
        "model", "gamma_g", "gamma_d", "epsilon", "delta", "omega0", "omega",
        "t_final", "dt", "init_mx", "init_my", "init_mz", "out", "format",
    ),
    "spin1": (
        "model", "alpha", "beta",
        "sweep", "sweep_start", "sweep_stop", "sweep_count", "out", "format",
    ),
}

_STEADY_SWEEPABLE = ("gamma_g", "gamma_d", "epsilon", "delta")
_SPIN1_SWEEPABLE = ("alpha", "beta")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one CLI command."""

    command: str
    model: str
    gamma_g: float | None = None
    gamma_d: float | None = None
    epsilon: float = 0.0
    delta: float = 0.0
    omega0: float | None = None
    omega: float | None = None
    alpha: float | None = None
    beta: float | None = None
    sweep: str | None = None
    sweep_start: float | None = None
    sweep_stop: float | None = None
    sweep_count: int | None = None
    epsilon_start: float | None = None
    epsilon_stop: float | None = None
    epsilon_count: int | None = None
    delta_start: float | None = None
    delta_stop: float | None = None
    delta_count: int | None = None
    family: str | None = None
    family_start: float | None = None
    family_stop: float | None = None
    family_count: int | None = None
    n_theta: int | None = None
    n_phi: int | None = None
    n_phi_measure: int | None = None
    t_final: float | None = None
    dt: float | None = None
    init_mx: float | None = None
    init_my: float | None = None
    init_mz: float | None = None
    out: str | None = None
    format: str = "csv"
    jobs: int = 1

    @classmethod
    def resolve(cls, command: str, raw: dict) -> "RunConfig":
        """Parse, default and cross-validate a flat key = value mapping."""
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}")
        raw = {str(k): str(v) for k, v in raw.items()}
        claimed = raw.pop("command", None)
        if claimed is not None and claimed != command:
            raise ConfigError(
                f"config key 'command' says {claimed!r} but command {command!r} was invoked"
            )
        allowed = _COMMAND_KEYS[command]
        parsed = {}
        for key, text in raw.items():
            if key not in allowed:
                raise ConfigError(
                    f"unknown configuration key {key!r} for command {command!r}"
                )
            parsed[key] = _KEY_PARSERS[key](key, text)

        expected_model = "spin1" if command == "spin1" else "tls"
        model = parsed.get("model", expected_model)
        if model != expected_model:
            raise ConfigError(
                f"command {command!r} requires model = {expected_model!r}, got {model!r}"
            )

        fmt = parsed.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")

        jobs = parsed.get("jobs")
        if jobs is None:
            env = os.environ.get("QSYNC_JOBS")
            if env is not None:
                jobs = _parse_int("QSYNC_JOBS", env)
            else:
                jobs = os.cpu_count() or 1
        if jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {jobs}")

        fields: dict = {
            "command": command,
            "model": model,
            "out": parsed.get("out"),
            "format": fmt,
            "jobs": jobs,
        }

        def require(key: str):
            if key not in parsed:
                raise ConfigError(
                    f"missing required key {key!r} for command {command!r}"
                )
            return parsed[key]

        def resolve_axis(prefix: str, choices, required: bool):
            name = parsed.get(prefix)
            extras = [f"{prefix}_start", f"{prefix}_stop", f"{prefix}_count"]
            if name is None:
                if required:
                    raise ConfigError(f"missing required key {prefix!r}")
                present = [k for k in extras if k in parsed]
                if present:
                    raise ConfigError(
                        f"key {present[0]!r} given without {prefix!r}"
                    )
                return None
            if name not in choices:
                raise ConfigError(
                    f"{prefix} must be one of {', '.join(choices)}; got {name!r}"
                )
            start, stop, count = (require(k) for k in extras)
            if count < 1:
                raise ConfigError(f"{prefix}_count must be at least 1, got {count}")
            if start > stop:
                raise ConfigError(
                    f"{prefix}_start = {start!r} exceeds {prefix}_stop = {stop!r}"
                )
            return {prefix: name, f"{prefix}_start": start,
                    f"{prefix}_stop": stop, f"{prefix}_count": count}

        if command == "spin1":
            fields["alpha"] = require("alpha")
            fields["beta"] = require("beta")
            axis = resolve_axis("sweep", _SPIN1_SWEEPABLE, required=False)
            if axis:
                fields.update(axis)
            else:
                try:
                    Spin1Params(fields["alpha"], fields["beta"])
                except ValueError as exc:
                    raise ConfigError(str(exc)) from None
            return cls(**fields)

        gamma_g = require("gamma_g")
        gamma_d = require("gamma_d")
        fields["gamma_g"] = gamma_g
        fields["gamma_d"] = gamma_d

        def build_params(**over):
            merged = dict(
                gamma_g=gamma_g, gamma_d=gamma_d,
                epsilon=parsed.get("epsilon", 0.0), delta=parsed.get("delta", 0.0),
            )
            merged.update(over)
            try:
                return SystemParams(**merged)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None

        if command == "steady":
            fields["epsilon"] = parsed.get("epsilon", 0.0)
            fields["delta"] = parsed.get("delta", 0.0)
            axis = resolve_axis("sweep", _STEADY_SWEEPABLE, required=False)
            if axis:
                fields.update(axis)
            else:
                build_params()
        elif command == "tongue":
            build_params(epsilon=0.0, delta=0.0)
            unit = min(gamma_g, gamma_d)
            if unit <= 0.0:
                unit = max(gamma_g, gamma_d)
            fields["epsilon_start"] = parsed.get("epsilon_start", 0.0)
            fields["epsilon_stop"] = parsed.get("epsilon_stop", unit)
            fields["epsilon_count"] = parsed.get("epsilon_count", 81)
            fields["delta_start"] = parsed.get("delta_start", -2.0 * unit)
            fields["delta_stop"] = parsed.get("delta_stop", 2.0 * unit)
            fields["delta_count"] = parsed.get("delta_count", 81)
            for prefix in ("epsilon", "delta"):
                if fields[f"{prefix}_count"] < 1:
                    raise ConfigError(
                        f"{prefix}_count must be at least 1, got {fields[f'{prefix}_count']}"
                    )
                if fields[f"{prefix}_start"] > fields[f"{prefix}_stop"]:
                    raise ConfigError(
                        f"{prefix}_start exceeds {prefix}_stop"
                    )
        elif command == "smeasure":
            fields["epsilon"] = parsed.get("epsilon", 0.0)
            fields["delta"] = parsed.get("delta", 0.0)
            build_params()
            axis = resolve_axis("family", ("delta", "epsilon"), required=False)
            if axis:
                fields.update(axis)
            else:
                fields["family"] = "delta"
                fields["family_start"] = fields["delta"]
                fields["family_stop"] = fields["delta"]
                fields["family_count"] = 1
            fields["n_phi_measure"] = parsed.get("n_phi_measure", 361)
            if fields["n_phi_measure"] < 2:
                raise ConfigError("n_phi_measure must be at least 2")
        elif command == "qsurface":
            fields["epsilon"] = parsed.get("epsilon", 0.0)
            fields["delta"] = parsed.get("delta", 0.0)
            build_params()
            fields["n_theta"] = parsed.get("n_theta", 181)
            fields["n_phi"] = parsed.get("n_phi", 361)
            if fields["n_theta"] < 2 or fields["n_phi"] < 2:
                raise ConfigError("n_theta and n_phi must be at least 2")
        elif command == "evolve":
            fields["epsilon"] = parsed.get("epsilon", 0.0)
            fields["delta"] = parsed.get("delta", 0.0)
            fields["omega0"] = parsed.get("omega0")
            if "omega" in parsed:
                omega = parsed["omega"]
            elif fields["omega0"] is not None:
                omega = fields["omega0"] - fields["delta"]
            else:
                omega = 0.0
            fields["omega"] = omega
            params = build_params(omega0=fields["omega0"], omega=omega)
            fields["t_final"] = parsed.get("t_final", 20.0 / min(params.rate_sum, 1.0))
            fields["dt"] = parsed.get("dt", default_time_step(params))
            if fields["t_final"] < 0.0:
                raise ConfigError("t_final must be nonnegative")
            if fields["dt"] <= 0.0:
                raise ConfigError("dt must be positive")
            fields["init_mx"] = parsed.get("init_mx", 0.0)
            fields["init_my"] = parsed.get("init_my", 0.0)
            fields["init_mz"] = parsed.get("init_mz", -1.0)
            init = BlochVector3(fields["init_mx"], fields["init_my"], fields["init_mz"])
            if init.norm > 1.0 + 1e-9:
                raise ConfigError(
                    f"initial Bloch vector has norm {init.norm!r} > 1"
                )
        return cls(**fields)

    def echo_items(self) -> list[tuple[str, str]]:
        """Resolved configuration as ordered (key, text) pairs."""
        items = [("command", self.command)]
        for key in _ECHO_KEYS[self.command]:
            value = getattr(self, key)
            if value is not None:
                items.append((key, _fmt_value(value)))
        return items


@dataclass
class ResultTable:
    """Numeric columns plus one status flag per row, with provenance metadata.

    wall_clock_s is bookkeeping for the current process only; it is never
    serialized, so identical configurations give byte-identical files.
    """

    command: str
    columns: list[str]
    rows: np.ndarray
    status: list[str]
    config_echo: list[tuple[str, str]]
    checks: dict = field(default_factory=dict)
    wall_clock_s: float | None = None

    def _assert_finite(self):
        if self.rows.size and not np.isfinite(self.rows).all():
            raise ValueError(
                "internal error: non-finite value in numeric columns; "
                "degenerate cells must be zeroed and flagged instead"
            )

    def to_csv_text(self) -> str:
        self._assert_finite()
        lines = ["# config-begin"]
        lines += [f"# {k} = {v}" for k, v in self.config_echo]
        lines.append("# config-end")
        lines.append(f"# version = {__version__}")
        for name, value in self.checks.items():
            lines.append(f"# {name} = {_fmt_float(value)}")
        lines.append(",".join(self.columns + ["status"]))
        for i in range(self.rows.shape[0]):
            cells = [_fmt_float(x) for x in self.rows[i]]
            cells.append(self.status[i])
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        import json

        self._assert_finite()
        out = ["{"]
        out.append('  "meta": {')
        out.append(f'    "command": {json.dumps(self.command)},')
        out.append(f'    "version": {json.dumps(__version__)},')
        config = ", ".join(
            f"{json.dumps(k)}: {json.dumps(v)}" for k, v in self.config_echo
        )
        checks = ", ".join(
            f"{json.dumps(k)}: {_fmt_float(v)}" for k, v in self.checks.items()
        )
        out.append(f'    "config": {{{config}}},')
        out.append(f'    "checks": {{{checks}}}')
        out.append("  },")
        column_parts = []
        for j, name in enumerate(self.columns):
            numbers = ", ".join(_fmt_float(x) for x in self.rows[:, j])
            column_parts.append(f'    {json.dumps(name)}: [{numbers}]')
        out.append('  "columns": {')
        out.append(",\n".join(column_parts))
        out.append("  },")
        out.append(f'  "status": {json.dumps(self.status)}')
        out.append("}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv_text()
        if fmt == "json":
            return self.to_json_text()
        raise ValueError(f"unknown format {fmt!r}")

    def write(self, path: str | None, fmt: str):
        """Serialize to a file, or to stdout when path is None.

        The text is rendered fully before the file is opened, so an error
        while computing never leaves a partial file behind.
        """
        text = self.render(fmt)
        if path is None:
            import sys

            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)


def _parallel_map(fn, tasks, jobs: int) -> list:
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    workers = min(jobs, len(tasks))
    chunk = max(1, math.ceil(len(tasks) / (4 * workers)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def _linspace(start: float, stop: float, count: int) -> np.ndarray:
    return np.linspace(start, stop, count)


# ----------------------------------------------------------------- steady

_STEADY_COLUMNS = [
    "gamma_g", "gamma_d", "epsilon", "delta",
    "mx", "my", "mz", "mx_oracle", "my_oracle", "mz_oracle", "max_residual",
]


def _steady_cell(task: tuple) -> tuple:
    gamma_g, gamma_d, epsilon, delta = task
    try:
        params = SystemParams(
            gamma_g=gamma_g, gamma_d=gamma_d, epsilon=epsilon, delta=delta
        )
    except DegenerateModelError:
        return (0.0,) * 7 + (STATUS_NON_UNIQUE,)
    except ValueError:
        return (0.0,) * 7 + (STATUS_INVALID,)
    closed = steady_state_closed_form(params)
    lio = tls_liouvillian(params)
    try:
        oracle = bloch_from_density(steady_state(lio))
    except NonUniqueSteadyStateError:
        return (0.0,) * 7 + (STATUS_NON_UNIQUE,)
    residual = float(np.max(np.abs(lio.matrix @ vectorize(density_from_bloch(closed)))))
    return (
        closed.mx, closed.my, closed.mz,
        oracle.mx, oracle.my, oracle.mz,
        residual, STATUS_OK,
    )


def run_steady(config: RunConfig) -> ResultTable:
    """Stationary Bloch vector, closed form next to the nullspace oracle."""
    base = (config.gamma_g, config.gamma_d, config.epsilon, config.delta)
    if config.sweep is None:
        tasks = [base]
    else:
        index = {"gamma_g": 0, "gamma_d": 1, "epsilon": 2, "delta": 3}[config.sweep]
        tasks = []
        for value in _linspace(config.sweep_start, config.sweep_stop, config.sweep_count):
            cell = list(base)
            cell[index] = float(value)
            tasks.append(tuple(cell))
    results = _parallel_map(_steady_cell, tasks, config.jobs)
    rows = np.array(
        [list(task) + list(res[:7]) for task, res in zip(tasks, results)], dtype=float
    )
    status = [res[7] for res in results]
    return ResultTable(
        command="steady",
        columns=list(_STEADY_COLUMNS),
        rows=rows,
        status=status,
        config_echo=config.echo_items(),
    )


# ----------------------------------------------------------------- tongue

_TONGUE_COLUMNS = ["epsilon", "delta", "S_max", "phi_star", "K_eps2"]


def _tongue_row(task: tuple) -> list:
    gamma_g, gamma_d, epsilon, deltas = task
    out = []
    for delta in deltas:
        try:
            params = SystemParams(
                gamma_g=gamma_g, gamma_d=gamma_d, epsilon=epsilon, delta=delta
            )
        except DegenerateModelError:
            out.append((0.0, 0.0, 0.0, STATUS_NON_UNIQUE))
            continue
        except ValueError:
            out.append((0.0, 0.0, 0.0, STATUS_INVALID))
            continue
        peak = max_sync(steady_state_closed_form(params))
        keps2 = expansion_coeffs(params).deformation_scale * params.epsilon**2
        status = STATUS_DEFORMING if keps2 > DEFORMATION_THRESHOLD else STATUS_OK
        out.append((peak.s_max, peak.phi_star, keps2, status))
    return out


def run_tongue(config: RunConfig) -> ResultTable:
    """Peak synchronization over the (epsilon, delta) grid, epsilon-major."""
    eps_values = _linspace(config.epsilon_start, config.epsilon_stop, config.epsilon_count)
    delta_values = _linspace(config.delta_start, config.delta_stop, config.delta_count)
    deltas = tuple(float(d) for d in delta_values)
    tasks = [
        (config.gamma_g, config.gamma_d, float(eps), deltas) for eps in eps_values
    ]
    blocks = _parallel_map(_tongue_row, tasks, config.jobs)
    rows = []
    status = []
    for eps, block in zip(eps_values, blocks):
        for delta, cell in zip(delta_values, block):
            rows.append([float(eps), float(delta), cell[0], cell[1], cell[2]])
            status.append(cell[3])
    return ResultTable(
        command="tongue",
        columns=list(_TONGUE_COLUMNS),
        rows=np.array(rows, dtype=float),
        status=status,
        config_echo=config.echo_items(),
    )


# --------------------------------------------------------------- smeasure

_SMEASURE_COLUMNS = ["family_value", "phi", "S"]


def _smeasure_member(task: tuple) -> tuple:
    gamma_g, gamma_d, epsilon, delta, family, value, phis = task
    if family == "epsilon":
        epsilon = value
    else:
        delta = value
    try:
        params = SystemParams(
            gamma_g=gamma_g, gamma_d=gamma_d, epsilon=epsilon, delta=delta
        )
    except DegenerateModelError:
        return (np.zeros(len(phis)), STATUS_NON_UNIQUE)
    except ValueError:
        return (np.zeros(len(phis)), STATUS_INVALID)
    s = sync_measure(steady_state_closed_form(params), np.asarray(phis))
    return (np.asarray(s, dtype=float), STATUS_OK)


def run_smeasure(config: RunConfig) -> ResultTable:
    """Phase distribution S(phi), one curve per family member."""
    phis = np.linspace(-math.pi, math.pi, config.n_phi_measure)
    values = _linspace(config.family_start, config.family_stop, config.family_count)
    tasks = [
        (
            config.gamma_g, config.gamma_d, config.epsilon, config.delta,
            config.family, float(v), tuple(float(p) for p in phis),
        )
        for v in values
    ]
    results = _parallel_map(_smeasure_member, tasks, config.jobs)
    rows = []
    status = []
    for value, (curve, flag) in zip(values, results):
        for phi, s in zip(phis, curve):
            rows.append([float(value), float(phi), float(s)])
            status.append(flag)
    return ResultTable(
        command="smeasure",
        columns=list(_SMEASURE_COLUMNS),
        rows=np.array(rows, dtype=float),
        status=status,
        config_echo=config.echo_items(),
    )


# --------------------------------------------------------------- qsurface

_QSURFACE_COLUMNS = ["theta", "phi", "Q"]


def run_qsurface(config: RunConfig) -> ResultTable:
    """Husimi function of the stationary state on a (theta, phi) grid."""
    params = SystemParams(
        gamma_g=config.gamma_g, gamma_d=config.gamma_d,
        epsilon=config.epsilon, delta=config.delta,
    )
    rho = density_from_bloch(steady_state_closed_form(params))
    surface = q_surface(rho, n_theta=config.n_theta, n_phi=config.n_phi)
    n_theta = surface.theta.size
    n_phi = surface.phi.size
    rows = np.column_stack(
        [
            np.repeat(surface.theta, n_phi),
            np.tile(surface.phi, n_theta),
            surface.values.reshape(-1),
        ]
    )
    return ResultTable(
        command="qsurface",
        columns=list(_QSURFACE_COLUMNS),
        rows=rows,
        status=[STATUS_OK] * rows.shape[0],
        config_echo=config.echo_items(),
        checks={"q_norm": surface.sphere_integral()},
    )


# ----------------------------------------------------------------- evolve

_EVOLVE_COLUMNS = ["t", "mx", "my", "mz", "mx_lab", "my_lab"]


def run_evolve(config: RunConfig) -> ResultTable:
    """Fixed-step relaxation trajectory with lab-frame transverse columns."""
    params = SystemParams(
        gamma_g=config.gamma_g, gamma_d=config.gamma_d,
        epsilon=config.epsilon, delta=config.delta,
        omega0=config.omega0, omega=config.omega,
    )
    rho0 = density_from_bloch(
        BlochVector3(config.init_mx, config.init_my, config.init_mz)
    )
    trajectory = _evolve(tls_liouvillian(params), rho0, config.t_final, config.dt)
    rows = np.empty((trajectory.times.size, 6))
    for i, (t, rho) in enumerate(zip(trajectory.times, trajectory.states)):
        m = bloch_from_density(rho)
        lab = rotate_to_lab_frame(m, config.omega, float(t))
        rows[i] = (t, m.mx, m.my, m.mz, lab.mx, lab.my)
    return ResultTable(
        command="evolve",
        columns=list(_EVOLVE_COLUMNS),
        rows=rows,
        status=[STATUS_OK] * rows.shape[0],
        config_echo=config.echo_items(),
        checks={
            "max_trace_drift": trajectory.max_trace_drift,
            "max_hermiticity_defect": trajectory.max_hermiticity_defect,
        },
    )


# ------------------------------------------------------------------ spin1

_SPIN1_COLUMNS = [
    "alpha", "beta", "p1", "p0", "pm1",
    "m3_oracle", "m8_oracle", "m3_paper", "m8_paper",
    "purity", "paper_formula_physical",
]


def _spin1_row(task: tuple) -> tuple:
    alpha, beta = task
    try:
        params = Spin1Params(alpha=alpha, beta=beta)
    except DegenerateModelError:
        return (0.0,) * 9 + (STATUS_NON_UNIQUE,)
    except ValueError:
        return (0.0,) * 9 + (STATUS_INVALID,)
    rho = spin1_steady_oracle(params)
    populations = np.real(np.diag(rho))
    g = density_to_gellmann(rho)
    purity = float(np.trace(rho @ rho).real)
    try:
        m3_paper, m8_paper = spin1_paper_formula(params)
        paper_state = gellmann_to_density(GellmannVector8(m3=m3_paper, m8=m8_paper))
        physical = 1.0 if validate_state(paper_state).passed else 0.0
        status = STATUS_OK
    except ValueError:
        m3_paper = m8_paper = 0.0
        physical = 0.0
        status = STATUS_FORMULA_SINGULAR
    return (
        float(populations[0]), float(populations[1]), float(populations[2]),
        g.m3, g.m8, m3_paper, m8_paper, purity, physical, status,
    )


def run_spin1(config: RunConfig) -> ResultTable:
    """Three-level stationary report: populations, both (m3, m8) routes, purity."""
    base = (config.alpha, config.beta)
    if config.sweep is None:
        tasks = [base]
    else:
        index = {"alpha": 0, "beta": 1}[config.sweep]
        tasks = []
        for value in _linspace(config.sweep_start, config.sweep_stop, config.sweep_count):
            cell = list(base)
            cell[index] = float(value)
            tasks.append(tuple(cell))
    results = _parallel_map(_spin1_row, tasks, config.jobs)
    rows = np.array(
        [list(task) + list(res[:9]) for task, res in zip(tasks, results)], dtype=float
    )
    status = [res[9] for res in results]
    return ResultTable(
        command="spin1",
        columns=list(_SPIN1_COLUMNS),
        rows=rows,
        status=status,
        config_echo=config.echo_items(),
    )


RUNNERS = {
    "steady": run_steady,
    "tongue": run_tongue,
    "smeasure": run_smeasure,
    "qsurface": run_qsurface,
    "evolve": run_evolve,
    "spin1": run_spin1,
}
