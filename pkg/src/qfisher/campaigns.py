"""Seeded Monte-Carlo detection campaigns, sweeps and per-state analysis.

Every campaign derives one RNG stream per sample index from the campaign
seed, so results are byte-identical for a given configuration no matter how
many workers split the index range. Detection counts are integers and merge
by summation, which keeps the reduction order irrelevant.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import zoo
from .core import PureState, collective_spin, mix_with_identity
from .criteria import (
    STRICT_MARGIN,
    avg_qfi_bound,
    bound_ratios,
    build_report,
    critical_p,
    dme_condition,
    ghz_witness,
    qfi_bound,
)
from .estimation import precision_limits, run_phase_estimation
from .fisher import (
    _collective_spins,
    _gamma_mixed_batch,
    _gamma_pure_batch,
    optimize_local_directions,
    parity_povm,
    qfi,
    qfi_avg,
    qfi_max,
    x_basis_povm,
)

__all__ = [
    "CampaignConfig",
    "DetectionRate",
    "run_table2",
    "run_table3",
    "run_bound_entangled_scan",
    "bounds_curve",
    "sweep_p",
    "analyze",
    "run_phase_sim",
    "CAMPAIGNS",
    "run_campaign",
]

CHUNK_SIZE = 2048  # fixed so the sample -> stream map never depends on workers


@dataclass(frozen=True)
class CampaignConfig:
    """Everything one campaign invocation depends on."""

    campaign: str
    samples: int = 10_000
    seed: int = 0
    workers: int = 1
    out: str | None = None
    n: int | None = None
    k: int | None = None
    state: str | None = None
    mode: str | None = None
    m: int = 1000
    trials: int = 200
    theta: float | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class DetectionRate:
    name: str
    detected: int
    samples: int

    @property
    def percent(self) -> float:
        return 100.0 * self.detected / self.samples

    @property
    def stderr(self) -> float:
        p = self.detected / self.samples
        return 100.0 * float(np.sqrt(p * (1.0 - p) / self.samples))


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _map_chunks(chunk_fn, samples: int, workers: int) -> np.ndarray:
    ranges = [(s, min(s + CHUNK_SIZE, samples)) for s in range(0, samples, CHUNK_SIZE)]
    if workers <= 1:
        parts = [chunk_fn(a, b) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_apply_range, [(chunk_fn, a, b) for a, b in ranges]))
    return np.sum(parts, axis=0)


def _apply_range(job):
    chunk_fn, a, b = job
    return chunk_fn(a, b)


# ---------------------------------------------------------------------------
# random pure three-qubit states: entanglement-detection rates
# ---------------------------------------------------------------------------

TABLE2_CRITERIA = ("fq_2", "fq_avg_2", "fq_3", "fq_avg_3", "dme", "dme_family", "witness")
TABLE2_LOCAL_CRITERIA = TABLE2_CRITERIA + ("fq_2_local", "fq_3_local", "witness_opt")


def _pure3_batch(seed: int, start: int, stop: int) -> np.ndarray:
    psis = np.empty((stop - start, 8), dtype=complex)
    for j, i in enumerate(range(start, stop)):
        psis[j] = zoo.random_pure_3qubit(_stream(seed, i)).amplitudes
    return psis


def _table2_chunk(start: int, stop: int, seed: int, local: bool) -> np.ndarray:
    psis = _pure3_batch(seed, start, stop)
    gammas = _gamma_pure_batch(psis, _collective_spins(3))
    fq_max = np.linalg.eigvalsh(gammas)[:, -1]
    fq_avg = np.trace(gammas, axis1=1, axis2=2) / 3.0

    # antidiagonal pair magnitudes |psi_j| * |psi_{7-j}|; for rank-one states
    # the diagonal square roots reduce to the same products
    mags = np.abs(psis)
    anti = mags[:, :4] * mags[:, 7:3:-1]
    totals = anti.sum(axis=1)
    dme_pair1 = anti[:, 0] > (totals - anti[:, 0]) + 1e-12
    dme_any = np.any(anti > (totals[:, None] - anti) + 1e-12, axis=1)

    ghz_vec = zoo.ghz(3).amplitudes
    fidelity = np.abs(psis @ ghz_vec.conj()) ** 2
    witness = (0.5 - fidelity) < -STRICT_MARGIN

    flags = [
        fq_max > qfi_bound(3, 1) + STRICT_MARGIN,
        fq_avg > avg_qfi_bound(3, 1) + STRICT_MARGIN,
        fq_max > qfi_bound(3, 2) + STRICT_MARGIN,
        fq_avg > avg_qfi_bound(3, 2) + STRICT_MARGIN,
        dme_pair1,
        dme_any,
        witness,
    ]
    if local:
        fq_local = np.empty(stop - start)
        wit_opt = np.empty(stop - start, dtype=bool)
        for j, i in enumerate(range(start, stop)):
            psi = PureState(3, psis[j])
            fq_local[j], _ = optimize_local_directions(psi, restarts=4, seed=(seed, i, 1))
            w = ghz_witness(psi, optimize_local_unitaries=True, restarts=5, seed=(seed, i, 2))
            wit_opt[j] = w < -STRICT_MARGIN
        flags += [
            fq_local > qfi_bound(3, 1) + STRICT_MARGIN,
            fq_local > qfi_bound(3, 2) + STRICT_MARGIN,
            wit_opt,
        ]
    return np.array([int(f.sum()) for f in flags], dtype=np.int64)


def run_table2(
    samples: int = 1_000_000, seed: int = 0, workers: int = 1, mode: str = "collective"
) -> list[DetectionRate]:
    """Detection percentages of the criteria over Haar-random 3-qubit pure states.

    ``mode="local"`` additionally reports the QFI criteria after
    local-direction optimization and the witness after local-unitary
    optimization (slow; meant for reduced sample counts).
    """
    if mode not in ("collective", "local"):
        raise ValueError(f"table2 mode must be 'collective' or 'local', got {mode!r}")
    local = mode == "local"
    counts = _map_chunks(partial(_table2_chunk, seed=seed, local=local), samples, workers)
    names = TABLE2_LOCAL_CRITERIA if local else TABLE2_CRITERIA
    return [DetectionRate(n, int(c), samples) for n, c in zip(names, counts)]


# ---------------------------------------------------------------------------
# random GHZ-diagonal states: detection rates for the multipartite criteria
# ---------------------------------------------------------------------------

TABLE3_CRITERIA = ("witness", "fq_3", "fq_avg_3")


def _table3_chunk(start: int, stop: int, seed: int, mode: str) -> np.ndarray:
    rhos = np.empty((stop - start, 8, 8), dtype=complex)
    for j, i in enumerate(range(start, stop)):
        rhos[j] = zoo.random_ghz_diagonal(_stream(seed, i), mode).matrix
    gammas = _gamma_mixed_batch(rhos, _collective_spins(3))
    fq_max = np.linalg.eigvalsh(gammas)[:, -1]
    fq_avg = np.trace(gammas, axis1=1, axis2=2) / 3.0
    ghz_vec = zoo.ghz(3).amplitudes
    fidelity = np.real(np.einsum("g,bgh,h->b", ghz_vec.conj(), rhos, ghz_vec))
    flags = [
        (0.5 - fidelity) < -STRICT_MARGIN,
        fq_max > qfi_bound(3, 2) + STRICT_MARGIN,
        fq_avg > avg_qfi_bound(3, 2) + STRICT_MARGIN,
    ]
    return np.array([int(f.sum()) for f in flags], dtype=np.int64)


def run_table3(
    samples: int = 1_000_000, seed: int = 0, workers: int = 1, mode: str = "dme"
) -> list[DetectionRate]:
    """Detection percentages over random X-form states violating the
    antidiagonal conditions: the first one only (``mode="dme"``) or any of
    the four (``mode="dme_family"``)."""
    sampler_mode = {"dme": "dme_violating", "dme_family": "full_family"}.get(mode)
    if sampler_mode is None:
        raise ValueError(f"table3 mode must be 'dme' or 'dme_family', got {mode!r}")
    counts = _map_chunks(partial(_table3_chunk, seed=seed, mode=sampler_mode), samples, workers)
    return [DetectionRate(n, int(c), samples) for n, c in zip(TABLE3_CRITERIA, counts)]


# ---------------------------------------------------------------------------
# PPT bound-entangled family scan
# ---------------------------------------------------------------------------

SCAN_FIELDS = ("ppt_all_cuts", "fq_2", "fq_avg_2")


def _batched_single_cut_pt(rhos: np.ndarray, qubit: int) -> np.ndarray:
    b = rhos.shape[0]
    t = rhos.reshape((b,) + (2,) * 6)
    axes = list(range(7))
    axes[1 + qubit], axes[4 + qubit] = axes[4 + qubit], axes[1 + qubit]
    return t.transpose(axes).reshape(b, 8, 8)


def _scan_chunk(start: int, stop: int, seed: int) -> np.ndarray:
    rhos = np.empty((stop - start, 8, 8), dtype=complex)
    for j, i in enumerate(range(start, stop)):
        rhos[j] = zoo.random_ghz_diagonal(_stream(seed, i), "bound_entangled").matrix
    ppt_all = np.ones(stop - start, dtype=bool)
    for q in range(3):
        lo = np.linalg.eigvalsh(_batched_single_cut_pt(rhos, q))[:, 0]
        ppt_all &= lo >= -1e-9
    gammas = _gamma_mixed_batch(rhos, _collective_spins(3))
    fq_max = np.linalg.eigvalsh(gammas)[:, -1]
    fq_avg = np.trace(gammas, axis1=1, axis2=2) / 3.0
    flags = [
        ppt_all,
        fq_max > qfi_bound(3, 1) + STRICT_MARGIN,
        fq_avg > avg_qfi_bound(3, 1) + STRICT_MARGIN,
    ]
    return np.array([int(f.sum()) for f in flags], dtype=np.int64)


def run_bound_entangled_scan(samples: int = 10_000, seed: int = 0, workers: int = 1) -> list[DetectionRate]:
    """PPT verification and (absence of) QFI detections over the PPT family."""
    counts = _map_chunks(partial(_scan_chunk, seed=seed), samples, workers)
    return [DetectionRate(n, int(c), samples) for n, c in zip(SCAN_FIELDS, counts)]


# ---------------------------------------------------------------------------
# bound tables, noise sweeps, reports, phase simulation
# ---------------------------------------------------------------------------


def bounds_curve(num_qubits: int) -> list[dict]:
    """Producibility-bound table, one row per class k, plus the straight-line
    references N*k and N*(k+2)/3 useful for plotting."""
    if num_qubits < 2:
        raise ValueError("need at least 2 qubits")
    rows = []
    for k in range(1, num_qubits + 1):
        rows.append(
            {
                "k": k,
                "fq_bound": qfi_bound(num_qubits, k),
                "fq_avg_bound": avg_qfi_bound(num_qubits, k),
                "nk": float(num_qubits * k),
                "n_k_plus_2_over_3": num_qubits * (k + 2) / 3.0,
            }
        )
    return rows


def _bisect_p(detect, tol: float) -> float | None:
    """Minimal mixing weight at which a monotone detector fires."""
    if not detect(1.0):
        return None
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if detect(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sweep_p(state_name: str, resolution: float = 1e-6) -> list[dict]:
    """White-noise robustness thresholds of each criterion for a pure state.

    For every producibility class the minimal admixture weight p at which
    the QFI criteria detect p|psi><psi| + (1-p)I/2^N is bisected and
    cross-checked against the closed-form critical weight. Three-qubit
    states also get the witness and antidiagonal-test thresholds.
    """
    state = zoo.parse_state_spec(state_name)
    if not isinstance(state, PureState):
        raise ValueError(f"the noise sweep needs a pure state, got {state_name!r}")
    n = state.num_qubits
    rows = []
    for k in range(1, n):
        ratio_max, ratio_avg = bound_ratios(state, k)

        def detect_fq(p, k=k):
            value, _ = qfi_max(mix_with_identity(state, p))
            return value > qfi_bound(n, k) + STRICT_MARGIN

        def detect_avg(p, k=k):
            return qfi_avg(mix_with_identity(state, p)) > avg_qfi_bound(n, k) + STRICT_MARGIN

        rows.append(
            {
                "criterion": "fq",
                "k": k,
                "p_threshold": _bisect_p(detect_fq, resolution),
                "p_closed_form": critical_p(ratio_max, n),
            }
        )
        rows.append(
            {
                "criterion": "fq_avg",
                "k": k,
                "p_threshold": _bisect_p(detect_avg, resolution),
                "p_closed_form": critical_p(ratio_avg, n),
            }
        )
    if n == 3:

        def detect_witness(p):
            return ghz_witness(mix_with_identity(state, p)) < -STRICT_MARGIN

        def detect_dme(p):
            return dme_condition(mix_with_identity(state, p), 1).violated

        fid = ghz_witness(state)  # 1/2 - fidelity of the pure state
        pure_fidelity = 0.5 - fid
        closed = None
        if pure_fidelity > 0.5:
            closed = (0.5 - 0.125) / (pure_fidelity - 0.125)
        rows.append(
            {
                "criterion": "witness",
                "k": None,
                "p_threshold": _bisect_p(detect_witness, resolution),
                "p_closed_form": closed,
            }
        )
        rows.append(
            {
                "criterion": "dme",
                "k": None,
                "p_threshold": _bisect_p(detect_dme, resolution),
                "p_closed_form": None,
            }
        )
    return rows


def analyze(state_spec: str, optimize_witness: bool = False, seed: int = 0) -> dict:
    """Full criterion report for a zoo name or a state JSON file."""
    state = zoo.parse_state_spec(state_spec)
    report = build_report(state, optimize_witness=optimize_witness, seed=seed)
    out = report.to_dict()
    out["state"] = state_spec
    return out


def run_phase_sim(
    state_spec: str = "ghz:4",
    m: int = 1000,
    trials: int = 200,
    theta: float | None = None,
    seed: int = 0,
) -> dict:
    """Simulated repeated phase estimation for a fringe-type probe.

    GHZ probes are measured by N-qubit parity in x, product |+> probes in
    the local x bases; the default phase sits at the steepest point of the
    corresponding fringe.
    """
    state = zoo.parse_state_spec(state_spec)
    if not isinstance(state, PureState):
        raise ValueError("phase simulation expects a pure probe state")
    n = state.num_qubits
    generator = collective_spin(n, "z")
    if state_spec.startswith("plus:"):
        povm = x_basis_povm(n)
        theta0 = np.pi / 2 if theta is None else theta
        window = (theta0 - np.pi / 2, theta0 + np.pi / 2)
    else:
        povm = parity_povm(n, "x")
        theta0 = np.pi / (2 * n) if theta is None else theta
        window = (theta0 - np.pi / (2 * n), theta0 + np.pi / (2 * n))
    run = run_phase_estimation(
        state, generator, povm, theta0, m=m, trials=trials, seed=seed, window=window
    )
    fisher_info = qfi(state, generator)
    crb = 1.0 / np.sqrt(m * fisher_info) if fisher_info > 0 else float("inf")
    shot_noise, heisenberg = precision_limits(n, m)
    return {
        "state": state_spec,
        "true_theta": run.true_theta,
        "m": m,
        "trials": trials,
        "estimates": [float(x) for x in run.estimator_values],
        "std": run.empirical_std,
        "crb": float(crb),
        "ratio": float(run.empirical_std / crb) if np.isfinite(crb) else None,
        "shot_noise": float(shot_noise),
        "heisenberg": float(heisenberg),
    }


# ---------------------------------------------------------------------------
# campaign dispatch and serialization
# ---------------------------------------------------------------------------


def _rates_csv(rows: list[DetectionRate]) -> str:
    lines = ["criterion,detected,samples,percent,stderr"]
    for r in rows:
        lines.append(f"{r.name},{r.detected},{r.samples},{r.percent:.4f},{r.stderr:.4f}")
    return "\n".join(lines) + "\n"


def _rates_json(rows: list[DetectionRate], config: CampaignConfig) -> dict:
    return {
        "campaign": config.campaign,
        "samples": config.samples,
        "seed": config.seed,
        "mode": config.mode,
        "rows": [
            {
                "criterion": r.name,
                "detected": r.detected,
                "samples": r.samples,
                "percent": r.percent,
                "stderr": r.stderr,
            }
            for r in rows
        ],
    }


def _dicts_csv(rows: list[dict]) -> str:
    if not rows:
        return "\n"
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for key in header:
            value = row[key]
            if value is None:
                cells.append("")
            elif isinstance(value, float):
                cells.append(f"{value:.10g}")
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def run_campaign(config: CampaignConfig) -> tuple[str, dict | None]:
    """Execute a campaign; returns (csv_text, json_payload)."""
    name = config.campaign
    if name == "table2":
        rows = run_table2(config.samples, config.seed, config.workers, config.mode or "collective")
        return _rates_csv(rows), _rates_json(rows, config)
    if name == "table3":
        rows = run_table3(config.samples, config.seed, config.workers, config.mode or "dme")
        return _rates_csv(rows), _rates_json(rows, config)
    if name == "bound-entangled-scan":
        rows = run_bound_entangled_scan(config.samples, config.seed, config.workers)
        return _rates_csv(rows), _rates_json(rows, config)
    if name == "bounds-curve":
        if config.n is None:
            raise ValueError("bounds-curve needs --n")
        rows = bounds_curve(config.n)
        if config.k is not None:
            rows = [row for row in rows if row["k"] == config.k]
            if not rows:
                raise ValueError(f"--k {config.k} is outside 1..{config.n}")
        return _dicts_csv(rows), {"campaign": name, "n": config.n, "rows": rows}
    if name == "sweep-p":
        if not config.state:
            raise ValueError("sweep-p needs --state")
        rows = sweep_p(config.state, 1e-6)
        if config.k is not None:
            rows = [row for row in rows if row["k"] in (config.k, None)]
        return _dicts_csv(rows), {"campaign": name, "state": config.state, "rows": rows}
    if name == "analyze":
        if not config.state:
            raise ValueError("analyze needs --state")
        payload = analyze(config.state, optimize_witness=(config.mode == "witness-opt"), seed=config.seed)
        rows = [{"field": k, "value": v} for k, v in payload.items() if not isinstance(v, (list, dict))]
        return _dicts_csv(rows), payload
    if name == "phase-sim":
        payload = run_phase_sim(
            config.state or "ghz:4", config.m, config.trials, config.theta, config.seed
        )
        rows = [{"trial": i, "estimate": est} for i, est in enumerate(payload["estimates"])]
        summary = {k: v for k, v in payload.items() if k != "estimates"}
        return _dicts_csv(rows), summary
    raise ValueError(f"unknown campaign {name!r}")


CAMPAIGNS = (
    "table2",
    "table3",
    "bounds-curve",
    "sweep-p",
    "analyze",
    "phase-sim",
    "bound-entangled-scan",
)
