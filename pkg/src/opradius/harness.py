"""Fuzz campaigns over the inequality catalog.

Each trial builds a random space on the (dim, rank) lattice, draws one
operand kit covering every operand kind, then evaluates the selected
catalog entries.  Proven statements must hold: any violation fails the
run.  Flagged as-printed variants never fail the run; their violations
are recorded as findings and can be replayed bit-for-bit from the
serialized record.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import ensembles, inequalities
from .errors import ConfigError, CorruptRecord
from .inequalities import EvalContext, MarginReport, PARAM_GRID, evaluate, list_catalog
from .numkernel import matrix_from_json, matrix_to_json
from .space import build_space

FAMILY_SIZES = (2, 3, 4)


@dataclass
class TrialKit:
    """Operands for one trial, drawn unconditionally so the stream does
    not depend on which entries are enabled."""

    space: object
    T: np.ndarray
    S: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    family: list
    commuting: list
    normal_pair: list
    triples: list          # flattened (T_j, X_j, S_j)
    vectors: list          # three dim-vectors
    scalars: tuple         # (a, b)
    n: int
    params: dict


def build_kit(config: ensembles.EnsembleConfig, trial: int) -> TrialKit:
    dim, rank = config.trial_case(trial)
    rng = config.trial_rng(trial)
    space = ensembles.random_space(dim, rank, rng)
    n = FAMILY_SIZES[trial % len(FAMILY_SIZES)]
    params = dict(PARAM_GRID[trial % len(PARAM_GRID)])
    T = ensembles.random_in_BA(space, rng)
    S = ensembles.random_in_BA(space, rng)
    X = ensembles.random_in_BA(space, rng)
    Y = ensembles.random_in_BA(space, rng)
    family = [ensembles.random_in_BA(space, rng) for _ in range(n)]
    commuting = ensembles.random_commuting_family(space, n, rng)
    normal_pair = [ensembles.random_a_normal(space, rng),
                   ensembles.random_a_normal(space, rng)]
    triples = []
    for _ in range(n):
        triples.append(ensembles.random_a_positive(space, rng))
        triples.append(ensembles.random_in_BA(space, rng))
        triples.append(ensembles.random_a_positive(space, rng))
    vectors = [rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
               for _ in range(3)]
    scalars = (float(rng.exponential(2.0)), float(rng.exponential(2.0)))
    return TrialKit(space=space, T=T, S=S, X=X, Y=Y, family=family,
                    commuting=commuting, normal_pair=normal_pair,
                    triples=triples, vectors=vectors, scalars=scalars,
                    n=n, params=params)


def _operands_for(entry, kit: TrialKit):
    kind = entry.operand_kind
    if kind == "single":
        return [kit.T]
    if kind == "pair":
        return [kit.T, kit.S]
    if kind == "quad":
        return [kit.T, kit.X, kit.Y, kit.S]
    if kind == "family":
        return list(kit.family)
    if kind == "commuting_pair":
        return kit.commuting[:2]
    if kind == "normal_pair":
        return list(kit.normal_pair)
    if kind == "commuting_family":
        return list(kit.commuting)
    if kind == "positive_triples":
        return list(kit.triples)
    if kind == "op_vector":
        return [kit.T, kit.vectors[0]]
    if kind == "vec_pair":
        return kit.vectors[:2]
    if kind == "vec_triple":
        return list(kit.vectors)
    if kind == "scalars":
        return []
    raise ConfigError(f"unknown operand kind {kind!r}")  # pragma: no cover


def _params_for(entry, kit: TrialKit) -> dict:
    params = {}
    for name in entry.params:
        if name == "n":
            params["n"] = kit.n
        elif name in ("a", "b"):
            params[name] = kit.scalars[0 if name == "a" else 1]
        else:
            params[name] = kit.params[name]
    return params


@dataclass
class EntryAggregate:
    trials: int = 0
    applicable: int = 0
    violations: int = 0
    flagged: bool = False
    min_margin: float | None = None
    mean_margin: float | None = None
    _margin_sum: float = 0.0
    aux_min: dict = field(default_factory=dict)

    def update(self, report: MarginReport):
        self.trials += 1
        if report.status == "Inapplicable":
            return
        self.applicable += 1
        if report.status == "Violated":
            self.violations += 1
        m = report.margin
        self._margin_sum += m
        self.min_margin = m if self.min_margin is None else min(self.min_margin, m)
        self.mean_margin = self._margin_sum / self.applicable
        for k, v in report.aux.items():
            cur = self.aux_min.get(k)
            self.aux_min[k] = float(v) if cur is None else min(cur, float(v))

    def to_json(self) -> dict:
        return {
            "trials": self.trials, "applicable": self.applicable,
            "violations": self.violations, "flagged": self.flagged,
            "min_margin": self.min_margin, "mean_margin": self.mean_margin,
            "aux_min": self.aux_min,
        }


@dataclass
class FuzzReport:
    config: dict
    entries: dict                 # id -> EntryAggregate
    violations: list              # non-flagged violation records
    flagged_findings: list        # violations of flagged entries
    duration: float
    tol_abs: float = inequalities.TOL_ABS
    tol_rel: float = inequalities.TOL_REL

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "tol_abs": self.tol_abs,
            "tol_rel": self.tol_rel,
            "entries": {k: v.to_json() for k, v in sorted(self.entries.items())},
            "violations": self.violations,
            "flagged_findings": self.flagged_findings,
            "duration_seconds": self.duration,
        }


def _violation_record(entry, config, trial, kit, operands, params,
                      report: MarginReport) -> dict:
    return {
        "entry": entry.id,
        "trial": trial,
        "master_seed": config.master_seed,
        "dim": kit.space.dim,
        "rank": kit.space.rank,
        "space": {"metric": matrix_to_json(kit.space.metric),
                  "tol": kit.space.tol},
        "operands": [inequalities._serialize_operand(op) for op in operands],
        "params": {k: float(v) for k, v in params.items()},
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "tol_abs": report.tol_abs,
        "tol_rel": report.tol_rel,
        "fingerprint": report.fingerprint,
    }


def run_fuzz(config: ensembles.EnsembleConfig, entry_filter=None,
             tol_abs: float = inequalities.TOL_ABS,
             tol_rel: float = inequalities.TOL_REL,
             observer=None) -> FuzzReport:
    """Run a fuzz campaign; returns aggregates plus violation records.

    ``entry_filter`` is an optional collection of entry ids;
    ``observer(trial, report)`` is called per evaluation when given.
    """
    catalog = list_catalog()
    if entry_filter is not None:
        wanted = set(entry_filter)
        unknown = wanted - {e.id for e in catalog}
        if unknown:
            raise ConfigError(f"unknown entries: {sorted(unknown)}")
        catalog = [e for e in catalog if e.id in wanted]
    aggregates = {e.id: EntryAggregate(flagged=e.flagged) for e in catalog}
    violations, flagged = [], []
    start = time.perf_counter()
    for trial in range(config.trials):
        kit = build_kit(config, trial)
        ctx = EvalContext(kit.space)
        for entry in catalog:
            operands = _operands_for(entry, kit)
            params = _params_for(entry, kit)
            report = evaluate(entry.id, kit.space, operands, params,
                              tol_abs=tol_abs, tol_rel=tol_rel, ctx=ctx,
                              serialize_on_violation=False)
            aggregates[entry.id].update(report)
            if report.status == "Violated":
                record = _violation_record(entry, config, trial, kit,
                                           operands, params, report)
                (flagged if entry.flagged else violations).append(record)
            if observer is not None:
                observer(trial, report)
    duration = time.perf_counter() - start
    return FuzzReport(
        config={"dims": list(config.dims), "rank_policy": config.rank_policy,
                "trials": config.trials, "master_seed": config.master_seed},
        entries=aggregates, violations=violations, flagged_findings=flagged,
        duration=duration, tol_abs=tol_abs, tol_rel=tol_rel,
    )


def replay(record: dict) -> MarginReport:
    """Re-evaluate a stored violation record from its serialized operands.

    The recomputed fingerprint must match the stored one, otherwise the
    record is rejected as corrupt.
    """
    try:
        entry_id = record["entry"]
        metric = matrix_from_json(record["space"]["metric"])
        tol = float(record["space"]["tol"])
        operands = [matrix_from_json(o) for o in record["operands"]]
        params = dict(record["params"])
        stored_fp = record["fingerprint"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptRecord(f"malformed violation record: {exc}") from exc
    space = build_space(metric, tol=tol)
    # vectors were stored as n x 1 matrices
    kind = inequalities.get_entry(entry_id).operand_kind
    if kind in ("vec_pair", "vec_triple"):
        ops = [o.ravel() for o in operands]
    elif kind == "op_vector":
        ops = [operands[0], operands[1].ravel()]
    else:
        ops = operands
    fp = inequalities.fingerprint_payload(entry_id, space, ops, params)
    if fp != stored_fp:
        raise CorruptRecord("fingerprint mismatch: record was tampered with")
    return evaluate(entry_id, space, ops, params,
                    tol_abs=float(record.get("tol_abs", inequalities.TOL_ABS)),
                    tol_rel=float(record.get("tol_rel", inequalities.TOL_REL)))
