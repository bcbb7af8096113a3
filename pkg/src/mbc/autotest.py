"""Contract-based random testing: generate objects by random constructor
and command calls, filter by preconditions, check postconditions and
invariants, and report violations with replayable traces.

Generation is contract-blind (uniform over features and argument pools);
filtering is the precondition's job.  Runs are deterministic for a fixed
seed in single-worker mode; parallel mode partitions the seed space
(worker i uses seed + i) and merges reports in canonical order.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import containers
from .checkers import _state_size
from .contracts import (
    ContractViolation, PreconditionRejected, REGISTRY, abstract_state,
    checked_command, checked_constructor, checked_query,
)
from .model_math import MRel, MSeq, Ref, identity_relation, total_relation

ELEMENT_POOL = [Ref(c) for c in "abcd"]
MAX_OBJECT_SIZE = 8


class ReplayError(Exception):
    """A recorded trace cannot be replayed against the current registry."""


@dataclass
class TestBudget:
    __test__ = False  # not a test case, despite the name
    max_calls: int = 10_000
    max_objects: int = 32
    wall_clock: float = 600.0
    seed: int = 0


@dataclass
class FaultReport:
    violation: dict
    trace: list

    def to_json(self) -> str:
        return json.dumps({"violation": self.violation, "trace": self.trace},
                          ensure_ascii=False, sort_keys=True)


@dataclass
class CampaignResult:
    stats: dict
    reports: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return self.stats["violations"]

    def to_json_lines(self) -> str:
        lines = [json.dumps({"stats": self.stats}, ensure_ascii=False,
                            sort_keys=True)]
        lines.extend(r.to_json() for r in self.reports)
        return "\n".join(lines) + "\n"


def _encode_arg(a):
    if isinstance(a, Ref):
        return ["elem", a.token]
    if isinstance(a, bool):
        return ["bool", a]
    if isinstance(a, int):
        return ["int", a]
    if isinstance(a, MSeq):
        return ["path", [bool(b) for b in a.items]]
    if isinstance(a, MRel):
        return ["rel", [[x.token, y.token] for x, y in a.pairs]]
    if hasattr(a, "spec_name"):
        raise TypeError("container arguments are encoded by the caller")
    raise TypeError(f"cannot encode argument {a!r}")


def _decode_arg(e, faults, mode):
    kind = e[0]
    if kind == "elem":
        return Ref(e[1])
    if kind == "bool":
        return bool(e[1])
    if kind == "int":
        return int(e[1])
    if kind == "path":
        return MSeq(bool(b) for b in e[1])
    if kind == "rel":
        return MRel((Ref(x), Ref(y)) for x, y in e[1])
    if kind == "obj":
        return _replay_trace(e[1], faults, mode)
    raise ReplayError(f"unknown argument encoding {e!r}")


def _replay_trace(trace, faults, mode):
    """Rebuild an object by re-running its recorded calls under checking.
    Raises the ContractViolation of whichever call fails."""
    if not trace:
        raise ReplayError("empty trace")
    head, *calls = trace
    if head[0] != "new":
        raise ReplayError("trace must start with a constructor entry")
    _, spec_name, ctor_name, ctor_args = head
    if spec_name not in REGISTRY:
        raise ReplayError(f"unknown container type {spec_name!r}")
    spec = REGISTRY[spec_name]
    args = [_decode_arg(a, faults, mode) for a in ctor_args]
    obj = checked_constructor(spec, ctor_name, args, mode=mode, faults=faults)
    for entry in calls:
        if entry[0] != "call":
            raise ReplayError(f"bad trace entry {entry!r}")
        _, feature_name, enc_args = entry
        if feature_name not in spec.features:
            raise ReplayError(f"unknown feature {spec_name}.{feature_name}")
        feature = spec.features[feature_name]
        args = [_decode_arg(a, faults, mode) for a in enc_args]
        if feature.kind == "command":
            checked_command(obj, feature_name, args, mode=mode)
        else:
            checked_query(obj, feature_name, args, mode=mode)
    return obj


def replay(report: FaultReport, faults=None, mode="model"):
    """Re-run a fault report's trace; returns the reproduced violation, or
    None when the trace runs clean (e.g. with the fault switch off)."""
    faults = faults or containers.FaultSwitch()
    try:
        _replay_trace(report.trace, faults, mode)
    except ContractViolation as v:
        return v
    except PreconditionRejected as p:
        raise ReplayError(f"trace no longer valid: {p}") from p
    return None


@dataclass
class _LiveObject:
    spec: object
    obj: object
    trace: list


def generate_arguments(feature, rng, pool, target=None):
    """Draw an argument tuple for a feature from the element pool, integer
    ranges, and live container objects; preconditions filter afterwards."""
    args = []
    encoded = []
    for d in feature.arg_domains:
        kind = d[0]
        if kind == "element":
            a = rng.choice(ELEMENT_POOL)
        elif kind == "int":
            a = rng.randint(d[1], d[2])
        elif kind == "bool":
            a = rng.choice([False, True])
        elif kind == "path":
            n = rng.randint(0, d[1])
            a = MSeq(rng.choice([False, True]) for _ in range(n))
        elif kind == "relation":
            a = rng.choice([identity_relation(ELEMENT_POOL),
                            total_relation(ELEMENT_POOL)])
        elif kind == "container":
            candidates = [o for o in pool
                          if o.spec.name == d[1] and o.obj is not target]
            if not candidates:
                return None
            live = rng.choice(candidates)
            args.append(live)
            encoded.append(["obj", [list(e) for e in live.trace]])
            continue
        else:
            raise ValueError(f"unknown argument domain {d!r}")
        args.append(a)
        encoded.append(_encode_arg(a))
    return args, encoded


def _make_object(spec, rng, faults, mode, seed):
    ctor = rng.choice(spec.constructors)
    drawn = generate_arguments(ctor, rng, [])
    if drawn is None:
        return None
    args, encoded = drawn
    obj = checked_constructor(spec, ctor.name, args, mode=mode, seed=seed,
                              faults=faults)
    return _LiveObject(spec, obj, [["new", spec.name, ctor.name, encoded]])


def run_campaign(targets, budget: TestBudget, faults=None, mode="model",
                 workers=1) -> CampaignResult:
    """Random-testing campaign over the given container types.

    Precondition rejections are filtered calls, never faults.  Every
    emitted FaultReport is self-validated by replaying its trace before it
    is returned.
    """
    if workers > 1:
        merged = CampaignResult(stats={
            "calls": 0, "rejected": 0, "passed": 0, "violations": 0})
        reports = []
        per_worker = budget.max_calls // workers
        for i in range(workers):
            sub = TestBudget(per_worker, budget.max_objects,
                             budget.wall_clock, budget.seed + i)
            r = run_campaign(targets, sub, faults=faults, mode=mode)
            for k in merged.stats:
                merged.stats[k] += r.stats[k]
            reports.extend(r.reports)
        merged.reports = sorted(reports, key=lambda r: r.to_json())
        return merged

    faults = faults or containers.FaultSwitch()
    for t in targets:
        if t not in REGISTRY:
            raise KeyError(f"unknown container type {t!r}")
    containers.reset_ref_counter()
    rng = random.Random(budget.seed)
    pool: list[_LiveObject] = []
    stats = {"calls": 0, "rejected": 0, "passed": 0, "violations": 0}
    reports = []
    deadline = time.monotonic() + budget.wall_clock

    while stats["calls"] < budget.max_calls:
        if time.monotonic() > deadline:
            break
        target_name = rng.choice(targets)
        spec = REGISTRY[target_name]
        live_of_type = [o for o in pool if o.spec.name == target_name]
        make_new = (not live_of_type
                    or (len(pool) < budget.max_objects and rng.random() < 0.15))
        if make_new:
            stats["calls"] += 1
            try:
                live = _make_object(spec, rng, faults, mode, budget.seed)
            except PreconditionRejected:
                stats["rejected"] += 1
                continue
            if live is None:
                continue
            stats["passed"] += 1
            pool.append(live)
            continue

        live = rng.choice(live_of_type)
        feature = rng.choice(list(spec.features.values()))
        drawn = generate_arguments(feature, rng, pool, target=live.obj)
        if drawn is None:
            continue
        args, encoded = drawn
        raw_args = [a.obj if isinstance(a, _LiveObject) else a for a in args]
        stats["calls"] += 1
        try:
            if feature.kind == "command":
                checked_command(live.obj, feature.name, raw_args,
                                mode=mode, seed=budget.seed)
            else:
                checked_query(live.obj, feature.name, raw_args,
                              mode=mode, seed=budget.seed)
        except PreconditionRejected:
            stats["rejected"] += 1
            continue
        except ContractViolation as v:
            stats["violations"] += 1
            trace = [list(e) for e in live.trace]
            trace.append(["call", feature.name, encoded])
            report = FaultReport(violation=json.loads(v.to_json()), trace=trace)
            confirmed = replay(report, faults=faults, mode=mode)
            if confirmed is None or confirmed.clause != v.clause:
                raise RuntimeError(
                    f"fault report failed self-validation: {v.clause}")
            reports.append(report)
            pool.remove(live)
            # The call may have mutated its container arguments before the
            # violation surfaced; their traces are stale too.
            for a in args:
                if isinstance(a, _LiveObject) and a in pool:
                    pool.remove(a)
            continue
        stats["passed"] += 1
        live.trace.append(["call", feature.name, encoded])
        # Container arguments were mutated outside their own trace: retire.
        for a in args:
            if isinstance(a, _LiveObject) and a in pool and feature.kind == "command":
                pool.remove(a)
        if _state_size(abstract_state(live.obj)) > MAX_OBJECT_SIZE:
            pool.remove(live)
    return CampaignResult(stats=stats, reports=reports)
