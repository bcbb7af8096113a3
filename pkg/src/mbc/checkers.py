"""Brute-force checkers over enumerated small state spaces:

- precondition soundness (agreement across concrete objects with equal
  abstract state),
- postcondition completeness for commands and queries (all satisfying
  poststates/results equivalent),
- bounded observational adequacy of the chosen model (model-tuple equality
  versus indistinguishability under call sequences of depth <= k).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from types import SimpleNamespace

from . import containers
from .contracts import (
    AbstractState, Ctx, REGISTRY, abstract_state, expand_frame,
    serialize_state,
)
from .model_math import MSeq, Ref, identity_relation, total_relation


class EnumerationRefused(Exception):
    """Requested bounds would enumerate too many states."""


@dataclass
class EnumerationConfig:
    universe: int = 2      # number of distinct element tokens
    max_size: int = 3      # max model structure size
    max_int: int = 4       # magnitude bound for integer arguments
    depth: int = 3         # call depth for adequacy
    state_limit: int = 10**7

    def elements(self):
        return [Ref(chr(ord("a") + i)) for i in range(self.universe)]

    def relations(self):
        elems = self.elements()
        return [identity_relation(elems), total_relation(elems)]

    def estimate(self) -> int:
        # Rough upper bound: sequences over the universe times cursor slots.
        seqs = sum(self.universe**k for k in range(self.max_size + 1))
        return seqs * (self.max_size + 2)


@dataclass
class CheckVerdict:
    feature: str
    pre_sound: bool = True
    post_sound: bool = True
    post_complete: bool = True
    tag: str | None = None
    witnesses: list = field(default_factory=list)
    states_checked: int = 0

    def to_dict(self):
        return {
            "feature": self.feature,
            "pre_sound": self.pre_sound,
            "post_sound": self.post_sound,
            "post_complete": self.post_complete,
            "tag": self.tag,
            "witnesses": sorted(self.witnesses),
            "states_checked": self.states_checked,
        }


def _arg_pool(domain, cfg: EnumerationConfig):
    kind = domain[0]
    if kind == "element":
        return cfg.elements()
    if kind == "int":
        lo, hi = domain[1], domain[2]
        return list(range(max(lo, -cfg.max_int), min(hi, cfg.max_int) + 1))
    if kind == "bool":
        return [False, True]
    if kind == "path":
        maxlen = domain[1]
        pool = []
        for n in range(maxlen + 1):
            pool.extend(MSeq(bits) for bits in itertools.product([False, True], repeat=n))
        return pool
    if kind == "relation":
        return cfg.relations()
    if kind == "container":
        return None  # handled by the caller
    raise ValueError(f"unknown argument domain {domain!r}")


def _state_size(state: AbstractState) -> int:
    sizes = [getattr(v, "count") for v in state.values if hasattr(v, "count")]
    return max(sizes, default=0)


def _raw_pre(feature, state, args, ref):
    if feature.pre is None:
        return True
    return feature.pre(state, args, ref)


@dataclass
class Enumerated:
    """One reachable concrete object with its build trace."""
    trace: tuple  # ((ctor_name, args), (feature_name, args), ...)
    obj: object
    state: AbstractState


def _build(spec, trace, faults=None):
    (ctor_name, ctor_args), *calls = trace
    ctor = next(c for c in spec.constructors if c.name == ctor_name)
    obj = ctor.body(*ctor_args, faults=faults)
    for fname, args in calls:
        spec.features[fname].body(obj, *args)
    return obj


def enumerate_states(name: str, cfg: EnumerationConfig, features=None):
    """All reachable concrete objects within the size bounds, with traces.

    Objects are produced by breadth-first search over constructor and
    command calls; exploration continues only from states not seen before,
    but every produced object is kept, so one abstract state may appear
    with several concrete layouts.  Commands taking container arguments are
    not used for reachability (the remaining commands already cover the
    state space of every registered type).
    """
    spec = REGISTRY[name]
    if cfg.estimate() > cfg.state_limit:
        raise EnumerationRefused(
            f"estimated {cfg.estimate()} states exceeds limit {cfg.state_limit}")
    allowed = set(features) if features is not None else None

    produced = []
    seen = set()
    frontier = []
    for ctor in spec.constructors:
        pools = [_arg_pool(d, cfg) for d in ctor.arg_domains]
        for args in itertools.product(*pools):
            if not _raw_pre(ctor, None, args, None):
                continue
            obj = ctor.body(*args)
            e = Enumerated(((ctor.name, args),), obj, abstract_state(obj))
            produced.append(e)
            if e.state not in seen:
                seen.add(e.state)
                frontier.append(e)

    commands = [f for f in spec.commands()
                if (allowed is None or f.name in allowed)
                and not any(d[0] == "container" for d in f.arg_domains)]
    while frontier:
        cur = frontier.pop()
        for feat in commands:
            pools = [_arg_pool(d, cfg) for d in feat.arg_domains]
            for args in itertools.product(*pools):
                if not _raw_pre(feat, cur.state, args, cur.obj.ref):
                    continue
                obj = _build(spec, cur.trace)
                feat.body(obj, *args)
                state = abstract_state(obj)
                if _state_size(state) > cfg.max_size:
                    continue
                e = Enumerated(cur.trace + ((feat.name, args),), obj, state)
                produced.append(e)
                if len(produced) > cfg.state_limit:
                    raise EnumerationRefused(
                        f"more than {cfg.state_limit} states produced")
                if e.state not in seen:
                    seen.add(e.state)
                    frontier.append(e)
    return produced


def distinct_states(enumerated):
    """One representative per abstract state, in deterministic order."""
    reps = {}
    for e in enumerated:
        reps.setdefault(e.state, e)
    return sorted(reps.values(), key=lambda e: serialize_state(e.state))


def _arg_combos(feature, cfg, container_reps):
    """Cartesian product of argument pools; container arguments are drawn
    from the enumerated states of their type (as symbolic views carrying a
    replayable representative)."""
    pools = []
    for d in feature.arg_domains:
        if d[0] == "container":
            reps = container_reps(d[1])
            pools.append([SimpleNamespace(ref=Ref(f"arg{j}"), old=r.state,
                                          new=None, rep=r)
                          for j, r in enumerate(reps)])
        else:
            pools.append(_arg_pool(d, cfg))
    return itertools.product(*pools)


def _model_clauses(feature, signature):
    if feature.kind == "command":
        clauses = expand_frame(feature, signature)
    else:
        clauses = list(feature.clauses)
    return [c for c in clauses if c.tag == "model"]


def check_precondition_soundness(name, feature_name, cfg) -> CheckVerdict:
    """pre must agree on every pair of concrete objects with equal abstract
    state (for every argument combination)."""
    spec = REGISTRY[name]
    feature = spec.features[feature_name]
    verdict = CheckVerdict(f"{name}.{feature_name}", tag=feature.incompleteness_tag)
    if feature.pre is None:
        verdict.states_checked = 0
        return verdict
    groups = {}
    for e in enumerate_states(name, cfg):
        groups.setdefault(e.state, []).append(e)
    cstates = _rep_cache(cfg)
    for state, members in groups.items():
        if len(members) < 2:
            continue
        for args in _arg_combos(feature, cfg, cstates):
            vals = {feature.pre(abstract_state(m.obj), args, m.obj.ref)
                    for m in members}
            verdict.states_checked += len(members)
            if len(vals) > 1:
                verdict.pre_sound = False
                verdict.witnesses.append(
                    f"pre disagreement at {serialize_state(state)}")
    return verdict


def _rep_cache(cfg):
    cache = {}

    def reps(n):
        if n not in cache:
            cache[n] = distinct_states(enumerate_states(n, cfg))
        return cache[n]

    return reps


def _post_holds(clauses, old, new, args, result):
    ctx = Ctx(old=old, new=new, args=args, result=result, obj=None, cold=None)
    try:
        return all(c.fn(ctx) for c in clauses)
    except Exception:
        # A clause that escapes its domain on a candidate state rejects it.
        return False


def check_command_completeness(name, feature_name, cfg) -> CheckVerdict:
    """For every valid prestate and argument combination, all candidate
    poststates satisfying the effective (frame-expanded) postcondition must
    be abstractly equal.

    Candidates are drawn from the enumerated state space.  For commands
    with container arguments the argument poststates are fixed to the ones
    the implementation actually produces, and only the target poststate is
    varied (all registered contracts constrain target and argument
    poststates independently).
    """
    spec = REGISTRY[name]
    feature = spec.features[feature_name]
    verdict = CheckVerdict(f"{name}.{feature_name}", tag=feature.incompleteness_tag)
    clauses = _model_clauses(feature, spec.signature)
    prestates = distinct_states(enumerate_states(name, cfg))
    candidates = [e.state for e in prestates]
    reps = _rep_cache(cfg)

    has_container_args = any(d[0] == "container" for d in feature.arg_domains)
    for pre_e in prestates:
        for args in _arg_combos(feature, cfg, reps):
            if not _raw_pre(feature, pre_e.state, args, pre_e.obj.ref):
                continue
            if has_container_args:
                # Execute once to pin the argument poststates.
                obj = _build(spec, pre_e.trace)
                raw_args = []
                for d, a in zip(feature.arg_domains, args):
                    if d[0] == "container":
                        raw_args.append(_build(REGISTRY[d[1]], a.rep.trace))
                    else:
                        raw_args.append(a)
                feature.body(obj, *raw_args)
                for d, a, r in zip(feature.arg_domains, args, raw_args):
                    if d[0] == "container":
                        a.new = abstract_state(r)
                eval_args = tuple(args)
            else:
                eval_args = args
            satisfying = [c for c in candidates
                          if _post_holds(clauses, pre_e.state, c, eval_args, None)]
            verdict.states_checked += len(candidates)
            if len(satisfying) > 1:
                verdict.post_complete = False
                verdict.witnesses.append(
                    f"from {serialize_state(pre_e.state)}: "
                    f"{serialize_state(satisfying[0])} vs "
                    f"{serialize_state(satisfying[1])}")
    return verdict


def _result_candidates(feature, cfg):
    d = feature.result_domain
    if d is None:
        return []
    if d[0] == "bool":
        return [False, True]
    if d[0] == "int":
        return list(range(-cfg.max_int, max(cfg.max_int, cfg.max_size) + 2))
    if d[0] == "element":
        return cfg.elements()
    if d[0] == "container":
        return [e.state for e in distinct_states(
            enumerate_states(d[1], cfg))]
    raise ValueError(f"unknown result domain {d!r}")


def check_query_completeness(name, feature_name, cfg) -> CheckVerdict:
    """All results satisfying the postcondition must be equivalent: by
    abstract state for value-bound queries, by identity token for
    reference-bound ones."""
    spec = REGISTRY[name]
    feature = spec.features[feature_name]
    verdict = CheckVerdict(f"{name}.{feature_name}", tag=feature.incompleteness_tag)
    clauses = _model_clauses(feature, spec.signature)
    prestates = distinct_states(enumerate_states(name, cfg))
    candidates = _result_candidates(feature, cfg)
    reps = _rep_cache(cfg)
    for pre_e in prestates:
        for args in _arg_combos(feature, cfg, reps):
            if not _raw_pre(feature, pre_e.state, args, pre_e.obj.ref):
                continue
            satisfying = [c for c in candidates
                          if _post_holds(clauses, pre_e.state, pre_e.state, args, c)]
            verdict.states_checked += len(candidates)
            if len(satisfying) > 1:
                verdict.post_complete = False
                a, b = satisfying[0], satisfying[1]
                verdict.witnesses.append(
                    f"from {serialize_state(pre_e.state)}: {a!r} vs {b!r}")
    return verdict


def check_constructor_completeness(name, ctor_name, cfg) -> CheckVerdict:
    """Constructors are value-bound queries returning fresh objects."""
    spec = REGISTRY[name]
    ctor = next(c for c in spec.constructors if c.name == ctor_name)
    verdict = CheckVerdict(f"{name}.{ctor_name}", tag=ctor.incompleteness_tag)
    clauses = [c for c in ctor.clauses if c.tag == "model"]
    candidates = [e.state for e in distinct_states(enumerate_states(name, cfg))]
    reps = _rep_cache(cfg)
    for args in _arg_combos(ctor, cfg, reps):
        if not _raw_pre(ctor, None, args, None):
            continue
        satisfying = [c for c in candidates
                      if _post_holds(clauses, None, c, args, None)]
        verdict.states_checked += len(candidates)
        if len(satisfying) > 1:
            verdict.post_complete = False
            verdict.witnesses.append(
                f"constructor: {serialize_state(satisfying[0])} vs "
                f"{serialize_state(satisfying[1])}")
    return verdict


@dataclass
class AdequacyVerdict:
    container: str
    depth: int
    adequate: bool = True
    failures: list = field(default_factory=list)
    pairs_checked: int = 0

    def to_dict(self):
        return {
            "container": self.container,
            "depth": self.depth,
            "adequate": self.adequate,
            "failures": sorted(self.failures),
            "pairs_checked": self.pairs_checked,
        }


def check_observational_adequacy(name, cfg, model_fn=None, features=None):
    """Compare model-tuple equality against bounded indistinguishability.

    ``model_fn`` maps a concrete object to its model tuple (defaults to the
    registered model queries); ``features`` optionally restricts the
    interface.  Verdicts are valid up to call depth ``cfg.depth`` only.
    """
    spec = REGISTRY[name]
    if model_fn is None:
        model_fn = lambda obj: abstract_state(obj).values
    allowed = set(features) if features is not None else None

    def enabled(feats):
        return [f for f in feats if allowed is None or f.name in allowed]

    commands = [f for f in enabled(spec.commands())
                if not any(d[0] == "container" for d in f.arg_domains)]
    queries = [f for f in enabled(spec.queries())
               if not any(d[0] == "container" for d in f.arg_domains)]

    # Representatives: one object per *full* concrete-model state, so pairs
    # cover both equal and distinct variant models.
    reps = {}
    for e in enumerate_states(name, cfg, features=allowed):
        reps.setdefault(e.state, e)
    reps = sorted(reps.values(), key=lambda e: serialize_state(e.state))

    def query_results(obj, feat, args):
        state = abstract_state(obj)
        if not _raw_pre(feat, state, args, obj.ref):
            return ("rejected",)
        result = feat.body(obj, *args)
        if hasattr(result, "spec_name"):
            return ("value", tuple(abstract_state(result).values))
        if isinstance(result, Ref):
            # Reference-bound results are compared as the element tokens
            # the client can observe.
            return ("ref", result.token)
        return ("value", result)

    def distinguishable(trace1, trace2, depth):
        o1 = _build(spec, trace1)
        o2 = _build(spec, trace2)
        for feat in queries:
            for args in _arg_combos(feat, cfg, lambda n: []):
                if query_results(o1, feat, args) != query_results(o2, feat, args):
                    return True
        if depth == 0:
            return False
        s1 = abstract_state(o1)
        s2 = abstract_state(o2)
        for feat in commands:
            for args in _arg_combos(feat, cfg, lambda n: []):
                p1 = _raw_pre(feat, s1, args, o1.ref)
                p2 = _raw_pre(feat, s2, args, o2.ref)
                if p1 != p2:
                    return True
                if not p1:
                    continue
                if distinguishable(trace1 + ((feat.name, args),),
                                   trace2 + ((feat.name, args),), depth - 1):
                    return True
        return False

    verdict = AdequacyVerdict(name, cfg.depth)
    for e1, e2 in itertools.combinations(reps, 2):
        verdict.pairs_checked += 1
        same_model = model_fn(e1.obj) == model_fn(e2.obj)
        dist = distinguishable(e1.trace, e2.trace, cfg.depth)
        if same_model and dist:
            verdict.adequate = False
            verdict.failures.append(
                f"soundness: model-equal but distinguishable: "
                f"{serialize_state(e1.state)} vs {serialize_state(e2.state)}")
        elif not same_model and not dist:
            verdict.adequate = False
            verdict.failures.append(
                f"minimality: model-distinct but indistinguishable: "
                f"{serialize_state(e1.state)} vs {serialize_state(e2.state)}")
    return verdict


BENIGN_TAGS = {"nondeterministic", "inheritance", "information-hiding"}


def classify_feature(name, feature_name, cfg) -> CheckVerdict:
    spec = REGISTRY[name]
    if any(c.name == feature_name for c in spec.constructors):
        return check_constructor_completeness(name, feature_name, cfg)
    feature = spec.features[feature_name]
    pre_v = check_precondition_soundness(name, feature_name, cfg)
    if feature.kind == "command":
        v = check_command_completeness(name, feature_name, cfg)
    else:
        v = check_query_completeness(name, feature_name, cfg)
    v.pre_sound = pre_v.pre_sound
    v.witnesses.extend(pre_v.witnesses)
    return v


def classify_library(cfg, names=None) -> dict:
    """Per-feature verdicts across registered containers, with summary
    counts.  An incomplete feature without a benign-cause tag is an error
    (it signals a specification bug)."""
    names = list(names) if names is not None else list(containers.CONTAINER_NAMES)
    report = {"containers": {}, "summary": {}}
    total = 0
    incomplete = 0
    errors = []
    for name in names:
        spec = REGISTRY[name]
        per = {}
        for feature_name in list(spec.features) + [c.name for c in spec.constructors]:
            v = classify_feature(name, feature_name, cfg)
            per[feature_name] = v.to_dict()
            total += 1
            if not v.post_complete:
                incomplete += 1
                if v.tag not in BENIGN_TAGS:
                    errors.append(f"{name}.{feature_name}: incomplete without benign tag")
            elif v.tag is not None and v.tag not in BENIGN_TAGS:
                errors.append(f"{name}.{feature_name}: unknown tag {v.tag!r}")
        report["containers"][name] = per
    report["summary"] = {
        "features": total,
        "incomplete": incomplete,
        "incomplete_pct": round(100.0 * incomplete / total, 1) if total else 0.0,
        "errors": sorted(errors),
    }
    return report


def report_to_json(report) -> str:
    return json.dumps(report, ensure_ascii=False, sort_keys=True, indent=2)
