"""Contract engine: model signatures, abstract states, frame expansion,
and runtime checking of pre/postconditions, invariants, and abstract purity.

Container types register a :class:`ContainerSpec` describing their model
queries and contracted features; the functions here evaluate the contracts
against live objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

from .model_math import ModelValue, Ref, to_text


class UsageError(Exception):
    """The engine was called inconsistently (e.g. mismatched signatures)."""


class ConfigurationError(Exception):
    """A contract references a name outside its model signature."""


class PreconditionRejected(Exception):
    """A call was filtered out by its precondition; not a fault."""

    def __init__(self, feature: str, reason: str = ""):
        super().__init__(f"{feature}: precondition rejected {reason}".rstrip())
        self.feature = feature


class ContractViolation(Exception):
    """A postcondition, invariant, or purity clause evaluated to false."""

    def __init__(self, feature, clause, kind, old_state, new_state, args,
                 seed=None, evaluated=()):
        super().__init__(f"{clause} [{kind}]")
        self.feature = feature
        self.clause = clause
        self.kind = kind  # precondition | postcondition | class-invariant | abstract-purity
        self.old_state = old_state
        self.new_state = new_state
        self.args = args
        self.seed = seed
        self.evaluated = tuple(evaluated)

    def to_json(self) -> str:
        return json.dumps({
            "feature": self.feature,
            "clause": self.clause,
            "kind": self.kind,
            "old_state": self.old_state,
            "new_state": self.new_state,
            "args": list(self.args),
            "seed": self.seed,
        }, ensure_ascii=False, sort_keys=True)


class ModelSignature:
    """Ordered model queries of a container type: (name, sort) pairs."""

    def __init__(self, entries: Sequence[Tuple[str, str]]):
        names = [n for n, _ in entries]
        if len(set(names)) != len(names) or not names:
            raise ConfigurationError("signature names must be unique and nonempty")
        self.entries = tuple(entries)
        self.names = tuple(names)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"ModelSignature({list(self.entries)!r})"


class AbstractState:
    """Tuple of model values, one per signature entry, in signature order."""

    __slots__ = ("signature", "values")

    def __init__(self, signature: ModelSignature, values: Sequence[ModelValue]):
        if len(values) != len(signature):
            raise UsageError("state arity does not match signature")
        self.signature = signature
        self.values = tuple(values)

    def __getattr__(self, name):
        sig = object.__getattribute__(self, "signature")
        vals = object.__getattribute__(self, "values")
        try:
            return vals[sig.names.index(name)]
        except ValueError:
            raise AttributeError(name) from None

    def __eq__(self, other):
        return (isinstance(other, AbstractState)
                and self.signature.names == other.signature.names
                and self.values == other.values)

    def __hash__(self):
        from .model_math import order_key
        return hash(tuple(order_key(v) for v in self.values))

    def __repr__(self):
        return f"AbstractState({serialize_state(self)})"


def serialize_state(state: AbstractState) -> str:
    return "(" + ", ".join(to_text(v) for v in state.values) + ")"


def abstract_equal(a: AbstractState, b: AbstractState) -> bool:
    if a.signature.names != b.signature.names:
        raise UsageError("abstract_equal on mismatched signatures")
    return a.values == b.values


@dataclass
class Ctx:
    """Evaluation context handed to postcondition clauses.

    Model clauses read only ``old``/``new`` abstract states, ``args``, and
    ``result``.  Classic clauses may additionally read concrete fields via
    ``obj`` and the pre-call snapshot ``cold``; both are None when a clause
    is evaluated symbolically (e.g. by the completeness checkers).
    """
    old: Optional[AbstractState]
    new: Optional[AbstractState]
    args: Tuple = ()
    result: object = None
    obj: object = None
    cold: Optional[dict] = None


@dataclass(frozen=True)
class Clause:
    """One postcondition clause; ``fn(ctx) -> bool``."""
    cid: str
    tag: str  # "model" or "classic"
    fn: Callable


@dataclass(frozen=True)
class InvariantClause:
    """One class-invariant clause; ``fn(obj, state) -> bool``."""
    cid: str
    tag: str
    fn: Callable


@dataclass
class Feature:
    name: str
    kind: str  # "command" | "query" | "constructor"
    binding: str = "value"  # for queries: "value" | "reference"
    pre: Optional[Callable] = None  # fn(state, args, target_ref) -> bool
    body: Optional[Callable] = None  # fn(obj, *args) -> result
    clauses: Tuple[Clause, ...] = ()
    mentioned: frozenset = frozenset()
    relevant: frozenset = frozenset()
    incompleteness_tag: Optional[str] = None  # nondeterministic | inheritance | information-hiding
    arg_domains: Tuple = ()
    result_domain: Optional[object] = None


class ContainerSpec:
    """Self-description of a container type for the engine and the tools."""

    def __init__(self, name, signature, factory, features, invariants=(),
                 constructors=(), snapshot=None):
        self.name = name
        self.signature = signature
        self.factory = factory
        self.features = {f.name: f for f in features}
        self.invariants = tuple(invariants)
        self.constructors = tuple(constructors)
        self.snapshot = snapshot or (lambda obj: {})
        for f in features:
            for s in f.mentioned | f.relevant:
                if s not in signature.names:
                    raise ConfigurationError(
                        f"{name}.{f.name}: unknown model query {s!r}")

    def commands(self):
        return [f for f in self.features.values() if f.kind == "command"]

    def queries(self):
        return [f for f in self.features.values() if f.kind == "query"]


REGISTRY: dict = {}


def register(spec: ContainerSpec) -> ContainerSpec:
    REGISTRY[spec.name] = spec
    return spec


def spec_of(obj) -> ContainerSpec:
    try:
        return REGISTRY[obj.spec_name]
    except (AttributeError, KeyError):
        raise UsageError(f"object {obj!r} is not a registered container") from None


def abstract_state(obj) -> AbstractState:
    """The tuple of current model-query values of a registered object."""
    spec = spec_of(obj)
    values = [getattr(obj, "model_" + name)() for name in spec.signature.names]
    return AbstractState(spec.signature, values)


def reference_equal(x, y) -> bool:
    return x.ref == y.ref


def object_equal(x, y) -> bool:
    return abstract_equal(abstract_state(x), abstract_state(y))


class ArgView:
    """A container argument as seen by contract clauses: identity token
    plus its abstract states before and after the call."""

    __slots__ = ("ref", "old", "new", "obj", "cold")

    def __init__(self, obj):
        self.obj = obj
        self.ref = obj.ref
        self.old = abstract_state(obj)
        self.new = None
        self.cold = spec_of(obj).snapshot(obj)

    def refresh(self):
        self.new = abstract_state(self.obj)


def _is_container(x) -> bool:
    return hasattr(x, "spec_name") and x.spec_name in REGISTRY


def _views(args):
    return tuple(ArgView(a) if _is_container(a) else a for a in args)


def _serialize_arg(a) -> str:
    if isinstance(a, ArgView):
        return f"{a.ref.token}:{serialize_state(a.old)}"
    if isinstance(a, (bool, int)):
        return str(a)
    return to_text(a)


@dataclass(frozen=True)
class OldSnapshot:
    """Pre-call abstract states of the target and its container arguments."""
    target: AbstractState
    arguments: Tuple[AbstractState, ...] = ()


def expand_frame(feature: Feature, signature: ModelSignature):
    """Effective clause list: explicit clauses, then one implicit
    ``s = old s`` clause for every model query not mentioned or relevant."""
    if feature.kind != "command":
        raise UsageError("frame expansion applies to commands")
    clauses = list(feature.clauses)
    for s in signature.names:
        if s in feature.mentioned or s in feature.relevant:
            continue
        def frame_fn(ctx, _q=s):
            return getattr(ctx.new, _q) == getattr(ctx.old, _q)
        clauses.append(Clause(f"{feature.name}/frame:{s}", "model", frame_fn))
    return clauses


def _mode_keeps(clause_tag: str, mode: str) -> bool:
    return mode == "model" or clause_tag == "classic"


def _check_invariants(obj, feature_name, old_text, args_text, mode, seed):
    spec = spec_of(obj)
    state = abstract_state(obj)
    for inv in spec.invariants:
        if not _mode_keeps(inv.tag, mode):
            continue
        if not inv.fn(obj, state):
            raise ContractViolation(
                feature_name, f"{spec.name}/invariant:{inv.cid}", "class-invariant",
                old_text, serialize_state(state), args_text, seed=seed)


def checked_command(obj, feature_name, args=(), mode="model", seed=None):
    """Run a command under contract checking.

    Raises PreconditionRejected when the precondition filters the call,
    ContractViolation on any false postcondition or invariant clause.
    """
    spec = spec_of(obj)
    feature = spec.features[feature_name]
    views = _views(args)
    old = abstract_state(obj)
    cold = spec.snapshot(obj)
    args_text = tuple(_serialize_arg(v) for v in views)
    if feature.pre is not None and not feature.pre(old, views, obj.ref):
        raise PreconditionRejected(f"{spec.name}.{feature_name}")
    old_text = serialize_state(old)

    raw = tuple(v.obj if isinstance(v, ArgView) else v for v in views)
    feature.body(obj, *raw)

    new = abstract_state(obj)
    for v in views:
        if isinstance(v, ArgView):
            v.refresh()
    ctx = Ctx(old=old, new=new, args=views, result=None, obj=obj, cold=cold)
    evaluated = []
    for clause in expand_frame(feature, spec.signature):
        if not _mode_keeps(clause.tag, mode):
            continue
        evaluated.append(clause.cid)
        if not clause.fn(ctx):
            raise ContractViolation(
                feature_name, clause.cid, "postcondition",
                old_text, serialize_state(new), args_text,
                seed=seed, evaluated=evaluated)
    _check_invariants(obj, feature_name, old_text, args_text, mode, seed)
    for v in views:
        if isinstance(v, ArgView):
            _check_invariants(v.obj, feature_name, old_text, args_text, mode, seed)
    return None


def checked_query(obj, feature_name, args=(), mode="model", seed=None):
    """Run a query under contract checking, including abstract purity:
    the target's and every container argument's abstract state must be
    unchanged by the call."""
    spec = spec_of(obj)
    feature = spec.features[feature_name]
    views = _views(args)
    old = abstract_state(obj)
    cold = spec.snapshot(obj)
    args_text = tuple(_serialize_arg(v) for v in views)
    if feature.pre is not None and not feature.pre(old, views, obj.ref):
        raise PreconditionRejected(f"{spec.name}.{feature_name}")
    old_text = serialize_state(old)

    raw = tuple(v.obj if isinstance(v, ArgView) else v for v in views)
    result = feature.body(obj, *raw)

    new = abstract_state(obj)
    if not abstract_equal(old, new):
        raise ContractViolation(
            feature_name, f"{feature_name}/purity:target", "abstract-purity",
            old_text, serialize_state(new), args_text, seed=seed)
    for v in views:
        if isinstance(v, ArgView):
            v.refresh()
            if not abstract_equal(v.old, v.new):
                raise ContractViolation(
                    feature_name, f"{feature_name}/purity:argument", "abstract-purity",
                    old_text, serialize_state(v.new), args_text, seed=seed)

    result_view = abstract_state(result) if _is_container(result) else result
    ctx = Ctx(old=old, new=new, args=views, result=result_view, obj=obj, cold=cold)
    evaluated = []
    for clause in feature.clauses:
        if not _mode_keeps(clause.tag, mode):
            continue
        evaluated.append(clause.cid)
        if not clause.fn(ctx):
            raise ContractViolation(
                feature_name, clause.cid, "postcondition",
                old_text, serialize_state(new), args_text,
                seed=seed, evaluated=evaluated)
    return result


def checked_constructor(spec: ContainerSpec, ctor_name: str, args=(),
                        mode="model", seed=None, faults=None):
    """Build an object through a registered constructor and check its
    postcondition and the class invariant."""
    ctor = next(c for c in spec.constructors if c.name == ctor_name)
    views = _views(args)
    args_text = tuple(_serialize_arg(v) for v in views)
    if ctor.pre is not None and not ctor.pre(None, views, None):
        raise PreconditionRejected(f"{spec.name}.{ctor_name}")
    raw = tuple(v.obj if isinstance(v, ArgView) else v for v in views)
    obj = ctor.body(*raw, faults=faults)
    state = abstract_state(obj)
    ctx = Ctx(old=None, new=state, args=views, result=None, obj=obj,
              cold=None)
    evaluated = []
    for clause in ctor.clauses:
        if not _mode_keeps(clause.tag, mode):
            continue
        evaluated.append(clause.cid)
        if not clause.fn(ctx):
            raise ContractViolation(
                ctor_name, clause.cid, "postcondition",
                "()", serialize_state(state), args_text,
                seed=seed, evaluated=evaluated)
    _check_invariants(obj, ctor_name, "()", args_text, mode, seed)
    return obj


def check_linking_invariant(state: AbstractState, parent_query: str,
                            derive: Callable, predicate: Callable) -> bool:
    """True iff the linking predicate holds between the child state and the
    parent model value derived from it."""
    parent_value = derive(state)
    return bool(predicate(state, parent_value))
