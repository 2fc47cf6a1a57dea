"""Decision engine: decide density by searching the rewrite rules.

The engine runs a depth-first search over canonical forms (lex-smaller of a
vector and its complement).  Base rules settle a vector outright; Iff
reductions recurse into a smaller vector; SparseIf edges (merges, domination)
can only propagate sparseness upward.  Dense / Sparse verdicts are memoized
for the lifetime of the engine; Unknown is transient (a later call with a
bigger budget may do better).

Every settled verdict carries a Certificate: a chain of rewrite steps from
the queried vector down to a leaf (a base-rule hit, a trivially-sparse
dimension count, or a vacuous rewrite).  verify_certificate re-fires every
step independently of the engine, so certificates are checkable artifacts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import DimensionVector, Status, Verdict
from .oracle import oracle_decide
from . import rules
from .rules import (
    RewriteStep, BASE_DENSE, BASE_SPARSE, IFF, DENSE_IF, SPARSE_IF,
    COMPLEMENT, DOMINATION, TRIVIALLY_SPARSE, RULE_IDS,
)


class MalformedCertificateError(ValueError):
    """Certificate is structurally broken (as opposed to failing its checks)."""


@dataclass(frozen=True)
class Certificate:
    """A chain of rewrite steps proving a density verdict.  steps[0].input is
    the root; each later step's input is the previous step's single output;
    the final step is a leaf (base verdict, trivially-sparse, or vacuous)."""

    root: DimensionVector
    status: Status
    steps: tuple[RewriteStep, ...]


def _ts_step(d: DimensionVector) -> RewriteStep:
    return RewriteStep(TRIVIALLY_SPARSE, BASE_SPARSE, (("expected", d.expected_stab_dim),), d, ())


# base rules in search order; reduction rule order favors ambient decrease
_BASE_ORDER = (rules.SUM_DENSE, rules.POINTS_BASE, rules.LENGTH4,
               rules.SIZE_TABLE, rules.BALANCED, rules.SUBSEQ_2N)
_REDUCTION_ORDER = (rules.EXCESS_L1, rules.L3, rules.L8, rules.L9,
                    rules.L6, rules.L7, rules.L10)


class Engine:
    def __init__(self, budget: int = 50_000, subset_cap: int = rules.SUBSET_ENUM_CAP,
                 use_size_table: bool = True, use_balanced: bool = True,
                 use_domination: bool = True, domination_ambient_cap: int = 12,
                 domination_len_cap: int = 6):
        self.budget = budget
        self.subset_cap = subset_cap
        self.use_size_table = use_size_table
        self.use_balanced = use_balanced
        self.use_domination = use_domination
        self.domination_ambient_cap = domination_ambient_cap
        self.domination_len_cap = domination_len_cap
        self.memo: dict[DimensionVector, Verdict] = {}
        self.sparse_seen: dict[int, set[DimensionVector]] = {}
        self._seed_cache: dict[int, tuple[DimensionVector, ...]] = {}
        self.last_nodes = 0
        self.last_budget_exhausted = False

    # -- domination seed store ------------------------------------------

    def _domination_seeds(self, n: int) -> tuple[DimensionVector, ...]:
        """Short vectors in ambient n that the base rules alone prove sparse
        (and that are not trivially sparse, which domination subsumes).
        Static per ambient, so batch decide order cannot change verdicts."""
        if n in self._seed_cache:
            return self._seed_cache[n]
        seeds: list[DimensionVector] = []
        if n <= self.domination_ambient_cap:
            for length in range(2, self.domination_len_cap + 1):
                for dims in itertools.combinations_with_replacement(range(1, n), length):
                    v = DimensionVector(dims, n)
                    if v.is_trivially_sparse:
                        continue
                    if self._base_verdict(v) is Status.SPARSE:
                        seeds.append(v)
        out = tuple(seeds)
        self._seed_cache[n] = out
        return out

    def _base_rule(self, rule_id: str, v: DimensionVector) -> Optional[RewriteStep]:
        if rule_id == rules.SIZE_TABLE and not self.use_size_table:
            return None
        if rule_id == rules.BALANCED and not self.use_balanced:
            return None
        fn = rules.BASE_RULES[rule_id]
        if rule_id == rules.SUBSEQ_2N:
            return fn(v, cap=self.subset_cap)
        return fn(v)

    def _base_verdict(self, v: DimensionVector) -> Optional[Status]:
        for rid in _BASE_ORDER:
            step = self._base_rule(rid, v)
            if step is not None:
                return Status.DENSE if step.direction == BASE_DENSE else Status.SPARSE
        return None

    # -- search ----------------------------------------------------------

    def decide(self, d: DimensionVector, budget: Optional[int] = None) -> Verdict:
        limit = self.budget if budget is None else budget
        state = {"nodes": 0, "limit": limit, "exhausted": False}
        verdict = self._decide_rec(d, state, in_progress=set(), unknown={})
        self.last_nodes = state["nodes"]
        self.last_budget_exhausted = state["exhausted"]
        return verdict

    def _with_prefix(self, d: DimensionVector, prefix: tuple[RewriteStep, ...],
                     verdict: Verdict) -> Verdict:
        if not prefix:
            return verdict
        cert = Certificate(d, verdict.status, prefix + verdict.certificate.steps)
        return Verdict(verdict.status, trivially_sparse=verdict.trivially_sparse,
                       certificate=cert)

    def _settle(self, rep: DimensionVector, status: Status,
                steps: tuple[RewriteStep, ...], trivially_sparse: bool = False) -> Verdict:
        verdict = Verdict(status, trivially_sparse=trivially_sparse,
                          certificate=Certificate(rep, status, steps))
        self.memo[rep] = verdict
        if status is Status.SPARSE:
            self.sparse_seen.setdefault(rep.ambient, set()).add(rep)
        return verdict

    def _decide_rec(self, d: DimensionVector, state: dict,
                    in_progress: set, unknown: dict) -> Verdict:
        rep = d.canonical()
        prefix = () if rep == d else (rules.rule_complement(d),)

        hit = self.memo.get(rep)
        if hit is not None:
            return self._with_prefix(d, prefix, hit)
        if rep in in_progress or rep in unknown:
            return Verdict(Status.UNKNOWN)
        if state["nodes"] >= state["limit"]:
            state["exhausted"] = True
            return Verdict(Status.UNKNOWN)
        state["nodes"] += 1

        if rep.is_trivially_sparse:
            return self._with_prefix(
                d, prefix, self._settle(rep, Status.SPARSE, (_ts_step(rep),),
                                        trivially_sparse=True))

        for rid in _BASE_ORDER:
            step = self._base_rule(rid, rep)
            if step is not None:
                status = Status.DENSE if step.direction == BASE_DENSE else Status.SPARSE
                return self._with_prefix(d, prefix, self._settle(rep, status, (step,)))

        in_progress.add(rep)
        try:
            verdict = self._search_reductions(rep, state, in_progress, unknown)
        finally:
            in_progress.discard(rep)
        if verdict is not None:
            return self._with_prefix(d, prefix, verdict)
        unknown[rep] = True
        return Verdict(Status.UNKNOWN)

    def _search_reductions(self, rep: DimensionVector, state: dict,
                           in_progress: set, unknown: dict) -> Optional[Verdict]:
        comp = rep.complement()
        sides = ((rep, ()), (comp, (rules.rule_complement(rep),)))

        if self.use_domination:
            step = rules.rule_domination_sparse(rep, self._domination_seeds(rep.ambient))
            if step is not None and step.params_dict().get("strict"):
                child = self._decide_rec(step.outputs[0], state, in_progress, unknown)
                if child.status is Status.SPARSE:
                    return self._settle(rep, Status.SPARSE,
                                        (step,) + child.certificate.steps)

        for rid in _REDUCTION_ORDER:
            fn = rules.REDUCTION_RULES[rid]
            for side, side_prefix in sides:
                if rid in (rules.L3, rules.L10):
                    steps = fn(side, cap=self.subset_cap)
                else:
                    steps = fn(side)
                for step in steps:
                    if step.is_vacuous:
                        return self._settle(rep, Status.DENSE, side_prefix + (step,))
                    child = self._decide_rec(step.outputs[0], state, in_progress, unknown)
                    if child.status is not Status.UNKNOWN:
                        return self._settle(rep, child.status,
                                            side_prefix + (step,) + child.certificate.steps)

        for side, side_prefix in sides:
            for step in rules.rule_merge_sparse(side, cap=self.subset_cap):
                child = self._decide_rec(step.outputs[0], state, in_progress, unknown)
                if child.status is Status.SPARSE:
                    return self._settle(rep, Status.SPARSE,
                                        side_prefix + (step,) + child.certificate.steps)
        return None

    # -- oracle fallback ---------------------------------------------------

    def decide_with_oracle(self, d: DimensionVector, budget: Optional[int] = None,
                           samples: int = 3, seed: int = 0,
                           primes: Optional[Iterable[int]] = None,
                           mode: str = "modular") -> Verdict:
        verdict = self.decide(d, budget=budget)
        if verdict.status is not Status.UNKNOWN:
            return verdict
        report = oracle_decide(d, samples=samples, primes=primes, mode=mode, seed=seed)
        status = Status.DENSE if report.is_dense else Status.SPARSE
        return Verdict(status, trivially_sparse=d.is_trivially_sparse, oracle=report)


# ---------------------------------------------------------------------------
# certificate verification (independent of engine state)
# ---------------------------------------------------------------------------

_LEAF_DENSE = "dense"
_LEAF_SPARSE = "sparse"


def _leaf_kind(step: RewriteStep) -> Optional[str]:
    if step.outputs:
        return None
    if step.rule_id == TRIVIALLY_SPARSE:
        return _LEAF_SPARSE if step.direction == BASE_SPARSE else None
    if step.direction == BASE_DENSE:
        return _LEAF_DENSE
    if step.direction == BASE_SPARSE:
        return _LEAF_SPARSE
    if step.is_vacuous and step.direction == IFF:
        return _LEAF_DENSE
    return None


def _refire_matches(step: RewriteStep, subset_cap: int) -> bool:
    rid = step.rule_id
    if rid == TRIVIALLY_SPARSE:
        return step.input.is_trivially_sparse and step == _ts_step(step.input)
    if rid == COMPLEMENT:
        return (step.direction == IFF and not step.params
                and step.outputs == (step.input.complement(),))
    if rid == DOMINATION:
        p = step.params_dict()
        side = step.input if p.get("side") == "self" else step.input.complement()
        return (len(step.outputs) == 1 and step.direction == SPARSE_IF
                and side.dominates(step.outputs[0]))
    if rid in rules.BASE_RULES:
        fn = rules.BASE_RULES[rid]
        made = fn(step.input, cap=subset_cap) if rid == rules.SUBSEQ_2N else fn(step.input)
        return made == step
    if rid in rules.REDUCTION_RULES:
        fn = rules.REDUCTION_RULES[rid]
        if rid in (rules.L3, rules.L10, rules.L4_MERGE):
            made = fn(step.input, cap=subset_cap)
        else:
            made = fn(step.input)
        return step in made
    return False


def verify_certificate(cert: Certificate, subset_cap: int = rules.SUBSET_ENUM_CAP) -> bool:
    """Re-check a certificate from scratch.  Raises MalformedCertificateError
    for structural damage; returns False when the structure is fine but some
    step does not re-fire or the polarity does not support the claimed status.
    """
    if not isinstance(cert, Certificate):
        raise MalformedCertificateError("not a Certificate")
    if not isinstance(cert.root, DimensionVector) or not isinstance(cert.steps, tuple):
        raise MalformedCertificateError("bad root or steps container")
    if cert.status not in (Status.DENSE, Status.SPARSE):
        raise MalformedCertificateError("certificate must claim Dense or Sparse")
    if not cert.steps:
        raise MalformedCertificateError("empty step chain")
    for step in cert.steps:
        if not isinstance(step, RewriteStep):
            raise MalformedCertificateError("non-step in chain")
        if step.rule_id not in RULE_IDS and step.rule_id != TRIVIALLY_SPARSE:
            raise MalformedCertificateError(f"unknown rule_id {step.rule_id!r}")
        if step.direction not in (IFF, DENSE_IF, SPARSE_IF, BASE_DENSE, BASE_SPARSE):
            raise MalformedCertificateError(f"unknown direction {step.direction!r}")
    if cert.steps[0].input != cert.root:
        raise MalformedCertificateError("chain does not start at root")
    for prev, nxt in zip(cert.steps, cert.steps[1:]):
        if len(prev.outputs) != 1 or prev.outputs[0] != nxt.input:
            raise MalformedCertificateError("broken chain link")
        if prev.direction not in (IFF, DENSE_IF, SPARSE_IF):
            raise MalformedCertificateError("interior step is not an edge")
    leaf = _leaf_kind(cert.steps[-1])
    if leaf is None:
        raise MalformedCertificateError("chain does not end in a leaf")

    # polarity: propagate the leaf verdict back to the root
    dense = leaf == _LEAF_DENSE
    for step in reversed(cert.steps[:-1]):
        if step.direction == IFF:
            continue
        if step.direction == DENSE_IF and dense:
            continue
        if step.direction == SPARSE_IF and not dense:
            continue
        return False
    if (cert.status is Status.DENSE) != dense:
        return False

    return all(_refire_matches(step, subset_cap) for step in cert.steps)


# module-level convenience API on a shared engine
_DEFAULT_ENGINE = Engine()


def decide(d: DimensionVector, budget: int = 50_000) -> Verdict:
    return _DEFAULT_ENGINE.decide(d, budget=budget)


def decide_with_oracle(d: DimensionVector, budget: Optional[int] = None,
                       samples: int = 3, seed: int = 0,
                       primes: Optional[Iterable[int]] = None,
                       mode: str = "modular") -> Verdict:
    return _DEFAULT_ENGINE.decide_with_oracle(
        d, budget=budget, samples=samples, seed=seed, primes=primes, mode=mode)
