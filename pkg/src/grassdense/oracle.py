"""Randomized stabilizer-dimension oracle.

The diagonal action has a dense orbit iff a generic configuration's
stabilizer in PGL(n) has dimension exactly

    expected = n^2 - 1 - sum d_i (n - d_i),

and by upper semicontinuity of stabilizer dimension a *single* sampled point
achieving the expected dimension already certifies density (the witness is a
certificate; it transfers across characteristic by spreading out).  Sparse
verdicts from sampling are one-sided Monte Carlo: every sample's stabilizer
exceeding `expected` is evidence, with error probability shrinking in
samples x primes.

The stabilizer Lie algebra of a configuration (U_1, ..., U_k) is cut out of
gl(n) by the conditions g U_i <= U_i, i.e.  Q_i g U_i = 0 with Q_i a left
annihilator of U_i; that is d_i (n - d_i) linear equations per subspace on
the n^2 entries of g.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .core import DimensionVector
from .linalg import (
    bareiss_rank,
    mod_nullspace,
    mod_rank,
    mod_row_reduce,
    random_prime,
    rational_nullspace,
)

log = logging.getLogger(__name__)

_REDRAW_CAP = 32
# Rational mode draws integer entries from a window wide enough that the
# degeneracy locus (a hypersurface of degree O(n^2)) is hit with negligible
# probability on the small n this mode is meant for.
_RATIONAL_ENTRY_BOUND = 5000


class VerdictClass(Enum):
    CERTIFIED_DENSE = "CertifiedDense"
    MONTE_CARLO_SPARSE = "MonteCarloSparse"


@dataclass(frozen=True)
class GenericConfiguration:
    """Sampled point of the product of Grassmannians, as coordinate matrices.

    subspaces[i] is n x d_i of full column rank, over F_prime (prime set) or
    over Z viewed inside Q (prime None).
    """

    ambient: int
    subspaces: tuple[np.ndarray, ...]
    prime: Optional[int]
    seed: int

    def __post_init__(self) -> None:
        for u in self.subspaces:
            if u.shape[0] != self.ambient:
                raise ValueError(f"subspace matrix shape {u.shape} does not match n={self.ambient}")


@dataclass(frozen=True)
class OracleReport:
    vector: DimensionVector
    mode: str  # "modular" | "rational"
    primes: tuple[Optional[int], ...]
    prime: Optional[int]  # prime of the decisive (or best) sample
    seed: int
    samples: int  # samples actually run
    stab_dims: tuple[tuple[Optional[int], int], ...]  # (prime, pgl stab dim) per sample
    stab_dim: Optional[int]  # best (minimal) observed; None when no sample ran
    expected: int
    verdict_class: VerdictClass
    anomalies: tuple[str, ...] = field(default=())

    @property
    def is_dense(self) -> bool:
        return self.verdict_class is VerdictClass.CERTIFIED_DENSE


def _full_rank_mod(u: np.ndarray, d: int, p: int) -> bool:
    return mod_rank(u, p) == d


def sample_configuration(
    d: DimensionVector,
    prime: Optional[int] = None,
    seed: int | np.random.SeedSequence = 0,
) -> GenericConfiguration:
    """Draw random full-column-rank coordinate matrices, deterministically in
    (d, prime, seed).  prime=None selects rational (integer-entry) mode."""
    if isinstance(seed, np.random.SeedSequence):
        ss, seed_tag = seed, int(seed.entropy[0]) if isinstance(seed.entropy, (list, tuple)) else 0
    else:
        ss, seed_tag = np.random.SeedSequence([int(seed), prime or 0]), int(seed)
    rng = np.random.default_rng(ss)
    n = d.ambient
    mats = []
    for di in d.dims:
        for attempt in range(_REDRAW_CAP):
            if prime is None:
                u = rng.integers(-_RATIONAL_ENTRY_BOUND, _RATIONAL_ENTRY_BOUND + 1, size=(n, di))
                ok = bareiss_rank(u) == di
            else:
                u = rng.integers(0, prime, size=(n, di), dtype=np.int64)
                ok = _full_rank_mod(u, di, prime)
            if ok:
                mats.append(u)
                break
        else:
            raise RuntimeError(f"could not draw a full-rank {n}x{di} matrix in {_REDRAW_CAP} tries")
    return GenericConfiguration(n, tuple(mats), prime, seed_tag)


def _nullity_mod(c: GenericConfiguration) -> int:
    n, p = c.ambient, c.prime
    reduced = np.zeros((0, n * n), dtype=np.int64)
    # One kron block per subspace, eliminated incrementally so the working
    # matrix never exceeds (n^2 + block) rows by n^2 columns.
    for u in c.subspaces:
        di = u.shape[1]
        q = mod_nullspace(u.T % p, p).T  # (n - d_i) x n, rows annihilate u
        assert q.shape == (n - di, n)
        block = np.kron(q, (u.T % p)) % p
        reduced = mod_row_reduce(np.vstack([reduced, block]), p)
    return n * n - reduced.shape[0]


def _nullity_rational(c: GenericConfiguration) -> int:
    n = c.ambient
    blocks = []
    for u in c.subspaces:
        di = u.shape[1]
        basis = rational_nullspace(np.asarray(u).T)  # columns of length n
        assert len(basis) == n - di
        q_rows = []
        for v in basis:
            mult = lcm(*(x.denominator for x in v)) if v else 1
            q_rows.append([int(x * mult) for x in v])
        q = np.array(q_rows, dtype=object).reshape(n - di, n)
        blocks.append(np.kron(q, np.asarray(u, dtype=object).T))
    m = np.vstack(blocks)
    assert m.shape == (sum(u.shape[1] * (n - u.shape[1]) for u in c.subspaces), n * n)
    return n * n - bareiss_rank(m)


def stabilizer_nullity(c: GenericConfiguration) -> int:
    """Nullity of the stabilizer system on gl(n); always >= 1 (scalars)."""
    nullity = _nullity_mod(c) if c.prime is not None else _nullity_rational(c)
    assert nullity >= 1, "scalar matrices must lie in the stabilizer"
    return nullity


def oracle_decide(
    d: DimensionVector,
    samples: int = 3,
    primes: Optional[Sequence[int]] = None,
    mode: str = "modular",
    seed: int = 0,
) -> OracleReport:
    """Sample stabilizer dimensions and classify.

    CertifiedDense as soon as one sample's PGL-stabilizer dimension equals
    expected_stab_dim(d) >= 0; otherwise MonteCarloSparse.  Trivially sparse
    vectors short-circuit with zero samples (that verdict is deterministic).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if mode not in ("modular", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    expected = d.expected_stab_dim
    if expected < 0:
        return OracleReport(
            vector=d, mode=mode, primes=(), prime=None, seed=seed, samples=0,
            stab_dims=(), stab_dim=None, expected=expected,
            verdict_class=VerdictClass.MONTE_CARLO_SPARSE,
        )

    if mode == "rational":
        prime_cycle: list[Optional[int]] = [None]
    elif primes is not None:
        prime_cycle = [int(p) for p in primes]
        if not prime_cycle:
            raise ValueError("primes must be nonempty when given")
    else:
        prng = np.random.default_rng(np.random.SeedSequence([seed, 0xA11CE]))
        first = random_prime(prng)
        second = random_prime(prng)
        while second == first:
            second = random_prime(prng)
        prime_cycle = [first, second]

    root = np.random.SeedSequence([seed])
    children = root.spawn(samples)
    observed: list[tuple[Optional[int], int]] = []
    anomalies: list[str] = []
    for s in range(samples):
        p = prime_cycle[s % len(prime_cycle)]
        cfg = sample_configuration(d, prime=p, seed=children[s])
        stab = stabilizer_nullity(cfg) - 1
        assert stab >= expected, "stabilizer below the dimension bound: elimination bug"
        observed.append((p, stab))
        if stab == expected:
            earlier = [t for _, t in observed[:-1] if t != expected]
            if earlier:
                msg = (f"{d}: expected stabilizer dim {expected} reached at sample {s} "
                       f"after samples with dims {earlier} (prime artifact?)")
                anomalies.append(msg)
                log.warning(msg)
            return OracleReport(
                vector=d, mode=mode, primes=tuple(prime_cycle), prime=p, seed=seed,
                samples=s + 1, stab_dims=tuple(observed), stab_dim=stab,
                expected=expected, verdict_class=VerdictClass.CERTIFIED_DENSE,
                anomalies=tuple(anomalies),
            )
    per_prime = {p: min(t for q, t in observed if q == p) for p, _ in observed}
    if len(set(per_prime.values())) > 1:
        msg = f"{d}: minimal stabilizer dim differs across primes: {per_prime}"
        anomalies.append(msg)
        log.warning(msg)
    best_prime, best = min(observed, key=lambda pt: pt[1])
    return OracleReport(
        vector=d, mode=mode, primes=tuple(prime_cycle), prime=best_prime, seed=seed,
        samples=samples, stab_dims=tuple(observed), stab_dim=best, expected=expected,
        verdict_class=VerdictClass.MONTE_CARLO_SPARSE, anomalies=tuple(anomalies),
    )
