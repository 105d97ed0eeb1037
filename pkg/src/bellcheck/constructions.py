"""Built-in families of commuting observable sets and their validation.

A Context is an ordered list of mutually commuting Pauli words whose
operator product is (expected_sign * identity).  A ContextSystem bundles
contexts over a fixed register together with a catalog of the distinct
observables and how often each occurs.  Every built-in constructor
self-validates its structural properties before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .parity import ParityRow, ParitySystem
from .pauli import PauliOperator, commutes, format_pauli, identity, multiply, parse_pauli, single


class ConstructionError(RuntimeError):
    """A built-in construction failed its own validation (internal bug)."""


@dataclass(frozen=True)
class Context:
    observables: tuple[PauliOperator, ...]
    expected_sign: int

    def __post_init__(self):
        if self.expected_sign not in (+1, -1):
            raise ValueError(f"expected_sign must be +1 or -1, got {self.expected_sign}")
        if not self.observables:
            raise ValueError("context needs at least one observable")


@dataclass(frozen=True)
class ContextSystem:
    num_qubits: int
    contexts: tuple[Context, ...]

    @property
    def catalog(self) -> tuple[PauliOperator, ...]:
        """Distinct observables in order of first appearance (phase included)."""
        return self._catalog_counts()[0]

    @property
    def occurrence_counts(self) -> tuple[int, ...]:
        """Number of contexts containing each catalog entry, catalog order."""
        return self._catalog_counts()[1]

    def _catalog_counts(self) -> tuple[tuple[PauliOperator, ...], tuple[int, ...]]:
        seen: dict[PauliOperator, int] = {}
        counts: list[int] = []
        for ctx in self.contexts:
            for obs in ctx.observables:
                if obs in seen:
                    counts[seen[obs]] += 1
                else:
                    seen[obs] = len(counts)
                    counts.append(1)
        return tuple(seen), tuple(counts)

    def catalog_index(self, obs: PauliOperator) -> int:
        seen = self._catalog_counts()[0]
        for i, entry in enumerate(seen):
            if entry == obs:
                return i
        raise ValueError(f"observable {format_pauli(obs)} not in catalog")


def product_sign(context: Context) -> int:
    """Sign s such that the ordered operator product equals s * identity.

    Raises ConstructionError if the product is not +-identity (which can
    only happen for a malformed context).
    """
    acc = identity(context.observables[0].num_qubits)
    for obs in context.observables:
        acc = multiply(acc, obs)
    if not acc.is_identity_word or acc.phase_exponent not in (0, 2):
        raise ConstructionError(
            f"context product is not +-identity: {format_pauli(acc)}"
        )
    return +1 if acc.phase_exponent == 0 else -1


@dataclass(frozen=True)
class ContextCheck:
    context_index: int
    commuting: bool
    failing_pair: tuple[str, str] | None
    product_sign: int | None
    expected_sign: int

    @property
    def ok(self) -> bool:
        return self.commuting and self.product_sign == self.expected_sign


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ContextCheck, ...]
    catalog_labels: tuple[str, ...]
    occurrence_counts: tuple[int, ...]
    failures: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def validate(system: ContextSystem) -> ValidationReport:
    """Check pairwise commutation and product sign of every context.

    The report carries a per-context verdict plus catalog occurrence
    counts; it never raises on a mismatch.
    """
    checks = []
    failures = []
    for idx, ctx in enumerate(system.contexts):
        failing = None
        for a, b in combinations(ctx.observables, 2):
            if not commutes(a, b):
                failing = (format_pauli(a), format_pauli(b))
                break
        sign = None
        if failing is None:
            try:
                sign = product_sign(ctx)
            except ConstructionError:
                sign = None
        check = ContextCheck(idx, failing is None, failing, sign, ctx.expected_sign)
        checks.append(check)
        if not check.ok:
            failures.append(idx)
    return ValidationReport(
        checks=tuple(checks),
        catalog_labels=tuple(format_pauli(o) for o in system.catalog),
        occurrence_counts=system.occurrence_counts,
        failures=tuple(failures),
    )


def _validated(system: ContextSystem, what: str) -> ContextSystem:
    report = validate(system)
    if not report.ok:
        raise ConstructionError(f"{what} failed self-validation: contexts {report.failures}")
    return system


def mermin_square() -> ContextSystem:
    """The 3x3 square of two-qubit observables with its six contexts.

    Rows and columns each form a commuting triple; every product is
    +identity except the third column, whose product is -identity.
    Each of the nine observables sits in exactly one row and one column.
    """
    rows = [
        [parse_pauli(t, 2) for t in ("X1", "X2", "X1 X2")],
        [parse_pauli(t, 2) for t in ("Z2", "Z1", "Z1 Z2")],
        [parse_pauli(t, 2) for t in ("X1 Z2", "Z1 X2", "Y1 Y2")],
    ]
    contexts = [Context(tuple(r), +1) for r in rows]
    for j in range(3):
        column = tuple(rows[i][j] for i in range(3))
        contexts.append(Context(column, -1 if j == 2 else +1))
    system = _validated(ContextSystem(2, tuple(contexts)), "mermin_square")
    if len(system.catalog) != 9 or set(system.occurrence_counts) != {2}:
        raise ConstructionError("mermin_square catalog structure is wrong")
    return system


def generalized_sets(n: int) -> ContextSystem:
    """The n-qubit family of n+2 commuting sets built from cyclic X-Z-X triples.

    For odd n, the triples t_i = X_i Z_{i+1} X_{i+2} (indices cyclic,
    1-based) plus the all-Z word form one commuting set with product
    -identity; each triple also forms a +identity set with its three
    single-qubit factors, and the all-Z word forms one with the n
    single-Z factors.  That yields 3n+1 distinct observables, each
    occurring in exactly two sets.
    """
    if n % 2 == 0 or not 3 <= n <= 13:
        raise ValueError(f"n must be odd and within 3..13, got {n}")

    def wrap(i: int) -> int:
        return (i - 1) % n + 1

    triples = []
    for i in range(1, n + 1):
        t = single("X", i, n)
        t = multiply(t, single("Z", wrap(i + 1), n))
        t = multiply(t, single("X", wrap(i + 2), n))
        triples.append(t)
    all_z = identity(n)
    for i in range(1, n + 1):
        all_z = multiply(all_z, single("Z", i, n))

    contexts = [Context(tuple(triples) + (all_z,), -1)]
    for i in range(1, n + 1):
        members = (
            single("X", i, n),
            single("Z", wrap(i + 1), n),
            single("X", wrap(i + 2), n),
            triples[i - 1],
        )
        contexts.append(Context(members, +1))
    singles_z = tuple(single("Z", i, n) for i in range(1, n + 1))
    contexts.append(Context(singles_z + (all_z,), +1))

    system = _validated(ContextSystem(n, tuple(contexts)), f"generalized_sets({n})")
    if len(system.catalog) != 3 * n + 1 or set(system.occurrence_counts) != {2}:
        raise ConstructionError(f"generalized_sets({n}) catalog structure is wrong")
    return system


def ghz_observables() -> tuple[tuple[PauliOperator, int], ...]:
    """The four three-qubit XYY-type observables with their joint eigenvalues."""
    return (
        (parse_pauli("X1 Y2 Y3", 3), +1),
        (parse_pauli("Y1 X2 Y3", 3), +1),
        (parse_pauli("Y1 Y2 X3", 3), +1),
        (parse_pauli("X1 X2 X3", 3), -1),
    )


def ghz_contexts(grouping: str) -> ParitySystem:
    """Value-assignment parity constraints for the GHZ observables.

    "tripartite": one variable per single-particle component (X and Y on
    each of three particles); every equation sums three variables.
    "bipartite": particle 1 is one observer, particles 2+3 the other, so
    the second observer only holds the four two-particle products; every
    equation sums two variables and each product variable occurs once.
    """
    if grouping == "tripartite":
        variables = ("X1", "Y1", "X2", "Y2", "X3", "Y3")
        terms = [("X1", "Y2", "Y3"), ("Y1", "X2", "Y3"), ("Y1", "Y2", "X3"), ("X1", "X2", "X3")]
    elif grouping == "bipartite":
        variables = ("X1", "Y1", "Y2 Y3", "X2 Y3", "Y2 X3", "X2 X3")
        terms = [("X1", "Y2 Y3"), ("Y1", "X2 Y3"), ("Y1", "Y2 X3"), ("X1", "X2 X3")]
    else:
        raise ValueError(f"grouping must be 'tripartite' or 'bipartite', got {grouping!r}")
    index = {name: i for i, name in enumerate(variables)}
    eigenvalues = [ev for _, ev in ghz_observables()]
    rows = tuple(
        ParityRow(tuple(index[name] for name in term), 0 if ev == +1 else 1)
        for term, ev in zip(terms, eigenvalues)
    )
    return ParitySystem(variables, rows)
