"""Milnor numbers of isolated complete intersection singularity germs.

The Milnor number of a germ cut out by k functions is computed by the
Le-Greuel recursion: after a random invertible linear recombination of the
generators, mu = sum over j of (-1)^(k-j) * c_j where c_j is the colength of
the ideal spanned by the first j-1 recombined functions together with the
j x j minors of the Jacobian of the first j.  Validity of a recombination is
witnessed by every c_j being finite; a singular or unlucky draw is retried
from the same seeded stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ComputationError, InconsistencyError, InvalidIcisError
from .orders import local_order
from .rings import Polynomial, Ring, int_determinant, jacobian, minors
from .standard_basis import (
    Budgets,
    DEFAULT_BUDGETS,
    INFINITE,
    colength,
    leading_exponents,
    standard_basis,
)

RECOMBINATION_ENTRY_BOUND = 9
RECOMBINATION_ATTEMPTS = 8


def draw_recombination(size: int, rng: random.Random) -> list[list[int]]:
    """One invertible integer matrix with entries in [-9, 9] from the stream."""
    for _ in range(RECOMBINATION_ATTEMPTS):
        m = [
            [rng.randint(-RECOMBINATION_ENTRY_BOUND, RECOMBINATION_ENTRY_BOUND) for _ in range(size)]
            for _ in range(size)
        ]
        if int_determinant(m) != 0:
            return m
    raise ComputationError(
        f"no invertible recombination found in {RECOMBINATION_ATTEMPTS} draws"
    )


def recombine(gens: Sequence[Polynomial], matrix: list[list[int]]) -> tuple[Polynomial, ...]:
    """Apply an integer matrix to a generator list."""
    ring = gens[0].ring
    out = []
    for row in matrix:
        acc = ring.zero()
        for c, g in zip(row, gens):
            if c:
                acc = acc + g.scale(c)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class IcisCheck:
    """Outcome of the isolated-complete-intersection test."""

    ok: bool
    colength: int | float
    unbounded_variables: tuple[str, ...]

    def message(self) -> str:
        if self.ok:
            return f"singular locus colength {self.colength}"
        missing = ", ".join(self.unbounded_variables)
        return f"INFINITE singular locus (unbounded in {missing})"


def _staircase_unbounded_vars(
    gens: Sequence[Polynomial], budgets: Budgets
) -> tuple[int | float, tuple[str, ...]]:
    """Colength plus the variables with no pure power among the lead terms."""
    ring = gens[0].ring
    order = local_order(ring.nvars)
    live = [g for g in gens if not g.is_zero()]
    if not live:
        return INFINITE, ring.variables
    basis = standard_basis(live, order, budgets)
    leads = leading_exponents(basis, order)
    unbounded = []
    for i, name in enumerate(ring.variables):
        pure = [
            e[i]
            for e in leads
            if all(x == 0 for j, x in enumerate(e) if j != i)
        ]
        if not pure:
            unbounded.append(name)
    if unbounded:
        return INFINITE, tuple(unbounded)
    value = colength(live, order, budgets, basis=basis)
    return value, ()


def check_icis(gens: Sequence[Polynomial], budgets: Budgets = DEFAULT_BUDGETS) -> IcisCheck:
    """Test that V(gens) is a complete intersection with at most an isolated
    singularity at the origin: the ideal of the generators plus the maximal
    minors of their Jacobian must have finite colength."""
    ring = gens[0].ring
    k = len(gens)
    if k > ring.nvars:
        raise InvalidIcisError(
            f"{k} generators in {ring.nvars} variables cannot be a complete intersection"
        )
    if any(g.is_zero() for g in gens):
        raise InvalidIcisError("zero generator in the presentation")
    if any(g.evaluate_at_origin() != 0 for g in gens):
        raise InvalidIcisError("generator does not vanish at the origin")
    jac = jacobian(ring, list(gens))
    sing = list(gens) + list(minors(jac, k))
    value, unbounded = _staircase_unbounded_vars(sing, budgets)
    return IcisCheck(value is not INFINITE and value != INFINITE, value, unbounded)


def _chain_colengths(
    fprime: Sequence[Polynomial], budgets: Budgets
) -> list[int | float]:
    ring = fprime[0].ring
    order = local_order(ring.nvars)
    out = []
    for j in range(1, len(fprime) + 1):
        head = list(fprime[: j - 1])
        jac = jacobian(ring, list(fprime[:j]))
        ideal = head + list(minors(jac, j))
        out.append(colength(ideal, order, budgets))
    return out


def milnor_icis(
    gens: Sequence[Polynomial],
    seed: int = 0,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> int:
    """Milnor number of the germ cut out by gens (an i.c.i.s. presentation).

    Raises InvalidIcisError when the input is not an isolated complete
    intersection singularity, ComputationError when no valid recombination
    appears within the attempt cap.
    """
    check = check_icis(gens, budgets)
    if not check.ok:
        raise InvalidIcisError(
            f"not an isolated complete intersection: {check.message()}"
        )
    k = len(gens)
    rng = random.Random(seed)
    last_error = None
    for _ in range(RECOMBINATION_ATTEMPTS):
        matrix = draw_recombination(k, rng)
        fprime = recombine(gens, matrix)
        cs = _chain_colengths(fprime, budgets)
        if any(c == INFINITE for c in cs):
            last_error = f"chain colengths {cs} not all finite"
            continue
        mu = 0
        for j, c in enumerate(cs, start=1):
            mu += c if (k - j) % 2 == 0 else -c
        if mu < 0:
            raise InconsistencyError(
                f"negative Milnor number {mu} from chain colengths {cs}"
            )
        return mu
    raise ComputationError(
        f"no valid recombination in {RECOMBINATION_ATTEMPTS} attempts: {last_error}"
    )
