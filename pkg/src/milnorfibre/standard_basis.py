"""Standard bases in local and global monomial orders.

The normal form is Mora's weak normal form with ecart selection, which
terminates for every order kind in this package; under a global order the
ecart rule never fires and the routine degenerates to ordinary multivariate
division.  Standard bases come from Buchberger completion driven by that
normal form.  On top of these sit colength, membership, ideal quotient,
ideal intersection and saturation.

All routines are deterministic: reducer choice is (ecart, insertion index),
pair choice is (lcm degree, i, j).  Budgets abort loudly, never truncate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceededError
from .orders import (
    GLOBAL_GRADED_REVLEX,
    LOCAL_ANTIGRADED_REVLEX,
    MonomialOrder,
    elimination_order,
)
from .rings import Polynomial, Ring, monomial_degree, monomial_divides

INFINITE = float("inf")

_ONE = Fraction(1)


@dataclass(frozen=True)
class Budgets:
    """Resource limits; exceeding one raises BudgetExceededError."""

    reductions: int = 2_000_000
    basis: int = 50_000
    saturation_rounds: int = 64
    staircase: int = 10_000_000


DEFAULT_BUDGETS = Budgets()


class _Counter:
    __slots__ = ("used", "limit", "what")

    def __init__(self, limit: int, what: str):
        self.used = 0
        self.limit = limit
        self.what = what

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"{self.what} budget exhausted ({self.limit}); "
                "raise the budget to continue"
            )


class _EP:
    """Engine polynomial: (key, exponent, coefficient) sorted by key, descending."""

    __slots__ = ("terms", "maxdeg")

    def __init__(self, terms: tuple, maxdeg: int | None = None):
        self.terms = terms
        if maxdeg is None:
            maxdeg = max((monomial_degree(e) for _, e, _ in terms), default=-1)
        self.maxdeg = maxdeg

    def is_zero(self) -> bool:
        return not self.terms

    def ecart(self) -> int:
        return self.maxdeg - monomial_degree(self.terms[0][1])


_EP_ZERO = _EP(())


def _ep_from_polynomial(p: Polynomial, order: MonomialOrder) -> _EP:
    terms = sorted(
        ((order.key(e), e, c) for e, c in p.items()),
        key=lambda t: t[0],
        reverse=True,
    )
    return _EP(tuple(terms))


def _ep_to_polynomial(ep: _EP, ring: Ring) -> Polynomial:
    return Polynomial(ring, {e: c for _, e, c in ep.terms})


def _ep_scale(ep: _EP, c: Fraction) -> _EP:
    if c == 0:
        return _EP_ZERO
    if c == 1:
        return ep
    return _EP(tuple((k, e, q * c) for k, e, q in ep.terms), maxdeg=ep.maxdeg)


def _ep_monic(ep: _EP) -> _EP:
    return _ep_scale(ep, _ONE / ep.terms[0][2])


def _ep_sub_shifted(a: _EP, c: Fraction, skey: tuple, sexpo: tuple, b: _EP) -> _EP:
    """a - c * x^sexpo * b; skey must equal order.key(sexpo)."""
    out = []
    aterms, bterms = a.terms, b.terms
    i = j = 0
    na, nb = len(aterms), len(bterms)
    while i < na and j < nb:
        ka = aterms[i][0]
        kb = tuple(x + y for x, y in zip(bterms[j][0], skey))
        if ka > kb:
            out.append(aterms[i])
            i += 1
        elif ka < kb:
            kt, et, ct = bterms[j]
            out.append((kb, tuple(x + y for x, y in zip(et, sexpo)), -c * ct))
            j += 1
        else:
            coeff = aterms[i][2] - c * bterms[j][2]
            if coeff != 0:
                out.append((ka, aterms[i][1], coeff))
            i += 1
            j += 1
    out.extend(aterms[i:])
    while j < nb:
        kt, et, ct = bterms[j]
        out.append(
            (
                tuple(x + y for x, y in zip(kt, skey)),
                tuple(x + y for x, y in zip(et, sexpo)),
                -c * ct,
            )
        )
        j += 1
    return _EP(tuple(out))


def _ep_spoly(a: _EP, b: _EP, order: MonomialOrder) -> _EP:
    """S-polynomial of monic engine polynomials: x^(l-ea)*a - x^(l-eb)*b."""
    ea = a.terms[0][1]
    eb = b.terms[0][1]
    lcm = tuple(max(x, y) for x, y in zip(ea, eb))
    sa = tuple(x - y for x, y in zip(lcm, ea))
    sb = tuple(x - y for x, y in zip(lcm, eb))
    ka = order.key(sa)
    shifted = _EP(
        tuple(
            (
                tuple(x + y for x, y in zip(k, ka)),
                tuple(x + y for x, y in zip(e, sa)),
                c,
            )
            for k, e, c in a.terms
        ),
        maxdeg=a.maxdeg + sum(sa),
    )
    return _ep_sub_shifted(shifted, _ONE, order.key(sb), sb, b)


class _Tracked:
    """Reducer with its representation r = A*f - sum Q_i * g_i."""

    __slots__ = ("ep", "A", "Q")

    def __init__(self, ep: _EP, A: _EP | None, Q: list[_EP] | None):
        self.ep = ep
        self.A = A
        self.Q = Q


def _weak_normal_form(
    f: _EP,
    reducers: Sequence[_EP],
    order: MonomialOrder,
    counter: _Counter,
    track: bool = False,
) -> tuple[_EP, _EP | None, list[_EP] | None]:
    """Mora weak normal form.

    Returns (h, A, Q) with A*f = h + sum Q_i * reducers_i when track is on;
    A has a nonzero constant term (a local unit; A = 1 under global orders).
    The lead of h is divisible by no reducer lead.
    """
    n = len(reducers)
    zkey = (0,) * order.nvars
    one = _EP(((order.key(zkey), zkey, _ONE),), maxdeg=0)
    table: list[_Tracked] = []
    for i, g in enumerate(reducers):
        Q = None
        if track:
            Q = [_EP_ZERO] * n
            Q[i] = _ep_scale(one, Fraction(-1))
        table.append(_Tracked(g, _EP_ZERO if track else None, Q))

    h = f
    A = one if track else None
    Q = [_EP_ZERO] * n if track else None

    while h.terms:
        lk, le, lc = h.terms[0]
        best = None
        for idx, red in enumerate(table):
            ge = red.ep.terms[0][1]
            if monomial_divides(ge, le):
                cand = (red.ep.ecart(), idx)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        ecart_g, idx = best
        if ecart_g > h.ecart():
            inv = _ONE / lc
            table.append(
                _Tracked(
                    _ep_scale(h, inv),
                    _ep_scale(A, inv) if track else None,
                    [_ep_scale(q, inv) for q in Q] if track else None,
                )
            )
        red = table[idx]
        g = red.ep
        counter.spend()
        ge = g.terms[0][1]
        c = lc / g.terms[0][2]
        sexpo = tuple(x - y for x, y in zip(le, ge))
        skey = order.key(sexpo)
        h = _ep_sub_shifted(h, c, skey, sexpo, g)
        if track:
            if red.A.terms:
                A = _ep_sub_shifted(A, c, skey, sexpo, red.A)
            for i in range(n):
                qi = red.Q[i]
                if qi.terms:
                    Q[i] = _ep_sub_shifted(Q[i], c, skey, sexpo, qi)
    return h, A, Q


def _reduced_normal_form(
    f: _EP, reducers: Sequence[_EP], order: MonomialOrder, counter: _Counter
) -> _EP:
    """Weak normal form, then tail reduction; no term divisible by a reducer lead."""
    out = []
    h, _, _ = _weak_normal_form(f, reducers, order, counter)
    while h.terms:
        out.append(h.terms[0])
        h, _, _ = _weak_normal_form(_EP(h.terms[1:]), reducers, order, counter)
    return _EP(tuple(out))


def _pair_lcm(gi: _EP, gj: _EP) -> tuple:
    return tuple(max(x, y) for x, y in zip(gi.terms[0][1], gj.terms[0][1]))


def _standard_basis_ep(
    gens: Sequence[_EP],
    order: MonomialOrder,
    budgets: Budgets,
    use_criteria: bool,
) -> list[_EP]:
    counter = _Counter(budgets.reductions, "reduction")
    pair_counter = _Counter(budgets.basis, "basis pair")
    G = [_ep_monic(g) for g in gens if g.terms]
    pending: dict[tuple[int, int], tuple] = {}
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            pending[(i, j)] = _pair_lcm(G[i], G[j])
    is_global = order.is_global()

    while pending:
        (i, j) = min(pending, key=lambda p: (monomial_degree(pending[p]), p))
        lcm = pending.pop((i, j))
        if use_criteria:
            ei = G[i].terms[0][1]
            ej = G[j].terms[0][1]
            if is_global and all(min(a, b) == 0 for a, b in zip(ei, ej)):
                continue
            skip = False
            for k in range(len(G)):
                if k in (i, j):
                    continue
                if not monomial_divides(G[k].terms[0][1], lcm):
                    continue
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
            if skip:
                continue
        pair_counter.spend()
        s = _ep_spoly(G[i], G[j], order)
        h, _, _ = _weak_normal_form(s, G, order, counter)
        if h.terms:
            G.append(_ep_monic(h))
            new = len(G) - 1
            for k in range(new):
                pending[(k, new)] = _pair_lcm(G[k], G[new])
    return _minimalize(G)


def _minimalize(G: list[_EP]) -> list[_EP]:
    """Drop elements whose lead is divisible by another kept element's lead."""
    order_keys = [g.terms[0][0] for g in G]
    keep: list[int] = []
    # scan by increasing lead degree so kept leads are the minimal generators
    idx = sorted(range(len(G)), key=lambda i: (monomial_degree(G[i].terms[0][1]), i))
    for i in idx:
        ei = G[i].terms[0][1]
        if any(monomial_divides(G[k].terms[0][1], ei) for k in keep):
            continue
        keep.append(i)
    keep.sort(key=lambda i: order_keys[i], reverse=True)
    return [G[i] for i in keep]


def _check_inputs(gens: Sequence[Polynomial], order: MonomialOrder) -> Ring:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators over different rings")
    if order.nvars != ring.nvars:
        raise ValueError("order and ring disagree on variable count")
    return ring


def standard_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
    use_criteria: bool = True,
) -> tuple[Polynomial, ...]:
    """Minimal monic standard basis of the ideal generated by gens."""
    ring = _check_inputs(gens, order)
    eps = [_ep_from_polynomial(g, order) for g in gens]
    basis = _standard_basis_ep(eps, order, budgets, use_criteria)
    return tuple(_ep_to_polynomial(g, ring) for g in basis)


def weak_normal_form(
    f: Polynomial,
    reducers: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Polynomial:
    """Mora weak normal form of f against the given reducers (as given, no
    completion).  Zero iff f lies in the ideal when the reducers form a
    standard basis; the result equals unit * f - combination."""
    _check_inputs([f] + list(reducers), order)
    counter = _Counter(budgets.reductions, "reduction")
    eps = [_ep_from_polynomial(g, order) for g in reducers if not g.is_zero()]
    h, _, _ = _weak_normal_form(_ep_from_polynomial(f, order), eps, order, counter)
    return _ep_to_polynomial(h, f.ring)


def weak_normal_form_with_representation(
    f: Polynomial,
    reducers: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[Polynomial, Polynomial, tuple[Polynomial, ...]]:
    """Weak normal form with its certificate: (h, A, Q) satisfying the exact
    identity A*f = h + sum Q_i * reducers_i, A a unit of the local ring
    (A = 1 under a global order)."""
    _check_inputs([f] + list(reducers), order)
    counter = _Counter(budgets.reductions, "reduction")
    kept = [(i, g) for i, g in enumerate(reducers) if not g.is_zero()]
    eps = [_ep_from_polynomial(g, order) for _, g in kept]
    h, a, q = _weak_normal_form(
        _ep_from_polynomial(f, order), eps, order, counter, track=True
    )
    ring = f.ring
    full_q = [ring.zero()] * len(reducers)
    for (i, _), qi in zip(kept, q):
        full_q[i] = _ep_to_polynomial(qi, ring)
    return _ep_to_polynomial(h, ring), _ep_to_polynomial(a, ring), tuple(full_q)


def normal_form(
    f: Polynomial,
    reducers: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Polynomial:
    """Fully reduced normal form: no term divisible by any reducer lead.

    Under a global order this is the classical canonical remainder.  Under a
    local order the result is canonical up to a unit factor; it is zero
    exactly when f lies in the ideal generated by a standard basis.
    """
    _check_inputs([f] + list(reducers), order)
    counter = _Counter(budgets.reductions, "reduction")
    eps = [_ep_from_polynomial(g, order) for g in reducers if not g.is_zero()]
    h = _reduced_normal_form(_ep_from_polynomial(f, order), eps, order, counter)
    return _ep_to_polynomial(h, f.ring)


def leading_exponents(
    basis: Sequence[Polynomial], order: MonomialOrder
) -> tuple[tuple[int, ...], ...]:
    """Minimal generating exponents of the lead-monomial ideal of a basis."""
    exps = []
    for g in basis:
        if g.is_zero():
            continue
        exps.append(order.leading_exponent(list(g.terms)))
    exps = sorted(set(exps))
    minimal = [
        e
        for e in exps
        if not any(o != e and monomial_divides(o, e) for o in exps)
    ]
    return tuple(minimal)


def is_member(
    f: Polynomial,
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
    basis: Sequence[Polynomial] | None = None,
) -> bool:
    """Ideal membership via weak normal form against a standard basis."""
    if f.is_zero():
        return True
    if basis is None:
        basis = standard_basis(gens, order, budgets)
    return weak_normal_form(f, basis, order, budgets).is_zero()


def colength(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
    basis: Sequence[Polynomial] | None = None,
) -> int | float:
    """Vector-space dimension of the quotient by the ideal; INFINITE when the
    staircase is unbounded (some variable has no pure power among the leads)."""
    if basis is None:
        basis = standard_basis(gens, order, budgets)
    ring = gens[0].ring
    leads = leading_exponents(basis, order)
    if not leads:
        return INFINITE
    n = ring.nvars
    bounds = []
    for i in range(n):
        pure = [
            e[i]
            for e in leads
            if all(x == 0 for j, x in enumerate(e) if j != i)
        ]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    total_box = 1
    for b in bounds:
        total_box *= max(b, 1)
    if total_box > budgets.staircase:
        raise BudgetExceededError(
            f"staircase box of size {total_box} exceeds budget {budgets.staircase}"
        )
    expo = [0] * n

    def scan(pos: int) -> int:
        if pos == n:
            e = tuple(expo)
            return 0 if any(monomial_divides(l, e) for l in leads) else 1
        total = 0
        for v in range(bounds[pos]):
            expo[pos] = v
            total += scan(pos + 1)
        expo[pos] = 0
        return total

    return scan(0)


def _fresh_tag(ring: Ring) -> str:
    tag = "_t"
    k = 0
    while tag in ring.variables:
        k += 1
        tag = f"_t{k}"
    return tag


def _lift(p: Polynomial, big: Ring, tdeg: int) -> Polynomial:
    """Embed p in the tag-extended ring, multiplied by tag^tdeg."""
    return Polynomial(big, {e + (tdeg,): c for e, c in p.items()})


def _drop_tag(p: Polynomial, small: Ring) -> Polynomial:
    return Polynomial(small, {e[:-1]: c for e, c in p.items()})


def _is_tag_free(p: Polynomial) -> bool:
    return all(e[-1] == 0 for e in p.terms)


def intersect_ideals(
    a: Sequence[Polynomial],
    b: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[Polynomial, ...]:
    """Intersection of two ideals by tag elimination: the tag-free part of a
    standard basis of (t*a_i, (1-t)*b_j) under a tag-dominant block order."""
    ring = _check_inputs(list(a) + list(b), order)
    if order.kind not in (GLOBAL_GRADED_REVLEX, LOCAL_ANTIGRADED_REVLEX):
        raise ValueError("intersection needs a plain global or local order")
    tag = _fresh_tag(ring)
    big = Ring(ring.variables + (tag,))
    elim = elimination_order(big.nvars, order.kind)
    lifted = [_lift(p, big, 1) for p in a if not p.is_zero()]
    for q in b:
        if q.is_zero():
            continue
        # (1 - t) * q
        lifted.append(_lift(q, big, 0) - _lift(q, big, 1))
    if not lifted:
        return (ring.zero(),)
    sb = standard_basis(lifted, elim, budgets)
    found = [_drop_tag(p, ring) for p in sb if _is_tag_free(p)]
    if not found:
        return (ring.zero(),)
    return tuple(found)


def ideal_quotient(
    gens: Sequence[Polynomial],
    f: Polynomial,
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[Polynomial, ...]:
    """The quotient ideal (gens) : f, computed as the intersection with (f)
    followed by exact division by f with multiplier tracking."""
    ring = _check_inputs(list(gens) + [f], order)
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    inter = intersect_ideals(gens, [f], order, budgets)
    counter = _Counter(budgets.reductions, "reduction")
    f_ep = _ep_from_polynomial(f, order)
    out = []
    for h in inter:
        if h.is_zero():
            continue
        h_ep = _ep_from_polynomial(h, order)
        r, _, Q = _weak_normal_form(h_ep, [f_ep], order, counter, track=True)
        if r.terms:
            raise ArithmeticError(
                "intersection element not divisible by f; elimination failed"
            )
        q = Q[0]
        if q.terms:
            out.append(_ep_to_polynomial(_ep_monic(q), ring))
    if not out:
        return (ring.zero(),)
    return tuple(out)


def _lead_signature(
    gens: Sequence[Polynomial], order: MonomialOrder, budgets: Budgets
) -> tuple:
    basis = standard_basis(gens, order, budgets)
    return leading_exponents(basis, order)


def quotient_by_ideal(
    gens: Sequence[Polynomial],
    divisor_gens: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[Polynomial, ...]:
    """(gens) : (divisor_gens) as the intersection of the single quotients."""
    parts = [
        ideal_quotient(gens, p, order, budgets)
        for p in divisor_gens
        if not p.is_zero()
    ]
    if not parts:
        raise ValueError("quotient by the zero ideal")
    current = parts[0]
    for nxt in parts[1:]:
        current = intersect_ideals(current, nxt, order, budgets)
    return current


def saturate(
    gens: Sequence[Polynomial],
    igens: Sequence[Polynomial],
    order: MonomialOrder,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> tuple[tuple[Polynomial, ...], int]:
    """Saturation (gens) : (igens)^infinity by iterated ideal quotient.

    Returns (generators, rounds) where rounds counts quotient rounds taken
    until the lead ideal stabilized."""
    ring = _check_inputs(list(gens) + list(igens), order)
    del ring
    current = tuple(gens)
    signature = _lead_signature(current, order, budgets)
    rounds = 0
    while True:
        if rounds >= budgets.saturation_rounds:
            raise BudgetExceededError(
                f"saturation did not stabilize within {budgets.saturation_rounds} rounds"
            )
        nxt = quotient_by_ideal(current, igens, order, budgets)
        rounds += 1
        nsig = _lead_signature(nxt, order, budgets)
        if nsig == signature:
            return current, rounds
        current = nxt
        signature = nsig
