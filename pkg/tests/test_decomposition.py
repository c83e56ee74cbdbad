"""Invariants of the presentation f = g * H * g^T."""

import pytest

from milnorfibre.decomposition import (
    SingularityInput,
    assemble_f,
    compute_a,
    corank_at_origin,
    invariant_report,
    verify_decomposition,
)
from milnorfibre.errors import (
    ComputationError,
    InconsistencyError,
    InvalidIcisError,
)
from milnorfibre.rings import PolyMatrix, Ring, parse_polynomial

R5 = Ring(("x1", "x2", "x3", "y1", "y2"))


def p(text, ring=R5):
    return parse_polynomial(text, ring)


def mk(g_texts, h_rows, ring=R5, **kwargs):
    g = tuple(p(t, ring) for t in g_texts)
    h = PolyMatrix(ring, [[p(t, ring) for t in row] for row in h_rows])
    return SingularityInput(ring=ring, g=g, h=h, **kwargs)


def family_input(k, **kwargs):
    return mk(
        ("y1", "y2"),
        (("x3", "x2"), ("x2", f"x1^{k} - x3")),
        **kwargs,
    )


def worked_example(**kwargs):
    return mk(("x1", "x2"), (("x3", "x4"), ("x4", "x3 - x5^2")),
              ring=Ring(("x1", "x2", "x3", "x4", "x5")), **kwargs)


# --- decomposition ---------------------------------------------------------

def test_assemble_f_expands_the_quadratic_form():
    inp = family_input(1)
    expected = p("x3*y1^2 + 2*x2*y1*y2 + x1*y2^2 - x3*y2^2")
    assert assemble_f(inp) == expected


def test_verify_decomposition_cross_check():
    good = family_input(1, f_expected=p("x3*y1^2 + 2*x2*y1*y2 + x1*y2^2 - x3*y2^2"))
    verify_decomposition(good)
    bad = family_input(1, f_expected=p("x3*y1^2"))
    with pytest.raises(InconsistencyError):
        verify_decomposition(bad)


def test_input_validation():
    with pytest.raises(ValueError):
        mk(("y1",), (("x3",),))  # len(g) != n - 3
    with pytest.raises(ValueError):
        mk(("y1", "y2"), (("x3", "x2"), ("x1", "x3")))  # not symmetric
    with pytest.raises(ValueError):
        SingularityInput(
            ring=Ring(("a", "b", "c")),
            g=(),
            h=PolyMatrix(Ring(("a", "b", "c")), [[parse_polynomial("a", Ring(("a", "b", "c")))]]),
        )  # n < 4


# --- corank ----------------------------------------------------------------

def test_corank_examples():
    assert corank_at_origin(mk(("y1", "y2"), (("1", "0"), ("0", "1")))) == 0
    assert corank_at_origin(mk(("y1", "y2"), (("x1", "0"), ("0", "1")))) == 1
    assert corank_at_origin(family_input(2)) == 2


# --- invariants on the worked examples --------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_family_invariants(k):
    rep = invariant_report(family_input(k))
    assert (rep.mu0, rep.mu1, rep.a, rep.corank) == (0, 2 * k - 1, k, 2)
    assert rep.a1 == 0 and rep.a1_provenance == "assumed"
    assert all(c.passed for c in rep.checks)


def test_worked_example_invariants():
    rep = invariant_report(worked_example())
    assert (rep.mu0, rep.mu1, rep.a, rep.corank) == (0, 3, 2, 2)


def test_a_matches_direct_colength():
    # for the worked example: (g) + entries of H = (x1, x2, x3, x4, x3 - x5^2),
    # whose staircase is {1, x5}, so a = 2
    assert compute_a(worked_example()) == 2


def test_corank_zero_reports_mu1_not_applicable():
    rep = invariant_report(mk(("y1", "y2"), (("1", "0"), ("0", "1"))))
    assert rep.corank == 0
    assert rep.mu1 == 0 and not rep.mu1_applicable
    assert rep.a == 0


def test_corank_at_least_two_forces_positive_a():
    for k in (1, 2, 3):
        rep = invariant_report(family_input(k))
        assert rep.corank >= 2 and rep.a >= 1
    rep = invariant_report(mk(("y1", "y2"), (("x1", "0"), ("0", "1"))))
    assert rep.corank == 1 and rep.a == 0


# --- a1 modes ---------------------------------------------------------------

def test_a1_provided_echoes():
    rep = invariant_report(family_input(2, a1_mode="provided", a1_count=5))
    assert rep.a1 == 5 and rep.a1_provenance == "provided"


def test_a1_estimate_on_example_with_no_morse_points():
    rep = invariant_report(worked_example(a1_mode="estimate"))
    assert rep.a1 == 0
    assert rep.a1_provenance == "experimental-saturation"


def test_a1_provided_requires_count():
    with pytest.raises(ValueError):
        family_input(1, a1_mode="provided")


# --- failure paths -----------------------------------------------------------

def test_nonisolated_corank_two_locus_fails():
    inp = mk(("y1", "y2"), (("x3", "x2"), ("x2", "-x3")))
    with pytest.raises(ComputationError):
        invariant_report(inp)


def test_locus_must_be_an_icis():
    inp = mk(("y1*y2", "y1"), (("1", "0"), ("0", "1")))
    with pytest.raises((InvalidIcisError, ComputationError)):
        invariant_report(inp)


# --- presentation invariance -------------------------------------------------

def test_invariants_stable_under_unimodular_change_of_g():
    """Replace g by M*g and H by (M^-T) H (M^-1): f is unchanged, so all
    invariants must be too.  M = [[1, 1], [0, 1]]."""
    base = worked_example()
    ring = base.ring
    g1, g2 = base.g
    new_g = (g1 + g2, g2)
    # M = [[1,1],[0,1]], M^-1 = [[1,-1],[0,1]]; H' = (M^-1)^T H M^-1
    h11 = base.h.entry(0, 0)
    h12 = base.h.entry(0, 1)
    h22 = base.h.entry(1, 1)
    new_h = PolyMatrix(
        ring,
        [
            [h11, h12 - h11],
            [h12 - h11, h22 - 2 * h12 + h11],
        ],
    )
    changed = SingularityInput(ring=ring, g=new_g, h=new_h)
    assert assemble_f(changed) == assemble_f(base)
    rep_base = invariant_report(base)
    rep_changed = invariant_report(changed)
    assert (rep_base.mu0, rep_base.mu1, rep_base.a, rep_base.corank) == (
        rep_changed.mu0,
        rep_changed.mu1,
        rep_changed.a,
        rep_changed.corank,
    )
