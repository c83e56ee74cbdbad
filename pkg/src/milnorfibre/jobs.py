"""Job files, pipeline orchestration, and report serialization.

A job file is line-oriented: sections [ring], [ideal], [matrix], [options];
one `key = value` per line; `#` starts a comment.  Structural problems
(including a non-symmetric matrix) are parse-stage errors.  Reports render
as text or JSON; the JSON form is byte-identical for a fixed (job, seed) and
therefore excludes timing, which only the text form shows.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .decomposition import (
    CheckResult,
    InvariantReport,
    SingularityInput,
    invariant_report,
)
from .errors import ParseError, RingMismatchError
from .homology import (
    BouquetDescription,
    HomologyTable,
    bouquet,
    milnor_fibre_homology,
    table_B,
    table_M,
    table_pair_B_Bu,
    table_X,
    universal_coefficients_mod2,
    SPACE_B,
    SPACE_BU,
    SPACE_BU_COVER,
    SPACE_PAIR,
)
from .rings import PolyMatrix, Polynomial, Ring, parse_polynomial
from .standard_basis import Budgets, DEFAULT_BUDGETS

AUX_TABLE_MIN_N = 8

SECTION_KEYS = {
    "ring": ("vars",),
    "ideal": ("g",),
    "matrix": ("h",),
    "options": ("a1", "f"),
}


def _split_bracketed(text: str, line_no: int) -> list[str]:
    """Split on commas at square-bracket depth 0."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "[":
            depth += 1
            current.append(ch)
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"line {line_no}: unbalanced ']' in matrix")
            current.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"line {line_no}: unbalanced '[' in matrix")
    parts.append("".join(current))
    return parts


def _parse_poly(text: str, ring: Ring, line_no: int, what: str) -> Polynomial:
    try:
        return parse_polynomial(text.strip(), ring)
    except ParseError as exc:
        raise ParseError(f"line {line_no}: in {what}: {exc}") from exc


def _parse_matrix(value: str, ring: Ring, line_no: int) -> PolyMatrix:
    s = value.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"line {line_no}: matrix must be [[...], [...]]")
    row_texts = _split_bracketed(s[1:-1], line_no)
    rows: list[list[Polynomial]] = []
    for rt in row_texts:
        rt = rt.strip()
        if not (rt.startswith("[") and rt.endswith("]")):
            raise ParseError(f"line {line_no}: matrix row must be [p, q, ...]")
        entries = _split_bracketed(rt[1:-1], line_no)
        if entries == [""]:
            raise ParseError(f"line {line_no}: empty matrix row")
        rows.append([_parse_poly(e, ring, line_no, "h") for e in entries])
    if not rows:
        raise ParseError(f"line {line_no}: empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError(f"line {line_no}: ragged matrix rows")
    return PolyMatrix(ring, rows)


def parse_job(text: str) -> SingularityInput:
    """Parse a job file into a singularity input.

    Every structural defect, including a non-symmetric or misshapen matrix,
    raises ParseError so the CLI exits with the parse-error code.
    """
    section = None
    raw: dict[tuple[str, str], tuple[str, int]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip().lower()
            if name not in SECTION_KEYS:
                raise ParseError(f"line {line_no}: unknown section [{name}]")
            section = name
            continue
        if "=" not in stripped:
            raise ParseError(f"line {line_no}: expected 'key = value'")
        if section is None:
            raise ParseError(f"line {line_no}: key outside any section")
        key, value = stripped.split("=", 1)
        key = key.strip().lower()
        if key not in SECTION_KEYS[section]:
            raise ParseError(f"line {line_no}: unknown key {key!r} in [{section}]")
        if (section, key) in raw:
            raise ParseError(f"line {line_no}: duplicate key {key!r}")
        raw[(section, key)] = (value.strip(), line_no)

    for sec, key in (("ring", "vars"), ("ideal", "g"), ("matrix", "h")):
        if (sec, key) not in raw:
            raise ParseError(f"missing required key {key!r} in section [{sec}]")

    vars_value, vars_line = raw[("ring", "vars")]
    try:
        ring = Ring(tuple(vars_value.split()))
    except ValueError as exc:
        raise ParseError(f"line {vars_line}: {exc}") from exc

    g_value, g_line = raw[("ideal", "g")]
    g_texts = [t for t in g_value.split(";") if t.strip()]
    if not g_texts:
        raise ParseError(f"line {g_line}: no generators in g")
    g = tuple(_parse_poly(t, ring, g_line, "g") for t in g_texts)

    h_value, h_line = raw[("matrix", "h")]
    h = _parse_matrix(h_value, ring, h_line)

    a1_mode = "assume_zero"
    a1_count = None
    if ("options", "a1") in raw:
        a1_value, a1_line = raw[("options", "a1")]
        lowered = a1_value.lower()
        if lowered == "zero":
            a1_mode = "assume_zero"
        elif lowered == "estimate":
            a1_mode = "estimate"
        else:
            try:
                count = int(a1_value)
            except ValueError as exc:
                raise ParseError(
                    f"line {a1_line}: a1 must be an integer, 'zero', or 'estimate'"
                ) from exc
            if count < 0:
                raise ParseError(f"line {a1_line}: a1 must be non-negative")
            a1_mode = "provided"
            a1_count = count

    f_expected = None
    if ("options", "f") in raw:
        f_value, f_line = raw[("options", "f")]
        f_expected = _parse_poly(f_value, ring, f_line, "f")

    try:
        return SingularityInput(
            ring=ring,
            g=g,
            h=h,
            f_expected=f_expected,
            a1_mode=a1_mode,
            a1_count=a1_count,
        )
    except (ValueError, RingMismatchError) as exc:
        raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class Job:
    input: SingularityInput
    seed: int = 0
    budgets: Budgets = DEFAULT_BUDGETS


@dataclass(frozen=True)
class Report:
    invariants: InvariantReport
    fibre: HomologyTable | None
    tables: tuple[tuple[str, HomologyTable], ...]
    sphere_bouquet: BouquetDescription | None
    checks: tuple[CheckResult, ...]
    notes: tuple[str, ...]
    seed: int
    elapsed: float

    def to_json_dict(self) -> dict:
        inv = self.invariants
        doc: dict = {
            "invariants": {
                "n": inv.n,
                "mu0": inv.mu0,
                "mu1": inv.mu1,
                "mu1_applicable": inv.mu1_applicable,
                "a": inv.a,
                "corank": inv.corank,
                "a1": inv.a1,
                "a1_provenance": inv.a1_provenance,
            },
            "homology": _table_groups_json(self.fibre) if self.fibre else None,
            "bouquet": (
                [{"dim": d, "count": c} for d, c in self.sphere_bouquet.spheres]
                if self.sphere_bouquet is not None
                else None
            ),
            "checks": [
                {"name": c.name, "pass": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "provenance": {
                "seed": self.seed,
                "a1_provenance": inv.a1_provenance,
                "notes": list(self.notes),
                "tables": {name: _table_json(t) for name, t in self.tables},
            },
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        inv = self.invariants
        lines = ["invariants"]
        lines.append(f"  n        {inv.n}")
        lines.append(f"  corank   {inv.corank}")
        lines.append(f"  mu0      {inv.mu0}")
        mu1_note = "" if inv.mu1_applicable else "  (not applicable: corank 0)"
        lines.append(f"  mu1      {inv.mu1}{mu1_note}")
        lines.append(f"  a        {inv.a}")
        lines.append(f"  #A1      {inv.a1}  [{inv.a1_provenance}]")
        if self.fibre is not None:
            lines.append("")
            lines.append("Milnor fibre homology (integral)")
            lines.extend(_render_table_lines(self.fibre))
            if self.sphere_bouquet is not None:
                lines.append(f"bouquet: {self.sphere_bouquet}")
        if self.tables:
            lines.append("")
            lines.append("intermediate tables")
            for name, t in self.tables:
                lines.append(f"  {name} ({t.coefficients})")
                lines.extend(_render_table_lines(t, indent="    "))
        lines.append("")
        lines.append("checks")
        for c in self.checks:
            tag = "pass" if c.passed else "FAIL"
            lines.append(f"  [{tag}] {c.name}: {c.detail}")
        if self.notes:
            lines.append("")
            lines.append("notes")
            for note in self.notes:
                lines.append(f"  - {note}")
        lines.append("")
        lines.append(f"seed {self.seed}, elapsed {self.elapsed:.2f} s")
        return "\n".join(lines) + "\n"


def _table_groups_json(table: HomologyTable) -> dict:
    return {
        str(d): {"rank": g.rank, "torsion": list(g.torsion)}
        for d, g in table.entries
    }


def _table_json(table: HomologyTable) -> dict:
    return {
        "space": table.space,
        "coefficients": table.coefficients,
        "groups": _table_groups_json(table),
    }


def _render_table_lines(table: HomologyTable, indent: str = "  ") -> list[str]:
    lines = []
    for d, g in reversed(table.entries):
        lines.append(f"{indent}H_{d} = {g}")
    if not table.entries:
        lines.append(f"{indent}trivial")
    return lines


def run_invariants(job: Job) -> Report:
    """Invariants only: verify the decomposition and compute the numbers."""
    start = time.perf_counter()
    inv = invariant_report(job.input, seed=job.seed, budgets=job.budgets)
    notes = _invariant_notes(inv)
    return Report(
        invariants=inv,
        fibre=None,
        tables=(),
        sphere_bouquet=None,
        checks=inv.checks,
        notes=tuple(notes),
        seed=job.seed,
        elapsed=time.perf_counter() - start,
    )


def run_homology(job: Job) -> Report:
    """Full pipeline: invariants, fibre homology, bouquet, and the
    intermediate tables with their consistency assertions evaluated."""
    start = time.perf_counter()
    inv = invariant_report(job.input, seed=job.seed, budgets=job.budgets)
    notes = _invariant_notes(inv)
    fibre, tables, table_checks, table_notes = collect_tables(
        inv.mu0, inv.mu1, inv.a, inv.corank, inv.a1, inv.n
    )
    notes.extend(table_notes)
    wedge = bouquet(fibre)
    checks = inv.checks + tuple(table_checks) + (
        CheckResult(
            "bouquet_torsion_free",
            True,
            f"fibre table is torsion-free with H_0 = Z; bouquet {wedge}",
        ),
    )
    return Report(
        invariants=inv,
        fibre=fibre,
        tables=tuple(tables),
        sphere_bouquet=wedge,
        checks=checks,
        notes=tuple(notes),
        seed=job.seed,
        elapsed=time.perf_counter() - start,
    )


def _invariant_notes(inv: InvariantReport) -> list[str]:
    notes = []
    if not inv.mu1_applicable:
        notes.append("det H is a unit at the origin (corank 0); mu1 reported as 0")
    if inv.a1_provenance == "assumed":
        notes.append("#A1 assumed 0; pass a1 = <int> or a1 = estimate to override")
    if inv.a1_provenance == "experimental-saturation":
        notes.append(
            "#A1 from the experimental saturation estimator; "
            "Betti numbers in degree n-1 are conditional on it"
        )
    return notes


def collect_tables(
    mu0: int, mu1: int, a: int, corank: int, a1: int, n: int
) -> tuple[HomologyTable, list[tuple[str, HomologyTable]], list[CheckResult], list[str]]:
    """Fibre table plus intermediates, with consistency checks evaluated.

    The table constructors raise InconsistencyError themselves when an
    identity fails; the CheckResult entries returned here record the
    identities that were evaluated and the values they took.
    """
    fibre = milnor_fibre_homology(mu0, mu1, a, corank, a1, n)
    m_table = table_M(mu0, mu1, a, corank, n)
    tables: list[tuple[str, HomologyTable]] = []
    checks: list[CheckResult] = []
    notes: list[str] = []

    checks.append(
        CheckResult(
            "fibre_M_rank_split",
            True,
            "rank H_d(F) = rank H_d(M) + (#A1 if d = n-1) for all d >= 4",
        )
    )

    if corank >= 2:
        n_aux = n if n >= AUX_TABLE_MIN_N else AUX_TABLE_MIN_N
        if n_aux != n:
            notes.append(
                f"auxiliary tables rendered at reference dimension n = {n_aux} "
                f"(job has n = {n} < {AUX_TABLE_MIN_N})"
            )
        b_low, b_low_mod2 = table_B(mu1, a)
        uc_b = universal_coefficients_mod2(b_low)
        _check_tables_equal(uc_b, b_low_mod2, "B")
        checks.append(
            CheckResult(
                "uc_mod2_B",
                True,
                "mod-2 table of B matches universal coefficients of the integral table",
            )
        )
        ladder = table_pair_B_Bu(mu1, a, n_aux)
        cover_chi = ladder[SPACE_BU_COVER].euler_characteristic()
        checks.append(
            CheckResult(
                "chi_double_cover",
                True,
                f"chi(B_u_tilde) = {cover_chi} = 2 * chi(B_u) in the even-n regime",
            )
        )
        x_int, x_mod2 = table_X(mu1, a, n_aux)
        uc_x = universal_coefficients_mod2(x_int)
        _check_tables_equal(uc_x, x_mod2, "X")
        checks.append(
            CheckResult(
                "uc_mod2_X",
                True,
                "mod-2 table of X matches universal coefficients of the integral table",
            )
        )
        tables.extend(
            [
                ("B_low", b_low),
                ("B_low_mod2", b_low_mod2),
                ("(B,B_u)", ladder[SPACE_PAIR]),
                ("B_high", ladder[SPACE_B]),
                ("B_u", ladder[SPACE_BU]),
                ("B_u_tilde", ladder[SPACE_BU_COVER]),
                ("X", x_int),
                ("X_mod2", x_mod2),
            ]
        )
    else:
        notes.append(
            "corank <= 1: the corank-2 locus is empty, so only the fibre and M "
            "tables apply"
        )
    tables.append(("M", m_table))
    return fibre, tables, checks, notes


def _check_tables_equal(left: HomologyTable, right: HomologyTable, what: str):
    from .errors import InconsistencyError

    degrees = set(left.degrees()) | set(right.degrees())
    for d in sorted(degrees):
        if left.group(d) != right.group(d):
            raise InconsistencyError(
                f"universal-coefficient mismatch for {what} in degree {d}: "
                f"{left.group(d)} vs {right.group(d)}"
            )
