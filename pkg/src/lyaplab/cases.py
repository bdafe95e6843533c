"""Registry of every analytic and numerical reference case, a regression
runner that recomputes each one and compares against its expected values, and
a parameter sweep over the Silnikov damping coefficient.

Case families:

* ``M1``-``M3`` -- explicit integrated-Jacobian matrices whose two exponent
  spectra are known in closed form (including the non-normal examples where
  the two spectra disagree about the sign of the largest exponent);
* ``S18-*`` -- the six closed-form cycle families of the two-ring system on
  a small (alpha, beta) grid, with analytic spectra and stability verdicts;
* ``S19-*`` -- the cubed-ring cycles, including the all-zero spectrum;
* ``n1``-``n11`` -- the Silnikov table rows (period, rotation number, cycle
  count, both spectra).  Row ``n9`` is stored twice: the literal printed
  parameter b=0.4981 and an ``n9-alt`` variant at b=0.3981, because the
  printed value is inconsistent with the row's own phenomenology; the report
  records which one actually shows two clearly separated cycles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cycles import (LimitCycle, NotPeriodicError, assess_stability,
                     classify_signs, default_zero_tol, detect_symmetric_pair,
                     distance_to_cycle, make_cycle, min_self_gap,
                     rotation_number)
from .exponents import (ExponentSpectrum, eigenvalue_exponents,
                        periodic_exponents, symmetrized_exponents)
from .integrate import IntegratedJacobian
from .systems import CubedRing, Silnikov, System, TwoRingTorus

__all__ = [
    "CaseRecord",
    "CaseReport",
    "FieldCheck",
    "list_cases",
    "get_case",
    "run_case",
    "sweep_silnikov",
    "SweepRow",
    "write_sweep_csv",
    "SWEEP_CSV_HEADER",
]

TWO_PI = 2.0 * np.pi
SQRT_101 = np.sqrt(101.0)

# default comparison tolerances; individual records override per field
TOL_MATRIX = 1e-10        # closed-form matrix cases
TOL_RING = 1e-6           # analytic one-period spectra
TOL_LE = 1e-2             # Silnikov spectra, absolute per component
TOL_PERIOD_REL = 1e-3     # Silnikov period, relative

N_SEED = (0.5, 0.1, 0.0)


@dataclass(frozen=True)
class CaseRecord:
    id: str
    kind: str                              # "matrix" | "ring" | "silnikov"
    source: str                            # where the expected values come from
    expected: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    system: System | None = None
    matrix: Callable[[float], np.ndarray] | None = None
    anchor: tuple[float, float, float] | None = None
    period: float | None = None
    seed: tuple[float, float, float] = N_SEED
    zero_tol: float | None = None          # per-case sign-call tolerance
    notes: str = ""


@dataclass(frozen=True)
class FieldCheck:
    name: str
    computed: object
    expected: object
    delta: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    checks: tuple[FieldCheck, ...]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        return json.dumps({
            "case": self.case_id,
            "passed": self.passed,
            "checks": [{
                "field": c.name,
                "computed": _jsonable(c.computed),
                "expected": _jsonable(c.expected),
                "delta": c.delta,
                "tol": c.tol,
                "passed": c.passed,
            } for c in self.checks],
            "notes": list(self.notes),
        })

    def to_text(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"case {self.case_id}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(
                f"  {c.name:<{width}}  computed={_fmt(c.computed):<28} "
                f"expected={_fmt(c.expected):<28} delta={c.delta:<12.4g} "
                f"tol={c.tol:<10.4g} {'ok' if c.passed else 'FAIL'}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, (tuple, list, np.ndarray)):
        return [float(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _fmt(v) -> str:
    if isinstance(v, (tuple, list, np.ndarray)):
        return "(" + ",".join(f"{float(x):.6g}" for x in v) + ")"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _matrix_cases() -> list[CaseRecord]:
    le_m3_sym = ((SQRT_101 - 3.0) / 2.0, -3.0, -(SQRT_101 + 3.0) / 2.0)
    return [
        CaseRecord(
            id="M1", kind="matrix", source="matrix example M1 (rotation block)",
            matrix=lambda t: np.array([[1.0 * t, 0.0, 0.0],
                                       [0.0, -2.0 * t, 5.0 * t],
                                       [0.0, -5.0 * t, -2.0 * t]]),
            expected={"le_j": (1.0, -2.0, -2.0), "le_o": (1.0, -2.0, -2.0)},
            tolerances={"le_j": TOL_MATRIX, "le_o": TOL_MATRIX},
            notes="skew part cancels under symmetrization; both routes agree"),
        CaseRecord(
            id="M2", kind="matrix", source="matrix example M2",
            matrix=lambda t: np.array([[-1.0 * t, 0.0, 0.0],
                                       [0.0, -2.0 * t, 1.0 * t],
                                       [0.0, -1.0 * t, -3.0 * t]]),
            expected={"le_j": (-1.0, -2.5, -2.5), "le_o": (-1.0, -2.0, -3.0)},
            tolerances={"le_j": TOL_MATRIX, "le_o": TOL_MATRIX}),
        CaseRecord(
            id="M3", kind="matrix", source="matrix example M3",
            matrix=lambda t: np.array([[-1.0 * t, 10.0 * t, 0.0],
                                       [0.0, -2.0 * t, 0.0],
                                       [0.0, 0.0, -3.0 * t]]),
            expected={"le_j": (-1.0, -2.0, -3.0), "le_o": le_m3_sym},
            tolerances={"le_j": TOL_MATRIX, "le_o": TOL_MATRIX},
            notes="the two routes disagree about the sign of the largest exponent"),
    ]


def _ring_expected(kind: str, alpha: float, beta: float) -> dict:
    b2 = beta * beta
    if kind == "i":
        le = (b2, -alpha, -alpha)
    elif kind == "ii":
        le = (b2, alpha * alpha + alpha, alpha * alpha + alpha)
    elif kind in ("iii", "iv"):
        le = (-2.0 * b2, -alpha, -alpha)
    else:
        le = (-2.0 * b2, alpha * alpha + alpha, alpha * alpha + alpha)
    le = tuple(sorted(le, reverse=True))
    if kind == "i":
        stab = (("meta-stable" if alpha >= 0 else "unstable") if beta != 0
                else ("asymptotically-stable" if alpha > 0 else "meta-stable"))
    elif kind == "ii":
        stab = (("unstable" if alpha > 0 else "meta-stable") if beta != 0
                else ("meta-stable" if alpha >= 0 else "asymptotically-stable"))
    elif kind in ("iii", "iv"):
        stab = "asymptotically-stable" if alpha > 0 else "meta-stable"
    else:
        stab = "meta-stable" if alpha >= 0 else "asymptotically-stable"
    return {"le_j": le, "le_o": le, "stability": stab}


def _ring_anchor(kind: str, alpha: float, beta: float,
                 ) -> tuple[float, float, float]:
    rho = 1.0 if kind in ("i", "iii", "iv") else float(np.sqrt(1.0 + alpha))
    z = {"i": 0.0, "ii": 0.0, "iii": beta, "iv": -beta,
         "v": beta, "vi": -beta}[kind]
    return (0.0, rho, z)


def _ring_cases() -> list[CaseRecord]:
    out = []
    for kind in ("i", "ii", "iii", "iv", "v", "vi"):
        for alpha in (-0.5, 0.0, 0.5):
            for beta in (0.0, 1.0):
                exp = _ring_expected(kind, alpha, beta)
                out.append(CaseRecord(
                    id=f"S18-{kind}@{alpha:g},{beta:g}",
                    kind="ring",
                    source=f"two-ring cycle ({kind}), closed form",
                    system=TwoRingTorus(alpha, beta),
                    anchor=_ring_anchor(kind, alpha, beta),
                    period=TWO_PI,
                    expected=exp,
                    tolerances={"le_j": TOL_RING, "le_o": TOL_RING}))
    return out


def _cubed_cases() -> list[CaseRecord]:
    recs = []
    for kind, beta, z in (("i'", 0.0, 0.0), ("ii'", 0.7, 0.7),
                          ("iii'", 0.7, -0.7)):
        le = tuple(sorted((0.0, 0.0, -2.0 * beta * beta), reverse=True))
        recs.append(CaseRecord(
            id=f"S19-{kind}@{beta:g}",
            kind="ring",
            source=f"cubed-ring cycle ({kind}), closed form",
            system=CubedRing(beta),
            anchor=(0.0, 1.0, z),
            period=TWO_PI,
            expected={"le_j": le, "le_o": le,
                      "stability": "asymptotically-stable"},
            tolerances={"le_j": TOL_RING, "le_o": TOL_RING}))
    return recs


# (id, b, T, le_j, le_o, rotation, cycle_count, zero_tol, notes)
_SILNIKOV_TABLE = [
    ("n1", 0.8, 6.2848, (-0.0701, -0.0701, -0.6600),
     (0.5347, -0.4003, -0.9345), 1, 1, None, ""),
    ("n2", 0.6, 6.2899, (-0.1929, -0.1929, -0.2142),
     (0.5044, -0.4654, -0.6390), 1, 1, None, ""),
    ("n3", 0.5024, 6.2938, (-0.00018, -0.2511, -0.2511),
     (0.5000, -0.5000, -0.5024), 1, 1, 5e-5,
     "largest exponent is tiny but negative; sign call needs zero_tol 5e-5"),
    ("n4", 0.5023, 6.2938, (0.000017, -0.2512, -0.2512),
     (0.5000, -0.5000, -0.5023), 1, 1, 5e-6,
     "largest exponent is tiny but positive; sign call needs zero_tol 5e-6"),
    ("n5", 0.5000, 6.2939, (0.0046, -0.2523, -0.2523),
     (0.5000, -0.4984, -0.5016), 1, 1, 1e-3,
     "largest exponent below the default zero tolerance; case uses 1e-3"),
    ("n6", 0.4900, 6.2944, (0.0244, -0.2572, -0.2572),
     (0.5000, -0.4850, -0.5051), 1, 1, None, ""),
    ("n7", 0.4893, 6.2944, (0.0258, -0.2576, -0.2576),
     (0.5001, -0.4840, -0.5054), 1, 1, None,
     "one self-symmetric cycle; the symmetric mode relaxes very slowly here"),
    ("n8", 0.4892, 6.2944, (0.0259, -0.2576, -0.2576),
     (0.5001, -0.4839, -0.5054), 1, 2, None,
     "two mutually reflected cycles, very close together"),
    ("n9", 0.4981, 6.2945, (0.0260, -0.2576, -0.2576),
     (0.5001, -0.4838, -0.5054), 1, 2, None,
     "literal printed parameter; inconsistent with the row's own values"),
    ("n9-alt", 0.3981, 6.2945, (0.0260, -0.2576, -0.2576),
     (0.5001, -0.4838, -0.5054), 1, 2, None,
     "conjectured intended parameter for row n9"),
    ("n10", 0.3920, 12.7176, (0.1086, -0.2503, -0.2503),
     (0.5018, -0.3802, -0.5137), 2, 2, None, ""),
    ("n11", 0.3338, 83.6359, (0.1129, -0.2234, -0.2234),
     (0.5021, -0.3258, -0.5108), 13, 1, None,
     "exact integration yields T=84.2365 for this orbit; the printed period "
     "is not reproducible from the stated equations and parameters"),
]


def _silnikov_cases() -> list[CaseRecord]:
    out = []
    for (cid, b, T, lej, leo, rot, count, ztol, notes) in _SILNIKOV_TABLE:
        sign_j = "(a')" if lej[0] < 0 else "(e')"
        row = cid if not cid.endswith("-alt") else cid[:-4]
        out.append(CaseRecord(
            id=cid, kind="silnikov",
            source=f"reference table, row ({row})",
            system=Silnikov(1.0, b),
            expected={"period": T, "le_j": lej, "le_o": leo,
                      "rotation": rot, "cycle_count": count,
                      "sign_j": sign_j, "sign_o": "(e')",
                      "stability": "asymptotically-stable"},
            tolerances={"period": TOL_PERIOD_REL, "le_j": TOL_LE,
                        "le_o": TOL_LE},
            zero_tol=ztol, notes=notes))
    return out


_REGISTRY: dict[str, CaseRecord] | None = None


def _registry() -> dict[str, CaseRecord]:
    global _REGISTRY
    if _REGISTRY is None:
        recs = (_matrix_cases() + _ring_cases() + _cubed_cases()
                + _silnikov_cases())
        _REGISTRY = {r.id: r for r in recs}
    return _REGISTRY


def list_cases() -> list[CaseRecord]:
    """All registry records, matrix cases first, then rings, then the table."""
    return list(_registry().values())


def get_case(case_id: str) -> CaseRecord:
    try:
        return _registry()[case_id]
    except KeyError:
        raise KeyError(f"unknown case id {case_id!r}; see list_cases()") from None


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def _check_triple(name: str, computed, expected, tol: float) -> FieldCheck:
    delta = float(np.max(np.abs(np.asarray(computed) - np.asarray(expected))))
    return FieldCheck(name, tuple(float(x) for x in computed),
                      tuple(float(x) for x in expected), delta, tol,
                      delta <= tol)


def _check_exact(name: str, computed, expected) -> FieldCheck:
    ok = computed == expected
    return FieldCheck(name, computed, expected, 0.0 if ok else 1.0, 0.0, ok)


def _run_matrix_case(rec: CaseRecord, t: float = 1.0) -> CaseReport:
    ij = IntegratedJacobian(rec.matrix(t), t)
    checks = (
        _check_triple("le_j", eigenvalue_exponents(ij), rec.expected["le_j"],
                      rec.tolerances["le_j"]),
        _check_triple("le_o", symmetrized_exponents(ij), rec.expected["le_o"],
                      rec.tolerances["le_o"]),
    )
    return CaseReport(rec.id, checks)


def _run_ring_case(rec: CaseRecord) -> CaseReport:
    # the anchor is exact, so the polyline can be built at relaxed tolerance;
    # the one-period spectra keep the tight default (repelling cycles amplify
    # integration error by exp(rate * T))
    cycle = make_cycle(rec.system, rec.anchor, rec.period, rtol=1e-9, atol=1e-11)
    spec = periodic_exponents(rec.system, cycle)
    checks = [
        _check_triple("le_j", spec.le_j, rec.expected["le_j"],
                      rec.tolerances["le_j"]),
        _check_triple("le_o", spec.le_o, rec.expected["le_o"],
                      rec.tolerances["le_o"]),
    ]
    notes = []
    if "stability" in rec.expected:
        verdict = assess_stability(rec.system, cycle).verdict
        checks.append(_check_exact("stability", verdict,
                                   rec.expected["stability"]))
        if verdict != rec.expected["stability"]:
            notes.append("probe evidence cannot see attraction that is both "
                         "confined to a measure-zero invariant set and "
                         "slower than any exponential")
    return CaseReport(rec.id, tuple(checks), tuple(notes))


def _pair_separation(cycles: tuple[LimitCycle, ...]) -> float:
    if len(cycles) < 2:
        return 0.0
    return float(distance_to_cycle(cycles[1].polyline[::8], cycles[0]).min())


def _run_silnikov_case(rec: CaseRecord) -> CaseReport:
    exp = rec.expected
    try:
        pair = detect_symmetric_pair(rec.system, rec.seed)
    except NotPeriodicError as err:
        fail = FieldCheck("detection", f"not-periodic ({err})", "cycle", 1.0,
                          0.0, False)
        return CaseReport(rec.id, (fail,))
    cycle = pair.cycles[0]
    spec = periodic_exponents(rec.system, cycle)
    ztol = rec.zero_tol if rec.zero_tol is not None else default_zero_tol(spec.le_j)

    # probes must stay well inside the basin: bound them by both the orbit's
    # own strand spacing and the distance to a twin attractor when present
    probe_cap = 0.2 * min_self_gap(cycle)
    if pair.count == 2:
        probe_cap = min(probe_cap, 0.25 * _pair_separation(pair.cycles))
    probe_size = min(1e-2, max(1e-4, probe_cap))

    t_rel = abs(cycle.period - exp["period"]) / exp["period"]
    checks = [
        FieldCheck("period", cycle.period, exp["period"], t_rel,
                   rec.tolerances["period"], t_rel <= rec.tolerances["period"]),
        _check_triple("le_j", spec.le_j, exp["le_j"], rec.tolerances["le_j"]),
        _check_triple("le_o", spec.le_o, exp["le_o"], rec.tolerances["le_o"]),
        _check_exact("rotation", cycle.rotation_number, exp["rotation"]),
        _check_exact("cycle_count", pair.count, exp["cycle_count"]),
        _check_exact("sign_j", classify_signs(spec.le_j, ztol).label,
                     exp["sign_j"]),
        _check_exact("sign_o", classify_signs(spec.le_o, ztol).label,
                     exp["sign_o"]),
        _check_exact("stability",
                     assess_stability(rec.system, cycle,
                                      probe_size=probe_size).verdict,
                     exp["stability"]),
    ]
    notes = [f"detected period {cycle.period:.6f}, residual "
             f"{cycle.recurrence_residual:.2e}, symmetry {pair.verdict}"]
    if pair.count == 2:
        sep = _pair_separation(pair.cycles)
        notes.append(f"pair separation {sep:.4f} "
                     f"({'clearly separated' if sep > 0.05 else 'very close'})")
    if rec.id.startswith("n9"):
        sep = _pair_separation(pair.cycles)
        pheno = pair.count == 2 and sep > 0.05
        checks.append(FieldCheck("two-clearly-separated-cycles", pheno, True,
                                 0.0 if pheno else 1.0, 0.0, pheno))
        notes.append("phenomenology check: the row describes two clearly "
                     "separated symmetric cycles")
    if rec.notes:
        notes.append(rec.notes)
    return CaseReport(rec.id, tuple(checks), tuple(notes))


_REPORT_CACHE: dict[str, CaseReport] = {}


def run_case(case_id: str, tol_overrides: dict | None = None,
             use_cache: bool = True) -> CaseReport:
    """Recompute one registry case and compare against its expected values.

    Deterministic: identical inputs produce identical reports.  Reports are
    cached per process unless tolerance overrides are supplied.
    """
    rec = get_case(case_id)
    if tol_overrides:
        rec = CaseRecord(**{**rec.__dict__,
                            "tolerances": {**rec.tolerances, **tol_overrides}})
        use_cache = False
    if use_cache and case_id in _REPORT_CACHE:
        return _REPORT_CACHE[case_id]
    if rec.kind == "matrix":
        report = _run_matrix_case(rec)
    elif rec.kind == "ring":
        report = _run_ring_case(rec)
    else:
        report = _run_silnikov_case(rec)
    if use_cache:
        _REPORT_CACHE[case_id] = report
    return report


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

SWEEP_CSV_HEADER = "b,T,rotation,cycles,lej1,lej2,lej3,leo1,leo2,leo3,sign_class"


@dataclass(frozen=True)
class SweepRow:
    b: float
    period: float
    rotation: int
    cycles: int
    le_j: tuple[float, float, float]
    le_o: tuple[float, float, float]
    sign_class: str


def sweep_silnikov(a: float, b_from: float, b_to: float, steps: int,
                   zero_tol: float | None = None) -> list[SweepRow]:
    """Detect, measure, and classify the attracting orbit(s) for each b on a
    uniform grid from b_from to b_to.  Per-cell failures become rows with NaN
    numerics and an explanatory sign_class; the sweep continues.
    """
    if steps < 1 or (steps >= 2 and b_from == b_to):
        raise ValueError("need steps >= 2 with distinct endpoints, or steps == 1")
    bs = np.linspace(b_from, b_to, steps) if steps > 1 else np.array([b_from])
    rows = []
    for b in bs:
        try:
            system = Silnikov(a, float(b))
            pair = detect_symmetric_pair(system, N_SEED)
            cycle = pair.cycles[0]
            spec = periodic_exponents(system, cycle)
            ztol = zero_tol if zero_tol is not None else default_zero_tol(spec.le_j)
            rows.append(SweepRow(float(b), cycle.period, cycle.rotation_number,
                                 pair.count, spec.le_j, spec.le_o,
                                 classify_signs(spec.le_j, ztol).label))
        except (NotPeriodicError, ValueError) as err:
            nan3 = (float("nan"),) * 3
            rows.append(SweepRow(float(b), float("nan"), 0, 0, nan3, nan3,
                                 f"error:{type(err).__name__}"))
    return rows


def write_sweep_csv(rows: list[SweepRow], stream) -> None:
    stream.write(SWEEP_CSV_HEADER + "\n")
    for r in rows:
        vals = [f"{r.b:.17g}", f"{r.period:.17g}", str(r.rotation),
                str(r.cycles)]
        vals += [f"{v:.17g}" for v in r.le_j] + [f"{v:.17g}" for v in r.le_o]
        vals.append(r.sign_class)
        stream.write(",".join(vals) + "\n")
