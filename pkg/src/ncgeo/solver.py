"""Windowed exact linear algebra and the constructive degree-1 solver.

Everything here works on finite truncations of the lattice complexes: the
variables are cochain coefficients on the square window [-N, N]^2 and the
constraints are coefficient equations of one of the four named differentials
(`twisted_alpha1`, `twisted_alpha2`, `alpha1`, `alpha2`).

Two truncation conventions are used, on purpose:

* kernel computations impose an equation only when every input site it
  references lies inside the window (the full-stencil rule).  This removes
  boundary artifacts, so the reported nullity is the honest kernel
  dimension of the truncated system.
* membership solves (is the target a coboundary?) impose the equation at
  every site the windowed variables can reach.  An "unsolvable" answer then
  comes with a certificate: an exact linear combination of the imposed
  equations whose left side cancels identically while the right side does
  not.  Unsolvability is always window-bounded evidence, never a blanket
  claim about the infinite lattice.

Elimination is exact Gauss-Jordan over the scalar field with a fixed pivot
rule (variables ordered by (|n|+|m|, n, m), then slot), which makes every
witness, basis and certificate deterministic.

The second half of the module implements the constructive proof that the
flip-twisted first cohomology vanishes, as a two-phase pipeline:

* `line_eliminate` cancels one row of the first component with a degree-0
  cochain supported on that row, walking outward in both directions from
  the gauge choice gamma[0] = gamma[1] = 0;
* `row_solve` absorbs one surviving second-component row eta (which must
  satisfy the row recurrence eta[w+1] = lambda**(s0-1) eta[w-1]; this is
  checked, not assumed) with a telescoping stack of rows walking away from
  it until the uncancelled remainder falls outside the window;
* `h1_trivialize` composes the two over all rows of a windowed cocycle and
  returns a witness whose differential reproduces the input exactly at
  every interior site of the window.

Witnesses are not canonical: the gauge above and the walk directions are
fixed choices among many, and different windows give different tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .cochains import (
    CochainPair,
    LatticeFunctional,
    alpha1,
    alpha2,
    kernel_check_twisted_deg1,
    site_key,
    twisted_alpha1,
    twisted_alpha2,
)
from .scalars import ONE, ZERO, Scalar, lambda_pow
from .torus import Site

VarKey = tuple[int, Site]
EqKey = tuple[int, Site]


class RecurrenceViolation(ValueError):
    """A row handed to row_solve fails its defining recurrence."""

    def __init__(self, site: Site, message: str):
        super().__init__(message)
        self.site = site


class NotACocycle(ValueError):
    """h1_trivialize was given a pair outside the windowed kernel."""

    def __init__(self, site: Site):
        super().__init__(f"twisted_alpha2 of the input is nonzero at {site}")
        self.site = site


# ---------------------------------------------------------------------------
# named operators


def _refs_twisted_alpha1(slot: int, n: int, m: int):
    if slot == 0:
        return ((0, (n + 1, m)), (0, (n - 1, m)))
    return ((0, (n, m + 1)), (0, (n, m - 1)))


def _refs_twisted_alpha2(slot: int, n: int, m: int):
    return ((0, (n, m + 1)), (0, (n, m - 1)), (1, (n + 1, m)), (1, (n - 1, m)))


def _refs_alpha1(slot: int, n: int, m: int):
    if slot == 0:
        return ((0, (n - 1, m)),)
    return ((0, (n, m - 1)),)


def _refs_alpha2(slot: int, n: int, m: int):
    return ((0, (n, m - 1)), (1, (n - 1, m)))


@dataclass(frozen=True)
class Operator:
    name: str
    domain: str
    codomain: str
    apply: Callable
    refs: Callable[[int, int, int], tuple]


OPERATORS: dict[str, Operator] = {
    "twisted_alpha1": Operator(
        "twisted_alpha1", "functional", "pair", twisted_alpha1, _refs_twisted_alpha1
    ),
    "twisted_alpha2": Operator(
        "twisted_alpha2", "pair", "functional", twisted_alpha2, _refs_twisted_alpha2
    ),
    "alpha1": Operator("alpha1", "functional", "pair", alpha1, _refs_alpha1),
    "alpha2": Operator("alpha2", "pair", "functional", alpha2, _refs_alpha2),
}


def _get_operator(name: str) -> Operator:
    try:
        return OPERATORS[name]
    except KeyError:
        raise ValueError(
            f"unknown operator {name!r}; expected one of {sorted(OPERATORS)}"
        ) from None


def _nslots(kind: str) -> int:
    return 2 if kind == "pair" else 1


def _unit_input(op: Operator, slot: int, site: Site):
    d = LatticeFunctional.delta(site[0], site[1])
    if op.domain == "functional":
        return d
    z = LatticeFunctional.zero()
    return CochainPair(d, z) if slot == 0 else CochainPair(z, d)


def _items(op: Operator, out):
    if op.codomain == "functional":
        for site, c in out.terms.items():
            yield (0, site, c)
    else:
        for site, c in out.first.terms.items():
            yield (0, site, c)
        for site, c in out.second.terms.items():
            yield (1, site, c)


def _coeff_of(op: Operator, obj, key: EqKey) -> Scalar:
    slot, site = key
    if op.codomain == "functional":
        return obj.coeff(*site)
    return (obj.first if slot == 0 else obj.second).coeff(*site)


def _vector_object(op: Operator, vec: dict[VarKey, Scalar]):
    if op.domain == "functional":
        return LatticeFunctional({site: c for (_, site), c in vec.items()})
    t0 = {site: c for (slot, site), c in vec.items() if slot == 0}
    t1 = {site: c for (slot, site), c in vec.items() if slot == 1}
    return CochainPair(
        LatticeFunctional(t0, role="deg1.1"), LatticeFunctional(t1, role="deg1.2")
    )


# ---------------------------------------------------------------------------
# windowed systems


def _variables(op: Operator, window: int) -> list[VarKey]:
    sites = sorted(
        ((n, m) for n in range(-window, window + 1) for m in range(-window, window + 1)),
        key=site_key,
    )
    return [(slot, s) for s in sites for slot in range(_nslots(op.domain))]


def _inside(site: Site, window: int) -> bool:
    return abs(site[0]) <= window and abs(site[1]) <= window


def _equations(op: Operator, window: int, full_stencil: bool) -> list[EqKey]:
    keep = all if full_stencil else any
    out = []
    for slot in range(_nslots(op.codomain)):
        for n in range(-window - 1, window + 2):
            for m in range(-window - 1, window + 2):
                refs = op.refs(slot, n, m)
                if keep(_inside(s, window) for _, s in refs):
                    out.append((slot, (n, m)))
    out.sort(key=lambda e: (e[0], site_key(e[1])))
    return out


class _Row:
    __slots__ = ("coeffs", "rhs", "combo")

    def __init__(self, coeffs, rhs, combo):
        self.coeffs = coeffs
        self.rhs = rhs
        self.combo = combo


def _assemble(op: Operator, window: int, eqs: list[EqKey], target=None, track=False):
    eq_index = {e: i for i, e in enumerate(eqs)}
    rows = []
    for i, e in enumerate(eqs):
        rhs = ZERO if target is None else _coeff_of(op, target, e)
        rows.append(_Row({}, rhs, {i: ONE} if track else None))
    for v in _variables(op, window):
        out = op.apply(_unit_input(op, *v))
        for slot, site, c in _items(op, out):
            i = eq_index.get((slot, site))
            if i is not None:
                rows[i].coeffs[v] = c
    return rows


def _scale_row(row: _Row, f: Scalar) -> None:
    row.coeffs = {k: f * c for k, c in row.coeffs.items()}
    row.rhs = f * row.rhs
    if row.combo is not None:
        row.combo = {k: f * c for k, c in row.combo.items()}


def _axpy(row: _Row, f: Scalar, pivot: _Row) -> None:
    """row -= f * pivot, pruning exact zeros."""
    for k, c in pivot.coeffs.items():
        nv = row.coeffs.get(k, ZERO) - f * c
        if nv:
            row.coeffs[k] = nv
        elif k in row.coeffs:
            del row.coeffs[k]
    row.rhs = row.rhs - f * pivot.rhs
    if row.combo is not None:
        for k, c in pivot.combo.items():
            nv = row.combo.get(k, ZERO) - f * c
            if nv:
                row.combo[k] = nv
            elif k in row.combo:
                del row.combo[k]


def _eliminate(rows: list[_Row], var_order: list[VarKey]) -> dict[VarKey, int]:
    """Gauss-Jordan in the fixed variable order; returns var -> pivot row."""
    pivots: dict[VarKey, int] = {}
    pivot_rows: set[int] = set()
    for v in var_order:
        at = None
        for i, r in enumerate(rows):
            if i not in pivot_rows and r.coeffs.get(v):
                at = i
                break
        if at is None:
            continue
        piv = rows[at]
        lead = piv.coeffs[v]
        if lead != ONE:
            _scale_row(piv, lead.inv())
        for i, r in enumerate(rows):
            if i != at:
                f = r.coeffs.get(v)
                if f:
                    _axpy(r, f, piv)
        pivots[v] = at
        pivot_rows.add(at)
    return pivots


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a windowed kernel or membership computation.

    status is one of "kernel-basis", "solved", "unsolvable".  On "solved"
    the witness satisfies operator(witness) == target exactly (this is
    re-verified by applying the operator, not trusted from elimination);
    the residual is that exact difference.  On "unsolvable" the certificate
    is a tuple of ((slot, site), multiplier) equation combinations that
    cancel on the left and not on the right.
    """

    operator: str
    window: int
    status: str
    witness: object = None
    residual: object = None
    certificate: tuple = None
    nullity: int = None
    basis: tuple = None

    def to_json(self) -> dict:
        out = {"operator": self.operator, "window": self.window, "status": self.status}
        if self.nullity is not None:
            out["nullity"] = self.nullity
        if self.basis is not None:
            out["basis"] = [b.to_json() for b in self.basis]
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.residual is not None:
            out["residual"] = self.residual.to_json()
        if self.certificate is not None:
            out["certificate"] = [
                {"slot": slot, "n": site[0], "m": site[1], "c": str(c)}
                for (slot, site), c in self.certificate
            ]
        return out


def kernel_dimension(operator: str, window: int) -> SolveReport:
    """Exact nullity and kernel basis of a differential on the window.

    Only full-stencil equations are imposed.  Basis vectors are normalized
    to 1 at their free coefficient and listed in pivot order.
    """
    op = _get_operator(operator)
    if window < 3:
        raise ValueError("window radius must be at least 3")
    var_order = _variables(op, window)
    eqs = _equations(op, window, full_stencil=True)
    rows = _assemble(op, window, eqs)
    pivots = _eliminate(rows, var_order)
    free = [v for v in var_order if v not in pivots]
    basis = []
    for fv in free:
        vec = {fv: ONE}
        for pv, i in pivots.items():
            c = rows[i].coeffs.get(fv)
            if c:
                vec[pv] = -c
        basis.append(_vector_object(op, vec))
    return SolveReport(
        operator=op.name,
        window=window,
        status="kernel-basis",
        nullity=len(free),
        basis=tuple(basis),
    )


def coboundary_solve(target, operator: str, window: int) -> SolveReport:
    """Exact membership of target in the image of a windowed differential.

    The target support must keep a margin of 2 from the window edge.  On
    failure the report carries an equation-combination certificate, checked
    against the original (pre-elimination) system before being returned.
    """
    op = _get_operator(operator)
    if window < 3:
        raise ValueError("window radius must be at least 3")
    if op.codomain == "functional":
        if not isinstance(target, LatticeFunctional):
            raise TypeError(f"{op.name} needs a LatticeFunctional target")
        sites = list(target.terms)
    else:
        if not isinstance(target, CochainPair):
            raise TypeError(f"{op.name} needs a CochainPair target")
        sites = list(target.first.terms) + list(target.second.terms)
    if any(abs(n) > window - 2 or abs(m) > window - 2 for n, m in sites):
        raise ValueError("target support must stay 2 sites clear of the window edge")

    var_order = _variables(op, window)
    eqs = _equations(op, window, full_stencil=False)
    rows = _assemble(op, window, eqs, target=target, track=True)
    original = [(dict(r.coeffs), r.rhs) for r in rows]
    pivots = _eliminate(rows, var_order)

    bad = next((i for i, r in enumerate(rows) if not r.coeffs and r.rhs), None)
    if bad is not None:
        combo = rows[bad].combo
        lhs: dict[VarKey, Scalar] = {}
        rhs = ZERO
        for i, mult in combo.items():
            coeffs, b = original[i]
            for k, c in coeffs.items():
                nv = lhs.get(k, ZERO) + mult * c
                if nv:
                    lhs[k] = nv
                elif k in lhs:
                    del lhs[k]
            rhs = rhs + mult * b
        if lhs or not rhs:
            raise RuntimeError("elimination produced an invalid certificate")
        certificate = tuple(
            sorted(
                ((eqs[i], mult) for i, mult in combo.items() if mult),
                key=lambda kv: (kv[0][0], site_key(kv[0][1])),
            )
        )
        return SolveReport(
            operator=op.name, window=window, status="unsolvable", certificate=certificate
        )

    vec = {v: rows[i].rhs for v, i in pivots.items() if rows[i].rhs}
    witness = _vector_object(op, vec)
    residual = op.apply(witness) - target
    if not residual.is_zero():
        raise RuntimeError("elimination produced an invalid witness")
    return SolveReport(
        operator=op.name, window=window, status="solved", witness=witness, residual=residual
    )


# ---------------------------------------------------------------------------
# constructive solver for the twisted degree-1 vanishing


def _one_row(f: LatticeFunctional, s0: int, window: int, what: str) -> dict[int, Scalar]:
    row: dict[int, Scalar] = {}
    for (n, m), c in f.terms.items():
        if m != s0:
            raise ValueError(f"{what} must be supported on the single row y={s0}")
        if abs(n) > window:
            raise ValueError(f"{what} support exceeds the window")
        row[n] = c
    return row


def line_eliminate(row: LatticeFunctional, s0: int, window: int) -> LatticeFunctional:
    """Degree-0 cochain gamma on row s0 whose twisted differential's first
    component reproduces the given row at every site |n| <= window-1.

    Solves gamma[n+1] - lambda**s0 gamma[n-1] = h[n] per parity chain with
    the gauge gamma[0] = gamma[1] = 0, walking left from n=0 / n=-1 and
    right from n=2 / n=1.  Walks stop early once past the support with a
    zero carry; otherwise the geometric tail is truncated at |n| = window.
    """
    if window < 2:
        raise ValueError("window radius must be at least 2")
    h = _one_row(row, s0, window, "line_eliminate row")
    gamma: dict[int, Scalar] = {}
    lo, hi = (min(h), max(h)) if h else (0, 0)
    lam_s0 = lambda_pow(s0)
    lam_inv = lambda_pow(-s0)
    for start in (0, -1):
        carry = ZERO
        n = start
        while n >= -window + 1 and (carry or (h and n >= lo)):
            carry = lam_inv * (carry - h.get(n, ZERO))
            if carry:
                gamma[n - 1] = carry
            n -= 2
    for start in (2, 1):
        carry = ZERO
        n = start
        while n <= window - 1 and (carry or (h and n <= hi)):
            carry = h.get(n, ZERO) + lam_s0 * carry
            if carry:
                gamma[n + 1] = carry
            n += 2
    return LatticeFunctional({(n, s0): c for n, c in gamma.items()})


def row_solve(
    eta: LatticeFunctional, s0: int, direction: str, window: int
) -> LatticeFunctional:
    """Degree-0 cochain rho whose twisted differential is exactly the single
    row eta at y=s0 (second component; first component zero) at all interior
    sites, supported on rows walking below or above s0.

    Requires eta[w+1] = lambda**(s0-1) eta[w-1] at every |w| <= window-1;
    a violation is rejected with the offending site.  The telescoping stack
    stops once the uncancelled row falls outside |y| <= window-1.
    """
    if window < 2:
        raise ValueError("window radius must be at least 2")
    if direction not in ("below", "above"):
        raise ValueError("direction must be 'below' or 'above'")
    h = _one_row(eta, s0, window, "row_solve row")
    fact = lambda_pow(s0 - 1)
    for w in range(-window + 1, window):
        if h.get(w + 1, ZERO) != fact * h.get(w - 1, ZERO):
            raise RecurrenceViolation(
                (w, s0),
                f"row fails eta[w+1] = lambda^(s0-1) eta[w-1] at w={w}, y={s0}",
            )
    if not h:
        return LatticeFunctional.zero()
    rho: dict[Site, Scalar] = {}
    if direction == "below":
        depth = max(0, math.ceil((s0 + window) / 2))
        for k in range(1, depth + 1):
            r = s0 - (2 * k - 1)
            for n, c in h.items():
                rho[(n, r)] = -(lambda_pow(-(k - 1) * n) * c)
    else:
        depth = max(0, math.ceil((window - s0) / 2))
        for k in range(1, depth + 1):
            r = s0 + (2 * k - 1)
            for n, c in h.items():
                rho[(n, r)] = lambda_pow(k * n) * c
    return LatticeFunctional(rho)


def _rows_of(f: LatticeFunctional) -> dict[int, LatticeFunctional]:
    rows: dict[int, dict[Site, Scalar]] = {}
    for (n, m), c in f.terms.items():
        rows.setdefault(m, {})[(n, m)] = c
    return {m: LatticeFunctional(t) for m, t in sorted(rows.items())}


def h1_trivialize(pair: CochainPair, window: int) -> SolveReport:
    """Constructive trivialization of a windowed twisted 1-cocycle.

    Phase 1 cancels every first-component row with line_eliminate; phase 2
    absorbs each surviving second-component row with row_solve (walking
    below for rows at y >= 0, above for y < 0).  The returned witness psi
    satisfies twisted_alpha1(psi) = pair exactly at all sites with
    |n|, |m| <= window-1; the report's residual is that restriction.
    """
    if window < 3:
        raise ValueError("window radius must be at least 3")
    for f in (pair.first, pair.second):
        if any(abs(n) > window or abs(m) > window for n, m in f.terms):
            raise ValueError("pair support exceeds the window")
    ok, site = kernel_check_twisted_deg1(pair, window)
    if not ok:
        raise NotACocycle(site)

    gamma = LatticeFunctional.zero()
    for s0, rowf in _rows_of(pair.first).items():
        gamma = gamma + line_eliminate(rowf, s0, window)
    correction = twisted_alpha1(gamma)
    leftover = (pair.second - correction.second).restrict(window)

    rho = LatticeFunctional.zero()
    for s0, rowf in _rows_of(leftover).items():
        direction = "above" if s0 < 0 else "below"
        rho = rho + row_solve(rowf, s0, direction, window)

    psi = gamma + rho
    out = twisted_alpha1(psi)
    residual = CochainPair(
        (out.first - pair.first).restrict(window - 1),
        (out.second - pair.second).restrict(window - 1),
    )
    if not residual.is_zero():
        raise RuntimeError("trivialization left a nonzero interior residual")
    return SolveReport(
        operator="twisted_alpha1",
        window=window,
        status="solved",
        witness=psi,
        residual=residual,
    )
