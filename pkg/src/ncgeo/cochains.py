"""Cochains on the lattice dual of the twisted torus and their differentials.

A degree-0 or degree-2 cochain is a coefficient map phi: Z^2 -> Q(u); a
degree-1 cochain is a pair of such maps.  Finite cochains are identified
with finite series sum phi[n,m] U1**n U2**m and multiplied with the same
twisted product as the algebra itself, so the two short differentials of
the twisted (flip-equivariant) complex are literally

    twisted_alpha1(phi)  = (U1**-1 phi - phi U1,  U2**-1 phi - phi U2)
    twisted_alpha2(f, g) = U2**-1 f - lambda f U2 - lambda U1**-1 g + g U1

and of the untwisted complex

    alpha1(phi)  = (U1 phi - phi U1,  U2 phi - phi U2)
    alpha2(f, g) = U2 f - lambda f U2 - lambda U1 g + g U1.

Coefficientwise these expand to the stencil recurrences

    twisted_alpha1: first[n,m]  = phi[n+1,m] - lambda**m  phi[n-1,m]
                    second[n,m] = lambda**-n phi[n,m+1] - phi[n,m-1]
    twisted_alpha2: out[n,m] = lambda**-n f[n,m+1] - lambda f[n,m-1]
                               - lambda g[n+1,m] + lambda**m g[n-1,m]
    alpha1:         first[n,m]  = (1 - lambda**m) phi[n-1,m]
                    second[n,m] = (lambda**n - 1) phi[n,m-1]
    alpha2:         out[n,m] = (lambda**n - lambda) f[n,m-1]
                               + (lambda**m - lambda) g[n-1,m]

which is the form used for rule-backed cochains of unbounded support.

The kernel of twisted_alpha1 is four dimensional: one generator per parity
class of the lattice.  Solving the kernel recurrences from a seed value 1
at (i, j) gives the closed form implemented by make_D:

    D(i,j)[n, m] = lambda**((n*m - i*j)/2)   for n = i, m = j (mod 2).

Pullbacks by the flip element of the equivariant structure are conjugation
formulas read off degreewise; on a coefficient map they act by

    twisted degree 0:   psi[a,b] = phi[-a,-b]
    twisted degree 2:   psi[a,b] = lambda**(b-a-1) phi[-a,-b]
    untwisted degree 2: psi[a,b] = lambda**(a+b+2) phi[-2-a,-2-b]
    untwisted degree 1: w1[a,b]  = -lambda**b phi1[-2-a,-b]
                        w2[a,b]  = -lambda**a phi2[-a,-2-b]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .scalars import ONE, ZERO, Scalar, lambda_pow
from .torus import Site, TorusElement

_U1 = TorusElement.monomial(1, 0)
_U2 = TorusElement.monomial(0, 1)
_U1i = TorusElement.monomial(-1, 0)
_U2i = TorusElement.monomial(0, -1)
_LAM = lambda_pow(1)


def site_key(site: Site) -> tuple[int, int, int]:
    """Deterministic site order: by taxicab norm, then lexicographic."""
    n, m = site
    return (abs(n) + abs(m), n, m)


class LatticeFunctional:
    """Coefficient map on Z^2, either finite or backed by a total rule.

    Finite functionals support exact linear algebra and serialization;
    rule-backed ones (the generator cocycles) answer coefficient queries at
    any site and can be restricted to a finite window.
    """

    __slots__ = ("terms", "rule", "rule_json", "role")

    def __init__(
        self,
        terms: dict[Site, Scalar] | None = None,
        *,
        rule: Callable[[int, int], Scalar] | None = None,
        rule_json: dict | None = None,
        role: str = "deg0",
    ):
        if rule is not None and terms is not None:
            raise ValueError("a functional is finite or rule-backed, not both")
        clean = None
        if rule is None:
            clean = {}
            for (n, m), c in (terms or {}).items():
                if isinstance(c, int):
                    c = Scalar.from_int(c)
                if c:
                    clean[(int(n), int(m))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "rule_json", rule_json)
        object.__setattr__(self, "role", role)

    def __setattr__(self, *a):  # pragma: no cover - guard rail
        raise AttributeError("LatticeFunctional is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, role: str = "deg0") -> "LatticeFunctional":
        return cls({}, role=role)

    @classmethod
    def delta(cls, n: int, m: int, c: Scalar | int = 1, role: str = "deg0") -> "LatticeFunctional":
        return cls({(n, m): c}, role=role)

    @classmethod
    def from_torus(cls, x: TorusElement, role: str = "deg0") -> "LatticeFunctional":
        return cls(dict(x.terms), role=role)

    # -- queries ----------------------------------------------------------------

    def is_finite(self) -> bool:
        return self.rule is None

    def coeff(self, n: int, m: int) -> Scalar:
        if self.rule is not None:
            return self.rule(n, m)
        return self.terms.get((n, m), ZERO)

    def support(self) -> list[Site]:
        if self.rule is not None:
            raise TypeError("rule-backed functional has unbounded support; restrict first")
        return sorted(self.terms, key=site_key)

    def is_zero(self) -> bool:
        if self.rule is not None:
            raise TypeError("cannot decide vanishing of a rule-backed functional; restrict first")
        return not self.terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeFunctional):
            return NotImplemented
        if self.rule is not None or other.rule is not None:
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if self.rule is not None:
            tag = self.rule_json or {"rule": "derived"}
            return f"LatticeFunctional(rule={tag})"
        return f"LatticeFunctional({self.as_torus()!r})"

    def as_torus(self) -> TorusElement:
        if self.rule is not None:
            raise TypeError("rule-backed functional is not a finite series; restrict first")
        return TorusElement(self.terms)

    def restrict(self, radius: int) -> "LatticeFunctional":
        """Finite functional agreeing with this one on [-radius, radius]^2
        and vanishing outside."""
        if self.rule is None:
            kept = {
                (n, m): c
                for (n, m), c in self.terms.items()
                if abs(n) <= radius and abs(m) <= radius
            }
            return LatticeFunctional(kept, role=self.role)
        out = {}
        for n in range(-radius, radius + 1):
            for m in range(-radius, radius + 1):
                c = self.rule(n, m)
                if c:
                    out[(n, m)] = c
        return LatticeFunctional(out, role=self.role)

    # -- linear structure (finite only) -------------------------------------------

    def _need_finite(self, op: str) -> None:
        if self.rule is not None:
            raise TypeError(f"{op} requires a finite functional; restrict first")

    def __add__(self, other: "LatticeFunctional") -> "LatticeFunctional":
        if not isinstance(other, LatticeFunctional):
            return NotImplemented
        self._need_finite("+")
        other._need_finite("+")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return LatticeFunctional(out, role=self.role)

    def __sub__(self, other: "LatticeFunctional") -> "LatticeFunctional":
        if not isinstance(other, LatticeFunctional):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LatticeFunctional":
        self._need_finite("-")
        return LatticeFunctional({k: -c for k, c in self.terms.items()}, role=self.role)

    def scale(self, c: Scalar | int) -> "LatticeFunctional":
        self._need_finite("scale")
        if isinstance(c, int):
            c = Scalar.from_int(c)
        if not c:
            return LatticeFunctional({}, role=self.role)
        return LatticeFunctional({k: c * v for k, v in self.terms.items()}, role=self.role)

    # -- evaluation against algebra elements ------------------------------------------

    def pair_with(self, x: TorusElement) -> Scalar:
        """Dual pairing sum phi[n,m] * x[n,m] (finite because x is)."""
        out = ZERO
        for (n, m), c in x.terms.items():
            out = out + self.coeff(n, m) * c
        return out

    # -- serialization -------------------------------------------------------------------

    def to_json(self) -> dict:
        if self.rule is not None:
            if self.rule_json is None:
                raise ValueError("derived rule-backed functional has no serial form")
            return dict(self.rule_json)
        return self.as_torus().to_json()

    @classmethod
    def from_json(cls, data: dict, role: str = "deg0") -> "LatticeFunctional":
        if "rule" in data:
            if data["rule"] == "D":
                return make_D(int(data["i"]), int(data["j"]))
            raise ValueError(f"unknown functional rule {data['rule']!r}")
        return cls.from_torus(TorusElement.from_json(data), role=role)


@dataclass(frozen=True)
class CochainPair:
    """Degree-1 cochain: a pair of coefficient maps."""

    first: LatticeFunctional
    second: LatticeFunctional

    @classmethod
    def zero(cls) -> "CochainPair":
        return cls(LatticeFunctional.zero(role="deg1.1"), LatticeFunctional.zero(role="deg1.2"))

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def __add__(self, other: "CochainPair") -> "CochainPair":
        return CochainPair(self.first + other.first, self.second + other.second)

    def __sub__(self, other: "CochainPair") -> "CochainPair":
        return CochainPair(self.first - other.first, self.second - other.second)

    def restrict(self, radius: int) -> "CochainPair":
        return CochainPair(self.first.restrict(radius), self.second.restrict(radius))

    def to_json(self) -> dict:
        return {"first": self.first.to_json(), "second": self.second.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "CochainPair":
        return cls(
            LatticeFunctional.from_json(data["first"], role="deg1.1"),
            LatticeFunctional.from_json(data["second"], role="deg1.2"),
        )


# ---------------------------------------------------------------------------
# differentials


def _series(phi: LatticeFunctional | TorusElement) -> TorusElement:
    if isinstance(phi, TorusElement):
        return phi
    return phi.as_torus()


def twisted_alpha1(phi: LatticeFunctional, radius: int | None = None) -> CochainPair:
    """First differential of the flip-twisted complex."""
    if phi.is_finite():
        a = _series(phi)
        first = _U1i * a - a * _U1
        second = _U2i * a - a * _U2
        return CochainPair(
            LatticeFunctional.from_torus(first, role="deg1.1"),
            LatticeFunctional.from_torus(second, role="deg1.2"),
        )
    if radius is None:
        raise ValueError("rule-backed input needs a radius")
    f1, f2 = {}, {}
    for n in range(-radius, radius + 1):
        for m in range(-radius, radius + 1):
            c = phi.coeff(n + 1, m) - lambda_pow(m) * phi.coeff(n - 1, m)
            if c:
                f1[(n, m)] = c
            c = lambda_pow(-n) * phi.coeff(n, m + 1) - phi.coeff(n, m - 1)
            if c:
                f2[(n, m)] = c
    return CochainPair(
        LatticeFunctional(f1, role="deg1.1"), LatticeFunctional(f2, role="deg1.2")
    )


def twisted_alpha2(pair: CochainPair, radius: int | None = None) -> LatticeFunctional:
    """Second differential of the flip-twisted complex."""
    f, g = pair.first, pair.second
    if f.is_finite() and g.is_finite():
        fs, gs = _series(f), _series(g)
        out = _U2i * fs - _LAM * fs * _U2 - _LAM * (_U1i * gs) + gs * _U1
        return LatticeFunctional.from_torus(out, role="deg2")
    if radius is None:
        raise ValueError("rule-backed input needs a radius")
    out = {}
    for n in range(-radius, radius + 1):
        for m in range(-radius, radius + 1):
            c = (
                lambda_pow(-n) * f.coeff(n, m + 1)
                - _LAM * f.coeff(n, m - 1)
                - _LAM * g.coeff(n + 1, m)
                + lambda_pow(m) * g.coeff(n - 1, m)
            )
            if c:
                out[(n, m)] = c
    return LatticeFunctional(out, role="deg2")


def alpha1(phi: LatticeFunctional, radius: int | None = None) -> CochainPair:
    """First differential of the untwisted complex."""
    if phi.is_finite():
        a = _series(phi)
        return CochainPair(
            LatticeFunctional.from_torus(_U1 * a - a * _U1, role="deg1.1"),
            LatticeFunctional.from_torus(_U2 * a - a * _U2, role="deg1.2"),
        )
    if radius is None:
        raise ValueError("rule-backed input needs a radius")
    f1, f2 = {}, {}
    for n in range(-radius, radius + 1):
        for m in range(-radius, radius + 1):
            c = (ONE - lambda_pow(m)) * phi.coeff(n - 1, m)
            if c:
                f1[(n, m)] = c
            c = (lambda_pow(n) - ONE) * phi.coeff(n, m - 1)
            if c:
                f2[(n, m)] = c
    return CochainPair(
        LatticeFunctional(f1, role="deg1.1"), LatticeFunctional(f2, role="deg1.2")
    )


def alpha2(pair: CochainPair, radius: int | None = None) -> LatticeFunctional:
    """Second differential of the untwisted complex."""
    f, g = pair.first, pair.second
    if f.is_finite() and g.is_finite():
        fs, gs = _series(f), _series(g)
        out = _U2 * fs - _LAM * fs * _U2 - _LAM * (_U1 * gs) + gs * _U1
        return LatticeFunctional.from_torus(out, role="deg2")
    if radius is None:
        raise ValueError("rule-backed input needs a radius")
    out = {}
    for n in range(-radius, radius + 1):
        for m in range(-radius, radius + 1):
            c = (lambda_pow(n) - _LAM) * f.coeff(n, m - 1) + (
                lambda_pow(m) - _LAM
            ) * g.coeff(n - 1, m)
            if c:
                out[(n, m)] = c
    return LatticeFunctional(out, role="deg2")


# ---------------------------------------------------------------------------
# kernel generators and kernel checks


def make_D(i: int, j: int) -> LatticeFunctional:
    """Generator of the twisted degree-0 kernel on the parity class (i, j).

    Seeded with value 1 at (i, j); the kernel recurrences
    phi[n+1,m] = lambda**m phi[n-1,m] and phi[n,m+1] = lambda**n phi[n,m-1]
    propagate it to lambda**((n*m - i*j)/2) across the whole class.
    """
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError("parity class indices must be 0 or 1")

    def rule(n: int, m: int) -> Scalar:
        if (n - i) % 2 or (m - j) % 2:
            return ZERO
        return lambda_pow((n * m - i * j) // 2)

    return LatticeFunctional(rule=rule, rule_json={"rule": "D", "i": i, "j": j})


def _violations(out: LatticeFunctional, window: int) -> Site | None:
    interior = [
        s
        for s in out.support()
        if abs(s[0]) <= window - 1 and abs(s[1]) <= window - 1
    ]
    return min(interior, key=site_key) if interior else None


def kernel_check_twisted_deg1(pair: CochainPair, window: int) -> tuple[bool, Site | None]:
    """Does twisted_alpha2(pair) vanish at every site whose full stencil lies
    inside the window?  Returns the smallest offending site otherwise."""
    bad = _violations(twisted_alpha2(pair.restrict(window)), window)
    return bad is None, bad


def kernel_check_untwisted_deg1(pair: CochainPair, window: int) -> tuple[bool, Site | None]:
    """Same check against the untwisted second differential, equivalently the
    sitewise relation (lambda**n - lambda) f[n,m-1] = (lambda - lambda**m) g[n-1,m]."""
    bad = _violations(alpha2(pair.restrict(window)), window)
    return bad is None, bad


# ---------------------------------------------------------------------------
# pullbacks by the flip


def twisted_pullback_deg0(phi: LatticeFunctional) -> LatticeFunctional:
    """Flip action on twisted degree-0 cochains: plain coefficient mirror."""
    if phi.is_finite():
        return LatticeFunctional({(-n, -m): c for (n, m), c in phi.terms.items()})
    return LatticeFunctional(rule=lambda a, b: phi.coeff(-a, -b))


def twisted_pullback_deg2(phi: LatticeFunctional) -> LatticeFunctional:
    """Flip action on twisted degree-2 cochains, conjugated through U1*U2:
    psi[a,b] = lambda**(b-a-1) phi[-a,-b]."""
    if phi.is_finite():
        return LatticeFunctional(
            {(-n, -m): lambda_pow(-m + n - 1) * c for (n, m), c in phi.terms.items()},
            role="deg2",
        )
    return LatticeFunctional(
        rule=lambda a, b: lambda_pow(b - a - 1) * phi.coeff(-a, -b), role="deg2"
    )


def untwisted_pullback_deg2(phi: LatticeFunctional) -> LatticeFunctional:
    """Flip action on untwisted degree-2 cochains, conjugated through
    U1**-1 U2**-1 on one side and U2**-1 U1**-1 on the other:
    psi[a,b] = lambda**(a+b+2) phi[-2-a,-2-b]."""
    if phi.is_finite():
        return LatticeFunctional(
            {
                (-2 - n, -2 - m): lambda_pow(-n - m - 2) * c
                for (n, m), c in phi.terms.items()
            },
            role="deg2",
        )
    return LatticeFunctional(
        rule=lambda a, b: lambda_pow(a + b + 2) * phi.coeff(-2 - a, -2 - b), role="deg2"
    )


def untwisted_pullback_deg1(pair: CochainPair) -> CochainPair:
    """Flip action on untwisted degree-1 cochains:
    w1[a,b] = -lambda**b phi1[-2-a,-b], w2[a,b] = -lambda**a phi2[-a,-2-b].
    On the two surviving generator classes this is multiplication by -1."""
    f, g = pair.first, pair.second
    if f.is_finite() and g.is_finite():
        w1 = {
            (-2 - n, -m): -(lambda_pow(-m) * c) for (n, m), c in f.terms.items()
        }
        w2 = {
            (-n, -2 - m): -(lambda_pow(-n) * c) for (n, m), c in g.terms.items()
        }
        return CochainPair(
            LatticeFunctional(w1, role="deg1.1"), LatticeFunctional(w2, role="deg1.2")
        )
    return CochainPair(
        LatticeFunctional(rule=lambda a, b: -(lambda_pow(b) * f.coeff(-2 - a, -b)), role="deg1.1"),
        LatticeFunctional(rule=lambda a, b: -(lambda_pow(a) * g.coeff(-a, -2 - b)), role="deg1.2"),
    )
