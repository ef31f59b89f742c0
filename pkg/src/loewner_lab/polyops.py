"""Real polynomials with interlaced roots and the operators they define.

The pair ``(p, q)`` are monic of degrees ``n`` and ``n - 1`` whose roots
alternate strictly. Dividing ``p`` by ``q`` gives ``p = (x - c) q - r``; the
remainder ``r`` is again interlaced with ``q``, which is what drives the
degree-lowering recursion in :mod:`loewner_lab.loewner`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArityMismatch, LemmaViolation
from .trigpoly import TrigPoly

#: relative tolerance for coefficient identities on polynomials
RECONSTRUCTION_RTOL = 1e-9


class RealPoly:
    """Immutable real polynomial, coefficients ascending by power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=(0.0,)):
        arr = np.array(coeffs, dtype=float).ravel()
        if not np.all(np.isfinite(arr)):
            raise ValueError("RealPoly coefficients must be finite")
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else np.zeros(1)
        arr.setflags(write=False)
        object.__setattr__(self, "_coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("RealPoly is immutable")

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the leading coefficient; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return self._coeffs.size - 1

    @property
    def leading(self) -> float:
        return float(self._coeffs[-1])

    def is_zero(self) -> bool:
        return self._coeffs.size == 1 and self._coeffs[0] == 0.0

    def is_monic(self) -> bool:
        return self.leading == 1.0

    def __call__(self, x):
        """Horner evaluation; accepts scalars or arrays."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for coef in self._coeffs[::-1]:
            acc = acc * x + coef
        return float(acc) if acc.ndim == 0 else acc

    def __mul__(self, other: "RealPoly") -> "RealPoly":
        if isinstance(other, (int, float)):
            return RealPoly(self._coeffs * other)
        return RealPoly(np.convolve(self._coeffs, other._coeffs))

    __rmul__ = __mul__

    def __add__(self, other: "RealPoly") -> "RealPoly":
        n = max(self._coeffs.size, other._coeffs.size)
        out = np.zeros(n)
        out[: self._coeffs.size] += self._coeffs
        out[: other._coeffs.size] += other._coeffs
        return RealPoly(out)

    def __neg__(self):
        return RealPoly(-self._coeffs)

    def __sub__(self, other: "RealPoly") -> "RealPoly":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, RealPoly):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self):
        return f"RealPoly({self._coeffs.tolist()!r})"

    def monic(self) -> tuple["RealPoly", float]:
        """``(self / leading, leading)``."""
        lead = self.leading
        return RealPoly(self._coeffs / lead), lead

    def relative_error(self, other: "RealPoly") -> float:
        """Max coefficient difference relative to the largest coefficient of either."""
        n = max(self._coeffs.size, other._coeffs.size)
        a = np.zeros(n)
        b = np.zeros(n)
        a[: self._coeffs.size] = self._coeffs
        b[: other._coeffs.size] = other._coeffs
        scale = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
        return float(np.abs(a - b).max() / scale)

    def to_json(self) -> dict:
        return {"coeffs": self._coeffs.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "RealPoly":
        return cls(data["coeffs"])


X = RealPoly([0.0, 1.0])
ONE = RealPoly([1.0])


def from_roots(roots) -> RealPoly:
    """Monic polynomial with the given roots; the empty product is 1."""
    coeffs = np.ones(1)
    for r in roots:
        r = float(r)
        if not math.isfinite(r):
            raise ValueError("roots must be finite")
        # multiply by (x - r)
        coeffs = np.append(0.0, coeffs) - r * np.append(coeffs, 0.0)
    return RealPoly(coeffs)


def is_interlaced(a, b) -> bool:
    """True iff ``a_1 < b_1 < a_2 < ... < b_{n-1} < a_n`` strictly."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    if len(a) != len(b) + 1:
        raise ArityMismatch(f"need len(a) == len(b) + 1, got {len(a)} and {len(b)}")
    merged = [a[0]]
    for bi, ai in zip(b, a[1:]):
        merged += [bi, ai]
    return all(x < y for x, y in zip(merged, merged[1:]))


@dataclass(frozen=True)
class InterlacedPair:
    p: RealPoly
    q: RealPoly
    p_roots: tuple[float, ...]
    q_roots: tuple[float, ...]

    def __post_init__(self):
        if not is_interlaced(self.p_roots, self.q_roots):
            raise ValueError("roots are not strictly interlaced")
        for poly, roots, name in ((self.p, self.p_roots, "p"), (self.q, self.q_roots, "q")):
            if poly.degree != len(roots) or not poly.is_monic():
                raise ValueError(f"{name} must be monic of degree {len(roots)}")
            if poly.relative_error(from_roots(roots)) > RECONSTRUCTION_RTOL:
                raise ValueError(f"{name} does not match the expansion of its roots")

    @classmethod
    def from_roots(cls, a_roots, b_roots) -> "InterlacedPair":
        a = tuple(float(v) for v in a_roots)
        b = tuple(float(v) for v in b_roots)
        return cls(from_roots(a), from_roots(b), a, b)

    @property
    def n(self) -> int:
        return len(self.p_roots)

    def to_json(self) -> dict:
        return {"a_roots": list(self.p_roots), "b_roots": list(self.q_roots)}

    @classmethod
    def from_json(cls, data: dict) -> "InterlacedPair":
        return cls.from_roots(data["a_roots"], data["b_roots"])


def divide_step(pair: InterlacedPair) -> tuple[float, RealPoly]:
    """Return ``(c, r)`` with ``p = (x - c) q - r`` and ``deg r <= n - 2``.

    ``c`` comes from the root sums, which is the x^(n-1) coefficient match of
    the monic quotient and avoids cancellation in large coefficients.
    """
    c = math.fsum(pair.p_roots) - math.fsum(pair.q_roots)
    shifted = RealPoly([-c, 1.0]) * pair.q
    diff = shifted.coeffs.copy()
    diff[: pair.p.coeffs.size] -= pair.p.coeffs
    # the x^n and x^(n-1) terms cancel identically for monic p, q and this c
    diff[max(pair.n - 1, 0):] = 0.0
    return c, RealPoly(diff)


def _bisect_poly(poly: RealPoly, lo: float, hi: float) -> float:
    flo = poly(lo)
    if flo == 0.0:
        return lo
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        fm = poly(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid


@dataclass(frozen=True)
class LemmaReport:
    c: float
    r: RealPoly
    r_roots: tuple[float, ...]
    reconstruction_error: float
    degree_exact: bool
    leading_positive: bool
    roots_between: bool
    interlaced: bool
    failures: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "r": self.r.to_json(),
            "r_roots": list(self.r_roots),
            "reconstruction_error": self.reconstruction_error,
            "degree_exact": self.degree_exact,
            "leading_positive": self.leading_positive,
            "roots_between": self.roots_between,
            "interlaced": self.interlaced,
        }


def remainder_roots(r: RealPoly, q_roots) -> tuple[float, ...] | None:
    """Roots of ``r`` located by sign changes between consecutive ``q_roots``.

    Returns None as soon as one of those intervals shows no sign change.
    """
    roots = []
    for lo, hi in zip(q_roots, q_roots[1:]):
        if r(lo) * r(hi) >= 0.0:
            return None
        roots.append(_bisect_poly(r, lo, hi))
    return tuple(roots)


def verify_division_lemma(pair: InterlacedPair) -> LemmaReport:
    """Check that ``(q, r)`` is again a real-rooted interlaced pair.

    Raises :class:`LemmaViolation` carrying the pair and the remainder when
    any of degree, leading sign, root location or interlacing fails.
    """
    n = pair.n
    if n < 2:
        raise ValueError("the division lemma needs n >= 2")
    c, r = divide_step(pair)
    rebuilt = RealPoly([-c, 1.0]) * pair.q - r
    err = pair.p.relative_error(rebuilt)
    degree_exact = r.degree == n - 2
    leading_positive = not r.is_zero() and r.leading > 0
    roots = remainder_roots(r, pair.q_roots) if degree_exact else None
    roots_between = roots is not None and len(roots) == n - 2
    interlaced = roots_between and is_interlaced(pair.q_roots, roots)

    failures = []
    if err >= RECONSTRUCTION_RTOL:
        failures.append(f"reconstruction error {err:.3e}")
    if not degree_exact:
        failures.append(f"deg r = {r.degree}, expected {n - 2}")
    if not leading_positive:
        failures.append("leading coefficient of r is not positive")
    if not roots_between:
        failures.append("r lacks a sign change between consecutive roots of q")
    elif not interlaced:
        failures.append("(q, r) not interlaced")
    report = LemmaReport(
        c, r, roots or (), err, degree_exact, leading_positive, roots_between, interlaced, tuple(failures)
    )
    if failures:
        raise LemmaViolation("; ".join(failures), witness={"pair": pair.to_json(), **report.to_json()})
    return report


def apply_operator(poly: RealPoly, f: TrigPoly) -> TrigPoly:
    """``poly(d/dt) f``.

    On the frequency-k block ``(a_k, b_k)`` the derivative is the rotation
    scaling ``[[0, k], [-k, 0]]``; identifying the block with ``a_k - i b_k``
    turns it into multiplication by ``ik``, and ``poly`` is run through
    Horner's scheme on that.
    """
    out_mean = poly.coeffs[0] * f.mean
    if f.degree == 0:
        return TrigPoly(out_mean)
    ik = 1j * f.frequencies
    block = np.zeros(f.degree, dtype=complex)
    for coef in poly.coeffs[::-1]:
        block = block * ik + coef
    z = (f.coeffs[:, 0] - 1j * f.coeffs[:, 1]) * block
    return TrigPoly(out_mean, np.column_stack([z.real, -z.imag]))


def random_interlaced_pair(seed: int, n: int, spread: float = 1.0) -> InterlacedPair:
    """Draw ``2n - 1`` sorted distinct points in ``[-spread, spread]`` and deal them alternately."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    while True:
        pts = np.sort(rng.uniform(-spread, spread, size=2 * n - 1))
        if n == 1 or np.diff(pts).min() >= 1e-6 * spread:
            break
    return InterlacedPair.from_roots(pts[0::2], pts[1::2])
