"""Multilinear polynomial certificates for ordered L-intersecting families.

Everything here runs over the integers.  A multilinear monomial is a bitmask
over the variables x_1..x_n, and a polynomial is a sparse map from monomial
masks to nonzero integer coefficients.  On {0,1}^n we have x_i^2 = x_i, so
products reduce on the fly via x_S * x_T = x_{S | T}; the reduced product
agrees with the ordinary product at every 0/1 point.

The certificate for a family F_1 <= ... <= F_m (ordered indexing, apex prefix
of length r, allowed intersection sizes L, s = |L|) stacks two batches of
polynomials of degree <= s:

  * one per family member: the reduced product of (<x, v_i> - l) over the
    allowed sizes l < |F_i|, where v_i is the 0/1 characteristic vector of
    F_i.  Evaluations against v_1..v_m are triangular with nonzero diagonal.
  * one per subset T of [n-1] with |T| <= s-1, in (cardinality, bit pattern)
    order: x_{T + {n}} - x_T.  Evaluations against the characteristic vectors
    of the T's are triangular with diagonal -1.

An exact integer rank of m + N for the stacked coefficient matrix (N the
number of auxiliary polynomials) certifies that all of them are linearly
independent inside the space of multilinear polynomials of degree <= s,
whose dimension is sum(C(n, i), i = 0..s); counting dimensions then forces
m <= sum(C(n-1, i), i = 0..s).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .families import (
    IntersectionSpec,
    OrderingFailure,
    SetFamily,
    check_ordered_indexing,
    is_l_intersecting,
)

MAX_MATRIX_CELLS_DEFAULT = 2_000_000


# ---------------------------------------------------------------------------
# sparse multilinear polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultilinearPoly:
    """Sparse multilinear polynomial: monomial bitmask -> integer coefficient."""

    n: int
    terms: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        full = (1 << self.n) - 1
        clean = {}
        for mask, coeff in self.terms.items():
            if mask < 0 or mask & ~full:
                raise ValueError(f"monomial {bin(mask)} uses variables outside x_1..x_{self.n}")
            if coeff:
                clean[mask] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, value: int) -> "MultilinearPoly":
        return cls(n, {0: value})

    @classmethod
    def one(cls, n: int) -> "MultilinearPoly":
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n: int, i: int) -> "MultilinearPoly":
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        return cls(n, {1 << (i - 1): 1})

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.terms), default=0)

    def variables(self) -> int:
        """Union of all monomial supports, as a mask."""
        out = 0
        for m in self.terms:
            out |= m
        return out

    def _coerce(self, other) -> "MultilinearPoly":
        if isinstance(other, MultilinearPoly):
            if other.n != self.n:
                raise ValueError(f"ambient mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, int):
            return MultilinearPoly.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MultilinearPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 | m2  # x_i^2 = x_i on {0,1}^n
                out[m] = out.get(m, 0) + c1 * c2
        return MultilinearPoly(self.n, out)

    __rmul__ = __mul__

    def evaluate(self, point: int) -> int:
        """Value at a 0/1 point given as a bitmask: sum coeffs of submasks."""
        return sum(c for m, c in self.terms.items() if m & point == m)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            c = self.terms[m]
            mono = "*".join(f"x{i}" for i in _bits(m))
            if m == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def char_vector(f_mask: int) -> int:
    """Characteristic 0/1 point of a set; the bitmask is reused verbatim."""
    return f_mask


def linear_form(point: int, n: int) -> MultilinearPoly:
    """The inner product <x, v> as a polynomial: sum of x_j over the support of v."""
    if point < 0 or point & ~((1 << n) - 1):
        raise ValueError(f"point {bin(point)} outside {{0,1}}^{n}")
    return MultilinearPoly(n, {low: 1 for low in _mask_bits(point)})


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def intersection_poly(f_mask: int, spec: IntersectionSpec, n: int) -> MultilinearPoly:
    """Reduced product of (<x, v_F> - l) over allowed sizes l < |F|.

    Degree is at most |L|; all variables lie inside F; the empty product
    (no allowed size below |F|) gives the constant 1.  At the characteristic
    vector of F itself the value is the product of (|F| - l), nonzero.
    """
    card = f_mask.bit_count()
    form = linear_form(f_mask, n)
    poly = MultilinearPoly.one(n)
    for l in spec.values:
        if l < card:
            poly = poly * (form - l)
    return poly


def apex_difference_poly(t_mask: int, n: int) -> MultilinearPoly:
    """The two-term polynomial x_{T + {n}} - x_T for an apex-free T."""
    apex = 1 << (n - 1)
    if t_mask & apex:
        raise ValueError(f"T must not contain the apex element {n}")
    if t_mask < 0 or t_mask & ~(apex - 1):
        raise ValueError(f"T {bin(t_mask)} is not a subset of [{n - 1}]")
    return MultilinearPoly(n, {t_mask | apex: 1, t_mask: -1})


# ---------------------------------------------------------------------------
# triangular criterion and exact rank
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangularCheck:
    """Evaluation matrix [f_i(v_j)] plus the triangularity verdict.

    ok is true iff every diagonal entry is nonzero and f_i(v_j) = 0 whenever
    j < i; such functions are linearly independent.
    """

    ok: bool
    matrix: tuple[tuple[int, ...], ...]

    def __bool__(self) -> bool:
        return self.ok


def triangular_check(polys, points) -> TriangularCheck:
    polys = list(polys)
    points = list(points)
    if len(polys) != len(points):
        raise ValueError(f"{len(polys)} polynomials vs {len(points)} points")
    matrix = tuple(tuple(p.evaluate(v) for v in points) for p in polys)
    ok = all(matrix[i][i] != 0 for i in range(len(polys))) and all(
        matrix[i][j] == 0 for i in range(len(polys)) for j in range(i))
    return TriangularCheck(ok, matrix)


def monomial_basis(n: int, s: int) -> tuple[int, ...]:
    """All multilinear monomials of degree <= s, by (degree, bit pattern)."""
    masks = []
    for k in range(min(s, n) + 1):
        for combo in itertools.combinations(range(n), k):
            mask = 0
            for b in combo:
                mask |= 1 << b
            masks.append(mask)
    masks.sort(key=lambda m: (m.bit_count(), m))
    return tuple(masks)


def coefficient_matrix(polys, n: int, s: int) -> list[list[int]]:
    """Rows of exact coefficients over the degree <= s monomial basis."""
    polys = list(polys)
    for idx, p in enumerate(polys):
        if p.n != n:
            raise ValueError(f"polynomial {idx} has ambient {p.n}, expected {n}")
        if p.degree > s:
            raise ValueError(f"polynomial {idx} has degree {p.degree}, exceeds {s}")
    basis = monomial_basis(n, s)
    return [[p.terms.get(m, 0) for m in basis] for p in polys]


def exact_rank(matrix) -> int:
    """Rank over the rationals by fraction-free integer elimination.

    Bareiss-style updates with full pivoting; the pivot is the smallest
    nonzero entry in absolute value (ties by row then column), which keeps
    intermediate integers small.  Every division below is exact.
    """
    m = [list(row) for row in matrix]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    for row in m:
        if len(row) != nc:
            raise ValueError("matrix rows have unequal lengths")
    rank = 0
    prev = 1
    while rank < nr and rank < nc:
        best = None
        for i in range(rank, nr):
            row = m[i]
            for j in range(rank, nc):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != rank:
            m[rank], m[pi] = m[pi], m[rank]
        if pj != rank:
            for row in m:
                row[rank], row[pj] = row[pj], row[rank]
        piv = m[rank][rank]
        prow = m[rank]
        for i in range(rank + 1, nr):
            row = m[i]
            f = row[rank]
            for j in range(rank + 1, nc):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[rank] = 0
        prev = piv
        rank += 1
    return rank


def matrix_to_text(matrix) -> str:
    """Row-major dump: decimal integers, space-separated, one row per line."""
    return "\n".join(" ".join(str(x) for x in row) for row in matrix) + "\n"


# ---------------------------------------------------------------------------
# the certificate
# ---------------------------------------------------------------------------

class NotOrderedError(ValueError):
    """The family's given indexing is not ordered."""

    def __init__(self, failure: OrderingFailure):
        self.failure = failure
        super().__init__(
            f"indexing is not ordered: {failure.condition} condition breaks "
            f"at position {failure.index}")


class NotLIntersectingError(ValueError):
    """Some pairwise intersection size falls outside the allowed set."""

    def __init__(self, violation: tuple[int, int, int]):
        self.violation = violation
        i, j, size = violation
        super().__init__(
            f"sets {i} and {j} intersect in {size} elements, not an allowed size")


class CertificateSizeError(ValueError):
    """The stacked coefficient matrix would exceed the cell budget."""


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the certificate construction and its exact-rank check."""

    m: int
    r: int
    N: int
    dim_v: int
    q_triangular: bool
    g_triangular: bool
    q_apex_free: bool
    rank: int
    verdict: bool
    q_matrix: tuple[tuple[int, ...], ...]
    g_matrix: tuple[tuple[int, ...], ...]

    def to_json_dict(self, full: bool = False) -> dict:
        out = {
            "m": self.m,
            "r": self.r,
            "N": self.N,
            "dim_v": self.dim_v,
            "q_triangular": self.q_triangular,
            "g_triangular": self.g_triangular,
            "q_apex_free": self.q_apex_free,
            "rank": self.rank,
            "verdict": self.verdict,
        }
        if full:
            out["q_matrix"] = [list(row) for row in self.q_matrix]
            out["g_matrix"] = [list(row) for row in self.g_matrix]
        return out


def auxiliary_supports(n: int, s: int) -> tuple[int, ...]:
    """Apex-free monomial supports T with |T| <= s-1, by (cardinality, pattern)."""
    masks = []
    for k in range(min(s - 1, n - 1) + 1):
        for combo in itertools.combinations(range(n - 1), k):
            mask = 0
            for b in combo:
                mask |= 1 << b
            masks.append(mask)
    masks.sort(key=lambda m: (m.bit_count(), m))
    return tuple(masks)


def certify(family: SetFamily, spec: IntersectionSpec,
            max_cells: int = MAX_MATRIX_CELLS_DEFAULT) -> CertificateReport:
    """Build both polynomial batches and verify independence by exact rank.

    The family must be L-intersecting and ordered as given (run make_ordered
    first if needed).  The verdict passes iff both triangularity checks hold,
    the post-prefix polynomials avoid the apex variable, and the stacked
    matrix has rank exactly m + N.
    """
    check = is_l_intersecting(family, spec)
    if not check:
        raise NotLIntersectingError(check.violation)
    witness = check_ordered_indexing(family)
    if isinstance(witness, OrderingFailure):
        raise NotOrderedError(witness)

    n = family.n
    s = len(spec)
    m = len(family)
    r = witness.r

    count_aux = sum(math.comb(n - 1, i) for i in range(min(s - 1, n - 1) + 1))
    dim_v = sum(math.comb(n, i) for i in range(min(s, n) + 1))
    cells = (m + count_aux) * dim_v
    if cells > max_cells:
        raise CertificateSizeError(
            f"stacked matrix needs {cells} cells, budget is {max_cells}")

    family_polys = [intersection_poly(f, spec, n) for f in family.sets]
    supports = auxiliary_supports(n, s)
    apex_polys = [apex_difference_poly(t, n) for t in supports]
    assert len(supports) == count_aux

    q_check = triangular_check(family_polys, family.sets)
    g_check = triangular_check(apex_polys, supports)
    apex = 1 << (n - 1)
    q_apex_free = all(not (p.variables() & apex) for p in family_polys[r:])

    stacked = coefficient_matrix(family_polys + apex_polys, n, s)
    rank = exact_rank(stacked)
    verdict = bool(q_check) and bool(g_check) and q_apex_free and rank == m + count_aux

    return CertificateReport(
        m=m, r=r, N=count_aux, dim_v=dim_v,
        q_triangular=q_check.ok, g_triangular=g_check.ok,
        q_apex_free=q_apex_free, rank=rank, verdict=verdict,
        q_matrix=q_check.matrix, g_matrix=g_check.matrix)
