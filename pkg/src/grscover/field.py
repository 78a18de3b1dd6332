"""Exact arithmetic in prime fields GF(q) and the polynomial primitives built on it.

Everything in this module is immutable after construction and uses plain
Python integers, so results are exact for any prime modulus that fits in
memory.  Elements of different fields never mix silently: combining them
raises immediately instead of coercing.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class InversionOfZero(ZeroDivisionError):
    """Raised when a multiplicative inverse of zero is requested."""


class DuplicateNode(ValueError):
    """Raised when two interpolation points share an x coordinate."""


def _is_prime(m: int) -> bool:
    # Trial division; moduli used here stay well below 2**31.
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    f = 5
    while f * f <= m:
        if m % f == 0 or m % (f + 2) == 0:
            return False
        f += 6
    return True


class PrimeField:
    """The field of integers modulo a prime q."""

    __slots__ = ("q",)

    def __init__(self, q: int) -> None:
        if not isinstance(q, int) or not _is_prime(q):
            raise ValueError(f"modulus must be prime, got {q!r}")
        self.q = q

    def element(self, value: int) -> "FieldElement":
        """Return the element representing ``value`` reduced mod q."""
        return FieldElement(value % self.q, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> Iterable["FieldElement"]:
        """All field elements, in residue order 0, 1, ..., q - 1."""
        return (FieldElement(v, self) for v in range(self.q))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


class FieldElement:
    """A residue in [0, q) tied to its PrimeField."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField) -> None:
        if not 0 <= value < field.q:
            raise ValueError(f"residue {value} outside [0, {field.q})")
        self.value = value
        self.field = field

    def _same_field(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement((self.value + other.value) % self.field.q, self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement((self.value - other.value) % self.field.q, self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return FieldElement((self.value * other.value) % self.field.q, self.field)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._same_field(other)
        return self * fe_inv(other)

    def __neg__(self) -> "FieldElement":
        return FieldElement((-self.value) % self.field.q, self.field)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"


def fe_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via the extended Euclidean algorithm.

    Raises
    ------
    InversionOfZero
        If ``a`` is the zero element.
    """
    if a.value == 0:
        raise InversionOfZero(f"zero has no inverse in {a.field}")
    q = a.field.q
    # Invariant: old_r = old_s * a.value (mod q) throughout.
    old_r, r = a.value, q
    old_s, s = 1, 0
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
    return FieldElement(old_s % q, a.field)


class Poly:
    """A univariate polynomial over a prime field, coefficients lowest degree first.

    The zero polynomial has degree -1, which keeps degree bounds such as
    ``deg(f) <= k - 1`` uniform across all inputs.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable) -> None:
        elems = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise ValueError(f"field mismatch: {field} vs {c.field}")
                elems.append(c)
            else:
                elems.append(field.element(c))
        # Normalize: no trailing zero coefficients are stored.
        while elems and elems[-1].value == 0:
            elems.pop()
        self.field = field
        self.coeffs = tuple(elems)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> FieldElement:
        """Coefficient of X^i (zero beyond the stored degree)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def coeff_values(self) -> tuple[int, ...]:
        """Coefficients as plain integers, lowest degree first."""
        return tuple(c.value for c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: FieldElement) -> FieldElement:
        return poly_eval(self, x)

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        q = self.field.q
        a, b = self.coeff_values(), other.coeff_values()
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % q
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        q = self.field.q
        out = list(self.coeff_values())
        b = other.coeff_values()
        if len(out) < len(b):
            out.extend([0] * (len(b) - len(out)))
        for i, v in enumerate(b):
            out[i] = (out[i] - v) % q
        return Poly(self.field, out)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field, ())
        q = self.field.q
        a, b = self.coeff_values(), other.coeff_values()
        out = [0] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if av == 0:
                continue
            for j, bv in enumerate(b):
                out[i + j] = (out[i + j] + av * bv) % q
        return Poly(self.field, out)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Polynomial long division; returns (quotient, remainder)."""
        self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.field.q
        rem = list(self.coeff_values())
        div = other.coeff_values()
        dlen = len(div)
        lead_inv = pow(div[-1], q - 2, q)
        quot = [0] * max(len(rem) - dlen + 1, 0)
        for i in range(len(rem) - dlen, -1, -1):
            factor = (rem[i + dlen - 1] * lead_inv) % q
            if factor == 0:
                continue
            quot[i] = factor
            for j, dv in enumerate(div):
                rem[i + j] = (rem[i + j] - factor * dv) % q
        return Poly(self.field, quot), Poly(self.field, rem)

    def _same_field(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.coeff_values()))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Poly(0 over {self.field})"
        terms = " + ".join(
            f"{c.value}X^{i}" if i else str(c.value)
            for i, c in enumerate(self.coeffs)
            if c.value
        )
        return f"Poly({terms} over {self.field})"


def poly_eval(f: Poly, x: FieldElement) -> FieldElement:
    """Evaluate ``f`` at ``x`` by Horner's rule."""
    if x.field != f.field:
        raise ValueError(f"field mismatch: {f.field} vs {x.field}")
    q = f.field.q
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x.value + c.value) % q
    return FieldElement(acc, f.field)


def lagrange_interpolate(points: Sequence[tuple[FieldElement, FieldElement]]) -> Poly:
    """The unique polynomial of degree < len(points) through the given points.

    Raises
    ------
    DuplicateNode
        If two points share an x coordinate.
    """
    if not points:
        raise ValueError("at least one interpolation point is required")
    field = points[0][0].field
    q = field.q
    xs = [p[0].value for p in points]
    ys = [p[1].value for p in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode(f"repeated x coordinate among {xs}")

    # Build the master product M(X) = prod (X - x_i), then each Lagrange basis
    # polynomial as M / (X - x_i) via synthetic division, scaled to 1 at x_i.
    master = [1]
    for x in xs:
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i] = (nxt[i] - c * x) % q
            nxt[i + 1] = (nxt[i + 1] + c) % q
        master = nxt

    out = [0] * len(points)
    for x, y in zip(xs, ys):
        if y == 0:
            continue
        # Synthetic division of master by (X - x); remainder is 0 by construction.
        quot = [0] * (len(master) - 1)
        carry = 0
        for i in range(len(master) - 1, 0, -1):
            carry = (master[i] + carry * x) % q
            quot[i - 1] = carry
        denom = 0
        for c in reversed(quot):
            denom = (denom * x + c) % q
        scale = (y * pow(denom, q - 2, q)) % q
        for i, c in enumerate(quot):
            out[i] = (out[i] + scale * c) % q
    return Poly(field, out)


class BiPoly:
    """A sparse bivariate polynomial, monomials X^i Y^j mapped to coefficients.

    Zero coefficients are never stored.  The (1, w)-weighted degree of a
    monomial (i, j) is i + j*w; the weighted degree of the polynomial is the
    maximum over its stored monomials (-1 for the zero polynomial).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: dict) -> None:
        cleaned: dict[tuple[int, int], FieldElement] = {}
        for (i, j), c in coeffs.items():
            if not isinstance(c, FieldElement):
                c = field.element(c)
            elif c.field != field:
                raise ValueError(f"field mismatch: {field} vs {c.field}")
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial ({i}, {j})")
            if c.value:
                cleaned[(i, j)] = c
        self.field = field
        self.coeffs = cleaned

    def weighted_degree(self, y_weight: int) -> int:
        """Maximum of i + j*y_weight over stored monomials, -1 if zero."""
        if not self.coeffs:
            return -1
        return max(i + j * y_weight for i, j in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval_at_poly(self, f: Poly) -> Poly:
        """Substitute Y = f(X), returning the univariate result Q(X, f(X))."""
        if f.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {f.field}")
        # Group by Y-degree, then apply Horner's rule in Y with Poly coefficients.
        if not self.coeffs:
            return Poly(self.field, ())
        by_j: dict[int, dict[int, int]] = {}
        for (i, j), c in self.coeffs.items():
            by_j.setdefault(j, {})[i] = c.value
        max_j = max(by_j)
        acc = Poly(self.field, ())
        for j in range(max_j, -1, -1):
            acc = acc * f
            if j in by_j:
                row = by_j[j]
                acc = acc + Poly(
                    self.field, [row.get(i, 0) for i in range(max(row) + 1)]
                )
        return acc

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BiPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __repr__(self) -> str:
        return f"BiPoly({len(self.coeffs)} terms over {self.field})"
