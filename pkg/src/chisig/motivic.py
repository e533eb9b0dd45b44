"""Exact arithmetic in the subring Z[L] of the Grothendieck ring of varieties.

`MotivicClass` models integer polynomials in the Lefschetz class L (the class
of the complex affine line).  Three ring morphisms are exposed:

* ``chi_y``          L |-> -y            (Hirzebruch genus, valued in Z[y])
* ``signature``      L |-> -1            (chi_y evaluated at y = 1)
* ``euler_complex``  L |-> 1             (chi_y evaluated at y = -1; the
                                          topological Euler characteristic
                                          with closed support)

A real variety is modelled *up to these invariants* by `RealMotivicDatum`:
the complex-side chi_y polynomial together with an independently supplied
Euler characteristic of the real point set.  The real number cannot be
derived from the complex class (a twisted real structure on the same complex
variety changes it), which is exactly why it is a separate field.
"""

from __future__ import annotations

from dataclasses import dataclass


def _strip(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _check_ints(coeffs) -> None:
    for c in coeffs:
        if not isinstance(c, int) or isinstance(c, bool):
            raise ValueError(f"coefficients must be plain integers, got {c!r}")


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _strip(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


@dataclass(frozen=True)
class MotivicClass:
    """Element sum(coeffs[i] * L^i) of Z[L]; trailing zeros are stripped."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_ints(self.coeffs)
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    def __add__(self, other: MotivicClass) -> MotivicClass:
        return MotivicClass(_poly_add(self.coeffs, other.coeffs))

    def __neg__(self) -> MotivicClass:
        return MotivicClass(tuple(-c for c in self.coeffs))

    def __sub__(self, other: MotivicClass) -> MotivicClass:
        return self + (-other)

    def __mul__(self, other: MotivicClass) -> MotivicClass:
        return MotivicClass(_poly_mul(self.coeffs, other.coeffs))

    def __pow__(self, n: int) -> MotivicClass:
        if n < 0:
            raise ValueError("negative powers do not exist in Z[L]")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def chi_y(self) -> ChiYPolynomial:
        """Hirzebruch genus: the ring morphism sending L to -y."""
        return ChiYPolynomial(
            tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))
        )

    def signature(self) -> int:
        """chi_y at y = 1; sends L to -1."""
        return self.chi_y().at(1)

    def euler_complex(self) -> int:
        """chi_y at y = -1; sends L to 1 (Euler characteristic of complex points)."""
        return self.chi_y().at(-1)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "L" if i == 1 else f"L^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = MotivicClass(())
ONE = MotivicClass((1,))
LEFSCHETZ = MotivicClass((0, 1))


@dataclass(frozen=True)
class ChiYPolynomial:
    """Integer polynomial in y; image of a class under the chi_y morphism."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_ints(self.coeffs)
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    def __add__(self, other: ChiYPolynomial) -> ChiYPolynomial:
        return ChiYPolynomial(_poly_add(self.coeffs, other.coeffs))

    def __neg__(self) -> ChiYPolynomial:
        return ChiYPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: ChiYPolynomial) -> ChiYPolynomial:
        return self + (-other)

    def __mul__(self, other: ChiYPolynomial) -> ChiYPolynomial:
        return ChiYPolynomial(_poly_mul(self.coeffs, other.coeffs))

    def __pow__(self, n: int) -> ChiYPolynomial:
        out = ChiYPolynomial((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def at(self, y: int) -> int:
        """Exact evaluation at an integer value of y."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "y" if i == 1 else f"y^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


CHI_Y_ONE = ChiYPolynomial((1,))


@dataclass(frozen=True)
class RealMotivicDatum:
    """A complex chi_y polynomial paired with chi^c of the real point set.

    The two fields add under disjoint union and multiply under products,
    componentwise; the real field is independent data.
    """

    complex_chi_y: ChiYPolynomial
    real_euler: int

    @classmethod
    def from_class(cls, c: MotivicClass, real_euler: int) -> RealMotivicDatum:
        return cls(c.chi_y(), real_euler)

    def __mul__(self, other: RealMotivicDatum) -> RealMotivicDatum:
        return RealMotivicDatum(
            self.complex_chi_y * other.complex_chi_y,
            self.real_euler * other.real_euler,
        )

    def disjoint_union(self, other: RealMotivicDatum) -> RealMotivicDatum:
        return RealMotivicDatum(
            self.complex_chi_y + other.complex_chi_y,
            self.real_euler + other.real_euler,
        )

    def sigma(self) -> int:
        return self.complex_chi_y.at(1)


@dataclass(frozen=True)
class ChiSigmaResult:
    sigma: int
    real_euler: int
    equal: bool


def check_chi_sigma(datum: RealMotivicDatum) -> ChiSigmaResult:
    """Compare the signature of the complex side with the real Euler number."""
    s = datum.sigma()
    return ChiSigmaResult(sigma=s, real_euler=datum.real_euler, equal=s == datum.real_euler)
