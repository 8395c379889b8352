"""Exact evaluation of the wheel Ramsey bound formulas.

All values are Python ints or Fractions. Every bound carries a machine
readable tag naming the formula it came from.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import DomainError


class AdvisoryWarning(UserWarning):
    """Bracket evaluated outside the range the formulas are proved for."""


@dataclass(frozen=True)
class BoundReport:
    k: int
    n: int
    lower: int
    lower_tag: str
    upper: int | None
    upper_tag: str
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    def contains(self, value: int) -> bool:
        return self.lower <= value and (self.upper is None or value <= self.upper)

    def row(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "lower": self.lower,
            "lower_tag": self.lower_tag,
            "upper": "" if self.upper is None else self.upper,
            "upper_tag": self.upper_tag,
            "notes": "; ".join(self.notes),
        }


@dataclass(frozen=True)
class KnownValue:
    description: str
    value: int | tuple[int, int]
    source: str


KNOWN_VALUES = (
    KnownValue("R(K3,K3)", 6, "classical"),
    KnownValue("R(W5,W5)", 15, "Harborth and Mengersen"),
    KnownValue("R(W6,W6)", 17, "counterexample to an Erdos conjecture"),
    KnownValue("R(K4,K4)", 18, "classical"),
    KnownValue("R3(K3)", 17, "Greenwood and Gleason"),
    KnownValue("R4(K3)", (42, 66), "bracket, exact value open"),
)


def known_value(description: str) -> KnownValue:
    for kv in KNOWN_VALUES:
        if kv.description == description:
            return kv
    raise KeyError(description)


def triangle_wheel_ramsey(n: int) -> int:
    """R(K_3, W_n) = 2n - 1, known for n >= 6."""
    if n < 6:
        raise DomainError(f"value is known for n >= 6, got {n}")
    return 2 * n - 1


def cycle_ramsey_diag(length: int) -> int:
    """R(C_l, C_l)."""
    if length < 3:
        raise DomainError(f"cycle length must be >= 3, got {length}")
    if length % 2:
        return 2 * length - 1
    if length == 4:
        return 6
    return 3 * length // 2 - 1


def tree_complete_ramsey(s: int, t: int) -> int:
    """R(T_s, K_t) for any tree on s vertices."""
    if s < 2 or t < 2:
        raise DomainError(f"need s, t >= 2, got s={s}, t={t}")
    return (s - 1) * (t - 1) + 1


def cycle_complete_upper(n: int, m: int) -> int:
    """Upper bound m + (n-3) m (m-1) / 2 on R(C_{n-1}, K_m)."""
    if n < 4 or m < 2:
        raise DomainError(f"need n >= 4 and m >= 2, got n={n}, m={m}")
    # m(m-1) is even, so the division is exact
    return m + (n - 3) * m * (m - 1) // 2


def previous_two_color_wheel_bounds(n: int) -> BoundReport:
    """The earlier bracket [3n-3, 8n-10] (even) / [2n-2, 6n-8] (odd), n >= 7."""
    if n < 7:
        raise DomainError(f"earlier bracket is stated for n >= 7, got {n}")
    if n % 2 == 0:
        return BoundReport(2, n, 3 * n - 3, "prior-even-lower", 8 * n - 10, "prior-even-upper")
    return BoundReport(2, n, 2 * n - 2, "prior-odd-lower", 6 * n - 8, "prior-odd-upper")


def two_color_wheel_bounds(n: int, advisory: bool = False) -> BoundReport:
    """Bracket on R(W_n, W_n): [3n-2, 6n-6] for even n, [2n, (9n-7)/2] for odd n.

    Proved for n >= 7. With ``advisory=True``, n in 4..6 returns the same
    formulas with a warning note (and an AdvisoryWarning).
    """
    notes: tuple[str, ...] = ()
    if n < 7:
        if not (advisory and n >= 4):
            raise DomainError(f"bracket is proved for n >= 7, got {n} (try advisory mode)")
        msg = f"advisory: n={n} is below the proved range n >= 7"
        warnings.warn(msg, AdvisoryWarning, stacklevel=2)
        notes = (msg,)
    if n % 2 == 0:
        return BoundReport(2, n, 3 * n - 2, "two-color-even-lower", 6 * n - 6, "two-color-even-upper", notes)
    return BoundReport(2, n, 2 * n, "two-color-odd-lower", (9 * n - 7) // 2, "two-color-odd-upper", notes)


def k_color_wheel_lower(k: int, n: int) -> int:
    """3^{k-1}(n-1)+1 for even n, 2^{k-2}(2n-1)+1 for odd n; n when k = 1."""
    if k < 1 or n < 4:
        raise DomainError(f"need k >= 1 and n >= 4, got k={k}, n={n}")
    if k == 1:
        return n
    if n % 2 == 0:
        return 3 ** (k - 1) * (n - 1) + 1
    return 2 ** (k - 2) * (2 * n - 1) + 1


def blowup_lower(k: int, n: int, pattern_free: dict[int, int]) -> int:
    """Best lower bound on R_k(W_n) from blow-ups.

    ``pattern_free[j]`` is the order of a known j-coloring free of the
    forbidden base pattern (K4- for even n, triangle for odd n), i.e. a lower
    bound on R_j(pattern) minus one. Lower bounds for fewer wheel colors come
    from :func:`k_color_wheel_lower`, and the maximum over splits is taken.
    """
    if k < 2 or n < 4:
        raise DomainError(f"need k >= 2 and n >= 4, got k={k}, n={n}")
    best = k_color_wheel_lower(k, n)
    for ell in range(1, k):
        base = pattern_free.get(k - ell)
        if base is None:
            continue
        best = max(best, base * (k_color_wheel_lower(ell, n) - 1) + 1)
    return best


def wheel_upper_step(k: int, n: int, previous: int) -> int:
    """k((n-3)/2 * r(r-1) + r - 1) + 2 with r an upper bound on R_{k-1}(W_n).

    Non-decreasing in r for r >= 1, so any upper bound may be substituted.
    """
    if previous < 1:
        raise DomainError("previous bound must be positive")
    return k * ((n - 3) * previous * (previous - 1) // 2 + previous - 1) + 2


def k_color_wheel_upper(k: int, n: int) -> int:
    """Upper bound on R_k(W_n) by recursion from the two-color bracket.

    The recursion is stated with exact R_{k-1}(W_n); substituting the previous
    level's upper bound gives a valid bound by monotonicity, not the exact
    recursion value.
    """
    if k < 1 or n < 7:
        raise DomainError(f"need k >= 1 and n >= 7, got k={k}, n={n}")
    if k == 1:
        return n
    value = two_color_wheel_bounds(n).upper
    for level in range(3, k + 1):
        value = wheel_upper_step(level, n, value)
    return value


def k_color_wheel_bounds(k: int, n: int) -> BoundReport:
    parity = "even" if n % 2 == 0 else "odd"
    if k == 1:
        return BoundReport(1, n, n, "single-color", n, "single-color")
    if k == 2:
        return two_color_wheel_bounds(n)
    return BoundReport(
        k,
        n,
        k_color_wheel_lower(k, n),
        f"iterated-blowup-{parity}",
        k_color_wheel_upper(k, n),
        "cycle-clique-recursion",
        (f"upper via recursion depth {k - 2}, valid upper bound under monotone substitution",),
    )


def epsilon_exponent(n: int) -> Fraction:
    """Exponent gap 2/(n-2) (even n) or 2/(n-3) (odd n) of the asymptotic bound."""
    if n < 4 or (n % 2 and n < 5):
        raise DomainError(f"need n >= 4 (even) or n >= 5 (odd), got {n}")
    return Fraction(2, n - 2) if n % 2 == 0 else Fraction(2, n - 3)
