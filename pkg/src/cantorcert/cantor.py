"""Basic intervals of the middle Cantor set.

The set is the attractor of ``x -> lam*x`` and ``x -> lam*x + (1 - lam)``.
A basic interval of rank ``n`` is the image of ``[0, 1]`` under an
``n``-fold composition of these maps and is named by its binary address,
outermost map first: address ``"011"`` is ``phi_0(phi_1(phi_1([0, 1])))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import LAM, Interval, LambdaPoly, Scalar, poly_eval


class LambdaOutOfRange(ValueError):
    pass


def check_lambda(lam: Scalar) -> Fraction:
    lam = Fraction(lam)
    if not 0 < lam < Fraction(1, 2):
        raise LambdaOutOfRange(f"lambda must lie in (0, 1/2), got {lam}")
    return lam


def check_address(address: str) -> str:
    if any(d not in "01" for d in address):
        raise ValueError(f"address must be a binary string, got {address!r}")
    return address


@lru_cache(maxsize=None)
def left_poly(address: str) -> LambdaPoly:
    """Left endpoint of the addressed interval as a polynomial in lambda."""
    check_address(address)
    out = LambdaPoly()
    step = 1 - LAM
    for d in address:
        if d == "1":
            out = out + step
        step = step * LAM
    return out


@dataclass(frozen=True, order=True)
class BasicInterval:
    """Basic interval named by its address; ``rank == len(address)``.

    Ordering is address-lexicographic, which matches left-endpoint order
    for every lambda below 1/2.
    """

    address: str = ""

    def __post_init__(self):
        check_address(self.address)

    @property
    def rank(self) -> int:
        return len(self.address)

    @property
    def left(self) -> LambdaPoly:
        return left_poly(self.address)

    @property
    def right(self) -> LambdaPoly:
        return self.left + LAM ** self.rank

    def interval(self, lam: Scalar) -> Interval:
        lam = check_lambda(lam)
        a = poly_eval(self.left, lam)
        return Interval(a, a + lam ** self.rank)

    def children(self) -> tuple["BasicInterval", "BasicInterval"]:
        return BasicInterval(self.address + "0"), BasicInterval(self.address + "1")

    def descendants(self, rank: int) -> list["BasicInterval"]:
        """All basic intervals of ``rank`` inside this one, left to right."""
        extra = rank - self.rank
        if extra < 0:
            raise ValueError(f"rank {rank} is coarser than {self.rank}")
        return [BasicInterval(self.address + w) for w in words(extra)]

    def is_ancestor_of(self, other: "BasicInterval") -> bool:
        return other.address.startswith(self.address)

    def scaled(self, m: int) -> "BasicInterval":
        """Image under ``x -> lam**m * x``: prepend ``m`` zero digits."""
        return BasicInterval("0" * m + self.address)

    def __str__(self) -> str:
        return self.address or "ε"


def words(n: int) -> list[str]:
    """All binary words of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("negative length")
    return [format(i, f"0{n}b") if n else "" for i in range(2**n)]


def interval_of(address: str, lam: Scalar) -> Interval:
    return BasicInterval(address).interval(lam)


def children(interval: BasicInterval) -> tuple[BasicInterval, BasicInterval]:
    return interval.children()


def enumerate_rank(n: int, lam: Scalar) -> list[tuple[BasicInterval, Interval]]:
    """Every rank-``n`` basic interval with its exact endpoints, left to right."""
    if n < 0:
        raise ValueError("rank must be nonnegative")
    lam = check_lambda(lam)
    return [(b, b.interval(lam)) for b in BasicInterval().descendants(n)]


def rank_left_numerators(n: int, lam: Fraction) -> list[int]:
    """Left endpoints of all rank-``n`` intervals, multiplied by ``q**n``.

    With ``lam = p/q`` every rank-``n`` endpoint is an integer multiple of
    ``q**-n``; bulk image computations work on these integers to avoid a
    gcd reduction per operation.  Order matches :func:`enumerate_rank`.
    """
    p, q = lam.numerator, lam.denominator
    lefts = [0]
    for m in range(n):
        step = (q - p) * p**m
        lefts = [x for a in lefts for x in (q * a, q * a + step)]
    return lefts
