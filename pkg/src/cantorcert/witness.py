"""Finite-depth binary witness trees for points on the hyperbola ``xy = t``.

Each node is a pair of basic intervals whose product image has ``t`` in its
interior.  A node is expanded by scanning ranks ``n+1, n+2, ...`` for
descendant pairs whose images still hold ``t`` in their interior and
keeping the first two distinct ones.  Following every root-to-leaf path
indefinitely would produce a solution of ``xy = t`` in the Cantor set; a
tree of depth ``d`` is the finite record of ``2**d`` such branches.

Targets below the catalog window are handled by scaling: if ``t / lam**m``
lies in the window, build the tree for that value and prepend ``m`` zero
digits to every x-side address (``x -> lam**m * x`` maps the Cantor set
into itself).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .cantor import BasicInterval, check_lambda
from .coverage import ST_PAIRS, certify_st_continuum, st_window
from .exactmath import Interval, Scalar, format_fraction, to_rational
from .images import image_f

DEFAULT_RANK_SCAN = 32


class NotCertified(ValueError):
    pass


class NoWindow(ValueError):
    pass


class ExpansionStalled(RuntimeError):
    def __init__(self, k_limit: int, node: "WitnessNode"):
        super().__init__(
            f"no two distinct double-covering pairs below rank {k_limit} "
            f"under ({node.address_i}, {node.address_j})"
        )
        self.k_limit = k_limit
        self.node = node


@dataclass(frozen=True)
class WitnessNode:
    address_i: str
    address_j: str
    image: Interval
    children: tuple["WitnessNode", ...] = ()

    @property
    def rank(self) -> int:
        """Rank of the y-side interval; the x side is deeper by the tree's scale prefix."""
        return len(self.address_j)

    @property
    def pair(self) -> tuple[str, str]:
        return self.address_i, self.address_j

    def walk(self) -> Iterator["WitnessNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self) -> Iterator["WitnessNode"]:
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def to_dict(self) -> dict:
        return {
            "address_i": self.address_i,
            "address_j": self.address_j,
            "rank": self.rank,
            "image": self.image.to_pair(),
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessNode":
        lo, hi = d["image"]
        return cls(
            d["address_i"],
            d["address_j"],
            Interval(to_rational(lo), to_rational(hi)),
            tuple(cls.from_dict(c) for c in d["children"]),
        )


@dataclass(frozen=True)
class WitnessTree:
    lam: Fraction
    t: Fraction
    scale_prefix: int
    depth: int
    root: WitnessNode

    @property
    def t_scaled(self) -> Fraction:
        return self.t / self.lam**self.scale_prefix

    def leaves(self) -> list[WitnessNode]:
        return list(self.root.leaves())

    def nodes(self) -> list[WitnessNode]:
        return list(self.root.walk())

    def to_dict(self) -> dict:
        return {
            "lambda": format_fraction(self.lam),
            "t": format_fraction(self.t),
            "scale_prefix": self.scale_prefix,
            "depth": self.depth,
            "root": self.root.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessTree":
        return cls(
            to_rational(d["lambda"]),
            to_rational(d["t"]),
            int(d["scale_prefix"]),
            int(d["depth"]),
            WitnessNode.from_dict(d["root"]),
        )

    def leaves_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["address_i", "address_j", "rank", "image_lo", "image_hi"])
        for leaf in self.leaves():
            w.writerow([leaf.address_i, leaf.address_j, leaf.rank, *leaf.image.to_pair()])
        return buf.getvalue()


def _exact_interval(address: str, lam: Fraction) -> Interval:
    """Endpoints of a basic interval by digit sum over integer numerators."""
    p, q, n = lam.numerator, lam.denominator, len(address)
    acc = sum((q - p) * p**m * q ** (n - 1 - m) for m, d in enumerate(address) if d == "1")
    d = q**n
    return Interval(Fraction(acc, d), Fraction(acc + p**n, d))


def _pair_image(ai: str, aj: str, lam: Fraction) -> Interval:
    return image_f(_exact_interval(ai, lam), _exact_interval(aj, lam))


class _Scanner:
    """Integer arithmetic for descendant scans at a fixed ``lam = p/q`` and target.

    A rank-``n`` left endpoint is carried as the integer ``A = a * q**n``;
    the image test ``a*b < t < (a + lam**n)(b + lam**n)`` becomes an
    integer comparison after multiplying through by ``q**(2n)`` and the
    target's denominator.
    """

    def __init__(self, lam: Fraction, ts: Fraction):
        self.p, self.q = lam.numerator, lam.denominator
        self.tn, self.td = ts.numerator, ts.denominator
        self.lam = lam

    def left(self, address: str) -> int:
        p, q = self.p, self.q
        acc = 0
        for m, d in enumerate(address):
            acc = q * acc + (q - p) * p**m * (d == "1")
        return acc

    def child(self, A: int, n: int, digit: str) -> int:
        return self.q * A + ((self.q - self.p) * self.p**n if digit == "1" else 0)

    def holds(self, A: int, B: int, n: int) -> bool:
        h = self.p**n
        scaled_t = self.tn * self.q ** (2 * n)
        return A * B * self.td < scaled_t < (A + h) * (B + h) * self.td

    def image(self, A: int, B: int, n: int) -> Interval:
        h, d = self.p**n, self.q ** (2 * n)
        return Interval(Fraction(A * B, d), Fraction((A + h) * (B + h), d))


def select_seed(lam: Scalar, t: Scalar) -> tuple[WitnessNode, int]:
    """Seed pair and scale prefix for target ``t``.

    The returned node is in unscaled coordinates: its image holds
    ``t / lam**prefix`` in its interior.
    """
    lam, t = check_lambda(lam), Fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"target must lie in (0, 1), got {t}")
    cert = certify_st_continuum(lam)
    if not cert.passed:
        raise NotCertified(f"λ = {lam} fails: {cert.first_failure.label}")
    window = st_window(lam)
    prefix, ts = 0, t
    while not window.contains(ts):
        if ts >= window.hi:
            raise NoWindow(f"t = {t} skipped past the window")
        prefix += 1
        ts = t / lam**prefix
    for _, I, J in ST_PAIRS:
        img = _pair_image(I.address, J.address, lam)
        if img.interior_contains(ts):
            return WitnessNode(I.address, J.address, img), prefix
    raise NoWindow(f"t/λ^{prefix} = {ts} is a boundary point of every catalog image")


def expand(
    ai: str, aj: str, lam: Fraction, ts: Fraction, rank_scan: int = DEFAULT_RANK_SCAN
) -> list[tuple[str, str, Interval]]:
    """First two distinct descendant pairs whose images hold ``ts`` in their interior.

    Ranks ``n+1 .. n+rank_scan`` are scanned in turn.  Pairs are put in
    canonical order (x-side not to the right of the y-side), deduplicated
    and sorted by address before counting.  A pair can only qualify if its
    parent did, so each rank scans the children of the previous survivors.
    """
    sc = _Scanner(lam, ts)
    n = len(aj)
    frontier = [(ai, aj, sc.left(ai), sc.left(aj))]
    for rank in range(n + 1, n + rank_scan + 1):
        found: dict[tuple[str, str], tuple[int, int]] = {}
        for x, y, A, B in frontier:
            for dx in "01":
                Ax = sc.child(A, rank - 1, dx)
                for dy in "01":
                    By = sc.child(B, rank - 1, dy)
                    pair, ends = (x + dx, y + dy), (Ax, By)
                    if pair[0] > pair[1]:
                        pair, ends = pair[::-1], ends[::-1]
                    if pair not in found and sc.holds(*ends, rank):
                        found[pair] = ends
        ordered = sorted(found)
        if len(ordered) >= 2:
            return [(p[0], p[1], sc.image(*found[p], rank)) for p in ordered[:2]]
        frontier = [(p[0], p[1], *found[p]) for p in ordered]
        if not frontier:
            break
    raise ExpansionStalled(n + rank_scan, WitnessNode(ai, aj, _pair_image(ai, aj, lam)))


def build_witness_tree(
    lam: Scalar, t: Scalar, depth: int, rank_scan: int = DEFAULT_RANK_SCAN
) -> WitnessTree:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    lam, t = check_lambda(lam), Fraction(t)
    seed, prefix = select_seed(lam, t)
    ts = t / lam**prefix
    scale = lam**prefix
    zeros = "0" * prefix

    def grow(ai: str, aj: str, img: Interval, level: int) -> WitnessNode:
        kids: tuple[WitnessNode, ...] = ()
        if level < depth:
            kids = tuple(grow(x, y, im, level + 1) for x, y, im in expand(ai, aj, lam, ts, rank_scan))
        return WitnessNode(zeros + ai, aj, img.scaled(scale), kids)

    root = grow(seed.address_i, seed.address_j, seed.image, 0)
    return WitnessTree(lam, t, prefix, depth, root)


def verify_tree(tree: WitnessTree) -> bool:
    """Re-derive every image from its addresses and check the tree invariants."""
    try:
        lam = check_lambda(tree.lam)
    except ValueError:
        return False
    zeros = "0" * tree.scale_prefix

    def ok_node(node: WitnessNode) -> bool:
        if not node.address_i.startswith(zeros):
            return False
        if len(node.address_i) != len(node.address_j) + tree.scale_prefix:
            return False
        if not set(node.address_i + node.address_j) <= {"0", "1"}:
            return False
        img = _pair_image(node.address_i, node.address_j, lam)
        return img == node.image and img.interior_contains(tree.t)

    def check(node: WitnessNode, level: int) -> Optional[int]:
        """Number of leaves below ``node``, or None on any violation."""
        if not ok_node(node):
            return None
        if not node.children:
            return 1 if level == tree.depth else None
        if len(node.children) != 2 or node.children[0].pair == node.children[1].pair:
            return None
        bi, bj = BasicInterval(node.address_i), BasicInterval(node.address_j)
        total = 0
        for c in node.children:
            if c.rank <= node.rank:
                return None
            ci, cj = BasicInterval(c.address_i), BasicInterval(c.address_j)
            # swapped children only occur under diagonal pairs, so nesting is per side
            if not (bi.is_ancestor_of(ci) and bj.is_ancestor_of(cj)):
                return None
            outer_i, outer_j = _exact_interval(bi.address, lam), _exact_interval(bj.address, lam)
            if not (outer_i.contains(_exact_interval(ci.address, lam)) and outer_j.contains(_exact_interval(cj.address, lam))):
                return None
            sub = check(c, level + 1)
            if sub is None:
                return None
            total += sub
        return total

    count = check(tree.root, 0)
    return count == 2**tree.depth


def diagonal_counts(tree: WitnessTree) -> list[int]:
    """For each leaf, how many nodes on its branch pair an interval with itself."""
    p = tree.scale_prefix
    out = []

    def walk(node: WitnessNode, seen: int):
        seen += node.address_i[p:] == node.address_j
        if not node.children:
            out.append(seen)
        for c in node.children:
            walk(c, seen)

    walk(tree.root, 0)
    return out
