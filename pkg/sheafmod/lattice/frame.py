"""Construction of finite frames and exhaustive verification of their laws."""

import logging
from collections.abc import Callable, Hashable, Iterable, Sequence
from itertools import combinations, product

import numpy as np

from sheafmod.config import LimitsConfig
from sheafmod.errors import NotAFrame, NotALattice, SizeExceeded
from sheafmod.lattice.models import Element, Frame, Lattice, Poset
from sheafmod.report import LawReport, describe, first_violation

logger = logging.getLogger(__name__)


def _bits_label(bits: int, poset: Poset) -> str:
    if bits == 0:
        return "0"
    if bits == (1 << poset.size) - 1:
        return "1"
    members = [i for i in range(poset.size) if bits >> i & 1]
    maximal = [
        i for i in members if not any(j != i and poset.leq[i, j] for j in members)
    ]
    return "v".join(poset.elements[i] for i in maximal)


def downset_frame(
    poset: Poset,
    name: str | None = None,
    limits: LimitsConfig | None = None,
) -> Frame:
    """The frame of down-closed subsets of a finite poset.

    Elements are bitsets over the poset, join is union and meet is
    intersection. Indices are ordered by (size, bitset), so the empty set
    comes first and the whole poset last.
    """
    limits = limits or LimitsConfig()
    n = poset.size
    if n > limits.max_poset:
        raise SizeExceeded(
            f"poset has {n} elements; down-set frames allow at most {limits.max_poset}"
        )

    masks = np.arange(1 << n, dtype=np.int64)
    closed = np.ones(len(masks), dtype=bool)
    for i, down in enumerate(poset.down_masks):
        has_i = (masks >> i) & 1 == 1
        closed &= ~has_i | ((masks & down) == down)
    keys = masks[closed]
    if len(keys) > limits.max_frame:
        raise SizeExceeded(f"poset has {len(keys)} down-sets; limit is {limits.max_frame}")

    popcount = np.array([bin(int(k)).count("1") for k in keys], dtype=np.int64)
    keys = keys[np.lexsort((keys, popcount))]

    lookup = np.full(1 << n, -1, dtype=np.int64)
    lookup[keys] = np.arange(len(keys))
    join = lookup[keys[:, None] | keys[None, :]]
    meet = lookup[keys[:, None] & keys[None, :]]
    logger.debug("down-set frame of %d-element poset has %d elements", n, len(keys))

    return Frame(
        labels=tuple(_bits_label(int(k), poset) for k in keys),
        join_table=join,
        meet_table=meet,
        name=name or f"D({n})",
        keys=tuple(int(k) for k in keys),
    )


def lattice_from_order(
    keys: Sequence[Hashable],
    leq: np.ndarray,
    labels: Sequence[str] | None = None,
    name: str = "L",
) -> Lattice:
    """Build join and meet tables from an order matrix ``leq[i, j]`` iff i <= j.

    Raises NotALattice with a witness pair when some bound is missing or not unique.
    """
    leq = np.asarray(leq, dtype=bool)
    n = len(keys)
    labels = list(labels) if labels is not None else [str(k) for k in keys]
    down = leq.sum(axis=0)
    perm = np.argsort(down, kind="stable")
    leq = leq[np.ix_(perm, perm)]
    down = down[perm]
    keys = [keys[i] for i in perm]
    labels = [labels[i] for i in perm]

    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    rows = np.arange(n)
    for x in range(n):
        upper = leq[x][None, :] & leq
        least = np.where(upper, down[None, :], n + 1).argmin(axis=1)
        bad = ~upper[rows, least] | (upper & ~leq[least]).any(axis=1)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice("no least upper bound", describe(["x", "y"], [labels[x], labels[y]]))
        join[x] = least

        lower = leq[:, x][None, :] & leq.T
        greatest = np.where(lower, down[None, :], -1).argmax(axis=1)
        bad = ~lower[rows, greatest] | (lower & ~leq.T[greatest]).any(axis=1)
        if bad.any():
            y = int(np.flatnonzero(bad)[0])
            raise NotALattice(
                "no greatest lower bound", describe(["x", "y"], [labels[x], labels[y]])
            )
        meet[x] = greatest

    return Lattice(tuple(labels), join, meet, name=name, keys=tuple(keys))


def lattice_from_tables(
    labels: Sequence[str],
    join: Sequence[Sequence[int]],
    meet: Sequence[Sequence[int]],
    name: str = "L",
) -> Lattice:
    """Explicit-table lattice; it must pass verify_frame before being used as a frame."""
    return Lattice(tuple(labels), np.asarray(join), np.asarray(meet), name=name)


def vector_label(vector: Sequence[int], base: Lattice) -> str:
    return "(" + ",".join(base.labels[v] for v in vector) + ")"


def vector_lattice(
    base: Lattice,
    vectors: np.ndarray,
    name: str = "V",
) -> Lattice:
    """Lattice of B-valued vectors (rows of ``vectors``) under the pointwise order."""
    vectors = np.asarray(vectors, dtype=np.int64)
    leq = base.order[vectors[:, None, :], vectors[None, :, :]].all(axis=-1)
    keys = [tuple(int(v) for v in row) for row in vectors]
    labels = [vector_label(k, base) for k in keys]
    return lattice_from_order(keys, leq, labels, name=name)


def power_lattice(
    base: Frame,
    width: int,
    name: str | None = None,
    limits: LimitsConfig | None = None,
) -> Frame:
    """The function lattice B^S for |S| = ``width``, ordered pointwise."""
    limits = limits or LimitsConfig()
    total = base.size**width
    if total > limits.max_free_carrier:
        raise SizeExceeded(f"|B|^|S| = {total} exceeds {limits.max_free_carrier}")
    vectors = np.array(list(product(range(base.size), repeat=width)), dtype=np.int64).reshape(
        total, width
    )
    # product enumeration is mixed-radix order: the code of a vector is its index
    radix = base.size ** np.arange(width - 1, -1, -1, dtype=np.int64)
    join = np.empty((total, total), dtype=np.int64)
    meet = np.empty((total, total), dtype=np.int64)
    for x in range(total):
        join[x] = (base.join_table[vectors[x][None, :], vectors] * radix).sum(axis=-1)
        meet[x] = (base.meet_table[vectors[x][None, :], vectors] * radix).sum(axis=-1)
    keys = tuple(tuple(int(v) for v in row) for row in vectors)
    logger.debug("power lattice %s^%d has %d elements", base.name, width, total)
    return Frame(
        labels=tuple(vector_label(k, base) for k in keys),
        join_table=join,
        meet_table=meet,
        name=name or f"{base.name}^{width}",
        keys=keys,
    )


def verify_lattice(candidate: Lattice) -> LawReport:
    """Check the bounded lattice laws on the full tables."""
    report = LawReport(subject=f"lattice {candidate.name}")
    j, m, n = candidate.join_table, candidate.meet_table, candidate.size
    labels = candidate.labels
    idx = np.arange(n)

    def pair(hit: tuple[int, ...] | None) -> str | None:
        if hit is None:
            return None
        return describe("xyz", [labels[i] for i in hit])

    for op, table in (("join", j), ("meet", m)):
        asym = table != table.T
        report.check(f"{op} commutative", not asym.any(), pair(first_violation(asym)))
        unidem = table[idx, idx] != idx
        report.check(f"{op} idempotent", not unidem.any(), pair(first_violation(unidem)))
        assoc_hit = None
        for x in range(n):
            # (x op y) op z vs x op (y op z)
            bad = table[table[x][:, None], idx[None, :]] != table[x][table]
            if bad.any():
                assoc_hit = (x, *first_violation(bad))  # type: ignore[misc]
                break
        report.check(f"{op} associative", assoc_hit is None, pair(assoc_hit))

    absorb1 = j[idx[:, None], m] != idx[:, None]
    absorb2 = m[idx[:, None], j] != idx[:, None]
    report.check("absorption x v (x ^ y) = x", not absorb1.any(), pair(first_violation(absorb1)))
    report.check("absorption x ^ (x v y) = x", not absorb2.any(), pair(first_violation(absorb2)))
    report.check("bottom is index 0", (j[0] == idx).all(), pair(first_violation(j[0] != idx)))
    top_bad = m[n - 1] != idx
    report.check("top is last index", not top_bad.any(), pair(first_violation(top_bad)))
    return report


def _subsets(items: Sequence[int]) -> Iterable[tuple[int, ...]]:
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def _subset_distributivity_witness(frame: Lattice, x: int) -> tuple[int, ...] | None:
    """Search every subset S for x ^ V S != V {x ^ s : s in S}.

    Subsets are enumerated through the pairs (V S, V x^S) they reach, adding
    one element at a time, so all 2^n subsets are covered by at most n^2
    pairs. Returns a violating S, or None.
    """
    j, n = frame.join_table, frame.size
    image = frame.meet_table[x]
    reached = np.zeros((n, n), dtype=bool)
    reached[frame.bottom, frame.bottom] = True
    parent = np.full((n, n, 3), -1, dtype=np.int64)
    for t in range(n):
        a, b = np.nonzero(reached)
        na, nb = j[a, t], j[b, image[t]]
        new = ~reached[na, nb]
        parent[na[new], nb[new]] = np.stack([a[new], b[new], np.full(new.sum(), t)], axis=1)
        reached[na, nb] = True
    a, b = np.nonzero(reached & (np.arange(n)[None, :] != image[:, None]))
    if not len(a):
        return None
    pair, members = (int(a[0]), int(b[0])), []
    while parent[pair][2] >= 0:
        pa, pb, t = parent[pair]
        members.append(int(t))
        pair = (int(pa), int(pb))
    return tuple(sorted(members))


def verify_frame(candidate: Lattice, limits: LimitsConfig | None = None) -> LawReport:
    """Lattice laws plus frame distributivity x ^ V S = V {x ^ s : s in S}.

    Distributivity is checked on all triples; over arbitrary subsets it is
    checked exhaustively for small frames and otherwise follows from the
    binary law and x ^ 0 = 0.
    """
    limits = limits or LimitsConfig()
    report = verify_lattice(candidate)
    report.subject = f"frame {candidate.name}"
    j, m, n = candidate.join_table, candidate.meet_table, candidate.size
    labels = candidate.labels

    hit = None
    for x in range(n):
        lhs = m[x][j]
        rhs = j[m[x][:, None], m[x][None, :]]
        if (lhs != rhs).any():
            hit = (x, *first_violation(lhs != rhs))  # type: ignore[misc]
            break
    report.check(
        "distributive x ^ (y v z) = (x ^ y) v (x ^ z)",
        hit is None,
        describe("xyz", [labels[i] for i in hit]) if hit else None,
    )

    zero = m[:, 0] != 0
    report.check("x ^ 0 = 0", not zero.any(), describe("x", [labels[int(np.argmax(zero))]]))

    if n <= limits.exhaustive_subset_frame:
        witness = None
        for x in range(n):
            subset = _subset_distributivity_witness(candidate, x)
            if subset is not None:
                witness = f"x={labels[x]}, S={{{', '.join(labels[s] for s in subset)}}}"
                break
        report.check("frame distributivity over all subsets", witness is None, witness)
    else:
        report.check(
            "frame distributivity over all subsets",
            report.passed,
            "implied failure of binary distributivity",
            note="finite joins reduce to the binary law and the empty join",
        )
    return report


def as_frame(candidate: Lattice, limits: LimitsConfig | None = None) -> Frame:
    """Promote a lattice to a Frame after verify_frame passes."""
    if isinstance(candidate, Frame):
        return candidate
    report = verify_frame(candidate, limits)
    if not report.passed:
        failure = report.failures[0]
        raise NotAFrame(f"{candidate.name} fails {failure.law}", failure.witness)
    return Frame(
        labels=candidate.labels,
        join_table=candidate.join_table,
        meet_table=candidate.meet_table,
        name=candidate.name,
        keys=candidate.keys,
    )


def heyting(frame: Frame, x: Element, y: Element) -> int:
    """Heyting implication x -> y = V {z : z ^ x <= y}."""
    return frame.heyting(frame.index(x), frame.index(y))


def join_set(frame: Lattice, elements: Iterable[Element]) -> int:
    """Join of a finite set; the empty join is the bottom."""
    return frame.join_set(frame.index(e) for e in elements)


def meet_set(frame: Lattice, elements: Iterable[Element]) -> int:
    """Meet of a finite set; the empty meet is the top."""
    return frame.meet_set(frame.index(e) for e in elements)


def check_frame_hom(
    source: Lattice,
    target: Lattice,
    table: Sequence[int] | np.ndarray,
    subject: str = "frame homomorphism",
) -> LawReport:
    """Preservation of 0, 1, binary joins and binary meets by ``table``: source -> target."""
    report = LawReport(subject=subject)
    h = np.asarray(table, dtype=np.int64)
    if h.shape != (source.size,) or (h.size and (h.min() < 0 or h.max() >= target.size)):
        report.check(
            "table is total", False, f"expected {source.size} entries in 0..{target.size - 1}"
        )
        return report
    report.check("preserves 0", h[source.bottom] == target.bottom, f"0 -> {target.labels[h[0]]}")
    report.check("preserves 1", h[source.top] == target.top, f"1 -> {target.labels[h[-1]]}")
    for op, src, tgt in (
        ("joins", source.join_table, target.join_table),
        ("meets", source.meet_table, target.meet_table),
    ):
        bad = h[src] != tgt[h[:, None], h[None, :]]
        hit = first_violation(bad)
        report.check(
            f"preserves binary {op}",
            hit is None,
            describe("xy", [source.labels[i] for i in hit]) if hit else None,
        )
    return report


def is_monotone(source: Lattice, target: Lattice, table: np.ndarray) -> tuple[int, int] | None:
    """First pair x <= y with table[x] not <= table[y], or None."""
    h = np.asarray(table, dtype=np.int64)
    bad = source.order & ~target.order[h[:, None], h[None, :]]
    hit = first_violation(bad)
    return None if hit is None else (hit[0], hit[1])


def count_downsets(poset: Poset) -> int:
    """Number of down-sets, counted independently via antichains."""
    strict = poset.leq & ~np.eye(poset.size, dtype=bool)
    return sum(
        1
        for subset in _subsets(range(poset.size))
        if not any(strict[a, b] or strict[b, a] for a, b in combinations(subset, 2))
    )


def map_table(source: Lattice, fn: Callable[[int], int]) -> np.ndarray:
    return np.array([fn(x) for x in range(source.size)], dtype=np.int64)


def semiring_matmul(frame: Lattice, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(AB)_{su} = V_t a_{st} ^ b_{tu} over the (v, ^) semiring of ``frame``.

    ``right`` may be a matrix or a vector; shapes must already agree.
    """
    a = np.asarray(left, dtype=np.int64)
    b = np.asarray(right, dtype=np.int64)
    if b.ndim == 1:
        return semiring_matmul(frame, a, b[:, None])[:, 0]
    # terms[s, t, u] = a_st ^ b_tu
    terms = frame.meet_table[a[:, :, None], b[None, :, :]]
    return frame.fold_join(terms, axis=1)
