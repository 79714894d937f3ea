"""Closed-form labelings, Sidon/B_k machinery, and labeling combinators.

Every construction re-induces its output and raises if the result does not
match the promised target, so a returned report is always self-verified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Domain,
    Labeling,
    SimpleGraph,
    find_isomorphism,
    graph,
    induce,
    is_valid_labeling,
    label_range,
    labeling,
)
from .families import FamilyKind, FamilySpec, generate

_BK_FIELD_BITS = 64


@dataclass(frozen=True)
class ConstructionReport:
    """A labeling, the graph it induces, and its range accounting."""

    labeling: Labeling
    target: object
    claimed_range_bound: int
    achieved_range: int
    valid: bool


@dataclass(frozen=True)
class SidonSet:
    """Increasing positive integers whose k-fold sums stay multiplicity-free."""

    elements: tuple[int, ...]
    order_k: int


class ConstructionError(RuntimeError):
    """A construction's self-verification failed (indicates an internal bug)."""


def _report(
    lab: Labeling, target: SimpleGraph, claimed: int, exact_isolates: int | None
) -> ConstructionReport:
    achieved = label_range(lab)
    valid = is_valid_labeling(lab, target, exact_isolates=exact_isolates)
    if not valid:
        raise ConstructionError("construction output failed re-induction check")
    if achieved > claimed:
        raise ConstructionError("construction exceeded its claimed range bound")
    return ConstructionReport(
        labeling=lab,
        target=target,
        claimed_range_bound=claimed,
        achieved_range=achieved,
        valid=True,
    )


# ---------------------------------------------------------------------------
# Sidon sets and B_k sets
# ---------------------------------------------------------------------------


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _smallest_prime_at_least(n: int) -> int:
    candidate = max(n, 2)
    while not _is_prime(candidate):
        candidate += 1
    return candidate


def _fields_within(value: int, max_index: int, limit: int) -> bool:
    """Check that every 64-bit little-endian field of value stays <= limit."""
    buf = value.to_bytes(8 * (max_index + 1), "little")
    if limit < 256:
        # admissible coefficients fit one byte: the 7 high bytes of every
        # field must be zero and the low byte must stay within limit
        for offset in range(1, 8):
            if max(buf[offset::8], default=0) > 0:
                return False
        return max(buf[0::8], default=0) <= limit
    return all(
        int.from_bytes(buf[8 * i : 8 * i + 8], "little") <= limit
        for i in range(max_index + 1)
    )


def is_bk_set(elements, k: int) -> bool:
    """Certify the B_k property: coefficients of the k-th power stay <= k!."""
    if k < 2:
        raise ValueError("B_k order must be >= 2")
    elements = tuple(sorted(elements))
    if not elements:
        return True
    if len(set(elements)) != len(elements) or elements[0] < 1:
        raise ValueError("B_k sets contain distinct positive integers")
    if len(elements) ** k >= 2 ** (_BK_FIELD_BITS - 1):
        raise ValueError("coefficient fields could overflow for this input size")
    packed = 0
    for a in elements:
        packed += 1 << (_BK_FIELD_BITS * a)
    return _fields_within(packed**k, k * elements[-1], math.factorial(k))


def is_sidon_set(elements) -> bool:
    """Sidon = B_2: pairwise sums (with repetition) are all distinct."""
    return is_bk_set(elements, 2)


def _greedy_bk_elements(n: int, k: int) -> tuple[int, ...]:
    """Smallest-next-element greedy under joint B_2..B_k certification.

    Certifying only order k can strand the greedy: the order-4-certified
    prefix {1,2,3} blocks every later candidate (any c adds coefficient
    24 + 4 > 4! at z^(c+6)).  A jointly certified prefix never wedges: for
    any candidate c beyond twice the current span, the new order-j sums
    split by the multiplicity of c into regions whose coefficients reduce
    to lower-order coefficients of the prefix, all certified.
    """
    if (n + 1) ** k >= 2 ** (_BK_FIELD_BITS - 1):
        raise ValueError("coefficient fields could overflow for this input size")
    limits = [math.factorial(j) for j in range(k + 1)]
    binoms = [[math.comb(j, i) for i in range(j + 1)] for j in range(k + 1)]
    chosen: list[int] = []
    packed = 0
    powers = [1] + [0] * k  # powers[j] = prefix polynomial ** j
    candidate = 1
    while len(chosen) < n:
        ok = True
        for j in range(2, k + 1):
            # (P + z^c)^j expanded binomially from cached powers of P
            total = powers[j]
            for i in range(1, j + 1):
                total += (binoms[j][i] * powers[j - i]) << (
                    _BK_FIELD_BITS * i * candidate
                )
            if not _fields_within(total, j * candidate, limits[j]):
                ok = False
                break
        if ok:
            chosen.append(candidate)
            packed += 1 << (_BK_FIELD_BITS * candidate)
            for j in range(1, k + 1):
                powers[j] = powers[j - 1] * packed
        candidate += 1
    return tuple(chosen)


def sidon_set(n: int) -> SidonSet:
    """Sidon set of size n inside [1, 2p^2], p the smallest prime >= n."""
    if n < 1:
        raise ValueError("Sidon set size must be >= 1")
    p = _smallest_prime_at_least(n)
    elements = tuple(sorted(2 * p * i + (i * i) % p for i in range(1, p + 1)))[:n]
    if not is_bk_set(elements, 2):  # unreachable; greedy kept as a safety net
        elements = _greedy_bk_elements(n, 2)
    return SidonSet(elements, 2)


def bk_set(n: int, k: int) -> SidonSet:
    """Greedy-from-1 B_k set of size n, certified element by element."""
    if n < 1:
        raise ValueError("B_k set size must be >= 1")
    if k < 2:
        raise ValueError("B_k order must be >= 2")
    return SidonSet(_greedy_bk_elements(n, k), k)


# ---------------------------------------------------------------------------
# closed-form family labelings
# ---------------------------------------------------------------------------


def spum_path_even(n: int) -> ConstructionReport:
    """Even-path labeling {1,3,...,2n-3} + {2n-4, 2n}: range 2n-1, one isolate."""
    if n < 4 or n % 2:
        raise ValueError("defined for even n >= 4")
    labels = set(range(1, 2 * n - 2, 2)) | {2 * n - 4, 2 * n}
    lab = labeling(sorted(labels), Domain.POSITIVE)
    return _report(lab, generate(FamilySpec(FamilyKind.PATH, n)), 2 * n - 1, 1)


def sd_path(n: int) -> ConstructionReport:
    """Path labeling [n-1, 2n-2] + {3n-4, 3n-3}: range 2n-2, two isolates."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    labels = list(range(n - 1, 2 * n - 1)) + [3 * n - 4, 3 * n - 3]
    lab = labeling(labels, Domain.POSITIVE)
    return _report(lab, generate(FamilySpec(FamilyKind.PATH, n)), 2 * n - 2, 2)


def spum_cycle4() -> ConstructionReport:
    """The 4-cycle at its exact minimum: [3,6] + [8,10], range 7."""
    lab = labeling([3, 4, 5, 6, 8, 9, 10], Domain.POSITIVE)
    return _report(lab, generate(FamilySpec(FamilyKind.CYCLE, 4)), 7, 3)


def ispum_cycle_odd(n: int) -> ConstructionReport:
    """Odd-cycle integral labeling with no isolates; range 16k = 8(n-9)."""
    if n < 15 or n % 2 == 0:
        raise ValueError("defined for odd n >= 15")
    k = (n - 9) // 2
    labels = (
        list(range(-8 * k, -7 * k + 2))
        + list(range(4 * k, 5 * k + 1))
        + [-3 * k, -3 * k + 1, -5 * k, -k - 1, 7 * k - 1, 8 * k]
    )
    lab = labeling(labels, Domain.INTEGRAL)
    return _report(lab, generate(FamilySpec(FamilyKind.CYCLE, n)), 8 * (n - 9), 0)


def spum_matching(p: int) -> ConstructionReport:
    """Matching labeling [2p-1, 4p-2] + {6p-3}: range 4p-2, one isolate."""
    if p < 1:
        raise ValueError("defined for p >= 1")
    labels = list(range(2 * p - 1, 4 * p - 1)) + [6 * p - 3]
    lab = labeling(labels, Domain.POSITIVE)
    return _report(lab, generate(FamilySpec(FamilyKind.MATCHING, p)), 4 * p - 2, 1)


def ispum_matching(p: int) -> ConstructionReport:
    """Matching labeling {-1,1,3,...,4p-5} + {4p-4}: range 4p-3, no isolates."""
    if p < 3:
        raise ValueError("defined for p >= 3")
    labels = [-1] + list(range(1, 4 * p - 4, 2)) + [4 * p - 4]
    lab = labeling(labels, Domain.INTEGRAL)
    return _report(lab, generate(FamilySpec(FamilyKind.MATCHING, p)), 4 * p - 3, 0)


def sd_general(g: SimpleGraph) -> ConstructionReport:
    """Sidon-based labeling of an arbitrary isolate-free graph.

    Vertex v gets 4*s_v+1 and each edge uv the label 4*s_u+4*s_v+2; edge
    labels are exactly the isolates, and the range stays below 64n^2-64n+9.
    """
    if g.n < 2:
        raise ValueError("target needs at least two vertices")
    if g.isolated_vertices():
        raise ValueError("target must be isolate-free")
    s = sidon_set(g.n).elements
    vertex_labels = {v: 4 * s[v] + 1 for v in range(g.n)}
    edge_labels = {4 * s[u] + 4 * s[v] + 2 for u, v in g.edges}
    labels = sorted(set(vertex_labels.values()) | edge_labels)
    if len(labels) != g.n + len(g.edges):
        raise ConstructionError("label collision in Sidon construction")
    lab = labeling(labels, Domain.POSITIVE)
    # exact structural check by label values (no isomorphism search needed)
    expected = {
        tuple(sorted((vertex_labels[u], vertex_labels[v]))) for u, v in g.edges
    }
    result = induce(lab)
    got = {
        tuple(sorted((result.label_of[a], result.label_of[b])))
        for a, b in result.graph.edges
    }
    claimed = 64 * g.n * g.n - 64 * g.n + 9
    achieved = label_range(lab)
    if got != expected or result.isolate_count != len(g.edges):
        raise ConstructionError("Sidon construction failed re-induction check")
    if achieved > claimed:
        raise ConstructionError("Sidon construction exceeded its claimed bound")
    return ConstructionReport(lab, g, claimed, achieved, True)


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------


def _require_positive_valid(lab: Labeling, g: SimpleGraph) -> None:
    if lab.labels[0] < 1:
        raise ValueError("combinators require positive-domain labelings")
    if not is_valid_labeling(lab, g):
        raise ValueError("labeling does not induce the stated graph")


def _split_sets(lab: Labeling) -> tuple[list[int], list[int]]:
    """Core (vertex) labels and pair-sum labels of a labeling."""
    result = induce(lab)
    s = sorted(result.core_label_of)
    t = sorted(
        {
            result.label_of[i] + result.label_of[j]
            for i, j in result.graph.edges
        }
    )
    return s, t


def _vertex_label_map(lab: Labeling, g: SimpleGraph) -> dict[int, int]:
    """Map each g vertex to its core label under a fixed isomorphism."""
    result = induce(lab)
    phi = find_isomorphism(g, result.core_graph)
    if phi is None:
        raise ValueError("labeling does not induce the stated graph")
    return {v: result.core_label_of[phi[v]] for v in range(g.n)}


def translate(lab: Labeling, g: SimpleGraph, x: int) -> Labeling:
    """Shift core labels by x and pair-sum labels by 2x; drops idle isolates.

    Requires x >= range - 1 - min(label); the image induces g again with the
    pair-sum labels as the only isolates.
    """
    _require_positive_valid(lab, g)
    threshold = label_range(lab) - 1 - lab.labels[0]
    if x < threshold:
        raise ValueError(f"translation needs x >= {threshold}")
    s, t = _split_sets(lab)
    moved = labeling(
        sorted({v + x for v in s} | {v + 2 * x for v in t}), Domain.POSITIVE
    )
    if not is_valid_labeling(moved, g, exact_isolates=len(t)):
        raise ConstructionError("translated labeling failed re-induction check")
    return moved


def disjoint_union_graph(g1: SimpleGraph, g2: SimpleGraph) -> SimpleGraph:
    """g1 and g2 side by side, g2 vertices shifted by g1.n."""
    edges = set(g1.edges) | {(u + g1.n, v + g1.n) for u, v in g2.edges}
    return graph(g1.n + g2.n, edges)


def disjoint_union_scaled(
    lab1: Labeling, g1: SimpleGraph, lab2: Labeling, g2: SimpleGraph
) -> ConstructionReport:
    """L1 together with (4*r1-2)*L2; the scale keeps the parts independent."""
    _require_positive_valid(lab1, g1)
    _require_positive_valid(lab2, g2)
    r1, r2 = label_range(lab1), label_range(lab2)
    c = 4 * r1 - 2
    merged = sorted(set(lab1.labels) | {c * v for v in lab2.labels})
    lab = labeling(merged, Domain.POSITIVE)
    target = disjoint_union_graph(g1, g2)
    iso1 = induce(lab1).isolate_count
    iso2 = induce(lab2).isolate_count
    claimed = 2 * (2 * r1 - 1) * (2 * r2 - 1) - 1
    return _report(lab, target, claimed, iso1 + iso2)


def disjoint_union_translated(
    lab1: Labeling, g1: SimpleGraph, lab2: Labeling, g2: SimpleGraph
) -> ConstructionReport:
    """Both parts translated into disjoint blocks; range <= 11*r1 + r2 + 2."""
    _require_positive_valid(lab1, g1)
    _require_positive_valid(lab2, g2)
    if label_range(lab2) > label_range(lab1):
        lab1, g1, lab2, g2 = lab2, g2, lab1, g1
    r1, r2 = label_range(lab1), label_range(lab2)
    s1, t1 = _split_sets(lab1)
    s2, t2 = _split_sets(lab2)
    x1 = r1 + 1 - lab1.labels[0]
    x2 = 6 * r1 + 2 - lab2.labels[0]
    merged = sorted(
        {v + x1 for v in s1}
        | {v + 2 * x1 for v in t1}
        | {v + x2 for v in s2}
        | {v + 2 * x2 for v in t2}
    )
    lab = labeling(merged, Domain.POSITIVE)
    target = disjoint_union_graph(g1, g2)
    return _report(lab, target, 11 * r1 + r2 + 2, len(t1) + len(t2))


def add_isolated(lab: Labeling, g: SimpleGraph, k: int) -> ConstructionReport:
    """Guarantee at least k isolated vertices alongside g.

    Already enough isolates: unchanged.  k <= 2: append the single label
    4r-2, which never collides (pair sums stay below it).  k >= 3:
    translate to separate vertex and sum labels, then fill the gap between
    the blocks with fresh isolates; range stays within 2r + k - 3.
    """
    if k < 1:
        raise ValueError("isolate count must be >= 1")
    _require_positive_valid(lab, g)
    r = label_range(lab)
    mu = lab.labels[0]
    claimed = max(k, 4 * r) + k - 5
    current = induce(lab).isolate_count
    if current >= k:
        return _report(lab, g, claimed, current)
    if k <= 2:
        lab2 = labeling(sorted(set(lab.labels) | {4 * r - 2}), Domain.POSITIVE)
        return _report(lab2, g, claimed, current + 1)
    s, t = _split_sets(lab)
    m = max(r - 1, k + r - 1 - len(t))
    x = m - mu
    filler = range(m + r, 2 * m + 1)
    merged = sorted({v + x for v in s} | {v + 2 * x for v in t} | set(filler))
    lab2 = labeling(merged, Domain.POSITIVE)
    isolates = len(t) + len(filler)
    return _report(lab2, g, claimed, isolates)


def add_vertex(
    lab: Labeling, g: SimpleGraph, neighbors
) -> ConstructionReport:
    """Extend g by one vertex adjacent to `neighbors`; range <= 4r-1.

    Works by translating and doubling (all labels even), then inserting the
    odd label 2r+1 for the new vertex plus one odd edge label per neighbor.
    An empty neighborhood leaves the new vertex isolated.
    """
    neighbors = sorted(set(neighbors))
    if any(not 0 <= u < g.n for u in neighbors):
        raise ValueError("neighbor ids must be vertices of the graph")
    _require_positive_valid(lab, g)
    r = label_range(lab)
    x = r - lab.labels[0]
    s, t = _split_sets(lab)
    b = 2 * r + 1
    merged = {2 * (v + x) for v in s} | {2 * (v + 2 * x) for v in t} | {b}
    if neighbors:
        label_of_vertex = _vertex_label_map(lab, g)
        merged |= {
            b + 2 * (label_of_vertex[u] + x) for u in neighbors
        }
    lab2 = labeling(sorted(merged), Domain.POSITIVE)
    if not neighbors:
        # b never participates in a sum, so it is simply one more isolate
        achieved = label_range(lab2)
        if not is_valid_labeling(lab2, g, exact_isolates=len(t) + 1):
            raise ConstructionError(
                "construction output failed re-induction check"
            )
        if achieved > 4 * r - 1:
            raise ConstructionError(
                "construction exceeded its claimed range bound"
            )
        return ConstructionReport(
            lab2, graph(g.n + 1, g.edges), 4 * r - 1, achieved, True
        )
    target = graph(
        g.n + 1, set(g.edges) | {(u, g.n) for u in neighbors}
    )
    # the new odd edge labels are isolated too: nothing sums onto them
    return _report(lab2, target, 4 * r - 1, len(t) + len(neighbors))


def join_graph(g1: SimpleGraph, g2: SimpleGraph) -> SimpleGraph:
    """Disjoint union plus every edge between the two sides."""
    edges = set(g1.edges) | {(u + g1.n, v + g1.n) for u, v in g2.edges}
    edges |= {(u, v + g1.n) for u in range(g1.n) for v in range(g2.n)}
    return graph(g1.n + g2.n, edges)


def join(
    lab1: Labeling, g1: SimpleGraph, lab2: Labeling, g2: SimpleGraph
) -> ConstructionReport:
    """Join labeling: two translated blocks plus a full interval of cross sums."""
    _require_positive_valid(lab1, g1)
    _require_positive_valid(lab2, g2)
    if label_range(lab1) > label_range(lab2):
        lab1, g1, lab2, g2 = lab2, g2, lab1, g1
    r1, r2 = label_range(lab1), label_range(lab2)
    s1, t1 = _split_sets(lab1)
    s2, t2 = _split_sets(lab2)
    x1 = r1 + r2 - lab1.labels[0]
    x2 = 6 * r1 + 4 * r2 - 2 - lab2.labels[0]
    cross = range(7 * r1 + 5 * r2 - 2, 8 * r1 + 6 * r2 - 3)
    merged = sorted(
        {v + x1 for v in s1}
        | {v + 2 * x1 for v in t1}
        | {v + x2 for v in s2}
        | {v + 2 * x2 for v in t2}
        | set(cross)
    )
    lab = labeling(merged, Domain.POSITIVE)
    target = join_graph(g1, g2)
    isolates = len(t1) + len(t2) + len(cross)
    return _report(lab, target, 11 * r1 + 8 * r2 - 5, isolates)


MODIFY_OPERATIONS = (
    "delete-vertex",
    "induced-subgraph",
    "delete-edge",
    "contract-edge",
    "add-edge",
)


def _separated(lab: Labeling, g: SimpleGraph):
    """Minimal translation making vertex and sum labels disjoint blocks."""
    r = label_range(lab)
    x = r - 1 - lab.labels[0]
    s, t = _split_sets(lab)
    label_of_vertex = _vertex_label_map(lab, g)
    shifted_vertex = {v: label_of_vertex[v] + x for v in range(g.n)}
    sums = {v + 2 * x for v in t}
    return shifted_vertex, sums


def _doubled(lab: Labeling, g: SimpleGraph):
    """Translate by r-mu and double; returns per-vertex labels, sums, odd b."""
    r = label_range(lab)
    x = r - lab.labels[0]
    s, t = _split_sets(lab)
    label_of_vertex = _vertex_label_map(lab, g)
    doubled_vertex = {v: 2 * (label_of_vertex[v] + x) for v in range(g.n)}
    sums = {2 * (v + 2 * x) for v in t}
    return doubled_vertex, sums, 2 * r + 1


def _checked_target(n: int, edges) -> SimpleGraph:
    target = graph(n, edges)
    if target.n < 2 or target.isolated_vertices():
        raise ValueError("modified graph would contain isolated vertices")
    return target


def modify(
    lab: Labeling,
    g: SimpleGraph,
    operation: str,
    *,
    vertex: int | None = None,
    vertices=None,
    edge: tuple[int, int] | None = None,
) -> ConstructionReport:
    """Derive a labeling for g after a small edit; see MODIFY_OPERATIONS."""
    if operation not in MODIFY_OPERATIONS:
        raise ValueError(f"unknown modify operation {operation!r}")
    _require_positive_valid(lab, g)
    r = label_range(lab)
    adjacency = g.adjacency()

    if operation in ("delete-vertex", "induced-subgraph"):
        if operation == "delete-vertex":
            if vertex is None or not 0 <= vertex < g.n:
                raise ValueError("delete-vertex needs an existing vertex id")
            keep = [v for v in range(g.n) if v != vertex]
        else:
            if not vertices:
                raise ValueError("induced-subgraph needs a vertex list")
            keep = sorted(set(vertices))
            if any(not 0 <= v < g.n for v in keep):
                raise ValueError("subgraph vertices must exist in the graph")
        remap = {v: i for i, v in enumerate(keep)}
        kept_edges = [
            (remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap
        ]
        target = _checked_target(len(keep), kept_edges)
        shifted_vertex, sums = _separated(lab, g)
        merged = sorted({shifted_vertex[v] for v in keep} | sums)
        lab2 = labeling(merged, Domain.POSITIVE)
        return _report(lab2, target, 2 * r - 2, None)

    if edge is None or len(edge) != 2:
        raise ValueError(f"{operation} needs an edge as two vertex ids")
    u, v = sorted(edge)
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise ValueError("edge endpoints must be two distinct vertices")
    present = (u, v) in g.edges
    if operation == "add-edge":
        if present:
            raise ValueError("edge to add is already present")
        new_neighbors = set(adjacency[u]) | {v}
        removed = (u,)
        base_edges = set(g.edges)
    elif operation == "delete-edge":
        if not present:
            raise ValueError("edge to modify does not exist")
        new_neighbors = set(adjacency[u]) - {v}
        removed = (u,)
        base_edges = set(g.edges) - {(u, v)}
    else:  # contract-edge
        if not present:
            raise ValueError("edge to modify does not exist")
        new_neighbors = (set(adjacency[u]) | set(adjacency[v])) - {u, v}
        removed = (u, v)
        base_edges = set(g.edges)

    # vertex u (and v when contracting) is replaced by a fresh vertex whose
    # neighborhood is new_neighbors, realized by one odd label
    rest = [w for w in range(g.n) if w not in removed]
    remap = {w: i for i, w in enumerate(rest)}
    new_id = len(rest)
    target_edges = {
        (remap[a], remap[b])
        for a, b in base_edges
        if a in remap and b in remap
    } | {(remap[w], new_id) for w in new_neighbors}
    target = _checked_target(len(rest) + 1, target_edges)

    doubled_vertex, sums, b = _doubled(lab, g)
    merged = sorted(
        {doubled_vertex[w] for w in rest}
        | sums
        | {b}
        | {b + doubled_vertex[w] for w in new_neighbors}
    )
    lab2 = labeling(merged, Domain.POSITIVE)
    return _report(lab2, target, 4 * r - 1, None)
