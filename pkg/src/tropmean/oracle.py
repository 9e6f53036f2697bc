"""Exhaustive ground truth for small Fréchet mean instances.

One piece per sample is chosen out of the n(n-1) ordered coordinate pairs;
the sum of the chosen squared pieces is minimized over the region where
every chosen piece attains its sample's maximum.  On that region the
restricted sum equals the true objective, and the regions cover the torus,
so the least of the restricted minima is the exact global minimum.

The walk over assignments is depth first.  A region prefix is a system of
difference constraints x_i - x_k >= c, so feasibility and a feasible point
come from a Bellman-Ford pass rather than an LP, and a branch dies as soon
as its prefix is infeasible or the unconstrained lower bound of its partial
sum exceeds the best value seen.  Most surviving leaves are settled by the
normal equations alone (when the free minimizer already lies inside the
region); only the rest run an exact active-set program.

The module is deliberately independent of the refinement pipeline in
``frechet``: it shares only the exact linear-algebra and QP kernels, so the
tests can confront the two routes on equal terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import SampleSet, TorusPoint, canonicalize
from .errors import BudgetExceeded
from .linalg import dot, solve_affine
from .qp import minimize_qp

Assignment = tuple[tuple[int, int], ...]

# Cap on the optimal-assignment list; desk-scale instances stay far below
# it, degenerate handcrafted ones will not starve memory.
MAX_ASSIGNMENTS = 10_000


@dataclass
class _Cell:
    order: int
    assignment: Assignment
    value: Fraction | None  # exact region minimum, if already known
    bound: Fraction  # unconstrained lower bound on the region minimum
    point: list[Fraction] | None  # minimizer in gauge coordinates, if known
    start: list[Fraction]  # feasible gauge point for the deferred program
    rows: list[list[Fraction]]
    rhs: list[Fraction]


def brute_force_frechet(
    sample: SampleSet, budget: int = 10**6
) -> tuple[Fraction, TorusPoint, list[Assignment]]:
    """Exact minimum, one witness minimizer, and all optimal assignments.

    Raises BudgetExceeded when (n(n-1))^m exceeds ``budget``, before any
    work is done.  The witness comes from the first region (in depth-first
    lexicographic order) that attains the minimum; assignments are ordered
    (i, k) pairs, one per sample, where the pair means coordinate i
    realizes the max and k the min of x - p_j.
    """
    n = sample.n
    m = sample.m
    count = (n * (n - 1)) ** m
    if count > budget:
        raise BudgetExceeded(f"{count} assignments exceed budget {budget}")

    pairs = [(i, k) for i in range(n) for k in range(n) if i != k]
    nv = n - 1
    zero = Fraction(0)

    def gauge_row(i: int, k: int) -> list[Fraction]:
        row = [zero] * nv
        if i > 0:
            row[i - 1] += 1
        if k > 0:
            row[k - 1] -= 1
        return row

    # Difference-constraint increments per (sample, pair): choosing (i, k)
    # for sample j forces x_i - x_a >= p_i - p_a and x_a - x_k >= p_a - p_k.
    increments: list[dict[tuple[int, int], list[tuple[int, int, Fraction]]]] = []
    for j in range(m):
        p = sample[j]
        per_pair: dict[tuple[int, int], list[tuple[int, int, Fraction]]] = {}
        for i, k in pairs:
            cons = []
            for a in range(n):
                if a != i:
                    cons.append((i, a, p[i] - p[a]))
                if a != k:
                    cons.append((a, k, p[a] - p[k]))
            per_pair[(i, k)] = cons
        increments.append(per_pair)

    # Accumulated region: bound[i][k] is the current lower bound on
    # x_i - x_k, or None while unconstrained.
    region: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    # Normal-equation data of the unconstrained partial sum: A x = b in
    # gauge coordinates, plus the constant term.
    a_mat = [[zero] * nv for _ in range(nv)]
    b_vec = [zero] * nv
    c0 = zero

    cells: list[_Cell] = []
    ub: Fraction | None = None  # best objective value seen anywhere
    chosen: list[tuple[int, int]] = []

    def lower_bound() -> tuple[Fraction, list[Fraction]]:
        sol = solve_affine([row[:] for row in a_mat], list(b_vec))
        assert sol is not None  # normal equations are always consistent
        x = list(sol.particular)
        return c0 - dot(b_vec, x), x

    def objective_at(x: list[Fraction]) -> Fraction:
        full = [zero] + x
        total = zero
        for p in sample:
            diffs = [full[a] - p[a] for a in range(n)]
            spread = max(diffs) - min(diffs)
            total += spread * spread
        return total

    def in_region(x: list[Fraction]) -> bool:
        full = [zero] + x
        for i in range(n):
            row = region[i]
            for k in range(n):
                c = row[k]
                if c is not None and full[i] - full[k] < c:
                    return False
        return True

    def descend(j: int) -> None:
        nonlocal ub, c0
        if j == m:
            bound, free_min = lower_bound()
            if ub is not None and bound > ub:
                return
            feas = _difference_point(region, n)
            if feas is None:
                return
            gauge_feas = [feas[t] - feas[0] for t in range(1, n)]
            if in_region(free_min):
                value: Fraction | None = bound
                point: list[Fraction] | None = free_min
                if ub is None or bound < ub:
                    ub = bound
            else:
                value = None
                point = None
                seen = objective_at(gauge_feas)
                if ub is None or seen < ub:
                    ub = seen
            rows: list[list[Fraction]] = []
            rhs: list[Fraction] = []
            if value is None:
                for i in range(n):
                    for k in range(n):
                        c = region[i][k]
                        if c is not None:
                            rows.append(gauge_row(i, k))
                            rhs.append(c)
            cells.append(
                _Cell(
                    order=len(cells),
                    assignment=tuple(chosen),
                    value=value,
                    bound=bound,
                    point=point,
                    start=gauge_feas,
                    rows=rows,
                    rhs=rhs,
                )
            )
            return
        for i, k in pairs:
            saved: list[tuple[int, int, Fraction | None]] = []
            for a, b, c in increments[j][(i, k)]:
                old = region[a][b]
                if old is None or c > old:
                    saved.append((a, b, old))
                    region[a][b] = c
            p = sample[j]
            r = gauge_row(i, k)
            c = p[i] - p[k]
            for s in range(nv):
                if r[s]:
                    b_vec[s] += c * r[s]
                    for t in range(nv):
                        if r[t]:
                            a_mat[s][t] += r[s] * r[t]
            c0 += c * c

            bound, _ = lower_bound()
            if (ub is None or bound <= ub) and _difference_point(region, n) is not None:
                chosen.append((i, k))
                descend(j + 1)
                chosen.pop()

            for s in range(nv):
                if r[s]:
                    b_vec[s] -= c * r[s]
                    for t in range(nv):
                        if r[t]:
                            a_mat[s][t] -= r[s] * r[t]
            c0 -= c * c
            for a, b, old in saved:
                region[a][b] = old

    descend(0)
    assert cells, "the regions cover the torus, one must be feasible"

    # Settle deferred cells cheapest bound first; once the bound passes the
    # best value no remaining cell can matter.
    best = min((c.value for c in cells if c.value is not None), default=None)
    for cell in sorted(
        (c for c in cells if c.value is None), key=lambda c: (c.bound, c.order)
    ):
        if best is not None and cell.bound > best:
            break
        h = [[2 * a for a in row] for row in _gram(cell.assignment, nv)]
        g = [-2 * v for v in _moment(cell.assignment, sample, nv)]
        qval, z, _ = minimize_qp(h, g, cell.rows, cell.rhs, cell.start)
        cell.value = qval + _const(cell.assignment, sample)
        cell.point = z
        if best is None or cell.value < best:
            best = cell.value

    assert best is not None
    winners = [c for c in cells if c.value == best]
    winners.sort(key=lambda c: c.order)
    witness = winners[0].point
    assert witness is not None
    mean = canonicalize([zero] + witness)
    optimal = [c.assignment for c in winners[:MAX_ASSIGNMENTS]]
    return best, mean, optimal


def _difference_point(
    region: list[list[Fraction | None]], n: int
) -> list[Fraction] | None:
    """A vector with x_i - x_k >= region[i][k] everywhere, or None.

    Bellman-Ford on the constraint graph: an entry c at (i, k) is the edge
    x_k <= x_i - c.  All potentials start at zero, which plays the role of
    a virtual source connected to every node.
    """
    dist = [Fraction(0)] * n
    for sweep in range(n + 1):
        changed = False
        for i in range(n):
            row = region[i]
            di = dist[i]
            for k in range(n):
                c = row[k]
                if c is not None and dist[k] > di - c:
                    dist[k] = di - c
                    changed = True
        if not changed:
            return dist
    return None


def _gram(assignment: Assignment, nv: int) -> list[list[Fraction]]:
    zero = Fraction(0)
    a = [[zero] * nv for _ in range(nv)]
    for i, k in assignment:
        r = _row(i, k, nv)
        for s in range(nv):
            if r[s]:
                for t in range(nv):
                    if r[t]:
                        a[s][t] += r[s] * r[t]
    return a


def _moment(assignment: Assignment, sample: SampleSet, nv: int) -> list[Fraction]:
    zero = Fraction(0)
    b = [zero] * nv
    for j, (i, k) in enumerate(assignment):
        r = _row(i, k, nv)
        c = sample[j][i] - sample[j][k]
        for s in range(nv):
            if r[s]:
                b[s] += c * r[s]
    return b


def _const(assignment: Assignment, sample: SampleSet) -> Fraction:
    total = Fraction(0)
    for j, (i, k) in enumerate(assignment):
        c = sample[j][i] - sample[j][k]
        total += c * c
    return total


def _row(i: int, k: int, nv: int) -> list[Fraction]:
    row = [Fraction(0)] * nv
    if i > 0:
        row[i - 1] += 1
    if k > 0:
        row[k - 1] -= 1
    return row
