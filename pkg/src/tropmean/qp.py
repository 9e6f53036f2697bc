"""Exact primal active-set solver for small convex quadratic programs.

Minimizes q(z) = 1/2 z^T H z + g^T z subject to C z >= d, where H is
positive semidefinite and everything is a Fraction.  The method is the
classical one: keep a working set W of constraints treated as equalities,
minimize q on the corresponding affine subspace, either step to the nearest
blocking constraint or, once stationary, inspect the multipliers.  Blocking
rows are always independent of the working set, so multipliers stay unique.

Exact arithmetic removes every tolerance question; the iteration cap is a
safety net and is never reached on the problem sizes this package solves.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import dot, mat_vec, nullspace, solve_affine

Vector = list[Fraction]
Matrix = list[Vector]


class QPError(RuntimeError):
    pass


def minimize_qp(
    h: Matrix,
    g: Vector,
    c_rows: list[Vector],
    d: Vector,
    z0: Vector,
    max_iter: int = 10000,
) -> tuple[Fraction, Vector, list[int]]:
    """Solve min 1/2 z^T H z + g^T z  s.t.  C z >= d.

    z0 must be feasible.  Returns (optimal value, optimizer, active rows).
    H is a full symmetric positive semidefinite matrix.
    """
    nvars = len(z0)
    z = list(z0)
    for row, rhs in zip(c_rows, d):
        if dot(row, z) < rhs:
            raise QPError("infeasible starting point")
    work: list[int] = [i for i, (row, rhs) in enumerate(zip(c_rows, d)) if dot(row, z) == rhs]
    # Keep the initial working set independent: greedily drop dependent rows.
    work = _independent_subset([c_rows[i] for i in work], work, nvars)

    for _ in range(max_iter):
        grad = [hz + gi for hz, gi in zip(mat_vec(h, z), g)]
        basis = nullspace([c_rows[i] for i in work], nvars)
        step = _subspace_step(h, grad, basis)
        if all(v == 0 for v in step):
            lam = _multipliers(c_rows, work, grad, nvars)
            neg = [i for i, v in zip(work, lam) if v < 0]
            if not neg:
                value = Fraction(1, 2) * dot(mat_vec(h, z), z) + dot(g, z)
                return value, z, sorted(work)
            work.remove(min(neg))
            continue
        alpha = Fraction(1)
        blocker = None
        for i in range(len(c_rows)):
            if i in work:
                continue
            s = dot(c_rows[i], step)
            if s < 0:
                slack = dot(c_rows[i], z) - d[i]
                limit = slack / (-s)
                if limit < alpha:
                    alpha = limit
                    blocker = i
        if alpha > 0:
            z = [zi + alpha * pi for zi, pi in zip(z, step)]
        if blocker is not None:
            work.append(blocker)
    raise QPError("active-set iteration cap exceeded")


def _subspace_step(h: Matrix, grad: Vector, basis: list[tuple[Fraction, ...]]) -> Vector:
    """Minimize the quadratic along z + span(basis); returns the step."""
    nvars = len(grad)
    if not basis:
        return [Fraction(0)] * nvars
    k = len(basis)
    hb = [mat_vec(h, list(v)) for v in basis]
    red = [[dot(list(basis[a]), hb[b]) for b in range(k)] for a in range(k)]
    rhs = [-dot(list(v), grad) for v in basis]
    sol = solve_affine(red, rhs)
    if sol is None:
        # Cannot happen for a quadratic bounded below on the subspace.
        raise QPError("unbounded equality subproblem")
    y = sol.particular
    return [
        sum((y[a] * basis[a][t] for a in range(k)), Fraction(0)) for t in range(nvars)
    ]


def _multipliers(
    c_rows: list[Vector], work: list[int], grad: Vector, nvars: int
) -> list[Fraction]:
    """Solve C_W^T lam = grad for the (unique) working-set multipliers."""
    if not work:
        return []
    cols = [c_rows[i] for i in work]
    at = [[cols[j][t] for j in range(len(work))] for t in range(nvars)]
    sol = solve_affine(at, grad)
    if sol is None:
        raise QPError("stationary point with inconsistent multiplier system")
    return list(sol.particular)


def _independent_subset(
    rows: list[Vector], labels: list[int], nvars: int
) -> list[int]:
    keep: list[int] = []
    kept_rows: list[Vector] = []
    for row, label in zip(rows, labels):
        trial = kept_rows + [row]
        if len(nullspace(trial, nvars)) == nvars - len(trial):
            kept_rows = trial
            keep.append(label)
    return keep
