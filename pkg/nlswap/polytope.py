# Copyright 2026 by the nlswap authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact polytope computations on box tables.

Ranks and linear feasibility are computed over the rationals with
sympy. The facet-subset vertex scan uses numpy only to screen
candidates; every vertex it reports has been verified exactly.
"""

import functools
import itertools
import logging

import numpy
import sympy
from sympy.solvers.simplex import (
    InfeasibleLPError,
    linprog,
    UnboundedLPError,
)

from .boxes import BipartiteBox, BITS, deterministic_boxes, index
from .exact import as_exact, Rational

logger = logging.getLogger(__name__)

# Vertex coordinates of the non-signalling polytope are 0, 1/2 or 1
_MAX_DENOMINATOR = 64


def _rational(value):
    value = as_exact(value)
    if not value.is_rational():
        raise TypeError(
            'exact feasibility is limited to rational data, got {}'.format(
                value
            )
        )

    return value.coefficients[0]


def _sympy_row(values):
    return [
        sympy.Rational(q.numerator, q.denominator)
        for q in (_rational(v) for v in values)
    ]


def rank(rows):
    """Return the exact rank of a list of rational vectors."""

    rows = list(rows)
    if not rows:
        return 0

    return sympy.Matrix([_sympy_row(row) for row in rows]).rank()


def _signed_rows(point, generators):
    # Row i reads sum_k w_k g_k[i] = point[i]; the last row is sum_k w_k = 1.
    # Rows are negated where needed so every right-hand side is >= 0.
    rows = [_sympy_row(g[i] for g in generators) for i in range(len(point))]
    rows.append([sympy.Integer(1)] * len(generators))
    rhs = _sympy_row(point) + [sympy.Integer(1)]

    for i, value in enumerate(rhs):
        if value < 0:
            rows[i] = [-c for c in rows[i]]
            rhs[i] = -value

    return rows, rhs


def _satisfies(weights, point, generators):
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return False

    return all(
        sum(w * g[i] for w, g in zip(weights, generators)) == point[i]
        for i in range(len(point))
    )


def convex_decomposition(point, generators):
    """Find convex weights expressing *point* through *generators*.

    Solves  sum_k w_k g_k = point,  sum_k w_k = 1,  w >= 0  exactly.
    The equalities are posed as  A w <= b  while maximizing the sum of
    the rows of  A w; the maximum reaches  sum(b)  iff every row is
    tight. The origin is then feasible, so the simplex never needs a
    first phase, and redundant rows do no harm.

    Args:
        point (sequence): Coordinates (ExactScalar or rational).
        generators (sequence): Sequences of the same length.

    Returns:
        list: Rational weights (one per generator), or None if the
        point is not in the convex hull.

    Raises:
        TypeError: Some coordinate is irrational.
    """

    generators = [list(g) for g in generators]
    point = list(point)
    n = len(generators)
    if not n:
        return None

    rows, rhs = _signed_rows(point, generators)
    objective = [-sum(row[k] for row in rows) for k in range(n)]

    try:
        value, solution = linprog(objective, A=rows, b=rhs)
    except (InfeasibleLPError, UnboundedLPError):
        return None

    if -value != sum(rhs):
        return None

    weights = [
        Rational(int(w.p), int(w.q)) for w in map(sympy.Rational, solution)
    ]

    exact_point = [_rational(p) for p in point]
    exact_generators = [[_rational(c) for c in g] for g in generators]
    if not _satisfies(weights, exact_point, exact_generators):
        logger.warning('discarding inexact LP weights %s', weights)
        return None

    return weights


def is_convex_combination(point, generators):
    return convex_decomposition(point, generators) is not None


def is_local(box):
    """Return True iff *box* is a mixture of deterministic boxes."""

    return is_convex_combination(
        box.table, [d.table for d in deterministic_boxes()]
    )


@functools.lru_cache(maxsize=None)
def ns_equalities():
    """Return (rows, rhs) of the normalization and no-signalling
    constraints on a 16-entry table."""

    rows = []
    rhs = []

    for x in BITS:
        for y in BITS:
            row = [0] * 16
            for a in BITS:
                for b in BITS:
                    row[index(a, b, x, y)] = 1
            rows.append(tuple(row))
            rhs.append(1)

    for a in BITS:
        for x in BITS:
            row = [0] * 16
            for b in BITS:
                row[index(a, b, x, 0)] += 1
                row[index(a, b, x, 1)] -= 1
            rows.append(tuple(row))
            rhs.append(0)

    for b in BITS:
        for y in BITS:
            row = [0] * 16
            for a in BITS:
                row[index(a, b, 0, y)] += 1
                row[index(a, b, 1, y)] -= 1
            rows.append(tuple(row))
            rhs.append(0)

    return tuple(rows), tuple(rhs)


def _unit(i):
    return tuple(1 if j == i else 0 for j in range(16))


def is_ns_vertex(box):
    """Return True iff *box* is a vertex of the non-signalling polytope.

    A feasible point is a vertex iff its tight positivity facets,
    together with the equality constraints, have full rank.
    """

    rows, __ = ns_equalities()
    tight = [_unit(i) for i, p in enumerate(box.table) if not p]
    return rank(list(rows) + tight) == 16


def _exact_ns_point(candidate, tight):
    rows, rhs = ns_equalities()

    for row, value in zip(rows, rhs):
        if sum(c * p for c, p in zip(row, candidate)) != value:
            return False

    if any(p < 0 for p in candidate):
        return False

    return all(candidate[i] == 0 for i in tight)


def ns_vertices_by_facets():
    """Enumerate non-signalling vertices from the positivity facets.

    Every choice of 8 of the 16 facets P(ab|xy) >= 0 is intersected
    with the 8-dimensional affine hull; full-rank intersections that
    land inside the polytope are vertices.

    Returns:
        list: The vertices as BipartiteBox instances, in sorted table
        order.
    """

    rows, rhs = ns_equalities()
    equalities = numpy.array(rows, dtype=float)
    identity = numpy.eye(16)
    target = numpy.concatenate([numpy.array(rhs, dtype=float), numpy.zeros(8)])

    found = set()
    subsets = 0
    full_rank = 0

    for tight in itertools.combinations(range(16), 8):
        subsets += 1
        system = numpy.vstack([equalities, identity[list(tight)]])
        if numpy.linalg.matrix_rank(system) < 16:
            continue

        full_rank += 1
        solution = numpy.linalg.lstsq(system, target, rcond=None)[0]
        candidate = tuple(
            Rational(float(v)).limit_denominator(_MAX_DENOMINATOR)
            for v in solution
        )

        if _exact_ns_point(candidate, tight):
            found.add(candidate)

    logger.debug(
        'facet scan: %d subsets, %d full rank, %d vertices',
        subsets,
        full_rank,
        len(found),
    )

    return [BipartiteBox(table) for table in sorted(found)]
