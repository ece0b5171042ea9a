"""Reflection operators attached to tessellations and their ordered product.

Each tessellation induces a local operator ``2 * sum_P |P><P| - I``
over its polygon states.  Application is polygon-local and never
materializes a matrix: for a polygon with state amplitudes ``c`` the
update is ``a <- 2*m*c - a`` with ``m = sum(conj(c) * a)``, and any
vertex not covered by a polygon state is simply negated (this is what
makes partial tessellations, used for search, fall out of the same code
path).  Dense matrices exist only as an oracle for spectral checks, via
an independent outer-product construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NumericalDriftError
from .graphs import Graph, TessellationCover
from .states import PolygonState, polygon_state

DENSE_CAP = 4096
DRIFT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """Reflection through the span of one tessellation's polygon states.

    Hermitian and involutive by construction.  Polygon supports must be
    pairwise disjoint; they need not cover every vertex (a vertex in no
    polygon is negated).
    """

    dim: int
    polygon_states: tuple

    def __post_init__(self):
        seen = set()
        for ps in self.polygon_states:
            for v in ps.vertices:
                if not (0 <= v < self.dim):
                    raise ValueError(f"vertex {v} out of range for dim={self.dim}")
                if v in seen:
                    raise ValueError(
                        f"vertex {v} appears in two polygons of one tessellation")
                seen.add(v)

    @cached_property
    def _plan(self):
        # Flattened gather/scatter arrays for vectorized application.
        if not self.polygon_states:
            return (np.empty(0, dtype=np.intp), np.empty(0, dtype=complex),
                    np.empty(0, dtype=np.intp), np.empty(0, dtype=np.intp))
        idx = np.concatenate(
            [np.asarray(ps.vertices, dtype=np.intp) for ps in self.polygon_states])
        amps = np.concatenate([ps.amplitudes for ps in self.polygon_states])
        sizes = np.array([len(ps.vertices) for ps in self.polygon_states])
        starts = np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(np.intp)
        seg = np.repeat(np.arange(len(sizes)), sizes)
        return idx, amps, starts, seg

    def apply(self, psi: np.ndarray) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex)
        if len(psi) != self.dim:
            raise ValueError(
                f"state has {len(psi)} amplitudes, operator expects {self.dim}")
        idx, amps, starts, seg = self._plan
        out = -psi
        if len(idx):
            m = np.add.reduceat(np.conjugate(amps) * psi[idx], starts)
            out[idx] = 2.0 * m[seg] * amps - psi[idx]
        return out


@dataclass(frozen=True, eq=False)
class Walk:
    """A graph, its tessellation cover, and one polygon state per polygon.

    ``states[j][i]`` belongs to polygon ``i`` of tessellation ``j``.
    One step applies the local operators in list order, first entry
    first.
    """

    graph: Graph
    cover: TessellationCover
    states: tuple

    def __post_init__(self):
        if len(self.states) != len(self.cover.tessellations):
            raise ValueError("one state row per tessellation required")
        for tess, row in zip(self.cover.tessellations, self.states):
            if len(row) != len(tess.polygons):
                raise ValueError("one polygon state per polygon required")
            for poly, ps in zip(tess.polygons, row):
                if ps.vertices != poly:
                    raise ValueError(
                        f"polygon state on {ps.vertices} does not match "
                        f"polygon {poly}")

    @property
    def dim(self) -> int:
        return self.graph.n

    @cached_property
    def operators(self) -> tuple:
        return tuple(LocalOperator(self.graph.n, row) for row in self.states)

    def step(self, psi: np.ndarray) -> np.ndarray:
        return apply_once(self.operators, psi)

    def evolve(self, psi: np.ndarray, t: int) -> np.ndarray:
        return apply_evolution(self, psi, t)


def uniform_walk(graph: Graph, cover: TessellationCover) -> Walk:
    """Walk with the uniform unit state on every polygon."""
    states = tuple(
        tuple(
            polygon_state(poly, np.full(len(poly), 1.0 / np.sqrt(len(poly))))
            for poly in tess.polygons)
        for tess in cover.tessellations)
    return Walk(graph, cover, states)


def walk_from_amplitudes(graph: Graph, cover: TessellationCover,
                         amplitudes) -> Walk:
    """Walk with explicit per-polygon amplitude lists.

    ``amplitudes[j][i]`` is the amplitude sequence for polygon ``i`` of
    tessellation ``j``; a ``None`` entry (or a ``None`` row) falls back
    to the uniform polygon state.
    """
    rows = []
    for t_idx, tess in enumerate(cover.tessellations):
        given = amplitudes[t_idx] if amplitudes is not None else None
        row = []
        for p_idx, poly in enumerate(tess.polygons):
            amps = given[p_idx] if given is not None else None
            if amps is None:
                amps = np.full(len(poly), 1.0 / np.sqrt(len(poly)))
            row.append(polygon_state(poly, amps))
        rows.append(tuple(row))
    return Walk(graph, cover, tuple(rows))


def apply_local(op: LocalOperator, psi: np.ndarray) -> np.ndarray:
    """Apply one tessellation's reflection; norm-preserving."""
    return op.apply(psi)


def apply_once(operators, psi: np.ndarray) -> np.ndarray:
    for op in operators:
        psi = op.apply(psi)
    return psi


def apply_evolution(walk, psi: np.ndarray, t: int,
                    drift_tol: float = DRIFT_TOL) -> np.ndarray:
    """Apply ``t`` full steps of the walk's evolution operator.

    ``walk`` is anything with an ``operators`` tuple (a :class:`Walk`
    or a search walk).  ``t = 0`` returns the input unchanged.  If the
    norm drifts from its initial value by more than ``drift_tol`` the
    run aborts with :class:`NumericalDriftError` instead of silently
    renormalizing.
    """
    if t < 0:
        raise ValueError("step count must be non-negative")
    psi = np.asarray(psi, dtype=complex)
    norm0 = np.linalg.norm(psi)
    scale = max(1.0, norm0)
    for _ in range(t):
        psi = apply_once(walk.operators, psi)
        drift = abs(np.linalg.norm(psi) - norm0) / scale
        if drift > drift_tol:
            raise NumericalDriftError(
                f"norm drifted by {drift:.3e} during evolution", drift)
    return psi


def _dense_local(op: LocalOperator) -> np.ndarray:
    mat = -np.eye(op.dim, dtype=complex)
    for ps in op.polygon_states:
        idx = list(ps.vertices)
        mat[np.ix_(idx, idx)] += 2.0 * np.outer(ps.amplitudes,
                                                np.conjugate(ps.amplitudes))
    return mat


def to_dense(op, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense matrix of a local operator or of a whole walk.

    Built from outer products (not by repeated application), so it
    serves as an independent oracle for the fast path.  Refuses
    dimensions above ``cap``.
    """
    if op.dim > cap:
        raise ValueError(f"dimension {op.dim} exceeds the dense cap {cap}")
    if isinstance(op, LocalOperator):
        return _dense_local(op)
    mat = np.eye(op.dim, dtype=complex)
    for local in op.operators:
        mat = _dense_local(local) @ mat
    return mat
