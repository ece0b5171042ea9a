"""Complex amplitude vectors over vertices and over single polygons.

Walk states are plain dense ``numpy`` arrays of complex amplitudes
indexed by vertex id.  :class:`PolygonState` and :class:`CliqueState`
pair an amplitude array with the vertex ids it lives on; for both, the
ordering of the vertex tuple is significant because the amplitudes
align with it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ProportionalityError
from .graphs import Graph, VertexMap

NORM_TOL = 1e-9


def _as_complex(amplitudes) -> np.ndarray:
    arr = np.array(amplitudes, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PolygonState:
    """Unit amplitude vector supported on one polygon.

    ``amplitudes[i]`` belongs to ``vertices[i]``.
    """

    vertices: tuple
    amplitudes: np.ndarray

    def restriction(self, subset) -> np.ndarray:
        """Amplitudes at the given vertices, in the order passed in."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return np.array([self.amplitudes[index[v]] for v in subset], dtype=complex)


@dataclass(frozen=True, eq=False)
class CliqueState:
    """Unit vector over the vertices of one clique, order significant."""

    vertices: tuple
    amplitudes: np.ndarray

    def __len__(self) -> int:
        return len(self.vertices)


def polygon_state(vertices, amplitudes, tol: float = NORM_TOL) -> PolygonState:
    """Build a PolygonState, rejecting length mismatches and non-unit norms."""
    vertices = tuple(int(v) for v in vertices)
    amps = _as_complex(amplitudes)
    if len(amps) != len(vertices):
        raise ValueError(
            f"{len(amps)} amplitudes for a polygon of {len(vertices)} vertices")
    if len(set(vertices)) != len(vertices):
        raise ValueError(f"duplicate vertices in polygon {vertices}")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"polygon state norm {norm!r} deviates from 1")
    return PolygonState(vertices, amps)


def clique_state(vertices, amplitudes, tol: float = NORM_TOL) -> CliqueState:
    """Build a CliqueState, rejecting length mismatches and non-unit norms."""
    vertices = tuple(int(v) for v in vertices)
    amps = _as_complex(amplitudes)
    if len(amps) != len(vertices):
        raise ValueError(
            f"{len(amps)} amplitudes for a clique of {len(vertices)} vertices")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"clique state norm {norm!r} deviates from 1")
    return CliqueState(vertices, amps)


def uniform_clique_state(vertices) -> CliqueState:
    k = len(tuple(vertices))
    return clique_state(vertices, np.full(k, 1.0 / np.sqrt(k), dtype=complex))


def uniform_state(graph) -> np.ndarray:
    """Uniform superposition 1/sqrt(n) over all vertices (unit norm)."""
    n = graph.n if isinstance(graph, Graph) else int(graph)
    if n < 1:
        raise ValueError("need at least one vertex")
    return np.full(n, 1.0 / np.sqrt(n), dtype=complex)


def basis_state(n: int, v: int) -> np.ndarray:
    psi = np.zeros(n, dtype=complex)
    psi[v] = 1.0
    return psi


def clique_vector(cs: CliqueState, dim: int) -> np.ndarray:
    """Embed a clique state as a full state vector of the given dimension."""
    psi = np.zeros(dim, dtype=complex)
    psi[list(cs.vertices)] = cs.amplitudes
    return psi


def lift_state(psi: np.ndarray, u: int, cs: CliqueState,
               vmap: VertexMap) -> np.ndarray:
    """Transport a state across a vertex expansion.

    Amplitudes away from u are copied through the map; the amplitude at
    u is distributed over the clique with the weights of ``cs``.  The
    result has the same norm as the input.
    """
    psi = np.asarray(psi, dtype=complex)
    if len(psi) != vmap.n_source:
        raise ValueError(
            f"state has {len(psi)} amplitudes but the map expects {vmap.n_source}")
    if vmap.images[u] != cs.vertices:
        raise ValueError(
            f"clique state vertices {cs.vertices} do not match the "
            f"expansion image {vmap.images[u]} of vertex {u}")
    out = np.zeros(vmap.n_target, dtype=complex)
    for v in range(vmap.n_source):
        if v == u:
            out[list(cs.vertices)] = psi[u] * cs.amplitudes
        else:
            (w,) = vmap.images[v]
            out[w] = psi[v]
    return out


def project_state(psi_t: np.ndarray, cs: CliqueState, vmap: VertexMap,
                  tol: float = 1e-10) -> np.ndarray:
    """Transport a state back across a vertex expansion.

    Valid only when the restriction of ``psi_t`` to the clique is a
    scalar multiple of ``cs``; the scalar is recovered by projection,
    so zero amplitudes in ``cs`` need no special casing.  Raises
    :class:`ProportionalityError` (with the residual norm attached)
    when the clique block strays from the ``cs`` pattern by more than
    ``tol``.
    """
    psi_t = np.asarray(psi_t, dtype=complex)
    if len(psi_t) != vmap.n_target:
        raise ValueError(
            f"state has {len(psi_t)} amplitudes but the map produces "
            f"{vmap.n_target}")
    u = None
    for v in range(vmap.n_source):
        if vmap.images[v] == cs.vertices:
            u = v
            break
    if u is None:
        raise ValueError("clique state vertices do not appear in the map")

    block = psi_t[list(cs.vertices)]
    a_u = complex(np.vdot(cs.amplitudes, block))
    residual = float(np.linalg.norm(block - a_u * cs.amplitudes))
    if residual > tol:
        raise ProportionalityError(
            f"clique block deviates from the clique-state pattern "
            f"(residual {residual:.3e} > {tol:.1e})", residual)

    out = np.zeros(vmap.n_source, dtype=complex)
    for v in range(vmap.n_source):
        if v == u:
            out[v] = a_u
        else:
            (w,) = vmap.images[v]
            out[v] = psi_t[w]
    return out


def subset_probability(psi: np.ndarray, subset) -> float:
    """Probability of measuring any vertex in the subset."""
    idx = list(subset)
    if not idx:
        return 0.0
    block = np.asarray(psi)[idx]
    return float(np.sum(np.abs(block) ** 2))


def canonical_phase(amplitudes, tol: float = 1e-12) -> tuple:
    """Rotate the first nonzero amplitude onto the positive real axis.

    Returns ``(phase, rotated)`` with ``amplitudes == phase * rotated``.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    for a in amps:
        if abs(a) > tol:
            phase = a / abs(a)
            return complex(phase), amps * np.conjugate(phase)
    return 1.0 + 0.0j, amps.copy()
