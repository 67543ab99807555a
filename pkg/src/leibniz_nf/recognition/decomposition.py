"""Splitting a nilradical into bracket-orthogonal null-filiform ideals."""

import logging
from collections.abc import Sequence

import networkx as nx

from leibniz_nf.analysis.series import is_null_filiform, product_space
from leibniz_nf.core.algebra import AlgebraTable, bracket, subalgebra_table
from leibniz_nf.core.exactlin import (
    Subspace,
    Vector,
    is_zero_vector,
    mat_inverse,
    matrix_from_rows,
    span,
    vector_times_matrix,
)
from leibniz_nf.errors import LeibnizError

logger = logging.getLogger(__name__)


def generator(A: AlgebraTable, B: Subspace) -> Vector:
    """First echelon vector of ``B`` outside ``[B, B]``.

    Raises:
        LeibnizError: If ``B`` equals its own square (never the case for a
            nonzero nilpotent subalgebra).
    """
    square = product_space(A, B, B)
    for v in B.vectors:
        if not square.contains(v):
            return v
    raise LeibnizError("subalgebra has no generator outside its square")


def chain(A: AlgebraTable, g: Vector, length: int) -> list[Vector]:
    """``g, [g, g], [[g, g], g], ...`` with ``length`` terms."""
    out = [g]
    while len(out) < length:
        out.append(bracket(A, out[-1], g))
    return out


def _generator_basis(A: AlgebraTable, N: Subspace) -> list[Vector] | None:
    square = product_space(A, N, N)
    chosen = square
    basis: list[Vector] = []
    for v in N.vectors:
        if chosen.contains(v):
            continue
        chosen = chosen + span([v], A.dim)
        term = v
        while not is_zero_vector(term) and len(basis) < N.dim + 1:
            basis.append(term)
            term = bracket(A, term, v)
    if span(basis, A.dim) != N or len(basis) != N.dim:
        return None
    return basis


def _components(A: AlgebraTable, N: Subspace, basis: Sequence[Vector]) -> list[Subspace]:
    # coordinates in ``basis`` = echelon coordinates times the inverse change
    change = matrix_from_rows([N.coordinates(b) for b in basis], N.dim)
    inverse = mat_inverse(change)

    def support(v: Vector) -> list[int]:
        coords = vector_times_matrix(N.coordinates(v), inverse)
        return [t for t, c in enumerate(coords) if c != 0]

    graph = nx.Graph()
    graph.add_nodes_from(range(len(basis)))
    for i, u in enumerate(basis):
        for j in range(i, len(basis)):
            w = basis[j]
            for product in (bracket(A, u, w), bracket(A, w, u)):
                if is_zero_vector(product):
                    continue
                graph.add_edge(i, j)
                for t in support(product):
                    graph.add_edge(i, t)
                    graph.add_edge(j, t)
    components = sorted((sorted(c) for c in nx.connected_components(graph)), key=min)
    return [span([basis[t] for t in c], A.dim) for c in components]


def decompose_nilradical(A: AlgebraTable, N: Subspace) -> list[Subspace] | None:
    """Finest split of ``N`` into bracket-orthogonal null-filiform ideals.

    Connected components of the product graph are tried first on the echelon
    basis of ``N`` and then on a basis of generator chains. Returns None when
    neither yields null-filiform components.
    """
    candidates = [list(N.vectors)]
    chains = _generator_basis(A, N)
    if chains is not None:
        candidates.append(chains)
    for basis in candidates:
        blocks = _components(A, N, basis)
        if all(is_null_filiform(subalgebra_table(A, B)) for B in blocks):
            logger.debug("Nilradical splits into blocks of dims %s", [B.dim for B in blocks])
            return blocks
    logger.debug("No null-filiform block decomposition found")
    return None
