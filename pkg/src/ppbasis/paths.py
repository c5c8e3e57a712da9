"""Two-level path models for unital inclusions of multi-matrix algebras.

A diagram has a single top vertex, a middle layer of blocks with dimensions
m_i, and a bottom layer determined by a nonnegative integer inclusion matrix;
m_i parallel edges join the top vertex to middle block i and inclusion[i, j]
edges join middle block i to bottom block j.  Paths from the top to the
bottom index the matrix units of the bottom algebra; summing over extensions
of shorter paths realizes the middle algebra inside it.  The conditional
expectation onto the middle algebra acts on matrix units by a closed-form
coefficient, and suitably normalized sums of units over middle paths give
path-indexed orthogonal systems and scalar two-sided bases.
"""

from collections import namedtuple

import numpy as np

from .algebra import MultiMatrixAlgebra, Subalgebra
from .basic import markov_trace
from .errors import InvalidInput, InvalidPathPair, NonUnitalInclusion, TraceMismatch

Edge0 = namedtuple("Edge0", "block slot")
Edge01 = namedtuple("Edge01", "source target slot")
Path = namedtuple("Path", "head tail")


class BratteliDiagram:
    """Two-level diagram: middle dims plus an inclusion matrix to the bottom."""

    def __init__(self, middle_dims, inclusion):
        m = tuple(int(x) for x in middle_dims)
        if not m or any(x < 1 for x in m):
            raise InvalidInput("middle dims must be positive integers")
        lam = np.asarray(inclusion)
        if lam.ndim != 2 or lam.shape[0] != len(m):
            raise InvalidInput("inclusion matrix must have one row per middle block")
        if np.any(lam < 0) or not np.allclose(lam, np.round(lam)):
            raise InvalidInput("inclusion matrix must have nonnegative integer entries")
        lam = np.round(lam).astype(int)
        if np.any(lam.sum(axis=1) == 0):
            raise NonUnitalInclusion("a middle block has no outgoing edges")
        if np.any(lam.sum(axis=0) == 0):
            raise NonUnitalInclusion("a bottom block receives no edges")
        self.middle_dims = m
        self.inclusion = lam
        self.bottom_dims = tuple(int(x) for x in (lam.T @ np.asarray(m)))
        self.edges0 = [Edge0(i, a) for i in range(len(m)) for a in range(m[i])]
        self.edges01 = [
            Edge01(i, j, c)
            for i in range(lam.shape[0])
            for j in range(lam.shape[1])
            for c in range(lam[i, j])
        ]
        # full paths enumerated lexicographically within each bottom block
        self.paths = []
        self.block_paths = [[] for _ in self.bottom_dims]
        self.pos = {}
        for j in range(lam.shape[1]):
            for i in range(lam.shape[0]):
                for a in range(m[i]):
                    for c in range(lam[i, j]):
                        p = Path(Edge0(i, a), Edge01(i, j, c))
                        self.pos[p] = (j, len(self.block_paths[j]))
                        self.block_paths[j].append(p)
                        self.paths.append(p)
        for j, n in enumerate(self.bottom_dims):
            assert len(self.block_paths[j]) == n

    def markov(self):
        return markov_trace(self.inclusion, self.middle_dims)


class PathModel:
    """Concrete path-algebra realization of a two-level diagram.

    ``bottom_trace`` may be a vector or the string "markov".  The middle
    trace is the restriction through the inclusion matrix unless supplied
    explicitly, in which case it is validated against it.
    """

    def __init__(self, diagram, bottom_trace="markov", middle_trace=None):
        self.diagram = diagram
        if isinstance(bottom_trace, str):
            if bottom_trace != "markov":
                raise InvalidInput("bottom_trace must be a vector or 'markov'")
            bottom_trace = diagram.markov().trace_amb
        t1 = np.asarray(bottom_trace, dtype=float)
        self.bottom = MultiMatrixAlgebra(diagram.bottom_dims, t1)
        t0 = diagram.inclusion @ t1
        if middle_trace is not None:
            supplied = np.asarray(middle_trace, dtype=float)
            if supplied.shape != t0.shape or np.max(np.abs(supplied - t0)) > 1e-10:
                raise TraceMismatch("middle trace is not the restriction of the bottom trace")
        self.t1 = t1
        self.t0 = t0
        self.middle_skeleton = MultiMatrixAlgebra(diagram.middle_dims, t0)
        self._middle_sub = None

    def unit(self, lam, mu):
        """Matrix unit of the bottom algebra indexed by two full paths."""
        if lam not in self.diagram.pos or mu not in self.diagram.pos:
            raise InvalidInput("unknown path")
        (j1, p) = self.diagram.pos[lam]
        (j2, q) = self.diagram.pos[mu]
        if j1 != j2:
            raise InvalidPathPair("paths end at different bottom blocks (%d vs %d)" % (j1, j2))
        return self.bottom.unit(j1, p, q)

    def middle_unit(self, th, tp):
        """Embedded matrix unit of the middle algebra: sum over common extensions."""
        if th.block != tp.block:
            raise InvalidPathPair("middle paths end at different middle blocks")
        acc = self.bottom.zero()
        for kappa in self.diagram.edges01:
            if kappa.source == th.block:
                acc = acc + self.unit(Path(th, kappa), Path(tp, kappa))
        return acc

    def middle_subalgebra(self):
        if self._middle_sub is None:
            units = [
                self.middle_unit(th, tp)
                for th in self.diagram.edges0
                for tp in self.diagram.edges0
                if th.block == tp.block
            ]
            self._middle_sub = Subalgebra.span(self.bottom, units, check=False)
        return self._middle_sub

    def expect_unit(self, lam, mu):
        """Closed-form conditional expectation of a matrix unit onto the middle.

        Zero unless the two paths share their bottom edge; otherwise the
        middle unit of the truncated paths scaled by t1[target]/t0[source].
        """
        (j1, _) = self.diagram.pos[lam]
        (j2, _) = self.diagram.pos[mu]
        if j1 != j2:
            raise InvalidPathPair("paths end at different bottom blocks")
        if lam.tail != mu.tail:
            return self.bottom.zero()
        coeff = self.t1[lam.tail.target] / self.t0[lam.head.block]
        return coeff * self.middle_unit(lam.head, mu.head)

    def j_projection(self, block):
        """Averaged middle projection (1/m_p) sum of all middle units at p."""
        m = self.diagram.middle_dims[block]
        acc = self.bottom.zero()
        for th in self.diagram.edges0:
            if th.block != block:
                continue
            for tp in self.diagram.edges0:
                if tp.block == block:
                    acc = acc + self.middle_unit(th, tp)
        return acc / m

    def orthogonal_system(self):
        """Path-indexed orthogonal system over the middle algebra.

        One element per pair (kappa, beta) of a middle-to-bottom edge and a
        full path with the same bottom block: the normalized sum over top
        extensions of kappa.  Returns (labels, elements).
        """
        labels = []
        elements = []
        for kappa in self.diagram.edges01:
            for beta in self.diagram.block_paths[kappa.target]:
                acc = self.bottom.zero()
                for th in self.diagram.edges0:
                    if th.block == kappa.source:
                        acc = acc + self.unit(Path(th, kappa), beta)
                c = self.diagram.middle_dims[kappa.source] * self.t1[kappa.target] / self.t0[kappa.source]
                labels.append((kappa, beta))
                elements.append((c ** -0.5) * acc)
        return labels, elements


def scalar_basis(alg):
    """Two-sided basis of an algebra over the scalars: units scaled by t^(-1/2).

    Size is the sum of squared block dims; ordered by (block, row, column).
    """
    out = []
    for j, n in enumerate(alg.dims):
        s = 1.0 / np.sqrt(alg.trace_vector[j])
        for p in range(n):
            for q in range(n):
                out.append(s * alg.unit(j, p, q))
    return out
