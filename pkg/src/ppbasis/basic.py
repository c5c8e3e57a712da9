"""Basic construction for a unital inclusion with a fixed trace.

For N inside M acting on the GNS space of M, e1 is the orthogonal projection
onto the closure of N, and M1 is the commutant of the right action of N
(equivalently of J N J).  Everything is held concretely: e1 and members of
M1 are D x D matrices over the GNS coordinates, with an on-demand Wedderburn
decomposition of M1 when block structure is needed.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import MultiMatrixAlgebra, Subalgebra, wedderburn
from .errors import InvalidInput, NonConnected, NotSupportedOnE1


@dataclass
class MarkovData:
    """Perron data of an inclusion matrix: tr(sub) = Lambda tr(amb)."""

    beta: float
    trace_sub: np.ndarray
    trace_amb: np.ndarray


def markov_trace(inclusion, sub_dims):
    """Markov trace pair for an inclusion matrix and subalgebra dims.

    Solves Lambda^T Lambda t = beta t for the Perron eigenvalue beta and
    strictly positive eigenvector, normalized so the ambient trace is a
    state.  Raises NonConnected when the inclusion graph is disconnected
    (zero row/column, degenerate Perron eigenvalue, or a non-positive
    eigenvector).
    """
    lam = np.asarray(inclusion)
    if lam.ndim != 2 or np.any(lam < 0) or not np.allclose(lam, np.round(lam)):
        raise InvalidInput("inclusion matrix must be a nonnegative integer matrix")
    lam = np.round(lam).astype(int)
    if np.any(lam.sum(axis=1) == 0) or np.any(lam.sum(axis=0) == 0):
        raise NonConnected("inclusion matrix has a zero row or column")
    m = np.asarray(sub_dims, dtype=float)
    if m.shape != (lam.shape[0],) or np.any(m < 1):
        raise InvalidInput("sub_dims must list one positive dimension per row of the inclusion matrix")
    n = lam.T @ m
    s = (lam.T @ lam).astype(float)
    vals, vecs = np.linalg.eigh(s)
    beta = float(vals[-1])
    if s.shape[0] >= 2 and vals[-2] > beta * (1.0 - 1e-9):
        raise NonConnected("Perron eigenvalue is degenerate; inclusion graph is disconnected")
    v = vecs[:, -1]
    v = v * np.sign(v[np.argmax(np.abs(v))])
    if np.min(v) <= 1e-12 * np.max(v):
        raise NonConnected("Perron eigenvector is not strictly positive")
    t_amb = v / float(n @ v)
    t_sub = lam @ t_amb
    return MarkovData(beta=beta, trace_sub=t_sub, trace_amb=t_amb)


class BasicConstruction:
    """e1, M1 and the pushdown map for an inclusion N <= M."""

    def __init__(self, sub, seed=0):
        self.sub = sub
        self.amb = sub.ambient
        self.seed = seed
        d = self.amb.gns_dim
        self.e1 = sub.projection_matrix()
        # M1 = commutant of the right action of the subalgebra
        maps = []
        eye = np.eye(d)
        for b in sub.basis_elements():
            r = self.amb.right_op(b)
            maps.append(np.kron(eye, r.T) - np.kron(r, eye))
        ker = linalg.nullspace(np.vstack(maps))
        self.op_alg = MultiMatrixAlgebra((d,), (1.0 / d,))
        ops = [self.op_alg.element([ker[:, i].reshape(d, d)]) for i in range(ker.shape[1])]
        self.m1 = Subalgebra.span(self.op_alg, ops, check=False)
        self._m1_wedd = None
        self._identity_vec = self.amb.vec(self.amb.identity())

    @property
    def gns_dim(self):
        return self.amb.gns_dim

    def op_element(self, mat):
        return self.op_alg.element([np.asarray(mat, dtype=complex)])

    def left_op(self, x):
        return self.amb.left_op(x)

    def lift(self, x):
        """L_x e1, the generic element of M e1."""
        return self.amb.left_op(x) @ self.e1

    def e1_rank(self):
        return self.sub.dim

    def in_m1_residual(self, mat):
        el = self.op_element(mat)
        return self.m1.residual(el)

    @property
    def m1_wedd(self):
        if self._m1_wedd is None:
            self._m1_wedd = wedderburn(self.m1, seed=self.seed)
        return self._m1_wedd

    def m1_dims(self):
        return self.m1_wedd.block_dims

    def expect_via_e1(self, x):
        """E_N(x) read off the GNS action of e1."""
        return self.amb.unvec(self.e1 @ self.amb.vec(x))

    def pushdown(self, v, tol=linalg.EPS_REL):
        """The unique x in M with v = L_x e1, for v in M1 satisfying v e1 = v."""
        if hasattr(v, "blocks"):
            v = v.blocks[0]
        v = np.asarray(v, dtype=complex)
        scale = 1.0 + linalg.operator_norm(v)
        if linalg.operator_norm(v @ self.e1 - v) > tol * scale:
            raise NotSupportedOnE1("pushdown input must satisfy v e1 = v")
        if self.in_m1_residual(v) > tol * scale:
            raise InvalidInput("pushdown input must lie in M1")
        x = self.amb.unvec(v @ self._identity_vec)
        if linalg.operator_norm(self.lift(x) - v) > 10 * tol * scale:
            raise InvalidInput("pushdown reconstruction failed; input is not of the form L_x e1")
        return x

    def markov_extension(self, markov, sub_wedd=None):
        """Trace on M1 extending the ambient trace in Markov mode."""
        return M1Trace(self, markov, sub_wedd)


class M1Trace:
    """The Markov extension tr2 = (trace of sub)/beta on the blocks of M1.

    Provides the trace functional on M1 operators and the induced
    trace-preserving conditional expectation of M1 onto the ambient algebra.
    """

    def __init__(self, bc, markov, sub_wedd=None):
        self.bc = bc
        self.markov = markov
        wd = bc.m1_wedd
        if sub_wedd is None:
            sub_wedd = wedderburn(bc.sub, seed=bc.seed)
        self.sub_wedd = sub_wedd
        if len(wd.block_dims) != len(sub_wedd.block_dims):
            raise InvalidInput("M1 and the subalgebra must have matching block counts")
        # match M1 blocks to subalgebra blocks through the pushdown of z_b e1
        sub_centrals = []
        for i, d in enumerate(sub_wedd.block_dims):
            acc = bc.amb.zero()
            for p in range(d):
                acc = acc + sub_wedd.units[i][p][p]
            sub_centrals.append(acc)
        weights = np.empty(len(wd.block_dims))
        for b, z in enumerate(wd.central_projections):
            lam = bc.pushdown(z.blocks[0] @ bc.e1)
            matches = [i for i, zc in enumerate(sub_centrals) if (lam - zc).norm() <= 1e-7 * (1.0 + zc.norm())]
            if len(matches) != 1:
                raise InvalidInput("could not match an M1 block to a unique subalgebra block")
            weights[b] = markov.trace_sub[matches[0]] / markov.beta
        self.block_weights = weights
        self._gram = None
        self._unit_ops = None

    def trace(self, mat):
        """tr2 of an operator in M1."""
        el = self.bc.op_element(mat) if not hasattr(mat, "blocks") else mat
        blocks = self.bc.m1_wedd.to_abstract(el)
        return complex(sum(w * np.trace(b) for w, b in zip(self.block_weights, blocks)))

    def _ensure_basis(self):
        if self._unit_ops is None:
            units = self.bc.amb.units()
            ops = [self.bc.left_op(u) for u in units]
            k = len(ops)
            gram = np.empty((k, k), dtype=complex)
            for a in range(k):
                for b in range(k):
                    gram[a, b] = self.trace(ops[a].conj().T @ ops[b])
            self._unit_ops = (units, ops)
            self._gram = gram

    def expect_onto_ambient(self, mat):
        """Trace-preserving conditional expectation of M1 onto the ambient algebra."""
        self._ensure_basis()
        units, ops = self._unit_ops
        mat = np.asarray(mat, dtype=complex)
        rhs = np.array([self.trace(op.conj().T @ mat) for op in ops])
        coeff = np.linalg.solve(self._gram, rhs)
        acc = self.bc.amb.zero()
        for c, u in zip(coeff, units):
            acc = acc + c * u
        return acc


@dataclass
class WatataniData:
    element: object
    is_central: bool
    scalar: object  # float when the index is a scalar multiple of 1, else None


def watatani_index(elements, tol=1e-8):
    """Sum of lambda_i lambda_i* with centrality and scalarity flags."""
    if not elements:
        raise InvalidInput("need at least one element")
    alg = elements[0].alg
    acc = alg.zero()
    for lam in elements:
        acc = acc + lam * lam.adjoint()
    scale = 1.0 + acc.op_norm()
    central = all(
        ((acc * u) - (u * acc)).norm() <= tol * scale for u in alg.units()
    )
    c = acc.trace().real
    scalar = None
    if (acc - alg.scalar(c)).norm() <= tol * scale:
        scalar = float(c)
    return WatataniData(element=acc, is_central=central, scalar=scalar)
