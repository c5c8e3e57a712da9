"""Pimsner-Popa systems: Gram matrices, classification, supports, and
construction of systems with a prescribed support projection.

For a family (lambda_i) in M over a subalgebra N, the right Gram matrix has
entries E_N(lambda_i* lambda_j) and the right support is the GNS operator
sum lambda_i e1 lambda_i*.  The family is a system when the Gram matrix is a
projection over N (tested through the left-multiplication representation),
orthogonal when the Gram matrix is diagonal with projection entries,
orthonormal when the diagonal entries are 1, and a basis when the support is
the identity.  Left-handed versions swap the adjoints.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .basic import BasicConstruction
from .errors import InfeasibleSupport, InvalidInput, NotAProjection, NotASystem

EPS_SYS = 1e-8


def gram_matrix(elements, sub, side="right"):
    """n x n matrix of Gram entries in N (right: E(x_i* x_j), left: E(x_i x_j*))."""
    if side not in ("right", "left"):
        raise InvalidInput("side must be 'right' or 'left'")
    n = len(elements)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prod = elements[i].adjoint() * elements[j] if side == "right" else elements[i] * elements[j].adjoint()
            out[i][j] = sub.expect(prod)
    return out


def gram_operator(gram, alg):
    """The Gram matrix as one big operator via the left regular representation."""
    return np.block([[alg.left_op(q) for q in row] for row in gram])


def support_operator(elements, bc, side="right", warn_tol=EPS_SYS):
    """GNS support projection of a family (right: sum L e1 L*, left: sum L* e1 L).

    Warns (and still returns the operator) when the family is not a system,
    since the projection property of the support needs that hypothesis.
    """
    acc = np.zeros((bc.gns_dim, bc.gns_dim), dtype=complex)
    for lam in elements:
        l = bc.left_op(lam)
        acc += l @ bc.e1 @ l.conj().T if side == "right" else l.conj().T @ bc.e1 @ l
    g = gram_operator(gram_matrix(elements, bc.sub, side), bc.amb)
    r1, r2 = linalg.projection_residuals(g)
    scale = 1.0 + linalg.operator_norm(g)
    if max(r1, r2) > warn_tol * scale:
        warnings.warn("family is not a system; support need not be a projection", stacklevel=2)
    return acc


@dataclass
class PPSystem:
    """A classified family over a subalgebra."""

    elements: tuple
    sub: object
    side: str
    flags: dict
    residuals: dict
    gram: dict
    support: dict
    bc: object = field(repr=False, default=None)

    @property
    def size(self):
        return len(self.elements)

    def is_system(self):
        return self.flags["system"]

    def is_basis(self):
        return self.flags["basis"]


def classify(elements, sub, side="two-sided", bc=None, tol=EPS_SYS, seed=0):
    """Classify a family as system / orthogonal / orthonormal / basis.

    ``side`` is "right", "left" or "two-sided"; two-sided requires both
    handed tests to pass.  Classification is eager: Gram matrices and
    supports for each requested side are computed and kept on the result.
    """
    elements = tuple(elements)
    if not elements:
        raise InvalidInput("cannot classify an empty family")
    if side not in ("right", "left", "two-sided"):
        raise InvalidInput("side must be 'right', 'left' or 'two-sided'")
    if bc is None:
        bc = BasicConstruction(sub, seed=seed)
    alg = sub.ambient
    sides = ("right", "left") if side == "two-sided" else (side,)
    one = alg.identity()
    eye = np.eye(bc.gns_dim)
    grams, supports, residuals = {}, {}, {}
    flags = {"system": True, "orthogonal": True, "orthonormal": True, "basis": True}
    for s in sides:
        g = gram_matrix(elements, sub, s)
        grams[s] = g
        big = gram_operator(g, alg)
        scale = 1.0 + linalg.operator_norm(big)
        r_idem, r_adj = linalg.projection_residuals(big)
        residuals["%s_gram_projection" % s] = max(r_idem, r_adj) / scale
        flags["system"] &= max(r_idem, r_adj) <= tol * scale
        off = 0.0
        diag_proj = 0.0
        diag_one = 0.0
        for i in range(len(elements)):
            for j in range(len(elements)):
                if i == j:
                    q = g[i][i]
                    diag_proj = max(diag_proj, ((q * q) - q).norm(), (q - q.adjoint()).norm())
                    diag_one = max(diag_one, (q - one).norm())
                else:
                    off = max(off, g[i][j].norm())
        residuals["%s_offdiag" % s] = off
        residuals["%s_diag_projection" % s] = diag_proj
        residuals["%s_diag_identity" % s] = diag_one
        flags["orthogonal"] &= off <= tol and diag_proj <= tol
        flags["orthonormal"] &= diag_one <= tol
        supp = np.zeros_like(eye, dtype=complex)
        for lam in elements:
            l = alg.left_op(lam)
            supp += l @ bc.e1 @ l.conj().T if s == "right" else l.conj().T @ bc.e1 @ l
        supports[s] = supp
        basis_res = linalg.operator_norm(supp - eye)
        residuals["%s_support_identity" % s] = basis_res
        flags["basis"] &= basis_res <= tol
    flags["orthonormal"] = flags["orthonormal"] and flags["orthogonal"]
    flags["basis"] = flags["basis"] and flags["system"]
    return PPSystem(
        elements=elements,
        sub=sub,
        side=side,
        flags=flags,
        residuals=residuals,
        gram=grams,
        support=supports,
        bc=bc,
    )


def _abstract_ranks(blocks):
    """Blockwise ranks of an abstract projection, by rounded block traces."""
    ranks = []
    for b in blocks:
        t = float(np.trace(b).real)
        if abs(t - round(t)) > 1e-6:
            raise NotAProjection("block trace %.6g of a projection is not an integer" % t)
        ranks.append(int(round(t)))
    return ranks


def _range_vectors(block, count, tol=1e-6):
    """First ``count`` orthonormal eigenvectors of an abstract projection block."""
    vals, vecs = np.linalg.eigh(block)
    keep = [i for i in range(vals.size) if vals[i] > 0.5]
    if len(keep) < count:
        raise NotAProjection("projection block has rank %d < %d" % (len(keep), count))
    keep = keep[::-1]  # descending eigenvalue order, deterministic
    return vecs[:, keep[:count]]


def construct_system_with_support(f, bc, mode="general", tol=EPS_SYS):
    """Build a system whose support is the prescribed projection f in M1.

    Partial isometries v_i in M1 with v_i* v_i under e1 and ranges summing to
    f are assembled blockwise in M1's Wedderburn coordinates and pushed down.
    Modes "general" and "orthogonal" peel as much rank per step as e1 allows
    (always feasible); "orthonormal-padded" uses full copies of e1 plus one
    remainder, which requires (n-1) * rank_b(e1) <= rank_b(f) <= n * rank_b(e1)
    for a single n in every block and raises InfeasibleSupport otherwise.
    """
    if mode not in ("general", "orthogonal", "orthonormal-padded"):
        raise InvalidInput("unknown mode %r" % (mode,))
    if hasattr(f, "blocks"):
        f = f.blocks[0]
    f = np.asarray(f, dtype=complex)
    scale = 1.0 + linalg.operator_norm(f)
    r_idem, r_adj = linalg.projection_residuals(f)
    if max(r_idem, r_adj) > tol * scale:
        raise NotAProjection("prescribed support is not a projection (residual %.3g)" % max(r_idem, r_adj))
    if bc.in_m1_residual(f) > tol * scale:
        raise InvalidInput("prescribed support does not lie in M1")
    wd = bc.m1_wedd
    f_abs = wd.to_abstract(bc.op_element(f))
    e_abs = wd.to_abstract(bc.op_element(bc.e1))
    ranks_f = _abstract_ranks(f_abs)
    ranks_e = _abstract_ranks(e_abs)
    nblocks = len(ranks_f)
    bad = {b: ranks_f[b] for b in range(nblocks) if ranks_f[b] > 0 and ranks_e[b] == 0}
    if bad:
        raise InfeasibleSupport("support demands rank in blocks where e1 vanishes", deficits=bad)
    if mode == "orthonormal-padded":
        nsteps = max((math.ceil(rf / re) for rf, re in zip(ranks_f, ranks_e) if rf > 0), default=0)
        deficits = {
            b: (nsteps - 1) * ranks_e[b] - ranks_f[b]
            for b in range(nblocks)
            if (nsteps - 1) * ranks_e[b] > ranks_f[b]
        }
        if deficits:
            raise InfeasibleSupport(
                "no single padding count fits every block (deficits %r)" % (deficits,), deficits=deficits
            )
        steps = [list(ranks_e)] * (nsteps - 1) if nsteps > 1 else []
        last = [rf - (nsteps - 1) * re for rf, re in zip(ranks_f, ranks_e)]
        if any(last):
            steps = steps + [last]
    else:
        steps = []
        rem = list(ranks_f)
        while any(rem):
            s = [min(r, e) for r, e in zip(rem, ranks_e)]
            steps.append(s)
            rem = [r - x for r, x in zip(rem, s)]
    # eigenvector pools: e1 vectors are reused each step, f vectors are consumed
    e_vecs = [_range_vectors(e_abs[b], ranks_e[b]) if ranks_e[b] else None for b in range(nblocks)]
    f_vecs = [_range_vectors(f_abs[b], ranks_f[b]) if ranks_f[b] else None for b in range(nblocks)]
    used = [0] * nblocks
    elements = []
    for s in steps:
        blocks = []
        for b, d in enumerate(wd.block_dims):
            v = np.zeros((d, d), dtype=complex)
            if s[b]:
                w = f_vecs[b][:, used[b]:used[b] + s[b]]
                u = e_vecs[b][:, :s[b]]
                v = w @ u.conj().T
                used[b] += s[b]
            blocks.append(v)
        vmat = wd.from_abstract(blocks).blocks[0]
        elements.append(bc.pushdown(vmat))
    if not elements:
        raise InvalidInput("prescribed support is zero; the empty family has no classification")
    sys = classify(elements, bc.sub, side="right", bc=bc, tol=tol)
    sys.residuals["support_match"] = linalg.operator_norm(sys.support["right"] - f)
    return sys


def complete_to_basis(system, bc=None, tol=EPS_SYS):
    """Extend a right system to a right basis, keeping the input elements.

    The complement 1 - support is handed to the general construction; the
    returned system starts with the original elements verbatim.
    """
    if not isinstance(system, PPSystem):
        raise InvalidInput("complete_to_basis expects a classified system")
    if system.side not in ("right",):
        raise InvalidInput("completion is implemented for right systems")
    bc = bc or system.bc
    if not system.flags["system"]:
        raise NotASystem("cannot complete: the Gram matrix is not a projection")
    supp = system.support["right"]
    g = np.eye(bc.gns_dim) - supp
    if linalg.operator_norm(g) <= tol:
        return system
    extension = construct_system_with_support(g, bc, mode="general", tol=tol)
    combined = tuple(system.elements) + tuple(extension.elements)
    out = classify(combined, system.sub, side="right", bc=bc, tol=tol)
    assert out.elements[: system.size] == tuple(system.elements)
    return out
