"""Ready-made inclusion models shared by the tests and the command line.

Each builder returns a ModelPair (ambient algebra, embedded subalgebra, the
normalizer candidates the model is known to carry) or, for the four-algebra
configurations, a MasaQuadruple with two bases per intermediate algebra.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import MultiMatrixAlgebra, Subalgebra, UnitalEmbedding
from .basic import markov_trace
from .errors import InvalidInput, InvalidSubgroup
from .paths import BratteliDiagram, PathModel
from .regular import Automorphism, CrossedProductModel, GroupTable


@dataclass
class ModelPair:
    """An inclusion with its ambient algebra and normalizer candidates."""

    name: str
    ambient: object
    sub: object
    candidates: tuple = ()
    embedding: object = field(default=None, repr=False)
    extras: dict = field(default_factory=dict, repr=False)


def explicit_pair(dims, inclusion, trace="markov", unitaries=None, name="explicit"):
    """Inclusion from raw data: sub dims, multiplicity matrix, ambient trace.

    ``trace`` is either the ambient trace vector or "markov"; ambient dims
    are forced by unitality.
    """
    lam = np.asarray(inclusion)
    if lam.ndim != 2 or lam.shape[0] != len(tuple(dims)):
        raise InvalidInput("inclusion matrix needs one row per subalgebra block")
    if isinstance(trace, str):
        if trace != "markov":
            raise InvalidInput("trace must be a vector or the string 'markov'")
        trace_vec = markov_trace(lam, dims).trace_amb
    else:
        trace_vec = np.asarray(trace, dtype=float)
    amb_dims = np.round(lam).astype(int).T @ np.asarray(dims, dtype=int)
    ambient = MultiMatrixAlgebra(tuple(int(n) for n in amb_dims), trace_vec)
    emb = UnitalEmbedding.canonical(dims, ambient, lam, block_unitaries=unitaries)
    return ModelPair(name=name, ambient=ambient, sub=emb.image(), embedding=emb)


def _shift_matrix(k):
    u = np.zeros((k, k))
    for i in range(k):
        u[(i + 1) % k, i] = 1.0
    return u


def scalar_in_full(n, trace=None):
    """The scalars inside one full matrix block."""
    if trace is None:
        trace = (1.0 / n,)
    pair = explicit_pair((1,), [[n]], trace=trace, name="scalars-in-m%d" % n)
    return pair


def diagonal_in_matrix(k, trace="markov"):
    """Diagonal matrices inside M_k, with the cyclic shifts as candidates."""
    if k < 1:
        raise InvalidInput("k must be positive")
    pair = explicit_pair((1,) * k, [[1]] * k, trace=trace, name="diag-in-m%d" % k)
    u = _shift_matrix(k)
    shifts = tuple(pair.ambient.element([np.linalg.matrix_power(u, j)]) for j in range(k))
    pair.candidates = shifts
    return pair


def two_block_over_factor():
    """One matrix factor embedded diagonally into two copies of itself.

    Candidates stay inside U(N) U(N' cap M): a rotated diagonal copy and the
    central sign z1 - z2, so the pipeline keeps a single coset.
    """
    pair = explicit_pair((2,), [[1, 1]], trace=(0.25, 0.25), name="m2-in-m2+m2")
    amb = pair.ambient
    rot = np.array([[0.0, 1.0], [-1.0, 0.0]])
    candidates = (
        amb.element([np.eye(2), -np.eye(2)]),
        amb.element([rot, rot]),
    )
    pair.candidates = candidates
    return pair


@dataclass
class MasaQuadruple:
    """Scalars, two intermediate algebras and the full 2x2 matrices."""

    ambient: object
    n_sub: object
    p_sub: object
    q_sub: object
    bases_p: tuple
    bases_q: tuple


def _diag_sub(amb):
    e11 = amb.element([np.diag([1.0, 0.0])])
    e22 = amb.element([np.diag([0.0, 1.0])])
    return Subalgebra.span(amb, [e11, e22], check=False), e11, e22


def masa_quadruple():
    """The commuting pair of maximal abelian subalgebras of M2.

    P is the diagonal, Q the span of 1 and the flip; each comes with two
    right bases over the scalars so interchange data can be cross-checked.
    """
    amb = MultiMatrixAlgebra((2,), (0.5,))
    n_sub = Subalgebra.span(amb, [amb.identity()], check=False)
    p_sub, e11, e22 = _diag_sub(amb)
    flip = amb.element([np.array([[0.0, 1.0], [1.0, 0.0]])])
    q_sub = Subalgebra.span(amb, [amb.identity(), flip], check=False)
    z = amb.element([np.diag([1.0, -1.0])])
    s2 = np.sqrt(2.0)
    qp = 0.5 * (amb.identity() + flip)
    qm = 0.5 * (amb.identity() - flip)
    bases_p = (
        (s2 * e11, s2 * e22),
        (amb.identity(), z),
    )
    bases_q = (
        (s2 * qp, s2 * qm),
        (amb.identity(), flip),
    )
    return MasaQuadruple(amb, n_sub, p_sub, q_sub, bases_p, bases_q)


def degenerate_quadruple():
    """P = Q = diagonal in M2: the interchange operator is far from idempotent."""
    amb = MultiMatrixAlgebra((2,), (0.5,))
    n_sub = Subalgebra.span(amb, [amb.identity()], check=False)
    p_sub, e11, e22 = _diag_sub(amb)
    s2 = np.sqrt(2.0)
    basis = (s2 * e11, s2 * e22)
    return MasaQuadruple(amb, n_sub, p_sub, p_sub, (basis,), (basis,))


def path_cc_m2():
    """Scalars inside M2 as a one-edge-pair path model."""
    return PathModel(BratteliDiagram((1,), [[2]]))

def path_c_cm2():
    """Scalars inside C + M2 (canonical trace 1/5, 2/5)."""
    return PathModel(BratteliDiagram((1,), [[1, 2]]))

def path_cm2_m3():
    """C + M2 inside M3."""
    return PathModel(BratteliDiagram((1, 2), [[1], [1]]))


def _check_subgroup(group, subset):
    subset = sorted(set(int(h) for h in subset))
    if not subset or subset[0] < 0 or subset[-1] >= len(group):
        raise InvalidSubgroup("subgroup indices out of range")
    if 0 not in subset:
        raise InvalidSubgroup("subgroup must contain the identity")
    members = set(subset)
    for a in subset:
        if group.inverse(a) not in members:
            raise InvalidSubgroup("subset is not closed under inverses")
        for b in subset:
            if group.mult(a, b) not in members:
                raise InvalidSubgroup("subset is not closed under products")
    return subset


def group_algebra_pair(group, subgroup, seed=0):
    """C[H] inside C[G] for a subgroup H, via the regular representation.

    Candidates are all group unitaries; the subalgebra is the span of the
    subgroup's unitaries.
    """
    subset = _check_subgroup(group, subgroup)
    base = MultiMatrixAlgebra((1,), (1.0,))
    autos = [Automorphism.identity(base) for _ in range(len(group))]
    model = CrossedProductModel(base, group, autos, seed=seed)
    sub = Subalgebra.span(model.algebra, [model.unitaries[h] for h in subset], check=False)
    pair = ModelPair(
        name="group-algebra-pair",
        ambient=model.algebra,
        sub=sub,
        candidates=tuple(model.unitaries),
        extras={"model": model, "subgroup": tuple(subset)},
    )
    return pair


def crossed_product_diag(k, seed=0):
    """C^k shifted cyclically: the crossed product is a single k x k block."""
    base = MultiMatrixAlgebra((1,) * k, (1.0 / k,) * k)
    group = GroupTable.cyclic(k)
    autos = [
        Automorphism(base, perm=tuple((j - g) % k for j in range(k)))
        for g in range(k)
    ]
    model = CrossedProductModel(base, group, autos, seed=seed)
    pair = ModelPair(
        name="crossed-product-diag-%d" % k,
        ambient=model.algebra,
        sub=model.base_image,
        candidates=tuple(model.unitaries),
        extras={"model": model},
    )
    return pair
