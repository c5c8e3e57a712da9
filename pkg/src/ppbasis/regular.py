"""Regular inclusions: crossed products, normalizer tests, coset systems over
R = N v (N' cap M), basis patching, and a pipeline that assembles the whole
chain into one report.

The generalized Weyl data is handled operationally.  Cosets of the normalizer
are separated by the vanishing of E_R(u v*); representatives are filtered from
model-supplied candidates rather than enumerated, and regularity is certified
relative to those candidates.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import (
    MultiMatrixAlgebra,
    Subalgebra,
    generated_subalgebra,
    inclusion_matrix,
    relative_commutant,
    wedderburn,
)
from .basic import BasicConstruction, markov_trace, watatani_index
from .errors import (
    DegenerateCommutantModel,
    DuplicateCoset,
    InvalidInput,
    NotABasis,
    NotANormalizer,
    NotAnAction,
    NotUnitary,
)
from .systems import classify

EPS_REG = 1e-8

II1_NOTE = (
    "equality of beta with |reps| * dim(N' cap M) is the statement for regular "
    "inclusions of II1 factors; both numbers are reported here without asserting it"
)


class GroupTable:
    """A finite group as a multiplication table with identity 0."""

    def __init__(self, table):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise InvalidInput("multiplication table must be square")
        n = t.shape[0]
        if n == 0:
            raise InvalidInput("group must be nonempty")
        if not np.issubdtype(t.dtype, np.integer):
            if not np.allclose(t, np.round(t)):
                raise InvalidInput("table entries must be integers")
            t = np.round(t).astype(int)
        if t.min() < 0 or t.max() >= n:
            raise InvalidInput("table entries must index group elements")
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise InvalidInput("element 0 must be the identity")
        for g in range(n):
            if sorted(t[g]) != list(range(n)) or sorted(t[:, g]) != list(range(n)):
                raise InvalidInput("row or column %d is not a permutation" % g)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a, b], c] != t[a, t[b, c]]:
                        raise InvalidInput("table is not associative at (%d, %d, %d)" % (a, b, c))
        self.table = t
        self.n = n
        inv = np.empty(n, dtype=int)
        for g in range(n):
            inv[g] = int(np.nonzero(t[g] == 0)[0][0])
        self._inv = inv

    def __len__(self):
        return self.n

    def mult(self, g, h):
        return int(self.table[g, h])

    def inverse(self, g):
        return int(self._inv[g])

    @classmethod
    def cyclic(cls, n):
        return cls([[(g + h) % n for h in range(n)] for g in range(n)])

    @classmethod
    def direct_product(cls, a, b):
        """Product group on pairs, ordered (g, h) -> g * len(b) + h."""
        nb = len(b)
        size = len(a) * nb
        t = np.empty((size, size), dtype=int)
        for x in range(size):
            for y in range(size):
                g = a.mult(x // nb, y // nb)
                h = b.mult(x % nb, y % nb)
                t[x, y] = g * nb + h
        return cls(t)

    @classmethod
    def from_permutations(cls, perms):
        """Group of permutations given as tuples; identity is reindexed to 0.

        Products compose left-over-right: (p * q)(i) = p(q(i)).
        """
        perms = [tuple(int(v) for v in p) for p in perms]
        if not perms:
            raise InvalidInput("permutation list is empty")
        m = len(perms[0])
        for p in perms:
            if sorted(p) != list(range(m)):
                raise InvalidInput("entry %r is not a permutation of 0..%d" % (p, m - 1))
        if len(set(perms)) != len(perms):
            raise InvalidInput("permutation list has duplicates")
        ident = tuple(range(m))
        if ident not in perms:
            raise InvalidInput("permutation list lacks the identity")
        order = [ident] + [p for p in perms if p != ident]
        index = {p: i for i, p in enumerate(order)}
        t = np.empty((len(order), len(order)), dtype=int)
        for i, p in enumerate(order):
            for j, q in enumerate(order):
                comp = tuple(p[q[v]] for v in range(m))
                if comp not in index:
                    raise InvalidInput("permutations are not closed under composition")
                t[i, j] = index[comp]
        return cls(t), order


class Automorphism:
    """*-automorphism of a multi-matrix algebra: block permutation, then
    per-block unitary conjugation.  Block j of the image is u_j x_{perm[j]} u_j*.
    """

    def __init__(self, alg, perm=None, unitaries=None):
        self.alg = alg
        k = alg.nblocks
        perm = tuple(range(k)) if perm is None else tuple(int(p) for p in perm)
        if sorted(perm) != list(range(k)):
            raise NotAnAction("block permutation must permute the %d blocks" % k)
        for j, s in enumerate(perm):
            if alg.dims[j] != alg.dims[s]:
                raise NotAnAction("permutation maps a block of size %d onto size %d" % (alg.dims[s], alg.dims[j]))
            if abs(alg.trace_vector[j] - alg.trace_vector[s]) > 1e-10:
                raise NotAnAction("automorphism must preserve the trace vector")
        if unitaries is None:
            unitaries = [np.eye(alg.dims[j]) for j in range(k)]
        us = []
        for j, u in enumerate(unitaries):
            u = np.asarray(u, dtype=complex)
            if u.shape != (alg.dims[j], alg.dims[j]):
                raise NotAnAction("unitary %d has the wrong shape" % j)
            if linalg.operator_norm(u @ u.conj().T - np.eye(alg.dims[j])) > 1e-10:
                raise NotUnitary("block %d of the automorphism is not unitary" % j)
            us.append(u)
        self.perm = perm
        self.unitaries = tuple(us)

    @classmethod
    def identity(cls, alg):
        return cls(alg)

    def apply(self, x):
        blocks = [u @ x.blocks[s] @ u.conj().T for u, s in zip(self.unitaries, self.perm)]
        return self.alg.element(blocks)

    def compose(self, other):
        """self after other."""
        perm = tuple(other.perm[s] for s in self.perm)
        units = [u @ other.unitaries[s] for u, s in zip(self.unitaries, self.perm)]
        return Automorphism(self.alg, perm, units)

    def distance(self, other):
        """Largest deviation on matrix units; zero iff equal as maps."""
        worst = 0.0
        for e in self.alg.units():
            worst = max(worst, (self.apply(e) - other.apply(e)).norm())
        return worst


class CrossedProductModel:
    """B acted on by a finite group, realized inside one ambient algebra.

    The covariance algebra is represented on the direct sum of |G| copies of
    L2(B); the span of {pi(b) u_g} is decomposed into blocks, and the ambient
    algebra carries the trace b_g -> tr_B(b_e), so the copy of B sits trace
    compatibly inside M.
    """

    def __init__(self, base, group, autos, seed=0, tol=1e-10):
        if len(autos) != len(group):
            raise NotAnAction("need one automorphism per group element")
        ident = Automorphism.identity(base)
        if autos[0].distance(ident) > tol:
            raise NotAnAction("the identity element must act trivially")
        for g in range(len(group)):
            for h in range(len(group)):
                d = autos[g].compose(autos[h]).distance(autos[group.mult(g, h)])
                if d > tol:
                    raise NotAnAction("action is not multiplicative at (%d, %d): deviation %.3g" % (g, h, d))
        self.base = base
        self.group = group
        self.autos = list(autos)
        db = base.gns_dim
        n = len(group)
        dv = db * n

        def pi_mat(b):
            out = np.zeros((dv, dv), dtype=complex)
            for h in range(n):
                out[h * db:(h + 1) * db, h * db:(h + 1) * db] = base.left_op(autos[group.inverse(h)].apply(b))
            return out

        def u_mat(g):
            out = np.zeros((dv, dv), dtype=complex)
            for h in range(n):
                gh = group.mult(g, h)
                out[gh * db:(gh + 1) * db, h * db:(h + 1) * db] = np.eye(db)
            return out

        self._pi_mat = pi_mat
        self._u_mat = u_mat
        for g in range(n):
            ug = u_mat(g)
            for b in base.units():
                cov = ug @ pi_mat(b) @ ug.conj().T - pi_mat(autos[g].apply(b))
                if linalg.operator_norm(cov) > 1e-10:
                    raise NotAnAction("covariance fails for group element %d" % g)
        op_alg = MultiMatrixAlgebra((dv,), (1.0 / dv,))
        spanning = [op_alg.element([pi_mat(b) @ u_mat(g)]) for b in base.units() for g in range(n)]
        span = Subalgebra.span(op_alg, spanning, check=False)
        if span.dim != base.dim * n:
            raise NotAnAction("covariance span has dimension %d, expected %d" % (span.dim, base.dim * n))
        self.op_span = span
        self.wedd = wedderburn(span, seed=seed)
        vec1 = base.vec(base.identity())
        traces = []
        for b in range(len(self.wedd.block_dims)):
            t = self._canonical_trace(self.wedd.units[b][0][0].blocks[0], vec1)
            if t.real <= 0 or abs(t.imag) > 1e-10:
                raise NotAnAction("canonical trace is not faithful on the span")
            traces.append(t.real)
        total = sum(d * t for d, t in zip(self.wedd.block_dims, traces))
        self.algebra = MultiMatrixAlgebra(self.wedd.block_dims, tuple(t / total for t in traces))
        self.unitaries = tuple(self.to_model(u_mat(g)) for g in range(n))
        self.base_image = Subalgebra.span(
            self.algebra, [self.to_model(pi_mat(b)) for b in base.units()], check=False
        )

    def _canonical_trace(self, mat, vec1):
        db = self.base.gns_dim
        b_e = self.base.unvec(mat[:db, :db] @ vec1)
        return b_e.trace()

    def embed(self, b):
        """The copy of a base element inside the ambient algebra."""
        return self.to_model(self._pi_mat(b))

    def to_model(self, mat):
        db = self.base.gns_dim
        n = len(self.group)
        op = MultiMatrixAlgebra((db * n,), (1.0 / (db * n),))
        return self.algebra.element(self.wedd.to_abstract(op.element([np.asarray(mat, dtype=complex)])))

    def canonical_trace(self, mat):
        return self._canonical_trace(np.asarray(mat, dtype=complex), self.base.vec(self.base.identity()))


def crossed_product(base, group, autos, seed=0):
    return CrossedProductModel(base, group, autos, seed=seed)


def normalizer_residual(u, sub):
    """How far u sub u* leaves the subalgebra (largest basis residual)."""
    ua = u.adjoint()
    worst = 0.0
    for x in sub.basis_elements():
        worst = max(worst, sub.residual(u * x * ua))
    return worst


def check_normalizer(u, sub, tol=EPS_REG):
    if not u.is_unitary(tol):
        raise NotUnitary("normalizer candidate is not unitary")
    return normalizer_residual(u, sub) <= tol


def coset_distinct(u, v, sub, r_sub, tol=EPS_REG):
    """Whether u, v fall in distinct cosets: E_R(u v*) must vanish."""
    return r_sub.expect(u * v.adjoint()).norm() <= tol


def coset_system(reps, n_sub, r_sub, bc_r=None, bc_n=None, tol=EPS_REG, seed=0):
    """Classify pairwise-distinct coset representatives as a system over R.

    The classification over N is folded into the returned flags/residuals
    under ``over_n`` keys; the primary Gram and support data is over R.
    """
    reps = tuple(reps)
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if not coset_distinct(reps[i], reps[j], n_sub, r_sub, tol):
                raise DuplicateCoset("representatives %d and %d fall in the same coset" % (i, j))
    if bc_r is None:
        bc_r = BasicConstruction(r_sub, seed=seed)
    sys_r = classify(reps, r_sub, side="two-sided", bc=bc_r, tol=tol)
    sys_n = classify(reps, n_sub, side="two-sided", bc=bc_n, tol=tol, seed=seed)
    for key, val in sys_n.residuals.items():
        sys_r.residuals["over_n_" + key] = val
    sys_r.flags["orthonormal_over_n"] = sys_n.flags["system"] and sys_n.flags["orthonormal"]
    return sys_r


def _verify_two_sided_basis(elements, n_sub, target, bc, tol, label):
    """Two-sided basis test for a family spanning ``target`` over N.

    ``target`` None means the whole ambient algebra (supports must be 1);
    otherwise both supports must equal the GNS projection of the target and
    every element must lie inside it.
    """
    if target is not None:
        for k, x in enumerate(elements):
            res = target.residual(x)
            if res > tol:
                raise NotABasis("%s element %d leaves its algebra (residual %.3g)" % (label, k, res))
    sys = classify(elements, n_sub, side="two-sided", bc=bc, tol=tol)
    if not sys.flags["system"]:
        raise NotABasis(
            "%s family fails the Gram projection test (residual %.3g)"
            % (label, max(sys.residuals["right_gram_projection"], sys.residuals["left_gram_projection"]))
        )
    et = np.eye(bc.gns_dim) if target is None else target.projection_matrix()
    scale = 1.0 + linalg.operator_norm(et)
    for side in ("right", "left"):
        res = linalg.operator_norm(sys.support[side] - et)
        sys.residuals[side + "_support_target"] = res
        if res > tol * scale:
            raise NotABasis("%s family has wrong %s support (residual %.3g)" % (label, side, res))
    return sys


def patch_bases(inner, outer, n_sub, p_sub, bc_n=None, bc_p=None, tol=EPS_REG, seed=0, check=True):
    """Patch a basis of P over N with a basis of M over P into one of M over N.

    Outer elements must be unitaries normalizing both N and P; the returned
    family is the products mu * lam, outer index slowest.  With ``check`` the
    preconditions are verified, including that each conjugate {mu lam mu*}
    is again a basis of P over N.
    """
    inner = tuple(inner)
    outer = tuple(outer)
    if not inner or not outer:
        raise InvalidInput("both families must be nonempty")
    if bc_n is None:
        bc_n = BasicConstruction(n_sub, seed=seed)
    if check:
        _verify_two_sided_basis(inner, n_sub, p_sub, bc_n, tol, "inner")
        if bc_p is None:
            bc_p = BasicConstruction(p_sub, seed=seed)
        _verify_two_sided_basis(outer, p_sub, None, bc_p, tol, "outer")
        for j, mu in enumerate(outer):
            if not mu.is_unitary(tol):
                raise NotUnitary("outer element %d is not unitary" % j)
            if normalizer_residual(mu, n_sub) > tol:
                raise NotANormalizer("outer element %d does not normalize the base algebra" % j)
            if normalizer_residual(mu, p_sub) > tol:
                raise NotANormalizer("outer element %d does not normalize the intermediate algebra" % j)
            conj = [mu * lam * mu.adjoint() for lam in inner]
            _verify_two_sided_basis(conj, n_sub, p_sub, bc_n, tol, "conjugated inner")
    products = [mu * lam for mu in outer for lam in inner]
    return classify(products, n_sub, side="two-sided", bc=bc_n, tol=tol)


@dataclass
class WeylReport:
    """Everything the pipeline establishes about one inclusion."""

    sub: object
    commutant: object
    r_algebra: object
    inner: tuple
    reps: tuple
    rejected: tuple
    coset: object
    patched: object
    watatani: object
    flags: dict
    numbers: dict
    issues: tuple = ()
    note: str = II1_NOTE
    markov: object = field(default=None, repr=False)

    def format_lines(self):
        n = self.numbers
        lines = [
            "beta = %.12g" % n["beta"],
            "dim(N' cap M) = %d" % n["dim_commutant"],
            "|reps| = %d" % n["reps"],
            "|reps| * dim(N' cap M) = %d * %d = %d" % (n["reps"], n["dim_commutant"], n["product"]),
            self.note,
        ]
        for key in ("regular", "coset_system_orthonormal", "support_equals_eP", "patched_basis_two_sided"):
            lines.append("%s = %s" % (key, "true" if self.flags[key] else "false"))
        if self.patched is not None:
            lines.append("patched basis size = %d" % len(self.patched.elements))
        if self.watatani is not None and self.watatani.scalar is not None:
            lines.append("watatani index = %.12g" % self.watatani.scalar)
        for issue in self.issues:
            lines.append("issue: %s" % issue)
        return lines

    def to_dict(self):
        out = {
            "flags": dict(self.flags),
            "numbers": dict(self.numbers),
            "issues": list(self.issues),
            "note": self.note,
        }
        if self.patched is not None:
            out["patched_size"] = len(self.patched.elements)
        if self.watatani is not None:
            out["watatani_scalar"] = self.watatani.scalar
        return out


def _scalar_commutant_basis(comm, seed):
    """The trace-scaled matrix-unit family of the relative commutant."""
    wd = wedderburn(comm, seed=seed)
    out = []
    for b, d in enumerate(wd.block_dims):
        c = 1.0 / np.sqrt(wd.block_traces[b])
        for p in range(d):
            for q in range(d):
                out.append(c * wd.units[b][p][q])
    return tuple(out)


def _inner_basis(sub, comm, r_alg, bc_n, tol, seed):
    """Two-sided basis of R over N built from the relative commutant.

    When R = N the unit alone is a basis.  When R is all of M the scaled
    commutant units are tested directly on L2(M); for a proper intermediate
    R the test runs inside an abstract copy of R.  Failure of the scalar
    family is reported as a degenerate commutant model.
    """
    amb = sub.ambient
    if r_alg.dim == sub.dim:
        return (amb.identity(),)
    inner = _scalar_commutant_basis(comm, seed)
    try:
        if r_alg.dim == amb.dim:
            _verify_two_sided_basis(inner, sub, None, bc_n, tol, "commutant")
        else:
            wd_r = wedderburn(r_alg, seed=seed)
            n_in_r = Subalgebra.span(
                wd_r.abstract(), [wd_r.abstract_element(x) for x in sub.basis_elements()], check=False
            )
            bc_nr = BasicConstruction(n_in_r, seed=seed)
            inner_abs = [wd_r.abstract_element(x) for x in inner]
            _verify_two_sided_basis(inner_abs, n_in_r, None, bc_nr, tol, "commutant")
    except NotABasis as exc:
        raise DegenerateCommutantModel(str(exc)) from exc
    return inner


def regular_pipeline(sub, candidates=(), seed=0, tol=EPS_REG):
    """Run the full chain for N inside its ambient algebra.

    Computes the relative commutant and R, the scalar basis of R over N, the
    coset representatives filtered from the candidates, the regularity and
    coset-completeness checks, and, when both pass, the patched two-sided
    basis with its Watatani index.  Non-normalizer candidates are recorded
    and skipped; failed regularity or incomplete cosets leave a partial
    report rather than raising.
    """
    amb = sub.ambient
    candidates = tuple(candidates)
    comm = relative_commutant(sub)
    r_alg = generated_subalgebra(amb, list(sub.basis_elements()) + list(comm.basis_elements()))
    wd_n = wedderburn(sub, seed=seed)
    markov = markov_trace(inclusion_matrix(wd_n), wd_n.block_dims)
    bc_n = BasicConstruction(sub, seed=seed)
    inner = _inner_basis(sub, comm, r_alg, bc_n, tol, seed)

    reps = [amb.identity()]
    rejected = []
    for idx, u in enumerate(candidates):
        if not u.is_unitary(tol):
            raise NotUnitary("candidate %d is not unitary" % idx)
        res = normalizer_residual(u, sub)
        if res > tol:
            rejected.append((idx, res))
            continue
        if all(coset_distinct(u, v, sub, r_alg, tol) for v in reps):
            reps.append(u)
    reps = tuple(reps)

    gen = generated_subalgebra(amb, list(sub.basis_elements()) + list(candidates))
    regular = gen.dim == amb.dim
    issues = [] if regular else ["NotRegular"]

    bc_r = BasicConstruction(r_alg, seed=seed)
    sys_r = coset_system(reps, sub, r_alg, bc_r=bc_r, bc_n=bc_n, tol=tol, seed=seed)
    orthonormal = sys_r.flags["system"] and sys_r.flags["orthonormal"] and sys_r.flags["orthonormal_over_n"]
    p_gen = generated_subalgebra(amb, list(r_alg.basis_elements()) + list(reps))
    ep = p_gen.projection_matrix()
    ep_res = linalg.operator_norm(sys_r.support["right"] - ep)
    support_eq = ep_res <= tol * (1.0 + linalg.operator_norm(ep))
    complete = sys_r.flags["basis"]

    patched = None
    wat = None
    if regular and complete:
        patched = patch_bases(inner, reps, sub, r_alg, bc_n=bc_n, bc_p=bc_r, tol=tol, seed=seed)
        wat = watatani_index(patched.elements)
    elif regular:
        issues.append("IncompleteCosets")

    flags = {
        "regular": regular,
        "coset_system_orthonormal": orthonormal,
        "support_equals_eP": support_eq,
        "patched_basis_two_sided": bool(patched is not None and patched.flags["system"] and patched.flags["basis"]),
    }
    numbers = {
        "beta": markov.beta,
        "dim_commutant": comm.dim,
        "reps": len(reps),
        "product": len(reps) * comm.dim,
        "support_eP_residual": ep_res,
    }
    return WeylReport(
        sub=sub,
        commutant=comm,
        r_algebra=r_alg,
        inner=tuple(inner),
        reps=reps,
        rejected=tuple(rejected),
        coset=sys_r,
        patched=patched,
        watatani=wat,
        flags=flags,
        numbers=numbers,
        issues=tuple(issues),
        markov=markov,
    )
