"""Finite-dimensional multi-matrix *-algebras with a fixed faithful trace.

An algebra here is a direct sum of full complex matrix blocks M_{n_1} + ... +
M_{n_k}; an element carries one numpy array per block.  A trace vector
assigns a positive weight t_i to the i-th block's matrix trace, normalized so
the whole functional is a state: sum n_i t_i = 1.  The induced inner product
<x, y> = tr(y* x) makes the algebra a Hilbert space (its GNS space); vec()
maps elements to coordinates in which that inner product is the standard one,
so subalgebras, conditional expectations and commutants below are ordinary
orthogonal-projection and nullspace computations.
"""

import numpy as np

from . import linalg
from .errors import (
    DegenerateSpectrum,
    InvalidInput,
    NonUnitalInclusion,
    NotSubalgebra,
    NotUnitary,
    TraceMismatch,
)

TRACE_SUM_TOL = 1e-12


class MultiMatrixAlgebra:
    """Direct sum of matrix blocks with a faithful tracial state."""

    def __init__(self, dims, trace_vector):
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 1 for n in dims):
            raise InvalidInput("block dims must be positive integers, got %r" % (dims,))
        t = np.asarray(trace_vector, dtype=float)
        if t.shape != (len(dims),):
            raise InvalidInput("trace vector length %d != number of blocks %d" % (t.size, len(dims)))
        if np.any(t <= 0):
            raise InvalidInput("trace vector must be strictly positive, got %r" % (t,))
        total = float(np.dot(dims, t))
        if abs(total - 1.0) > TRACE_SUM_TOL:
            raise InvalidInput("trace vector must satisfy sum n_i t_i = 1, got %.17g" % total)
        self.dims = dims
        self.trace_vector = t
        offs = [0]
        for n in dims:
            offs.append(offs[-1] + n * n)
        self._offsets = tuple(offs)
        self.gns_dim = offs[-1]
        self._conj_perm = None

    @property
    def dim(self):
        """Linear dimension sum n_i^2 (same as the GNS dimension)."""
        return self.gns_dim

    @property
    def nblocks(self):
        return len(self.dims)

    def __repr__(self):
        return "MultiMatrixAlgebra(dims=%r)" % (list(self.dims),)

    def same_structure(self, other, tol=1e-12):
        return (
            isinstance(other, MultiMatrixAlgebra)
            and self.dims == other.dims
            and np.allclose(self.trace_vector, other.trace_vector, atol=tol)
        )

    # -- element factories -------------------------------------------------

    def element(self, blocks):
        return AlgebraElement(self, blocks)

    def zero(self):
        return AlgebraElement(self, [np.zeros((n, n), dtype=complex) for n in self.dims])

    def identity(self):
        return AlgebraElement(self, [np.eye(n, dtype=complex) for n in self.dims])

    def scalar(self, c):
        return AlgebraElement(self, [c * np.eye(n, dtype=complex) for n in self.dims])

    def unit(self, block, p, q):
        """Matrix unit e_{pq} inside the given block."""
        n = self.dims[block]
        if not (0 <= p < n and 0 <= q < n):
            raise InvalidInput("unit index (%d,%d) out of range for block of size %d" % (p, q, n))
        blocks = [np.zeros((m, m), dtype=complex) for m in self.dims]
        blocks[block][p, q] = 1.0
        return AlgebraElement(self, blocks)

    def units(self):
        """All matrix units, ordered by (block, row, column)."""
        out = []
        for b, n in enumerate(self.dims):
            for p in range(n):
                for q in range(n):
                    out.append(self.unit(b, p, q))
        return out

    def central_projection(self, block):
        blocks = [np.zeros((m, m), dtype=complex) for m in self.dims]
        blocks[block] = np.eye(self.dims[block], dtype=complex)
        return AlgebraElement(self, blocks)

    def random_element(self, rng, hermitian=False):
        blocks = []
        for n in self.dims:
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            blocks.append((g + g.conj().T) / 2.0 if hermitian else g)
        return AlgebraElement(self, blocks)

    # -- GNS coordinates ---------------------------------------------------

    def vec(self, x):
        """Coordinates in which <x,y> = tr(y* x) is the standard inner product."""
        v = np.empty(self.gns_dim, dtype=complex)
        for i, n in enumerate(self.dims):
            w = np.sqrt(self.trace_vector[i])
            v[self._offsets[i]:self._offsets[i + 1]] = w * x.blocks[i].reshape(-1)
        return v

    def unvec(self, v):
        v = np.asarray(v, dtype=complex)
        if v.shape != (self.gns_dim,):
            raise InvalidInput("vector length %r != GNS dimension %d" % (v.shape, self.gns_dim))
        blocks = []
        for i, n in enumerate(self.dims):
            w = np.sqrt(self.trace_vector[i])
            blocks.append(v[self._offsets[i]:self._offsets[i + 1]].reshape(n, n) / w)
        return AlgebraElement(self, blocks)

    def left_op(self, x):
        """Matrix of left multiplication by ``x`` on the GNS space."""
        return linalg.block_diag([np.kron(x.blocks[i], np.eye(n)) for i, n in enumerate(self.dims)])

    def right_op(self, x):
        """Matrix of right multiplication by ``x`` on the GNS space."""
        return linalg.block_diag([np.kron(np.eye(n), x.blocks[i].T) for i, n in enumerate(self.dims)])

    def conj_perm(self):
        """Permutation matrix P with vec(x*) = P conj(vec(x))."""
        if self._conj_perm is None:
            perm = np.zeros(self.gns_dim, dtype=int)
            for i, n in enumerate(self.dims):
                off = self._offsets[i]
                for a in range(n):
                    for b in range(n):
                        perm[off + a * n + b] = off + b * n + a
            p = np.zeros((self.gns_dim, self.gns_dim))
            p[np.arange(self.gns_dim), perm] = 1.0
            self._conj_perm = p
        return self._conj_perm

    def modular_conjugation(self, v):
        """J acting on GNS coordinates: the conjugate-linear map x^ -> (x*)^."""
        return self.conj_perm() @ np.conj(np.asarray(v, dtype=complex))

    def sandwich_j(self, op):
        """The linear operator J T J for a linear operator T on the GNS space."""
        p = self.conj_perm()
        return p @ np.conj(np.asarray(op, dtype=complex)) @ p


class AlgebraElement:
    __slots__ = ("alg", "blocks")

    def __init__(self, alg, blocks):
        blocks = [np.array(b, dtype=complex) for b in blocks]
        if len(blocks) != len(alg.dims):
            raise InvalidInput("expected %d blocks, got %d" % (len(alg.dims), len(blocks)))
        for b, n in zip(blocks, alg.dims):
            if b.shape != (n, n):
                raise InvalidInput("block shape %r != (%d, %d)" % (b.shape, n, n))
        self.alg = alg
        self.blocks = blocks

    def _check_same(self, other):
        if self.alg is not other.alg and not self.alg.same_structure(other.alg):
            raise InvalidInput("elements live in different algebras")

    def __add__(self, other):
        self._check_same(other)
        return AlgebraElement(self.alg, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check_same(other)
        return AlgebraElement(self.alg, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.alg, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check_same(other)
            return AlgebraElement(self.alg, [a @ b for a, b in zip(self.blocks, other.blocks)])
        return AlgebraElement(self.alg, [other * a for a in self.blocks])

    def __rmul__(self, other):
        return AlgebraElement(self.alg, [other * a for a in self.blocks])

    def __truediv__(self, c):
        return AlgebraElement(self.alg, [a / c for a in self.blocks])

    def adjoint(self):
        return AlgebraElement(self.alg, [a.conj().T for a in self.blocks])

    def trace(self):
        return complex(sum(t * np.trace(b) for t, b in zip(self.alg.trace_vector, self.blocks)))

    def norm(self):
        """GNS 2-norm sqrt(tr(x* x))."""
        return float(np.sqrt(max(0.0, ((self.adjoint() * self).trace()).real)))

    def op_norm(self):
        return max(linalg.operator_norm(b) for b in self.blocks)

    def vec(self):
        return self.alg.vec(self)

    def conj_by(self, u):
        """u x u* for a (typically unitary) element u."""
        return u * self * u.adjoint()

    def is_hermitian(self, tol=1e-10):
        return all(linalg.operator_norm(b - b.conj().T) <= tol * (1.0 + linalg.operator_norm(b)) for b in self.blocks)

    def is_projection(self, tol=1e-8):
        scale = 1.0 + self.op_norm()
        return ((self * self) - self).op_norm() <= tol * scale and (self - self.adjoint()).op_norm() <= tol * scale

    def is_unitary(self, tol=1e-8):
        one = self.alg.identity()
        return ((self * self.adjoint()) - one).op_norm() <= tol and ((self.adjoint() * self) - one).op_norm() <= tol

    def allclose(self, other, tol=1e-10):
        self._check_same(other)
        return all(np.allclose(a, b, atol=tol) for a, b in zip(self.blocks, other.blocks))

    def __repr__(self):
        return "AlgebraElement(dims=%r, norm=%.6g)" % (list(self.alg.dims), self.norm())


def check_unital_dims(source_dims, inclusion, ambient_dims):
    """Dims side of unitality: ambient dims must equal inclusion^T @ source dims."""
    lam = np.round(np.asarray(inclusion)).astype(int)
    expected = lam.T @ np.asarray(source_dims)
    if not np.array_equal(expected, np.asarray(ambient_dims)):
        raise NonUnitalInclusion(
            "unitality requires ambient dims = inclusion^T @ source dims: got %r, need %r"
            % (list(ambient_dims), list(expected))
        )


class UnitalEmbedding:
    """Canonical unital *-embedding described by a multiplicity matrix.

    ``inclusion[i, j]`` counts how many times source block i repeats inside
    target block j.  Unitality forces n_j = sum_i inclusion[i, j] * m_i and
    trace compatibility forces t_src = inclusion @ t_tgt; both are validated.
    Optional per-target-block unitaries rotate the embedded copy.
    """

    def __init__(self, source, target, inclusion, block_unitaries=None):
        lam = np.asarray(inclusion)
        if lam.shape != (source.nblocks, target.nblocks):
            raise InvalidInput("inclusion matrix shape %r != (%d, %d)" % (lam.shape, source.nblocks, target.nblocks))
        if np.any(lam < 0) or not np.allclose(lam, np.round(lam)):
            raise InvalidInput("inclusion matrix must have nonnegative integer entries")
        lam = np.round(lam).astype(int)
        if np.any(lam.sum(axis=1) == 0):
            raise NonUnitalInclusion("a source block is annihilated (zero row in the inclusion matrix)")
        check_unital_dims(source.dims, lam, target.dims)
        restricted = lam @ target.trace_vector
        if np.max(np.abs(restricted - source.trace_vector)) > 1e-10:
            raise TraceMismatch(
                "source trace %r != inclusion @ target trace %r" % (list(source.trace_vector), list(restricted))
            )
        if block_unitaries is not None:
            block_unitaries = [np.asarray(u, dtype=complex) for u in block_unitaries]
            if len(block_unitaries) != target.nblocks:
                raise InvalidInput("need one unitary per target block")
            for u, n in zip(block_unitaries, target.dims):
                if u.shape != (n, n) or linalg.operator_norm(u @ u.conj().T - np.eye(n)) > 1e-10:
                    raise NotUnitary("block unitary is not a unitary of the right size")
        self.source = source
        self.target = target
        self.inclusion = lam
        self.block_unitaries = block_unitaries
        self._image = None

    @classmethod
    def canonical(cls, source_dims, target, inclusion, block_unitaries=None):
        """Build the source algebra with the restricted trace, then embed."""
        lam = np.asarray(inclusion)
        # check unitality up front so a dims mismatch is reported as such
        # rather than as a trace normalization failure
        if lam.ndim == 2 and lam.shape[0] == len(source_dims):
            check_unital_dims(source_dims, lam, target.dims)
        t_src = lam @ target.trace_vector
        source = MultiMatrixAlgebra(source_dims, t_src)
        return cls(source, target, lam, block_unitaries)

    def apply(self, x):
        blocks = []
        for j, n in enumerate(self.target.dims):
            parts = []
            for i in range(self.source.nblocks):
                mult = self.inclusion[i, j]
                if mult > 0:
                    parts.append(np.kron(np.eye(mult), x.blocks[i]))
            blk = linalg.block_diag(parts)
            if self.block_unitaries is not None:
                u = self.block_unitaries[j]
                blk = u @ blk @ u.conj().T
            blocks.append(blk)
        return AlgebraElement(self.target, blocks)

    def image(self):
        """The embedded copy of the source, as a Subalgebra of the target."""
        if self._image is None:
            self._image = Subalgebra.span(self.target, [self.apply(u) for u in self.source.units()], check=False)
        return self._image


class Subalgebra:
    """A unital *-subalgebra held as an orthonormal GNS basis of its span."""

    def __init__(self, ambient, basis_matrix):
        self.ambient = ambient
        self.mat = np.asarray(basis_matrix, dtype=complex)
        if self.mat.ndim != 2 or self.mat.shape[0] != ambient.gns_dim:
            raise InvalidInput("basis matrix must be GNS-dim x s")
        self._elements = None

    @classmethod
    def span(cls, ambient, elements, check=True, tol=linalg.EPS_REL):
        if not elements:
            raise InvalidInput("need at least one spanning element")
        cols = np.stack([e.vec() for e in elements], axis=1)
        sub = cls(ambient, linalg.orthonormal_columns(cols))
        if check:
            sub._verify_closure(tol)
        return sub

    @classmethod
    def generated(cls, ambient, elements, tol=linalg.EPS_REL):
        """Smallest unital *-subalgebra containing the given elements."""
        work = [ambient.identity()]
        work.extend(elements)
        work.extend(e.adjoint() for e in elements)
        mat = linalg.orthonormal_columns(np.stack([e.vec() for e in work], axis=1))
        # span closure under products; dimension is bounded by the GNS dimension
        for _ in range(ambient.gns_dim + 1):
            basis = [ambient.unvec(mat[:, i]) for i in range(mat.shape[1])]
            prods = [a * b for a in basis for b in basis]
            cols = np.concatenate([mat, np.stack([p.vec() for p in prods], axis=1)], axis=1)
            new = linalg.orthonormal_columns(cols)
            if new.shape[1] == mat.shape[1]:
                return cls(ambient, new)
            mat = new
        raise InvalidInput("span closure failed to stabilize")  # unreachable

    def _verify_closure(self, tol):
        basis = self.basis_elements()
        worst = self.residual(self.ambient.identity())
        for e in basis:
            worst = max(worst, self.residual(e.adjoint()))
        for a in basis:
            for b in basis:
                worst = max(worst, self.residual(a * b))
        if worst > tol:
            raise NotSubalgebra("span is not a unital *-subalgebra (residual %.3g)" % worst)

    @property
    def dim(self):
        return self.mat.shape[1]

    def basis_elements(self):
        if self._elements is None:
            self._elements = [self.ambient.unvec(self.mat[:, i]) for i in range(self.mat.shape[1])]
        return self._elements

    def projection_matrix(self):
        """Orthogonal projection of the GNS space onto the subalgebra."""
        return self.mat @ self.mat.conj().T

    def expect(self, x):
        """Trace-preserving conditional expectation onto this subalgebra."""
        v = x.vec()
        return self.ambient.unvec(self.mat @ (self.mat.conj().T @ v))

    def residual(self, x):
        return (x - self.expect(x)).norm()

    def contains(self, x, tol=1e-8):
        return self.residual(x) <= tol * (1.0 + x.norm())

    def contains_subalgebra(self, other, tol=1e-8):
        return all(self.contains(e, tol) for e in other.basis_elements())


def conditional_expectation(sub, x):
    return sub.expect(x)


def relative_commutant(sub, within=None):
    """Elements of ``within`` (default: the ambient algebra) commuting with ``sub``."""
    amb = sub.ambient
    maps = [amb.left_op(b) - amb.right_op(b) for b in sub.basis_elements()]
    if within is None:
        ker = linalg.nullspace(np.vstack(maps))
        return Subalgebra(amb, linalg.orthonormal_columns(ker))
    stacked = np.vstack([m @ within.mat for m in maps])
    coeff = linalg.nullspace(stacked)
    return Subalgebra(amb, linalg.orthonormal_columns(within.mat @ coeff))


def center(sub):
    return relative_commutant(sub, within=sub)


def generated_subalgebra(ambient, elements):
    return Subalgebra.generated(ambient, elements)


class WedderburnData:
    """Block structure of a subalgebra: central projections and matrix units.

    ``units[b][p][q]`` are elements of the ambient algebra satisfying the
    matrix-unit relations inside block b; ``block_traces[b]`` is the ambient
    trace of a minimal projection of that block, so the abstract copy carries
    the restricted trace.
    """

    def __init__(self, subalgebra, block_dims, block_traces, units, central_projections):
        self.subalgebra = subalgebra
        self.block_dims = tuple(block_dims)
        self.block_traces = tuple(block_traces)
        self.units = units
        self.central_projections = central_projections
        amb = subalgebra.ambient
        cols = []
        scale = []
        for b, d in enumerate(self.block_dims):
            for p in range(d):
                for q in range(d):
                    cols.append(amb.vec(units[b][p][q]))
                    scale.append(self.block_traces[b])
        self._unit_mat = np.stack(cols, axis=1)
        self._scale = np.asarray(scale)

    def abstract(self):
        # renormalize away float drift so the trace-sum check stays exact
        total = sum(d * t for d, t in zip(self.block_dims, self.block_traces))
        return MultiMatrixAlgebra(self.block_dims, tuple(t / total for t in self.block_traces))

    def to_abstract(self, x):
        """Coefficient blocks of ``x`` in the matrix-unit basis."""
        coeffs = (self._unit_mat.conj().T @ x.vec()) / self._scale
        out = []
        pos = 0
        for d in self.block_dims:
            out.append(coeffs[pos:pos + d * d].reshape(d, d))
            pos += d * d
        return out

    def from_abstract(self, blocks):
        flat = np.concatenate([np.asarray(b, dtype=complex).reshape(-1) for b in blocks])
        if flat.shape != (self._unit_mat.shape[1],):
            raise InvalidInput("abstract blocks have the wrong shapes")
        return self.subalgebra.ambient.unvec(self._unit_mat @ flat)

    def abstract_element(self, x):
        return self.abstract().element(self.to_abstract(x))

    def roundtrip_residual(self, x):
        return (x - self.from_abstract(self.to_abstract(x))).norm()


def _spectral_split(h, targets, gap=linalg.GAP_TOL):
    """Cluster the spectrum of a Hermitian element into ``targets`` groups.

    Returns (means, projections) with projections as AlgebraElements, or None
    if the clustering does not produce the requested count.
    """
    alg = h.alg
    eigdata = []
    for i, blk in enumerate(h.blocks):
        vals, vecs = np.linalg.eigh(blk)
        eigdata.append((vals, vecs))
    allvals = np.concatenate([vals for vals, _ in eigdata])
    clusters = linalg.cluster_values(allvals, gap=gap)
    if targets is not None and len(clusters) != targets:
        return None
    sizes = [vals.size for vals, _ in eigdata]
    bounds = np.cumsum([0] + sizes)
    out = []
    for mean, idx in clusters:
        blocks = []
        for i, (vals, vecs) in enumerate(eigdata):
            local = idx[(idx >= bounds[i]) & (idx < bounds[i + 1])] - bounds[i]
            if local.size:
                v = vecs[:, local]
                blocks.append(v @ v.conj().T)
            else:
                blocks.append(np.zeros_like(h.blocks[i]))
        out.append((mean, AlgebraElement(alg, blocks)))
    return out


def _corner_basis(sub, proj):
    amb = sub.ambient
    cols = np.stack([(proj * b * proj).vec() for b in sub.basis_elements()], axis=1)
    mat = linalg.orthonormal_columns(cols)
    return [amb.unvec(mat[:, i]) for i in range(mat.shape[1])]


def _random_combination(elements, rng, hermitian=True):
    coeff = rng.standard_normal(len(elements)) + 1j * rng.standard_normal(len(elements))
    acc = elements[0].alg.zero()
    for c, e in zip(coeff, elements):
        acc = acc + c * e
    if hermitian:
        acc = (acc + acc.adjoint()) * 0.5
    return acc


def _attempt_wedderburn(sub, rng, tol):
    amb = sub.ambient
    zc = center(sub)
    k = zc.dim
    if k == 1:
        # scalar center: the unit of the subalgebra is the only central projection
        centrals = [(0.0, _unit_of(sub))]
    else:
        h = _random_combination(zc.basis_elements(), rng)
        split = _spectral_split(h, k)
        if split is None:
            raise DegenerateSpectrum("central spectrum failed to separate into %d clusters" % k)
        centrals = split
    blocks = []
    for mean, p in centrals:
        if not p.is_projection(1e-7) or sub.residual(p) > 1e-7:
            raise DegenerateSpectrum("central spectral projection left the subalgebra")
        corner = _corner_basis(sub, p)
        s = len(corner)
        d = round(np.sqrt(s))
        if d * d != s:
            raise DegenerateSpectrum("corner dimension %d is not a perfect square" % s)
        if d == 1:
            diag = [p]
        else:
            y = _random_combination(corner, rng)
            shift = 4.0 * (1.0 + y.op_norm())
            ys = y + shift * (amb.identity() - p)
            split = _spectral_split(ys, None)
            inside = [(m, q) for m, q in split if m < shift - 1.0]
            if len(inside) != d:
                raise DegenerateSpectrum("corner spectrum gave %d minimal projections, expected %d" % (len(inside), d))
            diag = [q for _, q in inside]
        row0 = [diag[0]]
        if d > 1:
            g = _random_combination(corner, rng, hermitian=False)
            for q in range(1, d):
                w = diag[0] * g * diag[q]
                if w.norm() < 1e-8:
                    for cb in corner:
                        w = diag[0] * cb * diag[q]
                        if w.norm() >= 1e-8:
                            break
                if w.norm() < 1e-8:
                    raise DegenerateSpectrum("could not link minimal projections inside a block")
                c2 = ((w * w.adjoint()).trace().real) / (diag[0].trace().real)
                row0.append(w / np.sqrt(c2))
        units = [[row0[p].adjoint() * row0[q] for q in range(d)] for p in range(d)]
        tb = units[0][0].trace().real
        blocks.append({"mean": mean, "d": d, "t": tb, "units": units, "p": p})
    if sum(b["d"] ** 2 for b in blocks) != sub.dim:
        raise DegenerateSpectrum("block dimensions do not add up to the subalgebra dimension")
    # deterministic ordering independent of the random eigenvalues where possible
    blocks.sort(key=lambda b: (b["d"], round(b["t"], 9), b["mean"]))
    # verify the matrix-unit relations before accepting the attempt
    worst = 0.0
    for b in blocks:
        d = b["d"]
        u = b["units"]
        acc = u[0][0].alg.zero()
        for p in range(d):
            acc = acc + u[p][p]
            worst = max(worst, (u[p][0].adjoint() - u[0][p]).norm())
            for q in range(d):
                worst = max(worst, sub.residual(u[p][q]))
                for r in range(d):
                    for s_ in range(d):
                        prod = u[p][q] * u[r][s_]
                        expect = u[p][s_] if q == r else u[p][s_].alg.zero()
                        worst = max(worst, (prod - expect).norm())
        worst = max(worst, (acc - b["p"]).norm())
    if worst > tol:
        raise DegenerateSpectrum("matrix-unit relations violated (residual %.3g)" % worst)
    return WedderburnData(
        sub,
        [b["d"] for b in blocks],
        [b["t"] for b in blocks],
        [b["units"] for b in blocks],
        [b["p"] for b in blocks],
    )


def _unit_of(sub):
    """The unit of the subalgebra (the ambient identity for unital subalgebras)."""
    return sub.expect(sub.ambient.identity())


def wedderburn(sub, seed=0, tol=1e-7, max_tries=5):
    """Decompose a subalgebra into matrix blocks with explicit matrix units.

    Randomized (seeded) spectral splitting; retries with fresh seeds before
    raising DegenerateSpectrum.
    """
    last = None
    for attempt in range(max_tries):
        rng = linalg.rng_from_seed((seed, attempt))
        try:
            return _attempt_wedderburn(sub, rng, tol)
        except DegenerateSpectrum as exc:
            last = exc
    raise DegenerateSpectrum("wedderburn failed after %d attempts: %s" % (max_tries, last))


def inclusion_matrix(wd, ambient=None):
    """Multiplicity matrix of the subalgebra's blocks inside the ambient blocks.

    Entry (i, j) is the rank of the j-th ambient block of a minimal projection
    of subalgebra block i.
    """
    amb = ambient or wd.subalgebra.ambient
    k = len(wd.block_dims)
    lam = np.zeros((k, amb.nblocks), dtype=int)
    for i in range(k):
        e00 = wd.units[i][0][0]
        for j in range(amb.nblocks):
            r = float(np.trace(e00.blocks[j]).real)
            if abs(r - round(r)) > 1e-6:
                raise InvalidInput("minimal projection has non-integer block rank %.6g" % r)
            lam[i, j] = int(round(r))
    if not np.array_equal(lam.T @ np.asarray(wd.block_dims), np.asarray(amb.dims)):
        raise NonUnitalInclusion("block multiplicities inconsistent with a unital inclusion")
    return lam
