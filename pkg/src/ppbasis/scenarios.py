"""JSON scenarios: a model description plus an ordered task list.

Complex numbers are encoded as [re, im] pairs, matrices as row-major nested
lists, one matrix per block.  "markov" as a trace field triggers the Markov
trace.  Every number in the machine report is rounded to 12 significant
digits and the printed lines show exactly the rounded values, so a report is
byte-stable for a fixed seed.
"""

import json

import numpy as np

from . import linalg
from .algebra import MultiMatrixAlgebra, Subalgebra, check_unital_dims, inclusion_matrix, wedderburn
from .basic import BasicConstruction, markov_trace, watatani_index
from .errors import AlgebraError, ScenarioError
from .intermediate import interchange_operator, interchange_pair, is_commuting_square
from .models import (
    ModelPair,
    crossed_product_diag,
    degenerate_quadruple,
    diagonal_in_matrix,
    explicit_pair,
    group_algebra_pair,
    masa_quadruple,
)
from .paths import BratteliDiagram, PathModel, scalar_basis
from .regular import Automorphism, CrossedProductModel, GroupTable, regular_pipeline
from .systems import classify, complete_to_basis, construct_system_with_support

TASK_NAMES = (
    "classify_system",
    "support",
    "construct_with_support",
    "complete_to_basis",
    "path_basis",
    "markov",
    "watatani",
    "interchange",
    "commuting_square",
    "regular_pipeline",
)


def round12(x):
    return float("%.12g" % float(x))


def _round_tree(obj):
    """Round every float in a nested structure; make everything JSON-safe."""
    if isinstance(obj, dict):
        return {str(k): _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round12(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [round12(obj.real), round12(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    raise ScenarioError("cannot serialize value of type %s" % type(obj).__name__)


def _parse_scalar(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v):
        return complex(v[0], v[1])
    raise ScenarioError("scalar entries must be numbers or [re, im] pairs, got %r" % (v,))


def _parse_matrix(data):
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ScenarioError("a matrix must be a nonempty nested list")
    rows = [[_parse_scalar(v) for v in r] for r in data]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ScenarioError("matrix rows have unequal lengths")
    return np.array(rows, dtype=complex)


def parse_element(alg, data):
    """One algebra element: a list of per-block matrices ([re, im] entries)."""
    if not isinstance(data, list) or len(data) != alg.nblocks:
        raise ScenarioError("element needs %d block matrices" % alg.nblocks)
    blocks = []
    for j, m in enumerate(data):
        b = _parse_matrix(m)
        if b.shape != (alg.dims[j], alg.dims[j]):
            raise ScenarioError("block %d has shape %r, expected %dx%d" % (j, b.shape, alg.dims[j], alg.dims[j]))
        blocks.append(b)
    return alg.element(blocks)


def _parse_trace(spec):
    if spec is None or spec == "markov":
        return "markov"
    if isinstance(spec, list) and all(isinstance(v, (int, float)) for v in spec):
        return tuple(float(v) for v in spec)
    raise ScenarioError("trace must be 'markov' or a list of numbers")


def _group_from_spec(spec):
    """GroupTable from 'cyclic:n', {'cyclic': n}, {'table': ...} or
    {'permutations': ...}; returns (group, index_map) where index_map sends
    positions in the original description to table indices."""
    if isinstance(spec, str):
        if spec.startswith("cyclic:"):
            try:
                n = int(spec.split(":", 1)[1])
            except ValueError:
                raise ScenarioError("bad cyclic group spec %r" % spec)
            return GroupTable.cyclic(n), None
        raise ScenarioError("unknown group spec %r" % spec)
    if isinstance(spec, dict):
        if "cyclic" in spec:
            return GroupTable.cyclic(int(spec["cyclic"])), None
        if "table" in spec:
            return GroupTable(spec["table"]), None
        if "permutations" in spec:
            perms = [tuple(int(v) for v in p) for p in spec["permutations"]]
            group, order = GroupTable.from_permutations(perms)
            index = {p: i for i, p in enumerate(order)}
            return group, [index[p] for p in perms]
    raise ScenarioError("unknown group spec %r" % (spec,))


def _action_from_spec(spec, base, group):
    if spec in (None, "trivial"):
        return [Automorphism.identity(base) for _ in range(len(group))]
    if spec == "cyclic_shift":
        k = base.nblocks
        if len(group) != k:
            raise ScenarioError("cyclic_shift needs |G| equal to the number of blocks")
        return [Automorphism(base, perm=tuple((j - g) % k for j in range(k))) for g in range(len(group))]
    if isinstance(spec, list):
        if len(spec) != len(group):
            raise ScenarioError("need one automorphism per group element")
        autos = []
        for a in spec:
            perm = a.get("perm")
            units = a.get("unitaries")
            if units is not None:
                units = [_parse_matrix(u) for u in units]
            autos.append(Automorphism(base, perm=perm, unitaries=units))
        return autos
    raise ScenarioError("unknown action spec %r" % (spec,))


class LoadedModel:
    """A scenario's model, resolved to algebra objects, with lazy extras."""

    def __init__(self, kind, pair=None, quad=None, path=None, seed=0):
        self.kind = kind
        self.pair = pair
        self.quad = quad
        self.path = path
        self.seed = seed
        self._bc = None
        self._path_model = None

    def require_pair(self):
        if self.pair is None:
            raise ScenarioError("task needs an inclusion model, not %r" % self.kind)
        return self.pair

    def require_quad(self):
        if self.quad is None:
            raise ScenarioError("task needs a quadruple model, not %r" % self.kind)
        return self.quad

    def bc(self):
        if self._bc is None:
            self._bc = BasicConstruction(self.require_pair().sub, seed=self.seed)
        return self._bc

    def path_model(self):
        if self.path is not None:
            return self.path
        if self._path_model is None:
            pair = self.require_pair()
            emb = pair.embedding
            if emb is None or emb.block_unitaries is not None:
                raise ScenarioError("path tasks need an untwisted explicit inclusion")
            diagram = BratteliDiagram(emb.source.dims, emb.inclusion)
            self._path_model = PathModel(diagram, bottom_trace=np.asarray(emb.target.trace_vector))
        return self._path_model

    def inclusion_data(self):
        """(inclusion matrix, sub dims) from the embedding or by decomposition."""
        pair = self.require_pair()
        if pair.embedding is not None:
            return np.asarray(pair.embedding.inclusion), pair.embedding.source.dims
        wd = wedderburn(pair.sub, seed=self.seed)
        return inclusion_matrix(wd), wd.block_dims

    def elements(self, source):
        pair = self.require_pair()
        amb = pair.ambient
        if source == "identity":
            return (amb.identity(),)
        if source == "scalar_basis":
            return tuple(scalar_basis(amb))
        if source in ("candidates", "unitaries"):
            if not pair.candidates:
                raise ScenarioError("model has no candidates")
            return tuple(pair.candidates)
        if isinstance(source, list):
            return tuple(parse_element(amb, e) for e in source)
        raise ScenarioError("unknown element source %r" % (source,))


def build_model(spec, seed=0):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScenarioError("model spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "explicit":
            dims = tuple(int(d) for d in spec["dims"])
            lam = np.asarray(spec["inclusion"])
            trace = _parse_trace(spec.get("trace", "markov"))
            unitaries = spec.get("unitaries")
            if unitaries is not None:
                unitaries = [_parse_matrix(u) for u in unitaries]
            if "ambient_dims" in spec:
                amb_dims = tuple(int(n) for n in spec["ambient_dims"])
                check_unital_dims(dims, lam, amb_dims)
                amb = MultiMatrixAlgebra(
                    amb_dims,
                    markov_trace(lam, dims).trace_amb if trace == "markov" else trace,
                )
                from .algebra import UnitalEmbedding

                emb = UnitalEmbedding.canonical(dims, amb, lam, block_unitaries=unitaries)
                pair = ModelPair(name="explicit", ambient=amb, sub=emb.image(), embedding=emb)
            else:
                pair = explicit_pair(dims, lam, trace=trace, unitaries=unitaries)
            if "candidates" in spec:
                pair.candidates = tuple(parse_element(pair.ambient, e) for e in spec["candidates"])
            return LoadedModel("explicit", pair=pair, seed=seed)
        if kind == "diagonal_in_matrix":
            pair = diagonal_in_matrix(int(spec["k"]), trace=_parse_trace(spec.get("trace", "markov")))
            return LoadedModel(kind, pair=pair, seed=seed)
        if kind == "group_algebra_pair":
            group, index_map = _group_from_spec(spec["group"])
            subgroup = [int(h) for h in spec["subgroup"]]
            if index_map is not None:
                subgroup = [index_map[h] for h in subgroup]
            pair = group_algebra_pair(group, subgroup, seed=seed)
            return LoadedModel(kind, pair=pair, seed=seed)
        if kind == "crossed_product":
            base_dims = tuple(int(d) for d in spec["base_dims"])
            group, _ = _group_from_spec(spec["group"])
            action = spec.get("action", "trivial")
            if action == "cyclic_shift" and set(base_dims) == {1} and len(group) == len(base_dims):
                pair = crossed_product_diag(len(base_dims), seed=seed)
                return LoadedModel(kind, pair=pair, seed=seed)
            trace = spec.get("base_trace")
            if trace is None:
                total = float(sum(d * d for d in base_dims))
                trace = tuple(d / total for d in base_dims)
            base = MultiMatrixAlgebra(base_dims, trace)
            autos = _action_from_spec(action, base, group)
            model = CrossedProductModel(base, group, autos, seed=seed)
            pair = ModelPair(
                name="crossed-product",
                ambient=model.algebra,
                sub=model.base_image,
                candidates=tuple(model.unitaries),
                extras={"model": model},
            )
            return LoadedModel(kind, pair=pair, seed=seed)
        if kind == "quadruple":
            which = spec.get("which", "masa")
            if which == "masa":
                return LoadedModel(kind, quad=masa_quadruple(), seed=seed)
            if which == "degenerate":
                return LoadedModel(kind, quad=degenerate_quadruple(), seed=seed)
            raise ScenarioError("unknown quadruple %r" % which)
        if kind == "path":
            diagram = BratteliDiagram(tuple(int(d) for d in spec["middle_dims"]), spec["inclusion"])
            trace = _parse_trace(spec.get("trace", "markov"))
            pm = PathModel(diagram, bottom_trace="markov" if trace == "markov" else np.asarray(trace))
            return LoadedModel(kind, path=pm, seed=seed)
    except ScenarioError:
        raise
    except KeyError as exc:
        raise ScenarioError("model spec is missing field %s" % exc)
    except AlgebraError as exc:
        raise ScenarioError("model construction failed: %s: %s" % (type(exc).__name__, exc))
    raise ScenarioError("unknown model kind %r" % kind)


def _resolve_f(spec, bc):
    if spec in (None, "e1"):
        return bc.e1
    if spec == "one":
        return np.eye(bc.gns_dim)
    if isinstance(spec, dict) and "m1_central" in spec:
        b = int(spec["m1_central"])
        wd = bc.m1_wedd
        if not 0 <= b < len(wd.block_dims):
            raise ScenarioError("m1_central index %d out of range" % b)
        blocks = [np.eye(d) if i == b else np.zeros((d, d)) for i, d in enumerate(wd.block_dims)]
        return wd.from_abstract(blocks).blocks[0]
    raise ScenarioError("unknown support spec %r" % (spec,))


def _system_payload(sys):
    numbers = {"size": len(sys.elements)}
    numbers.update(sys.residuals)
    return {"flags": dict(sys.flags), "numbers": numbers}


def _run_task(task, model, eps, seed):
    name = task.get("task")
    if name == "markov":
        lam, sub_dims = model.inclusion_data()
        md = markov_trace(lam, sub_dims)
        t0 = np.asarray(md.trace_sub, dtype=float)
        eig = float(np.linalg.norm(lam @ lam.T @ t0 - md.beta * t0))
        return {
            "flags": {},
            "numbers": {
                "beta": md.beta,
                "eigen_residual": eig,
                "trace_sub": list(md.trace_sub),
                "trace_amb": list(md.trace_amb),
            },
        }
    if name == "classify_system":
        pair = model.require_pair()
        side = task.get("side", "two-sided")
        sys = classify(model.elements(task.get("elements", "identity")), pair.sub, side=side, bc=model.bc(), tol=eps)
        return _system_payload(sys)
    if name == "support":
        pair = model.require_pair()
        sys = classify(model.elements(task.get("elements", "identity")), pair.sub, side="right", bc=model.bc(), tol=eps)
        supp = sys.support["right"]
        rank = float(np.trace(supp).real)
        out = _system_payload(sys)
        out["numbers"]["support_rank"] = int(round(rank))
        out["numbers"]["e1_rank"] = model.bc().e1_rank()
        return out
    if name == "construct_with_support":
        bc = model.bc()
        f = _resolve_f(task.get("f", "e1"), bc)
        sys = construct_system_with_support(f, bc, mode=task.get("mode", "general"), tol=eps)
        return _system_payload(sys)
    if name == "complete_to_basis":
        bc = model.bc()
        if "f" in task:
            start = construct_system_with_support(_resolve_f(task["f"], bc), bc, mode=task.get("mode", "general"), tol=eps)
        else:
            start = classify(model.elements(task.get("elements", "identity")), model.require_pair().sub, side="right", bc=bc, tol=eps)
        full = complete_to_basis(start, bc, tol=eps)
        out = _system_payload(full)
        out["numbers"]["initial_size"] = len(start.elements)
        out["flags"]["prefix_preserved"] = all(
            a.allclose(b) for a, b in zip(start.elements, full.elements[: len(start.elements)])
        )
        return out
    if name == "path_basis":
        pm = model.path_model()
        labels, elems = pm.orthogonal_system()
        mid = pm.middle_subalgebra()
        bc = BasicConstruction(mid, seed=seed)
        sys = classify(elems, mid, side="left", bc=bc, tol=eps)
        expect_res = 0.0
        for lam in pm.diagram.paths:
            for mu in pm.diagram.block_paths[pm.diagram.pos[lam][0]]:
                expect_res = max(expect_res, (pm.expect_unit(lam, mu) - mid.expect(pm.unit(lam, mu))).norm())
        j_res = 0.0
        for p in range(pm.middle_skeleton.nblocks):
            jp = pm.j_projection(p)
            j_res = max(j_res, ((jp * jp) - jp).norm(), (jp - jp.adjoint()).norm())
        out = _system_payload(sys)
        out["numbers"]["expectation_residual"] = expect_res
        out["numbers"]["j_projection_residual"] = j_res
        return out
    if name == "watatani":
        wat = watatani_index(model.elements(task.get("elements", "identity")), tol=eps)
        numbers = {}
        if wat.scalar is not None:
            numbers["scalar"] = wat.scalar
        return {"flags": {"central": wat.is_central, "scalar_index": wat.scalar is not None}, "numbers": numbers}
    if name == "interchange":
        q = model.require_quad()
        bc = BasicConstruction(q.n_sub, seed=seed)
        pq, qp, j_res = interchange_pair(q.p_sub, q.bases_p[0], q.q_sub, q.bases_q[0], bc, tol=eps)
        idem = linalg.operator_norm(pq @ pq - pq)
        adj = linalg.operator_norm(pq - pq.conj().T)
        numbers = {
            "idempotent_residual": idem,
            "selfadjoint_residual": adj,
            "j_symmetry_residual": j_res,
            "norm": linalg.operator_norm(pq),
        }
        if len(q.bases_p) > 1 and len(q.bases_q) > 1:
            alt = interchange_operator(q.p_sub, q.bases_p[1], q.q_sub, q.bases_q[1], bc, tol=eps)
            numbers["basis_independence"] = linalg.operator_norm(pq - alt)
        return {"flags": {"projection": bool(max(idem, adj) <= eps)}, "numbers": numbers}
    if name == "commuting_square":
        q = model.require_quad()
        flag, worst = is_commuting_square(q.n_sub, q.p_sub, q.q_sub, tol=max(eps, 1e-9))
        return {"flags": {"commuting": flag}, "numbers": {"residual": worst}}
    if name == "regular_pipeline":
        pair = model.require_pair()
        rep = regular_pipeline(pair.sub, pair.candidates, seed=seed, tol=eps)
        numbers = dict(rep.numbers)
        if rep.patched is not None:
            numbers["basis_size"] = len(rep.patched.elements)
        if rep.watatani is not None and rep.watatani.scalar is not None:
            numbers["watatani_scalar"] = rep.watatani.scalar
        return {
            "flags": dict(rep.flags),
            "numbers": numbers,
            "notes": rep.format_lines(),
            "issues": list(rep.issues),
        }
    raise ScenarioError("unknown task %r (choose from %s)" % (name, ", ".join(TASK_NAMES)))


def _check_expect(expect, result, eps):
    failures = []
    for key, want in expect.items():
        if key == "error":
            continue
        flags = result.get("flags", {})
        numbers = result.get("numbers", {})
        if key in flags:
            if bool(flags[key]) != bool(want):
                failures.append("%s = %s, expected %s" % (key, flags[key], want))
        elif key in numbers:
            got = numbers[key]
            if isinstance(want, bool) or isinstance(got, bool):
                if bool(got) != bool(want):
                    failures.append("%s = %s, expected %s" % (key, got, want))
            elif isinstance(want, (int, float)):
                if abs(float(got) - float(want)) > max(eps, 1e-9):
                    failures.append("%s = %s, expected %s" % (key, got, want))
            else:
                failures.append("%s has non-numeric expectation %r" % (key, want))
        else:
            failures.append("no value named %s in the result" % key)
    return failures


def run_scenario_dict(data):
    """Execute one parsed scenario; returns (report dict, printable lines)."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    name = data.get("name", "unnamed")
    seed = int(data.get("seed", 0))
    eps = float(data.get("eps", 1e-8))
    tasks = data.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        raise ScenarioError("scenario needs a nonempty task list")
    model = build_model(data.get("model"), seed=seed)
    results = []
    all_pass = True
    for task in tasks:
        if not isinstance(task, dict) or "task" not in task:
            raise ScenarioError("each task must be an object with a 'task' field")
        expect = task.get("expect", {})
        entry = {"task": task["task"]}
        try:
            outcome = _run_task(task, model, eps, seed)
            entry.update(outcome)
            failures = _check_expect(expect, outcome, eps)
            if expect.get("error"):
                failures.append("expected error %s was not raised" % expect["error"])
            entry["pass"] = not failures
            if failures:
                entry["failures"] = failures
        except ScenarioError:
            raise
        except AlgebraError as exc:
            entry["error"] = type(exc).__name__
            entry["message"] = str(exc)
            entry["pass"] = expect.get("error") == type(exc).__name__
        all_pass &= entry["pass"]
        results.append(entry)
    report = _round_tree({"name": name, "seed": seed, "eps": eps, "results": results, "pass": all_pass})
    return report, format_report(report)


def format_report(report):
    lines = ["scenario %s (seed %d)" % (report["name"], report["seed"])]
    for entry in report["results"]:
        lines.append("task %s: %s" % (entry["task"], "pass" if entry["pass"] else "FAIL"))
        for key in sorted(entry.get("numbers", {})):
            val = entry["numbers"][key]
            if isinstance(val, list):
                lines.append("  %s = %s" % (key, json.dumps(val)))
            elif isinstance(val, float):
                lines.append("  %s = %.12g" % (key, val))
            else:
                lines.append("  %s = %s" % (key, val))
        for key in sorted(entry.get("flags", {})):
            lines.append("  %s = %s" % (key, "true" if entry["flags"][key] else "false"))
        for note in entry.get("notes", []):
            lines.append("  note: %s" % note)
        for issue in entry.get("issues", []):
            lines.append("  issue: %s" % issue)
        if "error" in entry:
            lines.append("  error: %s: %s" % (entry["error"], entry.get("message", "")))
        for f in entry.get("failures", []):
            lines.append("  mismatch: %s" % f)
    lines.append("result: %s" % ("pass" if report["pass"] else "FAIL"))
    return lines


def load_scenario(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ScenarioError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ScenarioError("parse error in %s at line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg))


def dump_report(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def selftest_corpus():
    """Built-in scenarios covering every task kind with frozen expectations."""
    rot = [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]]
    return [
        {
            "name": "c-in-c",
            "seed": 0,
            "model": {"kind": "explicit", "dims": [1], "inclusion": [[1]], "trace": [1.0]},
            "tasks": [
                {"task": "markov", "expect": {"beta": 1.0}},
                {"task": "classify_system", "elements": "identity", "expect": {"basis": True, "orthonormal": True}},
                {"task": "watatani", "elements": "identity", "expect": {"scalar": 1.0}},
                {"task": "construct_with_support", "f": "one", "expect": {"basis": True, "size": 1}},
                {"task": "regular_pipeline", "expect": {"regular": True, "basis_size": 1, "beta": 1.0}},
            ],
        },
        {
            "name": "diag-in-m2",
            "seed": 0,
            "model": {"kind": "diagonal_in_matrix", "k": 2},
            "tasks": [
                {"task": "markov", "expect": {"beta": 2.0}},
                {"task": "construct_with_support", "f": "e1", "expect": {"size": 1, "orthonormal": True}},
                {"task": "construct_with_support", "f": {"m1_central": 0}, "mode": "general", "expect": {"size": 2}},
                {
                    "task": "construct_with_support",
                    "f": {"m1_central": 0},
                    "mode": "orthonormal-padded",
                    "expect": {"error": "InfeasibleSupport"},
                },
                {"task": "complete_to_basis", "f": "e1", "expect": {"basis": True, "prefix_preserved": True}},
                {
                    "task": "regular_pipeline",
                    "expect": {"regular": True, "basis_size": 2, "beta": 2.0, "product": 4},
                },
            ],
        },
        {
            "name": "scalars-in-c+m2",
            "seed": 0,
            "model": {"kind": "explicit", "dims": [1], "inclusion": [[1, 2]], "trace": "markov"},
            "tasks": [
                {"task": "markov", "expect": {"beta": 5.0}},
                {"task": "classify_system", "elements": "scalar_basis", "expect": {"basis": True, "system": True}},
                {"task": "watatani", "elements": "scalar_basis", "expect": {"scalar": 5.0, "central": True}},
                {"task": "path_basis", "expect": {"orthogonal": True, "system": True}},
            ],
        },
        {
            "name": "m2-in-m2+m2",
            "seed": 0,
            "model": {
                "kind": "explicit",
                "dims": [2],
                "inclusion": [[1, 1]],
                "trace": [0.25, 0.25],
                "candidates": [
                    [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]], [[[-1, 0], [0, 0]], [[0, 0], [-1, 0]]]],
                    [rot, rot],
                ],
            },
            "tasks": [
                {"task": "markov", "expect": {"beta": 2.0}},
                {
                    "task": "regular_pipeline",
                    "expect": {"regular": True, "reps": 1, "product": 2, "basis_size": 2, "watatani_scalar": 2.0},
                },
            ],
        },
        {
            "name": "masa-quadruple",
            "seed": 0,
            "model": {"kind": "quadruple", "which": "masa"},
            "tasks": [
                {"task": "interchange", "expect": {"projection": True}},
                {"task": "commuting_square", "expect": {"commuting": True}},
            ],
        },
        {
            "name": "degenerate-quadruple",
            "seed": 0,
            "model": {"kind": "quadruple", "which": "degenerate"},
            "tasks": [
                {"task": "interchange", "expect": {"projection": False}},
                {"task": "commuting_square", "expect": {"commuting": False}},
            ],
        },
        {
            "name": "group-z2",
            "seed": 0,
            "model": {"kind": "group_algebra_pair", "group": "cyclic:2", "subgroup": [0]},
            "tasks": [
                {"task": "markov", "expect": {"beta": 2.0}},
                {"task": "regular_pipeline", "expect": {"regular": True, "basis_size": 2, "product": 2}},
            ],
        },
        {
            "name": "crossed-z3",
            "seed": 0,
            "model": {"kind": "crossed_product", "base_dims": [1, 1, 1], "group": "cyclic:3", "action": "cyclic_shift"},
            "tasks": [
                {"task": "markov", "expect": {"beta": 3.0}},
                {"task": "regular_pipeline", "expect": {"regular": True, "basis_size": 3}},
            ],
        },
    ]


def run_selftest():
    """Run the built-in corpus; returns (aggregate report, printable lines)."""
    reports = []
    lines = []
    ok = True
    for data in selftest_corpus():
        report, rep_lines = run_scenario_dict(data)
        reports.append(report)
        lines.extend(rep_lines)
        lines.append("")
        ok &= report["pass"]
    aggregate = {"scenarios": reports, "pass": ok}
    lines.append("selftest: %s" % ("pass" if ok else "FAIL"))
    return aggregate, lines
