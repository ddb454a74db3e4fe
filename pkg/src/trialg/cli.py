"""Configuration-driven command line front end.

``trialg run --config cfg.json`` builds an algebra instance, runs an ordered
task list (center / sigma_center / solve:<kind> / decompose:<kind> /
verify:<theorem>) and writes a JSON report.  Scalars are serialized as
strings ("num/den" over Q) so exactness survives the wire; reports contain no
timestamps or environment data, making identical config+seed runs
byte-identical.

Exit codes: 0 when every verification task passes, 1 when any verification
task fails or errors, 2 on configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    CenterData,
    FDAlgebra,
    TriangularAlgebra,
    center,
    center_subspace,
    has_only_trivial_idempotents_bruteforce,
    sigma_center,
    sigma_center_subspace,
)
from .errors import ConfigError, TrialgError
from .families import (
    Fixture,
    block_upper,
    fixture_n3,
    fixture_trian_AA0,
    full_matrix_algebra,
    trian_trunc,
    trunc_poly,
    upper_triangular,
)
from .fields import Field, field_from_spec, field_to_spec
from .linalg import Matrix, Subspace, vec_add, vec_scale
from .maps import SOLVE_KINDS, LinearEndo, is_automorphism, solve_space
from .structure import (
    AutParts,
    centralizing_conditions,
    commuting_criterion,
    compose_automorphism,
    decompose_automorphism,
    decompose_centralizing,
    decompose_generalized,
    decompose_left_multiplier,
    decompose_sigma_derivation,
)
from .theorems import (
    verify_gd_left_mult,
    verify_mayne,
    verify_posner,
    verify_sharma_dhara,
    verify_skew_zero,
)

SCHEMA_VERSION = 1

VERIFY_TASKS = ("posner", "mayne", "skew_zero", "sharma_dhara", "gd_left_mult")
DECOMPOSE_KINDS = (
    "automorphism",
    "derivation",
    "sigma_derivation",
    "centralizing",
    "commuting",
    "generalized_pair",
    "left_multiplier",
)


# ---------------------------------------------------------------------------
# serialization


def fmt_scalar(field: Field, x) -> str:
    return field.format(x)


def fmt_vector(field: Field, v) -> list[str]:
    return [field.format(x) for x in v]


def fmt_matrix(field: Field, m: Matrix) -> list[list[str]]:
    return [fmt_vector(field, row) for row in m.entries]


def fmt_subspace(field: Field, s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [fmt_vector(field, v) for v in s.basis]}


def parse_scalar(field: Field, x):
    if isinstance(x, str):
        return field.parse(x)
    if isinstance(x, int):
        return field.from_int(x)
    raise ConfigError("scalar", f"expected string or integer, got {x!r}")


def parse_vector(field: Field, xs) -> tuple:
    return tuple(parse_scalar(field, x) for x in xs)


def parse_matrix(field: Field, rows) -> Matrix:
    return Matrix(field, [parse_vector(field, r) for r in rows])


# ---------------------------------------------------------------------------
# config handling


class Instance:
    """A built algebra instance: always an FDAlgebra, sometimes triangular."""

    def __init__(self, name: str, algebra: FDAlgebra, t: TriangularAlgebra | None = None,
                 fixture: Fixture | None = None):
        self.name = name
        self.algebra = algebra
        self.t = t
        self.fixture = fixture

    def require_triangular(self, where: str) -> TriangularAlgebra:
        if self.t is None:
            raise ConfigError(where, f"task needs a triangular algebra, {self.name} is not one")
        return self.t


def build_instance(field: Field, spec, where: str = "algebra") -> Instance:
    if not isinstance(spec, dict):
        raise ConfigError(where, "algebra spec must be an object")
    family = spec.get("family")
    try:
        if family == "Tn":
            n = int(spec["n"])
            split = int(spec.get("split", 1))
            t = upper_triangular(n, field, split)
            return Instance(f"T{n}(split={split})", t.algebra, t)
        if family == "block":
            dims = tuple(int(d) for d in spec["dims"])
            split = int(spec.get("split", 1))
            t = block_upper(dims, split, field)
            return Instance(f"block{dims}(split={split})", t.algebra, t)
        if family == "trian_trunc":
            N = int(spec["N"])
            t = trian_trunc(N, field)
            return Instance(f"trian_trunc({N})", t.algebra, t)
        if family == "trunc_poly":
            N = int(spec["N"])
            return Instance(f"trunc_poly({N})", trunc_poly(N, field))
        if family == "matrix":
            n = int(spec["n"])
            return Instance(f"M{n}", full_matrix_algebra(n, field))
        if family == "fixture":
            name = spec.get("name")
            if name == "n3":
                fx = fixture_n3(field)
            elif name == "trian_AA0":
                fx = fixture_trian_AA0(int(spec.get("N", 4)), field)
            else:
                raise ConfigError(where, f"unknown fixture {name!r}")
            return Instance(fx.name, fx.algebra, fixture=fx)
        if family is None and "table" in spec:
            labels = spec.get("labels") or [f"e{i}" for i in range(len(spec["table"]))]
            table = [[parse_vector(field, v) for v in row] for row in spec["table"]]
            unit = parse_vector(field, spec["unit"]) if spec.get("unit") is not None else None
            alg = FDAlgebra(field, labels, table, unit, bool(spec.get("only_trivial_idempotents", False)))
            return Instance("inline", alg)
    except ConfigError:
        raise
    except (KeyError, TypeError) as exc:
        raise ConfigError(where, f"bad algebra spec: {exc}") from exc
    except (TrialgError, ValueError) as exc:
        raise ConfigError(where, str(exc)) from exc
    raise ConfigError(where, f"unknown algebra family {family!r}")


def build_sigma(instance: Instance, spec, where: str = "sigma") -> LinearEndo:
    alg = instance.algebra
    field = alg.field
    if spec in (None, "identity"):
        return LinearEndo.identity(alg)
    if not isinstance(spec, dict):
        raise ConfigError(where, f"bad sigma spec {spec!r}")
    try:
        if "fixture_map" in spec:
            if instance.fixture is None:
                raise ConfigError(where, "fixture_map needs a fixture instance")
            name = spec["fixture_map"]
            if name not in instance.fixture.maps:
                raise ConfigError(where, f"fixture has no map {name!r}")
            return instance.fixture.maps[name]
        if "diag_signs" in spec:
            t = instance.require_triangular(where)
            signs = spec["diag_signs"]
            if len(signs) != 2:
                raise ConfigError(where, "diag_signs must give one sign per diagonal corner")
            sa, sb = (parse_scalar(field, s) for s in signs)
            if not sa or not sb:
                raise ConfigError(where, "diagonal signs must be invertible")
            u = vec_add(field, vec_scale(field, sa, t.p), vec_scale(field, sb, t.q))
            return _conjugation_endo(alg, u, where)
        if "conjugate_by" in spec:
            u = parse_vector(field, spec["conjugate_by"])
            return _conjugation_endo(alg, u, where)
        if "matrix" in spec:
            endo = LinearEndo(alg, parse_matrix(field, spec["matrix"]))
            chk = is_automorphism(endo)
            if not chk.ok:
                raise ConfigError(where, f"matrix is not an automorphism: {chk.witness}")
            return endo
        if "parts" in spec:
            t = instance.require_triangular(where)
            p = spec["parts"]
            parts = AutParts(
                t,
                parse_matrix(field, p["f"]),
                parse_matrix(field, p["g"]),
                parse_vector(field, p["m_sigma"]),
                parse_matrix(field, p["nu"]),
            )
            return compose_automorphism(t, parts)
    except ConfigError:
        raise
    except (KeyError, TypeError) as exc:
        raise ConfigError(where, f"bad sigma spec: {exc}") from exc
    except (TrialgError, ValueError) as exc:
        raise ConfigError(where, str(exc)) from exc
    raise ConfigError(where, f"unknown sigma spec {spec!r}")


def _conjugation_endo(alg: FDAlgebra, u, where: str) -> LinearEndo:
    if not alg.is_unital:
        raise ConfigError(where, "conjugation needs a unital algebra")
    inv = alg.left_mul_matrix(u).inverse()
    if inv is None:
        raise ConfigError(where, "conjugating element is not invertible")
    u_inv = inv.mul_vec(alg.unit)
    return LinearEndo(alg, alg.left_mul_matrix(u) @ alg.right_mul_matrix(u_inv))


# ---------------------------------------------------------------------------
# task execution


def _endo_record(field: Field, endo: LinearEndo) -> list[list[str]]:
    return fmt_matrix(field, endo.matrix)


def _run_center(instance: Instance) -> dict:
    field = instance.algebra.field
    if instance.t is None:
        space = center_subspace(instance.algebra)
        return {"center": fmt_subspace(field, space)}
    data: CenterData = center(instance.t)
    return {
        "center": fmt_subspace(field, data.center),
        "piA_center": fmt_subspace(field, data.piA_center),
        "piB_center": fmt_subspace(field, data.piB_center),
        "tau": fmt_matrix(field, data.tau),
    }


def _run_sigma_center(instance: Instance, sigma: LinearEndo) -> dict:
    field = instance.algebra.field
    if instance.t is None:
        chk = is_automorphism(sigma)
        if not chk.ok:
            from .errors import NotAutomorphism

            raise NotAutomorphism(chk.witness)
        space = sigma_center_subspace(instance.algebra, sigma.matrix)
        return {"sigma_center": fmt_subspace(field, space)}
    data = sigma_center(instance.t, sigma)
    out = {
        "sigma_center": fmt_subspace(field, data.sigma_center),
        "piA_part": fmt_subspace(field, data.piA_part),
        "piB_part": fmt_subspace(field, data.piB_part),
    }
    if data.eta is not None:
        out["eta"] = fmt_matrix(field, data.eta)
    return out


def _run_solve(instance: Instance, sigma: LinearEndo, kind: str) -> dict:
    field = instance.algebra.field
    space = solve_space(instance.algebra, sigma, kind)
    out = {"kind": kind, "dim": space.dim}
    if space.pair:
        out["basis"] = [
            {"D": _endo_record(field, D), "d": _endo_record(field, d)}
            for D, d in space.endo_pairs()
        ]
    else:
        out["basis"] = [_endo_record(field, e) for e in space.endos()]
    return out


def _run_decompose(instance: Instance, sigma: LinearEndo, kind: str) -> dict:
    field = instance.algebra.field
    t = instance.require_triangular(f"decompose:{kind}")
    if kind == "automorphism":
        parts = decompose_automorphism(t, sigma)
        return {
            "kind": kind,
            "f_sigma": fmt_matrix(field, parts.f_sigma),
            "g_sigma": fmt_matrix(field, parts.g_sigma),
            "m_sigma": fmt_vector(field, parts.m_sigma),
            "nu_sigma": fmt_matrix(field, parts.nu_sigma),
            "round_trip": True,
        }
    members = []
    if kind in ("derivation", "sigma_derivation"):
        effective = LinearEndo.identity(instance.algebra) if kind == "derivation" else sigma
        space = solve_space(instance.algebra, effective, kind)
        for endo in space.endos():
            parts = decompose_sigma_derivation(t, effective, endo)
            members.append(
                {
                    "d_A": fmt_matrix(field, parts.d_A),
                    "d_B": fmt_matrix(field, parts.d_B),
                    "m_d": fmt_vector(field, parts.m_d),
                    "xi": fmt_matrix(field, parts.xi),
                    "round_trip": True,
                }
            )
    elif kind in ("centralizing", "commuting"):
        space = solve_space(instance.algebra, sigma, kind)
        for endo in space.endos():
            parts = decompose_centralizing(t, sigma, endo)
            conditions = centralizing_conditions(parts, endo)
            members.append(
                {
                    "delta1": fmt_matrix(field, parts.delta1),
                    "delta2": fmt_matrix(field, parts.delta2),
                    "delta3": fmt_matrix(field, parts.delta3),
                    "mu1": fmt_matrix(field, parts.mu1),
                    "mu2": fmt_matrix(field, parts.mu2),
                    "mu3": fmt_matrix(field, parts.mu3),
                    "conditions": {label: bool(res) for label, res in conditions.items()},
                    "commuting_criterion": commuting_criterion(parts),
                    "round_trip": True,
                }
            )
    elif kind == "generalized_pair":
        space = solve_space(instance.algebra, sigma, kind)
        for D, d in space.endo_pairs():
            parts = decompose_generalized(t, sigma, D, d)
            members.append(
                {
                    "D_A": fmt_matrix(field, parts.D_A),
                    "D_B": fmt_matrix(field, parts.D_B),
                    "m_D": fmt_vector(field, parts.m_D),
                    "m_d": fmt_vector(field, parts.m_d),
                    "xi": fmt_matrix(field, parts.xi),
                    "display_form_matches": parts.display_matches,
                    "round_trip": True,
                }
            )
    elif kind == "left_multiplier":
        space = solve_space(instance.algebra, None, kind)
        for endo in space.endos():
            parts = decompose_left_multiplier(t, endo)
            members.append(
                {
                    "F_A": fmt_matrix(field, parts.F_A),
                    "F_B": fmt_matrix(field, parts.F_B),
                    "m_F": fmt_vector(field, parts.m_F),
                    "round_trip": True,
                }
            )
    else:
        raise ConfigError("tasks", f"unknown decompose kind {kind!r}")
    return {"kind": kind, "dim": len(members), "members": members}


def _run_verify(instance: Instance, sigma: LinearEndo, name: str, seed: int, samples: int) -> dict:
    if name == "posner":
        report = verify_posner(instance.require_triangular("verify:posner"), sigma, instance.name)
    elif name == "mayne":
        report = verify_mayne(
            instance.require_triangular("verify:mayne"), samples=samples, seed=seed, instance=instance.name
        )
    elif name == "skew_zero":
        report = verify_skew_zero(instance.require_triangular("verify:skew_zero"), sigma, instance.name)
    elif name == "sharma_dhara":
        report = verify_sharma_dhara(instance.algebra, instance.name)
    elif name == "gd_left_mult":
        report = verify_gd_left_mult(instance.require_triangular("verify:gd_left_mult"), instance.name)
    else:
        raise ConfigError("tasks", f"unknown verification {name!r}")
    out = {
        "theorem": report.theorem,
        "instance": report.instance,
        "passed": report.passed,
        "dimensions": dict(sorted(report.dimensions.items())),
        "details": {k: report.details[k] for k in sorted(report.details)},
    }
    if report.witness is not None:
        out["witness"] = fmt_matrix(instance.algebra.field, report.witness)
    return out


def run_config(config: dict) -> tuple[dict, int]:
    """Execute a parsed config; returns (report, exit_code)."""
    if not isinstance(config, dict):
        raise ConfigError("config", "top level must be an object")
    version = config.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"unsupported schema version {version!r}")
    field = _field_from_config(config)
    instance = build_instance(field, config.get("algebra"), "algebra")
    sigma = build_sigma(instance, config.get("sigma"), "sigma")
    tasks = config.get("tasks")
    if not isinstance(tasks, list) or not all(isinstance(x, str) for x in tasks):
        raise ConfigError("tasks", "tasks must be a list of strings")
    seed = int(config.get("seed", 0))
    samples = int(config.get("samples", 50))
    bound = int(config.get("enumeration_bound", 200_000))
    _validate_tasks(tasks)
    flags_certified = _certify_flags(instance, bound)

    records = []
    verify_failures = 0
    for task in tasks:
        record = {"task": task}
        try:
            if task == "center":
                record.update(_run_center(instance))
                record["status"] = "ok"
            elif task == "sigma_center":
                record.update(_run_sigma_center(instance, sigma))
                record["status"] = "ok"
            elif task.startswith("solve:"):
                record.update(_run_solve(instance, sigma, task.split(":", 1)[1]))
                record["status"] = "ok"
            elif task.startswith("decompose:"):
                record.update(_run_decompose(instance, sigma, task.split(":", 1)[1]))
                record["status"] = "ok"
            elif task.startswith("verify:"):
                result = _run_verify(instance, sigma, task.split(":", 1)[1], seed, samples)
                record.update(result)
                record["status"] = "pass" if result["passed"] else "fail"
                if not result["passed"]:
                    verify_failures += 1
        except (TrialgError, ValueError) as exc:
            record["status"] = "error"
            record["error"] = f"{type(exc).__name__}: {exc}"
            if task.startswith("verify:"):
                verify_failures += 1
        records.append(record)

    report = {
        "schema_version": SCHEMA_VERSION,
        "field": field_to_spec(field),
        "instance": instance.name,
        "seed": seed,
        "idempotent_flags_certified": flags_certified,
        "tasks": records,
    }
    return report, (1 if verify_failures else 0)


def _certify_flags(instance: Instance, bound: int) -> bool | None:
    """Over a prime field, brute-force check the declared idempotent flags of
    the diagonal components when the enumeration fits inside the bound."""
    from .errors import EnumerationTooLarge, StructuralMismatch

    if instance.t is None or instance.algebra.field.char == 0:
        return None
    certified = True
    for side in (instance.t.A, instance.t.B):
        try:
            actual = has_only_trivial_idempotents_bruteforce(side, bound)
        except EnumerationTooLarge:
            certified = False
            continue
        if actual != side.only_trivial_idempotents:
            raise StructuralMismatch("declared idempotent flag contradicts brute-force enumeration")
    return certified


def _field_from_config(config: dict) -> Field:
    try:
        return field_from_spec(config.get("field", "rational"))
    except ValueError as exc:
        raise ConfigError("field", str(exc)) from exc


def _validate_tasks(tasks: list[str]) -> None:
    for task in tasks:
        if task in ("center", "sigma_center"):
            continue
        if task.startswith("solve:") and task.split(":", 1)[1] in SOLVE_KINDS:
            continue
        if task.startswith("decompose:") and task.split(":", 1)[1] in DECOMPOSE_KINDS:
            continue
        if task.startswith("verify:") and task.split(":", 1)[1] in VERIFY_TASKS:
            continue
        raise ConfigError("tasks", f"unknown task {task!r}")


# ---------------------------------------------------------------------------
# fixtures catalog


def fixtures_catalog() -> list[dict]:
    from .fields import QQ

    entries = []
    for fx, params in ((fixture_n3(QQ), {}), (fixture_trian_AA0(4, QQ), {"N": 4})):
        entries.append(
            {
                "name": fx.name,
                "description": fx.description,
                "params": params,
                "dim": fx.algebra.dim,
                "maps": sorted(fx.maps),
                "checks": list(fx.checks),
            }
        )
    return entries


# ---------------------------------------------------------------------------
# entry point


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="trialg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run tasks from a JSON config")
    p_run.add_argument("--config", required=True, help="path to the JSON config")
    p_run.add_argument("--out", help="write the JSON report here instead of stdout")
    p_run.add_argument("--seed", type=int, help="override the config seed")

    sub.add_parser("fixtures", help="list the built-in fixtures")

    p_solve = sub.add_parser("solve", help="solve one map space for a family")
    p_solve.add_argument("--family", required=True, choices=["Tn", "block", "trian_trunc", "matrix"])
    p_solve.add_argument("--n", type=int, help="size for Tn / matrix")
    p_solve.add_argument("--N", type=int, help="truncation order for trian_trunc")
    p_solve.add_argument("--dims", help="comma-separated block sizes for block")
    p_solve.add_argument("--split", type=int, default=1)
    p_solve.add_argument("--kind", required=True, choices=list(SOLVE_KINDS))
    p_solve.add_argument("--prime", type=int, help="use F_p instead of Q")
    p_solve.add_argument("--out")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            with open(args.config) as fh:
                config = json.load(fh)
            if args.seed is not None:
                config["seed"] = args.seed
            report, code = run_config(config)
            _emit(report_to_json(report), args.out)
            return code
        if args.command == "fixtures":
            _emit(report_to_json({"schema_version": SCHEMA_VERSION, "fixtures": fixtures_catalog()}), None)
            return 0
        if args.command == "solve":
            config = _solve_args_to_config(args)
            report, code = run_config(config)
            _emit(report_to_json(report), args.out)
            return code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return 2


def _solve_args_to_config(args) -> dict:
    if args.family == "Tn":
        if args.n is None:
            raise ConfigError("solve", "--n is required for Tn")
        algebra = {"family": "Tn", "n": args.n, "split": args.split}
    elif args.family == "matrix":
        if args.n is None:
            raise ConfigError("solve", "--n is required for matrix")
        algebra = {"family": "matrix", "n": args.n}
    elif args.family == "trian_trunc":
        if args.N is None:
            raise ConfigError("solve", "--N is required for trian_trunc")
        algebra = {"family": "trian_trunc", "N": args.N}
    else:
        if not args.dims:
            raise ConfigError("solve", "--dims is required for block")
        algebra = {"family": "block", "dims": [int(d) for d in args.dims.split(",")], "split": args.split}
    field = {"prime": args.prime} if args.prime else "rational"
    return {"field": field, "algebra": algebra, "sigma": "identity", "tasks": [f"solve:{args.kind}"]}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
