"""Command-line front end.

Subcommands: solve, verify, sweep, blaschke, roundtrip.  Inputs and results
are JSON (complex numbers as [re, im] pairs), sweeps are CSV, plots are SVG.
Exit codes are disjoint: 0 success, 1 input error, 2 unsolvable or
inapplicable, 3 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from ._svg import Panel, write_panels_svg
from .blaschke import (
    build_parametrization,
    circle_grid,
    phasar_derivative,
    solve_blaschke,
    to_blaschke_product,
)
from .errors import (
    ExceptionalZeta,
    InvalidData,
    MultiplicityAboveOne,
    RoyalGammaError,
    RoyalRange,
)
from .gamma import (
    GammaInnerFn,
    classify_point,
    extract_royal_data,
    gamma_inner_distance,
    generate_h_nu,
    solve_royal_problem,
    verify_royal_solution,
)
from .pick import BlaschkeData, build_pick_matrix, check_positive_definite, choose_tau
from .polyrat import DEFAULT_TOLERANCES

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSOLVABLE = 2
EXIT_VERIFICATION = 3

TAU_SEED_ENV = "ROYAL_GAMMA_SEED_TAU"
ROUNDTRIP_MATCH_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with the input-error code."""

    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclasses.dataclass
class JobConfig:
    command: str
    input: str | None
    output: str | None
    tol: float | None
    omega_grid: int
    plot: bool
    generator: str | None
    nu: int
    r: float

    def validate(self) -> None:
        if not 8 <= self.omega_grid <= 65536:
            raise InvalidData(f"--omega-grid must lie in [8, 65536], got {self.omega_grid}")
        if self.tol is not None and not self.tol > 0:
            raise InvalidData("--tol must be strictly positive")
        needs_input = {
            "solve": True,
            "sweep": True,
            "blaschke": True,
            "verify": self.generator is None,
            "roundtrip": self.generator is None,
        }[self.command]
        if needs_input and not self.input:
            raise InvalidData(f"{self.command} requires --input (or --generator where supported)")
        if self.command == "sweep" and not self.output:
            raise InvalidData("sweep requires --output for the CSV table")
        if self.generator is not None and self.generator != "h_nu":
            raise InvalidData(f"unknown generator {self.generator!r}; supported: h_nu")

    @property
    def policy(self):
        if self.tol is None:
            return DEFAULT_TOLERANCES
        return dataclasses.replace(DEFAULT_TOLERANCES, residual_tol=self.tol)


def _build_parser() -> _Parser:
    parser = _Parser(prog="royalgamma", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in [
        ("solve", "solve the royal interpolation problem from a data file"),
        ("verify", "verify a candidate map against interpolation data"),
        ("sweep", "tabulate a one-parameter solution family as CSV"),
        ("blaschke", "solve the scalar interpolation problem and emit its parametrization"),
        ("roundtrip", "extract data from a map, re-solve, and match the original"),
    ]:
        p = sub.add_parser(name, help=desc)
        p.add_argument("--input", default=None, help="input JSON path")
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument("--tol", type=float, default=None, help="verification tolerance override")
        p.add_argument("--omega-grid", type=int, default=256, dest="omega_grid",
                       help="parameter grid size in [8, 65536]")
        p.add_argument("--plot", action="store_true", help="also write an SVG plot")
        p.add_argument("--generator", default=None, help="built-in generator name (h_nu)")
        p.add_argument("--nu", type=int, default=0, help="generator index parameter")
        p.add_argument("--r", type=float, default=0.5, help="generator radius parameter in (0, 1)")
    return parser


def _tau_start() -> int:
    raw = os.environ.get(TAU_SEED_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise InvalidData(f"{TAU_SEED_ENV} must be an integer, got {raw!r}")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InvalidData(f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InvalidData(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _c(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _load_gamma_inner(obj, tol):
    if isinstance(obj, dict) and "s" in obj and "p" in obj:
        return GammaInnerFn.from_json_dict(obj, tol)
    raise InvalidData('expected a map object with "s" and "p" components')


def _obtain_h(config: JobConfig):
    if config.generator == "h_nu":
        if not 0.0 < config.r < 1.0:
            raise InvalidData("--r must lie strictly between 0 and 1")
        if config.nu < 0:
            raise InvalidData("--nu must be a non-negative integer")
        return generate_h_nu(config.nu, config.r, config.policy)
    payload = _read_json(config.input)
    if isinstance(payload, dict) and "h" in payload:
        payload = payload["h"]
    return _load_gamma_inner(payload, config.policy)


def _solution_json(sol) -> dict:
    return {
        "omega": None if sol.omega is None else _c(sol.omega),
        "t": sol.t,
        "s0": _c(sol.s0),
        "p0": _c(sol.p0),
        "h": sol.h.to_json_dict(),
        "report": sol.report.to_json_dict(),
    }


def cmd_solve(config: JobConfig) -> int:
    data = BlaschkeData.from_json_dict(_read_json(config.input))
    result = solve_royal_problem(
        data,
        tol=config.policy,
        omega_grid=config.omega_grid,
        tau_start=_tau_start(),
    )
    if result.status != "solved":
        payload = {
            "status": "not_solvable",
            "failed_step": result.failed_step,
            "reason": result.reason,
        }
        _write_text(config.output, _dump(payload))
        print(f"not solvable at step {result.failed_step}: {result.reason}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    payload = {
        "status": "solved",
        "tau": _c(result.tau),
        "pick_min_eigenvalue": result.positivity.min_eigenvalue,
        "s0p0_kind": result.s0p0.kind,
        "s0p0_degenerate": result.s0p0.degenerate,
        "solutions": [_solution_json(s) for s in result.solutions],
        "verified_count": len(result.verified),
    }
    _write_text(config.output, _dump(payload))
    if not result.verified:
        print("solutions constructed but none verified", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_verify(config: JobConfig) -> int:
    tol = config.policy
    data = None
    if config.generator is not None:
        h = _obtain_h(config)
    else:
        payload = _read_json(config.input)
        if isinstance(payload, dict) and "h" in payload:
            h = _load_gamma_inner(payload["h"], tol)
            if payload.get("data") is not None:
                data = BlaschkeData.from_json_dict(payload["data"])
        else:
            h = _load_gamma_inner(payload, tol)

    if data is None:
        try:
            data = extract_royal_data(h, tol)
        except RoyalRange:
            payload = {"pass": False, "royal_range": True,
                       "failures": ["royal_range: the map sends the disc into the royal variety"]}
            _write_text(config.output, _dump(payload))
            print("verification failed: royal range", file=sys.stderr)
            return EXIT_VERIFICATION
        except MultiplicityAboveOne as exc:
            print(f"inapplicable: {exc}", file=sys.stderr)
            return EXIT_UNSOLVABLE

    report = verify_royal_solution(h, data, tol)
    grid = circle_grid(256)
    counts: dict[str, int] = {}
    for z in grid:
        label = classify_point(h(z), tol).value
        counts[label] = counts.get(label, 0) + 1
    payload = report.to_json_dict()
    payload["boundary_classification_counts"] = dict(sorted(counts.items()))
    _write_text(config.output, _dump(payload))
    if not report.passed:
        print("verification failed: " + "; ".join(report.failures), file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def _sweep_rows(result):
    n = result.data.n
    header = ["omega_re", "omega_im", "t", "s0_re", "s0_im", "p0_re", "p0_im"]
    for stem in ("s_num", "p_num", "den"):
        for j in range(n + 1):
            header += [f"{stem}_{j}_re", f"{stem}_{j}_im"]
    header.append("max_residual")
    rows = [header]
    for sol in result.solutions:
        row = [repr(float(sol.omega.real)), repr(float(sol.omega.imag)), repr(float(sol.t)),
               repr(float(sol.s0.real)), repr(float(sol.s0.imag)),
               repr(float(sol.p0.real)), repr(float(sol.p0.imag))]
        for poly in (sol.h.s.num, sol.h.p.num, sol.h.den):
            coeffs = np.zeros(n + 1, dtype=complex)
            coeffs[: poly.coeffs.size] = poly.coeffs
            for c in coeffs:
                row += [repr(float(c.real)), repr(float(c.imag))]
        row.append(repr(max(sol.report.residuals.values())))
        rows.append(row)
    return rows


def _sweep_plot(path: str, result) -> None:
    theta = np.linspace(0.0, 2.0 * np.pi, 181)
    ring = np.exp(1j * theta)
    solutions = result.solutions
    step = max(1, len(solutions) // 16)
    sampled = solutions[::step]
    node_angles = [float(np.angle(s) % (2 * np.pi)) for s in result.data.sigma[: result.data.k]]
    s_panel = Panel(title="|s| on the circle, per sampled parameter", marker_xs=node_angles)
    p_panel = Panel(title="arg p on the circle, per sampled parameter", marker_xs=node_angles)
    for sol in sampled:
        s_vals = sol.h.s(ring)
        p_vals = sol.h.p(ring)
        s_panel.curves.append((theta.tolist(), np.abs(s_vals).tolist()))
        p_panel.curves.append((theta.tolist(), np.unwrap(np.angle(p_vals)).tolist()))
    write_panels_svg(path, [s_panel, p_panel])


def cmd_sweep(config: JobConfig) -> int:
    data = BlaschkeData.from_json_dict(_read_json(config.input))
    result = solve_royal_problem(
        data,
        tol=config.policy,
        omega_grid=config.omega_grid,
        tau_start=_tau_start(),
    )
    if result.status != "solved":
        print(f"not solvable at step {result.failed_step}: {result.reason}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    if result.s0p0.kind != "family":
        print(f"nothing to sweep: base values are {result.s0p0.kind}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    rows = _sweep_rows(result)
    buf = []
    for row in rows:
        buf.append(",".join(row))
    _write_text(config.output, "\n".join(buf) + "\n")
    if config.plot:
        stem, _, _ = config.output.rpartition(".")
        _sweep_plot((stem or config.output) + ".svg", result)
    return EXIT_OK


def cmd_blaschke(config: JobConfig) -> int:
    tol = config.policy
    data = BlaschkeData.from_json_dict(_read_json(config.input))
    M = build_pick_matrix(data, tol)
    positivity = check_positive_definite(M, tol)
    if positivity.kind != "definite":
        print(f"not solvable at step 1: Pick matrix is {positivity.kind}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    tau = choose_tau(M, data, tol, start=_tau_start())
    param = build_parametrization(M, data, tau, tol)
    solutions = []
    for zeta in circle_grid(min(config.omega_grid, 64)):
        try:
            phi = solve_blaschke(param, zeta, tol)
        except ExceptionalZeta:
            continue
        interp = max(abs(phi(s) - e) for s, e in zip(data.sigma, data.eta))
        phasar = 0.0
        for j in range(data.k):
            phasar = max(phasar, abs(float(phasar_derivative(phi, data.sigma[j], tol)) - data.rho[j]))
        entry = {
            "zeta": _c(complex(zeta)),
            "rational": phi.to_json_dict(),
            "max_interp_residual": float(interp),
            "max_phasar_residual": float(phasar),
        }
        try:
            product = to_blaschke_product(phi, tol)
            entry["blaschke"] = product.to_json_dict()
        except RoyalGammaError as exc:
            entry["blaschke_error"] = str(exc)
        solutions.append(entry)
    payload = {
        "tau": _c(tau),
        "pick_min_eigenvalue": positivity.min_eigenvalue,
        "parametrization": param.to_json_dict(),
        "exceptional_points": [_c(z) for z in param.exceptional.points],
        "solutions": solutions,
    }
    _write_text(config.output, _dump(payload))
    return EXIT_OK


def cmd_roundtrip(config: JobConfig) -> int:
    tol = config.policy
    h = _obtain_h(config)
    try:
        data = extract_royal_data(h, tol)
    except (MultiplicityAboveOne, RoyalRange) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_UNSOLVABLE

    def exact_parameters(tau):
        # the family member reproducing h has p0 = p(tau); omega is its root
        return (complex(np.sqrt(h.p(tau))),)

    result = solve_royal_problem(
        data,
        tol=tol,
        omega_grid=config.omega_grid,
        tau_start=_tau_start(),
        extra_omegas_fn=exact_parameters,
    )
    if result.status != "solved":
        print(f"not solvable at step {result.failed_step}: {result.reason}", file=sys.stderr)
        return EXIT_UNSOLVABLE
    distances = [gamma_inner_distance(h, sol.h) for sol in result.solutions]
    best = int(np.argmin(distances))
    payload = {
        "extracted_data": data.to_json_dict(),
        "family_kind": result.s0p0.kind,
        "solutions_tried": len(result.solutions),
        "best_distance": float(distances[best]),
        "best_omega": None if result.solutions[best].omega is None else _c(result.solutions[best].omega),
        "match": bool(distances[best] <= ROUNDTRIP_MATCH_TOL),
    }
    _write_text(config.output, _dump(payload))
    if distances[best] > ROUNDTRIP_MATCH_TOL:
        print(f"no family member matches the input map (best distance {distances[best]:.3e})", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "blaschke": cmd_blaschke,
    "roundtrip": cmd_roundtrip,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = JobConfig(
        command=args.command,
        input=args.input,
        output=args.output,
        tol=args.tol,
        omega_grid=args.omega_grid,
        plot=args.plot,
        generator=args.generator,
        nu=args.nu,
        r=args.r,
    )
    try:
        config.validate()
        return _COMMANDS[config.command](config)
    except InvalidData as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RoyalGammaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSOLVABLE


def entry() -> None:
    sys.exit(main())
