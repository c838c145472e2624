"""Command line front end.

Exit codes: 0 on success, 2 for bad input, 3 for numerical or planning
failures.
"""

from typing import Callable, Dict, List, Sequence

import argparse
import logging
import math
import sys

import numpy as np

from .dynamics import compare_dynamics, compare_walkspeed, ctqw_evolve
from .effective import (
    coupling_map,
    effective_for_device,
    fit_decay,
    settings_hamiltonian,
    sew_scaling
)
from .exceptions import InputError, NumericalError, PlanningError
from .floquet import (
    floquet_effective,
    pew_chain_schedule,
    pew_scaling,
    simulate_pew
)
from .hamiltonian import dump_matrix, excitation_label
from .io import BlockingIO, build_manifest, dump_document, render_csv, \
    render_svg
from .models.evolution import EvolutionResult
from .models.graph import path_graph
from .routes import ROUTES, Route
from .settings import METHODS, ExperimentConfig, PlanSettings, SolverSettings
from .weaver import plan_embedding, validate_plan


EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


class Run(BlockingIO):
    """Artifacts of one command, listed in its manifest.
    """

    def __init__(self, config: ExperimentConfig, svg: bool = False) -> None:
        self.config = config
        self.svg = svg
        self.route: Route = ROUTES[config.name](config.out)
        self.files: List[str] = []

    def emit(self, pathway: str, text: str) -> None:
        self._write(pathway, text)
        self.files.append(self.route.relative(pathway))
        logging.info("Wrote {}".format(pathway))

    def series(self, pathway: str, result: EvolutionResult,
               name: str = None) -> None:
        """Population CSV, plus an SVG plot when asked for.
        """

        self.emit(pathway, render_csv(
            ["t_us"] + result.labels,
            [
                [float(t)] + [float(p) for p in row]
                for t, row in zip(result.times, result.populations)
            ]
        ))

        if self.svg and name:
            self.emit(self.route.plot.format(name), render_svg(
                result.times,
                {
                    label: result.population(label)
                    for label in result.labels
                    if result.population(label).max() > 1e-3
                }
            ))

    def errors(self, pathway: str, errors) -> None:
        self.emit(pathway, render_csv(
            ["t_us"] + errors.labels,
            [
                [float(t)] + [float(e) for e in row]
                for t, row in zip(errors.times, errors.values)
            ]
        ))

    def finish(self) -> None:
        self._write(self.route.manifest, dump_document(
            build_manifest(self.files, self.config.payload)
        ))


def _settings(args: argparse.Namespace) -> SolverSettings:
    settings = SolverSettings(levels=getattr(args, "levels", None))
    if getattr(args, "method", None):
        settings.method(args.method)

    return settings


def _subspace(text: str, size: int) -> List:
    """Comma separated basis labels, or qubit indices when an item is
    shorter than a label.
    """

    if not text:
        return None

    items = [item.strip() for item in text.split(",")]
    return [
        int(item) if item.isdigit() and len(item) != size else item
        for item in items
    ]


def _time_grid(tmax: float, steps: int) -> np.ndarray:
    return np.linspace(0.0, tmax, max(int(steps), 2))


def cmd_effective(args: argparse.Namespace, run: Run) -> None:
    device = run.load_device(args.device)
    settings = _settings(args)
    model = effective_for_device(
        device, settings=settings,
        subspace=_subspace(args.subspace, device.size)
    )

    rows = [["g", a, b, g] for a, b, g in model.pairs()]
    rows.extend(
        ["omega", label, "", float(omega)]
        for label, omega in zip(model.labels, model.omega_tilde)
    )
    run.emit(run.route.table, render_csv(
        ["kind", "a", "b", "value_mhz"], rows
    ))

    if args.dump_matrix:
        run.emit(run.route.matrix, dump_matrix(
            settings_hamiltonian(device, settings)
        ))

    print("method {}".format(model.method))
    for a, b, g in model.pairs():
        print("g~ {}-{} = {:.4f} MHz".format(a, b, g))

    if args.speed is not None:
        report = compare_walkspeed(
            model, args.speed, settings.payload["walk_tolerance"]
        )
        for a, b, _, deviation, flagged in report.edges:
            print("J {}-{} off by {:.2%}{}".format(
                a, b, deviation, " (flagged)" if flagged else ""
            ))


def cmd_evolve(args: argparse.Namespace, run: Run) -> None:
    device = run.load_device(args.device)
    initial = args.initial
    if initial is None:
        initial = excitation_label(device.size, device.nodes[0])

    full, effective, errors = compare_dynamics(
        device, initial, _time_grid(args.tmax_us, args.steps),
        settings=_settings(args)
    )

    run.series(run.route.full, full, "full")
    run.series(run.route.effective, effective, "effective")
    run.errors(run.route.error, errors)

    print("max E_k = {:.4e}".format(errors.maximum))


def cmd_floquet(args: argparse.Namespace, run: Run) -> None:
    device = run.load_device(args.device)

    if args.schedule:
        schedule = run.load_schedule(args.schedule)
    else:
        schedule = pew_chain_schedule(device.size - 2, device.coupling(0, 1))

    cycles = args.cycles if args.cycles is not None else schedule.cycles
    result, errors = simulate_pew(
        device, schedule, args.initial, cycles, steps=args.steps
    )

    run.series(run.route.stroboscopic, result.samples, "stroboscopic")
    if result.continuous is not None:
        run.series(run.route.trace, result.continuous, "trace")
    run.errors(run.route.error, errors)

    rate = floquet_effective(device, schedule).g_tilde[0, 1]
    print("period {:.6f} us, g~ = {:.4f} MHz, max E_k = {:.4e}".format(
        schedule.period, rate, errors.maximum
    ))


def cmd_ctqw(args: argparse.Namespace, run: Run) -> None:
    if args.graph:
        graph = run.load_graph(args.graph)
    else:
        graph = path_graph(args.path)

    tmax = args.tmax_us if args.tmax_us is not None \
        else math.pi / math.sqrt(2.0)
    result = ctqw_evolve(
        graph, args.start, _time_grid(tmax, args.steps), args.speed
    )
    run.series(run.route.walk, result, "walk")

    end = args.end if args.end is not None else graph.n - 1
    print("P({},{}) at t = {:.6f}: {:.10f}".format(
        args.start, end, tmax, result.populations[-1, end]
    ))


def cmd_plan(args: argparse.Namespace, run: Run) -> None:
    device = run.load_device(args.device)
    settings = PlanSettings(seed=args.seed)

    if args.plan:
        plan = run.load_plan(args.plan)
        if args.graph:
            plan.target = run.load_graph(args.graph)
    else:
        if not args.graph:
            raise InputError("plan needs --graph or --plan")
        plan = plan_embedding(run.load_graph(args.graph), device, settings)

    report = validate_plan(plan, device, settings=settings)

    run.emit(run.route.plan, dump_document(plan.to_dict()))
    rows = [
        [check.name, check.passed, check.detail] for check in report.checks
    ]
    rows.extend(
        [
            "bridge {}".format(list(bridge.bridge.endpoints)), True,
            "{} g~ {} deviation {:.4f}".format(
                bridge.bridge.kind,
                " ".join(
                    "{:.4f}".format(g) for g in bridge.couplings.values()
                ),
                bridge.deviation
            )
        ]
        for bridge in report.bridges
    )
    run.emit(run.route.report, render_csv(["check", "passed", "detail"], rows))

    print("J = {:.4f} MHz, {}".format(
        report.walk_speed or 0.0, "valid" if report.ok else "invalid"
    ))
    for warning in report.warnings:
        print("warning: {}".format(warning))

    if not report.ok:
        raise InputError("; ".join(
            "{}: {}".format(check.name, check.detail)
            for check in report.failures()
        ))


def cmd_scaling(args: argparse.Namespace, run: Run) -> None:
    sew = sew_scaling(args.sew, args.g, args.delta)
    run.emit(run.route.sew, render_csv(
        ["n_connectors", "g_tilde_mhz"], [[n, g] for n, g in sew]
    ))

    pew = [(n, pew_scaling(args.g, n)) for n in range(1, args.pew + 1)]
    run.emit(run.route.pew, render_csv(
        ["n_connectors", "g_tilde_mhz"], [[n, g] for n, g in pew]
    ))

    if args.map:
        rows = coupling_map(
            np.linspace(4600.0, 4900.0, 13), np.linspace(5.0, 50.0, 10)
        )
        run.emit(run.route.coupling_map, render_csv(
            ["omega2_mhz", "g_mhz", "g13_over_g"], rows
        ))

    if run.svg:
        run.emit(run.route.plot.format("scaling"), render_svg(
            [n for n, _ in pew],
            {
                "PEW": [g for _, g in pew],
                "SEW": [abs(g) for _, g in sew]
                + [float("nan")] * (len(pew) - len(sew)),
            },
            xlabel="N_c", ylabel="|g~| (MHz)"
        ))

    if len(sew) > 1:
        slope, _, r2 = fit_decay(sew)
        print("SEW ln|g~| slope {:.4f}, R^2 {:.6f}".format(slope, r2))


COMMANDS: Dict[str, Callable[[argparse.Namespace, Run], None]] = {
    "effective": cmd_effective,
    "evolve": cmd_evolve,
    "floquet": cmd_floquet,
    "ctqw": cmd_ctqw,
    "plan": cmd_plan,
    "scaling": cmd_scaling,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory")
    common.add_argument("--svg", action="store_true",
                        help="also write SVG plots")
    common.add_argument("--seed", type=int, default=0)
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")

    parser = argparse.ArgumentParser(
        prog="edgeweave",
        description="Static and periodic edge weaving on transmon lattices."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    effective = commands.add_parser("effective", parents=[common])
    effective.add_argument("--device", required=True)
    effective.add_argument("--method", choices=METHODS)
    effective.add_argument("--subspace",
                           help="comma separated labels or qubit indices")
    effective.add_argument("--dump-matrix", action="store_true")
    effective.add_argument("--levels", type=int,
                           help="truncation for every qubit")
    effective.add_argument("--speed", type=float,
                           help="compare every edge to this J in MHz")

    evolve = commands.add_parser("evolve", parents=[common])
    evolve.add_argument("--device", required=True)
    evolve.add_argument("--method", choices=METHODS)
    evolve.add_argument("--levels", type=int,
                        help="truncation for every qubit")
    evolve.add_argument("--initial", help="basis label")
    evolve.add_argument("--tmax-us", type=float, default=1.0)
    evolve.add_argument("--steps", type=int, default=201)

    floquet = commands.add_parser("floquet", parents=[common])
    floquet.add_argument("--device", required=True)
    floquet.add_argument("--schedule")
    floquet.add_argument("--cycles", type=int)
    floquet.add_argument("--initial", type=int, default=0,
                         help="qubit holding the excitation")
    floquet.add_argument("--steps", type=int, default=0,
                         help="trace points per segment")

    ctqw = commands.add_parser("ctqw", parents=[common])
    source = ctqw.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph")
    source.add_argument("--path", type=int, help="path graph size")
    ctqw.add_argument("--start", type=int, default=0)
    ctqw.add_argument("--end", type=int)
    ctqw.add_argument("--speed", type=float, help="walk speed J in MHz")
    ctqw.add_argument("--tmax-us", type=float,
                      help="dimensionless without --speed")
    ctqw.add_argument("--steps", type=int, default=101)

    plan = commands.add_parser("plan", parents=[common])
    plan.add_argument("--device", required=True)
    plan.add_argument("--graph")
    plan.add_argument("--plan", help="validate this plan instead")

    scaling = commands.add_parser("scaling", parents=[common])
    scaling.add_argument("--sew", type=int, default=4,
                         help="longest static chain")
    scaling.add_argument("--pew", type=int, default=7,
                         help="longest dynamic chain")
    scaling.add_argument("-g", type=float, default=25.0)
    scaling.add_argument("--delta", type=float, default=-200.0)
    scaling.add_argument("--map", action="store_true",
                         help="also sweep the three-qubit coupling map")

    return parser


def _inputs(args: argparse.Namespace) -> Dict[str, str]:
    return {
        key: getattr(args, key)
        for key in ("device", "graph", "plan", "schedule")
        if getattr(args, key, None)
    }


def main(argv: Sequence[str] = None) -> int:
    """Runs one command.

    Returns
    -------
    int
        Exit code.
    """

    args = build_parser().parse_args(argv)

    level = logging.WARNING
    if args.verbose:
        level = logging.INFO
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")

    overrides = {
        key: value for key, value in sorted(vars(args).items())
        if key not in ("command", "out", "seed", "svg", "verbose", "quiet")
        and key not in _inputs(args) and value is not None
    }

    try:
        config = ExperimentConfig(
            args.command, _inputs(args), overrides, args.out, args.seed
        )
        run = Run(config, args.svg)
        COMMANDS[args.command](args, run)
        run.finish()
    except InputError as error:
        logging.error(str(error))
        return EXIT_INPUT
    except (NumericalError, PlanningError) as error:
        logging.error(str(error))
        return EXIT_NUMERICAL

    return EXIT_OK


def run() -> None:
    sys.exit(main())
