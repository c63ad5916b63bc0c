"""
Argument plumbing shared by the sub-command groups: parent parsers for the
shared flags, and helpers that turn parsed arguments into domain inputs.
"""
import argparse
import json
import logging
import sys
from typing import Any, List, TextIO

from app.config import Settings
from app.controllers.base import EXIT_USAGE, CommandError, command_error
from app.controllers.configuration_controller import ConfigurationController
from app.errors import DimensionMismatchError
from app.models.geometry import Configuration
from app.schemas.params import ExtractionParams, GeneratorSpec, PlantedFlat
from app.storage.report_writer import FORMATS, write_output

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors become CommandError (exit 1) instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise CommandError(EXIT_USAGE, f"{self.prog}: {message}")


def _parent() -> argparse.ArgumentParser:
    return argparse.ArgumentParser(add_help=False)


def config_parent() -> argparse.ArgumentParser:
    parser = _parent()
    parser.add_argument("--config", metavar="FILE", help="Configuration document (JSON)")
    parser.add_argument("--d", type=int, help="Expected ambient dimension of the configuration")
    return parser


def output_parent() -> argparse.ArgumentParser:
    parser = _parent()
    parser.add_argument("--out", metavar="FILE", help="Write the result here instead of stdout")
    return parser


def report_parent() -> argparse.ArgumentParser:
    parser = _parent()
    parser.add_argument("--format", choices=FORMATS, default="csv", help="Report format")
    parser.add_argument("--with-oracle", action="store_true", help="Also run the exact oracle")
    parser.add_argument("--timing", action="store_true", help="Record wall time per row")
    return parser


def params_parent(with_seed: bool = True) -> argparse.ArgumentParser:
    parser = _parent()
    if with_seed:
        parser.add_argument("--seed", type=int, default=0, help="Seed for generic projections")
    parser.add_argument("--beta", help="Degeneracy fraction, e.g. 1/2")
    parser.add_argument("--oracle-cap", type=int, help="Largest subset count the oracle may enumerate")
    parser.add_argument("--retry-cap", type=int, help="Redraws allowed per generic projection")
    parser.add_argument("--rich-divisor", type=int, help="Divisor of the richness threshold")
    return parser


def generator_parent() -> argparse.ArgumentParser:
    parser = _parent()
    parser.add_argument("--spec", metavar="FILE", help="Generator spec (JSON); flags below are ignored when set")
    parser.add_argument("--kind", choices=("planted", "grid", "random"), default="planted")
    parser.add_argument("--d", type=int, help="Ambient dimension")
    parser.add_argument("--seed", type=int, default=0, help="Generator seed")
    parser.add_argument("--plant", action="append", default=[], metavar="DIM:POINTS:HYPERPLANES[:PARENT]",
                        help="Planted flat; repeat for several")
    parser.add_argument("--noise-points", type=int, default=0)
    parser.add_argument("--noise-hyperplanes", type=int, default=0)
    parser.add_argument("--grid-side", type=int, default=3)
    parser.add_argument("--coord-bound", type=int, default=10)
    return parser


def parse_plant(text: str) -> PlantedFlat:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise CommandError(EXIT_USAGE, f"--plant expects DIM:POINTS:HYPERPLANES[:PARENT], got {text!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise CommandError(EXIT_USAGE, f"--plant fields must be integers, got {text!r}")
    try:
        return PlantedFlat(
            flat_dim=values[0], points_on_flat=values[1], hyperplanes_through_flat=values[2],
            parent=values[3] if len(values) == 4 else None,
        )
    except ValueError as e:
        raise command_error(e, "read --plant")


def generator_spec(args: argparse.Namespace, controller: ConfigurationController) -> GeneratorSpec:
    if args.spec:
        return controller.load_spec(args.spec)
    if args.d is None:
        raise CommandError(EXIT_USAGE, "--d is required unless --spec is given")
    try:
        return GeneratorSpec(
            kind=args.kind, dim=args.d, planted=[parse_plant(p) for p in args.plant],
            noise_points=args.noise_points, noise_hyperplanes=args.noise_hyperplanes,
            grid_side=args.grid_side, seed=args.seed, coord_bound=args.coord_bound,
        )
    except ValueError as e:
        raise command_error(e, "build generator spec")


def extraction_params(args: argparse.Namespace, settings: Settings) -> ExtractionParams:
    """Flags override settings; settings override built-in defaults."""
    try:
        return settings.extraction_params(
            beta=getattr(args, "beta", None),
            oracle_cap=getattr(args, "oracle_cap", None),
            retry_cap=getattr(args, "retry_cap", None),
            rich_divisor=getattr(args, "rich_divisor", None),
        )
    except ValueError as e:
        raise command_error(e, "read extraction parameters")


def load_configuration(args: argparse.Namespace, controller: ConfigurationController) -> Configuration:
    if not args.config:
        raise CommandError(EXIT_USAGE, "--config FILE is required")
    c = controller.load(args.config)
    if args.d is not None and args.d != c.dim:
        raise command_error(DimensionMismatchError(f"--d {args.d} but {args.config} is in R^{c.dim}"),
                            "load configuration")
    return c


def emit_json(payload: Any, args: argparse.Namespace, stdout: TextIO) -> None:
    """Write a response model (or a list of them) as indented JSON."""
    if isinstance(payload, list):
        data: Any = [item.model_dump(mode="json") for item in payload]
    else:
        data = payload.model_dump(mode="json")
    emit_text(json.dumps(data, indent=2) + "\n", args, stdout)


def emit_text(text: str, args: argparse.Namespace, stdout: TextIO) -> None:
    try:
        write_output(text, getattr(args, "out", None), stdout)
    except Exception as e:
        raise command_error(e, "write output")


def parse_values(text: str) -> List[Any]:
    """Comma-separated sweep values; integers where they parse, strings otherwise."""
    values: List[Any] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        try:
            values.append(int(token))
        except ValueError:
            values.append(token)
    return values

