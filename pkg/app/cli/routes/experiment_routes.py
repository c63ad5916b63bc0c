from app.cli.common import (
    config_parent,
    extraction_params,
    generator_parent,
    generator_spec,
    load_configuration,
    output_parent,
    params_parent,
    parse_values,
    report_parent,
)
from app.controllers.base import EXIT_OK, EXIT_USAGE, CommandError
from app.controllers.configuration_controller import ConfigurationController
from app.controllers.experiment_controller import ExperimentController


def run(args, settings, stdout) -> int:
    """
    One report row for a configuration
    """
    c = load_configuration(args, ConfigurationController())
    params = extraction_params(args, settings)
    controller = ExperimentController()
    row = controller.run(c, params, with_oracle=args.with_oracle, seed=args.seed, timing=args.timing)
    controller.report([row], args.out, args.format, stdout=stdout)
    return EXIT_OK


def sweep(args, settings, stdout) -> int:
    """
    Vary one generator parameter over a list of values, one row each
    """
    values = parse_values(args.values)
    if not values:
        raise CommandError(EXIT_USAGE, "--values needs at least one value")
    template = generator_spec(args, ConfigurationController())
    params = extraction_params(args, settings)
    controller = ExperimentController()
    rows = controller.sweep(template, args.vary, values, params, with_oracle=args.with_oracle,
                            workers=args.workers, timing=args.timing)
    controller.report(rows, args.out, args.format, stdout=stdout)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "run", parents=[config_parent(), output_parent(), params_parent(), report_parent()],
        help="Extraction vs. oracle vs. bounds for one configuration",
    )
    parser.set_defaults(handler=run)

    parser = subparsers.add_parser(
        "sweep",
        parents=[generator_parent(), output_parent(), params_parent(with_seed=False), report_parent()],
        help="Seeded parameter sweep over generated configurations",
    )
    parser.add_argument("--vary", required=True, metavar="PARAM",
                        help="Generator parameter to vary, e.g. noise_points or planted.0.points_on_flat")
    parser.add_argument("--values", required=True, help="Comma-separated values")
    parser.add_argument("--workers", type=int, default=1, help="Rows computed in parallel")
    parser.set_defaults(handler=sweep)
