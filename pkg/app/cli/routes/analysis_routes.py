from app.cli.common import (
    config_parent,
    emit_json,
    extraction_params,
    load_configuration,
    output_parent,
    params_parent,
)
from app.controllers.analysis_controller import CLASSIFY_KINDS, AnalysisController
from app.controllers.base import EXIT_OK, EXIT_USAGE, CommandError
from app.controllers.configuration_controller import ConfigurationController


def incidences(args, settings, stdout) -> int:
    """
    Count the incidences of a configuration
    """
    c = load_configuration(args, ConfigurationController())
    emit_json(AnalysisController().incidences(c), args, stdout)
    return EXIT_OK


def oracle(args, settings, stdout) -> int:
    """
    Exact maximum biclique of a configuration
    """
    c = load_configuration(args, ConfigurationController())
    params = extraction_params(args, settings)
    emit_json(AnalysisController().oracle(c, params.oracle_cap), args, stdout)
    return EXIT_OK


def extract(args, settings, stdout) -> int:
    """
    Run the extraction pipeline and print the best biclique with its trace
    """
    c = load_configuration(args, ConfigurationController())
    params = extraction_params(args, settings)
    emit_json(AnalysisController().extract(c, params, args.seed), args, stdout)
    return EXIT_OK


def classify(args, settings, stdout) -> int:
    """
    Classify hyperplanes (or points) as beta-degenerate or nondegenerate
    """
    c = load_configuration(args, ConfigurationController())
    params = extraction_params(args, settings)
    emit_json(AnalysisController().classify(c, params.beta, args.kind), args, stdout)
    return EXIT_OK


def bounds(args, settings, stdout) -> int:
    """
    Evaluate closed-form bounds, from explicit m, n, I or from a configuration
    """
    controller = AnalysisController()
    m, n, i, d = args.m, args.n, args.I, args.d
    if args.config:
        summary = controller.incidences(load_configuration(args, ConfigurationController()))
        m, n, i, d = summary.m, summary.n, summary.I, summary.d
    if m is None or n is None or d is None:
        raise CommandError(EXIT_USAGE, "bounds needs --m, --n and --d, or --config")
    if i is None and not args.name:
        raise CommandError(EXIT_USAGE, "--I is required unless --name selects the bounds to evaluate")
    constants = dict(_split_constant(text) for text in args.constant)
    emit_json(controller.bounds(m, n, i, d, k=args.k, names=args.name, constants=constants), args, stdout)
    return EXIT_OK


def _split_constant(text: str):
    name, _, value = text.partition("=")
    return name.strip(), value.strip() or "1"


def register(subparsers) -> None:
    parser = subparsers.add_parser("incidences", parents=[config_parent(), output_parent()],
                                   help="Count incidences and degrees")
    parser.set_defaults(handler=incidences)

    parser = subparsers.add_parser("oracle", parents=[config_parent(), output_parent(), params_parent()],
                                   help="Exact maximum biclique")
    parser.set_defaults(handler=oracle)

    parser = subparsers.add_parser("extract", parents=[config_parent(), output_parent(), params_parent()],
                                   help="Run the extraction pipeline")
    parser.set_defaults(handler=extract)

    parser = subparsers.add_parser("classify", parents=[config_parent(), output_parent(), params_parent()],
                                   help="Classify objects by beta-degeneracy")
    parser.add_argument("--kind", choices=CLASSIFY_KINDS, default="hyperplanes")
    parser.set_defaults(handler=classify)

    parser = subparsers.add_parser("bounds", parents=[config_parent(), output_parent()],
                                   help="Evaluate closed-form bounds")
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--I", type=int, dest="I")
    parser.add_argument("--k", help="Richness k for the rich-count bounds, e.g. 3 or 5/2")
    parser.add_argument("--name", action="append", choices=AnalysisController.bound_names(),
                        help="Bound to evaluate; repeat for several (default: all applicable)")
    parser.add_argument("--constant", action="append", default=[], metavar="NAME=VALUE",
                        help="Constant multiplying a bound")
    parser.set_defaults(handler=bounds)
