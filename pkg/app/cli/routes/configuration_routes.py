from app.cli.common import emit_text, generator_parent, generator_spec, output_parent
from app.controllers.base import EXIT_OK
from app.controllers.configuration_controller import ConfigurationController


def gen(args, settings, stdout) -> int:
    """
    Generate a configuration document
    """
    controller = ConfigurationController()
    spec = generator_spec(args, controller)
    text = controller.generate(spec, out=args.out)
    if args.out is None:
        emit_text(text, args, stdout)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "gen", parents=[generator_parent(), output_parent()],
        help="Generate a planted, grid or random configuration",
    )
    parser.set_defaults(handler=gen)
