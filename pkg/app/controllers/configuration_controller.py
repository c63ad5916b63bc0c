import logging
from typing import Optional

from app.controllers.base import command_error
from app.models.generators import generate
from app.models.geometry import Configuration
from app.schemas.params import GeneratorSpec
from app.storage.config_files import read_config, read_spec, serialize_config, write_config

logger = logging.getLogger(__name__)


class ConfigurationController:
    """
    Controller for producing and loading configurations.
    Connects the CLI to the generators and the config-file codec.
    """

    def generate(self, spec: GeneratorSpec, out: Optional[str] = None) -> str:
        """
        Generate a configuration and return its document; written to ``out`` when given.
        """
        try:
            c = generate(spec)
            if out is not None:
                write_config(out, c)
            return serialize_config(c)
        except Exception as e:
            raise command_error(e, "generate configuration")

    def load(self, path: str) -> Configuration:
        try:
            return read_config(path)
        except Exception as e:
            raise command_error(e, f"load configuration {path}")

    def load_spec(self, path: str) -> GeneratorSpec:
        try:
            return read_spec(path)
        except Exception as e:
            raise command_error(e, f"load generator spec {path}")
