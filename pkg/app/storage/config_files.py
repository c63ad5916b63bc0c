"""
Configuration files: UTF-8 JSON documents with rationals written as
integer or ``p/q`` strings.
"""
import json
import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from app.errors import BicliqueError, ConfigParseError, StorageError
from app.models.geometry import Configuration, Hyperplane, Point
from app.models.numeric import format_rational, to_rational
from app.schemas.configuration import ConfigDocument, HyperplaneDocument
from app.schemas.params import GeneratorSpec

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def to_document(c: Configuration) -> ConfigDocument:
    return ConfigDocument(
        dim=c.dim,
        points=[[format_rational(x) for x in p.coords] for p in c.points],
        hyperplanes=[
            HyperplaneDocument(coeffs=[format_rational(x) for x in h.coeffs], offset=format_rational(h.offset))
            for h in c.hyperplanes
        ],
        provenance=list(c.provenance),
    )


def from_document(doc: ConfigDocument) -> Configuration:
    try:
        points = [Point(tuple(to_rational(x) for x in coords)) for coords in doc.points]
        hyperplanes = [
            Hyperplane(tuple(to_rational(x) for x in h.coeffs), to_rational(h.offset))
            for h in doc.hyperplanes
        ]
        return Configuration(doc.dim, tuple(points), tuple(hyperplanes), tuple(doc.provenance))
    except (BicliqueError, ValueError) as e:
        raise ConfigParseError(f"invalid configuration: {e}") from e


def parse_config(text: str) -> Configuration:
    """Parse a configuration document; every malformed input raises ConfigParseError."""
    try:
        doc = ConfigDocument.model_validate_json(text)
    except ValidationError as e:
        raise ConfigParseError(f"malformed configuration document: {e.error_count()} error(s): {e}") from e
    return from_document(doc)


def serialize_config(c: Configuration) -> str:
    return json.dumps(to_document(c).model_dump(), indent=2) + "\n"


def read_config(path: PathLike) -> Configuration:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"cannot read configuration {path}: {e}") from e
    c = parse_config(text)
    logger.info(f"Loaded configuration from {path}: d={c.dim}, m={c.m}, n={c.n}")
    return c


def write_config(path: PathLike, c: Configuration) -> None:
    try:
        Path(path).write_text(serialize_config(c), encoding="utf-8")
    except OSError as e:
        raise StorageError(f"cannot write configuration {path}: {e}") from e
    logger.info(f"Wrote configuration to {path}")


def read_spec(path: PathLike) -> GeneratorSpec:
    """Load a GeneratorSpec JSON document (used as a sweep template)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"cannot read generator spec {path}: {e}") from e
    try:
        return GeneratorSpec.model_validate_json(text)
    except ValidationError as e:
        raise ConfigParseError(f"malformed generator spec: {e}") from e
