"""
Reads weight, subset and order documents from CSV or JSON files.
"""

import csv
import json
from pathlib import Path
from typing import Any, Optional, Union

from cerberus import Validator

from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector, validate_weights
from pivotal.data.utils import resolve_order, resolve_subset
from pivotal.errors import InvalidDocument

PathLike = Union[str, Path]

WEIGHT_LIST_SCHEMA = {
    "weights": {
        "type": "list",
        "required": True,
        "minlength": 1,
        "schema": {"type": "number", "min": 0},
    }
}

WEIGHT_RECORDS_SCHEMA = {
    "weights": {
        "type": "list",
        "required": True,
        "minlength": 1,
        "schema": {
            "type": "dict",
            "schema": {
                "id": {"type": "string", "required": True, "empty": False},
                "weight": {"type": "number", "required": True, "min": 0},
            },
        },
    }
}

CSV_ROW_SCHEMA = {
    "id": {"type": "string", "empty": False},
    "weight": {"type": "float", "coerce": float, "required": True, "min": 0},
}

REFERENCE_LIST_SCHEMA = {
    "members": {
        "type": "list",
        "required": True,
        "schema": {"type": ["integer", "string"]},
    }
}


def _raise_invalid_schema(data: dict, schema: dict, document: str) -> dict:
    v = Validator(schema)
    if not v.validate(data):
        raise InvalidDocument(f"invalid {document}: {v.errors}")
    return v.document


def read_weights(file_path: PathLike) -> tuple[list[float], Optional[list[str]]]:
    """
    Reads raw weights and optional ids from a CSV or JSON file.

    :param file_path: (str) a ``.csv`` file with header ``id,weight`` or ``weight``,
        or a ``.json`` file holding an array of numbers or of {"id", "weight"} objects
    :return: (tuple) the weights and the ids (None when the file carries no ids)
    """
    path = Path(file_path)
    if path.suffix.lower() == ".csv":
        return _read_weights_csv(path)
    return _read_weights_json(path)


def _read_weights_csv(path: Path) -> tuple[list[float], Optional[list[str]]]:
    with open(path, newline="") as file:
        reader = csv.DictReader(line for line in file if line.strip() != "")
        header = [name.strip() for name in (reader.fieldnames or [])]
        if header not in (["id", "weight"], ["weight"]):
            raise InvalidDocument(
                f"invalid weights file {path}: header must be 'id,weight' or 'weight', got {header}"
            )
        weights: list[float] = []
        ids: list[str] = []
        for line_number, row in enumerate(reader, start=2):
            if None in row:
                raise InvalidDocument(f"invalid row {line_number} of {path}: extra columns")
            row = {key.strip(): (value or "").strip() for key, value in row.items()}
            record = _raise_invalid_schema(
                row, CSV_ROW_SCHEMA, f"row {line_number} of {path}"
            )
            weights.append(record["weight"])
            if "id" in record:
                ids.append(record["id"])
    if len(weights) == 0:
        raise InvalidDocument(f"invalid weights file {path}: no rows")
    return weights, (ids if header[0] == "id" else None)


def _read_weights_json(path: Path) -> tuple[list[float], Optional[list[str]]]:
    document = _load_json(path)
    if isinstance(document, list) and all(isinstance(item, dict) for item in document):
        data = _raise_invalid_schema(
            {"weights": document}, WEIGHT_RECORDS_SCHEMA, f"weights file {path}"
        )
        records = data["weights"]
        return [float(r["weight"]) for r in records], [r["id"] for r in records]
    data = _raise_invalid_schema(
        {"weights": document}, WEIGHT_LIST_SCHEMA, f"weights file {path}"
    )
    return [float(w) for w in data["weights"]], None


def _load_json(path: Path) -> Any:
    with open(path) as file:
        try:
            return json.load(file)
        except json.JSONDecodeError as error:
            raise InvalidDocument(f"invalid JSON in {path}: {error}") from error


def _read_references(file_path: PathLike, document: str) -> list[Union[int, str]]:
    path = Path(file_path)
    data = _raise_invalid_schema(
        {"members": _load_json(path)}, REFERENCE_LIST_SCHEMA, f"{document} file {path}"
    )
    return data["members"]


def load_weights(file_path: PathLike, k: int, normalize: bool = False) -> WeightVector:
    weights, ids = read_weights(file_path)
    return validate_weights(weights, k, normalize=normalize, ids=ids)


def load_subset(file_path: PathLike, wv: WeightVector) -> SubsetSpec:
    return resolve_subset(_read_references(file_path, "subset"), wv)


def load_order(file_path: PathLike, wv: WeightVector) -> tuple[int, ...]:
    return resolve_order(_read_references(file_path, "order"), wv)
