"""Matrix, state, and Hamiltonian file format.

A JSON document with fields ``dim`` (integer) and ``entries`` (row-major
list of [re, im] pairs); state and Hamiltonian files add ``kind``
("density" | "hamiltonian"). Writers emit full precision (17 significant
digits), so files round-trip exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ._jsonfmt import dumps
from .errors import DimensionMismatchError, InvalidConfigError
from .matcore import as_matrix
from .states import DensityMatrix, Hamiltonian


def matrix_document(m, kind: str | None = None) -> str:
    m = as_matrix(m)
    d = m.shape[0]
    doc = {}
    if kind is not None:
        doc["kind"] = kind
    doc["dim"] = d
    doc["entries"] = [[float(z.real), float(z.imag)] for z in m.reshape(-1)]
    return dumps(doc)


def parse_matrix_document(text: str):
    """Returns (matrix, kind); kind is None for plain matrix files."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise InvalidConfigError("matrix document needs 'dim' and 'entries' fields")
    d = int(doc["dim"])
    entries = doc["entries"]
    if len(entries) != d * d:
        raise DimensionMismatchError(f"expected {d * d} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape(d, d), doc.get("kind")


def save_matrix(path, m, kind: str | None = None):
    Path(path).write_text(matrix_document(m, kind) + "\n")


def load_matrix(path) -> np.ndarray:
    m, _ = parse_matrix_document(Path(path).read_text())
    return m


def save_state(path, rho: DensityMatrix):
    save_matrix(path, rho, kind="density")


def load_state(path) -> DensityMatrix:
    m, kind = parse_matrix_document(Path(path).read_text())
    if kind != "density":
        raise InvalidConfigError(f"expected kind 'density', got {kind!r}")
    return DensityMatrix(m)


def save_hamiltonian(path, h: Hamiltonian):
    save_matrix(path, h, kind="hamiltonian")


def load_hamiltonian(path) -> Hamiltonian:
    m, kind = parse_matrix_document(Path(path).read_text())
    if kind != "hamiltonian":
        raise InvalidConfigError(f"expected kind 'hamiltonian', got {kind!r}")
    return Hamiltonian(m)
