"""Readers and writers for TSPLIB instances, tours and optimum registries."""

import os
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from lkbandit.errors import TSPLIBParseError
from .instance import Instance, WEIGHT_KINDS

logger = logging.getLogger(__name__)

SECTION_KEYWORDS = ("NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION", "DISPLAY_DATA_SECTION", "TOUR_SECTION")

# Column layouts read the same entry sequence as the mirrored row layout
MATRIX_FORMATS = {
    "FULL_MATRIX": "FULL_MATRIX",
    "UPPER_ROW": "UPPER_ROW",
    "LOWER_ROW": "LOWER_ROW",
    "UPPER_DIAG_ROW": "UPPER_DIAG_ROW",
    "LOWER_DIAG_ROW": "LOWER_DIAG_ROW",
    "UPPER_COL": "LOWER_ROW",
    "LOWER_COL": "UPPER_ROW",
    "UPPER_DIAG_COL": "LOWER_DIAG_ROW",
    "LOWER_DIAG_COL": "UPPER_DIAG_ROW",
}

TSPLIB_DIR_ENV = "LKBANDIT_TSPLIB_DIR"


def _is_keyword_line(tokens: List[str]) -> bool:
    return bool(tokens) and tokens[0][:1].isalpha()


def _split_header(line: str) -> Tuple[str, str]:
    if ":" in line:
        key, value = line.split(":", 1)
        return key.strip().upper(), value.strip()
    parts = line.split(None, 1)
    return parts[0].upper(), (parts[1].strip() if len(parts) > 1 else "")


def _read_section(lines: List[str], start: int) -> Tuple[List[Tuple[int, List[str]]], int]:
    """Collect data lines after a section keyword.

    Returns the (line number, tokens) pairs and the index of the first line
    that is not part of the section.
    """
    rows = []
    idx = start
    while idx < len(lines):
        tokens = lines[idx].split()
        if _is_keyword_line(tokens):
            break
        if tokens and tokens != ["-1"]:
            rows.append((idx + 1, tokens))
        idx += 1
    return rows, idx


def _matrix_indices(layout: str, n: int) -> Tuple[np.ndarray, np.ndarray]:
    if layout == "FULL_MATRIX":
        rows, cols = np.indices((n, n))
        return rows.ravel(), cols.ravel()
    if layout == "UPPER_ROW":
        return np.triu_indices(n, k=1)
    if layout == "LOWER_ROW":
        return np.tril_indices(n, k=-1)
    if layout == "UPPER_DIAG_ROW":
        return np.triu_indices(n, k=0)
    return np.tril_indices(n, k=0)


def parse_instance(text: str, name: Optional[str] = None) -> Instance:
    """Parse the contents of a symmetric TSPLIB file.

    Args:
        text: File contents.
        name: Fallback name when the file has no NAME entry.

    Returns:
        The parsed Instance. EXPLICIT matrices are symmetrized from whichever
        triangle the file declares.

    Raises:
        TSPLIBParseError: unsupported TYPE, EDGE_WEIGHT_TYPE or
            EDGE_WEIGHT_FORMAT, or section sizes that disagree with DIMENSION.
    """
    lines = text.splitlines()
    header: Dict[str, str] = {}
    header_lines: Dict[str, int] = {}
    coord_rows = None
    weight_rows = None
    coord_end = weight_end = len(lines)

    idx = 0
    while idx < len(lines):
        stripped = lines[idx].strip()
        if not stripped:
            idx += 1
            continue
        key, value = _split_header(stripped)
        if key == "EOF":
            break
        if key == "NODE_COORD_SECTION":
            coord_rows, idx = _read_section(lines, idx + 1)
            coord_end = idx + 1
            continue
        if key == "EDGE_WEIGHT_SECTION":
            weight_rows, idx = _read_section(lines, idx + 1)
            weight_end = idx + 1
            continue
        if key in SECTION_KEYWORDS:
            # Display data and other sections do not affect costs
            _, idx = _read_section(lines, idx + 1)
            continue
        header[key] = value
        header_lines[key] = idx + 1
        idx += 1

    problem_type = header.get("TYPE", "TSP").split()
    if not problem_type or problem_type[0] != "TSP":
        raise TSPLIBParseError(f"Unsupported TYPE {header.get('TYPE')!r}; only symmetric TSP is handled")

    if "DIMENSION" not in header:
        raise TSPLIBParseError("Missing DIMENSION")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise TSPLIBParseError(f"DIMENSION is not an integer: {header['DIMENSION']!r}", line=header_lines["DIMENSION"])
    if n < 3:
        raise TSPLIBParseError(f"DIMENSION must be at least 3, got {n}", line=header_lines["DIMENSION"])

    weight_kind = header.get("EDGE_WEIGHT_TYPE", "")
    if weight_kind not in WEIGHT_KINDS:
        raise TSPLIBParseError(f"Unsupported EDGE_WEIGHT_TYPE {weight_kind!r}")

    instance_name = header.get("NAME") or name or "unnamed"
    comment = header.get("COMMENT", "")

    if weight_kind == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "")
        if fmt not in MATRIX_FORMATS:
            raise TSPLIBParseError(f"Unsupported EDGE_WEIGHT_FORMAT {fmt!r}")
        if weight_rows is None:
            raise TSPLIBParseError("EXPLICIT instance without EDGE_WEIGHT_SECTION")
        matrix = _build_matrix(weight_rows, MATRIX_FORMATS[fmt], n, weight_end)
        logger.debug(f"Parsed EXPLICIT {fmt} instance {instance_name} with {n} cities")
        return Instance(name=instance_name, n=n, weight_kind=weight_kind, matrix=matrix, comment=comment)

    if coord_rows is None:
        raise TSPLIBParseError(f"{weight_kind} instance without NODE_COORD_SECTION")
    if len(coord_rows) != n:
        line = coord_rows[n][0] if len(coord_rows) > n else coord_end
        raise TSPLIBParseError(
            f"NODE_COORD_SECTION has {len(coord_rows)} entries but DIMENSION is {n}", line=line)

    coords = np.empty((n, 2), dtype=np.float64)
    for slot, (line_no, tokens) in enumerate(coord_rows):
        if len(tokens) < 3:
            raise TSPLIBParseError(f"Coordinate entry needs an id and two values: {' '.join(tokens)}", line=line_no)
        try:
            coords[slot] = (float(tokens[1]), float(tokens[2]))
        except ValueError:
            raise TSPLIBParseError(f"Bad coordinate entry: {' '.join(tokens)}", line=line_no)

    logger.debug(f"Parsed {weight_kind} instance {instance_name} with {n} cities")
    return Instance(name=instance_name, n=n, weight_kind=weight_kind, coords=coords, comment=comment)


def _build_matrix(rows: List[Tuple[int, List[str]]], layout: str, n: int, end_line: int) -> np.ndarray:
    values = []
    for line_no, tokens in rows:
        try:
            values.extend(int(float(tok)) for tok in tokens)
        except ValueError:
            raise TSPLIBParseError(f"Non-numeric edge weight in: {' '.join(tokens)}", line=line_no)

    row_idx, col_idx = _matrix_indices(layout, n)
    if len(values) != len(row_idx):
        raise TSPLIBParseError(
            f"EDGE_WEIGHT_SECTION has {len(values)} entries, {layout} with DIMENSION {n} needs {len(row_idx)}",
            line=end_line)

    matrix = np.zeros((n, n), dtype=np.int64)
    values = np.asarray(values, dtype=np.int64)
    if layout == "FULL_MATRIX":
        matrix[row_idx, col_idx] = values
        if not np.array_equal(matrix, matrix.T):
            raise TSPLIBParseError("FULL_MATRIX is not symmetric; asymmetric instances are not supported")
    else:
        matrix[row_idx, col_idx] = values
        matrix[col_idx, row_idx] = values
    np.fill_diagonal(matrix, 0)
    return matrix


def load_instance(path: Union[str, Path], optimum: Optional[int] = None) -> Instance:
    """Read a TSPLIB file from disk."""
    path = Path(path)
    text = path.read_text()
    inst = parse_instance(text, name=path.stem)
    logger.info(f"Loaded {inst.name}: {inst.n} cities, {inst.weight_kind}")
    return inst.with_optimum(optimum)


def parse_tour(text: str) -> List[int]:
    """Parse a TSPLIB TOUR file into a 0-based city order."""
    lines = text.splitlines()
    for idx, line in enumerate(lines):
        if line.strip().upper().startswith("TOUR_SECTION"):
            break
    else:
        raise TSPLIBParseError("Missing TOUR_SECTION")

    order = []
    for line_no, line in enumerate(lines[idx + 1:], start=idx + 2):
        for tok in line.split():
            if tok == "-1" or tok.upper() == "EOF":
                return order
            try:
                order.append(int(tok) - 1)
            except ValueError:
                raise TSPLIBParseError(f"Bad city id {tok!r} in TOUR_SECTION", line=line_no)
    return order


def read_tour(path: Union[str, Path]) -> List[int]:
    return parse_tour(Path(path).read_text())


def write_tour(path: Union[str, Path], inst: Instance, order: Sequence[int], length: Optional[int] = None) -> None:
    """Write a tour in TSPLIB TOUR format (1-based ids)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    comment = f"COMMENT : Length = {length}\n" if length is not None else ""
    body = "\n".join(str(city + 1) for city in order)
    path.write_text(
        f"NAME : {inst.name}.tour\n{comment}TYPE : TOUR\nDIMENSION : {inst.n}\n"
        f"TOUR_SECTION\n{body}\n-1\nEOF\n")
    logger.info(f"Wrote tour for {inst.name} to {path}")


@dataclass(frozen=True)
class RegistryEntry:
    """One line of a benchmark registry."""

    name: str
    optimum: int
    path: Optional[Path] = None
    max_trials: Optional[int] = None


def _resolve_instance_path(token: str, base_dir: Path) -> Optional[Path]:
    search_dirs = [base_dir]
    env_dir = os.environ.get(TSPLIB_DIR_ENV)
    if env_dir:
        search_dirs.append(Path(env_dir))
    for directory in search_dirs:
        for candidate in (directory / token, directory / f"{token}.tsp"):
            if candidate.is_file():
                return candidate
    return None


def iter_registry_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if content:
            yield line_no, content.split()


def parse_registry(text: str, base_dir: Union[str, Path] = ".") -> List[RegistryEntry]:
    """Parse ``name optimum [max_trials]`` lines.

    The name may be a path relative to ``base_dir`` or a bare instance name;
    bare names are also looked up in ``$LKBANDIT_TSPLIB_DIR``.
    """
    base_dir = Path(base_dir)
    entries = []
    for line_no, tokens in iter_registry_lines(text):
        if len(tokens) not in (2, 3):
            raise TSPLIBParseError(f"Expected 'name optimum [max_trials]', got {' '.join(tokens)!r}", line=line_no)
        try:
            optimum = int(tokens[1])
            max_trials = int(tokens[2]) if len(tokens) == 3 else None
        except ValueError:
            raise TSPLIBParseError(f"Registry values must be integers: {' '.join(tokens)!r}", line=line_no)
        if optimum <= 0:
            raise TSPLIBParseError(f"Optimum must be positive, got {optimum}", line=line_no)
        token = tokens[0]
        name = Path(token).name
        if name.endswith(".tsp"):
            name = name[:-4]
        entries.append(RegistryEntry(
            name=name,
            optimum=optimum,
            path=_resolve_instance_path(token, base_dir),
            max_trials=max_trials,
        ))
    return entries


def load_registry(path: Union[str, Path]) -> List[RegistryEntry]:
    path = Path(path)
    entries = parse_registry(path.read_text(), base_dir=path.parent)
    logger.info(f"Loaded {len(entries)} registry entries from {path}")
    return entries


def lookup_optimum(entries: Sequence[RegistryEntry], name: str) -> Optional[int]:
    """Known optimum for an instance name, or None."""
    for entry in entries:
        if entry.name == name:
            return entry.optimum
    return None


__all__ = [
    'parse_instance', 'load_instance', 'parse_tour', 'read_tour', 'write_tour',
    'RegistryEntry', 'parse_registry', 'load_registry', 'lookup_optimum',
]
