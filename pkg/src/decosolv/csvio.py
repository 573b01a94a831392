"""Self-describing CSV: one ``#`` config line, a column header, numeric rows."""

import io
import shlex

import numpy as np

from . import __version__


def format_config(config):
    parts = [f"decosolv={__version__}"]
    for k, v in config.items():
        parts.append(f"{k}={shlex.quote(str(v))}")
    return "# " + " ".join(parts)


def write_csv(fh, columns, config):
    """Write ``columns`` (name -> 1-d array, equal lengths) to a text stream."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    fh.write(format_config(config) + "\n")
    fh.write(",".join(names) + "\n")
    for row in data:
        fh.write(",".join(f"{v:.12g}" for v in row) + "\n")


def to_string(columns, config):
    buf = io.StringIO()
    write_csv(buf, columns, config)
    return buf.getvalue()


def read_csv(path_or_text):
    """Inverse of :func:`write_csv`; returns ``(config, columns)``."""
    if "\n" in str(path_or_text):
        text = str(path_or_text)
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '#' configuration line")
    config = {}
    for tok in shlex.split(lines[0][1:]):
        k, _, v = tok.partition("=")
        config[k] = v
    names = lines[1].split(",")
    rows = [list(map(float, ln.split(","))) for ln in lines[2:] if ln.strip()]
    arr = np.array(rows, dtype=float).reshape(-1, len(names))
    return config, {n: arr[:, i] for i, n in enumerate(names)}
