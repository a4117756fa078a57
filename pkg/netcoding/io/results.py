"""
CSV result tables.

A table is written as ``#``-prefixed metadata lines (tool version, command,
config hash, seed, then any extra entries in insertion order) followed by a
header row and the data rows. Floats use FLOAT_DIGITS significant digits,
so identical inputs give identical bytes.
"""
import csv
import hashlib
import io
import json
import math
from pathlib import Path as FilePath

from .. import __version__
from ..conf import get_setting


def config_hash(options):
    """Short SHA-256 of a JSON rendering of ``options`` with sorted keys."""
    text = json.dumps(options, sort_keys=True, default=str, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]


def format_value(value, digits=None):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        digits = digits or get_setting('FLOAT_DIGITS')
        return format(value, f'.{digits}g')
    if hasattr(value, 'item'):
        return format_value(value.item(), digits)
    return str(value)


class ResultsTable:
    def __init__(self, command, columns, seed=None, config=None, **metadata):
        self.command = command
        self.columns = tuple(columns)
        self.seed = seed
        self.config_hash = config_hash(config or {})
        self.metadata = dict(metadata)
        self.rows = []

    def add_row(self, *values, **named):
        if named:
            if values:
                raise TypeError("pass a row either positionally or by column name")
            unknown = set(named) - set(self.columns)
            if unknown:
                raise KeyError(f"unknown columns {sorted(unknown)}")
            values = tuple(named.get(c) for c in self.columns)
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def header_lines(self):
        lines = [
            f"# tool: lossynet {__version__}",
            f"# command: {self.command}",
            f"# config_hash: {self.config_hash}",
            f"# seed: {format_value(self.seed)}",
        ]
        lines.extend(f"# {key}: {format_value(value)}" for key, value in self.metadata.items())
        return lines

    def render(self):
        buffer = io.StringIO()
        for line in self.header_lines():
            buffer.write(line + '\n')
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.columns)
        digits = get_setting('FLOAT_DIGITS')
        for row in self.rows:
            writer.writerow([format_value(v, digits) for v in row])
        return buffer.getvalue()

    def write(self, path):
        """Write the table to ``path``; ``-`` returns the text instead."""
        text = self.render()
        if str(path) != '-':
            target = FilePath(path)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding='utf-8', newline='')
        return text


def read_table(path):
    """(metadata dict, header, rows of strings) from a table written by ResultsTable."""
    metadata = {}
    data_lines = []
    with open(path, encoding='utf-8', newline='') as handle:
        for line in handle:
            if line.startswith('# '):
                key, _, value = line[2:].rstrip('\n').partition(': ')
                metadata[key] = value
            else:
                data_lines.append(line)
    reader = csv.reader(data_lines)
    header = next(reader, [])
    return metadata, header, list(reader)
