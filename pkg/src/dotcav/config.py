"""Strict line-based scenario configuration.

Grammar: `[section]` headers, `key = value` lines, `#` comments. Values are
numbers (an optional unit suffix nm | ns | ps | D converts to the canonical
unit: ps becomes ns, Debye becomes C*m), booleans (true/false), or strings
(bare or double-quoted). Unknown sections or keys are hard errors with line
numbers - a typo in a physics parameter must never be silently ignored.

A scenario file holds one `[scenario]` section naming the command plus one
optional section, named like the command, holding its parameters:

    [scenario]
    command = indist
    seed = 42

    [indist]
    gamma = 7.0711
    alpha = 1
    delta = 100
    model = eq3
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from .units import DEBYE


class ConfigError(Exception):
    """Malformed or inconsistent scenario configuration (CLI exit code 2)."""


_NUMBER_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(nm|ns|ps|D)?$"
)

# suffix -> multiplicative factor into the canonical unit
_UNIT_FACTORS = {None: 1.0, "nm": 1.0, "ns": 1.0, "ps": 1e-3, "D": DEBYE}


@dataclass
class RawConfig:
    """Parsed but not yet validated: sections[name][key] = (raw value, line)."""

    sections: dict[str, dict[str, tuple[str, int]]]

    def section(self, name: str) -> dict[str, tuple[str, int]]:
        return self.sections.get(name, {})


def parse_config(text: str) -> RawConfig:
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: unterminated section header {raw.strip()!r}")
            current = line[1:-1].strip()
            if not current:
                raise ConfigError(f"line {lineno}: empty section name")
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: 'key = value' before any [section] header")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in sections[current]:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{current}]")
        sections[current][key] = (value, lineno)
    return RawConfig(sections=sections)


def _parse_value(kind: str, raw: str, key: str, lineno: int) -> Any:
    if kind in ("str", "path"):
        if len(raw) >= 2 and raw[0] == '"' and raw[-1] == '"':
            return raw[1:-1]
        return raw
    if kind == "bool":
        low = raw.lower()
        if low in ("true", "yes", "on"):
            return True
        if low in ("false", "no", "off"):
            return False
        raise ConfigError(f"line {lineno}: {key}: expected a boolean, got {raw!r}")
    match = _NUMBER_RE.match(raw)
    if not match:
        raise ConfigError(f"line {lineno}: {key}: expected a number, got {raw!r}")
    value = float(match.group(1)) * _UNIT_FACTORS[match.group(2)]
    if kind == "int":
        if match.group(2) is not None:
            raise ConfigError(f"line {lineno}: {key}: unit suffix not allowed on an integer")
        if value != int(value):
            raise ConfigError(f"line {lineno}: {key}: expected an integer, got {raw!r}")
        return int(value)
    if kind == "float":
        return value
    raise AssertionError(f"unknown schema kind {kind!r}")


_REQUIRED = object()


def resolve_section(
    raw: RawConfig, name: str, schema: dict[str, tuple[str, Any]]
) -> dict[str, Any]:
    """Validate one section against its schema and fill defaults.

    Schema entries are key -> (kind, default); default REQUIRED means the key
    must be present. Unknown keys raise with their line number.
    """
    entries = raw.section(name)
    for key, (_, lineno) in entries.items():
        if key not in schema:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} in [{name}] "
                f"(known: {', '.join(sorted(schema))})"
            )
    resolved: dict[str, Any] = {}
    for key, (kind, default) in schema.items():
        if key in entries:
            raw_value, lineno = entries[key]
            resolved[key] = _parse_value(kind, raw_value, key, lineno)
        elif default is _REQUIRED:
            raise ConfigError(f"[{name}]: missing required key {key!r}")
        else:
            resolved[key] = default
    return resolved


REQUIRED = _REQUIRED
