"""Patterns, the pattern store, and the pattern-file format.

A pattern file is UTF-8 text with one pattern per line, symbols separated by
single spaces, an optional trailing ``(N)`` frequency, and ``%`` directive
lines.  ``%id NAME|GLOB ...`` declares symbol types as identification
symbols; ``#*``-style globs are permitted.  Blank lines are ignored.  There
is no other comment syntax: ``#`` and ``;`` are ordinary symbol characters.
"""

from __future__ import annotations

import fnmatch
import re
from dataclasses import dataclass, field
from enum import Enum

from .symbols import SymbolTable


class Role(Enum):
    NEW = "new"
    OLD = "old"


class Classification(Enum):
    ID = "id"
    CONTENTS = "contents"


class PatternParseError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_FREQ_RE = re.compile(r"^\((\d+)\)$")


@dataclass(frozen=True)
class Pattern:
    """An ordered sequence of interned symbols with a role and frequency."""

    symbols: tuple[int, ...]
    role: Role
    frequency: int = 1
    label: str | None = None

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("pattern must have at least one symbol")
        if self.frequency < 1:
            raise ValueError("pattern frequency must be >= 1")

    def __len__(self) -> int:
        return len(self.symbols)

    def render(self, table: SymbolTable) -> str:
        text = " ".join(table.name(s) for s in self.symbols)
        if self.frequency != 1:
            text += f" ({self.frequency})"
        return text


@dataclass
class PatternStore:
    """Holds the stored (old) patterns, incoming (new) patterns and the
    id-symbol declarations that drive classification."""

    table: SymbolTable = field(default_factory=SymbolTable)
    old_patterns: list[Pattern] = field(default_factory=list)
    new_patterns: list[Pattern] = field(default_factory=list)
    id_declarations: list[str] = field(default_factory=list)

    def add_text(self, text: str, role: Role) -> list[Pattern]:
        """Parse pattern-file content and add it under the given role.

        Returns the patterns added, in file order.
        """
        added: list[Pattern] = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("%"):
                self._parse_directive(line, line_no)
                continue
            tokens = line.split()
            frequency = 1
            m = _FREQ_RE.match(tokens[-1])
            if m:
                frequency = int(m.group(1))
                if frequency < 1:
                    raise PatternParseError(line_no, f"bad frequency {tokens[-1]}")
                tokens = tokens[:-1]
            if not tokens:
                raise PatternParseError(line_no, "empty pattern line")
            try:
                symbols = tuple(self.table.intern(t) for t in tokens)
            except ValueError as exc:
                raise PatternParseError(line_no, str(exc)) from exc
            pattern = Pattern(symbols, role, frequency)
            added.append(pattern)
            if role is Role.OLD:
                self.old_patterns.append(pattern)
            else:
                self.new_patterns.append(pattern)
        return added

    def _parse_directive(self, line: str, line_no: int) -> None:
        parts = line.split()
        if parts[0] != "%id":
            raise PatternParseError(line_no, f"unknown directive {parts[0]!r}")
        if len(parts) < 2:
            raise PatternParseError(line_no, "%id needs at least one name or glob")
        for glob in parts[1:]:
            if glob in self.id_declarations:
                raise PatternParseError(line_no, f"duplicate %id declaration {glob!r}")
            self.id_declarations.append(glob)

    def serialize(self, role: Role) -> str:
        """Pattern-file text for one role; parse(serialize(x)) round-trips."""
        lines = []
        if role is Role.OLD and self.id_declarations:
            lines.append("%id " + " ".join(self.id_declarations))
        pats = self.old_patterns if role is Role.OLD else self.new_patterns
        lines.extend(p.render(self.table) for p in pats)
        return "\n".join(lines) + "\n"

    def classification(self) -> list[Classification]:
        """Per-type classification, uniform across the store.

        Explicit %id declarations are authoritative.  With no declarations,
        fall back to: the leading symbol of every old pattern, plus any type
        whose name begins with '#'.
        """
        n = len(self.table)
        out = [Classification.CONTENTS] * n
        if self.id_declarations:
            for sid in range(n):
                name = self.table.name(sid)
                if any(fnmatch.fnmatchcase(name, g) for g in self.id_declarations):
                    out[sid] = Classification.ID
        else:
            for pat in self.old_patterns:
                out[pat.symbols[0]] = Classification.ID
            for sid in range(n):
                if self.table.name(sid).startswith("#"):
                    out[sid] = Classification.ID
        return out

    def is_id(self) -> list[bool]:
        return [c is Classification.ID for c in self.classification()]


def parse_patterns(text: str, role: Role, store: PatternStore | None = None) -> PatternStore:
    """Parse pattern-file content into a store (a new one by default)."""
    if store is None:
        store = PatternStore()
    store.add_text(text, role)
    return store
