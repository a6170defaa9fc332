"""Symbol interning.

Symbols are atomic tokens matched all-or-nothing.  A session-wide table maps
each distinct token name to a dense integer id; everything downstream works
on ids.
"""

from __future__ import annotations


class SymbolTable:
    """Interns symbol names to dense integer ids."""

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._names: list[str] = []

    def intern(self, name: str) -> int:
        if not name or any(c.isspace() for c in name):
            raise ValueError(f"invalid symbol name: {name!r}")
        sid = self._ids.get(name)
        if sid is None:
            sid = len(self._names)
            self._ids[name] = sid
            self._names.append(name)
        return sid

    def lookup(self, name: str) -> int | None:
        return self._ids.get(name)

    def name(self, sid: int) -> str:
        return self._names[sid]

    def names(self, sids) -> list[str]:
        return [self._names[s] for s in sids]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids
