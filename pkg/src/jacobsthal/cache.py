"""Plain-text persistence for :class:`~jacobsthal.factorization.FactorCache`.

One entry per line, decimal throughout::

    85=5^1,17^1
    21=3^1,7^1
    # comments and blank lines are ignored

A trailing ``C<n>`` item is an unfactored composite cofactor.  Every entry
is re-validated on load; entries that fail are dropped with a warning.
"""

from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path

from jacobsthal.factorization import FactorCache, Factorization

log = logging.getLogger(__name__)


def format_entry(fac: Factorization) -> str:
    items = [f"{p}^{e}" for p, e in fac.factors]
    if fac.cofactor is not None:
        items.append(f"C{fac.cofactor}")
    return f"{fac.n}={','.join(items)}"


def parse_entry(line: str) -> Factorization:
    """Parse one cache line; raises ValueError on malformed or inconsistent input."""
    value, sep, rest = line.strip().partition("=")
    if not sep:
        raise ValueError("missing '='")
    n = int(value)
    factors, cofactor = [], None
    items = [item for item in rest.split(",") if item] if rest else []
    for i, item in enumerate(items):
        if item.startswith("C"):
            if i != len(items) - 1:
                raise ValueError("cofactor must be the last item")
            cofactor = int(item[1:])
            continue
        p, caret, e = item.partition("^")
        if not caret:
            raise ValueError(f"bad factor item {item!r}")
        factors.append((int(p), int(e)))
    fac = Factorization(n, factors, cofactor)
    fac.validate()
    return fac


def load_cache(path: str | os.PathLike) -> FactorCache:
    """Read a cache file; a missing file gives an empty cache."""
    path = Path(path)
    entries: dict[int, Factorization] = {}
    if not path.exists():
        return FactorCache()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                fac = parse_entry(line)
            except ValueError as exc:
                log.warning("%s:%d: discarding corrupt cache entry (%s)", path, lineno, exc)
                continue
            old = entries.get(fac.n)
            if old is None or (fac.complete and not old.complete):
                entries[fac.n] = fac
    return FactorCache(entries)


def verify_cache_file(path: str | os.PathLike) -> tuple[int, list[tuple[int, str]]]:
    """Return (number of valid entries, [(line number, error)]) for a cache file."""
    valid, bad = 0, []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                parse_entry(line)
                valid += 1
            except ValueError as exc:
                bad.append((lineno, str(exc)))
    return valid, bad


def save_cache(cache: FactorCache, path: str | os.PathLike) -> None:
    """Write the cache sorted by value, atomically (temp file then rename)."""
    path = Path(path)
    lines = [format_entry(fac) + "\n" for _, fac in sorted(cache.entries().items())]
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
