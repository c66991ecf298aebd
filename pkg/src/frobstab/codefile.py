"""Plain-text code files.

::

    # comments start with '#'
    ring: Z4
    n: 2
    generators:
    1 0 | 1 2
    0 1 | 2 3

Rows hold 2n element codes; a single ``|`` after column n is allowed and
ignored. An empty generator list is the zero code.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from frobstab.code import Code
from frobstab.errors import CodeFormatError
from frobstab.ring import build_ring


def parse_code_file(text: str) -> Code:
    ring_spec = None
    n = None
    rows = []
    in_rows = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not in_rows:
            key, sep, value = line.partition(":")
            key = key.strip().lower()
            if key == "ring" and sep:
                ring_spec = value.strip()
            elif key == "n" and sep:
                try:
                    n = int(value)
                except ValueError:
                    raise CodeFormatError(f"line {lineno}: n must be an integer, got {value.strip()!r}")
            elif key == "generators" and sep and not value.strip():
                in_rows = True
            else:
                raise CodeFormatError(f"line {lineno}: unexpected header {line!r}")
            continue
        tokens = line.split()
        if "|" in tokens:
            if tokens.count("|") > 1 or n is None or tokens.index("|") != n:
                raise CodeFormatError(f"line {lineno}: '|' may only follow column n")
            tokens.remove("|")
        try:
            rows.append([int(t) for t in tokens])
        except ValueError:
            raise CodeFormatError(f"line {lineno}: non-integer entry in {line!r}")
    if ring_spec is None or n is None or not in_rows:
        raise CodeFormatError("code file needs 'ring:', 'n:' and 'generators:' headers")
    if n < 1:
        raise CodeFormatError("n must be positive")
    ring = build_ring(ring_spec)
    for i, row in enumerate(rows, 1):
        if len(row) != 2 * n:
            raise CodeFormatError(f"generator row {i} has {len(row)} entries, expected {2 * n}")
        bad = [x for x in row if not 0 <= x < ring.q]
        if bad:
            raise CodeFormatError(f"generator row {i}: element code {bad[0]} outside 0..{ring.q - 1}")
    return Code(ring, n, rows)


def legend(ring) -> str | None:
    """``# legend: 0=0 1=1 2=x ...`` for rings whose codes are not plain residues."""
    if ring.family == "Zpk":
        return None
    return "# legend: " + " ".join(f"{i}={ring.name(i)}" for i in range(ring.q))


def emit_code_file(C: Code, with_legend: bool = True) -> str:
    lines = []
    if with_legend and legend(C.ring):
        lines.append(legend(C.ring))
    lines += [f"ring: {C.ring.spec}", f"n: {C.n}", "generators:"]
    for row in C.generators:
        a = " ".join(str(int(x)) for x in row[:C.n])
        b = " ".join(str(int(x)) for x in row[C.n:])
        lines.append(f"{a} | {b}")
    return "\n".join(lines) + "\n"


def bundled_examples() -> list[str]:
    return sorted(p.name for p in resources.files("frobstab").joinpath("data").iterdir()
                  if p.name.endswith(".code"))


def read_code(path: str) -> Code:
    """Read a code file from disk, falling back to the bundled examples by name."""
    p = Path(path)
    if p.exists():
        return parse_code_file(p.read_text())
    name = p.name if p.name.endswith(".code") else p.name + ".code"
    if name in bundled_examples():
        return parse_code_file(resources.files("frobstab").joinpath("data", name).read_text())
    raise CodeFormatError(f"no code file {path!r} (bundled: {', '.join(bundled_examples())})")
