"""Instance file formats.

Canonical format (strict, line oriented, LF endings, single spaces):

    qkp 1
    n <int>
    m <int>
    costs <n ints>
    singletons <n ints>
    e <i> <j> <u>        (m lines, 0-based, i < j)
    budget <int>         (zero or more lines)

A best-effort reader for the published Standard-QKP text layout is
available via read_soutif: name line; n; one line of n linear
coefficients; n-1 upper-triangular quadratic rows (row i holds entries
for j=i+1..n); a blank line; constraint-type flag; capacity; one line of
n weights.  Indices in that layout are 1-based and are shifted on read.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .instance import Budget, QkpInstance

FORMAT_HEADER = "qkp 1"


def write_instance(inst: QkpInstance, budgets=()) -> str:
    """Serialize to the canonical format; output is byte-stable."""
    lines = [FORMAT_HEADER,
             f"n {inst.n}",
             f"m {inst.m}",
             "costs " + " ".join(str(q) for q in inst.costs),
             "singletons " + " ".join(str(u) for u in inst.singleton_utilities)]
    for i, j, u in inst.arcs:
        lines.append(f"e {i} {j} {u}")
    for b in budgets:
        lines.append(f"budget {b.value if hasattr(b, 'value') else int(b)}")
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno, what):
    out = []
    for t in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(lineno, f"{what}: {t!r} is not an integer") from None
    return out


def read_instance(text: str, name: str = "unnamed"):
    """Parse the canonical format; returns (instance, budgets).

    The parser is strict: any structural deviation raises ParseError with
    the offending line number.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    idx = 0

    def expect(prefix):
        nonlocal idx
        if idx >= len(lines):
            raise ParseError(idx + 1, f"expected {prefix!r} section, got end of file")
        line = lines[idx]
        idx += 1
        if not line.startswith(prefix + " ") and line != prefix:
            raise ParseError(idx, f"expected {prefix!r} section, got {line!r}")
        return line[len(prefix):].split(), idx

    if idx >= len(lines) or lines[idx] != FORMAT_HEADER:
        raise ParseError(1, f"missing header {FORMAT_HEADER!r}")
    idx += 1

    toks, ln = expect("n")
    if len(toks) != 1:
        raise ParseError(ln, "n line must carry exactly one integer")
    n = _ints(toks, ln, "n")[0]
    if n < 0:
        raise ParseError(ln, "n must be nonnegative")

    toks, ln = expect("m")
    if len(toks) != 1:
        raise ParseError(ln, "m line must carry exactly one integer")
    m = _ints(toks, ln, "m")[0]

    toks, ln = expect("costs")
    costs = _ints(toks, ln, "costs")
    if len(costs) != n:
        raise ParseError(ln, f"expected {n} costs, got {len(costs)}")
    if any(q < 0 for q in costs):
        raise ParseError(ln, "negative node cost")

    toks, ln = expect("singletons")
    singles = _ints(toks, ln, "singletons")
    if len(singles) != n:
        raise ParseError(ln, f"expected {n} singleton utilities, got {len(singles)}")

    arcs = []
    seen = set()
    for _ in range(m):
        if idx >= len(lines):
            raise ParseError(idx + 1, f"expected {m} edge lines, file ended early")
        line = lines[idx]
        idx += 1
        parts = line.split()
        if len(parts) != 4 or parts[0] != "e":
            raise ParseError(idx, f"malformed edge line {line!r}")
        i, j, u = _ints(parts[1:], idx, "edge")
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(idx, f"edge endpoint out of range in {line!r}")
        if i >= j:
            raise ParseError(idx, "arc endpoints not ascending")
        if u <= 0:
            raise ParseError(idx, "pairwise utility must be positive")
        if (i, j) in seen:
            raise ParseError(idx, f"duplicate edge ({i},{j})")
        seen.add((i, j))
        arcs.append((i, j, u))

    budgets = []
    while idx < len(lines):
        line = lines[idx]
        idx += 1
        parts = line.split()
        if len(parts) != 2 or parts[0] != "budget":
            raise ParseError(idx, f"unexpected trailing line {line!r}")
        b = _ints(parts[1:], idx, "budget")[0]
        if b < 0:
            raise ParseError(idx, "budget must be nonnegative")
        budgets.append(Budget(value=b))

    inst = QkpInstance(n=n, costs=tuple(costs), singleton_utilities=tuple(singles),
                       arcs=tuple(arcs), name=name)
    return inst, budgets


def read_soutif(text: str, name: str = "unnamed"):
    """Read the published Standard-QKP layout (1-based, upper triangular)."""
    lines = [l.rstrip() for l in text.split("\n")]
    idx = 0

    def next_nonempty(required=True):
        nonlocal idx
        while idx < len(lines) and lines[idx].strip() == "":
            idx += 1
        if idx >= len(lines):
            if required:
                raise ParseError(idx + 1, "unexpected end of file")
            return None, idx
        idx += 1
        return lines[idx - 1], idx

    ref_line, _ = next_nonempty()
    n_line, ln = next_nonempty()
    try:
        n = int(n_line.split()[0])
    except (ValueError, IndexError):
        raise ParseError(ln, f"expected node count, got {n_line!r}") from None

    lin_line, ln = next_nonempty()
    singles = _ints(lin_line.split(), ln, "linear coefficients")
    if len(singles) != n:
        raise ParseError(ln, f"expected {n} linear coefficients, got {len(singles)}")

    arcs = []
    for i in range(n - 1):
        row_line, ln = next_nonempty()
        row = _ints(row_line.split(), ln, "quadratic row")
        if len(row) != n - 1 - i:
            raise ParseError(ln, f"quadratic row {i + 1} has {len(row)} entries, "
                                 f"expected {n - 1 - i}")
        for off, u in enumerate(row):
            if u < 0:
                raise ParseError(ln, "negative pairwise utility")
            if u > 0:
                arcs.append((i, i + 1 + off, u))

    flag_line, ln = next_nonempty()
    if flag_line.strip() not in ("0", "1"):
        raise ParseError(ln, f"expected constraint-type flag 0/1, got {flag_line!r}")
    cap_line, ln = next_nonempty()
    budget = _ints(cap_line.split(), ln, "capacity")[0]
    weight_line, ln = next_nonempty()
    costs = _ints(weight_line.split(), ln, "weights")
    if len(costs) != n:
        raise ParseError(ln, f"expected {n} weights, got {len(costs)}")

    inst = QkpInstance(n=n, costs=tuple(costs), singleton_utilities=tuple(singles),
                       arcs=tuple(arcs), name=name or ref_line.strip())
    return inst, [Budget(value=budget)]


def load_instance(path, fmt: str = "canonical"):
    """Read an instance file; fmt is 'canonical' or 'soutif'."""
    path = Path(path)
    text = path.read_text()
    if fmt == "canonical":
        return read_instance(text, name=path.stem)
    if fmt == "soutif":
        return read_soutif(text, name=path.stem)
    raise ParseError(0, f"unknown format {fmt!r}")


def save_instance(path, inst: QkpInstance, budgets=()) -> None:
    Path(path).write_text(write_instance(inst, budgets))


def write_manifest(path, spec_dict: dict, instance_file: str, budgets) -> None:
    data = {"spec": spec_dict, "instance_file": instance_file,
            "budgets": [b.value if hasattr(b, "value") else int(b) for b in budgets]}
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
