"""Plain-text file formats.

``.mon``   first line the order n, then n rows of n indices (row = left factor);
           identity must be index 0.
``.hom``   first line ``dom_file cod_file``, second line the images.
``.ext``   six lines ``N file``, ``G file``, ``H file``, ``k file``, ``e file``,
           ``s file`` (monoids then homomorphisms).
``.quot``  first line ``N_file H_file``, then |H| lines of |N| class labels.
``.act``   |H| lines of |N| entries: element indices for a pre-action, or
           ``c:``-prefixed local class labels for an action class.

``#`` starts a comment anywhere.  Relative paths are resolved against the
directory of the file that names them.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Union

from .action import ActionClass, PreAction
from .errors import WSchreierError
from .extension import SplitExtension, validate_split_extension
from .monoid import FiniteMonoid, MonoidHom, validate_hom, validate_monoid
from .quotient import AdmissibleQuotient

PathLike = Union[str, Path]
EXT_KEYS = ("N", "G", "H", "k", "e", "s")


class FormatError(WSchreierError, ValueError):
    pass


def _lines(path: PathLike) -> list[str]:
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str, path) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError as exc:
        raise FormatError(f"{path}: expected integers, got {line!r}") from exc


def _resolve(base: PathLike, name: str) -> Path:
    p = Path(name)
    return p if p.is_absolute() else Path(base).parent / p


def read_monoid(path: PathLike) -> FiniteMonoid:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    n = _ints(lines[0], path)
    if len(n) != 1:
        raise FormatError(f"{path}: first line must be the order")
    n = n[0]
    rows = [_ints(line, path) for line in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"{path}: expected {n} rows of {n} entries")
    return validate_monoid(n, rows, name=Path(path).stem)


def write_monoid(m: FiniteMonoid, path: PathLike, comment: str = "") -> Path:
    path = Path(path)
    body = [f"# {comment}"] if comment else []
    body.append(str(m.order))
    body.extend(" ".join(str(x) for x in row) for row in m.rows())
    path.write_text("\n".join(body) + "\n")
    return path


def read_hom(path: PathLike, dom: FiniteMonoid = None, cod: FiniteMonoid = None) -> MonoidHom:
    lines = _lines(path)
    if len(lines) != 2:
        raise FormatError(f"{path}: expected a header line and an image line")
    names = lines[0].split()
    if len(names) != 2:
        raise FormatError(f"{path}: header must name the domain and codomain files")
    d = read_monoid(_resolve(path, names[0]))
    c = read_monoid(_resolve(path, names[1]))
    if dom is not None and d != dom:
        raise FormatError(f"{path}: domain table does not match")
    if cod is not None and c != cod:
        raise FormatError(f"{path}: codomain table does not match")
    return validate_hom(d, c, _ints(lines[1], path))


def write_hom(f: MonoidHom, path: PathLike, dom_file: str, cod_file: str) -> Path:
    path = Path(path)
    path.write_text(f"{dom_file} {cod_file}\n{' '.join(str(x) for x in f.map)}\n")
    return path


def _ext_parts(path: PathLike) -> dict:
    lines = _lines(path)
    parts = {}
    for line in lines:
        bits = line.split()
        if len(bits) != 2 or bits[0] not in EXT_KEYS:
            raise FormatError(f"{path}: bad line {line!r}; expected '<N|G|H|k|e|s> <file>'")
        parts[bits[0]] = _resolve(path, bits[1])
    missing = [k for k in EXT_KEYS if k not in parts]
    if missing:
        raise FormatError(f"{path}: missing entries {missing}")
    return parts


def read_extension_parts(path: PathLike) -> tuple:
    """``(N, G, H, k, e, s)`` with each homomorphism checked, the axioms not."""
    p = _ext_parts(path)
    N, G, H = (read_monoid(p[x]) for x in "NGH")
    k = read_hom(p["k"], N, G)
    e = read_hom(p["e"], G, H)
    s = read_hom(p["s"], H, G)
    return N, G, H, k, e, s


def read_extension(path: PathLike) -> SplitExtension:
    """Load and validate; raises the relevant axiom error on failure."""
    return validate_split_extension(*read_extension_parts(path))


def write_extension(ext: SplitExtension, path: PathLike) -> Path:
    """Write ``path`` plus its six companion files next to it."""
    path = Path(path)
    stem = path.name[: -len(path.suffix)] if path.suffix else path.name
    names = {x: f"{stem}.{x}.mon" for x in "NGH"}
    names.update({x: f"{stem}.{x}.hom" for x in "kes"})
    for x in "NGH":
        write_monoid(getattr(ext, x), path.parent / names[x])
    write_hom(ext.k, path.parent / names["k"], names["N"], names["G"])
    write_hom(ext.e, path.parent / names["e"], names["G"], names["H"])
    write_hom(ext.s, path.parent / names["s"], names["H"], names["G"])
    path.write_text("".join(f"{x} {names[x]}\n" for x in EXT_KEYS))
    return path


def read_quotient(path: PathLike) -> AdmissibleQuotient:
    lines = _lines(path)
    if not lines:
        raise FormatError(f"{path}: empty file")
    names = lines[0].split()
    if len(names) != 2:
        raise FormatError(f"{path}: header must name the N and H files")
    N = read_monoid(_resolve(path, names[0]))
    H = read_monoid(_resolve(path, names[1]))
    rows = [_ints(line, path) for line in lines[1:]]
    if len(rows) != H.order or any(len(r) != N.order for r in rows):
        raise FormatError(f"{path}: expected {H.order} rows of {N.order} labels")
    return AdmissibleQuotient(N, H, rows)


def write_quotient(Q: AdmissibleQuotient, path: PathLike, n_file: str, h_file: str) -> Path:
    path = Path(path)
    body = [f"{n_file} {h_file}"] + [" ".join(str(x) for x in row) for row in Q.fibers.tolist()]
    path.write_text("\n".join(body) + "\n")
    return path


def read_action(path: PathLike, Q: AdmissibleQuotient = None) -> Union[PreAction, ActionClass]:
    """A pre-action, or (given Q) an action class for ``c:`` entries."""
    lines = _lines(path)
    rows = [line.split() for line in lines]
    tagged = {tok.startswith("c:") for row in rows for tok in row}
    if len(tagged) > 1:
        raise FormatError(f"{path}: mixes class labels and element indices")
    try:
        values = [[int(tok[2:] if tok.startswith("c:") else tok) for tok in row] for row in rows]
    except ValueError as exc:
        raise FormatError(f"{path}: bad entry") from exc
    if Q is not None and (len(values) != Q.H.order or any(len(r) != Q.N.order for r in values)):
        raise FormatError(f"{path}: expected {Q.H.order} rows of {Q.N.order} entries")
    if tagged == {True}:
        if Q is None:
            raise FormatError(f"{path}: class labels need a quotient")
        sizes = Q.fiber_sizes
        if any(not 0 <= c < sizes[h] for h, row in enumerate(values) for c in row):
            raise FormatError(f"{path}: class label outside its fibre")
        return ActionClass(Q, values)
    return PreAction(values)


def write_action(action: Union[PreAction, ActionClass], path: PathLike) -> Path:
    path = Path(path)
    if isinstance(action, ActionClass):
        rows = [" ".join(f"c:{c}" for c in row) for row in action.class_valued.tolist()]
    else:
        rows = [" ".join(str(x) for x in row) for row in action.alpha.tolist()]
    path.write_text("\n".join(rows) + "\n")
    return path


def table_digest(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]
