"""Text ingestion formats for groups and modules.

Group file grammar (one record per file, line oriented, '#' comments):

    name D8
    degree 4
    gen [1,2,3,0]
    gen [0,3,2,1]

Module file grammar (matrices follow the group's generator order):

    p 2
    dim 2
    mat
    1 0
    0 1
    mat
    0 1
    1 0
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameters
from .gmodules import GModule, module_from_generator_matrices
from .groups import FiniteGroup, Permutation, generate_group


def _logical_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_group_file(text: str, cap: int = 2000) -> FiniteGroup:
    name = "G"
    degree = None
    gens: list[Permutation] = []
    for line in _logical_lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "name":
            name = rest or name
        elif key == "degree":
            degree = int(rest)
        elif key == "gen":
            if degree is None:
                raise BadParameters("degree must precede gen lines")
            images = _parse_bracketed(rest)
            if len(images) != degree:
                raise BadParameters(
                    f"generator has {len(images)} images, degree is {degree}")
            gens.append(Permutation(tuple(images)))
        else:
            raise BadParameters(f"unknown group-file key {key!r}")
    if degree is None or not gens:
        raise BadParameters("group file needs a degree and at least one gen")
    return generate_group(degree, gens, name=name, cap=cap)


def _parse_bracketed(text: str) -> list[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise BadParameters(f"expected a bracketed list, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return []
    return [int(x.strip()) for x in body.split(",")]


def parse_module_file(text: str, G: FiniteGroup) -> GModule:
    lines = _logical_lines(text)
    p = None
    dim = None
    mats: list[list[list[int]]] = []
    idx = 0
    while idx < len(lines):
        line = lines[idx]
        key, _, rest = line.partition(" ")
        if key == "p":
            p = int(rest)
            idx += 1
        elif key == "dim":
            dim = int(rest)
            idx += 1
        elif key == "mat":
            if dim is None:
                raise BadParameters("dim must precede mat blocks")
            idx += 1
            rows = []
            for _ in range(dim):
                if idx >= len(lines):
                    raise BadParameters("mat block is truncated")
                rows.append([int(x) for x in lines[idx].split()])
                if len(rows[-1]) != dim:
                    raise BadParameters("mat row has wrong width")
                idx += 1
            mats.append(rows)
        else:
            raise BadParameters(f"unknown module-file key {key!r}")
    if p is None or dim is None:
        raise BadParameters("module file needs p and dim")
    return module_from_generator_matrices(
        G, p, dim, [np.array(m, dtype=np.int64) for m in mats])


def format_module_file(p: int, mats) -> str:
    lines = [f"p {p}", f"dim {len(mats[0])}"]
    for m in mats:
        lines.append("mat")
        for row in np.asarray(m, dtype=np.int64):
            lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"
