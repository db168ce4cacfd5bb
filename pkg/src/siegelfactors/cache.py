"""Line-oriented expansion cache files.

Layout::

    format = siegelfactors-expansion 1
    weight = 10
    recipe = ...
    det_bound = 40
    lambda_p2 = ...
    section = ring
    forms = E4*E6 chi10
    0 0 0 : 1 0
    ...
    section = cusp
    forms = S10_0
    ...

Header lines are ``key = value``; each section lists its forms and then one
record ``a b c : v1 v2 ...`` per reduced index, sorted by (det, a, b, c).
Serialization is canonical, so parsing and re-serializing is byte-identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .siegel.forms import FourierExpansion, reduced_forms

__all__ = [
    "FORMAT",
    "RECIPE",
    "LAMBDA_P2_CONVENTION",
    "CACHE_ENV",
    "CacheFormatError",
    "MissingCache",
    "CacheSection",
    "CacheFile",
    "cache_dir",
    "cache_path",
    "build_cache",
    "find_cache",
]

FORMAT = "siegelfactors-expansion 1"
RECIPE = "igusa generators E4 E6 chi10 chi12; Eisenstein coefficients from Cohen H"
LAMBDA_P2_CONVENTION = "T(p^2) is the full similitude-p^2 coset sum; spin quartic of Andrianov"
CACHE_ENV = "SIEGELFACTORS_CACHE"
HEADER_KEYS = ("format", "weight", "recipe", "det_bound", "lambda_p2")


class CacheFormatError(ValueError):
    pass


class MissingCache(FileNotFoundError):
    pass


@dataclass
class CacheSection:
    name: str
    forms: list
    records: list  # [((a, b, c), (v1, v2, ...)), ...]

    def expansions(self, weight: int, det_bound) -> list:
        out = []
        for i, name in enumerate(self.forms):
            coeffs = {key: vals[i] for key, vals in self.records if vals[i] != 0}
            out.append(FourierExpansion(weight, det_bound, coeffs, name))
        return out


@dataclass
class CacheFile:
    header: dict
    sections: list = field(default_factory=list)

    @property
    def weight(self) -> int:
        return int(self.header["weight"])

    @property
    def det_bound(self) -> Fraction:
        return Fraction(self.header["det_bound"])

    def section(self, name: str) -> CacheSection:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def expansions(self, name: str) -> list:
        return self.section(name).expansions(self.weight, self.det_bound)

    # serialization ---------------------------------------------------------
    def serialize(self) -> str:
        lines = [f"{key} = {self.header[key]}" for key in HEADER_KEYS]
        for sec in self.sections:
            lines.append(f"section = {sec.name}")
            lines.append("forms =" + "".join(" " + f for f in sec.forms))
            for (a, b, c), vals in sec.records:
                lines.append(f"{a} {b} {c} :" + "".join(" " + str(Fraction(v)) for v in vals))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CacheFile":
        if not text.endswith("\n"):
            raise CacheFormatError("cache file must end with a newline")
        lines = text[:-1].split("\n")
        header = {}
        pos = 0
        for key in HEADER_KEYS:
            if pos >= len(lines) or not lines[pos].startswith(f"{key} = "):
                raise CacheFormatError(f"expected header line '{key} = ...' at line {pos + 1}")
            header[key] = lines[pos][len(key) + 3:]
            pos += 1
        if header["format"] != FORMAT:
            raise CacheFormatError(f"unsupported format {header['format']!r}")
        sections = []
        while pos < len(lines):
            line = lines[pos]
            if not line.startswith("section = "):
                raise CacheFormatError(f"expected section line at line {pos + 1}")
            name = line[len("section = "):]
            pos += 1
            if pos >= len(lines) or not lines[pos].startswith("forms ="):
                raise CacheFormatError(f"expected forms line at line {pos + 1}")
            forms = lines[pos][len("forms ="):].split()
            pos += 1
            records = []
            while pos < len(lines) and not lines[pos].startswith("section = "):
                left, sep, right = lines[pos].partition(" :")
                if not sep:
                    raise CacheFormatError(f"malformed record at line {pos + 1}")
                key = tuple(int(x) for x in left.split())
                vals = tuple(Fraction(x) for x in right.split())
                if len(key) != 3 or len(vals) != len(forms):
                    raise CacheFormatError(f"malformed record at line {pos + 1}")
                records.append((key, vals))
                pos += 1
            order = [key for key, _ in records]
            if order != sorted(order, key=_record_order):
                raise CacheFormatError(f"records of section {name} are not sorted by (det, a, b, c)")
            sections.append(CacheSection(name, forms, records))
        return cls(header, sections)

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = self.serialize().encode()
        if path.exists() and path.read_bytes() == data:
            return path
        path.write_bytes(data)
        return path

    @classmethod
    def read(cls, path) -> "CacheFile":
        path = Path(path)
        if not path.exists():
            raise MissingCache(f"no cache file at {path}")
        return cls.parse(path.read_bytes().decode())


def _record_order(key: tuple) -> tuple:
    a, b, c = key
    return (4 * a * c - b * b, a, b, c)


def cache_dir() -> Path:
    """Directory from $SIEGELFACTORS_CACHE, defaulting to ~/.cache/siegelfactors."""
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "siegelfactors"


def cache_path(weight: int, det_bound, directory=None) -> Path:
    directory = Path(directory) if directory is not None else cache_dir()
    bound = str(Fraction(det_bound)).replace("/", "-")
    return directory / f"weight{weight}_det{bound}.cache"


def _section(name: str, forms: list, det_bound) -> CacheSection:
    records = []
    for key in reduced_forms(det_bound):
        records.append((key, tuple(Fraction(F.coefficients.get(key, 0)) for F in forms)))
    return CacheSection(name, [F.name for F in forms], records)


def build_cache(weight: int, det_bound) -> CacheFile:
    from .siegel.ring import cusp_subspace, ring_basis
    ring = ring_basis(weight, det_bound)
    cusp = cusp_subspace(weight, det_bound)
    header = {
        "format": FORMAT,
        "weight": str(weight),
        "recipe": RECIPE,
        "det_bound": str(Fraction(det_bound)),
        "lambda_p2": LAMBDA_P2_CONVENTION,
    }
    return CacheFile(header, [_section("ring", ring, det_bound), _section("cusp", cusp, det_bound)])


def find_cache(weight: int, min_det_bound=0, directory=None) -> CacheFile:
    """The cache of the given weight with the largest det_bound at least ``min_det_bound``."""
    directory = Path(directory) if directory is not None else cache_dir()
    best = None
    if directory.exists():
        for path in sorted(directory.glob(f"weight{weight}_det*.cache")):
            try:
                bound = Fraction(path.stem.split("_det", 1)[1].replace("-", "/"))
            except (ValueError, IndexError):
                continue
            if bound >= Fraction(min_det_bound) and (best is None or bound > best[0]):
                best = (bound, path)
    if best is None:
        raise MissingCache(f"no weight-{weight} cache with det_bound >= {min_det_bound} in {directory}")
    return CacheFile.read(best[1])
