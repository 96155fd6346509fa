"""CSS code builders: two-block products over rings of circulants.

Two templates are supported. The first pairs a square protograph A with a
scalar polynomial b:

    H_X = [A | b I_m]      H_Z = [b^T I_n | A^T]

the second pairs two commuting blocks (single polynomials in practice):

    H_X = [A | B]          H_Z = [B^T | A^T]

Both are validated against H_X . H_Z^T = 0; a failure means the inputs do
not commute (possible for multi-cell second-template protographs) or a bug.
The ships-with [[882,24]] code uses lift 63, a 7x7 circulant-banded A with
entries {x^27, x^54, 1} and b = 1 + x + x^6.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf2
from .gf2 import SparseBinaryMatrix, hstack, nullspace_basis, rank, syndrome
from .rings import Protograph, RingElement, lift_to_binary


class CSSValidationError(ValueError):
    """Raised when a constructed pair of check matrices fails H_X H_Z^T = 0."""


@dataclass
class CSSCode:
    """Paired X/Z parity checks with logical-operator bases.

    Invariants: ``h_x . h_z^T = 0``; ``k = n - rank(h_x) - rank(h_z)``;
    every X logical has zero ``h_z`` syndrome and is outside the row space
    of ``h_x`` (mirrored for Z); both logical lists have length ``k``.
    """

    name: str
    n: int
    k: int
    h_x: SparseBinaryMatrix
    h_z: SparseBinaryMatrix
    logical_x: list[np.ndarray] = field(repr=False)
    logical_z: list[np.ndarray] = field(repr=False)


def css_product_is_zero(h_x: SparseBinaryMatrix, h_z: SparseBinaryMatrix) -> bool:
    """Check the commutation condition row by row."""
    if h_x.cols != h_z.cols:
        return False
    for r in range(h_x.rows):
        row = np.zeros(h_x.cols, dtype=np.uint8)
        row[h_x.row_support[r]] = 1
        if syndrome(h_z, row).any():
            return False
    return True


def logical_operators(h_x: SparseBinaryMatrix, h_z: SparseBinaryMatrix) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Extract k X-type and k Z-type logical representatives.

    X logicals live in the kernel of h_z, reduced modulo the row space of
    h_x and kept only while independent; any valid basis is acceptable
    since logical failure is basis-independent.
    """
    lx = gf2.independent_rows(gf2.reduce_mod_rowspace(h_x, nullspace_basis(h_z)), h_x.cols)
    lz = gf2.independent_rows(gf2.reduce_mod_rowspace(h_z, nullspace_basis(h_x)), h_z.cols)
    return lx, lz


def _assemble(name: str, h_x: SparseBinaryMatrix, h_z: SparseBinaryMatrix,
              with_logicals: bool = True) -> CSSCode:
    if not css_product_is_zero(h_x, h_z):
        raise CSSValidationError(f"{name}: H_X . H_Z^T != 0")
    n = h_x.cols
    k = n - rank(h_x) - rank(h_z)
    if with_logicals:
        lx, lz = logical_operators(h_x, h_z)
        if len(lx) != k or len(lz) != k:
            raise CSSValidationError(f"{name}: logical extraction found "
                                     f"({len(lx)}, {len(lz)}) operators, expected k={k}")
    else:
        lx, lz = [], []
    return CSSCode(name=name, n=n, k=k, h_x=h_x, h_z=h_z, logical_x=lx, logical_z=lz)


def build_ghp(a: Protograph, b: RingElement, name: str = "ghp",
              with_logicals: bool = True) -> CSSCode:
    """Square-protograph product with a scalar diagonal block."""
    if a.rows != a.cols:
        raise ValueError("protograph must be square")
    if a.lift != b.lift:
        raise ValueError("protograph and polynomial lift mismatch")
    m = a.rows
    h_x = hstack(lift_to_binary(a), lift_to_binary(Protograph.diagonal(b, m)))
    h_z = hstack(lift_to_binary(Protograph.diagonal(b.transpose(), m)),
                 lift_to_binary(a.transpose()))
    return _assemble(name, h_x, h_z, with_logicals)


def build_gb(a: Protograph | RingElement, b: Protograph | RingElement,
             name: str = "gb", with_logicals: bool = True) -> CSSCode:
    """Two-block template from a commuting pair (single circulants commute)."""
    if isinstance(a, RingElement):
        a = Protograph([[a]])
    if isinstance(b, RingElement):
        b = Protograph([[b]])
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("blocks must have the same shape")
    if a.lift != b.lift:
        raise ValueError("block lift mismatch")
    h_x = hstack(lift_to_binary(a), lift_to_binary(b))
    h_z = hstack(lift_to_binary(b.transpose()), lift_to_binary(a.transpose()))
    return _assemble(name, h_x, h_z, with_logicals)


def _builtin_882_grid() -> list[list[list[int] | None]]:
    grid: list[list[list[int] | None]] = [[None] * 7 for _ in range(7)]
    for i in range(7):
        grid[i][i] = [27]
        grid[i][(i - 1) % 7] = [54]
        grid[i][(i - 2) % 7] = [0]
    return grid


@lru_cache(maxsize=1)
def ghp_882_24() -> CSSCode:
    """The built-in [[882, 24]] code (lift 63, 7x7 banded circulant protograph)."""
    a = Protograph.from_exponent_grid(63, _builtin_882_grid())
    b = RingElement.from_exponents(63, [0, 1, 6])
    return build_ghp(a, b, name="ghp-882-24")


BUILTIN_CODES = {"ghp-882-24": ghp_882_24}


# -- code definition files ---------------------------------------------------

def parse_keyvalue(text: str) -> dict[str, str]:
    """Parse '#'-commented ``key = value`` lines into a dict."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key in out:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def _parse_exponents(value: str, lift: int, where: str) -> list[int]:
    if not value or value == "-":
        return []
    out = [int(tok) for tok in value.replace(",", " ").split()]
    bad = [e for e in out if e < 0 or e >= lift]
    if bad:
        raise ValueError(f"{where}: exponents {bad} outside [0, {lift})")
    return out


def _grid_from_config(cfg: dict[str, str], prefix: str, rows: int, cols: int,
                      lift: int):
    grid: list[list[list[int]]] = [[[] for _ in range(cols)] for _ in range(rows)]
    for key, value in cfg.items():
        if not key.startswith(prefix + "["):
            continue
        idx = key[len(prefix):]
        try:
            i, j = (int(t.strip("[]")) for t in idx.replace("][", "|").strip("[]").split("|"))
        except Exception as exc:
            raise ValueError(f"bad cell key {key!r}") from exc
        if not (0 <= i < rows and 0 <= j < cols):
            raise ValueError(f"cell {key!r} outside {rows}x{cols} protograph")
        grid[i][j] = _parse_exponents(value, lift, key)
    return grid


def code_from_config_text(text: str) -> CSSCode:
    """Build a code from a definition file (template, lift, cell exponent lists)."""
    cfg = parse_keyvalue(text)
    try:
        template = cfg["template"]
        lift = int(cfg["lift"])
    except KeyError as exc:
        raise ValueError(f"code config missing key: {exc}") from exc
    name = cfg.get("name", template)
    if template == "ghp":
        rows = int(cfg.get("rows", 1))
        cols = int(cfg.get("cols", rows))
        a = Protograph.from_exponent_grid(
            lift, _grid_from_config(cfg, "a", rows, cols, lift))
        if "b" not in cfg:
            raise ValueError("ghp template requires the scalar polynomial 'b'")
        b = RingElement.from_exponents(lift, _parse_exponents(cfg["b"], lift, "b"))
        return build_ghp(a, b, name=name)
    if template == "gb":
        rows = int(cfg.get("rows", 1))
        cols = int(cfg.get("cols", rows))
        if rows == 1 and cols == 1 and "a" in cfg:
            if "b" not in cfg:
                raise ValueError("gb template requires both polynomials 'a' and 'b'")
            a = RingElement.from_exponents(lift, _parse_exponents(cfg["a"], lift, "a"))
            b = RingElement.from_exponents(lift, _parse_exponents(cfg["b"], lift, "b"))
            return build_gb(a, b, name=name)
        a = Protograph.from_exponent_grid(
            lift, _grid_from_config(cfg, "a", rows, cols, lift))
        b = Protograph.from_exponent_grid(
            lift, _grid_from_config(cfg, "b", rows, cols, lift))
        return build_gb(a, b, name=name)
    raise ValueError(f"unknown template {template!r} (expected 'ghp' or 'gb')")


def load_code(source: str) -> CSSCode:
    """Resolve a built-in code name or a code definition file path."""
    if source in BUILTIN_CODES:
        return BUILTIN_CODES[source]()
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"unknown code {source!r}: not a built-in name "
                         f"and not a readable file ({exc})") from exc
    return code_from_config_text(text)
