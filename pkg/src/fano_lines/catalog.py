"""Named-surface catalog backed by a human-readable text file.

Surfaces are defined in ``catalog.txt`` (one expression per name, in the
variables x, y, z, t) so the catalog can be extended without touching any
code.  Names ending in ``:d`` declare one-parameter families resolved as
``name:<degree>``, e.g. ``fermat:5``.
"""

from __future__ import annotations

from importlib import resources

from .exact_poly import MultiPoly
from .parser import parse_poly

__all__ = ["SURFACE_RING", "CatalogError", "catalog_entries", "named_surface"]

SURFACE_RING = ("x", "y", "z", "t")

_FAMILY_SUFFIX = ":d"
_MIN_FAMILY_DEGREE = 3


class CatalogError(KeyError):
    """An unknown catalog name or a malformed family parameter."""

    def __str__(self):  # keep the message readable, not repr-quoted
        return self.args[0] if self.args else ""


def _read_entries(path=None) -> dict:
    """Parse the catalog file into an ordered name -> expression map."""
    if path is None:
        text = (
            resources.files("fano_lines").joinpath("catalog.txt").read_text()
        )
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, expression = line.partition(":")
        name = name.strip()
        expression = expression.strip()
        # family names embed the parameter marker: "fermat:d: EXPR"
        if expression.startswith("d:"):
            name += _FAMILY_SUFFIX
            expression = expression[2:].strip()
        if not sep or not name or not expression:
            raise ValueError(
                f"catalog line {lineno} is not of the form 'name: expression'"
            )
        entries[name] = expression
    return entries


def catalog_entries(path=None) -> dict:
    """All catalog names mapped to their defining expressions.

    Family entries keep their parameter marker (``fermat:d``); resolve them
    through :func:`named_surface` with a concrete degree.
    """
    return _read_entries(path)


def named_surface(name: str, path=None) -> MultiPoly:
    """Resolve a catalog name to its exact polynomial in x, y, z, t.

    Raises CatalogError for names the catalog does not define and for
    malformed family parameters.
    """
    entries = _read_entries(path)
    expression = entries.get(name)
    if expression is None:
        head, sep, parameter = name.partition(":")
        family = head + _FAMILY_SUFFIX
        if sep and family in entries:
            if not parameter.isdigit():
                raise CatalogError(
                    f"family {family!r} needs an integer degree, got {parameter!r}"
                )
            d = int(parameter)
            if d < _MIN_FAMILY_DEGREE:
                raise CatalogError(
                    f"family {family!r} needs degree >= {_MIN_FAMILY_DEGREE}"
                )
            expression = entries[family].replace("{d-1}", str(d - 1)).replace(
                "{d}", str(d)
            )
        else:
            known = ", ".join(sorted(entries))
            raise CatalogError(f"unknown surface {name!r} (catalog: {known})")
    return parse_poly(expression, SURFACE_RING)
