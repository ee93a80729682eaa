"""Deterministic text serialization helpers shared by the file formats."""

from __future__ import annotations

from pathlib import Path


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (round-trip safe)."""
    return f"{float(x):.17g}"


def _emit(obj, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{key}": {_emit(val, indent + 1)}' for key, val in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent) for v in obj) + "]"
        items = ",\n".join(f"{pad}  {_emit(val, indent + 1)}" for val in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return fmt17(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dump_json(obj: dict, path: str | Path) -> None:
    """Write JSON with insertion-ordered keys and 17-significant-digit floats."""
    Path(path).write_text(_emit(obj, 0) + "\n")
