"""Shared test helpers."""
from parity_compiler.lattice import Layout, parse_layout_text


def strip_layout(spec: str, angle: float = 1.0) -> Layout:
    """One-strip layout from cell characters, e.g. ``"Q 3 2"``."""
    return parse_layout_text(spec.replace(" ", ""), default_angle=angle)
