"""Minimal SVG spacetime diagrams: lattice events, worldlines, foliation leaves."""

from __future__ import annotations

from typing import Iterable, Sequence

from .lattice import Event
from .observers import Window

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_SCALE = 16.0  # pixels per lattice unit
_MARGIN = 24.0


def _xy(e: Event, window: Window) -> tuple[float, float]:
    px = _MARGIN + (e.x - window.x_range[0]) * _SCALE
    py = _MARGIN + (window.t_range[1] - e.t) * _SCALE  # time increases upward
    return px, py


def _polyline(events: Sequence[Event], window: Window, color: str, width: float, dash: str = "") -> str:
    pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in (_xy(e, window) for e in events))
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<polyline points="{pts}" fill="none" stroke="{color}" '
        f'stroke-width="{width:.1f}"{dash_attr}/>'
    )


def spacetime_svg(
    window: Window,
    worldlines: Iterable[tuple[str, Sequence[Event]]] = (),
    leaves: Iterable[tuple[str, Sequence[Event]]] = (),
    title: str = "",
) -> str:
    """Render a window of the lattice with highlighted chains and leaves.

    ``worldlines`` are drawn as thick solid paths, ``leaves`` (each a set of
    simultaneous events, sorted here by x) as thin dashed staircase lines.
    Returns the SVG document as a string.
    """
    width = 2 * _MARGIN + (window.x_range[1] - window.x_range[0]) * _SCALE
    height = 2 * _MARGIN + (window.t_range[1] - window.t_range[0]) * _SCALE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{_MARGIN:.0f}" y="16" font-size="12" font-family="monospace">{title}</text>')

    for e in window.events():
        x, y = _xy(e, window)
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="1.2" fill="#bbbbbb"/>')

    for i, (label, events) in enumerate(leaves):
        color = _COLORS[(i + 3) % len(_COLORS)]
        ordered = sorted(events, key=lambda e: e.x)
        if len(ordered) >= 2:
            parts.append(_polyline(ordered, window, color, 1.0, dash="3,2"))

    for i, (label, events) in enumerate(worldlines):
        color = _COLORS[i % len(_COLORS)]
        parts.append(_polyline(list(events), window, color, 2.0))
        if events:
            x, y = _xy(events[-1], window)
            parts.append(
                f'<text x="{x + 3:.1f}" y="{y:.1f}" font-size="10" '
                f'font-family="monospace" fill="{color}">{label}</text>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
