"""Static SVG rendering of the ratio distribution.

Hand-rolled rather than delegated to a plotting library so the output is
byte-identical across runs and platforms (golden-file friendly): no
timestamps, generated ids, or font-dependent metrics.
"""

from __future__ import annotations

from bisect import bisect_right

from uniqjif.model import FlagReport, RatioDistribution

WIDTH, HEIGHT = 720, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 72, 24, 40, 56

AXIS_COLOR = "#333333"
CURVE_COLOR = "#1f77b4"
FLAG_COLOR = "#e66101"
TICKS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


def _px(value: float) -> float:
    return MARGIN_LEFT + value * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)


def _py(value: float) -> float:
    return MARGIN_TOP + (1.0 - value) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _ecdf_value(distribution: RatioDistribution, ratio: float) -> float:
    """Cumulative fraction at (the step containing) the given ratio."""
    positions = [r for r, _ in distribution.ecdf]
    idx = bisect_right(positions, ratio)
    return distribution.ecdf[idx - 1][1] if idx else 0.0


def _step_path(distribution: RatioDistribution) -> str:
    parts = [f"M {_fmt(_px(0.0))} {_fmt(_py(0.0))}"]
    level = 0.0
    for ratio, fraction in distribution.ecdf:
        x = min(max(ratio, 0.0), 1.0)
        parts.append(f"L {_fmt(_px(x))} {_fmt(_py(level))}")
        parts.append(f"L {_fmt(_px(x))} {_fmt(_py(fraction))}")
        level = fraction
    parts.append(f"L {_fmt(_px(1.0))} {_fmt(_py(level))}")
    return " ".join(parts)


def render_ecdf_svg(distribution: RatioDistribution, flags: FlagReport | None = None) -> str:
    """SVG document: ECDF step curve, flagged journals as distinct markers."""
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" font-family="sans-serif" '
        'font-size="15">Cumulative distribution of the Uniq-JIF / JIF ratio</text>',
    ]

    x0, x1 = _px(0.0), _px(1.0)
    y0, y1 = _py(0.0), _py(1.0)
    lines.append(
        f'<g stroke="{AXIS_COLOR}" stroke-width="1" fill="none">'
        f'<path d="M {_fmt(x0)} {_fmt(y1)} L {_fmt(x0)} {_fmt(y0)} L {_fmt(x1)} {_fmt(y0)}"/></g>'
    )
    for tick in TICKS:
        tx, ty = _px(tick), _py(tick)
        lines.append(
            f'<line x1="{_fmt(tx)}" y1="{_fmt(y0)}" x2="{_fmt(tx)}" y2="{_fmt(y0 + 5)}" '
            f'stroke="{AXIS_COLOR}"/>'
            f'<text x="{_fmt(tx)}" y="{_fmt(y0 + 20)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tick:.1f}</text>'
            f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(ty)}" x2="{_fmt(x0)}" y2="{_fmt(ty)}" '
            f'stroke="{AXIS_COLOR}"/>'
            f'<text x="{_fmt(x0 - 9)}" y="{_fmt(ty + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:.1f}</text>'
        )
    lines.append(
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{HEIGHT - 12}" text-anchor="middle" '
        'font-family="sans-serif" font-size="13">Uniq-JIF / JIF ratio</text>'
        f'<text x="18" y="{_fmt((y0 + y1) / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_fmt((y0 + y1) / 2)})">Cumulative fraction of journals</text>'
    )

    if distribution.ecdf:
        lines.append(
            f'<path d="{_step_path(distribution)}" fill="none" '
            f'stroke="{CURVE_COLOR}" stroke-width="1.5"/>'
        )

    if flags is not None and flags.flagged:
        ratios = {journal: ratio for journal, ratio in distribution.entries}
        for entry in flags.flagged:
            ratio = ratios.get(entry.journal)
            if ratio is None:
                ratio = 1.0 - entry.drop
            lines.append(
                f'<circle cx="{_fmt(_px(ratio))}" cy="{_fmt(_py(_ecdf_value(distribution, ratio)))}" '
                f'r="4" fill="{FLAG_COLOR}"/>'
            )
        legend_y = MARGIN_TOP + 14
        lines.append(
            f'<circle cx="{_fmt(x0 + 14)}" cy="{legend_y}" r="4" fill="{FLAG_COLOR}"/>'
            f'<text x="{_fmt(x0 + 24)}" y="{legend_y + 4}" font-family="sans-serif" '
            'font-size="11">flagged journals</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
