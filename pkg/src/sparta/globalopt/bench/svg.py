"""svg.py: SVG drawings of the final subdivision of a two-dimensional run.

Boxes are outlined in the colour of the list they ended up in, the domain is drawn as a black polygon and every reported solution gets a star marker. The
``x2`` axis points up, so ``(x1, x2)`` is drawn at ``(x1, -x2)``.
"""
import logging
import math
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Optional, Tuple, Union

from sparta.globalopt.constants import SVG_COLORS
from sparta.globalopt.errors import ReportError
from sparta.globalopt.geometry import parse_box
from sparta.globalopt.models import RunReport
from sparta.globalopt.models.instance import TestInstance

logger = logging.getLogger(__name__)

MARGIN = 1.0
STAR_SCALE = 0.015
_ORDER = ("discarded", "convex", "active")


def _num(value: float) -> str:
    return f"{value:.12g}"


def _star(x: float, y: float, radius: float) -> str:
    points: List[Tuple[float, float]] = []
    for k in range(10):
        r = radius if k % 2 == 0 else 0.4 * radius
        angle = math.pi / 2 + k * math.pi / 5
        points.append((x + r * math.cos(angle), y - r * math.sin(angle)))
    return " ".join(f"{_num(px)},{_num(py)}" for px, py in points)


def render_svg(report: RunReport, title: Optional[str] = None) -> str:
    """Renders ``report`` as an SVG document.

    Raises:
        ReportError: If the report is not two-dimensional or carries no box dump.
    """
    if report.dimension != 2:
        raise ReportError(f"Cannot plot report (dimension {report.dimension}): only two-dimensional runs can be drawn")
    if report.boxes is None:
        raise ReportError("Cannot plot report (no box dump): rerun with box dumping enabled")
    domain = parse_box(report.domain)
    (a1, a2), (b1, b2) = domain.a, domain.b
    view = (a1 - MARGIN, -b2 - MARGIN, (b1 - a1) + 2 * MARGIN, (b2 - a2) + 2 * MARGIN)
    radius = STAR_SCALE * max(b1 - a1, b2 - a2, 1e-12)

    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1", viewBox=" ".join(_num(v) for v in view))
    ET.SubElement(root, "title").text = title or report.function
    stroke = {"fill": "none", "stroke-width": "1", "vector-effect": "non-scaling-stroke"}
    for membership in _ORDER:
        group = ET.SubElement(root, "g", {"class": membership, "stroke": SVG_COLORS[membership], **stroke})
        for box in report.boxes:
            if box.membership != membership:
                continue
            (lo1, lo2), (hi1, hi2) = box.lower, box.upper
            ET.SubElement(group, "rect", x=_num(lo1), y=_num(-hi2), width=_num(hi1 - lo1), height=_num(hi2 - lo2))
    outline = f"{_num(a1)},{_num(-a2)} {_num(b1)},{_num(-a2)} {_num(b1)},{_num(-b2)} {_num(a1)},{_num(-b2)}"
    ET.SubElement(root, "polygon", {"class": "domain", "points": outline, "stroke": SVG_COLORS["domain"], **stroke})
    markers = ET.SubElement(root, "g", {"class": "solutions", "fill": SVG_COLORS["solution"], "stroke": "none"})
    for point in report.solutions:
        ET.SubElement(markers, "polygon", points=_star(point[0], -point[1], radius))
    return ET.tostring(root, encoding="unicode")


def emit_subdivision_svg(report: RunReport, instance: Optional[TestInstance], path: Union[str, Path]) -> None:
    """Writes :func:`render_svg` output to ``path``; the instance name, if given, becomes the title."""
    svg = render_svg(report, instance.name if instance is not None else None)
    Path(path).write_text(svg + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(report.boxes or [])} boxes and {len(report.solutions)} markers to {path}")
