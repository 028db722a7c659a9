"""Diagram documents: deterministic JSON export and SVG rendering."""
import json
import math
from pathlib import Path

SCHEMA_VERSION = 1
SIG_DIGITS = 12

PALETTE = ["#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def num(x):
    """Round to 12 significant digits (and drop the sign of zero)."""
    v = float(f"{float(x):.{SIG_DIGITS}g}")
    return 0.0 if v == 0 else v


def configuration_dict(expanded=None, config=None, gray=None):
    """Configuration block of a document from an expanded or projected configuration."""
    if expanded is not None:
        rings = [
            {"radius": num(r.radius), "count": r.count, "phase_index": int(round(r.phase * r.count / math.pi))}
            for r in expanded.rings
        ]
        coords = expanded.coords
        doc = {
            "kind": "expanded",
            "polygon": expanded.size,
            "rings": rings,
            "origin_labels": [int(x) for x in expanded.origin_labels],
            "axes": {"l_prime_plus": num(expanded.l_prime_plus), "l_prime_minus": num(expanded.l_prime_minus)},
            "points": [[num(x), num(y)] for x, y in coords],
        }
        if gray is not None:
            doc["gray_zone"] = {"start": num(gray.start), "width": num(gray.width)}
        return doc
    rings = [
        {"radius": num(r.radius), "count": r.count, "phase_index": int(round(r.phase * r.count / math.pi))}
        for r in config.rings
    ]
    return {
        "kind": "projected",
        "polygon": config.h,
        "rings": rings,
        "origin_labels": [int(x) for x in config.origin_points],
        "axes": {"l_plus": num(config.l_plus_angle), "l_minus": num(config.l_minus_angle)},
        "points": [[num(x), num(y)] for x, y in config.coords],
    }


def new_document(type_label, configuration, diagrams=(), extra=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "type": type_label,
        "configuration": configuration,
        "diagrams": list(diagrams),
    }
    if extra:
        doc.update(extra)
    validate_document(doc)
    return doc


def validate_document(doc):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("missing or unsupported schema version")
    n = len(doc["configuration"]["points"])
    for d in doc["diagrams"]:
        for seg in d.get("segments", []):
            if not all(0 <= p < n for p in seg[:2]):
                raise ValueError(f"diagram {d.get('name')!r} references an unknown point")
        for block in d.get("blocks", []):
            if not all(0 <= p < n for p in block):
                raise ValueError(f"diagram {d.get('name')!r} references an unknown point")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit_json(doc, path):
    Path(path).write_text(dumps(doc))


def parse_json(text):
    doc = json.loads(text)
    validate_document(doc)
    return doc


def load_json(path):
    return parse_json(Path(path).read_text())


def _fmt(x):
    return f"{x:.3f}"


def render_svg(doc, diagram=None, size=400, show_gray_zone=True, show_axes=True):
    """SVG text of one diagram (or of the bare configuration) of ``doc``."""
    conf = doc["configuration"]
    pts = conf["points"]
    rmax = max([r["radius"] for r in conf["rings"]] + [1e-9])
    scale = 0.42 * size / rmax
    cx = cy = size / 2

    def xy(p):
        x, y = pts[p]
        return cx + scale * x, cy - scale * y

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    reach = 0.48 * size
    if show_gray_zone and "gray_zone" in conf:
        g = conf["gray_zone"]
        for base in (g["start"], g["start"] + math.pi):
            a0, a1 = base, base + g["width"]
            p0 = (cx + reach * math.cos(a0), cy - reach * math.sin(a0))
            p1 = (cx + reach * math.cos(a1), cy - reach * math.sin(a1))
            out.append(
                f'<path d="M {_fmt(cx)} {_fmt(cy)} L {_fmt(p0[0])} {_fmt(p0[1])} '
                f'A {_fmt(reach)} {_fmt(reach)} 0 0 0 {_fmt(p1[0])} {_fmt(p1[1])} Z" fill="#dddddd"/>'
            )
    if show_axes:
        for name, color in (("l_prime_plus", "#d62728"), ("l_prime_minus", "#1f77b4"), ("l_plus", "#d62728"), ("l_minus", "#1f77b4")):
            if name in conf["axes"]:
                a = conf["axes"][name]
                dx, dy = reach * math.cos(a), reach * math.sin(a)
                out.append(
                    f'<line x1="{_fmt(cx - dx)}" y1="{_fmt(cy + dy)}" x2="{_fmt(cx + dx)}" y2="{_fmt(cy - dy)}" '
                    f'stroke="{color}" stroke-width="0.8" stroke-dasharray="4 3"/>'
                )
    start = 0
    for ring in conf["rings"]:
        ids = list(range(start, start + ring["count"]))
        poly = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(xy, ids))
        out.append(f'<polygon points="{poly}" fill="none" stroke="#bbbbbb" stroke-width="0.8"/>')
        start += ring["count"]
    n_ring = start
    if diagram is not None:
        for k, block in enumerate(diagram.get("blocks", [])):
            if len(block) > 1:
                color = PALETTE[k % len(PALETTE)]
                for p in block:
                    x, y = xy(p)
                    out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{color}"/>')
        for seg in diagram.get("segments", []):
            a, b = seg[0], seg[1]
            color = PALETTE[seg[2] % len(PALETTE)] if len(seg) > 2 else "#000000"
            (x1, y1), (x2, y2) = xy(a), xy(b)
            out.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{color}" stroke-width="1.6"/>'
            )
    for p in range(n_ring):
        x, y = xy(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2" fill="black"/>')
    labels = conf.get("origin_labels", [])
    for i, lab in enumerate(labels):
        ang = 2 * math.pi * i / max(1, len(labels)) + math.pi / 4
        x, y = cx + 9 * math.cos(ang), cy - 9 * math.sin(ang)
        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.5" fill="black"/>')
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="8" text-anchor="middle">{lab}</text>')
    if diagram is not None and diagram.get("name"):
        verdict = f" ({diagram['verdict']})" if diagram.get("verdict") else ""
        out.append(f'<text x="6" y="14" font-size="11">{diagram["name"]}{verdict}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(doc, path, diagram=None, **style):
    Path(path).write_text(render_svg(doc, diagram, **style))
