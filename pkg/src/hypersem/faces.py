"""Parametric face description and its SVG rendering.

Rendering is a pure function of the parameters: equal inputs produce
byte-identical documents.
"""

import math
from dataclasses import dataclass


def _clamp(x, lo, hi):
    return lo if x < lo else hi if x > hi else float(x)


@dataclass(frozen=True, eq=False)
class FaceParams:
    """Renderable face description; fields clamp to their documented ranges."""

    yaw: float = 0.0                  # degrees, [-45, 45]
    mouth_curve: float = 0.0          # [-1, 1]
    wrinkle_density: float = 0.0      # [0, 1]
    jaw_width: float = 1.0            # width ratio, [0.6, 1.4]
    glasses_opacity: float = 0.0      # [0, 1]
    identity_features: tuple = ()     # unbounded identity coordinates
    noise_level: float = 0.0          # [0, 1]

    def __post_init__(self):
        object.__setattr__(self, "yaw", _clamp(self.yaw, -45.0, 45.0))
        object.__setattr__(self, "mouth_curve", _clamp(self.mouth_curve, -1.0, 1.0))
        object.__setattr__(self, "wrinkle_density", _clamp(self.wrinkle_density, 0.0, 1.0))
        object.__setattr__(self, "jaw_width", _clamp(self.jaw_width, 0.6, 1.4))
        object.__setattr__(self, "glasses_opacity", _clamp(self.glasses_opacity, 0.0, 1.0))
        object.__setattr__(self, "noise_level", _clamp(self.noise_level, 0.0, 1.0))
        object.__setattr__(
            self, "identity_features", tuple(float(v) for v in self.identity_features)
        )

    def to_dict(self):
        return {
            "yaw": self.yaw,
            "mouth_curve": self.mouth_curve,
            "wrinkle_density": self.wrinkle_density,
            "jaw_width": self.jaw_width,
            "glasses_opacity": self.glasses_opacity,
            "identity_features": list(self.identity_features),
            "noise_level": self.noise_level,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            yaw=data.get("yaw", 0.0),
            mouth_curve=data.get("mouth_curve", 0.0),
            wrinkle_density=data.get("wrinkle_density", 0.0),
            jaw_width=data.get("jaw_width", 1.0),
            glasses_opacity=data.get("glasses_opacity", 0.0),
            identity_features=tuple(data.get("identity_features", ())),
            noise_level=data.get("noise_level", 0.0),
        )


_W, _H = 320, 360
_CX, _CY = 160, 175
GLASSES_VISIBLE_ABOVE = 0.05
WRINKLE_STROKES_MAX = 10
JITTER_STROKES_MAX = 40


def _fmt(x):
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _identity_styling(identity):
    id0 = identity[0] if len(identity) > 0 else 0.0
    id1 = identity[1] if len(identity) > 1 else 0.0
    id2 = identity[2] if len(identity) > 2 else 0.0
    hue = (id0 * 60.0) % 360.0
    eye_gap = 26.0 + 8.0 * math.tanh(id1 / 2.0)
    height_scale = 1.0 + 0.15 * math.tanh(id2 / 2.0)
    return hue, eye_gap, height_scale


def render(params: FaceParams) -> str:
    """SVG 1.1 document for a face description."""
    hue, eye_gap, height_scale = _identity_styling(params.identity_features)
    rx = 70.0 * params.jaw_width
    ry = 90.0 * height_scale
    eye_y = _CY - 0.28 * ry
    eye_dx = 14.0 * (params.yaw / 45.0)
    mouth_y = _CY + 0.45 * ry
    mouth_half = 0.42 * rx
    mouth_ctrl = -35.0 * params.mouth_curve

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="hsl({_fmt(hue)},30%,92%)"/>',
        f'<ellipse id="head" cx="{_CX}" cy="{_CY}" rx="{_fmt(rx)}" ry="{_fmt(ry)}" '
        f'fill="hsl({_fmt(hue)},45%,78%)" stroke="#333" stroke-width="2"/>',
    ]

    for side in (-1.0, 1.0):
        ex = _CX + side * eye_gap + eye_dx
        parts.append(
            f'<circle class="eye" cx="{_fmt(ex)}" cy="{_fmt(eye_y)}" r="6" fill="#222"/>'
        )
    nose_x = _CX + 0.6 * eye_dx
    parts.append(
        f'<line id="nose" x1="{_fmt(nose_x)}" y1="{_fmt(eye_y + 14)}" '
        f'x2="{_fmt(nose_x)}" y2="{_fmt(eye_y + 38)}" stroke="#333" stroke-width="2"/>'
    )
    mx = _CX + 0.5 * eye_dx
    parts.append(
        f'<path id="mouth" d="M {_fmt(mx - mouth_half)} {_fmt(mouth_y)} '
        f'Q {_fmt(mx)} {_fmt(mouth_y + mouth_ctrl)} {_fmt(mx + mouth_half)} {_fmt(mouth_y)}" '
        f'fill="none" stroke="#922" stroke-width="3"/>'
    )

    n_wrinkles = int(round(WRINKLE_STROKES_MAX * params.wrinkle_density))
    if n_wrinkles:
        wr = []
        for i in range(n_wrinkles):
            frac = (i + 1) / (n_wrinkles + 1)
            y = _CY - 0.82 * ry + 0.30 * ry * frac
            half = 0.45 * rx * (0.6 + 0.4 * math.sin(math.pi * frac))
            wr.append(
                f'<line x1="{_fmt(_CX - half)}" y1="{_fmt(y)}" '
                f'x2="{_fmt(_CX + half)}" y2="{_fmt(y)}" stroke="#555" stroke-width="1"/>'
            )
        parts.append('<g id="wrinkles">' + "".join(wr) + "</g>")

    if params.glasses_opacity > GLASSES_VISIBLE_ABOVE:
        gx1 = _CX - eye_gap + eye_dx
        gx2 = _CX + eye_gap + eye_dx
        parts.append(
            f'<g id="glasses" opacity="{_fmt(params.glasses_opacity)}" '
            'fill="none" stroke="#111" stroke-width="3">'
            f'<circle cx="{_fmt(gx1)}" cy="{_fmt(eye_y)}" r="14"/>'
            f'<circle cx="{_fmt(gx2)}" cy="{_fmt(eye_y)}" r="14"/>'
            f'<line x1="{_fmt(gx1 + 14)}" y1="{_fmt(eye_y)}" x2="{_fmt(gx2 - 14)}" y2="{_fmt(eye_y)}"/>'
            "</g>"
        )

    n_jitter = int(round(JITTER_STROKES_MAX * params.noise_level))
    if n_jitter:
        jt = []
        for i in range(n_jitter):
            # fixed golden-angle scatter keyed only on the stroke index
            ang = 2.39996322972865332 * (i + 1)
            rad = 0.95 * min(_CX, _CY) * math.sqrt(((i + 1) * 0.618033988749895) % 1.0)
            x = _CX + rad * math.cos(ang)
            y = _CY + rad * math.sin(ang)
            jt.append(
                f'<line x1="{_fmt(x - 4)}" y1="{_fmt(y - 4)}" '
                f'x2="{_fmt(x + 4)}" y2="{_fmt(y + 4)}" stroke="#000" stroke-width="1.5"/>'
            )
        parts.append(f'<g id="jitter" opacity="0.8">' + "".join(jt) + "</g>")

    parts.append("</svg>")
    return "\n".join(parts)
