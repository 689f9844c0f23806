"""The Regge symmetry of tetrahedra and the residuals that check it.

With s = (a + b + c + d) / 2 the partner of (x, y, a, b, c, d) is

    (x, y, s - a, s - b, s - c, s - d)

and, with sigma the half-sum of the four dihedral angles at a, b, c, d,
the partner's dihedral angles are (phi, psi, sigma - alpha, ..., sigma - delta).
Volumes agree.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from . import config
from .errors import InvalidTetrahedron, NonpositivePartnerLength, PartnerNonexistent
from .tetrahedron import (
    ANGLE_NAMES,
    EDGE_LABELS,
    VERTEX_LABELS,
    DihedralAngles,
    EdgeLengths,
    dihedral_angles,
    face_half_angle_tangent,
    solid_angle,
    validate,
)
from .trig_kernel import Geometry
from .volume import schlafli_form, volume

logger = logging.getLogger(__name__)

# Vertex of a tetrahedron -> vertex of its partner with the same solid angle
SOLID_ANGLE_PAIRING = {'F1': 'F2', 'F2': 'F1', 'K': 'L', 'L': 'K'}

# Volumes below this are compared absolutely rather than relatively
SMALL_VOLUME = 1e-6


@dataclass(frozen=True)
class ReggeEdges:
    source: EdgeLengths
    s: float
    partner: EdgeLengths


@dataclass(frozen=True)
class LogTangentQuadruple:
    """log tan of half the face angles (a,x) at F1, (b,x) at F2, (c,x) at F2, (d,x) at F1."""
    A: float
    B: float
    C: float
    D: float

    @property
    def total(self):
        return self.A + self.B + self.C + self.D

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D)


@dataclass
class ReggeReport:
    geometry: Geometry
    edges: EdgeLengths
    partner_edges: EdgeLengths
    s: float
    sigma: float
    dihedrals: DihedralAngles
    partner_dihedrals: DihedralAngles
    angle_residuals: dict
    residual_logtan: float
    residual_solid_angles: float
    tolerance: float
    volume_tolerance: float
    volume: float = None
    partner_volume: float = None
    volume_error_estimate: float = None
    residual_volume: float = None

    @property
    def max_angle_residual(self):
        return max(self.angle_residuals.values())

    @property
    def passed(self):
        if self.max_angle_residual >= self.tolerance:
            return False
        if max(self.residual_logtan, self.residual_solid_angles) >= self.tolerance:
            return False
        if self.residual_volume is not None and self.residual_volume >= self.volume_tolerance:
            return False
        return True

    @property
    def verdict(self):
        return 'pass' if self.passed else 'fail'

    def residuals(self):
        out = {f"residual_{name}": value for name, value in self.angle_residuals.items()}
        out['residual_logtan'] = self.residual_logtan
        out['residual_solid_angles'] = self.residual_solid_angles
        if self.residual_volume is not None:
            out['residual_volume'] = self.residual_volume
        return out

    def to_dict(self):
        """Plain-JSON view used by the command line."""
        return {
            'geometry': self.geometry.name.lower(),
            'edges': dict(zip(EDGE_LABELS, self.edges.as_tuple())),
            'partner_edges': dict(zip(EDGE_LABELS, self.partner_edges.as_tuple())),
            'dihedrals': self.dihedrals.as_dict(),
            'partner_dihedrals': self.partner_dihedrals.as_dict(),
            'residuals': self.residuals(),
            'volume': self.volume,
            'partner_volume': self.partner_volume,
            'volume_error_estimate': self.volume_error_estimate,
            'verdict': self.verdict,
        }


def regge_edges(e):
    s = (e.a + e.b + e.c + e.d) / 2
    partner = EdgeLengths(e.x, e.y, s - e.a, s - e.b, s - e.c, s - e.d)
    if min(partner.as_tuple()) <= 0:
        raise NonpositivePartnerLength(
            f"partner of {e.as_tuple()} has edges {partner.as_tuple()}")
    return ReggeEdges(source=e, s=s, partner=partner)


def regge_angles(d):
    """Dihedral angles the partner is predicted to have."""
    sigma = (d.alpha + d.beta + d.gamma + d.delta) / 2
    return DihedralAngles(
        phi=d.phi,
        psi=d.psi,
        alpha=sigma - d.alpha,
        beta=sigma - d.beta,
        gamma=sigma - d.gamma,
        delta=sigma - d.delta,
    )


def log_tangent_quadruple(t):
    return LogTangentQuadruple(
        A=math.log(face_half_angle_tangent(t, 'a', 'x')),
        B=math.log(face_half_angle_tangent(t, 'b', 'x')),
        C=math.log(face_half_angle_tangent(t, 'c', 'x')),
        D=math.log(face_half_angle_tangent(t, 'd', 'x')),
    )


def predicted_log_tangents(q):
    """Log-tangents of the partner: each one reflected through the half-sum."""
    half = q.total / 2
    return LogTangentQuadruple(half - q.A, half - q.B, half - q.C, half - q.D)


def regge_partner(t):
    """Validated partner tetrahedron of t."""
    edges = regge_edges(t.edges)
    try:
        return validate(t.geometry, edges.partner)
    except InvalidTetrahedron as exc:
        raise PartnerNonexistent(f"partner {edges.partner.as_tuple()} failed validation: {exc}")


def _volume_residual(vol, vol_bar):
    diff = abs(vol - vol_bar)
    return diff / abs(vol) if abs(vol) > SMALL_VOLUME else diff


def verify_regge(t, tol=None, volume_tol=None, opts=None, check_volume=True):
    """Build the partner of t and measure every Regge identity on the pair."""
    tol = config.DEFAULT_TOL if tol is None else tol
    if volume_tol is None:
        volume_tol = tol if t.geometry == Geometry.EUCLIDEAN else config.DEFAULT_VOLUME_TOL
    edges = regge_edges(t.edges)
    partner = regge_partner(t)

    # 1) dihedral angles against the prediction
    angles = dihedral_angles(t)
    partner_angles = dihedral_angles(partner)
    predicted = regge_angles(angles)
    angle_residuals = {
        name: abs(partner_angles.at(label) - predicted.at(label))
        for label, name in ANGLE_NAMES.items()
    }

    # 2) log-tangent quadruples
    observed = log_tangent_quadruple(partner)
    expected = predicted_log_tangents(log_tangent_quadruple(t))
    residual_logtan = max(abs(o - p) for o, p in zip(observed.as_tuple(), expected.as_tuple()))

    # 3) solid angles, vertex by vertex
    residual_solid = max(
        abs(solid_angle(t, v) - solid_angle(partner, SOLID_ANGLE_PAIRING[v]))
        for v in VERTEX_LABELS
    )

    report = ReggeReport(
        geometry=t.geometry,
        edges=t.edges,
        partner_edges=edges.partner,
        s=edges.s,
        sigma=(angles.alpha + angles.beta + angles.gamma + angles.delta) / 2,
        dihedrals=angles,
        partner_dihedrals=partner_angles,
        angle_residuals=angle_residuals,
        residual_logtan=residual_logtan,
        residual_solid_angles=residual_solid,
        tolerance=tol,
        volume_tolerance=volume_tol,
    )

    # 4) volumes
    if check_volume:
        first = volume(t, opts)
        second = volume(partner, opts)
        report.volume = first.value
        report.partner_volume = second.value
        report.volume_error_estimate = max(first.error, second.error)
        report.residual_volume = _volume_residual(first.value, second.value)

    logger.info("Regge check on %s: max angle residual %.3e, verdict %s",
                t.edges.as_tuple(), report.max_angle_residual, report.verdict)
    return report


def schlafli_integrand_pair(g, base, t):
    """Schlafli forms along the y-edge for the tetrahedron with y = t and for its partner.

    The two tetrahedra share x and y, so both paths flatten at the same y; equal
    integrands at every t are what makes the volumes agree.
    """
    current = validate(g, base.replace(y=t))
    partner = regge_partner(current)
    return schlafli_form(current, 'y'), schlafli_form(partner, 'y')

