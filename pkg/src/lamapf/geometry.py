"""Exact planar predicates over integer coordinates.

Nothing here touches floating point: every comparison is carried out on
Python ints, which are arbitrary precision, so ties at exactly the
threshold are decided correctly.
"""

from typing import NamedTuple


class Point(NamedTuple):
    x: int
    y: int


class Segment(NamedTuple):
    a: Point
    b: Point


def sq_dist(p, q):
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def point_segment_closer_than(p, s, threshold):
    """True iff the distance from ``p`` to the closed segment ``s`` is < ``threshold``.

    The projection parameter is never divided out: with ``d = b - a`` and
    ``w = p - a`` the foot of the perpendicular lies on the segment iff
    ``0 < w.d < |d|^2``, in which case the squared distance is
    ``cross(d, w)^2 / |d|^2`` and the comparison is cross-multiplied.
    """
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    t2 = threshold * threshold
    (ax, ay), (bx, by) = s
    dx = bx - ax
    dy = by - ay
    wx = p[0] - ax
    wy = p[1] - ay
    dot = wx * dx + wy * dy
    norm = dx * dx + dy * dy
    if norm == 0 or dot <= 0:
        return wx * wx + wy * wy < t2
    if dot >= norm:
        ex = p[0] - bx
        ey = p[1] - by
        return ex * ex + ey * ey < t2
    cross = dx * wy - dy * wx
    return cross * cross < t2 * norm
