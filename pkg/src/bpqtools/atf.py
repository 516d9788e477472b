"""Almost toric base diagrams as integral-affine lattice geometry.

A diagram is a convex region whose boundary is a path of edges in
counterclockwise order.  The path may start with a ray coming in from
infinity and end with a ray going out to infinity; otherwise it is a
closed polygon.  Coordinates are Fractions and edge directions are
primitive integer vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Optional

from .hj import ext_gcd, hj_expand, _check_pq

INF = math.inf


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def primitive(v) -> tuple:
    """Primitive integer vector in the direction of a rational vector."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    g = gcd(xi, yi)
    return (xi // g, yi // g)


def lattice_length(v) -> Fraction:
    """Rational length of v measured in units of its primitive direction."""
    d = primitive(v)
    i = 0 if d[0] else 1
    return Fraction(v[i]) / d[i]


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _pt(x, y):
    return (Fraction(x), Fraction(y))


def _add(P, d, t):
    return (P[0] + d[0] * t, P[1] + d[1] * t)


@dataclass(frozen=True)
class CornerType:
    """Cyclic quotient 1/n(1,a); n = 1 means a smooth (Delzant) corner."""

    n: int
    a: int
    reflected: bool = False

    @property
    def delzant(self) -> bool:
        return self.n == 1

    def equivalent(self, other: "CornerType") -> bool:
        """Same singularity, allowing a -> a^-1 (orientation reversal)."""
        if self.n != other.n:
            return False
        if self.n == 1:
            return True
        return self.a == other.a or (self.a * other.a) % self.n == 1

    def __str__(self):
        return f"1/{self.n}(1,{self.a})"


def normalizing_matrix(u) -> tuple:
    """An SL2(Z) matrix taking the primitive vector u to (0,1)."""
    g, s, t = ext_gcd(u[0], u[1])
    if abs(g) != 1:
        raise ValueError(f"{u} is not primitive")
    if g == -1:
        s, t = -s, -t
    return ((u[1], -u[0]), (s, t))


def corner_type(u, v) -> CornerType:
    """Type of the corner spanned by primitive edge vectors u and v.

    With A in SL2(Z) taking u to (0,1), Av = (x, y) where x = -det(u, v).
    If x < 0 the reflection (x, y) -> (-x, y) is applied and recorded.
    Then n = |x| and a = y mod n in (0, n].  The cone ((0,1), (n,a))
    is the 1/n(1,a) singularity.
    """
    u, v = tuple(int(c) for c in u), tuple(int(c) for c in v)
    if det(u, v) == 0:
        raise ValueError(f"{u} and {v} are collinear")
    A = normalizing_matrix(u)
    x = A[0][0] * v[0] + A[0][1] * v[1]
    y = A[1][0] * v[0] + A[1][1] * v[1]
    reflected = x < 0
    n = abs(x)
    a = y % n or n
    return CornerType(n, a, reflected)


def resolve_corner(u, v, chain=None) -> list:
    """Edge directions resolving the corner, listed from the u side.

    Traversal runs in along -u and out along v; with t_0 = -u and
    t_{k+1} = v the inserted directions satisfy
    t_{i-1} + t_{i+1} = b_i t_i for the chain [b_1..b_k] of n/a.
    Smooth corners need nothing unless a chain is given (for example [1],
    a toric blow-up).  Reflected corners are resolved from the v side.
    """
    ct = corner_type(u, v)
    if ct.reflected:
        return resolve_corner(v, u, chain and list(chain)[::-1])[::-1]
    if chain is None:
        if ct.delzant:
            return []
        chain = hj_expand(ct.n, ct.a).coeffs
    chain = list(chain)
    t0 = (-u[0], -u[1])
    c_prev, c_cur = 1, 0
    e_prev, e_cur = 0, 1
    for b in chain:
        c_prev, c_cur = c_cur, b * c_cur - c_prev
        e_prev, e_cur = e_cur, b * e_cur - e_prev
    if e_cur == 0:
        raise ValueError(f"chain {chain} does not resolve {ct}")
    num = (v[0] - c_cur * t0[0], v[1] - c_cur * t0[1])
    if num[0] % e_cur or num[1] % e_cur:
        raise ValueError(f"chain {chain} does not resolve {ct}")
    ts = [t0, (num[0] // e_cur, num[1] // e_cur)]
    for b in chain:
        ts.append((b * ts[-1][0] - ts[-2][0], b * ts[-1][1] - ts[-2][1]))
    if ts[-1] != tuple(v):
        raise AssertionError(f"resolution of {ct} ended at {ts[-1]}, not {v}")
    return ts[1:-1]


def self_intersection(t_prev, t, t_next) -> int:
    """k with t_prev + t_next = -k t for consecutive traversal directions."""
    s = (t_prev[0] + t_next[0], t_prev[1] + t_next[1])
    if det(s, t) != 0:
        raise ValueError("neighbouring directions are not related by a smooth corner")
    i = 0 if t[0] else 1
    return -Fraction(s[i], t[i])


@dataclass(frozen=True)
class Node:
    point: tuple
    eigendirection: tuple
    cut_target: tuple  # end point of the branch cut


@dataclass(frozen=True)
class BaseDiagram:
    """Boundary path through ``vertices`` (counterclockwise).

    ``in_ray`` is the outward direction of a ray ending at vertices[0],
    ``out_ray`` the direction of a ray leaving vertices[-1]; with neither
    the boundary closes up.  ``styles`` and ``labels`` have one entry per
    edge in path order (see ``edges``).
    """

    vertices: tuple
    in_ray: Optional[tuple] = None
    out_ray: Optional[tuple] = None
    styles: tuple = ()
    labels: tuple = ()
    nodes: tuple = ()
    label: str = ""
    draw_length: Fraction = Fraction(1)
    corners: tuple = field(default=(), compare=False)

    def __post_init__(self):
        k = self.edge_count()
        styles, labels = tuple(self.styles)[:k], tuple(self.labels)[:k]
        object.__setattr__(self, "styles", styles + ("solid",) * (k - len(styles)))
        object.__setattr__(self, "labels", labels + ("",) * (k - len(labels)))

    @property
    def closed(self) -> bool:
        return self.in_ray is None and self.out_ray is None

    def edge_count(self) -> int:
        k = len(self.vertices) - 1 + (self.in_ray is not None) + (self.out_ray is not None)
        return k + 1 if self.closed else k

    @property
    def edges(self) -> list:
        """(start vertex index, primitive direction, lattice length or INF).

        An incoming ray is reported from its finite end, pointing outward.
        """
        out = []
        V = self.vertices
        if self.in_ray is not None:
            out.append((0, tuple(self.in_ray), INF))
        for i in range(len(V) - 1):
            d = (V[i + 1][0] - V[i][0], V[i + 1][1] - V[i][1])
            out.append((i, primitive(d), lattice_length(d)))
        if self.closed and len(V) > 1:
            d = (V[0][0] - V[-1][0], V[0][1] - V[-1][1])
            out.append((len(V) - 1, primitive(d), lattice_length(d)))
        if self.out_ray is not None:
            out.append((len(V) - 1, tuple(self.out_ray), INF))
        return out

    def style(self, i: int) -> str:
        return self.styles[i] if i < len(self.styles) else "solid"

    def edge_label(self, i: int) -> str:
        return self.labels[i] if i < len(self.labels) else ""

    def traversal(self) -> list:
        """Traversal direction of each edge in path order."""
        dirs = []
        for k, (i, d, _) in enumerate(self.edges):
            if k == 0 and self.in_ray is not None:
                dirs.append((-d[0], -d[1]))
            else:
                dirs.append(d)
        return dirs

    def corner_types(self) -> list:
        """(vertex, CornerType) for every finite vertex between two edges."""
        trav = self.traversal()
        out = []
        m = len(trav)
        V = self.vertices
        for k in range(m):
            if self.closed:
                incoming, outgoing = trav[k - 1], trav[k]
                vertex = V[k] if self.in_ray is None else None
            else:
                if k == 0:
                    continue
                incoming, outgoing = trav[k - 1], trav[k]
                vertex = V[k - 1] if self.in_ray is not None else V[k]
            if vertex is None:
                continue
            out.append((vertex, corner_type((-incoming[0], -incoming[1]), outgoing)))
        return out

    def to_json(self) -> dict:
        def num(x):
            return "inf" if is_inf(x) else {"num": Fraction(x).numerator, "den": Fraction(x).denominator}

        def pt(P):
            return [num(P[0]), num(P[1])]

        return {
            "label": self.label,
            "vertices": [pt(P) for P in self.vertices],
            "edges": [{"start": i, "direction": list(d), "length": num(l), "style": self.style(k),
                       "label": self.edge_label(k)} for k, (i, d, l) in enumerate(self.edges)],
            "nodes": [{"point": pt(n.point), "eigendirection": list(n.eigendirection),
                       "cut_target": pt(n.cut_target)} for n in self.nodes],
            "corners": [{"vertex": pt(P), "n": c.n, "a": c.a, "reflected": c.reflected}
                        for P, c in self.corners],
        }


def _size(x, name):
    if is_inf(x):
        return INF
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"{name} must be positive")
    return x


def build_pin_diagram(p: int, q: int, alpha=INF, beta=INF, node_scale=None) -> BaseDiagram:
    """Diagram of the pin-ellipsoid E_{p,q}(alpha, beta).

    Toric edges (0,1) of length beta and (p^2, pq-1) of length alpha leave
    the origin; the dashed "open" edge joins their far ends.  The node
    sits on the (p,q) ray at p / (4 (1/alpha + 1/beta)) and its branch cut
    runs back to the origin.  Infinite sizes give the cylinder diagrams.
    """
    _check_pq(p, q)
    alpha, beta = _size(alpha, "alpha"), _size(beta, "beta")
    w = (p * p, p * q - 1)
    O = _pt(0, 0)
    if node_scale is None:
        inv = (0 if is_inf(alpha) else 1 / alpha) + (0 if is_inf(beta) else 1 / beta)
        node_scale = Fraction(1, 2 * q) if inv == 0 else Fraction(p) / (4 * inv)
    node = Node(_add(O, (p, q), Fraction(node_scale)), (p, q), O)
    label = f"A_{p},{q}({'inf' if is_inf(alpha) else alpha},{'inf' if is_inf(beta) else beta})"
    if is_inf(alpha) and is_inf(beta):
        return BaseDiagram((O,), (0, 1), w, ("solid", "solid"), ("", ""), (node,), label, Fraction(1))
    if is_inf(beta):
        far = _add(O, w, alpha)
        return BaseDiagram((O, far), (0, 1), (0, 1), ("solid", "solid", "open"), (), (node,), label,
                           far[1] + 1)
    top = _pt(0, beta)
    if is_inf(alpha):
        return BaseDiagram((top, O), w, w, ("open", "solid", "solid"), (), (node,), label, Fraction(1))
    far = _add(O, w, alpha)
    return BaseDiagram((top, O, far), styles=("solid", "solid", "open"), nodes=(node,), label=label)


def monodromy_shear(p: int, q: int) -> tuple:
    """[[1-pq, p^2], [-q^2, 1+pq]]: unipotent, fixes (p,q)."""
    return ((1 - p * q, p * p), (-q * q, 1 + p * q))


def whitney_embedding_matrix(p: int, q: int) -> tuple:
    """(a, b, M) with bq - ap = 1, a minimal in [0, q), M = [[q-a, b-p], [-a, b]].

    det M = 1 and M (p,q) = (1,1).
    """
    if gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not coprime")
    if q == 1:
        a = 0
    else:
        _, x, _ = ext_gcd(p % q, q)
        a = (-x) % q
    b, r = divmod(1 + a * p, q)
    if r:
        raise AssertionError("bq - ap = 1 has no solution with this a")
    M = ((q - a, b - p), (-a, b))
    if det(M[0], M[1]) != 1 or (M[0][0] * p + M[0][1] * q, M[1][0] * p + M[1][1] * q) != (1, 1):
        raise AssertionError(f"bad Whitney matrix {M}")
    return a, b, M


def _apply(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def apply_affine(d: BaseDiagram, A, t=(0, 0)) -> BaseDiagram:
    """x -> A x + t for A with det +-1.

    A reflection reverses orientation, so the boundary path is reversed to
    stay counterclockwise.
    """
    D = det(A[0], A[1])
    if D not in (1, -1):
        raise ValueError(f"matrix {A} is not unimodular")

    def pt(P):
        x = _apply(A, P)
        return (x[0] + t[0], x[1] + t[1])

    nodes = tuple(Node(pt(n.point), _apply(A, n.eigendirection), pt(n.cut_target)) for n in d.nodes)
    corners = tuple((pt(P), c) for P, c in d.corners)
    in_ray = _apply(A, d.in_ray) if d.in_ray is not None else None
    out_ray = _apply(A, d.out_ray) if d.out_ray is not None else None
    verts = tuple(pt(P) for P in d.vertices)
    styles, labels = d.styles, d.labels
    if D == -1:
        verts = verts[::-1]
        in_ray, out_ray = out_ray, in_ray
        k = d.edge_count()
        styles = tuple(d.style(i) for i in range(k))
        labels = tuple(d.edge_label(i) for i in range(k))
        if d.closed:
            # edge i joins V_i to V_{i+1}; after reversal edge j joins V'_j to V'_{j+1}
            styles = tuple(styles[(k - 2 - j) % k] for j in range(k))
            labels = tuple(labels[(k - 2 - j) % k] for j in range(k))
        else:
            styles, labels = styles[::-1], labels[::-1]
    return BaseDiagram(verts, in_ray, out_ray, styles, labels, nodes, d.label, d.draw_length, corners)


@dataclass(frozen=True)
class HalfPlane:
    """The region normal . x <= offset; its boundary line is the cut."""

    normal: tuple
    offset: Fraction

    def value(self, P):
        return self.normal[0] * P[0] + self.normal[1] * P[1] - self.offset


def _pieces(d: BaseDiagram):
    """Boundary as (anchor, direction, tmin, tmax, style, label), None = infinite."""
    out = []
    V = d.vertices
    for k, (i, dirn, length) in enumerate(d.edges):
        style, lab = d.style(k), d.edge_label(k)
        if k == 0 and d.in_ray is not None:
            out.append((V[0], (-dirn[0], -dirn[1]), None, Fraction(0), style, lab))
        elif is_inf(length):
            out.append((V[-1], dirn, Fraction(0), None, style, lab))
        else:
            out.append((V[i], dirn, Fraction(0), length, style, lab))
    return out


def _clip(piece, H: HalfPlane):
    P, dirn, lo, hi, style, lab = piece
    a = H.value(P)
    s = H.normal[0] * dirn[0] + H.normal[1] * dirn[1]
    # inside iff a + s t <= 0
    if s == 0:
        return piece if a <= 0 else None
    root = Fraction(-a, 1) / s
    if s > 0:
        new_hi = root if hi is None else min(hi, root)
        new_lo = lo
    else:
        new_lo = root if lo is None else max(lo, root)
        new_hi = hi
    if new_lo is not None and new_hi is not None and new_lo >= new_hi:
        return None
    return (P, dirn, new_lo, new_hi, style, lab)


def symplectic_cut(d: BaseDiagram, H: HalfPlane, cut_label: str = "") -> BaseDiagram:
    """Keep the part of a convex diagram with normal . x <= offset.

    The cut adds one edge along the line; its two new corners are
    classified and stored in ``corners``.  A half-plane containing the
    whole diagram leaves it unchanged.
    """
    H = HalfPlane(tuple(H.normal), Fraction(H.offset))
    pieces = _pieces(d)
    if d.closed:
        # rotate so the path starts at an inside vertex when there is one
        start = next((k for k, pc in enumerate(pieces) if H.value(pc[0]) < 0), None)
        if start is None:
            raise ValueError("the cut misses the diagram")
        pieces = pieces[start:] + pieces[:start]
    clipped = [_clip(pc, H) for pc in pieces]
    if all(c == pc for c, pc in zip(clipped, pieces)):
        return d
    runs = [c for c in clipped if c is not None]
    if not runs:
        raise ValueError("the cut misses the diagram")
    gap_after = None
    points = []
    for c in runs:
        P, dirn, lo, hi = c[:4]
        start = None if lo is None else _add(P, dirn, lo)
        end = None if hi is None else _add(P, dirn, hi)
        points.append((start, end))
    seq = []  # boundary of the result as a list of (start, end, dirn, style, label)
    for k, c in enumerate(runs):
        seq.append((points[k][0], points[k][1], c[1], c[4], c[5]))
        nxt = (k + 1) % len(runs)
        # a gap between surviving pieces is where the cut edge goes
        if k + 1 < len(runs) or d.closed:
            a_end, b_start = points[k][1], points[nxt][0]
            if a_end is not None and b_start is not None and a_end != b_start:
                gap_after = len(seq)
                seq.append((a_end, b_start, primitive((b_start[0] - a_end[0], b_start[1] - a_end[1])),
                            "solid", cut_label))
    closes = False
    if not d.closed:
        first_start, last_end = points[0][0], points[-1][1]
        if first_start is not None and last_end is not None:
            if first_start != last_end:
                seq.append((last_end, first_start,
                            primitive((first_start[0] - last_end[0], first_start[1] - last_end[1])),
                            "solid", cut_label))
                gap_after = len(seq) - 1
            closes = True
    # drop degenerate edges
    seq = [s for s in seq if s[0] is None or s[1] is None or s[0] != s[1]]
    in_ray = None
    out_ray = None
    if not (d.closed or closes):
        if seq[0][0] is None:
            in_ray = (-seq[0][2][0], -seq[0][2][1])
        if seq[-1][1] is None:
            out_ray = seq[-1][2]
    verts = []
    for s in seq:
        for P in (s[0], s[1]):
            if P is not None and (not verts or verts[-1] != P):
                verts.append(P)
    if (d.closed or closes) and len(verts) > 1 and verts[0] == verts[-1]:
        verts.pop()
    if d.closed or closes:
        # rotate so that edge k joins verts[k] to verts[k+1]
        first = seq[0][0]
        r = verts.index(first)
        verts = verts[r:] + verts[:r]
    styles = tuple(s[3] for s in seq)
    labels = tuple(s[4] for s in seq)
    nodes = tuple(n for n in d.nodes if H.value(n.point) < 0)
    out = BaseDiagram(tuple(verts), in_ray, out_ray, styles, labels, nodes, d.label, d.draw_length)
    new_pts = set()
    if gap_after is not None:
        cut = seq[gap_after] if gap_after < len(seq) else None
        if cut is not None:
            new_pts = {cut[0], cut[1]}
    corners = tuple((P, c) for P, c in out.corner_types() if P in new_pts)
    return replace(out, corners=d.corners + corners)


def resolve_vertex(d: BaseDiagram, vertex, chain, labels=(), length=None) -> BaseDiagram:
    """Cut the corner at ``vertex`` back and insert the resolution edges.

    Each inserted edge gets the same lattice length; the cut-back
    distances s, t solve s w_in + t w_out = length * sum(t_i).
    """
    if not d.closed:
        raise ValueError("vertex resolution is implemented for closed diagrams")
    V = list(d.vertices)
    k = V.index(vertex)
    trav = d.traversal()
    w_in, w_out = trav[k - 1], trav[k]
    ts = resolve_corner((-w_in[0], -w_in[1]), w_out, chain)
    S = (sum(t[0] for t in ts), sum(t[1] for t in ts))
    D = det(w_in, w_out)
    s1 = Fraction(det(S, w_out), D)
    t1 = Fraction(det(w_in, S), D)
    if s1 <= 0 or t1 <= 0:
        raise AssertionError("resolution does not fit inside the corner")
    len_in = d.edges[k - 1][2]
    len_out = d.edges[k][2]
    if length is None:
        length = min(len_in / s1, len_out / t1) / 2
    length = Fraction(length)
    P = _add(vertex, w_in, -s1 * length)
    new_v = [P]
    for t in ts:
        P = _add(P, t, length)
        new_v.append(P)
    if new_v[-1] != _add(vertex, w_out, t1 * length):
        raise AssertionError("resolution edges do not close up")
    verts = V[:k] + new_v + V[k + 1:]
    n_old = d.edge_count()
    styles = [d.style(i) for i in range(n_old)]
    labs = [d.edge_label(i) for i in range(n_old)]
    new_labels = list(labels) + [""] * (len(ts) - len(labels))
    styles = styles[:k] + ["solid"] * len(ts) + styles[k:]
    labs = labs[:k] + new_labels + labs[k:]
    corners = tuple((Pt, c) for Pt, c in d.corners if Pt != vertex)
    return BaseDiagram(tuple(verts), None, None, tuple(styles), tuple(labs), d.nodes, d.label, d.draw_length,
                       corners)


def edge_self_intersections(d: BaseDiagram) -> list:
    """(edge index, k) for finite edges whose two corners are both smooth."""
    trav = d.traversal()
    m = len(trav)
    out = []
    for k in range(m):
        if not d.closed and (k == 0 or k == m - 1):
            continue
        i_prev, i_next = (k - 1) % m, (k + 1) % m
        t_prev, t, t_next = trav[i_prev], trav[k], trav[i_next]
        if abs(det(t_prev, t)) != 1 or abs(det(t, t_next)) != 1:
            continue
        out.append((k, int(self_intersection(t_prev, t, t_next))))
    return out


def compactification_diagram(p: int, q: int, alpha=1) -> BaseDiagram:
    """Cap the wedge at height alpha and resolve the orbifold corner.

    Edges are labelled D_0..D_n with their self-intersections; for (2,1)
    the smooth corner is blown up once, the (+3, -1) convention.
    """
    from .compactify import compactifying_divisor

    alpha = Fraction(alpha)
    data = compactifying_divisor(p, q)
    wedge = build_pin_diagram(p, q, INF, INF, node_scale=alpha / (4 * q))
    capped = symplectic_cut(wedge, HalfPlane((0, 1), alpha))
    corner = next(P for P in capped.vertices if P[0] > 0)
    chain = data.tail.coeffs[::-1]  # from the slanted side: D_n first
    n = data.n
    labels = [f"D{n - i}" for i in range(n)]
    resolved = resolve_vertex(capped, corner, chain, labels)
    # label the top edge D_0
    k_top = next(k for k, t in enumerate(resolved.traversal()) if t == (-1, 0))
    labs = list(resolved.labels) + [""] * (resolved.edge_count() - len(resolved.labels))
    labs[k_top] = "D0"
    return replace(resolved, labels=tuple(labs), label=f"X_{p},{q}")


def divisor_profile_from_diagram(d: BaseDiagram) -> tuple:
    """(+d0, -d1, ..., -dn) read off the labelled edges of a compactification diagram."""
    ks = dict(edge_self_intersections(d))
    by_label = {d.edge_label(k): ks[k] for k in ks if d.edge_label(k).startswith("D")}
    n = len(by_label) - 1
    return tuple(by_label[f"D{i}"] for i in range(n + 1))


# --- SVG ---------------------------------------------------------------

SCALE = 72
PAD = 36


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def emit_svg(d: BaseDiagram, scale: int = SCALE) -> str:
    """Deterministic SVG 1.1 rendering.

    Solid toric edges, dashed open edges and branch cuts, a cross per
    node, edge labels at midpoints.  Rays are drawn with ``draw_length``.
    """
    segs = []
    for k, (i, dirn, length) in enumerate(d.edges):
        if k == 0 and d.in_ray is not None:
            a = d.vertices[0]
            b = _add(a, dirn, d.draw_length)
            a, b = b, a
        elif is_inf(length):
            a = d.vertices[-1]
            b = _add(a, dirn, d.draw_length)
        else:
            a = d.vertices[i]
            b = _add(a, dirn, length)
        segs.append((a, b, d.style(k), d.edge_label(k)))
    pts = [s[0] for s in segs] + [s[1] for s in segs] + [n.point for n in d.nodes] + list(d.vertices)
    xs = [P[0] for P in pts]
    ys = [P[1] for P in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = (x1 - x0) * scale + 2 * PAD
    height = (y1 - y0) * scale + 2 * PAD

    def X(x):
        return _fmt((x - x0) * scale + PAD)

    def Y(y):
        return _fmt((y1 - y) * scale + PAD)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if d.label:
        lines.append(f"<title>{d.label}</title>")
    poly = []
    for a, b, _, _ in segs:
        for P in (a, b):
            if not poly or poly[-1] != P:
                poly.append(P)
    if len(poly) > 2:
        coords = " ".join(f"{X(P[0])},{Y(P[1])}" for P in poly)
        lines.append(f'<polygon points="{coords}" fill="#d3d3d3" fill-opacity="0.75" stroke="none"/>')
    for a, b, style, lab in segs:
        dash = ' stroke-dasharray="7,3"' if style == "open" else ""
        lines.append(f'<line x1="{X(a[0])}" y1="{Y(a[1])}" x2="{X(b[0])}" y2="{Y(b[1])}" '
                     f'stroke="black" stroke-width="2"{dash}/>')
    for n in d.nodes:
        P, T = n.point, n.cut_target
        lines.append(f'<line x1="{X(P[0])}" y1="{Y(P[1])}" x2="{X(T[0])}" y2="{Y(T[1])}" '
                     f'stroke="black" stroke-width="1" stroke-dasharray="4,4"/>')
        cx, cy = float(X(P[0])), float(Y(P[1]))
        for dx, dy in ((4, 4), (4, -4)):
            lines.append(f'<line x1="{_fmt(cx - dx)}" y1="{_fmt(cy - dy)}" x2="{_fmt(cx + dx)}" '
                         f'y2="{_fmt(cy + dy)}" stroke="black" stroke-width="1.5"/>')
    for a, b, _, lab in segs:
        if lab:
            mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
            lines.append(f'<text x="{X(mx)}" y="{Y(my)}" font-family="sans-serif" font-size="12" '
                         f'text-anchor="middle">{lab}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
