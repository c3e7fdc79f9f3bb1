"""R-matrices, local Yang-Baxter moves and the tetrahedron equation.

Parameters are reduced Ising weights.  ``a(t) = (t - 1/t)/2`` and
``b(t) = (t + 1/t)/2`` stand for ``sinh`` and ``cosh`` of ``log t``; they are
evaluated algebraically so no logarithm branch is ever chosen.

Maps act on the ferromagnetic cone ``t > 1``.  There the duality
``sigma(t) = (t+1)/(t-1)`` and ``F`` preserve the cone and
``sigma^3 F sigma^3`` is a two-sided inverse of ``F``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .graph import Multigraph
from .partition import BoundarySpec, PottsModel, boundary_partition
from .startriangle import (StarTriangleError, f_inverse, f_inverse_dual, f_map,
                           s_involution, s_inverse, sigma)

A, B, C, D = range(4)
STANDARD_PLANES = ((C, D), (B, D), (B, C), (A, D), (A, C), (A, B))
STANDARD_S_SLOTS = (2, 5)
SEQUENCE_FORWARD = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))
SEQUENCE_BACKWARD = tuple(reversed(SEQUENCE_FORWARD))


class TetraError(ValueError):
    pass


def a_fn(t):
    return (t - 1 / t) / 2


def b_fn(t):
    return (t + 1 / t) / 2


def _is_mp(x):
    return isinstance(x, (mpmath.mpf, mpmath.mpc))


def _eye(dim, like):
    if _is_mp(like):
        M = np.empty((dim, dim), dtype=object)
        for r in range(dim):
            for c in range(dim):
                M[r, c] = mpmath.mpc(1 if r == c else 0)
        return M
    return np.eye(dim, dtype=complex)


def _maxabs(M):
    return float(max(abs(x) for x in np.asarray(M).ravel()))


def to_mp(t):
    return tuple(mpmath.mpf(x) if not isinstance(x, complex) else mpmath.mpc(x) for x in t)


def r_matrix(dim, plane, t):
    """Identity with the block ``[[i a, b], [b, -i a]]`` on ``plane``.

    Entries are complex doubles, or mpmath numbers when ``t`` is one.
    """
    if t == 0:
        raise TetraError("R-matrix needs t != 0")
    i, j = plane
    M = _eye(dim, t)
    a, b = a_fn(t), b_fn(t)
    M[i, i] = 1j * a
    M[i, j] = b
    M[j, i] = b
    M[j, j] = -1j * a
    return M


def orthogonality_residual(dim, plane, t):
    M = r_matrix(dim, plane, t)
    return _maxabs(M @ M.T - _eye(dim, t))


def lyb_lhs(t):
    t1, t2, t3 = t
    return (r_matrix(3, (0, 1), t3) @ r_matrix(3, (0, 2), s_involution(t2))
            @ r_matrix(3, (1, 2), t1))


def lyb_rhs(tp):
    return (r_matrix(3, (1, 2), s_involution(tp[0])) @ r_matrix(3, (0, 2), tp[1])
            @ r_matrix(3, (0, 1), s_involution(tp[2])))


def lyb_closed_form(t):
    """The left-hand product written out entrywise."""
    t1, t2, t3 = t
    u1, u2, u3 = t1 * t1, t2 * t2, t3 * t3
    d = u2 - 1
    den = 2 * t1 * t3 * d
    return np.array([
        [t2 * (u3 - 1) / (t3 * d), 1j * (u1 * u2 * u3 - u1 - u2 + u3) / den,
         (u1 * u2 * u3 - u1 + u2 - u3) / den],
        [-1j * t2 * (u3 + 1) / (t3 * d), (u1 * u2 * u3 + u1 + u2 + u3) / den,
         -1j * (u1 * u2 * u3 + u1 - u2 - u3) / den],
        [(u2 + 1) / d, 1j * t2 * (u1 + 1) / (t1 * d), t2 * (u1 - 1) / (t1 * d)],
    ], dtype=object if _is_mp(t1) else complex)


def closed_form_residual(t, dps=30):
    """Max entry of ``|LHS - closed form|``; ``dps=None`` for doubles."""
    with mpmath.workdps(dps or 15):
        u = to_mp(t) if dps else tuple(t)
        return _maxabs(lyb_lhs(u) - lyb_closed_form(u))


def verify_lyb(t, inverse=f_inverse_dual, dps=30):
    """Max entry of ``|LHS - RHS|`` with ``t' = F^-1(t)``, i.e. ``F(t') = t``.

    Evaluated with ``dps`` decimal digits (``None`` for doubles): entries
    near ``t = 1`` reach ``1e3`` so doubles alone sit near ``1e-10``.
    """
    if any(x == 0 or x == 1 or x == -1 for x in t):
        raise TetraError("singular LYB argument")
    with mpmath.workdps(dps or 15):
        u = to_mp(t) if dps else tuple(t)
        tp = inverse(u)
        return _maxabs(lyb_lhs(u) - lyb_rhs(tp))


# words of R-factors ------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    plane: tuple
    value: complex
    label: int


def standard_word(t):
    """The six factors ``R_cd(t1) R_bd(S t2) R_bc(t3) R_ad(t4) R_ac(S t5) R_ab(t6)``."""
    vals = [s_involution(x) if k + 1 in STANDARD_S_SLOTS else x for k, x in enumerate(t)]
    return tuple(Factor(p, v, k + 1) for k, (p, v) in enumerate(zip(STANDARD_PLANES, vals)))


def word_product(word, dim=4):
    U = _eye(dim, word[0].value if word else 0.0)
    for f in word:
        U = U @ r_matrix(dim, f.plane, f.value)
    return U


def six_r_product(t):
    return word_product(standard_word(t))


def _adjacent(word, labels):
    # breadth-first search over reorderings by commuting disjoint planes
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        pos = [k for k, f in enumerate(w) if f.label in labels]
        if pos[-1] - pos[0] == len(labels) - 1:
            return w, pos[0]
        for k in range(len(w) - 1):
            if not set(w[k].plane) & set(w[k + 1].plane):
                nxt = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    raise TetraError(f"factors {sorted(labels)} cannot be brought together")


def lyb_move(word, labels, inverse=f_inverse_dual):
    """Apply one local Yang-Baxter move to the factors carrying ``labels``.

    The three factors are made adjacent by commuting disjoint planes.  A
    block ``R_ij(z) R_ik(y) R_jk(x)`` is the left side with
    ``t = (x, S^-1 y, z)`` and becomes ``R_jk(S t'1) R_ik(t'2) R_ij(S t'3)``
    with ``t' = F^-1 t``; a block in the opposite order is read as a right
    side and mapped back with ``F``.
    """
    w, k = _adjacent(word, set(labels))
    f1, f2, f3 = w[k:k + 3]
    i, j, l = sorted(set(f1.plane) | set(f2.plane) | set(f3.plane))
    if f2.plane != (i, l):
        raise TetraError("middle factor must sit on the outer plane")
    S = s_involution
    if f1.plane == (i, j) and f3.plane == (j, l):
        tp = inverse((f3.value, s_inverse(f2.value), f1.value))
        new = (Factor((j, l), S(tp[0]), f3.label), Factor((i, l), tp[1], f2.label),
               Factor((i, j), S(tp[2]), f1.label))
    elif f1.plane == (j, l) and f3.plane == (i, j):
        t = f_map((s_inverse(f1.value), f2.value, s_inverse(f3.value)))
        new = (Factor((i, j), t[2], f3.label), Factor((i, l), S(t[1]), f2.label),
               Factor((j, l), t[0], f1.label))
    else:
        raise TetraError("factors do not form a Yang-Baxter triangle")
    return w[:k] + new + w[k + 3:]


def run_sequence(t, sequence=SEQUENCE_FORWARD, inverse=f_inverse_dual, dps=None):
    """Apply the moves of ``sequence`` to the standard word.

    Returns ``(final_word, max_drift)`` where ``max_drift`` is the largest
    entry change of the 4x4 product over all intermediate words.
    """
    with mpmath.workdps(dps or 15):
        word = standard_word(to_mp(t) if dps else t)
        U0 = word_product(word)
        drift = 0.0
        for labels in sequence:
            word = lyb_move(word, labels, inverse)
            drift = max(drift, _maxabs(word_product(word) - U0))
    return word, drift


def sequences_agree(t, inverse=f_inverse_dual, dps=None):
    """Largest parameter gap between the end words of the two sequences."""
    with mpmath.workdps(dps or 15):
        w1, _ = run_sequence(t, SEQUENCE_FORWARD, inverse, dps)
        w2, _ = run_sequence(t, SEQUENCE_BACKWARD, inverse, dps)
        v1 = {f.label: (f.plane, f.value) for f in w1}
        v2 = {f.label: (f.plane, f.value) for f in w2}
        if any(v1[k][0] != v2[k][0] for k in v1):
            raise TetraError("end words differ in their planes")
        return float(max(abs(v1[k][1] - v2[k][1]) for k in v1))


def element_identities(t):
    """Entries of the six-R product against their closed expressions.

    Returns the max deviation over ``U14 = b(t4)``, ``U24 = -a(t4) b(S t2)``,
    ``U13 = a(t4) b(S t5)``, ``U12 = a(t4) a(S t5) b(t6)``,
    ``U34 = a(S t2) a(t4) b(t1)`` and
    ``U23 = b(S t2) b(t4) b(S t5) - (i a(S t2)) (i a(S t5)) b(t3)``, up to
    the unit phases the block convention attaches.
    """
    U = six_r_product(t)
    S = s_involution
    t1, t2, t3, t4, t5, t6 = t
    u2, u5 = S(t2), S(t5)
    a, b = a_fn, b_fn
    expect = {
        (0, 3): b(t4),
        (1, 3): -a(t4) * b(u2),
        (0, 2): a(t4) * b(u5),
        (0, 1): a(t4) * a(u5) * b(t6),
        (2, 3): a(u2) * a(t4) * b(t1),
        # two diagonal entries i a multiply to -a a
        (1, 2): b(u2) * b(t4) * b(u5) + a(u2) * a(u5) * b(t3),
    }
    out = {}
    for (r, c), val in expect.items():
        got = U[r, c]
        out[(r + 1, c + 1)] = min(abs(got - ph * val) for ph in (1, -1, 1j, -1j))
    return out


# the maps F_ijk and Phi_ijk ----------------------------------------------------

def _slots(which):
    which = tuple(int(c) for c in str(which))
    if which not in SEQUENCE_FORWARD:
        raise TetraError(f"unknown triple {which}")
    return [x - 1 for x in which]


def _apply(fn, t, idx):
    out = list(t)
    vals = fn(tuple(out[i] for i in idx))
    for i, v in zip(idx, vals):
        out[i] = v
    return tuple(out)


def _dress(t, idx, d):
    out = list(t)
    for i in idx:
        out[i] = d(out[i])
    return tuple(out)


DRESSINGS = {"sigma": (sigma, sigma), "S": (s_involution, s_inverse)}


def tetra_map(which, t, direction="forward", form="F", dressing="sigma"):
    """Apply ``F_ijk`` (``form="F"``) or ``Phi_ijk = D_i D_k F_ijk D_j``
    (``form="phi"``) to the three slots of a six-tuple.

    ``direction="inverse"`` applies the inverse map.  ``D`` is the duality
    ``sigma`` by default; ``dressing="S"`` uses ``(t-1)/(t+1)`` and
    ``F^-1 = S^3 F S^3`` instead, which is kept for comparison.
    """
    idx = _slots(which)
    d, d_inv = DRESSINGS[dressing]
    finv = f_inverse_dual if dressing == "sigma" else f_inverse
    i, j, k = idx
    if form == "F":
        return _apply(f_map if direction == "forward" else finv, t, idx)
    if form != "phi":
        raise TetraError(f"unknown form {form!r}")
    if direction == "forward":
        t = _dress(t, [j], d)
        t = _apply(f_map, t, idx)
        return _dress(t, [i, k], d)
    t = _dress(t, [i, k], d_inv)
    t = _apply(finv, t, idx)
    return _dress(t, [j], d_inv)


def tetra_sides(t, form="F", dressing="sigma"):
    """Both sides of the tetrahedron equation applied to ``t``.

    ``F`` form: ``F356^-1 F246 F145^-1 F123`` against
    ``F123^-1 F145 F246^-1 F356`` (rightmost acts first).  ``phi`` form:
    ``Phi356 Phi246 Phi145 Phi123`` against the reversed product.
    """
    if form == "F":
        left = [(123, "forward"), (145, "inverse"), (246, "forward"), (356, "inverse")]
        right = [(356, "forward"), (246, "inverse"), (145, "forward"), (123, "inverse")]
    else:
        left = [(w, "forward") for w in (123, 145, 246, 356)]
        right = [(w, "forward") for w in (356, 246, 145, 123)]
    out = []
    for chain in (left, right):
        u = tuple(t)
        for which, direction in chain:
            u = tetra_map(which, u, direction, form, dressing)
            _check_finite(u)
        out.append(u)
    return out


def _check_finite(u, cap=1e8):
    for x in u:
        if not np.isfinite(complex(x)) or abs(x) > cap or abs(x - 1) < 1e-8:
            raise TetraError("composition left the finite domain")


def sample_tuple(rng, lo=1.0, hi=4.0):
    """Log-uniform six-tuple on ``[lo, hi]``."""
    return tuple(float(x) for x in np.exp(rng.uniform(math.log(lo), math.log(hi), 6)))


@dataclass
class TetraReport:
    accepted: int = 0
    rejected: int = 0
    max_residual: float = 0.0
    per_equation: dict = field(default_factory=dict)

    def to_json(self):
        return {"accepted": self.accepted, "rejected": self.rejected,
                "max_residual": self.max_residual, "per_equation": dict(self.per_equation)}


def verify_tetrahedron(samples=100, seed=42, lo=1.0, hi=4.0, dressing="sigma",
                       max_draws=None, dps=30):
    """Check both forms of the tetrahedron equation on seeded samples.

    Sample ``k`` is drawn from its own generator seeded by ``(seed, k)``, so
    results do not depend on scheduling.  Draws whose compositions hit a
    pole or blow past ``1e8`` are rejected and counted.  The maps run with
    ``dps`` digits; ``dps=None`` uses doubles, which lose about eight digits
    through the nested square roots near ``t = 1``.
    """
    with mpmath.workdps(dps or 15):
        return _verify_tetrahedron(samples, seed, lo, hi, dressing, max_draws, dps)


def _verify_tetrahedron(samples, seed, lo, hi, dressing, max_draws, dps):
    rep = TetraReport(per_equation={"F": 0.0, "phi": 0.0})
    k = 0
    limit = max_draws or 20 * samples
    while rep.accepted < samples and k < limit:
        rng = np.random.default_rng([seed, k])
        k += 1
        t = sample_tuple(rng, lo, hi)
        if dps:
            t = to_mp(t)
        try:
            res = {}
            for form in ("F", "phi"):
                left, right = tetra_sides(t, form, dressing)
                res[form] = max(abs(x - y) for x, y in zip(left, right))
        except (TetraError, StarTriangleError, ZeroDivisionError):
            rep.rejected += 1
            continue
        rep.accepted += 1
        for form, r in res.items():
            rep.per_equation[form] = max(rep.per_equation[form], float(r))
    rep.max_residual = max(rep.per_equation.values())
    return rep


# boundary reconstruction -----------------------------------------------------

GAMMA2_EDGES = ((1, 5), (2, 4), (0, 3), (0, 5), (4, 5), (3, 4))
GAMMA1_EDGES = ((1, 5), (0, 5), (5, 4), (3, 0), (4, 3), (2, 4))
BOUNDARY = (0, 1, 2, 3)
INNER = (4, 5)


def standard_graph():
    """Four strands a, b, c, d through six crossings; strand ``s`` visits
    its crossings in the listed order between a left and a right end."""
    strands = {A: (4, 5, 6), B: (2, 3, 6), C: (1, 3, 5), D: (1, 2, 4)}
    pairs = []
    for s, crossings in strands.items():
        path = [6 + 2 * s] + [c - 1 for c in crossings] + [7 + 2 * s]
        pairs += list(zip(path, path[1:]))
    return Multigraph.from_pairs(14, pairs)


def gamma_fixtures():
    """``{"gamma1", "gamma2", "standard"}`` with boundary ``v1..v4`` (0..3).

    In both six-edge graphs the inner vertices are ``v5, v6`` (4, 5).
    ``gamma2`` carries the square ``v1 v6 v5 v4`` on edges 3..6 and edges
    1, 2 hang from ``v6`` and ``v5``.  ``gamma1`` is the copy whose edges
    1, 2, 3 form the star at ``v6``.
    """
    return {
        "gamma1": (Multigraph.from_pairs(6, list(GAMMA1_EDGES)), BOUNDARY),
        "gamma2": (Multigraph.from_pairs(6, list(GAMMA2_EDGES)), BOUNDARY),
        "standard": (standard_graph(), ()),
    }


def gamma2_model(t):
    g, _ = gamma_fixtures()["gamma2"]
    return PottsModel(g, 2, tuple((x, 1) for x in t))


def boundary_values(t):
    """``{A: Z_{S0(A)}(Gamma2)}`` for the 16 boundary states, all betas 1."""
    m = gamma2_model(t)
    return {A: boundary_partition(m, BoundarySpec(BOUNDARY, A))
            for A in itertools.product((0, 1), repeat=4)}


def canonical_gauge(t):
    """Representative with ``t1, t2 >= 1`` under the inner spin flips.

    Flipping ``v6`` inverts ``t1, t4, t5``; flipping ``v5`` inverts
    ``t2, t5, t6``.  Boundary data cannot see either flip.
    """
    t = list(t)
    if t[0] < 1:
        for i in (0, 3, 4):
            t[i] = 1 / t[i]
    if t[1] < 1:
        for i in (1, 4, 5):
            t[i] = 1 / t[i]
    return tuple(t)


def _quadratic_root(qa, qb, disc):
    if disc < 0:
        raise TetraError("negative discriminant: inconsistent boundary data")
    if qa == 0:
        raise TetraError("degenerate quadratic")
    r = mpmath.sqrt(disc)
    roots = ((-qb + r) / (2 * qa), (-qb - r) / (2 * qa))
    # the roots are reciprocal; the gauge picks the one >= 1
    return max(roots)


def _mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def reconstruct_from_boundary(values, tol=1e-9, dps=30):
    """Recover ``t1..t6`` (in the canonical gauge) from Gamma2 boundary data.

    ``values`` maps each boundary state to its boundary partition function
    and may be scaled by any constant.  The formulas run with ``dps`` digits
    since they lose several digits when some ``t_i`` is near 1; pass exact
    values to get full accuracy.  Raises ``TetraError`` on a degenerate
    denominator or when the recovered weights fail to reproduce the input
    ratios to ``tol``.
    """
    with mpmath.workdps(dps):
        t = _reconstruct(values, tol)
    return tuple(float(x) for x in t)


def _reconstruct(values, tol):
    Z = {tuple(k): _mpf(v) for k, v in values.items()}
    a1, a2, a3, a4 = (Z[(0, 0, 0, 0)], Z[(0, 1, 0, 0)], Z[(0, 1, 1, 0)], Z[(0, 0, 1, 0)])
    b1, b2, b3, b4 = (Z[(0, 0, 0, 1)], Z[(0, 1, 0, 1)], Z[(0, 1, 1, 1)], Z[(0, 0, 1, 1)])
    disc1 = (b3 ** 2 * a3 ** 2 - 2 * b3 * a3 * a2 * b2 - 2 * b3 * a3 * a1 * b1
             - 2 * b3 * a3 * b4 * a4 + a2 ** 2 * b2 ** 2 - 2 * a2 * b2 * a1 * b1
             - 2 * a2 * b2 * b4 * a4 + a1 ** 2 * b1 ** 2 - 2 * a1 * b1 * b4 * a4
             + b4 ** 2 * a4 ** 2 + 4 * b4 * a3 * a1 * b2 + 4 * a2 * b1 * b3 * a4)
    t1 = _quadratic_root(-b4 * a3 + a2 * b1, -(-b3 * a3 + a2 * b2 + a1 * b1 - b4 * a4), disc1)
    disc2 = (a2 ** 2 * b4 ** 2 - 2 * a4 * b4 * a2 * b2 - 2 * a2 * b4 * b3 * a1
             - 2 * a2 * b1 * a3 * b4 + b2 ** 2 * a4 ** 2 - 2 * b3 * a4 * a1 * b2
             - 2 * b2 * a4 * a3 * b1 + b3 ** 2 * a1 ** 2 - 2 * a3 * b3 * a1 * b1
             + a3 ** 2 * b1 ** 2 + 4 * a3 * b4 * a1 * b2 + 4 * a2 * b1 * b3 * a4)
    t2 = _quadratic_root(a3 * b4 - b3 * a4, -(a2 * b4 - b2 * a4 - b3 * a1 + a3 * b1), disc2)
    aux = auxiliary_variables(Z, t1, t2)
    x, y, z, v, y1 = aux["x"], aux["y"], aux["z"], aux["v"], aux["y1"]
    q = v * y * x / (z * y1 ** 2)
    if not q > 0:
        raise TetraError("inconsistent boundary data (no positive t3)")
    t3 = mpmath.sqrt(q)
    t = (t1, t2, t3, x / (t3 * y1), v / (t3 * y1), y / (t3 * y1))
    check = boundary_values(t)
    zin = sum(Z.values())
    zout = sum(check.values())
    bad = float(max(abs(Z[k] / zin - check[k] / zout) for k in check))
    if bad > tol:
        raise TetraError(f"recovered weights miss the boundary data by {bad:.3e}")
    return t


def auxiliary_variables(values, t1, t2):
    """The square weights ``x, y, z, v`` (boundary ``v4 = 0``) and
    ``x1, y1, z1, v1`` (``v4 = 1``) up to the common factor ``C/B1``."""
    Z = {tuple(k): _mpf(v) for k, v in values.items()}
    a1, a2, a3, a4 = (Z[(0, 0, 0, 0)], Z[(0, 1, 0, 0)], Z[(0, 1, 1, 0)], Z[(0, 0, 1, 0)])
    b1, b2, b3, b4 = (Z[(0, 0, 0, 1)], Z[(0, 1, 0, 1)], Z[(0, 1, 1, 1)], Z[(0, 0, 1, 1)])
    den = -t2 ** 2 + 1 + t1 ** 2 * t2 ** 2 - t1 ** 2
    if abs(den) < 1e-12 * max(1.0, t1 * t1 * t2 * t2):
        raise TetraError("degenerate denominator (t1 or t2 equals 1)")
    out = {}
    for tag, (c1, c2, c3, c4) in (("", (a1, a2, a3, a4)), ("1", (b1, b2, b3, b4))):
        out["y" + tag] = (-t2 * c1 + t1 * t2 * c2 + c4 - t1 * c3) / den
        out["z" + tag] = (t1 * t2 * c1 - t2 * c2 + c3 - t1 * c4) / den
        out["x" + tag] = (t2 * t1 * c4 - t1 * c1 - t2 * c3 + c2) / den
        out["v" + tag] = (c1 + t1 * t2 * c3 - t2 * c4 - t1 * c2) / den
    return out
