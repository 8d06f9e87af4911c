"""Quaternion-matrix realization of 4-vectors and exact correlator oracles
for the scalar and Weyl bilocal fields.

All traces are taken over 2x2 matrices with Gaussian-rational (or, for
the symbolic identity checks, polynomial-valued) entries, so every value
here is an exact rational number.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exact import GaussRat, I_UNIT, MPoly
from .exact.gauss import GaussInt, I_INT
from .kinematics import DegenerateConfiguration, PointConfig, Vec4, dot4, vsub

Mat2 = Tuple[Tuple[object, object], Tuple[object, object]]


# -- small matrix helpers (ring-generic) ---------------------------------------


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_add(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] + b[0][0], a[0][1] + b[0][1]),
        (a[1][0] + b[1][0], a[1][1] + b[1][1]),
    )


def mat_trace(a: Mat2):
    return a[0][0] + a[1][1]


def mat_chain(mats: Sequence[Mat2]) -> Mat2:
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


# -- slash matrices -------------------------------------------------------------


def slash_generic(z: Sequence, conjugate: bool, i_unit) -> Mat2:
    """z-slash (or its quaternion conjugate) for entries of any ring.

    slash(z) = z4 + z.Q with Q_j = -i sigma_j; the conjugate flips the
    sign of the imaginary-quaternion part.
    """
    z1, z2, z3, z4 = z
    s = -1 if conjugate else 1
    iz1 = i_unit * z1
    iz3 = i_unit * z3
    return (
        (z4 - s * iz3, -s * (z2 + iz1)),
        (s * (z2 - iz1), z4 + s * iz3),
    )


def slash(z: Vec4, conjugate: bool = False) -> Mat2:
    """Exact 2x2 Gaussian-rational matrix for a rational 4-vector."""
    return slash_generic([GaussRat(c) for c in z], conjugate, I_UNIT)


def det4(a: Vec4, b: Vec4, c: Vec4, d: Vec4):
    """Determinant of the 4x4 matrix with columns a, b, c, d."""
    cols = (a, b, c, d)
    total = None
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        prod = cols[0][perm[0]]
        for k in range(1, 4):
            prod = prod * cols[k][perm[k]]
        prod = prod if sign > 0 else -prod
        total = prod if total is None else total + prod
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def trace4(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> Fraction:
    """tr(slash(a) slash+(b) slash(c) slash+(d)) as an exact rational."""
    m = mat_chain([slash(a), slash(b, True), slash(c), slash(d, True)])
    return mat_trace(m).as_fraction()


def trace4_identity_check(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> bool:
    """tr(a b+ c d+) = 2[(ab)(cd) - (ac)(bd) + (ad)(bc) + det(a,b,c,d)]."""
    lhs = trace4(a, b, c, d)
    rhs = 2 * (
        dot4(a, b) * dot4(c, d)
        - dot4(a, c) * dot4(b, d)
        + dot4(a, d) * dot4(b, c)
        + det4(a, b, c, d)
    )
    return lhs == rhs


def interval_identities(config: PointConfig) -> bool:
    """The dot-product/interval relations used to reduce the traces.

    2 z_ij . z_kl = rho_il + rho_jk - rho_ik - rho_jl, checked on all
    index quadruples of the configuration.
    """
    n = len(config)
    r = config.rho
    pts = config.points
    for i, j, k, l in itertools.product(range(n), repeat=4):
        lhs = 2 * dot4(vsub(pts[i], pts[j]), vsub(pts[k], pts[l]))
        if lhs != r(i, l) + r(j, k) - r(i, k) - r(j, l):
            return False
    return True


# -- symbolic identity checks ----------------------------------------------------


def _sym_points(n_points: int) -> List[List[MPoly]]:
    """n_points symbolic 4-vectors over 4*n_points coordinate variables.

    Coefficients are plain integers (Gaussian integers after the slash
    matrices enter), which keeps the trace expansions fast; the results
    are mapped back to Fraction coefficients at the boundary.
    """
    arity = 4 * n_points

    def int_var(i):
        e = [0] * arity
        e[i] = 1
        return MPoly(arity, {tuple(e): 1})

    return [[int_var(4 * i + mu) for mu in range(4)] for i in range(n_points)]


def _sym_dot(z, w) -> MPoly:
    return sum((a * b for a, b in zip(z, w)), MPoly.zero(z[0].arity))


def _sym_sub(z, w):
    return [a - b for a, b in zip(z, w)]


def _to_fraction_poly(p: MPoly) -> MPoly:
    """Check all coefficients are real and strip them to Fractions."""
    return p.map_coeff(
        lambda c: c.as_fraction() if isinstance(c, (GaussRat, GaussInt)) else Fraction(c)
    )


def anticommutation_symbolic() -> bool:
    """slash(z) slash+(w) + slash(w) slash+(z) = 2 (z.w) * 1, symbolically."""
    z, w = _sym_points(2)
    zs = slash_generic(z, False, I_INT)
    ws = slash_generic(w, False, I_INT)
    zc = slash_generic(z, True, I_INT)
    wc = slash_generic(w, True, I_INT)
    lhs = mat_add(mat_mul(zs, wc), mat_mul(ws, zc))
    d2 = 2 * _sym_dot(z, w)
    zero = MPoly.zero(8)
    rhs = ((d2, zero), (zero, d2))
    return all(lhs[i][j] == rhs[i][j] for i in range(2) for j in range(2))


def trace4_identity_symbolic() -> bool:
    """The four-slash trace formula as a polynomial identity in 16 variables."""
    a, b, c, d = _sym_points(4)
    m = mat_chain(
        [
            slash_generic(a, False, I_INT),
            slash_generic(b, True, I_INT),
            slash_generic(c, False, I_INT),
            slash_generic(d, True, I_INT),
        ]
    )
    lhs = _to_fraction_poly(mat_trace(m))
    rhs = 2 * (
        _sym_dot(a, b) * _sym_dot(c, d)
        - _sym_dot(a, c) * _sym_dot(b, d)
        + _sym_dot(a, d) * _sym_dot(b, c)
        + det4(a, b, c, d)
    )
    return lhs == rhs


def interval_identities_symbolic() -> bool:
    """The A.4-type reductions as identities in 16 coordinate variables."""
    z1, z2, z3, z4 = _sym_points(4)

    def rho(x, y):
        d = _sym_sub(x, y)
        return _sym_dot(d, d)

    lhs1 = 2 * _sym_dot(_sym_sub(z1, z2), _sym_sub(z2, z3))
    rhs1 = rho(z1, z3) - rho(z1, z2) - rho(z2, z3)
    lhs2 = 2 * _sym_dot(_sym_sub(z1, z2), _sym_sub(z3, z4))
    rhs2 = rho(z1, z4) + rho(z2, z3) - rho(z1, z3) - rho(z2, z4)
    return lhs1 == rhs1 and lhs2 == rhs2


# -- cycle structures and their traces -------------------------------------------


CycleSeq = Tuple[int, ...]  # 0-based point sequence (p1, p2 | p3, p4 | ...)


def _canonical(seq: CycleSeq) -> CycleSeq:
    """Canonical representative under block rotation and cycle reversal."""
    n2 = len(seq)
    blocks = [tuple(seq[i : i + 2]) for i in range(0, n2, 2)]

    def norm(bs) -> CycleSeq:
        k = next(i for i, b in enumerate(bs) if 0 in b)
        rot = bs[k:] + bs[:k]
        return tuple(x for b in rot for x in b)

    rev_blocks = [tuple(reversed(b)) for b in reversed(blocks)]
    return min(norm(blocks), norm(rev_blocks))


def orbit_enumerate(n: int) -> List[CycleSeq]:
    """All pole structures of a length-2n bilocal cycle, canonically.

    These are cyclic block sequences with per-block orientations, up to
    the Z_n x Z_2 stabilizer; there are 2^(n-1) (n-1)! of them.
    """
    if n < 2:
        raise ValueError("need at least two blocks")
    blocks = [(2 * i, 2 * i + 1) for i in range(n)]
    seen = {}
    for perm in itertools.permutations(range(1, n)):
        order = [0] + list(perm)
        for flips in itertools.product((False, True), repeat=n):
            seq = []
            for bi, fl in zip(order, flips):
                b = blocks[bi]
                seq.extend(reversed(b) if fl else b)
            key = _canonical(tuple(seq))
            seen[key] = True
    return sorted(seen)


def links_of(seq: CycleSeq) -> List[Tuple[int, int]]:
    """The inter-block (propagator) pairs of a cycle sequence."""
    n2 = len(seq)
    return [(seq[i], seq[(i + 1) % n2]) for i in range(1, n2, 2)]


def cycle_trace_numerator(seq: CycleSeq, points: Sequence[Vec4]) -> Fraction:
    """Two-orientation symmetric trace over the alternating slash cycle.

    Forward product: slash(z_p1 - z_p2) slash+(z_p2 - z_p3) ... ; the
    reverse orientation keeps the first factor and reverses the rest.
    The uniform difference-vector orientation used here flips the sign
    relative to the conventional two-term and braces forms of the n = 2, 3
    elementary contributions, so the total is negated to match them.
    """
    diffs = []
    n2 = len(seq)
    for i in range(n2):
        a, b = seq[i], seq[(i + 1) % n2]
        diffs.append(vsub(points[a], points[b]))
    fwd = [slash(d, conjugate=(i % 2 == 1)) for i, d in enumerate(diffs)]
    rev = [fwd[0]] + fwd[1:][::-1]
    total = mat_trace(mat_add(mat_chain(fwd), mat_chain(rev)))
    return -total.as_fraction()


def cycle_trace_2n(config: PointConfig, seq: CycleSeq) -> Fraction:
    """Elementary contribution: cycle trace over its squared link poles."""
    num = cycle_trace_numerator(seq, config.points)
    den = Fraction(1)
    for i, j in links_of(seq):
        r = config.rho(i, j)
        if r == 0:
            raise DegenerateConfiguration(f"rho({i + 1},{j + 1}) = 0 on a pole pair")
        den *= r * r
    return num / den


# -- signed pairing (Wick) numerators ----------------------------------------------


def crossing_sign(pairing: Sequence[Tuple[int, int]], ordering: Sequence[int]) -> int:
    """Parity of chord crossings of the pairing drawn along `ordering`."""
    pos = {p: k for k, p in enumerate(ordering)}
    chords = [tuple(sorted((pos[i], pos[j]))) for i, j in pairing]
    crossings = 0
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        lo, hi = (a, b) if a < c else (c, d)
        other = (c, d) if a < c else (a, b)
        if lo < other[0] < hi < other[1]:
            crossings += 1
    return -1 if crossings % 2 else 1


def all_pairings(items: Sequence[int]):
    """All perfect pairings of the items (first-element canonical order)."""
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1 :]
        for tail in all_pairings(rest):
            yield [(first, items[k])] + tail


def rho_variable_index(i: int, j: int, n_points: int) -> int:
    """Index of rho_ij (i < j, 0-based) among the C(n,2) interval variables."""
    if i > j:
        i, j = j, i
    return i * (2 * n_points - i - 3) // 2 + j - 1


def wick_numerator(n: int, ordering: CycleSeq | None = None) -> MPoly:
    """Signed sum over perfect pairings of products of rho variables.

    The sign of a pairing is its chord-crossing parity along the cycle
    ordering (default: 1, 2, ..., 2n).  The result is a polynomial in the
    C(2n, 2) interval variables rho_ij; the per-n normalization constant
    relating it to the cycle traces is fitted separately.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    m = 2 * n
    if ordering is None:
        ordering = tuple(range(m))
    arity = m * (m - 1) // 2
    total = MPoly.zero(arity)
    for pairing in all_pairings(list(range(m))):
        sign = crossing_sign(pairing, ordering)
        e = [0] * arity
        for i, j in pairing:
            e[rho_variable_index(i, j, m)] += 1
        total = total + MPoly(arity, {tuple(e): Fraction(sign)})
    return total


def rho_point(config: PointConfig) -> List[Fraction]:
    """All rho_ij of a configuration, ordered like the rho variables."""
    m = len(config)
    return [config.rho(i, j) for i in range(m) for j in range(i + 1, m)]


def rho_symbolic(n_points: int) -> List[MPoly]:
    """The rho_ij as polynomials in the 4*n coordinate variables."""
    pts = _sym_points(n_points)
    out = []
    for i in range(n_points):
        for j in range(i + 1, n_points):
            d = _sym_sub(pts[i], pts[j])
            out.append(_sym_dot(d, d))
    return out


def cycle_trace_numerator_symbolic(seq: CycleSeq, n_points: int) -> MPoly:
    """The two-orientation trace as a polynomial in the coordinates."""
    pts = _sym_points(n_points)
    diffs = []
    n2 = len(seq)
    for i in range(n2):
        a, b = seq[i], seq[(i + 1) % n2]
        diffs.append(_sym_sub(pts[a], pts[b]))
    fwd = [slash_generic(d, i % 2 == 1, I_INT) for i, d in enumerate(diffs)]
    rev = [fwd[0]] + fwd[1:][::-1]
    return -_to_fraction_poly(mat_trace(mat_add(mat_chain(fwd), mat_chain(rev))))


def fit_cycle_constant(n: int, config: PointConfig) -> Fraction:
    """Exact ratio of the canonical cycle trace numerator to the signed
    pairing sum, at one non-degenerate configuration."""
    seq = tuple(range(2 * n))
    num = cycle_trace_numerator(seq, config.points)
    ws = wick_numerator(n, seq).eval(rho_point(config))
    if ws == 0:
        raise ValueError("pairing sum vanishes at this configuration; redraw")
    return num / ws


# -- correlator oracles ------------------------------------------------------------


def v1_weyl_4pt(config: PointConfig) -> Fraction:
    """4-point function of the Weyl bilocal, as the two-trace combination.

    Equals j_1(s, t) / (rho13 rho24) at any non-degenerate configuration;
    the raw two-trace combination with the unit spinor 2-point function is
    twice this, and the 1/2 pins the bilocal normalization to f_1 = j_1.
    """
    if len(config) != 4:
        raise ValueError("need four points")
    pts = config.points
    r = config.rho
    if r(0, 3) == 0 or r(1, 2) == 0 or r(0, 2) == 0 or r(1, 3) == 0:
        raise DegenerateConfiguration("vanishing rho in a pole pair")

    def term(p3: int, p4: int) -> Fraction:
        z12 = slash(vsub(pts[0], pts[1]))
        z2a = slash(vsub(pts[1], pts[p3]), True)
        zab = slash(vsub(pts[p3], pts[p4]))
        z1b = slash(vsub(pts[0], pts[p4]), True)
        m = mat_add(
            mat_chain([z12, z2a, zab, z1b]), mat_chain([z12, z1b, zab, z2a])
        )
        return mat_trace(m).as_fraction() / (r(0, p4) * r(1, p3)) ** 2

    # the second displayed term is the z3 <-> z4 image of the first (the
    # relative minus sign is absorbed by the reversed difference vector)
    return (term(2, 3) + term(3, 2)) / 2


def v1_scalar_connected(config: PointConfig, structures=None) -> Fraction:
    """Connected 2n-point function of the scalar bilocal: one-loop cycles
    with propagator 1/rho over each pole structure's links."""
    n = len(config) // 2
    if structures is None:
        structures = orbit_enumerate(n)
    total = Fraction(0)
    for seq in structures:
        prod = Fraction(1)
        for i, j in links_of(seq):
            r = config.rho(i, j)
            if r == 0:
                raise DegenerateConfiguration(f"rho({i + 1},{j + 1}) = 0")
            prod /= r
        total += prod
    return total


def v1_weyl_connected(config: PointConfig, structures=None) -> Fraction:
    """Connected 2n-point function of the Weyl bilocal via cycle traces.

    Normalized so that the 4-point value is j_1(s, t)/(rho13 rho24)
    exactly; with the unit-normalized spinor 2-point function the raw
    trace sum is twice this at every n, a constant the lambda fits of the
    symmetrization ansatz would otherwise simply absorb.
    """
    n = len(config) // 2
    if structures is None:
        structures = orbit_enumerate(n)
    return sum(cycle_trace_2n(config, seq) for seq in structures) / 2


def _block_partitions(blocks: List[int]):
    """Set partitions of the blocks with every part of size >= 2."""
    if not blocks:
        yield []
        return
    first, rest = blocks[0], blocks[1:]
    for k in range(1, len(rest) + 1):
        for mates in itertools.combinations(rest, k):
            part = [first, *mates]
            remaining = [b for b in rest if b not in mates]
            for tail in _block_partitions(remaining):
                yield [part] + tail


def full_from_connected(conn_eval, config: PointConfig) -> Fraction:
    """Full 2n-point function of a bilocal with vanishing 1-point part:
    sum over partitions of the blocks into groups of >= 2, of products of
    connected functions."""
    n = len(config) // 2
    blocks = list(range(n))
    total = Fraction(0)
    for partition in _block_partitions(blocks):
        prod = Fraction(1)
        for part in partition:
            idx = [p for b in part for p in (2 * b, 2 * b + 1)]
            prod *= conn_eval(config.subset(idx))
        total += prod
    return total


def v1_scalar_npoint(config: PointConfig) -> Fraction:
    """Full 2n-point function of the scalar bilocal (B_phi = 1)."""
    return full_from_connected(v1_scalar_connected, config)


def v1_weyl_npoint(config: PointConfig) -> Fraction:
    """Full 2n-point function of the Weyl bilocal."""
    return full_from_connected(v1_weyl_connected, config)


# -- first-principles Wick network for the composite scalars ------------------------


def _fermion_edge(pts, kind: str, fv: int, cv: int, f_slot: int, c_slot: int):
    """Wick contraction between a field operator (at vertex fv) and its
    conjugate (at vertex cv), as a matrix in (earlier-slot, later-slot)
    index order.

    kind "psi": <psi(x) psi+(y)> = slash+(x - y) / rho^2;
    kind "chi": <chi(x) chi+(y)> = slash(x - y) / rho^3.
    Locality fixes the opposite operator order to the transposed matrix
    with a sign flip (the difference vector reverses).
    """
    z = vsub(pts[fv], pts[cv])
    r = sum(c * c for c in z)
    if r == 0:
        raise DegenerateConfiguration("coincident points in a propagator")
    weight = r**2 if kind == "psi" else r**3
    m = slash(z, conjugate=(kind == "psi"))
    if f_slot < c_slot:
        mat = tuple(tuple(e / weight for e in row) for row in m)
        return mat, fv, cv
    mat = tuple(tuple(-m[b][a] / weight for b in range(2)) for a in range(2))
    return mat, cv, fv


def _chord_parity(chords: List[Tuple[int, int]]) -> int:
    crossings = 0
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        lo, hi = (a, b) if a < c else (c, d)
        other = (c, d) if a < c else (a, b)
        if lo < other[0] < hi < other[1]:
            crossings += 1
    return -1 if crossings % 2 else 1


def _is_single_alternating_loop(pair_a: Dict[int, int], pair_b: Dict[int, int], m: int) -> bool:
    """Walk the union of two perfect matchings, alternating families."""
    cur = 0
    use_a = True
    for step in range(m):
        cur = pair_a[cur] if use_a else pair_b[cur]
        use_a = not use_a
        if cur == 0:
            return step == m - 1
    return False


def _contract_loop(mats, m: int) -> Fraction:
    """Spinor index contraction over one closed loop.

    Each vertex carries one spinor index shared by its two operator
    slots; each edge matrix is indexed (earlier vertex, later vertex).
    Walking the cycle and transposing the edges that point backwards
    turns the sum over index assignments into a matrix-product trace.
    """
    adj: Dict[int, List[int]] = {}
    for _, ev, lv in mats:
        adj.setdefault(ev, []).append(lv)
        adj.setdefault(lv, []).append(ev)
    oriented = {(ev, lv): mat for mat, ev, lv in mats}
    cur = 0
    prev = None
    chain = None
    for _ in range(m):
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if (cur, nxt) in oriented:
            step = oriented[(cur, nxt)]
        else:
            t = oriented[(nxt, cur)]
            step = ((t[0][0], t[1][0]), (t[0][1], t[1][1]))
        chain = step if chain is None else mat_mul(chain, step)
        prev, cur = cur, nxt
    return mat_trace(chain).as_fraction()


def l1_truncated_npoint(config: PointConfig) -> Fraction:
    """Truncated 2n-point function of the composite psi+ chi + chi+ psi.

    Direct fermionic Wick sum over single-loop contraction patterns: the
    chord-crossing parity of each pattern supplies the sign, and the
    spinor indices are contracted by brute force.  Serves as the
    independent reference correlator for the symmetrization ansatz.
    """
    m = len(config)
    if m % 2:
        raise ValueError("need an even number of points")
    n = m // 2
    pts = config.points
    total = Fraction(0)
    # vertices in A carry the (psi+ chi) term, the rest carry (chi+ psi);
    # a single loop needs equal counts
    for a_set in itertools.combinations(range(m), n):
        in_a = set(a_set)
        # slot layout per vertex, in writing order
        psi_slot = {v: 2 * v + 1 for v in range(m) if v not in in_a}
        psiplus_slot = {v: 2 * v for v in in_a}
        chi_slot = {v: 2 * v + 1 for v in in_a}
        chiplus_slot = {v: 2 * v for v in range(m) if v not in in_a}
        psi_vertices = sorted(psi_slot)
        chi_vertices = sorted(chi_slot)
        for psi_match in itertools.permutations(sorted(psiplus_slot)):
            psi_pair = {}
            for v, w in zip(psi_vertices, psi_match):
                psi_pair[v] = w
                psi_pair[w] = v
            for chi_match in itertools.permutations(sorted(chiplus_slot)):
                chi_pair = {}
                for v, w in zip(chi_vertices, chi_match):
                    chi_pair[v] = w
                    chi_pair[w] = v
                if not _is_single_alternating_loop(psi_pair, chi_pair, m):
                    continue
                mats = []
                chords = []
                for v, w in zip(psi_vertices, psi_match):
                    s1, s2 = psi_slot[v], psiplus_slot[w]
                    chords.append(tuple(sorted((s1, s2))))
                    mats.append(_fermion_edge(pts, "psi", v, w, s1, s2))
                for v, w in zip(chi_vertices, chi_match):
                    s1, s2 = chi_slot[v], chiplus_slot[w]
                    chords.append(tuple(sorted((s1, s2))))
                    mats.append(_fermion_edge(pts, "chi", v, w, s1, s2))
                total += _chord_parity(chords) * _contract_loop(mats, m)
    return total


def l0_truncated_npoint(config: PointConfig) -> Fraction:
    """Truncated 2n-point function of the composite of two commuting free
    scalars of dimensions 1 and 3.

    Connected diagrams are Hamiltonian cycles through the points with the
    two propagators 1/rho and 1/rho^3 alternating along the cycle.
    """
    m = len(config)
    r = config.rho
    total = Fraction(0)
    for tail in itertools.permutations(range(1, m)):
        if tail[0] > tail[-1]:
            continue  # each undirected cycle once
        cyc = (0, *tail, 0)
        prod1 = Fraction(1)
        prod2 = Fraction(1)
        for k in range(m):
            rv = r(cyc[k], cyc[k + 1])
            if rv == 0:
                raise DegenerateConfiguration("coincident points")
            if k % 2 == 0:
                prod1 /= rv
                prod2 /= rv**3
            else:
                prod1 /= rv**3
                prod2 /= rv
        total += prod1 + prod2
    return total
