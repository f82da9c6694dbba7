"""Ball model of weight-3 CY-type Hodge structures with an order-3 automorphism.

Coordinates.  V_C = C^(2(1+q)) = F^2 (+) conj(F^2): the first 1+q coordinates
span F^2 (the xi-eigenspace of phi), the last 1+q span its conjugate (the
conj(xi)-eigenspace).  Complex conjugation of V_C is
    sigma(a, b) = (conj(b), conj(a)).
The Hermitian form is diagonal,
    H = diag(1, -1, ..., -1 | -1, 1, ..., 1),
so H(z, z) = |z_0|^2 - sum |z_j|^2 on F^2 and H(sigma x, sigma x) = -H(x, x),
as required in odd weight.  Signs: H > 0 on V^{3,0} and V^{1,2}, H < 0 on
V^{2,1} and V^{0,3}.

Arithmetic uses gmpy2 multiprecision complex numbers at 113 bits (about 34
significant digits); inputs may be Python, mpmath or gmpy2 numbers or strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2
import mpmath

from ..errors import BoundaryPoint

PREC_BITS = 113
TOL = gmpy2.mpfr("1e-12")
BOUNDARY_GUARD = gmpy2.mpfr("1e-10")

PIECES = ("3,0", "2,1", "1,2", "0,3")
SIGNS = {"3,0": 1, "2,1": -1, "1,2": 1, "0,3": -1}
CONJUGATE = {"3,0": "0,3", "2,1": "1,2", "1,2": "2,1", "0,3": "3,0"}


def _ctx():
    return gmpy2.context(gmpy2.get_context(), precision=PREC_BITS)


def _mpf_to_mpfr(x) -> gmpy2.mpfr:
    sign, man, exp, _ = x._mpf_
    if not man:
        return gmpy2.mpfr(0)
    v = gmpy2.mul_2exp(gmpy2.mpfr(man), exp)
    return -v if sign else v


def to_mpc(x) -> gmpy2.mpc:
    """Convert int/float/complex/str/mpmath/gmpy2 values to gmpy2.mpc."""
    if isinstance(x, mpmath.mpc):
        return gmpy2.mpc(_mpf_to_mpfr(x.real), _mpf_to_mpfr(x.imag))
    if isinstance(x, mpmath.mpf):
        return gmpy2.mpc(_mpf_to_mpfr(x), 0)
    if isinstance(x, str):
        return gmpy2.mpc(complex(x.replace("i", "j").replace(" ", ""))) if "j" in x or "i" in x else gmpy2.mpc(gmpy2.mpfr(x))
    return gmpy2.mpc(x)


def to_mpmath(z) -> mpmath.mpc:
    with mpmath.workprec(PREC_BITS):
        return mpmath.mpc(mpmath.mpf(str(z.real)), mpmath.mpf(str(z.imag)))


def _xi():
    with _ctx():
        third = gmpy2.const_pi() * 2 / 3
        return gmpy2.mpc(gmpy2.cos(third), gmpy2.sin(third))


def _norm_sq(v):
    acc = gmpy2.mpfr(0)
    for z in v:
        acc += gmpy2.norm(z)
    return acc


@dataclass(frozen=True)
class BallPoint:
    """w in C^q with |w| < 1, stored as gmpy2 complex numbers."""

    w: tuple

    def __init__(self, w):
        with _ctx():
            ws = tuple(to_mpc(x) for x in w)
            if _norm_sq(ws) >= 1:
                raise BoundaryPoint("point is not strictly inside the unit ball")
        object.__setattr__(self, "w", ws)

    @property
    def q(self) -> int:
        return len(self.w)

    def norm_sq(self):
        with _ctx():
            return _norm_sq(self.w)

    def to_json(self, digits: int = 20) -> list:
        return [_cx_str(z, digits) for z in self.w]


def _cx_str(z, digits: int) -> list:
    with _ctx():
        m = to_mpmath(to_mpc(z))
    return [mpmath.nstr(m.real, digits), mpmath.nstr(m.imag, digits)]


@dataclass
class CYHodgeStructure:
    q: int
    pieces: dict  # label -> list of vectors (lists of gmpy2.mpc) of length 2(1+q)
    phi_eigenvalues: tuple = field(default_factory=lambda: (_xi(), _xi().conjugate()))

    @property
    def basis_dim(self) -> int:
        return 2 * (1 + self.q)

    def hermitian_diagonal(self) -> list[int]:
        return hermitian_diagonal(self.q)

    def to_json(self, digits: int = 20) -> dict:
        return {
            "q": str(self.q),
            "basis_dim": str(self.basis_dim),
            "hermitian_diagonal": [str(h) for h in self.hermitian_diagonal()],
            "pieces": {k: [[_cx_str(z, digits) for z in v] for v in vs] for k, vs in self.pieces.items()},
            "phi_eigenvalues": {"F2": _cx_str(self.phi_eigenvalues[0], digits),
                                "conj_F2": _cx_str(self.phi_eigenvalues[1], digits)},
        }


def hermitian_diagonal(q: int) -> list[int]:
    return [1] + [-1] * q + [-1] + [1] * q


def _herm(h, x, y):
    acc = gmpy2.mpc(0)
    for hi, xi, yi in zip(h, x, y):
        if xi and yi:
            t = xi * yi.conjugate()
            acc = acc + t if hi > 0 else acc - t
    return acc


def _dot(x, y):
    """Euclidean inner product sum x_i conj(y_i)."""
    acc = gmpy2.mpc(0)
    for xi, yi in zip(x, y):
        if xi and yi:
            acc += xi * yi.conjugate()
    return acc


def sigma(x: list, q: int) -> list:
    with _ctx():
        x = [to_mpc(z) for z in x]
        a, b = x[: q + 1], x[q + 1:]
        return [z.conjugate() for z in b] + [z.conjugate() for z in a]


def hodge_from_ball(q: int, w) -> CYHodgeStructure:
    """V^{3,0} = C (1, w); V^{2,1} = its H-orthogonal complement in F^2; the rest by conjugation."""
    with _ctx():
        ws = [to_mpc(x) for x in (w.w if isinstance(w, BallPoint) else w)]
        if len(ws) != q:
            raise ValueError(f"ball point has {len(ws)} coordinates, expected {q}")
        if 1 - _norm_sq(ws) < BOUNDARY_GUARD:
            raise BoundaryPoint("1 - |w|^2 is below the boundary guard 1e-10")
        h = hermitian_diagonal(q)
        dim = 2 * (1 + q)
        zero = gmpy2.mpc(0)
        v30 = [gmpy2.mpc(1)] + ws + [zero] * (q + 1)
        n30 = _herm(h, v30, v30)
        comp = []
        for k in range(1, q + 1):
            e = [zero] * dim
            e[k] = gmpy2.mpc(1)
            c = _herm(h, e, v30) / n30
            u = [ei - c * vi for ei, vi in zip(e, v30)]
            for b in comp:  # Gram-Schmidt against -H; each b has H(b, b) = -1
                c2 = -_herm(h, u, b)
                u = [ui - c2 * bi for ui, bi in zip(u, b)]
            scale = 1 / gmpy2.sqrt(-_herm(h, u, u).real)
            comp.append([ui * scale for ui in u])
        pieces = {
            "3,0": [v30],
            "2,1": comp,
            "1,2": [sigma(v, q) for v in comp],
            "0,3": [sigma(v30, q)],
        }
        return CYHodgeStructure(q, pieces)


def ball_from_hodge(hs: CYHodgeStructure) -> BallPoint:
    with _ctx():
        v = [to_mpc(z) for z in hs.pieces["3,0"][0]]
        return BallPoint([v[i] / v[0] for i in range(1, hs.q + 1)])


@dataclass
class PolarizationReport:
    ok: bool
    diagnostics: list

    def __bool__(self) -> bool:
        return self.ok


def _normalized(v):
    n = gmpy2.sqrt(_norm_sq(v))
    return [z / n for z in v] if n else v


def _ldl_min_pivot(G):
    """Smallest pivot of the LDL^* factorization of a Hermitian matrix (stops at the first nonpositive one)."""
    n = len(G)
    A = [row[:] for row in G]
    piv = gmpy2.inf()
    for k in range(n):
        d = A[k][k].real
        piv = min(piv, d)
        if d <= 0:
            return d
        for i in range(k + 1, n):
            f = A[i][k] / d
            for j in range(k + 1, n):
                A[i][j] -= f * A[j][k].conjugate()
    return piv


def _solve(A, b):
    """Gaussian elimination with partial pivoting; None if singular."""
    n = len(A)
    M = [row[:] + [bi] for row, bi in zip(A, b)]
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(M[r][c]))
        if not M[p][c]:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n + 1):
                    M[r][k] -= f * M[c][k]
    x = [gmpy2.mpc(0)] * n
    for r in range(n - 1, -1, -1):
        s = M[r][n]
        for k in range(r + 1, n):
            s -= M[r][k] * x[k]
        x[r] = s / M[r][r]
    return x


def verify_polarization(hs: CYHodgeStructure, tol=TOL) -> PolarizationReport:
    """Dimensions, phi-eigenspaces, signs, pairwise H-orthogonality and conjugation pairing."""
    diags: list[str] = []
    q = hs.q
    dim = hs.basis_dim
    want = {"3,0": 1, "2,1": q, "1,2": q, "0,3": 1}
    for lab in PIECES:
        vs = hs.pieces.get(lab, [])
        if len(vs) != want[lab]:
            diags.append(f"dimension: V^{lab} has {len(vs)} generators, expected {want[lab]}")
        if any(len(v) != dim for v in vs):
            diags.append(f"dimension: V^{lab} vectors must have length {dim}")
    if diags:
        return PolarizationReport(False, diags)
    with _ctx():
        tol = gmpy2.mpfr(tol) if not isinstance(tol, mpmath.mpf) else _mpf_to_mpfr(tol)
        h = hermitian_diagonal(q)
        xi, xib = (to_mpc(z) for z in hs.phi_eigenvalues)
        if abs(xi.conjugate() - xib) > tol or abs(xi ** 3 - 1) > tol or abs(xi - 1) < tol:
            diags.append("phi: eigenvalue on the conjugate of F^2 must be the conjugate of a primitive cube root of unity")
        norm = {lab: [_normalized([to_mpc(z) for z in v]) for v in hs.pieces[lab]] for lab in PIECES}
        for lab in PIECES:
            off = slice(q + 1, dim) if lab in ("3,0", "2,1") else slice(0, q + 1)
            if any(abs(z) > tol for v in norm[lab] for z in v[off]):
                where = "F^2" if lab in ("3,0", "2,1") else "conj(F^2)"
                diags.append(f"phi: V^{lab} is not contained in {where}")
        labels = [lab for lab in PIECES for _ in norm[lab]]
        vecs = [v for lab in PIECES for v in norm[lab]]
        n = len(vecs)
        G = [[None] * n for _ in range(n)]  # G[a][b] = H(v_a, v_b)
        for a in range(n):
            for b in range(a, n):
                G[a][b] = _herm(h, vecs[a], vecs[b])
                G[b][a] = G[a][b].conjugate()
        idx = {lab: [i for i, l in enumerate(labels) if l == lab] for lab in PIECES}
        for lab in PIECES:
            s = SIGNS[lab]
            piv = _ldl_min_pivot([[G[a][b] * s for b in idx[lab]] for a in idx[lab]])
            if piv <= tol:
                word = "positive" if s > 0 else "negative"
                diags.append(f"sign: H is not {word} definite on V^{lab} (min pivot {float(s * piv):.5g})")
        for i, la in enumerate(PIECES):
            for lb in PIECES[i + 1:]:
                worst = max((abs(G[a][b]) for a in idx[la] for b in idx[lb]), default=gmpy2.mpfr(0))
                if worst > tol:
                    diags.append(f"orthogonality: |H(V^{la}, V^{lb})| = {float(worst):.5g} exceeds {float(tol):.3g}")
        # conjugation: Euclidean distance of sigma(v) to span(V^{tgt}),
        # |r|^2 = |sv|^2 - p^* c with E c = p, E the Euclidean Gram matrix of the target
        for lab in PIECES:
            tgt = CONJUGATE[lab]
            B = norm[tgt]
            E = [[_dot(b2, b1) for b2 in B] for b1 in B]
            for v in norm[lab]:
                sv = sigma(v, q)
                p = [_dot(sv, b) for b in B]
                c = _solve(E, p)
                if c is None:
                    diags.append(f"conjugation: V^{tgt} generators are linearly dependent")
                    break
                proj = gmpy2.mpc(0)
                for pi, ci in zip(p, c):
                    proj += pi.conjugate() * ci
                r2 = (_norm_sq(sv) - proj).real
                if r2 > tol * tol:
                    diags.append(f"conjugation: conj(V^{lab}) is not V^{tgt} (residual {float(gmpy2.sqrt(abs(r2))):.5g})")
                    break
    return PolarizationReport(not diags, diags)
