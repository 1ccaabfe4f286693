"""Recursive determinant of a square polynomial matrix.

Each node splits ``F`` into its top ``ceil(n/2)`` rows ``F_U`` and the rest
``F_D``.  A column basis ``G1`` of ``F_U``, a minimal kernel basis ``N`` of
``F_U`` and the right factor ``V_U`` (``G1 V_U = F_U``) give the block
triangular form ``F U = [[G1, 0], [*, G2]]`` with ``G2 = F_D N``.  The
unimodular ``U`` is never formed: ``det U^{-1}`` is read off the constant
terms of ``V_U`` and ``N``.  Then ``det F = det(U^{-1}) det(G1) det(G2)``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .colbasis import RankDeficient, col_basis, degree_bound_ok
from .detconst import InconsistentState, unimodular_det_contribution
from .poly import NEG_INF, Polynomial
from .polymat import PolyMatrix, cdeg, constant_term, mul_unbalanced, transpose, vsplit


@dataclass
class TraceNode:
    level: int
    path: str
    dim: int
    k: int | None
    sum_cdeg: int
    d_v: int | None = None
    g1_cdeg: tuple = ()
    g1_bound: tuple = ()
    g2_sum_cdeg: int | None = None
    det: Polynomial | None = None

    @property
    def is_leaf(self) -> bool:
        return self.k is None

    @property
    def g1_bound_ok(self) -> bool:
        if self.is_leaf or not self.g1_cdeg:
            return True
        g = sorted(self.g1_cdeg, reverse=True)
        return all(a <= b for a, b in zip(g, self.g1_bound))

    @property
    def g2_bound_ok(self) -> bool:
        if self.is_leaf or self.g2_sum_cdeg is None:
            return True
        return self.g2_sum_cdeg <= self.sum_cdeg


@dataclass
class DetReport:
    det: Polynomial
    singular: bool = False
    transposed: bool = False
    trace: list[TraceNode] = field(default_factory=list)
    level_times: dict[int, float] = field(default_factory=dict)

    def node(self, path: str) -> TraceNode:
        for t in self.trace:
            if t.path == path:
                return t
        raise KeyError(path)

    def format_table(self) -> str:
        head = f"{'level':>5} {'path':<10} {'dim':>4} {'k':>4} {'sum_cdeg':>8} {'d_V':>10} " \
               f"{'g2_sum':>7} {'bounds':>6}"
        lines = [head]
        for t in self.trace:
            ok = "ok" if (t.g1_bound_ok and t.g2_bound_ok) else "FAIL"
            lines.append(
                f"{t.level:>5} {t.path or '.':<10} {t.dim:>4} {'-' if t.k is None else t.k:>4} "
                f"{t.sum_cdeg:>8} {'-' if t.d_v is None else t.d_v:>10} "
                f"{'-' if t.g2_sum_cdeg is None else t.g2_sum_cdeg:>7} {ok:>6}")
        for lvl in sorted(self.level_times):
            lines.append(f"level {lvl}: {self.level_times[lvl] * 1e3:.2f} ms")
        return "\n".join(lines)


class _Singular(Exception):
    pass


def _sum_cdeg(degs) -> int:
    return int(sum(degs))


def _node(F: PolyMatrix, level: int, path: str, report: DetReport, check: bool) -> Polynomial:
    n = F.rows
    degs = cdeg(F)
    if any(d == NEG_INF for d in degs):
        raise _Singular
    s = [int(d) for d in degs]
    started = time.perf_counter()
    if n == 1:
        det = F[0, 0]
        report.trace.append(TraceNode(level, path, 1, None, s[0], det=det))
        report.level_times[level] = report.level_times.get(level, 0.0) + \
            time.perf_counter() - started
        return det
    k = (n + 1) // 2
    F_U, F_D = vsplit(F, k)
    try:
        triple = col_basis(F_U, s, check=check)
    except RankDeficient:
        raise _Singular from None
    N = triple.N.N
    if N.cols != n - k or triple.G1.cols != k:
        raise InconsistentState(f"block sizes {triple.G1.cols} + {N.cols} != {n}")
    G2 = mul_unbalanced(F_D, N, s)
    d_v = unimodular_det_contribution(constant_term(triple.V_U), constant_term(N), F.ctx)
    g2_degs = cdeg(G2)
    node = TraceNode(level, path, n, k, sum(s), d_v.value,
                     g1_cdeg=cdeg(triple.G1),
                     g1_bound=tuple(sorted(s, reverse=True)[:k]),
                     g2_sum_cdeg=None if NEG_INF in g2_degs else _sum_cdeg(g2_degs))
    report.trace.append(node)
    if check and not (node.g1_bound_ok and node.g2_bound_ok and
                      degree_bound_ok(triple.G1, F)):
        raise InconsistentState(f"degree bounds violated at node {path!r}")
    report.level_times[level] = report.level_times.get(level, 0.0) + \
        time.perf_counter() - started
    det1 = _node(triple.G1, level + 1, path + "1", report, check)
    det2 = _node(G2, level + 1, path + "2", report, check)
    node.det = (det1 * det2).scale(d_v.value)
    return node.det


def det_report(F: PolyMatrix, *, auto_orient: bool = False, check: bool = False) -> DetReport:
    """Determinant together with the recursion trace.

    Singular input yields the zero polynomial with ``singular=True``.
    ``check`` verifies the column-basis, kernel and degree invariants at
    every node.
    """
    if F.rows != F.cols:
        raise ValueError(f"determinant of a non-square {F.rows}x{F.cols} matrix")
    ctx = F.ctx
    transposed = False
    if auto_orient and _prefer_transpose(F):
        F = transpose(F)
        transposed = True
    report = DetReport(Polynomial.zero(ctx), transposed=transposed)
    if F.rows == 0:
        report.det = Polynomial.constant(1, ctx)
        return report
    try:
        report.det = _node(F, 0, "", report, check)
    except _Singular:
        report.det = Polynomial.zero(ctx)
        report.singular = True
    return report


def determinant(F: PolyMatrix) -> Polynomial:
    return det_report(F).det


def _prefer_transpose(F: PolyMatrix) -> bool:
    col_sum = sum(cdeg(F))
    row_sum = sum(cdeg(transpose(F)))
    return row_sum < col_sum


def determinant_auto(F: PolyMatrix) -> Polynomial:
    """Determinant along whichever of ``F`` / ``F^T`` has the smaller degree sum."""
    return det_report(F, auto_orient=True).det


def degree_certificate(F: PolyMatrix):
    """``sum(cdeg F)``, an upper bound on ``deg det F``; ``NEG_INF`` if a column is zero."""
    if F.rows != F.cols:
        raise ValueError("degree certificate of a non-square matrix")
    return sum(cdeg(F)) if F.cols else 0
