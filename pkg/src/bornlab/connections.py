"""Left-invariant connections: Levi-Civita, Kunneth, canonical and Born averages.

A connection is just its Christoffel array Gamma^k_{ij} on the fixed basis
(nabla_{e_i} e_j = sum_k Gamma^k_{ij} e_k).  Because all data is
left-invariant, derivatives of scalar pairings vanish, so compatibility with
a form b reduces to the purely algebraic defect

    (nabla_{e_i} b)(e_j, e_k) = -b(nabla_{e_i} e_j, e_k) - b(e_j, nabla_{e_i} e_k).

Every constructor re-verifies the defining properties of what it built and
records them in the connection's certificate; a violation raises, it is never
returned silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import (
    AxiomFailureError,
    DegenerateFormError,
    NotIntegrableError,
    NotInvolutionError,
)
from .exact import (
    Matrix,
    Subspace,
    determinant,
    invert,
    projection_onto,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    basis_vector,
)
from .liealg import LieAlgebra, ce_d2
from .multilinear import BilinearForm, Endomorphism, OneTwoTensor, involution_split
from .structures import (
    AlmostKunneth,
    BornStructure,
    CheckItem,
    StructureReport,
    Witness,
    almost_product,
    integrability_report,
    neutral_metric,
)


HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Connection:
    """Christoffel array of a left-invariant connection."""

    n: int
    gamma: tuple  # gamma[i][j] = coordinate vector of nabla_{e_i} e_j
    certified: tuple = field(default=(), compare=False)

    def apply(self, x, y):
        """nabla_x y by bilinear extension over the basis table."""
        out = (0,) * self.n
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                v = self.gamma[i][j]
                if not vec_is_zero(v):
                    out = vec_add(out, vec_scale(xi * yj, v))
        return out

    def basis_value(self, i: int, j: int):
        """nabla_{e_{i+1}} e_{j+1} (0-based arguments)."""
        return self.gamma[i][j]

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for row in self.gamma for v in row)


class Trilinear:
    """Dense trilinear defect table d(e_i, e_j, e_k), reported 1-based."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(tuple(tuple(row) for row in plane) for plane in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Trilinear is immutable")

    @classmethod
    def tabulate(cls, n: int, fn) -> "Trilinear":
        return cls(n, [[[fn(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)])

    def is_zero(self) -> bool:
        return all(v == 0 for plane in self.entries for row in plane for v in row)

    def witnesses(self, limit: Optional[int] = None):
        """Nonzero entries as ((i, j, k) 1-based, value), lexicographic order."""
        out = []
        for i, plane in enumerate(self.entries):
            for j, row in enumerate(plane):
                for k, v in enumerate(row):
                    if v != 0:
                        out.append(((i + 1, j + 1, k + 1), v))
                        if limit is not None and len(out) >= limit:
                            return out
        return out

    def first_witness(self) -> Optional[Witness]:
        hits = self.witnesses(limit=1)
        if not hits:
            return None
        idx, value = hits[0]
        return Witness.at(idx, value)


def _gamma_table(n: int, fn):
    return tuple(tuple(fn(i, j) for j in range(n)) for i in range(n))


def torsion(L: LieAlgebra, c: Connection) -> OneTwoTensor:
    """T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}."""
    return OneTwoTensor.from_function(
        L.n,
        lambda i, j: vec_sub(vec_sub(c.gamma[i][j], c.gamma[j][i]), L.basis_bracket(i, j)),
    )


def _rows_times(m: Matrix, v):
    """v^T m as a tuple of Fractions, so b(v, e_k) = _rows_times(M_b, v)[k]."""
    n = m.n
    out = [Fraction(0)] * n
    for l, vl in enumerate(v):
        if vl == 0:
            continue
        row = m.rows[l]
        out = [o + vl * row[k] for k, o in enumerate(out)]
    return tuple(out)


def nabla_form(L: LieAlgebra, c: Connection, b: BilinearForm) -> Trilinear:
    """(nabla_{e_i} b)(e_j, e_k) for all basis triples; all-zero iff b is parallel."""
    n = L.n
    m = b.matrix
    left = [[_rows_times(m, c.gamma[i][j]) for j in range(n)] for i in range(n)]
    right = [[m.matvec(c.gamma[i][k]) for k in range(n)] for i in range(n)]
    return Trilinear.tabulate(n, lambda i, j, k: -left[i][j][k] - right[i][k][j])


def _commutation_defect(c: Connection, t: Endomorphism) -> Optional[Witness]:
    """First basis pair where nabla_{e_i}(T e_j) != T(nabla_{e_i} e_j)."""
    n = c.n
    for i in range(n):
        ei = basis_vector(n, i)
        for j in range(n):
            lhs = c.apply(ei, t.matrix.column(j))
            rhs = t.apply(c.gamma[i][j])
            diff = vec_sub(lhs, rhs)
            for k, v in enumerate(diff):
                if v != 0:
                    return Witness.at((i + 1, j + 1, k + 1), v)
    return None


@lru_cache(maxsize=None)
def levi_civita(L: LieAlgebra, g: BilinearForm) -> Connection:
    """Koszul formula restricted to left-invariant fields:

    2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j).

    The result is re-verified to be torsion-free and g-parallel.
    """
    n = L.n
    if determinant(g.matrix) == 0:
        raise DegenerateFormError("metric is degenerate")
    g_inv = invert(g.matrix)
    # pairings[i][j][k] = g([e_i, e_j], e_k), built with n^2 row products
    pairings = [[_rows_times(g.matrix, L.basis_bracket(i, j)) for j in range(n)] for i in range(n)]

    def entry(i, j):
        rhs = [
            (pairings[i][j][k] - pairings[j][k][i] + pairings[k][i][j]) * HALF
            for k in range(n)
        ]
        return g_inv.matvec(rhs)

    conn = Connection(n, _gamma_table(n, entry))
    if not torsion(L, conn).is_zero():
        raise AxiomFailureError("Levi-Civita connection has torsion")
    if not nabla_form(L, conn, g).is_zero():
        raise AxiomFailureError("Levi-Civita connection does not preserve g")
    return Connection(n, conn.gamma, ("torsion_free", "parallel:g"))


@lru_cache(maxsize=None)
def kunneth_connection(k: AlmostKunneth) -> Connection:
    """The unique connection preserving both subspaces, parallel for omega,
    with identically vanishing mixed torsion.

    D is solved from omega(D(e_i, e_j), e_k) = -omega(e_j, [e_i, e_k]) and the
    connection assembled blockwise:

        nabla_x y = {D(x_F, y_F)}_F + {[x_G, y_F]}_F + {D(x_G, y_G)}_G + {[x_F, y_G]}_G.

    All three defining properties are re-verified after construction.
    """
    L, omega = k.algebra, k.omega
    n = L.n
    omega_t_inv = invert(omega.matrix.transpose())
    basis = [basis_vector(n, i) for i in range(n)]

    # omega(e_j, [e_i, e_k]) = (M_omega [e_i, e_k])_j, so one matvec serves all j
    pair = [[omega.matrix.matvec(L.basis_bracket(i, kk)) for kk in range(n)] for i in range(n)]
    d_table = [
        [omega_t_inv.matvec([-pair[i][kk][j] for kk in range(n)]) for j in range(n)]
        for i in range(n)
    ]

    def d_of(u, v):
        out = (0,) * n
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                out = vec_add(out, vec_scale(ui * vj, d_table[i][j]))
        return out

    pi_f, pi_g = projection_onto(k.plus, k.minus)

    def entry(i, j):
        x_f, x_g = pi_f.matvec(basis[i]), pi_g.matvec(basis[i])
        y_f, y_g = pi_f.matvec(basis[j]), pi_g.matvec(basis[j])
        part = pi_f.matvec(d_of(x_f, y_f))
        part = vec_add(part, pi_f.matvec(L.bracket(x_g, y_f)))
        part = vec_add(part, pi_g.matvec(d_of(x_g, y_g)))
        part = vec_add(part, pi_g.matvec(L.bracket(x_f, y_g)))
        return part

    conn = Connection(n, _gamma_table(n, entry))
    for sub, name in ((k.plus, "plus"), (k.minus, "minus")):
        for i in range(n):
            for v in sub.basis:
                if not sub.contains(conn.apply(basis[i], v)):
                    raise AxiomFailureError(f"Kunneth connection does not preserve {name}")
    if not nabla_form(L, conn, omega).is_zero():
        raise AxiomFailureError("Kunneth connection does not preserve omega")
    if mixed_torsion_defect(L, conn, k.plus, k.minus):
        raise AxiomFailureError("Kunneth connection has mixed torsion")
    return Connection(n, conn.gamma, ("preserves_subspaces", "parallel:omega", "mixed_torsion_zero"))


@lru_cache(maxsize=None)
def canonical_connection(L: LieAlgebra, g: BilinearForm, a_op: Endomorphism) -> Connection:
    """Average of the Levi-Civita connection under conjugation with A:

    nabla^c_x y = (nabla^g_x y + A nabla^g_x (A y)) / 2.

    Re-verified: commutes with A, parallel for g and for omega(x,y) = g(Ax,y).
    """
    if not a_op.is_involution():
        raise NotInvolutionError(a_op.squared() - Matrix.identity(a_op.n))
    lc = levi_civita(L, g)
    n = L.n
    basis = [basis_vector(n, i) for i in range(n)]

    def entry(i, j):
        averaged = vec_add(lc.gamma[i][j], a_op.apply(lc.apply(basis[i], a_op.matrix.column(j))))
        return vec_scale(HALF, averaged)

    conn = Connection(n, _gamma_table(n, entry))
    witness = _commutation_defect(conn, a_op)
    if witness is not None:
        raise AxiomFailureError("canonical connection does not commute with A")
    if not nabla_form(L, conn, g).is_zero():
        raise AxiomFailureError("canonical connection does not preserve g")
    omega = BilinearForm.detect(a_op.matrix.transpose() * g.matrix)
    if not nabla_form(L, conn, omega).is_zero():
        raise AxiomFailureError("canonical connection does not preserve omega")
    return Connection(n, conn.gamma, ("commutes:A", "parallel:g", "parallel:omega"))


@lru_cache(maxsize=None)
def born_connection(b: BornStructure) -> Connection:
    """Average of the Kunneth connection under conjugation with B:

    nabla_x y = (nabla^K_x y + B nabla^K_x (B y)) / 2,

    re-verified to equal the J-average (nabla^K_x y - J nabla^K_x (J y)) / 2
    and to be compatible with the whole structure (g, h, omega parallel;
    commutes with A, B, J).  For integrable structures this is the Born
    connection; for non-integrable ones it is still a compatible connection
    but the identification is not asserted.
    """
    L = b.algebra
    n = L.n
    kunneth = kunneth_connection(b.underlying_kunneth())
    basis = [basis_vector(n, i) for i in range(n)]

    def average(op, sign):
        def entry(i, j):
            inner = kunneth.apply(basis[i], op.matrix.column(j))
            combined = vec_add(kunneth.gamma[i][j], vec_scale(sign, op.apply(inner)))
            return vec_scale(HALF, combined)

        return Connection(n, _gamma_table(n, entry))

    conn = average(b.b_op, 1)
    j_average = average(b.j_op, -1)
    if conn.gamma != j_average.gamma:
        raise AxiomFailureError("B-average and J-average of the Kunneth connection differ")
    for name, op in (("A", b.a_op), ("B", b.b_op), ("J", b.j_op)):
        if _commutation_defect(conn, op) is not None:
            raise AxiomFailureError(f"Born-compatible connection does not commute with {name}")
    for name, form in (("g", b.g), ("h", b.h), ("omega", b.omega)):
        if not nabla_form(L, conn, form).is_zero():
            raise AxiomFailureError(f"Born-compatible connection does not preserve {name}")
    return Connection(
        n,
        conn.gamma,
        ("b_average_equals_j_average", "commutes:A,B,J", "parallel:g,h,omega"),
    )


def mixed_torsion_defect(L: LieAlgebra, c: Connection, plus: Subspace, minus: Subspace):
    """Nonzero values of T(x, y) for x in the plus basis, y in the minus basis.

    Witness indices are (a, b, k): positions into the echelon bases and the
    coordinate where the torsion vector is nonzero.
    """
    out = []
    for a, x in enumerate(plus.basis):
        for b_idx, y in enumerate(minus.basis):
            t = vec_sub(vec_sub(c.apply(x, y), c.apply(y, x)), L.bracket(x, y))
            for kk, v in enumerate(t):
                if v != 0:
                    out.append(Witness.at((a + 1, b_idx + 1, kk + 1), v))
                    break
    return out


def generalized_torsion_defect(
    L: LieAlgebra, c: Connection, cc: Connection, g: BilinearForm
) -> Trilinear:
    """GT(x,y,z) = g(nabla_x y - nabla_y x, z) + g(nabla_z x, y), compared
    between c and the canonical connection cc on all basis triples."""
    n = L.n
    m = g.matrix

    def tables(conn):
        anti = [
            [_rows_times(m, vec_sub(conn.gamma[i][j], conn.gamma[j][i])) for j in range(n)]
            for i in range(n)
        ]
        last = [[_rows_times(m, conn.gamma[k][i]) for i in range(n)] for k in range(n)]
        return anti, last

    c_anti, c_last = tables(c)
    cc_anti, cc_last = tables(cc)
    return Trilinear.tabulate(
        n,
        lambda i, j, k: c_anti[i][j][k] + c_last[k][i][j] - cc_anti[i][j][k] - cc_last[k][i][j],
    )


def omega_K_defect(k: AlmostKunneth) -> Trilinear:
    """Defect of the exact relation between Kunneth and canonical connections:

    omega(nabla^K_x y, z) - omega(nabla^c_x y, z)
        + (d omega(Ax, y_-, z_+) - d omega(Ax, y_+, z_-)) / 2  =  0

    for all basis triples, whether or not omega is closed (A is the almost
    product structure of the splitting).  The correction term expands to the
    four projection patterns with alternating signs,

        -d(x+,y+,z-) + d(x-,y+,z-) + d(x+,y-,z+) - d(x-,y-,z+)   (each * 1/2),

    which is the unique such combination; a commonly quoted variant with the
    first slot unprojected and both signs positive is not an identity (it
    already fails on a non-closed form over the Heisenberg algebra, which the
    test suite demonstrates).
    """
    L, omega = k.algebra, k.omega
    n = L.n
    kunneth = kunneth_connection(k)
    g = neutral_metric(k)
    a_op = almost_product(k)
    canonical = canonical_connection(L, g, a_op)
    d_omega = ce_d2(L, omega)
    pi_f, pi_g = projection_onto(k.plus, k.minus)
    basis = [basis_vector(n, i) for i in range(n)]
    diff_rows = [
        [_rows_times(omega.matrix, vec_sub(kunneth.gamma[i][j], canonical.gamma[i][j])) for j in range(n)]
        for i in range(n)
    ]
    ax = [a_op.apply(b) for b in basis]
    plus_part = [pi_f.matvec(b) for b in basis]
    minus_part = [pi_g.matvec(b) for b in basis]

    def entry(i, j, kk):
        correction = d_omega.evaluate(ax[i], minus_part[j], plus_part[kk])
        correction -= d_omega.evaluate(ax[i], plus_part[j], minus_part[kk])
        return diff_rows[i][j][kk] + HALF * correction

    return Trilinear.tabulate(n, entry)


def born_torsion_formula_defect(b: BornStructure) -> StructureReport:
    """Torsion of the Born connection on a basis adapted to the B-eigenspaces.

    For an integrable structure: T(x, y) = 0 when x, y lie in the same
    eigenspace of B, and T(x, y) = -pi_+(nabla^K_x y) + pi_-(nabla^K_y x)
    when Bx = x, By = -y.
    """
    report = integrability_report(b)
    if not report.integrable:
        raise NotIntegrableError("the torsion formula is asserted only for integrable structures")
    L = b.algebra
    kunneth = kunneth_connection(b.underlying_kunneth())
    born = born_connection(b)
    split = involution_split(b.b_op)
    items = []

    def torsion_vec(x, y):
        return vec_sub(vec_sub(born.apply(x, y), born.apply(y, x)), L.bracket(x, y))

    for name, sub in (("B+", split.plus), ("B-", split.minus)):
        witness = None
        for a in range(len(sub.basis)):
            for c in range(a + 1, len(sub.basis)):
                t = torsion_vec(sub.basis[a], sub.basis[c])
                for kk, v in enumerate(t):
                    if v != 0:
                        witness = Witness.at((a + 1, c + 1, kk + 1), v)
                        break
                if witness:
                    break
            if witness:
                break
        items.append(CheckItem(f"T = 0 on {name} x {name}", witness is None, witness))

    witness = None
    for a, x in enumerate(split.plus.basis):
        for c, y in enumerate(split.minus.basis):
            expected = vec_add(
                vec_scale(-1, split.pi_plus.apply(kunneth.apply(x, y))),
                split.pi_minus.apply(kunneth.apply(y, x)),
            )
            diff = vec_sub(torsion_vec(x, y), expected)
            for kk, v in enumerate(diff):
                if v != 0:
                    witness = Witness.at((a + 1, c + 1, kk + 1), v)
                    break
            if witness:
                break
        if witness:
            break
    items.append(
        CheckItem("T(x,y) = -pi+(nabla^K_x y) + pi-(nabla^K_y x) on B+ x B-", witness is None, witness)
    )
    return StructureReport(tuple(items))
