"""Concrete monodromy matrices on inhomogeneous, diagonally twisted chains.

A chain realization is the ordered operator product

    T(u) = D . R_{0L}(u, xi_L) ... R_{01}(u, xi_1)

on (auxiliary factor) x (sites 1..L), auxiliary factor first, with
D = diag(d_1, d_2, d_3) acting in the auxiliary space. Entries T_ij(u) are
read off the auxiliary matrix units with the Koszul extraction sign
(-1)^{(par(row)+par(col)) [j]}; the L=1 worked value T_13(u) = -g(u,0) E_31
and the closed forms lambda_1 = d_1 f(u, xi), lambda_2 = d_2, lambda_3 = d_3
pin this convention against the vacuum axioms.

The factor-sequence form is deliberately more general than a single chain:
composite totals interleave two diagonal twists between the site blocks,
which no single-twist chain reproduces (a twist does not commute past the
other part's R factors).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero
from .graded import (
    DualGradedVector,
    GradedOperator,
    GradedVector,
    Signature,
    embed,
    parity_table,
    r_matrix,
)
from .rational import rat
from .scalars import f as f_fn
from .scalars import g as g_fn
from .scalars import is_zero


@dataclass(frozen=True)
class ChainSpec:
    length: int
    xi: tuple
    twist: tuple = (1, 1, 1)
    sig: Signature = None
    c: object = 1

    def __post_init__(self):
        if self.sig is None:
            raise ValueError("a chain needs a signature")
        if self.length < 0 or len(self.xi) != self.length:
            raise ValueError(f"need {self.length} inhomogeneities, got {len(self.xi)}")
        if len(set(self.xi)) != self.length:
            raise ValueError("inhomogeneities must be pairwise distinct")
        if len(self.twist) != 3 or any(is_zero(d) for d in self.twist):
            raise ValueError("twist must be three nonzero rationals")
        if is_zero(self.c):
            raise ValueError("c must be nonzero")


def build_factor_product(sig, c, length, factors, u) -> GradedOperator:
    """Product of auxiliary-diagonal and R_{0,site} factors, left to right.

    factors: sequence of ("diag", (d1,d2,d3)) or ("site", site_index, xi).
    Returns the operator on arity length+1 (auxiliary factor is position 1).
    """
    arity = length + 1
    acc = None
    for kind, *payload in factors:
        if kind == "diag":
            op = embed(GradedOperator.diagonal(sig, tuple(payload[0])), (1,), arity)
        elif kind == "site":
            site, xi = payload
            if is_zero(u - xi):
                raise DivisionByZero(f"spectral point hits inhomogeneity {xi}")
            op = embed(r_matrix(u, xi, sig, c), (1, 1 + site), arity)
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
        acc = op if acc is None else acc.compose(op)
    return acc if acc is not None else GradedOperator.identity(sig, arity)


def extract_entries(big: GradedOperator, sig, length):
    """Split an auxiliary x chain operator into its nine auxiliary blocks."""
    shift = 3 ** length
    par = parity_table(sig, length)
    out = {(i, j): {} for i in range(1, 4) for j in range(1, 4)}
    for col, colmap in big.cols.items():
        j, n = divmod(col, shift)
        pj = sig.par(j + 1)
        for row, val in colmap.items():
            i, m = divmod(row, shift)
            if pj and (par[m] ^ par[n]):
                val = -val
            out[(i + 1, j + 1)].setdefault(n, {})[m] = val
    return {
        (i, j): GradedOperator(sig, length, cols, parity_hint=sig.par(i) ^ sig.par(j))
        for (i, j), cols in out.items()
    }


@dataclass
class Monodromy:
    """The nine entry operators of T(u) at one spectral point."""

    sig: Signature
    length: int
    u: object
    entries: dict

    def entry(self, i, j) -> GradedOperator:
        return self.entries[(i, j)]


class Model:
    """Shared realization machinery: cached entries, vacuum data, references.

    Subclasses provide sig, c, arity, factor_sequence() and lam(i, u).
    """

    def __init__(self):
        self._big = {}
        self._entries = {}

    def factor_sequence(self):
        raise NotImplementedError

    def lam(self, i, u):
        raise NotImplementedError

    def monodromy_op(self, u) -> GradedOperator:
        big = self._big.get(u)
        if big is None:
            big = build_factor_product(self.sig, self.c, self.arity, self.factor_sequence(), u)
            self._big[u] = big
        return big

    def monodromy(self, u) -> Monodromy:
        ent = self._entries.get(u)
        if ent is None:
            ent = extract_entries(self.monodromy_op(u), self.sig, self.arity)
            self._entries[u] = ent
        return Monodromy(self.sig, self.arity, u, ent)

    def T(self, i, j, u) -> GradedOperator:
        return self.monodromy(u).entry(i, j)

    def r(self, i, u):
        return self.lam(i, u) / self.lam(2, u)

    def omega(self) -> GradedVector:
        return GradedVector.basis(self.sig, (1,) * self.arity)

    def omega_dual(self) -> DualGradedVector:
        return DualGradedVector.basis(self.sig, (1,) * self.arity)


class ChainModel(Model):
    """Evaluable realization of a single inhomogeneous twisted chain."""

    def __init__(self, spec: ChainSpec):
        super().__init__()
        self.spec = spec
        self.sig = spec.sig
        self.c = spec.c
        self.arity = spec.length

    def factor_sequence(self):
        fs = [("diag", tuple(self.spec.twist))]
        for site in range(self.spec.length, 0, -1):
            fs.append(("site", site, self.spec.xi[site - 1]))
        return fs

    def lam(self, i, u):
        d = rat(1) * self.spec.twist[i - 1]
        if i == 1:
            for xi in self.spec.xi:
                d = d * f_fn(u, xi, self.c)
        return d


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------


def check_rtt(model, u, v) -> GradedOperator:
    """R(u,v)(T(u) x I)(I x T(v)) - (I x T(v))(T(u) x I)R(u,v); zero iff RTT holds."""
    if is_zero(u - v):
        raise DivisionByZero("RTT needs u != v")
    n = model.arity + 2
    chain_pos = tuple(range(3, n + 1))
    a = embed(model.monodromy_op(u), (1,) + chain_pos, n)
    b = embed(model.monodromy_op(v), (2,) + chain_pos, n)
    r = embed(r_matrix(u, v, model.sig, model.c), (1, 2), n)
    return r.compose(a).compose(b).sub(b.compose(a).compose(r))


def check_supercommutator(model, i, j, k, l, u, v):
    """Residuals of both displayed forms of the bilinear exchange relation."""
    sig = model.sig
    p = sig.par
    gv = g_fn(u, v, model.c)
    t_ij_u, t_kl_v = model.T(i, j, u), model.T(k, l, v)
    t_il_u, t_il_v = model.T(i, l, u), model.T(i, l, v)
    t_kj_u, t_kj_v = model.T(k, j, u), model.T(k, j, v)
    lhs = t_ij_u.compose(t_kl_v)
    swapped = t_kl_v.compose(t_ij_u)
    if (p(i) ^ p(j)) and (p(k) ^ p(l)):
        lhs = lhs.add(swapped)
    else:
        lhs = lhs.sub(swapped)
    s1 = (p(i) & p(j)) ^ (p(i) & p(l)) ^ (p(j) & p(l))
    rhs1 = t_il_u.compose(t_kj_v).sub(t_il_v.compose(t_kj_u)).scale(-gv if s1 else gv)
    s2 = (p(i) & p(k)) ^ (p(i) & p(l)) ^ (p(k) & p(l))
    rhs2 = t_kj_u.compose(t_il_v).sub(t_kj_v.compose(t_il_u)).scale(gv if s2 else -gv)
    return lhs.sub(rhs1), lhs.sub(rhs2)


def vacuum_residuals(model, u):
    """Every vacuum-axiom residual at the spectral point u, as (name, is_zero)."""
    omega = model.omega()
    dual = model.omega_dual()
    out = []
    for i in range(1, 4):
        res = model.T(i, i, u).apply(omega).sub(omega.scale(model.lam(i, u)))
        out.append((f"T{i}{i} ket eigenvalue", res.is_zero()))
        dres = model.T(i, i, u).apply_dual(dual).sub(dual.scale(model.lam(i, u)))
        out.append((f"T{i}{i} bra eigenvalue", dres.is_zero()))
    for i in range(1, 4):
        for j in range(1, 4):
            if i > j:
                out.append((f"T{i}{j} annihilates ket", model.T(i, j, u).apply(omega).is_zero()))
            elif i < j:
                out.append((f"T{i}{j} annihilates bra", model.T(i, j, u).apply_dual(dual).is_zero()))
    return out
