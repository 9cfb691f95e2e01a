"""Z2-graded sparse linear algebra on tensor powers of C^{2|1} / C^{1|2}.

Basis multi-indices over {1,2,3} are encoded as base-3 integers (first tensor
factor most significant, so integer order == lexicographic order); parities
are cached per (signature, arity). Koszul signs enter in exactly two places:

* koszul_tensor, whose entrywise sign (-1)^{(par(rB)+par(cB)) * par(cA)}
  reproduces the matrix-unit product rule
  (E_ij x E_kl)(E_mn x E_pq) = (-1)^{([k]+[l])([m]+[n])} E_ij E_mn x E_kl E_pq
  verbatim (pinned by an exhaustive unit test), and

* embed, which places an operator on a subset of tensor factors: each
  parity-changing block picks up the parity of the identity-factor column
  digits to its left.

Everything downstream (composition, application, residuals) is plain sparse
matrix algebra; once an operator is materialized the signs are inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ArityMismatch, SignatureMismatch
from .scalars import g as g_fn


@dataclass(frozen=True)
class Signature:
    """Parity table of the superalgebra instance; indices run over 1..3."""

    name: str
    parity: tuple

    def par(self, i: int) -> int:
        return self.parity[i - 1]


GL21 = Signature("gl(2|1)", (0, 0, 1))
GL12 = Signature("gl(1|2)", (0, 1, 1))

SIGNATURES = {s.name: s for s in (GL21, GL12)}

_PAR_TABLES = {}


def parity_table(sig: Signature, arity: int):
    key = (sig.parity, arity)
    tab = _PAR_TABLES.get(key)
    if tab is None:
        if arity == 0:
            tab = [0]
        else:
            prev = parity_table(sig, arity - 1)
            tab = [prev[k // 3] ^ sig.parity[k % 3] for k in range(3 ** arity)]
        _PAR_TABLES[key] = tab
    return tab


def encode(digits) -> int:
    key = 0
    for d in digits:
        key = key * 3 + (d - 1)
    return key


def decode(key: int, arity: int):
    out = [0] * arity
    for i in range(arity - 1, -1, -1):
        key, r = divmod(key, 3)
        out[i] = r + 1
    return tuple(out)


def _check_pair(a, b):
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig.name} vs {b.sig.name}")
    if a.arity != b.arity:
        raise ArityMismatch(f"arity {a.arity} vs {b.arity}")


def _scan(parities):
    seen = set(parities)
    if not seen:
        return None
    if seen == {0}:
        return 0
    if seen == {1}:
        return 1
    return "mixed"


class GradedVector:
    __slots__ = ("sig", "arity", "entries")

    def __init__(self, sig, arity, entries=None):
        self.sig = sig
        self.arity = arity
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def basis(cls, sig, digits):
        return cls(sig, len(digits), {encode(digits): 1})

    def copy(self):
        return type(self)(self.sig, self.arity, dict(self.entries))

    def scale(self, c):
        if not c:
            return type(self)(self.sig, self.arity, {})
        return type(self)(self.sig, self.arity, {k: c * v for k, v in self.entries.items()})

    def add(self, other):
        _check_pair(self, other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return type(self)(self.sig, self.arity, out)

    def sub(self, other):
        return self.add(other.scale(-1))

    def map_values(self, fn):
        return type(self)(self.sig, self.arity, {k: fn(v) for k, v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def support_parity(self):
        tab = parity_table(self.sig, self.arity)
        return _scan([tab[k] for k in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, type(self))
            and self.sig == other.sig
            and self.arity == other.arity
            and self.entries == other.entries
        )

    def __repr__(self):
        items = ", ".join(f"{''.join(map(str, decode(k, self.arity)))}: {v}" for k, v in sorted(self.entries.items()))
        return f"<{type(self).__name__} {self.sig.name} arity={self.arity} {{{items}}}>"


class DualGradedVector(GradedVector):
    """Same sparse storage, acting on kets from the left."""

    def pair(self, vec: GradedVector):
        _check_pair(self, vec)
        acc = 0
        small, big = (self.entries, vec.entries) if len(self.entries) < len(vec.entries) else (vec.entries, self.entries)
        for k, v in small.items():
            w = big.get(k)
            if w is not None:
                acc = acc + v * w
        return acc


def vector_tensor(x: GradedVector, y: GradedVector):
    if x.sig != y.sig:
        raise SignatureMismatch(f"{x.sig.name} vs {y.sig.name}")
    shift = 3 ** y.arity
    cls = type(x)
    out = {}
    for kx, vx in x.entries.items():
        base = kx * shift
        for ky, vy in y.entries.items():
            out[base + ky] = vx * vy
    return cls(x.sig, x.arity + y.arity, out)


class GradedOperator:
    __slots__ = ("sig", "arity", "cols", "parity_hint")

    def __init__(self, sig, arity, cols=None, parity_hint=None):
        self.sig = sig
        self.arity = arity
        self.cols = {}
        for c, colmap in (cols or {}).items():
            pruned = {r: v for r, v in colmap.items() if v}
            if pruned:
                self.cols[c] = pruned
        self.parity_hint = parity_hint

    @classmethod
    def identity(cls, sig, arity):
        return cls(sig, arity, {k: {k: 1} for k in range(3 ** arity)}, parity_hint=0)

    @classmethod
    def unit(cls, sig, i, j):
        """Matrix unit E_ij on one factor."""
        return cls(sig, 1, {j - 1: {i - 1: 1}}, parity_hint=sig.par(i) ^ sig.par(j))

    @classmethod
    def diagonal(cls, sig, values):
        """diag(values[0..2]) on one factor."""
        return cls(sig, 1, {k: {k: values[k]} for k in range(3)}, parity_hint=0)

    def entry(self, row, col):
        return self.cols.get(col, {}).get(row, 0)

    def entry_digits(self, row_digits, col_digits):
        return self.entry(encode(row_digits), encode(col_digits))

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def is_zero(self):
        return not self.cols

    def scale(self, c):
        if not c:
            return GradedOperator(self.sig, self.arity)
        return GradedOperator(
            self.sig,
            self.arity,
            {col: {r: c * v for r, v in colmap.items()} for col, colmap in self.cols.items()},
            parity_hint=self.parity_hint,
        )

    def add(self, other):
        _check_pair(self, other)
        out = {c: dict(m) for c, m in self.cols.items()}
        for c, colmap in other.cols.items():
            dest = out.setdefault(c, {})
            for r, v in colmap.items():
                s = dest.get(r, 0) + v
                if s:
                    dest[r] = s
                elif r in dest:
                    del dest[r]
            if not dest:
                del out[c]
        hint = self.parity_hint if self.parity_hint == other.parity_hint else None
        return GradedOperator(self.sig, self.arity, out, parity_hint=hint)

    def sub(self, other):
        return self.add(other.scale(-1))

    def compose(self, other):
        """self after other (matrix product self . other)."""
        _check_pair(self, other)
        mycols = self.cols
        out = {}
        for c, colmap in other.cols.items():
            acc = {}
            for k, bv in colmap.items():
                inner = mycols.get(k)
                if not inner:
                    continue
                for r, av in inner.items():
                    s = acc.get(r, 0) + av * bv
                    if s:
                        acc[r] = s
                    elif r in acc:
                        del acc[r]
            if acc:
                out[c] = acc
        hint = None
        if self.parity_hint is not None and other.parity_hint is not None:
            hint = self.parity_hint ^ other.parity_hint
        return GradedOperator(self.sig, self.arity, out, parity_hint=hint)

    def apply(self, vec: GradedVector) -> GradedVector:
        _check_pair(self, vec)
        out = {}
        for c, x in vec.entries.items():
            colmap = self.cols.get(c)
            if not colmap:
                continue
            for r, av in colmap.items():
                s = out.get(r, 0) + av * x
                if s:
                    out[r] = s
                elif r in out:
                    del out[r]
        return GradedVector(self.sig, self.arity, out)

    def apply_dual(self, dual: DualGradedVector) -> DualGradedVector:
        """Right action dual . self."""
        _check_pair(self, dual)
        dentries = dual.entries
        out = {}
        for c, colmap in self.cols.items():
            acc = 0
            for r, av in colmap.items():
                x = dentries.get(r)
                if x is not None:
                    acc = acc + x * av
            if acc:
                out[c] = acc
        return DualGradedVector(self.sig, self.arity, out)

    def map_values(self, fn):
        return GradedOperator(
            self.sig,
            self.arity,
            {c: {r: fn(v) for r, v in m.items()} for c, m in self.cols.items()},
            parity_hint=self.parity_hint,
        )

    def support_parity(self):
        tab = parity_table(self.sig, self.arity)
        return _scan([tab[r] ^ tab[c] for c, m in self.cols.items() for r in m])

    def __eq__(self, other):
        return (
            isinstance(other, GradedOperator)
            and self.sig == other.sig
            and self.arity == other.arity
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"<GradedOperator {self.sig.name} arity={self.arity} nnz={self.nnz()}>"


def koszul_tensor(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig.name} vs {b.sig.name}")
    sig = a.sig
    par_a = parity_table(sig, a.arity)
    par_b = parity_table(sig, b.arity)
    shift = 3 ** b.arity
    cols = {}
    for ca, colA in a.cols.items():
        pca = par_a[ca]
        for cb, colB in b.cols.items():
            pcb = par_b[cb]
            dest = cols.setdefault(ca * shift + cb, {})
            for ra, va in colA.items():
                base = ra * shift
                for rb, vb in colB.items():
                    val = va * vb
                    if pca and (par_b[rb] ^ pcb):
                        val = -val
                    dest[base + rb] = val
    hint = None
    if a.parity_hint is not None and b.parity_hint is not None:
        hint = a.parity_hint ^ b.parity_hint
    return GradedOperator(sig, a.arity + b.arity, cols, parity_hint=hint)


def embed(a: GradedOperator, positions, arity: int) -> GradedOperator:
    """Place operator a on the given (1-based, increasing) tensor factors."""
    m = a.arity
    positions = tuple(positions)
    if len(positions) != m or any(p < 1 or p > arity for p in positions) or list(positions) != sorted(set(positions)):
        raise ArityMismatch(f"bad embedding positions {positions} for arity {m} into {arity}")
    sig = a.sig
    par = sig.parity
    id_pos = [p for p in range(1, arity + 1) if p not in set(positions)]
    place = [3 ** (arity - p) for p in range(1, arity + 1)]
    id_before = []  # per embedded factor, how many identity factors sit to its left
    for p in positions:
        id_before.append(sum(1 for q in id_pos if q < p))
    par_a = parity_table(sig, m)

    cols = {}
    rest_digits = list(product((0, 1, 2), repeat=len(id_pos)))
    for ca, colA in a.cols.items():
        cdig = decode(ca, m)
        base_c = sum((cdig[k] - 1) * place[positions[k] - 1] for k in range(m))
        for ra, va in colA.items():
            rdig = decode(ra, m)
            odd_ks = [k for k in range(m) if (par[rdig[k] - 1] ^ par[cdig[k] - 1])]
            base_r = sum((rdig[k] - 1) * place[positions[k] - 1] for k in range(m))
            for rest in rest_digits:
                add = 0
                cum = [0] * (len(rest) + 1)
                for i, d in enumerate(rest):
                    add += d * place[id_pos[i] - 1]
                    cum[i + 1] = cum[i] ^ par[d]
                sgn = 0
                for k in odd_ks:
                    sgn ^= cum[id_before[k]]
                val = -va if sgn else va
                cols.setdefault(base_c + add, {})[base_r + add] = val
    return GradedOperator(sig, arity, cols, parity_hint=a.parity_hint)


# ---------------------------------------------------------------------------
# R-matrix machinery
# ---------------------------------------------------------------------------


def super_permutation(sig: Signature) -> GradedOperator:
    """P = sum_ij (-1)^{[j]} E_ij x E_ji on two factors."""
    acc = GradedOperator(sig, 2)
    for i in range(1, 4):
        for j in range(1, 4):
            term = koszul_tensor(GradedOperator.unit(sig, i, j), GradedOperator.unit(sig, j, i))
            acc = acc.add(term.scale(-1) if sig.par(j) else term)
    return acc


def r_matrix(u, v, sig: Signature, c) -> GradedOperator:
    gv = g_fn(u, v, c)
    return GradedOperator.identity(sig, 2).add(super_permutation(sig).scale(gv))


def check_ybe(u, v, w, sig: Signature, c) -> GradedOperator:
    """R12(u,v) R13(u,w) R23(v,w) - R23(v,w) R13(u,w) R12(u,v) on three factors."""
    r12 = embed(r_matrix(u, v, sig, c), (1, 2), 3)
    r13 = embed(r_matrix(u, w, sig, c), (1, 3), 3)
    r23 = embed(r_matrix(v, w, sig, c), (2, 3), 3)
    return r12.compose(r13).compose(r23).sub(r23.compose(r13).compose(r12))
