import random
from itertools import product

import pytest

from superbethe.errors import ArityMismatch, DivisionByZero, SignatureMismatch
from superbethe.graded import (
    GL12,
    GL21,
    GradedOperator,
    GradedVector,
    check_ybe,
    embed,
    encode,
    decode,
    koszul_tensor,
    parity_table,
    r_matrix,
    super_permutation,
    vector_tensor,
)
from superbethe.rational import rat


def unit(sig, i, j):
    return GradedOperator.unit(sig, i, j)


@pytest.mark.parametrize("sig", [GL21, GL12], ids=lambda s: s.name)
def test_matrix_unit_product_rule_exhaustive(sig):
    # (E_ij x E_kl)(E_mn x E_pq) = (-1)^{([k]+[l])([m]+[n])} E_ij E_mn x E_kl E_pq
    units = {(i, j): unit(sig, i, j) for i in range(1, 4) for j in range(1, 4)}
    for i, j, k, l in product(range(1, 4), repeat=4):
        left = koszul_tensor(units[i, j], units[k, l])
        for m, n, p, q in product(range(1, 4), repeat=4):
            got = left.compose(koszul_tensor(units[m, n], units[p, q]))
            if j == m and l == p:
                sign = -1 if (sig.par(k) ^ sig.par(l)) and (sig.par(m) ^ sig.par(n)) else 1
                expect = koszul_tensor(units[i, n], units[k, q]).scale(sign)
            else:
                expect = GradedOperator(sig, 2)
            assert got.sub(expect).is_zero(), (i, j, k, l, m, n, p, q)


def test_koszul_worked_examples():
    lhs = koszul_tensor(unit(GL21, 1, 1), unit(GL21, 1, 3)).compose(
        koszul_tensor(unit(GL21, 1, 3), unit(GL21, 3, 1))
    )
    assert lhs == koszul_tensor(unit(GL21, 1, 3), unit(GL21, 1, 1)).scale(-1)
    ident = GradedOperator.identity(GL21, 1)
    assert koszul_tensor(ident, ident) == GradedOperator.identity(GL21, 2)
    allev = koszul_tensor(unit(GL21, 1, 1), unit(GL21, 1, 1))
    assert allev.compose(allev) == allev


def test_superpermutation():
    p = super_permutation(GL21)
    assert p.apply(GradedVector.basis(GL21, (1, 2))) == GradedVector.basis(GL21, (2, 1))
    assert p.apply(GradedVector.basis(GL21, (3, 3))) == GradedVector.basis(GL21, (3, 3)).scale(-1)
    for sig in (GL21, GL12):
        psig = super_permutation(sig)
        assert psig.compose(psig) == GradedOperator.identity(sig, 2)


def test_r_matrix_entries():
    r = r_matrix(2, 1, GL21, 1)
    assert r.entry_digits((1, 1), (1, 1)) == 2
    assert r.entry_digits((3, 3), (3, 3)) == 0
    assert r_matrix(3, 1, GL21, 1).compose(r_matrix(1, 3, GL21, 1)) == GradedOperator.identity(
        GL21, 2
    ).scale(rat(3, 4))


@pytest.mark.parametrize("sig", [GL21, GL12], ids=lambda s: s.name)
def test_unitarity_and_ybe_random(sig):
    rng = random.Random(f"ybe-{sig.name}")
    from superbethe.sampling import ParameterSampler
    from superbethe.scalars import g

    for k in range(20):
        c = rat(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice((1, -1))
        smp = ParameterSampler(f"{sig.name}:{k}", c)
        u, v, w = smp.generic(3)
        gv = g(u, v, c)
        lhs = r_matrix(u, v, sig, c).compose(r_matrix(v, u, sig, c))
        assert lhs == GradedOperator.identity(sig, 2).scale(1 - gv * gv)
        assert check_ybe(u, v, w, sig, c).is_zero()


def test_ybe_coincident_arguments():
    with pytest.raises(DivisionByZero):
        check_ybe(1, 1, 3, GL21, 1)


def _random_site_op(sig, rng):
    cols = {}
    for _ in range(rng.randint(1, 5)):
        i, j = rng.randint(1, 3), rng.randint(1, 3)
        cols.setdefault(j - 1, {})[i - 1] = rat(rng.randint(-5, 5), rng.randint(1, 4))
    return GradedOperator(sig, 1, cols)


def test_koszul_associativity():
    rng = random.Random(99)
    for sig in (GL21, GL12):
        for _ in range(10):
            a, b, c = (_random_site_op(sig, rng) for _ in range(3))
            left = koszul_tensor(koszul_tensor(a, b), c)
            right = koszul_tensor(a, koszul_tensor(b, c))
            assert left.sub(right).is_zero()


def test_embed_consistency():
    rng = random.Random(7)
    sig = GL21
    a, b = _random_site_op(sig, rng), _random_site_op(sig, rng)
    # identity embedding
    t = koszul_tensor(a, b)
    assert embed(t, (1, 2), 2) == t
    # tensor on positions (p, q) equals product of single embeddings
    for n in (3, 4):
        for p, q in [(1, 2), (1, n), (2, n)]:
            if p >= q:
                continue
            via_units = embed(a, (p,), n).compose(embed(b, (q,), n))
            assert embed(koszul_tensor(a, b), (p, q), n) == via_units


def test_disjoint_embeds_supercommute():
    sig = GL21
    todd = unit(sig, 1, 3)  # odd
    sodd = unit(sig, 3, 2)  # odd
    x, y = embed(todd, (1,), 3), embed(sodd, (3,), 3)
    assert x.compose(y) == y.compose(x).scale(-1)
    teven = unit(sig, 1, 2)
    xe = embed(teven, (1,), 3)
    assert xe.compose(y) == y.compose(xe)


def test_embed_validates_positions():
    a = unit(GL21, 1, 2)
    with pytest.raises(ArityMismatch):
        embed(a, (0,), 2)
    with pytest.raises(ArityMismatch):
        embed(koszul_tensor(a, a), (2, 1), 3)


def test_parity_bookkeeping():
    sig = GL21
    o = unit(sig, 1, 3)
    e = unit(sig, 2, 1)
    assert o.parity_hint == 1 and o.support_parity() == 1
    assert e.parity_hint == 0 and e.support_parity() == 0
    prod_ = o.compose(unit(sig, 3, 2))  # E13 E32 = E12, parities add mod 2
    assert prod_.parity_hint == 0 and prod_.support_parity() == 0
    t = koszul_tensor(o, o)
    assert t.parity_hint == 0 and t.support_parity() == 0
    mixed = o.add(e)
    assert mixed.parity_hint is None and mixed.support_parity() == "mixed"


def test_signature_and_arity_guards():
    with pytest.raises(SignatureMismatch):
        koszul_tensor(unit(GL21, 1, 1), unit(GL12, 1, 1))
    with pytest.raises(ArityMismatch):
        unit(GL21, 1, 1).compose(GradedOperator.identity(GL21, 2))


def test_encode_decode_roundtrip():
    for digits in product((1, 2, 3), repeat=4):
        assert decode(encode(digits), 4) == digits
    assert parity_table(GL21, 2)[encode((3, 3))] == 0
    assert parity_table(GL12, 2)[encode((1, 2))] == 1


def test_dual_pairing_and_tensor():
    v = GradedVector(GL21, 1, {0: rat(2), 2: rat(3)})
    w = GradedVector.basis(GL21, (2,))
    tv = vector_tensor(v, w)
    assert tv.entries == {encode((1, 2)): rat(2), encode((3, 2)): rat(3)}
    from superbethe.graded import DualGradedVector

    d = DualGradedVector(GL21, 1, {2: rat(5)})
    assert d.pair(v) == 15
