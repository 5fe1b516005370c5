import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from projmono.errors import ContractError, NotTransitive
from projmono.groups import (PermGroup, check_perm, classify, compose, contains_transposition,
                             cycle_type, from_cycles, from_one_line, inverse, is_identity,
                             minimal_blocks, mul, one_line)

from oracles import as_block_sets, group_oracle, random_gens


# ---------------------------------------------------------------- examples

def test_conventions():
    a = from_cycles(3, (1, 2))
    b = from_cycles(3, (2, 3))
    # apply a then b: 0 -> 1 -> 2
    assert mul(a, b)[0] == 2
    assert compose([a, b]) == mul(a, b)
    assert one_line(from_one_line([2, 1, 3])) == [2, 1, 3]
    assert cycle_type(from_cycles(5, (1, 2, 3), (4, 5))) == [3, 2]
    assert is_identity(mul(a, inverse(a)))
    with pytest.raises(ContractError):
        check_perm((0, 0, 1))


def test_symmetric_and_cyclic_examples():
    S4 = PermGroup(4, [from_cycles(4, (1, 2)), from_cycles(4, (1, 2, 3, 4))])
    f = classify(S4)
    assert f["order"] == 24 and f["is_full_symmetric"] and f["is_primitive"]
    assert f["contains_transposition"] and not f["is_regular"]
    C4 = PermGroup(4, [from_cycles(4, (1, 2, 3, 4))])
    f = classify(C4)
    assert f["order"] == 4 and f["is_regular"] and not f["is_primitive"]
    assert f["block_systems"] == [[[1, 3], [2, 4]]]
    assert f["contains_transposition"] is False
    C5 = classify(PermGroup(5, [from_cycles(5, (1, 2, 3, 4, 5))]))
    assert C5["is_regular"] and C5["is_primitive"]
    A4 = classify(PermGroup(4, [from_cycles(4, (1, 2, 3)), from_cycles(4, (2, 3, 4))]))
    assert A4["order"] == 12 and A4["is_alternating"] and not A4["contains_transposition"]
    D4 = classify(PermGroup(4, [from_cycles(4, (1, 2, 3, 4)), from_cycles(4, (1, 3))]))
    assert D4["order"] == 8 and D4["contains_transposition"] and not D4["is_primitive"]


def test_large_symmetric_group():
    n = 12
    G = PermGroup(n, [from_cycles(n, (1, 2)), from_cycles(n, tuple(range(1, n + 1)))])
    assert G.order() == math.factorial(n)
    assert contains_transposition(G) is True


def test_intransitive_rejected():
    G = PermGroup(4, [from_cycles(4, (1, 2))])
    assert not G.is_transitive()
    with pytest.raises(NotTransitive):
        classify(G)
    with pytest.raises(NotTransitive):
        minimal_blocks(G)


# ---------------------------------------------------------------- oracle comparison

def test_against_brute_force():
    rng = random.Random(5)
    checked = 0
    while checked < 120:
        n = rng.randint(2, 7)
        gens = random_gens(rng, n)
        order, transitive, transp, blocks = group_oracle(gens, n)
        G = PermGroup(n, gens)
        assert G.order() == order
        assert G.is_transitive() == transitive
        elems = sorted(G.elements())
        assert len(elems) == order
        outside = [p for p in permutations(range(n)) if not G.contains(p)]
        assert len(outside) == math.factorial(n) - order
        if not transitive:
            continue
        flags = classify(G)
        assert flags["contains_transposition"] == transp
        assert flags["is_primitive"] == (not blocks)
        assert as_block_sets(flags["block_systems"]) == blocks
        checked += 1


# ---------------------------------------------------------------- invariants

perm_lists = st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)))


@settings(max_examples=60, deadline=None)
@given(perm_lists)
def test_order_invariants(case):
    n, gens = case
    gens = [tuple(g) for g in gens]
    G = PermGroup(n, gens)
    order = G.order()
    assert math.factorial(n) % order == 0
    assert all(G.contains(g) for g in gens)
    # conjugating every generator by a fixed permutation preserves the order
    c = tuple(reversed(range(n)))
    H = PermGroup(n, [mul(mul(inverse(c), g), c) for g in gens])
    assert H.order() == order
    if G.is_transitive():
        f = classify(G)
        assert order % n == 0
        assert f["is_regular"] == (order == n)
        for s in f["block_systems"]:
            assert n % len(s) == 0 and len({len(b) for b in s}) == 1
