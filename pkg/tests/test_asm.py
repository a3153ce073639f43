import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdet.asm import (
    AlternationError,
    AsmError,
    LatticeRelation,
    NotACumulant,
    RangeError,
    ResourceLimit,
    RowSumError,
    ShapeError,
    Side,
    count_asms,
    enumerate_asms,
    format_matrix,
    from_left_cumulant,
    from_right_cumulant,
    identity,
    lattice_compare,
    lattice_join,
    lattice_meet,
    left_cumulant,
    matrix_json,
    parse_matrix,
    reflect,
    right_cumulant,
    validate_asm,
)

from oracles import brute_asms, corner_sums, count_monotone_triangles, is_asm

X = ((0, 1, 0, 0), (1, -1, 1, 0), (0, 1, -1, 1), (0, 0, 1, 0))
X_LEFT = ((0, 1, 1, 1), (1, 1, 2, 2), (1, 2, 2, 3), (1, 2, 3, 4))
X_RIGHT = ((1, 1, 0, 0), (2, 1, 1, 0), (3, 2, 1, 1), (4, 3, 2, 1))
Y = ((0, 1), (1, 0))


def all_upto(n):
    for m in range(1, n + 1):
        yield from enumerate_asms(m)


# -- validation -------------------------------------------------------------


def test_validate_example():
    b = validate_asm(X)
    assert (b.pos_count, b.neg_count) == (6, 2)
    assert validate_asm([[1]]).n == 1


@pytest.mark.parametrize("grid, err", [
    ([[1, 0], [1, 0]], RowSumError),
    ([[1, 0], [0]], ShapeError),
    ([], ShapeError),
    ([[2, 0], [0, 1]], RangeError),
    ([[1, -1, 1], [0, 1, 0], [0, 1, 0]], AlternationError),
    ([[0, 1, 0], [1, -1, 1], [0, 1, -1]], AsmError),
])
def test_validate_rejects(grid, err):
    with pytest.raises(err):
        validate_asm(grid)


def test_validate_agrees_with_oracle_on_all_sign_grids():
    import itertools
    for n in (2, 3):
        for flat in itertools.product((-1, 0, 1), repeat=n * n):
            grid = [flat[i * n:(i + 1) * n] for i in range(n)]
            try:
                validate_asm(grid)
                ok = True
            except AsmError:
                ok = False
            assert ok == is_asm(grid)


# -- enumeration -------------------------------------------------------------


def test_enumerate_small():
    assert [b.rows for b in enumerate_asms(1)] == [((1,),)]
    assert len(enumerate_asms(3)) == 7


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_monotone_triangles(n):
    assert count_asms(n) == count_monotone_triangles(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_backtracking(n):
    # backtracking emits in row-major lex order with -1 < 0 < 1, as must we
    assert [b.rows for b in enumerate_asms(n)] == brute_asms(n)


def test_enumerate_guard():
    with pytest.raises(ResourceLimit):
        enumerate_asms(8)
    with pytest.raises(ValueError):
        enumerate_asms(0)


# -- cumulants ---------------------------------------------------------------


def test_cumulant_examples():
    b = validate_asm(X)
    assert left_cumulant(b).entries == X_LEFT
    assert right_cumulant(b).entries == X_RIGHT
    assert left_cumulant(validate_asm(Y)).entries == ((0, 1), (1, 2))
    assert right_cumulant(validate_asm(Y)).entries == ((1, 1), (2, 1))
    assert from_left_cumulant(X_LEFT).rows == X
    assert from_right_cumulant(X_RIGHT).rows == X
    assert from_left_cumulant([[1]]).rows == ((1,),)
    assert from_right_cumulant([[1]]).rows == ((1,),)
    assert from_left_cumulant([[1, 1, 1], [1, 2, 2], [1, 2, 3]]) == identity(3)
    assert from_right_cumulant([[1, 1, 0], [2, 1, 1], [3, 2, 1]]).rows == ((0, 1, 0), (1, -1, 1), (0, 1, 0))


@pytest.mark.parametrize("n", range(1, 6))
def test_identity_cumulants(n):
    i = identity(n)
    assert left_cumulant(i).entries == tuple(tuple(min(a, b) for b in range(1, n + 1)) for a in range(1, n + 1))
    assert right_cumulant(i).entries == tuple(tuple(max(a - b + 1, 0) for b in range(1, n + 1))
                                              for a in range(1, n + 1))


def test_cumulants_match_corner_sum_oracle():
    for b in all_upto(5):
        assert [list(r) for r in left_cumulant(b).entries] == corner_sums(b.rows, "left")
        assert [list(r) for r in right_cumulant(b).entries] == corner_sums(b.rows, "right")


def test_round_trips_and_row_sum_lemma():
    for b in all_upto(5):
        lc, rc = left_cumulant(b), right_cumulant(b)
        lc.check()
        rc.check()
        assert from_left_cumulant(lc) == b
        assert from_right_cumulant(rc) == b
        n = b.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert lc.at(i, j) + rc.at(i, j + 1) == i


def test_reflect_relation():
    assert reflect(validate_asm(Y)).rows == ((1, 0), (0, 1))
    assert reflect(validate_asm(X)).rows == tuple(r[::-1] for r in X)
    for b in all_upto(5):
        left = left_cumulant(b).entries
        assert right_cumulant(reflect(b)).entries == tuple(r[::-1] for r in left)


def test_entrywise_bound_equality_only_for_identity():
    for b in all_upto(5):
        c = left_cumulant(b)
        tight = all(c.at(i, j) == min(i, j) for i in range(1, b.n + 1) for j in range(1, b.n + 1))
        assert all(c.at(i, j) <= min(i, j) for i in range(1, b.n + 1) for j in range(1, b.n + 1))
        assert tight == (b == identity(b.n))


def test_bad_cumulants_rejected():
    with pytest.raises(NotACumulant):
        from_left_cumulant([[1, 1], [1, 1]])
    with pytest.raises(NotACumulant):
        from_right_cumulant([[0, 0], [2, 1]])


# -- lattice -----------------------------------------------------------------

A00 = ((0, 1, 0), (1, -1, 1), (0, 1, 0))
A01 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
A10 = ((1, 0, 0), (0, 0, 1), (0, 1, 0))


def test_lattice_examples():
    a01, a10 = validate_asm(A01), validate_asm(A10)
    assert lattice_join(a01, a10) == identity(3)
    assert lattice_meet(a01, a10).rows == A00
    assert lattice_meet(a01, a01) == a01
    assert lattice_compare(a01, a10) is LatticeRelation.INCOMPARABLE
    assert lattice_compare(validate_asm(A00), a01) is LatticeRelation.LESS
    assert lattice_compare(a01, a01) is LatticeRelation.EQUAL


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lattice_axioms_exhaustive(n):
    asms = enumerate_asms(n)
    for a in asms:
        for b in asms:
            m, j = lattice_meet(a, b), lattice_join(a, b)
            assert m == lattice_meet(b, a) and j == lattice_join(b, a)
            assert lattice_meet(a, j) == a and lattice_join(a, m) == a
            assert lattice_compare(m, a) in (LatticeRelation.LESS, LatticeRelation.EQUAL)
    if n <= 3:
        for a in asms:
            for b in asms:
                for c in asms:
                    assert lattice_meet(lattice_meet(a, b), c) == lattice_meet(a, lattice_meet(b, c))
                    assert lattice_join(lattice_join(a, b), c) == lattice_join(a, lattice_join(b, c))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_lattice_associativity_sampled_n4(data):
    asms = enumerate_asms(4)
    a, b, c = (data.draw(st.sampled_from(asms)) for _ in range(3))
    assert lattice_meet(lattice_meet(a, b), c) == lattice_meet(a, lattice_meet(b, c))
    assert lattice_join(lattice_join(a, b), c) == lattice_join(a, lattice_join(b, c))


# -- formats -----------------------------------------------------------------


def test_text_and_json_formats():
    text = format_matrix(X)
    assert text.splitlines()[1] == "1 -1 1 0"
    assert parse_matrix(text) == X
    assert parse_matrix(matrix_json(X)) == X
    with pytest.raises(ShapeError):
        parse_matrix("1 a")
    with pytest.raises(ShapeError):
        parse_matrix('{"n": 3, "rows": [[1]]}')


def test_side_enum():
    assert Side("left") is Side.LEFT
