import pytest
from hypothesis import given, settings

from quiverdyn import errors, fixtures
from quiverdyn.quiver import (
    SignState,
    attach_frozen,
    build_quiver,
    c_vector,
    classify_basic,
    from_matrix,
    is_acyclic,
    is_sign_coherent,
    mutable_part,
    mutate,
    mutate_index,
    oriented_cycle_triples,
    principal_framing,
    relabel,
    reverse_all,
    sign_state,
    subquiver,
    triple_shape,
)

from conftest import naive_mutate, quivers


@given(quivers())
@settings(max_examples=200, deadline=None)
def test_mutation_matches_textbook_formula(q):
    for j in range(q.n):
        assert [list(r) for r in mutate_index(q, j).b] == naive_mutate(q.b, q.n, j)


@given(quivers())
@settings(max_examples=100, deadline=None)
def test_mutation_is_an_involution(q):
    for j in range(q.n):
        assert mutate_index(mutate_index(q, j), j) == q


@given(quivers())
@settings(max_examples=100, deadline=None)
def test_reversal_commutes_with_mutation(q):
    for j in range(q.n):
        assert reverse_all(mutate_index(q, j)) == mutate_index(reverse_all(q), j)


def test_fig1l_mutation_at_3():
    assert mutate(fixtures.fig1l(), "3") == fixtures.fig1r()
    assert mutate(fixtures.fig1r(), "3") == fixtures.fig1l()


def test_markov_keeps_its_shape():
    q = mutate(fixtures.markov(), "1")
    assert q.weight("1", "2") == 2 and q.weight("2", "3") == 2 and q.weight("3", "1") == 2


def test_c_vectors_and_states_of_fig1l():
    q = fixtures.fig1l()
    assert c_vector(q, "1") == {"u": 2, "v": 7}
    assert sign_state(q, "1") is SignState.GREEN
    assert sign_state(q, "2") is SignState.RED
    assert sign_state(q, "3") is SignState.MIXED
    assert not is_sign_coherent(q)


def test_zero_c_vector_is_not_coherent():
    q = build_quiver("12", "u", [("1", "u", 1)])
    assert sign_state(q, "2") is SignState.ZERO
    assert not is_sign_coherent(q)


def test_basic_flags():
    a = classify_basic(fixtures.fig2a())
    assert a.acyclic and a.connected and not a.complete
    c = classify_basic(fixtures.fig1l())
    assert c.complete and c.abundant and not c.acyclic


def test_triple_shapes():
    assert triple_shape(fixtures.fig2a(), "123").elbow == "2"
    assert triple_shape(fixtures.fig1l(), "123").kind == "oriented_cycle"
    shape = triple_shape(mutate(fixtures.fig1l(), "3"), "123")
    assert shape.kind == "acyclic" and shape.elbow == "3"
    assert triple_shape(build_quiver("123", "", [("1", "2", 1)]), "123").kind == "disconnected"


def test_oriented_cycle_triples_skip_frozen_pairs():
    q = fixtures.fig1l()
    assert (0, 1, 2) in oriented_cycle_triples(q)
    assert all(sum(x >= q.n for x in t) <= 1 for t in oriented_cycle_triples(q))


def test_acyclic_subsets():
    q = fixtures.fig1l()
    assert not is_acyclic(q)
    assert is_acyclic(q, ["1", "2", "u"])


def test_principal_framing():
    p = principal_framing(fixtures.markov())
    assert p.frozen == ("u1", "u2", "u3")
    assert p.weight("1", "u1") == 1 and p.weight("1", "u2") == 0
    assert is_sign_coherent(p)
    with pytest.raises(errors.HasFrozen):
        principal_framing(p)


def test_attach_and_subquiver_round_trip():
    q = fixtures.fig1l()
    core = mutable_part(q)
    col = [q.b[i][3] for i in range(3)]
    rebuilt = attach_frozen(core, col)
    assert subquiver(q, ["1", "2", "3", "u"]) == rebuilt


def test_relabel_keeps_matrix():
    q = relabel(fixtures.fig2a(), {"1": "a"})
    assert q.mutable[0] == "a" and q.b == fixtures.fig2a().b


@pytest.mark.parametrize("arrows, exc", [
    ([("1", "2", 1), ("2", "1", 2)], errors.DuplicatePair),
    ([("1", "1", 1)], errors.SelfArrow),
    ([("1", "9", 1)], errors.UnknownVertex),
    ([("1", "2", 0)], errors.NonPositiveWeight),
    ([("u", "v", 1)], errors.FrozenFrozenArrow),
])
def test_build_rejects_bad_input(arrows, exc):
    with pytest.raises(exc):
        build_quiver("12", "uv", arrows)


def test_from_matrix_checks_skew_symmetry():
    with pytest.raises(errors.BadFormat):
        from_matrix("12", "", [[0, 1], [1, 0]])
    with pytest.raises(errors.DuplicateVertex):
        build_quiver("11", "", [])


def test_mutating_frozen_vertex_is_rejected():
    with pytest.raises(errors.NotMutable):
        mutate(fixtures.fig1l(), "u")


def test_digest_is_label_sensitive():
    q = fixtures.fig2a()
    assert q.digest() == fixtures.fig2a().digest()
    assert q.digest() != relabel(q, {"1": "x"}).digest()
