import json

import numpy as np
import pytest
from hypothesis import given, settings

from quiverdyn import errors
from quiverdyn.propcheck import FAMILIES, PROPERTIES, GenConfig, check, generate, get_property, parse_gen
from quiverdyn.propcheck.properties import p1_involution, p2_reversal, p18_rank2_ascents, p24_brog_hereditary
from quiverdyn.propcheck.generators import trial_rng
from quiverdyn.quiver import build_quiver, is_complete
from quiverdyn.structure import brog_analysis, fork_points_exhaustive, ice_fork_point_of_return

from conftest import naive_mutate, quivers


def _complete_by_hand(q):
    size = len(q.b)
    return all(q.b[i][k] != 0 for i in range(q.n) for k in range(size) if k != i)


@pytest.mark.parametrize("family, n, m, ok", [
    ("Fork", 4, 0, lambda q: fork_points_exhaustive(q) != []),
    ("Fork", 3, 1, lambda q: fork_points_exhaustive(q) != []),
    ("IceFork", 3, 2, lambda q: ice_fork_point_of_return(q) is not None),
    ("Complete", 4, 1, _complete_by_hand),
    ("CompleteTwoFrozen", 3, 2, lambda q: _complete_by_hand(q) and q.m == 2),
    ("BrogTwoFrozen", 3, 2, lambda q: is_complete(q) and brog_analysis(q) is not None),
    ("Rank2", 2, 1, lambda q: q.n == 2 and abs(q.b[0][1]) >= 2 and q.m == 1),
    ("Rank3", 3, 1, lambda q: q.n == 3 and any(q.b[i][3] for i in range(3))),
    ("AbundantAcyclic", 4, 1, lambda q: all(abs(q.b[i][k]) >= 2 for i in range(4) for k in range(5) if i != k)),
    ("Unframed", 3, 0, lambda q: q.m == 0),
    ("PrincipalFramed", 3, 0, lambda q: q.m == 3),
])
def test_families_produce_members(family, n, m, ok):
    cfg = GenConfig(family, n, m)
    for t in range(15):
        assert ok(generate(cfg, trial_rng(3, t)))


def test_mutation_cyclic_seed_stays_cyclic_for_a_while():
    from quiverdyn.quiver import _is_acyclic, mutable_part, mutate_index

    cfg = GenConfig("Rank3MutationCyclicSeed", 3, 1)
    for t in range(10):
        q = mutable_part(generate(cfg, trial_rng(0, t)))
        for j in (0, 1, 2, 0, 1, 2):
            q = mutate_index(q, j)
            assert not _is_acyclic(q.b, range(3))


def test_every_family_is_listed_and_buildable():
    for fam in FAMILIES:
        n = 2 if fam == "Rank2" else 3
        m = 2 if fam in ("IceFork",) else 1 if fam.startswith("Rank") else 0
        generate(GenConfig(fam, n, m))


def test_generator_guards():
    with pytest.raises(errors.BadFormat):
        generate(GenConfig("Fork", 2, 0))
    with pytest.raises(errors.BadFormat):
        generate(GenConfig("IceFork", 3, 0))
    with pytest.raises(errors.BadFormat):
        generate(GenConfig("Fork", 3, 2))
    with pytest.raises(errors.BadFormat):
        generate(GenConfig("Nope", 3, 0))


def test_parse_gen():
    cfg = parse_gen("family=IceFork, n=3-4, m=2", W=9)
    assert cfg == GenConfig("IceFork", (3, 4), 2, 9)
    with pytest.raises(errors.BadFormat):
        parse_gen("n=3")
    with pytest.raises(errors.BadFormat):
        parse_gen("family=Fork,colour=red")


def test_same_seed_same_quiver():
    cfg = GenConfig("IceFork", (3, 4), 2, seed=11)
    assert generate(cfg).b == generate(cfg).b
    assert generate(cfg, trial_rng(11, 1)).b != generate(cfg, trial_rng(11, 2)).b


def test_property_lookup():
    assert get_property("P11").pid == "P11"
    assert get_property("p13b").pid == "P13b"
    assert get_property("P11_ice_fork").pid == "P11"
    with pytest.raises(errors.UnknownProperty):
        get_property("P99")


@settings(max_examples=60, deadline=None)
@given(quivers())
def test_elementary_checkers_on_arbitrary_quivers(q):
    rng = np.random.default_rng(0)
    assert p1_involution(q, rng).status == "pass"
    assert p2_reversal(q, rng).status == "pass"


def test_report_counts_and_determinism():
    a = check("P11", trials=24, seed=5, workers=1)
    b = check("P11", trials=24, seed=5, workers=3)
    assert a.to_json() == b.to_json()
    assert a.passed + a.failed + a.inconclusive + a.vacuous == a.attempted == 24
    assert json.loads(a.to_json())["config"]["seed"] == 5


def test_negative_trials():
    with pytest.raises(errors.OutOfRange):
        check("P1", trials=-1, seed=0)


@pytest.mark.parametrize("pid", sorted(set(PROPERTIES) - {"P18"}))
def test_properties_hold_on_a_small_sample(pid):
    rep = check(pid, trials=20, seed=123)
    assert rep.failed == 0, rep.counterexample
    if not PROPERTIES[pid].horizon_bounded:
        assert rep.inconclusive == 0


def test_rank2_ascent_inequality_fails_for_an_acyclic_elbow():
    # u->1:3, 1->2:4, u->2:12; mutating at 1 raises the u-2 weight from 12 to 24,
    # yet |b_u1 b_12| = 12 is not larger than 2|b_u2| = 24
    q = build_quiver("12", "u", [("u", "1", 3), ("1", "2", 4), ("u", "2", 12)])
    after = naive_mutate(q.b, 2, 0)
    assert abs(after[1][2]) == 24 > abs(q.b[1][2])
    assert after[0][2] > 0 and after[2][1] > 0 and after[1][0] > 0
    assert not abs(q.b[2][0] * q.b[0][1]) > 2 * abs(q.b[2][1])
    out = p18_rank2_ascents(q, None)
    assert out.status == "fail" and "<= 2|b_u2|" in out.detail


def test_rank2_ascent_check_reports_the_counterexample():
    rep = check("P18", trials=50, seed=1)
    assert rep.failed > 0
    cex = rep.counterexample
    assert set(cex) == {"quiver", "word", "detail"}
    assert cex["quiver"]["frozen"] == ["u"]


def test_brog_deletion_check_keeps_frozen_vertices():
    q = build_quiver("123", "uv", [("1", "3", 1), ("3", "2", 1), ("2", "1", 1), ("u", "1", 1),
                                   ("u", "2", 1), ("1", "v", 1), ("3", "v", 1)])
    assert p24_brog_hereditary(q, None).status == "pass"


def test_ascent_followed_by_a_flat_adjacent_mutation():
    # mutable 1->2:5, 3->1:8, 3->2:2 (abundant acyclic), u->1:5, 2->u:2, u->3:2
    q = build_quiver("123", "u", [("1", "2", 5), ("3", "1", 8), ("3", "2", 2),
                                  ("u", "1", 5), ("2", "u", 2), ("u", "3", 2)])
    u = 3
    q1 = naive_mutate(q.b, 3, 2)
    before = [abs(q.b[j][u]) for j in range(3)]
    after = [abs(q1[j][u]) for j in range(3)]
    assert after == [21, 2, 2] and before == [5, 2, 2]
    q2 = naive_mutate(q1, 3, 1)
    assert q1[1][u] != 0
    assert [abs(q2[j][u]) for j in range(3)] == after
    # the reduced word 3,2 is cycle-preserving on the mutable part, so the
    # stickiness check flags it
    from quiverdyn.propcheck.properties import p21_ascents_sticky

    class Fixed:
        def __init__(self, letters):
            self.letters = iter(letters)

        def choice(self, options):
            return next(self.letters)

    out = p21_ascents_sticky(q, Fixed([2, 1] + [0, 2, 1] * 10))
    assert out.status == "fail"
