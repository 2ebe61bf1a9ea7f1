from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from conftest import hyp
from oraclebench.errors import (
    OracleFailure,
    RepeatedActiveFunction,
    ScheduleViolation,
    SizeLimitExceeded,
)
from oraclebench.hypotheses import Hypothesis, minimal_extension_oracle
from oraclebench.learner import (
    ActiveList,
    LearnerState,
    appended_functions,
    check_advanced,
    create_advanced,
    create_advanced_widths,
    halting_mistakes,
    mistake_bound,
    predict_learner,
    predict_widths,
    vote_and_update,
)


class ScriptedRounds:
    """Round source replaying a fixed (x, y) script, ignoring predictions."""

    def __init__(self, script):
        self.script = list(script)
        self.submitted: list[tuple[int, int, int]] = []
        self._x = None

    def next_point(self) -> int:
        self._x = self.script[len(self.submitted)][0]
        return self._x

    def submit(self, y_hat, *, vote_width=0, active_count=0) -> int:
        y = self.script[len(self.submitted)][1]
        self.submitted.append((self._x, y_hat, y))
        return y


class FlipRounds:
    """Round source that plays fresh points and always flips the prediction,
    answering oracle queries with minimal extensions of the history."""

    def __init__(self):
        self.history: list[tuple[int, int]] = []
        self._x = 0

    def next_point(self) -> int:
        return self._x

    def submit(self, y_hat, *, vote_width=0, active_count=0) -> int:
        y = 1 - y_hat
        self.history.append((self._x, y))
        self._x += 1
        return y

    def oracle(self, sample) -> Hypothesis:
        return minimal_extension_oracle(self.history, name=f"g{len(self.history)}")


def fresh_state(rounds) -> LearnerState:
    return LearnerState(oracle=rounds.oracle)


def test_active_list_rejects_extensional_repeats() -> None:
    lst = ActiveList()
    lst.append(hyp("a", "10"))
    with pytest.raises(RepeatedActiveFunction):
        lst.append(hyp("b", "1"))  # same function, different table padding
    lst.append(hyp("c", "11"))
    assert len(lst) == 2


def test_active_list_delete_preserves_order_and_frees_supports() -> None:
    lst = ActiveList()
    for i, bits in enumerate(("100", "010", "001", "110")):
        lst.append(hyp(f"h{i}", bits))
    lst.delete([1, 2])
    assert [h.name for h in lst] == ["h0", "h3"]
    lst.append(hyp("again", "010"))  # deleted functions may return later
    assert [h.name for h in lst] == ["h0", "h3", "again"]


def test_empty_list_predicts_zero() -> None:
    rounds = ScriptedRounds([(5, 0)])
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    # y matches the default prediction 0, so the procedure keeps looping;
    # feed a second round that forces the mistake and the return
    rounds.script.append((6, 1))
    vote_and_update(state, 0, rounds)
    assert rounds.submitted == [(5, 0, 0), (6, 0, 1)]
    assert state.mistakes == [(6, 1)]
    assert len(state.active) == 1


def test_width_one_vote_follows_last_function() -> None:
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    state.active.append(hyp("g", "1"))  # g(0) = 1
    rounds = ScriptedRounds([(0, 0)])
    vote_and_update(state, 0, rounds)
    assert rounds.submitted == [(0, 1, 0)]  # predicted g(0) = 1, mistake
    assert len(state.active) == 2


def test_tie_prediction_is_one_and_keeps_the_agreeing_voter() -> None:
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    state.active.append(hyp("one", "1"))   # 1 at point 0
    state.active.append(hyp("zero", "0"))  # 0 at point 0
    rounds = ScriptedRounds([(0, 0)])
    vote_and_update(state, 1, rounds)
    assert rounds.submitted == [(0, 1, 0)]  # split vote, tie predicts 1
    assert [h.name for h in state.active] == ["one"]


def test_majority_deletion_keeps_earliest_agreeing_half() -> None:
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    for name, bits in (("a", "100"), ("b", "110"), ("c", "101"), ("d", "010")):
        state.active.append(hyp(name, bits))
    rounds = ScriptedRounds([(0, 0)])
    vote_and_update(state, 2, rounds)
    assert rounds.submitted == [(0, 1, 0)]  # votes (1,1,1,0) predict 1
    # keep the earliest two functions that voted 1; delete the other two
    assert [h.name for h in state.active] == ["a", "b"]


def test_short_list_defaults_to_zero_and_appends() -> None:
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    state.active.append(hyp("g", "1"))
    rounds = ScriptedRounds([(3, 1)])
    vote_and_update(state, 2, rounds)  # width 4 > 1 active function
    assert rounds.submitted == [(3, 0, 1)]
    assert len(state.active) == 2


def test_returns_after_exactly_one_mistake() -> None:
    rounds = ScriptedRounds([(0, 0), (1, 0), (2, 1), (9, 9)])
    state = LearnerState(oracle=lambda s: minimal_extension_oracle(s))
    vote_and_update(state, 0, rounds)
    assert len(rounds.submitted) == 3  # stopped at the first mistake
    assert state.mistake_count == 1


def test_oracle_failure_on_inconsistent_answer() -> None:
    state = LearnerState(oracle=lambda s: hyp("liar", "0"))
    rounds = ScriptedRounds([(0, 1)])
    with pytest.raises(OracleFailure):
        vote_and_update(state, 0, rounds)


@pytest.mark.parametrize("k,mistakes,attached", [(0, 16, 16), (1, 272, 128)])
def test_create_advanced_counts(k: int, mistakes: int, attached: int) -> None:
    rounds = FlipRounds()
    state = fresh_state(rounds)
    create_advanced(state, k, rounds)
    assert state.mistake_count == mistakes == halting_mistakes(k)
    functions = state.active.functions()
    assert len(functions) == attached == appended_functions(k)
    assert len({h.support for h in functions}) == attached


def test_create_advanced_never_deletes_preexisting_functions() -> None:
    rounds = FlipRounds()
    state = fresh_state(rounds)
    create_advanced(state, 0, rounds)
    before = state.active.functions()
    create_advanced(state, 1, rounds)
    assert state.active.functions()[: len(before)] == before
    assert state.mistake_count == halting_mistakes(0) + halting_mistakes(1)
    assert len(state.active) == len(before) + appended_functions(1)


def test_budget_values() -> None:
    assert [halting_mistakes(k) for k in range(4)] == [16, 272, 4368, 69904]
    assert mistake_bound(1) == 271
    assert mistake_bound(2) == 69903


def test_schedule_first_seventeen_procedures() -> None:
    first = list(itertools.islice(predict_widths(), 17))
    assert first == [0] * 16 + [4]


def test_schedule_at_multiples_of_256() -> None:
    # the 256th base procedure is chased by widths 4 and then 7
    widths = predict_widths()
    seen: list[tuple[int, int]] = []  # (n, width) bookkeeping via replay
    n = 0
    chase: list[int] = []
    for w in itertools.islice(widths, 0, 300):
        if w == 0:
            if n == 256:
                break
            n += 1
            chase = []
        else:
            chase.append(w)
    assert chase == [4, 7]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_schedule_prefixes_match_recursive_flattening(k: int) -> None:
    want = create_advanced_widths(k)
    assert len(want) == halting_mistakes(k)
    assert list(itertools.islice(predict_widths(), len(want))) == want


def test_predict_learner_runs_the_schedule() -> None:
    rounds = FlipRounds()
    state = fresh_state(rounds)

    class Stop(Exception):
        pass

    stop_after = halting_mistakes(1)
    original_submit = rounds.submit

    def counting_submit(y_hat, **kw):
        if len(rounds.history) >= stop_after:
            raise Stop
        return original_submit(y_hat, **kw)

    rounds.submit = counting_submit
    with pytest.raises(Stop):
        predict_learner(state, rounds)
    # after exactly halting_mistakes(1) flips the list looks like a full
    # create_advanced(1) run
    assert state.mistake_count == stop_after
    assert len(state.active) == appended_functions(1)


def test_predict_learner_schedule_violation_guard(monkeypatch) -> None:
    import oraclebench.learner as learner_module

    monkeypatch.setattr(learner_module, "predict_widths", lambda: iter([4]))
    rounds = FlipRounds()
    state = fresh_state(rounds)
    with pytest.raises(ScheduleViolation):
        predict_learner(state, rounds)


def _distinct_functions(n: int) -> list[Hypothesis]:
    return [hyp(f"h{i}", format(i + 1, "08b")) for i in range(n)]


def test_check_advanced_sixteen_distinct_functions() -> None:
    check = check_advanced(_distinct_functions(16), 1)
    assert check.ok
    assert check.subsets_checked == 2**16 - 1
    assert check.counterexample is None


def test_check_advanced_singleton_fails_gamma_one() -> None:
    h = hyp("h", "1")
    check = check_advanced([h], 1)
    assert not check.ok
    assert check.counterexample == (h,)


def test_check_advanced_detects_violations_at_higher_gamma() -> None:
    # a singleton subset needs dimension >= 2 + log16(1/16) = 1: impossible
    check = check_advanced(_distinct_functions(16), 2)
    assert not check.ok
    assert len(check.counterexample) >= 1


def test_check_advanced_rejects_duplicates_and_oversize() -> None:
    h = hyp("h", "1")
    with pytest.raises(ValueError):
        check_advanced([h, hyp("h2", "10")], 1)
    with pytest.raises(SizeLimitExceeded):
        check_advanced(_distinct_functions(17), 1)


def test_check_advanced_sampled_mode_is_seeded() -> None:
    fns = _distinct_functions(17)
    a = check_advanced(fns, Fraction(1), sample_count=50, seed=3)
    b = check_advanced(fns, Fraction(1), sample_count=50, seed=3)
    assert a == b
    assert a.subsets_checked == 51
