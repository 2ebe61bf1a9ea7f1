"""The consistent-oracle learner: majority votes over a repetition-free
list of oracle answers.

The learner never inspects the hypothesis class. It maintains a sample of
its mistakes and an ordered list of "active" functions obtained from the
consistent oracle after mistaken rounds. Each voting procedure predicts
the majority over the last 2^k active functions and ends after exactly one
mistake, either appending a fresh oracle answer (k = 0, or too few voters)
or halving the voted suffix (k >= 1). Stacking the procedures in the right
order yields a learner whose total mistakes stay below a bound exponential
in the dimension of the class behind the oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NoReturn, Protocol, Sequence

from .errors import (
    InsufficientAgreement,
    OracleFailure,
    NonRealizable,
    RepeatedActiveFunction,
    ScheduleViolation,
    SizeLimitExceeded,
)
from .hypotheses import (
    Bit,
    ConsistentOracle,
    Hypothesis,
    LabeledPair,
    Point,
    Sample,
    _sample_snapshot,
    is_consistent,
)
from .littlestone import _DimensionEngine


class RoundInterface(Protocol):
    """What a learner needs from a game: points in, predictions out."""

    def next_point(self) -> Point: ...

    def submit(self, y_hat: Bit, *, vote_width: int = 0, active_count: int = 0) -> Bit: ...


def _annotate(rounds: RoundInterface, appended: tuple[str, ...], deleted: tuple[str, ...]) -> None:
    # trace hook; plain per-round drivers need not implement it
    hook = getattr(rounds, "annotate_update", None)
    if hook is not None:
        hook(appended, deleted)


class ActiveList:
    """Ordered list of oracle answers with no extensional repetitions.

    Supports exactly two mutations: append at the end, and deletion of a
    subset of positions preserving the order of the rest.
    """

    def __init__(self) -> None:
        self._functions: list[Hypothesis] = []
        self._supports: set[frozenset[Point]] = set()

    def __len__(self) -> int:
        return len(self._functions)

    def __iter__(self) -> Iterator[Hypothesis]:
        return iter(self._functions)

    def __getitem__(self, i: int) -> Hypothesis:
        return self._functions[i]

    def functions(self) -> tuple[Hypothesis, ...]:
        return tuple(self._functions)

    def last(self, n: int) -> list[Hypothesis]:
        return self._functions[len(self._functions) - n :]

    def append(self, h: Hypothesis) -> None:
        if h.support in self._supports:
            raise RepeatedActiveFunction(
                f"oracle answer {h.name!r} repeats an active function"
            )
        self._supports.add(h.support)
        self._functions.append(h)

    def delete(self, positions: Iterable[int]) -> None:
        doomed = set(positions)
        for i in doomed:
            self._supports.discard(self._functions[i].support)
        self._functions = [h for i, h in enumerate(self._functions) if i not in doomed]


@dataclass
class LearnerState:
    """Everything the learner carries between rounds.

    ``mistakes`` is the sample the oracle is queried on: one pair per
    mistaken round, in order. Every active function was consistent with
    the mistake sample as of its append.
    """

    oracle: ConsistentOracle
    active: ActiveList = field(default_factory=ActiveList)
    mistakes: list[LabeledPair] = field(default_factory=list)
    _ones: set[Point] = field(default_factory=set, repr=False)
    _zeros: set[Point] = field(default_factory=set, repr=False)

    @property
    def mistake_count(self) -> int:
        return len(self.mistakes)

    def record_mistake(self, x: Point, y: Bit) -> None:
        self.mistakes.append((x, y))
        (self._ones if y else self._zeros).add(x)

    def mistake_sample(self) -> Sample:
        # labels come from a history the engine already checked for
        # consistency, so the snapshot invariants hold by construction
        return _sample_snapshot(
            tuple(self.mistakes), frozenset(self._ones), frozenset(self._zeros)
        )


def vote_and_update(state: LearnerState, k: int, rounds: RoundInterface) -> None:
    """Run rounds until exactly one mistake, voting over the last 2^k
    active functions.

    With fewer than 2^k active functions the prediction defaults to 0.
    On the mistake: if k = 0 or the list was short, the oracle is queried
    on the updated mistake sample and its answer appended; otherwise the
    earliest 2^(k-1) voters that agree with the wrong prediction are kept
    and the other 2^(k-1) voters are deleted.
    """
    if k < 0:
        raise ValueError("vote width exponent must be non-negative")
    width = 1 << k
    while True:
        x = rounds.next_point()
        count = len(state.active)
        if count >= width:
            voters = state.active.last(width)
            ones = sum(h(x) for h in voters)
            y_hat = 1 if 2 * ones >= width else 0  # exact tie predicts 1
            used = width
        else:
            y_hat = 0
            used = 0
        y = rounds.submit(y_hat, vote_width=used, active_count=count)
        if y == y_hat:
            continue
        state.record_mistake(x, y)
        if k == 0 or count < width:
            mistake_sample = state.mistake_sample()
            try:
                g = state.oracle(mistake_sample)
            except NonRealizable as exc:
                raise OracleFailure(
                    "consistent oracle failed on the mistake sample; "
                    "the adversary played an inconsistent history"
                ) from exc
            if not is_consistent(g, mistake_sample):
                raise OracleFailure(
                    f"oracle answer {g.name!r} disagrees with the mistake sample"
                )
            state.active.append(g)
            _annotate(rounds, appended=(g.name,), deleted=())
        else:
            first = count - width
            agreeing = [i for i in range(first, count) if state.active[i](x) == y_hat]
            if len(agreeing) < width // 2:
                raise InsufficientAgreement(
                    f"only {len(agreeing)} of {width} voters agree with the "
                    f"majority prediction"
                )
            kept = set(agreeing[: width // 2])
            doomed = [i for i in range(first, count) if i not in kept]
            names = tuple(state.active[i].name for i in doomed)
            state.active.delete(doomed)
            _annotate(rounds, appended=(), deleted=names)
        return


def create_advanced(state: LearnerState, k: int, rounds: RoundInterface) -> None:
    """The halting procedure: 16 rounds of the k-1 procedure, each chased
    by one vote over the functions it produced.

    When it returns it has consumed exactly ``halting_mistakes(k)``
    mistakes and grown the active list by exactly 2 * 8^(k+1) functions,
    without deleting any function that predated the call.
    """
    if k < 0:
        raise ValueError("procedure index must be non-negative")
    if k == 0:
        for _ in range(16):
            vote_and_update(state, 0, rounds)
    else:
        for _ in range(16):
            create_advanced(state, k - 1, rounds)
            vote_and_update(state, 3 * k + 1, rounds)


def create_advanced_widths(k: int) -> list[int]:
    """The flattened sequence of vote-width exponents create_advanced(k)
    feeds to vote_and_update, one entry per mistake."""
    if k < 0:
        raise ValueError("procedure index must be non-negative")
    if k == 0:
        return [0] * 16
    return (create_advanced_widths(k - 1) + [3 * k + 1]) * 16


def predict_widths() -> Iterator[int]:
    """The infinite procedure schedule of the dimension-independent learner.

    After the N-th base procedure, one extra procedure of index j runs for
    every j >= 1 with 16^j dividing N. For every k, the prefix of length
    ``halting_mistakes(k)`` equals ``create_advanced_widths(k)``.
    """
    for n in itertools.count(1):
        yield 0
        j, m = 1, n
        while m % 16 == 0:
            yield 3 * j + 1
            j += 1
            m //= 16


def predict_learner(state: LearnerState, rounds: RoundInterface) -> NoReturn:
    """The dimension-independent learner: run voting procedures forever in
    the order of :func:`predict_widths`.

    Entering a procedure of positive index with fewer active functions
    than its vote width would mean the schedule bookkeeping is broken;
    that is asserted, not handled.
    """
    for k in predict_widths():
        if k >= 1 and len(state.active) < (1 << k):
            raise ScheduleViolation(
                f"procedure with vote width 2^{k} entered with only "
                f"{len(state.active)} active functions"
            )
        vote_and_update(state, k, rounds)
    raise AssertionError("unreachable: the schedule is infinite")


def halting_mistakes(k: int) -> int:
    """Mistakes consumed by a full run of create_advanced(k):
    16 + 16^2 + ... + 16^(k+1)."""
    if k < 0:
        raise ValueError("procedure index must be non-negative")
    return sum(16**j for j in range(1, k + 2))


def appended_functions(k: int) -> int:
    """Net growth of the active list over a full create_advanced(k) run."""
    return 2 * 8 ** (k + 1)


def mistake_bound(d: int) -> int:
    """Largest mistake count the dimension-independent learner can reach
    against any adversary whose functions stay within dimension d.

    Equals halting_mistakes(2d - 1) - 1: one less than the point where
    create_advanced(2d - 1) would halt, which cannot happen at dimension d.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return halting_mistakes(2 * d - 1) - 1


@dataclass(frozen=True)
class AdvancedCheck:
    """Outcome of an advanced-set check."""

    ok: bool
    gamma: Fraction
    subsets_checked: int
    counterexample: tuple[Hypothesis, ...] | None


def _meets_bound(dim: int, size: int, total: int, gamma: Fraction) -> bool:
    """Exact test of dim >= gamma + log16(size/total) in integer arithmetic."""
    p, q = gamma.numerator, gamma.denominator
    exponent = q * dim - p  # compare 16^exponent against (size/total)^q
    if exponent >= 0:
        return total**q * 16**exponent >= size**q
    return total**q >= size**q * 16**-exponent


def _required_dimension(size: int, total: int, gamma: Fraction) -> int:
    d = 0
    while not _meets_bound(d, size, total, gamma):
        d += 1
    return d


def check_advanced(
    functions: Sequence[Hypothesis],
    gamma: Fraction | float | int | str,
    *,
    sample_count: int | None = None,
    seed: int = 0,
    exact_limit: int = 16,
) -> AdvancedCheck:
    """Check that every non-empty subset A of the given set T satisfies
    ldim(A) >= gamma + log16(|A| / |T|).

    With ``sample_count=None`` every subset is enumerated (guarded to
    ``exact_limit`` functions); otherwise that many seeded random subsets
    are checked, plus the full set. Returns the first violating subset as
    a counterexample. The input must already be free of extensional
    duplicates.
    """
    hyps = tuple(functions)
    if not hyps:
        raise ValueError("advanced-set check needs a non-empty set")
    if len({h.support for h in hyps}) != len(hyps):
        raise ValueError("advanced-set check requires deduplicated hypotheses")
    gamma = Fraction(gamma)
    total = len(hyps)
    engine = _DimensionEngine(hyps)
    masks = sorted(engine.all_masks)

    def subset_ok(indices: Sequence[int]) -> bool:
        need = _required_dimension(len(indices), total, gamma)
        return engine.at_least(frozenset(masks[i] for i in indices), need)

    checked = 0
    if sample_count is None:
        if total > exact_limit:
            raise SizeLimitExceeded(
                f"exact advanced-set check guarded to {exact_limit} functions, got {total}"
            )
        for size in range(1, total + 1):
            for combo in itertools.combinations(range(total), size):
                checked += 1
                if not subset_ok(combo):
                    bad = tuple(engine.mask_of[masks[i]] for i in combo)
                    return AdvancedCheck(False, gamma, checked, bad)
        return AdvancedCheck(True, gamma, checked, None)

    rng = random.Random(seed)
    picks: list[tuple[int, ...]] = [tuple(range(total))]
    for _ in range(sample_count):
        size = rng.randint(1, total)
        picks.append(tuple(sorted(rng.sample(range(total), size))))
    for combo in picks:
        checked += 1
        if not subset_ok(combo):
            bad = tuple(engine.mask_of[masks[i]] for i in combo)
            return AdvancedCheck(False, gamma, checked, bad)
    return AdvancedCheck(True, gamma, checked, None)


class PredictLearner:
    """Game driver for the dimension-independent learner."""

    name = "predict"

    def __init__(self) -> None:
        self.state: LearnerState | None = None

    def run(self, rounds) -> None:
        self.state = LearnerState(oracle=rounds.oracle)
        predict_learner(self.state, rounds)


class CreateAdvancedLearner:
    """Game driver running one full create_advanced(k), then halting."""

    def __init__(self, k: int):
        self.k = k
        self.name = f"create-adv:{k}"
        self.state: LearnerState | None = None

    def run(self, rounds) -> None:
        self.state = LearnerState(oracle=rounds.oracle)
        create_advanced(self.state, self.k, rounds)
