"""Adversary strategies for the mistake game, and the digit-recovery
learner that certifies the ternary construction's dimension.

Every adversary answers a prediction with a label and a function that is
consistent with the whole history so far. The ternary adversary plays the
points 0..3^d-1 in order and always flips the prediction; its functions
are built by a most-significant-differing-digit rule over base-3
expansions, which keeps the revealed set at dimension at most d while
forcing a mistake every round.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable

from .errors import ContradictorySample, InconsistentOracleClass, NonRealizable
from .hypotheses import (
    Bit,
    Hypothesis,
    HypothesisClass,
    LabeledPair,
    Point,
    minimal_extension_oracle,
    random_table_oracle,
    table_oracle,
)


def ternary_digit(x: int, position: int) -> int:
    """Digit of ``x`` at the given base-3 position (position 0 is least
    significant)."""
    return (x // 3**position) % 3


def ternary_digits(x: int, d: int) -> tuple[int, ...]:
    """Length-d base-3 expansion of ``x``, most significant digit first."""
    return tuple(ternary_digit(x, i) for i in range(d - 1, -1, -1))


def ternary_function(r: int, d: int, labels: tuple[Bit, ...]) -> Hypothesis:
    """The adversary function revealed after playing point ``r``.

    On points up to r it repeats the revealed labels; on larger in-range
    points x it takes the value of r's digit at the most significant
    base-3 position where r and x differ; past 3^d - 1 it is 0, via the
    default-zero convention.
    """
    n = 3**d
    if not 0 <= r < n:
        raise ValueError(f"point index {r} outside 0..{n - 1}")
    if len(labels) != r + 1:
        raise ValueError(f"need {r + 1} labels for point index {r}, got {len(labels)}")
    values = list(labels)
    for x in range(r + 1, n):
        i = max(pos for pos in range(d) if ternary_digit(r, pos) != ternary_digit(x, pos))
        values.append(ternary_digit(r, i))
    return Hypothesis(f"f{r}", tuple(range(n)), tuple(values))


class TernaryAdversary:
    """Plays 0..3^d-1 in increasing order and flips every prediction."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.d = d
        self.name = f"ternary:{d}"
        self._n = 3**d
        self._r = 0
        self.labels: list[Bit] = []

    def next_point(self) -> Point | None:
        # The mistake bound is realized after 3^d rounds; stop there.
        return self._r if self._r < self._n else None

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]:
        y = 1 - y_hat
        self.labels.append(y)
        f = ternary_function(self._r, self.d, tuple(self.labels))
        self._r += 1
        return y, f


class FloodAdversary:
    """Flips every prediction over 2^(d+1) - 1 fresh points.

    Legal because fewer than 2^(d+1) distinct functions can never exceed
    dimension d.
    """

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.d = d
        self.name = f"flood:{d}"
        self.points = tuple(range(2 ** (d + 1) - 1))
        self._i = 0
        self.history: list[LabeledPair] = []

    def next_point(self) -> Point | None:
        return self.points[self._i] if self._i < len(self.points) else None

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]:
        y = 1 - y_hat
        self.history.append((x, y))
        self._i += 1
        return y, minimal_extension_oracle(self.history, name=f"f{self._i}")


class FreeAdversary:
    """Flips every prediction forever over fresh increasing points.

    Unconstrained by any dimension bound; exists to make the halting
    procedures actually halt, so their counting and advanced-set
    properties can be observed.
    """

    name = "free"

    def __init__(self) -> None:
        self._points: list[Point] = []
        self._labels: list[Bit] = []

    def next_point(self) -> Point:
        return len(self._points)

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]:
        y = 1 - y_hat
        self._points.append(x)
        self._labels.append(y)
        # points never repeat, so the minimal extension is just the history
        f = Hypothesis(f"f{len(self._points)}", tuple(self._points), tuple(self._labels))
        return y, f


def class_greedy_round(
    c: HypothesisClass, history: list[LabeledPair], x: Point, y_hat: Bit
) -> tuple[Bit, Hypothesis]:
    """One round of the flip-when-legal adversary over a fixed class.

    Flips the prediction whenever some class member realizes the flipped
    history, otherwise concedes the forced label; either way returns a
    consistent class member as the oracle answer.
    """
    flipped = history + [(x, 1 - y_hat)]
    try:
        return 1 - y_hat, table_oracle(c, flipped)
    except (NonRealizable, ContradictorySample):
        # the flip is illegal: no class member, or the point's label is
        # already forced by the history
        pass
    return y_hat, table_oracle(c, history + [(x, y_hat)])


class ClassGreedyAdversary:
    """Greedy legal adversary: plays points where the surviving hypotheses
    disagree and flips whenever the class allows it."""

    def __init__(self, c: HypothesisClass):
        self.cls = c
        self.name = "class-greedy"
        self.history: list[LabeledPair] = []
        self._survivors = c.distinct()

    def next_point(self) -> Point:
        for x in self.cls.domain:
            if len({h(x) for h in self._survivors}) == 2:
                return x
        # no disagreement left anywhere: keep the game alive round-robin
        return self.cls.domain[len(self.history) % len(self.cls.domain)]

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]:
        y, f = class_greedy_round(self.cls, self.history, x, y_hat)
        self.history.append((x, y))
        self._survivors = tuple(h for h in self._survivors if h(x) == y)
        return y, f


class RandomClassAdversary:
    """Seeded legal adversary over a fixed class: random points, random
    legal labels, random consistent oracle answers."""

    def __init__(self, c: HypothesisClass, seed: int):
        self.cls = c
        self.name = f"random-class:{seed}"
        self.history: list[LabeledPair] = []
        self._survivors = c.distinct()
        self._rng = random.Random(seed)

    def next_point(self) -> Point:
        return self._rng.choice(self.cls.domain)

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]:
        legal = sorted({h(x) for h in self._survivors})
        y = legal[0] if len(legal) == 1 else self._rng.choice(legal)
        self.history.append((x, y))
        self._survivors = tuple(h for h in self._survivors if h(x) == y)
        return y, random_table_oracle(self.cls, self.history, self._rng)


@dataclass(frozen=True)
class InformativeState:
    """State of the digit-recovery learner for a ternary class.

    ``level`` counts how many leading base-3 digits of the hidden index
    are certified (at least the number of mistakes so far);
    ``known_digits`` holds the level-1 most significant digits recovered;
    ``witness`` is a point whose expansion matches those digits and whose
    revealed label differs from the hidden function's value there.
    """

    d: int
    labels: tuple[Bit, ...]
    level: int = 0
    known_digits: tuple[int, ...] = ()
    witness: Point | None = None
    witness_label: Bit | None = None
    recovered_index: int | None = None
    recovered: Hypothesis | None = None

    def __post_init__(self) -> None:
        if len(self.labels) != 3**self.d:
            raise ValueError(
                f"need all {3 ** self.d} class labels, got {len(self.labels)}"
            )


def _recover(state: InformativeState) -> InformativeState:
    """Turn a fully informative witness into the hidden index."""
    last = ternary_digit(state.witness, 0)
    if last == 1:
        low = 0
    elif last == 2:
        low = 1 - state.witness_label
    else:
        raise InconsistentOracleClass(
            "witness ends in digit 0, impossible for any class member"
        )
    r = low
    for position, digit in zip(range(state.d - 1, 0, -1), state.known_digits):
        r += digit * 3**position
    f = ternary_function(r, state.d, state.labels[: r + 1])
    return replace(state, recovered_index=r, recovered=f)


def _advance(state: InformativeState, witness: Point, digit: int) -> InformativeState:
    out = replace(
        state,
        level=state.level + 1,
        known_digits=state.known_digits + (digit,),
        witness=witness,
        witness_label=state.labels[witness],
    )
    if out.level == out.d:
        out = _recover(out)
    return out


def _first_mistake(state: InformativeState, z: Point) -> InformativeState:
    out = replace(state, level=1, witness=z, witness_label=state.labels[z])
    if out.d == 1:
        out = _recover(out)
    return out


def _analyze(
    state: InformativeState, z: Point
) -> tuple[Bit, InformativeState, Callable[[], InformativeState] | None]:
    """Work out the prediction for ``z``.

    Returns (prediction, state after promotions that need no feedback,
    transition to apply if the prediction turns out wrong). The transition
    is lazy: a genuine mistake guarantees its preconditions, whereas a
    hypothetical one need not. It is None on paths where the class makes
    a mistake impossible.
    """
    d = state.d
    n = 3**d
    st = state
    while True:
        if st.recovered is not None:
            return st.recovered(z), st, None
        if z >= n:
            return 0, st, None
        y_z = st.labels[z]
        if st.level == 0:
            return y_z, st, lambda st=st: _first_mistake(st, z)
        # compare z against the certified prefix, most significant first
        mismatch = None
        for position, r_i in zip(range(d - 1, d - st.level, -1), st.known_digits):
            z_i = ternary_digit(z, position)
            if z_i != r_i:
                mismatch = (r_i, z_i)
                break
        if mismatch is not None:
            r_i, z_i = mismatch
            return (y_z if z_i < r_i else r_i), st, None
        a = ternary_digit(st.witness, d - st.level)
        b = ternary_digit(z, d - st.level)
        if a == 0:
            # the witness already certifies the next digit to be 0
            st = _advance(st, st.witness, 0)
            continue
        y_w = st.witness_label
        if b == 0:
            return y_z, st, lambda st=st: _advance(st, z, 0)
        if a <= b:
            return 1 - y_w, st, lambda st=st: _advance(st, st.witness, a)
        # a == 2, b == 1
        if y_w == 0:
            return y_z, st, lambda st=st: _advance(st, z, 1)
        return 0, st, lambda st=st: _advance(st, st.witness, 2)


def informative_predict(state: InformativeState, z: Point) -> Bit:
    """Prediction of the digit-recovery learner at ``z``."""
    return _analyze(state, z)[0]


def informative_update(state: InformativeState, z: Point, y_true: Bit) -> InformativeState:
    """Advance the learner after the true value at ``z`` is revealed."""
    prediction, promoted, on_mistake = _analyze(state, z)
    if y_true == prediction:
        return promoted
    if on_mistake is None:
        raise InconsistentOracleClass(
            f"observed value {y_true} at {z} contradicts every class member"
        )
    return on_mistake()
