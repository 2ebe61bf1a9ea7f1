"""Protocol engine for the mistake game.

A game alternates three steps per round: the adversary names a point, the
learner predicts a bit, and the adversary reveals a label together with a
function consistent with the entire history. The engine enforces that
consistency on every round, optionally bounds the dimension of the
revealed set, counts mistakes, and records a transcript that is
byte-reproducible from the configuration and seed.
"""

from __future__ import annotations

import gc
import json
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Protocol

from .errors import (
    DimensionViolation,
    IllegalAdversaryFunction,
    NonRealizable,
)
from .hypotheses import Bit, Hypothesis, LabeledPair, Point, Sample, is_consistent
from .littlestone import ldim


class Adversary(Protocol):
    """What the engine needs from an adversary."""

    name: str

    def next_point(self) -> Point | None: ...

    def respond(self, x: Point, y_hat: Bit) -> tuple[Bit, Hypothesis]: ...


class Learner(Protocol):
    """What the engine needs from a learner driver."""

    name: str

    def run(self, rounds: "RoundChannel") -> None: ...


@dataclass(frozen=True)
class GameConfig:
    """Static parameters of one game.

    ``d`` is the declared dimension bound (None for an unconstrained
    adversary); ``validation`` is "consistency" (always-on history check)
    or "full" (additionally check the revealed set's dimension, guarded to
    ``ldim_check_limit`` distinct functions).
    """

    d: int | None
    round_cap: int = 1000
    seed: int = 0
    validation: str = "consistency"
    ldim_check_limit: int = 32

    def __post_init__(self) -> None:
        if self.round_cap < 1:
            raise ValueError("round_cap must be at least 1")
        if self.validation not in ("consistency", "full"):
            raise ValueError("validation must be 'consistency' or 'full'")


@dataclass(frozen=True)
class Round:
    index: int
    x: Point
    y_hat: Bit
    y: Bit
    mistake: bool
    f_id: str
    vote_width: int
    active_count: int
    appended: tuple[str, ...] = ()
    deleted: tuple[str, ...] = ()


@dataclass
class Transcript:
    """Complete record of one game: per-round data plus every revealed
    function, so it can be re-validated offline."""

    config: GameConfig
    learner: str
    adversary: str
    rounds: list[Round] = field(default_factory=list)
    functions: list[Hypothesis] = field(default_factory=list)
    stopped_by: str = "unknown"

    @property
    def mistake_count(self) -> int:
        return sum(1 for r in self.rounds if r.mistake)

    def history(self, upto: int | None = None) -> list[LabeledPair]:
        rounds = self.rounds if upto is None else self.rounds[:upto]
        return [(r.x, r.y) for r in rounds]


class GameStopped(Exception):
    """Internal control flow: the game is over (not an error)."""

    def __init__(self, reason: str):
        self.reason = reason


class RoundChannel:
    """The learner-facing side of the engine.

    The learner pulls the next point, submits its prediction (with trace
    metadata), and gets the revealed label back. ``oracle`` exposes the
    current round's revealed function as a consistent-oracle answer.
    """

    def __init__(self, adversary: Adversary, config: GameConfig, transcript: Transcript):
        self._adversary = adversary
        self._config = config
        self._transcript = transcript
        self._ones: set[Point] = set()
        self._zeros: set[Point] = set()
        self._pending: Point | None = None
        self._current_f: Hypothesis | None = None

    def next_point(self) -> Point:
        if self._pending is not None:
            raise RuntimeError("next_point called twice without submit")
        if len(self._transcript.rounds) >= self._config.round_cap:
            raise GameStopped("round_cap")
        x = self._adversary.next_point()
        if x is None:
            raise GameStopped("adversary_done")
        self._pending = x
        return x

    def submit(self, y_hat: Bit, *, vote_width: int = 0, active_count: int = 0) -> Bit:
        if self._pending is None:
            raise RuntimeError("submit called before next_point")
        x = self._pending
        self._pending = None
        y, f = self._adversary.respond(x, y_hat)
        (self._ones if y else self._zeros).add(x)
        self._validate(f)
        self._current_f = f
        self._transcript.functions.append(f)
        self._transcript.rounds.append(
            Round(
                index=len(self._transcript.rounds),
                x=x,
                y_hat=y_hat,
                y=y,
                mistake=y != y_hat,
                f_id=f.name,
                vote_width=vote_width,
                active_count=active_count,
            )
        )
        return y

    def oracle(self, sample: Sample) -> Hypothesis:
        """Consistent-oracle view of the adversary's current function."""
        f = self._current_f
        if f is None:
            raise RuntimeError("oracle queried before any round completed")
        if not is_consistent(f, sample):
            raise NonRealizable(
                f"revealed function {f.name!r} does not realize the queried sample"
            )
        return f

    def annotate_update(self, appended: Iterable[str], deleted: Iterable[str]) -> None:
        """Attach the learner's list mutations to the round just played."""
        rounds = self._transcript.rounds
        if rounds:
            rounds[-1] = replace(rounds[-1], appended=tuple(appended), deleted=tuple(deleted))

    def _validate(self, f: Hypothesis) -> None:
        if not (self._ones <= f.support and f.support.isdisjoint(self._zeros)):
            raise IllegalAdversaryFunction(
                f"function {f.name!r} contradicts the revealed history"
            )
        if self._config.validation == "full" and self._config.d is not None:
            distinct = {g.support for g in self._transcript.functions} | {f.support}
            if len(distinct) <= self._config.ldim_check_limit:
                revealed = list(self._transcript.functions) + [f]
                dim = ldim(revealed)
                if dim > self._config.d:
                    raise DimensionViolation(
                        f"revealed set has dimension {dim} > bound {self._config.d}"
                    )


@contextmanager
def _gc_paused() -> Iterator[None]:
    # The round loop allocates many large acyclic containers; cyclic GC
    # rescanning them dominates long games, so pause it for the loop.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def run_game(learner: Learner, adversary: Adversary, config: GameConfig) -> Transcript:
    """Play one game to completion and return its transcript.

    The game ends when the adversary runs out of points, the learner's
    procedure halts, or the round cap is reached; all three are normal
    terminations recorded in ``stopped_by``.
    """
    transcript = Transcript(config=config, learner=learner.name, adversary=adversary.name)
    channel = RoundChannel(adversary, config, transcript)
    with _gc_paused():
        try:
            learner.run(channel)
        except GameStopped as stop:
            transcript.stopped_by = stop.reason
        else:
            transcript.stopped_by = "learner_halted"
    return transcript


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    checks: int
    failures: tuple[str, ...]
    notes: tuple[str, ...]

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


def validate_transcript(t: Transcript, d: int | None = None, *, ldim_check_limit: int = 32) -> ValidationReport:
    """Offline re-validation of a stored transcript.

    Re-checks every revealed function against the history prefix it was
    played under, recomputes the mistake flags, and (size-guarded) bounds
    the dimension of the full revealed set.
    """
    failures: list[str] = []
    notes: list[str] = []
    checks = 0
    history: list[LabeledPair] = []
    for r, f in zip(t.rounds, t.functions):
        checks += 1
        if r.mistake != (r.y_hat != r.y):
            failures.append(f"round {r.index}: mistake flag does not match labels")
        history.append((r.x, r.y))
        if not is_consistent(f, history):
            failures.append(
                f"round {r.index}: function {f.name!r} inconsistent with history"
            )
            break
    if len(t.rounds) != len(t.functions):
        failures.append(
            f"{len(t.rounds)} rounds but {len(t.functions)} revealed functions"
        )
    bound = d if d is not None else t.config.d
    if bound is not None and not failures:
        distinct = {f.support for f in t.functions}
        if len(distinct) <= ldim_check_limit:
            checks += 1
            dim = ldim(t.functions) if t.functions else 0
            if dim > bound:
                failures.append(f"revealed set has dimension {dim} > bound {bound}")
        else:
            notes.append(
                f"dimension check skipped: {len(distinct)} distinct functions "
                f"exceed the guard of {ldim_check_limit}"
            )
    return ValidationReport(
        passed=not failures,
        checks=checks,
        failures=tuple(failures),
        notes=tuple(notes),
    )


def _round_record(r: Round) -> dict:
    return {
        "type": "round",
        "round": r.index,
        "x": r.x,
        "y_hat": r.y_hat,
        "y": r.y,
        "mistake": r.mistake,
        "f_id": r.f_id,
        "vote_width": r.vote_width,
        "active_count": r.active_count,
        "appended": list(r.appended),
        "deleted": list(r.deleted),
    }


def save_transcript(t: Transcript, path: str | Path) -> None:
    """Write a transcript as line-delimited JSON, bit-exact for identical
    inputs: a header record, one record per round, one per revealed
    function, and a trailing summary."""
    lines = [
        json.dumps(
            {
                "type": "header",
                "learner": t.learner,
                "adversary": t.adversary,
                "d": t.config.d,
                "round_cap": t.config.round_cap,
                "seed": t.config.seed,
                "validation": t.config.validation,
            },
            sort_keys=True,
        )
    ]
    lines.extend(json.dumps(_round_record(r), sort_keys=True) for r in t.rounds)
    lines.extend(
        json.dumps(
            {
                "type": "function",
                "round": i,
                "f_id": f.name,
                "domain": list(f.domain),
                "values": "".join(str(v) for v in f.values),
            },
            sort_keys=True,
        )
        for i, f in enumerate(t.functions)
    )
    lines.append(
        json.dumps(
            {
                "type": "summary",
                "rounds": len(t.rounds),
                "mistakes": t.mistake_count,
                "stopped_by": t.stopped_by,
            },
            sort_keys=True,
        )
    )
    Path(path).write_text("\n".join(lines) + "\n")


def load_transcript(path: str | Path) -> Transcript:
    records = [json.loads(line) for line in Path(path).read_text().splitlines() if line]
    header = next(r for r in records if r["type"] == "header")
    config = GameConfig(
        d=header["d"],
        round_cap=header["round_cap"],
        seed=header["seed"],
        validation=header["validation"],
    )
    t = Transcript(config=config, learner=header["learner"], adversary=header["adversary"])
    for rec in records:
        if rec["type"] == "round":
            t.rounds.append(
                Round(
                    index=rec["round"],
                    x=rec["x"],
                    y_hat=rec["y_hat"],
                    y=rec["y"],
                    mistake=rec["mistake"],
                    f_id=rec["f_id"],
                    vote_width=rec["vote_width"],
                    active_count=rec["active_count"],
                    appended=tuple(rec.get("appended", ())),
                    deleted=tuple(rec.get("deleted", ())),
                )
            )
        elif rec["type"] == "function":
            t.functions.append(
                Hypothesis(
                    rec["f_id"],
                    tuple(rec["domain"]),
                    tuple(int(ch) for ch in rec["values"]),
                )
            )
        elif rec["type"] == "summary":
            t.stopped_by = rec["stopped_by"]
    return t
