"""Core data model: hypotheses, classes, samples, and consistent oracles.

A hypothesis is a total 0/1-valued function on the non-negative integers,
stored as a finite table with an implicit default of 0 outside its domain.
The default-zero convention makes every hypothesis total, extensionally
comparable, and hashable: two hypotheses are equal exactly when their
1-sets coincide.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import compress
from operator import not_
from pathlib import Path
from typing import Callable, Iterable, Union

from .errors import ClassFileError, ContradictorySample, EmptyClass, NonRealizable

Point = int
Bit = int
LabeledPair = tuple[Point, Bit]

_BITS = frozenset((0, 1))


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A finite truth table over integer points, 0 everywhere else."""

    name: str
    domain: tuple[Point, ...]
    values: tuple[Bit, ...]

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.values):
            raise ValueError(
                f"hypothesis {self.name!r}: {len(self.values)} values for "
                f"{len(self.domain)} domain points"
            )
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"hypothesis {self.name!r}: duplicate domain points")
        if self.domain and min(self.domain) < 0:
            raise ValueError(f"hypothesis {self.name!r}: negative domain point")
        if not set(self.values) <= _BITS:
            raise ValueError(f"hypothesis {self.name!r}: values must be bits")

    @cached_property
    def support(self) -> frozenset[Point]:
        """The 1-set; determines the function under the default-zero rule."""
        return frozenset(compress(self.domain, self.values))

    def __call__(self, x: Point) -> Bit:
        # evaluation needs no table: the default off-domain is 0 as well
        return 1 if x in self.support else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypothesis):
            return NotImplemented
        return self.support == other.support

    def __hash__(self) -> int:
        return hash(self.support)

    def __repr__(self) -> str:
        return f"Hypothesis({self.name!r}, ones={sorted(self.support)})"


def hypothesis_from_support(name: str, ones: Iterable[Point], domain: Iterable[Point] = ()) -> Hypothesis:
    """Build a hypothesis from its 1-set; extra domain points get value 0."""
    one_points = sorted(set(ones))
    zero_points = sorted(set(domain) - set(one_points))
    points = tuple(one_points + zero_points)
    return Hypothesis(name, points, tuple([1] * len(one_points) + [0] * len(zero_points)))


@dataclass(frozen=True)
class Sample:
    """An ordered list of labeled points.

    A point may repeat only with the same label; anything else is rejected
    at construction because no function could realize it. The 1-labeled
    and 0-labeled point sets are precomputed for fast consistency checks.
    """

    pairs: tuple[LabeledPair, ...]
    ones: frozenset[Point] = field(init=False, repr=False, compare=False)
    zeros: frozenset[Point] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.pairs:
            xs, ys = zip(*self.pairs)
        else:
            xs, ys = (), ()
        if not set(ys) <= _BITS:
            raise ValueError("sample labels must be bits")
        ones = frozenset(compress(xs, ys))
        zeros = frozenset(compress(xs, map(not_, ys)))
        clash = ones & zeros
        if clash:
            raise ContradictorySample(f"point {min(clash)} labeled both 0 and 1")
        object.__setattr__(self, "ones", ones)
        object.__setattr__(self, "zeros", zeros)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


SampleLike = Union[Sample, Iterable[LabeledPair]]


def as_sample(pairs: SampleLike) -> Sample:
    if isinstance(pairs, Sample):
        return pairs
    return Sample(tuple((x, y) for x, y in pairs))


def _sample_snapshot(
    pairs: tuple[LabeledPair, ...], ones: frozenset[Point], zeros: frozenset[Point]
) -> Sample:
    """Internal fast path: assemble a Sample from parts whose invariants
    the caller maintains incrementally (bit labels, disjoint ones/zeros
    matching the pairs). Used by the learner, whose mistake sample only
    ever appends."""
    s = object.__new__(Sample)
    object.__setattr__(s, "pairs", pairs)
    object.__setattr__(s, "ones", ones)
    object.__setattr__(s, "zeros", zeros)
    return s


@dataclass(frozen=True)
class HypothesisClass:
    """An ordered, finite set of hypotheses over one shared domain."""

    domain: tuple[Point, ...]
    hypotheses: tuple[Hypothesis, ...]

    def __post_init__(self) -> None:
        if not self.hypotheses:
            raise EmptyClass("a hypothesis class must be non-empty")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("class domain has duplicate points")
        for h in self.hypotheses:
            if tuple(h.domain) != tuple(self.domain):
                raise ValueError(
                    f"hypothesis {h.name!r} is not given on the class domain"
                )

    def __len__(self) -> int:
        return len(self.hypotheses)

    def __iter__(self):
        return iter(self.hypotheses)

    def distinct(self) -> tuple[Hypothesis, ...]:
        """Extensional deduplication, preserving first occurrence order."""
        out: list[Hypothesis] = []
        seen: set[frozenset[Point]] = set()
        for h in self.hypotheses:
            if h.support not in seen:
                seen.add(h.support)
                out.append(h)
        return tuple(out)

    @classmethod
    def from_rows(cls, domain: Iterable[Point], rows: Iterable[tuple[str, str]]) -> "HypothesisClass":
        """Build a class from (name, '0101...') rows over a shared domain."""
        dom = tuple(domain)
        hyps = []
        for name, bits in rows:
            hyps.append(Hypothesis(name, dom, tuple(int(b) for b in bits)))
        return cls(dom, tuple(hyps))


# A consistent oracle maps a realizable sample to some hypothesis agreeing
# with every pair, and raises NonRealizable otherwise.
ConsistentOracle = Callable[[Sample], Hypothesis]


def evaluate(h: Hypothesis, x: Point) -> Bit:
    """Value of ``h`` at ``x``: the stored bit, or 0 outside the table."""
    return h(x)


def is_consistent(h: Hypothesis, sample: SampleLike) -> bool:
    """True iff ``h`` agrees with every labeled pair of the sample."""
    if isinstance(sample, Sample):
        return sample.ones <= h.support and h.support.isdisjoint(sample.zeros)
    return all(h(x) == y for x, y in sample)


def table_oracle(c: HypothesisClass, sample: SampleLike) -> Hypothesis:
    """Return the first hypothesis in class order consistent with the sample.

    Deterministic by construction; raises NonRealizable when no member fits.
    """
    s = as_sample(sample)
    for h in c.hypotheses:
        if is_consistent(h, s):
            return h
    raise NonRealizable(f"no hypothesis in the class realizes {s.pairs}")


def random_table_oracle(c: HypothesisClass, sample: SampleLike, rng: random.Random) -> Hypothesis:
    """Seeded variant of table_oracle: a uniform choice among the consistent
    members, for adversarial stress testing."""
    s = as_sample(sample)
    fits = [h for h in c.hypotheses if is_consistent(h, s)]
    if not fits:
        raise NonRealizable(f"no hypothesis in the class realizes {s.pairs}")
    return rng.choice(fits)


def class_oracle(c: HypothesisClass) -> ConsistentOracle:
    """Bind table_oracle to a class, yielding a ConsistentOracle."""
    return lambda sample: table_oracle(c, sample)


def minimal_extension_oracle(sample: SampleLike, name: str = "ext") -> Hypothesis:
    """The hypothesis whose table is exactly the sample, 0 elsewhere."""
    s = as_sample(sample)
    table = dict(s.pairs)
    return Hypothesis(name, tuple(table), tuple(table.values()))


def load_class_file(path: str | Path) -> HypothesisClass:
    """Read a hypothesis class from a JSON file.

    Format: {"domain": [int, ...],
             "hypotheses": [{"name": str, "values": "0101..."}, ...]}.
    Points absent from the domain are implicitly 0.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ClassFileError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "domain" not in doc or "hypotheses" not in doc:
        raise ClassFileError(f"{path}: expected an object with 'domain' and 'hypotheses'")
    domain = doc["domain"]
    if not isinstance(domain, list) or not all(isinstance(x, int) for x in domain):
        raise ClassFileError(f"{path}: 'domain' must be an array of integers")
    hyps: list[Hypothesis] = []
    for i, entry in enumerate(doc["hypotheses"]):
        if not isinstance(entry, dict) or "values" not in entry:
            raise ClassFileError(f"{path}: hypothesis #{i} must be an object with 'values'")
        name = str(entry.get("name", f"h{i}"))
        values = entry["values"]
        if not isinstance(values, str) or any(ch not in "01" for ch in values):
            raise ClassFileError(f"{path}: hypothesis {name!r}: 'values' must be a string of 0/1")
        if len(values) != len(domain):
            raise ClassFileError(
                f"{path}: hypothesis {name!r}: {len(values)} values for "
                f"{len(domain)} domain points"
            )
        hyps.append(Hypothesis(name, tuple(domain), tuple(int(ch) for ch in values)))
    if not hyps:
        raise ClassFileError(f"{path}: class is empty")
    try:
        return HypothesisClass(tuple(domain), tuple(hyps))
    except ValueError as exc:
        raise ClassFileError(f"{path}: {exc}") from exc


def save_class_file(c: HypothesisClass, path: str | Path) -> None:
    doc = {
        "domain": list(c.domain),
        "hypotheses": [
            {"name": h.name, "values": "".join(str(v) for v in h.values)}
            for h in c.hypotheses
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
