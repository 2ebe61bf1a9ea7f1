from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oraclebench.hypotheses import Hypothesis


def hyp(name: str, bits: str, domain=None) -> Hypothesis:
    """Shorthand: hyp('a', '0110') is the table 0,1,2,3 -> 0,1,1,0."""
    points = tuple(domain) if domain is not None else tuple(range(len(bits)))
    return Hypothesis(name, points, tuple(int(b) for b in bits))
