from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from exceptions import InvalidParameterError, NotApplicableError, SearchFailureError
from numerics import PairGK, bn_gap, default_q, rho

START = PairGK(6, 5)
MOVE_NAMES = ("first", "second", "third")
_MOVE_PATTERN = re.compile(r"^(first|second|third)(?:\(q=(\d+)\))?$")


class Move:
    def __init__(self, name: str, q: int = 1):
        if name not in MOVE_NAMES:
            raise InvalidParameterError("Unknown construction move '{0}'".format(name))
        if q < 1:
            raise InvalidParameterError("Move parameter q must be positive, got {0}".format(q))
        self.name = name
        self.q = q if name == "first" else 1

    @classmethod
    def parse(cls, text: str) -> Move:
        match = _MOVE_PATTERN.match(text.strip())
        if match is None:
            raise InvalidParameterError("Cannot parse construction move '{0}'".format(text))
        return cls(match.group(1), int(match.group(2) or 1))

    def apply(self, p: PairGK) -> PairGK:
        if not p.is_odd or p.k < 5:
            raise InvalidParameterError("Moves start from an odd k >= 5, got {0}".format(p))
        if self.name == "first":
            if self.q > default_q(p.k1):
                raise InvalidParameterError("q={0} exceeds {1} at {2}".format(self.q, default_q(p.k1), p))
            return move_first(p, self.q)
        if self.name == "second":
            return move_second(p)
        return move_third(p)

    def __eq__(self, other):
        if not isinstance(other, Move):
            return False

        return self.name == other.name and self.q == other.q

    def __hash__(self):
        return hash((self.name, self.q))

    def __repr__(self):
        return "first(q={0})".format(self.q) if self.name == "first" else self.name


class DerivationPath:
    def __init__(self, start: PairGK, moves: List[Move]):
        self.start = start
        self.moves = list(moves)

    @property
    def pairs(self) -> List[PairGK]:
        pairs = [self.start]
        for move in self.moves:
            pairs.append(move.apply(pairs[-1]))
        return pairs

    @property
    def end(self) -> PairGK:
        return self.pairs[-1]

    def validate(self) -> None:
        if any(move.name == "third" for move in self.moves[:-1]):
            raise InvalidParameterError("The third construction can only be the last move")
        for p in self.pairs:
            if rho(p) < 0:
                raise InvalidParameterError("Path passes through {0} with negative rho".format(p))

    def to_dict(self) -> Dict:
        return {"start": list(self.start.to_tuple()), "moves": [repr(m) for m in self.moves],
                "end": list(self.end.to_tuple())}

    def __repr__(self):
        return "{0} -> {1} -> {2}".format(self.start, [repr(m) for m in self.moves], self.end)


class RegionVerdict:
    def __init__(self, pair: PairGK, inside: bool, tags: List[str], binding: Optional[str] = None,
                 flags: Optional[List[str]] = None):
        self.pair = pair
        self.inside = inside
        self.tags = tags
        self.binding = binding
        self.flags = flags or []

    @property
    def constructible(self) -> bool:
        """Whether some chain of constructions is expected to reach the pair"""
        if "prior" in self.tags:
            return False
        return self.inside or any(tag in ("S1", "S2", "S3") for tag in self.tags)

    def __bool__(self):
        return self.inside

    def to_dict(self) -> Dict:
        return {"g": self.pair.g, "k": self.pair.k, "in_region": self.inside, "tags": self.tags,
                "binding": self.binding, "flags": self.flags}


def move_first(p: PairGK, q: int) -> PairGK:
    return PairGK(p.g + 2 * p.k + 4 - q, p.k + 4)


def move_second(p: PairGK) -> PairGK:
    return PairGK(p.g + p.k + 1, p.k + 2)


def move_third(p: PairGK) -> PairGK:
    return PairGK(p.g + 3 * (p.k + 1) // 2, p.k + 3)


def rho_increment(move: str, k1: int, q: int = 1) -> int:
    if move == "first":
        return 4 * k1 + 4 - 3 * q
    if move == "second":
        return 2 * k1 + 1
    if move == "third":
        return 3 * k1
    raise InvalidParameterError("Unknown construction move '{0}'".format(move))


def g_min_odd(k1: int) -> int:
    return k1 * k1 + k1 - ((k1 - 2) ** 2 + 3) // 12


def g_min_even(k1: int) -> int:
    return k1 * k1 - (k1 - 4) ** 2 // 12 - 1


def _lower_bound(k: int) -> Optional[int]:
    k1 = k // 2
    if k % 2 == 1:
        return g_min_odd(k1) if k >= 5 else None
    return g_min_even(k1) if k >= 8 else None


def region_tags(p: PairGK) -> List[str]:
    """Which of the constructed sets contain the pair; 'prior' marks even pairs with L >= 0"""
    g, k, k1 = p.g, p.k, p.k1
    top = k1 * k1 + k1
    tags = []

    if p.is_odd:
        if bn_gap(p) == -1 and rho(p) >= 0:
            tags.append("S1")
        if k >= 9 and k % 4 == 1 and top >= g >= top - 1 - (k1 - 2) ** 2 // 12:
            tags.append("S2")
        if k >= 7 and k % 4 == 3 and top >= g >= g_min_odd(k1):
            tags.append("S3")
        return tags

    if k >= 8 and k % 4 == 0 and top >= g >= k1 * k1 - 2 - (k1 - 4) ** 2 // 12:
        tags.append("T1")
    if k >= 10 and k % 4 == 2 and top >= g >= g_min_even(k1):
        tags.append("T2")
    if k >= 8 and bn_gap(p) >= 0 and top >= g >= g_min_even(k1):
        tags.append("prior")

    return tags


def in_region(p: PairGK) -> RegionVerdict:
    lower = _lower_bound(p.k)
    tags = region_tags(p)
    flags = []
    if lower is None:
        return RegionVerdict(p, False, tags)

    inside = p.k1 * p.k1 + p.k1 >= p.g >= lower and rho(p) >= 0
    binding = "rho" if rho(PairGK(lower, p.k)) < 0 else "bounds"

    if "T1" in tags and p.g == lower - 1:
        flags.append("T1 lower bound is one below the closed-form region")
        logging.getLogger(__name__).warning("{0} lies in T1 but below the closed-form region".format(p))
    if "S2" in tags and not inside and rho(p) >= 0:
        flags.append("constructed by the first construction below the closed-form region")

    return RegionVerdict(p, inside, tags, binding, flags)


def enumerate_region(k_max: int) -> List[PairGK]:
    if k_max < 5:
        raise InvalidParameterError("Region enumeration needs k_max >= 5, got {0}".format(k_max))

    pairs = []
    for k in range(5, k_max + 1):
        lower = _lower_bound(k)
        if lower is None:
            continue
        k1 = k // 2
        pairs += [PairGK(g, k) for g in range(max(lower, 1), k1 * k1 + k1 + 1) if in_region(PairGK(g, k))]

    return sorted(pairs)


def region_rows(k_max: int) -> List[Dict]:
    """(k, g_min, g_max, count) for every k with covered pairs"""
    by_k = {}
    for p in enumerate_region(k_max):
        by_k.setdefault(p.k, []).append(p.g)

    return [{"k": k, "g_min": min(gs), "g_max": max(gs), "count": len(gs)} for k, gs in sorted(by_k.items())]


def asymptotic_ratio(k1: int) -> Fraction:
    if k1 < 2:
        raise InvalidParameterError("k1 must be at least 2, got {0}".format(k1))
    return Fraction(g_min_odd(k1), k1 * k1)


def _odd_path(p: PairGK, memo: Dict[PairGK, Optional[List[Move]]]) -> Optional[List[Move]]:
    if p in memo:
        return memo[p]
    if p == START:
        return []
    if p.k < 5 or rho(p) < 0:
        return None

    memo[p] = None
    candidates: List[Tuple[int, int, Move]] = []
    if p.k - 4 >= 5:
        k1_prev = (p.k - 5) // 2
        for q in range(default_q(k1_prev), 0, -1):
            candidates.append((p.g - 2 * p.k + 4 + q, p.k - 4, Move("first", q)))
    if p.k - 2 >= 5:
        candidates.append((p.g - p.k + 1, p.k - 2, Move("second")))

    for g, k, move in candidates:
        if g < 1:
            continue
        moves = _odd_path(PairGK(g, k), memo)
        if moves is not None:
            memo[p] = moves + [move]
            break

    return memo[p]


def derivation_path(p: PairGK, memo: Optional[Dict[PairGK, Optional[List[Move]]]] = None) -> DerivationPath:
    """A sequence of constructions reaching p from (6,5), searched backwards with larger q tried first"""
    verdict = in_region(p)
    if "prior" in verdict.tags:
        raise NotApplicableError("{0} has L >= 0 and is covered without a construction".format(p))
    if not verdict.constructible:
        raise InvalidParameterError("{0} is outside the covered region".format(p))
    memo = {} if memo is None else memo

    if p.is_odd:
        moves = _odd_path(p, memo)
    else:
        previous = PairGK(p.g - 3 * (p.k - 2) // 2, p.k - 3) if p.g > 3 * (p.k - 2) // 2 else None
        moves = _odd_path(previous, memo) if previous is not None else None
        if moves is not None:
            moves = moves + [Move("third")]

    if moves is None:
        raise SearchFailureError("No construction path reaches {0}".format(p))

    path = DerivationPath(START, moves)
    path.validate()
    logging.getLogger(__name__).info("Path to {0}: {1}".format(p, path))
    return path
