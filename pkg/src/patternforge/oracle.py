"""Independent counting oracles for factor avoidance.

Two routes that share no code with the tree construction: exhaustive
enumeration (with a budget guard) and a failure-function automaton driving
an exact dynamic program over (ones, zeros, state) with Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .words import Pattern

__all__ = [
    "BudgetExceeded",
    "FactorAutomaton",
    "build_automaton",
    "brute_force",
    "count_avoiding",
    "level_count",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True, slots=True)
class FactorAutomaton:
    """Match automaton for one factor: state = longest factor prefix that is
    a suffix of the input; the last state is absorbing (factor seen)."""

    factor: str
    transitions: tuple[tuple[int, int], ...]  # state -> (on '0', on '1')

    @property
    def dead(self) -> int:
        return len(self.factor)

    def step(self, state: int, bit: str) -> int:
        return self.transitions[state][1 if bit == "1" else 0]

    def scan(self, word: str) -> bool:
        """True when word avoids the factor."""
        state = 0
        dead = self.dead
        for bit in word:
            state = self.transitions[state][1 if bit == "1" else 0]
            if state == dead:
                return False
        return True


def build_automaton(pattern: Pattern) -> FactorAutomaton:
    f = pattern.factor
    n = len(f)
    # classic prefix-function table
    pi = [0] * n
    for t in range(1, n):
        q = pi[t - 1]
        while q and f[t] != f[q]:
            q = pi[q - 1]
        pi[t] = q + 1 if f[t] == f[q] else 0

    def delta(s: int, c: str) -> int:
        while True:
            if s < n and f[s] == c:
                return s + 1
            if s == 0:
                return 0
            s = pi[s - 1]

    rows = [(delta(s, "0"), delta(s, "1")) for s in range(n)]
    rows.append((n, n))  # absorbing
    return FactorAutomaton(f, tuple(rows))


def brute_force(pattern: Pattern, ones: int, budget: int = DEFAULT_BUDGET) -> list[str]:
    """Every avoiding word with exactly `ones` rises and at most that many
    falls, sorted by (length, lexicographic)."""
    total = sum(comb(ones + m, m) for m in range(ones + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} candidate words exceed budget {budget}")
    factor = pattern.factor
    out = []
    for m in range(ones + 1):
        length = ones + m
        for zero_pos in combinations(range(length), m):
            bits = ["1"] * length
            for p in zero_pos:
                bits[p] = "0"
            word = "".join(bits)
            if factor not in word:
                out.append(word)
    out.sort(key=lambda w: (len(w), w))
    return out


def count_avoiding(pattern: Pattern, ones: int, zeros: int) -> int:
    """Exact number of avoiding words with the given step counts."""
    aut = build_automaton(pattern)
    dead = aut.dead
    width = dead  # live states 0..dead-1
    # dp[o][s] for the current zero count; zeros iterate in the outer loop
    dp = [[0] * width for _ in range(ones + 1)]
    dp[0][0] = 1
    for o in range(ones):
        for s, c in enumerate(dp[o]):
            if c:
                s2 = aut.transitions[s][1]
                if s2 != dead:
                    dp[o + 1][s2] += c
    for _z in range(zeros):
        nxt = [[0] * width for _ in range(ones + 1)]
        for o in range(ones + 1):
            row = dp[o]
            for s, c in enumerate(row):
                if c:
                    s2 = aut.transitions[s][0]
                    if s2 != dead:
                        nxt[o][s2] += c
            if o < ones:
                for s, c in enumerate(nxt[o]):
                    if c:
                        s2 = aut.transitions[s][1]
                        if s2 != dead:
                            nxt[o + 1][s2] += c
        dp = nxt
    return sum(dp[ones])


def level_count(pattern: Pattern, ones: int) -> int:
    """Total avoiding words with exactly `ones` rises over all legal fall counts."""
    return sum(count_avoiding(pattern, ones, m) for m in range(ones + 1))
