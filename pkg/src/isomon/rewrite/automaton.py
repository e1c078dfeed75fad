"""Counting words that avoid a set of factors (Aho-Corasick automaton)."""

from __future__ import annotations

from collections import deque
from typing import Sequence, Union

INFINITE = "infinite"


class FactorAutomaton:
    """Deterministic automaton recognising words containing some pattern."""

    def __init__(self, patterns: Sequence[str], alphabet: Sequence[str]):
        self.alphabet = list(alphabet)
        self.goto: list[dict[str, int]] = [{}]
        self.dead: list[bool] = [False]
        for pat in patterns:
            s = 0
            for ch in pat:
                nxt = self.goto[s].get(ch)
                if nxt is None:
                    nxt = len(self.goto)
                    self.goto.append({})
                    self.dead.append(False)
                    self.goto[s][ch] = nxt
                s = nxt
            self.dead[s] = True
        fail = [0] * len(self.goto)
        self.delta: list[dict[str, int]] = [dict() for _ in self.goto]
        queue = deque()
        for ch in self.alphabet:
            t = self.goto[0].get(ch, 0)
            self.delta[0][ch] = t
            if t:
                fail[t] = 0
                queue.append(t)
        while queue:
            s = queue.popleft()
            self.dead[s] = self.dead[s] or self.dead[fail[s]]
            for ch in self.alphabet:
                t = self.goto[s].get(ch)
                if t is None:
                    self.delta[s][ch] = self.delta[fail[s]][ch]
                else:
                    fail[t] = self.delta[fail[s]][ch]
                    self.delta[s][ch] = t
                    queue.append(t)
        if any(len(p) == 0 for p in patterns):
            self.dead[0] = True

    def count_avoiding(self) -> Union[int, str]:
        """Number of words with no pattern as a factor, or ``"infinite"``."""
        if self.dead[0]:
            return 0
        live = [not d for d in self.dead]
        # iterative DFS with colours for cycle detection and post-order counting
        WHITE, GREY, BLACK = 0, 1, 2
        colour = [WHITE] * len(live)
        count = [0] * len(live)
        stack = [(0, iter(self.alphabet))]
        colour[0] = GREY
        while stack:
            s, it = stack[-1]
            advanced = False
            for ch in it:
                t = self.delta[s][ch]
                if not live[t]:
                    continue
                if colour[t] == GREY:
                    return INFINITE
                if colour[t] == WHITE:
                    colour[t] = GREY
                    stack.append((t, iter(self.alphabet)))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            colour[s] = BLACK
            count[s] = 1 + sum(count[self.delta[s][ch]] for ch in self.alphabet if live[self.delta[s][ch]])
        return count[0]

    def enumerate_avoiding(self, limit: int = 10**6) -> list[str]:
        out = []
        queue = deque([(0, "")])
        while queue:
            s, w = queue.popleft()
            out.append(w)
            if len(out) > limit:
                raise OverflowError("too many irreducible words")
            for ch in self.alphabet:
                t = self.delta[s][ch]
                if not self.dead[t]:
                    queue.append((t, w + ch))
        return out
