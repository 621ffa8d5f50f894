"""Symbol drivers for the deterministic chaos game.

A driver is an infinite sequence over the alphabet {1..K}.  Concrete
families: the Champernowne concatenation of all finite words, infinite
de Bruijn sequences built by extending noncyclic de Bruijn words, the
two-map block driver with prescribed recovery exponents, and a seeded
random baseline.

Positions are 1-based: symbol(n) is the symbol applied at orbit step n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, InternalInvariantError, ValidationError

DEFAULT_WORD_BUDGET = 2 ** 24
DEFAULT_COVERAGE_CAP = 10 ** 9


@dataclass(frozen=True)
class Word:
    """A finite word over {1..K}."""

    symbols: tuple
    alphabet_size: int

    def __post_init__(self):
        if any(not 1 <= s <= self.alphabet_size for s in self.symbols):
            raise ValidationError("word symbol out of alphabet range")

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]


class DriverStream:
    """Single-consumer cursor over an infinite symbol sequence.

    Already-produced symbols are buffered, so indexing into the prefix is
    stable no matter how far the stream has been advanced.
    """

    def __init__(self, kind: str, alphabet_size: int, generator_factory, params=None):
        self.kind = kind
        self.alphabet_size = alphabet_size
        self.params = dict(params or {})
        self._factory = generator_factory
        self._gen = generator_factory()
        self._buf = []
        self._cursor = 0

    def _fill(self, n: int) -> None:
        while len(self._buf) < n:
            try:
                s = next(self._gen)
            except StopIteration:
                raise CapExceededError(
                    f"driver '{self.kind}' is exhausted after {len(self._buf)} symbols"
                )
            self._buf.append(s)

    def symbol(self, n: int) -> int:
        """Symbol at 1-based position n."""
        if n < 1:
            raise ValidationError("driver positions are 1-based")
        self._fill(n)
        return self._buf[n - 1]

    def prefix(self, n: int) -> np.ndarray:
        """First n symbols, without moving the cursor."""
        self._fill(n)
        return np.asarray(self._buf[:n], dtype=np.int64)

    @property
    def buffered(self) -> int:
        """Number of symbols produced so far (grows monotonically)."""
        return len(self._buf)

    def segment(self, start: int, stop: int) -> np.ndarray:
        """Symbols at 0-based buffer positions [start, stop), cursor untouched."""
        if start < 0 or stop < start:
            raise ValidationError("invalid segment bounds")
        self._fill(stop)
        return np.asarray(self._buf[start:stop], dtype=np.int64)

    def take(self, n: int) -> np.ndarray:
        """Consume and return the next n symbols."""
        self._fill(self._cursor + n)
        out = np.asarray(self._buf[self._cursor:self._cursor + n], dtype=np.int64)
        self._cursor += n
        return out

    def describe(self) -> str:
        if self.params:
            inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            return f"{self.kind}({inner})"
        return self.kind


def literal_driver(word: Word) -> DriverStream:
    """Finite driver; consuming past the end raises CapExceededError."""
    def gen():
        yield from word.symbols

    return DriverStream("literal", word.alphabet_size, gen, {"length": len(word)})


def champernowne(K: int) -> DriverStream:
    """All words of length 1, then length 2, ... each block lexicographic."""
    if K < 2:
        raise ValidationError("Champernowne driver needs alphabet size >= 2")

    def gen():
        for m in itertools.count(1):
            for w in itertools.product(range(1, K + 1), repeat=m):
                yield from w

    return DriverStream("champernowne", K, gen, {"K": K})


def _euler_circuit_symbols(K: int, m: int) -> list:
    """Edge symbols of an Eulerian circuit of the order-(m-1) de Bruijn graph,
    starting at the all-ones node, edges taken in increasing symbol order."""
    V = K ** (m - 1)
    ptr = [0] * V
    stack = [0]
    sym_stack = [0]            # parallel: symbol that led to stack[i]
    path_syms = []
    while stack:
        v = stack[-1]
        if ptr[v] < K:
            s = ptr[v]
            ptr[v] += 1
            stack.append((v * K + s) % V)
            sym_stack.append(s + 1)
        else:
            stack.pop()
            path_syms.append(sym_stack.pop())
    path_syms.reverse()
    return path_syms[1:]  # drop the sentinel for the start node


def de_bruijn_word(K: int, m: int, budget: int = DEFAULT_WORD_BUDGET) -> Word:
    """Noncyclic de Bruijn word of order m: length K^m + m - 1, every
    m-word occurs exactly once as a factor.  Hierholzer on the
    order-(m-1) de Bruijn graph, linearized from the all-ones node."""
    if K < 2 or m < 1:
        raise ValidationError("de Bruijn word needs K >= 2 and m >= 1")
    if K ** m > budget:
        raise CapExceededError(f"de Bruijn order {m} over alphabet {K} exceeds budget")
    edge_syms = _euler_circuit_symbols(K, m)
    symbols = (1,) * (m - 1) + tuple(edge_syms)
    if len(symbols) != K ** m + m - 1:
        raise InternalInvariantError("Eulerian circuit has wrong length")
    return Word(symbols=symbols, alphabet_size=K)


def is_de_bruijn(word: Word, m: int) -> bool:
    """Exhaustive check: every m-word occurs exactly once as a factor."""
    K = word.alphabet_size
    if len(word) != K ** m + m - 1:
        return False
    seen = set()
    code = 0
    mod = K ** m
    for i, s in enumerate(word.symbols):
        code = (code * K + (s - 1)) % mod
        if i >= m - 1:
            if code in seen:
                return False
            seen.add(code)
    return len(seen) == K ** m


def infer_order(word: Word) -> int:
    """Order m with len == K^m + m - 1, validated exhaustively."""
    K = word.alphabet_size
    m = 1
    while K ** m + m - 1 < len(word):
        m += 1
    if K ** m + m - 1 != len(word) or not is_de_bruijn(word, m):
        raise ValidationError("input is not a noncyclic de Bruijn word")
    return m


def alpha(K: int) -> int:
    """de Bruijn extension step: 1 for K >= 3, 2 for K = 2."""
    if K < 2:
        raise ValidationError("alphabet size must be >= 2")
    return 1 if K >= 3 else 2


def _complete_trail(K, V, used, end, start, pref):
    """Eulerian trail end -> start on the leftover de Bruijn multigraph.

    Greedy walk plus cycle splicing along the completion tail only, so
    the forced prefix is never disturbed.  `pref` rotates the symbol
    preference to escape the rare splice dead end.  Returns the symbol
    list or None.
    """
    order = [(pref + s) % K for s in range(K)]

    def walk(v):
        syms = []
        while True:
            s = next((s for s in order if not used[v * K + s]), None)
            if s is None:
                return syms, v
            used[v * K + s] = 1
            syms.append(s + 1)
            v = (v * K + s) % V

    tail, stuck = walk(end)
    if stuck != start:
        return None
    remaining = used.count(0)
    while remaining > 0:
        node = end
        spliced = False
        for i in range(len(tail) + 1):
            if any(not used[node * K + s] for s in range(K)):
                cyc, back = walk(node)
                if back != node or not cyc:
                    return None
                tail[i:i] = cyc
                remaining -= len(cyc)
                spliced = True
                break
            if i < len(tail):
                node = (node * K + (tail[i] - 1)) % V
        if not spliced:
            return None
    return tail


def extend_de_bruijn(word: Word, K: int, budget: int = DEFAULT_WORD_BUDGET) -> Word:
    """Extend a de Bruijn word of order m to one of order m + alpha(K),
    keeping the input as a prefix.

    The input spells a trail of forced edges in the order-(M-1) de Bruijn
    graph for M = m + alpha(K); the remainder is an Eulerian trail of the
    leftover multigraph, found by a greedy walk plus cycle splicing.
    """
    if word.alphabet_size != K:
        raise ValidationError("alphabet mismatch")
    m = infer_order(word)
    M = m + alpha(K)
    if K ** M > budget:
        raise CapExceededError(f"extension to order {M} exceeds budget")
    V = K ** (M - 1)
    mod_node = V

    def node_of(symbols):
        code = 0
        for s in symbols:
            code = code * K + (s - 1)
        return code

    start = node_of(word.symbols[:M - 1])
    # Remove the forced edges spelled by the input.
    used = [0] * (V * K)
    node = start
    for s in word.symbols[M - 1:]:
        e = node * K + (s - 1)
        if used[e]:
            raise InternalInvariantError("forced edge repeated; input not de Bruijn")
        used[e] = 1
        node = (node * K + (s - 1)) % mod_node
    end = node

    tail = None
    for pref in range(K):
        tail = _complete_trail(K, V, list(used), end, start, pref)
        if tail is not None:
            break
    if tail is None:
        raise InternalInvariantError("extension not found")
    out = Word(symbols=word.symbols + tuple(tail), alphabet_size=K)
    if len(out) != K ** M + M - 1 or not is_de_bruijn(out, M):
        raise InternalInvariantError("extension not found")
    return out


def infinite_de_bruijn(K: int, budget: int = DEFAULT_WORD_BUDGET) -> DriverStream:
    """Inductive limit of extending de Bruijn words.

    Realized orders: 1, 2, 3, ... for K >= 3; 2, 4, 6, ... for K = 2.
    Once an extension would exceed the budget the stream continues with
    the Champernowne concatenation so it stays infinite.
    """
    if K < 2:
        raise ValidationError("alphabet size must be >= 2")

    def gen():
        w = de_bruijn_word(K, 1 if K >= 3 else 2)
        yield from w.symbols
        while True:
            order = infer_order(w) + alpha(K)
            if K ** order > budget:
                break
            w2 = extend_de_bruijn(w, K, budget=budget)
            yield from w2.symbols[len(w):]
            w = w2
        # Disjunctive tail beyond the realized orders.
        for m in itertools.count(1):
            for u in itertools.product(range(1, K + 1), repeat=m):
                yield from u

    return DriverStream("de_bruijn_infinite", K, gen, {"K": K})


def example4_k0(z: float, window: int = 64) -> int:
    """Smallest admissible k_0 = max(k_1, k_2) for the block driver.

    Checks each condition on [k, k+window]; 2^{kz}/k is eventually
    increasing, so a clean window certifies the tail (adequate for
    z >= 0.1).
    """
    if z <= 0:
        raise ValidationError("block driver exponent must be positive")
    def holds_k1(k):
        return all(j < 2.0 ** (j * z) for j in range(k, k + window))

    def holds_k2(k):
        bar = 1.0 / (2.0 ** z - 1.0)
        return all((j + 1) * 2.0 ** (j * z) > bar for j in range(k, k + window))

    k1 = next(k for k in itertools.count(1) if holds_k1(k))
    k2 = next(k for k in itertools.count(1) if holds_k2(k))
    return max(k1, k2)


def example4_block_start(k: int, z: float) -> int:
    return int(np.floor(k * 2.0 ** (k * z)))


def example4_driver(z: float) -> DriverStream:
    """Two-symbol driver: runs of k ones starting at floor(k 2^{kz}) for
    each k >= 2 k_0, symbol 2 everywhere else."""
    k0 = example4_k0(z)

    def gen():
        k = 2 * k0
        start = example4_block_start(k, z)
        n = 1
        while True:
            if n < start:
                yield 2
            elif n < start + k:
                yield 1
            else:
                k += 1
                nxt = example4_block_start(k, z)
                if nxt <= start + k - 1:
                    raise InternalInvariantError("block overlap in block driver")
                start = nxt
                continue
            n += 1

    return DriverStream("example4", 2, gen, {"z": z, "k0": k0})


def random_driver(K: int, seed: int) -> DriverStream:
    """IID uniform symbols from a seeded PCG64 generator."""
    if K < 1:
        raise ValidationError("alphabet size must be >= 1")

    def gen():
        rng = np.random.default_rng(seed)
        while True:
            for s in rng.integers(1, K + 1, size=4096):
                yield int(s)

    return DriverStream("random", K, gen, {"K": K, "seed": seed})


@dataclass(frozen=True)
class CoverageStat:
    """First prefix length containing every word of length m, if under cap."""

    m: int
    n_of_m: int | None
    cap: int

    @property
    def exceeded(self) -> bool:
        return self.n_of_m is None


def word_coverage(driver: DriverStream, m: int, cap: int = DEFAULT_COVERAGE_CAP,
                  budget: int = DEFAULT_WORD_BUDGET) -> CoverageStat:
    """Sliding-window scan for the least n whose prefix contains all K^m words."""
    if m < 1:
        raise ValidationError("word length must be >= 1")
    K = driver.alphabet_size
    total = K ** m
    if total > budget:
        raise CapExceededError(f"K^m = {total} exceeds the tracking budget")
    seen = bytearray(total)
    found = 0
    code = 0
    chunk = 8192
    pos = 0
    while pos < cap:
        take = min(chunk, cap - pos)
        syms = driver.prefix(pos + take)[pos:pos + take]
        for s in syms:
            pos += 1
            code = (code * K + (int(s) - 1)) % total
            if pos >= m and not seen[code]:
                seen[code] = 1
                found += 1
                if found == total:
                    return CoverageStat(m=m, n_of_m=pos, cap=cap)
    return CoverageStat(m=m, n_of_m=None, cap=cap)


def champernowne_coverage_bound(K: int, m: int) -> int:
    """Closed-form upper bound sum_{j<=m} j K^j = (K - K^{m+1}(m+1) + m K^{m+2}) / (K-1)^2."""
    num = K - K ** (m + 1) * (m + 1) + m * K ** (m + 2)
    den = (K - 1) ** 2
    if num % den:
        raise InternalInvariantError("coverage bound is not integral")
    return num // den
