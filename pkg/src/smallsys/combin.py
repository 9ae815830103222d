"""Balanced cyclic sequences over {1, 2} up to dihedral symmetry, Burnside
cross-counts, glued-geodesic length accounting, the hybrid systole lower
bound, and the epsilon budget for the incommensurable-family construction.
"""

from __future__ import annotations

import math


class CyclicBinarySeq:
    """A cyclic word over {1, 2}; canonical form is the lexicographic minimum
    over all rotations and reflections."""

    __slots__ = ("word",)

    def __init__(self, word):
        word = "".join(str(c) for c in word)
        if not word or any(ch not in "12" for ch in word):
            raise ValueError(f"word must be nonempty over {{1,2}}, got {word!r}")
        object.__setattr__(self, "word", word)

    def __setattr__(self, *_):
        raise AttributeError("CyclicBinarySeq is immutable")

    def __len__(self):
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, CyclicBinarySeq) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return self.word < other.word

    def __str__(self):
        return self.word

    def __repr__(self):
        return f"CyclicBinarySeq({self.word!r})"

    def is_balanced(self) -> bool:
        return len(self) % 2 == 0 and self.word.count("1") == len(self) // 2

    def dihedral_images(self):
        w = self.word
        for r in range(len(w)):
            rot = w[r:] + w[:r]
            yield rot
            yield rot[::-1]

    def is_canonical(self) -> bool:
        return all(self.word <= img for img in self.dihedral_images())


def canonical_form(seq: CyclicBinarySeq) -> CyclicBinarySeq:
    """Lexicographic minimum over the 2L dihedral images; idempotent."""
    return CyclicBinarySeq(min(seq.dihedral_images()))


def _balanced_words_lex(length: int):
    """Balanced words of the given length in lexicographic order."""
    half = length // 2
    word = [1] * half + [2] * half
    while True:
        yield "".join(map(str, word))
        # next multiset permutation
        i = length - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return
        j = length - 1
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1:] = reversed(word[i + 1:])


def enumerate_balanced_bracelets(length: int):
    """All canonical balanced sequences, sorted; the count matches
    burnside_count(length)."""
    if length % 2 != 0 or length < 2:
        raise ValueError("length must be a positive even number")
    out = [CyclicBinarySeq(w) for w in _balanced_words_lex(length)
           if CyclicBinarySeq(w).is_canonical()]
    return out


def burnside_count(length: int) -> int:
    """Number of balanced bracelets: average over the dihedral group of the
    balanced words fixed by each symmetry.

    A rotation with g = gcd(j, L) cycles fixes C(g, g/2) balanced words when
    g is even.  Reflections split by axis type: through two positions
    (two fixed letters, (L-2)/2 swaps) or through none (L/2 swaps).
    """
    if length % 2 != 0 or length < 2:
        raise ValueError("length must be a positive even number")
    L = length
    total = 0
    for j in range(L):
        g = math.gcd(j, L)
        if g % 2 == 0:
            total += math.comb(g, g // 2)
    pairs_vertex = (L - 2) // 2
    vertex_fixed = 0
    for ones_fixed in (0, 1, 2):
        need = L // 2 - ones_fixed
        if need % 2 == 0 and 0 <= need // 2 <= pairs_vertex:
            ways = 1 if ones_fixed in (0, 2) else 2
            vertex_fixed += ways * math.comb(pairs_vertex, need // 2)
    total += (L // 2) * vertex_fixed
    pairs_edge = L // 2
    if (L // 2) % 2 == 0:
        total += (L // 2) * math.comb(pairs_edge, L // 4)
    return total // (2 * L)


def select_inequivalent(m: int):
    """The first m balanced canonical sequences of length 2^m in
    lexicographic order; lazily enumerated so large lengths stay cheap."""
    if m < 1:
        raise ValueError("m must be at least 1")
    length = 2 ** m
    if burnside_count(length) < m:
        raise AssertionError("fewer balanced bracelets than requested; "
                             "counting bug")
    out = []
    for w in _balanced_words_lex(length):
        seq = CyclicBinarySeq(w)
        if seq.is_canonical():
            out.append(seq)
            if len(out) == m:
                return out
    raise AssertionError("lexicographic scan exhausted early; counting bug")


def glued_geodesic_length(seq: CyclicBinarySeq, len1: float, len2: float) -> float:
    """Total length of the glued closed geodesic: each letter contributes the
    doubled orthogeodesic of its piece, sum over the cyclic word."""
    if len1 <= 0 or len2 <= 0:
        raise ValueError("lengths must be positive")
    per = {"1": 2.0 * len1, "2": 2.0 * len2}
    return sum(per[ch] for ch in seq.word)


def hybrid_systole_lower_bound(sys1: float, sys2: float) -> float:
    """min over the contained-in-one-piece and crossing cases:
    min(s1, s2, (s1 + s2)/2)."""
    if sys1 <= 0 or sys2 <= 0:
        raise ValueError("systoles must be positive")
    return min(sys1, sys2, (sys1 + sys2) / 2)


def epsilon_budget(m: int, eps_2n: float) -> float:
    """2^(-m) * min(1/m, eps_2n)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if eps_2n <= 0:
        raise ValueError("eps_2n must be positive")
    return 2.0 ** -m * min(1.0 / m, eps_2n)
