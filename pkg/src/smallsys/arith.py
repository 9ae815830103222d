"""Adjoint traces over word balls, trace-field detection in the tower
Q < k < K = k(sqrt a), integrality scans, and the certificate combining
them: a subgroup sample with trace field k inside an ambient sample with
trace field K rules out quasi-arithmeticity of the ambient group.

The adjoint trace of an isometry is realized as the exterior-square trace
((tr M)^2 - tr M^2) / 2.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction

from .exactfield import KElem, TowerContext, as_tower_coords, is_square_in_k
from .lorentz import Isometry, QuadForm
from .polyalg import QuadAlgNum, is_algebraic_integer, minpoly_over_Q

DENSITY_CAVEAT = ("Zariski density of the word samples is asserted, "
                  "not verified.")


def adjoint_trace(m: Isometry):
    """((tr M)^2 - tr M^2) / 2, exact; equals the trace of M acting on the
    second exterior power."""
    t = m.trace()
    t2 = (m * m).trace()
    return (t * t - t2) / 2


def exterior_square_trace(m: Isometry):
    """Brute-force pairing oracle: sum over i < j of the 2x2 principal-minor
    pairings M_ii M_jj - M_ij M_ji."""
    e = m.entries
    size = len(e)
    total = None
    for i in range(size):
        for j in range(i + 1, size):
            term = e[i][i] * e[j][j] - e[i][j] * e[j][i]
            total = term if total is None else total + term
    return total


def conjugate_between_forms(m: Isometry, a) -> Isometry:
    """D M D^{-1} with D = diag(sqrt a, 1, ..., 1): carries an isometry of
    diag(a, 1, ..., 1, -rt2) to one of the unit-coefficient form, with
    entries in the tower k(sqrt a)."""
    a = Fraction(a)
    n = m.form.n
    if m.form != QuadForm.standard(KElem(a), n):
        raise ValueError("matrix is not an isometry of diag(a, 1, ..., 1, -rt2)")
    ctx = TowerContext.from_rational(a)
    root = ctx.sqrt_gen()
    one = ctx.from_k(1)
    d = [root] + [one] * n
    entries = tuple(tuple(d[i] * m.entries[i][j] / d[j] for j in range(n + 1))
                    for i in range(n + 1))
    return Isometry(entries, QuadForm.standard(1, n))


def tower_value_as_quadratic(x) -> QuadAlgNum:
    """View u + v*sqrt(a) (u, v in k) as the chosen root of
    t^2 - 2u t + (u^2 - a v^2)."""
    u, v = as_tower_coords(x)
    if not v:
        return QuadAlgNum.from_kelem(u)
    a = x.ctx.radicand
    branch = v.sign()
    return QuadAlgNum(2 * u, u * u - a * v * v, branch)


# ---------------------------------------------------------------------------
# word samples
# ---------------------------------------------------------------------------

class GroupSample:
    """Finitely many verified isometries of one form, sampled over reduced
    words up to a fixed length."""

    __slots__ = ("generators", "word_length")

    def __init__(self, generators, word_length: int = 4):
        generators = tuple(generators)
        if not generators:
            raise ValueError("need at least one generator")
        if word_length < 1:
            raise ValueError("word_length must be at least 1")
        form = generators[0].form
        for g in generators:
            if not isinstance(g, Isometry):
                raise TypeError("generators must be verified isometries")
            if g.form != form:
                raise ValueError("generators live on different forms")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "word_length", word_length)

    def __setattr__(self, *_):
        raise AttributeError("GroupSample is immutable")

    @property
    def form(self) -> QuadForm:
        return self.generators[0].form

    def words(self):
        """Reduced words as tuples of nonzero signed generator indices,
        by length then lexicographically; the empty word is skipped."""
        letters = []
        for i in range(1, len(self.generators) + 1):
            letters.extend((i, -i))
        frontier = [()]
        for _ in range(self.word_length):
            nxt = []
            for w in frontier:
                for ltr in letters:
                    if w and w[-1] == -ltr:
                        continue
                    nw = w + (ltr,)
                    nxt.append(nw)
                    yield nw
            frontier = nxt

    def evaluate(self, word) -> Isometry:
        out = None
        for ltr in word:
            g = self.generators[abs(ltr) - 1]
            if ltr < 0:
                g = g.inverse()
            out = g if out is None else out * g
        if out is None:
            return Isometry.identity(self.form)
        return out


def word_to_text(word) -> str:
    """Letters a, b, ... for generators; A, B, ... for inverses."""
    out = []
    for ltr in word:
        idx = abs(ltr) - 1
        ch = string.ascii_lowercase[idx]
        out.append(ch.upper() if ltr < 0 else ch)
    return "".join(out)


@dataclass(frozen=True)
class FieldDescriptor:
    """Smallest level of Q < k < K containing every sampled adjoint trace,
    with one witness per proper field generator present."""
    level: str                                   # "Q" | "k" | "K"
    witnesses: tuple = ()                        # ((word_text, trace), ...)


def trace_field_sample(sample: GroupSample) -> FieldDescriptor:
    k_witness = None
    tower_witness = None
    for word in sample.words():
        tr = adjoint_trace(sample.evaluate(word))
        u, v = as_tower_coords(tr)
        if v and tower_witness is None:
            tower_witness = (word_to_text(word), tr)
        if u.b and k_witness is None:
            k_witness = (word_to_text(word), tr)
        if k_witness and tower_witness:
            break
    if tower_witness:
        wits = tuple(w for w in (k_witness, tower_witness) if w)
        return FieldDescriptor("K", wits)
    if k_witness:
        return FieldDescriptor("k", (k_witness,))
    return FieldDescriptor("Q")


def integrality_scan(sample: GroupSample):
    """All sampled words whose adjoint trace is not an algebraic integer,
    as (word_text, trace, monic minimal polynomial) triples."""
    out = []
    for word in sample.words():
        tr = adjoint_trace(sample.evaluate(word))
        mp = minpoly_over_Q(tower_value_as_quadratic(tr))
        if not mp.is_integral():
            out.append((word_to_text(word), tr, mp))
    return out


@dataclass(frozen=True)
class NonQAReport:
    passed: bool
    a: Fraction
    subgroup_level: str
    ambient_level: str
    failures: tuple = ()
    notes: tuple = (DENSITY_CAVEAT,)

    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def non_qa_certificate(a, subgroup_field: FieldDescriptor,
                       ambient_field: FieldDescriptor) -> NonQAReport:
    """PASS exactly when the subgroup sample has trace field k, the ambient
    sample has trace field K, and a is a positive non-square in k; each
    broken link is named otherwise."""
    a = Fraction(a)
    failures = []
    if subgroup_field.level != "k":
        failures.append(f"subgroup trace field is {subgroup_field.level}, expected k")
    if ambient_field.level != "K":
        failures.append(f"ambient trace field is {ambient_field.level}, expected K")
    if a <= 0:
        failures.append(f"a = {a} is not positive")
    else:
        square, _ = is_square_in_k(KElem(a))
        if square:
            failures.append(f"a = {a} is a square in k")
    return NonQAReport(passed=not failures, a=a,
                       subgroup_level=subgroup_field.level,
                       ambient_level=ambient_field.level,
                       failures=tuple(failures))


def certificate_json(report: NonQAReport, subgroup_field: FieldDescriptor,
                     ambient_field: FieldDescriptor, scan=()) -> dict:
    """Machine-readable certificate: instance parameters, field levels,
    witness words, exact traces, minimal-polynomial coefficient lists, and
    the verdict."""

    def witness_entries(fd):
        return [{"word": w, "trace": str(t)} for w, t in fd.witnesses]

    return {
        "instance": {"a": str(report.a)},
        "field_levels": {"subgroup": subgroup_field.level,
                         "ambient": ambient_field.level},
        "witnesses": {"subgroup": witness_entries(subgroup_field),
                      "ambient": witness_entries(ambient_field)},
        "nonintegral_traces": [
            {"word": w, "trace": str(t),
             "minpoly": [str(c) for c in mp.coeffs]}
            for w, t, mp in scan],
        "notes": list(report.notes),
        "verdict": report.verdict(),
    }


def palindromic_transfer_check(mu: QuadAlgNum, n: int) -> bool:
    """Whether integrality transfers between mu and mu + 1/mu + (n - 1),
    i.e. the two integrality verdicts agree."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if not mu.norm:
        raise ValueError("mu must be invertible")
    lo = mu.numeric(96).lo
    if lo <= 1:
        raise ValueError("mu must exceed 1")
    # mu + 1/mu = (1 - 1/norm) mu + trace/norm, an affine image over k
    shifted = mu.affine(KElem(1) - KElem(1) / mu.norm,
                        mu.trace / mu.norm + KElem(n - 1))
    return is_algebraic_integer(shifted) == is_algebraic_integer(mu)
