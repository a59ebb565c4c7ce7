"""Identity sweeps over coefficient boxes, shared by the CLI and the test-suite."""
import itertools
import random
from dataclasses import dataclass, field
from functools import partial

from .exact_arith import det_exact
from .parallel import ordered_map
from .resultant import (
    IntPoly,
    QuadTriple,
    d_seq,
    lemma21_witness,
    lemma22_value,
    power_sum,
    resultant,
    resultant_cubic_expanded,
    tridiagonal,
)

CHUNK = 1000


@dataclass
class SweepConfig:
    samples: int = 10_000
    degrees: tuple = (3, 5)
    box: int = 9
    seed: int = 0
    jobs: int = 1


@dataclass
class SweepResult:
    name: str
    passed: int = 0
    failed: int = 0
    singular: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.failed == 0

    def merge(self, other):
        self.passed += other.passed
        self.failed += other.failed
        self.singular += other.singular
        self.failures.extend(other.failures)
        return self


def _two_term_chunk(chunk, cfg):
    # per-chunk seed: results do not depend on how chunks are spread over workers
    rng = random.Random(f"{cfg.seed}:{chunk}")
    out = SweepResult("two_term")
    count = min(CHUNK, cfg.samples - chunk * CHUNK)
    for _ in range(count):
        n = rng.choice(cfg.degrees)
        R = IntPoly([rng.randint(-cfg.box, cfg.box) for _ in range(n + 1)])
        Q = QuadTriple(*(rng.randint(-cfg.box, cfg.box) for _ in range(3)))
        i = rng.randint(1, n)
        j = rng.randint(i + 1, n + 1)
        w = lemma21_witness(R, Q, i, j)
        if w is None:
            out.singular += 1
            continue
        if lemma22_value(Q, n, i, j, w.X, w.Y) == resultant(R, Q):
            out.passed += 1
        else:
            out.failed += 1
            out.failures.append((R.coeffs, tuple(Q), i, j))
    return out


def two_term_sweep(cfg):
    """Random (R, Q, i, j): the two-term witness formula must reproduce det M exactly."""
    chunks = range((cfg.samples + CHUNK - 1) // CHUNK)
    total = SweepResult("two_term")
    for part in ordered_map(partial(_two_term_chunk, cfg=cfg), chunks, cfg.jobs):
        total.merge(part)
    return total


def _cubic_slice(a, box):
    out = SweepResult("cubic_expansion")
    rng = range(-box, box + 1)
    for b, c in itertools.product(rng, rng):
        Q = QuadTriple(a, b, c)
        for r in itertools.product(rng, repeat=4):
            if resultant(IntPoly(r), Q) == resultant_cubic_expanded(Q, r):
                out.passed += 1
            else:
                out.failed += 1
                out.failures.append((tuple(Q), r))
    return out


def cubic_expansion_sweep(box=2, jobs=1):
    """Closed-form quintic vs the 5x5 determinant, all |a|,|b|,|c|,|r_i| <= box, a != 0."""
    avals = [a for a in range(-box, box + 1) if a]
    total = SweepResult("cubic_expansion")
    for part in ordered_map(partial(_cubic_slice, box=box), avals, jobs):
        total.merge(part)
    return total


def _dseq_slice(a, box, kmax):
    out = SweepResult("d_seq")
    rng = range(-box, box + 1)
    for b, c in itertools.product(rng, rng):
        Q = QuadTriple(a, b, c)
        ds = d_seq(Q, kmax)
        for k in range(1, kmax + 1):
            ok = ds[k] == det_exact(tridiagonal(Q, k))
            if k >= 2:
                ok = ok and ds[k] - a * c * ds[k - 2] == power_sum(Q, k)
            if ok:
                out.passed += 1
            else:
                out.failed += 1
                out.failures.append((tuple(Q), k))
    return out


def d_seq_sweep(box=6, kmax=12, jobs=1):
    """Recurrence = tridiagonal determinant, and d_k - ac d_{k-2} = power sum."""
    total = SweepResult("d_seq")
    for part in ordered_map(partial(_dseq_slice, box=box, kmax=kmax), range(-box, box + 1), jobs):
        total.merge(part)
    return total


def _xn_slice(a, box, degrees):
    out = SweepResult("x_power")
    rng = range(-box, box + 1)
    for b, c in itertools.product(rng, rng):
        Q = QuadTriple(a, b, c)
        for n in degrees:
            if resultant(IntPoly((1,) + (0,) * n), Q) == c**n:
                out.passed += 1
            else:
                out.failed += 1
                out.failures.append((tuple(Q), n))
    return out


def x_power_sweep(degrees=(3, 5, 7), box=10, jobs=1):
    """Res(x^n, ax^2 + bx + c) = c^n."""
    total = SweepResult("x_power")
    for part in ordered_map(partial(_xn_slice, box=box, degrees=tuple(degrees)), range(-box, box + 1), jobs):
        total.merge(part)
    return total


def run_all(cfg):
    return [
        two_term_sweep(cfg),
        cubic_expansion_sweep(2, cfg.jobs),
        d_seq_sweep(6, 12, cfg.jobs),
        x_power_sweep((3, 5, 7), 10, cfg.jobs),
    ]
