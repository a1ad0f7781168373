"""Probability spectra, Schmidt numbers, subspace weights and sweep crossings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError
from .spectra import HGSpectrum, LGSpectrum, Sweep, refine_crossing


@dataclass
class ProbabilitySpectrum:
    """Normalized |C|^2 over a window; ``indices[j]`` labels ``probs[j]``."""

    basis: str
    indices: np.ndarray
    probs: np.ndarray
    window: tuple

    def entries(self):
        return [(tuple(int(v) for v in idx), float(p)) for idx, p in zip(self.indices, self.probs)]

    def as_dict(self) -> dict:
        return dict(self.entries())


@dataclass(frozen=True)
class SchmidtNumber:
    value: float
    # only populated for count data with shot noise
    uncertainty: float | None = None

    def __float__(self) -> float:
        return self.value


def normalize(spectrum: LGSpectrum | HGSpectrum) -> ProbabilitySpectrum:
    keys, amps = zip(*spectrum.entries())
    weights = np.abs(np.array(amps)) ** 2
    total = weights.sum()
    if not total > 0:
        raise DegenerateStateError("spectrum has no nonzero entries")
    if isinstance(spectrum, LGSpectrum):
        window = (spectrum.l_max,)
    else:
        window = (spectrum.m_max, spectrum.n_max)
    return ProbabilitySpectrum(spectrum.basis, np.array(keys), weights / total, window)


def schmidt_number(p: ProbabilitySpectrum | np.ndarray) -> SchmidtNumber:
    """Inverse participation ratio K = 1 / sum p_j**2 of the window.

    Unnormalized weights are accepted and rescaled first.
    """
    probs = p.probs if isinstance(p, ProbabilitySpectrum) else np.asarray(p, dtype=float)
    total = probs.sum()
    if not total > 0:
        raise DegenerateStateError("spectrum has no nonzero entries")
    probs = probs / total
    return SchmidtNumber(float(1.0 / np.sum(probs**2)))


def subspace_weights(p: ProbabilitySpectrum) -> tuple[float, float]:
    """Probability on the l_s + l_i = +1 and -1 diagonals of an LG spectrum."""
    if p.basis != "lg":
        raise ValueError("subspace weights are defined for LG spectra")
    total = p.indices.sum(axis=1)
    w_plus = float(p.probs[total == 1].sum())
    w_minus = float(p.probs[total == -1].sum())
    return w_plus, w_minus


def crossing_points(sweep: Sweep, pair_a=None, pair_b=None) -> list[float]:
    """HWP1 angles where the curves of ``pair_a`` and ``pair_b`` are equal.

    Sign changes (and exact ties) of the difference are located on the
    sweep grid and then refined on the closed form by Brent's method.
    Defaults to the first two curves.
    """
    if len(sweep.pairs) < 2:
        raise ValueError("crossing points need at least two curves")
    pair_a = tuple(pair_a) if pair_a is not None else sweep.pairs[0]
    pair_b = tuple(pair_b) if pair_b is not None else sweep.pairs[1]
    diff = sweep.column(pair_a) - sweep.column(pair_b)
    scale = max(np.max(np.abs(sweep.column(pair_a))), np.max(np.abs(sweep.column(pair_b))), 1e-300)
    tie = np.abs(diff) <= 1e-13 * scale
    roots = []
    t = sweep.thetas
    for j in range(len(t)):
        if tie[j]:
            # curves that coincide over an interval have no isolated crossing
            if not ((j > 0 and tie[j - 1]) or (j + 1 < len(t) and tie[j + 1])):
                roots.append(float(t[j]))
        elif j + 1 < len(t) and not tie[j + 1] and np.sign(diff[j]) != np.sign(diff[j + 1]):
            roots.append(float(refine_crossing(sweep, pair_a, pair_b, t[j], t[j + 1])))
    return roots
