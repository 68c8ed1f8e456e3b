"""
Rational classification of the effective Planck constant.

A quantum resonance occurs at hbar_eff = 4*pi*r/s with r and s coprime. The
classifier walks the continued-fraction convergents of hbar_eff/(4*pi) and
accepts the first one with a small enough denominator that reproduces
hbar_eff within tolerance.
"""
from dataclasses import dataclass
from math import floor, gcd

import numpy as np

FOURPI = 4 * np.pi

S_MAX = 100
TOL_ABS = 1e-9

# stop expanding once the remainder is pure float noise
_REMAINDER_EPS = 1e-12


@dataclass(frozen=True)
class ResonanceLabel:
    r: int = None
    s: int = None

    @property
    def resonant(self):
        return self.r is not None

    def as_tuple(self):
        return (self.r, self.s) if self.resonant else None

    def __str__(self):
        return f"({self.r},{self.s})" if self.resonant else "non-resonant"


NON_RESONANT = ResonanceLabel()

# hbar/pi -> (r, s) reference labels as published
_PUBLISHED = [
    (0.6, (3, 20)),
    (0.7, (7, 40)),
    (0.75, (1, 16)),
    (1.125, (9, 32)),
    (1.5, (3, 8)),
    (1.55, (31, 80)),
    (2.625, (21, 32)),
    (3.3, (33, 40)),
]


def convergents(y, max_terms=64):
    """Yield the continued-fraction convergents (p, q) of a nonnegative y"""
    p_prev, p = 1, floor(y)
    q_prev, q = 0, 1
    yield p, q
    frac = y - floor(y)
    for _ in range(max_terms):
        if frac < _REMAINDER_EPS:
            return
        y = 1 / frac
        a = floor(y)
        frac = y - a
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def classify_resonance(hbar_eff, s_max=S_MAX, tol_abs=TOL_ABS):
    """
    Classify hbar_eff as a quantum resonance 4*pi*r/s or as non-resonant.

    :param hbar_eff: effective Planck constant, > 0
    :param s_max: largest denominator accepted
    :param tol_abs: absolute tolerance on |hbar_eff - 4*pi*r/s|
    :raises ValueError: if hbar_eff is not positive
    :returns: ResonanceLabel
    """
    if not hbar_eff > 0:
        raise ValueError(f"hbar_eff must be > 0, got {hbar_eff}")

    for p, q in convergents(hbar_eff / FOURPI):
        if q > s_max:
            break
        if p == 0:
            continue
        if abs(hbar_eff - FOURPI * p / q) <= tol_abs:
            g = gcd(p, q)
            return ResonanceLabel(p // g, q // g)
    return NON_RESONANT


def published_labels():
    """(hbar/pi, (r, s)) pairs as published, including the inconsistent one"""
    return list(_PUBLISHED)


def label_mismatches(s_max=S_MAX, tol_abs=TOL_ABS):
    """
    Compare the published labels against the arithmetic.

    The published table lists hbar/pi = 0.75 as (1,16) although 4*pi/16 is
    0.25*pi; the consistent label is (3,16).

    :returns: list of (hbar_over_pi, published, classified) disagreements
    """
    mismatches = []
    for hbar_over_pi, published in _PUBLISHED:
        label = classify_resonance(hbar_over_pi * np.pi, s_max, tol_abs)
        if label.as_tuple() != published:
            mismatches.append((hbar_over_pi, published, label.as_tuple()))
    return mismatches


def resonance_order(label):
    return label.s if label.resonant else None


def is_low_order(label, s_cut=8):
    return label.resonant and label.s <= s_cut
