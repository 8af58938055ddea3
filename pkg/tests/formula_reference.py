"""Independent straight-line re-implementations of every movement-level
formula, used to cross-check the package's bounded-transfer construction.

Each function transcribes one closed form directly: explicit min over all
terms, exact rational ceiling, no shared helpers with the package. Returns
(data_movement_bits, iterations).
"""

from __future__ import annotations

import math
from fractions import Fraction


def _ceil(numerator: int, denominator: int) -> int:
    return math.ceil(Fraction(numerator, denominator))


# -- EnGN --------------------------------------------------------------------

def engn_loadvertcache(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil(L * sigma, min(Bstar, M * sigma))
    return min(L * sigma, M * sigma, Bstar) * N * it, it


def engn_loadvertL2(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil((K - L) * sigma, min(B, M * sigma))
    return min((K - L) * sigma, M * sigma, B) * N * it, it


def engn_loadedges(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil(P * sigma, B)
    return min(P * sigma, B) * it, it


def engn_loadweights(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil(T * sigma, min(B, M * sigma))
    return min(T * sigma, M * sigma, B) * N * it, it


def engn_aggregate(K, L, P, N, T, sigma, B, Bstar, M):
    # The feature-overflow term goes negative when the array rows exceed
    # the feature length; it contributes nothing in that regime.
    it = _ceil(K, M) + (_ceil(K * (N - M), M) if N > M else 0)
    return M * (M - 1) * T * it * sigma, it


def engn_writecache(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil(L * sigma, min(M * sigma, Bstar))
    return min(M * sigma, L * sigma, Bstar) * T * it, it


def engn_writeL2(K, L, P, N, T, sigma, B, Bstar, M):
    it = _ceil((K - L) * sigma, min(M * sigma, B))
    return min(M * sigma, (K - L) * sigma, B) * T * it, it


ENGN_REFERENCE = {
    "loadvertcache": engn_loadvertcache,
    "loadvertL2": engn_loadvertL2,
    "loadedges": engn_loadedges,
    "loadweights": engn_loadweights,
    "aggregate": engn_aggregate,
    "writecache": engn_writecache,
    "writeL2": engn_writeL2,
}


# -- HyGCN -------------------------------------------------------------------

def hygcn_loadvertL2(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    it = _ceil(K * sigma, min(B, Ma * sigma))
    return min(K * sigma, Ma * sigma, B) * N * it, it


def hygcn_loadedges(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    it = _ceil(Ps * sigma, B)
    return min(Ps * sigma, B) * it, it


def hygcn_loadweights(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    # gamma passed in quarters with sigma a multiple of 4 keeps the weight
    # volume an exact integer.
    w = N * T * sigma * (4 - gamma_quarters) // 4
    it = _ceil(w, min(B, Mc * sigma))
    return min(w, Mc * sigma, B) * it, it


def hygcn_aggregate(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    it = _ceil(N * Ps * sigma, Ma * 8)
    return min(N * Ps * sigma, Ma * 8) * it, it


def hygcn_writeinterphase(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    it = _ceil(K * N * sigma, B)
    return min(K * N * sigma, B) * it, it


def hygcn_combine(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    dm = K * N * sigma + N * T * sigma
    return dm, 1 if dm else 0


def hygcn_readinterphase(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    # The Mc cap is applied exactly as printed, without a sigma factor.
    it = _ceil(Ps * N * sigma, min(B, Mc))
    return min(Ps * N * sigma, B, Mc) * it, it


def hygcn_writeL2(K, L, P, N, T, sigma, B, Ma, Mc, gamma_quarters, Ps):
    it = _ceil(K * T * sigma, B)
    return min(K * T * sigma, B) * it, it


HYGCN_REFERENCE = {
    "loadvertL2": hygcn_loadvertL2,
    "loadedges": hygcn_loadedges,
    "loadweights": hygcn_loadweights,
    "aggregate": hygcn_aggregate,
    "writeinterphase": hygcn_writeinterphase,
    "combine": hygcn_combine,
    "readinterphase": hygcn_readinterphase,
    "writeL2": hygcn_writeL2,
}
