"""Hot loops over dense operation tables of 3^n.

Elements of 3^n are addressed by their canonical index (see
``TritVec.index``).  Each kernel comes in two flavours, a numba ``@njit``
version and a pure-numpy version with the same contract.  The numba path is
used when numba imports and ``CALGEBRA_NO_NUMBA`` is unset or ``0``.

``CALGEBRA_WORKERS`` caps the numba thread count for the parallel sweep.
"""

from __future__ import annotations

import os

import numpy as np

TABLE_MAX_WIDTH = 6
SWEEP_MAX_ELEMENTS = 64


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the bundled TBB is too old; skip straight to OpenMP
        numba.config.THREADING_LAYER = "omp"
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_flag("CALGEBRA_NO_NUMBA")
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA and os.environ.get("CALGEBRA_WORKERS"):
    numba.set_num_threads(max(1, min(int(os.environ["CALGEBRA_WORKERS"]), numba.config.NUMBA_NUM_THREADS)))


# -- tables ---------------------------------------------------------------

def planes(width: int) -> tuple[np.ndarray, np.ndarray]:
    """T-plane and F-plane of every element of 3^width, in index order."""
    n = 3 ** width
    digits = np.empty((n, width), dtype=np.int64)
    idx = np.arange(n)
    for i in range(width - 1, -1, -1):
        digits[:, i] = idx % 3
        idx = idx // 3
    weights = np.left_shift(np.uint64(1), np.arange(width, dtype=np.uint64))
    t = ((digits == 0) * weights).sum(axis=1).astype(np.uint64)
    f = ((digits == 1) * weights).sum(axis=1).astype(np.uint64)
    return t, f


def index_of(width: int, t: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Canonical indices of the vectors given by planes ``t``, ``f``."""
    t = np.asarray(t, dtype=np.uint64)
    f = np.asarray(f, dtype=np.uint64)
    out = np.zeros(np.broadcast(t, f).shape, dtype=np.int64)
    for i in range(width):
        bit = np.uint64(1 << i)
        d = np.where(t & bit, 0, np.where(f & bit, 1, 2))
        out = out * 3 + d
    return out


def op_tables(width: int) -> dict[str, np.ndarray]:
    """Index tables ``neg[a]``, ``conj[a, b]``, ``disj[a, b]``, ``down[a]`` for 3^width."""
    if width > TABLE_MAX_WIDTH:
        raise ValueError(f"dense tables limited to width <= {TABLE_MAX_WIDTH}")
    t, f = planes(width)
    full = np.uint64((1 << width) - 1)
    a1, a2 = t[:, None], f[:, None]
    b1, b2 = t[None, :], f[None, :]
    return {
        "neg": index_of(width, f, t),
        "conj": index_of(width, a1 & b1, a2 | (a1 & b2)),
        "disj": index_of(width, a1 | (a2 & b1), a2 & b2),
        "down": index_of(width, t, full & ~t),
    }


# -- closure ----------------------------------------------------------------

def closure_numpy(neg: np.ndarray, conj: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Smallest superset of ``seed`` closed under ``neg`` and ``conj`` (boolean mask)."""
    member = np.array(seed, dtype=np.bool_, copy=True)
    while True:
        idx = np.flatnonzero(member)
        grown = member.copy()
        grown[neg[idx]] = True
        grown[conj[np.ix_(idx, idx)].ravel()] = True
        if grown.sum() == member.sum():
            return member
        member = grown


def _closure_loop(neg, conj, seed):
    n = seed.shape[0]
    member = seed.copy()
    queue = np.empty(n, dtype=np.int64)
    items = np.empty(n, dtype=np.int64)
    nitems = 0
    head = 0
    tail = 0
    for i in range(n):
        if member[i]:
            queue[tail] = i
            tail += 1
    while head < tail:
        a = queue[head]
        head += 1
        items[nitems] = a
        nitems += 1
        c = neg[a]
        if not member[c]:
            member[c] = True
            queue[tail] = c
            tail += 1
        for k in range(nitems):
            b = items[k]
            c = conj[a, b]
            if not member[c]:
                member[c] = True
                queue[tail] = c
                tail += 1
            c = conj[b, a]
            if not member[c]:
                member[c] = True
                queue[tail] = c
                tail += 1
    return member


# -- brute-force subset sweep -------------------------------------------------

def _bit_tables(neg, conj, keep):
    """Positions within ``keep`` of each negation and meet; -1 marks a result outside ``keep``."""
    pos = np.full(neg.shape[0], -1, dtype=np.int64)
    pos[keep] = np.arange(len(keep))
    negpos = pos[neg[keep]]
    conjpos = pos[conj[np.ix_(keep, keep)]]
    return negpos, conjpos


def closed_subsets_numpy(neg, conj, base, free, chunk: int = 1 << 18) -> np.ndarray:
    """Bitmasks ``s`` over ``free`` such that ``base`` plus the chosen free elements is closed.

    ``base`` and ``free`` are disjoint index arrays; results outside
    ``base | free`` make a subset non-closed.
    """
    base = np.asarray(base, dtype=np.int64)
    free = np.asarray(free, dtype=np.int64)
    k, nb = len(free), len(base)
    keep = np.concatenate([base, free])
    if len(keep) > SWEEP_MAX_ELEMENTS:
        raise ValueError("subset sweep limited to 64 candidate elements")
    negpos, conjpos = _bit_tables(neg, conj, keep)
    found = []
    for lo in range(0, 1 << k, chunk):
        s = np.arange(lo, min(lo + chunk, 1 << k), dtype=np.uint64)
        full = (s << np.uint64(nb)) | np.uint64((1 << nb) - 1)
        ok = np.ones(len(s), dtype=np.bool_)
        for i in range(len(keep)):
            has_i = ((full >> np.uint64(i)) & np.uint64(1)).astype(np.bool_)
            p = negpos[i]
            if p < 0:
                ok &= ~has_i
            else:
                ok &= ~has_i | ((full >> np.uint64(p)) & np.uint64(1)).astype(np.bool_)
            for j in range(len(keep)):
                p = conjpos[i, j]
                has_ij = has_i & ((full >> np.uint64(j)) & np.uint64(1)).astype(np.bool_)
                if p < 0:
                    ok &= ~has_ij
                else:
                    ok &= ~has_ij | ((full >> np.uint64(p)) & np.uint64(1)).astype(np.bool_)
        found.append(s[ok])
    return np.concatenate(found).astype(np.int64) if found else np.zeros(0, dtype=np.int64)


def _sweep_flags(negpos, conjpos, nb, k):
    m = nb + k
    total = 1 << k
    flags = np.zeros(total, dtype=np.bool_)
    basebits = (1 << nb) - 1
    for s in prange(total):
        full = (s << nb) | basebits
        ok = True
        for i in range(m):
            if not (full >> i) & 1:
                continue
            p = negpos[i]
            if p < 0 or not (full >> p) & 1:
                ok = False
                break
            for j in range(m):
                if (full >> j) & 1:
                    q = conjpos[i, j]
                    if q < 0 or not (full >> q) & 1:
                        ok = False
                        break
            if not ok:
                break
        flags[s] = ok
    return flags


def _closed_subsets_compiled(sweep):
    def closed_subsets(neg, conj, base, free):
        base = np.asarray(base, dtype=np.int64)
        free = np.asarray(free, dtype=np.int64)
        keep = np.concatenate([base, free])
        if len(keep) > SWEEP_MAX_ELEMENTS - 1:
            raise ValueError("subset sweep limited to 63 candidate elements")
        negpos, conjpos = _bit_tables(neg, conj, keep)
        flags = sweep(negpos, conjpos, len(base), len(free))
        return np.flatnonzero(flags).astype(np.int64)

    closed_subsets.__doc__ = closed_subsets_numpy.__doc__
    return closed_subsets


if HAVE_NUMBA:
    closure_numba = njit(cache=True)(_closure_loop)
    _sweep_numba = njit(cache=True, parallel=True)(_sweep_flags)
    closed_subsets_numba = _closed_subsets_compiled(_sweep_numba)
else:  # pragma: no cover
    closure_numba = None
    closed_subsets_numba = None


if USE_NUMBA:
    def closure(neg, conj, seed):
        return closure_numba(neg, conj, np.asarray(seed, dtype=np.bool_))

    closed_subsets = closed_subsets_numba
else:
    closure = closure_numpy
    closed_subsets = closed_subsets_numpy
