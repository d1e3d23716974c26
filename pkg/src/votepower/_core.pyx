# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled division-lattice kernels.

Mirrors ``_kernels_py`` with C loops and checked 64-bit rational arithmetic
(128-bit intermediates).  Any value that cannot be represented raises
``OverflowError``; the engine then recomputes with the arbitrary-precision
pure-Python kernels, so callers always get exact results.
"""

from fractions import Fraction

from libc.stdint cimport int64_t, uint8_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"
    int __builtin_popcountll(unsigned long long x)

cdef int64_t INT64_CAP = <int64_t>9223372036854775807

DEF MAX_TABLE_PLAYERS = 22
DEF MAX_RM_PLAYERS = 16


cdef inline int128 gcd128(int128 a, int128 b) noexcept:
    cdef int128 t
    if a < 0:
        a = -a
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline bint frac_add(int64_t an, int64_t ad, int64_t bn, int64_t bd,
                          int64_t* rn, int64_t* rd) noexcept:
    """*r = a + b reduced; returns False on 64-bit overflow."""
    cdef int128 num = <int128>an * bd + <int128>bn * ad
    cdef int128 den = <int128>ad * bd
    cdef int128 g = gcd128(num, den)
    if g > 1:
        num //= g
        den //= g
    if num > INT64_CAP or num < -INT64_CAP or den > INT64_CAP:
        return False
    rn[0] = <int64_t>num
    rd[0] = <int64_t>den
    return True


cdef inline bint frac_div_int(int64_t an, int64_t ad, int64_t k,
                              int64_t* rn, int64_t* rd) noexcept:
    if k <= 0:
        return False
    cdef int128 num = an
    cdef int128 den = <int128>ad * k
    cdef int128 g = gcd128(num, den)
    if g > 1:
        num //= g
        den //= g
    if num > INT64_CAP or den > INT64_CAP:
        return False
    rn[0] = <int64_t>num
    rd[0] = <int64_t>den
    return True


def winning_table_weighted(int n, object quota, object weights):
    if n < 1 or n > MAX_TABLE_PLAYERS:
        raise OverflowError("player count outside the compiled table range")
    cdef int64_t q
    cdef int64_t w[MAX_TABLE_PLAYERS]
    cdef object total = sum(weights)
    if total > INT64_CAP or quota > INT64_CAP:
        raise OverflowError("weights too large for the compiled kernel")
    q = quota
    cdef int i
    for i in range(n):
        w[i] = weights[i]
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = bytearray(size)
    cdef uint8_t[::1] win = out
    cdef int64_t* sums = <int64_t*> malloc(size * sizeof(int64_t))
    if sums == NULL:
        raise MemoryError()
    cdef Py_ssize_t m, low
    try:
        sums[0] = 0
        win[0] = 1 if q <= 0 else 0
        for m in range(1, size):
            low = m & (-m)
            sums[m] = sums[m ^ low] + w[__builtin_popcountll(low - 1)]
            win[m] = 1 if sums[m] >= q else 0
    finally:
        free(sums)
    return out


def winning_table_explicit(int n, object min_masks):
    if n < 1 or n > MAX_TABLE_PLAYERS:
        raise OverflowError("player count outside the compiled table range")
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    out = bytearray(size)
    cdef uint8_t[::1] win = out
    cdef Py_ssize_t m, mm, low
    for m in min_masks:
        win[m] = 1
    for m in range(size):
        if not win[m]:
            mm = m
            while mm:
                low = mm & (-mm)
                if win[m ^ low]:
                    win[m] = 1
                    break
                mm ^= low
    return out


def pb_swing_counts(int n, object win_obj):
    if n < 1 or n > MAX_TABLE_PLAYERS:
        raise OverflowError("player count outside the compiled counting range")
    cdef const uint8_t[::1] win = win_obj
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef int64_t yes[MAX_TABLE_PLAYERS]
    cdef int64_t no[MAX_TABLE_PLAYERS]
    cdef int i
    for i in range(n):
        yes[i] = 0
        no[i] = 0
    cdef Py_ssize_t m, bit
    for m in range(size):
        if win[m]:
            for i in range(n):
                bit = (<Py_ssize_t>1) << i
                if m & bit and not win[m ^ bit]:
                    yes[i] += 1
        else:
            for i in range(n):
                bit = (<Py_ssize_t>1) << i
                if not (m & bit) and win[m | bit]:
                    no[i] += 1
    return [yes[i] for i in range(n)], [no[i] for i in range(n)]


def ss_swing_counts(int n, object win_obj):
    if n < 1 or n > MAX_TABLE_PLAYERS:
        raise OverflowError("player count outside the compiled counting range")
    cdef const uint8_t[::1] win = win_obj
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef int64_t* yes = <int64_t*> malloc(n * (n + 1) * sizeof(int64_t))
    cdef int64_t* no = <int64_t*> malloc(n * (n + 1) * sizeof(int64_t))
    if yes == NULL or no == NULL:
        free(yes)
        free(no)
        raise MemoryError()
    cdef Py_ssize_t m, bit
    cdef int i, s
    try:
        for i in range(n * (n + 1)):
            yes[i] = 0
            no[i] = 0
        for m in range(size):
            s = __builtin_popcountll(m)
            if win[m]:
                for i in range(n):
                    bit = (<Py_ssize_t>1) << i
                    if m & bit and not win[m ^ bit]:
                        yes[i * (n + 1) + s] += 1
            else:
                for i in range(n):
                    bit = (<Py_ssize_t>1) << i
                    if not (m & bit) and win[m | bit]:
                        no[i * (n + 1) + s] += 1
        yes_py = [[yes[i * (n + 1) + s] for s in range(n + 1)] for i in range(n)]
        no_py = [[no[i * (n + 1) + s] for s in range(n + 1)] for i in range(n)]
    finally:
        free(yes)
        free(no)
    return yes_py, no_py


def rm_alpha_sums(int n, object win_obj):
    if n < 1 or n > MAX_RM_PLAYERS:
        raise OverflowError("player count outside the compiled recursion range")
    cdef const uint8_t[::1] win = win_obj
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef int64_t* num = <int64_t*> malloc(size * n * sizeof(int64_t))
    cdef int64_t* den = <int64_t*> malloc(size * n * sizeof(int64_t))
    cdef int* order = <int*> malloc(size * sizeof(int))
    cdef int* offset = <int*> malloc((n + 2) * sizeof(int))
    if num == NULL or den == NULL or order == NULL or offset == NULL:
        free(num); free(den); free(order); free(offset)
        raise MemoryError()
    cdef Py_ssize_t m, idx
    cdef int i, j, k, lev, nk, pos
    cdef Py_ssize_t kid, bit, jbit
    cdef Py_ssize_t kids[MAX_RM_PLAYERS]
    cdef int64_t sn, sd
    cdef bint ok = True
    try:
        # bucket masks by popcount: order[] holds level 0, then level 1, ...
        for lev in range(n + 2):
            offset[lev] = 0
        for m in range(size):
            offset[__builtin_popcountll(m) + 1] += 1
        for lev in range(1, n + 2):
            offset[lev] += offset[lev - 1]
        for m in range(size):
            lev = __builtin_popcountll(m)
            order[offset[lev]] = <int>m
            offset[lev] += 1
        # offsets were consumed; order[] is now popcount-ascending, ties by mask
        for idx in range(size * n):
            num[idx] = 0
            den[idx] = 1

        # winning divisions, fewest YES votes first
        for pos in range(size):
            m = <Py_ssize_t>order[pos]
            if not win[m]:
                continue
            nk = 0
            for j in range(n):
                jbit = (<Py_ssize_t>1) << j
                if m & jbit and win[m ^ jbit]:
                    kids[nk] = m ^ jbit
                    nk += 1
            for i in range(n):
                bit = (<Py_ssize_t>1) << i
                if not (m & bit):
                    continue
                idx = m * n + i
                if not win[m ^ bit]:
                    num[idx] = 1
                    den[idx] = 1
                else:
                    sn = 0
                    sd = 1
                    for k in range(nk):
                        kid = kids[k]
                        if not frac_add(sn, sd, num[kid * n + i], den[kid * n + i], &sn, &sd):
                            ok = False
                            break
                    if ok and not frac_div_int(sn, sd, nk, &num[idx], &den[idx]):
                        ok = False
                    if not ok:
                        raise OverflowError("rational overflow in the compiled recursion")

        # losing divisions, most YES votes first
        for pos in range(size - 1, -1, -1):
            m = <Py_ssize_t>order[pos]
            if win[m]:
                continue
            nk = 0
            for j in range(n):
                jbit = (<Py_ssize_t>1) << j
                if not (m & jbit) and not win[m | jbit]:
                    kids[nk] = m | jbit
                    nk += 1
            for i in range(n):
                bit = (<Py_ssize_t>1) << i
                if m & bit:
                    continue
                idx = m * n + i
                if win[m | bit]:
                    num[idx] = 1
                    den[idx] = 1
                else:
                    sn = 0
                    sd = 1
                    for k in range(nk):
                        kid = kids[k]
                        if not frac_add(sn, sd, num[kid * n + i], den[kid * n + i], &sn, &sd):
                            ok = False
                            break
                    if ok and not frac_div_int(sn, sd, nk, &num[idx], &den[idx]):
                        ok = False
                    if not ok:
                        raise OverflowError("rational overflow in the compiled recursion")

        yes_sums = []
        no_sums = []
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            sn = 0
            sd = 1
            for m in range(size):
                if m & bit:
                    if not frac_add(sn, sd, num[m * n + i], den[m * n + i], &sn, &sd):
                        raise OverflowError("rational overflow accumulating YES sums")
            yes_sums.append(Fraction(sn, sd))
            sn = 0
            sd = 1
            for m in range(size):
                if not (m & bit):
                    if not frac_add(sn, sd, num[m * n + i], den[m * n + i], &sn, &sd):
                        raise OverflowError("rational overflow accumulating NO sums")
            no_sums.append(Fraction(sn, sd))
    finally:
        free(num)
        free(den)
        free(order)
        free(offset)
    return yes_sums, no_sums
