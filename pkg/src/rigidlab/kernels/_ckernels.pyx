# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive table kernels.

Same contract as ``_pykernels``: lexicographic scan, first ``limit``
violating tuples as an int64 array. Inner loops run without the GIL.
"""
import numpy as np


cdef enum:
    MAXLEN = 16


cdef inline Py_ssize_t _put3(long long[:, ::1] o, Py_ssize_t k, Py_ssize_t x, Py_ssize_t y,
                             Py_ssize_t z) noexcept nogil:
    o[k, 0] = x
    o[k, 1] = y
    o[k, 2] = z
    return k + 1


cdef Py_ssize_t _assoc(const int[:, ::1] op, long long[:, ::1] o, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t n = op.shape[0], a, b, c, k = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if op[op[a, b], c] != op[a, op[b, c]]:
                    k = _put3(o, k, a, b, c)
                    if k >= limit:
                        return k
    return k


def assoc_violations(const int[:, ::1] op, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _assoc(op, o, limit)
    return out[:k]


cdef bint _symmetric(const int[:, ::1] op) noexcept nogil:
    # tiled so both op[a, b] and op[b, a] stay in cache
    cdef Py_ssize_t n = op.shape[0], ti, tj, a, b, nt = (n + 63) // 64
    for ti in range(nt):
        for tj in range(ti, nt):
            for a in range(ti * 64, min(ti * 64 + 64, n)):
                for b in range(tj * 64, min(tj * 64 + 64, n)):
                    if op[a, b] != op[b, a]:
                        return False
    return True


def comm_violations(const int[:, ::1] op, Py_ssize_t limit):
    cdef Py_ssize_t n = op.shape[0], a, b, k = 0
    out = np.empty((limit, 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef bint clean
    with nogil:
        clean = _symmetric(op)
    if clean:
        return out[:0]
    with nogil:
        for a in range(n):
            for b in range(n):
                if op[a, b] != op[b, a]:
                    o[k, 0] = a
                    o[k, 1] = b
                    k += 1
                    if k >= limit:
                        break
            if k >= limit:
                break
    return out[:k]


cdef Py_ssize_t _ldist(const int[:, ::1] add, const int[:, ::1] mul, long long[:, ::1] o, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t n = mul.shape[0], a, b, c, k = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
                    k = _put3(o, k, a, b, c)
                    if k >= limit:
                        return k
    return k


def left_distrib_violations(const int[:, ::1] add, const int[:, ::1] mul, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _ldist(add, mul, o, limit)
    return out[:k]


cdef Py_ssize_t _rdist(const int[:, ::1] add, const int[:, ::1] mul, long long[:, ::1] o, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t n = mul.shape[0], a, b, c, k = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[add[a, b], c] != add[mul[a, c], mul[b, c]]:
                    k = _put3(o, k, a, b, c)
                    if k >= limit:
                        return k
    return k


def right_distrib_violations(const int[:, ::1] add, const int[:, ::1] mul, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _rdist(add, mul, o, limit)
    return out[:k]


cdef Py_ssize_t _act_assoc(const int[:, ::1] act, const int[:, ::1] mul, long long[:, ::1] o, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, b, k = 0
    for m in range(nm):
        for a in range(nr):
            for b in range(nr):
                if act[act[m, a], b] != act[m, mul[a, b]]:
                    k = _put3(o, k, m, a, b)
                    if k >= limit:
                        return k
    return k


def action_assoc_violations(const int[:, ::1] act, const int[:, ::1] mul, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _act_assoc(act, mul, o, limit)
    return out[:k]


cdef Py_ssize_t _act_ldist(const int[:, ::1] act, const int[:, ::1] radd, const int[:, ::1] madd, long long[:, ::1] o,
                           Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, b, k = 0
    for m in range(nm):
        for a in range(nr):
            for b in range(nr):
                if act[m, radd[a, b]] != madd[act[m, a], act[m, b]]:
                    k = _put3(o, k, m, a, b)
                    if k >= limit:
                        return k
    return k


def action_ldistrib_violations(const int[:, ::1] act, const int[:, ::1] radd, const int[:, ::1] madd, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _act_ldist(act, radd, madd, o, limit)
    return out[:k]


cdef Py_ssize_t _act_rdist(const int[:, ::1] act, const int[:, ::1] madd, long long[:, ::1] o, Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, n, a, k = 0
    for m in range(nm):
        for n in range(nm):
            for a in range(nr):
                if act[madd[m, n], a] != madd[act[m, a], act[n, a]]:
                    k = _put3(o, k, m, n, a)
                    if k >= limit:
                        return k
    return k


def action_rdistrib_violations(const int[:, ::1] act, const int[:, ::1] madd, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _act_rdist(act, madd, o, limit)
    return out[:k]


def rigid_violations(const int[:, ::1] act, const int[::1] sigma, int mzero, Py_ssize_t limit):
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, k = 0
    out = np.empty((limit, 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef int ma
    with nogil:
        for m in range(nm):
            for a in range(nr):
                ma = act[m, a]
                if ma != mzero and act[ma, sigma[a]] == mzero:
                    o[k, 0] = m
                    o[k, 1] = a
                    k += 1
                    if k >= limit:
                        break
            if k >= limit:
                break
    return out[:k]


cdef Py_ssize_t _semicomm(const int[:, ::1] act, const int[::1] sigma, int mzero, long long[:, ::1] o,
                          Py_ssize_t limit, int[::1] orbit, int[::1] ann, int[::1] stamp) noexcept nogil:
    # |mR| * |ann(m)| = |R|, so testing sigma(ann(m)) against the distinct
    # elements of mR is linear; the lexicographic scan only runs on a failing m
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, r, i, j, no, na, k = 0
    cdef int x, sa
    cdef bint bad
    for m in range(nm):
        no = 0
        na = 0
        for r in range(nr):
            x = act[m, r]
            if stamp[x] != m + 1:
                stamp[x] = m + 1
                orbit[no] = x
                no += 1
            if x == mzero:
                ann[na] = r
                na += 1
        bad = False
        for i in range(na):
            sa = sigma[ann[i]]
            for j in range(no):
                if act[orbit[j], sa] != mzero:
                    bad = True
                    break
            if bad:
                break
        if not bad:
            continue
        for i in range(na):
            a = ann[i]
            sa = sigma[a]
            for r in range(nr):
                if act[act[m, r], sa] != mzero:
                    k = _put3(o, k, m, a, r)
                    if k >= limit:
                        return k
    return k


def semicomm_violations(const int[:, ::1] act, const int[::1] sigma, int mzero, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    orbit = np.empty(act.shape[0], dtype=np.int32)
    ann = np.empty(act.shape[1], dtype=np.int32)
    stamp = np.zeros(act.shape[0], dtype=np.int32)
    cdef int[::1] ov = orbit, av = ann, sv = stamp
    with nogil:
        k = _semicomm(act, sigma, mzero, o, limit, ov, av, sv)
    return out[:k]


cdef Py_ssize_t _reduced_lz(const int[:, ::1] act, const int[:, ::1] mul, int mzero, long long[:, ::1] o,
                            Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, r, k = 0
    for m in range(nm):
        for a in range(nr):
            if act[m, mul[a, a]] != mzero:
                continue
            for r in range(nr):
                if act[act[m, r], a] != mzero:
                    k = _put3(o, k, m, a, r)
                    if k >= limit:
                        return k
    return k


def reduced_lz_violations(const int[:, ::1] act, const int[:, ::1] mul, int mzero, Py_ssize_t limit):
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _reduced_lz(act, mul, mzero, o, limit)
    return out[:k]


def compat_violations(const int[:, ::1] act, const int[::1] sigma, int mzero, int mode, Py_ssize_t limit):
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, k = 0
    cdef bint plain, twisted, bad
    out = np.empty((limit, 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    with nogil:
        for m in range(nm):
            for a in range(nr):
                plain = act[m, a] == mzero
                twisted = act[m, sigma[a]] == mzero
                if mode == 1:
                    bad = plain and not twisted
                elif mode == 2:
                    bad = twisted and not plain
                else:
                    bad = plain != twisted
                if bad:
                    o[k, 0] = m
                    o[k, 1] = a
                    k += 1
                    if k >= limit:
                        break
            if k >= limit:
                break
    return out[:k]


cdef Py_ssize_t _intersection(const int[:, ::1] act, int mzero,
                              unsigned char[:, ::1] big_m_a, unsigned char[::1] built,
                              long long[:, ::1] o, Py_ssize_t limit, int[::1] orbit,
                              int[::1] stamp) noexcept nogil:
    # stamp marks mR for the current m; rows of big_m_a (the set Ma) are filled on first use
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], m, a, r, x, y, j, no, k = 0
    cdef int v
    cdef bint bad
    for m in range(nm):
        no = 0
        for r in range(nr):
            v = act[m, r]
            if v != mzero and stamp[v] != m + 1:
                stamp[v] = m + 1
                orbit[no] = v
                no += 1
        if no == 0:
            continue
        for a in range(nr):
            if act[m, a] != mzero:
                continue
            if not built[a]:
                for y in range(nm):
                    big_m_a[a, act[y, a]] = 1
                built[a] = 1
            bad = False
            for j in range(no):
                if big_m_a[a, orbit[j]]:
                    bad = True
                    break
            if not bad:
                continue
            for x in range(nm):
                if x != mzero and stamp[x] == m + 1 and big_m_a[a, x]:
                    k = _put3(o, k, m, a, x)
                    if k >= limit:
                        return k
    return k


def intersection_violations(const int[:, ::1] act, int mzero, Py_ssize_t limit):
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1]
    big_m_a = np.zeros((nr, nm), dtype=np.uint8)
    built = np.zeros(nr, dtype=np.uint8)
    orbit = np.empty(nm, dtype=np.int32)
    stamp = np.zeros(nm, dtype=np.int32)
    out = np.empty((limit, 3), dtype=np.int64)
    cdef unsigned char[:, ::1] ma = big_m_a
    cdef unsigned char[::1] bv = built
    cdef int[::1] ov = orbit, sv = stamp
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _intersection(act, mzero, ma, bv, o, limit, ov, sv)
    return out[:k]


cdef Py_ssize_t _abelian(const int[:, ::1] act, const long long[::1] idem, long long[:, ::1] o,
                         Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nm = act.shape[0], nr = act.shape[1], ne = idem.shape[0]
    cdef Py_ssize_t m, t, r, k = 0
    cdef long long e
    for m in range(nm):
        for t in range(ne):
            e = idem[t]
            for r in range(nr):
                if act[act[m, e], r] != act[act[m, r], e]:
                    k = _put3(o, k, m, e, r)
                    if k >= limit:
                        return k
    return k


def abelian_violations(const int[:, ::1] act, idem, Py_ssize_t limit):
    cdef const long long[::1] iv = np.ascontiguousarray(idem, dtype=np.int64)
    out = np.empty((limit, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t k
    with nogil:
        k = _abelian(act, iv, o, limit)
    return out[:k]


cdef bint _odometer(int* digits, Py_ssize_t length, int base) noexcept nogil:
    # advance a big-endian counter; False once it wraps around
    cdef Py_ssize_t i = length - 1
    while i >= 0:
        digits[i] += 1
        if digits[i] < base:
            return True
        digits[i] = 0
        i -= 1
    return False


cdef Py_ssize_t _arm_level(const int[:, ::1] act, const int[:, ::1] madd, const int[:, ::1] sigpow, int mzero, int d,
                           int* ms, int* a_s, int level, long long[:, ::1] o, Py_ssize_t k,
                           Py_ssize_t limit) noexcept nogil:
    cdef Py_ssize_t nr = act.shape[1], i, j, c, x
    cdef int acc, base
    if level == d + 1:
        for c in range(d + 1, 2 * d + 1):
            acc = mzero
            for i in range(c - d, d + 1):
                acc = madd[acc, act[ms[i], sigpow[i, a_s[c - i]]]]
            if acc != mzero:
                return k
        for i in range(d + 1):
            for j in range(d + 1):
                if act[ms[i], sigpow[i, a_s[j]]] != mzero:
                    for x in range(d + 1):
                        o[k, x] = ms[x]
                        o[k, d + 1 + x] = a_s[x]
                    return k + 1
        return k
    base = mzero
    for i in range(1, level + 1):
        base = madd[base, act[ms[i], sigpow[i, a_s[level - i]]]]
    for x in range(nr):
        if madd[act[ms[0], x], base] == mzero:
            a_s[level] = <int>x
            k = _arm_level(act, madd, sigpow, mzero, d, ms, a_s, level + 1, o, k, limit)
            if k >= limit:
                return k
    return k


def armendariz_violations(const int[:, ::1] act, const int[:, ::1] madd, const int[:, ::1] sigpow, int mzero, int degree,
                          Py_ssize_t limit):
    cdef int d = degree
    if d + 1 > MAXLEN:
        raise ValueError("degree too large for compiled kernel")
    cdef int nm = act.shape[0]
    cdef int ms[MAXLEN]
    cdef int a_s[MAXLEN]
    cdef Py_ssize_t i, k = 0
    cdef bint more = True, nonzero
    out = np.empty((limit, 2 * d + 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    for i in range(d + 1):
        ms[i] = 0
    with nogil:
        while more:
            nonzero = False
            for i in range(d + 1):
                if ms[i] != mzero:
                    nonzero = True
            if nonzero:
                k = _arm_level(act, madd, sigpow, mzero, d, ms, a_s, 0, o, k, limit)
                if k >= limit:
                    break
            more = _odometer(ms, d + 1, nm)
    return out[:k]


def alpha_violations(const int[:, ::1] act, const int[:, ::1] madd, const int[::1] sigma, int mzero, int n,
                     Py_ssize_t limit):
    if n > MAXLEN:
        raise ValueError("n too large for compiled kernel")
    cdef int nm = act.shape[0], nr = act.shape[1]
    cdef int us[MAXLEN]
    cdef int a_s[MAXLEN]
    cdef int alpha[MAXLEN]
    cdef Py_ssize_t i, j, kk, k = 0
    cdef int acc
    cdef bint more_u = True, more_a, zero, hit
    out = np.empty((limit, 2 * n + 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    for i in range(n):
        us[i] = 0
    with nogil:
        while more_u:
            for i in range(n):
                a_s[i] = 0
            more_a = True
            while more_a:
                for kk in range(n):
                    acc = mzero
                    for i in range(kk + 1):
                        acc = madd[acc, act[us[i], a_s[kk - i]]]
                    alpha[kk] = acc
                zero = True
                for kk in range(n):
                    acc = mzero
                    for i in range(kk + 1):
                        acc = madd[acc, act[alpha[i], sigma[a_s[kk - i]]]]
                    if acc != mzero:
                        zero = False
                        break
                if zero:
                    hit = False
                    for i in range(n):
                        for j in range(n - i):
                            if act[alpha[i], sigma[a_s[j]]] != mzero:
                                for kk in range(n):
                                    o[k, kk] = us[kk]
                                    o[k, n + kk] = a_s[kk]
                                o[k, 2 * n] = i
                                o[k, 2 * n + 1] = j
                                k += 1
                                hit = True
                                break
                        if hit:
                            break
                    if k >= limit:
                        break
                more_a = _odometer(a_s, n, nr)
            if k >= limit:
                break
            more_u = _odometer(us, n, nm)
    return out[:k]


cdef _digit_table(Py_ssize_t count, Py_ssize_t base, int n):
    d = np.empty((count, n), dtype=np.int32)
    cdef int[:, ::1] dv = d
    cdef Py_ssize_t x, t, i
    for x in range(count):
        t = x
        for i in range(n - 1, -1, -1):
            dv[x, i] = t % base
            t //= base
    return d


def convolution_table(const int[:, ::1] prod, const int[:, ::1] add, int n):
    if n > MAXLEN:
        raise ValueError("n too large for compiled kernel")
    cdef Py_ssize_t p = prod.shape[0], q = prod.shape[1], u, a, rows = p ** n, cols = q ** n
    cdef Py_ssize_t i, k
    cdef int acc, code
    cdef const int[:, ::1] ud = _digit_table(rows, p, n)
    cdef const int[:, ::1] ad = _digit_table(cols, q, n)
    out = np.empty((rows, cols), dtype=np.int32)
    cdef int[:, ::1] o = out
    with nogil:
        for u in range(rows):
            for a in range(cols):
                code = 0
                for k in range(n):
                    acc = prod[ud[u, 0], ad[a, k]]
                    for i in range(1, k + 1):
                        acc = add[acc, prod[ud[u, i], ad[a, k - i]]]
                    code = code * p + acc
                o[u, a] = code
    return out


def componentwise_table(const int[:, ::1] op, int n):
    if n > MAXLEN:
        raise ValueError("n too large for compiled kernel")
    cdef Py_ssize_t p = op.shape[0], u, v, rows = p ** n, i
    cdef int code
    cdef const int[:, ::1] d = _digit_table(rows, p, n)
    out = np.empty((rows, rows), dtype=np.int32)
    cdef int[:, ::1] o = out
    with nogil:
        for u in range(rows):
            for v in range(rows):
                code = 0
                for i in range(n):
                    code = code * p + op[d[u, i], d[v, i]]
                o[u, v] = code
    return out


def hom_violations(const int[:, ::1] op, const int[::1] img, Py_ssize_t limit):
    cdef Py_ssize_t n = op.shape[0], a, b, k = 0
    out = np.empty((limit, 2), dtype=np.int64)
    cdef long long[:, ::1] o = out
    with nogil:
        for a in range(n):
            for b in range(n):
                if img[op[a, b]] != op[img[a], img[b]]:
                    o[k, 0] = a
                    o[k, 1] = b
                    k += 1
                    if k >= limit:
                        break
            if k >= limit:
                break
    return out[:k]
