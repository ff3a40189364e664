"""NumPy implementations of the exhaustive table kernels.

Every function scans its quantifier space in lexicographic order and returns
an ``(k, arity)`` int64 array holding the first ``k <= limit`` violating
tuples. The compiled module exposes the same functions with the same output.
"""
import itertools

import numpy as np

_EMPTY = {}


def _empty(arity):
    return np.zeros((0, arity), dtype=np.int64)


def _collect(chunks, arity, limit):
    if not chunks:
        return _empty(arity)
    out = np.concatenate(chunks, axis=0).astype(np.int64, copy=False)
    return out[:limit]


def _scan_rows(n_outer, block, arity, limit):
    # block(i) -> bool mask over the remaining coordinates (C order = lex order)
    chunks, found = [], 0
    for i in range(n_outer):
        mask = block(i)
        if mask is None or not mask.any():
            continue
        idx = np.argwhere(mask)
        rows = np.empty((idx.shape[0], arity), dtype=np.int64)
        rows[:, 0] = i
        rows[:, 1:] = idx
        chunks.append(rows)
        found += rows.shape[0]
        if found >= limit:
            break
    return _collect(chunks, arity, limit)


def assoc_violations(op, limit):
    return _scan_rows(op.shape[0], lambda a: op[op[a]] != op[a][op], 3, limit)


def comm_violations(op, limit):
    return _collect([np.argwhere(op != op.T)], 2, limit)


def left_distrib_violations(add, mul, limit):
    def block(a):
        row = mul[a]
        return row[add] != add[row[:, None], row[None, :]]
    return _scan_rows(mul.shape[0], block, 3, limit)


def right_distrib_violations(add, mul, limit):
    def block(a):
        return mul[add[a]] != add[mul[a][None, :], mul]
    return _scan_rows(mul.shape[0], block, 3, limit)


def action_assoc_violations(act, mul, limit):
    def block(m):
        row = act[m]
        return act[row] != row[mul]
    return _scan_rows(act.shape[0], block, 3, limit)


def action_ldistrib_violations(act, radd, madd, limit):
    def block(m):
        row = act[m]
        return row[radd] != madd[row[:, None], row[None, :]]
    return _scan_rows(act.shape[0], block, 3, limit)


def action_rdistrib_violations(act, madd, limit):
    def block(m):
        return act[madd[m]] != madd[act[m][None, :], act]
    return _scan_rows(act.shape[0], block, 3, limit)


def rigid_violations(act, sigma, mzero, limit):
    twisted = act[act, sigma[None, :]]
    mask = (twisted == mzero) & (act != mzero)
    return _collect([np.argwhere(mask)], 2, limit)


def semicomm_violations(act, sigma, mzero, limit):
    nr = act.shape[1]

    def block(m):
        row = act[m]
        ann = np.flatnonzero(row == mzero)
        # |mR| * |ann(m)| = |R|: the distinct elements of mR decide the row
        if not (act[np.ix_(np.unique(row), sigma[ann])] != mzero).any():
            return None
        mask = np.zeros((nr, nr), dtype=bool)
        # [a, r] -> (m r) sigma(a)
        mask[ann] = act[row[None, :], sigma[ann][:, None]] != mzero
        return mask
    return _scan_rows(act.shape[0], block, 3, limit)


def reduced_lz_violations(act, mul, mzero, limit):
    squares = mul[np.arange(mul.shape[0]), np.arange(mul.shape[0])]

    def block(m):
        zero_a = act[m][squares] == mzero
        if not zero_a.any():
            return None
        vals = act[act[m][None, :], np.arange(act.shape[1])[:, None]]
        return zero_a[:, None] & (vals != mzero)
    return _scan_rows(act.shape[0], block, 3, limit)


def compat_violations(act, sigma, mzero, mode, limit):
    plain = act == mzero
    twisted = act[:, sigma] == mzero
    if mode == 1:
        mask = plain & ~twisted
    elif mode == 2:
        mask = twisted & ~plain
    else:
        mask = plain ^ twisted
    return _collect([np.argwhere(mask)], 2, limit)


def intersection_violations(act, mzero, limit):
    nm, nr = act.shape
    m_r = np.zeros((nm, nm), dtype=bool)
    m_r[np.repeat(np.arange(nm), nr), act.ravel()] = True
    big_m_a = np.zeros((nr, nm), dtype=bool)
    big_m_a[np.tile(np.arange(nr), nm), act.ravel()] = True
    m_r[:, mzero] = False
    big_m_a[:, mzero] = False

    def block(m):
        ann = np.flatnonzero(act[m] == mzero)
        orbit = np.flatnonzero(m_r[m])
        if not big_m_a[np.ix_(ann, orbit)].any():
            return None
        mask = np.zeros((nr, nm), dtype=bool)
        mask[ann] = m_r[m][None, :] & big_m_a[ann]
        return mask
    return _scan_rows(nm, block, 3, limit)


def abelian_violations(act, idem, limit):
    idem = np.asarray(idem, dtype=np.int64)
    if idem.size == 0:
        return _empty(3)
    nr = act.shape[1]

    def block(m):
        mask = np.zeros((nr, nr), dtype=bool)
        lhs = act[act[m][idem]]  # [k, r] -> (m e_k) r
        rhs = act[act[m][None, :], idem[:, None]]  # [k, r] -> (m r) e_k
        mask[idem] = lhs != rhs
        return mask
    return _scan_rows(act.shape[0], block, 3, limit)


def armendariz_violations(act, madd, sigpow, mzero, degree, limit):
    nm, nr = act.shape
    d = degree
    found = []
    allr = np.arange(nr)
    for ms in itertools.product(range(nm), repeat=d + 1):
        if all(m == mzero for m in ms):
            continue
        # term[i][a] = m_i sigma^i(a)
        term = [act[ms[i]][sigpow[i]] for i in range(d + 1)]
        stack = [()]
        while stack:
            prefix = stack.pop()
            k = len(prefix)
            if k == d + 1:
                ok = True
                for c in range(d + 1, 2 * d + 1):
                    acc = mzero
                    for i in range(c - d, d + 1):
                        acc = madd[acc, term[i][prefix[c - i]]]
                    if acc != mzero:
                        ok = False
                        break
                if not ok:
                    continue
                if any(term[i][prefix[j]] != mzero
                       for i in range(d + 1) for j in range(d + 1)):
                    found.append(ms + prefix)
                    if len(found) >= limit:
                        return np.array(found, dtype=np.int64)
                continue
            acc = mzero
            for i in range(1, k + 1):
                acc = madd[acc, term[i][prefix[k - i]]]
            cands = allr[madd[term[0], acc] == mzero]
            # reversed push keeps lexicographic pop order
            for a in cands[::-1]:
                stack.append(prefix + (int(a),))
    if not found:
        return _empty(2 * d + 2)
    return np.array(found, dtype=np.int64)


def alpha_violations(act, madd, sigma, mzero, n, limit):
    nm, nr = act.shape
    grid = np.array(list(itertools.product(range(nr), repeat=n)), dtype=np.int64)
    sig = sigma[grid]
    pairs = [(i, j) for i in range(n) for j in range(n) if i + j <= n - 1]
    found = []
    for us in itertools.product(range(nm), repeat=n):
        alpha = []
        for k in range(n):
            acc = np.full(grid.shape[0], mzero, dtype=np.int64)
            for i in range(k + 1):
                acc = madd[acc, act[us[i]][grid[:, k - i]]]
            alpha.append(acc)
        zero = np.ones(grid.shape[0], dtype=bool)
        for k in range(n):
            acc = np.full(grid.shape[0], mzero, dtype=np.int64)
            for i in range(k + 1):
                acc = madd[acc, act[alpha[i], sig[:, k - i]]]
            zero &= acc == mzero
        if not zero.any():
            continue
        rows = np.flatnonzero(zero)
        bad = np.zeros(rows.size, dtype=bool)
        first = np.full((rows.size, 2), -1, dtype=np.int64)
        for i, j in pairs:
            hit = act[alpha[i][rows], sig[rows, j]] != mzero
            new = hit & ~bad
            first[new] = (i, j)
            bad |= hit
        for r, f in zip(rows[bad], first[bad]):
            found.append(us + tuple(int(x) for x in grid[r]) + (int(f[0]), int(f[1])))
            if len(found) >= limit:
                return np.array(found, dtype=np.int64)
    if not found:
        return _empty(2 * n + 2)
    return np.array(found, dtype=np.int64)


def _digits(count, base, n):
    idx = np.arange(count)
    return np.stack([(idx // base ** (n - 1 - i)) % base for i in range(n)], axis=1)


def _encode(slots, base):
    acc = np.zeros_like(slots[0])
    for s in slots:
        acc = acc * base + s
    return acc


def convolution_table(prod, add, n):
    """``T[U, A]`` = index of ``(sum_{i+j=k} prod[u_i, a_j])_k`` over n-digit tuples.

    ``prod`` is ``p x q`` with values below ``p``; ``add`` is ``p x p``.
    """
    p, q = prod.shape
    du, da = _digits(p ** n, p, n), _digits(q ** n, q, n)
    slots = []
    for k in range(n):
        acc = None
        for i in range(k + 1):
            term = prod[du[:, i][:, None], da[:, k - i][None, :]]
            acc = term if acc is None else add[acc, term]
        slots.append(acc)
    return np.ascontiguousarray(_encode(slots, p), dtype=np.int32)


def componentwise_table(op, n):
    """``T[U, V]`` = index of ``(op[u_i, v_i])_i``."""
    p = op.shape[0]
    d = _digits(p ** n, p, n)
    slots = [op[d[:, i][:, None], d[:, i][None, :]] for i in range(n)]
    return np.ascontiguousarray(_encode(slots, p), dtype=np.int32)


def hom_violations(op, img, limit):
    """Pairs ``(a, b)`` with ``img[op[a, b]] != op[img[a], img[b]]``."""
    bad = img[op] != op[img[:, None], img[None, :]]
    return _collect([np.argwhere(bad)], 2, limit)
