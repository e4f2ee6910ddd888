"""Compiled hot loops for the small-set-flip decoder.

The decoder kernel keeps the visible syndrome as a uint8 array over all
Z-checks (masked positions pinned to 0) and caches, per X-check, the best
candidate flip set.  After a flip only checks whose local Z-neighborhood
contains a changed syndrome bit are rescanned, and a check is scanned at
all only when its visible local syndrome weight s satisfies
2*s > (minimum visible weight of any of its flip sets), a bound computed
once per mask.  Candidate comparisons use exact integer
cross-multiplication so tie-breaking is deterministic: higher
(syndrome decrease)/|F| first, then smaller |F|, then lower check index,
then enumeration order within the check.
"""

from __future__ import annotations

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic


@intrinsic
def _popcount64(typingctx, v):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        (val,) = args
        fn = builder.module.declare_intrinsic("llvm.ctpop", [ir.IntType(64)])
        return builder.call(fn, [val])

    return sig, codegen


@njit(cache=True)
def mask_context(masked_idx, z2x_off, z2x_c, z2x_p, sub_off, sub_smask, min_swt, full_u):
    """Per-mask decoder state: visibility words and minimum visible subset weights.

    Returns (u, min_vis) where u[c] flags the unmasked positions of check c's
    local Z-list and min_vis[c] is the exact minimum over c's flip sets of the
    POSITIVE visible part of their syndrome weight (flip sets with an all-
    masked or empty syndrome can never give a positive decrease).
    """
    n_x = sub_off.shape[0] - 1
    one = np.uint64(1)
    never = np.int64(1 << 30)
    u = full_u.copy()
    touched = np.zeros(n_x, np.uint8)
    for ii in range(masked_idx.shape[0]):
        z = masked_idx[ii]
        for j in range(z2x_off[z], z2x_off[z + 1]):
            c = z2x_c[j]
            u[c] &= ~(one << np.uint64(z2x_p[j]))
            touched[c] = 1
    min_vis = min_swt.copy()
    for c in range(n_x):
        if not touched[c]:
            continue
        uc = u[c]
        best = never
        for k in range(sub_off[c], sub_off[c + 1]):
            mw = np.int64(_popcount64(sub_smask[k] & uc))
            if 0 < mw < best:
                best = mw
                if best == 1:
                    break
        min_vis[c] = best
    return u, min_vis


@njit(cache=True)
def _scan_check(
    c, visible, u, full_u, lz_off, lz_z, sub_off, sub_smask, sub_swt, sub_size, bnum, bden, bsub
):
    """Best positive candidate of check c into the cache arrays; False if none.

    Subsets are ordered by ascending size, and any candidate satisfies
    decrease <= 2*|visible local bits| - 1, so the scan stops at the first
    size block whose best possible ratio cannot beat the current best
    (an equal ratio at larger size loses the tie-break anyway).
    """
    one = np.uint64(1)
    lb = lz_off[c]
    lsz = lz_off[c + 1] - lb
    w = np.uint64(0)
    s_vis = np.int64(0)
    for p in range(lsz):
        if visible[lz_z[lb + p]]:
            w |= one << np.uint64(p)
            s_vis += 1
    if s_vis == 0:
        return False
    uc = u[c]
    masked_any = uc != full_u[c]
    dec_cap = 2 * s_vis - 1
    best_n = np.int64(0)
    best_d = np.int64(1)
    best_k = np.int64(-1)
    cur_size = np.int64(0)
    for k in range(sub_off[c], sub_off[c + 1]):
        szk = np.int64(sub_size[k])
        if szk != cur_size:
            cur_size = szk
            if best_k >= 0 and best_n * szk >= dec_cap * best_d:
                break
        m = sub_smask[k]
        ov = np.int64(_popcount64(m & w))
        if ov == 0:
            continue
        if masked_any:
            mw = np.int64(_popcount64(m & uc))
        else:
            mw = np.int64(sub_swt[k])
        dec = 2 * ov - mw
        if dec <= 0:
            continue
        if dec * best_d > best_n * szk:
            best_n = dec
            best_d = szk
            best_k = k
    if best_k < 0:
        return False
    bnum[c] = best_n
    bden[c] = best_d
    bsub[c] = best_k
    return True


@njit(cache=True)
def decode_core(
    visible,
    u,
    min_vis,
    lz_off,
    lz_z,
    sub_off,
    sub_qmask,
    sub_smask,
    sub_swt,
    sub_size,
    z2x_off,
    z2x_c,
    z2x_p,
    supp_off,
    supp_q,
    full_u,
    corr,
):
    """Greedy small-set flip on a visible syndrome; returns (iterations, final weight).

    `visible` must have masked bits already pinned to 0 and is modified in
    place as corrections are applied; `corr` accumulates the correction.
    (u, min_vis) come from mask_context for the same mask.
    """
    n_x = lz_off.shape[0] - 1
    n_z = visible.shape[0]
    one = np.uint64(1)

    s = np.zeros(n_x, np.int64)
    for z in range(n_z):
        if visible[z]:
            for j in range(z2x_off[z], z2x_off[z + 1]):
                s[z2x_c[j]] += 1

    bnum = np.zeros(n_x, np.int64)
    bden = np.ones(n_x, np.int64)
    bsub = np.zeros(n_x, np.int64)
    has = np.zeros(n_x, np.uint8)
    inpos = np.zeros(n_x, np.uint8)
    poslist = np.empty(n_x, np.int64)
    npos = 0
    dirty = np.zeros(n_x, np.uint8)
    dstack = np.empty(n_x, np.int64)

    for c in range(n_x):
        if s[c] > 0 and 2 * s[c] > min_vis[c]:
            if _scan_check(
                c, visible, u, full_u, lz_off, lz_z, sub_off, sub_smask, sub_swt, sub_size,
                bnum, bden, bsub,
            ):
                has[c] = 1
                inpos[c] = 1
                poslist[npos] = c
                npos += 1

    iters = np.int64(0)
    while npos > 0:
        best_c = np.int64(-1)
        write = 0
        for r in range(npos):
            c = poslist[r]
            if not has[c]:
                inpos[c] = 0
                continue
            poslist[write] = c
            write += 1
            if best_c < 0:
                best_c = c
                continue
            lhs = bnum[c] * bden[best_c]
            rhs = bnum[best_c] * bden[c]
            if lhs > rhs:
                best_c = c
            elif lhs == rhs and (
                bden[c] < bden[best_c] or (bden[c] == bden[best_c] and c < best_c)
            ):
                best_c = c
        npos = write
        if best_c < 0:
            break

        k = bsub[best_c]
        qm = np.int64(sub_qmask[k])
        sb = supp_off[best_c]
        wsup = supp_off[best_c + 1] - sb
        for p in range(wsup):
            if (qm >> p) & 1:
                q = supp_q[sb + p]
                corr[q] ^= 1
        mvis = sub_smask[k] & u[best_c]
        lb = lz_off[best_c]
        lsz = lz_off[best_c + 1] - lb
        nd = 0
        for p in range(lsz):
            if (mvis >> np.uint64(p)) & one:
                z = lz_z[lb + p]
                nv = visible[z] ^ 1
                visible[z] = nv
                delta = np.int64(1) if nv else np.int64(-1)
                for j in range(z2x_off[z], z2x_off[z + 1]):
                    c2 = z2x_c[j]
                    s[c2] += delta
                    if not dirty[c2]:
                        dirty[c2] = 1
                        dstack[nd] = c2
                        nd += 1
        iters += 1

        for r in range(nd):
            c2 = dstack[r]
            dirty[c2] = 0
            if s[c2] > 0 and 2 * s[c2] > min_vis[c2]:
                ok = _scan_check(
                    c2, visible, u, full_u, lz_off, lz_z, sub_off, sub_smask, sub_swt,
                    sub_size, bnum, bden, bsub,
                )
                if ok:
                    has[c2] = 1
                    if not inpos[c2]:
                        inpos[c2] = 1
                        poslist[npos] = c2
                        npos += 1
                else:
                    has[c2] = 0
            else:
                has[c2] = 0

    final_w = np.int64(0)
    for z in range(n_z):
        final_w += visible[z]
    return iters, final_w


@njit(cache=True)
def xor_incident_checks(sigma, qubits, adj_off, adj_idx):
    """XOR the check neighborhoods of the given qubits into a syndrome array."""
    for i in range(qubits.shape[0]):
        q = qubits[i]
        for j in range(adj_off[q], adj_off[q + 1]):
            sigma[adj_idx[j]] ^= 1
