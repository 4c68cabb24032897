# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch-evaluation kernels.

Same contract as evolab._kernels_py; conjunction and disjunction loops
short-circuit per sample, which is where the speedup over the matmul
formulation comes from.
"""

import numpy as np


def literal_eval(const signed char[:, ::1] X,
                 const unsigned char[:, ::1] inc,
                 const unsigned char[:, ::1] polarity,
                 int op):
    cdef Py_ssize_t s = X.shape[0]
    cdef Py_ssize_t n = X.shape[1]
    cdef Py_ssize_t c = inc.shape[0]
    out = np.empty((c, s), dtype=np.int8)
    cdef signed char[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef int acc, total, want

    with nogil:
        for k in range(c):
            total = 0
            for j in range(n):
                total += inc[k, j]
            if op == 2:  # parity: odd count of +1 entries inside the support
                for i in range(s):
                    acc = 0
                    for j in range(n):
                        if inc[k, j] and X[i, j] == 1:
                            acc += 1
                    o[k, i] = 1 if acc & 1 else -1
            elif op == 0:  # conjunction; the empty hypothesis is false
                for i in range(s):
                    if total == 0:
                        o[k, i] = -1
                        continue
                    o[k, i] = 1
                    for j in range(n):
                        if inc[k, j]:
                            want = -1 if polarity[k, j] else 1
                            if X[i, j] != want:
                                o[k, i] = -1
                                break
            else:  # disjunction
                for i in range(s):
                    o[k, i] = -1
                    for j in range(n):
                        if inc[k, j]:
                            want = -1 if polarity[k, j] else 1
                            if X[i, j] == want:
                                o[k, i] = 1
                                break
    return out


def majority_eval(const signed char[:, ::1] X,
                  const unsigned char[:, ::1] members):
    cdef Py_ssize_t s = X.shape[0]
    cdef Py_ssize_t n = X.shape[1]
    cdef Py_ssize_t c = members.shape[0]
    out = np.empty((c, s), dtype=np.int8)
    cdef signed char[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef int cnt, total

    with nogil:
        for k in range(c):
            total = 0
            for j in range(n):
                total += members[k, j]
            for i in range(s):
                cnt = 0
                # branchless count keeps the loop vectorizable
                for j in range(n):
                    cnt += members[k, j] & (X[i, j] == 1)
                o[k, i] = 1 if 2 * cnt >= total else -1
    return out
