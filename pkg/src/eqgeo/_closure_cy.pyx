# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled closure kernel: same contract as ``_closure_py.subgroup_closure``
but driven by typed memoryviews.  States are deduplicated through a dict of
raw row bytes; the inner multiply loop is pure C."""

import numpy as np


def subgroup_closure(table, moves, budget):
    table_arr = np.ascontiguousarray(table, dtype=np.int32)
    moves_arr = np.ascontiguousarray(moves, dtype=np.int32)
    cdef int[:, ::1] tab = table_arr
    cdef int[:, ::1] mov = moves_arr
    cdef Py_ssize_t n_moves = moves_arr.shape[0]
    cdef Py_ssize_t width = moves_arr.shape[1] if n_moves > 0 else 0
    cdef Py_ssize_t cap = 1024
    cdef Py_ssize_t count = 1
    cdef Py_ssize_t head = 0
    cdef Py_ssize_t m, j, nxt
    cdef bint complete = 1

    states_arr = np.zeros((cap, width), dtype=np.int32)
    parent_arr = np.full(cap, -1, dtype=np.int64)
    via_arr = np.full(cap, -1, dtype=np.int32)
    cdef int[:, ::1] states = states_arr
    cdef long long[::1] parent = parent_arr
    cdef int[::1] via = via_arr

    probe_arr = np.zeros(width, dtype=np.int32)
    cdef int[::1] probe = probe_arr

    index = {probe_arr.tobytes(): 0}

    cdef Py_ssize_t bud = budget
    while head < count:
        for m in range(n_moves):
            for j in range(width):
                probe[j] = tab[states[head, j], mov[m, j]]
            key = probe_arr.tobytes()
            if key not in index:
                if count >= bud:
                    complete = 0
                    head = count
                    break
                if count == cap:
                    cap = cap * 2
                    states_arr = np.resize(states_arr, (cap, width))
                    parent_arr = np.resize(parent_arr, cap)
                    via_arr = np.resize(via_arr, cap)
                    states = states_arr
                    parent = parent_arr
                    via = via_arr
                index[key] = count
                for j in range(width):
                    states[count, j] = probe[j]
                parent[count] = head
                via[count] = m
                count += 1
        head += 1

    out_states = [tuple(int(v) for v in states_arr[i, :width]) for i in range(count)]
    out_parent = [int(parent_arr[i]) for i in range(count)]
    out_via = [int(via_arr[i]) for i in range(count)]
    return out_states, out_parent, out_via, bool(complete)
