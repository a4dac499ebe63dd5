# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled batch-assignment loop; mirrors ``backends.assign_batch_python``.

Floating-point expressions are kept in the exact evaluation order of the
pure implementation and the extension is built with FP contraction off, so
both backends produce bit-identical assignment vectors.  ``counts`` is the
flattened n x 4 per-class matrix; ``out`` receives one server index per
task.  Returns the number of tasks assigned; a value short of the task
count means no server was available for that task.
"""

from libc.stdlib cimport free, malloc


cdef long long _gcd(long long a, long long b):
    cdef long long r
    while b:
        r = a % b
        a = b
        b = r
    return a


def assign_batch(int kind,
                 double[::1] norm,
                 double[::1] static_w,
                 long long[::1] wrr_w,
                 signed char[::1] alive,
                 long long[::1] conns,
                 long long[::1] counts,
                 long long[::1] classes,
                 double k1, double k2,
                 double[::1] class_w,
                 double[::1] cpu_demand,
                 double[::1] mem_demand,
                 double floor_,
                 long long[::1] out):
    cdef Py_ssize_t n = norm.shape[0]
    cdef Py_ssize_t n_tasks = classes.shape[0]
    cdef Py_ssize_t t, i, m
    cdef long long step, idx, maxw, g, guard, k
    cdef long long rr_cursor = -1
    cdef long long wi = -1, cw = 0
    cdef long long c0, c1, c2, c3
    cdef double load_m, load_i, wl_m, wl_i, cl, ml, vc, vm
    cdef double *w = NULL

    if kind == 4:
        w = <double *> malloc((n if n > 0 else 1) * sizeof(double))
        if w == NULL:
            raise MemoryError()

    try:
        for t in range(n_tasks):
            m = -1

            if kind == 0:  # round robin
                for step in range(1, n + 1):
                    idx = (rr_cursor + step) % n
                    if alive[idx]:
                        rr_cursor = idx
                        m = idx
                        break
                if m < 0:
                    return t

            elif kind == 1:  # weighted round robin
                maxw = 0
                g = 0
                for i in range(n):
                    if wrr_w[i] > maxw:
                        maxw = wrr_w[i]
                    if wrr_w[i] > 0:
                        g = _gcd(g, wrr_w[i])
                if maxw <= 0:
                    return t
                if cw > maxw:
                    cw = maxw
                guard = n * (maxw // g + 1) + n
                for k in range(guard):
                    wi = (wi + 1) % n
                    if wi == 0:
                        cw -= g
                        if cw <= 0:
                            cw = maxw
                    if wrr_w[wi] >= cw:
                        m = wi
                        break
                if m < 0:
                    return t

            elif kind == 2:  # least connections
                for i in range(n):
                    if alive[i] and (m < 0 or conns[i] < conns[m]):
                        m = i
                if m < 0:
                    return t

            elif kind == 3:  # weighted least connections
                wl_m = 0.0
                for i in range(n):
                    wl_i = static_w[i] if alive[i] else 0.0
                    if wl_i > 0.0:
                        m = i
                        wl_m = wl_i
                        break
                if m < 0:
                    return t
                for i in range(m + 1, n):
                    wl_i = static_w[i] if alive[i] else 0.0
                    if (<double> conns[m]) * wl_i > (<double> conns[i]) * wl_m:
                        m = i
                        wl_m = wl_i

            else:  # adaptive weighted least connections
                for i in range(n):
                    if alive[i]:
                        c0 = counts[i * 4 + 0]
                        c1 = counts[i * 4 + 1]
                        c2 = counts[i * 4 + 2]
                        c3 = counts[i * 4 + 3]
                        cl = c0 * cpu_demand[0] + c1 * cpu_demand[1] \
                            + c2 * cpu_demand[2] + c3 * cpu_demand[3]
                        vc = 1.0 - cl / norm[i]
                        if vc < floor_:
                            vc = floor_
                        ml = c0 * mem_demand[0] + c1 * mem_demand[1] \
                            + c2 * mem_demand[2] + c3 * mem_demand[3]
                        vm = 1.0 - ml / norm[i]
                        if vm < floor_:
                            vm = floor_
                        w[i] = k1 * vc + k2 * vm
                    else:
                        w[i] = 0.0
                for i in range(n):
                    if w[i] > 0.0:
                        m = i
                        break
                if m < 0:
                    return t
                load_m = counts[m * 4 + 0] * class_w[0] + counts[m * 4 + 1] * class_w[1] \
                    + counts[m * 4 + 2] * class_w[2] + counts[m * 4 + 3] * class_w[3]
                for i in range(m + 1, n):
                    load_i = counts[i * 4 + 0] * class_w[0] + counts[i * 4 + 1] * class_w[1] \
                        + counts[i * 4 + 2] * class_w[2] + counts[i * 4 + 3] * class_w[3]
                    if load_i * w[m] < load_m * w[i]:
                        m = i
                        load_m = load_i

            counts[m * 4 + classes[t]] += 1
            conns[m] += 1
            out[t] = m
    finally:
        if w != NULL:
            free(w)

    return n_tasks
