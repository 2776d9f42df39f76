# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernel with the same contract as the pure backend.

Packed monomial keys are C ``long long`` values (the backend selector only
routes layouts with ``nfields * bits <= 62`` here), scheduled by a C
max-heap and stored in an open-addressing map.  Coefficients remain
arbitrary-precision Python integers, so both backends return bit-identical
results; the speedup comes from C-typed key arithmetic, divisibility
tests, and heap scheduling.
"""

from cpython.object cimport PyObject
from cpython.ref cimport Py_INCREF, Py_XDECREF
from libc.stdlib cimport free, malloc
from libc.string cimport memset

from math import gcd

BACKEND = "compiled"


# -- open-addressing map: long long -> Python int ---------------------------

cdef enum:
    SLOT_EMPTY = 0
    SLOT_USED = 1
    SLOT_TOMB = 2


cdef struct _Map:
    long long* keys
    PyObject** vals
    unsigned char* state
    Py_ssize_t cap      # power of two
    Py_ssize_t used     # live entries
    Py_ssize_t fill     # live entries plus tombstones


cdef inline unsigned long long _mix(long long key) noexcept nogil:
    cdef unsigned long long x = <unsigned long long> key
    x ^= x >> 33
    x *= 0xff51afd7ed558ccdULL
    x ^= x >> 33
    x *= 0xc4ceb9fe1a85ec53ULL
    x ^= x >> 33
    return x


cdef int _map_init(_Map* m, Py_ssize_t cap) except -1:
    m.keys = <long long*> malloc(cap * sizeof(long long))
    m.vals = <PyObject**> malloc(cap * sizeof(PyObject*))
    m.state = <unsigned char*> malloc(cap)
    if m.keys == NULL or m.vals == NULL or m.state == NULL:
        free(m.keys); free(m.vals); free(m.state)
        m.keys = NULL; m.vals = NULL; m.state = NULL
        raise MemoryError()
    memset(m.state, SLOT_EMPTY, cap)
    m.cap = cap
    m.used = 0
    m.fill = 0
    return 0


cdef void _map_free(_Map* m) noexcept:
    cdef Py_ssize_t i
    if m.state != NULL:
        for i in range(m.cap):
            if m.state[i] == SLOT_USED:
                Py_XDECREF(m.vals[i])
    free(m.keys); free(m.vals); free(m.state)
    m.keys = NULL; m.vals = NULL; m.state = NULL
    m.cap = 0; m.used = 0; m.fill = 0


cdef inline PyObject* _map_get(_Map* m, long long key) noexcept nogil:
    """Borrowed reference to the value, or NULL when absent."""
    cdef unsigned long long mask = <unsigned long long> (m.cap - 1)
    cdef Py_ssize_t i = <Py_ssize_t> (_mix(key) & mask)
    while True:
        if m.state[i] == SLOT_EMPTY:
            return NULL
        if m.state[i] == SLOT_USED and m.keys[i] == key:
            return m.vals[i]
        i = <Py_ssize_t> ((<unsigned long long> i + 1) & mask)


cdef int _map_grow(_Map* m) except -1:
    cdef _Map fresh
    cdef Py_ssize_t cap = 16
    cdef Py_ssize_t i, j
    cdef unsigned long long mask
    while cap < (m.used + 1) * 4:
        cap <<= 1
    _map_init(&fresh, cap)
    mask = <unsigned long long> (cap - 1)
    for i in range(m.cap):
        if m.state[i] != SLOT_USED:
            continue
        j = <Py_ssize_t> (_mix(m.keys[i]) & mask)
        while fresh.state[j] == SLOT_USED:
            j = <Py_ssize_t> ((<unsigned long long> j + 1) & mask)
        fresh.keys[j] = m.keys[i]
        fresh.vals[j] = m.vals[i]          # reference moves, no recount
        fresh.state[j] = SLOT_USED
    fresh.used = m.used
    fresh.fill = m.used
    free(m.keys); free(m.vals); free(m.state)
    m[0] = fresh
    return 0


cdef int _map_set(_Map* m, long long key, object val) except -1:
    cdef unsigned long long mask
    cdef Py_ssize_t i, target
    if (m.fill + 1) * 3 >= m.cap * 2:
        _map_grow(m)
    mask = <unsigned long long> (m.cap - 1)
    i = <Py_ssize_t> (_mix(key) & mask)
    target = -1
    while True:
        if m.state[i] == SLOT_EMPTY:
            break
        if m.state[i] == SLOT_TOMB:
            if target < 0:
                target = i
        elif m.keys[i] == key:
            Py_INCREF(val)
            Py_XDECREF(m.vals[i])
            m.vals[i] = <PyObject*> val
            return 0
        i = <Py_ssize_t> ((<unsigned long long> i + 1) & mask)
    if target < 0:
        target = i
        m.fill += 1
    m.keys[target] = key
    Py_INCREF(val)
    m.vals[target] = <PyObject*> val
    m.state[target] = SLOT_USED
    m.used += 1
    return 0


cdef void _map_del(_Map* m, long long key) noexcept:
    """Remove an entry known to be present."""
    cdef unsigned long long mask = <unsigned long long> (m.cap - 1)
    cdef Py_ssize_t i = <Py_ssize_t> (_mix(key) & mask)
    while True:
        if m.state[i] == SLOT_USED and m.keys[i] == key:
            Py_XDECREF(m.vals[i])
            m.vals[i] = NULL
            m.state[i] = SLOT_TOMB
            m.used -= 1
            return
        if m.state[i] == SLOT_EMPTY:
            return
        i = <Py_ssize_t> ((<unsigned long long> i + 1) & mask)


cdef int _map_scale(_Map* m, object factor) except -1:
    """Multiply every stored value by ``factor`` in place."""
    cdef Py_ssize_t i
    cdef object updated
    for i in range(m.cap):
        if m.state[i] == SLOT_USED:
            updated = (<object> m.vals[i]) * factor
            Py_INCREF(updated)
            Py_XDECREF(m.vals[i])
            m.vals[i] = <PyObject*> updated
    return 0


cdef int _map_divide(_Map* m, object divisor) except -1:
    """Exactly divide every stored value by ``divisor`` in place."""
    cdef Py_ssize_t i
    cdef object updated
    for i in range(m.cap):
        if m.state[i] == SLOT_USED:
            updated = (<object> m.vals[i]) // divisor
            Py_INCREF(updated)
            Py_XDECREF(m.vals[i])
            m.vals[i] = <PyObject*> updated
    return 0


# -- max-heap over long long keys --------------------------------------------


cdef struct _Heap:
    long long* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int _heap_init(_Heap* h, Py_ssize_t cap) except -1:
    h.data = <long long*> malloc(cap * sizeof(long long))
    if h.data == NULL:
        raise MemoryError()
    h.size = 0
    h.cap = cap
    return 0


cdef int _heap_push(_Heap* h, long long value) except -1:
    cdef long long* grown
    cdef Py_ssize_t i, parent
    if h.size == h.cap:
        grown = <long long*> malloc(h.cap * 2 * sizeof(long long))
        if grown == NULL:
            raise MemoryError()
        for i in range(h.size):
            grown[i] = h.data[i]
        free(h.data)
        h.data = grown
        h.cap *= 2
    i = h.size
    h.size += 1
    while i > 0:
        parent = (i - 1) >> 1
        if h.data[parent] >= value:
            break
        h.data[i] = h.data[parent]
        i = parent
    h.data[i] = value
    return 0


cdef long long _heap_pop(_Heap* h) noexcept nogil:
    """Pop the maximum; the heap must be nonempty."""
    cdef long long top = h.data[0]
    cdef long long moved
    cdef Py_ssize_t i = 0, child
    h.size -= 1
    if h.size == 0:
        return top
    moved = h.data[h.size]
    while True:
        child = 2 * i + 1
        if child >= h.size:
            break
        if child + 1 < h.size and h.data[child + 1] > h.data[child]:
            child += 1
        if h.data[child] <= moved:
            break
        h.data[i] = h.data[child]
        i = child
    h.data[i] = moved
    return top


# -- packed-key helpers ------------------------------------------------------


cdef inline bint _divides(long long a, long long b, int nfields, int bits,
                          bint complemented) noexcept nogil:
    cdef long long mask = ((<long long> 1) << bits) - 1
    cdef int i, shift
    if complemented:
        for i in range(nfields - 1):
            shift = i * bits
            if (a >> shift) & mask < (b >> shift) & mask:
                return False
        return True
    for i in range(nfields):
        shift = i * bits
        if (a >> shift) & mask > (b >> shift) & mask:
            return False
    return True


cdef inline void _raw_fields(long long key, int nfields, int bits,
                             bint complemented, long long* out) noexcept nogil:
    cdef long long mask = ((<long long> 1) << bits) - 1
    cdef int i
    if complemented:
        for i in range(nfields - 1):
            out[i] = mask - (key & mask)
            key >>= bits
        out[nfields - 1] = key
    else:
        for i in range(nfields):
            out[i] = key & mask
            key >>= bits


cdef object _content(_Map* m, list out_coeffs, object limit):
    """gcd of every coefficient in the map and list, early exit at limit."""
    cdef Py_ssize_t i
    cdef object g = 0
    if m != NULL:
        for i in range(m.cap):
            if m.state[i] == SLOT_USED:
                g = gcd(g, <object> m.vals[i])
                if g <= limit:
                    return g
    for value in out_coeffs:
        g = gcd(g, value)
        if g <= limit:
            return g
    return g


# -- the kernel ---------------------------------------------------------------


def normal_form_raw(fkeys, fcoeffs, glms, gkeys, gcoeffs, nfields, bits,
                    offset, complemented, exact):
    """Reduce (fkeys, fcoeffs) by (glms, gkeys, gcoeffs); see the pure kernel.

    Returns ``(keys, coeffs, scale)`` with keys strictly decreasing; in
    exact mode the mathematical normal form is ``result / scale``, in
    primitive mode the result is content-stripped with positive leading
    coefficient and scale 1.
    """
    cdef int nf = nfields
    cdef int nb = bits
    cdef bint comp = bool(complemented)
    cdef bint exact_mode = bool(exact)
    cdef long long off = offset
    cdef long long mask = ((<long long> 1) << nb) - 1
    cdef Py_ssize_t nbasis = len(glms)
    cdef Py_ssize_t nf_in = len(fkeys)

    cdef _Map work
    cdef _Heap heap
    cdef long long* lms = NULL
    cdef long long** grows = NULL
    cdef Py_ssize_t* glens = NULL
    cdef long long* bcache = NULL
    cdef unsigned char* bflag = NULL
    cdef long long* qraw = NULL

    cdef Py_ssize_t i, j, rowlen, hit
    cdef long long key, quotient, k2, gk0
    cdef long long* gkrow
    cdef int f
    cdef PyObject* borrowed
    cdef bint scaled
    cdef object coeff, lead, d, mult_f, mult_g, delta, cur, g
    cdef object scale = 1
    cdef list out_keys = []
    cdef list out_coeffs = []
    cdef object gc_list, row

    work.keys = NULL; work.vals = NULL; work.state = NULL
    work.cap = 0; work.used = 0; work.fill = 0
    heap.data = NULL; heap.size = 0; heap.cap = 0

    cdef Py_ssize_t cap = 16
    while cap < (nf_in + 1) * 2:
        cap <<= 1
    _map_init(&work, cap)
    try:
        _heap_init(&heap, max(16, nf_in * 2))
        lms = <long long*> malloc(max(1, nbasis) * sizeof(long long))
        grows = <long long**> malloc(max(1, nbasis) * sizeof(long long*))
        glens = <Py_ssize_t*> malloc(max(1, nbasis) * sizeof(Py_ssize_t))
        bcache = <long long*> malloc(max(1, nbasis * nf) * sizeof(long long))
        bflag = <unsigned char*> malloc(max(1, nbasis))
        qraw = <long long*> malloc(max(1, nf) * sizeof(long long))
        if (lms == NULL or grows == NULL or glens == NULL or bcache == NULL
                or bflag == NULL or qraw == NULL):
            raise MemoryError()
        memset(bflag, 0, max(1, nbasis))
        for i in range(nbasis):
            grows[i] = NULL
        for i in range(nbasis):
            lms[i] = glms[i]
            row = gkeys[i]
            rowlen = len(row)
            glens[i] = rowlen
            grows[i] = <long long*> malloc(max(1, rowlen) * sizeof(long long))
            if grows[i] == NULL:
                raise MemoryError()
            for j in range(rowlen):
                grows[i][j] = row[j]

        for i in range(nf_in):
            key = fkeys[i]
            _map_set(&work, key, fcoeffs[i])
            _heap_push(&heap, key)

        while heap.size > 0:
            key = _heap_pop(&heap)
            borrowed = _map_get(&work, key)
            if borrowed == NULL:
                continue
            coeff = <object> borrowed
            _map_del(&work, key)
            hit = -1
            for i in range(nbasis):
                if _divides(lms[i], key, nf, nb, comp):
                    hit = i
                    break
            if hit < 0:
                out_keys.append(key)
                out_coeffs.append(coeff)
                continue
            gkrow = grows[hit]
            rowlen = glens[hit]
            gc_list = <list> gcoeffs[hit]
            lead = gc_list[0]
            d = gcd(coeff, lead)
            mult_f = lead // d
            mult_g = coeff // d
            scaled = mult_f != 1
            if scaled:
                scale = scale * mult_f
                _map_scale(&work, mult_f)
                for j in range(len(out_coeffs)):
                    out_coeffs[j] = out_coeffs[j] * mult_f
            gk0 = gkrow[0]
            quotient = key - gk0 + off
            if not bflag[hit]:
                for f in range(nf):
                    bcache[hit * nf + f] = 0
                for j in range(rowlen):
                    _raw_fields(gkrow[j], nf, nb, comp, qraw)
                    for f in range(nf):
                        if qraw[f] > bcache[hit * nf + f]:
                            bcache[hit * nf + f] = qraw[f]
                bflag[hit] = 1
            _raw_fields(quotient, nf, nb, comp, qraw)
            for f in range(nf):
                if qraw[f] + bcache[hit * nf + f] > mask:
                    raise OverflowError(
                        "monomial exponent exceeded packing capacity during reduction"
                    )
            for j in range(1, rowlen):
                k2 = quotient + gkrow[j] - off
                delta = mult_g * gc_list[j]
                borrowed = _map_get(&work, k2)
                if borrowed == NULL:
                    _map_set(&work, k2, -delta)
                    _heap_push(&heap, k2)
                else:
                    cur = (<object> borrowed) - delta
                    if cur:
                        _map_set(&work, k2, cur)
                    else:
                        _map_del(&work, k2)
            if scaled:
                g = _content(&work, out_coeffs, 1)
                if exact_mode:
                    g = gcd(g, scale)
                if g > 1:
                    _map_divide(&work, g)
                    for j in range(len(out_coeffs)):
                        out_coeffs[j] = out_coeffs[j] // g
                    if exact_mode:
                        scale = scale // g

        if not out_keys:
            return [], [], 1
        if exact_mode:
            g = gcd(scale, _content(NULL, out_coeffs, 1))
            if g > 1:
                for j in range(len(out_coeffs)):
                    out_coeffs[j] = out_coeffs[j] // g
                scale = scale // g
            return out_keys, out_coeffs, scale
        g = _content(NULL, out_coeffs, 1)
        if out_coeffs[0] < 0:
            g = -g
        if g != 1:
            for j in range(len(out_coeffs)):
                out_coeffs[j] = out_coeffs[j] // g
        return out_keys, out_coeffs, 1
    finally:
        _map_free(&work)
        free(heap.data)
        if grows != NULL:
            for i in range(nbasis):
                free(grows[i])
        free(lms)
        free(grows)
        free(glens)
        free(bcache)
        free(bflag)
        free(qraw)
