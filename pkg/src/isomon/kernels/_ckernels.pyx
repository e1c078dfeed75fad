# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the functions in ``_pykernels``."""

BACKEND = "cython"


def compose_images(bytes a, bytes b):
    cdef Py_ssize_t i, n = len(a)
    cdef const unsigned char[:] av = a
    cdef const unsigned char[:] bv = b
    cdef bytearray out = bytearray(n)
    cdef unsigned char x
    for i in range(n):
        x = av[i]
        out[i] = bv[x - 1] if x else 0
    return bytes(out)


cdef inline bytes _compose(const unsigned char[:] av, const unsigned char[:] bv,
                           Py_ssize_t n, unsigned char* buf):
    cdef Py_ssize_t i
    cdef unsigned char x
    for i in range(n):
        x = av[i]
        buf[i] = bv[x - 1] if x else 0
    return buf[:n]


def closure_images(list gens, bytes identity, Py_ssize_t limit):
    cdef Py_ssize_t n = len(identity)
    cdef set seen = {identity}
    cdef list order = [identity]
    cdef list frontier = [identity]
    cdef list nxt
    cdef bytes a, g, c
    cdef bytearray scratch = bytearray(max(n, 1))
    cdef unsigned char* buf = scratch
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _compose(a, g, n, buf)
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    nxt.append(c)
                    if len(order) > limit:
                        return None
        frontier = nxt
    return order


def expand(list frontier, list sides, Py_ssize_t maxlen, dict seen, other, Py_ssize_t cap):
    cdef list nxt = []
    cdef str w, pat, rep, v
    cdef Py_ssize_t lw, lp, lr, p, si, nsides = len(sides)
    cdef list pats = [s[0] for s in sides]
    cdef list reps = [s[1] for s in sides]
    for w in frontier:
        if len(seen) > cap:
            return nxt, None, True
        lw = len(w)
        for si in range(nsides):
            pat = <str>pats[si]
            rep = <str>reps[si]
            lp = len(pat)
            lr = len(rep)
            if lw - lp + lr > maxlen:
                continue
            if lp == 0:
                for p in range(lw + 1):
                    v = w[:p] + rep + w[p:]
                    if v not in seen:
                        seen[v] = (w, p, si)
                        if v in other:
                            return nxt, v, False
                        nxt.append(v)
                continue
            p = w.find(pat)
            while p >= 0:
                v = w[:p] + rep + w[p + lp:]
                if v not in seen:
                    seen[v] = (w, p, si)
                    if v in other:
                        return nxt, v, False
                    nxt.append(v)
                p = w.find(pat, p + 1)
    return nxt, None, False


def reduce_word(str word, list rules):
    cdef Py_ssize_t best, end, p, bp = 0
    cdef str lhs, rhs, blhs = None, brhs = None
    cdef tuple rule
    while True:
        best = -1
        for rule in rules:
            lhs = <str>rule[0]
            p = word.find(lhs)
            if p >= 0:
                end = p + len(lhs)
                if best < 0 or end < best:
                    best = end
                    bp = p
                    blhs = lhs
                    brhs = <str>rule[1]
        if best < 0:
            return word
        word = word[:bp] + brhs + word[bp + len(blhs):]
