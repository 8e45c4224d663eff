# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same classes and results as ``_kernels_py``."""

from libc.stdint cimport uint64_t, int64_t
from cpython.mem cimport PyMem_Malloc, PyMem_Free

TREE = 0
CHORDAL = 1
DISMANTLABLE = 2

RULE_DIRECTED = 1
RULE_OUT = 2
RULE_TRIANGLE = 4

RULE_N1 = 1
RULE_N2 = 2

MAX_MASK_NODES = 64


cdef enum:
    C_TREE = 0
    C_CHORDAL = 1


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef class _Csr:
    """Port tables in compressed rows plus a dense port matrix."""

    cdef public int n
    cdef int *offs
    cdef int *nbr
    cdef int *rport
    cdef int *portmat

    def __cinit__(self, adjacency):
        cdef int n = len(adjacency)
        cdef int total = 0
        cdef int v, p, u, k
        self.n = n
        for row in adjacency:
            total += len(row)
        self.offs = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        self.nbr = <int *> PyMem_Malloc((total + 1) * sizeof(int))
        self.rport = <int *> PyMem_Malloc((total + 1) * sizeof(int))
        self.portmat = <int *> PyMem_Malloc((<size_t> n * n + 1) * sizeof(int))
        if not (self.offs and self.nbr and self.rport and self.portmat):
            raise MemoryError()
        for k in range(n * n):
            self.portmat[k] = -1
        k = 0
        for v in range(n):
            self.offs[v] = k
            row = adjacency[v]
            for p in range(len(row)):
                u = row[p]
                self.nbr[k] = u
                self.portmat[v * n + u] = p
                k += 1
        self.offs[n] = k
        for v in range(n):
            for k in range(self.offs[v], self.offs[v + 1]):
                self.rport[k] = self.portmat[self.nbr[k] * n + v]

    def __dealloc__(self):
        PyMem_Free(self.offs)
        PyMem_Free(self.nbr)
        PyMem_Free(self.rport)
        PyMem_Free(self.portmat)


cdef class OrientationKernel:
    cdef _Csr g
    cdef public int n
    cdef public int scheme
    cdef list _edges
    cdef int *out_buf
    cdef int *in_buf

    def __cinit__(self, adjacency, edges, scheme):
        self.g = _Csr(adjacency)
        self.n = self.g.n
        self.scheme = scheme
        self._edges = [(int(u), int(v)) for u, v in edges]
        self.out_buf = <int *> PyMem_Malloc((self.n + 1) * sizeof(int))
        self.in_buf = <int *> PyMem_Malloc((self.n + 1) * sizeof(int))
        if not (self.out_buf and self.in_buf):
            raise MemoryError()

    def __dealloc__(self):
        PyMem_Free(self.out_buf)
        PyMem_Free(self.in_buf)

    @property
    def edges(self):
        return list(self._edges)

    def violations(self, states, int v):
        cdef int n = self.n
        cdef int64_t sv = states[v]
        cdef int64_t su, sa, sb
        cdef int k, p, u, bv, bu, nout = 0, nin = 0, i, j, w, x, a, b, pa, pb
        cdef int result = 0
        cdef bint dominated, ok
        cdef int *out = self.out_buf
        cdef int *inc = self.in_buf
        cdef _Csr g = self.g
        for k in range(g.offs[v], g.offs[v + 1]):
            p = k - g.offs[v]
            u = g.nbr[k]
            su = states[u]
            bv = (sv >> p) & 1
            bu = (su >> g.rport[k]) & 1
            if bv == bu:
                result |= RULE_DIRECTED
            elif bv:
                out[nout] = u
                nout += 1
            else:
                inc[nin] = u
                nin += 1
        if self.scheme == C_TREE:
            if nout >= 2:
                result |= RULE_OUT
            return result
        if self.scheme == C_CHORDAL:
            ok = True
            for i in range(nout):
                for j in range(i + 1, nout):
                    if g.portmat[out[i] * n + out[j]] < 0:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                result |= RULE_OUT
        elif nout > 0:
            dominated = False
            for i in range(nout):
                w = out[i]
                ok = True
                for j in range(nout):
                    x = out[j]
                    if x != w and g.portmat[w * n + x] < 0:
                        ok = False
                        break
                if ok:
                    dominated = True
                    break
            if not dominated:
                result |= RULE_OUT
        for i in range(nout):
            a = out[i]
            sa = states[a]
            for j in range(nin):
                b = inc[j]
                pa = g.portmat[a * n + b]
                if pa < 0:
                    continue
                pb = g.portmat[b * n + a]
                sb = states[b]
                if ((sa >> pa) & 1) and not ((sb >> pb) & 1):
                    return result | RULE_TRIANGLE
        return result

    def accepted_dirmasks(self):
        """All conflict-free orientations accepted at every node, as edge-direction masks."""
        cdef int n = self.n
        cdef int m = len(self._edges)
        cdef int v, e, w, a
        cdef uint64_t mask, total, o, rest, inc
        cdef bint ok, dominated
        cdef int scheme = self.scheme
        if n > MAX_MASK_NODES:
            raise ValueError(f"enumeration supports at most {MAX_MASK_NODES} nodes")
        if m > 62:
            raise ValueError("too many edges to enumerate")
        cdef uint64_t nbr[64]
        cdef uint64_t closed[64]
        cdef uint64_t out[64]
        cdef int eu[64]
        cdef int ev[64]
        cdef _Csr g = self.g
        for v in range(n):
            nbr[v] = 0
            for e in range(g.offs[v], g.offs[v + 1]):
                nbr[v] |= (<uint64_t> 1) << g.nbr[e]
            closed[v] = nbr[v] | ((<uint64_t> 1) << v)
        for e in range(m):
            eu[e] = self._edges[e][0]
            ev[e] = self._edges[e][1]
        accepted = []
        total = (<uint64_t> 1) << m
        mask = 0
        while mask < total:
            for v in range(n):
                out[v] = 0
            for e in range(m):
                if (mask >> e) & 1:
                    out[eu[e]] |= (<uint64_t> 1) << ev[e]
                else:
                    out[ev[e]] |= (<uint64_t> 1) << eu[e]
            ok = True
            for v in range(n):
                o = out[v]
                if scheme == C_TREE:
                    if o & (o - 1):
                        ok = False
                        break
                    continue
                if o == 0:
                    continue
                if scheme == C_CHORDAL:
                    rest = o
                    while rest:
                        w = _ctz(rest)
                        rest &= rest - 1
                        if o & ~closed[w]:
                            ok = False
                            break
                    if not ok:
                        break
                else:
                    dominated = False
                    rest = o
                    while rest:
                        w = _ctz(rest)
                        rest &= rest - 1
                        if not (o & ~closed[w]):
                            dominated = True
                            break
                    if not dominated:
                        ok = False
                        break
                inc = nbr[v] & ~o
                rest = o
                while rest:
                    a = _ctz(rest)
                    rest &= rest - 1
                    if out[a] & inc:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                accepted.append(mask)
            mask += 1
        return accepted


cdef class TernaryKernel:
    cdef _Csr g
    cdef public int n
    cdef public int root
    cdef int *buf

    def __cinit__(self, adjacency, root):
        self.g = _Csr(adjacency)
        self.n = self.g.n
        self.root = root
        self.buf = <int *> PyMem_Malloc((self.n + 1) * sizeof(int))
        if not self.buf:
            raise MemoryError()

    def __dealloc__(self):
        PyMem_Free(self.buf)

    cdef int _check(self, int *values, int v) noexcept:
        cdef _Csr g = self.g
        cdef int n = self.n
        cdef int i = values[v]
        cdef int up = (i + 1) % 3
        cdef int down = (i + 2) % 3
        cdef int result = 0
        cdef int k, k2, a, b
        cdef bint found
        if v != self.root:
            found = False
            for k in range(g.offs[v], g.offs[v + 1]):
                if values[g.nbr[k]] == down:
                    found = True
                    break
            if not found:
                result |= RULE_N1
        for k in range(g.offs[v], g.offs[v + 1]):
            a = g.nbr[k]
            if values[a] != up:
                continue
            for k2 in range(g.offs[v], g.offs[v + 1]):
                b = g.nbr[k2]
                if values[b] == down and g.portmat[a * n + b] >= 0:
                    return result | RULE_N2
        return result

    def violations(self, values, int v):
        cdef int k
        cdef _Csr g = self.g
        cdef int *buf = self.buf
        buf[v] = values[v]
        for k in range(g.offs[v], g.offs[v + 1]):
            buf[g.nbr[k]] = values[g.nbr[k]]
        return self._check(buf, v)

    def accepted_assignments(self):
        """Base-3 codes (node 0 most significant) of assignments accepted everywhere."""
        cdef int n = self.n
        cdef int v
        cdef int64_t code, total, c
        cdef bint ok
        if n > MAX_MASK_NODES:
            raise ValueError(f"enumeration supports at most {MAX_MASK_NODES} nodes")
        cdef int *values = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        if not values:
            raise MemoryError()
        accepted = []
        total = 1
        for v in range(n):
            total *= 3
        try:
            for v in range(n):
                values[v] = 0
            code = 0
            while code < total:
                ok = True
                for v in range(n):
                    if self._check(values, v):
                        ok = False
                        break
                if ok:
                    accepted.append(code)
                code += 1
                # odometer increment, last node fastest
                v = n - 1
                while v >= 0:
                    values[v] += 1
                    if values[v] < 3:
                        break
                    values[v] = 0
                    v -= 1
        finally:
            PyMem_Free(values)
        return accepted
