"""Pure-Python kernels; the fallback when the compiled extension is absent.

Both backends expose the same two classes with the same results.  States
are integers: for orientation schemes bit ``p`` of ``states[v]`` is the
certificate bit at port ``p`` of ``v``; for the spanning-tree scheme
``values[v]`` is in ``{0, 1, 2}``.  Nodes inside the ball being checked
must not hold the reset state.
"""

TREE = 0
CHORDAL = 1
DISMANTLABLE = 2

RULE_DIRECTED = 1
RULE_OUT = 2
RULE_TRIANGLE = 4

RULE_N1 = 1
RULE_N2 = 2

MAX_MASK_NODES = 64


def _masks(adjacency):
    nbr = []
    for v, row in enumerate(adjacency):
        mask = 0
        for u in row:
            mask |= 1 << u
        nbr.append(mask)
    return nbr


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class OrientationKernel:
    def __init__(self, adjacency, edges, scheme):
        self.n = len(adjacency)
        self.adjacency = [list(row) for row in adjacency]
        self.edges = [(int(u), int(v)) for u, v in edges]
        self.scheme = int(scheme)
        self._port = {}
        for v, row in enumerate(self.adjacency):
            for p, u in enumerate(row):
                self._port[(v, u)] = p
        self._rport = [[self._port[(u, v)] for u in row] for v, row in enumerate(self.adjacency)]

    def violations(self, states, v):
        sv = states[v]
        port = self._port
        result = 0
        out = []
        inc = []
        for p, u in enumerate(self.adjacency[v]):
            bv = (sv >> p) & 1
            bu = (states[u] >> self._rport[v][p]) & 1
            if bv == bu:
                result |= RULE_DIRECTED
            elif bv:
                out.append(u)
            else:
                inc.append(u)
        if self.scheme == TREE:
            if len(out) >= 2:
                result |= RULE_OUT
            return result
        if self.scheme == CHORDAL:
            for i in range(len(out)):
                for j in range(i + 1, len(out)):
                    if (out[i], out[j]) not in port:
                        result |= RULE_OUT
                        break
                if result & RULE_OUT:
                    break
        elif out:
            dominated = False
            for w in out:
                if all(x == w or (w, x) in port for x in out):
                    dominated = True
                    break
            if not dominated:
                result |= RULE_OUT
        for a in out:
            for b in inc:
                pa = port.get((a, b))
                if pa is None:
                    continue
                if (states[a] >> pa) & 1 and not (states[b] >> port[(b, a)]) & 1:
                    return result | RULE_TRIANGLE
        return result

    def _bitmask_ok(self, out, nbr, closed):
        scheme = self.scheme
        for v in range(self.n):
            o = out[v]
            if scheme == TREE:
                if o & (o - 1):
                    return False
                continue
            if o:
                if scheme == CHORDAL:
                    for w in _bits(o):
                        if o & ~closed[w]:
                            return False
                else:
                    for w in _bits(o):
                        if not o & ~closed[w]:
                            break
                    else:
                        return False
                inc = nbr[v] & ~o
                for a in _bits(o):
                    if out[a] & inc:
                        return False
        return True

    def accepted_dirmasks(self):
        """All conflict-free orientations accepted at every node, as edge-direction masks.

        Bit ``e`` set means ``edges[e]`` points from its first endpoint to
        its second.  Walks the masks in Gray-code order, then sorts.
        """
        if self.n > MAX_MASK_NODES:
            raise ValueError(f"enumeration supports at most {MAX_MASK_NODES} nodes")
        nbr = _masks(self.adjacency)
        closed = [nbr[v] | (1 << v) for v in range(self.n)]
        out = [0] * self.n
        for u, v in self.edges:
            out[v] |= 1 << u
        gray = 0
        accepted = []
        if self._bitmask_ok(out, nbr, closed):
            accepted.append(0)
        for i in range(1, 1 << len(self.edges)):
            e = (i & -i).bit_length() - 1
            gray ^= 1 << e
            u, v = self.edges[e]
            out[u] ^= 1 << v
            out[v] ^= 1 << u
            if self._bitmask_ok(out, nbr, closed):
                accepted.append(gray)
        accepted.sort()
        return accepted


class TernaryKernel:
    def __init__(self, adjacency, root):
        self.n = len(adjacency)
        self.adjacency = [list(row) for row in adjacency]
        self.root = int(root)
        self._adj = [set(row) for row in self.adjacency]

    def violations(self, values, v):
        i = values[v]
        up = (i + 1) % 3
        down = (i + 2) % 3
        result = 0
        row = self.adjacency[v]
        if v != self.root and not any(values[u] == down for u in row):
            result |= RULE_N1
        for a in row:
            if values[a] != up:
                continue
            for b in row:
                if values[b] == down and b in self._adj[a]:
                    return result | RULE_N2
        return result

    def accepted_assignments(self):
        """Base-3 codes (node 0 most significant) of assignments accepted everywhere."""
        n = self.n
        if n > MAX_MASK_NODES:
            raise ValueError(f"enumeration supports at most {MAX_MASK_NODES} nodes")
        accepted = []
        values = [0] * n
        total = 3**n
        for code in range(total):
            c = code
            for v in range(n - 1, -1, -1):
                values[v] = c % 3
                c //= 3
            for v in range(n):
                if self.violations(values, v):
                    break
            else:
                accepted.append(code)
        return accepted
