"""Small integer max-flow (Edmonds-Karp) used for the face-reachability tests."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed network with integer capacities; parallel arcs are kept apart."""

    def __init__(self, n: int = 0):
        self.n = n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, cap: int) -> int:
        if cap < 0:
            raise ValueError("negative capacity")
        a = len(self.head)
        self.head += (v, u)
        self.cap += (cap, 0)
        self.adj[u].append(a)
        self.adj[v].append(a + 1)
        return a

    @classmethod
    def from_arcs(cls, n: int, tails: list[int], heads: list[int], caps: list[int]) -> "FlowNetwork":
        """Bulk construction; arc i goes tails[i] -> heads[i]."""
        net = cls(n)
        m = len(tails)
        head = [0] * (2 * m)
        head[0::2] = heads
        head[1::2] = tails
        cap = [0] * (2 * m)
        cap[0::2] = caps
        adj = net.adj
        for i in range(m):
            adj[tails[i]].append(2 * i)
            adj[heads[i]].append(2 * i + 1)
        net.head = head
        net.cap = cap
        return net

    def copy(self) -> "FlowNetwork":
        c = FlowNetwork(0)
        c.n = self.n
        c.head = self.head[:]
        c.cap = self.cap[:]
        c.adj = [a[:] for a in self.adj]
        return c

    def arcs(self):
        for a in range(0, len(self.head), 2):
            yield self.head[a + 1], self.head[a], self.cap[a] + self.cap[a + 1]


def max_flow(net: FlowNetwork, s: int, t: int, limit: int | None = None) -> int:
    """Value of a maximum s-t flow (stops early once ``limit`` is reached).

    The network is not modified; residual capacities live in a local copy.
    """
    if s == t:
        raise ValueError("source equals sink")
    cap = net.cap[:]
    head, adj = net.head, net.adj
    flow = 0
    while limit is None or flow < limit:
        prev = [-1] * net.n
        prev[s] = -2
        q = deque([s])
        while q and prev[t] == -1:
            x = q.popleft()
            for a in adj[x]:
                if cap[a] > 0 and prev[head[a]] == -1:
                    prev[head[a]] = a
                    q.append(head[a])
        if prev[t] == -1:
            break
        push = None
        y = t
        while y != s:
            a = prev[y]
            push = cap[a] if push is None else min(push, cap[a])
            y = head[a ^ 1]
        if limit is not None:
            push = min(push, limit - flow)
        y = t
        while y != s:
            a = prev[y]
            cap[a] -= push
            cap[a ^ 1] += push
            y = head[a ^ 1]
        flow += push
    return flow
