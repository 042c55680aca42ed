"""(2+eps)-approximate dynamic k-center with known deletion times.

Per radius guess the structure keeps an ordered list of centers, one
doubly-linked member list per cluster (the center included), an
unclustered list, and per-cluster persistent/vanishing counters. A global
expiry queue drives deletions; a size-balance rule triggers suffix
reclustering so that reassignment work stays amortized O(k) per update.
"""

from __future__ import annotations

from .core import DeletionQueue, GuessLadder, Metric, build_guess_ladder, deletion_key
from .errors import InvalidBeta, NoFeasibleGuess, NonMonotoneArrival, PointNotFound
from .oracle import Solution


class _Node:
    __slots__ = ("point", "prev", "next", "list")

    def __init__(self, point):
        self.point = point
        self.prev = None
        self.next = None
        self.list = None


class _DList:
    """Intrusive doubly-linked list; nodes unlink in O(1) via handles."""

    __slots__ = ("head", "tail", "size", "owner")

    def __init__(self, owner=None):
        self.head = None
        self.tail = None
        self.size = 0
        self.owner = owner  # the cluster this list belongs to; None for U

    def append(self, point) -> _Node:
        node = _Node(point)
        node.list = self
        node.prev = self.tail
        if self.tail is not None:
            self.tail.next = node
        self.tail = node
        if self.head is None:
            self.head = node
        self.size += 1
        return node

    def remove(self, node: _Node):
        if node.list is not self:
            raise PointNotFound(f"node for point {node.point.id} not in this list")
        if node.prev is not None:
            node.prev.next = node.next
        else:
            self.head = node.next
        if node.next is not None:
            node.next.prev = node.prev
        else:
            self.tail = node.prev
        node.prev = node.next = node.list = None
        self.size -= 1

    def __iter__(self):
        n = self.head
        while n is not None:
            nxt = n.next
            yield n.point
            n = nxt

    def __len__(self):
        return self.size


class _Cluster:
    __slots__ = ("center", "members", "persistent", "vanishing")

    def __init__(self, center):
        self.center = center
        self.members = _DList(owner=self)
        self.persistent = 0
        self.vanishing = 0


class TwoApproxGuessState:
    """Per-guess clustered structure (centers, member lists, unclustered)."""

    __slots__ = ("gamma", "clusters", "unclustered", "handles")

    def __init__(self, gamma: float):
        self.gamma = gamma
        self.clusters = []
        self.unclustered = _DList(owner=None)
        self.handles = {}  # point id -> _Node

    def stored_count(self):
        return len(self.handles)


class TwoApproxClustering:
    """Dynamic clustering over the full guess ladder.

    ``update(p)`` handles one arrival (after flushing due expiries);
    ``update(None, t)`` flushes expiries only. ``query(t)`` returns the
    centers of the smallest guess whose unclustered set is empty.
    """

    def __init__(
        self,
        k: int,
        epsilon: float,
        d_min: float,
        d_max: float,
        metric: Metric,
        reclustering_enabled: bool = True,
        ladder: GuessLadder | None = None,
    ):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if epsilon <= 0:
            raise InvalidBeta(f"epsilon must be positive, got {epsilon}")
        self.k = k
        self.epsilon = epsilon
        self.metric = metric
        self.reclustering_enabled = reclustering_enabled
        self.ladder = ladder if ladder is not None else build_guess_ladder(
            d_min, d_max, epsilon / 2.0
        )
        self.states = [TwoApproxGuessState(g) for g in self.ladder]
        self.queue = DeletionQueue()
        self.ops = 0  # structural operation counter
        self.peak_stored = 0
        self._last_arrival = None
        self._last_query_index = None

    @classmethod
    def single_guess(cls, k, gamma, metric, reclustering_enabled=True):
        """One-guess instance, used by the adversarial-stream benchmark."""
        ladder = GuessLadder(gamma, gamma, 1.0, (gamma,))
        return cls(k, 2.0, gamma, gamma, metric, reclustering_enabled, ladder)

    # -- update ------------------------------------------------------------

    def update(self, p=None, t=None):
        if p is not None:
            if t is None:
                t = p.t_arr
            if self._last_arrival is not None and p.t_arr <= self._last_arrival:
                raise NonMonotoneArrival(
                    f"arrival {p.t_arr} not after {self._last_arrival}"
                )
        elif t is None:
            raise ValueError("update(None) needs an explicit time")
        while len(self.queue) and self.queue.peek_key()[0] <= t:
            q = self.queue.pop()
            self.ops += 1
            for st in self.states:
                self._delete_guess(st, q)
        if p is not None:
            for st in self.states:
                self._insert_guess(st, p)
            self.queue.push(p)
            self.ops += 1
            self._last_arrival = p.t_arr
        self._track_peak()

    def _insert_guess(self, st: TwoApproxGuessState, p):
        two_g = 2.0 * st.gamma
        for cl in st.clusters:
            self.ops += 1
            if self.metric.distance(p, cl.center) <= two_g:
                self._attach(st, cl, p)
                self._recluster(st)
                return
        if len(st.clusters) < self.k:
            self._open_cluster(st, p)
        else:
            st.handles[p.id] = st.unclustered.append(p)
            self.ops += 1
        self._recluster(st)

    def _attach(self, st, cl: _Cluster, p):
        st.handles[p.id] = cl.members.append(p)
        if deletion_key(p) <= deletion_key(cl.center):
            cl.vanishing += 1
        else:
            cl.persistent += 1
        self.ops += 1

    def _detach(self, st, cl: _Cluster, node: _Node):
        p = node.point
        cl.members.remove(node)
        if deletion_key(p) <= deletion_key(cl.center):
            cl.vanishing -= 1
        else:
            cl.persistent -= 1
        self.ops += 1

    def _open_cluster(self, st, p) -> _Cluster:
        cl = _Cluster(p)
        st.clusters.append(cl)
        st.handles[p.id] = cl.members.append(p)
        cl.vanishing += 1  # the center expires no later than itself
        self.ops += 1
        return cl

    def _delete_guess(self, st: TwoApproxGuessState, p):
        node = st.handles.pop(p.id, None)
        if node is None:
            raise PointNotFound(f"point {p.id} has no handle for guess {st.gamma}")
        owner = node.list.owner
        if owner is None:  # unclustered
            st.unclustered.remove(node)
            self.ops += 1
            self._recluster(st)
            return
        cl = owner
        if cl.center.id != p.id:
            self._detach(st, cl, node)
            self._recluster(st)
            return

        # Center deletion: reassign the remaining members to higher-index
        # clusters (or new clusters / the unclustered set), drop cluster i,
        # then promote the longest-lived unclustered point, if any.
        i = st.clusters.index(cl)
        self.ops += 1
        cl.members.remove(node)
        self.ops += 1
        two_g = 2.0 * st.gamma
        for x in list(cl.members):
            xnode = st.handles[x.id]
            cl.members.remove(xnode)
            placed = False
            for j in range(i + 1, len(st.clusters)):
                self.ops += 1
                if self.metric.distance(x, st.clusters[j].center) <= two_g:
                    self._attach(st, st.clusters[j], x)
                    placed = True
                    break
            if not placed:
                if len(st.clusters) < self.k:
                    self._open_cluster(st, x)
                else:
                    st.handles[x.id] = st.unclustered.append(x)
                    self.ops += 1
        st.clusters.remove(cl)
        self.ops += 1

        if st.unclustered.size > 0:
            best = None
            for u in st.unclustered:
                self.ops += 1
                if best is None or deletion_key(u) > deletion_key(best):
                    best = u
            unode = st.handles[best.id]
            st.unclustered.remove(unode)
            new_cl = self._open_cluster(st, best)
            for x in list(st.unclustered):
                self.ops += 1
                if self.metric.distance(x, best) <= two_g:
                    st.unclustered.remove(st.handles[x.id])
                    self._attach(st, new_cl, x)
        self._recluster(st)

    def _recluster(self, st: TwoApproxGuessState):
        if not self.reclustering_enabled:
            return
        ell = len(st.clusters)
        if ell == 0:
            return
        # Smallest index whose suffix has more persistent than
        # vanishing-plus-unclustered points.
        suf_p = suf_v = 0
        trigger = None
        suffix = [None] * ell
        for j in range(ell - 1, -1, -1):
            suf_p += st.clusters[j].persistent
            suf_v += st.clusters[j].vanishing
            suffix[j] = (suf_p, suf_v)
            self.ops += 1
        u_size = st.unclustered.size
        for j in range(ell):
            if suffix[j][0] > u_size + suffix[j][1]:
                trigger = j
                break
        if trigger is None:
            return

        pool = []
        for cl in st.clusters[trigger:]:
            for x in cl.members:
                pool.append(x)
                del st.handles[x.id]
                self.ops += 1
        for x in st.unclustered:
            pool.append(x)
            del st.handles[x.id]
            self.ops += 1
        del st.clusters[trigger:]
        st.unclustered = _DList(owner=None)

        two_g = 2.0 * st.gamma
        for _ in range(trigger, self.k):
            if not pool:
                break
            best = pool[0]
            for x in pool:
                self.ops += 1
                if deletion_key(x) > deletion_key(best):
                    best = x
            pool.remove(best)
            new_cl = self._open_cluster(st, best)
            rest = []
            for x in pool:
                self.ops += 1
                if self.metric.distance(x, best) <= two_g:
                    self._attach(st, new_cl, x)
                else:
                    rest.append(x)
            pool = rest
        for x in pool:
            st.handles[x.id] = st.unclustered.append(x)
            self.ops += 1

    # -- query -------------------------------------------------------------

    def query(self, t) -> Solution:
        """Centers of the smallest guess with an empty unclustered set."""
        key = self.queue.peek_key()
        if key is not None and key[0] <= t:
            self.update(None, t)
        for idx, st in enumerate(self.states):
            self.ops += 1
            if st.unclustered.size == 0:
                self._last_query_index = idx
                centers = [cl.center for cl in st.clusters]
                return Solution(
                    centers, 0.0 if not centers else None, guess_used=st.gamma
                )
        raise NoFeasibleGuess("unclustered points remain at every guess")

    def witness(self):
        """k+1 points pairwise farther than 2*gamma' apart, for gamma' one
        ladder rung below the guess returned by the last query; None when
        that guess was already the smallest."""
        if self._last_query_index is None:
            raise ValueError("witness requires a preceding query")
        if self._last_query_index == 0:
            return None
        st = self.states[self._last_query_index - 1]
        centers = [cl.center for cl in st.clusters]
        u = min(st.unclustered, key=lambda q: q.id)
        return centers + [u]

    # -- instrumentation ----------------------------------------------------

    def stored_points(self) -> int:
        return len(self.queue) + sum(st.stored_count() for st in self.states)

    def _track_peak(self):
        n = self.stored_points()
        if n > self.peak_stored:
            self.peak_stored = n

    def classification(self):
        """(guess index, point id) -> True when vanishing. Unclustered
        points are vanishing by definition."""
        out = {}
        for gi, st in enumerate(self.states):
            for cl in st.clusters:
                ck = deletion_key(cl.center)
                for x in cl.members:
                    out[(gi, x.id)] = deletion_key(x) <= ck
            for x in st.unclustered:
                out[(gi, x.id)] = True
        return out
