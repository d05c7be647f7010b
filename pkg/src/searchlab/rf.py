"""Random-forest regression surrogate.

An ensemble of axis-aligned regression trees, each trained on a bootstrap
resample (with replacement, same size) of the data. Point predictions are
the arithmetic mean of the individual tree outputs; the uncertainty proxy is
the population variance of those outputs, so a single-tree forest always
reports zero variance and the ensemble mean is bounded by the target range.

Determinism contract: tree i draws its bootstrap from a generator seeded
with ``params.seed + i``, and split ties are broken by lowest feature index
then lowest threshold, so serial and per-tree-parallel fits agree bit for
bit and refits are reproducible.

Acquisition optimization evaluates thousands of points per fitted forest;
growth and batch descent therefore run as numba kernels when numba is
importable, with equivalent numpy/Python implementations as fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, UsageError

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@dataclass(frozen=True)
class RFParams:
    n_trees: int = 100
    min_leaf: int = 2  # minimum samples on each side of every split
    feature_subset: int = 2  # candidate split features per node (d = 2: all)
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1 or self.min_leaf < 1 or not 1 <= self.feature_subset <= 2:
            raise ConfigurationError(f"invalid forest parameters: {self}")


@dataclass(frozen=True)
class _Tree:
    # flat node arrays; feature == -1 marks a leaf
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def predict(self, P: np.ndarray) -> np.ndarray:
        idx = np.zeros(P.shape[0], dtype=np.int64)
        while True:
            active = np.flatnonzero(self.feature[idx] >= 0)
            if active.size == 0:
                return self.value[idx]
            node = idx[active]
            go_left = P[active, self.feature[node]] <= self.threshold[node]
            idx[active] = np.where(go_left, self.left[node], self.right[node])


@dataclass(frozen=True)
class RFModel:
    trees: tuple[_Tree, ...]
    params: RFParams
    y_min: float
    y_max: float
    # stacked copies of the tree arrays (child indices made absolute) so one
    # kernel call covers the whole ensemble
    _stack: dict = field(repr=False, compare=False, default_factory=dict)


@njit(cache=True)
def _grow_kernel(Xb, yb, min_leaf):
    """Grow one tree on (Xb, yb); returns flat node arrays and node count."""
    n = Xb.shape[0]
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap)
    idxbuf = np.arange(n)
    stack = np.empty((cap, 3), np.int64)  # (node, start, end)

    n_nodes = 1
    stack[0, 0] = 0
    stack[0, 1] = 0
    stack[0, 2] = n
    top = 1
    while top > 0:
        top -= 1
        node, s, e = stack[top, 0], stack[top, 1], stack[top, 2]
        size = e - s
        total = 0.0
        total_sq = 0.0
        y_lo = yb[idxbuf[s]]
        y_hi = y_lo
        for i in range(s, e):
            v = yb[idxbuf[i]]
            total += v
            total_sq += v * v
            if v < y_lo:
                y_lo = v
            if v > y_hi:
                y_hi = v
        value[node] = total / size
        if size < 2 * min_leaf or y_lo == y_hi:
            continue

        best_sse = np.inf
        best_j = -1
        best_thr = 0.0
        for j in range(2):
            xs_raw = np.empty(size)
            for i in range(size):
                xs_raw[i] = Xb[idxbuf[s + i], j]
            order = np.argsort(xs_raw, kind="mergesort")
            if xs_raw[order[0]] == xs_raw[order[size - 1]]:
                continue
            lsum = 0.0
            lsq = 0.0
            for k in range(1, size):
                v = yb[idxbuf[s + order[k - 1]]]
                lsum += v
                lsq += v * v
                if k < min_leaf or size - k < min_leaf:
                    continue
                x_l = xs_raw[order[k - 1]]
                x_r = xs_raw[order[k]]
                if x_l == x_r:
                    continue
                sse = (lsq - lsum * lsum / k) + (
                    (total_sq - lsq) - (total - lsum) * (total - lsum) / (size - k)
                )
                if sse < best_sse:
                    best_sse = sse
                    best_j = j
                    best_thr = (x_l + x_r) / 2
        if best_j < 0:
            continue

        # stable two-pass partition of idxbuf[s:e] on the chosen split
        seg = idxbuf[s:e].copy()
        w = s
        for i in range(size):
            if Xb[seg[i], best_j] <= best_thr:
                idxbuf[w] = seg[i]
                w += 1
        mid = w
        for i in range(size):
            if Xb[seg[i], best_j] > best_thr:
                idxbuf[w] = seg[i]
                w += 1

        feature[node] = best_j
        threshold[node] = best_thr
        left[node] = n_nodes
        right[node] = n_nodes + 1
        stack[top, 0] = n_nodes
        stack[top, 1] = s
        stack[top, 2] = mid
        top += 1
        stack[top, 0] = n_nodes + 1
        stack[top, 1] = mid
        stack[top, 2] = e
        top += 1
        n_nodes += 2
    return feature, threshold, left, right, value, n_nodes


@njit(cache=True)
def _descend_kernel(feature, threshold, left, right, value, roots, P):
    """Individual outputs of every tree at every point: (n_trees, k)."""
    n_trees = roots.shape[0]
    k = P.shape[0]
    out = np.empty((n_trees, k))
    for t in range(n_trees):
        root = roots[t]
        for j in range(k):
            node = root
            f = feature[node]
            while f >= 0:
                if P[j, f] <= threshold[node]:
                    node = left[node]
                else:
                    node = right[node]
                f = feature[node]
            out[t, j] = value[node]
    return out


def _best_split(X: np.ndarray, y: np.ndarray, features, min_leaf: int):
    """(sse, feature, threshold) of the best admissible split, or None."""
    n = y.shape[0]
    if n < 2 * min_leaf:
        return None
    ks = np.arange(min_leaf, n - min_leaf + 1)
    best = None
    for j in features:
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        if xs[0] == xs[-1]:
            continue
        ys = y[order]
        csum = np.cumsum(ys)
        csq = np.cumsum(ys**2)
        left_sse = csq[ks - 1] - csum[ks - 1] ** 2 / ks
        right_sum = csum[-1] - csum[ks - 1]
        right_sse = (csq[-1] - csq[ks - 1]) - right_sum**2 / (n - ks)
        sse = left_sse + right_sse
        # a threshold must separate distinct values
        sse[xs[ks - 1] == xs[ks]] = np.inf
        i = int(np.argmin(sse))  # first minimum -> lowest threshold
        if np.isfinite(sse[i]) and (best is None or sse[i] < best[0]):
            best = (float(sse[i]), j, float((xs[ks[i] - 1] + xs[ks[i]]) / 2))
    return best


def _grow_python(X: np.ndarray, y: np.ndarray, min_leaf: int, feature_subset: int, rng) -> _Tree:
    feature, threshold, left, right, value = [], [], [], [], []

    def add_node():
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        return len(feature) - 1

    def build(idx: np.ndarray) -> int:
        node = add_node()
        ys = y[idx]
        value[node] = float(ys.mean())
        if idx.size < 2 * min_leaf or np.ptp(ys) == 0.0:
            return node
        if feature_subset < 2:
            features = sorted(rng.choice(2, size=feature_subset, replace=False))
        else:
            features = (0, 1)
        split = _best_split(X[idx], ys, features, min_leaf)
        if split is None:
            return node
        _, j, t = split
        feature[node] = j
        threshold[node] = t
        mask = X[idx, j] <= t
        left[node] = build(idx[mask])
        right[node] = build(idx[~mask])
        return node

    build(np.arange(X.shape[0]))
    return _Tree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.array(value),
    )


def _grow(X: np.ndarray, y: np.ndarray, min_leaf: int, feature_subset: int, rng) -> _Tree:
    if not _HAVE_NUMBA or feature_subset < 2:
        return _grow_python(X, y, min_leaf, feature_subset, rng)
    feature, threshold, left, right, value, n_nodes = _grow_kernel(X, y, min_leaf)
    return _Tree(
        feature=feature[:n_nodes],
        threshold=threshold[:n_nodes],
        left=left[:n_nodes],
        right=right[:n_nodes],
        value=value[:n_nodes],
    )


def _stack_trees(trees: tuple[_Tree, ...]) -> dict:
    sizes = np.array([t.feature.shape[0] for t in trees], dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    return {
        "feature": np.concatenate([t.feature for t in trees]),
        "threshold": np.concatenate([t.threshold for t in trees]),
        "left": np.concatenate([np.where(t.left >= 0, t.left + off, -1) for t, off in zip(trees, offsets)]),
        "right": np.concatenate([np.where(t.right >= 0, t.right + off, -1) for t, off in zip(trees, offsets)]),
        "value": np.concatenate([t.value for t in trees]),
        "roots": offsets,
    }


def rf_fit(X: np.ndarray, y: np.ndarray, params: RFParams = RFParams()) -> RFModel:
    """Fit `n_trees` trees, each on its own bootstrap resample."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    n = X.shape[0]
    if n != y.shape[0] or n < 1:
        raise UsageError(f"need equal nonzero counts of points and scores, got {n} and {y.shape[0]}")
    trees = []
    for i in range(params.n_trees):
        rng = np.random.default_rng(params.seed + i)
        boot = rng.integers(0, n, size=n)
        trees.append(_grow(np.ascontiguousarray(X[boot]), y[boot], params.min_leaf, params.feature_subset, rng))
    trees = tuple(trees)
    return RFModel(
        trees=trees, params=params, y_min=float(y.min()), y_max=float(y.max()),
        _stack=_stack_trees(trees),
    )


def _tree_outputs(m: RFModel, P: np.ndarray) -> np.ndarray:
    """(n_trees, k) matrix of individual tree predictions."""
    s = m._stack
    if _HAVE_NUMBA:
        return _descend_kernel(
            s["feature"], s["threshold"], s["left"], s["right"], s["value"], s["roots"],
            np.ascontiguousarray(P),
        )
    n_trees = s["roots"].shape[0]
    k = P.shape[0]
    idx = np.repeat(s["roots"], k)  # tree-major layout
    pj = np.tile(np.arange(k), n_trees)
    feature, threshold, left, right = s["feature"], s["threshold"], s["left"], s["right"]
    while True:
        active = np.flatnonzero(feature[idx] >= 0)
        if active.size == 0:
            break
        node = idx[active]
        go_left = P[pj[active], feature[node]] <= threshold[node]
        idx[active] = np.where(go_left, left[node], right[node])
    return s["value"][idx].reshape(n_trees, k)


def rf_predict_many(m: RFModel, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(mean, population variance) across trees at points P of shape (k, 2)."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    preds = _tree_outputs(m, P)
    return preds.mean(axis=0), preds.var(axis=0)


def rf_predict(m: RFModel, x) -> tuple[float, float]:
    """(mean, population variance across trees) at a single point."""
    mean, var = rf_predict_many(m, np.asarray(x, dtype=float).reshape(1, 2))
    return float(mean[0]), float(var[0])
