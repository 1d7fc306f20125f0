"""Weighted sequence spaces over finite metric index sets.

An :class:`IndexSet` is a finite list of points carrying either the Euclidean
metric or the torus metric of a given period. A :class:`Weight` is a strictly
positive sequence over such a set. Together they define the norms
``||c||_{p,m} = ||m * c||_p`` (with ``p = inf`` as a genuine distinguished
value) and the diagnostics used throughout: the diagonal lifting map and
pairwise moderateness constants.
"""

import json

import numpy as np

from . import kernels

EUCLIDEAN = "euclidean"
TORUS = "torus"


class IndexSet:
    """Finite point set with a metric.

    Args:
        points: array-like of shape (n,) or (n, D); 1-d input is treated as
            points on the line.
        metric: "euclidean" or "torus".
        period: torus period; required when metric is "torus".
    """

    def __init__(self, points, metric: str = EUCLIDEAN, period: float | None = None):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a nonempty (n, D) array")
        if metric not in (EUCLIDEAN, TORUS):
            raise ValueError(f"unknown metric {metric!r}")
        if metric == TORUS:
            if period is None or period <= 0:
                raise ValueError("torus metric requires a positive period")
            period = float(period)
        else:
            period = None
        self.points = pts
        self.metric = metric
        self.period = period
        self._dists = None
        if len(np.unique(pts.round(12), axis=0)) != len(pts):
            raise ValueError("index set points must be distinct")

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def distance_matrix(self) -> np.ndarray:
        if self._dists is None:
            self._dists = kernels.pairwise_dist(self.points, self.period or 0.0)
        return self._dists

    def distance_to(self, ref=None) -> np.ndarray:
        """Distances from every point to ``ref`` (default: the origin)."""
        if ref is None:
            ref = np.zeros(self.dim)
        ref = np.asarray(ref, dtype=float).reshape(self.dim)
        return kernels.dist_from(self.points, ref, self.period or 0.0)

    def to_dict(self) -> dict:
        d = {"points": self.points.tolist(), "metric": self.metric}
        if self.period is not None:
            d["period"] = self.period
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "IndexSet":
        return cls(d["points"], d.get("metric", EUCLIDEAN), d.get("period"))


class Weight:
    """Strictly positive sequence over an index set."""

    def __init__(self, values, index_set: IndexSet):
        vals = np.asarray(values, dtype=float)
        if vals.shape != (len(index_set),):
            raise ValueError("weight length does not match index set size")
        if not np.all(vals > 0):
            raise ValueError("weights must be strictly positive")
        self.values = vals
        self.index_set = index_set

    def __len__(self) -> int:
        return len(self.values)

    def __mul__(self, other: "Weight") -> "Weight":
        if isinstance(other, Weight):
            return Weight(self.values * other.values, self.index_set)
        return Weight(self.values * float(other), self.index_set)

    __rmul__ = __mul__

    def reciprocal(self) -> "Weight":
        return Weight(1.0 / self.values, self.index_set)

    def sqrt(self) -> "Weight":
        return Weight(np.sqrt(self.values), self.index_set)

    @classmethod
    def constant(cls, index_set: IndexSet, c: float = 1.0) -> "Weight":
        return cls(np.full(len(index_set), float(c)), index_set)

    @classmethod
    def polynomial(cls, index_set: IndexSet, t: float, center=None) -> "Weight":
        """The weight (1 + dist(k, center))^t, default center is the origin."""
        return cls((1.0 + index_set.distance_to(center)) ** t, index_set)

    def to_dict(self) -> dict:
        d = self.index_set.to_dict()
        d["values"] = self.values.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Weight":
        return cls(d["values"], IndexSet.from_dict(d))

    @classmethod
    def load_json(cls, path) -> "Weight":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True)


def _weight_values(m, n: int) -> np.ndarray:
    vals = m.values if isinstance(m, Weight) else np.asarray(m, dtype=float)
    if vals.shape != (n,):
        raise ValueError("weight length does not match sequence length")
    return vals


def weighted_norm(c, p, m) -> float:
    """The norm ||c||_{p,m} = ||m * c||_p for p in [1, inf].

    ``p = np.inf`` (or the string "inf") gives sup_k m_k |c_k|.
    """
    c = np.asarray(c)
    vals = _weight_values(m, c.shape[0])
    if isinstance(p, str):
        if p != "inf":
            raise ValueError(f"unknown p {p!r}")
        p = np.inf
    if p != np.inf and p < 1:
        raise ValueError("p must lie in [1, inf]")
    weighted = vals * np.abs(c)
    if p == np.inf:
        return float(weighted.max())
    return float((weighted**p).sum() ** (1.0 / p))


def diag_lift(c, mu) -> np.ndarray:
    """The diagonal map c |-> (mu_k c_k): an isometry l^p_{mu m} -> l^p_m."""
    c = np.asarray(c)
    vals = _weight_values(mu, c.shape[0])
    return vals * c


def holder_conjugate(p):
    if p == np.inf:
        return 1.0
    if p == 1:
        return np.inf
    return p / (p - 1.0)


def moderateness_constant(m: Weight, t: float, profile: str = "polynomial", beta: float = 1.0) -> float:
    """Smallest C with m_k <= C * profile(dist(k,l)) * m_l over all pairs.

    profile "polynomial": (1 + dist)^t. profile "subexponential":
    exp(t * dist^beta). Always >= 1 (take k = l).
    """
    dist = m.index_set.distance_matrix()
    if profile == "polynomial":
        return kernels.moderateness_max(m.values, dist, float(t))
    if profile == "subexponential":
        return kernels.moderateness_max_subexp(m.values, dist, float(t), float(beta))
    raise ValueError(f"unknown moderateness profile {profile!r}")
