"""Finite frames in C^d and the Gram-matrix identity suite.

Conventions, fixed once and used everywhere: the inner product is linear in
its first argument, frame vectors are the columns psi_k of a d x n matrix V,
and

    analysis      (C f)_k = <f, psi_k>            C = V^H   (n x d)
    synthesis     D c     = sum_k c_k psi_k       D = V = C^H
    frame op      S = D C = V V^H                 (d x d)
    Gram          G = C D = V^H V,  G_kl = <psi_l, psi_k>

The canonical dual has vectors S^{-1} psi_k. A family counts as a frame when
the smallest eigenvalue of S clears FRAME_RTOL times the largest; families
below the threshold are still constructible (experiments deliberately build
them) but dual-dependent operations raise :class:`NotAFrameError`.
"""

import json

import numpy as np

from .weights import IndexSet

FRAME_RTOL = 1e-8


class NotAFrameError(ValueError):
    def __init__(self, lower: float, upper: float):
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"family is not a frame: lower bound {lower:.3e} below threshold "
            f"({FRAME_RTOL:.0e} * upper bound {upper:.3e})"
        )


class Frame:
    """A family of n >= 1 vectors in C^d, given as columns of ``vectors``.

    The index set defaults to the integer points 0..n-1 on the line; Gabor
    and Fock constructors attach their own geometric index sets.
    """

    def __init__(self, vectors, index_set: IndexSet | None = None):
        V = np.asarray(vectors, dtype=complex)
        if V.ndim != 2 or V.shape[1] == 0:
            raise ValueError("vectors must be a d x n matrix with n >= 1")
        self.vectors = V
        self.index_set = index_set if index_set is not None else IndexSet(np.arange(V.shape[1]))
        if len(self.index_set) != V.shape[1]:
            raise ValueError("index set size must equal the number of frame vectors")
        self._S = None
        self._G = None
        self._bounds = None
        self._dual = None

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]

    @property
    def analysis_matrix(self) -> np.ndarray:
        return self.vectors.conj().T

    @property
    def synthesis_matrix(self) -> np.ndarray:
        return self.vectors

    @property
    def frame_operator(self) -> np.ndarray:
        if self._S is None:
            self._S = self.vectors @ self.vectors.conj().T
        return self._S

    @property
    def gram_matrix(self) -> np.ndarray:
        if self._G is None:
            self._G = self.vectors.conj().T @ self.vectors
        return self._G

    @property
    def bounds(self) -> tuple:
        """Extreme eigenvalues of S, without the frame-property check."""
        if self._bounds is None:
            ev = np.linalg.eigvalsh(self.frame_operator)
            self._bounds = (float(ev[0]), float(ev[-1]))
        return self._bounds

    @property
    def is_frame(self) -> bool:
        a, b = self.bounds
        return a > FRAME_RTOL * b

    def analysis(self, f) -> np.ndarray:
        f = np.asarray(f)
        if f.shape != (self.d,):
            raise ValueError(f"expected a vector of length {self.d}")
        return self.analysis_matrix @ f

    def synthesis(self, c) -> np.ndarray:
        c = np.asarray(c)
        if c.shape != (self.n,):
            raise ValueError(f"expected a coefficient sequence of length {self.n}")
        return self.vectors @ c

    def canonical_dual(self) -> "Frame":
        if self._dual is None:
            a, b = self.bounds
            if not self.is_frame:
                raise NotAFrameError(a, b)
            dual_vectors = np.linalg.solve(self.frame_operator, self.vectors)
            self._dual = Frame(dual_vectors, self.index_set)
        return self._dual

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "vectors_real": self.vectors.real.ravel().tolist(),
            "vectors_imag": self.vectors.imag.ravel().tolist(),
            "index_set": self.index_set.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Frame":
        shape = (d["d"], d["n"])
        V = np.asarray(d["vectors_real"]).reshape(shape) + 1j * np.asarray(
            d["vectors_imag"]
        ).reshape(shape)
        return cls(V, IndexSet.from_dict(d["index_set"]))

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True)

    @classmethod
    def load_json(cls, path) -> "Frame":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def analysis(frame: Frame, f) -> np.ndarray:
    return frame.analysis(f)


def synthesis(frame: Frame, c) -> np.ndarray:
    return frame.synthesis(c)


def frame_bounds(frame: Frame) -> tuple:
    """(A, B) = extreme eigenvalues of S; raises NotAFrameError below threshold."""
    a, b = frame.bounds
    if not frame.is_frame:
        raise NotAFrameError(a, b)
    return a, b


def canonical_dual(frame: Frame) -> Frame:
    return frame.canonical_dual()


def gram(frame: Frame, other: Frame | None = None) -> np.ndarray:
    """G_Psi, or the cross-Gram G_{Psi,Phi} = C_Psi D_Phi when ``other`` is given."""
    if other is None:
        return frame.gram_matrix
    if other.d != frame.d:
        raise ValueError("frames must share the ambient dimension")
    return frame.analysis_matrix @ other.synthesis_matrix


def _rel(err: float, scale: float) -> float:
    return err / max(1.0, scale)


def gram_identities_check(frame: Frame, rtol: float = 1e-10) -> dict:
    """Residuals of the Gram identities and the coefficient-space projection laws.

    Checks G_Psi G_Psid = G_{Psi,Psid}, the two pseudo-inverse identities
    G_{Psi,Psid} = G^dagger G and G_Psid = (G^dagger)^2 G, and that
    P = G_{Psi,Psid} is the orthogonal projection fixing ran(C_Psi) and
    killing ker(D_Psi).
    """
    dual = frame.canonical_dual()
    G = frame.gram_matrix
    Gd = dual.gram_matrix
    P = gram(frame, dual)
    Gp = np.linalg.pinv(G, rcond=1e-12, hermitian=True)
    scale = float(np.abs(G).max())
    C = frame.analysis_matrix
    n, d = C.shape
    resid = {
        "product_identity": _rel(float(np.abs(G @ Gd - P).max()), scale),
        "pinv_cross": _rel(float(np.abs(Gp @ G - P).max()), 1.0),
        "pinv_dual": _rel(float(np.abs(Gp @ Gp @ G - Gd).max()), float(np.abs(Gd).max())),
        "idempotent": _rel(float(np.abs(P @ P - P).max()), 1.0),
        "self_adjoint": _rel(float(np.abs(P - P.conj().T).max()), 1.0),
        "fixes_analysis_range": _rel(float(np.abs(P @ C - C).max()), float(np.abs(C).max())),
    }
    # ker(D_Psi) from the right-singular vectors of the synthesis matrix.
    _, sv, vh = np.linalg.svd(frame.synthesis_matrix)
    null = vh[np.sum(sv > sv[0] * 1e-12) :].conj().T
    if null.shape[1] > 0:
        resid["kills_synthesis_kernel"] = float(np.abs(P @ null).max())
        resid["splitting"] = float(np.abs(frame.synthesis_matrix @ (np.eye(n) - P)).max())
    else:
        resid["kills_synthesis_kernel"] = 0.0
        resid["splitting"] = 0.0
    resid["projection_rank"] = int(np.round(np.trace(P).real))
    resid["ok"] = all(v < rtol for k, v in resid.items() if k != "projection_rank")
    return resid


def reconstruct(frame: Frame, f, via: str = "dual_coefficients") -> np.ndarray:
    """Both frame reconstructions of f: sum <f,psid_k> psi_k or sum <f,psi_k> psid_k."""
    dual = frame.canonical_dual()
    if via == "dual_coefficients":
        return frame.synthesis(dual.analysis(f))
    if via == "dual_vectors":
        return dual.synthesis(frame.analysis(f))
    raise ValueError(f"unknown reconstruction mode {via!r}")


def random_frame(rng: np.random.Generator, n: int, d: int, kind: str = "generic") -> Frame:
    """Random test frames: "generic" (Gaussian columns), "tight", or "onb".

    Tight frames are built from the first d rows of a random unitary, scaled
    so that A = B = n / d; "onb" requires n = d.
    """
    if n < d:
        raise ValueError("need n >= d")
    if kind == "generic":
        V = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
        # Gaussian d x n with n >= d is almost surely a frame; rescale to
        # keep bounds O(1).
        return Frame(V / np.sqrt(n))
    if kind in ("tight", "onb"):
        if kind == "onb" and n != d:
            raise ValueError("an orthonormal basis needs n = d")
        M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        Q, _ = np.linalg.qr(M)
        V = Q[:, :d].conj().T * np.sqrt(n / d)
        if kind == "onb":
            V = Q.conj().T
        return Frame(V)
    raise ValueError(f"unknown frame kind {kind!r}")


def onb(d: int) -> Frame:
    return Frame(np.eye(d, dtype=complex))
