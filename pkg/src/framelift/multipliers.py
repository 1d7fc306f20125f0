"""Frame multipliers and the Galerkin matrix calculus.

A multiplier is a diagonal matrix sandwiched between analysis and synthesis:
M_{m,Psi,Phi} = D_Phi diag(m) C_Psi. The Galerkin matrix of an operator O
relative to a frame pair is Mat^{(Phi,Psi)}(O) = C_Phi O D_Psi, and
Op^{(Phi,Psi)}(M) = D_Phi M C_Psi maps matrices back to operators; with dual
slots inside, Op after Mat is the identity on operators.

Invertibility of O on C^d transfers to invertibility of the n x n matrix
B_O = Mat(O) + (I - G_{Psi,Psid}) and back; the second summand kills the
coefficient-space directions Mat can never see (ker D_Psi).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import matalg
from .frames import Frame, gram
from .weights import Weight


def _symbol_values(symbol, n: int) -> np.ndarray:
    v = symbol.values if isinstance(symbol, Weight) else np.asarray(symbol)
    if v.shape != (n,):
        raise ValueError("symbol length does not match frame size")
    return v


class Multiplier:
    def __init__(self, symbol, psi: Frame, phi: Frame | None = None):
        phi = psi if phi is None else phi
        if phi.d != psi.d:
            raise ValueError("frames must share the ambient dimension")
        if phi.n != psi.n:
            raise ValueError("frames must have the same number of vectors")
        self.symbol = _symbol_values(symbol, psi.n)
        self.psi = psi
        self.phi = phi
        self.matrix = phi.synthesis_matrix @ (self.symbol[:, None] * psi.analysis_matrix)

    def apply(self, f) -> np.ndarray:
        return self.phi.synthesis(self.symbol * self.psi.analysis(f))


def multiplier(symbol, psi: Frame, phi: Frame | None = None) -> Multiplier:
    """M_{m,Psi,Phi} f = sum_k m_k <f, psi_k> phi_k."""
    return Multiplier(symbol, psi, phi)


@dataclass
class GalerkinMatrix:
    entries: np.ndarray
    frames: tuple
    operator_ref: str = ""


def galerkin(O: np.ndarray, phi: Frame, psi: Frame, operator_ref: str = "") -> GalerkinMatrix:
    """Mat^{(Phi,Psi)}(O) = C_Phi O D_Psi, entries <O psi_l, phi_k>."""
    O = np.asarray(O)
    if O.shape != (phi.d, psi.d):
        raise ValueError("operator shape does not match the frame pair")
    return GalerkinMatrix(phi.analysis_matrix @ O @ psi.synthesis_matrix, (phi, psi), operator_ref)


def op_from_matrix(M: np.ndarray, phi: Frame, psi: Frame) -> np.ndarray:
    """Op^{(Phi,Psi)}(M) = D_Phi M C_Psi."""
    M = np.asarray(M)
    if M.shape != (phi.n, psi.n):
        raise ValueError("matrix shape does not match the frame pair")
    return phi.synthesis_matrix @ M @ psi.analysis_matrix


class Slots(Enum):
    """Frame/dual assignment for the Galerkin part of the invertibility matrix."""

    PSI_PSI = ("frame", "frame")
    PSI_DUAL = ("frame", "dual")
    DUAL_PSI = ("dual", "frame")
    DUAL_DUAL = ("dual", "dual")


def _pick(frame: Frame, which: str) -> Frame:
    return frame if which == "frame" else frame.canonical_dual()


def invertibility_matrix(
    O: np.ndarray, psi: Frame, slots: Slots = Slots.PSI_PSI
) -> np.ndarray:
    """B_O = Mat(O) + (I - G_{Psi,Psid}) with the requested slot assignment.

    O is invertible on C^d exactly when B_O is invertible on C^n, for every
    slot choice; the default (Psi, Psi) matches the composed-multiplier
    splitting used by the lifting pipeline.
    """
    dual = psi.canonical_dual()
    left, right = (_pick(psi, w) for w in slots.value)
    mat = galerkin(O, left, right).entries
    return mat + (np.eye(psi.n) - gram(psi, dual))


def invertibility_verdicts(O: np.ndarray, psi: Frame, rtol: float = matalg.INVERTIBILITY_RTOL) -> dict:
    """Invertibility of O on C^d versus of B_O on C^n, for all slot choices."""
    out = {"operator": matalg.is_invertible(O, rtol)}
    for slots in Slots:
        out[slots.name] = matalg.is_invertible(invertibility_matrix(O, psi, slots), rtol)
    return out


def galerkin_pinv_crosscheck(O: np.ndarray, psi: Frame, phi: Frame, rtol: float = 1e-8) -> dict:
    """Which dual-slot ordering satisfies Mat(O)^dagger = Mat(O^{-1})?

    Candidate A: pinv(Mat^{(Psid,Phid)}(O)) = Mat^{(Phi,Psi)}(O^{-1}).
    Candidate B: pinv(Mat^{(Phid,Psid)}(O)) = Mat^{(Psi,Phi)}(O^{-1}).
    Returns both residuals and the name of the ordering that holds.
    """
    O = np.asarray(O)
    Oinv = np.linalg.inv(O)
    psid = psi.canonical_dual()
    phid = phi.canonical_dual()
    res = {}
    pin_a = matalg.pseudo_inverse(galerkin(O, psid, phid).entries)
    res["ordering_A"] = float(np.abs(pin_a - galerkin(Oinv, phi, psi).entries).max())
    pin_b = matalg.pseudo_inverse(galerkin(O, phid, psid).entries)
    res["ordering_B"] = float(np.abs(pin_b - galerkin(Oinv, psi, phi).entries).max())
    passing = [k for k in ("ordering_A", "ordering_B") if res[k] < rtol]
    res["passing"] = passing
    return res


def spectral_invariance_suite(
    O: np.ndarray, psi: Frame, weights: list, ps: list, s: float, rtol: float = matalg.INVERTIBILITY_RTOL
) -> dict:
    """Condition constants of O on each coefficient-space H^p_m and verdict agreement.

    The operator acts on C^d; its coorbit condition at (p, m) is measured in
    dual-frame coefficient coordinates. In finite dimensions the verdict
    (invertible or not) must agree across all (p, m); the constants may vary.
    """
    from .coorbit import operator_norm_between

    O = np.asarray(O)
    dual = psi.canonical_dual()
    g = galerkin(O, psi, dual).entries
    report = {
        "operator_invertible": matalg.is_invertible(O, rtol),
        "galerkin_decay_constant": matalg.decay_constant(g, s, psi.index_set).constant,
        "constants": {},
    }
    inv = np.linalg.inv(O) if report["operator_invertible"] else None
    for i, m in enumerate(weights):
        for p in ps:
            fwd = operator_norm_between(O, psi, p, m_in=m, m_out=m)
            entry = {"norm": fwd, "invertible": report["operator_invertible"]}
            if inv is not None:
                entry["inverse_norm"] = operator_norm_between(inv, psi, p, m_in=m, m_out=m)
            report["constants"][f"w{i}_p{p}"] = entry
    return report
