"""Riesz-bound estimates for perturbed sine, cosine and exponential families.

The Gram matrix of the L2(0,1)-normalised family is assembled from closed
forms (``S(c) = sin(c)/c``)::

    int sin(ax) sin(bx)                   = (S(a-b) - S(a+b)) / 2
    int cos(ax) cos(bx)                   = (S(a-b) + S(a+b)) / 2
    int e^{ia(1-2x)} conj(e^{ib(1-2x)})   = S(a-b)

so the bounds carry no quadrature error. Its extreme eigenvalues are the
best constants ``m``, ``M`` for the truncated family.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class BasisKind(enum.Enum):
    SINE_OMEGA = "sine"            # sin(omega_n x), n >= 1
    COSINE_OMEGA = "cosine"        # 1, cos(omega_n x), n >= 1
    EXP_OMEGA = "exp"              # e^{i omega_n (1 - 2x)}, n in Z, omega_{-n} = -omega_n
    COSINE_HALF_INTEGER = "cosine_mu"   # cos(sqrt(mu_n) x), n >= 1


@dataclass(frozen=True, eq=False)
class BasisSpec:
    kind: BasisKind
    omegas: np.ndarray

    def __post_init__(self):
        w = np.array(self.omegas, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("need at least one frequency")
        if np.any(np.diff(w) <= 0) or w[0] <= 0:
            raise ValueError("frequencies must be positive and strictly increasing")
        w.setflags(write=False)
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "kind", BasisKind(self.kind))

    @property
    def separation(self) -> float:
        return float(np.min(np.diff(np.concatenate([[0.0], self.omegas]))))

    def frequencies(self) -> np.ndarray:
        """Frequencies of the family members, in order."""
        w = self.omegas
        if self.kind is BasisKind.COSINE_OMEGA:
            return np.concatenate([[0.0], w])
        if self.kind is BasisKind.EXP_OMEGA:
            return np.concatenate([-w[::-1], [0.0], w])
        return w


@dataclass(frozen=True)
class RieszBounds:
    m_hat: float
    M_hat: float
    N: int

    def as_dict(self) -> dict:
        return {"m_hat": self.m_hat, "M_hat": self.M_hat, "N": self.N}


def _S(c):
    return np.sinc(c / np.pi)


def gram_matrix(basis: BasisSpec) -> np.ndarray:
    """Gram matrix of the normalised family (real symmetric in every case)."""
    w = basis.frequencies()
    a, b = w[:, None], w[None, :]
    if basis.kind is BasisKind.SINE_OMEGA:
        G = 0.5 * (_S(a - b) - _S(a + b))
    elif basis.kind is BasisKind.EXP_OMEGA:
        G = _S(a - b)
    else:
        G = 0.5 * (_S(a - b) + _S(a + b))
    d = np.sqrt(np.diag(G))
    return G / np.outer(d, d)


def gram_bounds(basis: BasisSpec) -> RieszBounds:
    """Smallest and largest Gram eigenvalue of the truncated family."""
    ev = np.linalg.eigvalsh(gram_matrix(basis))
    return RieszBounds(float(max(ev[0], 0.0)), float(ev[-1]), basis.omegas.size)
