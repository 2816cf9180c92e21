"""One-way LOCC discrimination against white noise.

The minimum type-2 error under one-way LOCC with perfect detection is
rank(rho_A) / D for pure and maximally correlated states; the optimal test
measures both sides in the correlated bases and accepts on matching
outcomes.  For other mixed states the same expression is only a lower
bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import (
    ATOL_DERIVED,
    numerical_rank,
    partial_trace,
    psd_check,
    tensor,
)
from .states import BipartiteState, MaximallyCorrelatedState


@dataclass(frozen=True)
class OneWayProtocol:
    """Alice's POVM, Bob's conditional POVMs, and the accepting outcome pairs.

    bob_povms[i] lists Bob's elements after Alice's outcome i; accept holds
    the (i, j) pairs on which the pair declares the target state.
    """

    alice_povm: tuple
    bob_povms: tuple
    accept: frozenset = field(default_factory=frozenset)

    @property
    def dims(self) -> tuple[int, int]:
        return self.alice_povm[0].shape[0], self.bob_povms[0][0].shape[0]

    def test_operator(self) -> np.ndarray:
        """T = sum over accepted (i, j) of M_i (x) N_j^i."""
        dA, dB = self.dims
        T = np.zeros((dA * dB, dA * dB), dtype=complex)
        for i, j in self.accept:
            T += tensor(self.alice_povm[i], self.bob_povms[i][j])
        return T

    def validate(self, tol: float = 1e-10) -> None:
        dA, dB = self.dims
        total = sum(self.alice_povm)
        if np.max(np.abs(total - np.eye(dA))) > tol:
            raise ValueError("Alice's POVM does not resolve the identity")
        for i, povm in enumerate(self.bob_povms):
            total = sum(povm)
            if np.max(np.abs(total - np.eye(dB))) > tol:
                raise ValueError(f"Bob's POVM for outcome {i} does not resolve the identity")
        for m in self.alice_povm:
            if not psd_check(m, tol):
                raise ValueError("non-PSD element in Alice's POVM")
        for povm in self.bob_povms:
            for n in povm:
                if not psd_check(n, tol):
                    raise ValueError("non-PSD element in Bob's POVM")


def _rank_reduced(state) -> tuple[int, int]:
    """(rank of rho_A, total dimension) for either state type."""
    if isinstance(state, MaximallyCorrelatedState):
        diag = np.real(np.diag(state.alpha))
        rank = int(np.sum(diag > state.d * np.finfo(float).eps * max(diag.max(), 1e-300)))
        dA, dB = state.dims
        return rank, dA * dB
    red = state.reduced("A")
    return numerical_rank(red), state.total_dim


def beta_one_way(state) -> float:
    """rank(rho_A) / D; exact for pure and maximally correlated states,
    a lower bound otherwise."""
    rank, D = _rank_reduced(state)
    return rank / D


def one_way_is_exact(state) -> bool:
    """Whether beta_one_way is the exact error for this input."""
    return isinstance(state, MaximallyCorrelatedState) or (
        isinstance(state, BipartiteState) and state.is_pure
    )


def build_one_way_test(mc: MaximallyCorrelatedState):
    """The matching-outcome test for a maximally correlated state.

    Both parties measure the correlated bases and accept iff the outcomes
    agree on an index with alpha_ii > 0.  Returns (protocol, T) with
    T = sum over the support of |u_i v_i><u_i v_i|, which detects the state
    perfectly with Tr T = rank(rho_A).
    """
    dA, dB = mc.dims
    d = mc.d
    diag = np.real(np.diag(mc.alpha))
    support_tol = d * np.finfo(float).eps * max(diag.max(), 1e-300)

    alice = [np.outer(mc.basis_a[:, i], mc.basis_a[:, i].conj()) for i in range(mc.basis_a.shape[1])]
    rest_a = np.eye(dA) - sum(alice)
    if np.max(np.abs(rest_a)) > 1e-12:
        alice.append(rest_a)

    bob_elements = [np.outer(mc.basis_b[:, j], mc.basis_b[:, j].conj()) for j in range(mc.basis_b.shape[1])]
    rest_b = np.eye(dB) - sum(bob_elements)
    if np.max(np.abs(rest_b)) > 1e-12:
        bob_elements.append(rest_b)

    accept = frozenset((i, i) for i in range(d) if diag[i] > support_tol)
    protocol = OneWayProtocol(
        alice_povm=tuple(alice),
        bob_povms=tuple(tuple(bob_elements) for _ in alice),
        accept=accept,
    )
    return protocol, protocol.test_operator()


def check_lemma3(protocol: OneWayProtocol, state, tol: float = ATOL_DERIVED) -> bool:
    """Factorised perfect-detection test for a one-way element T = sum M_i (x) N_j^i.

    True iff Tr(rho_A sum_i M_i) = 1 over the outcomes appearing in T and,
    conditionally on each such outcome with nonzero probability, Bob's
    accepted elements detect his conditional state perfectly.  Equivalent to
    Tr(rho T) = 1.
    """
    rho = state.density()
    dA, dB = protocol.dims
    rho_A = partial_trace(rho, (dA, dB), "A")

    indices = sorted({i for i, _ in protocol.accept})
    m_total = np.zeros((dA, dA), dtype=complex)
    for i in indices:
        m_total += protocol.alice_povm[i]
    if abs(np.trace(rho_A @ m_total).real - 1.0) > tol:
        return False

    for i in indices:
        mi = tensor(protocol.alice_povm[i], np.eye(dB))
        prob = np.trace(rho @ mi).real
        if prob <= tol:
            continue
        rho_b = partial_trace(rho @ mi, (dA, dB), "B") / prob
        n_total = np.zeros((dB, dB), dtype=complex)
        for ii, j in protocol.accept:
            if ii == i:
                n_total += protocol.bob_povms[i][j]
        if abs(np.trace(rho_b @ n_total).real - 1.0) > tol:
            return False
    return True
