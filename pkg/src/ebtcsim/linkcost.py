"""Energy-balanced link costs, lifetimes, and symmetric edge weights.

A successful transfer over edge (i, j) drains the sender by the data
packet plus the returning ACK, and the receiver by the received data
plus the transmitted ACK. Dividing each side's per-packet drain by its
residual energy gives a depletion rate; the directed cost is the worse
of the two rates, its reciprocal is the edge lifetime in packets, and
the undirected weight is the worse of the two directed costs so that
both directions share one value.
"""
from __future__ import annotations

from dataclasses import dataclass

I_TO_J = "i-to-j"
J_TO_I = "j-to-i"


@dataclass(frozen=True)
class LinkCostInputs:
    """Per-edge energies and endpoint reserves, all in joules.

    m is the data packet, mp the ACK; e_send_ij_* is the sender-side
    transmit energy from i to j (and symmetrically for ji).
    """

    s_i: float
    s_j: float
    e_send_ij_m: float
    e_send_ji_m: float
    e_send_ij_mp: float
    e_send_ji_mp: float
    e_recv_m: float
    e_recv_mp: float

    def __post_init__(self) -> None:
        for name in ("e_send_ij_m", "e_send_ji_m", "e_send_ij_mp",
                     "e_send_ji_mp", "e_recv_m", "e_recv_mp"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class EdgeWeight:
    c_ij: float
    c_ji: float
    w: float      # max(c_ij, c_ji), shared by both directions
    z_ij: float   # 1 / c_ij, lifetime of i->j in packets
    z_ji: float


def _require_alive(inputs: LinkCostInputs) -> None:
    if inputs.s_i <= 0.0 or inputs.s_j <= 0.0:
        raise ValueError(
            "link cost is undefined with a drained endpoint "
            f"(s_i={inputs.s_i!r}, s_j={inputs.s_j!r}); drop the edge instead")


def directed_cost(inputs: LinkCostInputs, direction: str) -> float:
    """Fraction of the binding endpoint's lifetime one packet consumes.

    For i-to-j the sender side spends e_send_ij_m + e_recv_mp out of s_i
    and the receiver side spends e_recv_m + e_send_ji_mp out of s_j; the
    cost is the larger of the two per-packet depletion fractions.
    """
    _require_alive(inputs)
    if direction == I_TO_J:
        return max((inputs.e_send_ij_m + inputs.e_recv_mp) / inputs.s_i,
                   (inputs.e_recv_m + inputs.e_send_ji_mp) / inputs.s_j)
    if direction == J_TO_I:
        return max((inputs.e_send_ji_m + inputs.e_recv_mp) / inputs.s_j,
                   (inputs.e_recv_m + inputs.e_send_ij_mp) / inputs.s_i)
    raise ValueError(f"direction must be {I_TO_J!r} or {J_TO_I!r}, got {direction!r}")


def link_lifetime(inputs: LinkCostInputs, direction: str) -> float:
    """Packets the link can carry in this direction before an endpoint dies."""
    return 1.0 / directed_cost(inputs, direction)


def edge_weight(inputs: LinkCostInputs) -> EdgeWeight:
    """Both directed costs and their shared undirected weight.

    The weight is invariant under swapping the i/j labels, which is what
    lets every node compute the same value for a shared edge.
    """
    c_ij = directed_cost(inputs, I_TO_J)
    c_ji = directed_cost(inputs, J_TO_I)
    return EdgeWeight(c_ij=c_ij, c_ji=c_ji, w=max(c_ij, c_ji),
                      z_ij=1.0 / c_ij, z_ji=1.0 / c_ji)
