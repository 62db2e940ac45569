"""First-order radio energy model.

Transmit energy is electronics plus an amplifier term that switches from
free-space (d^2) to multipath (d^4) attenuation above the crossover
distance d0 = sqrt(eps_fs / eps_mp). Receive energy is electronics only.
All energies are per packet, parameterised by packet size in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class RadioParams:
    """Radio energy constants, all strictly positive.

    Defaults are the canonical first-order radio values used throughout
    the sensor-network literature: 50 nJ/bit electronics, 10 pJ/bit/m^2
    free-space amplifier, 0.0013 pJ/bit/m^4 multipath amplifier, giving
    a crossover distance of about 87.7 m.
    """

    e_elec: float = 50e-9       # J/bit, TX and RX electronics
    eps_fs: float = 10e-12      # J/bit/m^2
    eps_mp: float = 0.0013e-12  # J/bit/m^4

    def __post_init__(self) -> None:
        for name in ("e_elec", "eps_fs", "eps_mp"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"RadioParams.{name} must be strictly positive, got {value!r}")

    @property
    def d0(self) -> float:
        """Crossover distance in meters where both amplifier branches agree."""
        return math.sqrt(self.eps_fs / self.eps_mp)


def send_energy_per_bit(params: RadioParams, d: float) -> float:
    """Per-bit transmit energy at distance d (electronics + amplifier)."""
    if d < 0.0:
        raise ValueError(f"distance must be nonnegative, got {d!r}")
    if d < params.d0:
        return params.e_elec + params.eps_fs * d * d
    return params.e_elec + params.eps_mp * d * d * d * d


def energy_send(params: RadioParams, m: float, d: float) -> float:
    """Energy in joules to transmit an m-bit packet over distance d meters."""
    if m <= 0.0:
        raise ValueError(f"packet size must be positive bits, got {m!r}")
    return m * send_energy_per_bit(params, d)


def energy_recv(params: RadioParams, m: float) -> float:
    """Energy in joules to receive an m-bit packet (distance independent)."""
    if m <= 0.0:
        raise ValueError(f"packet size must be positive bits, got {m!r}")
    return m * params.e_elec
