"""Scalar system parameters and unit conventions.

All internal quantities are linear (no dB anywhere past the constructors);
transmit power is normalized out, so the noise level ``noise_sigma2`` is
expressed relative to unit transmit power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


#: Default noise-only SNR at the reference link distance, in dB.  The model
#: normalizes transmit power away, so the absolute noise floor is a free
#: parameter; this default keeps noise sub-dominant to interference for
#: densities of ~0.5 users/m^2 and above.
DEFAULT_SNR_AT_D0_DB = 20.0


@dataclass(frozen=True)
class SystemParams:
    """All scalar model parameters.

    density              users per m^2 of the occupied region
    body_w               human-body blockage disk diameter (m)
    device_d             device orbit radius around the body center (m)
    ref_link_d0          reference link length (m)
    alpha_los / alpha_nlos   path-loss exponents (NLOS must exceed LOS)
    nakagami_m           integer fading shape; power fades are unit-mean
                         Gamma(m, 1/m)
    self_block_bl        linear attenuation per self-blockage event (> 1)
    noise_sigma2         noise power normalized by unit transmit power
    bandwidth_hz         system bandwidth for rate figures
    """

    density: float = 1.0
    body_w: float = 0.45
    device_d: float = 0.325
    ref_link_d0: float = 0.25
    alpha_los: float = 2.0
    alpha_nlos: float = 4.0
    nakagami_m: int = 7
    self_block_bl: float = db_to_linear(40.0)
    noise_sigma2: float | None = None
    bandwidth_hz: float = 1.76e9

    def __post_init__(self):
        if self.density < 0:
            raise ValueError(f"density must be >= 0, got {self.density}")
        if not self.device_d >= self.body_w / 2.0:
            raise ValueError("device_d must be >= body_w / 2 (device sits outside its own body disk)")
        if not self.alpha_nlos > self.alpha_los:
            raise ValueError("alpha_nlos must exceed alpha_los")
        if not (isinstance(self.nakagami_m, int) and 1 <= self.nakagami_m <= 30):
            raise ValueError("nakagami_m must be an integer in [1, 30] "
                             "(the alternating coverage sum is ill-conditioned beyond that)")
        if not self.self_block_bl > 1.0:
            raise ValueError("self_block_bl must be > 1 (linear attenuation)")
        if self.noise_sigma2 is None:
            object.__setattr__(self, "noise_sigma2", self.default_sigma2())
        if self.noise_sigma2 < 0:
            raise ValueError("noise_sigma2 must be >= 0")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")

    def default_sigma2(self) -> float:
        """Noise level giving the default noise-only SNR at the reference distance."""
        return self.ref_link_d0 ** (-self.alpha_los) / db_to_linear(DEFAULT_SNR_AT_D0_DB)

    def with_(self, **overrides) -> "SystemParams":
        return replace(self, **overrides)
