"""Order-of-magnitude budget cascade from chip platform to converter targets.

The cascade walks chip -> core -> NoC -> wireless front-end -> converter,
applying the allocation policy fractions at each level.  All functions are
pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import Dataset, TransceiverRecord
from .metrics import nyquist_rate, sampling_density


@dataclass(frozen=True)
class PlatformSpec:
    """Chip-level constraints: die area (mm^2), TDP (W), core count."""

    chip_area: float
    tdp: float
    core_count: int

    def __post_init__(self):
        if self.chip_area <= 0 or self.tdp <= 0:
            raise ValueError("chip_area and tdp must be positive")
        if self.core_count < 1:
            raise ValueError(f"core_count must be >= 1, got {self.core_count}")


@dataclass(frozen=True)
class AllocationPolicy:
    """Fractional resource split applied along the cascade."""

    compute_fraction: float = 1.0 / 3.0
    memory_fraction: float = 1.0 / 3.0
    noc_fraction: float = 1.0 / 3.0
    wireless_share_of_noc: float = 0.5
    conversion_share_of_wireless: float = 0.1
    target_datarate: float = 100e9   # bit/s

    def __post_init__(self):
        for name in ("compute_fraction", "memory_fraction", "noc_fraction",
                     "wireless_share_of_noc", "conversion_share_of_wireless"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be within [0, 1], got {value}")
        total = self.compute_fraction + self.memory_fraction + self.noc_fraction
        if total > 1.0 + 1e-9:
            raise ValueError(f"subsystem fractions sum to {total} > 1")
        if self.target_datarate <= 0:
            raise ValueError("target_datarate must be positive")


DEFAULT_PLATFORM = PlatformSpec(chip_area=450.0, tdp=210.0, core_count=100)
DEFAULT_POLICY = AllocationPolicy()


@dataclass(frozen=True)
class BudgetCascade:
    """Per-core area/power budgets at each cascade level, all positive,
    each child level <= its parent."""

    per_core_area: float               # mm^2
    per_core_power: float              # W
    noc_area: float
    noc_power: float
    wireless_area: float
    wireless_power: float
    wireless_energy_per_bit: float     # J/bit at the target datarate
    converter_area_target: float
    converter_power_target: float
    converter_energy_per_bit_target: float


def cascade(platform: PlatformSpec, policy: AllocationPolicy) -> BudgetCascade:
    """Derive converter targets from the platform under the given policy.

    Each budget is formed as a chip-level product of shares with a single
    final division; that keeps the default-policy chain free of compound
    rounding (the canonical 450 mm^2 / 210 W / 100-core split reproduces
    its textbook values bit-exactly).
    """
    chip_area, tdp, cores = platform.chip_area, platform.tdp, platform.core_count
    noc = policy.noc_fraction
    wireless = noc * policy.wireless_share_of_noc
    converter = wireless * policy.conversion_share_of_wireless
    rate = policy.target_datarate

    return BudgetCascade(
        per_core_area=chip_area / cores,
        per_core_power=tdp / cores,
        noc_area=chip_area * noc / cores,
        noc_power=tdp * noc / cores,
        wireless_area=chip_area * wireless / cores,
        wireless_power=tdp * wireless / cores,
        wireless_energy_per_bit=tdp * wireless / (cores * rate),
        converter_area_target=chip_area * converter / cores,
        converter_power_target=tdp * converter / cores,
        converter_energy_per_bit_target=tdp * converter / (cores * rate),
    )


def energy_per_bit(power: float, datarate: float) -> float:
    """Energy per transmitted bit in J/bit."""
    if power <= 0 or datarate <= 0:
        raise ValueError("power and datarate must be positive")
    return power / datarate


def transceiver_energy_per_bit(record: TransceiverRecord) -> float:
    return energy_per_bit(record.power, record.bitrate)


@dataclass(frozen=True)
class DensityComparison:
    """Best converter sampling density vs best transceiver bitrate density."""

    ratio: float
    converter_id: str
    converter_density: float      # Hz/mm^2
    transceiver_id: str
    transceiver_density: float    # (bit/s)/mm^2


def density_comparison(converters: Dataset, transceivers: Dataset,
                       osr: float = 1.0) -> DensityComparison:
    """Compare the best area efficiencies of the two populations.

    Converter density is the Nyquist rate per mm^2; transceiver density is
    the bitrate per mm^2.  Raises ValueError when either side has no record
    with an area.
    """
    best_conv = None
    for record in converters.records:
        if record.area is None:
            continue
        density = sampling_density(nyquist_rate(record.sample_rate, osr), record.area)
        if best_conv is None or density > best_conv[1]:
            best_conv = (record.id, density)
    if best_conv is None:
        raise ValueError("no converter record carries an area")

    best_tx = None
    for tx in transceivers.transceivers:
        density = tx.bitrate / tx.area
        if best_tx is None or density > best_tx[1]:
            best_tx = (tx.id, density)
    if best_tx is None:
        raise ValueError("no transceiver records available")

    return DensityComparison(
        ratio=best_conv[1] / best_tx[1],
        converter_id=best_conv[0],
        converter_density=best_conv[1],
        transceiver_id=best_tx[0],
        transceiver_density=best_tx[1],
    )
