"""Per-record converter metrics and physical performance bounds.

All functions are pure and operate in canonical units (Hz, W, mm^2, dB,
J).  They can be called concurrently without restriction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .dataset import SurveyRecord

BOLTZMANN_J_PER_K = 1.380649e-23
DEFAULT_TEMPERATURE_K = 300.0

# SNDR(dB) = 6.02 * ENOB + 1.76 for an ideal quantizer driven at full scale.
SNDR_PER_BIT_DB = 6.02
SNDR_OFFSET_DB = 1.76


class IncompleteRecordWarning(UserWarning):
    """A record lacks the inputs for one or more requested metrics."""


def sndr_from_enob(enob: float) -> float:
    """Signal-to-noise-and-distortion ratio in dB for a given ENOB."""
    if enob < 0:
        raise ValueError(f"enob must be non-negative, got {enob}")
    return SNDR_PER_BIT_DB * enob + SNDR_OFFSET_DB


def enob_from_sndr(sndr: float) -> float:
    """Effective bits for a given SNDR; may be negative for sub-noise inputs."""
    return (sndr - SNDR_OFFSET_DB) / SNDR_PER_BIT_DB


def signal_bandwidth(sample_rate: float, osr: float = 1.0) -> float:
    """Signal bandwidth in Hz: BW = f_s / (2 * OSR)."""
    _check_positive(sample_rate=sample_rate)
    _check_osr(osr)
    return sample_rate / (2.0 * osr)


def nyquist_rate(sample_rate: float, osr: float = 1.0) -> float:
    """Nyquist rate in Hz for a converter sampling at ``sample_rate``."""
    _check_positive(sample_rate=sample_rate)
    _check_osr(osr)
    return sample_rate / osr


def single_bit_energy(power: float, sample_rate: float, osr: float = 1.0) -> float:
    """Energy per modulated bit at 1 b/s/Hz: E_bit = P / BW = 2P / f_snyq."""
    _check_positive(power=power)
    return power / signal_bandwidth(sample_rate, osr)


def sampling_density(nyquist_rate: float, area: float) -> float:
    """Nyquist rate per unit active area, Hz/mm^2."""
    _check_positive(nyquist_rate=nyquist_rate, area=area)
    return nyquist_rate / area


def schreier_fom(sndr: float, sample_rate: float, power: float) -> float:
    """Schreier figure of merit in dB: SNDR + 10*log10((f_s/2)/P)."""
    _check_positive(sample_rate=sample_rate, power=power)
    return sndr + 10.0 * math.log10(sample_rate / (2.0 * power))


def jitter_snr_limit(input_frequency: float, jitter_rms: float) -> float:
    """Aperture-jitter SNR ceiling in dB: -20*log10(2*pi*f*sigma)."""
    _check_positive(input_frequency=input_frequency, jitter_rms=jitter_rms)
    return -20.0 * math.log10(2.0 * math.pi * input_frequency * jitter_rms)


def jitter_enob_limit(input_frequency: float, jitter_rms: float) -> float:
    """Maximum ENOB achievable under a given RMS aperture jitter."""
    return enob_from_sndr(jitter_snr_limit(input_frequency, jitter_rms))


def min_energy_per_sample(sndr: float, temperature: float = DEFAULT_TEMPERATURE_K) -> float:
    """Ideal class-B sampling energy floor in J: (P/f_s)_min = 8kT * SNR.

    SNR enters as a linear power ratio, 10^(SNDR/10).
    """
    _check_positive(temperature=temperature)
    return 8.0 * BOLTZMANN_J_PER_K * temperature * 10.0 ** (sndr / 10.0)


def speed_resolution_product(sample_rate: float, enob: float) -> float:
    """Speed-resolution product f_s * 2^ENOB in Hz."""
    _check_positive(sample_rate=sample_rate)
    return sample_rate * 2.0 ** enob


@dataclass(frozen=True)
class DerivedMetrics:
    """Metrics computed from one survey record.

    ``bandwidth == nyquist_rate / 2`` holds exactly.  Fields whose inputs
    are absent on the record stay ``None``; nothing is imputed.
    """

    bandwidth: float            # Hz
    nyquist_rate: float         # Hz
    single_bit_energy: float    # J/bit
    enob: Optional[float] = None
    sndr: Optional[float] = None
    sampling_density: Optional[float] = None   # Hz/mm^2
    schreier_fom: Optional[float] = None       # dB


def derive_all(record: SurveyRecord, osr: float = 1.0) -> DerivedMetrics:
    """Compute every metric whose inputs are present on ``record``.

    When only one of sndr/enob is stored the other is derived from it.
    A record with neither triggers :class:`IncompleteRecordWarning` and
    leaves the resolution-dependent fields absent.
    """
    nyq = nyquist_rate(record.sample_rate, osr)
    bw = nyq / 2.0
    e_bit = record.power / bw

    sndr = record.sndr
    enob = record.enob
    if sndr is None and enob is not None:
        sndr = sndr_from_enob(enob)
    elif enob is None and sndr is not None:
        enob = enob_from_sndr(sndr)
    elif sndr is None and enob is None:
        warnings.warn(
            f"record {record.id!r} has neither sndr nor enob; "
            "resolution-dependent metrics left absent",
            IncompleteRecordWarning, stacklevel=2)

    return DerivedMetrics(
        bandwidth=bw,
        nyquist_rate=nyq,
        single_bit_energy=e_bit,
        enob=enob,
        sndr=sndr,
        sampling_density=None if record.area is None else sampling_density(nyq, record.area),
        schreier_fom=None if sndr is None else schreier_fom(sndr, record.sample_rate, record.power),
    )


# ---------------------------------------------------------------------------
# Metric key resolution (shared by frontier/trends/report layers)
# ---------------------------------------------------------------------------

METRIC_KEYS = (
    "year", "power", "sample_rate", "tech_node", "area",
    "sndr", "enob", "bandwidth", "nyquist_rate",
    "single_bit_energy", "sampling_density", "schreier_fom",
    "speed_resolution",
)

METRIC_ALIASES = {
    "ebit": "single_bit_energy",
    "energy": "single_bit_energy",
    "density": "sampling_density",
    "fom": "schreier_fom",
    "bw": "bandwidth",
    "fs": "sample_rate",
    "nyquist": "nyquist_rate",
    "lambda": "tech_node",
    "tech_nm": "tech_node",
    "node": "tech_node",
    "speed": "speed_resolution",
}

_RECORD_KEYS = frozenset({"year", "power", "sample_rate", "tech_node", "area"})
_DERIVED_KEYS = frozenset(
    {"sndr", "enob", "bandwidth", "nyquist_rate",
     "single_bit_energy", "sampling_density", "schreier_fom"}
)


def canonical_metric_key(key: str) -> str:
    key = METRIC_ALIASES.get(key, key)
    if key not in METRIC_KEYS:
        raise UnknownMetricError(key)
    return key


class UnknownMetricError(ValueError):
    def __init__(self, key: str):
        super().__init__(f"unknown metric key: {key!r}")
        self.key = key


def metric_value(record: SurveyRecord, derived: DerivedMetrics, key: str) -> Optional[float]:
    """Resolve a metric key on a (record, derived-metrics) pair; None if absent."""
    key = canonical_metric_key(key)
    if key in _RECORD_KEYS:
        value = getattr(record, key)
        return None if value is None else float(value)
    if key in _DERIVED_KEYS:
        return getattr(derived, key)
    # speed_resolution needs a resolved enob
    if derived.enob is None:
        return None
    return speed_resolution_product(record.sample_rate, derived.enob)


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")


def _check_osr(osr: float) -> None:
    if osr < 1:
        raise ValueError(f"osr must be >= 1, got {osr}")
