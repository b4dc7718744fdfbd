"""Flat key/value configuration files with dot-namespaced sections.

Format: one ``section.key = value`` per line, UTF-8, ``#`` starts a comment.
Floats are written with their shortest round-trip repr so specs survive a
serialize/parse cycle unchanged.

    platform.chip_area_mm2 = 450.0
    policy.noc_fraction = 0.3333333333333333   # thirds
    requirement.max_energy_per_bit_j = 1e-12
"""

from __future__ import annotations

from typing import Mapping, Optional, Union

from .budget import AllocationPolicy, PlatformSpec
from .gap import RequirementSpec


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict[str, str]:
    """Parse to a flat mapping of raw string values, preserving key order."""
    values: dict[str, str] = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw_line!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {line_no}: empty key")
        if key in values:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        values[key] = value
    return values


def format_config(values: Mapping[str, Union[str, int, float]]) -> str:
    lines = []
    for key, value in values.items():
        if isinstance(value, float):
            rendered = repr(value)
        else:
            rendered = str(value)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"


def _require(values: Mapping[str, str], key: str) -> str:
    if key not in values:
        raise ConfigError(f"missing config key {key!r}")
    return values[key]


def _as_float(values: Mapping[str, str], key: str) -> float:
    raw = _require(values, key)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r} is not a number: {raw!r}")


def _as_int(values: Mapping[str, str], key: str) -> int:
    raw = _require(values, key)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r} is not an integer: {raw!r}")


# ---------------------------------------------------------------------------
# Typed views
# ---------------------------------------------------------------------------

def platform_from_config(values: Mapping[str, str]) -> PlatformSpec:
    return PlatformSpec(
        chip_area=_as_float(values, "platform.chip_area_mm2"),
        tdp=_as_float(values, "platform.tdp_w"),
        core_count=_as_int(values, "platform.core_count"),
    )


def platform_to_config(platform: PlatformSpec) -> dict[str, Union[str, int, float]]:
    return {
        "platform.chip_area_mm2": platform.chip_area,
        "platform.tdp_w": platform.tdp,
        "platform.core_count": platform.core_count,
    }


def policy_from_config(values: Mapping[str, str]) -> AllocationPolicy:
    return AllocationPolicy(
        compute_fraction=_as_float(values, "policy.compute_fraction"),
        memory_fraction=_as_float(values, "policy.memory_fraction"),
        noc_fraction=_as_float(values, "policy.noc_fraction"),
        wireless_share_of_noc=_as_float(values, "policy.wireless_share_of_noc"),
        conversion_share_of_wireless=_as_float(values, "policy.conversion_share_of_wireless"),
        target_datarate=_as_float(values, "policy.target_datarate_bps"),
    )


def policy_to_config(policy: AllocationPolicy) -> dict[str, Union[str, int, float]]:
    return {
        "policy.compute_fraction": policy.compute_fraction,
        "policy.memory_fraction": policy.memory_fraction,
        "policy.noc_fraction": policy.noc_fraction,
        "policy.wireless_share_of_noc": policy.wireless_share_of_noc,
        "policy.conversion_share_of_wireless": policy.conversion_share_of_wireless,
        "policy.target_datarate_bps": policy.target_datarate,
    }


def requirement_from_config(values: Mapping[str, str]) -> RequirementSpec:
    return RequirementSpec(
        name=_require(values, "requirement.name"),
        min_bandwidth=_as_float(values, "requirement.min_bandwidth_hz"),
        min_nyquist=_as_float(values, "requirement.min_nyquist_hz"),
        max_osr=_as_float(values, "requirement.max_osr"),
        min_enob=_as_float(values, "requirement.min_enob_bits"),
        max_area=_as_float(values, "requirement.max_area_mm2"),
        max_energy_per_bit=_as_float(values, "requirement.max_energy_per_bit_j"),
    )


def requirement_to_config(spec: RequirementSpec) -> dict[str, Union[str, int, float]]:
    return {
        "requirement.name": spec.name,
        "requirement.min_bandwidth_hz": spec.min_bandwidth,
        "requirement.min_nyquist_hz": spec.min_nyquist,
        "requirement.max_osr": spec.max_osr,
        "requirement.min_enob_bits": spec.min_enob,
        "requirement.max_area_mm2": spec.max_area,
        "requirement.max_energy_per_bit_j": spec.max_energy_per_bit,
    }


def maybe_platform(values: Mapping[str, str]) -> Optional[PlatformSpec]:
    return platform_from_config(values) if "platform.chip_area_mm2" in values else None


def maybe_policy(values: Mapping[str, str]) -> Optional[AllocationPolicy]:
    return policy_from_config(values) if "policy.noc_fraction" in values else None


def maybe_requirement(values: Mapping[str, str]) -> Optional[RequirementSpec]:
    return requirement_from_config(values) if "requirement.name" in values else None
