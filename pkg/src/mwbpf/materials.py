"""Substrate materials registry.

Built-ins cover the two boards the toolkit targets out of the box. FR4 uses
the commonly quoted eps_r 4.3 / 1.6 mm; its loss tangent (0.025) and the
RO3003 parameters (eps_r 3.0, tan_d 0.0013, 0.75 mm) are vendor-typical
values, not taken from a datasheet of record, and can be overridden with a
user materials file (``MWBPF_MATERIALS`` or an explicit path).
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .microstrip import Substrate

ENV_REGISTRY = "MWBPF_MATERIALS"

_BUILTINS = (
    Substrate(name="FR4", eps_r=4.3, tan_d=0.025, h=1.6, t=0.035, conductivity=5.8e7),
    Substrate(name="RO3003", eps_r=3.0, tan_d=0.0013, h=0.75, t=0.035, conductivity=5.8e7),
)


class UnknownMaterial(KeyError):
    """Requested substrate is not in the registry."""


class MaterialsRegistry:
    """Case-insensitive name -> Substrate map with overridable built-ins."""

    def __init__(self, substrates: tuple[Substrate, ...] = _BUILTINS):
        self._by_key: dict[str, Substrate] = {}
        for sub in substrates:
            self._by_key[sub.name.lower()] = sub

    def get(self, name: str) -> Substrate:
        try:
            return self._by_key[name.lower()]
        except KeyError:
            raise UnknownMaterial(
                f"unknown material {name!r}; registry has: {', '.join(self.names())}"
            ) from None

    def names(self) -> list[str]:
        return sorted(s.name for s in self._by_key.values())

    def substrates(self) -> list[Substrate]:
        return [self._by_key[k] for k in sorted(self._by_key)]

    def merged_with_file(self, path: str | Path) -> "MaterialsRegistry":
        """New registry with user entries layered over (and shadowing) built-ins."""
        data = json.loads(Path(path).read_text())
        merged = dict(self._by_key)
        for entry in data.get("materials", []):
            sub = Substrate(
                name=entry["name"],
                eps_r=float(entry["eps_r"]),
                tan_d=float(entry["tan_d"]),
                h=float(entry["h"]),
                t=float(entry.get("t", 0.035)),
                conductivity=float(entry.get("conductivity", 5.8e7)),
            )
            merged[sub.name.lower()] = sub
        reg = MaterialsRegistry.__new__(MaterialsRegistry)
        reg._by_key = merged
        return reg


def default_registry() -> MaterialsRegistry:
    """Built-ins, plus the user file named by MWBPF_MATERIALS when set."""
    reg = MaterialsRegistry()
    override = os.environ.get(ENV_REGISTRY)
    if override:
        reg = reg.merged_with_file(override)
    return reg
