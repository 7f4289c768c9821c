"""End-to-end synthesis pipeline and the persisted design document.

A design document bundles everything downstream commands need: the original
specification, the prototype, the per-section coupling targets, the
synthesized dimensions, and the substrate name. It serializes to JSON and
re-parses to an equal value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .coupling import CouplingDesign, CouplingSection, design_coupling
from .microstrip import (
    CoupledSectionDims,
    Substrate,
    analyze_coupled,
    resonator_length,
    synthesize_coupled,
)
from .prototype import ChebyshevPrototype, FilterSpec, design_prototype


@dataclass(frozen=True)
class DesignDocument:
    spec: FilterSpec
    prototype: ChebyshevPrototype
    coupling: CouplingDesign
    dims: tuple[CoupledSectionDims, ...]
    substrate: str
    tool: str
    created: str

    def __post_init__(self):
        if len(self.dims) != self.prototype.n + 1:
            raise ValueError("dims count must be n+1")
        if len(self.coupling.sections) != self.prototype.n + 1:
            raise ValueError("coupling sections count must be n+1")


def synthesize_design(
    spec: FilterSpec,
    substrate: Substrate,
    created: str | None = None,
) -> DesignDocument:
    """Run prototype -> coupling -> dimension synthesis for one substrate."""
    proto = design_prototype(spec)
    coupling = design_coupling(proto, spec.fbw(), spec.z0)
    dims = []
    for section in coupling.sections:
        w, s = synthesize_coupled(section.z0e, section.z0o, substrate)
        mp = analyze_coupled(w, s, substrate)
        dims.append(CoupledSectionDims(w=w, s=s, l=resonator_length(mp, spec.f0)))
    if created is None:
        created = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return DesignDocument(
        spec=spec,
        prototype=proto,
        coupling=coupling,
        dims=tuple(dims),
        substrate=substrate.name,
        tool=f"mwbpf {__version__}",
        created=created,
    )


def to_dict(doc: DesignDocument) -> dict:
    return {
        "spec": {
            "f_lower_ghz": doc.spec.f_lower,
            "f_upper_ghz": doc.spec.f_upper,
            "f0_ghz": doc.spec.f0,
            "ripple_db": doc.spec.ripple_db,
            "stop_freq_ghz": doc.spec.stop_freq,
            "stop_atten_db": doc.spec.stop_atten_db,
            "z0_ohm": doc.spec.z0,
        },
        "prototype": {
            "n": doc.prototype.n,
            "ripple_db": doc.prototype.ripple_db,
            "g": list(doc.prototype.g),
        },
        "coupling": {
            "z0_ohm": doc.coupling.z0,
            "sections": [
                {"j_over_y0": s.j_over_y0, "z0e_ohm": s.z0e, "z0o_ohm": s.z0o}
                for s in doc.coupling.sections
            ],
        },
        "dims_mm": [{"w": d.w, "s": d.s, "l": d.l} for d in doc.dims],
        "substrate": doc.substrate,
        "provenance": {"tool": doc.tool, "created": doc.created},
    }


def from_dict(data: dict) -> DesignDocument:
    spec = FilterSpec(
        f_lower=data["spec"]["f_lower_ghz"],
        f_upper=data["spec"]["f_upper_ghz"],
        f0=data["spec"]["f0_ghz"],
        ripple_db=data["spec"]["ripple_db"],
        stop_freq=data["spec"]["stop_freq_ghz"],
        stop_atten_db=data["spec"]["stop_atten_db"],
        z0=data["spec"]["z0_ohm"],
    )
    proto = ChebyshevPrototype(
        n=data["prototype"]["n"],
        ripple_db=data["prototype"]["ripple_db"],
        g=tuple(data["prototype"]["g"]),
    )
    coupling = CouplingDesign(
        z0=data["coupling"]["z0_ohm"],
        sections=tuple(
            CouplingSection(
                j_over_y0=s["j_over_y0"], z0e=s["z0e_ohm"], z0o=s["z0o_ohm"]
            )
            for s in data["coupling"]["sections"]
        ),
    )
    dims = tuple(
        CoupledSectionDims(w=d["w"], s=d["s"], l=d["l"]) for d in data["dims_mm"]
    )
    return DesignDocument(
        spec=spec,
        prototype=proto,
        coupling=coupling,
        dims=dims,
        substrate=data["substrate"],
        tool=data["provenance"]["tool"],
        created=data["provenance"]["created"],
    )


def save_design(doc: DesignDocument, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_dict(doc), indent=2) + "\n", encoding="ascii")


def load_design(path: str | Path) -> DesignDocument:
    return from_dict(json.loads(Path(path).read_text(encoding="ascii")))
