from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Annotated, Literal

from typing_extensions import Doc

from .coxeter import CartanData, cartan_type
from .errors import InvalidRootOfUnity

CACHE_ENV = "QGROUPS_CACHE_DIR"

RrefMethod = Literal["auto", "GJ", "FF", "CD"]


def check_root_of_unity(cartan: CartanData, ell: int) -> None:
    """Reject orders for which (q_i − q_i⁻¹) vanishes or braid automorphisms are undefined."""
    if ell < 0:
        raise InvalidRootOfUnity(f"ell must be ≥ 0, got {ell}")
    if ell == 0:
        return
    e = cartan.e
    if ell in {1, 2, e, 2 * e}:
        raise InvalidRootOfUnity(f"ℓ = {ell} is excluded for {cartan.type_label} (ℓ ∉ {{1, 2, {e}, {2 * e}}})")
    ell_bar = ell // 2 if ell % 2 == 0 else ell
    if e == 3 and ell_bar == 4:
        raise InvalidRootOfUnity(f"braid automorphisms of {cartan.type_label} are undefined for ℓ̄ = 4")


@dataclass(kw_only=True, slots=True)
class RunConfig:
    type_label: Annotated[str, Doc("Cartan type such as A3, B2 or G2")] = "A2"
    ell: Annotated[int, Doc("order of ζ, 0 for generic q")] = 0
    degree_bound: Annotated[int, Doc("largest height handled by the slice oracle")] = 8
    suites: list[str] = field(default_factory=list)
    output_format: Literal["text", "json"] = "text"
    seed: int | None = None
    cache_dir: Annotated[Path | None, Doc("slice cache location, from QGROUPS_CACHE_DIR by default")] = field(
        default_factory=lambda: Path(os.environ[CACHE_ENV]) if os.environ.get(CACHE_ENV) else None
    )
    rref_method: Annotated[RrefMethod, Doc("row reduction passed to DomainMatrix.rref")] = "FF"

    @property
    def cartan(self) -> CartanData:
        return cartan_type(self.type_label)

    @property
    def generic(self) -> bool:
        return self.ell == 0

    def validate(self) -> RunConfig:
        check_root_of_unity(self.cartan, self.ell)
        if self.degree_bound < 1:
            raise ValueError("degree_bound must be positive")
        if self.rref_method == "CD" and self.ell:
            raise ValueError("CD row reduction needs a polynomial ring; use GJ or FF at a root of unity")
        return self
