"""Approximate rate constants for detailed reactions (25 C, 10 mM Mg2+).

Unimolecular constants are in /s, bimolecular ones in /M/s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .model import Reaction


@dataclass(frozen=True)
class KineticsConfig:
    k_bind_bi: float = 1.0e6
    zip_prefactor: float = 1.0e8
    loop_prefactor_a: float = 2.54e8
    loop_exponent: float = 3.0
    open_exponent_a: float = 1.24
    bm3_init_a: float = 2.8e-3
    bm3_step_b: float = 0.1e-3
    bm4_init_a: float = 77.0
    bm4_step_b: float = 1.0
    # None means "the multiloop closing rate of an empty loop", so rho(0) == 1
    remote_alpha: Optional[float] = None

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.remote_alpha is None:
            object.__setattr__(self, "remote_alpha", self.loop_prefactor_a * 5.0 ** -self.loop_exponent)


DEFAULT = KineticsConfig()


def k_bind21(cfg: KineticsConfig = DEFAULT) -> float:
    return cfg.k_bind_bi


def _loop_closing(size: float, cfg: KineticsConfig) -> float:
    return cfg.loop_prefactor_a * (size + 5.0) ** -cfg.loop_exponent


def k_bind11(context: str, lengths: Sequence[float] | float, stems: int = 2,
             cfg: KineticsConfig = DEFAULT) -> float:
    """Intramolecular binding.

    ``lengths`` is the zipped domain length (zipping), the loop length
    (hairpin), the two unpaired runs flanking the inner stem (bulge) or the
    unpaired domain lengths of the loop (multiloop, with ``stems`` stems
    including the one being formed).
    """
    if isinstance(lengths, (int, float)):
        lengths = (lengths,)
    if any(x < 0 for x in lengths):
        raise ValueError(f"negative length in {tuple(lengths)}")
    total = float(sum(lengths))
    if context == "zipping":
        if total <= 0:
            raise ValueError("zipping needs a positive domain length")
        return cfg.zip_prefactor / total
    if context == "hairpin":
        if total <= 0:
            raise ValueError("hairpin loop length must be positive")
        return _loop_closing(total, cfg)
    if context == "bulge":
        return _loop_closing(total + 5.0, cfg)
    if context == "multiloop":
        if stems < 1:
            raise ValueError("multiloop needs at least one stem")
        size = total + 5.0 * (stems - 1)
        if size <= 0:
            raise ValueError("multiloop size must be positive")
        return _loop_closing(size, cfg)
    raise ValueError(f"unknown binding context {context!r}")


def k_open(length: float, cfg: KineticsConfig = DEFAULT) -> float:
    if length < 1:
        raise ValueError(f"helix length must be >= 1, got {length}")
    return 10.0 ** (6.0 - cfg.open_exponent_a * length)


def remote_rho(loop_size: float, cfg: KineticsConfig = DEFAULT) -> float:
    """Slowdown of branch-migration initiation across a loop of ``loop_size`` nt."""
    return cfg.remote_alpha / _loop_closing(loop_size, cfg)


def k_three_way(kind: str, length: float, loop_size: float = 0.0,
                cfg: KineticsConfig = DEFAULT) -> float:
    if length < 1:
        raise ValueError(f"branch migration length must be >= 1, got {length}")
    init = cfg.bm3_init_a
    if kind == "remote":
        init *= remote_rho(loop_size, cfg)
    elif kind != "direct":
        raise ValueError(f"unknown 3-way kind {kind!r}")
    return 1.0 / (init + cfg.bm3_step_b * length ** 2)


def k_four_way(length: float, cfg: KineticsConfig = DEFAULT) -> float:
    if length < 1:
        raise ValueError(f"branch migration length must be >= 1, got {length}")
    return 1.0 / (cfg.bm4_init_a + cfg.bm4_step_b * length ** 2)


def rate_constant(r: Reaction, cfg: KineticsConfig = DEFAULT) -> float:
    """Rate constant for a reaction emitted by the move functions."""
    info = r.info
    if r.move_type == "bind":
        if len(r.reactants) == 2:
            return k_bind21(cfg)
        ctx = info["context"]
        if ctx == "zipping":
            return k_bind11(ctx, info["length"], cfg=cfg)
        return k_bind11(ctx, info["lengths"], stems=info.get("stems", 2), cfg=cfg)
    if r.move_type == "open":
        return k_open(info["length"], cfg)
    if r.move_type == "branch3way":
        return k_three_way(info["kind"], info["length"], info.get("loop_size", 0.0), cfg)
    if r.move_type == "branch4way":
        return k_four_way(info["length"], cfg)
    raise ValueError(f"no rate law for move type {r.move_type!r}")
