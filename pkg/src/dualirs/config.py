"""System parameters, unit conversion and the flat parameter-file format.

All quantities are kept in linear SI units (W, m, plain power ratios).
Decibel values are only accepted at the boundary (``db_to_linear``,
``dbm_to_watts`` and ``_db``/``_dbm`` keys in parameter files).
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional


class ParamsError(ValueError):
    """Invalid parameter value or malformed parameter document."""


def db_to_linear(x: float) -> float:
    """Convert a decibel value to a linear power ratio."""
    x = float(x)
    if not math.isfinite(x):
        raise ParamsError(f"dB value must be finite, got {x!r}")
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0:
        raise ParamsError(f"linear ratio must be positive, got {x!r}")
    return 10.0 * math.log10(x)


def dbm_to_watts(x: float) -> float:
    return db_to_linear(x) / 1000.0


def watts_to_dbm(p: float) -> float:
    return linear_to_db(p * 1000.0)


# 3.5 GHz carrier
_WAVELENGTH = 0.087


@dataclass(frozen=True)
class SystemParams:
    """Scalar link parameters of the AIRS/PIRS jointly aided link.

    Attributes
    ----------
    D : float
        Horizontal Tx-Rx distance (m).
    H_A, H_P : float
        Altitudes of the active and passive IRS (m).
    lam : float
        Carrier wavelength (m). Written as ``lambda`` in parameter files.
    beta : float
        Channel power gain at the 1 m reference distance (linear).
    P_t : float
        Transmit power (W).
    P_F : float or None
        Amplification power budget of the active IRS (W). This is the sweep
        variable, so it has no default.
    sigma2 : float
        Receiver noise power (W).
    sigmaF2 : float
        Amplification noise power per active element (W).
    N_a, N_p : int
        Element counts of the active and passive IRS.
    delta_A, delta_P : float
        Element spacings (m); half a wavelength when omitted.
    """

    D: float = 30.0
    H_A: float = 6.0
    H_P: float = 5.0
    lam: float = _WAVELENGTH
    beta: float = 10.0 ** (-4.3)
    P_t: float = 0.1
    P_F: Optional[float] = None
    sigma2: float = 1e-11
    sigmaF2: float = 4e-11
    N_a: int = 450
    N_p: int = 600
    delta_A: Optional[float] = None
    delta_P: Optional[float] = None

    def __post_init__(self):
        if self.delta_A is None:
            object.__setattr__(self, "delta_A", self.lam / 2)
        if self.delta_P is None:
            object.__setattr__(self, "delta_P", self.lam / 2)
        validate(self)

    @property
    def pf(self) -> float:
        """Amplification budget, raising if the caller never set it."""
        if self.P_F is None:
            raise ParamsError("P_F is unset; give P_F or P_F_dbm")
        return self.P_F

    def with_pf_dbm(self, pf_dbm: float) -> "SystemParams":
        return dataclasses.replace(self, P_F=dbm_to_watts(pf_dbm))

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)


def validate(p: SystemParams) -> None:
    positive = ["D", "H_A", "H_P", "lam", "beta", "sigma2", "sigmaF2"]
    for name in positive:
        value = getattr(p, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ParamsError(f"{name} must be a finite positive number, got {value!r}")
    # zero transmit power is allowed: noise-only amplification is a valid limit
    if not (math.isfinite(p.P_t) and p.P_t >= 0):
        raise ParamsError(f"P_t must be finite and non-negative, got {p.P_t!r}")
    if p.P_F is not None and not (math.isfinite(p.P_F) and p.P_F > 0):
        raise ParamsError(f"P_F must be a finite positive number, got {p.P_F!r}")
    for name in ("N_a", "N_p"):
        value = getattr(p, name)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ParamsError(f"{name} must be a positive integer, got {value!r}")
    for name in ("delta_A", "delta_P"):
        value = getattr(p, name)
        if not (math.isfinite(value) and 0 < value <= p.lam):
            raise ParamsError(f"{name} must lie in (0, lambda], got {value!r}")


def default_params() -> SystemParams:
    """Default numerical setup; ``P_F`` is left for the caller to set."""
    return SystemParams()


_FIELDS = {f.name for f in dataclasses.fields(SystemParams)}
_INT_FIELDS = {"N_a", "N_p"}
_FILE_ALIASES = {"lambda": "lam"}
_FIELD_TO_KEY = {v: k for k, v in _FILE_ALIASES.items()}
_POWER_FIELDS = {"P_t", "P_F", "sigma2", "sigmaF2"}


def _resolve_key(key: str) -> tuple[str, Optional[str]]:
    """Map a file key to (field name, unit suffix)."""
    for suffix in ("_dbm", "_db"):
        if key.endswith(suffix):
            base = _FILE_ALIASES.get(key[: -len(suffix)], key[: -len(suffix)])
            if base in _FIELDS:
                if suffix == "_dbm" and base not in _POWER_FIELDS:
                    raise ParamsError(f"key {key!r}: dBm applies to powers only")
                if base in _INT_FIELDS:
                    raise ParamsError(f"key {key!r}: element counts take no dB suffix")
                return base, suffix
    base = _FILE_ALIASES.get(key, key)
    if base not in _FIELDS:
        raise ParamsError(f"unknown key {key!r}")
    return base, None


def load_params(text: str) -> SystemParams:
    """Parse a flat ``key = value`` document into :class:`SystemParams`.

    Lines are ``key = value`` with ``#`` comments. Keys are the field names
    (``lambda`` for the wavelength) with an optional ``_db`` or ``_dbm``
    suffix. Omitted keys keep their defaults.
    """
    values: dict[str, float | int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParamsError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value_text = (s.strip() for s in line.partition("="))
        try:
            field, suffix = _resolve_key(key)
        except ParamsError as exc:
            raise ParamsError(f"line {lineno}: {exc}") from None
        if field in values:
            raise ParamsError(f"line {lineno}: duplicate key for {field!r}")
        try:
            if field in _INT_FIELDS:
                value = int(value_text)
            else:
                value = float(value_text)
        except ValueError:
            raise ParamsError(f"line {lineno}: key {key!r} has non-numeric value {value_text!r}") from None
        if suffix == "_db":
            value = db_to_linear(value)
        elif suffix == "_dbm":
            value = dbm_to_watts(value)
        values[field] = value
    return SystemParams(**values)


def dump_params(p: SystemParams) -> str:
    """Serialize to the format read by :func:`load_params` (exact round trip)."""
    lines = []
    for f in dataclasses.fields(SystemParams):
        value = getattr(p, f.name)
        if value is None:
            continue
        lines.append(f"{_FIELD_TO_KEY.get(f.name, f.name)} = {value!r}")
    return "\n".join(lines) + "\n"


def read_params_file(path) -> SystemParams:
    with open(path, encoding="utf-8") as fh:
        return load_params(fh.read())
