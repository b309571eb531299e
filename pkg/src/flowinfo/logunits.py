"""Logarithmic information units and dimensional physical quantities.

Information units (bit, nat, dB, ...) are dimensionless but carry a
magnitude, stored here as the number of bits one unit is worth.  Physical
quantities carry a :class:`Dimension` (an exponent map) and an exact
power-of-ten scale relative to the reference units gram, metre and year.
Keeping dimension and magnitude apart is what lets :func:`checked_add`
refuse to add a bare flow to a flow-information product.

Unit string grammar, as used by :func:`parse_dimension`::

    spec   := token (WS token)*
    token  := "10^" INT | PREFIX? SYMBOL ("^"? INT)?
    PREFIX := p | n | u | m | k
    SYMBOL := g (mass) | m (length) | y (time) | any other alphabetic name

Any alphabetic name other than the three base symbols is kept as a free
annotation, e.g. ``C`` for carbon.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping

__all__ = [
    "UnitError",
    "ParseError",
    "DimensionError",
    "InfoUnit",
    "Dimension",
    "DimQuantity",
    "InfoQuantity",
    "FlowInfoQuantity",
    "BIT",
    "NAT",
    "DECIBEL",
    "BYTE",
    "CENT",
    "CDROM",
    "REGISTRY",
    "DIMENSIONLESS",
    "parse_info_unit",
    "convert_info",
    "parse_dimension",
    "format_dimension",
    "format_unit",
    "parse_unit",
    "rescale",
    "convert_flow_info",
    "checked_add",
]


class UnitError(ValueError):
    """Unknown or invalid information unit."""


class ParseError(ValueError):
    """Malformed dimension string.

    ``token_index`` is the 0-based index of the offending token and
    ``position`` its 0-based character offset in the input.
    """

    def __init__(self, message: str, token_index: int, position: int):
        super().__init__(f"{message} (token {token_index + 1}, column {position + 1})")
        self.token_index = token_index
        self.position = position


class DimensionError(TypeError):
    """Quantities of different dimension were combined."""


# --------------------------------------------------------------------------
# information units


@dataclass(frozen=True)
class InfoUnit:
    """A dimensionless logarithmic unit; ``bits_per_unit`` is log2 of its base."""

    symbol: str
    bits_per_unit: float

    def __post_init__(self):
        b = self.bits_per_unit
        if not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0):
            raise UnitError(f"bits_per_unit must be positive and finite, got {b!r}")

    def __str__(self):
        return self.symbol


BIT = InfoUnit("bit", 1.0)
NAT = InfoUnit("nat", math.log2(math.e))
DECIBEL = InfoUnit("dB", math.log2(10.0) / 10.0)
BYTE = InfoUnit("byte", 8.0)
CENT = InfoUnit("cent", 1.0 / 1200.0)
# Red Book Mode-1 CD-ROM: 666000 * 1024 bytes
CDROM = InfoUnit("CDROM", float(666_000 * 1024 * 8))

REGISTRY: dict[str, InfoUnit] = {u.symbol: u for u in (BIT, NAT, DECIBEL, BYTE, CENT, CDROM)}
_ALIASES = {"bits": BIT, "nats": NAT, "bytes": BYTE, "cents": CENT}


def parse_info_unit(spec: str) -> InfoUnit:
    """Look up a registry unit by symbol, or build ``custom:<base>``.

    >>> parse_info_unit("byte").bits_per_unit
    8.0
    >>> parse_info_unit("custom:4").bits_per_unit
    2.0
    """
    if isinstance(spec, InfoUnit):
        return spec
    spec = spec.strip()
    if spec in REGISTRY:
        return REGISTRY[spec]
    if spec in _ALIASES:
        return _ALIASES[spec]
    if spec.startswith("custom:"):
        raw = spec[len("custom:"):]
        try:
            base = float(raw)
        except ValueError:
            raise UnitError(f"custom unit base is not a number: {raw!r}") from None
        if not (math.isfinite(base) and base > 1.0):
            raise UnitError(f"custom unit base must be a finite number > 1, got {raw!r}")
        return InfoUnit(spec, math.log2(base))
    raise UnitError(f"unknown information unit {spec!r}; known: {', '.join(REGISTRY)}, custom:<base>")


def _is_info_symbol(name: str) -> bool:
    return name in REGISTRY or name in _ALIASES or name.startswith("custom:")


@dataclass(frozen=True)
class InfoQuantity:
    """An amount of information; ``+inf`` is allowed (surprisal of an impossible event)."""

    value: float
    unit: InfoUnit = BIT

    def __post_init__(self):
        if math.isnan(self.value) or self.value < 0:
            raise ValueError(f"information amount must be >= 0, got {self.value!r}")

    @property
    def bits(self) -> float:
        return self.value * self.unit.bits_per_unit

    def to(self, unit: InfoUnit | str) -> InfoQuantity:
        return convert_info(self, parse_info_unit(unit))

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return f"{self.value:g} {self.unit}"


def convert_info(q: InfoQuantity, target: InfoUnit) -> InfoQuantity:
    """Express ``q`` in ``target`` units; infinity stays infinity."""
    if math.isinf(q.value):
        return InfoQuantity(math.inf, target)
    if q.unit == target:
        return q
    return InfoQuantity(q.value * q.unit.bits_per_unit / target.bits_per_unit, target)


# --------------------------------------------------------------------------
# physical dimensions

MASS, LENGTH, TIME = "mass", "length", "time"
_BASE_SYMBOLS = {"g": MASS, "m": LENGTH, "y": TIME}
_BASE_ORDER = (MASS, LENGTH, TIME)
_SYMBOL_OF = {v: k for k, v in _BASE_SYMBOLS.items()}
PREFIXES = {"p": -12, "n": -9, "u": -6, "m": -3, "k": 3}
_PREFIX_OF = {v: k for k, v in PREFIXES.items()}

_TOKEN = re.compile(r"^(?P<name>[A-Za-z]+(?::[0-9.eE+-]+)?)(?:\^?(?P<exp>[+-]?\d+))?$")
_POWER_TOKEN = re.compile(r"^10\^(?P<exp>[+-]?\d+)$")


@dataclass(frozen=True)
class Dimension:
    """Exponent map over base dimensions and free annotation symbols.

    Zero exponents are never stored, so equality of two dimensions is
    equality of their maps.
    """

    exponents: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.exponents.items() if int(v) != 0}
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def __hash__(self):
        return hash(tuple(self.exponents.items()))

    def __eq__(self, other):
        if not isinstance(other, Dimension):
            return NotImplemented
        return self.exponents == other.exponents

    def __mul__(self, other: Dimension) -> Dimension:
        out = dict(self.exponents)
        for k, v in other.exponents.items():
            out[k] = out.get(k, 0) + v
        return Dimension(out)

    def __pow__(self, n: int) -> Dimension:
        return Dimension({k: v * n for k, v in self.exponents.items()})

    @property
    def is_dimensionless(self) -> bool:
        return not self.exponents

    def __str__(self):
        return format_dimension(self) or "1"


DIMENSIONLESS = Dimension()


def _split_tokens(spec: str):
    for m in re.finditer(r"\S+", spec):
        yield m.group(0), m.start()


def _parse_tokens(spec: str, allow_info: bool):
    exps: dict[str, int] = {}
    scale = 0
    info: list[tuple[InfoUnit, int, int]] = []
    for idx, (tok, pos) in enumerate(_split_tokens(spec)):
        pm = _POWER_TOKEN.match(tok)
        if pm:
            scale += int(pm.group("exp"))
            continue
        m = _TOKEN.match(tok)
        if not m:
            head = re.match(r"[A-Za-z]+", tok)
            if head:
                raise ParseError(f"malformed exponent in {tok!r}", idx, pos + head.end())
            raise ParseError(f"missing unit symbol in {tok!r}", idx, pos)
        name = m.group("name")
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if allow_info and _is_info_symbol(name):
            try:
                unit = parse_info_unit(name)
            except UnitError as err:
                raise ParseError(str(err), idx, pos) from None
            info.append((unit, exp, idx))
            continue
        if ":" in name:
            raise ParseError(f"malformed unit token {tok!r}", idx, pos)
        if name in _BASE_SYMBOLS:
            key, power = _BASE_SYMBOLS[name], 0
        elif len(name) > 1 and name[0] in PREFIXES and name[1:] in _BASE_SYMBOLS:
            key, power = _BASE_SYMBOLS[name[1:]], PREFIXES[name[0]]
        else:
            key, power = name, 0
        exps[key] = exps.get(key, 0) + exp
        scale += power * exp
    return Dimension(exps), scale, info


def parse_dimension(spec: str) -> tuple[Dimension, int]:
    """Parse a unit string into ``(dimension, scale)``, scale a power of ten.

    >>> d, s = parse_dimension("mg C m^-2 y^-1")
    >>> d.exponents == {"mass": 1, "C": 1, "length": -2, "time": -1}, s
    (True, -3)
    """
    dim, scale, _ = _parse_tokens(spec, allow_info=False)
    return dim, scale


def parse_unit(spec: str) -> tuple[Dimension, int, InfoUnit | None]:
    """Parse a unit string that may contain one information unit token.

    Used for flow-information strings such as ``"mg C bit m^-2 y^-1"``.
    A bare information unit (``"dB"``) yields the dimensionless dimension.
    """
    dim, scale, info = _parse_tokens(spec, allow_info=True)
    if not info:
        return dim, scale, None
    if len(info) > 1:
        _, _, idx = info[1]
        pos = list(_split_tokens(spec))[idx][1]
        raise ParseError("more than one information unit", idx, pos)
    unit, exp, idx = info[0]
    if exp != 1:
        pos = list(_split_tokens(spec))[idx][1]
        raise ParseError(f"information unit {unit.symbol!r} must have exponent 1", idx, pos)
    return dim, scale, unit


def _fmt_token(symbol: str, exp: int) -> str:
    return symbol if exp == 1 else f"{symbol}^{exp}"


def format_dimension(dim: Dimension, scale: int = 0, info: InfoUnit | None = None) -> str:
    """Render ``dim`` (optionally with scale and info unit) in the parse grammar.

    Order is mass, annotations, info unit, length, time, matching the
    way ecological flow units are usually written.  The scale is folded into
    an SI prefix on the first base symbol that can absorb it, otherwise it
    is emitted as a leading ``10^k`` token.
    """
    exps = dim.exponents
    annotations = [k for k in exps if k not in _BASE_ORDER]
    order = [MASS] + annotations + ["<info>", LENGTH, TIME]
    prefix_for: dict[str, str] = {}
    rest = scale
    if rest:
        for key in (MASS, LENGTH, TIME):
            e = exps.get(key)
            if e and rest % e == 0 and (rest // e) in _PREFIX_OF:
                prefix_for[key] = _PREFIX_OF[rest // e]
                rest = 0
                break
    parts = [f"10^{rest}"] if rest else []
    for key in order:
        if key == "<info>":
            if info is not None:
                parts.append(info.symbol)
        elif key in exps:
            symbol = prefix_for.get(key, "") + _SYMBOL_OF.get(key, key)
            parts.append(_fmt_token(symbol, exps[key]))
    return " ".join(parts)


def format_unit(dim: Dimension, scale: int, info: InfoUnit | None = None) -> str:
    return format_dimension(dim, scale, info)


def describe_dimension(dim: Dimension, info: bool = False) -> str:
    """Canonical scale-free description, e.g. ``[mass C length^-2 time^-1 information]``."""
    parts = [_fmt_token(k, v) for k, v in dim.exponents.items()]
    if info:
        parts.append("information")
    return "[" + " ".join(parts) + "]" if parts else "[dimensionless]"


# --------------------------------------------------------------------------
# quantities


def rescale(value: float, from_scale: int, to_scale: int) -> float:
    """Multiply by ``10**(from_scale - to_scale)`` with one correctly rounded op."""
    k = from_scale - to_scale
    if k >= 0:
        return value * 10**k
    return value / 10**-k


@dataclass(frozen=True)
class DimQuantity:
    value: float
    scale: int = 0
    dimension: Dimension = DIMENSIONLESS

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"quantity value must be finite, got {self.value!r}")
        if int(self.scale) != self.scale:
            raise ValueError("scale must be an integer power of ten")
        object.__setattr__(self, "scale", int(self.scale))

    def to_scale(self, scale: int) -> DimQuantity:
        return DimQuantity(rescale(self.value, self.scale, scale), scale, self.dimension)

    def __add__(self, other):
        return checked_add(self, other)

    @property
    def unit_string(self) -> str:
        return format_dimension(self.dimension, self.scale)

    def __str__(self):
        return f"{self.value:g} {self.unit_string}".rstrip()


@dataclass(frozen=True)
class FlowInfoQuantity:
    """A flow multiplied by an amount of information, e.g. ascendency."""

    value: float
    unit: InfoUnit = BIT
    scale: int = 0
    dimension: Dimension = DIMENSIONLESS

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(
                f"flow-information product must be finite, got {self.value!r}"
            )
        object.__setattr__(self, "scale", int(self.scale))

    @classmethod
    def product(cls, flow: DimQuantity, info: InfoQuantity) -> FlowInfoQuantity:
        if math.isinf(info.value):
            raise ValueError("cannot weight an infinite information amount by a flow")
        return cls(flow.value * info.value, info.unit, flow.scale, flow.dimension)

    def to(self, unit: InfoUnit | str, scale: int | None = None) -> FlowInfoQuantity:
        return convert_flow_info(self, parse_info_unit(unit), self.scale if scale is None else scale)

    def __add__(self, other):
        return checked_add(self, other)

    @property
    def unit_string(self) -> str:
        return format_dimension(self.dimension, self.scale, self.unit)

    def __str__(self):
        return f"{self.value:g} {self.unit_string}"


def convert_flow_info(q: FlowInfoQuantity, target_unit: InfoUnit, target_scale: int) -> FlowInfoQuantity:
    """Change the information unit and decimal scale, keeping the dimension."""
    v = q.value * q.unit.bits_per_unit / target_unit.bits_per_unit
    return FlowInfoQuantity(rescale(v, q.scale, target_scale), target_unit, target_scale, q.dimension)


def _describe(q) -> str:
    if isinstance(q, FlowInfoQuantity):
        return f"{describe_dimension(q.dimension, info=True)} ({q.unit_string})"
    if isinstance(q, DimQuantity):
        return f"{describe_dimension(q.dimension)} ({q.unit_string or 'dimensionless'})"
    return type(q).__name__


def checked_add(a, b):
    """Add two quantities of the same kind and dimension, in ``a``'s unit and scale.

    A bare flow and a flow-information product are never addable, even when
    their physical dimensions coincide.
    """
    kinds = (DimQuantity, FlowInfoQuantity)
    if not isinstance(a, kinds) or not isinstance(b, kinds) or type(a) is not type(b):
        raise DimensionError(f"cannot add {_describe(a)} and {_describe(b)}")
    if a.dimension != b.dimension:
        raise DimensionError(f"cannot add {_describe(a)} and {_describe(b)}")
    if isinstance(a, DimQuantity):
        return DimQuantity(a.value + b.to_scale(a.scale).value, a.scale, a.dimension)
    b2 = convert_flow_info(b, a.unit, a.scale)
    return FlowInfoQuantity(a.value + b2.value, a.unit, a.scale, a.dimension)
