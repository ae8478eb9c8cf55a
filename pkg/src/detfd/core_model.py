"""Level arithmetic and XOR superposition for the deterministic two-hop relay channel.

Conventions fixed here and used everywhere else in the package:

* A link of strength ``n`` carries ``n`` parallel binary signal levels.
  Level 1 is the strongest; level ``n`` is the weakest.
* Internally every received bit is addressed by its *height*, the distance
  above the receiver's noise floor.  A forward transmitter of span ``n``
  puts its level ``i`` at height ``n - i``; the relay's residual loopback
  path of gain ``m`` puts relay level ``j`` at height ``m - j``.  Heights
  below zero are truncated by the noise floor.
* The receive window is open above: every height >= 0 is observable, so
  loopback gains larger than the forward link stay well-defined.
* Colliding bits combine by XOR, per height, per channel use.
* Symbol 0 of a sequence is the first channel use of the block and the most
  significant digit of the sequence's integer value, so sequences sort the
  same way as their values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

SOURCE = "source"
RELAY = "relay"


@dataclass(frozen=True)
class BitSeq:
    """A length-``length`` binary sequence carried on one signal level for one block."""

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError(f"sequence length must be >= 0, got {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def null(cls, length: int) -> "BitSeq":
        return cls(0, length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitSeq":
        value = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            value = (value << 1) | b
            length += 1
        return cls(value, length)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))

    @property
    def is_null(self) -> bool:
        return self.value == 0

    def bit(self, i: int) -> int:
        """Symbol transmitted during channel use ``i`` of the block."""
        if not 0 <= i < self.length:
            raise ValueError(f"channel use {i} outside block of {self.length}")
        return (self.value >> (self.length - 1 - i)) & 1

    def __xor__(self, other: "BitSeq") -> "BitSeq":
        if self.length != other.length:
            raise ValueError("cannot XOR sequences of different lengths")
        return BitSeq(self.value ^ other.value, self.length)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class ChannelParams:
    """Static channel description for one coherence block.

    ``n1``: source-to-relay strength in levels; ``n2``: relay-to-destination
    strength; ``m``: residual loopback gain in levels (0 = no loopback);
    ``T``: coherence time in channel uses.  ``m`` is constant within a block.
    """

    n1: int
    n2: int
    m: int
    T: int

    def __post_init__(self) -> None:
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("link strengths must be positive")
        if self.m < 0:
            raise ValueError("loopback gain must be >= 0")
        if self.T < 1:
            raise ValueError("coherence time must be >= 1")


@dataclass(frozen=True)
class LevelPlacement:
    """What one transmitter puts on each of its levels during one block.

    Unmapped levels carry the null sequence; the stored mapping is canonical
    (null entries dropped), so placements compare equal iff they are
    observationally identical.
    """

    owner: str
    span: int
    block_length: int
    levels: Mapping[int, BitSeq]

    def __post_init__(self) -> None:
        if self.owner not in (SOURCE, RELAY):
            raise ValueError(f"owner must be {SOURCE!r} or {RELAY!r}")
        if self.span < 0:
            raise ValueError("span must be >= 0")
        canonical: dict[int, BitSeq] = {}
        for level, seq in self.levels.items():
            if not 1 <= level <= self.span:
                raise ValueError(f"level {level} outside [1, {self.span}]")
            if seq.length != self.block_length:
                raise ValueError(
                    f"sequence on level {level} has length {seq.length}, "
                    f"expected {self.block_length}"
                )
            if not seq.is_null:
                canonical[level] = seq
        object.__setattr__(self, "levels", canonical)

    @property
    def used_levels(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))

    def at(self, level: int) -> BitSeq:
        if not 1 <= level <= self.span:
            raise ValueError(f"level {level} outside [1, {self.span}]")
        return self.levels.get(level, BitSeq.null(self.block_length))


@dataclass(frozen=True)
class ReceivedFrame:
    """One block's observation at a receiver: height -> sequence, finite support.

    Absent heights carry the null sequence; stored entries are canonical
    (non-null, heights >= 0).
    """

    block_length: int
    heights: Mapping[int, BitSeq]

    def __post_init__(self) -> None:
        canonical: dict[int, BitSeq] = {}
        for height, seq in self.heights.items():
            if height < 0:
                raise ValueError("heights below the noise floor cannot be observed")
            if seq.length != self.block_length:
                raise ValueError("sequence length differs from the block length")
            if not seq.is_null:
                canonical[height] = seq
        object.__setattr__(self, "heights", canonical)

    @classmethod
    def from_values(cls, block_length: int, values: Mapping[int, int]) -> "ReceivedFrame":
        return cls(block_length, {h: BitSeq(v, block_length) for h, v in values.items()})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.heights))

    @property
    def max_height(self) -> int | None:
        return max(self.heights) if self.heights else None

    def at(self, height: int) -> BitSeq:
        if height < 0:
            raise ValueError("heights below the noise floor cannot be observed")
        return self.heights.get(height, BitSeq.null(self.block_length))

    def value_map(self) -> dict[int, int]:
        return {h: seq.value for h, seq in self.heights.items()}

    def __xor__(self, other: "ReceivedFrame") -> "ReceivedFrame":
        if self.block_length != other.block_length:
            raise ValueError("cannot XOR frames of different block lengths")
        acc = self.value_map()
        for h, seq in other.heights.items():
            v = acc.get(h, 0) ^ seq.value
            if v:
                acc[h] = v
            else:
                acc.pop(h, None)
        return ReceivedFrame.from_values(self.block_length, acc)


def source_height(i: int, n1: int) -> int:
    """Height at which source level ``i`` lands at the relay receiver."""
    if not 1 <= i <= n1:
        raise ValueError(f"source level {i} outside [1, {n1}]")
    return n1 - i


def interference_height(j: int, m: int) -> int:
    """Height at which relay level ``j`` loops back; negative means below floor."""
    if j < 1:
        raise ValueError(f"relay level {j} must be >= 1")
    if m < 0:
        raise ValueError("loopback gain must be >= 0")
    return m - j


def superpose(src: LevelPlacement, rly: LevelPlacement, p: ChannelParams) -> ReceivedFrame:
    """Relay-receiver observation: forward signal XOR loopback, per height.

    Loopback contributions that land below the noise floor are dropped.
    """
    if src.owner != SOURCE:
        raise ValueError("first placement must belong to the source")
    if rly.owner != RELAY:
        raise ValueError("second placement must belong to the relay")
    if src.block_length != p.T or rly.block_length != p.T:
        raise ValueError("placement block length differs from the coherence time")
    if src.span != p.n1:
        raise ValueError(f"source placement spans {src.span}, channel has n1={p.n1}")
    acc: dict[int, int] = {}
    for i, seq in src.levels.items():
        acc[p.n1 - i] = seq.value
    for j, seq in rly.levels.items():
        h = p.m - j
        if h < 0:
            continue
        v = acc.get(h, 0) ^ seq.value
        if v:
            acc[h] = v
        else:
            acc.pop(h, None)
    return ReceivedFrame.from_values(p.T, acc)


def relay_to_destination(rly: LevelPlacement, n2: int) -> ReceivedFrame:
    """Destination observation: the relay's levels land verbatim at heights n2 - j."""
    if rly.owner != RELAY:
        raise ValueError("placement must belong to the relay")
    out: dict[int, BitSeq] = {}
    for j, seq in rly.levels.items():
        if j > n2:
            raise ValueError(f"relay level {j} outside [1, {n2}]")
        out[n2 - j] = seq
    return ReceivedFrame(rly.block_length, out)
