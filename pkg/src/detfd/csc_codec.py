"""Conservative structured cancellation codec.

The source splits its data band around a one-level gap and also leaves the
level above the band and the level below it silent.  The relay carries data
on pairwise-distinct non-null sequences, so whichever sequence shows up on a
silent receive level identifies exactly how far the loopback path shifted
the relay's own signal; the decoder then XORs that shifted copy back out.
The three silent levels make the shift recoverable for every loopback gain
when at least two data levels are in use.

Messages are ordered tuples of distinct non-null sequences, enumerated in
lexicographic order of their integer values via the falling-factorial number
system, giving O(r^2) rank/unrank without materializing the codebook.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .core_model import RELAY, SOURCE, BitSeq, LevelPlacement, ReceivedFrame
from .errors import AmbiguityError, ModelViolationError


def csc_r(n1: int, n2: int, T: int) -> int:
    """Number of data levels: min((n1-2)^+, n2, 2^T - 1)."""
    if n1 < 0 or n2 < 0:
        raise ValueError("link strengths must be >= 0")
    if T < 1:
        raise ValueError("coherence time must be >= 1")
    return min(max(n1 - 2, 0), n2, (1 << T) - 1)


def csc_message_count(r: int, T: int) -> int:
    """Messages per block: the falling factorial N(N-1)...(N-r+1) with N = 2^T - 1."""
    n_seqs = (1 << T) - 1
    if r < 0:
        raise ValueError("level count must be >= 0")
    if r > n_seqs:
        raise ValueError(f"{r} distinct non-null sequences requested, only {n_seqs} exist")
    return math.perm(n_seqs, r)


@dataclass(frozen=True)
class RelayCodeword:
    """Ordered per-level sequences; pairwise distinct and never null."""

    entries: tuple[BitSeq, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        lengths = {seq.length for seq in self.entries}
        if len(lengths) > 1:
            raise ValueError("codeword entries must share one block length")
        values = [seq.value for seq in self.entries]
        if any(v == 0 for v in values):
            raise ValueError("codeword entries must be distinguishable from the null sequence")
        if len(set(values)) != len(values):
            raise ValueError("codeword entries must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(seq.value for seq in self.entries)

    @property
    def block_length(self) -> int | None:
        return self.entries[0].length if self.entries else None


def _unrank_values(index: int, r: int, n_seqs: int) -> tuple[int, ...]:
    """index-th r-permutation of {1..n_seqs} in lexicographic order."""
    available = list(range(1, n_seqs + 1))
    out = []
    for i in range(r):
        slot = math.perm(n_seqs - 1 - i, r - 1 - i)
        digit, index = divmod(index, slot)
        out.append(available.pop(digit))
    return tuple(out)


def _rank_values(values: tuple[int, ...], n_seqs: int) -> int:
    available = list(range(1, n_seqs + 1))
    r = len(values)
    rank = 0
    for i, v in enumerate(values):
        digit = available.index(v)
        rank += digit * math.perm(n_seqs - 1 - i, r - 1 - i)
        available.pop(digit)
    return rank


def unrank_codeword(index: int, r: int, T: int) -> RelayCodeword:
    """Bijective inverse of :func:`rank_codeword` over [0, csc_message_count(r, T))."""
    count = csc_message_count(r, T)
    if not 0 <= index < count:
        raise ValueError(f"index {index} outside [0, {count})")
    return RelayCodeword(tuple(BitSeq(v, T) for v in _unrank_values(index, r, (1 << T) - 1)))


def rank_codeword(cw: RelayCodeword) -> int:
    """Position of ``cw`` in the lexicographic enumeration of valid codewords."""
    if not cw.entries:
        return 0
    T = cw.entries[0].length
    return _rank_values(cw.values, (1 << T) - 1)


@lru_cache(maxsize=None)
def csc_source_levels(r: int) -> tuple[int, ...]:
    """Source levels carrying data: the top ceil(r/2), a gap, then floor(r/2) more."""
    if r < 0:
        raise ValueError("level count must be >= 0")
    upper = (r + 1) // 2
    return tuple(range(1, upper + 1)) + tuple(range(upper + 2, r + 2))


@lru_cache(maxsize=None)
def csc_empty_levels(r: int) -> tuple[int, int, int]:
    """The silent receive levels the decoder reads: above, inside, below the band."""
    if r < 0:
        raise ValueError("level count must be >= 0")
    return (0, (r + 1) // 2 + 1, r + 2)


def csc_encode_source(payload: BitSeq, r: int, T: int, n1: int) -> LevelPlacement:
    """Pack consecutive T-bit chunks of ``payload`` onto the used source levels."""
    if r > max(n1 - 2, 0):
        raise ValueError(f"{r} data levels do not fit a span of {n1} with two levels spare")
    if payload.length != r * T:
        raise ValueError(f"payload length {payload.length} != r*T = {r * T}")
    mask = (1 << T) - 1
    levels = {
        level: BitSeq((payload.value >> ((r - 1 - i) * T)) & mask, T)
        for i, level in enumerate(csc_source_levels(r))
    }
    return LevelPlacement(SOURCE, n1, T, levels)


def relay_data_placement(cw: RelayCodeword | None, n2: int, T: int) -> LevelPlacement:
    """Relay transmit placement: codeword entries on the top levels, or silence."""
    if cw is None or not cw.entries:
        return LevelPlacement(RELAY, n2, T, {})
    if len(cw.entries) > n2:
        raise ValueError(f"codeword has {len(cw.entries)} entries, relay span is {n2}")
    return LevelPlacement(RELAY, n2, T, {j + 1: seq for j, seq in enumerate(cw.entries)})


@dataclass(frozen=True)
class InterferenceEstimate:
    """What the silent levels revealed: nothing in the window, or a definite shift.

    ``shift`` is the receive-level offset (relay level j lands on receive
    level j + shift); ``gain`` is the equivalent loopback strength n1 - shift.
    """

    shift: int | None
    gain: int | None

    @property
    def in_window(self) -> bool:
        return self.shift is not None

    @classmethod
    def none_in_window(cls) -> "InterferenceEstimate":
        return cls(None, None)

    @classmethod
    def at_shift(cls, shift: int, n1: int) -> "InterferenceEstimate":
        return cls(shift, n1 - shift)


def _infer_shift(frame: Mapping[int, int], entries: tuple[int, ...], n1: int, r: int) -> int | None:
    """Read the silent levels; return the implied shift, or None if all are null.

    Raises ModelViolationError if an observed sequence is outside the
    codeword or two silent levels imply different shifts.
    """
    shift = None
    for level in csc_empty_levels(r):
        value = frame.get(n1 - level, 0)
        if not value:
            continue
        try:
            j = entries.index(value) + 1
        except ValueError:
            raise ModelViolationError(
                f"silent receive level {level} carries a sequence outside the codeword"
            ) from None
        s = level - j
        if shift is None:
            shift = s
        elif s != shift:
            raise ModelViolationError(
                f"silent levels imply conflicting shifts {shift} and {s}"
            )
    return shift


def _decode_payload(frame: Mapping[int, int], entries: tuple[int, ...], n1: int, r: int, T: int) -> int:
    """Decode kernel over primitive values; ``frame`` maps height -> nonzero int."""
    if r == 0:
        return 0
    shift = _infer_shift(frame, entries, n1, r)
    if shift is None and r == 1 and entries:
        # A lone data level can be hit by a one-level loopback block without
        # touching any silent level; that frame also arises with no loopback
        # at all, and the two hypotheses decode differently.
        raise AmbiguityError(
            "silent levels are all null; single data level may or may not be corrupted"
        )
    payload = 0
    for level in csc_source_levels(r):
        v = frame.get(n1 - level, 0)
        if shift is not None:
            j = level - shift
            if 1 <= j <= r:
                v ^= entries[j - 1]
        payload = (payload << T) | v
    return payload


def csc_infer_shift(frame: ReceivedFrame, cw: RelayCodeword, n1: int, r: int) -> InterferenceEstimate:
    """Infer the loopback alignment from the three silent receive levels."""
    shift = _infer_shift(frame.value_map(), cw.values, n1, r)
    if shift is None:
        return InterferenceEstimate.none_in_window()
    return InterferenceEstimate.at_shift(shift, n1)


def csc_decode(frame: ReceivedFrame, cw: RelayCodeword | None, n1: int, r: int, T: int) -> BitSeq:
    """Recover the source payload, removing the relay's own signal exactly.

    ``cw`` is the codeword the relay transmitted during the block; pass None
    for a silent relay (no loopback regardless of the gain).  Exact for every
    gain whenever r >= 2; for r == 1 a frame whose silent levels are all null
    raises AmbiguityError rather than guessing.
    """
    values = _decode_payload(frame.value_map(), cw.values if cw is not None else (), n1, r, T)
    return BitSeq(values, r * T)


def rate_csc(n1: int, n2: int, T: int) -> float:
    """Achievable bits per channel use: (1/T) log2 of the exact message count."""
    r = csc_r(n1, n2, T)
    return math.log2(csc_message_count(r, T)) / T
