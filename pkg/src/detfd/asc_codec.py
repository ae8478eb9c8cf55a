"""Aggressive structured cancellation codec, for loopback bounded below the link.

The source keeps only one receive level silent, just below its data band, so
one more data level fits than in the conservative scheme.  The probe level
pins the loopback shift whenever the loopback is weaker than the forward
link (m < n1); at m = n1 the relay's signal lands exactly on the data band,
the probe stays null, and the decode is silently wrong.  That failure mode
is inherent to the single-probe layout, not detectable from the frame.
"""

from __future__ import annotations

import math
from typing import Mapping

from .core_model import SOURCE, BitSeq, LevelPlacement, ReceivedFrame
from .csc_codec import RelayCodeword, csc_message_count
from .errors import ModelViolationError


def asc_r(n1: int, n2: int, T: int) -> int:
    """Number of data levels: min((n1-1)^+, n2, 2^T - 1)."""
    if n1 < 0 or n2 < 0:
        raise ValueError("link strengths must be >= 0")
    if T < 1:
        raise ValueError("coherence time must be >= 1")
    return min(max(n1 - 1, 0), n2, (1 << T) - 1)


def asc_encode_source(payload: BitSeq, r: int, T: int, n1: int) -> LevelPlacement:
    """Pack consecutive T-bit chunks onto the top ``r`` source levels."""
    if r > max(n1 - 1, 0):
        raise ValueError(f"{r} data levels do not fit a span of {n1} with one level spare")
    if payload.length != r * T:
        raise ValueError(f"payload length {payload.length} != r*T = {r * T}")
    mask = (1 << T) - 1
    levels = {
        i + 1: BitSeq((payload.value >> ((r - 1 - i) * T)) & mask, T)
        for i in range(r)
    }
    return LevelPlacement(SOURCE, n1, T, levels)


def _decode_payload(frame: Mapping[int, int], entries: tuple[int, ...], n1: int, r: int, T: int) -> int:
    """Decode kernel; correct only when the true gain is below n1."""
    if r == 0:
        return 0
    shift = None
    probe = frame.get(n1 - (r + 1), 0)
    if probe:
        try:
            j = entries.index(probe) + 1
        except ValueError:
            raise ModelViolationError(
                "probe level carries a sequence outside the codeword"
            ) from None
        shift = r + 1 - j
    payload = 0
    for level in range(1, r + 1):
        v = frame.get(n1 - level, 0)
        if shift is not None:
            j = level - shift
            if j >= 1:
                v ^= entries[j - 1]
        payload = (payload << T) | v
    return payload


def asc_decode(frame: ReceivedFrame, cw: RelayCodeword | None, n1: int, r: int, T: int) -> BitSeq:
    """Recover the source payload assuming the loopback gain is below n1.

    Reads the probe level just below the data band: null means no loopback
    reached the window, otherwise the observed entry fixes the shift and the
    overlapping entries are XORed out.  The m < n1 precondition cannot be
    checked from the frame; with m = n1 this returns a wrong payload with no
    error raised.
    """
    values = _decode_payload(frame.value_map(), cw.values if cw is not None else (), n1, r, T)
    return BitSeq(values, r * T)


def rate_asc(n1: int, n2: int, T: int) -> float:
    """Achievable bits per channel use under the bounded-loopback guarantee."""
    r = asc_r(n1, n2, T)
    return math.log2(csc_message_count(r, T)) / T
