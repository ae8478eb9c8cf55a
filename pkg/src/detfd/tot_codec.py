"""Time-orthogonal training baseline.

Each coherence block spends its first channel use on training: the source
stays silent while the relay sends a one on every level it uses.  The
highest height carrying a one is m - 1, so the relay reads the loopback
gain off directly and cancels its own signal exactly during the remaining
T - 1 data uses.  Works for any gain; costs 1/T of the block.
"""

from __future__ import annotations

from typing import Mapping

from .core_model import (
    RELAY,
    SOURCE,
    BitSeq,
    ChannelParams,
    LevelPlacement,
    ReceivedFrame,
    superpose,
)


def tot_levels(n1: int, n2: int) -> int:
    """Data levels used by both hops: min(n1, n2)."""
    return min(n1, n2)


def tot_encode_source(payload: BitSeq, k: int, T: int, n1: int) -> LevelPlacement:
    """Silent first use, then (T-1)-bit chunks on the top ``k`` source levels."""
    if k > n1:
        raise ValueError(f"{k} data levels do not fit a span of {n1}")
    if payload.length != k * (T - 1):
        raise ValueError(f"payload length {payload.length} != k*(T-1) = {k * (T - 1)}")
    mask = (1 << (T - 1)) - 1
    levels = {
        i + 1: BitSeq((payload.value >> ((k - 1 - i) * (T - 1))) & mask, T)
        for i in range(k)
    }
    return LevelPlacement(SOURCE, n1, T, levels)


def tot_relay_block(data: BitSeq, k: int, T: int, n2: int) -> LevelPlacement:
    """Training one in the first use, then (T-1)-bit data chunks, per level."""
    if k > n2:
        raise ValueError(f"{k} data levels do not fit a span of {n2}")
    if data.length != k * (T - 1):
        raise ValueError(f"relay data length {data.length} != k*(T-1) = {k * (T - 1)}")
    mask = (1 << (T - 1)) - 1
    train = 1 << (T - 1)
    levels = {
        j + 1: BitSeq(train | ((data.value >> ((k - 1 - j) * (T - 1))) & mask), T)
        for j in range(k)
    }
    return LevelPlacement(RELAY, n2, T, levels)


def _estimate_gain(frame: Mapping[int, int], T: int) -> int:
    """Highest height whose first symbol is a one, plus one; 0 if none."""
    top = -1
    probe = 1 << (T - 1)
    for h, v in frame.items():
        if v & probe and h > top:
            top = h
    return top + 1


def tot_train_and_estimate(n1: int, k: int, m: int) -> int:
    """Run one training use and read the loopback gain off the observation.

    The relay transmits a one on each of its ``k`` levels while the source is
    silent; the returned estimate equals ``m`` exactly for every m >= 0 (a
    gain of zero and an empty observation are the same thing).
    """
    src = LevelPlacement(SOURCE, n1, 1, {})
    rly = LevelPlacement(RELAY, max(k, 1), 1, {j: BitSeq(1, 1) for j in range(1, k + 1)})
    frame = superpose(src, rly, ChannelParams(n1, max(k, 1), m, 1))
    return _estimate_gain(frame.value_map(), 1)


def tot_estimate_m(frame: ReceivedFrame) -> int:
    """Read the loopback gain from the training symbols of a full block frame."""
    return _estimate_gain(frame.value_map(), frame.block_length)


def _decode_payload(
    frame: Mapping[int, int],
    relay_values: tuple[int, ...],
    m_est: int,
    n1: int,
    k: int,
    T: int,
) -> int:
    """Decode kernel; relay_values are the relay's full per-level block values."""
    data_mask = (1 << (T - 1)) - 1
    payload = 0
    for i in range(1, k + 1):
        h = n1 - i
        v = frame.get(h, 0)
        j = m_est - h
        if 1 <= j <= len(relay_values):
            v ^= relay_values[j - 1]
        payload = (payload << (T - 1)) | (v & data_mask)
    return payload


def tot_decode(frame: ReceivedFrame, relay_block: LevelPlacement, m_est: int, n1: int, k: int) -> BitSeq:
    """Recover the source data uses, cancelling the relay's known transmission.

    ``relay_block`` is what the relay itself sent during the block; with the
    exact gain estimate the cancellation is exact for every m >= 0.
    """
    T = frame.block_length
    relay_values = tuple(relay_block.at(j).value for j in range(1, k + 1))
    value = _decode_payload(frame.value_map(), relay_values, m_est, n1, k, T)
    return BitSeq(value, k * (T - 1))


def rate_tot(n1: int, n2: int, T: int) -> float:
    """Achievable bits per channel use: ((T-1)/T) min(n1, n2)."""
    if T < 1:
        raise ValueError("coherence time must be >= 1")
    return (T - 1) * tot_levels(n1, n2) / T
