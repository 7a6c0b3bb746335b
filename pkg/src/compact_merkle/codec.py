"""Binary wire format for proofs.

Every proof is wrapped in a 6-byte envelope::

    magic   4 bytes  b"CMMP"
    version 1 byte   0x01
    kind    1 byte   0x01 compact, 0x02 standard, 0x03 single

All integers are fixed-width little-endian and digests are raw 32-byte
strings.  Compact body::

    leaf_count u64 | k u32 | k * index u64 | h u32 | h * digest

Standard body::

    leaf_count u64 | k u32 | h u32 | h * (layer u8 | index u64 | digest)

Single body::

    leaf_count u64 | leaf_index u64 | d u32 | d * digest

Both multiproof bodies carry the same counts, so the standard encoding is
larger by exactly ``9h - 8k`` bytes.  Decoders reject anything that is not exactly one well-formed proof.
"""
from __future__ import annotations

import struct

from .hashing import DIGEST_SIZE, Digest
from .multiproof import CompactMultiproof, StandardEntry, StandardMultiproof
from .tree import SingleProof, padded_size, tree_depth

MAGIC = b"CMMP"
VERSION = 1
KIND_COMPACT = 0x01
KIND_STANDARD = 0x02
KIND_SINGLE = 0x03

HEADER_SIZE = 6
STANDARD_ENTRY_SIZE = 1 + 8 + DIGEST_SIZE

_U8 = struct.Struct("<B")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


class DecodeError(ValueError):
    pass


class BadMagicError(DecodeError):
    pass


class BadVersionError(DecodeError):
    pass


class BadKindError(DecodeError):
    pass


class TruncatedError(DecodeError):
    pass


class TrailingBytesError(DecodeError):
    pass


class NonMonotonicError(DecodeError):
    """Indices or positions are out of order or repeated."""


class IndexOutOfRangeError(DecodeError):
    pass


def compact_size(k: int, h: int) -> int:
    return HEADER_SIZE + 8 + 4 + 8 * k + 4 + DIGEST_SIZE * h


def standard_size(h: int) -> int:
    return HEADER_SIZE + 8 + 4 + 4 + STANDARD_ENTRY_SIZE * h


def single_size(depth: int) -> int:
    return HEADER_SIZE + 8 + 8 + 4 + DIGEST_SIZE * depth


def _header(kind: int) -> bytes:
    return MAGIC + bytes((VERSION, kind))


def encode_compact(proof: CompactMultiproof) -> bytes:
    parts = [_header(KIND_COMPACT), _U64.pack(proof.leaf_count), _U32.pack(len(proof.leaf_indices))]
    parts.extend(_U64.pack(i) for i in proof.leaf_indices)
    parts.append(_U32.pack(len(proof.hashes)))
    parts.extend(proof.hashes)
    return b"".join(parts)


def encode_standard(proof: StandardMultiproof) -> bytes:
    parts = [
        _header(KIND_STANDARD),
        _U64.pack(proof.leaf_count),
        _U32.pack(proof.proven_count),
        _U32.pack(len(proof.entries)),
    ]
    for e in proof.entries:
        parts.append(_U8.pack(e.layer) + _U64.pack(e.index) + e.digest)
    return b"".join(parts)


def encode_single(proof: SingleProof, leaf_count: int) -> bytes:
    parts = [
        _header(KIND_SINGLE),
        _U64.pack(leaf_count),
        _U64.pack(proof.leaf_index),
        _U32.pack(len(proof.siblings)),
    ]
    parts.extend(proof.siblings)
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = memoryview(bytes(data))
        self.pos = 0

    def take(self, n: int) -> bytes:
        if len(self.data) - self.pos < n:
            raise TruncatedError(f"truncated input: need {n} bytes at offset {self.pos}")
        chunk = self.data[self.pos : self.pos + n].tobytes()
        self.pos += n
        return chunk

    def u8(self) -> int:
        return _U8.unpack(self.take(1))[0]

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def need(self, count: int, item_size: int) -> None:
        # fail before allocating when a length field promises more than is left
        if count * item_size > len(self.data) - self.pos:
            raise TruncatedError(f"truncated input: {count} items of {item_size} bytes announced")

    def finish(self) -> None:
        extra = len(self.data) - self.pos
        if extra:
            raise TrailingBytesError(f"{extra} trailing bytes after proof")


def _open(data: bytes, kind: int) -> _Reader:
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise BadMagicError("bad magic")
    version = r.u8()
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}")
    got = r.u8()
    if got != kind:
        raise BadKindError(f"expected proof kind {kind:#04x}, found {got:#04x}")
    return r


def _leaf_count(r: _Reader) -> int:
    n = r.u64()
    if n == 0:
        raise IndexOutOfRangeError("leaf count must be positive")
    return n


def peek_kind(data: bytes) -> int:
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise BadMagicError("bad magic")
    version = r.u8()
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}")
    kind = r.u8()
    if kind not in (KIND_COMPACT, KIND_STANDARD, KIND_SINGLE):
        raise BadKindError(f"unknown proof kind {kind:#04x}")
    return kind


def decode_compact(data: bytes) -> CompactMultiproof:
    r = _open(data, KIND_COMPACT)
    leaf_count = _leaf_count(r)
    k = r.u32()
    r.need(k, 8)
    indices = []
    for _ in range(k):
        i = r.u64()
        if indices and i <= indices[-1]:
            raise NonMonotonicError("leaf indices must be strictly increasing")
        if i >= leaf_count:
            raise IndexOutOfRangeError(f"leaf index {i} out of range [0, {leaf_count})")
        indices.append(i)
    if not indices:
        raise IndexOutOfRangeError("proof has no leaf indices")
    h = r.u32()
    r.need(h, DIGEST_SIZE)
    hashes: list[Digest] = [r.take(DIGEST_SIZE) for _ in range(h)]
    r.finish()
    return CompactMultiproof(leaf_count, tuple(indices), tuple(hashes))


def decode_standard(data: bytes) -> StandardMultiproof:
    r = _open(data, KIND_STANDARD)
    leaf_count = _leaf_count(r)
    depth = tree_depth(leaf_count)
    width = padded_size(leaf_count)
    k = r.u32()
    if not 1 <= k <= leaf_count:
        raise IndexOutOfRangeError(f"proven leaf count {k} out of range [1, {leaf_count}]")
    h = r.u32()
    r.need(h, STANDARD_ENTRY_SIZE)
    entries = []
    prev = None
    for _ in range(h):
        layer, index, digest = r.u8(), r.u64(), r.take(DIGEST_SIZE)
        if layer > depth or index >= width >> layer:
            raise IndexOutOfRangeError(f"position ({layer}, {index}) lies outside the tree")
        if prev is not None and (layer, index) <= prev:
            raise NonMonotonicError("entries must be sorted by (layer, index) without duplicates")
        prev = (layer, index)
        entries.append(StandardEntry(layer, index, digest))
    r.finish()
    return StandardMultiproof(leaf_count, k, tuple(entries))


def decode_single(data: bytes) -> tuple[SingleProof, int]:
    """Return the proof and the leaf count it was made for."""
    r = _open(data, KIND_SINGLE)
    leaf_count = _leaf_count(r)
    leaf_index = r.u64()
    if leaf_index >= leaf_count:
        raise IndexOutOfRangeError(f"leaf index {leaf_index} out of range [0, {leaf_count})")
    d = r.u32()
    r.need(d, DIGEST_SIZE)
    siblings = tuple(r.take(DIGEST_SIZE) for _ in range(d))
    r.finish()
    return SingleProof(leaf_index, siblings), leaf_count
