"""Domain-separated SHA-256 hashing for leaves, internal nodes and padding."""
from __future__ import annotations

import hashlib

DIGEST_SIZE = 32

LEAF_PREFIX = b"\x00"
NODE_PREFIX = b"\x01"
PADDING_PREFIX = b"\x02"

# Digests are plain 32-byte ``bytes`` values.
Digest = bytes


def hash_leaf(data: bytes) -> Digest:
    return hashlib.sha256(LEAF_PREFIX + bytes(data)).digest()


def hash_node(left: Digest, right: Digest) -> Digest:
    if len(left) != DIGEST_SIZE or len(right) != DIGEST_SIZE:
        raise ValueError("hash_node expects two 32-byte digests")
    return hashlib.sha256(NODE_PREFIX + left + right).digest()


_PADDING = hashlib.sha256(PADDING_PREFIX).digest()


def padding_digest() -> Digest:
    """Filler digest for leaf slots past the last real element."""
    return _PADDING


def is_digest(value: object) -> bool:
    return isinstance(value, bytes) and len(value) == DIGEST_SIZE
