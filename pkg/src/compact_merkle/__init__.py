"""Merkle trees with compact (leaf-index-only) multiproofs."""
from .codec import (
    DecodeError,
    decode_compact,
    decode_single,
    decode_standard,
    encode_compact,
    encode_single,
    encode_standard,
)
from .hashing import Digest, hash_leaf, hash_node, padding_digest
from .multiproof import (
    CompactMultiproof,
    LayerState,
    MalformedProofError,
    StandardEntry,
    StandardMultiproof,
    advance_active,
    compact_positions,
    generate_compact,
    generate_standard,
    sibling_pairs,
    verify_compact,
    verify_compact_elements,
    verify_standard,
)
from .report import SizeReport, proof_size_report
from .tree import (
    MerkleTree,
    SingleProof,
    build_tree,
    generate_single_proof,
    root,
    verify_single_proof,
)

__all__ = [
    "CompactMultiproof",
    "DecodeError",
    "Digest",
    "LayerState",
    "MalformedProofError",
    "MerkleTree",
    "SingleProof",
    "SizeReport",
    "StandardEntry",
    "StandardMultiproof",
    "advance_active",
    "build_tree",
    "compact_positions",
    "decode_compact",
    "decode_single",
    "decode_standard",
    "encode_compact",
    "encode_single",
    "encode_standard",
    "generate_compact",
    "generate_single_proof",
    "generate_standard",
    "hash_leaf",
    "hash_node",
    "padding_digest",
    "proof_size_report",
    "root",
    "sibling_pairs",
    "verify_compact",
    "verify_compact_elements",
    "verify_single_proof",
    "verify_standard",
]
