"""Complete binary Merkle tree over a padded leaf layer, plus single-leaf proofs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .hashing import Digest, hash_leaf, hash_node, is_digest, padding_digest


def padded_size(leaf_count: int) -> int:
    """Smallest power of two >= ``leaf_count``."""
    if leaf_count < 1:
        raise ValueError("leaf_count must be positive")
    return 1 << (leaf_count - 1).bit_length()


def tree_depth(leaf_count: int) -> int:
    return padded_size(leaf_count).bit_length() - 1


@dataclass(frozen=True)
class MerkleTree:
    leaf_count: int
    layers: tuple[tuple[Digest, ...], ...]

    @property
    def padded_leaf_count(self) -> int:
        return len(self.layers[0])

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def root(self) -> Digest:
        return self.layers[-1][0]


@dataclass(frozen=True)
class SingleProof:
    leaf_index: int
    siblings: tuple[Digest, ...]


def build_tree(elements: Sequence[bytes]) -> MerkleTree:
    if not elements:
        raise ValueError("empty tree not supported")
    n = len(elements)
    level = [hash_leaf(e) for e in elements]
    level.extend([padding_digest()] * (padded_size(n) - n))
    layers = [tuple(level)]
    while len(level) > 1:
        level = [hash_node(level[i], level[i + 1]) for i in range(0, len(level), 2)]
        layers.append(tuple(level))
    return MerkleTree(leaf_count=n, layers=tuple(layers))


def root(tree: MerkleTree) -> Digest:
    return tree.root


def generate_single_proof(tree: MerkleTree, leaf_index: int) -> SingleProof:
    if not 0 <= leaf_index < tree.leaf_count:
        raise IndexError(f"leaf index {leaf_index} out of range [0, {tree.leaf_count})")
    siblings = []
    current = leaf_index
    for layer in tree.layers[:-1]:
        siblings.append(layer[current ^ 1])
        current >>= 1
    return SingleProof(leaf_index=leaf_index, siblings=tuple(siblings))


def verify_single_proof(
    proof: SingleProof, element: bytes, leaf_count: int, expected_root: Digest
) -> bool:
    """Fold the element hash up the sibling path and compare with ``expected_root``.

    A sibling list whose length does not match the depth implied by
    ``leaf_count`` is a structural error, not a failed check.
    """
    depth = tree_depth(leaf_count)
    if len(proof.siblings) != depth:
        raise ValueError(
            f"proof has {len(proof.siblings)} siblings, tree of {leaf_count} leaves needs {depth}"
        )
    if not 0 <= proof.leaf_index < leaf_count:
        return False
    acc = hash_leaf(element)
    current = proof.leaf_index
    for sibling in proof.siblings:
        if not is_digest(sibling):
            raise ValueError("sibling is not a 32-byte digest")
        acc = hash_node(acc, sibling) if current % 2 == 0 else hash_node(sibling, acc)
        current >>= 1
    return acc == expected_root
