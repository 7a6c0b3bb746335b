"""Compact Merkle multiproofs and the position-tagged sparse multiproof baseline.

A compact proof carries the leaf count, the sorted leaf indices and the list
of sibling digests that cannot be recomputed from the proven leaves.  Every
internal position is re-derived from the leaf indices alone, layer by layer:

* pair each active index with its sibling (``i & ~1``, ``(i & ~1) + 1``),
* drop repeated pairs,
* the pair members that are not active are the hashes the proof must carry,
* the even member of each pair, halved, is the next layer's active index.

The standard multiproof tags every digest with its ``(layer, index)``
position instead, which costs one position per hash on the wire.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .hashing import Digest, hash_leaf, hash_node, is_digest
from .tree import MerkleTree, padded_size, tree_depth

Pair = tuple[int, int]
Position = tuple[int, int]


class MalformedProofError(ValueError):
    """The proof is structurally unusable (as opposed to failing the root check)."""


@dataclass(frozen=True)
class LayerState:
    """Index bookkeeping for one layer of generation or verification."""

    layer: int
    active: tuple[int, ...]
    pairs: tuple[Pair, ...]
    pairs_pruned: tuple[Pair, ...]
    # indices whose digests are taken from (or appended to) the proof hash list
    proof_indices: tuple[int, ...]


LayerHook = Callable[[LayerState], None]


def _check_indices(indices: Sequence[int], leaf_count: int) -> None:
    if not indices:
        raise ValueError("at least one leaf index is required")
    prev = -1
    for i in indices:
        if isinstance(i, bool) or not isinstance(i, int):
            raise TypeError(f"leaf index {i!r} is not an integer")
        if i <= prev:
            raise ValueError("leaf indices must be strictly increasing")
        if i >= leaf_count:
            raise IndexError(f"leaf index {i} out of range [0, {leaf_count})")
        prev = i


@dataclass(frozen=True)
class CompactMultiproof:
    leaf_count: int
    leaf_indices: tuple[int, ...]
    hashes: tuple[Digest, ...]

    def __post_init__(self) -> None:
        if self.leaf_count < 1:
            raise ValueError("leaf_count must be positive")
        _check_indices(self.leaf_indices, self.leaf_count)
        if not all(is_digest(h) for h in self.hashes):
            raise ValueError("proof hashes must be 32-byte digests")


@dataclass(frozen=True)
class StandardEntry:
    layer: int
    index: int
    digest: Digest


@dataclass(frozen=True)
class StandardMultiproof:
    leaf_count: int
    # number of proven leaves the entries were generated for
    proven_count: int
    entries: tuple[StandardEntry, ...]

    def __post_init__(self) -> None:
        if self.leaf_count < 1:
            raise ValueError("leaf_count must be positive")
        if not 1 <= self.proven_count <= self.leaf_count:
            raise ValueError("proven_count must lie in [1, leaf_count]")
        depth = tree_depth(self.leaf_count)
        width = padded_size(self.leaf_count)
        prev: Position | None = None
        for e in self.entries:
            pos = (e.layer, e.index)
            if not 0 <= e.layer <= depth or not 0 <= e.index < width >> e.layer:
                raise ValueError(f"entry position {pos} lies outside the tree")
            if prev is not None and pos <= prev:
                raise ValueError("entries must be sorted by (layer, index) without duplicates")
            if not is_digest(e.digest):
                raise ValueError("entry digest must be 32 bytes")
            prev = pos

    @property
    def positions(self) -> list[Position]:
        return [(e.layer, e.index) for e in self.entries]


def normalize_indices(indices: Iterable[int]) -> list[int]:
    return sorted(set(indices))


def sibling_pairs(active: Sequence[int]) -> tuple[list[Pair], list[Pair]]:
    """Return the sibling pair of every active index, and the same list deduplicated.

    ``active`` must be strictly increasing, so repeated pairs are adjacent.
    """
    pairs: list[Pair] = []
    pruned: list[Pair] = []
    prev = -1
    for a in active:
        if a < 0 or a <= prev:
            raise ValueError("active indices must be non-negative and strictly increasing")
        prev = a
        even = a & ~1
        pair = (even, even + 1)
        pairs.append(pair)
        if not pruned or pruned[-1] != pair:
            pruned.append(pair)
    return pairs, pruned


def advance_active(pairs_pruned: Sequence[Pair]) -> list[int]:
    return [even // 2 for even, _ in pairs_pruned]


def _walk_layers(leaf_count: int, indices: Sequence[int], on_layer: LayerHook | None):
    """Yield ``(layer, proof_indices)`` for every layer below the root."""
    active = list(indices)
    for layer in range(tree_depth(leaf_count)):
        pairs, pruned = sibling_pairs(active)
        members = {i for pair in pruned for i in pair}
        needed = sorted(members.difference(active))
        if on_layer is not None:
            on_layer(LayerState(layer, tuple(active), tuple(pairs), tuple(pruned), tuple(needed)))
        yield layer, needed
        active = advance_active(pruned)
    assert active == [0]


def compact_positions(
    leaf_count: int, leaf_indices: Iterable[int], on_layer: LayerHook | None = None
) -> list[Position]:
    """Positions of the digests a compact proof carries, in proof order.

    Works on geometry alone, so no tree is needed.
    """
    indices = normalize_indices(leaf_indices)
    _check_indices(indices, leaf_count)
    return [
        (layer, j) for layer, needed in _walk_layers(leaf_count, indices, on_layer) for j in needed
    ]


def generate_compact(
    tree: MerkleTree, leaf_indices: Iterable[int], on_layer: LayerHook | None = None
) -> CompactMultiproof:
    indices = normalize_indices(leaf_indices)
    _check_indices(indices, tree.leaf_count)
    hashes: list[Digest] = []
    for layer, needed in _walk_layers(tree.leaf_count, indices, on_layer):
        nodes = tree.layers[layer]
        hashes.extend(nodes[j] for j in needed)
    return CompactMultiproof(tree.leaf_count, tuple(indices), tuple(hashes))


def verify_compact(
    proof: CompactMultiproof,
    element_hashes: Sequence[Digest],
    expected_root: Digest,
    on_layer: LayerHook | None = None,
) -> bool:
    """Recompute the root from sorted element hashes and the proof's hash list.

    Runs exactly ``depth`` rounds and then requires every proof hash to have
    been used.  Raises :class:`MalformedProofError` when the hash list runs
    out early or has leftovers; returns ``False`` only on a root mismatch.
    """
    if len(element_hashes) != len(proof.leaf_indices):
        raise MalformedProofError(
            f"got {len(element_hashes)} element hashes for {len(proof.leaf_indices)} leaf indices"
        )
    if not all(is_digest(h) for h in element_hashes):
        raise ValueError("element hashes must be 32-byte digests")

    active = list(proof.leaf_indices)
    values = list(element_hashes)
    supply = iter(proof.hashes)
    used = 0

    for layer in range(tree_depth(proof.leaf_count)):
        pairs, pruned = sibling_pairs(active)
        assert len(pairs) == len(values)
        merged: list[Digest] = []
        taken: list[int] = []
        k = 0
        for even, odd in pruned:
            if k + 1 < len(active) and active[k] == even and active[k + 1] == odd:
                merged.append(hash_node(values[k], values[k + 1]))
                k += 2
                continue
            sibling = next(supply, None)
            if sibling is None:
                raise MalformedProofError("malformed proof: hash list exhausted")
            used += 1
            if active[k] == even:
                merged.append(hash_node(values[k], sibling))
                taken.append(odd)
            else:
                merged.append(hash_node(sibling, values[k]))
                taken.append(even)
            k += 1
        if on_layer is not None:
            on_layer(LayerState(layer, tuple(active), tuple(pairs), tuple(pruned), tuple(taken)))
        values = merged
        active = advance_active(pruned)

    if used != len(proof.hashes):
        raise MalformedProofError("malformed proof: surplus hashes")
    return values == [expected_root]


def verify_compact_elements(
    proof: CompactMultiproof,
    elements: Iterable[tuple[int, bytes]],
    expected_root: Digest,
) -> bool:
    """Like :func:`verify_compact` but takes unsorted ``(leaf_index, element)`` pairs."""
    by_index: dict[int, bytes] = {}
    for index, element in elements:
        if index in by_index and by_index[index] != element:
            raise ValueError(f"conflicting elements for leaf index {index}")
        by_index[index] = element
    if sorted(by_index) != list(proof.leaf_indices):
        raise MalformedProofError("supplied element indices do not match the proof")
    return verify_compact(
        proof, [hash_leaf(by_index[i]) for i in proof.leaf_indices], expected_root
    )


def standard_positions(leaf_count: int, leaf_indices: Iterable[int]) -> list[Position]:
    """Sibling positions needed to rebuild the root, found by tracking known nodes."""
    indices = normalize_indices(leaf_indices)
    _check_indices(indices, leaf_count)
    known = set(indices)
    positions: list[Position] = []
    for layer in range(tree_depth(leaf_count)):
        missing = {i ^ 1 for i in known} - known
        positions.extend((layer, i) for i in sorted(missing))
        known = {i >> 1 for i in known}
    return positions


def generate_standard(tree: MerkleTree, leaf_indices: Iterable[int]) -> StandardMultiproof:
    indices = normalize_indices(leaf_indices)
    entries = tuple(
        StandardEntry(layer, index, tree.layers[layer][index])
        for layer, index in standard_positions(tree.leaf_count, indices)
    )
    return StandardMultiproof(tree.leaf_count, len(indices), entries)


def verify_standard(
    proof: StandardMultiproof,
    leaf_indices: Sequence[int],
    element_hashes: Sequence[Digest],
    expected_root: Digest,
) -> bool:
    if len(leaf_indices) != len(element_hashes):
        raise MalformedProofError("leaf indices and element hashes differ in length")
    if not all(is_digest(h) for h in element_hashes):
        raise ValueError("element hashes must be 32-byte digests")
    depth = tree_depth(proof.leaf_count)

    known: dict[Position, Digest] = {}
    for index, digest in zip(leaf_indices, element_hashes):
        if not 0 <= index < proof.leaf_count:
            raise IndexError(f"leaf index {index} out of range [0, {proof.leaf_count})")
        if known.setdefault((0, index), digest) != digest:
            raise MalformedProofError(f"conflicting hashes for leaf index {index}")
    if not known:
        raise ValueError("at least one leaf index is required")
    if len(known) != proof.proven_count:
        raise MalformedProofError(
            f"proof was made for {proof.proven_count} leaves, got {len(known)}"
        )

    supplied = {(e.layer, e.index): e.digest for e in proof.entries}
    used: set[Position] = set()
    frontier = sorted({i for _, i in known})
    for layer in range(depth + 1):
        for i in frontier:
            if (layer, i) in supplied:
                # a supplied digest at a derivable position would override the computation
                raise MalformedProofError(f"conflicting duplicate position {(layer, i)}")
        if layer == depth:
            break
        present = set(frontier)
        parents = []
        for i in frontier:
            if i & 1 and (i ^ 1) in present:
                continue
            sib = (layer, i ^ 1)
            if sib in known:
                sib_digest = known[sib]
            elif sib in supplied:
                sib_digest = supplied[sib]
                used.add(sib)
            else:
                raise MalformedProofError(f"incomplete proof: missing node at {sib}")
            node = known[(layer, i)]
            left, right = (node, sib_digest) if i % 2 == 0 else (sib_digest, node)
            known[(layer + 1, i >> 1)] = hash_node(left, right)
            parents.append(i >> 1)
        frontier = parents
    if len(used) != len(supplied):
        raise MalformedProofError("malformed proof: surplus entries")
    return known[(depth, 0)] == expected_root
