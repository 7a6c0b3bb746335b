"""Exit criteria for the library and CLI, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v`` to get one PASS/FAIL line per
criterion printed to the terminal.
"""
import itertools
import random
import subprocess
import sys
from collections import Counter

import pytest

from compact_merkle import (
    CompactMultiproof,
    MalformedProofError,
    build_tree,
    decode_compact,
    encode_compact,
    encode_standard,
    generate_compact,
    generate_single_proof,
    generate_standard,
    hash_leaf,
    verify_compact,
)
from compact_merkle.cli import main
from conftest import random_instance
from oracles import fold_root, frontier_positions

TITLES = {
    "test_ac1_paper_trace_first_layer": "AC1 paper trace, first layer of generation",
    "test_ac2_full_trace_and_frontier_oracle": "AC2 full generation trace + frontier oracle",
    "test_ac3_fig3_hash_counts": "AC3 nine single-proof hashes vs four multiproof hashes",
    "test_ac4_size_claim": "AC4 compact < standard bytes, delta 9h - 8k",
    "test_ac5_round_trip_through_codec": "AC5 generate/encode/decode/verify round trip",
    "test_ac6_oracle_equivalence": "AC6 compact == standard == frontier oracle",
    "test_ac7_tamper_soundness": "AC7 single-bit tampering never verifies",
    "test_ac8_exact_consumption": "AC8 truncated / surplus hash list errors",
    "test_ac9_compare_reproducible": "AC9 seeded compare output reproducible, savings exact",
}


@pytest.fixture(autouse=True)
def criterion_line(request, capsys):
    yield
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] {TITLES[request.node.name]}")


def leaf_hashes(elements, subset):
    return [hash_leaf(elements[i]) for i in subset]


def flip(b, bit):
    out = bytearray(b)
    out[bit // 8] ^= 1 << (bit % 8)
    return bytes(out)


def test_ac1_paper_trace_first_layer(fig5_tree):
    states = []
    generate_compact(fig5_tree, [2, 3, 8, 13], on_layer=states.append)
    first, second = states[0], states[1]
    assert [list(p) for p in first.pairs] == [[2, 3], [2, 3], [8, 9], [12, 13]]
    assert [list(p) for p in first.pairs_pruned] == [[2, 3], [8, 9], [12, 13]]
    assert list(first.proof_indices) == [9, 12]
    assert list(second.active) == [1, 4, 6]


def test_ac2_full_trace_and_frontier_oracle(fig5_tree):
    states = []
    proof = generate_compact(fig5_tree, [2, 3, 8, 13], on_layer=states.append)
    positions = [(s.layer, j) for s in states for j in s.proof_indices]
    expected = [(0, 9), (0, 12), (1, 0), (1, 5), (1, 7), (2, 1)]
    assert positions == expected
    assert set(expected) == frontier_positions(16, [2, 3, 8, 13])
    assert proof.hashes == tuple(fig5_tree.layers[l][j] for l, j in expected)
    # the walk ends at the root: the last layer's pairs collapse to index 0
    last = states[-1]
    assert [p[0] // 2 for p in last.pairs_pruned] == [0]


def test_ac3_fig3_hash_counts():
    tree = build_tree([bytes([i]) for i in range(8)])
    hits = []
    for subset in itertools.combinations(range(8), 3):
        single = sum(len(generate_single_proof(tree, i).siblings) for i in subset)
        assert single == 9
        multi = len(generate_compact(tree, subset).hashes)
        assert multi == len(frontier_positions(8, subset))
        if multi == 4:
            hits.append(subset)
    assert (0, 2, 5) in hits


def test_ac4_size_claim():
    rng = random.Random(4)
    checked = 0
    while checked < 1000:
        n = rng.randint(1, 4096)
        k = rng.randint(1, min(n, 64))
        subset = rng.sample(range(n), k)
        elements = [i.to_bytes(4, "little") for i in range(n)]
        tree = build_tree(elements)
        compact = generate_compact(tree, subset)
        h = len(compact.hashes)
        if h < k:
            continue
        c = len(encode_compact(compact))
        s = len(encode_standard(generate_standard(tree, subset)))
        assert c < s
        assert s - c == 9 * h - 8 * k
        checked += 1


def test_ac5_round_trip_through_codec():
    rng = random.Random(5)
    for n in range(1, 257):
        elements = [f"{n}/{i}".encode() for i in range(n)]
        tree = build_tree(elements)
        assert tree.root == fold_root(elements)
        for _ in range(4):
            subset = sorted(rng.sample(range(n), rng.randint(1, n)))
            blob = encode_compact(generate_compact(tree, subset))
            proof = decode_compact(blob)
            assert verify_compact(proof, leaf_hashes(elements, subset), tree.root)


def test_ac6_oracle_equivalence():
    rng = random.Random(6)
    for _ in range(500):
        elements, subset = random_instance(rng)
        tree = build_tree(elements)
        compact = generate_compact(tree, subset)
        standard = generate_standard(tree, subset)
        assert Counter(compact.hashes) == Counter(e.digest for e in standard.entries)
        assert set(standard.positions) == frontier_positions(len(elements), subset)
        assert len(standard.positions) == len(compact.hashes)


def test_ac7_tamper_soundness():
    rng = random.Random(7)
    forgeries = 0
    for _ in range(200):
        elements, subset = random_instance(rng, max_k=32)
        tree = build_tree(elements)
        proof = generate_compact(tree, subset)
        hashes = leaf_hashes(elements, subset)
        targets = ["element", "root"] + (["proof"] if proof.hashes else [])
        target = rng.choice(targets)
        pick = rng.randrange(len(proof.hashes) if target == "proof" else len(hashes))
        for bit in range(256):
            m, e, r = list(proof.hashes), list(hashes), tree.root
            if target == "proof":
                m[pick] = flip(m[pick], bit)
            elif target == "element":
                e[pick] = flip(e[pick], bit)
            else:
                r = flip(r, bit)
            tampered = CompactMultiproof(proof.leaf_count, proof.leaf_indices, tuple(m))
            try:
                ok = verify_compact(tampered, e, r)
            except MalformedProofError:
                ok = False
            forgeries += ok
    assert forgeries == 0


def test_ac8_exact_consumption():
    rng = random.Random(8)
    checked = 0
    while checked < 100:
        elements, subset = random_instance(rng)
        tree = build_tree(elements)
        proof = generate_compact(tree, subset)
        hashes = leaf_hashes(elements, subset)
        if proof.hashes:
            short = CompactMultiproof(proof.leaf_count, proof.leaf_indices, proof.hashes[:-1])
            with pytest.raises(MalformedProofError, match="hash list exhausted"):
                verify_compact(short, hashes, tree.root)
        extra = CompactMultiproof(proof.leaf_count, proof.leaf_indices, proof.hashes + (rng.randbytes(32),))
        with pytest.raises(MalformedProofError, match="surplus hashes"):
            verify_compact(extra, hashes, tree.root)
        checked += 1


def _expected_compare_rows(n, subset):
    depth = (n - 1).bit_length()
    k = len(subset)
    h = len(frontier_positions(n, subset))
    single = k * (6 + 8 + 8 + 4 + 32 * depth)
    standard = 6 + 8 + 4 + 4 + 41 * h
    compact = 6 + 8 + 4 + 8 * k + 4 + 32 * h
    return {
        "single proofs": (k * depth, single, 0.0),
        "standard multiproof": (h, standard, 100.0 * (single - standard) / single),
        "compact multiproof": (h, compact, 100.0 * (single - compact) / single),
    }


def test_ac9_compare_reproducible(capsys):
    argv = ["compare", "--leaf-count", "4096", "--random", "40", "--seed", "9"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    other = subprocess.run(
        [sys.executable, "-m", "compact_merkle", *argv], capture_output=True, check=True
    ).stdout.decode()
    assert other == first

    subset = random.Random(9).sample(range(4096), 40)
    expected = _expected_compare_rows(4096, subset)
    rows = {}
    for line in first.splitlines()[3:6]:
        name, fields = line[:22].strip(), line[22:].split()
        rows[name] = (int(fields[0]), int(fields[1]), fields[2])
    assert set(rows) == set(expected)
    for name, (hashes, size, pct) in expected.items():
        assert rows[name] == (hashes, size, f"{pct:.2f}")
