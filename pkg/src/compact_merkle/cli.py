"""Command-line front end: build roots, write and check compact proofs, compare sizes."""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from .codec import DecodeError, decode_compact, encode_compact
from .hashing import DIGEST_SIZE, hash_leaf
from .multiproof import MalformedProofError, generate_compact, verify_compact
from .report import format_report, proof_size_report
from .tree import build_tree

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2


class CliError(Exception):
    pass


def read_elements(path: str | Path) -> list[bytes]:
    """One element per line; a trailing newline does not start an extra element."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from exc
    lines = data.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
    if not lines:
        raise CliError(f"{path}: no elements")
    return lines


def parse_indices(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            value = int(part)
        except ValueError:
            raise CliError(f"invalid index {part!r}") from None
        if value < 0:
            raise CliError(f"invalid index {value}: must be non-negative")
        out.append(value)
    return out


def _check_range(indices: Sequence[int], leaf_count: int) -> None:
    for i in indices:
        if i >= leaf_count:
            raise CliError(f"index {i} out of range for {leaf_count} elements")


def cmd_root(args: argparse.Namespace) -> int:
    tree = build_tree(read_elements(args.file))
    print(tree.root.hex())
    return EXIT_OK


def cmd_prove(args: argparse.Namespace) -> int:
    elements = read_elements(args.file)
    indices = parse_indices(args.indices)
    _check_range(indices, len(elements))
    blob = encode_compact(generate_compact(build_tree(elements), indices))
    try:
        Path(args.out).write_bytes(blob)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    print(len(blob))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        expected = bytes.fromhex(args.root)
    except ValueError:
        raise CliError("root must be hex") from None
    if len(expected) != DIGEST_SIZE:
        raise CliError(f"root must be {DIGEST_SIZE} bytes ({2 * DIGEST_SIZE} hex characters)")
    try:
        blob = Path(args.proof).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {args.proof}: {exc.strerror or exc}") from exc
    proof = decode_compact(blob)
    elements = read_elements(args.elements)
    ok = verify_compact(proof, [hash_leaf(e) for e in elements], expected)
    print("OK" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_compare(args: argparse.Namespace) -> int:
    n = args.leaf_count
    if n < 1:
        raise CliError("leaf count must be positive")
    if args.indices is not None:
        indices = parse_indices(args.indices)
        _check_range(indices, n)
    else:
        if not 1 <= args.random <= n:
            raise CliError(f"cannot pick {args.random} distinct leaves out of {n}")
        indices = random.Random(args.seed).sample(range(n), args.random)
    sys.stdout.write(format_report(proof_size_report(n, indices)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compact-merkle", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("root", help="print the Merkle root of an element file")
    p.add_argument("file")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("prove", help="write a compact multiproof for some elements")
    p.add_argument("file")
    p.add_argument("--indices", required=True, help="comma-separated leaf indices")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="check a compact multiproof against a root")
    p.add_argument("--root", required=True, help="expected root, lowercase hex")
    p.add_argument("--proof", required=True)
    p.add_argument("--elements", required=True, help="proven elements, ascending index order")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="compare proof sizes across schemes")
    p.add_argument("--leaf-count", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--indices")
    group.add_argument("--random", type=int, metavar="K")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, DecodeError, MalformedProofError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
