"""Proof-size comparison between single proofs, standard and compact multiproofs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import codec
from .multiproof import compact_positions, normalize_indices, standard_positions
from .tree import tree_depth


@dataclass(frozen=True)
class SchemeSize:
    scheme: str
    hash_count: int
    byte_size: int


@dataclass(frozen=True)
class SizeReport:
    leaf_count: int
    leaf_indices: tuple[int, ...]
    single: SchemeSize
    standard: SchemeSize
    compact: SchemeSize

    @property
    def rows(self) -> tuple[SchemeSize, SchemeSize, SchemeSize]:
        return (self.single, self.standard, self.compact)

    def savings_vs_single(self, row: SchemeSize) -> float:
        return 100.0 * (self.single.byte_size - row.byte_size) / self.single.byte_size

    @property
    def compact_savings_vs_single(self) -> float:
        return self.savings_vs_single(self.compact)

    @property
    def compact_savings_vs_standard(self) -> float:
        return 100.0 * (self.standard.byte_size - self.compact.byte_size) / self.standard.byte_size


def proof_size_report(leaf_count: int, leaf_indices: Iterable[int]) -> SizeReport:
    """Hash counts and encoded sizes for one subset; no digests are computed.

    The single-proof row is ``k`` independent single proofs, each in its own
    envelope.
    """
    indices = normalize_indices(leaf_indices)
    k = len(indices)
    compact_h = len(compact_positions(leaf_count, indices))
    standard_h = len(standard_positions(leaf_count, indices))
    depth = tree_depth(leaf_count)
    return SizeReport(
        leaf_count=leaf_count,
        leaf_indices=tuple(indices),
        single=SchemeSize("single proofs", k * depth, k * codec.single_size(depth)),
        standard=SchemeSize("standard multiproof", standard_h, codec.standard_size(standard_h)),
        compact=SchemeSize("compact multiproof", compact_h, codec.compact_size(k, compact_h)),
    )


def format_report(report: SizeReport) -> str:
    lines = [
        f"leaf count: {report.leaf_count}",
        f"proven leaves: {len(report.leaf_indices)}",
        f"{'scheme':<22}{'hashes':>10}{'bytes':>12}{'savings %':>12}",
    ]
    for row in report.rows:
        lines.append(
            f"{row.scheme:<22}{row.hash_count:>10}{row.byte_size:>12}"
            f"{report.savings_vs_single(row):>12.2f}"
        )
    lines.append(f"compact vs standard savings %: {report.compact_savings_vs_standard:.2f}")
    return "\n".join(lines) + "\n"
