"""Scaled replication of the pentanomial discovery sweep.

Enumerate every shape (t, r1 < r2 < r3 < r4), keep the ones whose H/N
pair is coprime (the cheap algebraic sieve), brute-test the survivors
over each field in the configured m-set, and emit every shape that
permutes at least one of them.  Output order is (t, r-tuple), so runs
are byte-identical regardless of worker count; the optional process
pool just partitions the t range.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, replace
from itertools import combinations

from .families import GeneralPentanomial, gcd_condition, table1_registry
from .oracle import monomials_permute

__all__ = [
    "SEARCH_N_CAP",
    "SearchConfig",
    "Candidate",
    "run_search",
    "match_candidates",
    "candidates_jsonl",
    "candidates_csv",
    "summary_markdown",
]

# Search sweeps thousands of fields, so its brute ceiling sits well below
# the single-shot oracle cap.
SEARCH_N_CAP = 16


@dataclass(frozen=True)
class SearchConfig:
    """Sweep bounds: t below t_max, permutation tests over each m in m_set."""

    t_max: int = 30
    m_set: frozenset[int] = frozenset({2, 3, 4, 5})
    workers: int = 1

    def validate(self, n_cap: int = SEARCH_N_CAP) -> None:
        if self.t_max < 5:
            raise ValueError("t_max below 5 leaves nothing to search")
        if not self.m_set:
            raise ValueError("m_set must be nonempty")
        for m in self.m_set:
            if m < 1 or 2 * m > n_cap:
                raise ValueError(
                    f"m = {m} infeasible: field degree {2 * m} exceeds cap {n_cap}")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    @property
    def m_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.m_set))


@dataclass(frozen=True)
class Candidate:
    """A sieve survivor with its full per-m permutation record."""

    shape: GeneralPentanomial
    survived_m: tuple[int, ...]
    matched_row: int | None = None

    def sort_key(self):
        return (self.shape.t, self.shape.rs)


def _search_block(args) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    t_values, m_list = args
    found = []
    for t in t_values:
        for rs in combinations(range(1, t + 1), 4):
            shape = GeneralPentanomial(t, rs)
            if not gcd_condition(shape):
                continue
            survived = tuple(
                m for m in m_list
                if monomials_permute(2 * m, shape.exponents(m), cap=SEARCH_N_CAP))
            if survived:
                found.append((t, rs, survived))
    return found


def run_search(cfg: SearchConfig) -> list[Candidate]:
    """Run the sieve-then-brute sweep; candidates in (t, r-tuple) order.

    Every m in the m-set is tested for every sieve survivor (no early
    abandonment), so survived_m is the complete record.
    """
    cfg.validate()
    m_list = cfg.m_list
    t_values = list(range(4, cfg.t_max))
    if cfg.workers == 1 or len(t_values) <= 1:
        blocks = [_search_block((t_values, m_list))]
    else:
        from concurrent.futures import ProcessPoolExecutor

        nblocks = min(cfg.workers * 4, len(t_values))
        chunks = [t_values[k::nblocks] for k in range(nblocks)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            blocks = list(pool.map(_search_block, [(c, m_list) for c in chunks]))
    found = [
        Candidate(GeneralPentanomial(t, rs), survived)
        for block in blocks for t, rs, survived in block
    ]
    found.sort(key=Candidate.sort_key)
    return found


def match_candidates(cands: list[Candidate]) -> list[Candidate]:
    """Annotate candidates whose (t, r-tuple) equals a registry row's shape."""
    by_shape = {}
    for row in table1_registry():
        shape = row.shape()
        by_shape[(shape.t, shape.rs)] = row.row_no
    return [
        replace(c, matched_row=by_shape.get((c.shape.t, c.shape.rs)))
        for c in cands
    ]


def candidates_jsonl(cands: list[Candidate]) -> str:
    """One JSON object per line, stable key order."""
    lines = []
    for c in cands:
        lines.append(json.dumps({
            "kind": "search_candidate",
            "params": {"t": c.shape.t, "r": list(c.shape.rs)},
            "result": {
                "survived_m": list(c.survived_m),
                "matched_row": c.matched_row,
            },
        }, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def candidates_csv(cands: list[Candidate]) -> str:
    """Fixed-column CSV: t, r1..r4, survived_m (semicolon-joined), matched_row."""
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "r1", "r2", "r3", "r4", "survived_m", "matched_row"])
    for c in cands:
        writer.writerow([
            c.shape.t, *c.shape.rs,
            ";".join(str(m) for m in c.survived_m),
            "" if c.matched_row is None else c.matched_row,
        ])
    return buf.getvalue()


def summary_markdown(cands: list[Candidate]) -> str:
    """Human summary: totals plus the registry rows that showed up."""
    matched = [c for c in cands if c.matched_row is not None]
    lines = [
        f"Candidates surviving at least one m: {len(cands)}",
        "",
        "| row | t | r-tuple | survived m |",
        "|----:|--:|---------|------------|",
    ]
    for c in sorted(matched, key=lambda c: c.matched_row):
        rs = ",".join(str(r) for r in c.shape.rs)
        ms = ",".join(str(m) for m in c.survived_m)
        lines.append(f"| {c.matched_row} | {c.shape.t} | ({rs}) | {{{ms}}} |")
    if not matched:
        lines.append("| — | — | — | — |")
    return "\n".join(lines) + "\n"
