"""End-to-end check of every claim about the built-in 9x9 pattern.

Claims, in order:

C1  the all-ones realization has rank 6
C2  every realization has rank >= 6 (unique-matching 6x6 minor)
C3  a nonsingular diagonal block forces rank >= 7 (block-pivot 7x7 minors)
C4  each block's rows or columns vanish outside the block
C5  every 6-subset of 1..9 contains a whole block
C6  rank-6 witnesses have all 6x6 principal minors zero, largest nonzero one is 5x5
C7  the all-ones matrix and the rank-6 witnesses are not diagonalizable over C

C7 is decided by exact annihilation, independently of C5/C6.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from .linalg import (
    determinant,
    is_diagonalizable,
    max_nonsingular_principal_size,
    principal_minors,
    rank,
)
from .pattern import Block, SignPattern, paper_blocks, paper_pattern
from .realize import (
    SampleConfig,
    all_ones_realization,
    force_block_nonsingular,
    sample_min_rank_realization,
    sample_realization,
)
from .structural import (
    Confinement,
    SparsePoly,
    block_pivot_certificate,
    collinearity_confinement,
    monomial_minor_bound,
    pigeonhole_cover,
    pigeonhole_witness,
    symbolic_minor,
)

__all__ = ["ClaimResult", "VerificationReport", "verify_paper_claims", "CLAIM_STATEMENTS"]

REPORT_SCHEMA = "signrank.report/1"
TARGET_RANK = 6
AMBIENT = TARGET_RANK + 1

CLAIM_STATEMENTS = {
    "C1": "the all-ones realization has rank 6",
    "C2": "every realization has rank >= 6",
    "C3": "rank 6 forces each diagonal 2x2 block to be singular",
    "C4": "each block's rows or columns are confined to the block",
    "C5": "every 6-subset of indices contains both indices of some block",
    "C6": "rank-6 realizations have all 6x6 principal minors zero",
    "C7": "rank-6 realizations are not diagonalizable over C",
}


@dataclass
class ClaimResult:
    claim_id: str
    statement: str
    passed: bool
    evidence: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "status": self.status,
            "evidence": self.evidence,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass
class VerificationReport:
    pattern_fingerprint: str
    config: SampleConfig
    claims: list[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "pattern": self.pattern_fingerprint,
            "config": {"seed": self.config.seed, "trials": self.config.trials,
                       "magnitude": self.config.magnitude},
            "claims": [c.to_dict() for c in self.claims],
            "overall": "pass" if self.passed else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def table(self) -> str:
        lines = [f"pattern {self.pattern_fingerprint}  seed={self.config.seed} "
                 f"trials={self.config.trials} magnitude={self.config.magnitude}"]
        for c in self.claims:
            lines.append(f"{c.claim_id}  {c.status.upper():4}  {c.elapsed_ms:9.1f} ms  {c.statement}")
            if not c.passed and "error" in c.evidence:
                lines.append(f"      error: {c.evidence['error']}")
        done = sum(c.passed for c in self.claims)
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({done}/{len(self.claims)} claims)")
        return "\n".join(lines)


def _run(claim_id: str, check: Callable[[], tuple[bool, dict]]) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        ok, evidence = check()
    except Exception as exc:  # a failing claim must not abort the pipeline
        ok, evidence = False, {"error": f"{type(exc).__name__}: {exc}"}
    ms = (time.perf_counter() - t0) * 1000
    return ClaimResult(claim_id, CLAIM_STATEMENTS[claim_id], bool(ok), evidence, ms)


def _block_id(b: Block) -> str:
    return str(b)


def verify_paper_claims(cfg: SampleConfig | None = None,
                        pattern: SignPattern | None = None) -> VerificationReport:
    """Run C1..C7 and collect a report; failures are recorded, never raised.

    ``pattern`` defaults to the built-in 9x9 pattern; passing a mutated copy
    shows which claims depend on which cells.
    """
    cfg = cfg or SampleConfig()
    p = pattern if pattern is not None else paper_pattern()
    blocks = paper_blocks()
    witnesses: list = []

    def get_witnesses():
        if len(witnesses) < cfg.trials:
            witnesses[:] = [sample_min_rank_realization(p, cfg, t).matrix for t in range(cfg.trials)]
        return witnesses

    def c1():
        r = rank(all_ones_realization(p).matrix)
        return r == TARGET_RANK, {"rank": r}

    def c2():
        k, cert = monomial_minor_bound(p)
        ev = {"bound": k, "certificate": cert.to_dict() if cert else None}
        if cert is None:
            return False, ev
        poly = symbolic_minor(p, cert.rows, cert.cols)
        single = poly == SparsePoly({cert.monomial(): cert.sign})
        ev["symbolic_single_term"] = single
        ok = k == TARGET_RANK and single
        min_rank = None
        for t in range(cfg.trials):
            m = sample_realization(p, cfg, t).matrix
            minor = determinant(m.submatrix(cert.rows, cert.cols))
            r = rank(m)
            min_rank = r if min_rank is None else min(min_rank, r)
            if minor == 0 or minor != cert.predicted_minor(m) or r < TARGET_RANK:
                ok = False
                ev.setdefault("bad_trials", []).append(t)
        ev["samples"] = cfg.trials
        ev["min_sample_rank"] = min_rank
        return ok, ev

    def c3():
        ok, per_block = True, {}
        for b in blocks:
            try:
                cert = block_pivot_certificate(p, b, AMBIENT)
            except ValueError as exc:
                per_block[_block_id(b)] = {"certificate": None, "error": str(exc)}
                ok = False
                continue
            entry = {"certificate": cert.to_dict() if cert else None}
            per_block[_block_id(b)] = entry
            if cert is None:
                ok = False
                continue
            bad = []
            for t in range(cfg.trials):
                m = force_block_nonsingular(sample_realization(p, cfg, t), b.rows, b.cols).matrix
                minor = determinant(m.submatrix(cert.rows, cert.cols))
                if minor == 0 or minor != cert.predicted_minor(m) or rank(m) < AMBIENT:
                    bad.append(t)
            if bad:
                entry["bad_trials"] = bad
                ok = False
            entry["samples"] = cfg.trials
        return ok, {"ambient": AMBIENT, "blocks": per_block}

    def c4():
        ok, kinds = True, {}
        for b in blocks:
            try:
                kind = collinearity_confinement(p, b)
            except ValueError as exc:
                kinds[_block_id(b)] = f"invalid: {exc}"
                ok = False
                continue
            kinds[_block_id(b)] = kind.value
            ok &= kind is not Confinement.NONE
        return ok, {"confinement": kinds}

    def c5():
        n = p.n
        covered = pigeonhole_cover(n, blocks, TARGET_RANK)
        witness = pigeonhole_witness(n, blocks, TARGET_RANK - 1)
        ev = {"k": TARGET_RANK, "covered": covered,
              "uncovered_witness_k_minus_1": list(witness) if witness else None}
        return covered and witness is not None, ev

    def c6():
        bad = []
        sizes = set()
        for t, m in enumerate(get_witnesses()):
            minors = principal_minors(m, TARGET_RANK)
            size = max_nonsingular_principal_size(m)
            sizes.add(size)
            if any(d != 0 for _, d in minors) or size != TARGET_RANK - 1:
                bad.append(t)
        ev = {"witnesses": cfg.trials, "minors_per_witness": len(minors) if cfg.trials else 0,
              "max_nonsingular_principal_sizes": sorted(sizes)}
        if bad:
            ev["bad_trials"] = bad
        return not bad, ev

    def c7():
        ones = is_diagonalizable(all_ones_realization(p).matrix)
        bad = [t for t, m in enumerate(get_witnesses()) if is_diagonalizable(m)]
        ev = {"all_ones_diagonalizable": ones, "witnesses": cfg.trials}
        if bad:
            ev["diagonalizable_trials"] = bad
        return not ones and not bad, ev

    claims = [_run(cid, fn) for cid, fn in
              (("C1", c1), ("C2", c2), ("C3", c3), ("C4", c4), ("C5", c5), ("C6", c6), ("C7", c7))]
    return VerificationReport(p.fingerprint(), cfg, claims)
