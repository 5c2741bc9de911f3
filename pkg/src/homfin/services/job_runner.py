# src/homfin/services/job_runner.py

import logging
from pathlib import Path
from typing import Dict, List, Optional

from homfin.algebra.enveloping import EnvelopingAlgebra, opposite_algebra
from homfin.algebra.groebner import GradedAlgebra
from homfin.algebra.group_rings import (
    FiniteEnvelopingAlgebra,
    MonoidAlgebra,
    default_involution,
    involution_transport,
    left_resolution_K,
    theorem2_biresolution,
)
from homfin.algebra.modules import TrivialModule
from homfin.algebra.presentation import parse_presentation
from homfin.algebra.resolutions import (
    BettiTable,
    PartialFreeResolution,
    VerdictRecord,
    bimodule_resolution_of_A,
    build_resolution,
    check_exactness,
    check_minimality,
    euler_hilbert_defects,
    fpn_verdict,
    kuenneth_biresolution,
    minimal_resolution,
)
from homfin.algebra.retractions import retraction_for_side, transport_fpn
from homfin.algebra.scalars import field_name, parse_field
from homfin.core.config_manager import ConfigManager
from homfin.core.exceptions import UnsupportedInputError
from homfin.core.models import CheckResult, JobConfig, Report, ReportTable
from homfin.formats.monoid_format import MonoidFile, parse_monoid
from homfin.formats.report_format import betti_table_rows, betti_triples
from homfin.formats.retraction_format import parse_retraction

logger = logging.getLogger(__name__)

GRADED_NOTE = "graded certification implies the ungraded property"


class JobRunner:
    """
    Runs the resolve, group-bires and retract commands and packages their
    results as `Report`s.
    """

    def __init__(self, config: ConfigManager):
        self.config = config

    def job_config(self, command: str, **overrides) -> JobConfig:
        """Merges config file, environment and flags (non-None overrides win)."""
        values = {
            "command": command,
            "field": self.config.get_engine_setting("field"),
            "degree_bound": self.config.get_engine_setting("degree_bound"),
            "hom_bound": self.config.get_engine_setting("hom_bound"),
            "workers": self.config.get_engine_setting("workers"),
            "output_format": self.config.get_output_setting("format"),
            "level": self.config.get_verify_setting("level"),
            "seed": self.config.get_verify_setting("seed"),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return JobConfig(**values)

    # -------------------------------------------------------------------------
    # Shared report pieces
    # -------------------------------------------------------------------------

    @staticmethod
    def _resolution_checks(res: PartialFreeResolution, label: str, minimal: bool = True) -> List[CheckResult]:
        checks = []
        exactness = check_exactness(res)
        checks.append(CheckResult(
            name=f"{label} exactness",
            success=exactness.ok,
            message="exact in every degree" if exactness.ok else f"{len(exactness.failures)} failures, first {exactness.failures[0]}",
        ))
        defects = euler_hilbert_defects(res) if exactness.ok else []
        checks.append(CheckResult(
            name=f"{label} Euler–Hilbert",
            success=not defects,
            message="identity holds" if not defects else f"fails in degrees {defects}",
        ))
        if minimal:
            result = check_minimality(res)
            checks.append(CheckResult(
                name=f"{label} minimality",
                success=result.minimal,
                message="minimal" if result.minimal else f"unit coefficient at {result.witness}",
            ))
        return checks

    @staticmethod
    def _verdict_data(verdict: VerdictRecord) -> Dict:
        return {
            "verdict": verdict.verdict.value,
            "verdict_reason": verdict.reason,
            "n": verdict.n,
            "degree_bound": verdict.cutoff,
        }

    @staticmethod
    def _status(verdict: Optional[VerdictRecord], checks: List[CheckResult]) -> str:
        if not all(c.success for c in checks):
            return "failed"
        if verdict is not None and not verdict.certified:
            return "inconclusive"
        return "certified"

    @staticmethod
    def _config_data(job: JobConfig) -> Dict:
        return job.model_dump(exclude={"output_format", "command"})

    # -------------------------------------------------------------------------
    # resolve
    # -------------------------------------------------------------------------

    def resolve(self, job: JobConfig) -> Report:
        """Dispatches on the input file type: `.mon` for monoids, anything else is a presentation."""
        path = Path(job.input_path)
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".mon":
            return self._resolve_monoid(job, parse_monoid(text, name=path.stem))
        presentation = parse_presentation(text, default_field=job.field)
        return self._resolve_graded(job, GradedAlgebra(presentation, job.degree_bound, name=path.stem))

    def _resolve_graded(self, job: JobConfig, A: GradedAlgebra) -> Report:
        n = job.hom_bound
        data: Dict = {"algebra": A.name, "field": field_name(A.field), "side": job.side, "hilbert": list(A.dims()),
                      "groebner_complete": A.gb.is_complete(), "note": GRADED_NOTE}
        tables: List[ReportTable] = []
        checks: List[CheckResult] = []

        if job.side in ("left", "right"):
            algebra = A if job.side == "left" else opposite_algebra(A)
            res = minimal_resolution(algebra, n=n, side=job.side)
            verdict = fpn_verdict(res, n)
            betti = BettiTable.from_resolution(res)
            checks += self._resolution_checks(res, job.side)
            data.update(self._verdict_data(verdict), ranks=list(res.ranks()), betti=betti_triples(betti))
            tables.append(betti_table_rows(betti))

        elif job.side == "weak-bi":
            A_opp = opposite_algebra(A)
            env = EnvelopingAlgebra(A, A_opp)
            left = minimal_resolution(A, n=n, side="left")
            right = minimal_resolution(A_opp, n=n, side="right")
            bires = kuenneth_biresolution(left, right, env)
            verdict = fpn_verdict(bires, min(n, bires.length))
            checks += self._resolution_checks(bires, "Künneth", minimal=False)
            data.update(self._verdict_data(verdict), ranks=list(bires.ranks()),
                        left_ranks=list(left.ranks()), right_ranks=list(right.ranks()))

        else:
            bires, comparison = bimodule_resolution_of_A(A, n)
            verdict = fpn_verdict(bires, n)
            checks += self._resolution_checks(bires, "bimodule")
            checks.append(CheckResult(
                name="bimodule vs left Betti",
                success=comparison.passed,
                message="PASS" if comparison.passed else f"mismatches (i, j, bi, left): {list(comparison.mismatches)}",
            ))
            data.update(self._verdict_data(verdict), ranks=list(bires.ranks()),
                        betti=betti_triples(comparison.bimodule), left_betti=betti_triples(comparison.left))
            tables.append(betti_table_rows(comparison.bimodule))

        status = self._status(verdict, checks)
        logger.info(f"resolve {job.side} {A.name}: {status}")
        return Report(command="resolve", status=status, config=self._config_data(job), data=data, tables=tables, checks=checks)

    def _resolve_monoid(self, job: JobConfig, parsed: MonoidFile) -> Report:
        n = job.hom_bound
        K = parse_field(parsed.field or job.field)
        B = parsed.monoid
        KB = MonoidAlgebra(B, K)
        data: Dict = {"monoid": B.name, "order": B.order, "group": B.is_group, "field": field_name(K), "side": job.side}
        checks: List[CheckResult] = []

        if job.side == "left":
            res = left_resolution_K(KB, n)
            checks += self._resolution_checks(res, "left", minimal=False)
        elif job.side == "right":
            star = parsed.involution or default_involution(B)
            if star is not None:
                res = involution_transport(left_resolution_K(KB, n), star)
                data["via"] = "involution"
            else:
                KB_opp = MonoidAlgebra(B.opposite(), K)
                res = build_resolution(KB_opp, TrivialModule(KB_opp, side="right"), n, side="right")
                data["via"] = "opposite monoid"
            checks += self._resolution_checks(res, "right", minimal=False)
        elif job.side == "weak-bi":
            env = FiniteEnvelopingAlgebra(B, K)
            left = left_resolution_K(KB, n)
            right = build_resolution(env.opposite, TrivialModule(env.opposite, side="right"), n, side="right")
            res = kuenneth_biresolution(left, right, env)
            checks += self._resolution_checks(res, "Künneth", minimal=False)
        else:
            left = left_resolution_K(KB, n)
            res, report = theorem2_biresolution(left)
            checks += self._group_bires_checks(report)

        verdict = fpn_verdict(res, min(n, res.length))
        data.update(self._verdict_data(verdict), ranks=list(res.ranks()))
        status = self._status(verdict, checks)
        logger.info(f"resolve {job.side} {B.name}: {status}")
        return Report(command="resolve", status=status, config=self._config_data(job), data=data, checks=checks)

    # -------------------------------------------------------------------------
    # group-bires
    # -------------------------------------------------------------------------

    @staticmethod
    def _group_bires_checks(report) -> List[CheckResult]:
        return [
            CheckResult(name="bi-resolution exactness", success=report.exactness.ok,
                        message="exact" if report.exactness.ok else str(report.exactness.failures[0])),
            CheckResult(name="ranks preserved", success=report.input_ranks == report.output_ranks,
                        message=f"{list(report.input_ranks)} -> {list(report.output_ranks)}"),
            CheckResult(name="free bimodule identification", success=not report.identification_defects,
                        message="P ⊗̂ KG free on e ⊗̂ 1" if not report.identification_defects
                        else f"fails at positions {list(report.identification_defects)}"),
            CheckResult(name="contraction round trip", success=report.contracted_ranks == report.input_ranks
                        and report.contracted_exactness.ok,
                        message=f"ranks {list(report.contracted_ranks)}"),
        ]

    def group_bires(self, job: JobConfig) -> Report:
        """
        Raises:
            UnsupportedInputError: the input monoid has non-invertible elements.
        """
        path = Path(job.input_path)
        parsed = parse_monoid(path.read_text(encoding="utf-8"), name=path.stem)
        B = parsed.monoid
        if not B.is_group:
            raise UnsupportedInputError(
                f"{B.name} is a monoid without inverses. The ⊗̂ construction identifies P ⊗̂ KG with a free "
                "bimodule through g ⊗̂ h ↦ g ⊗ g⁻¹h, which needs g⁻¹."
            )
        K = parse_field(parsed.field or job.field)
        left = left_resolution_K(MonoidAlgebra(B, K), job.hom_bound)
        bires, report = theorem2_biresolution(left)
        checks = self._resolution_checks(left, "left", minimal=False) + self._group_bires_checks(report)
        data = {
            "group": B.name, "order": B.order, "field": field_name(K),
            "left_ranks": list(left.ranks()), "ranks": list(bires.ranks()),
            "contracted_ranks": list(report.contracted_ranks),
        }
        status = self._status(None, checks)
        return Report(command="group-bires", status=status, config=self._config_data(job), data=data, checks=checks)

    # -------------------------------------------------------------------------
    # retract
    # -------------------------------------------------------------------------

    def retract(self, job: JobConfig) -> Report:
        path = Path(job.input_path)
        parsed = parse_retraction(path.read_text(encoding="utf-8"), default_field=job.field)
        base = parsed.build(job.degree_bound)
        retraction, pair = retraction_for_side(base, job.side)
        n = job.hom_bound
        if job.side == "bi":
            res = build_resolution(retraction.big, pair.M.ambient, n, side="bi", target_kind="algebra")
        else:
            res = minimal_resolution(retraction.big, n=n, side="right" if job.side == "right" else "left")
        result = transport_fpn(retraction, res, n, pair=pair)

        twin = result.twin
        checks = [
            CheckResult(name="top row exactness", success=result.top_exactness.ok,
                        message="exact" if result.top_exactness.ok else str(result.top_exactness.failures[0])),
            CheckResult(name="bottom row exactness", success=result.bottom_exactness.ok,
                        message="exact" if result.bottom_exactness.ok else str(result.bottom_exactness.failures[0])),
            CheckResult(name="rank 2|e| law", success=twin.structural_law_holds(),
                        message=f"top {list(twin.top.ranks())}, bottom {list(twin.bottom.ranks())}"),
        ]
        rows = [[i, c, t, b] for i, (c, t, b) in enumerate(zip(twin.generator_counts, twin.top.ranks(), twin.bottom.ranks()))]
        data = {
            "big": parsed.big.to_text().strip(), "small": parsed.small.to_text().strip(), "side": job.side,
            "input_verdict": result.input_verdict.verdict.value, "augmented": base.augmented, "note": GRADED_NOTE,
        }
        data.update(self._verdict_data(result.verdict))
        table = ReportTable(title="Twin resolution", headers=["i", "generators", "top rank", "bottom rank"], rows=rows)
        status = self._status(result.verdict, checks)
        return Report(command="retract", status=status, config=self._config_data(job), data=data, tables=[table], checks=checks)
