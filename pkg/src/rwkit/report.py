"""Analysis configuration and machine/human readable reports."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any, Optional

from . import ars as ars_mod
from .critical_pairs import (
    check_cps,
    confluence_verdict,
    is_left_linear,
    overlap_to_json,
    overlaps,
)
from .errors import InputError
from .parallel import diamond_check, parallel_reducts
from .rewriting import (
    DEFAULT_NORMALIZE_FUEL,
    DEFAULT_REACH_FUEL,
    TRS,
    joinable_terms,
    normalize,
    trace_to_json,
)
from .terms import Limits, Term

UNDECIDED = frozenset({"unknown"})


@dataclass(frozen=True)
class AnalysisConfig:
    fuel: Optional[int] = None  # None: 10 000 expansions for searches, 1 000 normalization steps
    max_term_size: int = 10**6
    max_term_depth: int = 64
    assume_terminating: bool = False
    output_format: str = "text"
    dedupe_symmetric_cps: bool = False
    allow_fresh_consts: bool = False

    def __post_init__(self):
        if self.fuel is not None and self.fuel < 1:
            raise InputError("fuel must be >= 1")
        if self.max_term_size < 1:
            raise InputError("max term size must be >= 1")
        if self.output_format not in ("text", "json"):
            raise InputError(f"unknown output format {self.output_format!r}")

    @property
    def limits(self) -> Limits:
        return Limits(max_depth=self.max_term_depth, max_size=self.max_term_size)

    def search_fuel(self) -> int:
        return self.fuel or DEFAULT_REACH_FUEL

    def normalize_fuel(self) -> int:
        return self.fuel or DEFAULT_NORMALIZE_FUEL


@dataclass
class Report:
    command: str
    verdict: dict[str, Any]
    config: dict[str, Any]
    trs: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 2 if self.verdict["status"] in UNDECIDED else 0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Report:
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        v = self.verdict
        lines = [f"{self.command}: {v['status'].upper()}"]
        if v.get("criterion"):
            lines[0] += f" [{v['criterion']}]"
        if v.get("reason"):
            lines.append(f"  reason: {v['reason']}")
        if self.trs:
            lines.append(f"  rules: {len(self.trs['rules'])}, signature: {_sig_text(self.trs['signature'])}")
        lines += _detail_text(self.command, self.details)
        return "\n".join(lines)


def schema() -> dict:
    return json.loads(resources.files("rwkit").joinpath("report.schema.json").read_text())


def _sig_text(sig: dict[str, int]) -> str:
    return ", ".join(f"{f}/{n}" for f, n in sorted(sig.items())) or "(empty)"


def _detail_text(command: str, d: dict) -> list[str]:
    out = []
    if command in ("check", "cps"):
        for k, cp in enumerate(d.get("critical_pairs", [])):
            j = cp["joinability"]
            line = (
                f"  CP{k}: <{cp['left']}, {cp['right']}> outer {cp['outer_rule']} inner {cp['inner_rule']} "
                f"at {cp['position']} mgu {_subst_text(cp['mgu'])}: {j['status']}"
            )
            if "witness" in j:
                line += f" via {j['witness']}"
            out.append(line)
            if "inner_variant" in cp:
                out.append(f"       inner rule {cp['inner_rule']}: {cp['inner_rule_text']}, renamed apart: {cp['inner_variant']}")
    elif command == "orthogonal":
        out.append(f"  left-linear: {d['left_linear']}")
        for o in d["overlaps"]:
            out.append(f"  overlap: outer {o['outer_rule']} inner {o['inner_rule']} at {o['position']}")
    elif command == "normalize":
        out.append(f"  result: {d['result']} after {len(d['trace'])} step(s)")
        for r in d["trace"]:
            out.append(f"    rule {r['rule_index']} at {r['position']} with {_subst_text(r['matcher'])}")
    elif command == "joinable":
        if "witness" in d["joinability"]:
            out.append(f"  common reduct: {d['joinability']['witness']}")
    elif command == "parallel":
        for r in d["reducts"]:
            step = r["step"]
            where = ", ".join(f"{p}:{i}" for p, i in zip(step["positions"], step["rules"])) or "empty"
            out.append(f"  => {r['term']}   [{where}]")
    elif command == "ars":
        for key in ("noetherian", "locally_confluent", "confluent"):
            out.append(f"  {key}: {d[key]}")
        if d.get("counterexample"):
            out.append(f"  counterexample peak: {d['counterexample']}")
    return out


def _subst_text(m: dict[str, str]) -> str:
    return "{" + ", ".join(f"{x} -> {t}" for x, t in m.items()) + "}"


def trs_summary(trs: TRS) -> dict:
    return {
        "signature": dict(sorted(trs.signature.items())),
        "variables": sorted(trs.variables),
        "rules": [str(r) for r in trs.rules],
    }


def _cp_entries(trs: TRS, results) -> list[dict]:
    out = []
    for r in results:
        cp = r.pair
        entry = overlap_to_json(cp.origin)
        entry.update(
            left=str(cp.left),
            right=str(cp.right),
            trivial=cp.trivial,
            joinability=r.joinability.to_json(),
            outer_rule_text=str(trs.rules[cp.origin.outer_rule]),
            inner_rule_text=str(trs.rules[cp.origin.inner_rule]),
            inner_variant=str(cp.origin.inner_variant),
        )
        out.append(entry)
    return out


def _finish(command, verdict, config, trs, details, started) -> Report:
    return Report(
        command=command,
        verdict=verdict,
        config=asdict(config),
        trs=trs_summary(trs) if trs is not None else None,
        details=details,
        timing={"seconds": round(time.perf_counter() - started, 6)},
    )


def check_report(trs: TRS, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    v = confluence_verdict(
        trs,
        config.search_fuel(),
        config.assume_terminating,
        config.limits,
        dedupe_symmetric=config.dedupe_symmetric_cps,
    )
    details = {"assume_terminating": config.assume_terminating}
    if v.local is not None:
        details["critical_pairs"] = _cp_entries(trs, v.local.results)
    verdict = {"status": v.status, "criterion": v.criterion, "reason": v.reason}
    return _finish("check", verdict, config, trs, details, t0)


def cps_report(trs: TRS, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    results = check_cps(trs, config.search_fuel(), config.limits, config.dedupe_symmetric_cps)
    statuses = [r.joinability.status for r in results]
    if "no" in statuses:
        status, reason = "not-locally-confluent", "some critical pair is not joinable"
    elif all(s == "yes" for s in statuses):
        status, reason = "locally-confluent", "all critical pairs are joinable"
    else:
        status, reason = "unknown", "joinability of some critical pair undecided within fuel"
    verdict = {"status": status, "criterion": "cp-joinability", "reason": reason}
    return _finish("cps", verdict, config, trs, {"critical_pairs": _cp_entries(trs, results)}, t0)


def orthogonal_report(trs: TRS, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    ll = is_left_linear(trs)
    ovs = overlaps(trs)
    ok = ll and not ovs
    if ok:
        reason = "left-linear with no overlaps"
    elif not ll:
        reason = "some left-hand side repeats a variable"
    else:
        reason = f"{len(ovs)} overlap(s) between rules"
    verdict = {"status": "orthogonal" if ok else "not-orthogonal", "criterion": "orthogonality", "reason": reason}
    details = {"left_linear": ll, "overlaps": [overlap_to_json(o) for o in ovs]}
    return _finish("orthogonal", verdict, config, trs, details, t0)


def normalize_report(trs: TRS, term: Term, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    fuel = config.normalize_fuel()
    n = normalize(trs, term, fuel, config.limits)
    if n.normal:
        verdict = {"status": "normal-form", "criterion": "leftmost-outermost", "reason": "no redex left"}
    else:
        verdict = {"status": "unknown", "criterion": "leftmost-outermost", "reason": f"out of fuel after {fuel} steps"}
    details = {"term": str(term), "result": str(n.term), "trace": trace_to_json(n.trace)}
    return _finish("normalize", verdict, config, trs, details, t0)


def joinable_report(trs: TRS, u: Term, v: Term, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    j = joinable_terms(trs, u, v, config.search_fuel(), config.limits)
    status = {"yes": "joinable", "no": "not-joinable", "unknown": "unknown"}[j.status]
    reason = {
        "yes": "common reduct found",
        "no": "both reachable sets complete and disjoint",
        "unknown": "reachable sets truncated without a common reduct",
    }[j.status]
    verdict = {"status": status, "criterion": "bounded-search", "reason": reason}
    details = {"left": str(u), "right": str(v), "joinability": j.to_json()}
    return _finish("joinable", verdict, config, trs, details, t0)


def parallel_report(trs: TRS, term: Term, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    reducts = parallel_reducts(trs, term)
    d = diamond_check(trs, term)
    if d.holds:
        verdict = {"status": "diamond-holds", "criterion": "parallel-diamond", "reason": "every parallel peak closes in one step"}
    else:
        verdict = {
            "status": "diamond-fails",
            "criterion": "parallel-diamond",
            "reason": f"peak {d.peak[0]} <= {term} => {d.peak[1]} has no one-step parallel join",
        }
    details = {
        "term": str(term),
        "reducts": [{"term": str(t), "step": step.to_json()} for t, step in reducts],
    }
    if d.peak:
        details["failing_peak"] = [str(d.peak[0]), str(d.peak[1])]
    return _finish("parallel", verdict, config, trs, details, t0)


def ars_report(a: ars_mod.FiniteARS, config: AnalysisConfig) -> Report:
    t0 = time.perf_counter()
    noeth = ars_mod.noetherian(a)
    local_peak = ars_mod.find_nonjoinable_peak(a, one_step=True)
    peak = ars_mod.find_nonjoinable_peak(a)
    conf = peak is None
    verdict = {
        "status": "confluent" if conf else "not-confluent",
        "criterion": "exhaustive-search",
        "reason": "every peak joins" if conf else f"peak {peak[1]} <- {peak[0]} ->* {peak[2]} does not join",
    }
    details = {
        "carrier": [str(x) for x in a.carrier],
        "steps": sorted([str(x), str(y)] for x, y in a.steps),
        "noetherian": noeth,
        "locally_confluent": local_peak is None,
        "confluent": conf,
        "counterexample": None if conf else [str(x) for x in peak],
    }
    return _finish("ars", verdict, config, None, details, t0)

