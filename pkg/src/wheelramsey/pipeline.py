"""Config-driven construct / verify / bounds / crosscheck runs.

A pipeline config is an INI file. ``[pipeline]`` holds ``name`` and
``seed``; every other section is a step named ``[<kind> <name>]``::

    [construct even8]
    family = even-lower
    n = 8

    [verify even8]
    coloring = even8      ; a construct step, or a path relative to the config
    n = 8
    sha256 = ...          ; optional, checked before verifying a file

Steps run in dependency waves; steps inside a wave run concurrently.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import bounds, constructions, detection, oracles
from .certificates import (
    COLORING_DIR,
    REPORT_DIR,
    Catalog,
    Certificate,
    IntegrityError,
    apply_report,
    claim_for,
    run_claim,
)
from .formats import encode_coloring, read_coloring, sha256_file
from .graph import DomainError, EdgeColoring, Graph

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY = 0, 1, 2, 3
STEP_KINDS = ("construct", "verify", "bounds", "crosscheck")
BUNDLED = {
    "two-color-lower": "two-color-lower.ini",
    "iterated-blowup": "iterated-blowup.ini",
}


class ConfigError(Exception):
    code = "CONFIG"


@dataclass
class Step:
    kind: str
    name: str
    params: dict[str, str]
    deps: tuple[str, ...] = ()


@dataclass
class PipelineConfig:
    name: str
    seed: int
    steps: list[Step]
    base_dir: Path
    threads: int | None = None
    output_dir: Path | None = None

    def waves(self) -> list[list[Step]]:
        done: set[str] = set()
        pending = list(self.steps)
        waves = []
        while pending:
            ready = [s for s in pending if all(d in done for d in s.deps)]
            if not ready:
                raise ConfigError("step dependencies form a cycle or name unknown steps")
            waves.append(ready)
            done.update(s.name for s in ready if s.kind == "construct")
            pending = [s for s in pending if s not in ready]
        return waves


def bundled_config_path(name: str) -> Path:
    return Path(str(resources.files("wheelramsey") / "configs" / BUNDLED[name]))


def load_config(path_or_name, seed: int | None = None) -> PipelineConfig:
    if str(path_or_name) in BUNDLED:
        path = bundled_config_path(str(path_or_name))
    else:
        path = Path(path_or_name)
    if not path.exists():
        raise ConfigError(f"config not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(path.read_text())
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    head = parser["pipeline"] if parser.has_section("pipeline") else {}
    name = head.get("name", path.stem)
    cfg_seed = int(head.get("seed", 0)) if seed is None else seed
    steps = []
    construct_names = set()
    for section in parser.sections():
        if section == "pipeline":
            continue
        kind, _, step_name = section.partition(" ")
        step_name = step_name.strip()
        if kind not in STEP_KINDS or not step_name:
            raise ConfigError(f"bad step section [{section}]")
        params = dict(parser[section])
        if kind == "construct":
            if step_name in construct_names:
                raise ConfigError(f"duplicate construct step {step_name}")
            construct_names.add(step_name)
        steps.append(Step(kind, step_name, params))
    for step in steps:
        refs = [step.params.get(key) for key in ("inner", "base")]
        if step.kind == "verify":
            refs.append(step.params.get("coloring", step.name))
        # a verify step may share its name with the construct step it checks
        own = step.name if step.kind == "construct" else None
        step.deps = tuple(r for r in refs if r in construct_names and r != own)
    return PipelineConfig(name, cfg_seed, steps, path.parent)


def _int(params, key, default=None):
    if key not in params:
        if default is None:
            raise ConfigError(f"missing parameter {key}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ConfigError(f"parameter {key} must be an integer") from None


def builtin_base(spec: str):
    """'paley5', 'rook9' or 'mono:S' (single-color K_S)."""
    if spec == "paley5":
        return constructions.paley5()
    if spec == "rook9":
        return constructions.rook9()
    if spec.startswith("mono:"):
        return constructions.mono_base(int(spec[5:]))
    return None


def build(family: str, n=None, k=None, base=None, inner=None):
    """Dispatch a construction family by its CLI/config name."""
    family = family.lower()
    if family in ("even-lower", "odd-lower", "iterated-blowup") and n is None:
        raise DomainError(f"family {family} needs n")
    if family == "iterated-blowup" and k is None:
        raise DomainError("family iterated-blowup needs k")
    if family == "even-lower":
        return constructions.construct_even_lower(n)
    if family == "odd-lower":
        return constructions.construct_odd_lower(n)
    if family == "paley5":
        b = constructions.paley5()
        return b.coloring, constructions.BlockSpec((("all", 5),), notes={"family": "paley5"})
    if family == "rook9":
        b = constructions.rook9()
        return b.coloring, constructions.BlockSpec((("all", 9),), notes={"family": "rook9"})
    if family == "blowup":
        if base is None or inner is None:
            raise DomainError("blowup needs a base and an inner coloring")
        return constructions.blowup(base, inner)
    if family == "iterated-blowup":
        return constructions.iterated_blowup(k, n)
    raise DomainError(f"unknown family {family!r}")


@dataclass
class RunResult:
    exit_status: int
    output_dir: Path
    errors: list[str] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)


class _Runner:
    def __init__(self, cfg: PipelineConfig, out: Path, threads: int | None):
        self.cfg = cfg
        self.catalog = Catalog(out)
        self.threads = threads
        self.built: dict[str, tuple[EdgeColoring, str, dict]] = {}
        self.lines: list[str] = []
        self.errors: list[str] = []
        self.failed = False

    def _resolve(self, ref: str, params: dict) -> tuple[EdgeColoring, str, str, dict | None]:
        if ref in self.built:
            coloring, rel, spec = self.built[ref]
            return coloring, rel, sha256_file(self.catalog.root / rel), spec
        path = (self.cfg.base_dir / ref).resolve()
        if not path.exists():
            raise ConfigError(f"coloring not found: {ref}")
        digest = sha256_file(path)
        expected = params.get("sha256")
        if expected and expected != digest:
            raise IntegrityError(f"expected={expected} actual={digest} file={ref}")
        blocks = path.with_name(path.name.removesuffix(".json") + ".blocks.json")
        spec = json.loads(blocks.read_text()) if blocks.exists() else None
        return read_coloring(path), str(path), digest, spec

    def construct(self, step: Step) -> None:
        p = step.params
        base = inner = None
        if "base" in p:
            base = builtin_base(p["base"])
            if base is None:
                base = self._resolve(p["base"], {})[0]
        if "inner" in p:
            inner = self._resolve(p["inner"], {})[0]
        n = _int(p, "n", 0) or None
        k = _int(p, "k", 0) or None
        coloring, spec = build(p.get("family", ""), n=n, k=k, base=base, inner=inner)
        rel = f"{COLORING_DIR}/{step.name}.json"
        self.catalog.write_file(rel, encode_coloring(coloring))
        blocks = json.dumps(spec.to_dict(), indent=2) + "\n"
        self.catalog.write_file(f"{COLORING_DIR}/{step.name}.blocks.json", blocks)
        self.built[step.name] = (coloring, rel, spec.to_dict())
        self.lines.append(f"construct {step.name}: order={coloring.order} colors={coloring.num_colors}")

    def verify(self, step: Step) -> None:
        p = step.params
        coloring, rel, digest, spec = self._resolve(p.get("coloring", step.name), p)
        pattern = p.get("pattern", "wheel")
        n = _int(p, "n") if pattern == "wheel" else None
        claim = claim_for(pattern, n, coloring.num_colors, coloring.order)
        cert = Certificate(step.name, rel, digest, claim, blockspec=spec)
        report = run_claim(coloring, claim, self.threads)
        apply_report(cert, report)
        self.catalog.save(cert)
        self.catalog.write_file(f"{REPORT_DIR}/{step.name}.txt", report.to_text())
        self.lines.append(f"verify {step.name}: {report.status_line()}")
        if not report.passed:
            self.failed = True

    def bounds(self, step: Step) -> None:
        p = step.params
        ks = _range(p.get("k", "2"))
        ns = _range(p.get("n", "7"))
        advisory = p.get("advisory", "false").lower() in ("1", "true", "yes")
        text = bounds_csv(ks, ns, advisory)
        self.catalog.write_file(f"{REPORT_DIR}/{step.name}.csv", text)
        self.lines.append(f"bounds {step.name}: {len(ks) * len(ns)} rows")

    def crosscheck(self, step: Step) -> None:
        p = step.params
        summary = crosscheck_wheels(
            samples=_int(p, "samples", 20),
            order=_int(p, "order", 9),
            ns=_range(p.get("n", "5:7")),
            seed=self.cfg.seed,
            threads=self.threads,
        )
        self.catalog.write_file(f"{REPORT_DIR}/{step.name}.txt", summary.text())
        self.lines.append(f"crosscheck {step.name}: mismatches={summary.mismatches}")
        if summary.mismatches:
            self.failed = True

    def run_step(self, step: Step) -> None:
        log.debug("step %s %s", step.kind, step.name)
        getattr(self, step.kind)(step)


def _range(text: str) -> list[int]:
    """'7', '7:10' (inclusive) or '7,9,11'."""
    text = str(text).strip()
    try:
        if ":" in text:
            a, b = text.split(":")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad integer range {text!r}") from None


def bounds_rows(ks, ns, advisory=False) -> list[dict]:
    """Bracket rows; advisory rows carry their warning in ``notes``."""
    rows = []
    for k in ks:
        for n in ns:
            if k == 2:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", bounds.AdvisoryWarning)
                    rep = bounds.two_color_wheel_bounds(n, advisory=advisory)
            else:
                rep = bounds.k_color_wheel_bounds(k, n)
            rows.append(rep.row())
    return rows


BOUNDS_COLUMNS = ["k", "n", "lower", "lower_tag", "upper", "upper_tag", "notes"]


def bounds_csv(ks, ns, advisory=False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BOUNDS_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(bounds_rows(ks, ns, advisory))
    return buf.getvalue()


@dataclass
class CrosscheckSummary:
    samples: int
    order: int
    ns: list[int]
    seed: int
    checks: int = 0
    mismatches: int = 0

    def text(self) -> str:
        return (
            f"crosscheck wheels: samples={self.samples} order={self.order} "
            f"n={','.join(map(str, self.ns))} seed={self.seed} checks={self.checks} "
            f"mismatches={self.mismatches}\n"
        )


def random_coloring(rng: np.random.Generator, order: int, k: int = 2) -> EdgeColoring:
    return EdgeColoring(order, k, rng.integers(0, k, order * (order - 1) // 2))


def random_graph(rng: np.random.Generator, order: int, p: float) -> Graph:
    m = np.triu(rng.random((order, order)) < p, 1)
    return Graph.from_adjacency(m | m.T)


def crosscheck_wheels(samples, order, ns, seed, threads=None) -> CrosscheckSummary:
    rng = np.random.default_rng(seed)
    summary = CrosscheckSummary(samples, order, list(ns), seed)
    for _ in range(samples):
        coloring = random_coloring(rng, order)
        for n in ns:
            for c in range(2):
                fast = detection.find_mono_wheel(coloring, n, c, threads) is not None
                summary.checks += 1
                summary.mismatches += fast != oracles.has_wheel(coloring, n, c)
    return summary


def run_pipeline(cfg: PipelineConfig, output_dir=None, threads: int | None = None) -> RunResult:
    out = Path(output_dir or cfg.output_dir or Path.cwd() / "wheelramsey-out")
    runner = _Runner(cfg, out, threads)
    runner.catalog.ensure()
    status = EXIT_OK
    try:
        waves = cfg.waves()
        pool_size = threads or detection.default_threads()
        for wave in waves:
            if pool_size > 1 and len(wave) > 1:
                with ThreadPoolExecutor(pool_size) as pool:
                    list(pool.map(runner.run_step, wave))
            else:
                for step in wave:
                    runner.run_step(step)
    except IntegrityError as exc:
        runner.errors.append(f"ERROR: {IntegrityError.code} {exc}")
        status = EXIT_INTEGRITY
    except (ConfigError, DomainError, KeyError) as exc:
        runner.errors.append(f"ERROR: CONFIG {exc}")
        status = EXIT_USAGE
    if status == EXIT_OK and runner.failed:
        status = EXIT_FAIL
    # keep the log order stable regardless of which worker finished first
    position = {f"{s.kind} {s.name}": i for i, s in enumerate(cfg.steps)}
    runner.lines.sort(key=lambda line: position[line.split(":")[0]])
    runner.catalog.write_manifest(cfg.name, cfg.seed, [f"{s.kind} {s.name}" for s in cfg.steps], status)
    return RunResult(status, out, runner.errors, runner.lines)
