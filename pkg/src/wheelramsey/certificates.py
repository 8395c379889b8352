"""Certificates: a coloring file, a claim about it and the verdict.

Certificate files hold no timestamps, so reruns produce identical bytes;
timestamps live in the catalog manifest.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .detection import DetectionReport, pattern_label, verify_pattern_free, verify_wheel_free
from .formats import read_coloring, sha256_file

CERT_DIR = "certificates"
COLORING_DIR = "colorings"
REPORT_DIR = "reports"
MANIFEST = "manifest.json"


class IntegrityError(Exception):
    """Stored hash does not match the file it refers to."""

    code = "HASH_MISMATCH"


@dataclass
class Certificate:
    id: str
    coloring: str
    sha256: str
    claim: dict
    status: str = "unverified"
    witness: list | None = None
    method_census: dict = field(default_factory=dict)
    blockspec: dict | None = None
    toolchain: str = f"wheelramsey {__version__}"

    def to_json(self) -> str:
        obj = {
            "id": self.id,
            "coloring": self.coloring,
            "sha256": self.sha256,
            "claim": self.claim,
            "status": self.status,
            "witness": self.witness,
            "method_census": self.method_census,
            "blockspec": self.blockspec,
            "toolchain": self.toolchain,
        }
        return json.dumps(obj, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        obj = json.loads(text)
        return cls(**obj)

    def coloring_path(self, root: Path) -> Path:
        return (root / self.coloring).resolve()


def claim_for(pattern: str, n: int | None, k: int, order: int) -> dict:
    if pattern == "wheel":
        statement = f"no monochromatic W{n}, k={k}"
        label = f"wheel({n})"
    else:
        label = pattern_label(pattern)
        statement = f"no monochromatic {label}, k={k}"
    return {"pattern": label, "n": n, "k": k, "order": order, "statement": statement}


def run_claim(coloring, claim: dict, threads: int | None = None) -> DetectionReport:
    label = claim["pattern"]
    if label.startswith("wheel("):
        return verify_wheel_free(coloring, int(claim["n"]), threads=threads)
    pattern = label.replace("(", ":").rstrip(")")
    return verify_pattern_free(coloring, pattern)


def apply_report(cert: Certificate, report: DetectionReport) -> Certificate:
    """Only a completed verifier run may set the status."""
    cert.status = "pass" if report.passed else "fail"
    cert.method_census = report.census()
    cert.witness = None
    for r in report.results:
        if not r.absent:
            w = r.witness
            cert.witness = (
                [w.color, w.center, *w.rim] if hasattr(w, "rim") else [r.color, *w]
            )
            break
    return cert


def check_integrity(cert: Certificate, root: Path) -> Path:
    path = cert.coloring_path(root)
    if not path.exists():
        raise IntegrityError(f"coloring file missing: {cert.coloring}")
    actual = sha256_file(path)
    if actual != cert.sha256:
        raise IntegrityError(f"expected={cert.sha256} actual={actual} file={cert.coloring}")
    return path


def reverify(cert_path, threads: int | None = None) -> tuple[Certificate, DetectionReport]:
    """Re-check a certificate from its coloring file alone."""
    cert_path = Path(cert_path)
    cert = Certificate.from_json(cert_path.read_text())
    root = cert_path.parent.parent if cert_path.parent.name == CERT_DIR else cert_path.parent
    path = check_integrity(cert, root)
    coloring = read_coloring(path)
    report = run_claim(coloring, cert.claim, threads)
    return cert, report


class Catalog:
    """Certificates under one output directory; writes go through one lock."""

    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()

    @property
    def cert_dir(self) -> Path:
        return self.root / CERT_DIR

    def ensure(self) -> None:
        for sub in (CERT_DIR, COLORING_DIR, REPORT_DIR):
            (self.root / sub).mkdir(parents=True, exist_ok=True)

    def write_file(self, relpath: str, data: bytes | str) -> Path:
        path = self.root / relpath
        with self._lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            if isinstance(data, str):
                data = data.encode()
            path.write_bytes(data)
        return path

    def save(self, cert: Certificate) -> Path:
        return self.write_file(f"{CERT_DIR}/{cert.id}.json", cert.to_json())

    def ids(self) -> list[str]:
        if not self.cert_dir.exists():
            return []
        return sorted(p.stem for p in self.cert_dir.glob("*.json"))

    def load(self, cert_id: str) -> Certificate:
        path = self.cert_dir / f"{cert_id}.json"
        if not path.exists():
            raise KeyError(cert_id)
        return Certificate.from_json(path.read_text())

    def certificates(self) -> list[Certificate]:
        return [self.load(i) for i in self.ids()]

    def write_manifest(self, name: str, seed: int, steps: list[str], exit_status: int) -> Path:
        now = datetime.now(timezone.utc).isoformat(timespec="seconds")
        manifest = {
            "pipeline": name,
            "seed": seed,
            "toolchain": f"wheelramsey {__version__}",
            "steps": steps,
            "certificates": {c.id: c.status for c in self.certificates()},
            "exit_status": exit_status,
            "timestamps": {"finished": now},
        }
        return self.write_file(MANIFEST, json.dumps(manifest, indent=2) + "\n")

    def gc(self) -> list[Path]:
        """Delete colorings and reports that neither a certificate nor a
        step of the last pipeline run refers to."""
        keep = set()
        for cert in self.certificates():
            keep.add(cert.coloring_path(self.root))
            stem = Path(cert.coloring).name.removesuffix(".json")
            keep.add((self.root / COLORING_DIR / f"{stem}.blocks.json").resolve())
            keep.add((self.root / REPORT_DIR / f"{cert.id}.txt").resolve())
        manifest = self.root / MANIFEST
        steps = json.loads(manifest.read_text()).get("steps", []) if manifest.exists() else []
        named = {s.split(" ", 1)[-1] for s in steps}
        for sub in (REPORT_DIR,):
            for p in (self.root / sub).glob("*") if (self.root / sub).exists() else ():
                if p.stem in named:
                    keep.add(p.resolve())
        removed = []
        with self._lock:
            for sub in (COLORING_DIR, REPORT_DIR):
                d = self.root / sub
                if not d.exists():
                    continue
                for p in sorted(d.iterdir()):
                    if p.is_file() and p.resolve() not in keep:
                        p.unlink()
                        removed.append(p)
        return removed
