"""Run manifests: config snapshot plus input/output digests for every run.

A manifest is written beside each subcommand's primary output as
``<output>.run.json``. Two runs with the same config snapshot and input
digests must produce the same output digests; wall time is recorded for
bookkeeping and is the only field allowed to differ.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

VERSION = "0.1.0"


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int | None
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    wall_time_s: float = 0.0
    version: str = VERSION

    def add_input(self, path: str | Path) -> None:
        self.inputs[str(path)] = sha256_file(path)

    def add_output(self, path: str | Path) -> None:
        self.outputs[str(path)] = sha256_file(path)

    def write(self, path: str | Path) -> None:
        doc = {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "wall_time_s": round(self.wall_time_s, 3),
            "version": self.version,
        }
        Path(path).write_text(
            json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )


def manifest_path_for(output: str | Path) -> Path:
    return Path(str(output) + ".run.json")
