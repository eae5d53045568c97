import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from src.config import RunConfig
from src.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class ArtifactWriter:
    """Writes command outputs under one output directory, each JSON artifact stamped with the resolved config."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.output_dir = Path(config.output_dir)

    def input_hash(self, inputs: Iterable[Path] = ()) -> str:
        """SHA-256 over the bytes of every input in sorted path order, or over the config when there are none.

        :raises ConfigurationError: When an input file cannot be read
        """
        paths = sorted(Path(p).resolve() for p in inputs)
        digest = hashlib.sha256()
        if not paths:
            digest.update(canonical_json(self.config.model_dump(mode="json")).encode("utf-8"))
            return digest.hexdigest()
        for path in paths:
            try:
                digest.update(path.read_bytes())
            except OSError as e:
                raise ConfigurationError(f"Could not read input {path}: {e}")
        return digest.hexdigest()

    def path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_json(self, command: str, name: str, payload: Dict[str, Any], inputs: Iterable[Path] = ()) -> Path:
        """Write ``{"command", "config", "input_hash", **payload}`` as UTF-8 JSON.

        :param name: File name inside the output directory
        :param inputs: Files the artifact was derived from
        :returns: Path of the written artifact
        """
        document = {
            "command": command,
            "config": self.config.model_dump(mode="json"),
            "input_hash": self.input_hash(inputs),
            **payload,
        }
        path = self.path(name)
        path.write_text(json.dumps(document, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        logger.info(f"Wrote {command} artifact {path}")
        return path

    def write_text(self, name: str, text: str) -> Path:
        path = self.path(name)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    def stamp(self, command: str, path: Path, inputs: Iterable[Path] = ()) -> Path:
        """Sidecar ``<file>.meta.json`` carrying the config and input hash of a CSV or text output.

        :param path: Output already written inside the output directory
        :returns: Path of the sidecar
        """
        path = Path(path)
        payload = {"file": path.name, "file_sha256": hashlib.sha256(path.read_bytes()).hexdigest()}
        return self.write_json(command, f"{path.name}.meta.json", payload, inputs=inputs)


def read_artifact(path: Path, command: Optional[str] = None) -> Dict[str, Any]:
    """Load a JSON artifact, optionally checking which command produced it.

    :raises ConfigurationError: When the file is missing, not JSON, or from another command
    """
    path = Path(path)
    if not path.exists():
        logger.error(f"Artifact not found: {path}")
        raise ConfigurationError(f"Artifact not found: {path}")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Artifact {path} is not valid JSON: {e}")
    if command is not None and document.get("command") != command:
        raise ConfigurationError(f"Artifact {path} was written by {document.get('command')!r}, expected {command!r}")
    return document
