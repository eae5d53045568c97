from .factory import make_artifact_writer
from .writer import ArtifactWriter, canonical_json, read_artifact

__all__ = ["ArtifactWriter", "canonical_json", "make_artifact_writer", "read_artifact"]
