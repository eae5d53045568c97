from src.config import RunConfig

from .writer import ArtifactWriter


def make_artifact_writer(config: RunConfig) -> ArtifactWriter:
    """Create a writer for the resolved run configuration."""
    return ArtifactWriter(config.resolved())
