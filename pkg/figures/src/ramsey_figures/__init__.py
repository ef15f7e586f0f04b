"""Figure rendering for brillouin-ramsey CSV artifacts."""

__version__ = "0.1.0"

from .render import FigureJob, RenderError, read_artifact, render

__all__ = ["FigureJob", "RenderError", "read_artifact", "render"]
