from .render import PlotJob, SchemaError, render

__version__ = "0.1.0"

__all__ = ["PlotJob", "SchemaError", "render"]
