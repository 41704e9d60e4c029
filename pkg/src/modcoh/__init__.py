"""modcoh: a workbench for the mod-p cohomology of finite groups."""

__version__ = "0.1.0"
