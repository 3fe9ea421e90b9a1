"""cop-ahp: order-preservation diagnostics, prioritization, and repair for pairwise comparison matrices."""

__version__ = "1.0.0"
