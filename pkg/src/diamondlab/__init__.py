"""Diamond counting and extremal tournaments via skew Seidel matrices."""

__version__ = "0.1.0"
