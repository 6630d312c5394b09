"""Selects the compiled oracle kernels when available."""

try:
    from ._kernels import oracle_pairs, oracle_twists

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    from ._kernels_py import oracle_pairs, oracle_twists

    BACKEND = "python"

__all__ = ["oracle_pairs", "oracle_twists", "BACKEND"]
