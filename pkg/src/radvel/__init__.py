"""Phase-based FMCW radar ego-velocity estimation."""
