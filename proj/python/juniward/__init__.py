"""J-UNIWARD costmaps with the original and the corrected residual window."""

from ._core import (
    CostMap,
    DctContainer,
    IoError,
    ProbMap,
    ValidationError,
    WindowMode,
    block_costs,
    compare,
    compute_costmap,
    costmap_oracle,
    decompress,
    filter_bank,
    forward_quantize,
    quality_sweep,
    quality_table,
    read_container,
    simulate,
    solve_lambda,
    synth_cover,
    window_bounds,
    write_container,
)

__all__ = [
    "CostMap",
    "DctContainer",
    "IoError",
    "ProbMap",
    "ValidationError",
    "WindowMode",
    "block_costs",
    "compare",
    "compute_costmap",
    "costmap_oracle",
    "decompress",
    "filter_bank",
    "forward_quantize",
    "quality_sweep",
    "quality_table",
    "read_container",
    "simulate",
    "solve_lambda",
    "synth_cover",
    "window_bounds",
    "write_container",
]
