"""Capability charts and chart areas of three-terminal multiplexed AC-DC-AC converters."""
from .capability import (
    ConverterSizing,
    MuxConfiguration,
    RegionDecomposition,
    canonicalize,
    cca_closed_form,
    cca_from_chart,
    chart,
    contains,
    enumerate_configurations,
    feeder_capacity,
    configuration_polygon,
    is_convex_chart,
    max_power_transfer,
    perfect_boundary,
    region_decomposition,
)
from .errors import InvalidInputError, UnsupportedInputError
from .geometry import ChartPolygon, PlanePoint, clip_convex, nominal_to_plane, plane_to_nominal, polygon_area
from .oracle import MonteCarloEstimate, cca_montecarlo
from .optimizer import HeatmapGrid, OptimizationResult, heatmap, optimize_convex, optimize_mpt, optimize_unconstrained

__version__ = "0.1.0"
