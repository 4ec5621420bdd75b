"""
observability/__init__.py

PURPOSE: Opt-in tracing and timing of long-running numerical operations.
DEPENDENCIES: opentelemetry-api, opentelemetry-sdk (optional)

ARCHITECTURE NOTES:
- Works without otel packages installed (no-op spans, DEBUG timings only)
- Console export when enabled without an endpoint
- OTLP export when FRACPK_OTEL_ENDPOINT is set
"""

from fracpoincare.observability.telemetry import (
    get_tracer,
    init_telemetry,
    shutdown_telemetry,
    traced,
    tracing_enabled,
)

__all__ = ["get_tracer", "init_telemetry", "shutdown_telemetry", "traced", "tracing_enabled"]
