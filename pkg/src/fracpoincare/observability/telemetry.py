"""
telemetry.py

PURPOSE: Optional OpenTelemetry tracing around long-running numerical operations.
DEPENDENCIES: opentelemetry-api, opentelemetry-sdk, opentelemetry-exporter-otlp (all optional)

ARCHITECTURE NOTES:
Expensive entry points (quotient sequences, P0 assembly, ladders, cylinder
sweeps, kernel verification, constant regeneration) carry @traced. The
decorator always times the call and logs the duration at DEBUG; when tracing
is on it also opens a span tagged with the numerical parameters of the call.

Tracers are resolved per call, not at import, because the decorators run
before the CLI reads FRACPK_OTEL_*. Without the optional packages, or with
tracing disabled, spans are no-ops and results never depend on telemetry.
"""

from __future__ import annotations

import functools
import inspect
import logging
import time
from collections.abc import Callable
from typing import TYPE_CHECKING, Any, ParamSpec, Protocol, TypeVar

if TYPE_CHECKING:
    from fracpoincare.config import OpenTelemetrySettings

logger = logging.getLogger(__name__)

P = ParamSpec("P")
R = TypeVar("R")

# Parameters worth tagging a span with; values must be int, float or str.
SPAN_PARAMETERS = ("s", "k", "k_max", "count", "mode", "samples", "cases", "seed", "threads")

_provider: Any | None = None


class Span(Protocol):
    def __enter__(self) -> Span: ...
    def __exit__(self, *args: object) -> None: ...
    def set_attribute(self, key: str, value: object) -> None: ...
    def record_exception(self, exception: BaseException) -> None: ...


class Tracer(Protocol):
    def start_as_current_span(self, name: str) -> Span: ...


class NoOpSpan:
    """Span used when tracing is off."""

    def __enter__(self) -> NoOpSpan:
        return self

    def __exit__(self, *args: object) -> None:
        pass

    def set_attribute(self, key: str, value: object) -> None:  # noqa: ARG002
        pass

    def record_exception(self, exception: BaseException) -> None:  # noqa: ARG002
        pass


class NoOpTracer:
    def start_as_current_span(self, name: str) -> Span:  # noqa: ARG002
        return NoOpSpan()


def tracing_enabled() -> bool:
    return _provider is not None


def get_tracer(name: str) -> Tracer:
    """The module tracer when tracing is on, else a no-op tracer."""
    if _provider is None:
        return NoOpTracer()
    from opentelemetry import trace

    tracer: Tracer = trace.get_tracer(name)
    return tracer


def init_telemetry(settings: OpenTelemetrySettings) -> None:
    """
    Install a tracer provider when FRACPK_OTEL_ENABLED is set.

    Spans go to the OTLP endpoint when one is configured, else to the console.
    Missing packages only produce a warning. Calling it again is a no-op.
    """
    global _provider

    if _provider is not None or not settings.enabled:
        return
    try:
        from opentelemetry import trace
        from opentelemetry.sdk.resources import Resource
        from opentelemetry.sdk.trace import TracerProvider
        from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter
    except ImportError:
        logger.warning(
            "Tracing requested but OpenTelemetry is missing; "
            "install with: pip install fracpoincare[observability]"
        )
        return

    provider = TracerProvider(resource=Resource.create({"service.name": settings.service_name}))
    exporter: Any = ConsoleSpanExporter()
    if settings.endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

            exporter = OTLPSpanExporter(endpoint=settings.endpoint)
        except ImportError:
            logger.warning("OTLP exporter missing; spans go to the console")
    provider.add_span_processor(BatchSpanProcessor(exporter))
    trace.set_tracer_provider(provider)
    _provider = provider
    logger.info(f"Tracing {settings.service_name} to {settings.endpoint or 'console'}")


def shutdown_telemetry() -> None:
    """Flush pending spans; safe when tracing never started."""
    global _provider

    if _provider is not None:
        _provider.shutdown()
    _provider = None


def span_attributes(bound: inspect.BoundArguments) -> dict[str, int | float | str]:
    """The SPAN_PARAMETERS of a call, prefixed with "fracpk."."""
    attributes: dict[str, int | float | str] = {}
    for key in SPAN_PARAMETERS:
        value = bound.arguments.get(key)
        if isinstance(value, bool):
            continue
        if isinstance(value, int | float | str):
            attributes[f"fracpk.{key}"] = value
    return attributes


def traced(span_name: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """Time a call, and wrap it in a span tagged with its numerical parameters."""

    def decorator(func: Callable[P, R]) -> Callable[P, R]:
        signature = inspect.signature(func)

        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            started = time.perf_counter()
            with get_tracer(func.__module__).start_as_current_span(span_name) as span:
                if tracing_enabled():
                    for key, value in span_attributes(signature.bind(*args, **kwargs)).items():
                        span.set_attribute(key, value)
                try:
                    return func(*args, **kwargs)
                except Exception as e:
                    span.record_exception(e)
                    raise
                finally:
                    elapsed = time.perf_counter() - started
                    span.set_attribute("fracpk.seconds", elapsed)
                    logger.debug(f"{span_name} took {elapsed:.3f}s")

        return wrapper

    return decorator
