from functools import lru_cache

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, SpanExporter
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    otel_service_name: str = "neqr-edge"
    otel_collector_endpoint: str = "http://localhost:4317"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
    )


@lru_cache
def get_otel_settings() -> Settings:
    """Get OpenTelemetry settings."""
    return Settings()


class OtelWrapper:
    """Installs a global tracer provider so pipeline stage spans are exported.

    Without ``initialize`` the spans opened by the pipeline are no-ops.
    """

    def __init__(
        self,
        settings: Settings = None,
    ):
        if settings is None:
            settings = get_otel_settings()
        self.settings = settings

    def initialize(self, exporter: SpanExporter | None = None) -> TracerProvider:
        provider = TracerProvider(
            resource=Resource(
                attributes={
                    "service.name": self.settings.otel_service_name,
                }
            )
        )
        if exporter is None:
            exporter = OTLPSpanExporter(
                endpoint=self.settings.otel_collector_endpoint,
            )
        provider.add_span_processor(
            span_processor=BatchSpanProcessor(exporter),
        )
        trace.set_tracer_provider(provider)
        return provider

    def get_tracer(self, name: str) -> trace.Tracer:
        return trace.get_tracer(name)
