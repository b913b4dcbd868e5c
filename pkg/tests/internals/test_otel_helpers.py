import os
from unittest.mock import patch

from opentelemetry.sdk.trace.export.in_memory_span_exporter import InMemorySpanExporter

from neqr_edge.internals.otel_helpers import OtelWrapper, Settings


class TestOtelWrapper:
    """Test cases for OtelWrapper."""

    def test_settings_from_environment(self):
        with patch.dict(
            os.environ,
            {
                "OTEL_SERVICE_NAME": "edge-tests",
                "OTEL_COLLECTOR_ENDPOINT": "http://collector:4317",
            },
        ):
            settings = Settings()
        assert settings.otel_service_name == "edge-tests"
        assert settings.otel_collector_endpoint == "http://collector:4317"

    def test_initialize_exports_spans(self):
        exporter = InMemorySpanExporter()
        wrapper = OtelWrapper(settings=Settings(otel_service_name="edge-tests"))
        provider = wrapper.initialize(exporter=exporter)
        assert provider.resource.attributes["service.name"] == "edge-tests"

        with provider.get_tracer(__name__).start_as_current_span("stage"):
            pass
        provider.force_flush()
        assert [span.name for span in exporter.get_finished_spans()] == ["stage"]
        provider.shutdown()

    def test_get_tracer(self):
        tracer = OtelWrapper(settings=Settings()).get_tracer(__name__)
        with tracer.start_as_current_span("noop") as span:
            assert span is not None
