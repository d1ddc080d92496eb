"""Deterministic interrupt delivery simulator and benchmark harness.

The package splits along the delivery path: `gic` models the controller
state machine, `timing` prices each leg of the path, `stimulus` shapes the
measurement patterns, `sim` ties them into a discrete-event run producing a
`trace` capture, `analysis` turns captures into latency/throughput reports,
and `scenarios` names the measurement configurations and benchmarks.
"""

from .analysis import SummaryReport, latency_report, throughput_report
from .gic import Gic, InterruptSpec, Lifecycle, LineOutcome, Trigger
from .scenarios import ScenarioConfig, benchmark, merge, resolve, test_case
from .sim import Simulator, run
from .stimulus import Mode, StimulationPattern, latency_pattern, \
    throughput_pattern
from .timing import CacheMode, StackProfile, TimingModel, DEFAULT_TIMING
from .trace import TraceCapture, TraceEvent

__all__ = [
    "CacheMode", "DEFAULT_TIMING", "Gic", "InterruptSpec", "Lifecycle",
    "LineOutcome", "Mode", "ScenarioConfig", "StackProfile",
    "StimulationPattern", "SummaryReport", "Simulator", "TimingModel",
    "TraceCapture", "TraceEvent", "Trigger", "benchmark", "latency_pattern",
    "latency_report", "merge", "resolve", "run", "test_case",
    "throughput_pattern", "throughput_report",
]

__version__ = "0.1.0"
