"""storyweave: recursive divergence/convergence scaffolding for story ideation.

Highlight a passage, probe for high-level modification directions, expand
them recursively, select several, synthesize concrete variations, and splice
the chosen one back into the draft — all event-sourced and replayable.
"""

from .cart import DirectionNode, DirectionTree, ExplorationPolicy
from .document import Revision, Span, StoryDocument
from .gateway import GenerationResult, MockProvider, ProviderConfig, make_provider
from .mutants import MutantTracker, Variation
from .prompting import CompiledPrompt, ParsedDirections, ParsedVariation
from .session import Session, SessionEvent, TelemetrySummary, replay, telemetry_from_events

__version__ = "0.1.0"

__all__ = [
    "CompiledPrompt",
    "DirectionNode",
    "DirectionTree",
    "ExplorationPolicy",
    "GenerationResult",
    "MockProvider",
    "MutantTracker",
    "ParsedDirections",
    "ParsedVariation",
    "ProviderConfig",
    "Revision",
    "Session",
    "SessionEvent",
    "Span",
    "StoryDocument",
    "TelemetrySummary",
    "Variation",
    "make_provider",
    "replay",
    "telemetry_from_events",
]
