"""Rule-based language identification for Hindi and Magahi (Devanagari)."""

from magahi_lid.classifier import Model, Thresholds, Verdict, classify, classify_batch, load_model
from magahi_lid.lexicon import Language

__all__ = [
    "Language",
    "Model",
    "Thresholds",
    "Verdict",
    "classify",
    "classify_batch",
    "load_model",
]

__version__ = "0.1.0"
