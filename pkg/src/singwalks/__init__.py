"""Exact enumeration, closed forms and identity checks for the five singular quadrant walk models."""

from .models import ModelSpec, all_models, get_model
from .oracle import count_walks
from .transfer import endpoint_vector, q_half

__version__ = "0.1.0"

__all__ = ["ModelSpec", "all_models", "count_walks", "endpoint_vector", "get_model", "q_half"]
