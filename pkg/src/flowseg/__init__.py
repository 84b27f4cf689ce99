"""Optical-flow based moving object detection for moving-camera video."""

__version__ = "0.1.0"
