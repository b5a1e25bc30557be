"""Model management and decision support for DL-on-IoT optimization models."""

__version__ = "0.1.0"
