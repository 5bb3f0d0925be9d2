"""Rehabilitation of ruptured curvilinear structures in binary segmentation masks."""

__version__ = "0.1.0"
