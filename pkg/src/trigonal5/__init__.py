"""Exact enumeration and classification of superspecial trigonal genus-5 curves
via their singular quintic plane models over small finite fields."""

__version__ = "0.1.0"
