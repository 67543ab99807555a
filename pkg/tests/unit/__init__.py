"""Unit tests for leibniz-nf."""
