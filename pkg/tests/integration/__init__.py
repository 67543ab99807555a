"""Integration tests for leibniz-nf."""
