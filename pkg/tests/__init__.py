"""leibniz-nf test suite."""
