"""Bad domains, Kauffman states and chain-level thickness bounds for knot diagrams."""

__version__ = "0.1.0"
