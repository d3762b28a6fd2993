"""Connection languages, circuit constructions and witness checking for
parameterized Boolean circuit families."""

__version__ = "0.1.0"
