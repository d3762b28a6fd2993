"""Circuit-family constructions: substitution, the layered gate simulation
and its path-addressable variant."""
