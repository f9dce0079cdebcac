"""coblekit: exact-arithmetic verification of the Igusa quartic geometry,
its (15_4, 10_6) configuration of singular lines and special hyperplanes,
and the group/lattice arithmetic behind the rigidity classification of
quartic double solids with 15 nodes."""

__version__ = "0.1.0"
