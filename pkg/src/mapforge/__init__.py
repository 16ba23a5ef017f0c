"""Graphs embedded on surfaces as 3-edge-colored cubic graphs."""
