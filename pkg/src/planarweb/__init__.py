"""planarweb: exact tools for abelian functional equations and planar webs."""

__version__ = "0.1.0"
