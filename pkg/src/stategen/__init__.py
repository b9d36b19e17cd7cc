"""Kauffman bracket and Jones polynomial state-sum tools."""
