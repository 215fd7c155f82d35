"""Hypergraph polynomial toolkit"""
