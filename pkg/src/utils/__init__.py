"""Configuration, errors, bit utilities and work budgets"""
