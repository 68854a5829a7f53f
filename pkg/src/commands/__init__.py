"""CLI command modules; each exposes setup(subparsers)"""
