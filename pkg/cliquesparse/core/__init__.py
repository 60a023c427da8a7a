"""
Core components: configuration, logging, exceptions, reports and the CLI application.
"""
