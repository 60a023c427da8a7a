"""
Command groups for the command-line application.

Each group registers related subcommands and turns library results into
report payloads.
"""
