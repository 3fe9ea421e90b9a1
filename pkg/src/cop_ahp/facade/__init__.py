"""Command-line and HTTP facade over the toolkit."""
