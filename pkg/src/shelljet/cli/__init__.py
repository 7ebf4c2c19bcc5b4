"""Command-line front end and regression corpus."""
