"""Asynchronous rewriting of port DAGs whose vertices are named space-time events."""
