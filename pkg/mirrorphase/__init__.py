"""MirrorPhase: early-stopped mirror descent for noisy sparse phase retrieval."""

# Library version, echoed into every report.
__version__: str = "1.0.0"

# Version of the JSON/CSV report layout.
SCHEMA_VERSION: int = 1
