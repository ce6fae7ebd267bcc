"""Toolchain for IDTA submodel-template specifications.

Table grids and AASX packages are ingested into an ``ExtractedSpec``,
normalized into a versioned ``Model`` and turned into builder/accessor APIs,
example-seeded tests, lint reports and overlap diffs.
"""

__version__ = "0.1.0"
