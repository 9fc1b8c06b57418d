from dataclasses import dataclass, field

__all__ = ["Outcome"]


@dataclass
class Outcome:
    """What a scenario leaves behind besides its CSV files"""

    results: dict = field(default_factory=dict)
    "dict: scalar results, copied into the manifest"

    files: list = field(default_factory=list)
    "list: written data files"

    def add(self, **results):
        self.results.update(results)
        return self
