from enum import Enum


class Procedure(Enum):
    X = "X"
    X_STAR = "X*"
    X_STAR_STAR = "X**"

    @staticmethod
    def from_string(procedure: str) -> "Procedure":
        """
        Accepts the tag itself or the command-line spelling ("x", "x-star", "x-star-star").
        """
        normalized = procedure.strip().lower().replace("_", "-")
        normalized = normalized.replace("-star", "*")
        return Procedure(normalized.upper())

    @property
    def slug(self) -> str:
        return self.value.lower().replace("*", "-star")
