"""
Process-level settings read from the environment.
"""

import dataclasses
import logging
import os
from typing import Dict, Optional, Union

from .base import cast_if_not_none


@dataclasses.dataclass(eq=True, frozen=True)
class RuntimeParameters:
    "Encapsulates settings that apply to a whole run rather than a single experiment."

    threads: Optional[int] = dataclasses.field(
        default_factory=lambda: cast_if_not_none(int, os.getenv("LATTICE_THREADS"))
    )
    log_level: str = dataclasses.field(
        default_factory=lambda: os.getenv("LATTICE_LOG_LEVEL", "WARNING").upper()
    )

    def worker_count(self, requested: Optional[int] = None) -> int:
        "Number of workers; the environment takes precedence over the command line."

        count = self.threads if self.threads is not None else requested
        if count is None:
            return 1
        if count < 1:
            raise ValueError(f"worker count must be positive: {count}")
        return count

    def configure_logging(self) -> None:
        level = logging.getLevelName(self.log_level)
        if not isinstance(level, int):
            raise ValueError(f"unknown log level: {self.log_level}")
        logging.basicConfig(level=level, format="%(levelname)s %(message)s")

    def as_kwargs(self) -> Dict[str, Union[str, int, None]]:
        "Settings as keyword arguments."

        return dataclasses.asdict(self)
