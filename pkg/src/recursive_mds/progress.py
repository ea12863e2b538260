"""Module for the progress hub.

You don't need to import from this module. You can simply do:
`from recursive_mds import progress_hub`.
It is a singleton. Do not use the ProgressHub class directly.

The search and the oracle publish an event on the hub after every unit of work
(one value of z, one oracle chunk). Nothing in the package depends on anyone
listening; the CLI subscribes a logging callback when run with `-v`."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import rich.repr

# Library imports
from ezpubsub import Signal

__all__ = [
    "SearchProgress",
    "OracleProgress",
    "progress_hub",
]


@dataclass(frozen=True)
class SearchProgress:
    """Published by the BCH search once all windows for one value of z are done."""

    k: int
    s: int
    z: int
    records_found: int
    "Coercible windows found for this z (before deduplication)."
    z_done: int
    z_total: int


@dataclass(frozen=True)
class OracleProgress:
    """Published by the exhaustive oracle after each scanned chunk of candidates."""

    k: int
    s: int
    next_index: int
    "Index of the first candidate not scanned yet (candidates are scanned in lexicographic order)."
    total: int
    candidates_tested: int
    solutions_found: int


class ProgressHub:
    """! Do not import this class directly. Use the `progress_hub` instance instead."""

    def __init__(self) -> None:
        super().__init__()

        # ~ Signals ~ #

        self.signal_search_progress: Signal[SearchProgress] = Signal("search-progress")
        self.signal_oracle_progress: Signal[OracleProgress] = Signal("oracle-progress")

    def publish_search(self, event: SearchProgress) -> None:
        # called by bch.search()
        self.signal_search_progress.publish(event)

    def publish_oracle(self, event: OracleProgress) -> None:
        # called by oracle.exhaustive_companion_search()
        self.signal_oracle_progress.publish(event)

    def __rich_repr__(self) -> rich.repr.Result:
        yield "signals", ("search-progress", "oracle-progress")


progress_hub = ProgressHub()  # ~ <-- Create the hub instance.
"""Global progress hub. Subscribe to its signals to follow long runs:

```python
from recursive_mds import progress_hub
progress_hub.signal_search_progress.subscribe(print)
```
"""
