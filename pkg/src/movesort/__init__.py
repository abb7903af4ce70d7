"""In-place sorting with few comparisons and a linear number of element moves.

Quick use::

    >>> from movesort import sort
    >>> report = sort([3, 1, 2])
    >>> report.output
    [1, 2, 3]
"""

__version__ = "0.1.0"

from .driver import DriverState, sort, sort_array
from .metered import ContractViolation, CostReport, MeteredArray
from .params import SortParams, derive

__all__ = [
    "ContractViolation",
    "CostReport",
    "DriverState",
    "MeteredArray",
    "SortParams",
    "derive",
    "sort",
    "sort_array",
]
