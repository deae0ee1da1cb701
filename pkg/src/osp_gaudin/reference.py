"""Hand-written kernel states for two and three sites, with a_0 = 1.

Each state is a list of ``(coefficient, site labels)`` terms.  A commonly
quoted form of Psi(2,3;1,2;0,0) has the signs of its last two terms flipped
relative to the state that actually lies in the kernel; that form is kept in
``PRINTED_ERRATA`` and the corrected one in ``REFERENCE_KERNEL_STATES``.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .exact_linalg import StateVector
from .graded_tensor import state_from_terms

Terms = List[Tuple[int, Sequence[str]]]

REFERENCE_KERNEL_STATES: Dict[int, Dict[tuple, Terms]] = {
    2: {
        (): [(1, ("e2", "e2"))],
        ((1, 2),): [(1, ("e3", "e2")), (-1, ("e2", "e3"))],
        ((2, 2),): [(1, ("e1", "e2")), (-1, ("e3", "e3")), (-1, ("e2", "e1"))],
    },
    3: {
        (): [(1, ("e2", "e2", "e2"))],
        ((1, 2),): [(1, ("e3", "e2", "e2")), (-1, ("e2", "e3", "e2"))],
        ((1, 3),): [(1, ("e3", "e2", "e2")), (1, ("e2", "e3", "e2")), (-2, ("e2", "e2", "e3"))],
        ((2, 2),): [(1, ("e1", "e2", "e2")), (-1, ("e3", "e3", "e2")), (-1, ("e2", "e1", "e2"))],
        ((2, 3),): [
            (1, ("e1", "e2", "e2")),
            (1, ("e2", "e1", "e2")),
            (-1, ("e3", "e2", "e3")),
            (-1, ("e2", "e3", "e3")),
            (-2, ("e2", "e2", "e1")),
        ],
        ((1, 2), (2, 3)): [
            (1, ("e1", "e2", "e2")),
            (-2, ("e3", "e3", "e2")),
            (-1, ("e2", "e1", "e2")),
            (1, ("e3", "e2", "e3")),
            (-1, ("e2", "e3", "e3")),
        ],
        ((1, 2), (3, 3)): [
            (1, ("e3", "e1", "e2")),
            (-1, ("e3", "e2", "e1")),
            (-1, ("e1", "e3", "e2")),
            (1, ("e2", "e3", "e1")),
            (1, ("e1", "e2", "e3")),
            (-1, ("e2", "e1", "e3")),
            (-2, ("e3", "e3", "e3")),
        ],
    },
}

PRINTED_ERRATA: Dict[int, Dict[tuple, Terms]] = {
    3: {
        ((1, 2), (2, 3)): [
            (1, ("e1", "e2", "e2")),
            (-2, ("e3", "e3", "e2")),
            (-1, ("e2", "e1", "e2")),
            (-1, ("e3", "e2", "e3")),
            (1, ("e2", "e3", "e3")),
        ],
    },
}


def reference_state(n_sites: int, steps: tuple) -> StateVector:
    return state_from_terms(REFERENCE_KERNEL_STATES[n_sites][steps])


def printed_state(n_sites: int, steps: tuple) -> StateVector:
    """The state as commonly quoted (differs from the reference only for errata)."""
    table = PRINTED_ERRATA.get(n_sites, {})
    terms = table.get(steps, REFERENCE_KERNEL_STATES[n_sites][steps])
    return state_from_terms(terms)
