"""Kernel states, ladder states and closed-form eigenvalues.

A kernel (lowest-weight) state is labelled by a chain of pairs
``((m_1, s_1), ..., (m_l, s_l))``: ``m`` is the accumulated excitation and
``s`` the number of sites involved at that step.  Each step multiplies the
previous state by a combination of ``Delta^(s-1)(F+)`` and ``F+`` at site
``s``; the combination is the one annihilated by ``Delta^(s)(F-)``.  The full
eigenbasis is then obtained by applying ``Delta^(N)(F+)`` repeatedly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .algebra import site_generator
from .coproduct import HamiltonianParams, coproduct
from .exact_linalg import Scalar, StateVector, exact, solve_homogeneous
from .graded_tensor import embed_at_site

DEFAULT_MAX_SITES = 6

Step = Tuple[int, int]


class ChainError(ValueError):
    """A label chain violates the admissibility constraints."""


class ConstructionError(RuntimeError):
    """The kernel condition did not single out the expected coefficients."""


class SiteLimitError(ValueError):
    """Requested chain length exceeds the configured matrix-building limit."""


@dataclass(frozen=True, order=True)
class LabelChain:
    steps: Tuple[Step, ...]
    n_sites: int

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(tuple(p) for p in self.steps))
        problem = chain_problem(self.steps, self.n_sites)
        if problem:
            raise ChainError(problem)

    @property
    def m(self) -> int:
        """Total excitation ``m_l`` (0 for the pseudovacuum)."""
        return self.steps[-1][0] if self.steps else 0

    @property
    def flattened(self) -> Tuple[int, ...]:
        return tuple(x for step in self.steps for x in step)

    @property
    def spin(self) -> Fraction:
        return Fraction(self.n_sites - self.m, 2)

    @property
    def ladder_length(self) -> int:
        return 2 * self.n_sites - 2 * self.m + 1

    def label(self) -> str:
        inner = ";".join(f"{m},{s}" for m, s in reversed(self.steps))
        return f"Psi({inner + ';' if inner else ''}0,0)"

    def to_list(self) -> List[List[int]]:
        return [list(step) for step in self.steps]


@dataclass(frozen=True)
class EigenLabel:
    chain: LabelChain
    k: int

    def __post_init__(self):
        n, m = self.chain.n_sites, self.chain.m
        if not m <= self.k <= 2 * n - m:
            raise ChainError(f"k={self.k} outside {m}..{2 * n - m}")


@dataclass
class SpectrumRecord:
    label: EigenLabel
    vector: StateVector
    h_eigenvalue: int
    casimir_eigenvalues: Dict[int, int] = field(default_factory=dict)
    hamiltonian_eigenvalue: Scalar = 0


def chain_problem(steps, n_sites: int) -> str | None:
    """Describe why ``steps`` is not an admissible chain, or ``None``."""
    if n_sites < 1:
        return "need at least one site"
    m_prev = s_prev = 0
    for m, s in steps:
        if m - m_prev not in (1, 2):
            return f"excitation step {m_prev}->{m} is not 1 or 2"
        if s <= s_prev:
            return f"site labels must increase ({s_prev} then {s})"
        if not m <= s <= n_sites:
            return f"need m <= s <= N, got m={m}, s={s}, N={n_sites}"
        if s <= m_prev + 1:
            return f"need s > m_prev + 1, got s={s}, m_prev={m_prev}"
        m_prev, s_prev = m, s
    return None


def enumerate_label_chains(n_sites: int) -> List[LabelChain]:
    """All admissible chains, empty chain first, lexicographic on (m, s) pairs."""
    if n_sites < 1:
        raise ValueError("need at least one site")
    found: List[Tuple[Step, ...]] = []

    def grow(steps: Tuple[Step, ...], m_prev: int, s_prev: int) -> None:
        found.append(steps)
        for dm in (1, 2):
            m = m_prev + dm
            for s in range(max(s_prev + 1, m_prev + 2, m), n_sites + 1):
                grow(steps + ((m, s),), m, s)

    grow((), 0, 0)
    found.sort(key=lambda st: tuple(x for p in st for x in p))
    return [LabelChain(st, n_sites) for st in found]


def pseudovacuum(n_sites: int) -> StateVector:
    if n_sites < 1:
        raise ValueError("need at least one site")
    return StateVector.basis(3**n_sites, 0)


def _check_step(m_prev: int, m_new: int, s_new: int) -> int:
    dm = m_new - m_prev
    if dm not in (1, 2):
        raise ChainError(f"excitation step {m_prev}->{m_new} is not 1 or 2")
    if s_new <= m_prev + 1:
        raise ChainError(f"need s > m_prev + 1, got s={s_new}, m_prev={m_prev}")
    return dm


def step_coefficients(m_prev: int, m_new: int, s_new: int) -> Tuple[Scalar, ...]:
    """Closed-form coefficients ``(a_0, ..., a_dm)`` with ``a_0 = 1``."""
    dm = _check_step(m_prev, m_new, s_new)
    tail = m_prev - s_new + 1
    return (1, tail) if dm == 1 else (1, -1, tail)


def recursion_coefficients(m_prev: int, m_new: int, s_new: int) -> Tuple[Scalar, ...]:
    """Coefficients from the general two-term recursion, ``a_0 = 1``.

    ``a_{i+1} = a_i (-1)^(d-i) ([(d-i)/2] + (1-(-1)^(d-i))/2 * (m_prev-s+1))
    / ([(i+1)/2] - (1-(-1)^(i+1))/2)`` with ``d = m_new - m_prev``.
    """
    d = _check_step(m_prev, m_new, s_new)
    t = m_prev - s_new + 1
    a: List[Scalar] = [1]
    for i in range(d):
        num = (d - i) // 2 + Fraction(1 - (-1) ** (d - i), 2) * t
        den = (i + 1) // 2 - Fraction(1 - (-1) ** (i + 1), 2)
        a.append(exact((-1) ** (d - i) * a[i] * num / den))
    return tuple(a)


def _apply_power(op, v: StateVector, times: int) -> StateVector:
    for _ in range(times):
        v = op @ v
    return v


def step_candidates(prev: StateVector, m_prev: int, m_new: int, s_new: int, n_sites: int) -> List[StateVector]:
    """``[Delta^(s-1)(F+)]^(d-i) (F+_s)^i prev`` for ``i = 0..d``."""
    d = _check_step(m_prev, m_new, s_new)
    left = coproduct("Fplus", n_sites, s_new - 1)
    at_site = embed_at_site(site_generator("Fplus"), s_new, n_sites)
    return [_apply_power(left, _apply_power(at_site, prev, i), d - i) for i in range(d + 1)]


def solve_step(prev: StateVector, m_prev: int, m_new: int, s_new: int, n_sites: int):
    """Solve the kernel condition in the candidate span.

    Returns ``(coefficients, state)`` with ``a_0 = 1``.
    """
    cands = step_candidates(prev, m_prev, m_new, s_new, n_sites)
    lowering = coproduct("Fminus", n_sites, s_new)
    images = [lowering @ v for v in cands]
    sols = solve_homogeneous(images)
    if len(sols) != 1:
        raise ConstructionError(
            f"kernel condition leaves {len(sols)} free coefficients at step "
            f"({m_prev} -> {m_new}, s={s_new})"
        )
    sol = sols[0]
    if sol[0] == 0:
        raise ConstructionError("kernel solution has a_0 = 0; cannot normalise")
    coeffs = tuple(exact(Fraction(c) / sol[0]) for c in sol)
    state = StateVector.zero(prev.dim)
    for c, v in zip(coeffs, cands):
        state = state + v.scale(c)
    return coeffs, state


@lru_cache(maxsize=None)
def _kernel_state(steps: Tuple[Step, ...], n_sites: int) -> StateVector:
    if not steps:
        return pseudovacuum(n_sites)
    prev = _kernel_state(steps[:-1], n_sites)
    m_prev = steps[-2][0] if len(steps) > 1 else 0
    m_new, s_new = steps[-1]
    coeffs, state = solve_step(prev, m_prev, m_new, s_new, n_sites)
    closed = step_coefficients(m_prev, m_new, s_new)
    if coeffs != closed:
        raise ConstructionError(
            f"solved coefficients {coeffs} disagree with closed form {closed} "
            f"at step ({m_prev} -> {m_new}, s={s_new})"
        )
    if state.is_zero():
        raise ConstructionError(f"kernel state for {steps} vanishes")
    return state


def kernel_state(chain: LabelChain) -> StateVector:
    """Lowest-weight state for ``chain`` on the full N-site chain."""
    return _kernel_state(chain.steps, chain.n_sites)


def ladder_states(chain: LabelChain) -> List[Tuple[EigenLabel, StateVector]]:
    raise_op = coproduct("Fplus", chain.n_sites)
    v = kernel_state(chain)
    out = []
    for k in range(chain.m, 2 * chain.n_sites - chain.m + 1):
        out.append((EigenLabel(chain, k), v))
        v = raise_op @ v
    return out


def casimir_eigenvalue(h: int, chain: LabelChain) -> int:
    """Eigenvalue ``(h - m_i)(h - m_i + 1)`` of ``C_h``.

    ``i`` is the last step whose site label does not exceed ``h``.
    """
    if not 2 <= h <= chain.n_sites:
        raise ValueError(f"h={h} out of range 2..{chain.n_sites}")
    m_sel = 0
    for m, s in chain.steps:
        if s <= h:
            m_sel = m
        else:
            break
    return (h - m_sel) * (h - m_sel + 1)


def hamiltonian_eigenvalue(k: int, m: int, n_sites: int, params: HamiltonianParams = HamiltonianParams()) -> Scalar:
    if not m <= k <= 2 * n_sites - m:
        raise ValueError(f"k={k} outside {m}..{2 * n_sites - m}")
    lam, mu = params.lam, params.mu
    r = n_sites - m
    odd = 1 - (-1) ** (k - m)
    return exact(lam * r * (r + 2) - mu * r + (mu - lam) * odd * (r + Fraction(1, 2)))


def irrep_counts(n_sites: int) -> Dict[Fraction, int]:
    """Multiplicity of each osp(1,2) spin in the N-fold spin-1/2 product."""
    if n_sites < 1:
        raise ValueError("need at least one site")
    half = Fraction(1, 2)
    counts: Dict[Fraction, int] = {Fraction(0): 1}
    for _ in range(n_sites):
        nxt: Dict[Fraction, int] = {}
        for spin, c in counts.items():
            targets = [half] if spin == 0 else [spin - half, spin, spin + half]
            for t in targets:
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return dict(sorted(counts.items()))


def irrep_dimension(spin: Fraction) -> int:
    return int(4 * spin + 1)


def full_spectrum(
    n_sites: int,
    params: HamiltonianParams = HamiltonianParams(),
    max_sites: int = DEFAULT_MAX_SITES,
) -> List[SpectrumRecord]:
    """All ``3^N`` eigenstates with their closed-form eigenvalues."""
    if n_sites < 1:
        raise ValueError("need at least one site")
    if n_sites > max_sites:
        raise SiteLimitError(f"N={n_sites} exceeds the limit of {max_sites} sites")
    records = []
    for chain in enumerate_label_chains(n_sites):
        for label, vec in ladder_states(chain):
            records.append(
                SpectrumRecord(
                    label=label,
                    vector=vec,
                    h_eigenvalue=label.k - n_sites,
                    casimir_eigenvalues={h: casimir_eigenvalue(h, chain) for h in range(2, n_sites + 1)},
                    hamiltonian_eigenvalue=hamiltonian_eigenvalue(label.k, chain.m, n_sites, params),
                )
            )
    return records
