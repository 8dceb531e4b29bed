"""Built-in corpus of worked examples z + c * conj(z)^m with phi(z) = z.

Each entry keeps gamma as stated with the map. Three entries are labelled
with a membership order that disagrees with that gamma; the label value is
kept in ``caption_order`` and explained in ``notes`` rather than used.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from harmonic_ctc.classes.constructs import ClassParams
from harmonic_ctc.common.exceptions import BadInputException, InvalidIndex
from harmonic_ctc.config.settings import get_settings
from harmonic_ctc.series.polynomial import ComplexPolynomial, HarmonicPolynomialMap

STARLIKE = "starlike"
CONVEX = "convex"
CORPUS_K = 2


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    anchor: str
    m: int
    coefficient: Fraction
    gamma: Fraction
    shape: str
    caption_order: Fraction
    notes: str = ""
    k: int = CORPUS_K

    def build_map(self, degree: Optional[int] = None) -> HarmonicPolynomialMap:
        return HarmonicPolynomialMap.monomial_conjugate(self.m, float(self.coefficient), degree)

    def build_params(self) -> ClassParams:
        return ClassParams(self.k, float(self.gamma))

    def expected_margin(self, r: float) -> float:
        return example_one_margin(self.m, float(self.gamma), r)

    def as_dict(self):
        return {
            "label": self.label,
            "anchor": self.anchor,
            "m": self.m,
            "coefficient": str(self.coefficient),
            "gamma": str(self.gamma),
            "k": self.k,
            "shape": self.shape,
            "caption_order": str(self.caption_order),
            "notes": self.notes,
        }


def _order_note(caption_order: Fraction, gamma: Fraction) -> str:
    return (f"labelled order {caption_order}, but the map is (1-gamma)/m-scaled "
            f"for gamma = {gamma}; gamma from the text is used")


BUILTIN_CORPUS: Tuple[CorpusEntry, ...] = (
    CorpusEntry("z + 99/200 conj(z)^2", "Example 2", 2, Fraction(99, 200), Fraction(1, 100),
                STARLIKE, Fraction(33, 100), _order_note(Fraction(33, 100), Fraction(1, 100))),
    CorpusEntry("z + 1/10 conj(z)^2", "Example 3", 2, Fraction(1, 10), Fraction(4, 5),
                CONVEX, Fraction(4, 5)),
    CorpusEntry("z + 33/100 conj(z)^3", "Example 4", 3, Fraction(33, 100), Fraction(1, 100),
                STARLIKE, Fraction(33, 100), _order_note(Fraction(33, 100), Fraction(1, 100))),
    CorpusEntry("z + 1/15 conj(z)^3", "Example 5", 3, Fraction(1, 15), Fraction(4, 5),
                CONVEX, Fraction(4, 5)),
    CorpusEntry("z + 99/500 conj(z)^5", "Example 6", 5, Fraction(99, 500), Fraction(1, 100),
                STARLIKE, Fraction(99, 500), _order_note(Fraction(99, 500), Fraction(1, 100))),
    CorpusEntry("z + 1/25 conj(z)^5", "Example 7", 5, Fraction(1, 25), Fraction(4, 5),
                CONVEX, Fraction(4, 5)),
)


def corpus_entry(anchor: str) -> CorpusEntry:
    for entry in BUILTIN_CORPUS:
        if entry.anchor == anchor:
            return entry
    raise KeyError(anchor)


def _check_family(m: int, gamma: float) -> None:
    if int(m) != m or m < 2:
        raise InvalidIndex(f"m must be an integer >= 2, got {m!r}")
    if not 0.0 <= gamma < 1.0:
        raise BadInputException(f"gamma must lie in [0, 1), got {gamma!r}")


def example_one_family(m: int, gamma: float, degree: Optional[int] = None) -> HarmonicPolynomialMap:
    """z + ((1 - gamma)/m) conj(z)^m, a member of KH0(k, gamma) for every k with phi = z."""
    _check_family(m, gamma)
    return HarmonicPolynomialMap.monomial_conjugate(int(m), (1.0 - gamma) / m, degree)


def example_one_margin(m: int, gamma: float, r: float) -> float:
    """Exact minimum margin of :func:`example_one_family` on |z| = r."""
    _check_family(m, gamma)
    return (1.0 - gamma) * (1.0 - r ** (m - 1))


@dataclass(frozen=True)
class RandomMap:
    f: HarmonicPolynomialMap
    params: ClassParams
    seed: int
    index: int


def _kernel_cost(params: ClassParams) -> float:
    """(|1 - 2 gamma| + 1) sum |C_m|, the generator's share of the sufficient condition."""
    tail = params.starlike_kernel.coeffs[2:]
    return (abs(1.0 - 2.0 * params.gamma) + 1.0) * float(np.sum(np.abs(tail)))


def random_sufficient_maps(count: int, seed: Optional[int] = None, max_degree: int = 6,
                           fill: float = 0.9) -> List[RandomMap]:
    """Seeded maps whose coefficients use ``fill`` of the sufficient-condition budget.

    Each map gets its own generator phi = z + c z^2 with |c| < 1/(k + 1), so
    phi is starlike of order (k - 1)/k and Phi_k = z - (-c)^k z^(k+1). The
    kernel term takes at most half of the budget and the coefficients of f
    are scaled to use the rest, so lhs = ``fill`` * 2(1 - gamma).
    """
    if count < 0:
        raise BadInputException(f"count must be non-negative, got {count}")
    if not 0.0 < fill < 1.0:
        raise BadInputException(f"fill must lie in (0, 1), got {fill}")
    seed = get_settings().random_seed if seed is None else int(seed)
    rng = np.random.default_rng(seed)
    maps = []
    for index in range(count):
        degree = int(rng.integers(2, max_degree + 1))
        k = int(rng.integers(1, 5))
        gamma = float(rng.uniform(0.0, 0.95))
        c = rng.uniform(0.0, 0.8 / (k + 1)) * np.exp(2j * np.pi * rng.uniform())
        shape = degree - 1
        u_tail = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        v_tail = rng.normal(size=shape) + 1j * rng.normal(size=shape)

        budget = fill * 2.0 * (1.0 - gamma)
        params = ClassParams(k, gamma, ComplexPolynomial([0, 1, c]))
        cost = _kernel_cost(params)
        if cost > budget / 2:
            # sum |C_m| = |c|^k, so this shrink lands the kernel term on budget / 2
            c *= (budget / 2 / cost) ** (1.0 / k)
            params = ClassParams(k, gamma, ComplexPolynomial([0, 1, c]))
            cost = _kernel_cost(params)

        m = np.arange(2, degree + 1)
        used = float(np.sum(2 * m * (np.abs(u_tail) + np.abs(v_tail))))
        scale = (budget - cost) / used
        u = ComplexPolynomial(np.concatenate([[0, 1], scale * u_tail]))
        v = ComplexPolynomial(np.concatenate([[0, 0], scale * v_tail]))
        maps.append(RandomMap(HarmonicPolynomialMap(u, v), params, seed, index))
    return maps
