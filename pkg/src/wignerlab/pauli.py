"""Exact symbolic algebra of phase-tracked Pauli strings.

A string is stored as a pair of bit masks over the sites of a
:class:`HilbertLayout` together with an integer power of ``i``:

    operator = i**phase_exp * prod_j X_j**x_j * Z_j**z_j   (X left of Z per site)

so ``Y_j = i * X_j Z_j`` is the string with both bits set at ``j`` and
``phase_exp = 1``.  All group operations are exact integer arithmetic; no
floating phases ever enter the symbolic kernel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

SiteRef = Union[int, str]  # matter sites are 1-based ints, gauge slots are labels

#: coefficient magnitude below which PauliSum terms are dropped after
#: floating-coefficient arithmetic
COEF_TOL = 1e-12


class LayoutMismatchError(ValueError):
    """Raised when two operands live on different site layouts."""


@dataclass(frozen=True)
class HilbertLayout:
    """Site layout: ``n_matter`` spins followed by optional gauge slots.

    Matter site ``j`` (1-based) occupies bit ``j - 1``; gauge slots follow in
    declared label order, so the Hilbert-space dimension is
    ``2 ** total_sites`` with basis index ``sum_b bit_b * 2**b``.
    """

    n_matter: int
    gauge_slots: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.n_matter < 0:
            raise ValueError("n_matter must be non-negative")
        if len(set(self.gauge_slots)) != len(self.gauge_slots):
            raise ValueError("duplicate gauge slot labels")
        object.__setattr__(self, "gauge_slots", tuple(self.gauge_slots))

    @property
    def total_sites(self) -> int:
        return self.n_matter + len(self.gauge_slots)

    @property
    def dim(self) -> int:
        return 1 << self.total_sites

    def index_of(self, site: SiteRef) -> int:
        """Bit position of a matter site (int, 1-based) or gauge label (str)."""
        if isinstance(site, int):
            if not 1 <= site <= self.n_matter:
                raise ValueError(f"matter site {site} outside 1..{self.n_matter}")
            return site - 1
        try:
            return self.n_matter + self.gauge_slots.index(site)
        except ValueError:
            raise ValueError(f"unknown gauge slot {site!r}") from None

    def site_of(self, bit: int) -> SiteRef:
        if not 0 <= bit < self.total_sites:
            raise ValueError(f"bit {bit} out of range")
        if bit < self.n_matter:
            return bit + 1
        return self.gauge_slots[bit - self.n_matter]


def matter_layout(L: int) -> HilbertLayout:
    return HilbertLayout(L)


def ancilla_layout(L: int) -> HilbertLayout:
    """L matter sites plus the single boundary-link ancilla ``L+1``."""
    return HilbertLayout(L, ("L+1",))


def link_layout(L: int) -> HilbertLayout:
    """L matter sites plus one gauge link per bond, labels ``1/2 .. L-1/2``."""
    return HilbertLayout(L, tuple(f"{2 * j - 1}/2" for j in range(1, L + 1)))


def _check_layout(a: "PauliString | PauliSum", b: "PauliString | PauliSum") -> None:
    if a.layout != b.layout:
        raise LayoutMismatchError(f"layout mismatch: {a.layout} vs {b.layout}")


@dataclass(frozen=True)
class PauliString:
    layout: HilbertLayout
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0  # overall factor i**phase_exp, mod 4

    def __post_init__(self) -> None:
        full = self.layout.dim - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask extends past the layout")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, layout: HilbertLayout) -> "PauliString":
        return cls(layout)

    @classmethod
    def single(cls, layout: HilbertLayout, kind: str, site: SiteRef) -> "PauliString":
        """Single-site X/Y/Z operator."""
        b = 1 << layout.index_of(site)
        if kind == "X":
            return cls(layout, b, 0, 0)
        if kind == "Z":
            return cls(layout, 0, b, 0)
        if kind == "Y":
            return cls(layout, b, b, 1)  # Y = i X Z
        raise ValueError(f"unknown Pauli kind {kind!r}")

    @classmethod
    def from_sites(cls, layout: HilbertLayout,
                   ops: Iterable[tuple[str, SiteRef]],
                   phase_exp: int = 0) -> "PauliString":
        """Product of single-site operators, left to right."""
        out = cls(layout, phase_exp=phase_exp)
        for kind, site in ops:
            out = mul(out, cls.single(layout, kind, site))
        return out

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        return mul(self, other)

    def dagger(self) -> "PauliString":
        w = (self.x_mask & self.z_mask).bit_count()
        return PauliString(self.layout, self.x_mask, self.z_mask,
                           (-self.phase_exp + 2 * w) % 4)

    def is_hermitian(self) -> bool:
        # i**p * B with B† = (-1)**|x&z| B is Hermitian iff p = |x&z| mod 2
        return (self.phase_exp - (self.x_mask & self.z_mask).bit_count()) % 2 == 0

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0 and self.phase_exp == 0

    def phase_free(self) -> "PauliString":
        return PauliString(self.layout, self.x_mask, self.z_mask, 0)

    @property
    def coefficient(self) -> complex:
        return 1j ** self.phase_exp

    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    # -- text form ---------------------------------------------------------

    def __str__(self) -> str:
        return format_string(self)


def mul(p: PauliString, q: PauliString) -> PauliString:
    """Group product ``p * q`` with exact phase tracking."""
    _check_layout(p, q)
    # per site: (X^a Z^b)(X^c Z^d) = (-1)^{b c} X^{a^c} Z^{b^d}
    swaps = (p.z_mask & q.x_mask).bit_count()
    return PauliString(p.layout, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask,
                       p.phase_exp + q.phase_exp + 2 * swaps)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff ``pq = qp`` (symplectic-form parity)."""
    _check_layout(p, q)
    sym = (p.x_mask & q.z_mask).bit_count() + (p.z_mask & q.x_mask).bit_count()
    return sym % 2 == 0


def eta_string(layout: HilbertLayout) -> PauliString:
    """The global spin-flip ``prod_j sigma^x_j`` over the matter sites."""
    if layout.n_matter < 1:
        raise ValueError("layout has no matter sites")
    return PauliString(layout, (1 << layout.n_matter) - 1, 0, 0)


class PauliSum:
    """Complex linear combination of Pauli strings in canonical form.

    Term keys are phase-free strings; string phases are folded into the
    coefficients.  Zero coefficients are dropped on construction.
    """

    __slots__ = ("layout", "terms")

    def __init__(self, layout: HilbertLayout,
                 terms: dict[tuple[int, int], complex] | None = None,
                 tol: float = COEF_TOL):
        self.layout = layout
        self.terms: dict[tuple[int, int], complex] = {}
        if terms:
            for key, c in terms.items():
                if c != 0 and abs(c) > tol:
                    self.terms[key] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, layout: HilbertLayout) -> "PauliSum":
        return cls(layout)

    @classmethod
    def identity(cls, layout: HilbertLayout) -> "PauliSum":
        return cls(layout, {(0, 0): 1.0 + 0j})

    @classmethod
    def from_string(cls, p: PauliString, coeff: complex = 1.0) -> "PauliSum":
        return cls(p.layout, {(p.x_mask, p.z_mask): coeff * p.coefficient})

    @classmethod
    def from_terms(cls, layout: HilbertLayout,
                   pairs: Iterable[tuple[complex, PauliString]]) -> "PauliSum":
        out = cls.zero(layout)
        for c, p in pairs:
            out = out + cls.from_string(p, c)
        return out

    # -- inspection --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        for (x, z), c in sorted(self.terms.items()):
            yield c, PauliString(self.layout, x, z, 0)

    def coefficient_of(self, p: PauliString) -> complex:
        c = self.terms.get((p.x_mask, p.z_mask), 0j)
        return c / p.coefficient

    def is_hermitian(self) -> bool:
        for (x, z), c in self.terms.items():
            w = (x & z).bit_count()
            if abs(c.conjugate() * (-1) ** w - c) > COEF_TOL:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.layout == other.layout and (self - other).is_zero()

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "PauliSum") -> "PauliSum":
        _check_layout(self, other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0j) + c
        return PauliSum(self.layout, acc)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1) * other

    def __rmul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(self.layout, {k: scalar * c for k, c in self.terms.items()})

    def __neg__(self) -> "PauliSum":
        return (-1) * self

    def __mul__(self, other: "PauliSum") -> "PauliSum":
        _check_layout(self, other)
        acc: dict[tuple[int, int], complex] = {}
        for (x1, z1), c1 in self.terms.items():
            for (x2, z2), c2 in other.terms.items():
                swaps = (z1 & x2).bit_count()
                key = (x1 ^ x2, z1 ^ z2)
                acc[key] = acc.get(key, 0j) + c1 * c2 * (1j ** ((2 * swaps) % 4))
        return PauliSum(self.layout, acc)

    def dagger(self) -> "PauliSum":
        acc = {}
        for (x, z), c in self.terms.items():
            acc[(x, z)] = c.conjugate() * (-1) ** ((x & z).bit_count())
        return PauliSum(self.layout, acc)

    def __str__(self) -> str:
        return format_sum(self)


def sum_commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """``ab - ba`` in canonical form; the empty sum encodes exact commutation."""
    _check_layout(a, b)
    return a * b - b * a


def symmetry_projector(sign: int, layout: HilbertLayout,
                       on_ancilla: bool = False) -> PauliSum:
    """``(1 +- s)/2`` with ``s`` either the eta string or the ancilla Z.

    With ``on_ancilla`` the designated symmetry is ``Z_{L+1}`` on the single
    gauge slot (the minimally gauged projector), which acts trivially on the
    matter sites.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if on_ancilla:
        if "L+1" not in layout.gauge_slots:
            raise ValueError("layout has no ancilla slot L+1")
        s = PauliString.single(layout, "Z", "L+1")
    else:
        s = eta_string(layout)
    return PauliSum(layout, {(0, 0): 0.5, (s.x_mask, s.z_mask): 0.5 * sign})


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"([XYZ])(?:\[([^\]]+)\]|(\d+))")


def _site_token(layout: HilbertLayout, bit: int) -> str:
    site = layout.site_of(bit)
    return str(site) if isinstance(site, int) else f"[{site}]"


def format_string(p: PauliString) -> str:
    """Render e.g. ``(+1i^0) X1 Z3 | L=4, gauge=[]`` (Y-folded exponent)."""
    toks = []
    n_y = 0
    for bit in range(p.layout.total_sites):
        x = (p.x_mask >> bit) & 1
        z = (p.z_mask >> bit) & 1
        if x and z:
            toks.append("Y" + _site_token(p.layout, bit))
            n_y += 1
        elif x:
            toks.append("X" + _site_token(p.layout, bit))
        elif z:
            toks.append("Z" + _site_token(p.layout, bit))
    exp = (p.phase_exp - n_y) % 4  # i^p X Z = i^(p-1) Y per Y site
    body = " ".join(toks) if toks else "I"
    gauge = ",".join(p.layout.gauge_slots)
    return f"(+1i^{exp}) {body} | L={p.layout.n_matter}, gauge=[{gauge}]"


def parse_string(text: str) -> PauliString:
    body, _, header = text.partition("|")
    m = re.match(r"\s*L=(\d+),\s*gauge=\[([^\]]*)\]\s*$", header)
    if not m:
        raise ValueError(f"bad layout header in {text!r}")
    layout = HilbertLayout(int(m.group(1)),
                           tuple(s for s in m.group(2).split(",") if s))
    pm = re.match(r"\s*\(\+1i\^(\d)\)\s*(.*)$", body)
    if not pm:
        raise ValueError(f"bad phase prefix in {text!r}")
    exp = int(pm.group(1))
    rest = pm.group(2).strip()
    ops: list[tuple[str, SiteRef]] = []
    if rest != "I":
        consumed = 0
        for tok in _TOKEN_RE.finditer(rest):
            kind, gauge, matter = tok.groups()
            ops.append((kind, gauge if gauge is not None else int(matter)))
            consumed += 1
        if consumed != len(rest.split()):
            raise ValueError(f"unparsed tokens in {text!r}")
    x = z = 0
    n_y = 0
    for kind, site in ops:
        b = 1 << layout.index_of(site)
        if kind in ("X", "Y"):
            x |= b
        if kind in ("Z", "Y"):
            z |= b
        n_y += kind == "Y"
    return PauliString(layout, x, z, (exp + n_y) % 4)


def format_sum(s: PauliSum) -> str:
    lines = [f"L={s.layout.n_matter}, gauge=[{','.join(s.layout.gauge_slots)}]"]
    for c, p in s:
        body = format_string(p).split(" | ")[0]
        lines.append(f"{c!r}  {body}")
    return "\n".join(lines)


def parse_sum(text: str) -> PauliSum:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.match(r"\s*L=(\d+),\s*gauge=\[([^\]]*)\]\s*$", lines[0])
    if not m:
        raise ValueError("bad layout header")
    layout = HilbertLayout(int(m.group(1)),
                           tuple(s for s in m.group(2).split(",") if s))
    out = PauliSum.zero(layout)
    for ln in lines[1:]:
        coeff_txt, body = ln.split("  ", 1)
        c = complex(coeff_txt)
        p = parse_string(f"{body} | L={layout.n_matter}, gauge=[{','.join(layout.gauge_slots)}]")
        out = out + PauliSum.from_string(p, c)
    return out
