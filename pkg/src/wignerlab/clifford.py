"""Clifford gates, duality circuits, and automorphism verification.

Gates act on Pauli strings by exact symbolic conjugation ``g p g†``.  A
circuit stores its gate list left to right exactly as the operator product is
written, with the leftmost factor applied last; conjugating through the
circuit therefore folds the gates from the rightmost (innermost) factor
outward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .pauli import (HilbertLayout, PauliString, SiteRef, commutes,
                    eta_string, matter_layout, ancilla_layout, mul)


@dataclass(frozen=True)
class ControlledX:
    control: SiteRef
    target: SiteRef


@dataclass(frozen=True)
class ControlledZ:
    i: SiteRef
    j: SiteRef


@dataclass(frozen=True)
class Swap:
    i: SiteRef
    j: SiteRef


@dataclass(frozen=True)
class Hadamard:
    site: SiteRef


@dataclass(frozen=True)
class QuarterRotation:
    """``exp(i * sign * pi/4 * axis)`` for a Hermitian Pauli-string axis."""
    axis: PauliString
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.axis.is_hermitian():
            raise ValueError("rotation axis must be Hermitian")


CliffordGate = Union[ControlledX, ControlledZ, Swap, Hadamard, QuarterRotation]


def _rot_conjugate(axis: PauliString, sign: int, p: PauliString) -> PauliString:
    # exp(i s pi/4 A) p exp(-i s pi/4 A) = p if [A,p]=0 else (i s) A p
    if commutes(axis, p):
        return p
    out = mul(axis, p)
    return PauliString(out.layout, out.x_mask, out.z_mask,
                       out.phase_exp + (1 if sign > 0 else 3))


def _cx_axes(layout: HilbertLayout, control: SiteRef, target: SiteRef):
    zc = PauliString.single(layout, "Z", control)
    xt = PauliString.single(layout, "X", target)
    # Eq-form C^x = e^{i pi/4} R(Zc Xt, +) R(Zc, -) R(Xt, -); factors commute
    return ((mul(zc, xt), 1), (zc, -1), (xt, -1))


def _cz_axes(layout: HilbertLayout, i: SiteRef, j: SiteRef):
    zi = PauliString.single(layout, "Z", i)
    zj = PauliString.single(layout, "Z", j)
    return ((mul(zi, zj), -1), (zi, 1), (zj, 1))


def conjugate_gate(g: CliffordGate, p: PauliString) -> PauliString:
    """Exact ``g p g†`` for a single gate."""
    layout = p.layout
    if isinstance(g, QuarterRotation):
        if g.axis.layout != layout:
            raise ValueError("gate/operand layout mismatch")
        return _rot_conjugate(g.axis, g.sign, p)
    if isinstance(g, Hadamard):
        b = 1 << layout.index_of(g.site)
        x, z = p.x_mask, p.z_mask
        nx = (x & ~b) | (z & b)
        nz = (z & ~b) | (x & b)
        phase = p.phase_exp + (2 if (x & z & b) else 0)  # Y -> -Y
        return PauliString(layout, nx, nz, phase)
    if isinstance(g, Swap):
        bi, bj = layout.index_of(g.i), layout.index_of(g.j)

        def swap_bits(m: int) -> int:
            vi, vj = (m >> bi) & 1, (m >> bj) & 1
            if vi != vj:
                m ^= (1 << bi) | (1 << bj)
            return m

        return PauliString(layout, swap_bits(p.x_mask), swap_bits(p.z_mask),
                           p.phase_exp)
    if isinstance(g, ControlledX):
        axes = _cx_axes(layout, g.control, g.target)
    elif isinstance(g, ControlledZ):
        axes = _cz_axes(layout, g.i, g.j)
    else:
        raise TypeError(f"unknown gate {g!r}")
    for axis, sign in axes:  # commuting factors: any order
        p = _rot_conjugate(axis, sign, p)
    return p


@dataclass(frozen=True)
class CliffordCircuit:
    layout: HilbertLayout
    gates: tuple[CliffordGate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if isinstance(g, QuarterRotation) and g.axis.layout != self.layout:
                raise ValueError("rotation axis layout differs from circuit")

    def __len__(self) -> int:
        return len(self.gates)


def conjugate_circuit(c: CliffordCircuit, p: PauliString) -> PauliString:
    """``U p U†`` for the full ordered product."""
    if c.layout != p.layout:
        raise ValueError("circuit/operand layout mismatch")
    for g in reversed(c.gates):
        p = conjugate_gate(g, p)
    return p


# ---------------------------------------------------------------------------
# circuit builders
# ---------------------------------------------------------------------------

def build_u1(L: int) -> CliffordCircuit:
    """Swap-reversal duality circuit for the open chain.

    Product order: swaps over j=1..floor(L/2) (the middle site of an odd
    chain is untouched), then CX(j+1, j) over j=1..L-1, then a Hadamard on
    every site.
    """
    if L < 2:
        raise ValueError("L must be >= 2")
    layout = matter_layout(L)
    gates: list[CliffordGate] = []
    for j in range(1, L // 2 + 1):
        gates.append(Swap(j, L - j + 1))
    for j in range(1, L):
        gates.append(ControlledX(j + 1, j))
    for j in range(1, L + 1):
        gates.append(Hadamard(j))
    return CliffordCircuit(layout, tuple(gates))


def build_u2(L: int) -> CliffordCircuit:
    """Quarter-rotation duality circuit for the self-dual closed chain."""
    if L < 2:
        raise ValueError("L must be >= 2")
    layout = matter_layout(L)
    gates: list[CliffordGate] = []
    for j in range(1, L):
        gates.append(QuarterRotation(PauliString.single(layout, "X", j), -1))
        gates.append(QuarterRotation(
            mul(PauliString.single(layout, "Z", j),
                PauliString.single(layout, "Z", j + 1)), -1))
    gates.append(QuarterRotation(PauliString.single(layout, "X", L), -1))
    return CliffordCircuit(layout, tuple(gates))


def build_u_gauged(L: int) -> CliffordCircuit:
    """Genuinely unitary duality on the minimally gauged chain.

    CX(1, L+1) * prod_{j=1..L} [H_j CZ(j+1, j)] * H_{L+1}, where at j = L the
    "j+1" wire is the boundary-link ancilla L+1 (operators on that slot are
    the gauge-field X/Z); this wiring is the one that makes the gauged
    duality table verify exactly.
    """
    if L < 2:
        raise ValueError("L must be >= 2")
    layout = ancilla_layout(L)
    gates: list[CliffordGate] = [ControlledX(1, "L+1")]
    for j in range(1, L + 1):
        gates.append(Hadamard(j))
        hi: SiteRef = j + 1 if j < L else "L+1"
        gates.append(ControlledZ(hi, j))
    gates.append(Hadamard("L+1"))
    return CliffordCircuit(layout, tuple(gates))


# ---------------------------------------------------------------------------
# duality maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualityMap:
    """Ordered generator -> image table, each an exact phase-tracked string."""
    name: str
    entries: tuple[tuple[PauliString, PauliString], ...]


def _zz(layout: HilbertLayout, i: SiteRef, j: SiteRef) -> PauliString:
    return mul(PauliString.single(layout, "Z", i),
               PauliString.single(layout, "Z", j))


def phi1_table(L: int) -> DualityMap:
    layout = matter_layout(L)
    x = lambda j: PauliString.single(layout, "X", j)
    entries = []
    for j in range(1, L):
        r = L - j
        entries.append((x(j), _zz(layout, r, r + 1)))
        entries.append((_zz(layout, j, j + 1), x(r)))
    entries.append((eta_string(layout), PauliString.single(layout, "Z", L)))
    return DualityMap("phi1", tuple(entries))


def phi2_table(L: int) -> DualityMap:
    layout = matter_layout(L)
    x = lambda j: PauliString.single(layout, "X", j)
    eta = eta_string(layout)
    entries = []
    for j in range(1, L):
        entries.append((x(j), _zz(layout, j, j + 1)))
        entries.append((_zz(layout, j, j + 1), x(j + 1)))
    boundary = mul(eta, _zz(layout, L, 1))
    entries.append((x(L), boundary))
    entries.append((boundary, x(1)))
    entries.append((eta, eta))
    return DualityMap("phi2", tuple(entries))


def phi_gauged_table(L: int) -> DualityMap:
    layout = ancilla_layout(L)
    x = lambda j: PauliString.single(layout, "X", j)
    entries = []
    for j in range(1, L):
        entries.append((_zz(layout, j, j + 1), x(j + 1)))
        entries.append((x(j), _zz(layout, j, j + 1)))
    boundary = mul(mul(PauliString.single(layout, "Z", L),
                       PauliString.single(layout, "Z", "L+1")),
                   PauliString.single(layout, "Z", 1))
    entries.append((boundary, x(1)))
    entries.append((x(L), boundary))
    return DualityMap("phi_gauged", tuple(entries))


def verify_automorphism(c: CliffordCircuit, m: DualityMap) -> dict:
    """Check every table entry by exact string-with-phase equality.

    Runs purely symbolically, so very long chains are cheap.
    """
    records = []
    for gen, image in m.entries:
        got = conjugate_circuit(c, gen)
        records.append({
            "generator": str(gen),
            "expected": str(image),
            "got": str(got),
            "ok": got == image,
        })
    return {"map": m.name, "entries": records,
            "passed": all(r["ok"] for r in records)}


# ---------------------------------------------------------------------------
# circuit text format
# ---------------------------------------------------------------------------

def _site_txt(s: SiteRef) -> str:
    return str(s)


def _parse_site(layout: HilbertLayout, tok: str) -> SiteRef:
    if tok.isdigit():
        return int(tok)
    layout.index_of(tok)  # validates
    return tok


def format_circuit(c: CliffordCircuit) -> str:
    """One gate per line: ``ROT - X3``, ``CX 2 1``, ``CZ 4 3``, ``SWAP 1 4``, ``H 4``."""
    from .pauli import format_string
    lines = [f"L={c.layout.n_matter}, gauge=[{','.join(c.layout.gauge_slots)}]"]
    for g in c.gates:
        if isinstance(g, ControlledX):
            lines.append(f"CX {_site_txt(g.control)} {_site_txt(g.target)}")
        elif isinstance(g, ControlledZ):
            lines.append(f"CZ {_site_txt(g.i)} {_site_txt(g.j)}")
        elif isinstance(g, Swap):
            lines.append(f"SWAP {_site_txt(g.i)} {_site_txt(g.j)}")
        elif isinstance(g, Hadamard):
            lines.append(f"H {_site_txt(g.site)}")
        elif isinstance(g, QuarterRotation):
            body = format_string(g.axis).split(" | ")[0]
            body = body.removeprefix("(+1i^0) ")
            lines.append(f"ROT {'+' if g.sign > 0 else '-'} {body}")
    return "\n".join(lines)


def parse_circuit(text: str) -> CliffordCircuit:
    import re
    from .pauli import HilbertLayout, parse_string
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.match(r"\s*L=(\d+),\s*gauge=\[([^\]]*)\]\s*$", lines[0])
    if not m:
        raise ValueError("bad layout header")
    layout = HilbertLayout(int(m.group(1)),
                           tuple(s for s in m.group(2).split(",") if s))
    gauge = ",".join(layout.gauge_slots)
    gates: list[CliffordGate] = []
    for ln in lines[1:]:
        parts = ln.split()
        kind = parts[0]
        if kind == "CX":
            gates.append(ControlledX(_parse_site(layout, parts[1]),
                                     _parse_site(layout, parts[2])))
        elif kind == "CZ":
            gates.append(ControlledZ(_parse_site(layout, parts[1]),
                                     _parse_site(layout, parts[2])))
        elif kind == "SWAP":
            gates.append(Swap(_parse_site(layout, parts[1]),
                              _parse_site(layout, parts[2])))
        elif kind == "H":
            gates.append(Hadamard(_parse_site(layout, parts[1])))
        elif kind == "ROT":
            sign = 1 if parts[1] == "+" else -1
            body = " ".join(parts[2:])
            axis = parse_string(f"(+1i^0) {body} | L={layout.n_matter}, gauge=[{gauge}]"
                                if not body.startswith("(") else
                                f"{body} | L={layout.n_matter}, gauge=[{gauge}]")
            gates.append(QuarterRotation(axis, sign))
        else:
            raise ValueError(f"unknown gate line {ln!r}")
    return CliffordCircuit(layout, tuple(gates))


def format_duality_map(m: DualityMap) -> str:
    from .pauli import format_string
    lines = [m.name]
    for gen, img in m.entries:
        lines.append(f"{format_string(gen)} -> {format_string(img)}")
    return "\n".join(lines)
