"""Gate-level IR for fingerprinting circuits.

Builders produce three layouts:

* deep    -- one multi-controlled R_y(4 pi k_j x / p) per coefficient, the
             j-th gate controlled on the binary pattern of j-1,
* shallow -- one singly-controlled R_y(4 pi t_j x / p) per generator plus a
             final uncontrolled R_y(4 pi t_0 x / p),
* aikps   -- per small prime r: a bank of controlled R_y(2^{k-1} 4 pi
             r^{-1} x / p) rotations plus one uncontrolled closing R_y.

Basis convention is little-endian: qubit q contributes bit q of the basis
index, so for deep/shallow circuits the control-register value equals the
coefficient index (subset bitmask) directly and the target qubit is the
highest bit.

Depth is greedy disjoint-support layering; the LNN CX cost is a declared
model (3 CX per singly-controlled rotation, d*ceil(log2 d) for the deep
multi-controlled bank), not a router.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coeffsets import AikpsSet, CoefficientSet, GapFingerprint


@dataclass(frozen=True)
class Gate:
    kind: str  # "h", "ry" or "cry"
    target: int
    angle: float = 0.0
    controls: tuple[tuple[int, bool], ...] = ()  # (qubit, positive-polarity)

    def __post_init__(self):
        if self.kind not in ("h", "ry", "cry"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cry" and not self.controls:
            raise ValueError("cry needs at least one control")
        if any(c == self.target for c, _ in self.controls):
            raise ValueError("control and target must differ")
        if not math.isfinite(self.angle):
            raise ValueError("angle must be finite")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.controls) + (self.target,)


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    label: str = ""

    def add(self, gate: Gate) -> None:
        if any(q >= self.num_qubits or q < 0 for q in gate.qubits):
            raise ValueError("gate touches a qubit outside the register")
        self.gates.append(gate)

    @property
    def style(self) -> str:
        return self.label.split("[", 1)[0]


@dataclass(frozen=True)
class CostModel:
    """Linear-nearest-neighbor CX budget per rotation construct."""

    cx_per_controlled_ry_lnn: int = 3
    cx_overhead_final: int = 3

    @staticmethod
    def multicontrolled_bank_cx(d: int) -> int:
        """Nearest-neighbor decomposition of the d-rotation controlled bank."""
        if d < 1:
            raise ValueError("bank size must be positive")
        return d * max(1, math.ceil(math.log2(d))) if d > 1 else 1


def _reduced_angle(k: int, x: int, p: int) -> float:
    # R_y has period 4 pi, so 4 pi * (k x mod p) / p is the same rotation
    # as 4 pi k x / p but with a small, precision-friendly argument.
    return 4.0 * math.pi * ((k * x) % p) / p


def pad_pow2(K: CoefficientSet) -> CoefficientSet:
    """Pad K to a power-of-two size by repeating the last coefficient."""
    d = K.d
    if d & (d - 1) == 0:
        return K
    target = 1 << d.bit_length()
    coeffs = K.coefficients + (K.coefficients[-1],) * (target - d)
    return CoefficientSet(K.p, coeffs, K.method,
                          dict(K.params, padded_from=d))


def build_deep(K: CoefficientSet, x: int) -> Circuit:
    """Deep layout: H layer then one pattern-controlled rotation per k_j."""
    padded = pad_pow2(K)
    d = padded.d
    m = d.bit_length() - 1
    p = int(K.p)
    label = f"deep[d={d},m={m}" + (f",padded_from={K.d}" if d != K.d else "") + "]"
    c = Circuit(m + 1, label=label)
    for q in range(m):
        c.add(Gate("h", q))
    for j, k in enumerate(padded.coefficients):
        angle = _reduced_angle(k, x, p)
        if m == 0:
            c.add(Gate("ry", 0, angle))
        else:
            controls = tuple((q, bool((j >> q) & 1)) for q in range(m))
            c.add(Gate("cry", m, angle, controls))
    return c


def build_shallow(F: GapFingerprint, x: int) -> Circuit:
    """Shallow layout: one singly-controlled rotation per generator."""
    m = F.m
    p = int(F.p)
    c = Circuit(m + 1, label=f"shallow[m={m}]")
    for q in range(m):
        c.add(Gate("h", q))
    for q, t in enumerate(F.generators):
        c.add(Gate("cry", m, _reduced_angle(t, x, p), ((q, True),)))
    # closing rotation R_0; kept even for t_0 = 0 for structural fidelity
    c.add(Gate("ry", m, _reduced_angle(F.t0, x, p)))
    return c


def aikps_block_width(S: AikpsSet) -> int:
    """Wires per block: enough control bits to index 1..s_max, plus target."""
    return max(1, math.ceil(math.log2(S.s_max))) + 1 if S.s_max > 1 else 2


def build_aikps(S: AikpsSet, x: int) -> Circuit:
    """AIKPS layout: per prime r, a bank of doubling rotations sharing the target."""
    p = int(S.p)
    w = aikps_block_width(S)
    n_ctrl = w - 1
    num_qubits = len(S.r_primes) * n_ctrl + 1
    target = num_qubits - 1
    c = Circuit(num_qubits, label=f"aikps[eps={S.eps:g},blocks={len(S.r_primes)},w={w}]")
    from .zmod import mod_inverse

    for b, r in enumerate(S.r_primes):
        r_inv = mod_inverse(r, p)
        base = b * n_ctrl
        for k in range(1, w):
            coeff = (1 << (k - 1)) * r_inv % p
            c.add(Gate("cry", target, _reduced_angle(coeff, x, p), ((base + k - 1, True),)))
        c.add(Gate("ry", target, _reduced_angle(r_inv, x, p)))
    return c


def depth(c: Circuit) -> int:
    """Greedy layering: gates with disjoint qubit support share a layer."""
    last = [0] * c.num_qubits
    top = 0
    for gate in c.gates:
        layer = max(last[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            last[q] = layer
        top = max(top, layer)
    return top


def cx_count_lnn(c: Circuit, model: CostModel | None = None) -> int:
    """Declared LNN CX cost; dispatches on the builder that made the circuit."""
    model = model or CostModel()
    n_cry = sum(1 for g in c.gates if g.kind == "cry")
    style = c.style
    if style == "shallow":
        return n_cry * model.cx_per_controlled_ry_lnn + model.cx_overhead_final
    if style == "deep":
        return model.multicontrolled_bank_cx(max(1, n_cry))
    if style == "aikps":
        return n_cry * model.cx_per_controlled_ry_lnn
    raise ValueError(f"no LNN cost model for circuit label {c.label!r}")


def _ry_matrix(theta: float) -> np.ndarray:
    h = theta / 2.0
    return np.array([[math.cos(h), -math.sin(h)], [math.sin(h), math.cos(h)]])


_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def _apply_2x2(state: np.ndarray, mat: np.ndarray, target: int,
               controls: tuple[tuple[int, bool], ...], n: int) -> None:
    idx = np.arange(state.size)
    sel = np.ones(state.size, dtype=bool)
    for q, pol in controls:
        sel &= (((idx >> q) & 1) == (1 if pol else 0))
    i0 = idx[sel & (((idx >> target) & 1) == 0)]
    i1 = i0 | (1 << target)
    a0 = state[i0].copy()
    a1 = state[i1].copy()
    state[i0] = mat[0, 0] * a0 + mat[0, 1] * a1
    state[i1] = mat[1, 0] * a0 + mat[1, 1] * a1


def statevector(c: Circuit) -> np.ndarray:
    """Simulate from |0...0>; little-endian basis indexing."""
    if c.num_qubits > 20:
        raise ValueError("statevector simulation capped at 20 qubits")
    state = np.zeros(1 << c.num_qubits)
    state[0] = 1.0
    for gate in c.gates:
        mat = _H_MATRIX if gate.kind == "h" else _ry_matrix(gate.angle)
        _apply_2x2(state, mat, gate.target, gate.controls, c.num_qubits)
    return state


def fingerprint_blocks(c: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """(cos-block, sin-block) of the target qubit for deep/shallow circuits.

    Entry j of the cos block is the amplitude on |target=0, controls=j>,
    i.e. (1/sqrt(d)) cos(2 pi k_{j+1} x / p) when the builder is correct.
    """
    sv = statevector(c)
    half = sv.size // 2
    return sv[:half], sv[half:]


def stats(c: Circuit, model: CostModel | None = None) -> dict:
    return {
        "label": c.label,
        "num_qubits": c.num_qubits,
        "gates": len(c.gates),
        "depth": depth(c),
        "cx_lnn": cx_count_lnn(c, model),
    }


# --- OpenQASM 2.0 emission -------------------------------------------------

def _fmt(angle: float) -> str:
    return f"{angle:.17g}"


def _emit_mcry(lines: list[str], theta: float, controls: tuple[int, ...], target: int) -> None:
    """All-positive multi-controlled R_y via the Gray-code ladder.

    Emits 2^n R_y and 2^n CX gates using only qelib1 primitives; rotation
    angles are +-theta/2^n with signs given by the Gray-code parity.
    """
    n = len(controls)
    if n == 0:
        lines.append(f"ry({_fmt(theta)}) q[{target}];")
        return
    base = theta / (1 << n)
    for k in range(1 << n):
        gray = k ^ (k >> 1)
        sign = -1.0 if bin(gray).count("1") % 2 else 1.0
        lines.append(f"ry({_fmt(sign * base)}) q[{target}];")
        if k == (1 << n) - 1:
            ctrl_bit = n - 1
        else:
            ctrl_bit = ((k + 1) & -(k + 1)).bit_length() - 1  # ruler sequence
        lines.append(f"cx q[{controls[ctrl_bit]}],q[{target}];")


def emit_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text using only h, x, ry and cx from qelib1.

    Negative controls are conjugated with x gates; multi-controlled
    rotations are expanded by the Gray-code ladder, so the output is
    consumable by any QASM 2.0 simulator.  Emission is byte-stable for a
    fixed circuit (fixed ordering, angles at 17 significant digits).
    """
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{c.num_qubits}];",
    ]
    for gate in c.gates:
        if gate.kind == "h":
            lines.append(f"h q[{gate.target}];")
        elif gate.kind == "ry":
            lines.append(f"ry({_fmt(gate.angle)}) q[{gate.target}];")
        else:
            negatives = [q for q, pol in gate.controls if not pol]
            for q in negatives:
                lines.append(f"x q[{q}];")
            _emit_mcry(lines, gate.angle, tuple(q for q, _ in gate.controls), gate.target)
            for q in negatives:
                lines.append(f"x q[{q}];")
    return "\n".join(lines) + "\n"
