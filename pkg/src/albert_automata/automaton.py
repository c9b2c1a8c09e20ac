"""
Albert-style self-measuring automata.

The system register ``s`` carries Gödel-numbered observables; pointer
registers ``a1, a2, ...`` hold the automaton's records. Measurement is
always the unitary pre-measurement ``V = sum_j Pi_j (x) Shift^j`` (no
collapse), where ``Pi_j`` projects onto the eigenspace of the j-th
smallest eigenvalue. A record observable ``G(X)`` lives on the pointer
alone and reads level ``j`` as the j-th smallest eigenvalue of ``X``, so
records written by :func:`measurement_unitary` are accurate by
construction. ``E(X) = G(X) - X`` then vanishes exactly on accurate
records.

:func:`albert_chain` runs the two-stage self-measurement: record ``P``
into ``a1``, build a gait ``U1`` on ``s + a1`` having the post-measurement
state as an eigenvector, then record ``U1`` into ``a2``. Both records are
accurate on the final state although ``P`` and ``U1`` do not commute.
:func:`external_chain` repeats the two measurements from the outside with
a second automaton, which cannot keep both records accurate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import linalg as sla

from . import hilbert
from .errors import (
    CapacityError,
    DegenerateInputError,
    DimensionError,
    NotHermitianError,
    NotUnitaryError,
    ScopeError,
)
from .godel import NumberRegistry, diagonal_sentence, is_true_fixed_point
from .hilbert import RegisterLayout
from .report import Assertion, ChainReport

__all__ = [
    "MAX_EXACT_LABEL",
    "Observable",
    "Gait",
    "ChainState",
    "godel_observable",
    "proof_gait",
    "commuting_gait",
    "readout_godel_number",
    "hermitian_companion",
    "measurement_unitary",
    "albert_record_observable",
    "error_observable",
    "error_norm",
    "commutator_norm",
    "verify_error_commutator_identity",
    "construct_u1",
    "albert_chain",
    "external_chain",
]

MAX_EXACT_LABEL = 2**53 - 1
ACCURACY_TOL = 1e-9
NONCOMMUTE_MIN = 1e-6
DRIFT_TOL = 1e-11
DEFAULT_RETRIES = 16


def _float_label(x) -> float:
    if isinstance(x, (int, Fraction)) and abs(x) > MAX_EXACT_LABEL:
        raise CapacityError(f"label {x} exceeds 2**53 - 1 and cannot be stored exactly")
    return float(x)


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator on ``scope`` with exact eigenvalue labels.

    ``basis`` holds orthonormal eigenvector columns; ``labels[i]`` is the
    eigenvalue of column ``i``. ``matrix`` is the local operator, ordered as
    ``scope`` lists the registers.
    """

    matrix: np.ndarray
    scope: tuple[str, ...]
    labels: tuple
    basis: np.ndarray
    name: str = ""

    def __post_init__(self):
        m = hilbert.as_matrix(self.matrix)
        b = hilbert.as_matrix(self.basis)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not hilbert.is_hermitian(m):
            raise NotHermitianError(f"observable {self.name!r} is not Hermitian")
        if b.shape != m.shape or len(self.labels) != m.shape[0]:
            raise DimensionError("basis, labels and matrix sizes disagree")
        if not hilbert.is_unitary(b):
            raise NotUnitaryError(f"eigenbasis of {self.name!r} is not orthonormal")
        lam = np.array([_float_label(x) for x in self.labels])
        scale = max(1.0, float(np.max(np.abs(lam))))
        if hilbert.frobenius(m @ b - b * lam) > 1e-9 * scale:
            raise DimensionError(f"labels of {self.name!r} do not match its spectrum")

    @classmethod
    def diagonal(cls, labels: Sequence, scope: Sequence[str], name: str = "") -> "Observable":
        lam = [_float_label(x) for x in labels]
        n = len(lam)
        return cls(np.diag(np.asarray(lam, dtype=complex)), tuple(scope), tuple(labels), np.eye(n, dtype=complex), name)

    @classmethod
    def from_basis(cls, basis, labels: Sequence, scope: Sequence[str], name: str = "") -> "Observable":
        b = hilbert.as_matrix(basis)
        lam = np.array([_float_label(x) for x in labels])
        m = (b * lam) @ b.conj().T
        return cls((m + m.conj().T) / 2, tuple(scope), tuple(labels), b, name)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def distinct_labels(self) -> list:
        return sorted(set(self.labels))

    def is_degenerate(self) -> bool:
        return len(set(self.labels)) < len(self.labels)

    def projector(self, value) -> np.ndarray:
        cols = self.basis[:, [i for i, x in enumerate(self.labels) if x == value]]
        return cols @ cols.conj().T

    def full(self, layout: RegisterLayout) -> np.ndarray:
        return hilbert.embed(self.matrix, self.scope, layout)

    def __repr__(self):
        return f"Observable({self.name or '?'} on {self.scope}, labels={list(self.labels)})"


@dataclass(frozen=True, eq=False)
class Gait:
    """Unitary step on ``scope``, optionally paired with its Hermitian companion.

    The companion shares the gait's eigenbasis and carries integer labels by
    eigenvector rank; it is what a pointer records when the gait is measured.
    """

    matrix: np.ndarray
    scope: tuple[str, ...]
    companion: Observable | None = None
    name: str = ""

    def __post_init__(self):
        m = hilbert.as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "scope", tuple(self.scope))
        if not hilbert.is_unitary(m):
            raise NotUnitaryError(f"gait {self.name!r} is not unitary")
        if self.companion is not None and self.companion.scope != self.scope:
            raise ScopeError("companion must act on the gait's scope")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def full(self, layout: RegisterLayout) -> np.ndarray:
        return hilbert.embed(self.matrix, self.scope, layout)

    def __repr__(self):
        return f"Gait({self.name or '?'} on {self.scope})"


@dataclass
class ChainState:
    """The composite state of a chain plus a log of what was done to it."""

    layout: RegisterLayout
    vector: np.ndarray
    log: list[dict] = field(default_factory=list)

    def __post_init__(self):
        self.vector = hilbert.state_vector(self.vector)
        if self.vector.size != self.layout.total_dim:
            raise DimensionError(f"state length {self.vector.size} != {self.layout.total_dim}")
        self.log.append({"operation": "prepare", "operands": [], "norm": float(np.linalg.norm(self.vector))})

    @classmethod
    def product(cls, layout: RegisterLayout, system_amplitudes, system: str = "s") -> "ChainState":
        """``system_amplitudes`` on ``system``, every other register in ``|0>``."""
        amps = hilbert.state_vector(system_amplitudes)
        if amps.size != layout.dim(system):
            raise DimensionError(f"{amps.size} amplitudes for register {system!r} of dimension {layout.dim(system)}")
        parts = [amps if n == system else hilbert.basis_state(0, d) for n, d in layout.registers]
        v = parts[0]
        for p in parts[1:]:
            v = hilbert.tensor(v, p)
        return cls(layout, v)

    def apply(self, gait: Gait, operation: str = "") -> None:
        self.vector = hilbert.apply(gait.matrix, gait.scope, self.layout, self.vector)
        self.log.append(
            {
                "operation": operation or f"apply {gait.name}",
                "operands": list(gait.scope),
                "norm": float(np.linalg.norm(self.vector)),
            }
        )

    def extend(self, name: str, dim: int) -> "ChainState":
        """New state with a fresh register appended in ``|0>``."""
        v = hilbert.tensor(self.vector, hilbert.basis_state(0, dim))
        new = ChainState(self.layout.append(name, dim), v)
        new.log = [dict(r) for r in self.log] + [{"operation": f"append {name}", "operands": [name], "norm": float(np.linalg.norm(v))}]
        return new

    @property
    def norm_drift(self) -> float:
        return max(abs(r["norm"] - 1.0) for r in self.log)


def godel_observable(registry: NumberRegistry, layout: RegisterLayout, register: str = "s", name: str = "P") -> Observable:
    """Diagonal observable whose eigenvalue on basis state ``i`` is the Gödel number registered at ``i``.

    Unregistered indices get label 0.
    """
    d = layout.dim(register)
    if len(registry) == 0:
        raise CapacityError("registry is empty")
    if len(registry) > d:
        raise CapacityError(f"{len(registry)} numbers do not fit register {register!r} of dimension {d}")
    labels = list(registry.numbers) + [0] * (d - len(registry))
    return Observable.diagonal(labels, (register,), name)


def proof_gait(psi, target_index: int, dim: int, seed=0, scope: Sequence[str] = ("s",), name: str = "U") -> Gait:
    """Unitary taking ``psi`` exactly to basis state ``target_index``."""
    psi = hilbert.state_vector(psi)
    if psi.size != dim or not 0 <= target_index < dim:
        raise DimensionError("psi length or target index does not match dim")
    source = hilbert.basis_completion([psi], dim, seed)
    target = hilbert.basis_completion([hilbert.basis_state(target_index, dim)], dim, seed)
    return Gait(target @ source.conj().T, tuple(scope), name=name)


def commuting_gait(P: Observable, phases: Sequence[complex], name: str = "U") -> Gait:
    """``sum_j phases[j] |v_j><v_j|`` over the eigenbasis of ``P``.

    ``phases[j]`` belongs to ``P.basis[:, j]``. The companion observable
    labels eigenvector ``j`` by ``j``.
    """
    if P.is_degenerate():
        raise DegenerateInputError(f"{P.name} is degenerate; its eigenbasis is ambiguous")
    ph = np.asarray(phases, dtype=complex)
    if ph.shape != (P.dim,):
        raise DimensionError(f"need {P.dim} phases, got {ph.size}")
    if np.max(np.abs(np.abs(ph) - 1)) > 1e-9:
        raise ValueError("phases must have unit modulus")
    ph = ph / np.abs(ph)
    u = (P.basis * ph) @ P.basis.conj().T
    companion = Observable.from_basis(P.basis, range(P.dim), P.scope, name=name)
    return Gait(u, P.scope, companion, name)


def readout_godel_number(psi, U: Gait, P: Observable) -> float:
    """``<psi| U^dagger P U |psi>``: the Gödel number reached by the gait."""
    if U.scope != P.scope:
        raise ScopeError(f"gait acts on {U.scope}, observable on {P.scope}")
    return hilbert.expectation(U.matrix @ hilbert.state_vector(psi), P.matrix)


def hermitian_companion(gait: Gait) -> Observable:
    """The gait's companion; computed from a complex Schur form when absent.

    Eigenvectors are ranked by ascending phase angle in ``(-pi, pi]``.
    """
    if gait.companion is not None:
        return gait.companion
    t, z = sla.schur(gait.matrix, output="complex")
    phases = np.angle(np.diag(t))
    order = np.argsort(phases, kind="stable")
    if np.any(np.diff(phases[order]) < 1e-9):
        raise DegenerateInputError(f"gait {gait.name!r} has a repeated eigenvalue")
    return Observable.from_basis(z[:, order], range(gait.dim), gait.scope, name=gait.name)


def _as_observable(x) -> Observable:
    return hermitian_companion(x) if isinstance(x, Gait) else x


def measurement_unitary(obs, pointer: str, layout: RegisterLayout) -> Gait:
    """Pre-measurement of ``obs`` into ``pointer``.

    ``V = sum_j Pi_j (x) Shift^j`` on ``obs.scope + (pointer,)``, where
    ``Pi_j`` projects on the j-th smallest eigenvalue and ``Shift`` is the
    cyclic increment of the pointer. For a pointer starting in ``|0>`` this
    writes ``|v_j>|0> -> |v_j>|j>``. A gait is measured through its
    companion.
    """
    obs = _as_observable(obs)
    if pointer in obs.scope:
        raise ScopeError(f"pointer {pointer!r} overlaps the scope {obs.scope} of {obs.name}")
    for n in obs.scope:
        layout.position(n)
    D = layout.dim(pointer)
    values = obs.distinct_labels()
    if D < len(values):
        raise CapacityError(f"pointer {pointer!r} has {D} levels; {obs.name} has {len(values)} distinct eigenvalues")
    shift = np.roll(np.eye(D, dtype=complex), 1, axis=0)
    v = np.zeros((obs.dim * D, obs.dim * D), dtype=complex)
    step = np.eye(D, dtype=complex)
    for value in values:
        v += np.kron(obs.projector(value), step)
        step = shift @ step
    return Gait(v, obs.scope + (pointer,), name=f"measure {obs.name} -> {pointer}")


def albert_record_observable(obs, pointer: str, layout: RegisterLayout) -> Observable:
    """``G(obs)``: diagonal on ``pointer``, level ``j`` reads the j-th smallest eigenvalue.

    Levels beyond the number of distinct eigenvalues read 0. ``G`` never
    touches ``obs``'s own registers.
    """
    obs = _as_observable(obs)
    D = layout.dim(pointer)
    values = obs.distinct_labels()
    if D < len(values):
        raise CapacityError(f"pointer {pointer!r} has {D} levels; {obs.name} has {len(values)} distinct eigenvalues")
    return Observable.diagonal(values + [0] * (D - len(values)), (pointer,), f"G({obs.name})")


def error_observable(G: Observable, obs, layout: RegisterLayout) -> Observable:
    """``E = G - obs`` on the joint scope ``G.scope + obs.scope``.

    The eigenbasis is the product basis, so labels stay exact differences.
    """
    obs = _as_observable(obs)
    if set(G.scope) & set(obs.scope):
        raise ScopeError(f"record scope {G.scope} overlaps {obs.scope}")
    for n in G.scope + obs.scope:
        layout.position(n)
    ig, io = np.eye(G.dim), np.eye(obs.dim)
    m = np.kron(G.matrix, io) - np.kron(ig, obs.matrix)
    labels = [g - o for g in G.labels for o in obs.labels]
    return Observable(m, G.scope + obs.scope, labels, np.kron(G.basis, obs.basis), f"E({obs.name})")


def error_norm(G: Observable, obs, layout: RegisterLayout, vector) -> float:
    """``||E(obs)|vector>||`` without building the full error operator."""
    obs = _as_observable(obs)
    if set(G.scope) & set(obs.scope):
        raise ScopeError(f"record scope {G.scope} overlaps {obs.scope}")
    diff = hilbert.apply(G.matrix, G.scope, layout, vector) - hilbert.apply(obs.matrix, obs.scope, layout, vector)
    return float(np.linalg.norm(diff))


def commutator_norm(a, b, layout: RegisterLayout) -> float:
    """Frobenius norm of ``[a, b]`` on the union of their scopes (layout order)."""
    sub = layout.sub(tuple(a.scope) + tuple(b.scope))
    return hilbert.frobenius(hilbert.commutator(a.full(sub), b.full(sub)))


def verify_error_commutator_identity(P: Observable, U_obs: Observable, G_P: Observable, G_U: Observable, layout: RegisterLayout) -> float:
    """``||[E(P), E(U)] - [P, U]||_F`` in the full layout.

    ``P`` and ``U_obs`` share the system scope; the records sit on two
    distinct pointers outside it.
    """
    U_obs = _as_observable(U_obs)
    if P.scope != U_obs.scope:
        raise ScopeError("P and U must act on the same system registers")
    if len(G_P.scope) != 1 or len(G_U.scope) != 1 or G_P.scope == G_U.scope:
        raise ScopeError("records must live on two distinct single pointers")
    if (set(G_P.scope) | set(G_U.scope)) & set(P.scope):
        raise ScopeError("records may not act on the system registers")
    p, u = P.full(layout), U_obs.full(layout)
    e_p = G_P.full(layout) - p
    e_u = G_U.full(layout) - u
    return hilbert.frobenius(hilbert.commutator(e_p, e_u) - hilbert.commutator(p, u))


def _scope_factor(state: ChainState, scope: Sequence[str]) -> np.ndarray:
    """The factor of ``state`` on ``scope`` when the state is a product across ``scope``."""
    layout = state.layout
    axes = [layout.position(n) for n in scope]
    rest = [i for i in range(len(layout.dims)) if i not in axes]
    t = np.transpose(state.vector.reshape(layout.dims), axes + rest)
    m = t.reshape(layout.scope_dim(scope), -1)
    u, s, vh = np.linalg.svd(m)
    if len(s) > 1 and s[1] > 1e-10:
        raise ScopeError(f"state is entangled with registers outside {tuple(scope)}")
    return u[:, 0]


def construct_u1(
    state: ChainState,
    P: Observable | None = None,
    scope: Sequence[str] = ("s", "a1"),
    seed=0,
    label_spread=1,
    retries: int = DEFAULT_RETRIES,
    require_noncommuting: bool = True,
    name: str = "U1",
) -> tuple[Gait, Observable]:
    """A gait on ``scope`` having the current state as an eigenvector.

    The eigenbasis is a seeded completion of the state's ``scope`` factor
    ``b_0``. The companion has labels ``j * label_spread`` (so ``b_0`` reads
    0), the gait has phases ``exp(2 pi i j / n)``.

    With ``P`` given and ``require_noncommuting``, ``||[P, H]||_F > 1e-6``
    is enforced; seeds ``seed + 1, ..., seed + retries`` are tried in turn
    if it fails. A state that is itself a ``P`` eigenvector admits a
    commuting choice, so it is rejected up front as degenerate input.
    """
    scope = tuple(scope)
    sub = state.layout.sub(scope)
    scope = sub.names
    b0 = _scope_factor(state, scope)
    n = b0.size
    p_local = None
    if P is not None:
        if not set(P.scope) <= set(scope):
            raise ScopeError(f"{P.name} acts outside {scope}")
        p_local = P.full(sub)
        if require_noncommuting:
            pv = p_local @ b0
            mean = np.vdot(b0, pv)
            scale = max(1.0, float(np.max(np.abs(P.matrix))))
            if np.linalg.norm(pv - mean * b0) <= 1e-9 * scale:
                raise DegenerateInputError(
                    f"state is an eigenvector of {P.name}; a gait commuting with it is not excluded"
                )
    labels = [j * label_spread for j in range(n)]
    if len(set(labels)) != n:
        raise ValueError("label_spread must be nonzero")
    phases = np.exp(2j * np.pi * np.arange(n) / n)
    for attempt in range(retries + 1):
        basis = hilbert.basis_completion([b0], n, seed + attempt)
        H = Observable.from_basis(basis, labels, scope, name=name)
        if p_local is not None and require_noncommuting:
            if hilbert.frobenius(hilbert.commutator(p_local, H.matrix)) <= NONCOMMUTE_MIN:
                continue
        U = Gait((basis * phases) @ basis.conj().T, scope, H, name)
        return U, H
    raise DegenerateInputError(f"no non-commuting completion found in {retries + 1} seeds")


def _normalized_coefficients(coefficients, d: int) -> np.ndarray:
    c = np.asarray(coefficients, dtype=complex).reshape(-1)
    if c.size != d:
        raise DimensionError(f"{c.size} coefficients for dimension {d}")
    n = np.linalg.norm(c)
    if abs(n - 1) > 1e-6:
        raise DimensionError(f"coefficients have norm {n}, expected 1")
    return c / n


def albert_chain(
    d: int,
    coefficients=None,
    pointer_dims: tuple[int, int] | None = None,
    seed: int = 0,
    numbers: Sequence[int] | None = None,
    label_spread=1,
) -> ChainReport:
    """Run the two-stage self-measurement and report the three key norms.

    The system register holds ``d`` Gödel-numbered basis states (by default
    the diagonal sentences for ``w = 1..d``, registered under ``w``). The
    state ``sum_w c_w |w>`` is recorded into ``a1``, ``U1`` is built on
    ``s + a1`` from the result, and ``U1`` is recorded into ``a2``.

    A single-branch state is reported as degenerate and the
    non-commutation check is skipped.
    """
    c = _normalized_coefficients(np.full(d, d**-0.5) if coefficients is None else coefficients, d)
    p1, p2 = pointer_dims if pointer_dims is not None else (d, d * d)
    if p1 < d:
        raise CapacityError(f"first pointer needs at least {d} levels, got {p1}")
    if p2 < d * p1:
        raise CapacityError(f"second pointer needs at least {d * p1} levels, got {p2}")

    registry = NumberRegistry(d)
    ws = list(numbers) if numbers is not None else list(range(1, d + 1))
    for w in ws:
        diagonal_sentence(w, registry)
    layout = RegisterLayout((("s", d), ("a1", p1), ("a2", p2)))
    P = godel_observable(registry, layout, "s", "P")

    state = ChainState.product(layout, c)
    state.apply(measurement_unitary(P, "a1", layout), "measure P -> a1")
    G_P = albert_record_observable(P, "a1", layout)
    acc_p1 = error_norm(G_P, P, layout, state.vector)

    notes = []
    modeled = [w for w in ws if not is_true_fixed_point(w)]
    if modeled:
        notes.append(f"diagonal sentences for w={modeled} registered under w by fiat (modeled fixed point)")
    degenerate = False
    try:
        U1, H = construct_u1(state, P, ("s", "a1"), seed, label_spread)
    except DegenerateInputError as exc:
        degenerate = True
        notes.append(f"degenerate input: {exc}")
        U1, H = construct_u1(state, P, ("s", "a1"), seed, label_spread, require_noncommuting=False)

    state.apply(measurement_unitary(H, "a2", layout), "measure U1 -> a2")
    G_U = albert_record_observable(H, "a2", layout)
    acc_p = error_norm(G_P, P, layout, state.vector)
    acc_u = error_norm(G_U, H, layout, state.vector)
    comm_u = commutator_norm(P, U1, layout)
    comm_h = commutator_norm(P, H, layout)

    assertions = [
        Assertion.check("accurate P", acc_p, ACCURACY_TOL),
        Assertion.check("accurate U1", acc_u, ACCURACY_TOL),
        (Assertion.skipped if degenerate else Assertion.check)("noncommute P U1", comm_u, NONCOMMUTE_MIN, "min"),
        Assertion.check("norm drift", state.norm_drift, DRIFT_TOL),
    ]
    return ChainReport(
        kind="albert",
        seed=seed,
        layout=layout.describe(),
        coefficients=list(c),
        godel_numbers=list(registry.numbers),
        accuracy={"E(P) psi1": acc_p1, "E(P) psi2": acc_p, "E(U1) psi2": acc_u},
        commutators={"[P,U1]": comm_u, "[P,H1]": comm_h},
        assertions=assertions,
        norm_drift=state.norm_drift,
        degenerate=degenerate,
        notes=notes,
        steps=[dict(r) for r in state.log],
        artifacts={"state": state, "P": P, "U1": U1, "H1": H, "G_P": G_P, "G_U": G_U},
    )


def external_chain(
    chain: ChainReport,
    tilde_pointer_dims: tuple[int, int] | None = None,
    seed: int | None = None,
    measure_u1: bool = True,
) -> ChainReport:
    """A second automaton records ``P`` and then ``U1`` of a finished chain.

    Fresh pointers ``t1`` and ``t2`` start in ``|0>``. The second
    measurement entangles ``s + a1`` with ``t2`` and spoils the ``P``
    record in ``t1``, so for generic input the two error norms cannot both
    vanish. With ``measure_u1=False`` only ``P`` is recorded.
    """
    art = chain.artifacts
    P, H = art["P"], art["H1"]
    base: ChainState = art["state"]
    if tilde_pointer_dims is None:
        tilde_pointer_dims = (base.layout.dim("a1"), base.layout.dim("a2"))
    t1, t2 = tilde_pointer_dims
    state = base.extend("t1", t1).extend("t2", t2)
    layout = state.layout

    state.apply(measurement_unitary(P, "t1", layout), "external measure P -> t1")
    G_P = albert_record_observable(P, "t1", layout)
    if measure_u1:
        state.apply(measurement_unitary(H, "t2", layout), "external measure U1 -> t2")
    G_U = albert_record_observable(H, "t2", layout)
    acc_p = error_norm(G_P, P, layout, state.vector)
    acc_u = error_norm(G_U, H, layout, state.vector)
    worst = max(acc_p, acc_u) if measure_u1 else acc_p

    if measure_u1:
        check = Assertion.skipped if chain.degenerate else Assertion.check
        assertions = [check("external joint accuracy violated", worst, NONCOMMUTE_MIN, "min")]
    else:
        assertions = [Assertion.check("external accurate P", acc_p, ACCURACY_TOL)]
    assertions.append(Assertion.check("norm drift", state.norm_drift, DRIFT_TOL))
    return ChainReport(
        kind="external",
        seed=chain.seed if seed is None else seed,
        layout=layout.describe(),
        coefficients=list(chain.coefficients),
        godel_numbers=list(chain.godel_numbers),
        accuracy={"E~(P) phi": acc_p, "E~(U1) phi": acc_u},
        commutators=dict(chain.commutators),
        assertions=assertions,
        norm_drift=state.norm_drift,
        degenerate=chain.degenerate,
        notes=list(chain.notes),
        steps=[dict(r) for r in state.log],
        artifacts={"state": state, "P": P, "H1": H, "G_P": G_P, "G_U": G_U},
    )
