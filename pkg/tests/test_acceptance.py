"""Exit criteria. Each test prints one ``[criterion N] PASS|FAIL`` line.

Run just this gate with ``pytest tests/test_acceptance.py -v``.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from albert_automata import automaton as am
from albert_automata import demo_script, hilbert
from albert_automata.errors import DegenerateInputError
from albert_automata.godel import TOKEN_IDS, NumberRegistry, decode, encode
from albert_automata.hilbert import RegisterLayout

import oracles

# Frozen from oracles.external_chain_norms; equals 1/sqrt(2) in closed form.
EXTERNAL_D2_SEED42 = 0.7071067811865478
DRAW_SEED = 20261015


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return emit


def generic_draws(count, dims=(2, 3, 4), seed=DRAW_SEED):
    """(d, coefficients, seed) with at least two coefficients of modulus > 0.1."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        d = int(rng.choice(dims))
        c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        c /= np.linalg.norm(c)
        if np.sum(np.abs(c) > 0.1) < 2:
            continue
        out.append((d, c, int(rng.integers(0, 2**32))))
    return out


def test_criterion_1_joint_accuracy(verdict):
    t0 = time.perf_counter()
    bad = []
    worst_acc, least_comm = 0.0, np.inf
    for d, c, s in generic_draws(100):
        r = am.albert_chain(d, c, seed=s)
        ep, eu, cm = r.accuracy["E(P) psi2"], r.accuracy["E(U1) psi2"], r.commutators["[P,U1]"]
        worst_acc, least_comm = max(worst_acc, ep, eu), min(least_comm, cm)
        if not (ep <= 1e-9 and eu <= 1e-9 and cm > 1e-6):
            bad.append((d, s))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    verdict(1, ok, f"100 draws, failures={len(bad)}, max accuracy norm={worst_acc:.2e}, "
                   f"min ||[P,U1]||={least_comm:.3f}, {elapsed:.2f}s")
    assert ok, bad


def test_criterion_2_error_commutator_identity(verdict):
    rng = np.random.default_rng(DRAW_SEED + 2)
    worst = 0.0
    for _ in range(50):
        d = int(rng.choice([2, 3, 4]))
        layout = RegisterLayout.of(s=d, gp=d, gu=d)
        numbers = rng.choice(np.arange(1, 60), size=d, replace=False)
        P = am.godel_observable(NumberRegistry(d, numbers.tolist()), layout, "s")
        basis = hilbert.basis_completion([], d, int(rng.integers(2**32)))
        U = am.Observable.from_basis(basis, list(range(d)), ("s",), "U")
        GP = am.albert_record_observable(P, "gp", layout)
        GU = am.albert_record_observable(U, "gu", layout)
        worst = max(worst, am.verify_error_commutator_identity(P, U, GP, GU, layout))
    ok = worst <= 1e-10
    verdict(2, ok, f"50 configurations, max ||[E(P),E(U)] - [P,U]||_F = {worst:.2e}")
    assert ok


def test_criterion_3_branch_accuracy(verdict):
    worst, count = 0.0, 0
    for d in range(2, 7):
        layout = RegisterLayout.of(s=d, a1=d)
        numbers = [encode(["S"] * k + ["0"]) for k in range(d)]
        P = am.godel_observable(NumberRegistry(d, numbers), layout, "s")
        V = am.measurement_unitary(P, "a1", layout)
        G = am.albert_record_observable(P, "a1", layout)
        E = am.error_observable(G, P, layout).full(layout)
        for k in range(d):
            state = am.ChainState.product(layout, hilbert.basis_state(k, d))
            state.apply(V)
            worst = max(worst, am.error_norm(G, P, layout, state.vector), np.linalg.norm(E @ state.vector))
            count += 1
    ok = worst <= 1e-12
    verdict(3, ok, f"{count} eigenstates (d=2..6), max ||E(P) psi|| = {worst:.2e}")
    assert ok


def test_criterion_4_commuting_vs_u1(verdict):
    rng = np.random.default_rng(DRAW_SEED + 4)
    worst_commuting = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 7))
        numbers = rng.choice(np.arange(1, 30000), size=d, replace=False).tolist()
        P = am.godel_observable(NumberRegistry(d, numbers), RegisterLayout.of(s=d), "s")
        U = am.commuting_gait(P, np.exp(2j * np.pi * rng.random(d)))
        worst_commuting = max(worst_commuting, hilbert.frobenius(hilbert.commutator(P.matrix, U.matrix)))

    noncommuting, exhausted = 0, 0
    for d, c, s in generic_draws(100, seed=DRAW_SEED + 40):
        layout = RegisterLayout.of(s=d, a1=d)
        P = am.godel_observable(NumberRegistry(d, range(1, d + 1)), layout, "s")
        state = am.ChainState.product(layout, c)
        state.apply(am.measurement_unitary(P, "a1", layout))
        try:
            U1, _ = am.construct_u1(state, P, ("s", "a1"), seed=s)
        except DegenerateInputError:
            exhausted += 1
            continue
        noncommuting += am.commutator_norm(P, U1, layout) > 1e-6

    flagged = 0
    for d in (2, 3, 4):
        for k in range(d):
            layout = RegisterLayout.of(s=d, a1=d)
            P = am.godel_observable(NumberRegistry(d, range(1, d + 1)), layout, "s")
            state = am.ChainState.product(layout, hilbert.basis_state(k, d))
            state.apply(am.measurement_unitary(P, "a1", layout))
            try:
                am.construct_u1(state, P, seed=k)
            except DegenerateInputError:
                flagged += 1
    degenerate_reports = [am.albert_chain(d, hilbert.basis_state(0, d), seed=1).status for d in (2, 3, 4)]

    ok = (worst_commuting <= 1e-12 and noncommuting >= 95 and exhausted == 0 and flagged == 9
          and degenerate_reports == ["degenerate"] * 3)
    verdict(4, ok, f"commuting max ||[P,U]||={worst_commuting:.1e}; U1 non-commuting {noncommuting}/100 "
                   f"(generic retries exhausted: {exhausted}); degenerate flagged {flagged}/9, "
                   f"chain status {set(degenerate_reports)}")
    assert ok


def test_criterion_5_external_contrast(verdict):
    violated = 0
    for d, c, s in generic_draws(100, seed=DRAW_SEED + 5):
        ext = am.external_chain(am.albert_chain(d, c, seed=s))
        violated += max(ext.accuracy["E~(P) phi"], ext.accuracy["E~(U1) phi"]) > 1e-6
    sq = 2**-0.5
    r = am.albert_chain(2, [sq, sq], (2, 4), seed=42)
    ext = am.external_chain(r)
    oracle = oracles.external_chain_norms([1, 2], [sq, sq], r.artifacts["H1"].matrix, 2, 4, 2, 4)[0]
    got = ext.accuracy["E~(P) phi"]
    ok = violated >= 95 and abs(got - EXTERNAL_D2_SEED42) <= 1e-9 and abs(oracle - EXTERNAL_D2_SEED42) <= 1e-9
    verdict(5, ok, f"joint accuracy violated on {violated}/100; d=2 seed 42: {got:.16f} vs oracle {EXTERNAL_D2_SEED42}")
    assert ok


def test_criterion_6_godel_codec(verdict):
    rng = np.random.default_rng(DRAW_SEED + 6)
    alphabet = sorted(TOKEN_IDS)
    mismatches = 0
    for _ in range(1000):
        toks = [alphabet[i] for i in rng.integers(0, len(alphabet), size=int(rng.integers(1, 13)))]
        mismatches += decode(encode(toks)).tokens != tuple(toks)
    positional = 10 * 14**3 + 8 * 14**2 + 7 * 14 + 9
    ok = mismatches == 0 and encode("p ( w )") == positional == 29115
    verdict(6, ok, f"1000 round trips, {mismatches} mismatches; encode('p ( w )') = {encode('p ( w )')}")
    assert ok


def test_criterion_7_structural(verdict):
    rng = np.random.default_rng(DRAW_SEED + 7)
    worst_unitary = worst_record = worst_drift = 0.0
    for d, c, s in generic_draws(30, seed=DRAW_SEED + 70):
        r = am.albert_chain(d, c, seed=s)
        art = r.artifacts
        layout = art["state"].layout
        P, U1, H = art["P"], art["U1"], art["H1"]
        gaits = [
            U1,
            am.measurement_unitary(P, "a1", layout),
            am.measurement_unitary(H, "a2", layout),
            am.commuting_gait(P, np.exp(2j * np.pi * rng.random(d))),
            am.proof_gait(c, int(rng.integers(d)), d, s),
        ]
        for g in gaits:
            worst_unitary = max(worst_unitary, hilbert.frobenius(g.matrix.conj().T @ g.matrix - np.eye(g.dim)))
        U_obs = am.commuting_gait(P, np.exp(2j * np.pi * rng.random(d))).companion
        system_obs = [P, U_obs]
        records = [art["G_P"], art["G_U"], am.albert_record_observable(U_obs, "a2", layout)]
        for G in records:
            for X in system_obs + [g for g in records if g.scope != G.scope]:
                worst_record = max(worst_record, am.commutator_norm(G, X, layout))
        worst_drift = max(worst_drift, r.norm_drift, am.external_chain(r).norm_drift)
    ok = worst_unitary <= 1e-10 and worst_record <= 1e-12 and worst_drift < 1e-11
    verdict(7, ok, f"max ||U^dag U - I||={worst_unitary:.1e}, max record commutator={worst_record:.1e}, "
                   f"max norm drift={worst_drift:.1e}")
    assert ok


def test_criterion_8_determinism(verdict, tmp_path):
    script = tmp_path / "albert_demo.scn"
    script.write_text(demo_script())
    cmd = [sys.executable, "-m", "albert_automata", "run", str(script), "--json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == second.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    verdict(8, ok, f"two runs of the demo script (seed 42): {len(first.stdout)} bytes, identical={first.stdout == second.stdout}")
    assert ok
