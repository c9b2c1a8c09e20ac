# %% [markdown]
# # Self-measurement in two stages
#
# 1. The automaton records `P` in pointer `a1`. On a superposition the
#    result is entangled, `sum_w c_w |w>|w>`, and the record is accurate
#    branch by branch.
# 2. A gait `U1` on `s + a1` is built with that state as an eigenvector.
#    It cannot commute with `P`.
# 3. Recording `U1` in `a2` leaves the state unchanged, so both records are
#    accurate at once.

# %%
import numpy as np

from albert_automata import automaton as am
from albert_automata.godel import NumberRegistry
from albert_automata.hilbert import RegisterLayout

report = am.albert_chain(2, [2**-0.5, 2**-0.5], pointer_dims=(2, 4), seed=42)
print(report.to_text())

# %% [markdown]
# The error operators `E(X) = G(X) - X` fail to commute exactly as much as
# `P` and `U` do, because every record lives on its own pointer.

# %%
layout = RegisterLayout.of(s=3, gp=3, gu=3)
P = am.godel_observable(NumberRegistry(3, [5, 9, 11]), layout, "s")
basis = np.linalg.qr(np.random.default_rng(3).standard_normal((3, 3)))[0]
U = am.Observable.from_basis(basis, [0, 1, 2], ("s",), "U")
GP = am.albert_record_observable(P, "gp", layout)
GU = am.albert_record_observable(U, "gu", layout)
print("||[E(P),E(U)] - [P,U]|| =", am.verify_error_commutator_identity(P, U, GP, GU, layout))
print("||[P,U]|| =", am.commutator_norm(P, U, layout))

# %% [markdown]
# Sweep random inputs.

# %%
rng = np.random.default_rng(7)
worst = 0.0
for k in range(50):
    d = int(rng.integers(2, 5))
    c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    r = am.albert_chain(d, c / np.linalg.norm(c), seed=k)
    worst = max(worst, r.accuracy["E(P) psi2"], r.accuracy["E(U1) psi2"])
    assert r.status == "pass"
print("largest error norm over 50 chains:", worst)

# %% [markdown]
# A single-branch input is flagged instead of failed: the state is already a
# `P` eigenstate, so nothing forces `U1` away from `P`.

# %%
print(am.albert_chain(2, [1, 0], seed=42).status)
