# %% [markdown]
# # Observables and proof gaits
#
# The system register carries a diagonal observable `P` whose eigenvalues
# are Gödel numbers. A proof gait is a unitary taking some start state to
# an eigenstate of `P`; measuring `P` afterwards reads the Gödel number.

# %%
import numpy as np

from albert_automata import hilbert
from albert_automata.automaton import commuting_gait, godel_observable, proof_gait, readout_godel_number
from albert_automata.godel import NumberRegistry
from albert_automata.hilbert import RegisterLayout

layout = RegisterLayout.of(s=3)
P = godel_observable(NumberRegistry(3, [5, 9, 29115]), layout, "s")
print(P)

# %% [markdown]
# Map an arbitrary start state onto basis state 2 (Gödel number 29115).

# %%
rng = np.random.default_rng(0)
psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
psi /= np.linalg.norm(psi)
U = proof_gait(psi, 2, 3, seed=1)
print("readout:", readout_godel_number(psi, U, P))
print("||U^dag U - I|| =", hilbert.frobenius(U.matrix.conj().T @ U.matrix - np.eye(3)))

# %% [markdown]
# A gait that leaves every eigenstate of `P` in place (up to a phase)
# commutes with `P`. A generic proof gait does not.

# %%
C = commuting_gait(P, np.exp(1j * np.array([0.3, 1.1, 2.0])))
print("||[P, C]|| =", hilbert.frobenius(hilbert.commutator(P.matrix, C.matrix)))
print("||[P, U]|| =", hilbert.frobenius(hilbert.commutator(P.matrix, U.matrix)))
