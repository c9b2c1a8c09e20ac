# %% [markdown]
# # The view from outside
#
# A second automaton with fresh pointers `t1`, `t2` measures the same two
# observables on the finished chain. Its second measurement disturbs its
# first record: `E~(P)` no longer vanishes.

# %%
import numpy as np

from albert_automata.automaton import albert_chain, external_chain

chain = albert_chain(2, seed=42)
ext = external_chain(chain)
print(ext.to_text())

# %% [markdown]
# For two equally weighted branches the spoiled record has norm exactly
# `1/sqrt(2)`, whatever completion was drawn for `U1`.

# %%
print([round(external_chain(albert_chain(2, seed=s)).accuracy["E~(P) phi"], 15) for s in range(5)])

# %%
rng = np.random.default_rng(11)
violated = 0
for k in range(100):
    d = int(rng.integers(2, 5))
    c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    e = external_chain(albert_chain(d, c / np.linalg.norm(c), seed=k))
    violated += max(e.accuracy.values()) > 1e-6
print(f"joint accuracy violated for the outside automaton in {violated}/100 runs")

# %% [markdown]
# Recording only `P` is always fine.

# %%
print(external_chain(chain, measure_u1=False).accuracy["E~(P) phi"])
