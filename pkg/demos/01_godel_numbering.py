# %% [markdown]
# # Gödel numbering
#
# Propositions are token strings over a 13-symbol alphabet. Their Gödel
# number is the base-14 positional code of the token ids, most significant
# token first. No token has id 0, so every code decodes uniquely.

# %%
from albert_automata.godel import (
    TOKEN_IDS,
    NumberRegistry,
    decode,
    diagonal_sentence,
    encode,
    is_true_fixed_point,
)

print(TOKEN_IDS)

# %%
n = encode("p ( w )")
print(n, "=", "10*14^3 + 8*14^2 + 7*14 + 9 =", 10 * 14**3 + 8 * 14**2 + 7 * 14 + 9)
print(decode(n))

# %% [markdown]
# Numbers are Python integers, so long propositions are fine.

# %%
s = diagonal_sentence(3)
print(s)
print(encode(s), encode(s).bit_length(), "bits")

# %% [markdown]
# The diagonal sentence for `w` is *registered* under the number `w`. This
# models the self-referential fixed point rather than deriving it; the
# actual code of the sentence is different.

# %%
reg = NumberRegistry(capacity=4)
for w in (1, 2, 3):
    diagonal_sentence(w, reg)
print(reg)
print([is_true_fixed_point(w) for w in reg.numbers])

# %%
try:
    decode(14)
except ValueError as exc:
    print("decode(14):", exc)
