# %% [markdown]
# # Scenario scripts
#
# The same chain, written in the line-oriented scenario language. The
# bundled script is what `albert-automata run` executes.

# %%
from albert_automata import demo_script, execute, parse, render
from albert_automata.protocol import ParseError

print(demo_script())

# %%
scenario = parse(demo_script())
report = execute(scenario)
print(report.to_text())

# %% [markdown]
# `render` gives the canonical form; parsing it again yields the same scenario.

# %%
print(render(scenario))
assert parse(render(scenario)) == scenario

# %% [markdown]
# Errors carry the line and column.

# %%
try:
    parse(demo_script().replace("measure P -> a1", "measure Q -> a1"))
except ParseError as exc:
    print(exc)
