"""
Line-oriented scenario language for measurement chains.

One statement per line; ``#`` starts a comment. Grammar::

    seed <u64>
    system <name> dim=<n>
    register <name> dim=<n>
    godel <name> = numbers <int> ...
    state <name> = amplitudes <complex> ...
    observable <name> = godel_diag <registry>
    gait <name> = commuting <observable> phases <complex> ...
    define <name> = eigen_including current on <register> ... [spread=<x>] [retries=<n>]
    measure <name> -> <register>
    assert accurate <name> tol=<x>
    assert noncommute <a> <b> min=<x>
    assert commute <a> <b> tol=<x>

Complex literals are ``re`` or ``re+imi`` (``1``, ``-0.5``, ``0.5-0.5i``).
Names must be declared before use; exactly one ``system`` register.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import automaton as am
from .errors import AutomatonError, DegenerateInputError
from .godel import NumberRegistry
from .hilbert import RegisterLayout
from .report import Assertion, ChainReport

__all__ = ["ParseError", "ScenarioRuntimeError", "Statement", "Scenario", "parse", "render", "execute"]

U64_MAX = 2**64 - 1
AMPLITUDE_WARN_TOL = 1e-6
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_~]*$")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, token: str = ""):
        self.line, self.column, self.message, self.token = line, column, message, token
        super().__init__(str(self))

    def __str__(self):
        tok = f" (at {self.token!r})" if self.token else ""
        return f"line {self.line}, column {self.column}: {self.message}{tok}"


class ScenarioRuntimeError(RuntimeError):
    def __init__(self, line: int, message: str):
        self.line, self.message = line, message
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Statement:
    """One parsed line. ``name`` is the declared or targeted name (for ``assert``, the check kind)."""

    keyword: str
    name: str
    args: tuple = ()
    options: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Scenario:
    seed: int | None
    registers: tuple[Statement, ...]
    statements: tuple[Statement, ...]
    source: str = field(default="", compare=False, repr=False)

    @property
    def system(self) -> Statement:
        return next(r for r in self.registers if r.keyword == "system")

    def layout(self) -> RegisterLayout:
        return RegisterLayout(tuple((r.name, r.args[0]) for r in self.registers))


class _Line:
    """Tokens of one source line with their 1-based columns."""

    def __init__(self, number: int, text: str):
        self.number = number
        self.toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]

    def fail(self, i: int, message: str):
        if i < len(self.toks):
            tok, col = self.toks[i]
        else:
            tok, col = "", (self.toks[-1][1] + len(self.toks[-1][0]) if self.toks else 1)
        raise ParseError(self.number, col, message, tok)

    def word(self, i: int) -> str:
        return self.toks[i][0] if i < len(self.toks) else ""

    def expect(self, i: int, literal: str):
        if self.word(i) != literal:
            self.fail(i, f"expected {literal!r}")

    def arity(self, n: int):
        if len(self.toks) != n:
            self.fail(min(len(self.toks), n), f"{self.word(0)} takes exactly {n - 1} fields")

    def name(self, i: int) -> str:
        w = self.word(i)
        if not _NAME.match(w):
            self.fail(i, "expected a name")
        return w

    def integer(self, i: int, lo: int = 0, hi: int | None = None) -> int:
        w = self.word(i)
        if not re.fullmatch(r"[+-]?\d+", w):
            self.fail(i, "malformed integer")
        v = int(w)
        if v < lo or (hi is not None and v > hi):
            self.fail(i, f"integer out of range [{lo}, {hi if hi is not None else 'inf'}]")
        return v

    def real(self, i: int, text: str | None = None) -> float:
        try:
            v = float(self.word(i) if text is None else text)
        except ValueError:
            self.fail(i, "malformed number")
        if not math.isfinite(v):
            self.fail(i, "number must be finite")
        return v

    def complex_(self, i: int) -> complex:
        w = self.word(i)
        try:
            v = complex(w[:-1] + "j") if w.endswith("i") else complex(float(w))
        except ValueError:
            self.fail(i, "malformed complex number")
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            self.fail(i, "number must be finite")
        return v

    def keyed(self, i: int, key: str, kind=float):
        w = self.word(i)
        if not w.startswith(key + "="):
            self.fail(i, f"expected {key}=<value>")
        text = w[len(key) + 1 :]
        if kind is int:
            if not re.fullmatch(r"\d+", text):
                self.fail(i, "malformed integer")
            return int(text)
        return self.real(i, text)


class _Validator:
    def __init__(self):
        self.kinds: dict[str, str] = {}
        self.measured: set[str] = set()
        self.system: str | None = None

    def declare(self, ln: _Line, i: int, name: str, kind: str):
        if name in self.kinds:
            ln.fail(i, f"{name!r} is already declared")
        self.kinds[name] = kind

    def use(self, ln: _Line, i: int, kinds: tuple[str, ...], what: str) -> str:
        name = ln.word(i)
        if name not in self.kinds:
            ln.fail(i, f"{name!r} is not declared")
        if self.kinds[name] not in kinds:
            ln.fail(i, f"{name!r} is a {self.kinds[name]}, expected {what}")
        return name


_OPERATOR_KINDS = ("observable", "gait")


def _parse_line(ln: _Line, v: _Validator) -> Statement:
    kw = ln.word(0)
    col = ln.toks[0][1]

    def st(name, args=(), options=()):
        return Statement(kw, name, tuple(args), tuple(options), ln.number, col)

    if kw == "seed":
        ln.arity(2)
        return st("seed", (ln.integer(1, 0, U64_MAX),))
    if kw in ("system", "register"):
        ln.arity(3)
        name = ln.name(1)
        dim = ln.keyed(2, "dim", int)
        if dim < 1:
            ln.fail(2, "dimension must be positive")
        if kw == "system" and v.system is not None:
            ln.fail(0, f"second system register (first is {v.system!r})")
        v.declare(ln, 1, name, "register")
        if kw == "system":
            v.system = name
        return st(name, (dim,))
    if kw in ("godel", "state", "observable", "gait", "define"):
        name = ln.name(1)
        ln.expect(2, "=")
        if kw == "godel":
            ln.expect(3, "numbers")
            if len(ln.toks) < 5:
                ln.fail(4, "expected at least one number")
            nums = tuple(ln.integer(i, 1) for i in range(4, len(ln.toks)))
            v.declare(ln, 1, name, "registry")
            return st(name, nums)
        if kw == "state":
            ln.expect(3, "amplitudes")
            if v.system is None:
                ln.fail(0, "state declared before the system register")
            if "state" in v.kinds.values():
                ln.fail(0, "only one state may be prepared")
            if len(ln.toks) < 5:
                ln.fail(4, "expected at least one amplitude")
            amps = tuple(ln.complex_(i) for i in range(4, len(ln.toks)))
            v.declare(ln, 1, name, "state")
            return st(name, amps)
        if kw == "observable":
            ln.expect(3, "godel_diag")
            ln.arity(5)
            if v.system is None:
                ln.fail(0, "observable declared before the system register")
            reg = v.use(ln, 4, ("registry",), "a godel registry")
            v.declare(ln, 1, name, "observable")
            return st(name, (reg,))
        if kw == "gait":
            ln.expect(3, "commuting")
            obs = v.use(ln, 4, ("observable",), "an observable")
            ln.expect(5, "phases")
            if len(ln.toks) < 7:
                ln.fail(6, "expected at least one phase")
            phases = tuple(ln.complex_(i) for i in range(6, len(ln.toks)))
            v.declare(ln, 1, name, "gait")
            return st(name, (obs,) + phases)
        # define
        ln.expect(3, "eigen_including")
        ln.expect(4, "current")
        ln.expect(5, "on")
        if "state" not in v.kinds.values():
            ln.fail(4, "no state has been prepared")
        regs, options, i = [], [], 6
        while i < len(ln.toks) and "=" not in ln.word(i):
            regs.append(v.use(ln, i, ("register",), "a register"))
            i += 1
        if not regs:
            ln.fail(6, "expected at least one register")
        while i < len(ln.toks):
            key = ln.word(i).split("=", 1)[0]
            if key == "spread":
                options.append(("spread", ln.keyed(i, "spread")))
            elif key == "retries":
                options.append(("retries", ln.keyed(i, "retries", int)))
            else:
                ln.fail(i, "unknown option (expected spread= or retries=)")
            i += 1
        v.declare(ln, 1, name, "gait")
        return st(name, tuple(regs), tuple(options))
    if kw == "measure":
        ln.arity(4)
        name = v.use(ln, 1, _OPERATOR_KINDS, "an observable or gait")
        ln.expect(2, "->")
        reg = v.use(ln, 3, ("register",), "a register")
        if "state" not in v.kinds.values():
            ln.fail(0, "no state has been prepared")
        v.measured.add(name)
        return st(name, (reg,))
    if kw == "assert":
        check = ln.word(1)
        if check == "accurate":
            ln.arity(4)
            name = v.use(ln, 2, _OPERATOR_KINDS, "an observable or gait")
            if name not in v.measured:
                ln.fail(2, f"{name!r} has not been measured")
            return st("accurate", (name,), (("tol", ln.keyed(3, "tol")),))
        if check in ("noncommute", "commute"):
            ln.arity(5)
            a = v.use(ln, 2, _OPERATOR_KINDS, "an observable or gait")
            b = v.use(ln, 3, _OPERATOR_KINDS, "an observable or gait")
            key = "min" if check == "noncommute" else "tol"
            return st(check, (a, b), ((key, ln.keyed(4, key)),))
        ln.fail(1, "unknown assertion (expected accurate, noncommute or commute)")
    ln.fail(0, "unknown keyword")


def parse(text: str) -> Scenario:
    """Parse and validate a scenario; raises :class:`ParseError` on the first problem."""
    v = _Validator()
    seed, registers, statements = None, [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        ln = _Line(number, raw.split("#", 1)[0])
        if not ln.toks:
            continue
        s = _parse_line(ln, v)
        if s.keyword == "seed":
            if seed is not None:
                ln.fail(0, "seed given twice")
            seed = s.args[0]
        elif s.keyword in ("system", "register"):
            registers.append(s)
        else:
            statements.append(s)
    if v.system is None:
        raise ParseError(max(1, len(text.splitlines())), 1, "no system register declared")
    return Scenario(seed, tuple(registers), tuple(statements), text)


def _fmt_real(x: float) -> str:
    return repr(float(x))


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return _fmt_real(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{_fmt_real(z.real)}{sign}{_fmt_real(abs(z.imag))}i"


def _render_statement(s: Statement) -> str:
    kw, opts = s.keyword, " ".join(f"{k}={v!r}" for k, v in s.options)
    if kw in ("system", "register"):
        return f"{kw} {s.name} dim={s.args[0]}"
    if kw == "godel":
        return f"godel {s.name} = numbers " + " ".join(str(n) for n in s.args)
    if kw == "state":
        return f"state {s.name} = amplitudes " + " ".join(_fmt_complex(a) for a in s.args)
    if kw == "observable":
        return f"observable {s.name} = godel_diag {s.args[0]}"
    if kw == "gait":
        return f"gait {s.name} = commuting {s.args[0]} phases " + " ".join(_fmt_complex(a) for a in s.args[1:])
    if kw == "define":
        return f"define {s.name} = eigen_including current on {' '.join(s.args)}" + (f" {opts}" if opts else "")
    if kw == "measure":
        return f"measure {s.name} -> {s.args[0]}"
    return f"assert {s.name} {' '.join(s.args)} {opts}"


def render(scenario: Scenario) -> str:
    """Canonical text form; ``parse(render(s)) == s``."""
    lines = [] if scenario.seed is None else [f"seed {scenario.seed}"]
    lines += [_render_statement(s) for s in scenario.registers + scenario.statements]
    return "\n".join(lines) + "\n"


class _Run:
    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.seed = scenario.seed if scenario.seed is not None else 0
        self.layout = scenario.layout()
        self.system = scenario.system.name
        self.registries: dict[str, NumberRegistry] = {}
        self.operators: dict[str, object] = {}
        self.records: dict[str, am.Observable] = {}
        self.measured: list[str] = []
        self.state: am.ChainState | None = None
        self.coefficients: list[complex] = []
        self.report = ChainReport(kind="scenario", seed=self.seed, layout=self.layout.describe())

    def run(self) -> ChainReport:
        for s in self.scenario.statements:
            try:
                getattr(self, "do_" + s.keyword)(s)
            except ScenarioRuntimeError:
                raise
            except (AutomatonError, ValueError) as exc:
                raise ScenarioRuntimeError(s.line, f"{s.keyword} {s.name}: {exc}") from exc
        rep = self.report
        rep.coefficients = self.coefficients
        rep.godel_numbers = sorted({n for r in self.registries.values() for n in r.numbers})
        if self.state is not None:
            rep.norm_drift = self.state.norm_drift
            rep.steps = [dict(r) for r in self.state.log]
        return rep

    def do_godel(self, s):
        reg = NumberRegistry(self.layout.dim(self.system))
        for n in s.args:
            reg.register(n)
        self.registries[s.name] = reg

    def do_state(self, s):
        amps = np.asarray(s.args, dtype=complex)
        norm = float(np.linalg.norm(amps))
        if norm == 0:
            raise ValueError("amplitudes are all zero")
        if abs(norm - 1) > AMPLITUDE_WARN_TOL:
            self.report.notes.append(f"line {s.line}: amplitudes had norm {norm:.12g}; normalized")
        amps = amps / norm
        self.state = am.ChainState.product(self.layout, amps, self.system)
        self.coefficients = list(amps)

    def do_observable(self, s):
        self.operators[s.name] = am.godel_observable(self.registries[s.args[0]], self.layout, self.system, s.name)

    def do_gait(self, s):
        self.operators[s.name] = am.commuting_gait(self.operators[s.args[0]], s.args[1:], s.name)

    def do_define(self, s):
        opts = dict(s.options)
        scope = tuple(s.args)
        spread = opts.get("spread", 1)
        retries = opts.get("retries", am.DEFAULT_RETRIES)
        candidates = [
            self.operators[n] for n in reversed(self.measured)
            if isinstance(self.operators[n], am.Observable) and set(self.operators[n].scope) <= set(scope)
        ]
        P = candidates[0] if candidates else None
        try:
            gait, _ = am.construct_u1(self.state, P, scope, self.seed, spread, retries, name=s.name)
        except DegenerateInputError as exc:
            self.report.degenerate = True
            self.report.notes.append(f"line {s.line}: degenerate input for {s.name}: {exc}")
            gait, _ = am.construct_u1(self.state, P, scope, self.seed, spread, retries, require_noncommuting=False, name=s.name)
        self.operators[s.name] = gait

    def do_measure(self, s):
        op, pointer = self.operators[s.name], s.args[0]
        self.state.apply(am.measurement_unitary(op, pointer, self.layout), f"measure {s.name} -> {pointer}")
        G = am.albert_record_observable(op, pointer, self.layout)
        self.records[s.name] = G
        self.measured.append(s.name)
        acc = am.error_norm(G, op, self.layout, self.state.vector)
        self.report.accuracy[f"E({s.name}) after line {s.line}"] = acc

    def do_assert(self, s):
        key, threshold = s.options[0]
        label = f"{s.name} {' '.join(s.args)}"
        if s.name == "accurate":
            name = s.args[0]
            value = am.error_norm(self.records[name], self.operators[name], self.layout, self.state.vector)
            self.report.assertions.append(Assertion.check(label, value, threshold, "max", s.line))
            return
        a, b = (self.operators[n] for n in s.args)
        value = am.commutator_norm(a, b, self.layout)
        self.report.commutators[f"[{s.args[0]},{s.args[1]}]"] = value
        kind = "min" if s.name == "noncommute" else "max"
        if kind == "min" and self.report.degenerate:
            self.report.assertions.append(Assertion.skipped(label, value, threshold, kind, s.line))
        else:
            self.report.assertions.append(Assertion.check(label, value, threshold, kind, s.line))


def execute(scenario: Scenario) -> ChainReport:
    """Run a parsed scenario.

    Failed assertions are recorded and execution continues; dimension or
    capacity problems raise :class:`ScenarioRuntimeError` carrying the line.
    """
    return _Run(scenario).run()
