"""Tokenizer, parser and pretty-printer for the ``.chn`` script language.

Grammar::

    script     := stmt*
    stmt       := ringdecl | idealdecl | quotdecl | moduledecl | setdecl | task
    ringdecl   := "ring" NAME "=" "char" INT "," "vars" NAME+ ";"
    idealdecl  := "ideal" NAME "=" poly ("," poly)* ";"
    quotdecl   := "quotient" NAME "=" NAME "/" NAME [flags] ";"
    flags      := "[" NAME "=" value ("," NAME "=" value)* "]"
    moduledecl := "module" NAME "=" "rank" INT ":" vector ("," vector)* ";"
    vector     := "[" poly ("," poly)* "]"
    setdecl    := "set" NAME "=" INT ";"
    task       := "task" NAME NAME* (NAME "=" INT)* ";"
    poly       := ["+" | "-"] term (("+" | "-") term)*
    term       := [INT] factor ("*" factor)* | INT
    factor     := atom ["^" INT]
    atom       := NAME | INT | "(" poly ")"

A coefficient may be written directly before a variable (``3x``) but two
variables must be separated by ``*``.  Ideals, quotients and modules live
in the most recently declared ring.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import Polynomial, PolyRing
from .errors import InputError


class ScriptError(InputError):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected: frozenset = frozenset()):
        self.line = line
        self.col = col
        self.expected = expected
        where = f"{line}:{col}: " if line else ""
        hint = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{where}{message}{hint}")


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[=,;:/\[\]()+\-*^])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, sym, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ScriptError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("int", "name", "sym"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, expected=(), tok: Token | None = None):
        t = tok or self.tok
        found = repr(t.text) if t.kind != "eof" else "end of input"
        raise ScriptError(f"{msg}, found {found}", t.line, t.col, frozenset(expected))

    def expect_sym(self, s: str) -> Token:
        if self.tok.kind == "sym" and self.tok.text == s:
            return self.advance()
        self.fail("syntax error", {repr(s)})

    def expect_kw(self, kw: str) -> Token:
        if self.tok.kind == "name" and self.tok.text == kw:
            return self.advance()
        self.fail("syntax error", {repr(kw)})

    def expect_name(self, what: str = "name") -> Token:
        if self.tok.kind == "name":
            return self.advance()
        self.fail("syntax error", {what})

    def expect_int(self) -> int:
        if self.tok.kind == "int":
            return int(self.advance().text)
        self.fail("syntax error", {"integer"})

    def at_sym(self, *syms: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text in syms


# -- polynomials ------------------------------------------------------------

_TERM_FOLLOW = {"'+'", "'-'", "'*'", "','", "';'", "')'", "']'"}


def _parse_poly(cur: _Cursor, ring: PolyRing) -> Polynomial:
    sign = 1
    if cur.at_sym("+", "-"):
        sign = -1 if cur.advance().text == "-" else 1
    result = _parse_term(cur, ring) * sign
    while cur.at_sym("+", "-"):
        op = cur.advance().text
        t = _parse_term(cur, ring)
        result = result + t if op == "+" else result - t
    return result


def _parse_term(cur: _Cursor, ring: PolyRing) -> Polynomial:
    if cur.tok.kind == "int" and (cur.peek().kind == "name" or (cur.peek().kind == "sym" and cur.peek().text == "(")):
        # implicit coefficient: 3x, 2(x+y)
        coeff = ring.const(int(cur.advance().text))
        result = coeff * _parse_factor(cur, ring)
    else:
        result = _parse_factor(cur, ring)
    while cur.at_sym("*"):
        cur.advance()
        result = result * _parse_factor(cur, ring)
    if cur.tok.kind in ("name", "int") or cur.at_sym("("):
        cur.fail("syntax error: missing '*' between factors", _TERM_FOLLOW)
    return result


def _parse_factor(cur: _Cursor, ring: PolyRing) -> Polynomial:
    base = _parse_atom(cur, ring)
    if cur.at_sym("^"):
        cur.advance()
        base = base ** cur.expect_int()
    return base


def _parse_atom(cur: _Cursor, ring: PolyRing) -> Polynomial:
    t = cur.tok
    if t.kind == "int":
        cur.advance()
        return ring.const(int(t.text))
    if t.kind == "name":
        if t.text not in ring.variables:
            raise ScriptError(f"undeclared variable {t.text!r}", t.line, t.col)
        cur.advance()
        return ring.var(t.text)
    if cur.at_sym("("):
        cur.advance()
        inner = _parse_poly(cur, ring)
        cur.expect_sym(")")
        return inner
    cur.fail("syntax error", {"integer", "variable", "'('"})


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    cur = _Cursor(tokenize(text))
    f = _parse_poly(cur, ring)
    if cur.tok.kind != "eof":
        cur.fail("syntax error", {"'+'", "'-'", "'*'", "end of input"})
    return f


# -- statements -------------------------------------------------------------


@dataclass(frozen=True)
class RingDecl:
    name: str
    char: int
    vars: tuple[str, ...]
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    gens: tuple[Polynomial, ...]
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class QuotDecl:
    name: str
    base: str
    ideal: str
    flags: tuple[tuple[str, bool], ...] = ()
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    ring: str
    rank: int
    gens: tuple[tuple[Polynomial, ...], ...]
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SetDecl:
    key: str
    value: int
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Task:
    kind: str
    args: tuple[str, ...]
    options: tuple[tuple[str, int], ...] = ()
    pos: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Script:
    statements: tuple = ()


QUOTIENT_FLAGS = ("cm_expected", "unmixed", "domain")
CONFIG_KEYS = ("seed", "nmax", "trials", "char")

# argument kinds per task: r = ring (declared ring or quotient), i = ideal, m = module;
# a trailing "*" allows repetition of the last kind, "?" marks an optional last argument
TASK_SIGNATURES = {
    "gb": "i",
    "dim": "r",
    "depth": "r",
    "cm": "r",
    "length": "ri",
    "coeffs": "ri",
    "sign": "r",
    "northcott": "ri",
    "gotonishida": "rii?",
    "huckabamarley": "rii?",
    "ses": "r",
    "descent": "ri",
    "superficial": "ri",
    "reduction": "rii",
    "lift": "rii",
    "components": "i*",
    "module": "m",
}
TASK_OPTIONS = {"nmax", "trials", "seed", "smax", "cmax"}


class _Parser:
    def __init__(self, text: str, char: int | None = None):
        self.cur = _Cursor(tokenize(text))
        self.char_override = char
        self.rings: dict[str, PolyRing] = {}
        self.kinds: dict[str, str] = {}  # name -> ring/quotient/ideal/module
        self.ring_of: dict[str, str] = {}  # ideal/quotient/module -> ring name
        self.active: str | None = None

    def declare(self, tok: Token, kind: str):
        if tok.text in self.kinds:
            raise ScriptError(f"name {tok.text!r} already declared", tok.line, tok.col)
        self.kinds[tok.text] = kind

    def active_ring(self, tok: Token) -> tuple[str, PolyRing]:
        if self.active is None:
            raise ScriptError("no ring declared yet", tok.line, tok.col)
        return self.active, self.rings[self.active]

    def parse(self) -> Script:
        stmts = []
        while self.cur.tok.kind != "eof":
            stmts.append(self.statement())
        return Script(tuple(stmts))

    def statement(self):
        t = self.cur.tok
        if t.kind == "name":
            handler = {
                "ring": self.ringdecl,
                "ideal": self.idealdecl,
                "quotient": self.quotdecl,
                "module": self.moduledecl,
                "set": self.setdecl,
                "task": self.task,
            }.get(t.text)
            if handler:
                return handler()
        self.cur.fail("syntax error", {"'ring'", "'ideal'", "'quotient'", "'module'", "'set'", "'task'"})

    def ringdecl(self):
        start = self.cur.advance()
        name = self.cur.expect_name("ring name")
        self.cur.expect_sym("=")
        self.cur.expect_kw("char")
        ctok = self.cur.tok
        char = self.cur.expect_int()
        self.cur.expect_sym(",")
        self.cur.expect_kw("vars")
        names = [self.cur.expect_name("variable name").text]
        while self.cur.tok.kind == "name":
            names.append(self.cur.advance().text)
        self.cur.expect_sym(";")
        if self.char_override is not None:
            char = self.char_override
        try:
            ring = PolyRing(char, tuple(names))
        except InputError as exc:
            raise ScriptError(str(exc), ctok.line, ctok.col) from None
        self.declare(name, "ring")
        self.rings[name.text] = ring
        self.active = name.text
        return RingDecl(name.text, char, tuple(names), (start.line, start.col))

    def idealdecl(self):
        start = self.cur.advance()
        name = self.cur.expect_name("ideal name")
        rname, ring = self.active_ring(start)
        self.cur.expect_sym("=")
        gens = [_parse_poly(self.cur, ring)]
        while self.cur.at_sym(","):
            self.cur.advance()
            gens.append(_parse_poly(self.cur, ring))
        self.cur.expect_sym(";")
        self.declare(name, "ideal")
        self.ring_of[name.text] = rname
        return IdealDecl(name.text, rname, tuple(g for g in gens if not g.is_zero()), (start.line, start.col))

    def quotdecl(self):
        start = self.cur.advance()
        name = self.cur.expect_name("quotient name")
        self.cur.expect_sym("=")
        base = self.cur.expect_name("ring name")
        if self.kinds.get(base.text) != "ring":
            raise ScriptError(f"undeclared ring {base.text!r}", base.line, base.col)
        self.cur.expect_sym("/")
        ideal = self.cur.expect_name("ideal name")
        if self.kinds.get(ideal.text) != "ideal":
            raise ScriptError(f"undeclared ideal {ideal.text!r}", ideal.line, ideal.col)
        if self.ring_of[ideal.text] != base.text:
            raise ScriptError(f"ideal {ideal.text!r} does not live in {base.text!r}", ideal.line, ideal.col)
        flags = []
        if self.cur.at_sym("["):
            self.cur.advance()
            while True:
                key = self.cur.expect_name("flag name")
                if key.text not in QUOTIENT_FLAGS:
                    raise ScriptError(f"unknown flag {key.text!r}", key.line, key.col, frozenset(QUOTIENT_FLAGS))
                self.cur.expect_sym("=")
                val = self.cur.tok
                if val.kind == "name" and val.text in ("true", "false"):
                    self.cur.advance()
                    flags.append((key.text, val.text == "true"))
                else:
                    self.cur.fail("syntax error", {"'true'", "'false'"})
                if self.cur.at_sym("]"):
                    self.cur.advance()
                    break
                self.cur.expect_sym(",")
        self.cur.expect_sym(";")
        self.declare(name, "quotient")
        self.ring_of[name.text] = base.text
        return QuotDecl(name.text, base.text, ideal.text, tuple(flags), (start.line, start.col))

    def moduledecl(self):
        start = self.cur.advance()
        name = self.cur.expect_name("module name")
        rname, ring = self.active_ring(start)
        self.cur.expect_sym("=")
        self.cur.expect_kw("rank")
        rank = self.cur.expect_int()
        if rank < 1:
            raise ScriptError("module rank must be positive", start.line, start.col)
        self.cur.expect_sym(":")
        gens = []
        while True:
            vt = self.cur.expect_sym("[")
            vec = [_parse_poly(self.cur, ring)]
            while self.cur.at_sym(","):
                self.cur.advance()
                vec.append(_parse_poly(self.cur, ring))
            self.cur.expect_sym("]")
            if len(vec) != rank:
                raise ScriptError(f"arity mismatch: vector has {len(vec)} entries, rank is {rank}", vt.line, vt.col)
            gens.append(tuple(vec))
            if not self.cur.at_sym(","):
                break
            self.cur.advance()
        self.cur.expect_sym(";")
        self.declare(name, "module")
        self.ring_of[name.text] = rname
        return ModuleDecl(name.text, rname, rank, tuple(gens), (start.line, start.col))

    def setdecl(self):
        start = self.cur.advance()
        key = self.cur.expect_name("config key")
        if key.text not in CONFIG_KEYS:
            raise ScriptError(f"unknown config key {key.text!r}", key.line, key.col, frozenset(CONFIG_KEYS))
        self.cur.expect_sym("=")
        value = self.cur.expect_int()
        self.cur.expect_sym(";")
        return SetDecl(key.text, value, (start.line, start.col))

    def task(self):
        start = self.cur.advance()
        kind = self.cur.expect_name("task name")
        if kind.text not in TASK_SIGNATURES:
            raise ScriptError(f"unknown task {kind.text!r}", kind.line, kind.col, frozenset(TASK_SIGNATURES))
        args: list[Token] = []
        options = []
        while self.cur.tok.kind == "name":
            if self.cur.peek().kind == "sym" and self.cur.peek().text == "=":
                key = self.cur.advance()
                if key.text not in TASK_OPTIONS:
                    raise ScriptError(f"unknown task option {key.text!r}", key.line, key.col, frozenset(TASK_OPTIONS))
                self.cur.advance()
                options.append((key.text, self.cur.expect_int()))
            else:
                if options:
                    self.cur.fail("syntax error: arguments must precede options", {"option", "';'"})
                args.append(self.cur.advance())
        self.cur.expect_sym(";")
        self.check_task(kind, args)
        return Task(kind.text, tuple(a.text for a in args), tuple(options), (start.line, start.col))

    def check_task(self, kind: Token, args: list[Token]):
        sig = TASK_SIGNATURES[kind.text]
        repeat = sig.endswith("*")
        optional = sig.endswith("?")
        core = sig.rstrip("*?")
        n = len(args)
        if repeat:
            ok = n >= 1
            expected = [core[-1]] * n
        elif optional:
            ok = len(core) - 1 <= n <= len(core)
            expected = list(core[:n])
        else:
            ok = n == len(core)
            expected = list(core)
        if not ok:
            raise ScriptError(
                f"arity mismatch: task {kind.text!r} takes {sig!r} arguments, got {n}", kind.line, kind.col
            )
        want = {"r": ("ring", "quotient"), "i": ("ideal",), "m": ("module",)}
        rings = set()
        for tok, k in zip(args, expected):
            got = self.kinds.get(tok.text)
            if got is None:
                raise ScriptError(f"undeclared name {tok.text!r}", tok.line, tok.col)
            if got not in want[k]:
                raise ScriptError(f"{tok.text!r} is a {got}, expected a {' or '.join(want[k])}", tok.line, tok.col)
            rings.add(tok.text if got == "ring" else self.ring_of[tok.text])
        if len(rings) > 1:
            raise ScriptError(f"task {kind.text!r} mixes rings {sorted(rings)}", kind.line, kind.col)


def parse_script(text: str, char: int | None = None) -> Script:
    """Parse a script; ``char`` replaces every declared characteristic."""
    return _Parser(text, char).parse()


def script_char(text: str) -> int | None:
    """Value of a ``set char = P;`` directive, found without building any ring."""
    toks = tokenize(text)
    for i in range(len(toks) - 4):
        a, b, c, d = toks[i : i + 4]
        if (a.text, b.text, c.text, d.kind) == ("set", "char", "=", "int"):
            return int(d.text)
    return None


def format_script(script: Script) -> str:
    """Pretty-print a script; ``parse_script(format_script(s)) == s``."""
    lines = []
    for st in script.statements:
        if isinstance(st, RingDecl):
            lines.append(f"ring {st.name} = char {st.char}, vars {' '.join(st.vars)};")
        elif isinstance(st, IdealDecl):
            body = ", ".join(map(str, st.gens)) if st.gens else "0"
            lines.append(f"ideal {st.name} = {body};")
        elif isinstance(st, QuotDecl):
            flags = ""
            if st.flags:
                flags = " [" + ", ".join(f"{k}={'true' if v else 'false'}" for k, v in st.flags) + "]"
            lines.append(f"quotient {st.name} = {st.base} / {st.ideal}{flags};")
        elif isinstance(st, ModuleDecl):
            vecs = ", ".join("[" + ", ".join(map(str, v)) + "]" for v in st.gens)
            lines.append(f"module {st.name} = rank {st.rank} : {vecs};")
        elif isinstance(st, SetDecl):
            lines.append(f"set {st.key} = {st.value};")
        elif isinstance(st, Task):
            parts = ["task", st.kind, *st.args, *(f"{k}={v}" for k, v in st.options)]
            lines.append(" ".join(parts) + ";")
    return "\n".join(lines) + ("\n" if lines else "")
