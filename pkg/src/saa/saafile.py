"""Reading and writing the line-based ``.saa`` text format.

    saa 1
    p <prime>
    n <half-dim>
    x i j k value      # (x_i y_j, y_k) = value, 1 <= i < j < k <= n
    y i j k value      # (y_i y_j, y_k) = value
    t a b c value      # gamma_abc on global indices 1 <= a < b < c <= 2n

Values lie in [1, p). A triple may appear only once, counting x/y lines by
the global triple they denote.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .algebra import Algebra, TernaryForm
from .field import PrimeField, is_prime
from .presentation import NilpotentPresentation, presentation_from_form, x_index, y_index


class SaaParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SaaFile:
    p: int
    n: int
    form: TernaryForm
    used_global: bool

    def algebra(self) -> Algebra:
        return Algebra(PrimeField(self.p), self.n, self.form)

    def presentation(self) -> NilpotentPresentation | None:
        return presentation_from_form(self.form)


def _ints(tokens, lineno, count):
    if len(tokens) != count:
        raise SaaParseError(lineno, f"expected {count} integers, got {len(tokens)}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise SaaParseError(lineno, f"not an integer in {' '.join(tokens)!r}") from None


def parse_saa(text: str) -> SaaFile:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body.split()))
    if not lines:
        raise SaaParseError(1, "empty file")

    header = ["saa", "p", "n"]
    values = []
    for (lineno, toks), want in zip(lines, header):
        if toks[0] != want:
            raise SaaParseError(lineno, f"expected '{want}' line, got {toks[0]!r}")
        (v,) = _ints(toks[1:], lineno, 1)
        values.append(v)
    if len(lines) < 3:
        raise SaaParseError(lines[-1][0], "missing header lines (saa/p/n)")
    version, p, n = values
    if version != 1:
        raise SaaParseError(lines[0][0], f"unsupported version {version}")
    if not is_prime(p) or p >= 2**31:
        raise SaaParseError(lines[1][0], f"{p} is not a supported prime")
    if n < 0:
        raise SaaParseError(lines[2][0], "n must be nonnegative")

    form = {}
    used_global = False
    for lineno, toks in lines[3:]:
        kind = toks[0]
        if kind not in ("x", "y", "t"):
            raise SaaParseError(lineno, f"unknown stanza {kind!r}")
        a, b, c, v = _ints(toks[1:], lineno, 4)
        if not 1 <= v < p:
            raise SaaParseError(lineno, f"value {v} outside [1, {p})")
        if kind == "t":
            used_global = True
            if not 1 <= a < b < c <= 2 * n:
                raise SaaParseError(lineno, f"need 1 <= a < b < c <= {2 * n}")
            key = (a, b, c)
        else:
            if not 1 <= a < b < c <= n:
                raise SaaParseError(lineno, f"need 1 <= i < j < k <= {n}")
            first = x_index(a) if kind == "x" else y_index(a)
            key = (first, y_index(b), y_index(c))
        if key in form:
            raise SaaParseError(lineno, f"duplicate triple {kind} {a} {b} {c}")
        form[key] = v
    return SaaFile(p, n, TernaryForm.from_dict(p, n, form), used_global)


def load_saa(path) -> SaaFile:
    return parse_saa(Path(path).read_text())


def dumps_saa(obj, comment: str | None = None) -> str:
    """Serialize an Algebra or NilpotentPresentation; x/y stanzas when possible."""
    if isinstance(obj, NilpotentPresentation):
        p, n, P, form = obj.p, obj.n, obj, obj.ternary_form()
    else:
        p, n, form = obj.p, obj.n, obj.form
        P = presentation_from_form(form)
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out += ["saa 1", f"p {p}", f"n {n}"]
    if P is not None:
        out += [f"x {i} {j} {k} {v}" for (i, j, k), v in P.alpha]
        out += [f"y {i} {j} {k} {v}" for (i, j, k), v in P.beta]
    else:
        out += [f"t {a} {b} {c} {v}" for (a, b, c), v in form.values]
    return "\n".join(out) + "\n"


def save_saa(path, obj, comment: str | None = None) -> None:
    Path(path).write_text(dumps_saa(obj, comment))
