"""Command line front end.

Subcommands: ``cw`` prints one symplectic Schubert polynomial, ``table``
prints (or checks) the whole rank-N table, ``mult`` and ``expand`` report
basis expansions, ``arakelov`` and ``height`` report arithmetic degrees.

Every command accepts ``--json`` to switch from the plain-text rendering
to the JSON schemas of the owning modules.  Output is deterministic:
rows are emitted in fixed sort orders and identical invocations produce
byte-identical bytes.  All arithmetic is exact; no floating point is
used anywhere.

Errors from bad input or unmet preconditions are reported as a single
JSON object ``{"error": ...}`` on stderr with exit code 1.  A ``table
--check`` run that finds a content mismatch exits with code 2 instead.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib import resources
from typing import Iterable, Sequence

from . import arakelov, symplectic, weyl
from .polyring import MultiPoly, elementary, elementary_squares
from .qbasis import bh_coefficients, qtilde, schubert_a
from .weyl import Partition, SignedPermutation


class CliError(Exception):
    """Input the tool cannot act on; rendered as error JSON, exit 1."""


# ---------------------------------------------------------------------------
# polynomial expressions


_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^(),])"
)

_NAMES = ("qtilde", "schubA", "e", "e2")


class _Tokens:
    """Token stream with positions, for error messages."""

    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise CliError(
                    f"syntax error at position {pos}: "
                    f"unexpected character {text[pos]!r}"
                )
            if m.lastgroup != "ws":
                self.items.append((m.lastgroup, m.group(), pos))
            pos = m.end()
        self.k = 0

    def peek(self) -> tuple[str, str, int]:
        if self.k < len(self.items):
            return self.items[self.k]
        return ("end", "", len(self.text))

    def advance(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != "end":
            self.k += 1
        return tok

    def take_op(self, op: str) -> bool:
        kind, value, _ = self.peek()
        if kind == "op" and value == op:
            self.k += 1
            return True
        return False

    def require_op(self, op: str, why: str) -> None:
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            got = repr(value) if kind != "end" else "end of input"
            raise CliError(
                f"syntax error at position {pos}: expected {op!r} {why}, got {got}"
            )
        self.k += 1


def parse_poly(text: str, n: int) -> MultiPoly:
    """Parse an exact polynomial expression in x1..xn.

    Operators ``+ - * ^`` with precedence ``^`` over ``*`` over binary
    ``+``/``-`` and a right-associative ``^`` whose exponent is a
    nonnegative integer.  Besides variables and integer literals the
    atoms include qtilde(parts...), schubA(window...), e(k) and e2(k),
    the last being an elementary symmetric polynomial in the squared
    variables.  Raises CliError with a position on malformed input.
    """
    if n < 1:
        raise CliError(f"rank must be a positive integer, got {n}")
    toks = _Tokens(text)
    poly = _parse_sum(toks, n)
    kind, value, pos = toks.peek()
    if kind != "end":
        raise CliError(f"syntax error at position {pos}: unexpected {value!r}")
    return poly


def _parse_sum(toks: _Tokens, n: int) -> MultiPoly:
    poly = _parse_product(toks, n)
    while True:
        if toks.take_op("+"):
            poly = poly + _parse_product(toks, n)
        elif toks.take_op("-"):
            poly = poly - _parse_product(toks, n)
        else:
            return poly


def _parse_product(toks: _Tokens, n: int) -> MultiPoly:
    poly = _parse_signed(toks, n)
    while toks.take_op("*"):
        poly = poly * _parse_signed(toks, n)
    return poly


def _parse_signed(toks: _Tokens, n: int) -> MultiPoly:
    sign = 1
    while True:
        if toks.take_op("-"):
            sign = -sign
        elif toks.take_op("+"):
            pass
        else:
            break
    poly = _parse_power(toks, n)
    return poly if sign == 1 else -poly


def _parse_power(toks: _Tokens, n: int) -> MultiPoly:
    poly = _parse_atom(toks, n)
    if toks.take_op("^"):
        poly = poly ** _parse_exponent(toks)
    return poly


def _parse_exponent(toks: _Tokens) -> int:
    kind, value, pos = toks.advance()
    if kind != "int":
        got = repr(value) if kind != "end" else "end of input"
        raise CliError(
            f"syntax error at position {pos}: "
            f"exponent must be a nonnegative integer, got {got}"
        )
    base = int(value)
    if toks.take_op("^"):
        return base ** _parse_exponent(toks)
    return base


def _parse_atom(toks: _Tokens, n: int) -> MultiPoly:
    kind, value, pos = toks.advance()
    if kind == "int":
        return MultiPoly.constant(int(value), n)
    if kind == "op" and value == "(":
        poly = _parse_sum(toks, n)
        toks.require_op(")", "to close the parenthesis")
        return poly
    if kind == "name":
        return _parse_name(toks, value, pos, n)
    got = repr(value) if kind != "end" else "end of input"
    raise CliError(f"syntax error at position {pos}: expected a term, got {got}")


def _parse_name(toks: _Tokens, name: str, pos: int, n: int) -> MultiPoly:
    if re.fullmatch(r"x\d+", name):
        index = int(name[1:])
        if not 1 <= index <= n:
            raise CliError(
                f"unknown variable {name!r} at position {pos}: "
                f"indices run from 1 to {n}"
            )
        return MultiPoly.x(index, n)
    if name not in _NAMES:
        raise CliError(
            f"unknown name {name!r} at position {pos}: "
            f"expected a variable x1..x{n} or one of {', '.join(_NAMES)}"
        )
    args = _parse_int_args(toks, name)
    try:
        if name == "qtilde":
            return qtilde(Partition(args), n)
        if name == "schubA":
            window = SignedPermutation(args)
            if not window.is_unbarred():
                raise ValueError("schubA takes an unbarred permutation")
            if window.n > n:
                raise ValueError(
                    f"schubA window has {window.n} entries but n={n}"
                )
            return schubert_a(weyl.embed(window, n))
        if name == "e":
            (k,) = _arity(args, 1, name, pos)
            return elementary(k, n)
        (k,) = _arity(args, 1, name, pos)
        return elementary_squares(k, n)
    except ValueError as exc:
        raise CliError(f"bad arguments to {name} at position {pos}: {exc}") from exc


def _arity(args: Sequence[int], count: int, name: str, pos: int) -> Sequence[int]:
    if len(args) != count:
        raise CliError(
            f"bad arguments to {name} at position {pos}: "
            f"expected {count} integer argument(s), got {len(args)}"
        )
    return args


def _parse_int_args(toks: _Tokens, name: str) -> tuple[int, ...]:
    toks.require_op("(", f"after {name}")
    args: list[int] = []
    if toks.take_op(")"):
        return tuple(args)
    while True:
        kind, value, pos = toks.advance()
        if kind != "int":
            got = repr(value) if kind != "end" else "end of input"
            raise CliError(
                f"syntax error at position {pos}: "
                f"{name} arguments must be integers, got {got}"
            )
        args.append(int(value))
        if toks.take_op(","):
            continue
        toks.require_op(")", f"to close the {name} argument list")
        return tuple(args)


# ---------------------------------------------------------------------------
# permutation input


def parse_permutation(text: str, n: int) -> SignedPermutation:
    """Read '-3 1 2' window notation or an 's2 s1 s0' word."""
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise CliError("empty permutation: pass a window or a word")
    if all(re.fullmatch(r"s\d+", tok) for tok in tokens):
        word = tuple(int(tok[1:]) for tok in tokens)
        bad = sorted({a for a in word if a >= n})
        if bad:
            raise CliError(
                f"word letters must lie in s0..s{n - 1}, got "
                + ", ".join(f"s{a}" for a in bad)
            )
        return weyl.from_word(word, n)
    try:
        entries = tuple(int(tok) for tok in tokens)
    except ValueError:
        raise CliError(
            f"cannot parse permutation {text!r}: expected window entries "
            "like '-3 1 2' or a word like 's2 s1 s0'"
        ) from None
    try:
        w = SignedPermutation(entries)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if w.n != n:
        raise CliError(f"window has {w.n} entries but n={n}")
    return w


# ---------------------------------------------------------------------------
# expansion rendering


def expansion_rows(expansion: dict) -> list[tuple[object, int]]:
    """Deterministic row order: Schubert indices first, then pairs."""
    schubert = []
    pairs = []
    for key, coeff in expansion.items():
        if isinstance(key, SignedPermutation):
            schubert.append(((key.length(), key.window), key, coeff))
        else:
            lam, pi = key
            pairs.append(
                ((lam.weight() + pi.length(), lam.parts, pi.window), key, coeff)
            )
    schubert.sort(key=lambda row: row[0])
    pairs.sort(key=lambda row: row[0])
    return [(key, coeff) for _, key, coeff in schubert + pairs]


def expansion_to_json(expansion: dict) -> list[dict]:
    rows = []
    for key, coeff in expansion_rows(expansion):
        if isinstance(key, SignedPermutation):
            index = {"w": list(key.window)}
        else:
            lam, pi = key
            index = {"lambda": list(lam.parts), "pi": list(pi.window)}
        rows.append({"index": index, "coeff": str(coeff)})
    return rows


def expansion_from_json(rows: Iterable[dict], n: int) -> MultiPoly:
    """Rebuild the polynomial an expansion stands for."""
    total = MultiPoly.zero(n)
    for row in rows:
        index = row["index"]
        coeff = int(row["coeff"])
        if "w" in index:
            basis = symplectic.schubert_c(SignedPermutation(index["w"]), n)
        else:
            basis = symplectic.c_pair(
                Partition(index["lambda"]), SignedPermutation(index["pi"]), n
            )
        total = total + coeff * basis
    return total


def expansion_to_text(expansion: dict) -> str:
    """One row per line: c(window) for Schubert indices, p(parts | window)
    for the non-strict pairs, each followed by its integer coefficient."""
    lines = []
    for key, coeff in expansion_rows(expansion):
        if isinstance(key, SignedPermutation):
            label = "c(" + " ".join(str(v) for v in key.window) + ")"
        else:
            lam, pi = key
            label = (
                "p("
                + " ".join(str(v) for v in lam.parts)
                + " | "
                + " ".join(str(v) for v in pi.window)
                + ")"
            )
        lines.append(f"{label}: {coeff}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# the table


def table_payload(n: int) -> dict:
    """All rows of the rank-n table, ordered by length then by word."""
    rows = []
    for w in weyl.all_elements(n):
        word = w.reduced_word()
        terms = []
        for (lam, pi), count in bh_coefficients(w).items():
            if lam.parts and lam.parts[0] > n:
                continue
            coeff = count * (-1) ** pi.length()
            terms.append((-lam.weight(), lam.parts, pi.window, coeff))
        terms.sort(key=lambda item: item[:3])
        rows.append(
            {
                "w": list(w.window),
                "word": list(word),
                "terms": [
                    {"lambda": list(parts), "pi": list(window), "coeff": coeff}
                    for _, parts, window, coeff in terms
                ],
            }
        )
    rows.sort(key=lambda row: (len(row["word"]), row["word"]))
    return {"n": n, "rows": rows}


def _term_text(parts: Sequence[int], window: Sequence[int], coeff: int) -> str:
    pieces = []
    if parts:
        pieces.append("Q[" + ",".join(str(p) for p in parts) + "]")
    if list(window) != sorted(window):
        pieces.append("S[" + " ".join(str(v) for v in window) + "]")
    body = "*".join(pieces)
    mag = abs(coeff)
    if not body:
        return str(mag)
    if mag != 1:
        return f"{mag}*{body}"
    return body


def table_text(payload: dict) -> str:
    lines = []
    for row in payload["rows"]:
        word = " ".join(f"s{a}" for a in row["word"]) or "e"
        window = " ".join(str(v) for v in row["w"])
        chunks = []
        for term in row["terms"]:
            text = _term_text(term["lambda"], term["pi"], term["coeff"])
            if not chunks:
                chunks.append(("-" if term["coeff"] < 0 else "") + text)
            else:
                chunks.append(("- " if term["coeff"] < 0 else "+ ") + text)
        lines.append(f"{word} | {window} | {' '.join(chunks)}")
    return "\n".join(lines)


def _table_content(payload: dict) -> dict:
    """Order-insensitive view keyed by window, for comparisons."""
    content = {}
    for row in payload["rows"]:
        terms = {
            (tuple(term["lambda"]), tuple(term["pi"])): term["coeff"]
            for term in row["terms"]
        }
        content[tuple(row["w"])] = terms
    return content


def load_fixture(n: int, path: str | None) -> dict:
    if path is not None:
        with open(path, "r", encoding="utf-8") as handle:
            fixture = json.load(handle)
    elif n == 3:
        text = resources.files("spflag.data").joinpath("table_w3.json").read_text()
        fixture = json.loads(text)
    else:
        raise CliError(
            f"no bundled table fixture for n={n}; pass --fixture with a file"
        )
    if fixture.get("n") != n:
        raise CliError(
            f"fixture is for n={fixture.get('n')}, but the command ran with n={n}"
        )
    return fixture


def table_mismatches(live: dict, fixture: dict) -> list[str]:
    ours = _table_content(live)
    theirs = _table_content(fixture)
    problems = []
    for window in sorted(set(theirs) - set(ours)):
        problems.append(f"missing row for w={list(window)}")
    for window in sorted(set(ours) - set(theirs)):
        problems.append(f"unexpected extra row for w={list(window)}")
    for window in sorted(set(ours) & set(theirs)):
        if ours[window] != theirs[window]:
            problems.append(f"terms differ for w={list(window)}")
    return problems


# ---------------------------------------------------------------------------
# subcommands


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _emit_json(data: object) -> None:
    sys.stdout.write(json.dumps(data) + "\n")


def _cmd_cw(args: argparse.Namespace) -> int:
    w = parse_permutation(args.w, args.n)
    poly = symplectic.schubert_c(w, args.n)
    if args.json:
        _emit_json(poly.to_json())
    else:
        _emit(poly.to_text())
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    payload = table_payload(args.n)
    if args.check:
        fixture = load_fixture(args.n, args.fixture)
        problems = table_mismatches(payload, fixture)
        if problems:
            print(json.dumps({"check": "mismatch", "problems": problems}), file=sys.stderr)
            return 2
        report = {"check": "ok", "rows": len(payload["rows"])}
        if args.json:
            _emit_json(report)
        else:
            _emit(f"table check passed: {report['rows']} rows")
        return 0
    if args.json:
        _emit_json(payload)
    else:
        _emit(table_text(payload))
    return 0


def _cmd_mult(args: argparse.Namespace) -> int:
    u = parse_permutation(args.u, args.n)
    v = parse_permutation(args.v, args.n)
    expansion = symplectic.structure_constants(u, v, args.n)
    if args.json:
        _emit_json(expansion_to_json(expansion))
    else:
        _emit(expansion_to_text(expansion))
    return 0


def _cmd_expand(args: argparse.Namespace) -> int:
    poly = parse_poly(args.poly, args.n)
    if args.ideal:
        member, witness = symplectic.ideal_membership(poly, args.n)
        if args.json:
            _emit_json(
                {
                    "member": member,
                    "witness": expansion_to_json(witness) if member else None,
                }
            )
        elif member:
            body = expansion_to_text(witness)
            _emit("member: yes" + ("\n" + body if body else ""))
        else:
            _emit("member: no")
        return 0
    expansion = symplectic.expand(poly, args.n)
    if args.json:
        _emit_json(expansion_to_json(expansion))
    else:
        _emit(expansion_to_text(expansion))
    return 0


def _parse_monomial(text: str, n: int) -> tuple[int, ...]:
    tokens = [tok for tok in text.replace(",", " ").split() if tok]
    try:
        exponents = tuple(int(tok) for tok in tokens)
    except ValueError:
        raise CliError(
            f"cannot parse monomial {text!r}: expected integers like '5,0'"
        ) from None
    if len(exponents) != n:
        raise CliError(f"expected {n} exponents, got {len(exponents)}")
    return exponents


def _cmd_arakelov(args: argparse.Namespace) -> int:
    exponents = _parse_monomial(args.mono, args.n)
    degree, r = arakelov.arith_monomial_degree(exponents, args.n)
    if args.json:
        _emit_json(
            {
                "n": args.n,
                "monomial": list(exponents),
                "r": str(r),
                "degree": str(degree),
            }
        )
    else:
        _emit(f"r = {r}")
        _emit(f"degree = {degree}")
    return 0


def _cmd_height(args: argparse.Namespace) -> int:
    value = arakelov.faltings_height(args.n)
    if args.json:
        _emit_json({"n": args.n, "height": str(value)})
    else:
        _emit(str(value))
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(message)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, required=True, help="rank n of the group")
    sub.add_argument(
        "--json", action="store_true", help="emit the module JSON schema"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spflag", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    cw = subs.add_parser("cw", help="print one symplectic Schubert polynomial")
    _add_common(cw)
    cw.add_argument(
        "--w",
        required=True,
        help="window like '-3 1 2' or word like 's2 s1 s0'"
        " (use --w=\"-3 1 2\" so the leading minus is not read as a flag)",
    )
    cw.set_defaults(handler=_cmd_cw)

    table = subs.add_parser("table", help="print or check the full rank-n table")
    _add_common(table)
    table.add_argument(
        "--check", action="store_true", help="compare against a table fixture"
    )
    table.add_argument(
        "--fixture", default=None, help="path to an alternative fixture file"
    )
    table.set_defaults(handler=_cmd_table)

    mult = subs.add_parser("mult", help="expand a product of two basis classes")
    _add_common(mult)
    mult.add_argument("--u", required=True, help="first index (window or word)")
    mult.add_argument("--v", required=True, help="second index (window or word)")
    mult.set_defaults(handler=_cmd_mult)

    expand = subs.add_parser("expand", help="expand a polynomial over the basis")
    _add_common(expand)
    expand.add_argument("--poly", required=True, help="expression in x1..xn")
    expand.add_argument(
        "--ideal",
        action="store_true",
        help="report membership in the span of the non-strict pairs",
    )
    expand.set_defaults(handler=_cmd_expand)

    ara = subs.add_parser(
        "arakelov", help="arithmetic degree of a monomial in the hatted roots"
    )
    _add_common(ara)
    ara.add_argument("--mono", required=True, help="exponents like '5,0'")
    ara.set_defaults(handler=_cmd_arakelov)

    height = subs.add_parser("height", help="Faltings height of the flag variety")
    _add_common(height)
    height.set_defaults(handler=_cmd_height)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.n < 1:
            raise CliError(f"rank must be a positive integer, got {args.n}")
        return args.handler(args)
    except CliError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
