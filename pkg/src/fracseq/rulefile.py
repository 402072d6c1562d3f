"""Line-oriented rule files describing substitution systems.

Grammar (one directive per line, ``#`` starts a comment):

    name <id>
    digiset <n> | unbounded          optional trailing word: positive
    kind edgewise|digitwise|wholecurve|pairlift
    start <sequence>                 edgewise/digitwise/pairlift start
    start <state> <sequence>        wholecurve start, one per state
    term <sign?><perm>[*R][*<scale>]
    digit <variant> -> <variant sequence>
    pair <a,b> -> <c,d>
    rule <state>                     atoms that follow feed this state
    atom <state> <term>
    atom connector <digit> [<perm>^<exp>]
    output <state>
    post <perm>^<exp>                exp: k | k+1 | kmod2

Terms: an optional leading ``-`` negates; ``~k`` or ``~k+1`` makes the
sign alternate with the level; ``*R`` reverses; a trailing ``*sqrt2``,
``*sqrt2^E`` or ``*2`` scales the parallel length stream (powers of
sqrt2 only).  Variants carry apostrophes: ``1``, ``-2'``, ``1''``.

Sequences are comma-separated signed integers, `<...>` brackets optional.
Errors name the line and column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .perms import PermError, parse_perm
from .sequences import Digiset
from .substitution import (
    ConnectorAtom,
    DigitRule,
    EdgewiseRule,
    LengthRule,
    LengthTerm,
    PairRule,
    PostTransform,
    StateAtom,
    SubstitutionSystem,
    Term,
    Variant,
    WholeCurveRule,
)

GRAMMAR_DOC = __doc__


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_VARIANT_RE = re.compile(r"^(-?\d+)('*)$")


def _parse_variant(tok: str, line: int, col: int) -> Variant:
    m = _VARIANT_RE.match(tok)
    if not m or int(m.group(1)) == 0:
        raise ParseError(f"bad variant token {tok!r}", line, col)
    return (int(m.group(1)), len(m.group(2)))


def _parse_int_list(text: str, line: int, col: int) -> tuple[int, ...]:
    t = text.strip()
    if t.startswith("<") and t.endswith(">"):
        t = t[1:-1]
    if not t:
        return ()
    out = []
    for tok in t.split(","):
        tok = tok.strip()
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"bad integer {tok!r}", line, col + text.find(tok)) from None
        if v == 0:
            raise ParseError("0 is not a digit", line, col + text.find(tok))
        out.append(v)
    return tuple(out)


def _parse_variant_list(text: str, line: int, col: int) -> tuple[Variant, ...]:
    t = text.strip()
    if t.startswith("<") and t.endswith(">"):
        t = t[1:-1]
    return tuple(_parse_variant(tok.strip(), line, col + t.find(tok)) for tok in t.split(","))


def _parse_scale(tok: str, line: int, col: int) -> int:
    if tok == "sqrt2":
        return 1
    m = re.match(r"^sqrt2\^(\d+)$", tok)
    if m:
        return int(m.group(1))
    if tok.isdigit():
        n = int(tok)
        e = 0
        while n > 1 and n % 2 == 0:
            n //= 2
            e += 2
        if n != 1:
            raise ParseError(f"scale {tok!r} is not a power of sqrt2", line, col)
        return e
    raise ParseError(f"bad scale token {tok!r}", line, col)


def _parse_term(tok: str, line: int, col: int) -> Term:
    rest = tok
    sign = 1
    alt = None
    if rest.startswith("-~k+1"):
        sign, alt, rest = -1, "k+1", rest[5:]
    elif rest.startswith("-~k"):
        sign, alt, rest = -1, "k", rest[3:]
    elif rest.startswith("~k+1"):
        alt, rest = "k+1", rest[4:]
    elif rest.startswith("~k"):
        alt, rest = "k", rest[2:]
    elif rest.startswith("-") and not rest.startswith("-["):
        raise ParseError(f"bad term {tok!r}", line, col)
    if rest.startswith("-["):
        sign, rest = -sign, rest[1:]
    if not rest.startswith("["):
        raise ParseError(f"term must contain a perm literal, got {tok!r}", line, col)
    end = rest.find("]")
    if end < 0:
        raise ParseError("unterminated perm literal", line, col)
    try:
        p = parse_perm(rest[: end + 1])
    except PermError as exc:
        raise ParseError(str(exc), line, col) from None
    rest = rest[end + 1:]
    reverse = False
    scale_pow = 0
    while rest:
        if not rest.startswith("*"):
            raise ParseError(f"unexpected trailing {rest!r} in term", line, col + len(tok) - len(rest))
        rest = rest[1:]
        part = rest.split("*", 1)[0]
        rest = rest[len(part):]
        if part == "R":
            reverse = True
        else:
            scale_pow = _parse_scale(part, line, col)
    return Term(p, sign=sign, reverse=reverse, scale_pow=scale_pow, alt_sign=alt)


def _parse_post(arg: str, line: int, col: int) -> PostTransform:
    m = re.match(r"^(\[.*\])\^(k\+1|kmod2|k)$", arg.replace(" ", ""))
    if not m:
        raise ParseError(f"bad post transform {arg!r}", line, col)
    try:
        return PostTransform(parse_perm(m.group(1)), m.group(2).replace("+", "+"))
    except (PermError, ValueError) as exc:
        raise ParseError(str(exc), line, col) from None


@dataclass
class ParsedRuleFile:
    name: str
    system: SubstitutionSystem


def parse_rule_file(text: str) -> ParsedRuleFile:
    name = ""
    digiset: Digiset | None = None
    kind = ""
    starts: dict[str, tuple[int, ...]] = {}
    plain_start: tuple = ()
    variant_start: tuple[Variant, ...] = ()
    terms: list[Term] = []
    digit_map: dict[Variant, tuple[Variant, ...]] = {}
    pair_map: dict[tuple[int, int], tuple[int, int]] = {}
    productions: dict[str, list] = {}
    current_state: str | None = None
    output_state: str | None = None
    post: PostTransform | None = None
    declared_states: list[str] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split()[0]
        col = line.find(head) + 1
        arg = line[line.find(head) + len(head):].strip()
        arg_col = line.find(arg) + 1 if arg else col

        if head == "name":
            name = arg
        elif head == "digiset":
            parts = arg.split()
            if not parts:
                raise ParseError("digiset needs a size", line_no, arg_col)
            positive = "positive" in parts[1:]
            if parts[0] == "unbounded":
                digiset = Digiset(None, positive)
            else:
                try:
                    digiset = Digiset(int(parts[0]), positive)
                except ValueError as exc:
                    raise ParseError(str(exc), line_no, arg_col) from None
        elif head == "kind":
            if arg not in ("edgewise", "digitwise", "wholecurve", "pairlift"):
                raise ParseError(f"unknown kind {arg!r}", line_no, arg_col)
            kind = arg
        elif head == "state":
            declared_states.append(arg)
        elif head == "start":
            parts = arg.split(None, 1)
            if kind == "wholecurve":
                if len(parts) != 2:
                    raise ParseError("wholecurve start needs a state and a sequence", line_no, arg_col)
                starts[parts[0]] = _parse_int_list(parts[1], line_no, arg_col)
            elif kind == "digitwise":
                variant_start = _parse_variant_list(arg, line_no, arg_col)
            else:
                plain_start = _parse_int_list(arg, line_no, arg_col)
        elif head == "term":
            terms.append(_parse_term(arg, line_no, arg_col))
        elif head == "digit":
            if "->" not in arg:
                raise ParseError("digit rule needs '->'", line_no, arg_col)
            lhs, rhs = (part.strip() for part in arg.split("->", 1))
            v = _parse_variant(lhs, line_no, arg_col)
            digit_map[v] = _parse_variant_list(rhs, line_no, arg_col + arg.find(rhs))
        elif head == "pair":
            if "->" not in arg:
                raise ParseError("pair rule needs '->'", line_no, arg_col)
            lhs, rhs = (part.strip() for part in arg.split("->", 1))
            a = _parse_int_list(lhs, line_no, arg_col)
            b = _parse_int_list(rhs, line_no, arg_col + arg.find(rhs))
            if len(a) != 2 or len(b) != 2:
                raise ParseError("pairs must have exactly two digits", line_no, arg_col)
            pair_map[(a[0], a[1])] = (b[0], b[1])
        elif head == "rule":
            current_state = arg
            productions.setdefault(current_state, [])
        elif head == "atom":
            parts = arg.split(None, 1)
            if len(parts) != 2:
                raise ParseError("atom needs a target and a payload", line_no, arg_col)
            target, payload = parts
            if target == "connector":
                toks = payload.split(None, 1)
                digit = int(toks[0])
                if len(toks) == 1:
                    atom = ConnectorAtom(digit)
                else:
                    m = re.match(r"^(\[.*\])\^(k\+1|kmod2|k)$", toks[1].replace(" ", ""))
                    if not m:
                        raise ParseError(f"bad connector transform {toks[1]!r}", line_no, arg_col)
                    atom = ConnectorAtom(digit, parse_perm(m.group(1)), m.group(2))
            else:
                atom = StateAtom(target, _parse_term(payload, line_no, arg_col))
            state = current_state if current_state is not None else (declared_states[0] if declared_states else None)
            if state is None:
                # single-state systems may omit `rule`; synthesize one state
                state = "S"
                current_state = state
            productions.setdefault(state, []).append(atom)
        elif head == "output":
            output_state = arg
        elif head == "post":
            post = _parse_post(arg, line_no, arg_col)
        else:
            raise ParseError(f"unknown directive {head!r}", line_no, col)

    if digiset is None:
        raise ParseError("missing digiset", 1, 1)
    if not kind:
        raise ParseError("missing kind", 1, 1)

    if kind == "edgewise":
        if not terms:
            raise ParseError("edgewise rule has no terms", 1, 1)
        rule = EdgewiseRule(tuple(terms))
        length_rule = None
        length_start: tuple[int, ...] = ()
        if any(t.scale_pow or t.reverse for t in terms) and any(t.scale_pow for t in terms):
            length_rule = LengthRule(tuple(LengthTerm(t.reverse, t.scale_pow) for t in terms))
            length_start = (0,) * len(plain_start)
        system = SubstitutionSystem(
            kind="edgewise", digiset=digiset, rule=rule, start=plain_start, post=post,
            length_rule=length_rule, length_start=length_start, name=name,
        )
    elif kind == "digitwise":
        if not digit_map:
            raise ParseError("digitwise rule has no digit lines", 1, 1)
        system = SubstitutionSystem(
            kind="digitwise", digiset=digiset, rule=DigitRule(digit_map),
            start=variant_start, post=post, name=name,
        )
    elif kind == "wholecurve":
        if output_state is None:
            output_state = next(iter(productions), None)
        if output_state is None:
            raise ParseError("wholecurve needs atoms", 1, 1)
        rule = WholeCurveRule(
            productions={s: tuple(a) for s, a in productions.items()},
            starts=starts,
            output_state=output_state,
            normalizer=post,
        )
        system = SubstitutionSystem(
            kind="wholecurve", digiset=digiset, rule=rule, start_level=1, name=name,
        )
    else:  # pairlift
        if not pair_map:
            raise ParseError("pairlift needs pair lines", 1, 1)
        system = SubstitutionSystem(
            kind="pairlift", digiset=digiset, rule=PairRule(pair_map), start=plain_start, name=name,
        )
    return ParsedRuleFile(name=name or "unnamed", system=system)
