"""Substitution mechanisms that grow curve approximants.

Four rule kinds are supported:

* edgewise: an ordered list of terms (signed perms, optionally reversing,
  optionally scaling a parallel length stream).  A rule without reversing
  terms is an honest morphism and one application expands each digit x to
  (t1(x), ..., tm(x)); reversing terms act on the whole current sequence,
  (t1(S), ..., tm(S)), since reversal says nothing on a single edge.
* digitwise: a per-digit map on variant-marked digits; one application is
  an ordinary morphism on the variant stream.
* wholecurve: named states, each rebuilt every level by concatenating
  transformed copies of the states, plus optional connector edges whose
  value may rotate with the level.
* pairlift: a re-coding that reads overlapping digit pairs of a base
  system's output and emits one lifted pair per input edge.

Levels count applications from the system's start (`start_level` names the
level of the start itself).  Alternating signs, connector powers and
normalizers take the level as argument so that curves stay normalized and
extending where the catalog requires it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .perms import SignedPermutation, apply_items, compose, identity, power
from .sequences import Digiset, SignedSequence

Variant = tuple[int, int]  # (signed base digit, mark); mark 0 is the plain digit


class RuleError(ValueError):
    pass


_EXPONENTS = ("k", "k+1", "kmod2")


def _exponent_value(spec: str, k: int) -> int:
    if spec == "k":
        return k
    if spec == "k+1":
        return k + 1
    if spec == "kmod2":
        return k % 2
    raise RuleError(f"unknown exponent spec {spec!r}")


def _is_involution(p: SignedPermutation) -> bool:
    return compose(p, p).images == identity(p.n).images


@dataclass(frozen=True)
class PostTransform:
    """A perm raised to a level-dependent exponent: k, k+1 or k mod 2.

    All three exponents alternate with the level, so the perm must be an
    involution; anything else would not return to the identity.
    """

    perm: SignedPermutation
    exponent: str = "k"

    def __post_init__(self) -> None:
        if self.exponent not in _EXPONENTS:
            raise RuleError(f"exponent must be one of {_EXPONENTS}, got {self.exponent!r}")
        if not _is_involution(self.perm):
            raise RuleError(f"post-transform perm {self.perm} must be an involution")

    def apply_at(self, level: int, items: tuple[int, ...]) -> tuple[int, ...]:
        if _exponent_value(self.exponent, level) % 2 == 0:
            return items
        return apply_items(self.perm, items)


@dataclass(frozen=True)
class Term:
    """One constituent of an edgewise rule.

    Acts on a sequence as sign * perm applied to (reverse of) the input.
    `alt_sign` multiplies by an extra (-1)**k or (-1)**(k+1) at level k,
    for rules whose constituents flip orientation every other level.
    `scale_pow` only feeds the parallel length stream: it adds that many
    sqrt(2) factors to every edge length in the block and never touches
    digits.
    """

    perm: SignedPermutation
    sign: int = 1
    reverse: bool = False
    scale_pow: int = 0
    alt_sign: str | None = None

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise RuleError("term sign must be +1 or -1")
        if self.alt_sign is not None and self.alt_sign not in ("k", "k+1"):
            raise RuleError("alt_sign must be None, 'k' or 'k+1'")

    def sign_at(self, level: int) -> int:
        s = self.sign
        if self.alt_sign is not None and _exponent_value(self.alt_sign, level) % 2:
            s = -s
        return s

    def apply(self, items: tuple[int, ...], level: int = 0) -> tuple[int, ...]:
        src = items[::-1] if self.reverse else items
        out = apply_items(self.perm, src)
        if self.sign_at(level) < 0:
            out = tuple(-k for k in out)
        return out

    def of_digit(self, x: int, level: int = 0) -> int:
        v = self.perm.of_digit(x)
        return v if self.sign_at(level) > 0 else -v


@dataclass(frozen=True)
class EdgewiseRule:
    """Expansion of the base edge <1> as an ordered term list."""

    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise RuleError("edgewise rule needs at least one term")
        n = self.terms[0].perm.n
        for t in self.terms:
            if t.perm.n != n:
                raise RuleError("all terms must share one dimension")

    @property
    def width(self) -> int:
        return len(self.terms)

    @property
    def has_reverse(self) -> bool:
        return any(t.reverse for t in self.terms)

    def expand_whole(self, items: tuple[int, ...], level: int = 0) -> tuple[int, ...]:
        out: list[int] = []
        for t in self.terms:
            out.extend(t.apply(items, level))
        return tuple(out)

    def expand_digits(self, items: tuple[int, ...], level: int = 0) -> tuple[int, ...]:
        out: list[int] = []
        for x in items:
            for t in self.terms:
                out.append(t.of_digit(x, level))
        return tuple(out)

    def expand(self, items: tuple[int, ...], level: int = 0) -> tuple[int, ...]:
        """Iteration step: a rule without reversing terms is an honest
        morphism and expands digit by digit; reversing terms act on the
        whole approximant (reversal has no meaning on a single edge)."""
        if self.has_reverse:
            return self.expand_whole(items, level)
        return self.expand_digits(items, level)


def expand_edgewise(rule: EdgewiseRule, s: SignedSequence, level: int = 0) -> SignedSequence:
    """Morphism expansion: each item x maps to (t1(x), ..., tm(x))."""
    out: list[int] = []
    for x in s.items:
        for t in rule.terms:
            out.append(t.of_digit(x, level))
    return SignedSequence(tuple(out), s.digiset)


@dataclass(frozen=True)
class LengthTerm:
    """Length-stream counterpart of a Term: reorder plus a sqrt(2) power."""

    reverse: bool = False
    scale_pow: int = 0

    def apply(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        src = exps[::-1] if self.reverse else exps
        if self.scale_pow == 0:
            return tuple(src)
        return tuple(e + self.scale_pow for e in src)


@dataclass(frozen=True)
class LengthRule:
    """Parallel stream of edge lengths, kept as integer powers of sqrt(2)."""

    terms: tuple[LengthTerm, ...]

    def expand(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for t in self.terms:
            out.extend(t.apply(exps))
        return tuple(out)


@dataclass(frozen=True)
class DigitRule:
    """Substitution given directly per variant-marked digit.

    ``mapping`` holds images for variants; a variant (x, m) missing from the
    mapping falls back to the negated image of (-x, m), then to ``default``.
    With ``strict_negation`` (the usual case) the stored images must satisfy
    T(-v) = -T(v) whenever both signs are present.
    """

    mapping: Mapping[Variant, tuple[Variant, ...]]
    default: Callable[[int], tuple[Variant, ...]] | None = None
    strict_negation: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", dict(self.mapping))
        if self.strict_negation:
            for v, img in self.mapping.items():
                neg = (-v[0], v[1])
                if neg in self.mapping and self.mapping[neg] != _negate_variants(img):
                    raise RuleError(f"digit rule breaks T(-x) = -T(x) at {v}")

    def image(self, v: Variant) -> tuple[Variant, ...]:
        if v in self.mapping:
            return self.mapping[v]
        neg = (-v[0], v[1])
        if neg in self.mapping:
            return _negate_variants(self.mapping[neg])
        if self.default is not None and v[1] == 0:
            return self.default(v[0])
        raise RuleError(f"variant {v} has no image")

    def alphabet(self) -> frozenset[Variant]:
        out = set(self.mapping)
        out.update((-v[0], v[1]) for v in self.mapping)
        return frozenset(out)


def _negate_variants(vs: tuple[Variant, ...]) -> tuple[Variant, ...]:
    return tuple((-x, m) for x, m in vs)


def variants(items, mark: int = 0) -> tuple[Variant, ...]:
    return tuple((x, mark) for x in items)


def project(stream: tuple[Variant, ...]) -> tuple[int, ...]:
    return tuple(x for x, _ in stream)


def expand_digitwise(rule: DigitRule, stream: tuple[Variant, ...]) -> tuple[Variant, ...]:
    out: list[Variant] = []
    for v in stream:
        out.extend(rule.image(v))
    return tuple(out)


@dataclass(frozen=True)
class StateAtom:
    state: str
    term: Term


@dataclass(frozen=True)
class ConnectorAtom:
    """A literal digit, optionally rotated by perm**exponent(level)."""

    digit: int
    perm: SignedPermutation | None = None
    exponent: str = "k"

    def value_at(self, level: int) -> int:
        if self.perm is None:
            return self.digit
        e = _exponent_value(self.exponent, level)
        return power(self.perm, e % _perm_order(self.perm)).of_digit(self.digit)


def _perm_order(p: SignedPermutation, cap: int = 4096) -> int:
    acc = p
    for k in range(1, cap + 1):
        if acc.images == identity(p.n).images:
            return k
        acc = compose(p, acc)
    raise RuleError("perm order exceeds cap")


Atom = StateAtom | ConnectorAtom


@dataclass(frozen=True)
class WholeCurveRule:
    """Multi-state production system with optional read-out normalizer."""

    productions: Mapping[str, tuple[Atom, ...]]
    starts: Mapping[str, tuple[int, ...]]
    output_state: str
    normalizer: PostTransform | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "productions", dict(self.productions))
        object.__setattr__(self, "starts", dict(self.starts))
        for name, atoms in self.productions.items():
            for a in atoms:
                if isinstance(a, StateAtom) and a.state not in self.productions:
                    raise RuleError(f"production of {name!r} references unknown state {a.state!r}")
        if self.output_state not in self.productions:
            raise RuleError(f"unknown output state {self.output_state!r}")
        for name in self.productions:
            if name not in self.starts:
                raise RuleError(f"state {name!r} has no start sequence")

    @property
    def states(self) -> tuple[str, ...]:
        return tuple(self.productions)


def expand_wholecurve(
    rule: WholeCurveRule,
    level: int,
    current: Mapping[str, tuple[int, ...]],
) -> dict[str, tuple[int, ...]]:
    """One production step: every state is rebuilt from the level-`level`
    states; connector powers are evaluated at that same level."""
    nxt: dict[str, tuple[int, ...]] = {}
    for name, atoms in rule.productions.items():
        out: list[int] = []
        for a in atoms:
            if isinstance(a, StateAtom):
                if a.state not in current:
                    raise RuleError(f"missing state {a.state!r}")
                out.extend(a.term.apply(current[a.state], level))
            else:
                out.append(a.value_at(level))
        nxt[name] = tuple(out)
    return nxt


@dataclass(frozen=True)
class PairRule:
    """Overlapping-pair re-coding: each edge, read with its successor as
    context, emits a fixed pair of lifted digits."""

    mapping: Mapping[tuple[int, int], tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", dict(self.mapping))

    def image(self, pair: tuple[int, int], position: int) -> tuple[int, int]:
        if pair in self.mapping:
            return self.mapping[pair]
        neg = (-pair[0], -pair[1])
        if neg in self.mapping:
            a, b = self.mapping[neg]
            return (-a, -b)
        raise RuleError(f"pair {pair} at position {position} is not covered by the rule")


def expand_pairwise(rule: PairRule, s: SignedSequence, closed: bool = False) -> SignedSequence:
    """Emit one lifted pair per input edge.

    The final edge has no successor: a closed curve wraps around to the
    first edge, an open one re-emits the image of its last covered pair.
    """
    items = s.items
    if not items:
        return SignedSequence((), s.digiset)
    out: list[int] = []
    n = len(items)
    for i in range(n - 1):
        out.extend(rule.image((items[i], items[i + 1]), i))
    if closed:
        out.extend(rule.image((items[-1], items[0]), n - 1))
    elif n >= 2:
        out.extend(rule.image((items[-2], items[-1]), n - 1))
    else:
        raise RuleError("cannot lift a single open edge: no pair context")
    lifted_digiset = _lifted_digiset(rule)
    return SignedSequence(tuple(out), lifted_digiset)


def _lifted_digiset(rule: PairRule) -> Digiset:
    top = max(max(abs(a), abs(b)) for a, b in rule.mapping.values())
    return Digiset(top)


@dataclass(frozen=True)
class SubstitutionSystem:
    """A rule bundled with its digiset and start data.

    ``start`` is a digit tuple for edgewise systems and a variant tuple for
    digitwise ones; wholecurve systems keep their starts inside the rule.
    ``post`` (optional) is applied to the state right after each
    application, evaluated at the level just produced.
    """

    kind: str
    digiset: Digiset
    rule: EdgewiseRule | DigitRule | WholeCurveRule | PairRule
    start: tuple = ()
    post: PostTransform | None = None
    length_rule: LengthRule | None = None
    length_start: tuple[int, ...] = ()
    base: "SubstitutionSystem | None" = None
    start_level: int = 0
    name: str = ""

    def __post_init__(self) -> None:
        kinds = ("edgewise", "digitwise", "wholecurve", "pairlift")
        if self.kind not in kinds:
            raise RuleError(f"kind must be one of {kinds}")
        if self.kind == "pairlift" and self.base is None and not self.start:
            raise RuleError("pairlift needs a base system or an explicit start")
        if self.length_rule is not None and len(self.length_start) != len(self.start):
            raise RuleError("length stream start must align with the digit start")


ITEM_CAP = 10**7


def _digit_state(sys_: SubstitutionSystem, k: int, max_items: int) -> tuple[Variant, ...]:
    stream = tuple(sys_.start)
    for level in range(sys_.start_level, sys_.start_level + k):
        stream = expand_digitwise(sys_.rule, stream)
        if len(stream) > max_items:
            raise RuleError(f"item cap {max_items} exceeded at level {level + 1}")
        if sys_.post is not None:
            digits = sys_.post.apply_at(level + 1, project(stream))
            stream = tuple((d, v[1]) for d, v in zip(digits, stream))
    return stream


def _wholecurve_states(sys_: SubstitutionSystem, k: int, max_items: int) -> tuple[dict, int]:
    rule: WholeCurveRule = sys_.rule
    states = {name: tuple(items) for name, items in rule.starts.items()}
    level = sys_.start_level
    for _ in range(k):
        states = expand_wholecurve(rule, level, states)
        level += 1
        if any(len(v) > max_items for v in states.values()):
            raise RuleError(f"item cap {max_items} exceeded at level {level}")
    return states, level


def iterate(sys_: SubstitutionSystem, k: int, max_items: int = ITEM_CAP) -> SignedSequence:
    """Apply the system k times to its start and read the result out.

    k = 0 returns the start itself (normalized read-out included for
    wholecurve systems).
    """
    seq, _ = iterate_full(sys_, k, max_items)
    return seq


def iterate_full(
    sys_: SubstitutionSystem, k: int, max_items: int = ITEM_CAP
) -> tuple[SignedSequence, tuple[int, ...] | None]:
    """Like ``iterate`` but also returns the sqrt(2)-exponent length stream
    when the system carries one."""
    if k < 0:
        raise RuleError("level must be nonnegative")
    if sys_.kind == "edgewise":
        items = tuple(sys_.start)
        exps = tuple(sys_.length_start) if sys_.length_rule is not None else None
        for level in range(sys_.start_level, sys_.start_level + k):
            items = sys_.rule.expand(items, level)
            if sys_.post is not None:
                items = sys_.post.apply_at(level + 1, items)
            if exps is not None:
                exps = sys_.length_rule.expand(exps)
            if len(items) > max_items:
                raise RuleError(f"item cap {max_items} exceeded at level {level + 1}")
        return SignedSequence(items, sys_.digiset), exps
    if sys_.kind == "digitwise":
        stream = _digit_state(sys_, k, max_items)
        return SignedSequence(project(stream), sys_.digiset), None
    if sys_.kind == "wholecurve":
        rule: WholeCurveRule = sys_.rule
        states, level = _wholecurve_states(sys_, k, max_items)
        out = states[rule.output_state]
        if rule.normalizer is not None:
            out = rule.normalizer.apply_at(level, out)
        return SignedSequence(out, sys_.digiset), None
    if sys_.kind == "pairlift":
        if sys_.base is not None:
            base_seq = iterate(sys_.base, k, max_items)
        else:
            if k > 0:
                raise RuleError("a pairlift without a base system only has its start level")
            base_seq = SignedSequence(tuple(sys_.start), Digiset(None))
        lifted = expand_pairwise(sys_.rule, base_seq)
        if len(lifted) > max_items:
            raise RuleError(f"item cap {max_items} exceeded")
        return SignedSequence(lifted.items, sys_.digiset), None
    raise RuleError(f"unknown kind {sys_.kind!r}")


def check_extending(sys_: SubstitutionSystem, k: int, max_items: int = ITEM_CAP) -> bool:
    """True iff every approximant up to level k starts with the previous one."""
    if k < 1:
        raise RuleError("need k >= 1")
    prev = iterate(sys_, 0, max_items).items
    for j in range(1, k + 1):
        cur = iterate(sys_, j, max_items).items
        if cur[: len(prev)] != prev:
            return False
        prev = cur
    return True


def check_commutation(rule, p: SignedPermutation, digiset: Digiset | None = None) -> bool:
    """Does expanding commute with relabeling by ``p`` on every single digit?"""
    if isinstance(rule, EdgewiseRule):
        n = p.n
        digits = range(1, (digiset.size if digiset and digiset.size else n) + 1)
        for x in list(digits) + [-d for d in digits]:
            expanded_then_mapped = apply_items(p, tuple(t.of_digit(x) for t in rule.terms))
            mapped_then_expanded = tuple(t.of_digit(p.of_digit(x)) for t in rule.terms)
            if expanded_then_mapped != mapped_then_expanded:
                return False
        return True
    if isinstance(rule, DigitRule):
        # p must act on variants: relabel the base digit, keep the mark
        for v in sorted(rule.alphabet()):
            image = rule.image(v)
            try:
                mapped = rule.image((p.of_digit(v[0]), v[1]))
            except RuleError:
                return False
            if mapped != tuple((p.of_digit(x), m) for x, m in image):
                return False
        return True
    raise RuleError("commutation check applies to edgewise and digitwise rules")


def is_expansive(sys_: SubstitutionSystem) -> bool:
    """Every digit's one-step image has at least two items.

    Pairlifts are excluded by design: they re-code, they do not grow.
    """
    if sys_.kind == "pairlift":
        return True
    if sys_.kind == "edgewise":
        return sys_.rule.width >= 2
    if sys_.kind == "digitwise":
        rule: DigitRule = sys_.rule
        lengths = [len(rule.image(v)) for v in sorted(rule.alphabet())]
        if rule.default is not None:
            lengths += [len(rule.image((x, 0))) for x in (1, 2, 3, -1, -2, -3)]
        return bool(lengths) and min(lengths) >= 2
    if sys_.kind == "wholecurve":
        rule: WholeCurveRule = sys_.rule
        return all(len(atoms) >= 2 for atoms in rule.productions.values())
    return False
