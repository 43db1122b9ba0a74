"""A small text language naming a group constructor and its parameters.

Grammar::

    def    := NAME item*
    item   := INT | NAME ':' value | '(' def ')'
    value  := INT | NAME | '[' [INT (',' INT)*] ']'

Forms (positional integers or ``key:value`` arguments)::

    cyclic 8                  dihedral 16        semidihedral 32
    quaternion 16             extraspecial 3     central p:3 i:2
    sl2 3                     units 24           q8s3
    semidirect cyclic:8 units:[5]                (C_n ⋊ <units>)
    pk p:3 i:1 k:borel                           (P ⋊ K, K in 1 c2 cp c6 borel c4 q8 sl)
    direct (cyclic 2) (cyclic 2)

Errors carry the 0-based character offset of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..constructors import (
    build_cyclic,
    build_cyclic_extension,
    build_direct_product,
    build_extraspecial,
    build_extraspecial_central,
    build_pk,
    build_q8_s3,
    build_SL2,
    build_two_group,
    build_units_mod_n,
    standard_sl2_subgroups,
)
from ..group import DEFAULT_ORDER_BOUND, GroupError, GroupTable


class GroupDefError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[():\[\],]))")


@dataclass
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise GroupDefError(f"unexpected character {text[i]!r}", text, i)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        i = m.end()
    out.append(Token("eof", "", len(text)))
    return out


Value = Union[int, str, list, "GroupDef"]


@dataclass
class GroupDef:
    name: str
    args: list = field(default_factory=list)  # positional: int or GroupDef
    kwargs: dict = field(default_factory=dict)
    pos: int = 0
    arg_pos: dict = field(default_factory=dict, repr=False)

    def canonical(self) -> str:
        parts = [self.name]
        for a in self.args:
            parts.append(f"({a.canonical()})" if isinstance(a, GroupDef) else str(a))
        for k in sorted(self.kwargs):
            v = self.kwargs[k]
            if isinstance(v, list):
                v = "[" + ",".join(map(str, v)) + "]"
            parts.append(f"{k}:{v}")
        return " ".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = repr(value) if value else kind
            got = "end of input" if t.kind == "eof" else repr(t.value)
            raise GroupDefError(f"expected {want}, found {got}", self.text, t.pos)
        self.i += 1
        return t

    def parse(self) -> GroupDef:
        d = self.definition()
        self.take("eof")
        return d

    def definition(self) -> GroupDef:
        head = self.take("name")
        d = GroupDef(head.value.lower(), pos=head.pos)
        while True:
            t = self.peek()
            if t.kind == "int":
                self.i += 1
                d.arg_pos[len(d.args)] = t.pos
                d.args.append(int(t.value))
            elif t.kind == "sym" and t.value == "(":
                self.i += 1
                d.arg_pos[len(d.args)] = t.pos
                d.args.append(self.definition())
                self.take("sym", ")")
            elif t.kind == "name":
                self.i += 1
                self.take("sym", ":")
                if t.value in d.kwargs:
                    raise GroupDefError(f"duplicate argument {t.value!r}", self.text, t.pos)
                d.arg_pos[t.value] = t.pos
                d.kwargs[t.value.lower()] = self.value()
            else:
                return d

    def value(self):
        t = self.peek()
        if t.kind == "int":
            self.i += 1
            return int(t.value)
        if t.kind == "name":
            self.i += 1
            return t.value
        if t.kind == "sym" and t.value == "[":
            self.i += 1
            items = []
            if not (self.peek().kind == "sym" and self.peek().value == "]"):
                items.append(int(self.take("int").value))
                while self.peek().kind == "sym" and self.peek().value == ",":
                    self.i += 1
                    items.append(int(self.take("int").value))
            self.take("sym", "]")
            return items
        raise GroupDefError("expected a value", self.text, t.pos)


def parse_groupdef(text: str) -> GroupDef:
    return _Parser(text).parse()


# parameter names, in positional order, for each constructor
_SIGNATURES: dict[str, tuple[str, ...]] = {
    "cyclic": ("n",),
    "dihedral": ("order",),
    "semidihedral": ("order",),
    "quaternion": ("order",),
    "extraspecial": ("p",),
    "central": ("p", "i"),
    "sl2": ("p",),
    "units": ("n",),
    "q8s3": (),
    "semidirect": ("cyclic", "units"),
    "pk": ("p", "i", "k"),
    "direct": ("left", "right"),
}

_K_NAMES = {"1": "1", "c2": "C2", "cp": "Cp", "c3": "Cp", "c6": "C6", "borel": "Borel",
            "c4": "C4", "q8": "Q8", "sl": "SL", "sl2": "SL"}


def _bind(d: GroupDef, text: str) -> dict:
    if d.name not in _SIGNATURES:
        raise GroupDefError(f"unknown constructor {d.name!r}; known: {', '.join(sorted(_SIGNATURES))}",
                            text, d.pos)
    names = _SIGNATURES[d.name]
    if len(d.args) > len(names):
        raise GroupDefError(f"{d.name} takes at most {len(names)} positional arguments",
                            text, d.arg_pos.get(len(names), d.pos))
    bound = dict(zip(names, d.args))
    for k, v in d.kwargs.items():
        if k not in names:
            raise GroupDefError(f"unknown argument {k!r} for {d.name}", text, d.arg_pos.get(k, d.pos))
        if k in bound:
            raise GroupDefError(f"argument {k!r} given twice", text, d.arg_pos.get(k, d.pos))
        bound[k] = v
    return bound


def _need(b: dict, key: str, d: GroupDef, text: str, kind=int):
    if key not in b:
        raise GroupDefError(f"{d.name} needs argument {key!r}", text, d.pos)
    v = b[key]
    if kind is int and not isinstance(v, int):
        raise GroupDefError(f"argument {key!r} must be an integer", text, d.arg_pos.get(key, d.pos))
    return v


def build_from_def(d: GroupDef | str, text: str | None = None, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """Construct the group named by a definition (string or parsed)."""
    if isinstance(d, str):
        text = d
        d = parse_groupdef(d)
    text = text if text is not None else d.canonical()
    b = _bind(d, text)
    try:
        if d.name == "cyclic":
            G = build_cyclic(_need(b, "n", d, text), bound)
        elif d.name in ("dihedral", "semidihedral", "quaternion"):
            G = build_two_group(d.name, _need(b, "order", d, text), bound)
        elif d.name == "extraspecial":
            G = build_extraspecial(_need(b, "p", d, text), bound)
        elif d.name == "central":
            G = build_extraspecial_central(_need(b, "p", d, text), b.get("i", 1), bound)
        elif d.name == "sl2":
            G = build_SL2(_need(b, "p", d, text), bound)
        elif d.name == "units":
            G = build_units_mod_n(_need(b, "n", d, text), bound).table
        elif d.name == "q8s3":
            G = build_q8_s3(bound)
        elif d.name == "semidirect":
            n = _need(b, "cyclic", d, text)
            units = b.get("units", [])
            if isinstance(units, int):
                units = [units]
            if not isinstance(units, list):
                raise GroupDefError("units must be a list like [5,7]", text, d.arg_pos.get("units", d.pos))
            G = build_cyclic_extension(n, units, bound)
        elif d.name == "pk":
            p, i = _need(b, "p", d, text), b.get("i", 1)
            kname = str(b.get("k", "sl")).lower()
            if kname not in _K_NAMES:
                raise GroupDefError(f"unknown K {kname!r}; known: {', '.join(sorted(_K_NAMES))}",
                                    text, d.arg_pos.get("k", d.pos))
            key = _K_NAMES[kname]
            subs = standard_sl2_subgroups(p)
            if key == "C6" and key not in subs:
                key = "Cp(p-1)"
            if key not in subs:
                raise GroupDefError(f"K {kname!r} not available for p={p}", text, d.arg_pos.get("k", d.pos))
            K = subs[key]
            G = build_pk(p, i, None if key == "SL" else K, bound)
            G.meta["K_name"] = key
        elif d.name == "direct":
            left, right = b.get("left"), b.get("right")
            if not isinstance(left, GroupDef) or not isinstance(right, GroupDef):
                raise GroupDefError("direct needs two parenthesized definitions", text, d.pos)
            G = build_direct_product(build_from_def(left, text, bound), build_from_def(right, text, bound), bound)
        else:  # pragma: no cover - guarded by _bind
            raise GroupDefError(f"unknown constructor {d.name!r}", text, d.pos)
    except GroupError as exc:
        raise GroupDefError(str(exc), text, d.pos) from exc
    G.meta["definition"] = d.canonical()
    return G
