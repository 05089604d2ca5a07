"""Text descriptors for Orlicz functions, test functions and discrete sets.

Grammar (whitespace is ignored)::

    orlicz   := power:p | cpower:c,p | expm1 | expm1* | jump:c
              | max(orlicz,orlicz) | table:@file.csv | table:[x:phi;...]
    function := step:l,r,h | tent:a,b | sum(function,...) | pw:@file.csv
              | pw:[b:s:c;...] | exp2:alpha | gauss:sigma | sinsinc:omega,w
    set      := lattice:alpha | perturbed:gamma,seed | finite:@file.csv
              | finite:v,... | sqrt | squares

``describe`` produces text that parses back to an equal object.
"""

from __future__ import annotations

import csv
from typing import Union

from .catalog import AnalyticCatalogFunction, Gaussian, SineTimesSincSquared, TwoSidedExponential
from .density import DiscreteSet, ExplicitFinite, Lattice, PerturbedLattice, SqrtLattice, Squares
from .errors import DescriptorError, OrliczLabError
from .orlicz import (
    ExpConjugate,
    ExpMinusOne,
    LinearJump,
    MaxOf,
    OrliczFunction,
    Power,
    PowerScaled,
    Tabulated,
)
from .piecewise import PiecewiseFunction, linear_combine, make_step, make_tent

ORLICZ_GRAMMAR = ("power:p | cpower:c,p | expm1 | expm1* | jump:c | max(D1,D2) | "
                  "table:@file.csv | table:[x:phi;...]")
FUNCTION_GRAMMAR = ("step:l,r,h | tent:a,b | sum(D1,D2,...) | pw:@file.csv | pw:[b:s:c;...] | "
                    "exp2:alpha | gauss:sigma | sinsinc:omega,w")
SET_GRAMMAR = "lattice:alpha | perturbed:gamma,seed | finite:@file.csv | finite:v1,v2,... | sqrt | squares"


def split_top(text: str) -> list:
    """Split on commas outside brackets, then glue numeric tails back onto the
    preceding token, so ``step:0,1,1,tent:1,1`` gives two descriptors."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise DescriptorError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    out = []
    for p in parts:
        if out and (not p or not p[0].isalpha()):
            out[-1] += "," + p
        else:
            out.append(p)
    return out


def _head(text: str):
    text = "".join(text.split())
    if not text:
        raise DescriptorError("empty descriptor")
    if text.endswith(")") and "(" in text and (":" not in text or text.index("(") < text.index(":")):
        name, _, rest = text.partition("(")
        return name, rest[:-1], "call"
    name, sep, rest = text.partition(":")
    return name, rest, ("colon" if sep else "bare")


def _numbers(args: str, count: int, what: str) -> list:
    items = args.split(",") if args else []
    if len(items) != count:
        raise DescriptorError(f"{what} expects {count} number(s), got {args!r}")
    try:
        return [float(a) for a in items]
    except ValueError:
        raise DescriptorError(f"{what}: cannot read numbers from {args!r}") from None


def _inline_rows(args: str, width: int, what: str) -> list:
    if not (args.startswith("[") and args.endswith("]")):
        raise DescriptorError(f"{what}: expected @file or [..] rows, got {args!r}")
    body = args[1:-1]
    rows = []
    for chunk in filter(None, body.split(";")):
        cells = chunk.split(":")
        if len(cells) != width:
            raise DescriptorError(f"{what}: row {chunk!r} needs {width} fields")
        try:
            rows.append(tuple(float(c) for c in cells))
        except ValueError:
            raise DescriptorError(f"{what}: bad number in {chunk!r}") from None
    return rows


def _read_csv_rows(path: str, header: tuple, what: str) -> list:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    except OSError as exc:
        raise DescriptorError(f"{what}: cannot read {path}: {exc}") from None
    if rows and [c.strip() for c in rows[0]] == list(header):
        rows = rows[1:]
    try:
        return [tuple(float(c) for c in r) for r in rows]
    except ValueError:
        raise DescriptorError(f"{what}: {path} has non-numeric rows (columns {','.join(header)})") from None


def _wrap(fn, text, grammar):
    try:
        return fn()
    except DescriptorError as exc:
        if "Grammar:" in str(exc):
            raise
        raise DescriptorError(f"{exc}. Grammar: {grammar}") from None
    except (OrliczLabError, ValueError, TypeError) as exc:
        raise DescriptorError(f"{text!r}: {exc}. Grammar: {grammar}") from None


# --------------------------------------------------------------------------


def parse_orlicz(text: str) -> OrliczFunction:
    name, args, form = _head(text)

    def build():
        if name == "power" and form == "colon":
            return Power(*_numbers(args, 1, "power"))
        if name == "cpower" and form == "colon":
            return PowerScaled(*_numbers(args, 2, "cpower"))
        if name == "expm1" and form == "bare":
            return ExpMinusOne()
        if name == "expm1*" and form == "bare":
            return ExpConjugate()
        if name == "jump" and form == "colon":
            return LinearJump(*_numbers(args, 1, "jump"))
        if name == "max" and form == "call":
            parts = split_top(args)
            if len(parts) != 2:
                raise DescriptorError(f"max takes two descriptors, got {len(parts)}")
            return MaxOf(parse_orlicz(parts[0]), parse_orlicz(parts[1]))
        if name == "table" and form == "colon":
            if args.startswith("@"):
                rows = _read_csv_rows(args[1:], ("x", "phi"), "table")
                return Tabulated(tuple(r[0] for r in rows), tuple(r[1] for r in rows), source=args[1:])
            rows = _inline_rows(args, 2, "table")
            return Tabulated(tuple(r[0] for r in rows), tuple(r[1] for r in rows))
        raise DescriptorError(f"unknown Orlicz descriptor {text!r}. Grammar: {ORLICZ_GRAMMAR}")

    return _wrap(build, text, ORLICZ_GRAMMAR)


def parse_function(text: str) -> Union[PiecewiseFunction, AnalyticCatalogFunction]:
    name, args, form = _head(text)

    def build():
        if name == "step" and form == "colon":
            return make_step(*_numbers(args, 3, "step"))
        if name == "tent" and form == "colon":
            return make_tent(*_numbers(args, 2, "tent"))
        if name == "sum" and form == "call":
            terms = [parse_function(p) for p in split_top(args)]
            if not all(isinstance(t, PiecewiseFunction) for t in terms):
                raise DescriptorError("sum(...) combines piecewise descriptors only")
            out = linear_combine([(1.0, t) for t in terms])
            return out.with_label("sum(" + ",".join(describe(t) for t in terms) + ")")
        if name == "pw" and form == "colon":
            if args.startswith("@"):
                rows = _read_csv_rows(args[1:], ("breakpoint", "slope", "intercept"), "pw")
                return PiecewiseFunction.from_rows(rows).with_label(f"pw:{args}")
            return PiecewiseFunction.from_rows(_inline_rows(args, 3, "pw"))
        if name == "exp2" and form == "colon":
            return TwoSidedExponential(*_numbers(args, 1, "exp2"))
        if name == "gauss" and form == "colon":
            return Gaussian(*_numbers(args, 1, "gauss"))
        if name == "sinsinc" and form == "colon":
            return SineTimesSincSquared(*_numbers(args, 2, "sinsinc"))
        raise DescriptorError(f"unknown function descriptor {text!r}. Grammar: {FUNCTION_GRAMMAR}")

    return _wrap(build, text, FUNCTION_GRAMMAR)


def parse_set(text: str) -> DiscreteSet:
    name, args, form = _head(text)

    def build():
        if name == "lattice" and form == "colon":
            return Lattice(*_numbers(args, 1, "lattice"))
        if name == "perturbed" and form == "colon":
            gamma, seed = _numbers(args, 2, "perturbed")
            if seed != int(seed):
                raise DescriptorError("perturbed: seed must be an integer")
            return PerturbedLattice(gamma, int(seed))
        if name == "finite" and form == "colon":
            if args.startswith("@"):
                rows = _read_csv_rows(args[1:], ("lambda",), "finite")
                return ExplicitFinite(tuple(r[0] for r in rows), source=args[1:])
            try:
                return ExplicitFinite(tuple(float(v) for v in args.split(",") if v))
            except ValueError:
                raise DescriptorError(f"finite: bad number list {args!r}") from None
        if name == "sqrt" and form == "bare":
            return SqrtLattice()
        if name == "squares" and form == "bare":
            return Squares()
        raise DescriptorError(f"unknown set descriptor {text!r}. Grammar: {SET_GRAMMAR}")

    return _wrap(build, text, SET_GRAMMAR)


def describe(obj) -> str:
    """Descriptor text for any object the parsers produce."""
    if isinstance(obj, PiecewiseFunction):
        if obj.label:
            return obj.label
        return "pw:[" + ";".join(":".join(repr(v) for v in r) for r in obj.to_rows()) + "]"
    if isinstance(obj, (OrliczFunction, AnalyticCatalogFunction, DiscreteSet)):
        return obj.descriptor()
    raise TypeError(f"no descriptor for {type(obj).__name__}")
