"""Ribbon-diagram DSL: parsing and Reshetikhin-Turaev evaluation.

Grammar (line-based, '#' starts a comment):

    input <name[+|-]> <name[+|-]> ...
    layer <gen> [| <gen>] ...

applied left-to-right across tensor slots and top-to-bottom in time.  A
downward strand with sign '-' is the dual object; duality bookkeeping is
resolved at parse time.  Generators and their slot signatures:

    id(X)         X          -> X
    braid(X,Y)    X Y        -> Y X     (c_{X,Y})
    braid_inv(X,Y)X Y        -> Y X     (c_{Y,X}^{-1})
    ev(X)         X- X       -> (empty)
    coev(X)       (empty)    -> X X-
    ev_r(X)       X X-       -> (empty)
    coev_r(X)     (empty)    -> X- X
    twist(X)      X          -> X
    twist_inv(X)  X          -> X
    coupon(name)  declared domain -> declared codomain

Coupon names resolve to morphisms from a sidecar JSON file mapping
name -> {"domain": [...], "codomain": [...], "matrix": [[...]]}.
A closed diagram evaluates to a 1 x 1 scalar.
"""

import json
import re
from collections import namedtuple

from .errors import DiagramSyntaxError, TypeMismatch, UnknownCoupon
from .linalg import Matrix

Coupon = namedtuple("Coupon", "domain codomain matrix")

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*[+-]?|[(),|]|\S")

GENERATORS = {"id", "braid", "braid_inv", "ev", "coev", "ev_r", "coev_r",
              "twist", "twist_inv", "coupon"}
_ARITY = {"id": 1, "braid": 2, "braid_inv": 2, "ev": 1, "coev": 1,
          "ev_r": 1, "coev_r": 1, "twist": 1, "twist_inv": 1, "coupon": 1}


class Diagram:
    """A parsed, slot-checked layered ribbon diagram."""

    def __init__(self, cat, input_word, layers, words, coupons):
        self.cat = cat
        self.input_word = input_word   # list of (name, sign)
        self.layers = layers           # list of list of (gen, args)
        self.words = words             # word before layer i; words[-1] = output
        self.coupons = coupons

    @property
    def output_word(self):
        return self.words[-1]


def word_object(cat, word):
    """The tensor product object of a signed word."""
    objs = []
    for name, sign in word:
        obj = cat.module(name)
        objs.append(cat.dual(obj) if sign < 0 else obj)
    return cat.tensor_all(objs)


def load_morphisms(path, cat):
    """Read a sidecar coupon file into {name: Coupon}."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    out = {}
    for name, spec in raw.items():
        dom = [_parse_signed(cat, s) for s in spec["domain"]]
        cod = [_parse_signed(cat, s) for s in spec["codomain"]]
        mat = Matrix.from_lists(cat.field, spec["matrix"])
        out[name] = make_coupon(cat, dom, cod, mat)
    return out


def make_coupon(cat, domain, codomain, matrix):
    from .errors import SchemaError

    if not domain and not codomain:
        raise SchemaError("a coupon needs at least one attached ribbon")
    if matrix.cols != _word_dim(cat, domain) or \
            matrix.rows != _word_dim(cat, codomain):
        raise SchemaError("coupon matrix shape does not match its words")
    return Coupon(domain, codomain, matrix)


def _parse_signed(cat, text):
    sign = 1
    if text.endswith("-"):
        sign, text = -1, text[:-1]
    elif text.endswith("+"):
        text = text[:-1]
    cat.module(text)  # raises SchemaError for unknown names
    return (text, sign)


def _tokenize(line, lineno):
    # comments are stripped by the caller
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def parse(text, cat, coupons=None):
    """Parse DSL source against a loaded category; validates slot bookkeeping."""
    coupons = coupons or {}
    input_word = None
    layers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _tokenize(line, lineno)
        head, col = tokens[0]
        rest = tokens[1:]
        if head == "input":
            if input_word is not None:
                raise DiagramSyntaxError("duplicate input line", lineno, col)
            input_word = []
            for tok, c in rest:
                if tok in "(),|":
                    raise DiagramSyntaxError(f"unexpected {tok!r}", lineno, c)
                input_word.append(_signed_token(tok, lineno, c))
        elif head == "layer":
            if input_word is None:
                raise DiagramSyntaxError("layer before input", lineno, col)
            layers.append(_parse_layer(rest, lineno))
        else:
            raise DiagramSyntaxError(f"expected 'input' or 'layer', got {head!r}",
                                     lineno, col)
    if input_word is None:
        raise DiagramSyntaxError("missing input line", 1, 1)
    words = _check_slots(cat, input_word, layers, coupons)
    return Diagram(cat, input_word, layers, words, coupons)


def _signed_token(tok, lineno, col):
    m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)([+-]?)", tok)
    if not m:
        raise DiagramSyntaxError(f"bad name {tok!r}", lineno, col)
    return (m.group(1), -1 if m.group(2) == "-" else 1)


def _parse_layer(tokens, lineno):
    gens = []
    i = 0
    if not tokens:
        raise DiagramSyntaxError("empty layer", lineno, 1)
    while i < len(tokens):
        name, col = tokens[i]
        if name not in GENERATORS:
            raise DiagramSyntaxError(f"unknown generator {name!r}", lineno, col)
        if i + 1 >= len(tokens) or tokens[i + 1][0] != "(":
            raise DiagramSyntaxError("expected '('", lineno, col)
        i += 2
        args = []
        expect_arg = True
        while True:
            if i >= len(tokens):
                raise DiagramSyntaxError("unterminated argument list",
                                         lineno, col)
            tok, c = tokens[i]
            if tok == ")":
                if expect_arg and args:
                    raise DiagramSyntaxError("trailing comma", lineno, c)
                i += 1
                break
            if tok == ",":
                if expect_arg:
                    raise DiagramSyntaxError("unexpected comma", lineno, c)
                expect_arg = True
                i += 1
                continue
            if not expect_arg:
                raise DiagramSyntaxError("missing comma", lineno, c)
            if name == "coupon":
                args.append((tok, 0))
            else:
                args.append(_signed_token(tok, lineno, c))
            expect_arg = False
            i += 1
        if len(args) != _ARITY[name]:
            raise DiagramSyntaxError(
                f"{name} takes {_ARITY[name]} argument(s), got {len(args)}",
                lineno, col)
        gens.append((name, tuple(args)))
        if i < len(tokens):
            tok, c = tokens[i]
            if tok != "|":
                raise DiagramSyntaxError(f"expected '|', got {tok!r}", lineno, c)
            i += 1
            if i == len(tokens):
                raise DiagramSyntaxError("dangling '|'", lineno, c)
    return gens


def _gen_signature(gen, args, coupons):
    """(consumed word, produced word) of one generator instance."""
    if gen == "coupon":
        name = args[0][0]
        if name not in coupons:
            raise UnknownCoupon(name)
        c = coupons[name]
        return list(c.domain), list(c.codomain)
    if gen == "id":
        (a,) = args
        return [a], [a]
    if gen in ("twist", "twist_inv"):
        (a,) = args
        return [a], [a]
    if gen in ("braid", "braid_inv"):
        a, b = args
        return [a, b], [b, a]
    name, s = args[0]
    dual = (name, -s)
    if gen == "ev":
        return [dual, (name, s)], []
    if gen == "coev":
        return [], [(name, s), dual]
    if gen == "ev_r":
        return [(name, s), dual], []
    assert gen == "coev_r"
    return [], [dual, (name, s)]


def _check_slots(cat, input_word, layers, coupons):
    for name, _ in input_word:
        cat.module(name)
    words = [list(input_word)]
    for li, layer in enumerate(layers):
        word = words[-1]
        pos = 0
        out = []
        for gen, args in layer:
            consumed, produced = _gen_signature(gen, args, coupons)
            got = word[pos:pos + len(consumed)]
            if got != consumed:
                raise TypeMismatch(
                    f"{gen}{tuple(a for a, _ in args)} expects slots "
                    f"{_fmt(consumed)} but found {_fmt(got)}", layer=li)
            pos += len(consumed)
            out.extend(produced)
        if pos != len(word):
            raise TypeMismatch(
                f"layer covers {pos} of {len(word)} slots", layer=li)
        words.append(out)
    return words


def _fmt(word):
    return " ".join(f"{n}{'-' if s < 0 else ''}" for n, s in word)


def _resolve(cat, slot):
    name, sign = slot
    obj = cat.module(name)
    return cat.dual(obj) if sign < 0 else obj


def _gen_matrix(cat, gen, args, coupons):
    if gen == "coupon":
        return coupons[args[0][0]].matrix
    if gen == "id":
        return Matrix.identity(cat.field, _resolve(cat, args[0]).dim)
    if gen == "twist":
        return cat.twist(_resolve(cat, args[0])).matrix
    if gen == "twist_inv":
        return cat.twist_inv(_resolve(cat, args[0])).matrix
    if gen == "braid":
        return cat.braiding(_resolve(cat, args[0]), _resolve(cat, args[1])).matrix
    if gen == "braid_inv":
        return cat.braiding_inv(_resolve(cat, args[0]),
                                _resolve(cat, args[1])).matrix
    x = _resolve(cat, args[0])
    if gen == "ev":
        return cat.ev(x).matrix
    if gen == "coev":
        return cat.coev(x).matrix
    if gen == "ev_r":
        return cat.ev_r(x).matrix
    assert gen == "coev_r"
    return cat.coev_r(x).matrix


def evaluate(diagram):
    """Compose the layers' Kronecker-assembled matrices into one morphism."""
    cat = diagram.cat
    if cat.kind != "hopf":
        from .errors import UnsupportedForBackend

        raise UnsupportedForBackend("diagram evaluation needs the hopf backend")
    from .backends import Mor

    total = Matrix.identity(cat.field, _word_dim(cat, diagram.input_word))
    for layer in diagram.layers:
        mat = Matrix.identity(cat.field, 1)
        for gen, args in layer:
            mat = mat.kron(_gen_matrix(cat, gen, args, diagram.coupons))
        total = mat @ total
    dom = word_object(cat, diagram.input_word)
    cod = word_object(cat, diagram.output_word)
    return Mor(dom, cod, total)


def _word_dim(cat, word):
    d = 1
    for slot in word:
        d *= _resolve(cat, slot).dim
    return d


# ---------------------------------------------------------------------------
# ribbon move suite

MOVES = ("R2", "R3", "zigzag_l", "zigzag_r", "twist_nat", "twist_tensor",
         "twist_dual")


def move_check(cat, move, names):
    """Build both sides of a generating ribbon move as diagrams, evaluate
    them, and compare exactly.  ``names`` lists the strand labels the move
    needs (one for the zigzags and twist_dual, two for R2/twist moves; R3
    braids the word a b a)."""
    if move == "R2":
        a, b = names[0], names[1]
        d1 = parse(f"input {a} {b}\nlayer braid({a},{b})\n"
                   f"layer braid_inv({b},{a})", cat)
        d2 = parse(f"input {a} {b}\nlayer id({a}) | id({b})", cat)
        return evaluate(d1) == evaluate(d2)
    if move == "R3":
        a, b, c = (names + [names[0]])[:3] if len(names) >= 3 else \
            [names[0], names[1], names[0]]
        side1 = parse(
            f"input {a} {b} {c}\n"
            f"layer braid({a},{b}) | id({c})\n"
            f"layer id({b}) | braid({a},{c})\n"
            f"layer braid({b},{c}) | id({a})", cat)
        side2 = parse(
            f"input {a} {b} {c}\n"
            f"layer id({a}) | braid({b},{c})\n"
            f"layer braid({a},{c}) | id({b})\n"
            f"layer id({c}) | braid({a},{b})", cat)
        return evaluate(side1) == evaluate(side2)
    if move == "zigzag_l":
        a = names[0]
        d = parse(f"input {a}\nlayer coev({a}) | id({a})\n"
                  f"layer id({a}) | ev({a})", cat)
        return evaluate(d).matrix == Matrix.identity(
            cat.field, cat.module(a).dim)
    if move == "zigzag_r":
        a = names[0]
        d = parse(f"input {a}\nlayer id({a}) | coev_r({a})\n"
                  f"layer ev_r({a}) | id({a})", cat)
        return evaluate(d).matrix == Matrix.identity(
            cat.field, cat.module(a).dim)
    if move == "twist_nat":
        a, b = names[0], names[1]
        xa, xb = cat.module(a), cat.module(b)
        for fm in cat.hom_basis(xa, xb):
            coupons = {"f": Coupon([(a, 1)], [(b, 1)], fm.matrix)}
            d1 = parse(f"input {a}\nlayer coupon(f)\nlayer twist({b})",
                       cat, coupons)
            d2 = parse(f"input {a}\nlayer twist({a})\nlayer coupon(f)",
                       cat, coupons)
            if evaluate(d1) != evaluate(d2):
                return False
        return True
    if move == "twist_tensor":
        a, b = names[0], names[1]
        d = parse(f"input {a} {b}\nlayer twist({a}) | twist({b})\n"
                  f"layer braid({a},{b})\nlayer braid({b},{a})", cat)
        lhs = cat.twist(cat.tensor(cat.module(a), cat.module(b)))
        return evaluate(d).matrix == lhs.matrix
    if move == "twist_dual":
        a = names[0]
        d1 = parse(f"input {a}-\nlayer twist({a}-)", cat)
        bent = parse(
            f"input {a}-\n"
            f"layer id({a}-) | coev({a})\n"
            f"layer id({a}-) | twist({a}) | id({a}-)\n"
            f"layer ev({a}) | id({a}-)", cat)
        return evaluate(d1) == evaluate(bent)
    raise ValueError(f"unknown move {move!r}")


def random_diagram(cat, names, rng, n_layers=3, start_word=None, max_width=4):
    """Seeded random diagram source (and its output word) for property tests."""
    if start_word is None:
        width = rng.randint(1, max_width)
        word = [(rng.choice(names), rng.choice((1, -1))) for _ in range(width)]
    else:
        word = list(start_word)
    lines = ["input " + _fmt(word)]
    for _ in range(n_layers):
        gens = []
        out = []
        pos = 0
        if not word:
            name = rng.choice(names)
            gen = rng.choice(("coev", "coev_r"))
            gens.append(f"{gen}({name})")
            _, produced = _gen_signature(gen, ((name, 1),), {})
            out.extend(produced)
        while pos < len(word):
            name, sign = word[pos]
            nxt = word[pos + 1] if pos + 1 < len(word) else None
            choices = ["id", "twist", "twist_inv"]
            if len(word) < max_width:
                choices.append("insert_coev")
            if nxt is not None:
                choices.extend(["braid", "braid_inv"])
                if nxt == (name, -sign):
                    choices.append("ev_r" if sign > 0 else "ev")
            gen = rng.choice(choices)
            if gen == "insert_coev":
                other = rng.choice(names)
                which = rng.choice(("coev", "coev_r"))
                gens.append(f"{which}({other})")
                _, produced = _gen_signature(which, ((other, 1),), {})
                out.extend(produced)
                continue
            if gen in ("id", "twist", "twist_inv"):
                gens.append(f"{gen}({_fmt([word[pos]])})")
                out.append(word[pos])
                pos += 1
            elif gen in ("braid", "braid_inv"):
                gens.append(f"{gen}({_fmt([word[pos]])},{_fmt([nxt])})")
                out.extend([nxt, word[pos]])
                pos += 2
            else:
                arg = (name, sign) if gen == "ev_r" else (name, -sign)
                gens.append(f"{gen}({_fmt([arg])})")
                pos += 2
        lines.append("layer " + " | ".join(gens))
        word = out
    return "\n".join(lines), word
