"""Plain-text reaction network files (suggested extension: .crn).

One reaction per line:

    complex  ->  complex         a single directed reaction
    complex  <-> complex         both directions

A complex is `0` (the empty complex) or `+`-separated terms, each an
optional positive integer coefficient followed by a species name
(a letter, then letters/digits/underscores), e.g. `S1 + 2 P`.  `#` starts
a comment, blank lines are skipped, and both LF and CRLF are accepted.
Species get 1-based ids in order of first appearance; that order defines
the coordinate order of all vectors derived from the file.

Molecularity is not restricted by the parser; a binary-only check is
available on the parsed document.  Coefficients above 4096 are rejected as
a sanity bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .complexes import Complex
from .network import Reaction, ReactionNetwork

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")

_MAX_COEFFICIENT = 4096


class NetworkParseError(ValueError):
    """A syntax or semantic error, located by line and column (1-based)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class NetworkDocument:
    """A parsed network file: named species plus directed reactions."""

    species_order: tuple[str, ...]
    reactions: tuple[Reaction, ...]
    source_text: str = field(default="", compare=False)

    @property
    def is_binary(self) -> bool:
        """Whether every complex has molecularity at most two."""
        return all(
            r.source.order <= 2 and r.product.order <= 2 for r in self.reactions
        )


def _tokenize(line: str, line_no: int):
    """Tokens (kind, value, column) for one logical line."""
    tokens = []
    pos = 0
    length = len(line)
    while pos < length:
        ch = line[pos]
        if ch in " \t":
            pos += 1
            continue
        col = pos + 1
        if line.startswith("<->", pos):
            tokens.append(("BIARROW", "<->", col))
            pos += 3
        elif line.startswith("->", pos):
            tokens.append(("ARROW", "->", col))
            pos += 2
        elif ch == "+":
            tokens.append(("PLUS", "+", col))
            pos += 1
        elif m := _INT_RE.match(line, pos):
            tokens.append(("INT", m.group(), col))
            pos = m.end()
        elif m := _NAME_RE.match(line, pos):
            tokens.append(("NAME", m.group(), col))
            pos = m.end()
        else:
            raise NetworkParseError(f"unexpected character {ch!r}", line_no, col)
    return tokens


class _LineParser:
    def __init__(self, tokens, line_no: int, line_len: int, species: dict[str, int], order: list[str]):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.line_len = line_len
        self.species = species
        self.order = order

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def fail(self, message: str, column: int | None = None):
        if column is None:
            tok = self.peek()
            column = tok[2] if tok else self.line_len + 1
        raise NetworkParseError(message, self.line_no, column)

    def species_id(self, name: str) -> int:
        if name not in self.species:
            self.species[name] = len(self.order) + 1
            self.order.append(name)
        return self.species[name]

    def parse_complex(self) -> Complex:
        tok = self.peek()
        if tok is None:
            self.fail("expected a complex")
        if tok[0] == "INT" and int(tok[1]) == 0:
            self.take()
            nxt = self.peek()
            if nxt is not None and nxt[0] in ("NAME", "PLUS"):
                self.fail("coefficient 0 is not allowed", tok[2])
            return Complex.zero()
        counts: dict[int, int] = {}
        while True:
            tok = self.peek()
            if tok is None or tok[0] not in ("INT", "NAME"):
                self.fail("expected a species term")
            coeff = 1
            if tok[0] == "INT":
                coeff = int(tok[1])
                if coeff == 0:
                    self.fail("coefficient 0 is not allowed", tok[2])
                if coeff > _MAX_COEFFICIENT:
                    self.fail(
                        f"coefficient {coeff} exceeds the supported bound "
                        f"{_MAX_COEFFICIENT}",
                        tok[2],
                    )
                self.take()
                tok = self.peek()
                if tok is None or tok[0] != "NAME":
                    self.fail("expected a species name after the coefficient")
            name_tok = self.take()
            sid = self.species_id(name_tok[1])
            counts[sid] = counts.get(sid, 0) + coeff
            nxt = self.peek()
            if nxt is not None and nxt[0] == "PLUS":
                self.take()
                continue
            break
        return Complex.from_counts(counts)

    def parse_reaction(self) -> list[Reaction]:
        source = self.parse_complex()
        arrow = self.take()
        if arrow is None or arrow[0] not in ("ARROW", "BIARROW"):
            self.fail("expected '->' or '<->'",
                      arrow[2] if arrow else None)
        product = self.parse_complex()
        trailing = self.peek()
        if trailing is not None:
            self.fail(f"unexpected {trailing[1]!r} after the reaction")
        if source == product:
            self.fail(
                "source and product of a reaction must differ", arrow[2]
            )
        if arrow[0] == "BIARROW":
            return [Reaction(source, product), Reaction(product, source)]
        return [Reaction(source, product)]


def parse_network(text: str) -> NetworkDocument:
    """Parse a network file into a document.

    Raises NetworkParseError (with 1-based line/column) on any input the
    grammar does not cover.
    """
    species: dict[str, int] = {}
    order: list[str] = []
    reactions: list[Reaction] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _tokenize(line, line_no)
        parser = _LineParser(tokens, line_no, len(line), species, order)
        reactions.extend(parser.parse_reaction())
    return NetworkDocument(
        species_order=tuple(order),
        reactions=tuple(reactions),
        source_text=text,
    )


def _complex_name_key(c: Complex, names: tuple[str, ...]) -> tuple:
    return (c.order, tuple(sorted(names[s - 1] for s in c.species)))


def _render_complex(c: Complex, names: tuple[str, ...]) -> str:
    if c.order == 0:
        return "0"
    terms = []
    for name, count in sorted((names[s - 1], n) for s, n in c.counts().items()):
        terms.append(name if count == 1 else f"{count} {name}")
    return " + ".join(terms)


def serialize_network(doc: NetworkDocument) -> str:
    """Canonical text for a document: reversible pairs collapsed to `<->`
    and oriented toward the smaller side, reactions sorted, LF endings; an
    empty document is the empty string.

    All ordering decisions compare species by name, never by id.  Ids are
    assigned by first appearance and therefore change when the canonical
    text is reparsed; names do not, which is what makes serialization
    idempotent after a single round trip.
    """
    names = doc.species_order
    unique = set(doc.reactions)

    def reaction_key(r: Reaction) -> tuple:
        return (_complex_name_key(r.source, names), _complex_name_key(r.product, names))

    lines = []
    emitted = set()
    for r in sorted(unique, key=reaction_key):
        if r in emitted:
            continue
        back = r.reverse()
        if back in unique:
            emitted.add(back)
            arrow = "<->"
        else:
            arrow = "->"
        lines.append(
            f"{_render_complex(r.source, names)} {arrow} {_render_complex(r.product, names)}"
        )
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def to_reaction_network(doc: NetworkDocument) -> ReactionNetwork:
    """The reaction network over the document's species, ids by first
    appearance."""
    return ReactionNetwork(len(doc.species_order), frozenset(doc.reactions))


def document_from_network(
    net: ReactionNetwork, names: tuple[str, ...] | None = None
) -> NetworkDocument:
    """A document for a network, defaulting to species names S1..Sn."""
    if names is None:
        names = tuple(f"S{i}" for i in range(1, net.n + 1))
    if len(names) != net.n:
        raise ValueError(f"need {net.n} species names, got {len(names)}")
    return NetworkDocument(
        species_order=names,
        reactions=tuple(net.sorted_reactions()),
        source_text="",
    )
