"""The quantifier-free language of contact algebras.

Terms are variables closed under complement and join; formulas are equality
and contact atoms closed under negation and disjunction.  Everything else
is an abbreviation expanded at parse time:

    a.b    ->  -((-a)+(-b))             meet
    0      ->  a.(-a)   (a: first variable of the formula, else "a")
    1      ->  -0
    a<=b   ->  a+b == b
    a!=b   ->  ~(a == b)
    f & g  ->  ~((~f)|(~g))
    f => g ->  (~f)|g
    f <=> g -> (f=>g) & (g=>f)

Concrete syntax: variables ``[a-z][a-z0-9]*``; operators
``- + . == != <= C( , ) ~ | & => <=>``; constants ``0 1``; parentheses.
Precedence: unary ``-`` over ``.`` over ``+``; ``~`` over ``&`` over ``|``
over ``=>`` over ``<=>``; ``=>`` associates to the right.

Axiom-scheme recognition uses a fixed propositional basis (the standard
three implication/negation schemes), the equational Boolean-algebra basis
(associativity, commutativity, absorption, distributivity, complementation),
the four contact schemes, and the connectedness scheme.

``find_countermodel`` enumerates connected adjacency spaces by cell count
(up to isomorphism for small sizes) and valuations by bitmask, and returns
the first Kripke model falsifying the formula.  ``None`` means no
countermodel up to the bound, which is not a theoremhood claim.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Mapping, Optional, Sequence

from .adjacency import AdjacencySpace, is_connected, mk_space
from .algebra import ContactAlgebra, FiniteContactAlgebra, induced_algebra


# ---------------------------------------------------------------------------
# terms and formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Complement:
    term: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


Term = Variable | Complement | Join


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Contact:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Eq | Contact | Not | Or


def meet(a: Term, b: Term) -> Term:
    return Complement(Join(Complement(a), Complement(b)))


def zero_term(carrier: Term) -> Term:
    return meet(carrier, Complement(carrier))


def one_term(carrier: Term) -> Term:
    return Complement(zero_term(carrier))


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def conj(a: Formula, b: Formula) -> Formula:
    return Not(Or(Not(a), Not(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return conj(implies(a, b), implies(b, a))


def term_variables(t: Term) -> set[str]:
    match t:
        case Variable(name):
            return {name}
        case Complement(inner):
            return term_variables(inner)
        case Join(left, right):
            return term_variables(left) | term_variables(right)
    raise TypeError(f"not a term: {t!r}")


def free_variables(f: Formula) -> set[str]:
    match f:
        case Eq(left, right) | Contact(left, right):
            return term_variables(left) | term_variables(right)
        case Not(body):
            return free_variables(body)
        case Or(left, right):
            return free_variables(left) | free_variables(right)
    raise TypeError(f"not a formula: {f!r}")


def term_depth(t: Term) -> int:
    match t:
        case Variable(_):
            return 0
        case Complement(inner):
            return 1 + term_depth(inner)
        case Join(left, right):
            return 1 + max(term_depth(left), term_depth(right))
    raise TypeError(f"not a term: {t!r}")


def format_term(t: Term) -> str:
    match t:
        case Variable(name):
            return name
        case Complement(inner):
            return f"-{format_term(inner)}" if isinstance(inner, Variable) \
                else f"-({format_term(inner)})"
        case Join(left, right):
            return f"({format_term(left)} + {format_term(right)})"


def format_formula(f: Formula) -> str:
    match f:
        case Eq(left, right):
            return f"{format_term(left)} == {format_term(right)}"
        case Contact(left, right):
            return f"C({format_term(left)}, {format_term(right)})"
        case Not(body):
            return f"~({format_formula(body)})"
        case Or(left, right):
            return f"({format_formula(left)} | {format_formula(right)})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><=>|=>|==|!=|<=|[-+.~|&(),01])|(?P<cname>C)(?=\()|(?P<var>[a-z][a-z0-9]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group("op"):
            tokens.append(("op", m.group("op"), m.start("op")))
        elif m.group("cname"):
            tokens.append(("C", "C", m.start("cname")))
        else:
            tokens.append(("var", m.group("var"), m.start("var")))
        pos = m.end()
    return tokens


@dataclass(frozen=True)
class _ZeroMark:
    pass


@dataclass(frozen=True)
class _OneMark:
    pass


class _Parser:
    """Recursive descent with backtracking between term and formula parens."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _at_op(self, *ops: str) -> bool:
        t = self._peek()
        return t is not None and t[0] == "op" and t[1] in ops

    def _take_op(self, *ops: str) -> bool:
        if self._at_op(*ops):
            self.pos += 1
            return True
        return False

    def _expect_op(self, op: str) -> None:
        if not self._take_op(op):
            t = self._peek()
            where = t[2] if t else len(self.text)
            got = t[1] if t else "end of input"
            raise FormulaSyntaxError(f"expected {op!r}, got {got!r}", where)

    def _here(self) -> int:
        t = self._peek()
        return t[2] if t else len(self.text)

    # formulas ---------------------------------------------------------

    def formula(self):
        left = self.imp()
        while self._take_op("<=>"):
            left = iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self._take_op("=>"):
            return implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj_()
        while self._take_op("|"):
            left = Or(left, self.conj_())
        return left

    def conj_(self):
        left = self.unary()
        while self._take_op("&"):
            left = conj(left, self.unary())
        return left

    def unary(self):
        if self._take_op("~"):
            return Not(self.unary())
        return self.atom()

    def atom(self):
        t = self._peek()
        if t is None:
            raise FormulaSyntaxError("unexpected end of input", len(self.text))
        if t[0] == "C":
            self.pos += 1
            self._expect_op("(")
            left = self.term()
            self._expect_op(",")
            right = self.term()
            self._expect_op(")")
            return Contact(left, right)
        # either a relational atom over terms or a parenthesised formula
        saved = self.pos
        try:
            left = self.term()
            if self._take_op("=="):
                return Eq(left, self.term())
            if self._take_op("!="):
                return Not(Eq(left, self.term()))
            if self._take_op("<="):
                right = self.term()
                return Eq(Join(left, right), right)
            raise FormulaSyntaxError("expected relation after term", self._here())
        except FormulaSyntaxError:
            self.pos = saved
        if self._take_op("("):
            inner = self.formula()
            self._expect_op(")")
            return inner
        raise FormulaSyntaxError(f"cannot parse formula at {t[1]!r}", t[2])

    # terms --------------------------------------------------------------

    def term(self):
        left = self.term_prod()
        while self._take_op("+"):
            left = Join(left, self.term_prod())
        return left

    def term_prod(self):
        left = self.term_unary()
        while self._take_op("."):
            left = meet(left, self.term_unary())
        return left

    def term_unary(self):
        if self._take_op("-"):
            return Complement(self.term_unary())
        t = self._peek()
        if t is None:
            raise FormulaSyntaxError("unexpected end of term", len(self.text))
        if t[0] == "var":
            self.pos += 1
            return Variable(t[1])
        if t[0] == "op" and t[1] == "0":
            self.pos += 1
            return _ZeroMark()
        if t[0] == "op" and t[1] == "1":
            self.pos += 1
            return _OneMark()
        if self._take_op("("):
            inner = self.term()
            self._expect_op(")")
            return inner
        raise FormulaSyntaxError(f"cannot parse term at {t[1]!r}", t[2])


def _first_variable(node) -> Optional[str]:
    match node:
        case Variable(name):
            return name
        case Complement(t):
            return _first_variable(t)
        case Join(a, b) | Or(a, b) | Eq(a, b) | Contact(a, b):
            return _first_variable(a) or _first_variable(b)
        case Not(body):
            return _first_variable(body)
    return None


def _expand_marks(node, carrier: Term):
    match node:
        case _ZeroMark():
            return zero_term(carrier)
        case _OneMark():
            return one_term(carrier)
        case Variable(_):
            return node
        case Complement(t):
            return Complement(_expand_marks(t, carrier))
        case Join(a, b):
            return Join(_expand_marks(a, carrier), _expand_marks(b, carrier))
        case Eq(a, b):
            return Eq(_expand_marks(a, carrier), _expand_marks(b, carrier))
        case Contact(a, b):
            return Contact(_expand_marks(a, carrier), _expand_marks(b, carrier))
        case Not(body):
            return Not(_expand_marks(body, carrier))
        case Or(a, b):
            return Or(_expand_marks(a, carrier), _expand_marks(b, carrier))
    raise TypeError(f"unexpected node {node!r}")


def parse(text: str) -> Formula:
    """Parse a formula; 0 and 1 expand over the first variable occurring
    in the formula (or the variable ``a`` when there is none)."""
    parser = _Parser(text)
    raw = parser.formula()
    if parser.pos != len(parser.tokens):
        tok = parser.tokens[parser.pos]
        raise FormulaSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    carrier = Variable(_first_variable(raw) or "a")
    return _expand_marks(raw, carrier)


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    raw = parser.term()
    if parser.pos != len(parser.tokens):
        tok = parser.tokens[parser.pos]
        raise FormulaSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    carrier = Variable(_first_variable(raw) or "a")
    return _expand_marks(raw, carrier)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

class UnboundVariable(LookupError):
    pass


def term_value(t: Term, algebra: ContactAlgebra, valuation: Mapping[str, object]):
    match t:
        case Variable(name):
            try:
                return valuation[name]
            except KeyError:
                raise UnboundVariable(name) from None
        case Complement(inner):
            return algebra.complement(term_value(inner, algebra, valuation))
        case Join(left, right):
            return algebra.join(term_value(left, algebra, valuation),
                                term_value(right, algebra, valuation))
    raise TypeError(f"not a term: {t!r}")


def evaluate(f: Formula, algebra: ContactAlgebra, valuation: Mapping[str, object]) -> bool:
    match f:
        case Eq(left, right):
            return algebra.equal(term_value(left, algebra, valuation),
                                 term_value(right, algebra, valuation))
        case Contact(left, right):
            return algebra.contact(term_value(left, algebra, valuation),
                                   term_value(right, algebra, valuation))
        case Not(body):
            return not evaluate(body, algebra, valuation)
        case Or(left, right):
            return evaluate(left, algebra, valuation) or evaluate(right, algebra, valuation)
    raise TypeError(f"not a formula: {f!r}")


def true_in_algebra(f: Formula, algebra: FiniteContactAlgebra) -> bool:
    """Truth under every valuation (finite carriers only)."""
    names = sorted(free_variables(f))
    elements = algebra.elements()
    for values in product(elements, repeat=len(names)):
        if not evaluate(f, algebra, dict(zip(names, values))):
            return False
    return True


# ---------------------------------------------------------------------------
# axiom schemes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetaTerm:
    name: str


@dataclass(frozen=True)
class MetaFormula:
    name: str


@dataclass(frozen=True)
class ZeroPattern:
    """Matches any expansion t.(-t) of the constant 0."""


@dataclass(frozen=True)
class OnePattern:
    """Matches -z for any zero expansion z."""


def _match(pattern, node, bindings: dict) -> bool:
    match pattern:
        case MetaTerm(name) | MetaFormula(name):
            if name in bindings:
                return bindings[name] == node
            bindings[name] = node
            return True
        case ZeroPattern():
            return _is_zero_expansion(node)
        case OnePattern():
            return isinstance(node, Complement) and _is_zero_expansion(node.term)
        case Variable(name):
            return isinstance(node, Variable) and node.name == name
        case Complement(p):
            return isinstance(node, Complement) and _match(p, node.term, bindings)
        case Join(pl_, pr):
            return (isinstance(node, Join)
                    and _match(pl_, node.left, bindings)
                    and _match(pr, node.right, bindings))
        case Eq(pl_, pr):
            return (isinstance(node, Eq)
                    and _match(pl_, node.left, bindings)
                    and _match(pr, node.right, bindings))
        case Contact(pl_, pr):
            return (isinstance(node, Contact)
                    and _match(pl_, node.left, bindings)
                    and _match(pr, node.right, bindings))
        case Not(p):
            return isinstance(node, Not) and _match(p, node.body, bindings)
        case Or(pl_, pr):
            return (isinstance(node, Or)
                    and _match(pl_, node.left, bindings)
                    and _match(pr, node.right, bindings))
    raise TypeError(f"bad pattern {pattern!r}")


def _is_zero_expansion(node) -> bool:
    # t.(-t) = -((-t) + (--t))
    match node:
        case Complement(Join(Complement(t1), Complement(Complement(t2)))):
            return t1 == t2
    return False


def _schemes() -> list[tuple[str, object]]:
    a, b, c = MetaTerm("a"), MetaTerm("b"), MetaTerm("c")
    f, g, h = MetaFormula("f"), MetaFormula("g"), MetaFormula("h")
    zero, one = ZeroPattern(), OnePattern()

    def m(x, y):
        return meet(x, y)

    schemes: list[tuple[str, object]] = [
        # propositional basis
        ("P1", implies(f, implies(g, f))),
        ("P2", implies(implies(f, implies(g, h)),
                       implies(implies(f, g), implies(f, h)))),
        ("P3", implies(implies(Not(f), Not(g)), implies(g, f))),
        # Boolean-algebra equational basis
        ("BA-join-assoc", Eq(Join(a, Join(b, c)), Join(Join(a, b), c))),
        ("BA-meet-assoc", Eq(m(a, m(b, c)), m(m(a, b), c))),
        ("BA-join-comm", Eq(Join(a, b), Join(b, a))),
        ("BA-meet-comm", Eq(m(a, b), m(b, a))),
        ("BA-absorb-join", Eq(Join(a, m(a, b)), a)),
        ("BA-absorb-meet", Eq(m(a, Join(a, b)), a)),
        ("BA-distr-meet", Eq(m(a, Join(b, c)), Join(m(a, b), m(a, c)))),
        ("BA-distr-join", Eq(Join(a, m(b, c)), m(Join(a, b), Join(a, c)))),
        ("BA-compl-join", Eq(Join(a, Complement(a)), one)),
        ("BA-compl-meet", Eq(m(a, Complement(a)), zero)),
        # contact schemes
        ("C1", Not(Contact(zero, a))),
        ("C2", iff(Contact(a, Join(b, c)),
                   Or(Contact(a, b), Contact(a, c)))),
        ("C3", implies(Contact(a, b), Contact(b, a))),
        ("C4", implies(Not(Eq(a, zero)), Contact(a, a))),
        # connectedness
        ("connectedness", implies(Not(Eq(a, zero)),
                                  implies(Not(Eq(a, one)),
                                          Contact(a, Complement(a))))),
    ]
    return schemes


SCHEMES = _schemes()


def is_axiom_instance(f: Formula) -> Optional[str]:
    """Name of the first axiom scheme the formula instantiates, if any."""
    for name, pattern in SCHEMES:
        if _match(pattern, f, {}):
            return name
    return None


# ---------------------------------------------------------------------------
# instance generation (for soundness sweeps)
# ---------------------------------------------------------------------------

def terms_up_to_depth(depth: int, names: Sequence[str]) -> list[Term]:
    """All terms over the given variables with nesting depth at most
    ``depth`` (complement and join each cost one level)."""
    layers: list[list[Term]] = [[Variable(n) for n in names]]
    for _ in range(depth):
        prev = [t for layer in layers for t in layer]
        new: list[Term] = [Complement(t) for t in layers[-1]]
        for x in prev:
            for y in prev:
                cand = Join(x, y)
                if term_depth(cand) == len(layers):
                    new.append(cand)
        layers.append(new)
    return [t for layer in layers for t in layer]


def generate_axiom_instances(names: Sequence[str] = ("p", "q"),
                             single_depth: int = 2,
                             multi_depth: int = 1) -> list[tuple[str, Formula]]:
    """All scheme instances over bounded term pools.

    Schemes with one term metavariable range over the full depth-bounded
    pool; schemes with several use the shallower pool to keep the instance
    set reviewable.  Propositional metavariables range over a fixed pool of
    atomic formulas over the same variables.
    """
    deep = terms_up_to_depth(single_depth, names)
    shallow = terms_up_to_depth(multi_depth, names)
    ps = [Variable(n) for n in names]
    formula_pool: list[Formula] = []
    for x in ps:
        for y in ps:
            formula_pool.append(Eq(x, y))
            formula_pool.append(Contact(x, y))

    out: list[tuple[str, Formula]] = []

    def fill(pattern, bindings):
        match pattern:
            case MetaTerm(name):
                return bindings[name]
            case MetaFormula(name):
                return bindings[name]
            case ZeroPattern():
                return zero_term(Variable(names[0]))
            case OnePattern():
                return one_term(Variable(names[0]))
            case Variable(_):
                return pattern
            case Complement(p):
                return Complement(fill(p, bindings))
            case Join(x, y):
                return Join(fill(x, bindings), fill(y, bindings))
            case Eq(x, y):
                return Eq(fill(x, bindings), fill(y, bindings))
            case Contact(x, y):
                return Contact(fill(x, bindings), fill(y, bindings))
            case Not(p):
                return Not(fill(p, bindings))
            case Or(x, y):
                return Or(fill(x, bindings), fill(y, bindings))
        raise TypeError(f"bad pattern {pattern!r}")

    for name, pattern in SCHEMES:
        meta_terms = sorted(_collect_meta(pattern, MetaTerm))
        meta_formulas = sorted(_collect_meta(pattern, MetaFormula))
        term_pool = deep if len(meta_terms) <= 1 else shallow
        for term_choice in product(term_pool, repeat=len(meta_terms)):
            for formula_choice in product(formula_pool, repeat=len(meta_formulas)):
                bindings = dict(zip(meta_terms, term_choice))
                bindings.update(zip(meta_formulas, formula_choice))
                out.append((name, fill(pattern, bindings)))
    return out


def _collect_meta(pattern, kind) -> set[str]:
    found: set[str] = set()

    def walk(node):
        if isinstance(node, kind):
            found.add(node.name)
            return
        match node:
            case Complement(t) | Not(t):
                walk(t)
            case Join(x, y) | Eq(x, y) | Contact(x, y) | Or(x, y):
                walk(x)
                walk(y)
            case _:
                pass

    walk(pattern)
    return found


# ---------------------------------------------------------------------------
# countermodel search
# ---------------------------------------------------------------------------

_CELL_NAMES = "abcdefghijklmnopqrstuvwxyz"


def _pair_bits(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _degree_profiles(mask: int, n: int, pairs: list[tuple[int, int]]) -> list:
    adj = [[] for _ in range(n)]
    for k, (i, j) in enumerate(pairs):
        if mask >> k & 1:
            adj[i].append(j)
            adj[j].append(i)
    degs = [len(a) for a in adj]
    return [(degs[v], tuple(sorted(degs[u] for u in adj[v]))) for v in range(n)]


def _is_canonical_mask(mask: int, n: int, pairs: list[tuple[int, int]]) -> bool:
    """Whether the mask is the canonical representative of its class.

    Canonical form: the minimum relabelling among those that place each
    cell into the position block of its degree profile (profiles sorted).
    The candidate set is the same for isomorphic graphs, so exactly one
    mask per isomorphism class is canonical.
    """
    index = {pair: k for k, pair in enumerate(pairs)}
    profiles = _degree_profiles(mask, n, pairs)
    classes: dict[object, list[int]] = {}
    for v, prof in enumerate(profiles):
        classes.setdefault(prof, []).append(v)
    groups = [classes[key] for key in sorted(classes)]
    # position blocks in sorted-profile order
    blocks = []
    start = 0
    for g in groups:
        blocks.append(range(start, start + len(g)))
        start += len(g)
    bits = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
    perm = [0] * n
    attained = False
    for assignment in product(*(permutations(block) for block in blocks)):
        for group, targets in zip(groups, assignment):
            for src, dst in zip(group, targets):
                perm[src] = dst
        out = 0
        for i, j in bits:
            pi, pj = perm[i], perm[j]
            out |= 1 << index[(pi, pj) if pi < pj else (pj, pi)]
        if out < mask:
            return False
        if out == mask:
            attained = True
    return attained


_SPACE_CACHE: dict[tuple[int, int], list[AdjacencySpace]] = {}


def _spaces_with_cells(n: int, dedupe_limit: int) -> list[AdjacencySpace]:
    key = (n, dedupe_limit)
    if key not in _SPACE_CACHE:
        cells = list(_CELL_NAMES[:n])
        pairs = _pair_bits(n)
        out = []
        for mask in range(1 << len(pairs)):
            edges = [(cells[i], cells[j])
                     for k, (i, j) in enumerate(pairs) if mask >> k & 1]
            space = mk_space(cells, edges)
            if not is_connected(space):
                continue
            if n <= dedupe_limit and not _is_canonical_mask(mask, n, pairs):
                continue
            out.append(space)
        _SPACE_CACHE[key] = out
    return _SPACE_CACHE[key]


def enumerate_connected_spaces(max_cells: int, dedupe_limit: int = 6
                               ) -> Iterator[AdjacencySpace]:
    """Connected spaces by cell count, then adjacency bitmask.

    Up to ``dedupe_limit`` cells only canonical representatives (minimal
    bitmask under cell permutations) are produced; results are cached, so
    repeated searches over the same bound enumerate once.
    """
    for n in range(1, max_cells + 1):
        yield from _spaces_with_cells(n, dedupe_limit)


def find_countermodel(f: Formula | str, max_cells: int
                      ) -> Optional[tuple[AdjacencySpace, dict[str, frozenset[str]]]]:
    """First falsifying Kripke model with at most ``max_cells`` cells.

    Valuations assign each free variable a subset of cells, enumerated in
    bitmask order.  None means no countermodel up to the bound.
    """
    if isinstance(f, str):
        f = parse(f)
    if max_cells < 1:
        raise ValueError("cell bound must be >= 1")
    names = sorted(free_variables(f))
    for space in enumerate_connected_spaces(max_cells):
        algebra = induced_algebra(space)
        size = 1 << len(space.cells)
        for masks in product(range(size), repeat=len(names)):
            valuation = dict(zip(names, masks))
            if not evaluate(f, algebra, valuation):
                named = {name: frozenset(algebra.cells_of(mask))
                         for name, mask in valuation.items()}
                return space, named
    return None


# ---------------------------------------------------------------------------
# formula files: one formula per line, '#' comments
# ---------------------------------------------------------------------------

def parse_formula_file(text: str) -> list[tuple[int, Formula]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append((lineno, parse(body)))
    return out
