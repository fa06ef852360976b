"""Text format for group descriptions.

A group file holds any number of definitions::

    # comments run to the end of the line
    group D8 {
        gens: x y
        rels: x^4 y^2 [x,y]*x^-2
    }
    group Z6 = cyclic(6)

Words follow

    WORD := term ('*' term)*
    term := atom ('^' signed-integer)?
    atom := generator | '1' | '[' WORD ',' WORD ']' | '(' WORD ')'

and relators are separated by whitespace: a relator ends where no '*'
follows.
"""
import logging
import re
from collections import OrderedDict, namedtuple

from .nil2core import FreeCoords, pair_list

logger = logging.getLogger(__name__)

KEYWORDS = ('group', 'gens', 'rels')


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        ValueError.__init__(self, message)


class UnknownGeneratorError(ParseError):
    pass


class DuplicateGroupError(ParseError):
    pass


Token = namedtuple('Token', ['kind', 'value', 'line', 'column'])

_token_re = re.compile(r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<op>[{}()\[\],:;*^=+-])
""", re.VERBOSE)


def tokenize(text):
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _token_re.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == 'newline':
            line += 1
            line_start = m.end()
        elif kind not in ('space', 'comment'):
            yield Token(kind, m.group(), line, m.start() - line_start + 1)
        pos = m.end()
    yield Token('eof', '', line, pos - line_start + 1)


class Word(object):
    """Parsed word; ``evaluate`` gives its coordinates in a free nil-2 group."""
    line = None
    column = None

    def evaluate(self, index, rank):
        raise NotImplementedError()

    def generator_names(self):
        return set()

    def __eq__(self, other):
        return type(self) is type(other) and str(self) == str(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(str(self))

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self)


class Identity(Word):
    def evaluate(self, index, rank):
        return FreeCoords.identity(rank)

    def __str__(self):
        return "1"


class Generator(Word):
    def __init__(self, name, line=None, column=None):
        self.name = name
        self.line = line
        self.column = column

    def evaluate(self, index, rank):
        if self.name not in index:
            raise UnknownGeneratorError("unknown generator %r" % self.name, self.line, self.column)
        return FreeCoords.generator(rank, index[self.name])

    def generator_names(self):
        return {self.name}

    def __str__(self):
        return self.name


class Product(Word):
    def __init__(self, factors):
        self.factors = tuple(factors)

    def evaluate(self, index, rank):
        g = FreeCoords.identity(rank)
        for w in self.factors:
            g = g * w.evaluate(index, rank)
        return g

    def generator_names(self):
        return set().union(*[w.generator_names() for w in self.factors])

    def __str__(self):
        return "*".join(str(w) for w in self.factors)


class Power(Word):
    def __init__(self, base, exponent):
        self.base = base
        self.exponent = int(exponent)

    def evaluate(self, index, rank):
        return self.base.evaluate(index, rank) ** self.exponent

    def generator_names(self):
        return self.base.generator_names()

    def __str__(self):
        base = str(self.base)
        if isinstance(self.base, (Product, Power)):
            base = "(%s)" % base
        return "%s^%d" % (base, self.exponent)


class Commutator(Word):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def evaluate(self, index, rank):
        return self.left.evaluate(index, rank).commutator(self.right.evaluate(index, rank))

    def generator_names(self):
        return self.left.generator_names() | self.right.generator_names()

    def __str__(self):
        return "[%s,%s]" % (self.left, self.right)


BuiltinRef = namedtuple('BuiltinRef', ['name', 'args'])


class GroupDefinition(object):
    """One ``group NAME ...`` entry: an inline presentation or a builtin reference."""
    def __init__(self, name, gens=None, rels=None, builtin=None, line=None):
        self.name = name
        self.gens = tuple(gens) if gens is not None else None
        self.rels = tuple(rels) if rels is not None else None
        self.builtin = builtin
        self.line = line

    def build(self):
        from .builtin_groups import make_builtin
        from .nil2core import Nil2Group
        if self.builtin is not None:
            G = make_builtin(self.builtin.name, *self.builtin.args)
            G.name = self.name
            return G
        return Nil2Group(self.gens, self.rels, name=self.name)

    def dumps(self):
        if self.builtin is not None:
            return "group %s = %s\n" % (self.name, format_builtin(self.builtin))
        return format_group(self.name, self.gens, [str(r) for r in self.rels])


class GroupFile(object):
    """Ordered collection of group definitions with unique names."""
    def __init__(self, definitions=()):
        self.definitions = OrderedDict()
        for d in definitions:
            self.add(d)

    def add(self, definition):
        if definition.name in self.definitions:
            raise DuplicateGroupError("group %r defined twice" % definition.name, definition.line, 1)
        self.definitions[definition.name] = definition

    def names(self):
        return list(self.definitions)

    def group(self, name):
        """Build the named group; names not defined here are read as builtin references."""
        if name in self.definitions:
            return self.definitions[name].build()
        from .builtin_groups import make_builtin
        ref = parse_builtin_reference(name)
        G = make_builtin(ref.name, *ref.args)
        return G

    def dumps(self):
        return "\n".join(d.dumps() for d in self.definitions.values())

    def __len__(self):
        return len(self.definitions)


class Parser(object):
    def __init__(self, text):
        self.tokens = list(tokenize(text))
        self.pos = 0

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != 'eof':
            self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)

    def at(self, kind, value=None):
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def expect(self, kind, value=None):
        tok = self.peek()
        if not self.at(kind, value):
            found = tok.value or 'end of input'
            raise self.error("expected %s, found %r" % (value or kind, found), tok)
        return self.next()

    def expect_end(self):
        if not self.at('eof'):
            raise self.error("unexpected %r" % self.peek().value)

    # --- words

    def word(self):
        factors = [self.term()]
        while self.at('op', '*'):
            self.next()
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(factors)

    def term(self):
        base = self.atom()
        if self.at('op', '^'):
            self.next()
            base = Power(base, self.signed_int())
        return base

    def signed_int(self):
        sign = 1
        if self.at('op', '-') or self.at('op', '+'):
            sign = -1 if self.next().value == '-' else 1
        return sign * int(self.expect('int').value)

    def atom(self):
        tok = self.peek()
        if tok.kind == 'name':
            if tok.value in KEYWORDS or '.' in tok.value:
                raise self.error("%r cannot be used as a generator" % tok.value)
            self.next()
            return Generator(tok.value, tok.line, tok.column)
        if tok.kind == 'int':
            if tok.value != '1':
                raise self.error("only 1 may appear as a number inside a word")
            self.next()
            return Identity()
        if self.at('op', '['):
            self.next()
            left = self.word()
            self.expect('op', ',')
            right = self.word()
            self.expect('op', ']')
            return Commutator(left, right)
        if self.at('op', '('):
            self.next()
            inner = self.word()
            self.expect('op', ')')
            return inner
        raise self.error("expected a word, found %r" % (tok.value or 'end of input'))

    # --- files

    def builtin_reference(self):
        tok = self.expect('name')
        args = []
        if self.at('op', '('):
            self.next()
            if not self.at('op', ')'):
                args.append(self.signed_int())
                while self.at('op', ','):
                    self.next()
                    args.append(self.signed_int())
            self.expect('op', ')')
        return BuiltinRef(tok.value, tuple(args))

    def definition(self):
        start = self.expect('name', 'group')
        name_tok = self.expect('name')
        if self.at('op', '='):
            self.next()
            return GroupDefinition(name_tok.value, builtin=self.builtin_reference(), line=start.line)
        self.expect('op', '{')
        self.expect('name', 'gens')
        self.expect('op', ':')
        gens = []
        while self.at('name') and not self.at('name', 'rels'):
            tok = self.next()
            if tok.value in KEYWORDS or '.' in tok.value:
                raise self.error("%r cannot be used as a generator" % tok.value, tok)
            if tok.value in gens:
                raise self.error("generator %r listed twice" % tok.value, tok)
            gens.append(tok.value)
        rels = []
        if self.at('name', 'rels'):
            self.next()
            self.expect('op', ':')
            while not self.at('op', '}'):
                w = self.word()
                for g in _generators_in(w):
                    if g.name not in gens:
                        raise UnknownGeneratorError("unknown generator %r in group %s" % (g.name, name_tok.value),
                                                    g.line, g.column)
                rels.append(w)
        self.expect('op', '}')
        return GroupDefinition(name_tok.value, gens, rels, line=start.line)

    def group_file(self):
        gf = GroupFile()
        while not self.at('eof'):
            gf.add(self.definition())
        return gf


def _generators_in(word):
    if isinstance(word, Generator):
        yield word
    elif isinstance(word, Product):
        for w in word.factors:
            for g in _generators_in(w):
                yield g
    elif isinstance(word, Power):
        for g in _generators_in(word.base):
            yield g
    elif isinstance(word, Commutator):
        for g in _generators_in(word.left):
            yield g
        for g in _generators_in(word.right):
            yield g


def parse_word(text):
    p = Parser(text)
    w = p.word()
    p.expect_end()
    return w


def parse_word_list(text, separator=';'):
    """Parse "w1; w2; ..." into a list of words; empty items are skipped."""
    return [parse_word(item) for item in text.split(separator) if item.strip()]


def parse_int_list(text, separator=','):
    try:
        return [int(item) for item in text.split(separator) if item.strip()]
    except ValueError:
        raise ParseError("expected a list of integers, got %r" % text)


def parse_builtin_reference(text):
    p = Parser(text)
    ref = p.builtin_reference()
    p.expect_end()
    return ref


def loads(text):
    return Parser(text).group_file()


def load(path):
    with open(path) as fh:
        text = fh.read()
    logger.debug("parsing group file %s", path)
    return loads(text)


def format_builtin(ref):
    if not ref.args:
        return ref.name
    return "%s(%s)" % (ref.name, ",".join(str(a) for a in ref.args))


def format_group(name, gens, rels):
    lines = ["group %s {" % name, "    gens: %s" % " ".join(gens)]
    if rels:
        lines.append("    rels: %s" % " ".join(str(r) for r in rels))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _format_power(base, t):
    return base if t == 1 else "%s^%d" % (base, t)


def format_coords(coords, gen_names):
    """Normal-form word of *coords*, e.g. ``x^2*y*[x,y]^3``; identity is ``1``."""
    terms = [_format_power(gen_names[i], t) for i, t in enumerate(coords.e) if t]
    for (i, j), t in zip(pair_list(coords.rank), coords.f):
        if t:
            terms.append(_format_power("[%s,%s]" % (gen_names[i], gen_names[j]), t))
    return "*".join(terms) if terms else "1"
