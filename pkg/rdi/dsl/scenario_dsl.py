"""
A small expression language for state parametrizations

Expressions are arithmetic over numbers, the coordinates t, x, y, z, the
physical constants hbar, c, e, m, epsilon_0, pi, named scenario parameters and
the functions exp, log, sqrt, sin, cos, sinh, cosh, arcsin, arctan and
arcsinh. Precedence, loosest first: + and - (left), * and / (left), unary
minus, ^ (right), so ``-x^2`` is ``-(x^2)`` and ``2^3^2`` is ``2^(3^2)``.

Parsing is precedence climbing over a token list; every token keeps its byte
offset so errors can point into the configuration string.
"""

__author__ = "rdi developers"

from dataclasses import dataclass, field

import numpy as np

from rdi.jets import jets
from rdi.states.curves import Curve
from rdi.states.state_factory import PhysicalConstants, StateParametrization
from rdi.util.util import DSLSyntaxError, UnknownIdentifierError

__all__ = [
    'Expr', 'Number', 'Name', 'Neg', 'BinOp', 'Call', 'Token', 'FUNCTIONS',
    'COORDINATES', 'tokenize', 'parse', 'evaluate', 'to_source',
    'differentiate', 'constant_bindings', 'ExpressionCurve',
    'expression_state'
]

# groups of increasing precedence
OPERATORS = [
    [('+', 'left'), ('-', 'left')],
    [('*', 'left'), ('/', 'left')],
    [('^', 'right')],
]

OPERATOR_PREC = {
    op: idx + 1
    for idx, group in enumerate(OPERATORS) for op, _ in group
}
OPERATOR_ASSOC = {op: assoc for group in OPERATORS for op, assoc in group}

# unary minus binds tighter than * and / but looser than ^
NEGATION_PREC = 2.5
ATOM_PREC = 4

FUNCTIONS = {
    'exp': jets.exp,
    'log': jets.log,
    'sqrt': jets.sqrt,
    'sin': jets.sin,
    'cos': jets.cos,
    'sinh': jets.sinh,
    'cosh': jets.cosh,
    'arcsin': jets.arcsin,
    'arctan': jets.arctan,
    'arcsinh': jets.arcsinh,
}

COORDINATES = ('t', 'x', 'y', 'z')
CONSTANT_NAMES = ('hbar', 'c', 'e', 'm', 'epsilon_0', 'pi')


# ----------------------------------------------------------------------
# syntax tree


class Expr:
    '''
    Base class of expression nodes

    Nodes are immutable; equality ignores source offsets, so a tree parsed
    from a printed tree compares equal to the original.
    '''

    prec = ATOM_PREC

    def names(self):
        """Identifiers the expression refers to."""
        return set()


@dataclass(frozen=True)
class Number(Expr):
    value: float
    offset: int = field(default=-1, compare=False)

    def evaluate(self, env):
        return self.value

    def source(self):
        value = float(self.value)
        text = str(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)
        return '(' + text + ')' if value < 0 else text


@dataclass(frozen=True)
class Name(Expr):
    name: str
    offset: int = field(default=-1, compare=False)

    def names(self):
        return {self.name}

    def evaluate(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise UnknownIdentifierError(self.name, self.offset) from None

    def source(self):
        return self.name


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    offset: int = field(default=-1, compare=False)

    prec = NEGATION_PREC

    def names(self):
        return self.operand.names()

    def evaluate(self, env):
        return -self.operand.evaluate(env)

    def source(self):
        return '-' + _wrap(self.operand, OPERATOR_PREC['^'])


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr
    offset: int = field(default=-1, compare=False)

    @property
    def prec(self):
        return OPERATOR_PREC[self.op]

    def names(self):
        return self.left.names() | self.right.names()

    def evaluate(self, env):
        a = self.left.evaluate(env)
        if self.op == '^':
            if isinstance(self.right, Number) and float(
                    self.right.value).is_integer() and self.right.value >= 0:
                return jets.power(a, int(self.right.value))
            return jets.power(a, self.right.evaluate(env))
        b = self.right.evaluate(env)
        if self.op == '+':
            return a + b
        if self.op == '-':
            return a - b
        if self.op == '*':
            return a * b
        return a / b

    def source(self):
        p = self.prec
        if OPERATOR_ASSOC[self.op] == 'left':
            left, right = _wrap(self.left, p), _wrap(self.right, p + 0.5)
        else:
            left, right = _wrap(self.left, ATOM_PREC), _wrap(self.right, p)
        return '{} {} {}'.format(left, self.op, right) if p < 2 else '{}{}{}'.format(
            left, self.op, right)


@dataclass(frozen=True)
class Call(Expr):
    function: str
    argument: Expr
    offset: int = field(default=-1, compare=False)

    def names(self):
        return self.argument.names()

    def evaluate(self, env):
        return FUNCTIONS[self.function](self.argument.evaluate(env))

    def source(self):
        return '{}({})'.format(self.function, to_source(self.argument))


def _wrap(node, min_prec):
    text = node.source()
    if node.prec < min_prec:
        return '(' + text + ')'
    return text


# ----------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # 'number', 'name', 'op', '(', ')', 'end'
    text: str
    offset: int


def _byte_offset(source, index):
    return len(source[:index].encode('utf-8'))


def tokenize(source):
    '''
    Split an expression into tokens

    Returns
    -------

    list of Token, terminated by an 'end' token

    Raises
    ------

    DSLSyntaxError
        on characters outside the language
    '''
    result = []
    idx = 0
    n = len(source)
    while idx < n:
        ch = source[idx]
        if ch.isspace():
            idx += 1
            continue
        start = idx
        if ch.isdigit() or (ch == '.' and idx + 1 < n and source[idx + 1].isdigit()):
            while idx < n and (source[idx].isdigit() or source[idx] == '.'):
                idx += 1
            # exponent, only when digits follow
            if idx < n and source[idx] in 'eE':
                j = idx + 1
                if j < n and source[j] in '+-':
                    j += 1
                if j < n and source[j].isdigit():
                    idx = j
                    while idx < n and source[idx].isdigit():
                        idx += 1
            text = source[start:idx]
            try:
                float(text)
            except ValueError:
                raise DSLSyntaxError('malformed number {!r}'.format(text),
                                     _byte_offset(source, start)) from None
            result.append(Token('number', text, _byte_offset(source, start)))
            continue
        if ch.isascii() and (ch.isalpha() or ch == '_'):
            while idx < n and source[idx].isascii() and (source[idx].isalnum() or
                                                         source[idx] == '_'):
                idx += 1
            result.append(Token('name', source[start:idx],
                                _byte_offset(source, start)))
            continue
        if ch in OPERATOR_PREC:
            result.append(Token('op', ch, _byte_offset(source, start)))
            idx += 1
            continue
        if ch in '()':
            result.append(Token(ch, ch, _byte_offset(source, start)))
            idx += 1
            continue
        raise DSLSyntaxError('unexpected character {!r}'.format(ch),
                             _byte_offset(source, start))
    result.append(Token('end', '', _byte_offset(source, n)))
    return result


class _Stream:

    def __init__(self, tokens):
        self.tokens = tokens
        self.position = 0

    def peek(self):
        return self.tokens[self.position]

    def next(self):
        token = self.tokens[self.position]
        if token.kind != 'end':
            self.position += 1
        return token

    def expect(self, kind, what):
        token = self.next()
        if token.kind != kind:
            raise DSLSyntaxError('expected {}'.format(what), token.offset)
        return token


def _parse_atom(stream, known):
    token = stream.next()
    if token.kind == 'op' and token.text == '-':
        return Neg(_parse_climb(stream, OPERATOR_PREC['^'], known), token.offset)
    if token.kind == '(':
        inner = _parse_climb(stream, 0, known)
        stream.expect(')', "')'")
        return inner
    if token.kind == 'number':
        return Number(float(token.text), token.offset)
    if token.kind == 'name':
        if stream.peek().kind == '(':
            if token.text not in FUNCTIONS:
                raise UnknownIdentifierError(token.text, token.offset)
            stream.next()
            argument = _parse_climb(stream, 0, known)
            stream.expect(')', "')' closing the call of {}".format(token.text))
            return Call(token.text, argument, token.offset)
        if token.text in FUNCTIONS:
            raise DSLSyntaxError(
                "function {} must be called with '('".format(token.text),
                token.offset)
        if known is not None and token.text not in known:
            raise UnknownIdentifierError(token.text, token.offset)
        return Name(token.text, token.offset)
    if token.kind == 'end':
        raise DSLSyntaxError('unexpected end of expression', token.offset)
    raise DSLSyntaxError('unexpected {!r}'.format(token.text), token.offset)


def _parse_climb(stream, min_prec, known):
    lhs = _parse_atom(stream, known)
    while stream.peek().kind == 'op':
        token = stream.peek()
        op_prec = OPERATOR_PREC[token.text]
        if op_prec < min_prec:
            return lhs
        stream.next()
        next_prec = op_prec + 1 if OPERATOR_ASSOC[token.text] == 'left' else op_prec
        rhs = _parse_climb(stream, next_prec, known)
        lhs = BinOp(token.text, lhs, rhs, token.offset)
    return lhs


def parse(source, names=None):
    '''
    Parse an expression

    Parameters
    ----------

    source : str

    names  : iterable of str, optional
             identifiers the expression may use besides the functions; when
             given, any other identifier is rejected at parse time

    Returns
    -------

    Expr

    Raises
    ------

    DSLSyntaxError
        with the byte offset of the offending token

    UnknownIdentifierError

    Examples
    --------

    >>> to_source(parse('-(x)^2 + 2*y'))
    '-x^2 + 2*y'

    '''
    if not isinstance(source, str):
        raise TypeError('an expression is a string, got {}'.format(
            type(source).__name__))
    known = None if names is None else set(names)
    stream = _Stream(tokenize(source))
    expr = _parse_climb(stream, 0, known)
    token = stream.peek()
    if token.kind != 'end':
        raise DSLSyntaxError('unexpected {!r}'.format(token.text), token.offset)
    return expr


def to_source(expr):
    """Print an expression so that parsing the text gives the same tree."""
    return expr.source()


def evaluate(expr, bindings):
    '''
    Evaluate an expression over jets, arrays or numbers

    Parameters
    ----------

    expr     : Expr

    bindings : mapping from identifier to value

    Raises
    ------

    UnknownIdentifierError
        for an unbound identifier

    JetDomainError
        when a function leaves its domain
    '''
    return expr.evaluate(bindings)


def constant_bindings(constants):
    """Identifier bindings of the physical constants."""
    return {
        'hbar': constants.hbar,
        'c': constants.c,
        'e': constants.e,
        'm': constants.m,
        'epsilon_0': constants.epsilon_0,
        'pi': np.pi
    }


# ----------------------------------------------------------------------
# symbolic differentiation, for curves given as expressions


def _is(node, value):
    return isinstance(node, Number) and node.value == value


def _add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return BinOp('+', a, b)


def _sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return _neg(b)
    return BinOp('-', a, b)


def _mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return Number(0.0)
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    return BinOp('*', a, b)


def _div(a, b):
    if _is(a, 0):
        return Number(0.0)
    if _is(b, 1):
        return a
    return BinOp('/', a, b)


def _neg(a):
    if isinstance(a, Number):
        return Number(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _pow(a, b):
    if _is(b, 1):
        return a
    if _is(b, 0):
        return Number(1.0)
    return BinOp('^', a, b)


_ONE = Number(1.0)
_TWO = Number(2.0)

# d f(u)/du as a tree in u
_FUNCTION_DERIVATIVES = {
    'exp': lambda u: Call('exp', u),
    'log': lambda u: _div(_ONE, u),
    'sqrt': lambda u: _div(_ONE, _mul(_TWO, Call('sqrt', u))),
    'sin': lambda u: Call('cos', u),
    'cos': lambda u: _neg(Call('sin', u)),
    'sinh': lambda u: Call('cosh', u),
    'cosh': lambda u: Call('sinh', u),
    'arcsin': lambda u: _div(_ONE, Call('sqrt', _sub(_ONE, _pow(u, _TWO)))),
    'arctan': lambda u: _div(_ONE, _add(_ONE, _pow(u, _TWO))),
    'arcsinh': lambda u: _div(_ONE, Call('sqrt', _add(_pow(u, _TWO), _ONE))),
}


def differentiate(expr, name):
    '''
    Derivative of an expression with respect to one identifier

    Every other identifier is treated as a constant. Trivial products and
    sums with 0 and 1 are folded so that repeated differentiation stays small.
    '''
    if isinstance(expr, Number):
        return Number(0.0)
    if isinstance(expr, Name):
        return Number(1.0 if expr.name == name else 0.0)
    if name not in expr.names():
        return Number(0.0)
    if isinstance(expr, Neg):
        return _neg(differentiate(expr.operand, name))
    if isinstance(expr, Call):
        inner = differentiate(expr.argument, name)
        return _mul(_FUNCTION_DERIVATIVES[expr.function](expr.argument), inner)
    a, b = expr.left, expr.right
    da, db = differentiate(a, name), differentiate(b, name)
    if expr.op == '+':
        return _add(da, db)
    if expr.op == '-':
        return _sub(da, db)
    if expr.op == '*':
        return _add(_mul(da, b), _mul(a, db))
    if expr.op == '/':
        return _div(_sub(_mul(da, b), _mul(a, db)), _pow(b, _TWO))
    # power
    if name not in b.names():
        if isinstance(b, Number):
            lowered = Number(b.value - 1)
        else:
            lowered = _sub(b, _ONE)
        return _mul(_mul(b, _pow(a, lowered)), da)
    return _mul(expr, _add(_mul(db, Call('log', a)), _div(_mul(b, da), a)))


# ----------------------------------------------------------------------
# expression-defined curves and states


class ExpressionCurve(Curve):
    '''
    A trajectory Y(t) or profile f(z) written as an expression

    Derivatives are differentiated symbolically once and evaluated on demand,
    so the curve can feed :func:`rdi.states.translation_state` and
    :func:`rdi.states.confined_3d_state` like the built-in curves.

    Parameters
    ----------

    source     : str
                 expression in ``variable``, the constants and ``parameters``

    variable   : str
                 't' for trajectories, 'z' for confinement profiles

    parameters : mapping of parameter names to numbers

    constants  : PhysicalConstants

    Examples
    --------

    >>> Y = ExpressionCurve('L/2*(1 + sin(pi*(t - T/2)/T))', 't', {'L': 2.0, 'T': 1.0})
    >>> float(Y(0.5))
    1.0

    '''

    max_order = 4

    def __init__(self, source, variable='t', parameters=None, constants=None):
        self.constants = PhysicalConstants() if constants is None else constants
        self.variable = variable
        self.parameters = dict(parameters or {})
        self.env = constant_bindings(self.constants)
        self.env.update(self.parameters)
        self.expression = parse(source, names=set(self.env) | {variable})
        self._derivatives = [self.expression]
        for _ in range(self.max_order):
            self._derivatives.append(
                differentiate(self._derivatives[-1], variable))

    def derivatives(self, s, n):
        self._check_order(n)
        env = dict(self.env)
        env[self.variable] = s
        out = []
        for expr in self._derivatives[:n + 1]:
            value = expr.evaluate(env)
            if not isinstance(value, jets.Jet):
                value = value + 0 * np.asarray(jets.value_of(s), dtype=float)
            out.append(value)
        return out

    def __repr__(self):
        return 'ExpressionCurve({!r}, {!r})'.format(to_source(self.expression),
                                                  self.variable)


_STATE_KEYS = ('rho', 'log_rho', 'u1', 'u2', 'u3', 'theta1', 'theta2', 'theta3',
               'beta')


def expression_state(expressions,
                     parameters=None,
                     constants=None,
                     energy=0.0,
                     density_scale=1.0,
                     name='dsl'):
    '''
    A state parametrization written in the expression language

    Parameters
    ----------

    expressions : mapping with optional keys 'rho' or 'log_rho', 'u1', 'u2',
                  'u3', 'theta1', 'theta2', 'theta3', 'beta', and
                  'definitions', an ordered mapping of auxiliary names to
                  expressions (each may use the earlier ones)

    parameters  : mapping of parameter names to numbers, substituted before
                  differentiation

    constants   : PhysicalConstants

    energy      : epsilon (J) of exp(-i epsilon t sigma_3/hbar)

    Returns
    -------

    StateParametrization

    Raises
    ------

    DSLSyntaxError, UnknownIdentifierError
        when an expression does not parse against the available names
    '''
    k = PhysicalConstants() if constants is None else constants
    parameters = dict(parameters or {})
    unknown = set(expressions) - set(_STATE_KEYS) - {'definitions'}
    if unknown:
        raise UnknownIdentifierError(sorted(unknown)[0])
    if 'rho' in expressions and 'log_rho' in expressions:
        raise ValueError("give either 'rho' or 'log_rho', not both")

    known = set(COORDINATES) | set(CONSTANT_NAMES) | set(parameters)
    definitions = []
    for key, source in dict(expressions.get('definitions') or {}).items():
        definitions.append((key, parse(source, names=known)))
        known.add(key)
    parsed = {
        key: parse(str(expressions[key]), names=known)
        for key in _STATE_KEYS if key in expressions
    }
    base_env = constant_bindings(k)
    base_env.update(parameters)

    def environment(t, x, y, z):
        env = dict(base_env)
        env.update({'t': t, 'x': x, 'y': y, 'z': z})
        for key, expr in definitions:
            env[key] = expr.evaluate(env)
        return env

    def component(key, env):
        return parsed[key].evaluate(env) if key in parsed else 0.0

    def log_rho(t, x, y, z):
        env = environment(t, x, y, z)
        if 'rho' in parsed:
            return jets.log(parsed['rho'].evaluate(env))
        return component('log_rho', env)

    def velocity(t, x, y, z):
        env = environment(t, x, y, z)
        return tuple(component(key, env) for key in ('u1', 'u2', 'u3'))

    def angles(t, x, y, z):
        env = environment(t, x, y, z)
        return tuple(component(key, env) for key in ('theta1', 'theta2', 'theta3'))

    def beta(t, x, y, z):
        return component('beta', environment(t, x, y, z))

    return StateParametrization(log_rho=log_rho,
                                velocity=velocity,
                                angles=angles,
                                beta=beta,
                                energy=energy,
                                density_scale=density_scale,
                                constants=k,
                                name=name,
                                parameters=parameters)
