"""Sparse multivariate Laurent polynomials with complex coefficients.

A polynomial is a finite map from exponent vectors (tuples of signed
integers, one entry per variable) to nonzero complex coefficients.
Variables are fixed-named z1..zn.  All operations are pure; instances are
immutable and safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PolyParseError


@dataclass(frozen=True, eq=True)
class LaurentPoly:
    """Canonical sparse Laurent polynomial.

    ``terms`` maps exponent tuples of length ``n_vars`` to complex
    coefficients; exactly-zero coefficients are dropped on construction,
    so equality of canonical term maps is polynomial equality.
    """

    n_vars: int
    terms: dict

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("n_vars must be a positive integer")
        clean = {}
        for exps, coeff in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n_vars:
                raise ValueError(
                    f"exponent vector {exps} has length {len(exps)}, expected {self.n_vars}"
                )
            coeff = complex(coeff)
            if coeff != 0:
                clean[exps] = clean.get(exps, 0) + coeff
        clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "terms", clean)

    def __str__(self):
        return to_string(self)


def _check_torus_point(z, n_vars):
    z = np.asarray(z, dtype=complex)
    if z.shape != (n_vars,):
        raise ValueError(f"expected a point with {n_vars} coordinates, got shape {z.shape}")
    if np.any(z == 0):
        raise ValueError("zero coordinate: point lies outside the torus")
    return z


def evaluate(p: LaurentPoly, z) -> complex:
    """Evaluate ``p`` at a point of the torus (all coordinates nonzero)."""
    z = _check_torus_point(z, p.n_vars)
    total = 0j
    for exps, coeff in p.terms.items():
        total += coeff * np.prod(z ** np.array(exps))
    return complex(total)


def partial_derivative(p: LaurentPoly, i: int) -> LaurentPoly:
    """Formal derivative with respect to z_i (1-based index)."""
    if not 1 <= i <= p.n_vars:
        raise ValueError(f"variable index {i} out of range 1..{p.n_vars}")
    terms = {}
    for exps, coeff in p.terms.items():
        e = exps[i - 1]
        if e == 0:
            continue
        new = exps[: i - 1] + (e - 1,) + exps[i:]
        terms[new] = terms.get(new, 0) + e * coeff
    return LaurentPoly(p.n_vars, terms)


def log_gradient(p: LaurentPoly, z):
    """The vector (z_1 dp/dz_1, ..., z_n dp/dz_n) at ``z``.

    Equals the gradient of t -> p(exp t) at t = log z, which is why the
    exponent vector of each monomial appears as the weight.
    """
    z = _check_torus_point(z, p.n_vars)
    grad = np.zeros(p.n_vars, dtype=complex)
    for exps, coeff in p.terms.items():
        e = np.array(exps)
        grad += coeff * np.prod(z**e) * e
    return grad


def torus_translate(p: LaurentPoly, c) -> LaurentPoly:
    """Substitute z -> c*z coordinatewise: each coefficient picks up c**e."""
    c = _check_torus_point(c, p.n_vars)
    terms = {}
    for exps, coeff in p.terms.items():
        terms[exps] = coeff * complex(np.prod(c ** np.array(exps)))
    return LaurentPoly(p.n_vars, terms)


def scalar_combination(alpha, p: LaurentPoly, beta, q: LaurentPoly) -> LaurentPoly:
    """alpha*p + beta*q on canonical forms."""
    if p.n_vars != q.n_vars:
        raise ValueError("mismatched variable counts")
    terms = {e: alpha * c for e, c in p.terms.items()}
    for e, c in q.terms.items():
        terms[e] = terms.get(e, 0) + beta * c
    return LaurentPoly(p.n_vars, terms)


# ---------------------------------------------------------------------------
# Parsing
#
# poly   := ['+'|'-'] term (('+'|'-') term)*
# term   := coeff ('*' mono)? | mono
# coeff  := real | '(' real ('+'|'-') real 'i' ')'
# mono   := factor ('*' factor)*
# factor := 'z' index ('^' signedInteger)?
#
# Whitespace is insignificant.  A leading sign on the first term is accepted
# as a convenience.
# ---------------------------------------------------------------------------

import re

_NUM_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INT_RE = re.compile(r"\d+")


class _Parser:
    def __init__(self, text, n_vars):
        self.text = text
        self.n_vars = n_vars
        self.pos = 0

    def fail(self, msg):
        raise PolyParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.accept(ch):
            self.fail(f"expected '{ch}'")

    def real_literal(self):
        self.skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group())

    def signed_real(self):
        sign = -1.0 if self.accept("-") else (self.accept("+"), 1.0)[1]
        return sign * self.real_literal()

    def signed_integer(self):
        sign = -1 if self.accept("-") else (self.accept("+"), 1)[1]
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer exponent")
        self.pos = m.end()
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.fail("non-integer exponent")
        return sign * int(m.group())

    def coeff(self):
        if self.accept("("):
            re_part = self.signed_real()
            if self.accept("+"):
                im_sign = 1.0
            elif self.accept("-"):
                im_sign = -1.0
            else:
                self.fail("expected '+' or '-' inside complex literal")
            im_part = im_sign * self.real_literal()
            self.expect("i")
            self.expect(")")
            return complex(re_part, im_part)
        value = self.real_literal()
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.fail("malformed number")
        return complex(value)

    def factor(self):
        self.expect("z")
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            self.fail("expected a variable index after 'z'")
        self.pos = m.end()
        idx = int(m.group())
        if not 1 <= idx <= self.n_vars:
            self.fail(f"variable index {idx} out of range 1..{self.n_vars}")
        exp = 1
        if self.accept("^"):
            exp = self.signed_integer()
        return idx, exp

    def mono(self):
        exps = [0] * self.n_vars
        idx, exp = self.factor()
        exps[idx - 1] += exp
        while True:
            save = self.pos
            if self.accept("*") and self.peek() == "z":
                idx, exp = self.factor()
                exps[idx - 1] += exp
            else:
                self.pos = save
                break
        return tuple(exps)

    def term(self):
        if self.peek() == "z":
            return self.mono(), 1 + 0j
        c = self.coeff()
        save = self.pos
        if self.accept("*"):
            if self.peek() == "z":
                return self.mono(), c
            self.pos = save
        return (0,) * self.n_vars, c

    def poly(self):
        terms = {}
        sign = -1.0 if self.accept("-") else (self.accept("+"), 1.0)[1]
        exps, c = self.term()
        terms[exps] = terms.get(exps, 0) + sign * c
        while True:
            if self.accept("+"):
                sign = 1.0
            elif self.accept("-"):
                sign = -1.0
            else:
                break
            exps, c = self.term()
            terms[exps] = terms.get(exps, 0) + sign * c
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail(f"unexpected character {self.text[self.pos]!r}")
        return terms


def parse_poly(text: str, n_vars: int) -> LaurentPoly:
    """Parse ASCII polynomial text over variables z1..zn."""
    if n_vars < 1:
        raise ValueError("n_vars must be a positive integer")
    parser = _Parser(text, n_vars)
    return LaurentPoly(n_vars, parser.poly())


def _fmt_real(x: float) -> str:
    s = repr(float(x))
    return s


def _fmt_mono(exps) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 0:
            continue
        parts.append(f"z{i}" if e == 1 else f"z{i}^{e}")
    return "*".join(parts)


def to_string(p: LaurentPoly) -> str:
    """Canonical printer; parse(to_string(p)) == p."""
    if not p.terms:
        return "0"
    pieces = []
    for exps in sorted(p.terms, reverse=True):
        coeff = p.terms[exps]
        mono = _fmt_mono(exps)
        if coeff.imag == 0:
            sign = "-" if coeff.real < 0 else "+"
            mag = abs(coeff.real)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_real(mag)}*{mono}"
            else:
                body = _fmt_real(mag)
        else:
            sign = "+"
            re_s = _fmt_real(coeff.real)
            im_s = _fmt_real(abs(coeff.imag))
            op = "-" if coeff.imag < 0 else "+"
            lit = f"({re_s}{op}{im_s}i)"
            body = f"{lit}*{mono}" if mono else lit
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
