"""Commutative polynomials over the rationals: orders, Gröbner bases, search.

Everything is exact; monomials are exponent tuples against a fixed variable
list.  Variable names may contain characters like ``*`` (they come from arrow
names), so the parser tokenizes by longest match against the ring's variable
set rather than by a fixed lexer.
"""

from __future__ import annotations

import heapq
import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded
from .linalg import nullspace

_ZERO = Fraction(0)
_NUM = re.compile(r"\d+(?:/\d+)?")

ORDERS = ("degrevlex", "lex")


class PolyRing:
    """A polynomial ring with a fixed variable order and monomial order."""

    __slots__ = ("variables", "order", "_index")

    def __init__(self, variables: Iterable[str], order: str = "degrevlex") -> None:
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable name")
        for v in self.variables:
            if not v or v[0].isdigit() or any(ch in v for ch in "+-^/. \t"):
                raise ValueError(f"invalid variable name {v!r}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self._index = {v: i for i, v in enumerate(self.variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, exps: tuple[int, ...]):
        """Sort key; the monomial order's largest element maximizes it."""
        if self.order == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        return exps

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def variable(self, name: str) -> "Polynomial":
        try:
            i = self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: Fraction(1)})

    def monomial(self, exps: Sequence[int], coefficient=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent tuple")
        return Polynomial(self, {exps: Fraction(coefficient)})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PolyRing)
                and self.variables == other.variables and self.order == other.order)

    def __hash__(self) -> int:
        return hash((self.variables, self.order))

    def __repr__(self) -> str:
        return f"PolyRing({len(self.variables)} variables, {self.order})"

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        """Inverse of Polynomial.text(); accepts optional whitespace."""
        tokens = self._tokenize(text)
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else (None, None)

        def take(kind):
            nonlocal pos
            tk, tv = peek()
            if tk != kind:
                raise ValueError(f"expected {kind} at token {pos} of {text!r}")
            pos += 1
            return tv

        total = self.zero()
        sign = Fraction(1)
        tk, tv = peek()
        if tk == "op" and tv in "+-":
            sign = Fraction(-1) if tv == "-" else Fraction(1)
            pos += 1
        while True:
            total = total + self._parse_term(tokens, peek, take).scale(sign)
            tk, tv = peek()
            if tk is None:
                return total
            if tk == "op" and tv in "+-":
                sign = Fraction(-1) if tv == "-" else Fraction(1)
                pos += 1
            else:
                raise ValueError(f"unexpected token {tv!r} in {text!r}")

    def _parse_term(self, tokens, peek, take) -> "Polynomial":
        out = self.one()
        while True:
            tk, tv = peek()
            if tk == "num":
                take("num")
                out = out.scale(tv)
            elif tk == "var":
                take("var")
                exp = 1
                nk, nv = peek()
                if nk == "op" and nv == "^":
                    take("op")
                    e = take("num")
                    if e.denominator != 1 or e < 0:
                        raise ValueError("exponent must be a nonnegative integer")
                    exp = int(e)
                out = out * self.variable(tv) ** exp
            else:
                raise ValueError("expected a factor")
            nk, nv = peek()
            if nk == "op" and nv == "*":
                take("op")
                continue
            return out

    def _tokenize(self, text: str):
        by_len = sorted(self.variables, key=len, reverse=True)
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            for v in by_len:
                if text.startswith(v, i):
                    tokens.append(("var", v))
                    i += len(v)
                    break
            else:
                if ch.isdigit():
                    m = _NUM.match(text, i)
                    assert m is not None
                    tokens.append(("num", Fraction(m.group())))
                    i = m.end()
                elif ch in "+-*^":
                    tokens.append(("op", ch))
                    i += 1
                else:
                    raise ValueError(f"cannot tokenize {text[i:i + 12]!r}")
        return tokens


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, Fraction] | None = None) -> None:
        self.ring = ring
        data = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    data[e] = c
        self.terms = data

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Polynomial)
                and self.ring == other.ring and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, _ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def lead_exps(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.key)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_exps()]

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.lead_coeff())

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        """Value at a rational point given per-variable values."""
        total = _ZERO
        for exps, c in self.terms.items():
            v = Fraction(c)
            for name, e in zip(self.ring.variables, exps):
                if not e:
                    continue
                if name not in env:
                    raise ValueError(f"no value for variable {name!r}")
                v *= Fraction(env[name]) ** e
            total += v
        return total

    def substitute(self, ring: PolyRing,
                   images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring map into ``ring`` sending each variable to its image.

        Variables without an explicit image must exist in the target ring
        under the same name.
        """
        cache: dict[str, Polynomial] = {}

        def image(name: str) -> Polynomial:
            if name not in cache:
                img = images.get(name)
                if img is None:
                    img = ring.variable(name)
                elif not isinstance(img, Polynomial):
                    img = ring.constant(img)
                elif img.ring != ring:
                    raise ValueError("image lies in a different ring")
                cache[name] = img
            return cache[name]

        total = ring.zero()
        for exps, c in self.terms.items():
            term = ring.constant(c)
            for name, e in zip(self.ring.variables, exps):
                if e:
                    term = term * image(name) ** e
            total = total + term
        return total

    def text(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda it: self.ring.key(it[0]),
                       reverse=True)
        rendered = []
        for exps, c in items:
            factors = []
            for name, e in zip(self.ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = _frac_text(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _frac_text(mag) + "*" + "*".join(factors)
            rendered.append((c < 0, body))
        neg, body = rendered[0]
        out = ("-" if neg else "") + body
        for neg, body in rendered[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.text()})"


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Full multivariate division remainder of f by the listed polynomials."""
    ring = f.ring
    work = dict(f.terms)
    out: dict[tuple, Fraction] = {}
    leads = [(g.lead_exps(), g) for g in basis]
    while work:
        exps = max(work, key=ring.key)
        coef = work.pop(exps)
        for le, g in leads:
            if _divides(le, exps):
                shift = _mono_sub(exps, le)
                factor = coef / g.terms[le]
                for e2, c2 in g.terms.items():
                    if e2 == le:
                        continue
                    e = tuple(a + b for a, b in zip(e2, shift))
                    v = work.get(e, _ZERO) - factor * c2
                    if v:
                        work[e] = v
                    else:
                        work.pop(e, None)
                break
        else:
            out[exps] = coef
    return Polynomial(ring, out)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis: monic, inter-reduced, sorted by leading term."""

    ring: PolyRing
    polys: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        return _reduce(f, self.polys)

    def ideal_member(self, f: Polynomial) -> tuple[bool, Polynomial]:
        nf = self.normal_form(f)
        return (not nf, nf)

    def is_standard(self, exps: tuple) -> bool:
        """True when the monomial avoids every leading term."""
        return not any(_divides(g.lead_exps(), exps) for g in self.polys)

    def texts(self) -> list[str]:
        return [g.text() for g in self.polys]


def buchberger(generators: Iterable[Polynomial], max_steps: int = 50_000,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal the generators span.

    ``max_steps`` bounds the number of S-pair reductions; running past it
    raises BudgetExceeded rather than returning a partial basis.  The zero
    ideal (no nonzero generators) is allowed when ``ring`` says where it
    lives.
    """
    gens = [g for g in generators if g]
    if not gens:
        if ring is None:
            raise ValueError("no nonzero generators and no ring given")
        return GroebnerBasis(ring, ())
    if ring is None:
        ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators from different rings")

    basis: list[Polynomial] = []
    pairs: list[tuple] = []

    def push(f: Polynomial) -> None:
        f = f.monic()
        t = len(basis)
        basis.append(f)
        lt = f.lead_exps()
        for i in range(t):
            li = basis[i].lead_exps()
            if all(min(a, b) == 0 for a, b in zip(li, lt)):
                continue   # coprime leads never yield a new element
            lcm = _mono_lcm(li, lt)
            heapq.heappush(pairs, (sum(lcm), i, t))

    for g in gens:
        r = _reduce(g, basis)
        if r:
            push(r)

    steps = 0
    while pairs:
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded(f"Gröbner computation exceeded {max_steps} steps")
        _, i, j = heapq.heappop(pairs)
        fi, fj = basis[i], basis[j]
        lcm = _mono_lcm(fi.lead_exps(), fj.lead_exps())
        a = Polynomial(ring, {_mono_sub(lcm, fi.lead_exps()): Fraction(1)})
        b = Polynomial(ring, {_mono_sub(lcm, fj.lead_exps()): Fraction(1)})
        s = a * fi - b * fj
        r = _reduce(s, basis)
        if r:
            push(r)

    # minimalize: drop members whose lead another member's lead divides
    keep: list[Polynomial] = []
    for i, g in enumerate(basis):
        lt = g.lead_exps()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lh = h.lead_exps()
            if _divides(lh, lt) and (lh != lt or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(g, others) if others else g
        if r:
            reduced.append(r.monic())
    reduced.sort(key=lambda g: g.ring.key(g.lead_exps()))
    return GroebnerBasis(ring, tuple(reduced))


# -- nilpotence probing -------------------------------------------------------


@dataclass(frozen=True)
class NilpotentWitness:
    """A polynomial outside the ideal with a power inside it."""

    element: Polynomial
    power: int


def standard_monomials(gb: GroebnerBasis, max_deg: int) -> list[Polynomial]:
    """Monomials of total degree 1..max_deg avoiding all leading terms."""
    ring = gb.ring
    out = []
    for d in range(1, max_deg + 1):
        for combo in itertools.combinations_with_replacement(range(ring.nvars), d):
            exps = [0] * ring.nvars
            for i in combo:
                exps[i] += 1
            exps = tuple(exps)
            if gb.is_standard(exps):
                out.append(Polynomial(ring, {exps: Fraction(1)}))
    return out


def ideal_multigrading(gb: GroebnerBasis) -> list[tuple[int, ...]]:
    """Integer weight vectors spanning every grading under which the ideal
    is homogeneous.

    A weight vector w grades the quotient when each basis polynomial has all
    of its exponent vectors on a single w-level, so the solutions form the
    kernel of the exponent-difference matrix.  The returned vectors are the
    rational kernel basis with denominators cleared.
    """
    n = gb.ring.nvars
    diffs: list[list[Fraction]] = []
    for g in gb:
        exps = iter(g.terms)
        e0 = next(exps)
        for e in exps:
            diffs.append([Fraction(a - b) for a, b in zip(e, e0)])
    basis = nullspace(diffs, n)
    out = []
    for vec in basis:
        denom = 1
        for x in vec:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        out.append(tuple(int(x * denom) for x in vec))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def nilpotent_witness_search(gb: GroebnerBasis, max_deg: int, max_pow: int,
                             seed: int = 0, trials: int = 200,
                             max_ops: int | None = None) -> NilpotentWitness | None:
    """Search for f with f not in the ideal but f^k in it for some k <= max_pow.

    Nilpotents decompose into homogeneous parts for every grading of the
    ideal, so multi-term witnesses can be assumed to combine standard
    monomials of equal degree and equal weight under ``ideal_multigrading``.
    Three exact, reproducible phases:

    1. every standard monomial of degree <= max_deg, in graded order;
    2. signed pairs m + m' and m - m' of standard monomials sharing a
       grading class, probed at the square (by linearity one reduction of
       each of m*m, m'*m', m*m' settles both signs);
    3. seeded random small-integer combinations of 2..4 standard monomials
       drawn from a common grading class.

    Every hit is re-verified from scratch (direct expansion of the power)
    before being returned.  Returns None when the bounded search exhausts
    without a hit; raises BudgetExceeded when ``max_ops`` normal-form
    computations were spent first.
    """
    if max_deg < 1 or max_pow < 2:
        raise ValueError("need max_deg >= 1 and max_pow >= 2")
    ops = 0

    def charge() -> None:
        nonlocal ops
        ops += 1
        if max_ops is not None and ops > max_ops:
            raise BudgetExceeded(f"witness search exceeded {max_ops} reductions")

    def probe(f: Polynomial) -> NilpotentWitness | None:
        charge()
        nf = gb.normal_form(f)
        if not nf:
            return None
        power = nf
        for k in range(2, max_pow + 1):
            charge()
            power = gb.normal_form(power * f)
            if not power:
                direct = gb.normal_form(f ** k)
                assert not direct, "incremental and direct reductions disagree"
                assert gb.normal_form(f), "witness unexpectedly lies in the ideal"
                return NilpotentWitness(f, k)
        return None

    monos = standard_monomials(gb, max_deg)
    for m in monos:
        hit = probe(m)
        if hit is not None:
            return hit

    weights = ideal_multigrading(gb)
    classes: dict[tuple, list[int]] = {}
    for idx, m in enumerate(monos):
        exps = next(iter(m.terms))
        key = (sum(exps),
               tuple(sum(w[i] * e for i, e in enumerate(exps) if e) for w in weights))
        classes.setdefault(key, []).append(idx)

    squares: dict[int, Polynomial] = {}

    def nf_square(i: int) -> Polynomial:
        if i not in squares:
            charge()
            squares[i] = gb.normal_form(monos[i] * monos[i])
        return squares[i]

    for key in sorted(classes):
        members = classes[key]
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                charge()
                cross = gb.normal_form(monos[i] * monos[j]).scale(2)
                base = nf_square(i) + nf_square(j)
                for f in ((monos[i] + monos[j]) if not (base + cross) else None,
                          (monos[i] - monos[j]) if not (base - cross) else None):
                    if f is not None:
                        hit = probe(f)
                        assert hit is not None, "pair probe lost a verified square"
                        return hit

    pools = [classes[key] for key in sorted(classes) if len(classes[key]) >= 2]
    rng = random.Random(seed)
    for _ in range(trials):
        if pools:
            pool = pools[rng.randrange(len(pools))]
        else:
            pool = list(range(len(monos)))
        if len(pool) < 2:
            break
        width = rng.randint(2, min(4, len(pool)))
        picks = rng.sample(pool, width)
        terms: dict[tuple, Fraction] = {}
        for i in picks:
            c = rng.choice((-2, -1, 1, 2))
            exps = next(iter(monos[i].terms))
            terms[exps] = Fraction(c)
        hit = probe(Polynomial(gb.ring, terms))
        if hit is not None:
            return hit
    return None
