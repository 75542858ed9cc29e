"""Exact univariate polynomial arithmetic.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  Three coefficient
domains are used: Python ints, fractions.Fraction, and ints mod a prime p
(the mod-p helpers all take p explicitly).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt

# ---------------------------------------------------------------------------
# generic exact arithmetic


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(f):
    return len(f) - 1


def add(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def sub(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n))


def neg(f):
    return tuple(-c for c in f)


def mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def scale(f, c):
    if c == 0:
        return ()
    return tuple(a * c for a in f)


def evaluate(f, x):
    out = 0
    for c in reversed(f):
        out = out * x + c
    return out


def shift(f, k):
    """Multiply by x**k."""
    if not f:
        return ()
    return (0,) * k + tuple(f)


def divmod_frac(f, g):
    """Quotient and remainder over the rationals."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] / g[-1]
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] -= c * g[i]
        f.pop()
    return trim(q), trim(f)


def derivative(f):
    return trim(i * c for i, c in enumerate(f) if i >= 1)


# ---------------------------------------------------------------------------
# integer determinants, resultants, discriminants


def _int_det(m):
    """Bareiss fraction-free determinant of a square integer matrix."""
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def resultant_int(f, g):
    """Resultant of two integer polynomials via the Sylvester matrix."""
    n, m = degree(f), degree(g)
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    rows = []
    fr = list(reversed(f))  # highest degree first
    gr = list(reversed(g))
    for i in range(m):
        rows.append([0] * i + fr + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gr + [0] * (size - m - 1 - i))
    return _int_det(rows)


def discriminant_int(f):
    """Discriminant of a monic integer polynomial."""
    n = degree(f)
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant_int(f, derivative(f))
    return (-1) ** (n * (n - 1) // 2) * res


# ---------------------------------------------------------------------------
# real root counting (Sturm)


def count_real_roots(f):
    """Number of distinct real roots of a squarefree rational polynomial."""
    f = trim(Fraction(c) for c in f)
    if degree(f) < 1:
        return 0
    chain = [f, trim(Fraction(c) for c in derivative(f))]
    while degree(chain[-1]) > 0:
        _, r = divmod_frac(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))

    def variations(at_plus_infinity):
        signs = []
        for g in chain:
            if not g:
                continue
            s = 1 if g[-1] > 0 else -1
            if not at_plus_infinity and degree(g) % 2 == 1:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)


# ---------------------------------------------------------------------------
# irreducibility over the rationals (monic integer input)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _trial_factor_search(f, max_deg):
    """Look for a monic integer factor of degree 2..max_deg.

    Candidate constant terms divide f(0); the remaining coefficients range
    over a Landau-Mignotte style box.  Desk scale only: the search raises
    if the box is unreasonably large.
    """
    norm = isqrt(sum(c * c for c in f)) + 1
    for d in range(2, max_deg + 1):
        bound = 2 ** d * norm
        consts = _divisors(f[0]) if f[0] != 0 else [0]
        box = (2 * bound + 1) ** (d - 1) * 2 * len(consts)
        if box > 4_000_000:
            raise ValueError(
                "irreducibility search space too large for desk scale"
            )
        mids = [()]
        for _ in range(d - 1):
            mids = [m + (b,) for m in mids for b in range(-bound, bound + 1)]
        for c0 in consts:
            for sign in (1, -1):
                for mid in mids:
                    cand = trim((sign * c0,) + mid + (1,))
                    if degree(cand) != d:
                        continue
                    q, r = divmod_frac(f, cand)
                    if not r and all(x.denominator == 1 for x in q):
                        return cand
    return None


def is_irreducible_monic_int(f):
    """Irreducibility over Q of a monic integer polynomial."""
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    if discriminant_int(f) == 0:
        return False
    # integer roots must divide the constant term
    for d in _divisors(f[0]):
        for r in (d, -d):
            if evaluate(f, r) == 0:
                return False
    if n <= 3:
        return True
    # certify by irreducibility mod some small prime, if one works
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
              59, 61, 67, 71, 73, 79, 83, 89, 97):
        fp = pnorm(f, p)
        if degree(fp) == n and is_irreducible_mod_p(fp, p):
            return True
    return _trial_factor_search(f, n // 2) is None


# ---------------------------------------------------------------------------
# arithmetic mod a prime p


def pnorm(f, p):
    return trim(c % p for c in f)


def padd(f, g, p):
    return pnorm(add(f, g), p)


def psub(f, g, p):
    return pnorm(sub(f, g), p)


def pmul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def pmonic(f, p):
    if not f:
        return ()
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def pdivmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g):
        while f and f[-1] % p == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] * inv % p
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] = (f[d + i] - c * g[i]) % p
        f.pop()
    return trim(q), trim(c % p for c in f)


def pgcd(f, g, p):
    f, g = pnorm(f, p), pnorm(g, p)
    while g:
        f, g = g, pdivmod(f, g, p)[1]
    return pmonic(f, p)


def ppow_mod(base, exp, mod, p):
    result = (1,)
    base = pdivmod(base, mod, p)[1]
    while exp > 0:
        if exp & 1:
            result = pdivmod(pmul(result, base, p), mod, p)[1]
        base = pdivmod(pmul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


def pcompose_mod(f, g, mod, p):
    """f(g(x)) reduced mod (mod, p), by Horner."""
    out = ()
    for c in reversed(f):
        out = pdivmod(padd(pmul(out, g, p), ((c % p,) if c % p else ()), p), mod, p)[1]
    return out


def pth_root(f, p):
    """Inverse of Frobenius on F_p[x]: f must have the form g(x**p)."""
    out = []
    for i, c in enumerate(f):
        if i % p == 0:
            out.append(c % p)
        elif c % p != 0:
            raise ValueError("polynomial is not a p-th power pattern")
    return trim(out)


def squarefree_decomposition(f, p):
    """Decompose monic f over F_p as a product of squarefree parts.

    Returns a list of (g, m) with the g squarefree, pairwise coprime, and
    f = prod g**m.
    """
    f = pmonic(pnorm(f, p), p)
    if degree(f) <= 0:
        return []
    out = {}

    def absorb(g, m):
        if degree(g) >= 1:
            out[g] = out.get(g, 0) + m

    def run(f, mult):
        d = pnorm(derivative(f), p)
        if not d:
            run(pth_root(f, p), mult * p)
            return
        c = pgcd(f, d, p)
        w = pdivmod(f, c, p)[0]
        i = 1
        while degree(w) > 0:
            y = pgcd(w, c, p)
            z = pdivmod(w, y, p)[0]
            absorb(z, i * mult)
            w = y
            c = pdivmod(c, y, p)[0]
            i += 1
        if degree(c) > 0:
            run(pth_root(c, p), mult * p)

    run(f, 1)
    return sorted(out.items(), key=lambda t: (t[1], t[0]))


def is_irreducible_mod_p(f, p):
    """Rabin's test for a monic polynomial over F_p."""
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = (0, 1)
    h = ppow_mod(x, p ** n, f, p)
    if psub(h, x, p):
        return False
    for q in _prime_divisors(n):
        h = ppow_mod(x, p ** (n // q), f, p)
        if degree(pgcd(psub(h, x, p), f, p)) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _distinct_degree(f, p):
    """Split squarefree monic f into (d, product of degree-d irreducibles)."""
    out = []
    w = f
    frob = ppow_mod((0, 1), p, w, p)
    d = 1
    while degree(w) >= 2 * d:
        g = pgcd(psub(frob, (0, 1), p), w, p)
        if degree(g) > 0:
            out.append((d, g))
            w = pdivmod(w, g, p)[0]
            frob = pdivmod(frob, w, p)[1]
        d += 1
        if degree(w) < 2 * d:
            break
        frob = ppow_mod(frob, p, w, p)
    if degree(w) > 0:
        out.append((degree(w), w))
    return out


def _monic_polys(d, p):
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        yield tuple(coeffs) + (1,)


def _equal_degree(g, d, p):
    """Factor monic squarefree g, a product of degree-d irreducibles."""
    if degree(g) == d:
        return [g]
    if p ** d <= 4096:
        # exhaustive trial division; any monic degree-d divisor is a factor
        out = []
        for cand in _monic_polys(d, p):
            while degree(g) > 0 and not pdivmod(g, cand, p)[1]:
                out.append(cand)
                g = pdivmod(g, cand, p)[0]
            if degree(g) == 0:
                break
        return out
    # Cantor-Zassenhaus with a deterministic seed
    seed = p
    for c in g:
        seed = seed * 1000003 + c
    rng = random.Random(seed)
    stack, out = [g], []
    exp = (p ** d - 1) // 2
    while stack:
        h = stack.pop()
        if degree(h) == d:
            out.append(h)
            continue
        while True:
            a = trim(rng.randrange(p) for _ in range(degree(h)))
            if degree(a) < 1:
                continue
            b = psub(ppow_mod(a, exp, h, p), (1,), p)
            w = pgcd(b, h, p)
            if 0 < degree(w) < degree(h):
                stack.append(w)
                stack.append(pdivmod(h, w, p)[0])
                break
    return out


def factor_mod_p(f, p):
    """Full factorization of a monic polynomial over F_p.

    Returns a sorted list of (irreducible factor, multiplicity); factors are
    monic coefficient tuples, lowest degree first.
    """
    f = pmonic(pnorm(f, p), p)
    if degree(f) <= 0:
        return []
    counts = {}
    for part, m in squarefree_decomposition(f, p):
        for d, block in _distinct_degree(part, p):
            for irr in _equal_degree(block, d, p):
                counts[irr] = counts.get(irr, 0) + m
    out = sorted(counts.items(), key=lambda t: (degree(t[0]), t[0]))
    check = (1,)
    for g, m in out:
        for _ in range(m):
            check = pmul(check, g, p)
    assert check == f, "factorization self-check failed"
    return out
