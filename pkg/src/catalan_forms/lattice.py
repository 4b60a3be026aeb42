"""Textbook LLL over the integers, sized for the 3-term relation searches used here."""
from fractions import Fraction


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduce a list of integer row vectors (exact Gram-Schmidt)."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / _dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu = gram_schmidt()
        if _dot(bstar[k], bstar[k]) >= (delta - mu[k][k - 1] ** 2) * _dot(bstar[k - 1], bstar[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gram_schmidt()
            k = max(k - 1, 1)
    return b
