"""Fixed-point Gaussian-integer kernels for precisions beyond double-double.

Products of integer polynomials use Kronecker substitution, so the inner
work is a handful of big-integer multiplications.
"""

from __future__ import annotations

try:  # GMP arithmetic is several times faster on these operand sizes
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _big = int


def _nbytes(bits: int) -> int:
    return (bits + 7) // 8


def _pack(xs, nb: int) -> int:
    off = 1 << (8 * nb - 1)
    raw = b"".join((int(v) + off).to_bytes(nb, "little") for v in xs)
    return int.from_bytes(raw, "little") - int.from_bytes(off.to_bytes(nb, "little") * len(xs), "little")


def _unpack(z: int, n: int, nb: int) -> list[int]:
    off = 1 << (8 * nb - 1)
    z += int.from_bytes(off.to_bytes(nb, "little") * n, "little")
    raw = z.to_bytes(n * nb, "little")
    return [int.from_bytes(raw[i * nb:(i + 1) * nb], "little") - off for i in range(n)]


def _maxbits(xs) -> int:
    return max((abs(int(v)).bit_length() for v in xs), default=0)


SCHOOLBOOK_MAX = 12  # below this length packing costs more than it saves


def _schoolbook(x, y) -> list[int]:
    out = [_big(0)] * (len(x) + len(y) - 1)
    y = [_big(v) for v in y]
    for i, a in enumerate(x):
        if a:
            a = _big(a)
            for j, b in enumerate(y):
                out[i + j] += a * b
    return [int(v) for v in out]


def conv(x, y) -> list[int]:
    """Exact product of two integer coefficient lists."""
    n = len(x) + len(y) - 1
    if not len(x) or not len(y):
        return []
    if min(len(x), len(y)) <= SCHOOLBOOK_MAX:
        return _schoolbook(x, y)
    bits = _maxbits(x) + _maxbits(y) + min(len(x), len(y)).bit_length() + 2
    if bits <= 2 + min(len(x), len(y)).bit_length():
        return [0] * n
    nb = _nbytes(bits)
    return _unpack(int(_big(_pack(x, nb)) * _big(_pack(y, nb))), n, nb)


def sqr(x) -> list[int]:
    if len(x) <= SCHOOLBOOK_MAX:
        return _schoolbook(x, x)
    n = 2 * len(x) - 1
    bits = 2 * _maxbits(x) + len(x).bit_length() + 2
    if _maxbits(x) == 0:
        return [0] * n
    nb = _nbytes(bits)
    X = _big(_pack(x, nb))
    return _unpack(int(X * X), n, nb)


def _csqr(re, im):
    """Square of a Gaussian-integer polynomial."""
    if not any(im):
        return sqr(re), None
    s = [a + b for a, b in zip(re, im)]
    t = [a - b for a, b in zip(re, im)]
    return conv(s, t), [2 * v for v in conv(re, im)]


def graeffe(re, im):
    """Exact root-squaring step on Gaussian-integer coefficients."""
    n = len(re)
    er, ei = re[0::2], im[0::2]
    orr, oi = re[1::2], im[1::2]
    e2r, e2i = _csqr(list(er), list(ei))
    gr = [0] * n
    gi = [0] * n
    for k in range(min(n, len(e2r))):
        gr[k] = e2r[k]
    if e2i is not None:
        for k in range(min(n, len(e2i))):
            gi[k] = e2i[k]
    if len(orr):
        o2r, o2i = _csqr(list(orr), list(oi))
        for k in range(1, min(n, len(o2r) + 1)):
            gr[k] -= o2r[k - 1]
        if o2i is not None:
            for k in range(1, min(n, len(o2i) + 1)):
                gi[k] -= o2i[k - 1]
    return gr, gi


def shift_fixed(re, im, cr: int, ci: int, t: int):
    """Taylor shift by (cr + i ci) 2**-t with floored products.

    Each of the d passes floors every product, so position j receives at
    most d injected errors of modulus < 2 units. Later passes propagate them,
    so the total error is bounded by the shift of the vector (2d, ..., 2d)
    by |c|.
    """
    ar = [_big(v) for v in re]
    ai = [_big(v) for v in im]
    cr, ci = _big(cr), _big(ci)
    d = len(ar) - 1
    real = ci == 0 and not any(ai)
    for i in range(d):
        lo = d - 1 - i
        xr = ar[lo + 1:]
        if real:
            ar[lo:d] = [a + ((cr * x) >> t) for a, x in zip(ar[lo:d], xr)]
            continue
        xi = ai[lo + 1:]
        ar[lo:d] = [a + ((cr * x - ci * y) >> t) for a, x, y in zip(ar[lo:d], xr, xi)]
        ai[lo:d] = [a + ((cr * y + ci * x) >> t) for a, x, y in zip(ai[lo:d], xr, xi)]
    return [int(v) for v in ar], [int(v) for v in ai]
