"""Pure-Python versions of the hot loops.  The compiled module mirrors these."""

from operator import add


def convolve(a, b):
    """Convolution of two weight tables {weight tuple: int}."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    items_b = list(b.items())
    for wa, ma in a.items():
        for wb, mb in items_b:
            w = tuple(map(add, wa, wb))
            out[w] = get(w, 0) + ma * mb
    return {w: m for w, m in out.items() if m}
