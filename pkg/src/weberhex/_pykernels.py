"""Pure-Python kernels.

Reference twin of the compiled ``_ckernels`` extension.  Both modules expose
the same four functions with the same argument conventions:

``perms`` is a flat ``bytes`` object of length ``16 * order``; entry
``perms[16*g + i]`` is the image of point ``i`` under group element ``g``.
Point sets are 16-bit masks.
"""

from itertools import product


def mask_images(perms, mask):
    """Image of ``mask`` under every group element, in group order."""
    bits = [i for i in range(16) if mask >> i & 1]
    out = []
    for base in range(0, len(perms), 16):
        img = 0
        for i in bits:
            img |= 1 << perms[base + i]
        out.append(img)
    return out


def stabilizer_members(perms, mask):
    """Indices of the group elements mapping ``mask`` onto itself."""
    bits = [i for i in range(16) if mask >> i & 1]
    out = []
    for g, base in enumerate(range(0, len(perms), 16)):
        for i in bits:
            if not mask >> perms[base + i] & 1:
                break
        else:
            out.append(g)
    return out


def sqrt_mul(a, b, lamprod):
    """Product in the algebra with basis s^e (e a 5-bit mask), s_i^2 = lam_i.

    ``lamprod[m]`` must hold the product of lam_i over the bits of m.
    """
    n = len(a)
    c = [0] * n
    for x in range(n):
        ax = a[x]
        if not ax:
            continue
        for y in range(n):
            by = b[y]
            if by:
                c[x ^ y] += ax * by * lamprod[x & y]
    return c


def box_search(gram, target, values):
    """All z in values^n with z.G.z == target, in lex order over ``values``."""
    n = len(gram)
    hits = []
    for z in product(values, repeat=n):
        acc = 0
        for i in range(n):
            zi = z[i]
            if zi:
                row = gram[i]
                acc += zi * sum(row[j] * z[j] for j in range(n))
        if acc == target:
            hits.append(z)
    return hits
