import itertools

#Polynomials over Z_p are tuples of coefficients, constant term first.

def _trim(a):
    a = list(a)
    while(len(a) > 0 and a[-1] == 0):
        a.pop()
    return a


def _poly_mul(a, b, p):
    if(len(a) == 0 or len(b) == 0):
        return []
    out = [0]*(len(a)+len(b)-1)
    for i, ai in enumerate(a):
        if(ai == 0):
            continue
        for j, bj in enumerate(b):
            out[i+j] = (out[i+j] + ai*bj) % p
    return _trim(out)


def _poly_mod(a, m, p):
    '''
    Remainder of a modulo the monic polynomial m over Z_p
    '''
    a = _trim(a)
    dm = len(m) - 1
    while(len(a)-1 >= dm and len(a) > 0):
        lead = a[-1]
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift+j] = (a[shift+j] - lead*mj) % p
        a = _trim(a)
    return a


def _monic_polys(p, degree):
    '''
    All monic polynomials of given degree over Z_p, lexicographic in the
    coefficient sequence read constant term first
    '''
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def _is_irreducible(m, p):
    '''
    Trial division of the monic polynomial m by every monic polynomial of degree 1..deg(m)//2
    '''
    degree = len(m) - 1
    if(degree <= 1):
        return True
    for d in range(1, degree//2 + 1):
        for divisor in _monic_polys(p, d):
            if(len(_poly_mod(m, divisor, p)) == 0):
                return False
    return True


def _smallest_irreducible(p, k):
    if(k == 1):
        return (0, 1)     #x, so that reduction of constants is the identity
    for m in _monic_polys(p, k):
        if(_is_irreducible(m, p)):
            return m
    raise RuntimeError(f'no irreducible polynomial of degree {k} over Z_{p}')
