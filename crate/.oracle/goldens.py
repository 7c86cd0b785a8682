"""Independent brute-force oracle used to freeze golden values for the test suite.

Pure Python + fractions; shares no code with the Rust implementation.
"""
from fractions import Fraction as F
from itertools import product

FIG1 = [(F(0), F(0)), (F(10), F(0)), (F(10), F(5)), (F(0), F(13))]
MOMENT = lambda n: [(F(i), F(i * i)) for i in range(n + 1)]


def add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def scale(lam, p):
    return (lam * p[0], lam * p[1])


def apply_h(a, lam, v):
    return add(a, scale(lam, v))


def phi2(base, k):
    e1 = base[1]
    return {scale(F(i), e1) for i in range(k + 1)}


def homotheties_into(base, n_prev, V):
    """All (a, lambda>0) with h(S_{n_prev}) subset of V. Brute force over ordered pairs."""
    e1 = base[1]
    out = set()
    for q0, q1 in product(V, repeat=2):
        d = (q1[0] - q0[0], q1[1] - q0[1])
        # solve d = lam * e1
        if e1[0] != 0:
            lam = d[0] / e1[0]
            if lam * e1[1] != d[1]:
                continue
        else:
            lam = d[1] / e1[1]
            if lam * e1[0] != d[0]:
                continue
        if lam <= 0:
            continue
        ok = True
        for i in range(2, n_prev):
            if apply_h(q0, lam, base[i]) not in V:
                ok = False
                break
        if ok:
            out.add((q0, lam))
    return out


def e_closure(base, n, V):
    """V  union  {h(S_n) : h maps S_{n-1} into V, lam>0}."""
    out = set(V)
    for (a, lam) in homotheties_into(base, n - 1, V):
        for i in range(n):
            out.add(apply_h(a, lam, base[i]))
    return out


def complex_sum(V, W):
    return {add(v, w) for v in V for w in W}


def delta(base, n, k, m):
    if m == 1:
        prev = phi2(base, k) if n - 1 == 2 else phi(base, n - 1, k)
        return e_closure(base, n, prev)
    d_prev = delta(base, n, k, m - 1)
    kk = k ** len(d_prev)
    return complex_sum(delta(base, n, kk, 1), d_prev)


def phi(base, n, k):
    if n == 2:
        return phi2(base, k)
    return delta(base, n, k, k)


def splitmix64(seed):
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        yield z ^ (z >> 31)


def canon(V):
    return sorted(V)


if __name__ == "__main__":
    base = FIG1

    d321 = delta(base, 3, 2, 1)
    print("Delta(3,2,1) fig1 canonical:", canon(d321))
    print("|Delta(3,2,1)| =", len(d321))

    hs = homotheties_into(base, 2, phi2(base, 64))
    print("homotheties S_2 -> Phi(2,64):", len(hs))

    e3 = e_closure(base, 3, phi2(base, 64))
    print("|E_3(Phi(2,64))| fig1 =", len(e3))
    # independent count of distinct h(e_2) images
    imgs = {apply_h(a, lam, base[2]) for (a, lam) in hs}
    print("distinct h(e_2) images =", len(imgs), "; union with Phi(2,64) =", len(imgs | phi2(base, 64)))

    phi32 = complex_sum(e3, d321)
    print("|Phi(3,2)| fig1 =", len(phi32))

    d331 = delta(base, 3, 3, 1)
    print("|Delta(3,3,1)| fig1 =", len(d331))

    mbase = MOMENT(3)
    print("|Delta(3,2,1)| moment =", len(delta(mbase, 3, 2, 1)))
    print("|Phi(3,2)| moment =", len(complex_sum(e_closure(mbase, 3, phi2(mbase, 64)), delta(mbase, 3, 2, 1))))

    # splitmix64 goldens
    g = splitmix64(0)
    first = [next(g) for _ in range(8)]
    print("splitmix64(seed=0) raw:", [hex(v) for v in first])
    print("splitmix64(seed=0) mod 2, first 6:", [v % 2 for v in first[:6]])
    g = splitmix64(1)
    print("splitmix64(seed=1) mod 2, first 6:", [next(g) % 2 for _ in range(6)])
