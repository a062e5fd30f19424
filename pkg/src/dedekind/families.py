"""Constructors for the group families the engine knows by name.

Every constructor builds the multiplication table from an explicit element
encoding, then asserts its defining relations on designated generators, so a
bad table fails at build time rather than in a later enumeration.  Two-part
encodings map the pair (i, j) to index i * (second range) + j, which keeps
(0, 0) at index 0 as the identity.
"""

from __future__ import annotations

from itertools import product

from .errors import InvalidParameter, OrderCapExceeded
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, semidirect_product
from .numbertheory import is_prime, multiplicative_order

__all__ = [
    "cyclic",
    "elementary_abelian",
    "dihedral",
    "generalized_quaternion",
    "modular_group",
    "heisenberg",
    "schmidt_gpqn",
    "h_pst",
    "k_pst",
    "elementary_rtimes_cq",
    "c27_rtimes_q8",
    "FAMILY_BUILDERS",
]


def _check_cap(order: int, cap: int, what: str) -> None:
    if order > cap:
        raise OrderCapExceeded(f"{what} has order {order}, above the cap {cap}")


def _require_prime(p: int, name: str) -> None:
    if not is_prime(p):
        raise InvalidParameter(f"{name} must be prime, got {p}")


def cyclic(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Cyclic group of order n."""
    if n < 1:
        raise InvalidParameter(f"cyclic group order must be >= 1, got {n}")
    _check_cap(n, order_cap, f"C({n})")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    g = FiniteGroup(table, labels=[str(i) for i in range(n)], name=f"C({n})",
                    named_gens={"x": 1 % n})
    assert n == 1 or g.element_orders[1] == n
    return g


def elementary_abelian(p: int, r: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C_p^r; element index sums digit_k * p^k over base-p digits."""
    _require_prime(p, "p")
    if r < 1:
        raise InvalidParameter(f"rank must be >= 1, got {r}")
    order = p**r
    _check_cap(order, order_cap, f"EA({p},{r})")
    digits = list(product(range(p), repeat=r))
    # product() varies the last position fastest; flip so digit 0 is fastest
    index = {d: sum(c * p**k for k, c in enumerate(d)) for d in digits}
    table = [[0] * order for _ in range(order)]
    for d1 in digits:
        i = index[d1]
        for d2 in digits:
            table[i][index[d2]] = index[tuple((a + b) % p for a, b in zip(d1, d2))]
    labels = [""] * order
    for d in digits:
        labels[index[d]] = "(" + ",".join(map(str, d)) + ")"
    gens = {f"e{k}": p**k for k in range(r)}
    g = FiniteGroup(table, labels=labels, name=f"EA({p},{r})", named_gens=gens)
    assert all(g.element_orders[p**k] == p for k in range(r))
    return g


def dihedral(two_n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order two_n (rotations x, reflection y)."""
    if two_n < 6 or two_n % 2:
        raise InvalidParameter(f"dihedral order must be even and >= 6, got {two_n}")
    _check_cap(two_n, order_cap, f"D({two_n})")
    n = two_n // 2
    table = [[0] * two_n for _ in range(two_n)]
    labels = [""] * two_n
    for i, j in product(range(n), range(2)):
        labels[i * 2 + j] = f"x^{i}y" if j else f"x^{i}"
        for k, l in product(range(n), range(2)):
            rot = (i + (k if j == 0 else -k)) % n
            table[i * 2 + j][k * 2 + l] = rot * 2 + (j ^ l)
    g = FiniteGroup(table, labels=labels, name=f"D({two_n})", named_gens={"x": 2, "y": 1})
    x, y = 2, 1
    assert g.element_orders[x] == n and g.element_orders[y] == 2
    assert g.mul(y, x) == g.mul(g.power(x, n - 1), y)
    return g


def generalized_quaternion(two_to_n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Generalized quaternion group of order 2^n, n >= 3."""
    m = two_to_n
    if m < 8 or m & (m - 1):
        raise InvalidParameter(f"quaternion order must be a power of two >= 8, got {m}")
    _check_cap(m, order_cap, f"Q({m})")
    half, quarter = m // 2, m // 4
    table = [[0] * m for _ in range(m)]
    labels = [""] * m
    for i, j in product(range(half), range(2)):
        labels[i * 2 + j] = f"x^{i}y" if j else f"x^{i}"
        for k, l in product(range(half), range(2)):
            rot = (i + (k if j == 0 else -k) + (quarter if j and l else 0)) % half
            table[i * 2 + j][k * 2 + l] = rot * 2 + (j ^ l)
    g = FiniteGroup(table, labels=labels, name=f"Q({m})", named_gens={"x": 2, "y": 1})
    x, y = 2, 1
    assert g.element_orders[x] == half
    assert g.mul(y, y) == g.power(x, quarter)
    assert g.mul(y, x) == g.mul(g.power(x, half - 1), y)
    return g


def modular_group(p: int, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Modular p-group of order p^n: x of order p^(n-1), y x y^-1 = x^(p^(n-2)+1)."""
    _require_prime(p, "p")
    if (p == 2 and n < 4) or (p != 2 and n < 3):
        raise InvalidParameter(
            f"modular group needs n >= 4 for p = 2 and n >= 3 otherwise, got ({p},{n})"
        )
    order = p**n
    _check_cap(order, order_cap, f"M({p},{n})")
    pn1 = p ** (n - 1)
    m = p ** (n - 2) + 1
    m_pows = [pow(m, j, pn1) for j in range(p)]
    table = [[0] * order for _ in range(order)]
    labels = [""] * order
    for i, j in product(range(pn1), range(p)):
        labels[i * p + j] = f"x^{i}y^{j}"
        row = table[i * p + j]
        mj = m_pows[j]
        for k, l in product(range(pn1), range(p)):
            row[k * p + l] = ((i + k * mj) % pn1) * p + (j + l) % p
    g = FiniteGroup(table, labels=labels, name=f"M({p},{n})", named_gens={"x": p, "y": 1})
    x, y = p, 1
    assert g.element_orders[x] == pn1 and g.element_orders[y] == p
    assert g.mul(y, x) == g.mul(g.power(x, m), y)
    return g


def heisenberg(p: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Group of upper unitriangular 3x3 matrices over F_p, p odd; exponent p."""
    _require_prime(p, "p")
    if p == 2:
        raise InvalidParameter("the Heisenberg family here is for odd p (p = 2 gives D(8))")
    order = p**3
    _check_cap(order, order_cap, f"He({p})")
    p2 = p * p
    table = [[0] * order for _ in range(order)]
    labels = [""] * order
    for a, b, c in product(range(p), repeat=3):
        i = a * p2 + b * p + c
        labels[i] = f"x^{a}y^{b}z^{c}"
        row = table[i]
        for d, e, f in product(range(p), repeat=3):
            row[d * p2 + e * p + f] = (
                ((a + d) % p) * p2 + ((b + e) % p) * p + (c + f + a * e) % p
            )
    g = FiniteGroup(
        table, labels=labels, name=f"He({p})",
        named_gens={"x": p2, "y": p, "z": 1},
    )
    x, y, z = p2, p, 1
    assert g.exponent == p
    assert g.commutator(x, y) == z
    assert g.commutator(x, z) == 0 and g.commutator(y, z) == 0
    return g


def h_pst(p: int, s: int, t: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Order p^(s+t+1): x, y with central [x, y] = z of order p.

    Requires s >= t >= 1, and s + t >= 3 when p = 2 (the excluded case is D(8)).
    """
    _require_prime(p, "p")
    if not (s >= t >= 1):
        raise InvalidParameter(f"need s >= t >= 1, got s={s}, t={t}")
    if p == 2 and s + t < 3:
        raise InvalidParameter("p = 2 needs s + t >= 3")
    order = p ** (s + t + 1)
    _check_cap(order, order_cap, f"H({p},{s},{t})")
    ps, pt = p**s, p**t
    blk = pt * p
    table = [[0] * order for _ in range(order)]
    labels = [""] * order
    for a, b, c in product(range(ps), range(pt), range(p)):
        i = a * blk + b * p + c
        labels[i] = f"x^{a}y^{b}z^{c}"
        row = table[i]
        for d, e, f in product(range(ps), range(pt), range(p)):
            row[d * blk + e * p + f] = (
                ((a + d) % ps) * blk + ((b + e) % pt) * p + (c + f + a * e) % p
            )
    g = FiniteGroup(
        table, labels=labels, name=f"H({p},{s},{t})",
        named_gens={"x": blk, "y": p, "z": 1},
    )
    x, y, z = blk, p, 1
    assert g.element_orders[x] == ps and g.element_orders[y] == pt
    assert g.element_orders[z] == p and g.commutator(x, y) == z
    assert g.commutator(x, z) == 0 and g.commutator(y, z) == 0
    # centre must be <x^p> * <y^p> * <z>
    want = 0
    for a, b in product(range(ps // p), range(pt // p)):
        for c in range(p):
            want |= 1 << ((a * p) * blk + (b * p) * p + c)
    assert g.center_mask == want
    return g


def k_pst(p: int, s: int, t: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Order p^(s+t): x of order p^s, y of order p^t, y x y^-1 = x^(p^(s-1)+1).

    Requires s >= 2, t >= 1, and s + t >= 4 when p = 2.  k_pst(p, n-1, 1) is
    the modular group of order p^n.
    """
    _require_prime(p, "p")
    if s < 2 or t < 1:
        raise InvalidParameter(f"need s >= 2 and t >= 1, got s={s}, t={t}")
    if p == 2 and s + t < 4:
        raise InvalidParameter("p = 2 needs s + t >= 4")
    order = p ** (s + t)
    _check_cap(order, order_cap, f"K({p},{s},{t})")
    ps, pt = p**s, p**t
    m = p ** (s - 1) + 1
    m_pows = [pow(m, j, ps) for j in range(p)]
    table = [[0] * order for _ in range(order)]
    labels = [""] * order
    for i, j in product(range(ps), range(pt)):
        labels[i * pt + j] = f"x^{i}y^{j}"
        row = table[i * pt + j]
        mj = m_pows[j % p]
        for k, l in product(range(ps), range(pt)):
            row[k * pt + l] = ((i + k * mj) % ps) * pt + (j + l) % pt
    g = FiniteGroup(table, labels=labels, name=f"K({p},{s},{t})", named_gens={"x": pt, "y": 1})
    x, y = pt, 1
    assert g.element_orders[x] == ps and g.element_orders[y] == pt
    assert g.mul(y, x) == g.mul(g.power(x, m), y)
    want = 0
    for a, b in product(range(ps // p), range(pt // p)):
        want |= 1 << ((a * p) * pt + b * p)
    assert g.center_mask == want
    return g


def schmidt_gpqn(p: int, q: int, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C_p x| C_(q^(n-1)) with the generator acting by x -> x^m, m of order q mod p.

    Requires q | p - 1 and n >= 2; m is the smallest integer > 1 whose
    multiplicative order mod p is exactly q.
    """
    _require_prime(p, "p")
    _require_prime(q, "q")
    if n < 2:
        raise InvalidParameter(f"need n >= 2, got {n}")
    if (p - 1) % q:
        hint = ""
        if (q - 1) % p == 0:
            hint = f"; parameters look swapped, try ({q},{p},{n})"
        raise InvalidParameter(f"q = {q} must divide p - 1 = {p - 1}{hint}")
    order = p * q ** (n - 1)
    _check_cap(order, order_cap, f"G({p},{q},{n})")
    m = next(
        m for m in range(2, p) if multiplicative_order(m, p) == q
    )
    qn = q ** (n - 1)
    m_pows = [pow(m, j, p) for j in range(q)]
    table = [[0] * order for _ in range(order)]
    labels = [""] * order
    for i, j in product(range(p), range(qn)):
        labels[i * qn + j] = f"x^{i}y^{j}"
        row = table[i * qn + j]
        mj = m_pows[j % q]
        for k, l in product(range(p), range(qn)):
            row[k * qn + l] = ((i + k * mj) % p) * qn + (j + l) % qn
    g = FiniteGroup(table, labels=labels, name=f"G({p},{q},{n})", named_gens={"x": qn, "y": 1})
    x, y = qn, 1
    assert g.element_orders[x] == p and g.element_orders[y] == qn
    assert g.conj(y, x) == g.power(x, m)
    assert multiplicative_order(m, p) == q
    assert all(multiplicative_order(w, p) != q for w in range(2, m))
    return g


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo the monic polynomial den, coefficients mod p."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            shift = i - dd
            for k in range(dd + 1):
                num[shift + k] = (num[shift + k] - c * den[k]) % p
    return num[:dd]


def elementary_rtimes_cq(p: int, q: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C_p^r x| C_q acting faithfully, r the multiplicative order of p mod q.

    The generator of C_q acts as the companion matrix of the first (by
    ascending coefficient tuples, constant term first) monic degree-r divisor
    of 1 + x + ... + x^(q-1) over F_p; any degree-r divisor is irreducible.
    """
    _require_prime(p, "p")
    _require_prime(q, "q")
    if p == q:
        raise InvalidParameter("p and q must be distinct primes")
    r = multiplicative_order(p, q)
    order = p**r * q
    _check_cap(order, order_cap, f"SD({p},{q})")
    phi = [1] * q  # 1 + x + ... + x^(q-1)
    factor = None
    for coeffs in product(range(p), repeat=r):
        cand = list(coeffs) + [1]
        if not any(_poly_rem(phi, cand, p)):
            factor = cand
            break
    assert factor is not None
    ea = elementary_abelian(p, r, order_cap=order_cap)
    pr = p**r

    def apply_matrix(v: int) -> int:
        digits = [(v // p**k) % p for k in range(r)]
        top = digits[r - 1]
        new = [(-top * factor[0]) % p]
        for k in range(1, r):
            new.append((digits[k - 1] - top * factor[k]) % p)
        return sum(c * p**k for k, c in enumerate(new))

    step = [apply_matrix(v) for v in range(pr)]
    action = [list(range(pr))]
    for _ in range(1, q):
        action.append([step[v] for v in action[-1]])
    assert all(action[j] != action[0] for j in range(1, q)), "action must be faithful"
    g = semidirect_product(ea, cyclic(q, order_cap=order_cap), action, order_cap=order_cap)
    g.name = f"SD({p},{q})"
    return g


def c27_rtimes_q8(order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """C_27 x| Q(8): the index-2 cyclic subgroup <x> acts trivially, the rest invert."""
    n = cyclic(27, order_cap=order_cap)
    q8 = generalized_quaternion(8, order_cap=order_cap)
    ident = list(range(27))
    invert = [(-v) % 27 for v in range(27)]
    # q8 elements are pairs (i, j) at index i*2 + j; <x> is exactly j == 0
    action = [ident if h % 2 == 0 else invert for h in range(8)]
    g = semidirect_product(n, q8, action, order_cap=order_cap)
    g.name = "C27Q8"
    assert g.order == 216
    return g


FAMILY_BUILDERS = {
    "C": (cyclic, 1),
    "EA": (elementary_abelian, 2),
    "D": (dihedral, 1),
    "Q": (generalized_quaternion, 1),
    "M": (modular_group, 2),
    "He": (heisenberg, 1),
    "G": (schmidt_gpqn, 3),
    "H": (h_pst, 3),
    "K": (k_pst, 3),
    "SD": (elementary_rtimes_cq, 2),
    "C27Q8": (c27_rtimes_q8, 0),
}
