"""Iterated wreath products of C_{p^n} acting on the d-ary rooted tree, d = p^n.

A portrait labels every internal vertex (breadth-first) with an element of
Z/d.  A label r sends child i to child i + r mod d; the automorphism acts on
a path (i1, i2, ...) by rotating i1 with the root label and then recursing
into the subtree at the *original* child i1.  Composition ``a * b`` means
"apply b first".
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import ArborError, CapExceeded, DomainMismatch

ENUM_CAP = 2 ** 16
HOM_CAP = 2 ** 20


@dataclass(frozen=True)
class WreathDescriptor:
    p: int
    n: int
    depth: int

    @property
    def d(self) -> int:
        return self.p ** self.n

    @property
    def internal_nodes(self) -> int:
        d = self.d
        return (d ** self.depth - 1) // (d - 1)

    def level_offset(self, level: int) -> int:
        return (self.d ** level - 1) // (self.d - 1)

    def identity(self) -> Portrait:
        return Portrait(self, (0,) * self.internal_nodes)

    def portrait(self, labels) -> Portrait:
        labels = tuple(int(x) % self.d for x in labels)
        if len(labels) != self.internal_nodes:
            raise ArborError(f"expected {self.internal_nodes} labels, got {len(labels)}")
        return Portrait(self, labels)

    def standard_generators(self):
        """One rotation at the leftmost vertex of each level; they generate the group."""
        gens = []
        for lvl in range(self.depth):
            labels = [0] * self.internal_nodes
            labels[self.level_offset(lvl)] = 1
            gens.append(Portrait(self, tuple(labels)))
        return gens

    def elements(self):
        """Every portrait, in lexicographic label order."""
        if group_order(self) > ENUM_CAP:
            raise CapExceeded("enumeration cap exceeded", order=group_order(self), cap=ENUM_CAP)
        for labels in itertools.product(range(self.d), repeat=self.internal_nodes):
            yield Portrait(self, labels)


class Portrait:
    __slots__ = ("w", "labels")

    def __init__(self, w: WreathDescriptor, labels: tuple):
        self.w = w
        self.labels = labels

    def __eq__(self, other):
        return isinstance(other, Portrait) and self.w == other.w and self.labels == other.labels

    def __lt__(self, other):
        return self.labels < other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"Portrait({serialize(self)})"

    def _vertex_images(self):
        """image[v] for every vertex v at depth < w.depth, breadth-first."""
        w = self.w
        d = w.d
        image = [0]
        lab = self.labels
        for lvl in range(1, w.depth):
            start = w.level_offset(lvl - 1)
            nxt = []
            prev_off = w.level_offset(lvl - 1)
            off = w.level_offset(lvl)
            for k, img in enumerate(image[start:start + d ** (lvl - 1)]):
                r = lab[start + k]
                img_local = img - prev_off
                for i in range(d):
                    nxt.append(off + img_local * d + (i + r) % d)
            image.extend(nxt)
        return image

    def __mul__(self, other: Portrait) -> Portrait:
        return compose(self, other)

    def inverse(self) -> Portrait:
        return inverse(self)

    def __pow__(self, e: int) -> Portrait:
        out = self.w.identity()
        base = self if e >= 0 else inverse(self)
        e = abs(e)
        while e:
            if e & 1:
                out = compose(out, base)
            e >>= 1
            if e:
                base = compose(base, base)
        return out

    def is_identity(self) -> bool:
        return not any(self.labels)


def compose(a: Portrait, b: Portrait) -> Portrait:
    """a after b: (a*b)(v) = a(b(v))."""
    if a.w != b.w:
        raise DomainMismatch("portraits from different wreath products")
    d = a.w.d
    img = b._vertex_images()
    la, lb = a.labels, b.labels
    return Portrait(a.w, tuple((la[img[v]] + lb[v]) % d for v in range(len(lb))))


def inverse(a: Portrait) -> Portrait:
    d = a.w.d
    img = a._vertex_images()
    out = [0] * len(a.labels)
    for v, r in enumerate(a.labels):
        out[img[v]] = (-r) % d
    return Portrait(a.w, tuple(out))


def act_on_leaf(a: Portrait, path) -> tuple:
    """Image of a leaf (or any vertex) given as a tuple of child indices."""
    w = a.w
    d = w.d
    if len(path) > w.depth:
        raise ArborError("path longer than the tree depth")
    out = []
    local = 0
    for lvl, i in enumerate(path):
        v = w.level_offset(lvl) + local
        out.append((i + a.labels[v]) % d)
        local = local * d + i
    return tuple(out)


def group_order(w: WreathDescriptor) -> int:
    return w.p ** (w.n * w.internal_nodes)


def abelianize(a: Portrait) -> tuple:
    """Level sums of labels mod p^n: the map onto (Z/p^n)^depth."""
    w = a.w
    return tuple(sum(a.labels[w.level_offset(l):w.level_offset(l + 1)]) % w.d for l in range(w.depth))


def maximal_subgroup_count(p: int, n: int, N: int) -> int:
    """Index-p subgroups of C_{p^n}^N: (p^N - 1)/(p - 1)."""
    if N < 1:
        raise ArborError("N must be positive")
    return (p ** N - 1) // (p - 1)


def subgroup_closure(generators, cap: int = ENUM_CAP):
    """All elements generated by ``generators``, sorted by labels."""
    gens = list(generators)
    if not gens:
        raise ArborError("need at least one generator")
    w = gens[0].w
    moves = gens + [inverse(g) for g in gens]
    seen = {w.identity()}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in moves:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded("subgroup closure cap exceeded", cap=cap)
                queue.append(y)
    return sorted(seen)


def _generated(gens, cap):
    w = gens[0].w
    seen = {w.identity()}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded("closure cap exceeded", cap=cap)
                queue.append(y)
    return seen


def _normal_closure(seed_elems, conjugators, cap):
    """Smallest normal subgroup containing seed_elems (conjugators generate G)."""
    used = []
    H = set()
    pending = sorted(seed_elems)
    while pending:
        for x in pending:
            if x not in H:
                used.append(x)
                H = _generated(used, cap)
        pending = sorted({compose(compose(c, u), inverse(c)) for c in conjugators for u in used} - H)
    return H


def brute_force_frattini(w: WreathDescriptor, cap: int = ENUM_CAP):
    """(rank of G / Phi(G), number of maximal subgroups) by enumeration.

    Phi(G) = G^p [G, G] for a finite p-group: the subgroup generated by all
    p-th powers and all commutators.  Every p-th power comes from the full
    enumeration; commutators are taken between every element and every
    standard generator and then closed under conjugation, which yields the
    same subgroup as using all pairs.
    """
    order = group_order(w)
    if order > cap:
        raise CapExceeded("group order exceeds the brute-force cap", order=order, cap=cap)
    elems = list(w.elements())
    p = w.p
    gens = w.standard_generators()
    seed = {x ** p for x in elems}
    for x in elems:
        xi = inverse(x)
        for g in gens:
            seed.add(compose(compose(xi, inverse(g)), compose(x, g)))
    phi = _normal_closure(seed, gens, cap)
    index = order // len(phi)
    rank = 0
    while p ** rank < index:
        rank += 1
    if p ** rank != index:
        raise ArborError("Frattini quotient is not elementary abelian")
    return rank, (p ** rank - 1) // (p - 1)


def free_group_index_p_normal_count(s: int, p: int) -> int:
    """Normal subgroups of index p in a free group of rank s: (p^s - 1)/(p - 1)."""
    if s < 0:
        raise ArborError("rank must be non-negative")
    return (p ** s - 1) // (p - 1)


def _kernel_key(phi, p):
    """Canonical description of ker(phi) on (Z/p)^s: its row-reduced basis."""
    s = len(phi)
    # kernel of a single nonzero functional: basis from a solved pivot
    piv = next(i for i, c in enumerate(phi) if c)
    inv = pow(phi[piv], -1, p)
    basis = []
    for j in range(s):
        if j == piv:
            continue
        v = [0] * s
        v[j] = 1
        v[piv] = (-phi[j] * inv) % p
        basis.append(tuple(v))
    return _rref(basis, p)


def _rref(rows, p):
    rows = [list(r) for r in rows]
    out = []
    col = 0
    s = len(rows[0]) if rows else 0
    while rows and col < s:
        piv = next((r for r in rows if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [(c * inv) % p for c in piv]
        rows = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in rows]
        out = [[(a - o[col] * b) % p for a, b in zip(o, piv)] for o in out]
        out.append(piv)
        col += 1
    return tuple(tuple(r) for r in out)


def verify_free_group_count(s: int, p: int, cap: int = HOM_CAP) -> int:
    """Enumerate all p^s homomorphisms F_s -> Z/p and count distinct kernels
    of the nontrivial ones."""
    if p ** s > cap:
        raise CapExceeded("homomorphism enumeration cap exceeded", count=p ** s, cap=cap)
    kernels = set()
    for phi in itertools.product(range(p), repeat=s):
        if any(phi):
            kernels.add(_kernel_key(phi, p))
    return len(kernels)


def serialize(a: Portrait) -> str:
    return ",".join(str(x) for x in a.labels)


def deserialize(w: WreathDescriptor, text: str) -> Portrait:
    text = text.strip()
    labels = [int(x) for x in text.split(",")] if text else []
    return w.portrait(labels)
