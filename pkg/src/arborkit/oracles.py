"""Hand-derived closed forms used to cross-check the tower engine.

Nothing here touches the field arithmetic: the values come from the
structure of radical and cyclotomic extensions alone.
"""


def power_map_level_degree(level: int) -> int:
    """[Q(a^(1/2^i), zeta_(2^i)) : Q] for a in {3, 5} and i = level.

    Q(zeta_(2^i)) has degree 2^(i-1) for i >= 1 (and 1 for i = 0), and
    x^(2^i) - a stays irreducible over it for these a because sqrt(a) is not
    in any 2-power cyclotomic field, which contributes a further 2^i.
    """
    if level < 0:
        raise ValueError("level must be non-negative")
    cyclotomic = 2 ** (level - 1) if level >= 1 else 1
    return 2 ** level * cyclotomic


def iterated_wreath_order(p: int, n: int, depth: int) -> int:
    """|C_(p^n) wr ... wr C_(p^n)| = (p^n)^(1 + d + ... + d^(depth-1))."""
    d = p ** n
    nodes = sum(d ** k for k in range(depth))
    return d ** nodes
