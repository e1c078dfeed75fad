"""Pure-Python implementations of the hot loops.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Elements of I_n are encoded as ``bytes`` of length n where byte ``i-1`` is the
image of point ``i`` (0 meaning undefined).  Words are ``str`` with one
character per letter.
"""

BACKEND = "python"


def compose_images(a, b):
    """Left-to-right product: point i goes to (i a) b."""
    return bytes([b[x - 1] if x else 0 for x in a])


def closure_images(gens, identity, limit):
    """Right-multiplication BFS closure.

    Returns the elements in discovery order, or ``None`` once more than
    ``limit`` elements have been found.
    """
    seen = {identity}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = bytes([g[x - 1] if x else 0 for x in a])
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    nxt.append(c)
                    if len(order) > limit:
                        return None
        frontier = nxt
    return order


def expand(frontier, sides, maxlen, seen, other, cap):
    """Expand one BFS level of undirected rewriting.

    ``sides`` is a list of ``(pattern, replacement)`` pairs; ``seen`` maps each
    discovered word to ``(parent, position, side_index)`` and is updated in
    place.  Returns ``(next_frontier, meet, overflow)`` where ``meet`` is the
    first new word that also lies in ``other`` (or ``None``) and ``overflow``
    is true once ``seen`` grew past ``cap``.
    """
    nxt = []
    for w in frontier:
        if len(seen) > cap:
            return nxt, None, True
        lw = len(w)
        for si, (pat, rep) in enumerate(sides):
            lp = len(pat)
            if lw - lp + len(rep) > maxlen:
                continue
            if lp == 0:
                for p in range(lw + 1):
                    v = w[:p] + rep + w[p:]
                    if v not in seen:
                        seen[v] = (w, p, si)
                        if v in other:
                            return nxt, v, False
                        nxt.append(v)
                continue
            p = w.find(pat)
            while p >= 0:
                v = w[:p] + rep + w[p + lp:]
                if v not in seen:
                    seen[v] = (w, p, si)
                    if v in other:
                        return nxt, v, False
                    nxt.append(v)
                p = w.find(pat, p + 1)
    return nxt, None, False


def reduce_word(word, rules):
    """Rewrite with oriented ``rules`` until irreducible.

    Always rewrites the leftmost-ending occurrence first so the result is
    deterministic even for non-confluent rule sets.
    """
    while True:
        best = -1
        best_rule = None
        for lhs, rhs in rules:
            p = word.find(lhs)
            if p >= 0:
                end = p + len(lhs)
                if best < 0 or end < best:
                    best = end
                    best_rule = (p, lhs, rhs)
        if best_rule is None:
            return word
        p, lhs, rhs = best_rule
        word = word[:p] + rhs + word[p + len(lhs):]
