"""Pure-Python closure kernel.

Breadth-first enumeration of the subgroup of a direct power of a finite
group generated by a list of moves, with predecessor tracking so any state
can be rewritten as a shortest product of moves.  Drop-in fallback for the
compiled kernel in ``_closure_cy``; both must produce identical output.
"""

from __future__ import annotations


def subgroup_closure(table, moves, budget):
    """BFS closure from the identity state under right multiplication.

    table: q x q nested sequence, table[a][b] = index of a*b.
    moves: list of column vectors (length C, entries in range(q)).
    budget: maximum number of states to enumerate.

    Returns (states, parent, via, complete): states is the list of visited
    C-tuples in BFS order starting at the identity; parent[i] and via[i]
    give the predecessor state index and move index (both -1 at the root);
    complete is False when the budget was hit before exhausting the group.
    """
    if not moves:
        c = 0
    else:
        c = len(moves[0])
    ident = (0,) * c
    index = {ident: 0}
    states = [ident]
    parent = [-1]
    via = [-1]
    rng = range(c)
    head = 0
    while head < len(states):
        s = states[head]
        for m_i, mv in enumerate(moves):
            t = tuple(table[s[j]][mv[j]] for j in rng)
            if t not in index:
                if len(states) >= budget:
                    return states, parent, via, False
                index[t] = len(states)
                states.append(t)
                parent.append(head)
                via.append(m_i)
        head += 1
    return states, parent, via, True
