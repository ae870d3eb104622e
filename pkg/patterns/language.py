from guidepath.exceptions import PatternError
from guidepath.moreiterutils import pairwise


def is_excursion(g, seq):
    """True iff `seq` is a word of the excursion language of `g`: every two contiguous edges share a vertex."""
    for edge_id in seq:
        g.check_edge(edge_id)
    return all(g.shares_vertex(a, b) for a, b in pairwise(seq))


def is_cyclic_excursion(g, seq):
    """An excursion that may be repeated indefinitely (BBBB...), i.e. whose last edge also touches its first."""
    return len(seq) > 0 and is_excursion(g, seq) and g.shares_vertex(seq[-1], seq[0])


def m_block_extension(seq, M):
    """
    The M-block extension of a word: its sliding windows of M contiguous letters, in order.

    >>> m_block_extension([1, 2, 1, 2], 2)
    [(1, 2), (2, 1), (1, 2)]
    """
    if M < 1:
        raise PatternError("block length must be at least 1, got %d" % M)
    if M > len(seq):
        raise PatternError("block length %d exceeds word length %d" % (M, len(seq)))
    seq = list(seq)
    return [tuple(seq[i:i + M]) for i in range(len(seq) - M + 1)]
