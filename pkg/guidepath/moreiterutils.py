def pairwise(it):
    """
    >>> list(pairwise(range(0)))
    []
    >>> list(pairwise(range(1)))
    []
    >>> list(pairwise(range(3)))
    [(0, 1), (1, 2)]
    """
    it = iter(it)
    try:
        prev = next(it)
    except StopIteration:
        return
    for current in it:
        yield (prev, current)
        prev = current


def cyclic_pairs(seq):
    """
    Like pairwise, but closing the loop:

    >>> list(cyclic_pairs([1, 2, 3]))
    [(1, 2), (2, 3), (3, 1)]
    >>> list(cyclic_pairs([1]))
    [(1, 1)]
    """
    seq = list(seq)
    for i, item in enumerate(seq):
        yield item, seq[(i + 1) % len(seq)]


def runs(iterable, key=lambda x: x):
    """
    Groups consecutive items with equal keys, yielding (key, first_index, last_index):

    >>> list(runs("aabccc"))
    [('a', 0, 1), ('b', 2, 2), ('c', 3, 5)]
    """
    current, start, i = None, None, -1
    for i, item in enumerate(iterable):
        k = key(item)
        if start is None:
            current, start = k, i
        elif k != current:
            yield current, start, i - 1
            current, start = k, i
    if start is not None:
        yield current, start, i
