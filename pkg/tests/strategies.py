from hypothesis import strategies as st

from partlat.partition import from_blocks


def label_partition(labels):
    groups = {}
    for i, lab in enumerate(labels, start=1):
        groups.setdefault(lab, []).append(i)
    return from_blocks(len(labels), groups.values())


def partitions(n):
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(label_partition)


def permutations(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)

