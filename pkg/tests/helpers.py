import numpy as np
from blockseg.alignment import Alignment
from blockseg.simulate import BlockModel, SimulationDesign, simulate


def random_alignment(rng, n, m, sizes=(2, 3)):
    """Uniform codes; every column declares an alphabet drawn from ``sizes``."""
    k = rng.choice(sizes, size=m)
    data = np.column_stack([rng.integers(0, kj, size=n) for kj in k])
    alphabets = tuple(tuple(str(a + 1) for a in range(kj)) for kj in k)
    return Alignment(data, alphabets)


def random_block_alignment(rng, n, m, sizes=(2, 3)):
    """Random Markov blocks with random (peaked) transitions, so segmentations are non-trivial."""
    blocks, used = [], 0
    while used < m:
        length = int(min(rng.integers(1, 5), m - used))
        k = int(rng.choice(sizes))
        P = rng.dirichlet(np.full(k, 0.4), size=k)
        blocks.append(BlockModel(P, length))
        used += length
    design = SimulationDesign(tuple(blocks), n=n, seed=int(rng.integers(2**31)))
    return simulate(design)[0]


AMINO = "ACDEFGHIKLMNPQRSTVWY"


def vp40_like_fasta(seed=0, n=21, m=326, conserved=206, clades=4):
    """Synthetic protein alignment at the VP40 dimensions.

    Rows fall into clades; a variable column gives each clade a residue and
    flips individual rows with small probability, so neighbouring variable
    columns are dependent through the shared clade structure.
    """
    rng = np.random.default_rng(seed)
    clade = np.sort(rng.integers(0, clades, size=n))
    variable = np.sort(rng.choice(m, size=m - conserved, replace=False))
    cols = []
    for j in range(m):
        base = AMINO[rng.integers(len(AMINO))]
        if j not in variable:
            cols.append([base] * n)
            continue
        k = int(rng.integers(2, 6))
        residues = rng.choice(list(AMINO), size=k, replace=False)
        per_clade = rng.choice(residues, size=clades)
        col = [per_clade[clade[i]] for i in range(n)]
        for i in range(n):
            if rng.random() < 0.1:
                col[i] = residues[rng.integers(k)]
        cols.append(col)
    seqs = ["".join(cols[j][i] for j in range(m)) for i in range(n)]
    return "".join(f">seq{i + 1}\n{s}\n" for i, s in enumerate(seqs))
