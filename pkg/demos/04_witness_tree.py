"""Finite witness trees for xy = t.

Every node is a pair of basic intervals whose product image holds t in its
interior.  Each node has two distinct descendant pairs with the same
property, so depth d gives 2**d nested branches.
"""
from collections import Counter
from fractions import Fraction

from cantorcert.witness import build_witness_tree, diagonal_counts, verify_tree

lam = Fraction(9, 20)

for t in (Fraction(1, 2), Fraction(1, 100), Fraction(9, 10)):
    tree = build_witness_tree(lam, t, 8)
    leaves = tree.leaves()
    print(f"t = {t}: prefix {tree.scale_prefix}, root ({tree.root.address_i}, {tree.root.address_j}), "
          f"{len(leaves)} leaves, verified {verify_tree(tree)}")

    # how many ranks each expansion had to skip before two double-covering pairs appeared
    jumps = Counter(c.rank - n.rank for n in tree.nodes() for c in n.children)
    print("   rank jumps:", dict(sorted(jumps.items())))
    print("   max diagonal nodes on one branch:", max(diagonal_counts(tree)))

# One branch followed to the bottom: the intervals shrink and their product pins down t.
tree = build_witness_tree(lam, Fraction(1, 2), 6)
node = tree.root
while True:
    print(f"   rank {node.rank:>2}  ({node.address_i}, {node.address_j})  image width {float(node.image.length):.2e}")
    if not node.children:
        break
    node = node.children[0]
