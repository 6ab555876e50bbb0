"""Tour of the restricted product bases.

Three cavities, each with a two-level atom that absorbs or emits photon
pairs, conserve one total counter.  Fixing the total restricts the naive
qudit product space to a small manifold; this script walks those manifolds
and shows why some innocent-looking product states cannot exist here.
"""

import numpy as np

from trimodal.basis import (
    enumerate_manifold,
    parse_level,
    product_state,
    symmetrize,
    UnsupportedProductError,
)


def main():
    print("manifold sizes (total -> dim, per-cavity alphabet):")
    for n in (2, 4, 6):
        man = enumerate_manifold(n)
        alphabet = ", ".join(str(l) for l in man.levels)
        print(f"  total {n}: dim {man.dim:2d} of {man.qudit_dim ** 3:3d}   [{alphabet}]")

    man = enumerate_manifold(6)
    print("\nexcited-count sectors of the 38-state manifold:")
    for k, idx in enumerate(man.sectors):
        print(f"  {k} excited: {len(idx):2d} states, e.g. {man.basis[idx[0]]}")

    print("\na product state that fits (one shared pair, cavity 3 seeded):")
    lv = parse_level
    man2 = enumerate_manifold(2)
    vec = product_state(man2, [[(lv("g0"), 1.0)], [(lv("g0"), 1.0)], [(lv("g2"), 1.0)]])
    for b, amp in zip(man2.basis, vec.amplitudes):
        if amp:
            print(f"  {b}: {amp.real:+.3f}")

    print("\n...and one that leaks outside the total (rejected):")
    c = 1.0 / np.sqrt(2.0)
    try:
        product_state(man2, [[(lv("g0"), c), (lv("g2"), c)],
                             [(lv("g0"), c), (lv("g2"), c)],
                             [(lv("g0"), 1.0)]])
    except UnsupportedProductError as exc:
        print(f"  {exc}")

    print("\npermutation-symmetrized seed of the exchange dynamics:")
    sym = symmetrize(man2.basis[0])
    for b, amp in zip(man2.basis, sym.amplitudes):
        if abs(amp) > 1e-12:
            print(f"  {b}: {amp.real:+.4f}")


if __name__ == "__main__":
    main()
