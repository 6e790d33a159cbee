"""Build polar codes, inspect their frozen sets, and encode a few blocks."""

import numpy as np

from polarsim import (bit_reversal_permutation, construct_code, polar_encode,
                      scatter_info)

# The block length is always a power of two; construction ranks the
# synthesized bit channels by their Bhattacharyya parameter and freezes the
# worst N-K of them.
code = construct_code(n=3, K=4, design_snr_db=0.0)
print(f"(8, 4) code: frozen set {code.frozen_set.tolist()}, "
      f"information set {code.info_set.tolist()}")

# The permutation applied before the xor stages is its own inverse.
perm = bit_reversal_permutation(3)
print("bit-reversal permutation:", perm.tolist())
print("applied twice:", perm[perm].tolist())

# Encoding scatters the information bits, then runs O(N log N) xor stages.
info = np.array([1, 0, 1, 1])
u = scatter_info(code, info)
x = polar_encode(code, u)
print(f"info {info.tolist()} -> input block {u.tolist()} -> codeword {x.tolist()}")

# Linearity: the encoder distributes over xor.
u2 = scatter_info(code, np.array([0, 1, 1, 0]))
lhs = polar_encode(code, u ^ u2)
rhs = polar_encode(code, u) ^ polar_encode(code, u2)
print("encode(a^b) == encode(a)^encode(b):", np.array_equal(lhs, rhs))

# Design SNR shifts which channels freeze on larger codes.
for snr in (0.0, 2.0):
    big = construct_code(n=10, K=512, design_snr_db=snr)
    print(f"(1024, 512) at design {snr:.0f} dB: first frozen indices "
          f"{big.frozen_set[:8].tolist()}")
