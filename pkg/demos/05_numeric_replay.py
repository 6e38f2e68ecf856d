"""Numeric replay: sample points on each subtorus and push them through.

The residual of the image against the target equation should sit near the
working precision, and double precision should square it away.
"""

import random

from toricenter import center, sample_on_subtorus, residual, verify_diffeo
from toricenter.corpus import random_arrangement

a = random_arrangement(random.Random(5))
print(a)
cert = center(a)

z = sample_on_subtorus(cert.source.equations[0], 1, 128)
w = cert.chain.apply(z, 128)
print("\nresidual on source:", residual(cert.source.equations[0], z, 128))
print("residual of image on target:", residual(cert.target.equations[0], w, 128))

for bits in (128, 256):
    rep = verify_diffeo(cert, trials=32, precision_bits=bits)
    print(f"{bits} bits: {'pass' if rep.passed else 'fail'}, max residual {float(rep.max_residual):.3e}, "
          f"complement min {float(rep.min_complement_residual):.3e}")
