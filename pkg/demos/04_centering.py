"""Centering a full-rank arrangement and inspecting the certificate.

Pass a JSON arrangement path, or run without arguments to use a bundled one.
"""

import sys
from pathlib import Path

from toricenter import center, load_arrangement, verify_certificate_exact
from toricenter.centering import all_branch_vectors, replay

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).with_name("arrangements") / "pair.json"
a = load_arrangement(path)
print("source:")
print(a)

cert = center(a)
print("\npermutation:", cert.sigma.perm)
print("U =", cert.U.tolist())
print("gammas:", ", ".join(map(str, cert.gammas)))

print("\nreplayed stages:")
for k, stage in enumerate(replay(cert)):
    print(f"  after step {k}:", "; ".join(str(eq) for eq in stage.equations))

print("\nexact check:", "ok" if verify_certificate_exact(cert) else "FAILED")

# every choice of roots works; the number of choices is prod(diag U)
vectors = list(all_branch_vectors(cert))
print(f"{len(vectors)} branch vector(s); all valid:",
      all(verify_certificate_exact(center(a, v)) for v in vectors))
