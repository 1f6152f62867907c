import numpy as np
import pandas as pd

from selfaffine.components import data_utils, ids, linalg

# Print singular values and eigenvalue moduli of every fixture generator
for name in (ids.FIXTURE_THM1, ids.FIXTURE_THM2, ids.FIXTURE_EQ1):
    system = data_utils.load_fixture(name)
    rows = []
    for k, A in enumerate(system.linear.matrices, start=1):
        rows.append(
            {
                "map": k,
                "singular_values": np.round(linalg.singular_values(A), 6).tolist(),
                "eigen_moduli": np.round(linalg.eigen_moduli(A), 6).tolist(),
                "det": round(float(np.linalg.det(A)), 6),
            }
        )
    print(f"\n{name}: {system.linear.N} maps on R^{system.linear.d}")
    print(pd.DataFrame(rows).to_string(index=False))
    print("config hash:", data_utils.config_hash(system))
