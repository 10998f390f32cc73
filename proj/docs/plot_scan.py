import json, sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
df = pd.read_csv(out / "scan.csv", comment="#")
summary = json.loads((out / "scan_summary.json").read_text())

fig, ax = plt.subplots(figsize=(9, 4.5))
for col in (c for c in df.columns if c.startswith("ghat_") and not c.startswith("ghat_plus")):
    ax.plot(df.log10_eps, df[col], color="0.8", lw=0.6)
ax.plot(df.log10_eps, df.h1, color="C0", lw=1.6, label="h1")
ax.plot(df.log10_eps, df.h2, color="C1", lw=0.9, ls="--", label="h2")
ax.plot(df.log10_eps, df.h1_hat_plus, color="C2", lw=0.9, label="envelope")
ax.axhline(summary["constants"]["B"], color="k", lw=0.8, ls=":", label="B")
ax.axhline(summary["B_num"], color="C3", lw=0.8, ls=":", label="B_num")
ax.set_ylim(0.95, summary["constants"]["B"] + 0.15)
ax.set_xlabel("log10 eps")
ax.set_ylabel("g")
ax.legend(loc="upper right")
fig.tight_layout()
fig.savefig(out / "h1.png", dpi=150)
